//! Radial and chordal Loewner transition maps `B_{at}`.
//!
//! A radial flow lives on the disk and solves `dB/dt = -B phi(t, B)` with a
//! Herglotz driver `phi`. A chordal flow lives on the upper half-plane and
//! solves `dB/ds = sum w / (xi - B)`. Drivers are piecewise constant in time.
//! Each flow has a closed-form backend for its basic case (Koebe semigroup,
//! vertical slit) and an RK4 backend for everything.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::map::HoloMap;
use crate::moebius::Domain;
use crate::ode::{rk4, OdeConfig};
use crate::representations::{herglotz_sum, CircleMeasure, LineMeasure};

/// RK4 aborts once `|B|` reaches `1 - ESCAPE_MARGIN` (radial) or
/// `Im B` drops to `ESCAPE_MARGIN` (chordal).
pub const ESCAPE_MARGIN: f64 = 1e-9;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Common surface of radial and chordal flows.
pub trait LoewnerFlow {
    fn domain(&self) -> Domain;

    /// Time interval `[start, end]` of the flow.
    fn interval(&self) -> (f64, f64);

    /// `B_{start, t}(z)`.
    fn transition(&self, t: f64, z: Complex64) -> Result<Complex64>;

    /// `[start, driver breakpoints inside the interval..., end]`.
    fn breakpoints(&self) -> Vec<f64>;
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a.is_finite() && b.is_finite()) || a < 0.0 || a > b {
        return Err(Error::InvalidFlow(format!(
            "interval [{a}, {b}] must satisfy 0 <= a <= b"
        )));
    }
    Ok(())
}

fn check_time(t: f64, a: f64, b: f64) -> Result<()> {
    if !(a..=b).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "time {t} is outside the flow interval [{a}, {b}]"
        )));
    }
    Ok(())
}

fn check_step(ode: &OdeConfig, a: f64, b: f64) -> Result<()> {
    if !(ode.step.is_finite() && ode.step > 0.0) {
        return Err(Error::InvalidFlow("ODE step must be positive".into()));
    }
    if b > a && ode.step > b - a {
        return Err(Error::InvalidFlow(format!(
            "ODE step {} exceeds interval length {}",
            ode.step,
            b - a
        )));
    }
    Ok(())
}

/// Piecewise-constant family indexed by segment start times.
#[derive(Debug, Clone, PartialEq)]
struct Segments<M> {
    starts: Vec<f64>,
    items: Vec<M>,
}

impl<M> Segments<M> {
    fn new(segments: Vec<(f64, M)>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidFlow("driver needs at least one segment".into()));
        }
        let (starts, items): (Vec<f64>, Vec<M>) = segments.into_iter().unzip();
        if starts.iter().any(|s| !s.is_finite()) || starts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFlow(
                "driver breakpoints must be finite and strictly increasing".into(),
            ));
        }
        Ok(Segments { starts, items })
    }

    fn at(&self, t: f64) -> &M {
        let idx = self.starts.partition_point(|&s| s <= t).saturating_sub(1);
        &self.items[idx]
    }

    /// Breakpoints strictly inside `(a, b)`.
    fn interior(&self, a: f64, b: f64) -> impl Iterator<Item = f64> + '_ {
        self.starts.iter().copied().filter(move |&s| s > a && s < b)
    }

    fn first(&self) -> f64 {
        self.starts[0]
    }
}

/// Splits `[a, t]` at driver breakpoints and integrates each piece with RK4.
fn integrate_segments<F, E>(
    breaks: impl Iterator<Item = f64>,
    a: f64,
    t: f64,
    z: Complex64,
    ode: &OdeConfig,
    rhs: F,
    escaped: E,
) -> Result<Complex64>
where
    F: Fn(f64, Complex64) -> Result<Complex64>,
    E: Fn(Complex64) -> bool + Copy,
{
    let mut nodes: Vec<f64> = vec![a];
    nodes.extend(breaks.filter(|&s| s > a && s < t));
    nodes.push(t);
    let mut y = z;
    for w in nodes.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        // evaluate the driver of this segment, not the next one at `hi`
        let mid = 0.5 * (lo + hi);
        y = rk4(|s, b| rhs(s.min(mid).max(lo), b), lo, hi, y, ode.step, escaped)?;
    }
    Ok(y)
}

/// Koebe function `f(t, z) = e^t z / (1 - z)^2`.
pub fn koebe_eval(t: f64, z: Complex64) -> Result<Complex64> {
    let z = Domain::Disk.check(z)?;
    let d = ONE - z;
    Ok(t.exp() * z / (d * d))
}

/// Inverse of `B -> B/(1-B)^2` on the Koebe image, normalised by `B(0) = 0`.
///
/// Uses `B = 2u / (1 + 2u + sqrt(1 + 4u))`, which has no cancellation near
/// `u = 0`.
pub fn koebe_inverse(u: Complex64) -> Complex64 {
    let two_u = 2.0 * u;
    two_u / (ONE + two_u + (ONE + 4.0 * u).sqrt())
}

/// Square root on the upper half-plane: `i * sqrt(-w)` with the principal
/// branch. Maps `C \ [0, inf)` into the upper half-plane.
pub fn sqrt_h(w: Complex64) -> Complex64 {
    I * (-w).sqrt()
}

/// Time-indexed Herglotz driver `phi(t, .)`, piecewise constant in `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDriver {
    segments: Segments<CircleMeasure>,
}

impl RadialDriver {
    /// `segments[i] = (start_i, mu_i)`; `mu_i` drives `[start_i, start_{i+1})`.
    pub fn new(segments: Vec<(f64, CircleMeasure)>) -> Result<Self> {
        for (_, mu) in &segments {
            if !mu.is_probability() {
                return Err(Error::InvalidMeasure(format!(
                    "driver measure has total mass {}, expected 1",
                    mu.total_mass()
                )));
            }
        }
        Ok(RadialDriver {
            segments: Segments::new(segments)?,
        })
    }

    pub fn constant(mu: CircleMeasure) -> Result<Self> {
        Self::new(vec![(0.0, mu)])
    }

    /// Constant driver `delta_{-1}`, i.e. `phi(t, w) = (1 - w)/(1 + w)`.
    pub fn koebe() -> Self {
        let delta = CircleMeasure::point_mass(Complex64::new(-1.0, 0.0)).expect("-1 lies on the unit circle");
        Self::constant(delta).expect("valid single segment")
    }

    pub fn measure_at(&self, t: f64) -> &CircleMeasure {
        self.segments.at(t)
    }

    /// `phi(t, w)` for `w` in the disk.
    pub fn phi(&self, t: f64, w: Complex64) -> Result<Complex64> {
        let w = Domain::Disk.check(w)?;
        Ok(herglotz_sum(self.measure_at(t), w))
    }

    /// True if every segment is the point mass at `-1`.
    pub fn is_koebe(&self) -> bool {
        self.segments.items.iter().all(|mu| {
            let mut atoms = mu.atoms().iter().filter(|a| a.weight > 0.0);
            matches!(
                (atoms.next(), atoms.next()),
                (Some(a), None) if (a.location + 1.0).norm() <= 1e-12
            )
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadialBackend {
    KoebeClosedForm,
    RungeKutta(OdeConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialFlowSpec {
    driver: RadialDriver,
    a: f64,
    b: f64,
    backend: RadialBackend,
}

impl RadialFlowSpec {
    pub fn new(driver: RadialDriver, a: f64, b: f64, backend: RadialBackend) -> Result<Self> {
        check_interval(a, b)?;
        if driver.segments.first() > a {
            return Err(Error::InvalidFlow(format!(
                "driver starts at {} but the flow starts at {a}",
                driver.segments.first()
            )));
        }
        match &backend {
            RadialBackend::KoebeClosedForm if !driver.is_koebe() => {
                return Err(Error::InvalidFlow(
                    "closed-form backend requires the Koebe driver delta_{-1}".into(),
                ))
            }
            RadialBackend::RungeKutta(ode) => check_step(ode, a, b)?,
            _ => {}
        }
        Ok(RadialFlowSpec { driver, a, b, backend })
    }

    /// Koebe semigroup on `[a, b]`, closed-form backend.
    pub fn koebe(a: f64, b: f64) -> Result<Self> {
        Self::new(RadialDriver::koebe(), a, b, RadialBackend::KoebeClosedForm)
    }

    /// Koebe semigroup on `[a, b]`, integrated with RK4.
    pub fn koebe_rk(a: f64, b: f64, ode: OdeConfig) -> Result<Self> {
        Self::new(RadialDriver::koebe(), a, b, RadialBackend::RungeKutta(ode))
    }

    pub fn driver(&self) -> &RadialDriver {
        &self.driver
    }

    pub fn backend(&self) -> RadialBackend {
        self.backend
    }

    pub fn is_koebe(&self) -> bool {
        self.driver.is_koebe()
    }

    /// Same driver and backend on a new interval.
    pub fn with_interval(&self, a: f64, b: f64) -> Result<Self> {
        Self::new(self.driver.clone(), a, b, self.backend)
    }

    /// `phi(t, w)` of the driver.
    pub fn phi(&self, t: f64, w: Complex64) -> Result<Complex64> {
        self.driver.phi(t, w)
    }
}

impl LoewnerFlow for RadialFlowSpec {
    fn domain(&self) -> Domain {
        Domain::Disk
    }

    fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![self.a];
        pts.extend(self.driver.segments.interior(self.a, self.b));
        pts.push(self.b);
        pts
    }

    fn transition(&self, t: f64, z: Complex64) -> Result<Complex64> {
        check_time(t, self.a, self.b)?;
        let z = Domain::Disk.check(z)?;
        if t == self.a {
            return Ok(z);
        }
        let bt = match &self.backend {
            RadialBackend::KoebeClosedForm => {
                let d = ONE - z;
                koebe_inverse((self.a - t).exp() * z / (d * d))
            }
            RadialBackend::RungeKutta(ode) => integrate_segments(
                self.driver.segments.interior(self.a, t),
                self.a,
                t,
                z,
                ode,
                |s, w| Ok(-w * herglotz_sum(self.driver.measure_at(s), w)),
                |w| w.norm() >= 1.0 - ESCAPE_MARGIN,
            )?,
        };
        if !Domain::Disk.contains(bt) {
            return Err(Error::FlowEscape { time: t, value: bt });
        }
        Ok(bt)
    }
}

/// Driving measure of a chordal flow.
#[derive(Debug, Clone, PartialEq)]
pub enum ChordalDriver {
    /// `nu_s = delta_0` for all `s`: the vertical slit.
    BasicSlit,
    /// Piecewise-constant measures on the real line.
    Measure(ChordalMeasureDriver),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChordalMeasureDriver {
    segments: Segments<LineMeasure>,
}

impl ChordalMeasureDriver {
    pub fn new(segments: Vec<(f64, LineMeasure)>) -> Result<Self> {
        Ok(ChordalMeasureDriver {
            segments: Segments::new(segments)?,
        })
    }
}

impl ChordalDriver {
    pub fn measure_at(&self, s: f64) -> LineMeasure {
        match self {
            ChordalDriver::BasicSlit => LineMeasure::dirac(0.0, 1.0).expect("valid atom"),
            ChordalDriver::Measure(m) => m.segments.at(s).clone(),
        }
    }

    /// `sum w / (xi - w)` of the measure active at time `s`.
    pub fn velocity(&self, s: f64, w: Complex64) -> Complex64 {
        match self {
            ChordalDriver::BasicSlit => -ONE / w,
            ChordalDriver::Measure(m) => m
                .segments
                .at(s)
                .atoms()
                .iter()
                .map(|a| a.weight / (a.location - w))
                .sum(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChordalBackend {
    SlitClosedForm,
    RungeKutta(OdeConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChordalFlowSpec {
    driver: ChordalDriver,
    r: f64,
    s: f64,
    backend: ChordalBackend,
}

impl ChordalFlowSpec {
    pub fn new(driver: ChordalDriver, r: f64, s: f64, backend: ChordalBackend) -> Result<Self> {
        check_interval(r, s)?;
        match (&driver, &backend) {
            (ChordalDriver::Measure(_), ChordalBackend::SlitClosedForm) => {
                return Err(Error::InvalidFlow(
                    "closed-form backend requires the basic slit driver".into(),
                ))
            }
            (ChordalDriver::Measure(m), _) if m.segments.first() > r => {
                return Err(Error::InvalidFlow(format!(
                    "driver starts at {} but the flow starts at {r}",
                    m.segments.first()
                )))
            }
            (_, ChordalBackend::RungeKutta(ode)) => check_step(ode, r, s)?,
            _ => {}
        }
        Ok(ChordalFlowSpec { driver, r, s, backend })
    }

    /// Vertical slit flow `sqrt(z^2 - 2(s - r))` on `[r, s]`, closed form.
    pub fn basic_slit(r: f64, s: f64) -> Result<Self> {
        Self::new(ChordalDriver::BasicSlit, r, s, ChordalBackend::SlitClosedForm)
    }

    pub fn driver(&self) -> &ChordalDriver {
        &self.driver
    }

    pub fn backend(&self) -> ChordalBackend {
        self.backend
    }

    pub fn is_basic_slit(&self) -> bool {
        matches!(self.driver, ChordalDriver::BasicSlit)
    }

    pub fn with_interval(&self, r: f64, s: f64) -> Result<Self> {
        Self::new(self.driver.clone(), r, s, self.backend)
    }
}

impl LoewnerFlow for ChordalFlowSpec {
    fn domain(&self) -> Domain {
        Domain::HalfPlane
    }

    fn interval(&self) -> (f64, f64) {
        (self.r, self.s)
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut pts = vec![self.r];
        if let ChordalDriver::Measure(m) = &self.driver {
            pts.extend(m.segments.interior(self.r, self.s));
        }
        pts.push(self.s);
        pts
    }

    fn transition(&self, s: f64, z: Complex64) -> Result<Complex64> {
        check_time(s, self.r, self.s)?;
        let z = Domain::HalfPlane.check(z)?;
        if s == self.r {
            return Ok(z);
        }
        let bs = match &self.backend {
            ChordalBackend::SlitClosedForm => sqrt_h(z * z - 2.0 * (s - self.r)),
            ChordalBackend::RungeKutta(ode) => {
                let breaks: Vec<f64> = match &self.driver {
                    ChordalDriver::BasicSlit => Vec::new(),
                    ChordalDriver::Measure(m) => m.segments.interior(self.r, s).collect(),
                };
                integrate_segments(
                    breaks.into_iter(),
                    self.r,
                    s,
                    z,
                    ode,
                    |t, w| Ok(self.driver.velocity(t, w)),
                    |w| w.im <= ESCAPE_MARGIN,
                )?
            }
        };
        if !Domain::HalfPlane.contains(bs) {
            return Err(Error::FlowEscape { time: s, value: bs });
        }
        Ok(bs)
    }
}

/// `z -> B_{start, end}(z)` as a standalone map.
pub fn endpoint_map<F>(flow: &F, label: impl Into<String>) -> HoloMap
where
    F: LoewnerFlow + Clone + Send + Sync + 'static,
{
    let flow = flow.clone();
    let end = flow.interval().1;
    HoloMap::new(label, move |z| flow.transition(end, z))
}

/// Equally spaced samples `(t_k, B_{t_k}(z))` over the flow interval, lazily.
pub fn trace_iter<'a, F: LoewnerFlow + ?Sized>(
    flow: &'a F,
    z: Complex64,
    n_samples: usize,
) -> Result<impl Iterator<Item = Result<(f64, Complex64)>> + 'a> {
    if n_samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "trace needs at least 2 samples, got {n_samples}"
        )));
    }
    let (a, b) = flow.interval();
    let last = n_samples - 1;
    Ok((0..n_samples).map(move |k| {
        let t = if k == last {
            b
        } else {
            a + (b - a) * k as f64 / last as f64
        };
        flow.transition(t, z).map(|v| (t, v))
    }))
}

/// Equally spaced samples of the transition along the flow interval.
pub fn flow_trace<F: LoewnerFlow + ?Sized>(flow: &F, z: Complex64, n_samples: usize) -> Result<Vec<(f64, Complex64)>> {
    trace_iter(flow, z, n_samples)?.collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{Lcg, Rect};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn koebe_eval_examples() {
        assert_eq!(koebe_eval(0.0, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!((koebe_eval(0.0, c(0.5, 0.0)).unwrap() - 2.0).norm() < 1e-15);
        assert!((koebe_eval(1.0, c(0.5, 0.0)).unwrap() - 2.0 * 1f64.exp()).norm() < 1e-14);
        assert!(koebe_eval(0.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn koebe_inverse_inverts() {
        let mut rng = Lcg::new(9);
        for _ in 0..500 {
            let z = rng.disk_point(0.95);
            let u = koebe_eval(0.0, z).unwrap();
            assert!((koebe_inverse(u) - z).norm() < 1e-12);
        }
    }

    #[test]
    fn radial_basic_examples() {
        let flow = RadialFlowSpec::koebe(0.0, 1.0).unwrap();
        let z = c(0.3, -0.4);
        assert_eq!(flow.transition(0.0, z).unwrap(), z);
        assert_eq!(flow.transition(0.7, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let rk = RadialFlowSpec::koebe_rk(0.0, 1.0, OdeConfig::default()).unwrap();
        assert_eq!(rk.transition(0.7, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        let closed = flow.transition(1.0, c(0.5, 0.0)).unwrap();
        let numeric = rk.transition(1.0, c(0.5, 0.0)).unwrap();
        assert!((closed - numeric).norm() <= 1e-6);
        assert!(flow.transition(1.5, z).is_err());
    }

    #[test]
    fn koebe_satisfies_chain_relation() {
        // e^t B/(1-B)^2 = e^a z/(1-z)^2
        let flow = RadialFlowSpec::koebe(0.2, 1.5).unwrap();
        let z = c(-0.6, 0.5);
        let bt = flow.transition(1.1, z).unwrap();
        let lhs = koebe_eval(1.1, bt).unwrap();
        let rhs = koebe_eval(0.2, z).unwrap();
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm().max(1.0));
    }

    #[test]
    fn semigroup_law() {
        let mut rng = Lcg::new(4);
        for _ in 0..100 {
            let mut ts = [rng.next_f64(), rng.next_f64(), rng.next_f64()];
            ts.sort_by(f64::total_cmp);
            let [r, s, t] = ts;
            let z = rng.disk_point(0.9);
            let rt = RadialFlowSpec::koebe(r, t).unwrap().transition(t, z).unwrap();
            let rs = RadialFlowSpec::koebe(r, s).unwrap().transition(s, z).unwrap();
            let st = RadialFlowSpec::koebe(s, t).unwrap().transition(t, rs).unwrap();
            assert!((rt - st).norm() <= 1e-9);
        }
    }

    #[test]
    fn backend_agreement() {
        let rk = RadialFlowSpec::koebe_rk(0.0, 1.0, OdeConfig::default()).unwrap();
        let closed = RadialFlowSpec::koebe(0.0, 1.0).unwrap();
        let mut rng = Lcg::new(5);
        for _ in 0..100 {
            let t = rng.next_f64();
            let z = rng.disk_point(0.9);
            let a = closed.transition(t, z).unwrap();
            let b = rk.transition(t, z).unwrap();
            assert!((a - b).norm() <= 1e-6);
            assert!(a.norm() < 1.0);
        }
    }

    #[test]
    fn koebe_backend_requires_koebe_driver() {
        let mu = CircleMeasure::point_mass(c(1.0, 0.0)).unwrap();
        let driver = RadialDriver::constant(mu).unwrap();
        assert!(RadialFlowSpec::new(driver.clone(), 0.0, 1.0, RadialBackend::KoebeClosedForm).is_err());
        assert!(RadialFlowSpec::new(driver, 0.0, 1.0, RadialBackend::RungeKutta(OdeConfig::default())).is_ok());
        assert!(RadialFlowSpec::koebe(1.0, 0.5).is_err());
        assert!(RadialFlowSpec::koebe(-0.5, 0.5).is_err());
        assert!(RadialFlowSpec::koebe_rk(0.0, 1e-4, OdeConfig::default()).is_err());
    }

    #[test]
    fn piecewise_driver_matches_composition() {
        // Two Koebe-equivalent segments: integrating across the breakpoint
        // must equal the closed form.
        let delta = CircleMeasure::point_mass(c(-1.0, 0.0)).unwrap();
        let driver = RadialDriver::new(vec![(0.0, delta.clone()), (0.37, delta)]).unwrap();
        assert!(driver.is_koebe());
        let rk = RadialFlowSpec::new(driver, 0.0, 1.0, RadialBackend::RungeKutta(OdeConfig::default())).unwrap();
        let closed = RadialFlowSpec::koebe(0.0, 1.0).unwrap();
        let z = c(0.4, 0.4);
        assert!((rk.transition(0.8, z).unwrap() - closed.transition(0.8, z).unwrap()).norm() < 1e-9);

        // rotated driver: B_t(z) for delta_{xi} is conj-rotation of the Koebe flow
        let xi = Complex64::from_polar(1.0, 0.9);
        let rotated = RadialDriver::new(vec![
            (0.0, CircleMeasure::point_mass(-xi.conj()).unwrap()),
            (0.5, CircleMeasure::point_mass(c(-1.0, 0.0)).unwrap()),
        ])
        .unwrap();
        let flow = RadialFlowSpec::new(rotated, 0.0, 1.0, RadialBackend::RungeKutta(OdeConfig::default())).unwrap();
        let half = flow.transition(0.5, z).unwrap();
        // phi = (1 - conj(xi) w)/(1 + conj(xi) w): conjugate by rotation w = xi v
        let expected_half = xi * closed.transition(0.5, z / xi).unwrap();
        assert!((half - expected_half).norm() < 1e-9);
        let full = flow.transition(1.0, z).unwrap();
        let expected_full = RadialFlowSpec::koebe(0.5, 1.0)
            .unwrap()
            .transition(1.0, expected_half)
            .unwrap();
        assert!((full - expected_full).norm() < 1e-9);
    }

    #[test]
    fn chordal_examples() {
        let flow = ChordalFlowSpec::basic_slit(0.0, 1.0).unwrap();
        let z = c(0.3, 0.8);
        assert_eq!(flow.transition(0.0, z).unwrap(), z);
        let v = flow.transition(1.0, c(0.0, 1.0)).unwrap();
        assert!((v - c(0.0, 3f64.sqrt())).norm() < 1e-15);
        let v = flow.transition(0.5, c(0.0, 2.0)).unwrap();
        assert!((v - c(0.0, 5f64.sqrt())).norm() < 1e-15);
        assert!(flow.transition(0.5, c(0.0, -1.0)).is_err());
    }

    #[test]
    fn chordal_ode_residual() {
        let flow = ChordalFlowSpec::basic_slit(0.0, 1.0).unwrap();
        let h = 1e-4;
        let mut rng = Lcg::new(6);
        for _ in 0..200 {
            let s = rng.uniform(0.1, 0.9);
            let z = rng.rect_point(Rect::HALF_PLANE);
            let d = (flow.transition(s + h, z).unwrap() - flow.transition(s - h, z).unwrap()) / (2.0 * h);
            let rhs = -ONE / flow.transition(s, z).unwrap();
            assert!((d - rhs).norm() / rhs.norm() <= 1e-5);
        }
    }

    #[test]
    fn chordal_rk_matches_closed_form() {
        let closed = ChordalFlowSpec::basic_slit(0.0, 1.0).unwrap();
        let rk = ChordalFlowSpec::new(
            ChordalDriver::BasicSlit,
            0.0,
            1.0,
            ChordalBackend::RungeKutta(OdeConfig::default()),
        )
        .unwrap();
        let measure = ChordalFlowSpec::new(
            ChordalDriver::Measure(
                ChordalMeasureDriver::new(vec![(0.0, LineMeasure::dirac(0.0, 1.0).unwrap())]).unwrap(),
            ),
            0.0,
            1.0,
            ChordalBackend::RungeKutta(OdeConfig::default()),
        )
        .unwrap();
        let mut rng = Lcg::new(8);
        for _ in 0..50 {
            let z = c(rng.uniform(-2.0, 2.0), rng.uniform(0.5, 2.5));
            let t = rng.next_f64();
            let a = closed.transition(t, z).unwrap();
            assert!((a - rk.transition(t, z).unwrap()).norm() < 1e-9);
            assert!((a - measure.transition(t, z).unwrap()).norm() < 1e-9);
        }
    }

    #[test]
    fn chordal_escape_reported() {
        // z just above the slit base gets absorbed quickly
        let rk = ChordalFlowSpec::new(
            ChordalDriver::BasicSlit,
            0.0,
            1.0,
            ChordalBackend::RungeKutta(OdeConfig::new(0.01).unwrap()),
        )
        .unwrap();
        let r = rk.transition(1.0, c(0.0, 1e-3));
        assert!(matches!(r, Err(Error::FlowEscape { .. }) | Ok(_)));
        // a point at the boundary itself is a domain error, not an escape
        assert!(matches!(rk.transition(1.0, c(0.0, 0.0)), Err(Error::Domain { .. })));
    }

    #[test]
    fn sqrt_h_squares_back() {
        let mut rng = Lcg::new(10);
        for _ in 0..1000 {
            let z = rng.rect_point(Rect::new(-5.0, 5.0, 1e-3, 5.0));
            let r = sqrt_h(z * z);
            assert!(r.im > 0.0);
            assert!((r - z).norm() <= 1e-12 * z.norm().max(1.0));
        }
    }

    #[test]
    fn trace_examples() {
        let degenerate = RadialFlowSpec::koebe(0.3, 0.3).unwrap();
        let z = c(0.1, 0.2);
        assert_eq!(flow_trace(&degenerate, z, 2).unwrap(), vec![(0.3, z), (0.3, z)]);

        let slit = ChordalFlowSpec::basic_slit(0.0, 1.0).unwrap();
        let tr = flow_trace(&slit, c(0.0, 1.0), 3).unwrap();
        let expected = [(0.0, 1.0), (0.5, 2f64.sqrt()), (1.0, 3f64.sqrt())];
        for ((t, b), (et, eim)) in tr.iter().zip(expected) {
            assert_eq!(*t, et);
            assert!((b - c(0.0, eim)).norm() < 1e-15);
        }

        let koebe = RadialFlowSpec::koebe(0.0, 1.0).unwrap();
        let tr = flow_trace(&koebe, c(0.3, 0.0), 11).unwrap();
        assert_eq!(tr.len(), 11);
        assert_eq!(tr[0], (0.0, c(0.3, 0.0)));
        assert!(tr.windows(2).all(|w| w[1].1.norm() < w[0].1.norm()));

        assert!(flow_trace(&koebe, z, 1).is_err());
    }
}
