//! Integral identities checked by quadrature, and explicit elements of
//! de Branges-Rovnyak and Pick spaces.
//!
//! Every check returns an [`IdentityReport`]. Quadrature is taken over the
//! flow interval split at driver breakpoints, one copy of the chosen rule per
//! piece, so integrands are smooth on every piece.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flows::{ChordalDriver, ChordalFlowSpec, LoewnerFlow, RadialFlowSpec};
use crate::kernels::{gram, sinc_kernel, KernelSpec};
use crate::map::{halfplane_map_to_disk, HoloMap};
use crate::moebius::{cayley_to_halfplane, Domain};
use crate::quadrature::{QuadratureRule, RuleKind};
use crate::representations::{herglotz_atom, herglotz_eval, pick_eval, pick_map, CircleMeasure, PickRepresentation};

pub const RESOLUTION_TOL: f64 = 1e-8;
pub const DERIVATIVE_TOL: f64 = 1e-5;
pub const KOEBE_LOG_TOL: f64 = 1e-8;
pub const CAYLEY_TOL: f64 = 1e-10;
pub const EXACT_TOL: f64 = 1e-12;
pub const CHORDAL_EXP_TOL: f64 = 1e-8;
pub const PW_TOL: f64 = 1e-10;

/// Default finite-difference step in `t`.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity_name: String,
    pub sample_pairs: usize,
    /// Largest error over the sample; relative (against `max(1, |rhs|)`) for
    /// the derivative identities, absolute otherwise.
    pub max_abs_err: f64,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, sample_pairs: usize, max_abs_err: f64, tol: f64) -> Self {
        IdentityReport {
            identity_name: name.into(),
            sample_pairs,
            max_abs_err,
            tol,
            pass: max_abs_err <= tol,
        }
    }

    /// Worst case over several reports of the same identity.
    pub fn aggregate(name: impl Into<String>, reports: &[IdentityReport]) -> Self {
        let pairs = reports.iter().map(|r| r.sample_pairs).sum();
        let err = reports.iter().map(|r| r.max_abs_err).fold(0.0, nan_max);
        let tol = reports.iter().map(|r| r.tol).fold(f64::INFINITY, f64::min);
        let mut out = IdentityReport::new(name, pairs, err, tol);
        out.pass = !reports.is_empty() && reports.iter().all(|r| r.pass);
        out
    }
}

/// `max` that propagates NaN so that a NaN error can never pass.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn max_err<T>(items: &[T], mut err: impl FnMut(&T) -> Result<f64>) -> Result<f64> {
    items.iter().try_fold(0.0, |acc, it| Ok(nan_max(acc, err(it)?)))
}

fn flow_rule<F: LoewnerFlow + ?Sized>(flow: &F, kind: RuleKind) -> Result<QuadratureRule> {
    QuadratureRule::piecewise(kind, &flow.breakpoints())
}

fn require_basic_slit(flow: &ChordalFlowSpec) -> Result<()> {
    match flow.driver() {
        ChordalDriver::BasicSlit => Ok(()),
        ChordalDriver::Measure(_) => Err(Error::InvalidFlow(
            "chordal expansions are implemented for the basic slit driver only".into(),
        )),
    }
}

/// `sum_i w_i conj(B(x_i, lambda)) B(x_i, z) k(x_i, z, lambda)`.
pub fn integrated_kernel<B, K>(b: B, k: K, rule: &QuadratureRule, lambda: Complex64, z: Complex64) -> Result<Complex64>
where
    B: Fn(f64, Complex64) -> Result<Complex64>,
    K: Fn(f64, Complex64, Complex64) -> Result<Complex64>,
{
    rule.integrate_complex(|x| Ok(b(x, lambda)?.conj() * b(x, z)? * k(x, z, lambda)?))
}

/// `sum_i w_i k(x_i, B(x_i, z), B(x_i, lambda))`.
pub fn jb_kernel<B, K>(k: K, b: B, rule: &QuadratureRule, lambda: Complex64, z: Complex64) -> Result<Complex64>
where
    B: Fn(f64, Complex64) -> Result<Complex64>,
    K: Fn(f64, Complex64, Complex64) -> Result<Complex64>,
{
    rule.integrate_complex(|x| k(x, b(x, z)?, b(x, lambda)?))
}

/// Time-limited Fourier transform over `[-A, A]` against the sinc kernel:
/// `int e^{2 pi i conj(lambda) t} e^{-2 pi i z t} dt = sin(2 pi A d)/(pi d)`,
/// `d = z - conj(lambda)`.
pub fn pw_reconstruction_check(
    a: f64,
    kind: RuleKind,
    pairs: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<IdentityReport> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidArgument(format!("bandwidth {a} must be positive")));
    }
    let rule = QuadratureRule::new(kind, -a, a)?;
    let fourier = |t: f64, z: Complex64| Ok((Complex64::new(0.0, -2.0 * PI * t) * z).exp());
    let err = max_err(pairs, |&(lambda, z)| {
        let lhs = integrated_kernel(fourier, |_, _, _| Ok(ONE), &rule, lambda, z)?;
        Ok((lhs - sinc_kernel(a, z - lambda.conj())).norm())
    })?;
    Ok(IdentityReport::new(
        "paley-wiener-reconstruction",
        pairs.len(),
        err,
        tol,
    ))
}

/// `1 + int_a^b conj(B_t(lambda)) B_t(mu) k(t, mu, lambda) dt` against the
/// de Branges-Rovnyak kernel of `B_b`, for each pair `(lambda, mu)`.
pub fn resolution_check(
    flow: &RadialFlowSpec,
    kind: RuleKind,
    pairs: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<IdentityReport> {
    let rule = flow_rule(flow, kind)?;
    let (_, b) = flow.interval();
    let err = max_err(pairs, |&(lambda, mu)| {
        let integral = rule.integrate_complex(|t| {
            let bl = flow.transition(t, lambda)?;
            let bm = flow.transition(t, mu)?;
            let k = (flow.phi(t, bl)?.conj() + flow.phi(t, bm)?) / (ONE - lambda.conj() * mu);
            Ok(bl.conj() * bm * k)
        })?;
        let bl = flow.transition(b, lambda)?;
        let bm = flow.transition(b, mu)?;
        let rhs = (ONE - bl.conj() * bm) / (ONE - lambda.conj() * mu);
        Ok((ONE + integral - rhs).norm())
    })?;
    Ok(IdentityReport::new("resolution", pairs.len(), err, tol))
}

/// Derivative of `q` at `t` on `[a, b]`: central difference when it fits,
/// otherwise the second-order one-sided formula.
pub fn time_derivative<Q>(q: Q, t: f64, (a, b): (f64, f64), h: f64) -> Result<Complex64>
where
    Q: Fn(f64) -> Result<Complex64>,
{
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidArgument(format!("step {h} must be positive")));
    }
    if b - a < 2.0 * h {
        return Err(Error::InvalidArgument(format!(
            "step {h} too large for interval [{a}, {b}]"
        )));
    }
    if !(a..=b).contains(&t) {
        return Err(Error::InvalidArgument(format!("time {t} outside [{a}, {b}]")));
    }
    if t - h >= a && t + h <= b {
        Ok((q(t + h)? - q(t - h)?) / (2.0 * h))
    } else if t + 2.0 * h <= b {
        Ok((-3.0 * q(t)? + 4.0 * q(t + h)? - q(t + 2.0 * h)?) / (2.0 * h))
    } else {
        Ok((3.0 * q(t)? - 4.0 * q(t - h)? + q(t - 2.0 * h)?) / (2.0 * h))
    }
}

fn relative_err(fd: Complex64, rhs: Complex64) -> f64 {
    (fd - rhs).norm() / rhs.norm().max(1.0)
}

/// `d/dt (1 - conj B_t(lambda) B_t(z))/(1 - conj(lambda) z)` against
/// `k(t, z, lambda) conj(B_t(lambda)) B_t(z)`.
pub fn radial_derivative_identity_check(
    flow: &RadialFlowSpec,
    t: f64,
    lambda: Complex64,
    z: Complex64,
    h: f64,
    tol: f64,
) -> Result<IdentityReport> {
    let denom = ONE - lambda.conj() * z;
    let q = |s: f64| -> Result<Complex64> {
        Ok((ONE - flow.transition(s, lambda)?.conj() * flow.transition(s, z)?) / denom)
    };
    let fd = time_derivative(q, t, flow.interval(), h)?;
    let bl = flow.transition(t, lambda)?;
    let bz = flow.transition(t, z)?;
    let k = (flow.phi(t, bl)?.conj() + flow.phi(t, bz)?) / denom;
    let rhs = k * bl.conj() * bz;
    Ok(IdentityReport::new("radial-derivative", 1, relative_err(fd, rhs), tol))
}

/// `d/dt (B_t(z) - conj B_t(alpha))/(z - conj alpha)` against the same
/// quotient divided by `conj(B_t(alpha)) B_t(z)`.
///
/// `z - conj(alpha)` has positive imaginary part on the half-plane, so the
/// quotient is always defined.
pub fn chordal_derivative_identity_check(
    flow: &ChordalFlowSpec,
    t: f64,
    alpha: Complex64,
    z: Complex64,
    h: f64,
    tol: f64,
) -> Result<IdentityReport> {
    require_basic_slit(flow)?;
    let denom = z - alpha.conj();
    let q = |s: f64| -> Result<Complex64> { Ok((flow.transition(s, z)? - flow.transition(s, alpha)?.conj()) / denom) };
    let fd = time_derivative(q, t, flow.interval(), h)?;
    let ba = flow.transition(t, alpha)?;
    let bz = flow.transition(t, z)?;
    let rhs = (bz - ba.conj()) / denom / (ba.conj() * bz);
    Ok(IdentityReport::new("chordal-derivative", 1, relative_err(fd, rhs), tol))
}

/// Right-continuous piecewise-constant real function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepFunction {
    /// `(start, value)`; the first value also applies before its start.
    pieces: Vec<(f64, f64)>,
}

impl StepFunction {
    pub fn new(pieces: Vec<(f64, f64)>) -> Result<Self> {
        if pieces.is_empty()
            || pieces.iter().any(|p| !(p.0.is_finite() && p.1.is_finite()))
            || pieces.windows(2).any(|w| w[0].0 >= w[1].0)
        {
            return Err(Error::InvalidArgument(
                "step function needs finite values and strictly increasing starts".into(),
            ));
        }
        Ok(StepFunction { pieces })
    }

    pub fn constant(v: f64) -> Self {
        StepFunction {
            pieces: vec![(f64::MIN, v)],
        }
    }

    pub fn value_at(&self, t: f64) -> f64 {
        let idx = self.pieces.partition_point(|p| p.0 <= t).saturating_sub(1);
        self.pieces[idx].1
    }

    /// Jump locations strictly inside `(a, b)`.
    pub fn breaks_in(&self, a: f64, b: f64) -> Vec<f64> {
        self.pieces
            .iter()
            .skip(1)
            .map(|p| p.0)
            .filter(|&s| s > a && s < b)
            .collect()
    }

    pub fn add(&self, other: &StepFunction) -> StepFunction {
        let mut starts: Vec<f64> = self.pieces.iter().chain(&other.pieces).map(|p| p.0).collect();
        starts.sort_by(f64::total_cmp);
        starts.dedup();
        let pieces = starts
            .into_iter()
            .map(|s| (s, self.value_at(s) + other.value_at(s)))
            .collect();
        StepFunction { pieces }
    }
}

/// Element of `H(B_b)` built from a step function `h` and a base point
/// `lambda`, for the Koebe semigroup (driver `delta_{-1}`):
///
/// `F(z) = int_a^b B_t(z) (1 - conj(B_t(lambda)) B_t(z))/(1 - conj(lambda) z)
///        * h(t) / ((1 + conj B_t(lambda))(1 + B_t(z))) dt`.
#[derive(Debug, Clone)]
pub struct DbrElement {
    flow: RadialFlowSpec,
    lambda: Complex64,
    /// `(t_i, w_i h(t_i), B_{t_i}(lambda))`.
    nodes: Arc<[(f64, f64, Complex64)]>,
}

pub fn dbr_element(flow: &RadialFlowSpec, h: &StepFunction, lambda: Complex64, kind: RuleKind) -> Result<DbrElement> {
    if !flow.is_koebe() {
        return Err(Error::InvalidFlow(
            "explicit elements are implemented for the Koebe driver only".into(),
        ));
    }
    let (a, b) = flow.interval();
    let mut breaks = flow.breakpoints();
    breaks.extend(h.breaks_in(a, b));
    breaks.sort_by(f64::total_cmp);
    dbr_element_with_rule(flow, h, lambda, &QuadratureRule::piecewise(kind, &breaks)?)
}

/// As [`dbr_element`] with an explicit rule over the flow interval. The rule
/// should break at the jumps of `h`; elements sharing a rule are exactly
/// linear in `h`.
pub fn dbr_element_with_rule(
    flow: &RadialFlowSpec,
    h: &StepFunction,
    lambda: Complex64,
    rule: &QuadratureRule,
) -> Result<DbrElement> {
    if !flow.is_koebe() {
        return Err(Error::InvalidFlow(
            "explicit elements are implemented for the Koebe driver only".into(),
        ));
    }
    if rule.interval() != flow.interval() {
        return Err(Error::InvalidArgument(format!(
            "rule interval {:?} differs from flow interval {:?}",
            rule.interval(),
            flow.interval()
        )));
    }
    let lambda = Domain::Disk.check(lambda)?;
    let nodes = rule
        .nodes()
        .iter()
        .map(|&(t, w)| Ok((t, w * h.value_at(t), flow.transition(t, lambda)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(DbrElement {
        flow: flow.clone(),
        lambda,
        nodes: nodes.into(),
    })
}

impl DbrElement {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let z = Domain::Disk.check(z)?;
        let denom = ONE - self.lambda.conj() * z;
        self.nodes.iter().try_fold(ZERO, |acc, &(t, wh, bl)| {
            if wh == 0.0 {
                return Ok(acc);
            }
            let bz = self.flow.transition(t, z)?;
            let dbr = (ONE - bl.conj() * bz) / denom;
            Ok(acc + wh * bz * dbr / ((ONE + bl.conj()) * (ONE + bz)))
        })
    }

    pub fn to_map(&self, label: impl Into<String>) -> HoloMap {
        let me = self.clone();
        HoloMap::new(label, move |z| me.eval(z))
    }
}

/// `log((1 - B_b(z))/(1 - z))` as a difference of principal logarithms.
///
/// Both `1 - B_b(z)` and `1 - z` have positive real part on the disk; a
/// violation is reported instead of continuing on another branch.
pub fn koebe_log_closed_form(flow: &RadialFlowSpec, z: Complex64) -> Result<Complex64> {
    let (_, b) = flow.interval();
    let bb = flow.transition(b, z)?;
    let (num, den) = (ONE - bb, ONE - z);
    if !(num.re > 0.0 && den.re > 0.0) {
        return Err(Error::LogBranch {
            point: z,
            detail: format!("Re(1 - B_b(z)) = {}, Re(1 - z) = {}", num.re, den.re),
        });
    }
    Ok(num.ln() - den.ln())
}

/// The element with `h = 1`, `lambda = 0` against its closed form.
pub fn koebe_log_element_check(
    flow: &RadialFlowSpec,
    kind: RuleKind,
    points: &[Complex64],
    tol: f64,
) -> Result<IdentityReport> {
    let f = dbr_element(flow, &StepFunction::constant(1.0), ZERO, kind)?;
    let err = max_err(points, |&z| Ok((f.eval(z)? - koebe_log_closed_form(flow, z)?).norm()))?;
    Ok(IdentityReport::new("koebe-log-element", points.len(), err, tol))
}

fn checked_one_minus(psi_z: Complex64, z: Complex64) -> Result<Complex64> {
    let d = ONE - psi_z;
    if d.norm() < 1e-12 {
        return Err(Error::Degenerate(format!("psi({z}) = 1")));
    }
    Ok(d)
}

/// Pick kernel of `phi = T psi T^{-1}` at `(T(mu), T(lambda))` against the
/// rescaled de Branges-Rovnyak kernel of `psi` at `(mu, lambda)`.
pub fn cayley_isometry_check(psi: &HoloMap, pairs: &[(Complex64, Complex64)], tol: f64) -> Result<IdentityReport> {
    let err = max_err(pairs, |&(lambda, mu)| {
        let (pl, pm) = (psi.eval(lambda)?, psi.eval(mu)?);
        let (cl, cm) = (checked_one_minus(pl, lambda)?, checked_one_minus(pm, mu)?);
        let (alpha, beta) = (cayley_to_halfplane(lambda)?, cayley_to_halfplane(mu)?);
        let (fa, fb) = (cayley_to_halfplane(pl)?, cayley_to_halfplane(pm)?);
        let lhs = (fb - fa.conj()) / (beta - alpha.conj());
        let rhs =
            (ONE - lambda.conj()) / cl.conj() * (ONE - mu) / cm * (ONE - pl.conj() * pm) / (ONE - lambda.conj() * mu);
        Ok((lhs - rhs).norm())
    })?;
    Ok(IdentityReport::new("cayley-isometry", pairs.len(), err, tol))
}

/// Gram of the Pick kernel of `T psi T^{-1}` on `T(points)`, with columns
/// rescaled by `(1 - conj psi(lambda_j))/(1 - conj lambda_j)`, against the
/// de Branges-Rovnyak Gram of `psi` on `points`.
pub fn cayley_gram_check(psi: &HoloMap, points: &[Complex64], tol: f64) -> Result<IdentityReport> {
    let phi = crate::map::disk_map_to_halfplane(psi);
    let alphas = points
        .iter()
        .map(|&l| cayley_to_halfplane(l))
        .collect::<Result<Vec<_>>>()?;
    let scale = points
        .iter()
        .map(|&l| Ok(checked_one_minus(psi.eval(l)?, l)?.conj() / (ONE - l.conj())))
        .collect::<Result<Vec<_>>>()?;
    let gp = gram(&KernelSpec::PickSpace(phi), &alphas)?;
    let gh = gram(&KernelSpec::DbrDisk(psi.clone()), points)?;
    let n = points.len();
    let mut err: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let mapped = scale[j] * scale[i].conj() * gp.get(i, j);
            err = nan_max(err, (mapped - gh.get(i, j)).norm());
        }
    }
    Ok(IdentityReport::new("cayley-gram", n * n, err, tol))
}

/// `psi = T^{-1} phi T` for the Pick function of `rep`.
pub fn pick_disk_map(rep: &PickRepresentation) -> HoloMap {
    halfplane_map_to_disk(&pick_map(rep))
}

/// `F(z) = (1 - psi(z))/(1 - z)`, the preimage of the constant `1` under the
/// Cayley isometry; requires `c != 0`.
pub fn pick_constant_element(rep: &PickRepresentation) -> Result<HoloMap> {
    if rep.c() == 0.0 {
        return Err(Error::InvalidRepresentation(
            "constants lie in the Pick space only when c != 0".into(),
        ));
    }
    let psi = pick_disk_map(rep);
    Ok(HoloMap::new("(1 - psi)/(1 - z)", move |z| {
        let z = Domain::Disk.check(z)?;
        Ok((ONE - psi.eval(z)?) / (ONE - z))
    }))
}

/// Pick kernel against `c + (1/pi) sum w / ((t - conj w)(t - z))`.
pub fn nevanlinna_split_check(
    rep: &PickRepresentation,
    pairs: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<IdentityReport> {
    let err = max_err(pairs, |&(z, w)| {
        let z = Domain::HalfPlane.check(z)?;
        let w = Domain::HalfPlane.check(w)?;
        let lhs = (pick_eval(rep, z)? - pick_eval(rep, w)?.conj()) / (z - w.conj());
        let atoms: Complex64 = rep
            .mu()
            .atoms()
            .iter()
            .map(|a| a.weight / ((a.location - w.conj()) * (a.location - z)))
            .sum();
        Ok((lhs - (rep.c() + atoms / PI)).norm())
    })?;
    Ok(IdentityReport::new("nevanlinna-split", pairs.len(), err, tol))
}

/// `exp(int_a^b dt / (conj(B_t(alpha)) B_t(z)))` against the Pick kernel of
/// `B_b` at `(z, alpha)`.
pub fn chordal_exp_kernel_check(
    flow: &ChordalFlowSpec,
    kind: RuleKind,
    pairs: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<IdentityReport> {
    require_basic_slit(flow)?;
    let rule = flow_rule(flow, kind)?;
    let (_, b) = flow.interval();
    let err = max_err(pairs, |&(alpha, z)| {
        let integral =
            rule.integrate_complex(|t| Ok(ONE / (flow.transition(t, alpha)?.conj() * flow.transition(t, z)?)))?;
        let rhs = (flow.transition(b, z)? - flow.transition(b, alpha)?.conj()) / (z - alpha.conj());
        Ok((integral.exp() - rhs).norm())
    })?;
    Ok(IdentityReport::new("chordal-exp-kernel", pairs.len(), err, tol))
}

/// `z -> exp(z - B_b(z))`.
pub fn chordal_exp_element(flow: &ChordalFlowSpec) -> Result<HoloMap> {
    require_basic_slit(flow)?;
    let flow = flow.clone();
    let b = flow.interval().1;
    Ok(HoloMap::new("exp(z - B_b(z))", move |z| {
        Ok((z - flow.transition(b, z)?).exp())
    }))
}

/// `exp(int_a^b dt / B_t(z))` against `exp(z - B_b(z))`.
pub fn chordal_exp_element_check(
    flow: &ChordalFlowSpec,
    kind: RuleKind,
    points: &[Complex64],
    tol: f64,
) -> Result<IdentityReport> {
    let closed = chordal_exp_element(flow)?;
    let rule = flow_rule(flow, kind)?;
    let err = max_err(points, |&z| {
        let integral = rule.integrate_complex(|t| Ok(ONE / flow.transition(t, z)?))?;
        Ok((integral.exp() - closed.eval(z)?).norm())
    })?;
    Ok(IdentityReport::new("chordal-exp-element", points.len(), err, tol))
}

/// `sum w_xi k_{phi_xi}(z, lambda)` against `k_{phi_mu}(z, lambda)` for the
/// Herglotz kernel `(conj phi(lambda) + phi(z))/(1 - conj(lambda) z)`.
pub fn herglotz_mixture_check(
    mu: &CircleMeasure,
    pairs: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<IdentityReport> {
    if !mu.is_probability() {
        return Err(Error::InvalidMeasure(format!(
            "mixture measure has total mass {}, expected 1",
            mu.total_mass()
        )));
    }
    let err = max_err(pairs, |&(z, lambda)| {
        let denom = ONE - lambda.conj() * z;
        let mixed = mu.atoms().iter().try_fold(ZERO, |acc, a| {
            let k = herglotz_atom(a.location, lambda)?.conj() + herglotz_atom(a.location, z)?;
            Ok::<_, Error>(acc + a.weight * k / denom)
        })?;
        let direct = (herglotz_eval(mu, lambda)?.conj() + herglotz_eval(mu, z)?) / denom;
        Ok((mixed - direct).norm())
    })?;
    Ok(IdentityReport::new("herglotz-mixture", pairs.len(), err, tol))
}
