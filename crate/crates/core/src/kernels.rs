//! Kernel catalog, Gram matrices, positivity checks and finite-section norm
//! estimates.
//!
//! The membership test is a numerical heuristic. For a candidate `F` and a
//! nested family of sample sets it computes the regularised quadratic forms
//! `m_n = v_n^* (K_n + eps I)^{-1} v_n`, `v_n = F(points_n)`. These are
//! nondecreasing in `n` (they are values of a ridge-regression objective over
//! a growing constraint set) and approach `||F||^2` when `F` belongs to the
//! space. A plateau is reported as `Bounded`, fast growth as `Unbounded`.
//! Neither verdict is a proof.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flows::{LoewnerFlow, RadialFlowSpec};
use crate::map::HoloMap;
use crate::moebius::Domain;

/// Points closer than this are rejected when assembling a Gram matrix.
pub const DUPLICATE_THRESHOLD: f64 = 1e-10;

/// Default regularisation is `EPS_SCALE * trace(K) / n`.
pub const EPS_SCALE: f64 = 1e-10;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone)]
pub enum KernelSpec {
    /// `(1 - conj B(w) B(z)) / (1 - conj(w) z)` for a self-map `B` of the disk.
    DbrDisk(HoloMap),
    /// `(conj phi(w) + phi(z)) / (1 - conj(w) z)` for a Herglotz `phi`.
    HerglotzSpace(HoloMap),
    /// `(phi(z) - conj phi(w)) / (z - conj w)` for a Pick `phi`.
    PickSpace(HoloMap),
    /// `sin(2 pi A (z - conj w)) / (pi (z - conj w))`.
    PaleyWiener { a: f64 },
    /// `(conj phi(t, B_t(w)) + phi(t, B_t(z))) / (1 - conj(w) z)`.
    LoewnerTime { flow: RadialFlowSpec, t: f64 },
}

impl KernelSpec {
    pub fn paley_wiener(a: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "Paley-Wiener bandwidth {a} must be positive"
            )));
        }
        Ok(KernelSpec::PaleyWiener { a })
    }

    pub fn loewner_time(flow: RadialFlowSpec, t: f64) -> Result<Self> {
        let (a, b) = flow.interval();
        if !(a..=b).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "kernel time {t} outside flow interval [{a}, {b}]"
            )));
        }
        Ok(KernelSpec::LoewnerTime { flow, t })
    }

    pub fn domain(&self) -> Domain {
        match self {
            KernelSpec::DbrDisk(_) | KernelSpec::HerglotzSpace(_) | KernelSpec::LoewnerTime { .. } => Domain::Disk,
            KernelSpec::PickSpace(_) => Domain::HalfPlane,
            KernelSpec::PaleyWiener { .. } => Domain::Plane,
        }
    }

    pub fn name(&self) -> String {
        match self {
            KernelSpec::DbrDisk(b) => format!("dbr-disk[{}]", b.label()),
            KernelSpec::HerglotzSpace(phi) => format!("herglotz[{}]", phi.label()),
            KernelSpec::PickSpace(phi) => format!("pick[{}]", phi.label()),
            KernelSpec::PaleyWiener { a } => format!("paley-wiener[A={a}]"),
            KernelSpec::LoewnerTime { t, .. } => format!("loewner-time[t={t}]"),
        }
    }

    /// `k(z, w)`; the column `k(., w)` is the reproducing kernel at `w`.
    pub fn eval(&self, z: Complex64, w: Complex64) -> Result<Complex64> {
        let domain = self.domain();
        let z = domain.check(z)?;
        let w = domain.check(w)?;
        match self {
            KernelSpec::DbrDisk(b) => {
                let (bz, bw) = (b.eval(z)?, b.eval(w)?);
                Ok((ONE - bw.conj() * bz) / (ONE - w.conj() * z))
            }
            KernelSpec::HerglotzSpace(phi) => {
                let (pz, pw) = (phi.eval(z)?, phi.eval(w)?);
                Ok((pw.conj() + pz) / (ONE - w.conj() * z))
            }
            KernelSpec::PickSpace(phi) => {
                let (pz, pw) = (phi.eval(z)?, phi.eval(w)?);
                Ok((pz - pw.conj()) / (z - w.conj()))
            }
            KernelSpec::PaleyWiener { a } => Ok(sinc_kernel(*a, z - w.conj())),
            KernelSpec::LoewnerTime { flow, t } => loewner_time_kernel(flow, *t, z, w),
        }
    }
}

/// `sin(2 pi A d) / (pi d)`, with value `2A` at `d = 0`.
pub(crate) fn sinc_kernel(a: f64, d: Complex64) -> Complex64 {
    let x = 2.0 * PI * a * d;
    if x.norm() < 1e-6 {
        // sin(x)/x = 1 - x^2/6 + O(x^4)
        2.0 * a * (ONE - x * x / 6.0)
    } else {
        x.sin() / (PI * d)
    }
}

pub(crate) fn loewner_time_kernel(flow: &RadialFlowSpec, t: f64, z: Complex64, w: Complex64) -> Result<Complex64> {
    let bz = flow.transition(t, z)?;
    let bw = flow.transition(t, w)?;
    let pz = flow.phi(t, bz)?;
    let pw = flow.phi(t, bw)?;
    Ok((pw.conj() + pz) / (ONE - w.conj() * z))
}

pub fn kernel_eval(spec: &KernelSpec, z: Complex64, w: Complex64) -> Result<Complex64> {
    spec.eval(z, w)
}

/// Hermitian matrix `K[i][j] = k(z_i, z_j)` over a point set.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    points: Vec<Complex64>,
    entries: DMatrix<Complex64>,
}

impl GramMatrix {
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|d| d.re).sum()
    }

    /// Leading `n x n` block, i.e. the Gram matrix of the first `n` points.
    pub fn leading(&self, n: usize) -> GramMatrix {
        GramMatrix {
            points: self.points[..n].to_vec(),
            entries: self.entries.view((0, 0), (n, n)).into_owned(),
        }
    }

    /// Test hook: flips the sign of one diagonal entry so the matrix can no
    /// longer be positive semidefinite.
    #[doc(hidden)]
    pub fn corrupt_diagonal(&mut self, i: usize) {
        self.entries[(i, i)] = -self.entries[(i, i)];
    }

    /// Largest `|K[i][j] - conj K[j][i]|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.len();
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..=i {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `v^* (K + eps I)^{-1} v`.
    pub fn quadratic_form(&self, values: &[Complex64], eps: f64) -> Result<f64> {
        let n = self.len();
        if values.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} values for {n} points",
                values.len()
            )));
        }
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidArgument(format!("regularisation {eps} must be positive")));
        }
        if n == 0 {
            return Ok(0.0);
        }
        let v = DVector::from_column_slice(values);
        let mut reg = self.entries.clone();
        for i in 0..n {
            reg[(i, i)] += eps;
        }
        let chol = reg
            .cholesky()
            .ok_or_else(|| Error::LinearSolve("K + eps I is not numerically positive definite".into()))?;
        let x = chol.solve(&v);
        let q = v.dotc(&x);
        if !q.re.is_finite() {
            return Err(Error::LinearSolve("non-finite quadratic form".into()));
        }
        Ok(q.re)
    }
}

impl Serialize for GramMatrix {
    /// `{"n": n, "points": [[re, im], ...], "entries": [[re, im], ...]}` with
    /// entries in row-major order.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.len();
        let points: Vec<[f64; 2]> = self.points.iter().map(|p| [p.re, p.im]).collect();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = self.entries[(i, j)];
                entries.push([e.re, e.im]);
            }
        }
        let mut st = s.serialize_struct("GramMatrix", 3)?;
        st.serialize_field("n", &n)?;
        st.serialize_field("points", &points)?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

fn check_distinct(points: &[Complex64]) -> Result<()> {
    for i in 0..points.len() {
        for j in 0..i {
            if (points[i] - points[j]).norm() < DUPLICATE_THRESHOLD {
                return Err(Error::DuplicatePoint(j, i));
            }
        }
    }
    Ok(())
}

/// Gram matrix of `spec` over `points`.
///
/// Only the upper triangle is evaluated; the lower triangle is its conjugate
/// and the diagonal is made exactly real.
pub fn gram(spec: &KernelSpec, points: &[Complex64]) -> Result<GramMatrix> {
    check_distinct(points)?;
    let n = points.len();
    let mut entries = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let k = spec.eval(points[i], points[j])?;
            if i == j {
                entries[(i, i)] = Complex64::new(k.re, 0.0);
            } else {
                entries[(i, j)] = k;
                entries[(j, i)] = k.conj();
            }
        }
    }
    Ok(GramMatrix {
        points: points.to_vec(),
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub pass: bool,
}

/// Smallest eigenvalue of a Hermitian Gram matrix; passes iff
/// `min_eig >= -tol * max(1, max_eig)`.
pub fn psd_check(k: &GramMatrix, tol: f64) -> Result<PsdReport> {
    if k.is_empty() {
        return Err(Error::InvalidArgument("empty Gram matrix".into()));
    }
    let eig = k
        .entries
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or(Error::EigenNonConvergence)?;
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let max = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(min.is_finite() && max.is_finite()) {
        return Err(Error::EigenNonConvergence);
    }
    Ok(PsdReport {
        min_eigenvalue: min,
        max_eigenvalue: max,
        pass: min >= -tol * max.max(1.0),
    })
}

/// Regularised finite-section norm `v^* (K + eps I)^{-1} v`.
pub fn rkhs_norm_estimate(spec: &KernelSpec, points: &[Complex64], values: &[Complex64], eps: f64) -> Result<f64> {
    gram(spec, points)?.quadratic_form(values, eps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

/// Knobs of the membership heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipConfig {
    /// Fixed regularisation; `None` means `EPS_SCALE * trace(K) / n` on the
    /// largest point set.
    pub eps: Option<f64>,
    /// Relative spread of the last three estimates below which the sequence
    /// counts as a plateau.
    pub plateau_rel: f64,
    /// Growth factor across the last doubling that counts as divergence.
    pub growth_ratio: f64,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig {
            eps: None,
            plateau_rel: 0.01,
            growth_ratio: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub point_counts: Vec<usize>,
    /// Squared-norm estimates `m_n`, one per point count.
    pub estimates: Vec<f64>,
    pub eps: f64,
    pub verdict: Verdict,
    /// `sqrt` of the final estimate when the verdict is `Bounded`.
    pub norm_bound: Option<f64>,
    /// Always `"finite-section heuristic"`: the verdict is not a certificate.
    pub method: String,
}

impl MembershipReport {
    /// Estimates are nondecreasing up to `slack` (relative to the largest).
    pub fn is_monotone(&self, slack: f64) -> bool {
        let scale = self.estimates.iter().copied().fold(1.0, f64::max);
        self.estimates.windows(2).all(|w| w[1] >= w[0] - slack * scale)
    }
}

fn classify(counts: &[usize], estimates: &[f64], cfg: &MembershipConfig) -> Verdict {
    let n = estimates.len();
    if n >= 3 {
        let tail = &estimates[n - 3..];
        let hi = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lo = tail.iter().copied().fold(f64::INFINITY, f64::min);
        if hi <= 0.0 || (hi - lo) < cfg.plateau_rel * hi {
            return Verdict::Bounded;
        }
    }
    if n >= 2 {
        let last = counts[n - 1];
        if let Some(j) = (0..n - 1).rev().find(|&j| 2 * counts[j] <= last) {
            let base = estimates[j];
            if estimates[n - 1] >= cfg.growth_ratio * base && estimates[n - 1] > 0.0 {
                return Verdict::Unbounded;
            }
        }
    }
    Verdict::Inconclusive
}

/// Runs the finite-section membership heuristic for `f` in the space of
/// `spec`.
///
/// Point set `n` is `points[..counts[n]]`; `counts` must be strictly
/// increasing and at most `points.len()`.
pub fn membership_test<F>(
    spec: &KernelSpec,
    f: F,
    points: &[Complex64],
    counts: &[usize],
    cfg: &MembershipConfig,
) -> Result<MembershipReport>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if counts.is_empty() || counts.windows(2).any(|w| w[0] >= w[1]) || counts[0] == 0 {
        return Err(Error::InvalidArgument(
            "point counts must be positive and strictly increasing".into(),
        ));
    }
    let largest = *counts.last().expect("nonempty");
    if largest > points.len() {
        return Err(Error::InvalidArgument(format!(
            "largest set needs {largest} points, only {} given",
            points.len()
        )));
    }
    let full = gram(spec, &points[..largest])?;
    let values = points[..largest].iter().map(|&z| f(z)).collect::<Result<Vec<_>>>()?;
    let eps = match cfg.eps {
        Some(e) => e,
        None => EPS_SCALE * full.trace() / largest as f64,
    };
    let estimates = counts
        .iter()
        .map(|&n| full.leading(n).quadratic_form(&values[..n], eps))
        .collect::<Result<Vec<_>>>()?;
    let verdict = classify(counts, &estimates, cfg);
    let norm_bound = match verdict {
        Verdict::Bounded => Some(estimates.last().copied().unwrap_or(0.0).max(0.0).sqrt()),
        _ => None,
    };
    Ok(MembershipReport {
        point_counts: counts.to_vec(),
        estimates,
        eps,
        verdict,
        norm_bound,
        method: "finite-section heuristic".into(),
    })
}

/// Largest diagonal value `k(z, z)` over a sample, a finite stand-in for
/// `sup_C k(z, z)` over a compact set.
pub fn diag_bound_scan(spec: &KernelSpec, sample: &[Complex64]) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::InvalidArgument("diagonal scan needs a nonempty sample".into()));
    }
    sample
        .iter()
        .try_fold(f64::NEG_INFINITY, |acc, &z| Ok(acc.max(spec.eval(z, z)?.re)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flows::{endpoint_map, LoewnerFlow};
    use crate::map::halfplane_map_to_disk;
    use crate::representations::{herglotz_map, CircleMeasure};
    use crate::sampling::{disk_grid, halfplane_grid, Lcg, Rect, DISK_RADIUS};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn koebe_dbr() -> KernelSpec {
        let flow = RadialFlowSpec::koebe(0.0, 1.0).unwrap();
        KernelSpec::DbrDisk(endpoint_map(&flow, "koebe B_1"))
    }

    fn catalog() -> Vec<KernelSpec> {
        let herglotz = herglotz_map(&CircleMeasure::point_mass(c(-1.0, 0.0)).unwrap()).unwrap();
        vec![
            koebe_dbr(),
            KernelSpec::HerglotzSpace(herglotz),
            KernelSpec::PickSpace(HoloMap::new("z - 1/z", |z: Complex64| Ok(z - 1.0 / z))),
            KernelSpec::paley_wiener(1.0).unwrap(),
            KernelSpec::loewner_time(RadialFlowSpec::koebe(0.0, 1.0).unwrap(), 0.5).unwrap(),
        ]
    }

    fn sample(spec: &KernelSpec, seed: u64, n: usize) -> Vec<Complex64> {
        match spec.domain() {
            Domain::Disk => disk_grid(seed, n, DISK_RADIUS),
            Domain::HalfPlane => halfplane_grid(seed, n, Rect::HALF_PLANE),
            Domain::Plane => halfplane_grid(seed, n, Rect::new(-2.0, 2.0, -0.1, 0.1)),
        }
    }

    #[test]
    fn kernel_examples() {
        let id = KernelSpec::DbrDisk(HoloMap::identity());
        assert!((id.eval(c(0.3, 0.1), c(-0.5, 0.2)).unwrap() - 1.0).norm() < 1e-15);

        let pw = KernelSpec::paley_wiener(1.5).unwrap();
        assert_eq!(pw.eval(c(0.7, 0.0), c(0.7, 0.0)).unwrap(), c(3.0, 0.0));
        // continuity across the removable singularity
        let near = pw.eval(c(0.7 + 1e-7, 0.0), c(0.7, 0.0)).unwrap();
        assert!((near - 3.0).norm() < 1e-10);
        let far = pw.eval(c(0.25, 0.0), c(0.0, 0.0)).unwrap();
        assert!((far - (2.0 * PI * 1.5 * 0.25).sin() / (PI * 0.25)).norm() < 1e-15);

        let flow = RadialFlowSpec::koebe(0.0, 1.0).unwrap();
        let lt = KernelSpec::loewner_time(flow.clone(), 0.5).unwrap();
        let lambda = c(0.4, -0.3);
        let diag = lt.eval(lambda, lambda).unwrap();
        let bt = flow.transition(0.5, lambda).unwrap();
        let expected = 2.0 * flow.phi(0.5, bt).unwrap().re / (1.0 - lambda.norm_sqr());
        assert!(diag.re >= 0.0);
        assert!((diag - expected).norm() < 1e-14);

        assert!(KernelSpec::paley_wiener(0.0).is_err());
        assert!(KernelSpec::loewner_time(flow, 2.0).is_err());
        assert!(id.eval(c(1.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn hermitian_symmetry_all_kinds() {
        for spec in catalog() {
            let mut rng = Lcg::new(21);
            for _ in 0..1000 {
                let (z, w) = match spec.domain() {
                    Domain::Disk => (rng.disk_point(0.9), rng.disk_point(0.9)),
                    Domain::HalfPlane => (rng.rect_point(Rect::HALF_PLANE), rng.rect_point(Rect::HALF_PLANE)),
                    Domain::Plane => (rng.disk_point(2.0), rng.disk_point(2.0)),
                };
                let kzw = spec.eval(z, w).unwrap();
                let kwz = spec.eval(w, z).unwrap();
                assert!(
                    (kzw - kwz.conj()).norm() <= 1e-12 * kzw.norm().max(1.0),
                    "{}: {kzw} vs {kwz}",
                    spec.name()
                );
            }
        }
    }

    #[test]
    fn gram_examples() {
        let id = KernelSpec::DbrDisk(HoloMap::identity());
        let g = gram(&id, &[c(0.1, 0.0), c(0.0, 0.5), c(-0.3, -0.3)]).unwrap();
        assert!(g.entries().iter().all(|e| (e - 1.0).norm() < 1e-15));

        let pick = KernelSpec::PickSpace(HoloMap::identity());
        let g = gram(&pick, &[c(0.0, 1.0), c(0.0, 2.0)]).unwrap();
        assert!(g.entries().iter().all(|e| (e - 1.0).norm() < 1e-15));

        let one = gram(&koebe_dbr(), &[c(0.2, 0.2)]).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.get(0, 0).re >= 0.0);

        assert!(matches!(
            gram(&id, &[c(0.1, 0.0), c(0.1 + 1e-12, 0.0)]),
            Err(Error::DuplicatePoint(0, 1))
        ));
    }

    #[test]
    fn psd_examples() {
        let id = KernelSpec::DbrDisk(HoloMap::identity());
        let mut g = gram(&id, &[c(0.0, 0.0), c(0.5, 0.0)]).unwrap();
        g.entries = DMatrix::identity(2, 2);
        let r = psd_check(&g, 1e-8).unwrap();
        assert!((r.min_eigenvalue - 1.0).abs() < 1e-14 && r.pass);

        g.entries = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        let r = psd_check(&g, 1e-8).unwrap();
        assert!((r.min_eigenvalue + 1.0).abs() < 1e-14);
        assert!((r.max_eigenvalue - 3.0).abs() < 1e-14);
        assert!(!r.pass);

        // complex Hermitian: [[2, i], [-i, 2]] has eigenvalues 1 and 3
        g.entries = DMatrix::from_row_slice(2, 2, &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]);
        let r = psd_check(&g, 1e-8).unwrap();
        assert!((r.min_eigenvalue - 1.0).abs() < 1e-14);
    }

    #[test]
    fn catalog_is_psd() {
        for spec in catalog() {
            for seed in 1..=5 {
                let g = gram(&spec, &sample(&spec, seed, 8)).unwrap();
                assert!(g.hermitian_defect() == 0.0);
                let r = psd_check(&g, 1e-8).unwrap();
                assert!(r.pass, "{} seed {seed}: {r:?}", spec.name());
            }
        }
    }

    #[test]
    fn corrupted_gram_fails_psd() {
        let spec = koebe_dbr();
        let mut g = gram(&spec, &sample(&spec, 1, 8)).unwrap();
        g.corrupt_diagonal(0);
        assert!(!psd_check(&g, 1e-8).unwrap().pass);
    }

    #[test]
    fn norm_estimate_examples() {
        let spec = koebe_dbr();
        let pts = disk_grid(3, 10, DISK_RADIUS);
        let zeros = vec![c(0.0, 0.0); pts.len()];
        assert_eq!(rkhs_norm_estimate(&spec, &pts, &zeros, 1e-10).unwrap(), 0.0);

        let lambda = pts[4];
        let column: Vec<Complex64> = pts.iter().map(|&z| spec.eval(z, lambda).unwrap()).collect();
        let est = rkhs_norm_estimate(&spec, &pts, &column, 1e-12).unwrap();
        let k_ll = spec.eval(lambda, lambda).unwrap().re;
        assert!((est - k_ll).abs() <= 1e-6, "{est} vs {k_ll}");

        assert!(rkhs_norm_estimate(&spec, &pts, &zeros[..3], 1e-10).is_err());
        assert!(rkhs_norm_estimate(&spec, &pts, &zeros, 0.0).is_err());
    }

    #[test]
    fn zero_function_is_bounded() {
        let spec = koebe_dbr();
        let pts = disk_grid(1, 32, DISK_RADIUS);
        let r = membership_test(
            &spec,
            |_| Ok(c(0.0, 0.0)),
            &pts,
            &[8, 16, 32],
            &MembershipConfig::default(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Bounded);
        assert_eq!(r.norm_bound, Some(0.0));
    }

    #[test]
    fn classify_rules() {
        let cfg = MembershipConfig::default();
        assert_eq!(classify(&[8, 16, 32], &[1.0, 1.001, 1.002], &cfg), Verdict::Bounded);
        assert_eq!(classify(&[8, 16, 32], &[1.0, 5.0, 50.0], &cfg), Verdict::Unbounded);
        assert_eq!(classify(&[8, 16, 32], &[1.0, 1.5, 2.0], &cfg), Verdict::Inconclusive);
        assert_eq!(classify(&[8], &[1.0], &cfg), Verdict::Inconclusive);
    }

    #[test]
    fn membership_rejects_bad_counts() {
        let spec = koebe_dbr();
        let pts = disk_grid(1, 16, DISK_RADIUS);
        let f = |_| Ok(c(1.0, 0.0));
        let cfg = MembershipConfig::default();
        assert!(membership_test(&spec, f, &pts, &[8, 8], &cfg).is_err());
        assert!(membership_test(&spec, f, &pts, &[8, 32], &cfg).is_err());
        assert!(membership_test(&spec, f, &pts, &[], &cfg).is_err());
    }

    #[test]
    fn diag_scan() {
        let id = KernelSpec::DbrDisk(HoloMap::identity());
        let pts = disk_grid(2, 20, 0.5);
        assert!((diag_bound_scan(&id, &pts).unwrap() - 1.0).abs() < 1e-15);
        assert!(diag_bound_scan(&id, &[]).is_err());

        let flow = RadialFlowSpec::koebe(0.0, 1.0).unwrap();
        let lt = KernelSpec::loewner_time(flow.clone(), 0.5).unwrap();
        let scan = diag_bound_scan(&lt, &pts).unwrap();
        let bound = pts
            .iter()
            .map(|&l| {
                let b = flow.transition(0.5, l).unwrap().norm();
                2.0 * (1.0 + b) / ((1.0 - l.norm_sqr()) * (1.0 - b))
            })
            .fold(0.0, f64::max);
        assert!(scan.is_finite() && scan <= bound);
        for &l in &pts {
            let b = flow.transition(0.5, l).unwrap().norm();
            let k = lt.eval(l, l).unwrap().re;
            assert!(k >= 0.0 && k <= 2.0 * (1.0 + b) / ((1.0 - l.norm_sqr()) * (1.0 - b)));
        }
    }

    #[test]
    fn gram_json_is_row_major() {
        let pick = KernelSpec::PickSpace(HoloMap::new("z - 1/z", |z: Complex64| Ok(z - 1.0 / z)));
        let g = gram(&pick, &[c(0.0, 1.0), c(1.0, 1.0)]).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["n"], 2);
        let e = v["entries"].as_array().unwrap();
        assert_eq!(e.len(), 4);
        assert_eq!(e[1][0].as_f64().unwrap(), g.get(0, 1).re);
        assert_eq!(e[2][1].as_f64().unwrap(), g.get(1, 0).im);
    }

    #[test]
    fn cayley_image_gram_is_psd() {
        let phi = HoloMap::new("z - 1/z", |z: Complex64| Ok(z - 1.0 / z));
        let psi = halfplane_map_to_disk(&phi);
        let spec = KernelSpec::DbrDisk(psi);
        let g = gram(&spec, &disk_grid(4, 12, DISK_RADIUS)).unwrap();
        assert!(psd_check(&g, 1e-8).unwrap().pass);
    }
}
