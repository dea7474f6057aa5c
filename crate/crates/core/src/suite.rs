//! Seeded verification suites and the JSON run report.
//!
//! A run is a pure function of its [`SuiteConfig`] apart from the
//! `wall_clock_ms` field. Suites under `all` run in alphabetical order and
//! entries keep that order.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::io;
use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansions::{
    cayley_gram_check, cayley_isometry_check, chordal_derivative_identity_check, chordal_exp_element,
    chordal_exp_element_check, chordal_exp_kernel_check, dbr_element, herglotz_mixture_check, koebe_log_element_check,
    nevanlinna_split_check, pick_constant_element, pick_disk_map, pw_reconstruction_check,
    radial_derivative_identity_check, resolution_check, IdentityReport, StepFunction,
};
use crate::flows::{
    endpoint_map, ChordalBackend, ChordalDriver, ChordalFlowSpec, RadialBackend, RadialDriver, RadialFlowSpec,
};
use crate::json;
use crate::kernels::{gram, membership_test, psd_check, KernelSpec, MembershipConfig, MembershipReport, Verdict};
use crate::map::HoloMap;
use crate::ode::OdeConfig;
use crate::quadrature::RuleKind;
use crate::representations::{herglotz_map, CircleMeasure, LineMeasure, PickRepresentation};
use crate::sampling::{disk_grid, halfplane_grid, Lcg, Rect, DISK_RADIUS};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Points for the resolution identity stay in `|z| <= 0.7`.
const RESOLUTION_RADIUS: f64 = 0.7;

/// Paley-Wiener samples: a thin strip around the real axis, where the kernel
/// stays of moderate size.
const PW_STRIP: Rect = Rect::new(-2.0, 2.0, -0.1, 0.1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteName {
    CayleyIsometry,
    ChordalDerivative,
    ChordalExpElement,
    ChordalExpKernel,
    HerglotzMixture,
    KernelPsd,
    KoebeLog,
    Membership,
    NevanlinnaSplit,
    PwReconstruction,
    RadialDerivative,
    Resolution,
    All,
}

impl SuiteName {
    /// Every concrete suite, in the order used by `all`.
    pub const CONCRETE: [SuiteName; 12] = [
        SuiteName::CayleyIsometry,
        SuiteName::ChordalDerivative,
        SuiteName::ChordalExpElement,
        SuiteName::ChordalExpKernel,
        SuiteName::HerglotzMixture,
        SuiteName::KernelPsd,
        SuiteName::KoebeLog,
        SuiteName::Membership,
        SuiteName::NevanlinnaSplit,
        SuiteName::PwReconstruction,
        SuiteName::RadialDerivative,
        SuiteName::Resolution,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::CayleyIsometry => "cayley-isometry",
            SuiteName::ChordalDerivative => "chordal-derivative",
            SuiteName::ChordalExpElement => "chordal-exp-element",
            SuiteName::ChordalExpKernel => "chordal-exp-kernel",
            SuiteName::HerglotzMixture => "herglotz-mixture",
            SuiteName::KernelPsd => "kernel-psd",
            SuiteName::KoebeLog => "koebe-log",
            SuiteName::Membership => "membership",
            SuiteName::NevanlinnaSplit => "nevanlinna-split",
            SuiteName::PwReconstruction => "pw-reconstruction",
            SuiteName::RadialDerivative => "radial-derivative",
            SuiteName::Resolution => "resolution",
            SuiteName::All => "all",
        }
    }

    fn expand(self) -> Vec<SuiteName> {
        match self {
            SuiteName::All => SuiteName::CONCRETE.to_vec(),
            s => vec![s],
        }
    }
}

impl std::str::FromStr for SuiteName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SuiteName::CONCRETE
            .iter()
            .chain([SuiteName::All].iter())
            .copied()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

impl std::fmt::Display for SuiteName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Per-identity tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub psd: f64,
    pub resolution: f64,
    /// Applies to the resolution check repeated with half the nodes.
    pub resolution_half_nodes: f64,
    pub derivative: f64,
    pub koebe_log: f64,
    pub cayley: f64,
    pub exact: f64,
    pub chordal_exp: f64,
    pub chordal_anchor: f64,
    pub pw: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        use crate::expansions::*;
        Tolerances {
            psd: 1e-8,
            resolution: RESOLUTION_TOL,
            resolution_half_nodes: 1e-6,
            derivative: DERIVATIVE_TOL,
            koebe_log: KOEBE_LOG_TOL,
            cayley: CAYLEY_TOL,
            exact: EXACT_TOL,
            chordal_exp: CHORDAL_EXP_TOL,
            chordal_anchor: 1e-10,
            pw: PW_TOL,
        }
    }
}

impl Tolerances {
    /// Same tolerance for every identity.
    pub fn uniform(tol: f64) -> Self {
        Tolerances {
            psd: tol,
            resolution: tol,
            resolution_half_nodes: tol,
            derivative: tol,
            koebe_log: tol,
            cayley: tol,
            exact: tol,
            chordal_exp: tol,
            chordal_anchor: tol,
            pw: tol,
        }
    }

    fn all(&self) -> [f64; 10] {
        [
            self.psd,
            self.resolution,
            self.resolution_half_nodes,
            self.derivative,
            self.koebe_log,
            self.cayley,
            self.exact,
            self.chordal_exp,
            self.chordal_anchor,
            self.pw,
        ]
    }
}

/// Membership heuristic settings used by the `membership` and
/// `chordal-exp-element` suites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MembershipSettings {
    /// Nested set sizes; set `k` is the first `counts[k]` grid points.
    pub counts: Vec<usize>,
    pub eps: Option<f64>,
    pub plateau_rel: f64,
    pub growth_ratio: f64,
}

impl Default for MembershipSettings {
    fn default() -> Self {
        let cfg = MembershipConfig::default();
        MembershipSettings {
            counts: vec![8, 16, 32, 64],
            eps: cfg.eps,
            plateau_rel: cfg.plateau_rel,
            growth_ratio: cfg.growth_ratio,
        }
    }
}

impl MembershipSettings {
    fn config(&self) -> MembershipConfig {
        MembershipConfig {
            eps: self.eps,
            plateau_rel: self.plateau_rel,
            growth_ratio: self.growth_ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: SuiteName,
    pub seed: u64,
    /// Flow interval `[a, b]`.
    pub interval: [f64; 2],
    /// Gauss-Legendre nodes per driver segment.
    pub nodes: usize,
    pub tol: Tolerances,
    /// Sample pairs for pairwise identities.
    pub pairs: usize,
    /// Sample points for pointwise identities.
    pub points: usize,
    /// Seeded configurations for each derivative identity.
    pub derivative_configs: usize,
    pub fd_step: f64,
    pub gram_points: usize,
    /// The positivity suite uses seeds `seed .. seed + psd_seeds`.
    pub psd_seeds: u64,
    pub cayley_gram_points: usize,
    pub kernel_time: f64,
    pub pw_bandwidth: f64,
    /// Use RK4 with this step instead of the closed forms.
    pub ode_step: Option<f64>,
    /// Pick function for the Cayley and constant-element suites.
    pub pick: PickRepresentation,
    /// Pick function for the Nevanlinna split suite.
    pub nevanlinna: PickRepresentation,
    pub herglotz_measure: CircleMeasure,
    pub membership: MembershipSettings,
    /// Test hook: negate one diagonal Gram entry in the positivity suite.
    #[doc(hidden)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub corrupt_kernel: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: SuiteName::All,
            seed: 1,
            interval: [0.0, 1.0],
            nodes: crate::quadrature::DEFAULT_NODES,
            tol: Tolerances::default(),
            pairs: 10,
            points: 20,
            derivative_configs: 20,
            fd_step: crate::expansions::DEFAULT_FD_STEP,
            gram_points: 8,
            psd_seeds: 5,
            cayley_gram_points: 6,
            kernel_time: 0.5,
            pw_bandwidth: 1.0,
            ode_step: None,
            pick: PickRepresentation::new(0.0, 1.0, LineMeasure::dirac(0.0, PI).expect("valid atom"))
                .expect("valid representation"),
            nevanlinna: PickRepresentation::new(1.0, 2.0, LineMeasure::dirac(1.0, PI).expect("valid atom"))
                .expect("valid representation"),
            herglotz_measure: CircleMeasure::from_pairs([
                (Complex64::new(1.0, 0.0), 0.2),
                (Complex64::new(0.0, 1.0), 0.3),
                (Complex64::from_polar(1.0, 2.5), 0.5),
            ])
            .expect("valid measure"),
            membership: MembershipSettings::default(),
            corrupt_kernel: false,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: SuiteConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks everything that can be rejected before running.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        let [a, b] = self.interval;
        if !(a.is_finite() && b.is_finite() && 0.0 <= a && a <= b) {
            return bad(format!("interval [{a}, {b}] must satisfy 0 <= a <= b"));
        }
        if self.nodes < 2 {
            return bad(format!("nodes = {} must be at least 2", self.nodes));
        }
        if self.tol.all().iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return bad("tolerances must be finite and nonnegative".into());
        }
        for (name, n) in [
            ("pairs", self.pairs),
            ("points", self.points),
            ("derivative_configs", self.derivative_configs),
            ("gram_points", self.gram_points),
            ("cayley_gram_points", self.cayley_gram_points),
        ] {
            if n == 0 {
                return bad(format!("{name} must be positive"));
            }
        }
        if self.psd_seeds == 0 {
            return bad("psd_seeds must be positive".into());
        }
        if !(self.fd_step.is_finite() && self.fd_step > 0.0) {
            return bad(format!("fd_step = {} must be positive", self.fd_step));
        }
        if !(a..=b).contains(&self.kernel_time) {
            return bad(format!("kernel_time {} outside [{a}, {b}]", self.kernel_time));
        }
        if !(self.pw_bandwidth.is_finite() && self.pw_bandwidth > 0.0) {
            return bad(format!("pw_bandwidth = {} must be positive", self.pw_bandwidth));
        }
        if let Some(step) = self.ode_step {
            OdeConfig::new(step)?;
            if b > a && step > b - a {
                return bad(format!("ode_step {step} exceeds the interval length"));
            }
        }
        if self.pick.c() == 0.0 {
            return bad("pick representation needs c != 0".into());
        }
        if !self.herglotz_measure.is_probability() {
            return bad("herglotz_measure must be a probability measure".into());
        }
        let m = &self.membership;
        if m.counts.is_empty() || m.counts[0] == 0 || m.counts.windows(2).any(|w| w[0] >= w[1]) {
            return bad("membership counts must be positive and strictly increasing".into());
        }
        if m.eps.is_some_and(|e| !(e.is_finite() && e > 0.0)) {
            return bad("membership eps must be positive".into());
        }
        if !(m.plateau_rel > 0.0 && m.growth_ratio > 1.0) {
            return bad("membership needs plateau_rel > 0 and growth_ratio > 1".into());
        }
        Ok(())
    }

    fn rule(&self) -> RuleKind {
        RuleKind::GaussLegendre(self.nodes)
    }

    fn radial_flow(&self) -> Result<RadialFlowSpec> {
        let [a, b] = self.interval;
        match self.ode_step {
            None => RadialFlowSpec::koebe(a, b),
            Some(step) => RadialFlowSpec::new(
                RadialDriver::koebe(),
                a,
                b,
                RadialBackend::RungeKutta(OdeConfig::new(step)?),
            ),
        }
    }

    fn chordal_flow(&self) -> Result<ChordalFlowSpec> {
        let [a, b] = self.interval;
        match self.ode_step {
            None => ChordalFlowSpec::basic_slit(a, b),
            Some(step) => ChordalFlowSpec::new(
                ChordalDriver::BasicSlit,
                a,
                b,
                ChordalBackend::RungeKutta(OdeConfig::new(step)?),
            ),
        }
    }
}

/// Membership verdict against the expected one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipEntry {
    pub case: String,
    pub kernel: String,
    pub expected: Verdict,
    pub report: MembershipReport,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Entry {
    Identity {
        suite: SuiteName,
        #[serde(flatten)]
        report: IdentityReport,
    },
    Membership {
        suite: SuiteName,
        #[serde(flatten)]
        entry: MembershipEntry,
    },
    /// A numerical failure (flow escape, eigensolver, linear solve).
    Error {
        suite: SuiteName,
        message: String,
        pass: bool,
    },
}

impl Entry {
    pub fn pass(&self) -> bool {
        match self {
            Entry::Identity { report, .. } => report.pass,
            Entry::Membership { entry, .. } => entry.pass,
            Entry::Error { .. } => false,
        }
    }

    pub fn suite(&self) -> SuiteName {
        match self {
            Entry::Identity { suite, .. } | Entry::Membership { suite, .. } | Entry::Error { suite, .. } => *suite,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool_version: String,
    pub config: SuiteConfig,
    pub entries: Vec<Entry>,
    pub pass: bool,
    /// The only field that differs between identical runs.
    pub wall_clock_ms: u64,
}

impl RunReport {
    pub fn has_errors(&self) -> bool {
        self.entries.iter().any(|e| matches!(e, Entry::Error { .. }))
    }

    /// JSON with every float written to 17 significant digits.
    pub fn to_json(&self) -> String {
        json::to_string_pretty(self)
    }

    pub fn write_json<W: io::Write>(&self, w: W) -> io::Result<()> {
        json::to_writer_pretty(w, self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let report: RunReport =
            serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("report: {e}")))?;
        if report.schema != SCHEMA_VERSION {
            return Err(Error::InvalidArgument(format!(
                "report schema {} is not {SCHEMA_VERSION}",
                report.schema
            )));
        }
        Ok(report)
    }
}

/// Runs the configured suite(s). Numerical failures become error entries;
/// only an invalid config is returned as `Err`.
pub fn run(config: &SuiteConfig) -> Result<RunReport> {
    config.validate()?;
    let start = Instant::now();
    let mut entries = Vec::new();
    for suite in config.suite.expand() {
        match run_suite(suite, config) {
            Ok(mut es) => entries.append(&mut es),
            Err(e) => entries.push(Entry::Error {
                suite,
                message: e.to_string(),
                pass: false,
            }),
        }
    }
    let pass = !entries.is_empty() && entries.iter().all(Entry::pass);
    Ok(RunReport {
        schema: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.into(),
        config: config.clone(),
        entries,
        pass,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    })
}

fn pairs_from(points: Vec<Complex64>) -> Vec<(Complex64, Complex64)> {
    points.chunks_exact(2).map(|p| (p[0], p[1])).collect()
}

fn disk_pairs(seed: u64, n: usize, radius: f64) -> Vec<(Complex64, Complex64)> {
    pairs_from(disk_grid(seed, 2 * n, radius))
}

fn half_pairs(seed: u64, n: usize, rect: Rect) -> Vec<(Complex64, Complex64)> {
    pairs_from(halfplane_grid(seed, 2 * n, rect))
}

/// Seeded `(t, p, q)` with `t` inside the interval.
fn derivative_configs<F>(cfg: &SuiteConfig, mut point: F) -> Vec<(f64, Complex64, Complex64)>
where
    F: FnMut(&mut Lcg) -> Complex64,
{
    let [a, b] = cfg.interval;
    let mut rng = Lcg::new(cfg.seed);
    (0..cfg.derivative_configs)
        .map(|_| {
            let t = a + (b - a) * rng.uniform(0.05, 0.95);
            let p = point(&mut rng);
            (t, p, point(&mut rng))
        })
        .collect()
}

fn identity(suite: SuiteName, report: IdentityReport) -> Entry {
    Entry::Identity { suite, report }
}

/// The positivity catalog: name and kernel.
pub fn psd_catalog(cfg: &SuiteConfig) -> Result<Vec<KernelSpec>> {
    let radial = cfg.radial_flow()?;
    let b1 = endpoint_map(&radial, "Koebe B_b");
    let herglotz = herglotz_map(&CircleMeasure::point_mass(Complex64::new(-1.0, 0.0))?)?;
    let z_minus_inv = HoloMap::new("z - 1/z", |z: Complex64| Ok(z - 1.0 / z));
    Ok(vec![
        KernelSpec::DbrDisk(b1),
        KernelSpec::HerglotzSpace(herglotz),
        KernelSpec::PickSpace(z_minus_inv),
        KernelSpec::paley_wiener(cfg.pw_bandwidth)?,
        KernelSpec::loewner_time(radial, cfg.kernel_time)?,
    ])
}

fn sample_for(spec: &KernelSpec, seed: u64, n: usize) -> Vec<Complex64> {
    use crate::moebius::Domain;
    match spec.domain() {
        Domain::Disk => disk_grid(seed, n, DISK_RADIUS),
        Domain::HalfPlane => halfplane_grid(seed, n, Rect::HALF_PLANE),
        Domain::Plane => halfplane_grid(seed, n, PW_STRIP),
    }
}

fn membership_entry<F>(
    suite: SuiteName,
    case: &str,
    spec: &KernelSpec,
    f: F,
    points: &[Complex64],
    expected: Verdict,
    cfg: &SuiteConfig,
) -> Result<Entry>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let report = membership_test(spec, f, points, &cfg.membership.counts, &cfg.membership.config())?;
    Ok(Entry::Membership {
        suite,
        entry: MembershipEntry {
            case: case.into(),
            kernel: spec.name(),
            expected,
            pass: report.verdict == expected,
            report,
        },
    })
}

fn run_suite(suite: SuiteName, cfg: &SuiteConfig) -> Result<Vec<Entry>> {
    let seed = cfg.seed;
    let tol = &cfg.tol;
    let largest = *cfg.membership.counts.last().expect("validated");
    let entries = match suite {
        SuiteName::All => unreachable!("expanded before dispatch"),
        SuiteName::KernelPsd => {
            let mut out = Vec::new();
            for (idx, spec) in psd_catalog(cfg)?.iter().enumerate() {
                let mut worst: f64 = 0.0;
                let mut pass = true;
                for s in seed..seed + cfg.psd_seeds {
                    let mut g = gram(spec, &sample_for(spec, s, cfg.gram_points))?;
                    if cfg.corrupt_kernel && idx == 0 && s == seed {
                        g.corrupt_diagonal(0);
                    }
                    let r = psd_check(&g, tol.psd)?;
                    worst = worst.max(-r.min_eigenvalue / r.max_eigenvalue.max(1.0));
                    pass &= r.pass;
                }
                let mut report = IdentityReport::new(
                    format!("psd {}", spec.name()),
                    cfg.psd_seeds as usize,
                    worst.max(0.0),
                    tol.psd,
                );
                report.pass = pass;
                out.push(identity(suite, report));
            }
            out
        }
        SuiteName::Resolution => {
            let flow = cfg.radial_flow()?;
            let pairs = disk_pairs(seed, cfg.pairs, RESOLUTION_RADIUS);
            let full = resolution_check(&flow, cfg.rule(), &pairs, tol.resolution)?;
            let mut half = resolution_check(
                &flow,
                RuleKind::GaussLegendre(cfg.nodes / 2),
                &pairs,
                tol.resolution_half_nodes,
            )?;
            half.identity_name = "resolution-half-nodes".into();
            vec![identity(suite, full), identity(suite, half)]
        }
        SuiteName::RadialDerivative => {
            let flow = cfg.radial_flow()?;
            let reports = derivative_configs(cfg, |r| r.disk_point(DISK_RADIUS))
                .into_iter()
                .map(|(t, l, z)| radial_derivative_identity_check(&flow, t, l, z, cfg.fd_step, tol.derivative))
                .collect::<Result<Vec<_>>>()?;
            vec![identity(
                suite,
                IdentityReport::aggregate("radial-derivative", &reports),
            )]
        }
        SuiteName::ChordalDerivative => {
            let flow = cfg.chordal_flow()?;
            let reports = derivative_configs(cfg, |r| r.rect_point(Rect::HALF_PLANE))
                .into_iter()
                .map(|(t, a, z)| chordal_derivative_identity_check(&flow, t, a, z, cfg.fd_step, tol.derivative))
                .collect::<Result<Vec<_>>>()?;
            vec![identity(
                suite,
                IdentityReport::aggregate("chordal-derivative", &reports),
            )]
        }
        SuiteName::KoebeLog => {
            let flow = cfg.radial_flow()?;
            let points = disk_grid(seed, cfg.points, DISK_RADIUS);
            vec![identity(
                suite,
                koebe_log_element_check(&flow, cfg.rule(), &points, tol.koebe_log)?,
            )]
        }
        SuiteName::CayleyIsometry => {
            let psi = pick_disk_map(&cfg.pick);
            let pairs = disk_pairs(seed, cfg.pairs, DISK_RADIUS);
            let grid = disk_grid(seed, cfg.cayley_gram_points, DISK_RADIUS);
            vec![
                identity(suite, cayley_isometry_check(&psi, &pairs, tol.cayley)?),
                identity(suite, cayley_gram_check(&psi, &grid, tol.cayley)?),
            ]
        }
        SuiteName::NevanlinnaSplit => {
            let pairs = half_pairs(seed, cfg.pairs, Rect::HALF_PLANE);
            vec![identity(
                suite,
                nevanlinna_split_check(&cfg.nevanlinna, &pairs, tol.exact)?,
            )]
        }
        SuiteName::HerglotzMixture => {
            let pairs = disk_pairs(seed, cfg.pairs, DISK_RADIUS);
            vec![identity(
                suite,
                herglotz_mixture_check(&cfg.herglotz_measure, &pairs, tol.exact)?,
            )]
        }
        SuiteName::ChordalExpKernel => {
            let flow = cfg.chordal_flow()?;
            let pairs = half_pairs(seed, cfg.pairs, Rect::HALF_PLANE);
            let i = Complex64::new(0.0, 1.0);
            let mut anchor = chordal_exp_kernel_check(&flow, cfg.rule(), &[(i, i)], tol.chordal_anchor)?;
            anchor.identity_name = "chordal-exp-kernel-anchor".into();
            vec![
                identity(
                    suite,
                    chordal_exp_kernel_check(&flow, cfg.rule(), &pairs, tol.chordal_exp)?,
                ),
                identity(suite, anchor),
            ]
        }
        SuiteName::ChordalExpElement => {
            let flow = cfg.chordal_flow()?;
            let points = halfplane_grid(seed, cfg.points, Rect::HALF_PLANE);
            let check = chordal_exp_element_check(&flow, cfg.rule(), &points, tol.chordal_exp)?;
            let spec = KernelSpec::PickSpace(endpoint_map(&flow, "slit B_b"));
            let f = chordal_exp_element(&flow)?;
            let grid = halfplane_grid(seed, largest, Rect::HALF_PLANE);
            vec![
                identity(suite, check),
                membership_entry(
                    suite,
                    "exp(z - B_b)",
                    &spec,
                    |z| f.eval(z),
                    &grid,
                    Verdict::Bounded,
                    cfg,
                )?,
            ]
        }
        SuiteName::Membership => {
            let flow = cfg.radial_flow()?;
            let dbr = KernelSpec::DbrDisk(endpoint_map(&flow, "Koebe B_b"));
            let grid = disk_grid(seed, largest, DISK_RADIUS);
            let log = dbr_element(
                &flow,
                &StepFunction::constant(1.0),
                Complex64::new(0.0, 0.0),
                cfg.rule(),
            )?;
            let inv = |z: Complex64| Ok(1.0 / (1.0 - z));
            let pick = KernelSpec::DbrDisk(pick_disk_map(&cfg.pick));
            let constant = pick_constant_element(&cfg.pick)?;
            vec![
                membership_entry(
                    suite,
                    "log((1 - B_b)/(1 - z))",
                    &dbr,
                    |z| log.eval(z),
                    &grid,
                    Verdict::Bounded,
                    cfg,
                )?,
                membership_entry(suite, "1/(1 - z)", &dbr, inv, &grid, Verdict::Unbounded, cfg)?,
                membership_entry(
                    suite,
                    "(1 - psi)/(1 - z)",
                    &pick,
                    |z| constant.eval(z),
                    &grid,
                    Verdict::Bounded,
                    cfg,
                )?,
            ]
        }
        SuiteName::PwReconstruction => {
            let n = cfg.pairs.max(2);
            let mut pairs = half_pairs(seed, n, PW_STRIP);
            // real diagonal pairs hit the removable singularity z = conj(lambda)
            let diag = (n / 5).max(1);
            let mut rng = Lcg::new(seed);
            for p in pairs.iter_mut().take(diag) {
                let x = Complex64::new(rng.uniform(-2.0, 2.0), 0.0);
                *p = (x, x);
            }
            vec![identity(
                suite,
                pw_reconstruction_check(cfg.pw_bandwidth, cfg.rule(), &pairs, tol.pw)?,
            )]
        }
    };
    Ok(entries)
}

/// Suites named in a report, in order of first appearance.
pub fn suites_in(report: &RunReport) -> Vec<SuiteName> {
    let mut seen = BTreeSet::new();
    report
        .entries
        .iter()
        .map(Entry::suite)
        .filter(|s| seen.insert(*s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: SuiteName) -> SuiteConfig {
        SuiteConfig {
            suite,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in SuiteName::CONCRETE.iter().chain([SuiteName::All].iter()) {
            assert_eq!(s.as_str().parse::<SuiteName>().unwrap(), *s);
            assert_eq!(serde_json::to_value(s).unwrap(), s.as_str());
        }
        let mut sorted = SuiteName::CONCRETE.map(|s| s.as_str());
        sorted.sort();
        assert_eq!(sorted, SuiteName::CONCRETE.map(|s| s.as_str()));
        assert!("bogus".parse::<SuiteName>().is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let bad = [
            SuiteConfig {
                interval: [1.0, 0.0],
                ..Default::default()
            },
            SuiteConfig {
                nodes: 1,
                ..Default::default()
            },
            SuiteConfig {
                kernel_time: 2.0,
                ..Default::default()
            },
            SuiteConfig {
                fd_step: 0.0,
                ..Default::default()
            },
            SuiteConfig {
                tol: Tolerances::uniform(f64::NAN),
                ..Default::default()
            },
            SuiteConfig {
                ode_step: Some(5.0),
                ..Default::default()
            },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
        assert!(SuiteConfig::from_json(r#"{"suite": "resolution", "bogus": 1}"#).is_err());
        assert!(SuiteConfig::from_json(r#"{"suite": "nope"}"#).is_err());
        let cfg = SuiteConfig::from_json(r#"{"suite": "koebe-log", "seed": 7, "interval": [0, 2]}"#).unwrap();
        assert_eq!(
            (cfg.suite, cfg.seed, cfg.interval),
            (SuiteName::KoebeLog, 7, [0.0, 2.0])
        );
        assert_eq!(cfg.nodes, 64);
    }

    #[test]
    fn resolution_suite_passes() {
        let r = run(&quick(SuiteName::Resolution)).unwrap();
        assert!(r.pass, "{}", r.to_json());
        assert_eq!(r.entries.len(), 2);
    }

    #[test]
    fn corrupted_kernel_fails() {
        let cfg = SuiteConfig {
            corrupt_kernel: true,
            ..quick(SuiteName::KernelPsd)
        };
        let r = run(&cfg).unwrap();
        assert!(!r.pass);
        assert!(!r.entries[0].pass());
        assert!(r.entries[1..].iter().all(Entry::pass));
        assert!(r.to_json().contains("\"corrupt_kernel\": true"));
        assert!(!run(&quick(SuiteName::KernelPsd))
            .unwrap()
            .to_json()
            .contains("corrupt_kernel"));
    }

    #[test]
    fn escape_becomes_error_entry() {
        // near z = -1 the Koebe velocity is large; a step this coarse leaves the disk
        let cfg = SuiteConfig {
            interval: [0.0, 4.0],
            ode_step: Some(2.0),
            kernel_time: 1.0,
            ..quick(SuiteName::RadialDerivative)
        };
        let r = run(&cfg).unwrap();
        assert!(!r.pass);
        assert!(r.has_errors(), "{}", r.to_json());
    }

    #[test]
    fn pw_suite_includes_diagonal() {
        let r = run(&quick(SuiteName::PwReconstruction)).unwrap();
        assert!(r.pass, "{}", r.to_json());
    }
}
