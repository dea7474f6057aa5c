//! Quadrature rules on `[a, b]`, optionally split at breakpoints.
//!
//! Gauss-Legendre nodes come from the `gauss-quad` crate on `[-1, 1]` and are
//! mapped affinely onto each piece. Composite Simpson is kept as an
//! independent cross-check.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default node count per piece.
pub const DEFAULT_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    /// `n` Gauss-Legendre nodes per piece.
    GaussLegendre(usize),
    /// Composite Simpson with `n` (even) subintervals per piece.
    CompositeSimpson(usize),
}

impl Default for RuleKind {
    fn default() -> Self {
        RuleKind::GaussLegendre(DEFAULT_NODES)
    }
}

impl RuleKind {
    fn validate(self) -> Result<Self> {
        match self {
            RuleKind::GaussLegendre(0) => Err(Error::InvalidArgument(
                "Gauss-Legendre rule needs at least one node".into(),
            )),
            RuleKind::CompositeSimpson(n) if n == 0 || n % 2 == 1 => Err(Error::InvalidArgument(format!(
                "Simpson rule needs a positive even subinterval count, got {n}"
            ))),
            k => Ok(k),
        }
    }
}

/// Nodes `t_i` and positive weights `w_i` with `sum w_i = b - a`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    kind: RuleKind,
    interval: (f64, f64),
    nodes: Vec<(f64, f64)>,
}

impl QuadratureRule {
    pub fn new(kind: RuleKind, a: f64, b: f64) -> Result<Self> {
        Self::piecewise(kind, &[a, b])
    }

    pub fn gauss_legendre(n: usize, a: f64, b: f64) -> Result<Self> {
        Self::new(RuleKind::GaussLegendre(n), a, b)
    }

    pub fn simpson(n: usize, a: f64, b: f64) -> Result<Self> {
        Self::new(RuleKind::CompositeSimpson(n), a, b)
    }

    /// One copy of `kind` on each `[breaks[i], breaks[i + 1]]`; zero-length
    /// pieces contribute nothing.
    pub fn piecewise(kind: RuleKind, breaks: &[f64]) -> Result<Self> {
        let kind = kind.validate()?;
        if breaks.len() < 2 || breaks.iter().any(|x| !x.is_finite()) || breaks.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(format!(
                "quadrature breakpoints {breaks:?} must be finite and nondecreasing"
            )));
        }
        let reference: Vec<(f64, f64)> = match kind {
            RuleKind::GaussLegendre(n) => {
                let gl = GaussLegendre::new(NonZeroUsize::new(n).expect("validated"));
                let mut pairs = gl.as_node_weight_pairs().to_vec();
                pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
                pairs
            }
            RuleKind::CompositeSimpson(n) => (0..=n)
                .map(|k| {
                    let w = if k == 0 || k == n {
                        1.0
                    } else if k % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    (-1.0 + 2.0 * k as f64 / n as f64, w * 2.0 / (3.0 * n as f64))
                })
                .collect(),
        };
        let mut nodes = Vec::new();
        for w in breaks.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if hi == lo {
                continue;
            }
            let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
            nodes.extend(reference.iter().map(|&(x, wt)| (mid + half * x, half * wt)));
        }
        Ok(QuadratureRule {
            kind,
            interval: (breaks[0], breaks[breaks.len() - 1]),
            nodes,
        })
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    pub fn weight_sum(&self) -> f64 {
        self.nodes.iter().map(|n| n.1).sum()
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().map(|&(t, w)| w * f(t)).sum()
    }

    /// `sum w_i f(t_i)`, stopping at the first failing node.
    pub fn integrate_complex<F>(&self, mut f: F) -> Result<Complex64>
    where
        F: FnMut(f64) -> Result<Complex64>,
    {
        self.nodes
            .iter()
            .try_fold(Complex64::new(0.0, 0.0), |acc, &(t, w)| Ok(acc + w * f(t)?))
    }
}
