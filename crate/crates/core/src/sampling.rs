//! Seeded sample points.
//!
//! Two generators are provided and both are fully specified here so other
//! implementations can reproduce them bit for bit:
//!
//! * [`Lcg`] is a 64-bit linear congruential generator,
//!   `s <- s * 6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//!   seeded with `s0 = seed ^ 0x9E3779B97F4A7C15` and advanced once before
//!   first use. A uniform `f64` in `[0, 1)` is `(s >> 11) * 2^-53`.
//! * [`disk_grid`] / [`halfplane_grid`] produce a low-discrepancy
//!   radial-angular sequence: the additive recurrence with the plastic-number
//!   increments `g1 = 1/p`, `g2 = 1/p^2` (`p ≈ 1.3247`), shifted by two
//!   offsets drawn from the LCG. Point `k` uses
//!   `u = frac(o1 + (k+1) g1)`, `v = frac(o2 + (k+1) g2)`.
//!   On the disk it maps to radius `R sqrt(u)` and angle `2 pi v`; on a
//!   rectangle it maps affinely. Prefixes are nested, which the membership
//!   test relies on.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const LCG_MUL: u64 = 6_364_136_223_846_793_005;
const LCG_INC: u64 = 1_442_695_040_888_963_407;
const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// Radius of the default disk sampling region.
pub const DISK_RADIUS: f64 = 0.9;

/// Root of `x^3 = x + 1`.
const PLASTIC: f64 = 1.324_717_957_244_746;

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        let mut lcg = Lcg { state: seed ^ SEED_MIX };
        lcg.next_u64();
        lcg
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(LCG_MUL).wrapping_add(LCG_INC);
        self.state
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Area-uniform point in the closed disk of the given radius.
    pub fn disk_point(&mut self, radius: f64) -> Complex64 {
        let r = radius * self.next_f64().sqrt();
        let theta = 2.0 * PI * self.next_f64();
        Complex64::from_polar(r, theta)
    }

    pub fn rect_point(&mut self, rect: Rect) -> Complex64 {
        let x = self.uniform(rect.re_min, rect.re_max);
        let y = self.uniform(rect.im_min, rect.im_max);
        Complex64::new(x, y)
    }
}

/// Axis-aligned rectangle `[re_min, re_max] x [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rect {
    pub const fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Self {
        Rect {
            re_min,
            re_max,
            im_min,
            im_max,
        }
    }

    /// Default half-plane sampling region `[-2, 2] x [0.1, 2.1]`.
    pub const HALF_PLANE: Rect = Rect::new(-2.0, 2.0, 0.1, 2.1);
}

fn low_discrepancy(seed: u64, n: usize) -> impl Iterator<Item = (f64, f64)> {
    let mut lcg = Lcg::new(seed);
    let o1 = lcg.next_f64();
    let o2 = lcg.next_f64();
    let g1 = 1.0 / PLASTIC;
    let g2 = 1.0 / (PLASTIC * PLASTIC);
    (1..=n).map(move |k| {
        let k = k as f64;
        ((o1 + k * g1).fract(), (o2 + k * g2).fract())
    })
}

/// First `n` points of the seeded radial-angular sequence in `|z| <= radius`.
pub fn disk_grid(seed: u64, n: usize, radius: f64) -> Vec<Complex64> {
    low_discrepancy(seed, n)
        .map(|(u, v)| Complex64::from_polar(radius * u.sqrt(), 2.0 * PI * v))
        .collect()
}

/// First `n` points of the seeded low-discrepancy sequence in `rect`.
pub fn halfplane_grid(seed: u64, n: usize, rect: Rect) -> Vec<Complex64> {
    low_discrepancy(seed, n)
        .map(|(u, v)| {
            Complex64::new(
                rect.re_min + (rect.re_max - rect.re_min) * u,
                rect.im_min + (rect.im_max - rect.im_min) * v,
            )
        })
        .collect()
}
