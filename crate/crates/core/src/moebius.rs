//! Cayley transforms between the unit disk and the upper half-plane.
//!
//! All kernels in this crate live on open domains, so boundary points are
//! rejected with a fixed margin instead of being mapped.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance from the boundary below which a point is treated as outside.
pub const BOUNDARY_MARGIN: f64 = 1e-12;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    /// Open unit disk `|z| < 1`.
    Disk,
    /// Upper half-plane `Im z > 0`.
    HalfPlane,
    /// The whole complex plane.
    Plane,
}

impl Domain {
    pub fn contains(self, z: Complex64) -> bool {
        if !z.re.is_finite() || !z.im.is_finite() {
            return false;
        }
        match self {
            Domain::Disk => z.norm() < 1.0 - BOUNDARY_MARGIN,
            Domain::HalfPlane => z.im > BOUNDARY_MARGIN,
            Domain::Plane => true,
        }
    }

    /// Returns `z` unchanged if it lies in the domain.
    pub fn check(self, z: Complex64) -> Result<Complex64> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite(z));
        }
        if self.contains(z) {
            Ok(z)
        } else {
            Err(Error::Domain { point: z, domain: self })
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Disk => f.write_str("unit disk"),
            Domain::HalfPlane => f.write_str("upper half-plane"),
            Domain::Plane => f.write_str("complex plane"),
        }
    }
}

/// `T(z) = i(1+z)/(1-z)`, mapping the disk onto the upper half-plane.
pub fn cayley_to_halfplane(z: Complex64) -> Result<Complex64> {
    let z = Domain::Disk.check(z)?;
    Ok(I * (ONE + z) / (ONE - z))
}

/// `T^{-1}(w) = (w-i)/(w+i)`, mapping the upper half-plane onto the disk.
pub fn cayley_to_disk(w: Complex64) -> Result<Complex64> {
    let w = Domain::HalfPlane.check(w)?;
    Ok((w - I) / (w + I))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Lcg;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn to_halfplane_examples() {
        assert_eq!(cayley_to_halfplane(Complex64::new(0.0, 0.0)).unwrap(), I);
        assert!(close(
            cayley_to_halfplane(Complex64::new(0.5, 0.0)).unwrap(),
            Complex64::new(0.0, 3.0),
            1e-15
        ));
        assert!(matches!(
            cayley_to_halfplane(Complex64::new(-1.0, 0.0)),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn to_disk_examples() {
        assert!(close(cayley_to_disk(I).unwrap(), Complex64::new(0.0, 0.0), 0.0));
        assert!(close(
            cayley_to_disk(Complex64::new(0.0, 2.0)).unwrap(),
            Complex64::new(1.0 / 3.0, 0.0),
            1e-15
        ));
        assert!(close(
            cayley_to_disk(Complex64::new(1.0, 1.0)).unwrap(),
            Complex64::new(0.2, -0.4),
            1e-15
        ));
        assert!(cayley_to_disk(Complex64::new(1.0, 0.0)).is_err());
        assert!(cayley_to_disk(Complex64::new(1.0, -1.0)).is_err());
    }

    #[test]
    fn boundary_margin_and_nan() {
        assert!(!Domain::Disk.contains(Complex64::new(1.0 - 1e-13, 0.0)));
        assert!(Domain::Disk.contains(Complex64::new(1.0 - 1e-9, 0.0)));
        assert!(!Domain::HalfPlane.contains(Complex64::new(3.0, 1e-13)));
        assert!(matches!(
            Domain::Plane.check(Complex64::new(f64::NAN, 0.0)),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn round_trip_on_seeded_points() {
        let mut rng = Lcg::new(7);
        for _ in 0..1000 {
            let z = rng.disk_point(0.95);
            let w = cayley_to_halfplane(z).unwrap();
            assert!(w.im > 0.0);
            let back = cayley_to_disk(w).unwrap();
            assert!(back.norm() < 1.0);
            assert!(close(back, z, 1e-12), "{z} -> {back}");
        }
    }
}
