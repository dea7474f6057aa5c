//! Herglotz functions on the disk and Pick functions on the upper half-plane,
//! evaluated from finite atomic representing measures.
//!
//! Continuous measures must be discretised by the caller. The factor `pi`
//! that appears in the Nevanlinna formula is not hidden anywhere: a Pick
//! representation with `mu = pi * delta_xi` stores weight `pi`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::HoloMap;
use crate::moebius::Domain;

/// Tolerance for `|xi| = 1` and for probability normalisation.
pub const MEASURE_TOL: f64 = 1e-12;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom<L> {
    pub location: L,
    pub weight: f64,
}

/// A finite nonnegative measure given as a list of weighted point masses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Atom<L>>", into = "Vec<Atom<L>>")]
#[serde(bound(
    serialize = "L: Clone + Serialize",
    deserialize = "L: AtomLocation + Deserialize<'de>"
))]
pub struct AtomicMeasure<L> {
    atoms: Vec<Atom<L>>,
}

/// Measure on the unit circle.
pub type CircleMeasure = AtomicMeasure<Complex64>;
/// Measure on the real line.
pub type LineMeasure = AtomicMeasure<f64>;

/// Where atoms of a measure may sit.
pub trait AtomLocation: Copy {
    fn validate(&self) -> Result<()>;
}

impl AtomLocation for Complex64 {
    fn validate(&self) -> Result<()> {
        if !self.re.is_finite() || !self.im.is_finite() {
            return Err(Error::InvalidMeasure(format!("non-finite atom {self}")));
        }
        if (self.norm() - 1.0).abs() > MEASURE_TOL {
            return Err(Error::InvalidMeasure(format!("atom {self} is not on the unit circle")));
        }
        Ok(())
    }
}

impl AtomLocation for f64 {
    fn validate(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidMeasure(format!("non-finite atom {self}")))
        }
    }
}

impl<L: AtomLocation> AtomicMeasure<L> {
    pub fn new(atoms: Vec<Atom<L>>) -> Result<Self> {
        for atom in &atoms {
            atom.location.validate()?;
            if !atom.weight.is_finite() || atom.weight < 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "weight {} must be finite and nonnegative",
                    atom.weight
                )));
            }
        }
        Ok(AtomicMeasure { atoms })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (L, f64)>) -> Result<Self> {
        Self::new(
            pairs
                .into_iter()
                .map(|(location, weight)| Atom { location, weight })
                .collect(),
        )
    }

    pub fn dirac(location: L, weight: f64) -> Result<Self> {
        Self::from_pairs([(location, weight)])
    }

    pub fn zero() -> Self {
        AtomicMeasure { atoms: Vec::new() }
    }

    pub fn atoms(&self) -> &[Atom<L>] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    pub fn is_probability(&self) -> bool {
        (self.total_mass() - 1.0).abs() <= MEASURE_TOL
    }
}

impl<L: AtomLocation> TryFrom<Vec<Atom<L>>> for AtomicMeasure<L> {
    type Error = Error;

    fn try_from(atoms: Vec<Atom<L>>) -> Result<Self> {
        Self::new(atoms)
    }
}

impl<L> From<AtomicMeasure<L>> for Vec<Atom<L>> {
    fn from(m: AtomicMeasure<L>) -> Self {
        m.atoms
    }
}

impl CircleMeasure {
    /// `delta_xi` for `xi` on the unit circle.
    pub fn point_mass(xi: Complex64) -> Result<Self> {
        Self::dirac(xi, 1.0)
    }
}

/// `phi_xi(z) = (1 + xi z)/(1 - xi z)`.
pub fn herglotz_atom(xi: Complex64, z: Complex64) -> Result<Complex64> {
    xi.validate()?;
    let z = Domain::Disk.check(z)?;
    Ok(herglotz_atom_unchecked(xi, z))
}

#[inline]
pub(crate) fn herglotz_atom_unchecked(xi: Complex64, z: Complex64) -> Complex64 {
    let xz = xi * z;
    (ONE + xz) / (ONE - xz)
}

/// Herglotz function of a probability measure on the circle:
/// `sum w (1 + xi z)/(1 - xi z)`.
pub fn herglotz_eval(mu: &CircleMeasure, z: Complex64) -> Result<Complex64> {
    if !mu.is_probability() {
        return Err(Error::InvalidMeasure(format!(
            "Herglotz measure must have total mass 1, got {}",
            mu.total_mass()
        )));
    }
    let z = Domain::Disk.check(z)?;
    Ok(herglotz_sum(mu, z))
}

#[inline]
pub(crate) fn herglotz_sum(mu: &CircleMeasure, z: Complex64) -> Complex64 {
    mu.atoms()
        .iter()
        .map(|a| a.weight * herglotz_atom_unchecked(a.location, z))
        .sum()
}

/// `1/(xi - z)` for real `xi`.
pub fn pick_atom(xi: f64, z: Complex64) -> Result<Complex64> {
    xi.validate()?;
    let z = Domain::HalfPlane.check(z)?;
    Ok(ONE / (xi - z))
}

/// Nevanlinna data `(b, c, mu)` of a Pick function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPick", into = "RawPick")]
pub struct PickRepresentation {
    b: f64,
    c: f64,
    mu: LineMeasure,
}

#[derive(Serialize, Deserialize)]
struct RawPick {
    b: f64,
    c: f64,
    #[serde(default = "LineMeasure::zero")]
    mu: LineMeasure,
}

impl TryFrom<RawPick> for PickRepresentation {
    type Error = Error;
    fn try_from(r: RawPick) -> Result<Self> {
        PickRepresentation::new(r.b, r.c, r.mu)
    }
}

impl From<PickRepresentation> for RawPick {
    fn from(p: PickRepresentation) -> Self {
        RawPick {
            b: p.b,
            c: p.c,
            mu: p.mu,
        }
    }
}

impl PickRepresentation {
    pub fn new(b: f64, c: f64, mu: LineMeasure) -> Result<Self> {
        if !b.is_finite() {
            return Err(Error::InvalidRepresentation(format!("b = {b} is not finite")));
        }
        if !c.is_finite() || c < 0.0 {
            return Err(Error::InvalidRepresentation(format!(
                "c = {c} must be finite and nonnegative"
            )));
        }
        let poisson_mass: f64 = mu
            .atoms()
            .iter()
            .map(|a| a.weight / (1.0 + a.location * a.location))
            .sum();
        if !poisson_mass.is_finite() {
            return Err(Error::InvalidRepresentation(
                "integral of 1/(1+t^2) against mu diverges".into(),
            ));
        }
        Ok(PickRepresentation { b, c, mu })
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mu(&self) -> &LineMeasure {
        &self.mu
    }
}

/// `b + c z + (1/pi) sum w (1/(t - z) - t/(1 + t^2))`.
pub fn pick_eval(rep: &PickRepresentation, z: Complex64) -> Result<Complex64> {
    let z = Domain::HalfPlane.check(z)?;
    let integral: Complex64 = rep
        .mu
        .atoms()
        .iter()
        .map(|a| {
            let t = a.location;
            a.weight * (ONE / (t - z) - t / (1.0 + t * t))
        })
        .sum();
    Ok(rep.b + rep.c * z + integral / PI)
}

/// The Herglotz function of `mu` as a map on the disk.
pub fn herglotz_map(mu: &CircleMeasure) -> Result<HoloMap> {
    if !mu.is_probability() {
        return Err(Error::InvalidMeasure(format!(
            "Herglotz measure must have total mass 1, got {}",
            mu.total_mass()
        )));
    }
    let mu = mu.clone();
    Ok(HoloMap::new("herglotz(mu)", move |z| herglotz_eval(&mu, z)))
}

/// The Pick function of `rep` as a map on the upper half-plane.
pub fn pick_map(rep: &PickRepresentation) -> HoloMap {
    let rep = rep.clone();
    HoloMap::new(
        format!("pick(b={}, c={}, {} atoms)", rep.b, rep.c, rep.mu.atoms().len()),
        move |z| pick_eval(&rep, z),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Lcg;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn herglotz_atom_examples() {
        assert!(close(
            herglotz_atom(c(-1.0, 0.0), c(0.0, 0.0)).unwrap(),
            c(1.0, 0.0),
            0.0
        ));
        assert!(close(
            herglotz_atom(c(-1.0, 0.0), c(0.5, 0.0)).unwrap(),
            c(1.0 / 3.0, 0.0),
            1e-15
        ));
        assert!(close(
            herglotz_atom(c(1.0, 0.0), c(0.5, 0.0)).unwrap(),
            c(3.0, 0.0),
            1e-15
        ));
        assert!(herglotz_atom(c(0.5, 0.0), c(0.1, 0.0)).is_err());
        assert!(herglotz_atom(c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn herglotz_eval_examples() {
        let delta = CircleMeasure::point_mass(c(-1.0, 0.0)).unwrap();
        let z = c(0.3, -0.2);
        let expected = (c(1.0, 0.0) - z) / (c(1.0, 0.0) + z);
        assert!(close(herglotz_eval(&delta, z).unwrap(), expected, 1e-15));

        let half = CircleMeasure::from_pairs([(c(1.0, 0.0), 0.5), (c(-1.0, 0.0), 0.5)]).unwrap();
        assert!(close(
            herglotz_eval(&half, c(0.5, 0.0)).unwrap(),
            c(5.0 / 3.0, 0.0),
            1e-15
        ));
        assert!(close(herglotz_eval(&half, c(0.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-15));

        let not_prob = CircleMeasure::dirac(c(1.0, 0.0), 0.7).unwrap();
        assert!(matches!(herglotz_eval(&not_prob, z), Err(Error::InvalidMeasure(_))));
    }

    #[test]
    fn measure_validation() {
        assert!(CircleMeasure::dirac(c(0.9, 0.0), 1.0).is_err());
        assert!(LineMeasure::dirac(0.0, -1.0).is_err());
        assert!(LineMeasure::dirac(f64::INFINITY, 1.0).is_err());
        assert!(PickRepresentation::new(0.0, -1.0, LineMeasure::zero()).is_err());
    }

    #[test]
    fn pick_atom_examples() {
        assert!(close(pick_atom(0.0, c(0.0, 1.0)).unwrap(), c(0.0, 1.0), 1e-15));
        assert!(close(pick_atom(1.0, c(1.0, 1.0)).unwrap(), c(0.0, 1.0), 1e-15));
        assert!(close(pick_atom(0.0, c(0.0, 2.0)).unwrap(), c(0.0, 0.5), 1e-15));
        assert!(pick_atom(0.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn pick_eval_examples() {
        let z = c(0.4, 1.7);
        let id = PickRepresentation::new(0.0, 1.0, LineMeasure::zero()).unwrap();
        assert_eq!(pick_eval(&id, z).unwrap(), z);

        let atom = PickRepresentation::new(0.0, 0.0, LineMeasure::dirac(0.0, PI).unwrap()).unwrap();
        assert!(close(pick_eval(&atom, c(0.0, 1.0)).unwrap(), c(0.0, 1.0), 1e-15));

        let both = PickRepresentation::new(0.0, 1.0, LineMeasure::dirac(0.0, PI).unwrap()).unwrap();
        assert!(close(pick_eval(&both, c(0.0, 1.0)).unwrap(), c(0.0, 2.0), 1e-15));
    }

    #[test]
    fn herglotz_positivity_and_normalisation() {
        let mu = CircleMeasure::from_pairs([
            (Complex64::from_polar(1.0, 0.3), 0.2),
            (Complex64::from_polar(1.0, 2.1), 0.5),
            (Complex64::from_polar(1.0, -1.7), 0.3),
        ])
        .unwrap();
        let mut rng = Lcg::new(1);
        for _ in 0..1000 {
            let z = rng.disk_point(0.95);
            assert!(herglotz_eval(&mu, z).unwrap().re >= -1e-12);
        }
        assert!((herglotz_eval(&mu, c(0.0, 0.0)).unwrap() - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn pick_invariance_and_atom_consistency() {
        let rep = PickRepresentation::new(
            0.7,
            0.3,
            LineMeasure::from_pairs([(-1.5, 2.0), (0.25, 0.4), (3.0, 1.1)]).unwrap(),
        )
        .unwrap();
        let mut rng = Lcg::new(2);
        for _ in 0..1000 {
            let z = c(rng.uniform(-5.0, 5.0), rng.uniform(0.05, 10.0));
            assert!(pick_eval(&rep, z).unwrap().im >= -1e-12);
        }

        for _ in 0..100 {
            let xi = rng.uniform(-3.0, 3.0);
            let z = c(rng.uniform(-3.0, 3.0), rng.uniform(0.1, 3.0));
            let rep = PickRepresentation::new(xi / (1.0 + xi * xi), 0.0, LineMeasure::dirac(xi, PI).unwrap()).unwrap();
            assert!(close(pick_eval(&rep, z).unwrap(), pick_atom(xi, z).unwrap(), 1e-12));
        }
    }

    #[test]
    fn json_round_trip_validates() {
        let rep = PickRepresentation::new(1.0, 2.0, LineMeasure::dirac(1.0, PI).unwrap()).unwrap();
        let s = serde_json::to_string(&rep).unwrap();
        let back: PickRepresentation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, rep);
        assert!(serde_json::from_str::<PickRepresentation>(r#"{"b":0,"c":-1}"#).is_err());
        assert!(serde_json::from_str::<CircleMeasure>(r#"[{"location":[0.5,0.0],"weight":1.0}]"#).is_err());
    }
}
