//! Herglotz functions on the disk and Pick functions on the half-plane
//! built from atomic measures.

use std::f64::consts::PI;

use loewner_dbr::expansions::nevanlinna_split_check;
use loewner_dbr::representations::{herglotz_eval, pick_eval, CircleMeasure, LineMeasure, PickRepresentation};
use loewner_dbr::sampling::{halfplane_grid, Rect};
use loewner_dbr::Complex64;

fn main() -> loewner_dbr::Result<()> {
    // delta_{-1} gives (1 - z)/(1 + z)
    let koebe = CircleMeasure::point_mass(Complex64::new(-1.0, 0.0))?;
    let z = Complex64::new(0.3, 0.4);
    println!(
        "phi_(-1)({z}) = {:.6}, closed form {:.6}",
        herglotz_eval(&koebe, z)?,
        (1.0 - z) / (1.0 + z)
    );

    let mixed = CircleMeasure::from_pairs([(Complex64::new(1.0, 0.0), 0.25), (Complex64::new(0.0, 1.0), 0.75)])?;
    println!(
        "mixed measure at 0: {:.6} (total mass {})",
        herglotz_eval(&mixed, Complex64::new(0.0, 0.0))?,
        mixed.total_mass()
    );

    // weight pi at 0 with c = 1 gives z - 1/z
    let rep = PickRepresentation::new(0.0, 1.0, LineMeasure::dirac(0.0, PI)?)?;
    let w = Complex64::new(0.5, 1.0);
    println!("pick({w}) = {:.6}, z - 1/z = {:.6}", pick_eval(&rep, w)?, w - 1.0 / w);

    let rep = PickRepresentation::new(1.0, 2.0, LineMeasure::from_pairs([(-1.0, 1.0), (2.0, 0.5)])?)?;
    let points = halfplane_grid(3, 20, Rect::HALF_PLANE);
    let pairs: Vec<_> = points.chunks(2).map(|p| (p[0], p[1])).collect();
    let split = nevanlinna_split_check(&rep, &pairs, 1e-12)?;
    println!(
        "Pick kernel = c + measure part: max error {:.2e}, pass {}",
        split.max_abs_err, split.pass
    );
    Ok(())
}
