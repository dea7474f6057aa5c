//! The Cayley transform carries the de Branges-Rovnyak space of psi onto
//! the Pick space of phi = T psi T^-1, up to a rescaling of kernels.

use std::f64::consts::PI;

use loewner_dbr::expansions::{cayley_gram_check, cayley_isometry_check, pick_constant_element, pick_disk_map};
use loewner_dbr::representations::{LineMeasure, PickRepresentation};
use loewner_dbr::sampling::{disk_grid, DISK_RADIUS};
use loewner_dbr::Complex64;

fn main() -> loewner_dbr::Result<()> {
    // phi(z) = z - 1/z
    let rep = PickRepresentation::new(0.0, 1.0, LineMeasure::dirac(0.0, PI)?)?;
    let psi = pick_disk_map(&rep);
    let z = Complex64::new(0.2, -0.3);
    println!("psi({z}) = {:.12}", psi.eval(z)?);

    let points = disk_grid(1, 20, DISK_RADIUS);
    let pairs: Vec<_> = points.chunks(2).map(|p| (p[0], p[1])).collect();
    let r = cayley_isometry_check(&psi, &pairs, 1e-10)?;
    println!("pointwise kernel identity: max error {:.2e}", r.max_abs_err);
    let r = cayley_gram_check(&psi, &points[..6], 1e-10)?;
    println!("6-point Gram identity: max error {:.2e}", r.max_abs_err);

    let f = pick_constant_element(&rep)?;
    println!("(1 - psi)/(1 - z) at {z}: {:.12}", f.eval(z)?);
    Ok(())
}
