//! Cayley transform between the disk and the upper half-plane.

use loewner_dbr::moebius::{cayley_to_disk, cayley_to_halfplane, Domain};
use loewner_dbr::sampling::{disk_grid, DISK_RADIUS};
use loewner_dbr::Complex64;

fn main() -> loewner_dbr::Result<()> {
    for z in [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.0, -0.5),
    ] {
        let w = cayley_to_halfplane(z)?;
        println!("T({z:.3}) = {w:.6}");
    }

    let mut worst: f64 = 0.0;
    for z in disk_grid(7, 1000, DISK_RADIUS) {
        let w = cayley_to_halfplane(z)?;
        assert!(Domain::HalfPlane.contains(w));
        worst = worst.max((cayley_to_disk(w)? - z).norm());
    }
    println!("round trip over 1000 points: max error {worst:.2e}");

    // z = 1 is the pole of T
    match cayley_to_halfplane(Complex64::new(1.0, 0.0)) {
        Err(e) => println!("T(1) rejected: {e}"),
        Ok(w) => println!("unexpected value {w}"),
    }
    Ok(())
}
