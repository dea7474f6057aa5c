//! Gram matrices of the positive kernels and their spectra.

use loewner_dbr::kernels::{gram, psd_check};
use loewner_dbr::moebius::Domain;
use loewner_dbr::sampling::{disk_grid, halfplane_grid, Rect, DISK_RADIUS};
use loewner_dbr::suite::{psd_catalog, SuiteConfig};

fn main() -> loewner_dbr::Result<()> {
    let cfg = SuiteConfig::default();
    println!("{:<34} {:>12} {:>12} {:>5}", "kernel", "min eig", "max eig", "psd");
    for spec in psd_catalog(&cfg)? {
        let points = match spec.domain() {
            Domain::Disk => disk_grid(1, 8, DISK_RADIUS),
            Domain::HalfPlane => halfplane_grid(1, 8, Rect::HALF_PLANE),
            Domain::Plane => halfplane_grid(1, 8, Rect::new(-2.0, 2.0, -0.1, 0.1)),
        };
        let g = gram(&spec, &points)?;
        let r = psd_check(&g, 1e-8)?;
        println!(
            "{:<34} {:>12.3e} {:>12.3e} {:>5}",
            spec.name(),
            r.min_eigenvalue,
            r.max_eigenvalue,
            r.pass
        );
    }

    // a negated diagonal entry breaks positivity
    let spec = &psd_catalog(&cfg)?[0];
    let mut g = gram(spec, &disk_grid(1, 8, DISK_RADIUS))?;
    g.corrupt_diagonal(0);
    println!("\ncorrupted {}: psd {}", spec.name(), psd_check(&g, 1e-8)?.pass);
    Ok(())
}
