//! Time-integral representation of the de Branges-Rovnyak kernel of B_b,
//! checked for the Koebe flow and for a two-segment driver integrated with RK4.

use loewner_dbr::expansions::resolution_check;
use loewner_dbr::flows::{RadialBackend, RadialDriver, RadialFlowSpec};
use loewner_dbr::ode::OdeConfig;
use loewner_dbr::quadrature::RuleKind;
use loewner_dbr::representations::CircleMeasure;
use loewner_dbr::sampling::disk_grid;
use loewner_dbr::Complex64;

fn main() -> loewner_dbr::Result<()> {
    let points = disk_grid(1, 20, 0.7);
    let pairs: Vec<_> = points.chunks(2).map(|p| (p[0], p[1])).collect();

    let koebe = RadialFlowSpec::koebe(0.0, 1.0)?;
    for n in [4, 8, 16, 32, 64] {
        let r = resolution_check(&koebe, RuleKind::GaussLegendre(n), &pairs, 1e-8)?;
        println!("Koebe, GL-{n:<3} max error {:.2e}", r.max_abs_err);
    }

    let driver = RadialDriver::new(vec![
        (0.0, CircleMeasure::point_mass(Complex64::new(-1.0, 0.0))?),
        (
            0.5,
            CircleMeasure::from_pairs([(Complex64::new(0.0, 1.0), 0.5), (Complex64::new(0.0, -1.0), 0.5)])?,
        ),
    ])?;
    let flow = RadialFlowSpec::new(driver, 0.0, 1.0, RadialBackend::RungeKutta(OdeConfig::default()))?;
    let r = resolution_check(&flow, RuleKind::GaussLegendre(32), &pairs, 1e-8)?;
    println!(
        "two-segment driver, GL-32 per segment: max error {:.2e}, pass {}",
        r.max_abs_err, r.pass
    );
    Ok(())
}
