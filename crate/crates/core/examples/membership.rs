//! Finite-section membership heuristic: regularised norms on nested point
//! sets, a plateau suggests membership and growth suggests the opposite.

use loewner_dbr::expansions::{dbr_element, StepFunction};
use loewner_dbr::flows::{endpoint_map, RadialFlowSpec};
use loewner_dbr::kernels::{membership_test, KernelSpec, MembershipConfig, MembershipReport};
use loewner_dbr::quadrature::RuleKind;
use loewner_dbr::sampling::{disk_grid, DISK_RADIUS};
use loewner_dbr::Complex64;

fn show(name: &str, r: &MembershipReport) {
    let est: Vec<String> = r.estimates.iter().map(|e| format!("{e:.4e}")).collect();
    println!("{name:<26} {:?}  [{}]", r.verdict, est.join(", "));
}

fn main() -> loewner_dbr::Result<()> {
    let flow = RadialFlowSpec::koebe(0.0, 1.0)?;
    let spec = KernelSpec::DbrDisk(endpoint_map(&flow, "B_1"));
    let points = disk_grid(1, 64, DISK_RADIUS);
    let counts = [8, 16, 32, 64];
    let cfg = MembershipConfig::default();

    let log = dbr_element(
        &flow,
        &StepFunction::constant(1.0),
        Complex64::new(0.0, 0.0),
        RuleKind::default(),
    )?;
    let r = membership_test(&spec, |z| log.eval(z), &points, &counts, &cfg)?;
    show("log((1 - B_1)/(1 - z))", &r);
    if let Some(bound) = r.norm_bound {
        println!("{:<26} norm about {bound:.6}", "");
    }

    let r = membership_test(&spec, |z| Ok(1.0 / (1.0 - z)), &points, &counts, &cfg)?;
    show("1/(1 - z)", &r);
    println!("\nverdicts come from a {}, not a proof", r.method);
    Ok(())
}
