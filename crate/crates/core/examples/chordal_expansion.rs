//! Exponential representation of the Pick kernel of the chordal slit map.

use loewner_dbr::expansions::{chordal_exp_element, chordal_exp_element_check, chordal_exp_kernel_check};
use loewner_dbr::flows::{endpoint_map, ChordalFlowSpec};
use loewner_dbr::kernels::KernelSpec;
use loewner_dbr::quadrature::RuleKind;
use loewner_dbr::sampling::{halfplane_grid, Rect};
use loewner_dbr::Complex64;

fn main() -> loewner_dbr::Result<()> {
    let flow = ChordalFlowSpec::basic_slit(0.0, 1.0)?;
    let i = Complex64::new(0.0, 1.0);

    // B_1(i) = i sqrt(3), so the Pick kernel at (i, i) is sqrt(3)
    let k = KernelSpec::PickSpace(endpoint_map(&flow, "B_1")).eval(i, i)?;
    println!("kernel at (i, i) = {k:.15}, sqrt(3) = {:.15}", 3f64.sqrt());
    let anchor = chordal_exp_kernel_check(&flow, RuleKind::default(), &[(i, i)], 1e-10)?;
    println!("exp of the time integral at (i, i): error {:.2e}", anchor.max_abs_err);

    let points = halfplane_grid(1, 20, Rect::HALF_PLANE);
    let pairs: Vec<_> = points.chunks(2).map(|p| (p[0], p[1])).collect();
    let kernel = chordal_exp_kernel_check(&flow, RuleKind::default(), &pairs, 1e-8)?;
    println!(
        "kernel identity on {} pairs: max error {:.2e}",
        kernel.sample_pairs, kernel.max_abs_err
    );

    let element = chordal_exp_element_check(&flow, RuleKind::default(), &points, 1e-8)?;
    println!(
        "exp(z - B_1(z)) identity on {} points: max error {:.2e}",
        element.sample_pairs, element.max_abs_err
    );
    let f = chordal_exp_element(&flow)?;
    println!("exp(i - B_1(i)) = {:.12}", f.eval(i)?);
    Ok(())
}
