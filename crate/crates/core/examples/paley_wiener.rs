//! Paley-Wiener sinc kernel as a time-limited Fourier integral.

use loewner_dbr::expansions::pw_reconstruction_check;
use loewner_dbr::kernels::KernelSpec;
use loewner_dbr::quadrature::RuleKind;
use loewner_dbr::Complex64;

fn main() -> loewner_dbr::Result<()> {
    let a = 1.0;
    let spec = KernelSpec::paley_wiener(a)?;
    let x = Complex64::new(0.7, 0.0);
    println!("diagonal value K(x, x) = {:.15} (2A = {})", spec.eval(x, x)?, 2.0 * a);

    let pairs = [
        (Complex64::new(0.3, 0.05), Complex64::new(-1.2, 0.02)),
        (Complex64::new(1.5, -0.1), Complex64::new(1.5, -0.1)),
        (x, x),
    ];
    for n in [8, 16, 32, 64] {
        let r = pw_reconstruction_check(a, RuleKind::GaussLegendre(n), &pairs, 1e-10)?;
        println!("GL-{n:<3} max error {:.2e}", r.max_abs_err);
    }
    let r = pw_reconstruction_check(a, RuleKind::CompositeSimpson(200), &pairs, 1e-10)?;
    println!("Simpson-200 max error {:.2e}", r.max_abs_err);
    Ok(())
}
