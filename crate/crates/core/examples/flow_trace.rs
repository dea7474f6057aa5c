//! Transition maps of the Koebe radial flow and the basic chordal slit flow.

use loewner_dbr::flows::{flow_trace, ChordalFlowSpec, LoewnerFlow, RadialFlowSpec};
use loewner_dbr::ode::OdeConfig;
use loewner_dbr::Complex64;

fn main() -> loewner_dbr::Result<()> {
    let z = Complex64::new(0.4, 0.3);
    let closed = RadialFlowSpec::koebe(0.0, 2.0)?;
    let rk = RadialFlowSpec::koebe_rk(0.0, 2.0, OdeConfig::default())?;
    println!("Koebe B_t({z}):");
    println!("{:>6} {:>32} {:>10}", "t", "closed form", "rk4 diff");
    for ((t, b), (_, r)) in flow_trace(&closed, z, 5)?.into_iter().zip(flow_trace(&rk, z, 5)?) {
        println!("{t:>6.2} {b:>32.12} {:>10.2e}", (b - r).norm());
    }

    // B_s(i) = i sqrt(1 + 2s) climbs the imaginary axis
    let slit = ChordalFlowSpec::basic_slit(0.0, 1.5)?;
    let i = Complex64::new(0.0, 1.0);
    println!("\nslit flow from i:");
    for (s, b) in flow_trace(&slit, i, 4)? {
        println!("{s:>6.2} {b:.12}  expected i*{:.12}", (1.0 + 2.0 * s).sqrt());
    }

    // a coarse RK step near the boundary pushes the orbit out of the disk
    let coarse = RadialFlowSpec::koebe_rk(0.0, 4.0, OdeConfig::new(2.0)?)?;
    match coarse.transition(4.0, Complex64::new(-0.9, 0.0)) {
        Err(e) => println!("\ncoarse RK: {e}"),
        Ok(b) => println!("\ncoarse RK stayed inside: {b}"),
    }
    Ok(())
}
