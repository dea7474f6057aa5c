//! Fixed-step classical Runge-Kutta for a single complex ODE.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OdeConfig {
    pub step: f64,
}

impl Default for OdeConfig {
    fn default() -> Self {
        OdeConfig { step: DEFAULT_STEP }
    }
}

impl OdeConfig {
    pub fn new(step: f64) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::InvalidFlow(format!("ODE step {step} must be positive")));
        }
        Ok(OdeConfig { step })
    }
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` with RK4.
///
/// The step is shrunk so that a whole number of steps covers `[t0, t1]`.
/// `escaped` is checked after every step; a stage value that leaves the
/// domain shows up either there or as an error from `f`.
pub fn rk4<F, E>(f: F, t0: f64, t1: f64, y0: Complex64, step: f64, escaped: E) -> Result<Complex64>
where
    F: Fn(f64, Complex64) -> Result<Complex64>,
    E: Fn(Complex64) -> bool,
{
    let span = t1 - t0;
    if span <= 0.0 {
        return Ok(y0);
    }
    let n = (span / step).ceil().max(1.0) as usize;
    let h = span / n as f64;
    let escape = |t: f64, value: Complex64| Error::FlowEscape { time: t, value };

    let mut y = y0;
    for k in 0..n {
        let t = t0 + k as f64 * h;
        let stage = |tt: f64, yy: Complex64| -> Result<Complex64> {
            if escaped(yy) || !yy.re.is_finite() || !yy.im.is_finite() {
                return Err(escape(tt, yy));
            }
            f(tt, yy)
        };
        let k1 = stage(t, y)?;
        let k2 = stage(t + 0.5 * h, y + 0.5 * h * k1)?;
        let k3 = stage(t + 0.5 * h, y + 0.5 * h * k2)?;
        let k4 = stage(t + h, y + h * k3)?;
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        let t_next = if k + 1 == n { t1 } else { t + h };
        if escaped(y) || !y.re.is_finite() || !y.im.is_finite() {
            return Err(escape(t_next, y));
        }
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        // y' = i y, y(0) = 1  =>  y(1) = e^i
        let y = rk4(
            |_, y| Ok(Complex64::i() * y),
            0.0,
            1.0,
            Complex64::new(1.0, 0.0),
            1e-3,
            |_| false,
        )
        .unwrap();
        assert!((y - Complex64::new(1.0_f64.cos(), 1.0_f64.sin())).norm() < 1e-12);
    }

    #[test]
    fn zero_span_is_identity() {
        let y0 = Complex64::new(0.3, 0.1);
        let y = rk4(|_, _| unreachable!(), 2.0, 2.0, y0, 1e-3, |_| false).unwrap();
        assert_eq!(y, y0);
    }

    #[test]
    fn escape_is_reported() {
        let r = rk4(
            |_, _| Ok(Complex64::new(1.0, 0.0)),
            0.0,
            1.0,
            Complex64::new(0.0, 0.0),
            0.01,
            |y| y.re >= 0.5,
        );
        match r {
            Err(Error::FlowEscape { time, .. }) => assert!(time > 0.45 && time < 0.55),
            other => panic!("expected escape, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_step() {
        assert!(OdeConfig::new(0.0).is_err());
        assert!(OdeConfig::new(-1.0).is_err());
        assert!(OdeConfig::new(f64::NAN).is_err());
    }
}
