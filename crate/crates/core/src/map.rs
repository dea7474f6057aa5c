use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::Result;

type MapFn = dyn Fn(Complex64) -> Result<Complex64> + Send + Sync;

/// A labelled, fallible holomorphic function used as a kernel symbol
/// (the `B` of a de Branges-Rovnyak kernel, the `phi` of a Pick kernel, ...).
#[derive(Clone)]
pub struct HoloMap {
    label: String,
    f: Arc<MapFn>,
}

impl HoloMap {
    pub fn new<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(Complex64) -> Result<Complex64> + Send + Sync + 'static,
    {
        HoloMap {
            label: label.into(),
            f: Arc::new(f),
        }
    }

    pub fn identity() -> Self {
        HoloMap::new("identity", Ok)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        (self.f)(z)
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for HoloMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("HoloMap").field(&self.label).finish()
    }
}

/// `psi = T^{-1} o phi o T` for a self-map `phi` of the upper half-plane.
pub fn halfplane_map_to_disk(phi: &HoloMap) -> HoloMap {
    let phi = phi.clone();
    HoloMap::new(format!("T^-1 o {} o T", phi.label()), move |z| {
        crate::moebius::cayley_to_disk(phi.eval(crate::moebius::cayley_to_halfplane(z)?)?)
    })
}

/// `phi = T o psi o T^{-1}` for a self-map `psi` of the disk.
pub fn disk_map_to_halfplane(psi: &HoloMap) -> HoloMap {
    let psi = psi.clone();
    HoloMap::new(format!("T o {} o T^-1", psi.label()), move |w| {
        crate::moebius::cayley_to_halfplane(psi.eval(crate::moebius::cayley_to_disk(w)?)?)
    })
}
