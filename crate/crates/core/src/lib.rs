pub mod cli;
pub mod error;
pub mod expansions;
pub mod flows;
pub mod json;
pub mod kernels;
pub mod map;
pub mod moebius;
pub mod ode;
pub mod quadrature;
pub mod representations;
pub mod sampling;
pub mod suite;

pub use error::{Error, Result};
pub use num_complex::Complex64;
