//! Discrete analogues of the Appell function F1.
//!
//! The crate evaluates the two discrete Appell series, their Humbert
//! degenerations and the Kampé de Fériet family, realizes their integral
//! representations by quadrature, and checks the known identities between
//! them as residuals over random parameter draws.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`). The aliases at
//! the crate root fix the scalar to `f64`, which is what the verification
//! harness and the command-line tool use.

pub mod error;
pub mod functions;
pub mod integral;
pub mod operators;
pub mod scalar;
pub mod series;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

use num_complex::Complex;

/// Complex scalar in double precision.
pub type C64 = Complex<f64>;
pub type Appell1 = functions::Appell1Params<f64>;
pub type Appell2 = functions::Appell2Params<f64>;
pub type Appell = functions::AppellParams<f64>;
pub type KdfSpec = functions::KdfSpec<f64>;
pub type EvalResult = series::EvalResult<f64>;
pub type SeriesOptions = series::SeriesOptions<f64>;
pub type TermWeight = series::TermWeight<f64>;
pub type OperatorExpr = operators::OperatorExpr<f64>;
pub type QuadratureOptions = integral::QuadratureOptions<f64>;


