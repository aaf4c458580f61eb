//! Operator-valued short-time Fourier transform on the finite phase space
//! `Z_N × Z_N`.
//!
//! Operators on `C^N` are analyzed with operator windows,
//! `𝔙_S T(z) = S* π(z)* T`, producing operator-valued fields. On top of the
//! transform sit the reproducing-kernel projection, twisted convolution,
//! weighted mixed norms and Wiener amalgam norms, coorbit norms with
//! arbitrary windows, Gabor g-frames over lattices, and localization
//! operators.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below fix the usual double-precision instantiation.
//!
//! In finite dimensions every operator lies in every coorbit space, so the
//! library computes norms and constants, never membership booleans.

pub mod coorbit;
pub mod error;
pub mod field;
pub mod gframe;
pub mod hsalgebra;
pub mod linalg;
pub mod matrix;
pub mod opstft;
pub mod phasespace;
pub mod random;
pub mod scalar;
pub mod weights_norms;

pub use error::{Error, Result};
pub use field::{FieldSource, Grid, OperatorField, RealGrid, ScalarField};
pub use matrix::{OperatorMatrix, Signal};
pub use phasespace::{ModelDim, PhasePoint};
pub use scalar::Real;

pub use num_complex::Complex;

pub type Complex64 = Complex<f64>;
pub type Signal64 = Signal<f64>;
pub type Operator64 = OperatorMatrix<f64>;
pub type OperatorField64 = OperatorField<f64>;
pub type ScalarField64 = ScalarField<f64>;
pub type RealGrid64 = RealGrid<f64>;
pub type Weight64 = weights_norms::Weight<f64>;

pub type Signal32 = Signal<f32>;
pub type Operator32 = OperatorMatrix<f32>;
pub type OperatorField32 = OperatorField<f32>;
