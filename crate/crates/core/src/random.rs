//! Seeded test inputs.
//!
//! The generator is ChaCha8 seeded from a `u64`, which produces the same
//! stream on every platform. Complex entries have independent standard
//! normal real and imaginary parts.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::field::{OperatorField, RealGrid, ScalarField};
use crate::matrix::{OperatorMatrix, Signal};
use crate::phasespace::ModelDim;
use crate::scalar::Real;

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normal<T: Real>(rng: &mut impl Rng) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

pub fn random_complex<T: Real>(rng: &mut impl Rng) -> Complex<T> {
    Complex::new(normal(rng), normal(rng))
}

pub fn random_signal<T: Real>(rng: &mut impl Rng, n: usize) -> Signal<T> {
    Signal::new((0..n).map(|_| random_complex(rng)).collect())
}

pub fn random_operator<T: Real>(rng: &mut impl Rng, n: usize) -> OperatorMatrix<T> {
    OperatorMatrix::from_fn(n, |_, _| random_complex(rng))
}

/// Random operator with `‖S‖_HS = 1`.
pub fn random_unit_operator<T: Real>(rng: &mut impl Rng, n: usize) -> OperatorMatrix<T> {
    let s = random_operator::<T>(rng, n);
    let nrm = s.hs_norm();
    s.scale_real(nrm.recip())
}

pub fn random_field<T: Real>(rng: &mut impl Rng, dim: ModelDim) -> OperatorField<T> {
    OperatorField::from_fn(dim, |_| random_operator(rng, dim.n()))
}

pub fn random_scalar_field<T: Real>(rng: &mut impl Rng, dim: ModelDim) -> ScalarField<T> {
    ScalarField::from_fn(dim, |_| random_complex(rng))
}

/// Entries uniform on `[0, 1)`.
pub fn random_nonnegative_grid<T: Real>(rng: &mut impl Rng, dim: ModelDim) -> RealGrid<T> {
    RealGrid::from_fn(dim, |_| T::lit(rng.random::<f64>()))
}
