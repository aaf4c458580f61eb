//! Hilbert-Schmidt inner product, Schatten norms, the conjugation action
//! `α_z(S) = π(z) S π(z)*`, parity, and the two quantum-harmonic-analysis
//! convolutions `h ⋆ S` and `S ⋆ T`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::linalg;
use crate::matrix::OperatorMatrix;
use crate::phasespace::{mul_shift_adjoint, shift_mul, ModelDim, PhasePoint};
use crate::scalar::Real;

/// Singular values sorted nonincreasing; tiny values are kept as computed.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum<T> {
    values: Vec<T>,
}

impl<T: Real> SingularSpectrum<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn largest(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    /// l^p norm of the spectrum, `p = ∞` giving the largest value.
    pub fn lp_norm(&self, p: T) -> T {
        if p.is_infinite() {
            return self.largest();
        }
        self.values.iter().map(|s| s.powf(p)).sum::<T>().powf(p.recip())
    }
}

fn same_dim<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<()> {
    t.check_dim(s.dim())
}

/// `⟨S, T⟩_HS = tr(S T*)`.
pub fn hs_inner<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<Complex<T>> {
    same_dim(s, t)?;
    Ok(s.as_slice().iter().zip(t.as_slice()).fold(Complex::zero(), |acc, (a, b)| acc + a * b.conj()))
}

pub fn singular_values<T: Real>(t: &OperatorMatrix<T>) -> SingularSpectrum<T> {
    SingularSpectrum { values: linalg::singular_values(t) }
}

/// Schatten `p`-norm for `p ∈ [1, ∞]`.
pub fn schatten_norm<T: Real>(t: &OperatorMatrix<T>, p: T) -> Result<T> {
    if p.is_nan() || p < T::one() {
        return Err(Error::InvalidParameter(format!("Schatten exponent must satisfy p >= 1, got {p}")));
    }
    Ok(singular_values(t).lp_norm(p))
}

/// `α_z(S) = π(z) S π(z)*`.
pub fn conjugate_shift<T: Real>(z: PhasePoint, s: &OperatorMatrix<T>) -> OperatorMatrix<T> {
    let dim = ModelDim::unchecked(s.dim());
    mul_shift_adjoint(dim, &shift_mul(dim, z, s), z)
}

/// `Š = P S P` with `(P f)(t) = f(−t mod N)`.
pub fn parity<T: Real>(s: &OperatorMatrix<T>) -> OperatorMatrix<T> {
    let n = s.dim();
    OperatorMatrix::from_fn(n, |i, j| s[((n - i) % n, (n - j) % n)])
}

/// `h ⋆ S = (1/N) Σ_z h(z) α_z(S)`.
pub fn conv_fun_op<T: Real>(h: &ScalarField<T>, s: &OperatorMatrix<T>) -> Result<OperatorMatrix<T>> {
    let dim = h.dim();
    s.check_dim(dim.n())?;
    let mut acc = OperatorMatrix::zeros(dim.n());
    for (z, &coef) in h.iter() {
        if coef.is_zero() {
            continue;
        }
        acc.axpy(coef, &conjugate_shift(z, s));
    }
    Ok(acc.scale_real(dim.mass()))
}

/// `(S ⋆ T)(z) = tr(S α_z(Ť))`.
pub fn conv_op_op<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<ScalarField<T>> {
    same_dim(s, t)?;
    let dim = ModelDim::new(s.dim())?;
    let checked = parity(t);
    Ok(ScalarField::from_fn(dim, |z| trace_of_product(s, &conjugate_shift(z, &checked))))
}

/// `tr(A B)` without forming the product.
pub fn trace_of_product<T: Real>(a: &OperatorMatrix<T>, b: &OperatorMatrix<T>) -> Complex<T> {
    let n = a.dim();
    let mut acc = Complex::zero();
    for i in 0..n {
        for j in 0..n {
            acc = acc + a[(i, j)] * b[(j, i)];
        }
    }
    acc
}
