//! Dense complex vectors and matrices on `C^N`.
//!
//! `OperatorMatrix` stores entries row-major, entry `(i, j)` being
//! `⟨A δ_j, δ_i⟩`. Inner products are linear in the first argument and
//! conjugate-linear in the second throughout the crate.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A vector in `C^N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal<T> {
    entries: Vec<Complex<T>>,
}

impl<T: Real> Signal<T> {
    pub fn new(entries: Vec<Complex<T>>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self { entries: vec![Complex::zero(); n] }
    }

    /// Standard basis vector `δ_j`.
    pub fn basis(n: usize, j: usize) -> Self {
        let mut s = Self::zeros(n);
        s.entries[j % n] = Complex::new(T::one(), T::zero());
        s
    }

    pub fn from_real(values: &[T]) -> Self {
        Self { entries: values.iter().map(|&x| Complex::new(x, T::zero())).collect() }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<Complex<T>> {
        self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<T>> {
        self.entries.iter()
    }

    /// `⟨self, other⟩ = Σ self_t · conj(other_t)`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.entries.iter().zip(&other.entries).fold(Complex::zero(), |acc, (a, b)| acc + a * b.conj())
    }

    pub fn norm_sqr(&self) -> T {
        self.entries.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Euclidean norm, without any mass factor.
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// Copy scaled to unit norm, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let nrm = self.norm();
        if nrm == T::zero() {
            None
        } else {
            Some(self.scale(Complex::new(nrm.recip(), T::zero())))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.len() });
        }
        Ok(())
    }
}

impl<T> Index<usize> for Signal<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.entries[i]
    }
}

impl<T> IndexMut<usize> for Signal<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.entries[i]
    }
}

impl<T: Real> Add for &Signal<T> {
    type Output = Signal<T>;
    fn add(self, rhs: &Signal<T>) -> Signal<T> {
        Signal::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect())
    }
}

impl<T: Real> Sub for &Signal<T> {
    type Output = Signal<T>;
    fn sub(self, rhs: &Signal<T>) -> Signal<T> {
        Signal::new(self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect())
    }
}

/// An operator on `C^N` as a dense `N × N` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Complex::new(T::one(), T::zero()) } else { Complex::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    /// Builds from row-major entries; the length must be a perfect square `n²`.
    pub fn from_row_major(n: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn diagonal(values: &[T]) -> Self {
        let n = values.len();
        Self::from_fn(n, |i, j| if i == j { Complex::new(values[i], T::zero()) } else { Complex::zero() })
    }

    /// The rank-one operator `u ⊗ v : h ↦ ⟨h, v⟩ u`, i.e. the matrix `u v*`.
    pub fn rank_one(u: &Signal<T>, v: &Signal<T>) -> Self {
        let n = u.len();
        Self::from_fn(n, |i, j| u[i] * v[j].conj())
    }

    /// `Σ_n f_n ⊗ e_n` with `e_n` the standard basis: column `n` holds `f_n`.
    pub fn data_operator(n: usize, signals: &[Signal<T>]) -> Result<Self> {
        if signals.len() > n {
            return Err(Error::InvalidParameter(format!(
                "at most N = {n} signals fit a data operator, got {}",
                signals.len()
            )));
        }
        for f in signals {
            f.check_len(n)?;
        }
        Ok(Self::from_fn(n, |i, j| signals.get(j).map_or(Complex::zero(), |f| f[i])))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn column(&self, j: usize) -> Signal<T> {
        Signal::new((0..self.n).map(|i| self[(i, j)]).collect())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    /// `Σ_ij |A_ij|²`.
    pub fn hs_norm_sqr(&self) -> T {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Hilbert-Schmidt (Frobenius) norm.
    pub fn hs_norm(&self) -> T {
        self.hs_norm_sqr().sqrt()
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn scale_real(&self, c: T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// `self += c · other`.
    pub fn axpy(&mut self, c: Complex<T>, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a = *a + c * b;
        }
    }

    pub fn apply(&self, f: &Signal<T>) -> Signal<T> {
        let n = self.n;
        Signal::new(
            (0..n)
                .map(|i| {
                    let row = &self.data[i * n..(i + 1) * n];
                    row.iter().zip(f.iter()).fold(Complex::zero(), |acc, (a, x)| acc + a * x)
                })
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(T::zero(), T::max)
    }

    /// Hilbert-Schmidt distance `‖self − other‖_HS`.
    pub fn hs_distance(&self, other: &Self) -> T {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm_sqr()).sum::<T>().sqrt()
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.n != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.n });
        }
        Ok(())
    }

    /// Matrix product into a fresh matrix.
    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = vec![Complex::zero(); n * n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (t, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let src = &rhs.data[t * n..(t + 1) * n];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d = *d + a * b;
                }
            }
        }
        Self { n, data: out }
    }

    /// `self* · rhs` without materializing the adjoint.
    pub fn adjoint_matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = vec![Complex::zero(); n * n];
        for t in 0..n {
            let src = &rhs.data[t * n..(t + 1) * n];
            for i in 0..n {
                let a = self.data[t * n + i].conj();
                if a.is_zero() {
                    continue;
                }
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(src) {
                    *d = *d + a * b;
                }
            }
        }
        Self { n, data: out }
    }
}

impl<T> Index<(usize, usize)> for OperatorMatrix<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.n + j]
    }
}

impl<T> IndexMut<(usize, usize)> for OperatorMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.n + j]
    }
}

impl<T: Real> Mul for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn mul(self, rhs: &OperatorMatrix<T>) -> OperatorMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: Real> Add for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn add(self, rhs: &OperatorMatrix<T>) -> OperatorMatrix<T> {
        assert_eq!(self.n, rhs.n);
        OperatorMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Sub for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn sub(self, rhs: &OperatorMatrix<T>) -> OperatorMatrix<T> {
        assert_eq!(self.n, rhs.n);
        OperatorMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Real> Neg for &OperatorMatrix<T> {
    type Output = OperatorMatrix<T>;
    fn neg(self) -> OperatorMatrix<T> {
        OperatorMatrix { n: self.n, data: self.data.iter().map(|a| -a).collect() }
    }
}

impl<T: Real> AddAssign<&OperatorMatrix<T>> for OperatorMatrix<T> {
    fn add_assign(&mut self, rhs: &OperatorMatrix<T>) {
        assert_eq!(self.n, rhs.n);
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a = *a + b;
        }
    }
}
