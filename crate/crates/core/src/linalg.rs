//! Jacobi-type decompositions for small dense complex matrices.
//!
//! Both routines are cyclic sweeps of 2×2 unitary rotations. They are
//! generic over [`Real`] and need no external LAPACK.

use num_complex::Complex;
use num_traits::Zero;

use crate::matrix::OperatorMatrix;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// Column `j` is the unit eigenvector for `values[j]`.
    pub vectors: OperatorMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// Reassembles `V diag(f(λ)) V*`.
    pub fn map_spectrum(&self, mut f: impl FnMut(T) -> T) -> OperatorMatrix<T> {
        let n = self.values.len();
        let scaled: Vec<T> = self.values.iter().map(|&x| f(x)).collect();
        let v = &self.vectors;
        OperatorMatrix::from_fn(n, |i, j| {
            (0..n).fold(Complex::zero(), |acc, k| acc + v[(i, k)] * v[(j, k)].conj() * scaled[k])
        })
    }
}

/// Eigenvalues and eigenvectors of a Hermitian matrix. Only the upper
/// triangle's Hermitian part is meaningful; the input is symmetrized first.
pub fn hermitian_eigen<T: Real>(a: &OperatorMatrix<T>) -> HermitianEigen<T> {
    let n = a.dim();
    let half = T::lit(0.5);
    let mut m = OperatorMatrix::from_fn(n, |i, j| (a[(i, j)] + a[(j, i)].conj()) * half);
    let mut v = OperatorMatrix::identity(n);

    let scale = m.hs_norm();
    let tol = T::eps() * scale;
    for _ in 0..MAX_SWEEPS {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<T>()
            .sqrt();
        if off <= tol || scale == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= T::eps() * T::lit(1e-3) * scale {
                    continue;
                }
                let unphase = (apq / r).conj();
                let theta = (m[(q, q)].re - m[(p, p)].re) / (r + r);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                // J = diag(1, e^{-iφ}) · [[c, s], [-s, c]] on coordinates (p, q).
                let jpp = Complex::new(c, T::zero());
                let jpq = Complex::new(s, T::zero());
                let jqp = unphase * (-s);
                let jqq = unphase * c;
                for i in 0..n {
                    let (mp, mq) = (m[(i, p)], m[(i, q)]);
                    m[(i, p)] = mp * jpp + mq * jqp;
                    m[(i, q)] = mp * jpq + mq * jqq;
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = vp * jpp + vq * jqp;
                    v[(i, q)] = vp * jpq + vq * jqq;
                }
                for j in 0..n {
                    let (mp, mq) = (m[(p, j)], m[(q, j)]);
                    m[(p, j)] = jpp.conj() * mp + jqp.conj() * mq;
                    m[(q, j)] = jpq.conj() * mp + jqq.conj() * mq;
                }
                m[(p, q)] = Complex::zero();
                m[(q, p)] = Complex::zero();
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(x, x)].re.partial_cmp(&m[(y, y)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = OperatorMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    HermitianEigen { values, vectors }
}

/// Singular values in nonincreasing order (one-sided Jacobi).
#[allow(clippy::needless_range_loop)]
pub fn singular_values<T: Real>(a: &OperatorMatrix<T>) -> Vec<T> {
    let n = a.dim();
    // Work on columns: cols[j][i] = A[i, j].
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
    let tol = T::eps() * T::from_count(n.max(1));

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: T = cols[p].iter().map(|c| c.norm_sqr()).sum();
                let beta: T = cols[q].iter().map(|c| c.norm_sqr()).sum();
                let gamma = cols[p].iter().zip(&cols[q]).fold(Complex::<T>::zero(), |acc, (x, y)| acc + x.conj() * y);
                let g = gamma.norm();
                if g == T::zero() || g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate w_p and e^{-iφ} w_q so their inner product vanishes.
                let phase_conj = (gamma / g).conj();
                let zeta = (beta - alpha) / (g + g);
                let t = zeta.signum() / (zeta.abs() + (zeta * zeta + T::one()).sqrt());
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for i in 0..n {
                    let wp = cols[p][i];
                    let wq = cols[q][i] * phase_conj;
                    cols[p][i] = wp * c - wq * s;
                    cols[q][i] = wp * s + wq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<T> = cols.iter().map(|c| c.iter().map(|x| x.norm_sqr()).sum::<T>().sqrt()).collect();
    values.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    values
}
