//! Discrete phase space `Z_N × Z_N`, time-frequency shifts on `C^N`, the
//! cocycle, and the function STFT with its adjoint.
//!
//! Every phase-space sum that stands in for an integral carries the point
//! mass `1/N`, so that `(1/N) Σ_z |V_g f(z)|² = ‖f‖² ‖g‖²` holds exactly.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{Grid, ScalarField};
use crate::matrix::{OperatorMatrix, Signal};
use crate::scalar::{unit_root, Real};

/// Ambient dimension `N`; signals live in `C^N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelDim(usize);

impl ModelDim {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionTooSmall(n));
        }
        Ok(Self(n))
    }

    /// Dimension taken from an existing operator or signal, which may be 1.
    pub(crate) fn unchecked(n: usize) -> Self {
        Self(n)
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0
    }

    /// Point mass `1/N` of the phase-space measure.
    pub fn mass<T: Real>(self) -> T {
        T::from_count(self.0).recip()
    }

    /// Canonicalizes `(k, l)` into `{0, …, N−1}²`.
    pub fn point(self, k: i64, l: i64) -> PhasePoint {
        let n = self.0 as i64;
        PhasePoint { k: k.rem_euclid(n) as usize, l: l.rem_euclid(n) as usize }
    }

    /// All `N²` points with `k` as the slow index.
    pub fn points(self) -> impl Iterator<Item = PhasePoint> + Clone {
        let n = self.0;
        (0..n).flat_map(move |k| (0..n).map(move |l| PhasePoint { k, l }))
    }

    pub fn add(self, a: PhasePoint, b: PhasePoint) -> PhasePoint {
        let n = self.0;
        PhasePoint { k: (a.k + b.k) % n, l: (a.l + b.l) % n }
    }

    pub fn neg(self, a: PhasePoint) -> PhasePoint {
        let n = self.0;
        PhasePoint { k: (n - a.k) % n, l: (n - a.l) % n }
    }

    pub fn sub(self, a: PhasePoint, b: PhasePoint) -> PhasePoint {
        self.add(a, self.neg(b))
    }

    /// Wraparound l¹ distance to the origin.
    pub fn wrap_norm(self, a: PhasePoint) -> usize {
        let n = self.0;
        a.k.min(n - a.k) + a.l.min(n - a.l)
    }
}

/// A point `z = (k, l)` of `Z_N × Z_N`: `k` indexes time, `l` frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhasePoint {
    pub k: usize,
    pub l: usize,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { k: 0, l: 0 };
}

/// `(π(z) f)(t) = e^{2πi l t/N} f(t − k)`.
pub fn tf_shift_apply<T: Real>(dim: ModelDim, z: PhasePoint, f: &Signal<T>) -> Result<Signal<T>> {
    let n = dim.n();
    f.check_len(n)?;
    Ok(Signal::new((0..n).map(|t| unit_root::<T>(n, (z.l * t) as i64) * f[(t + n - z.k) % n]).collect()))
}

/// The unitary matrix of `π(z)`.
pub fn tf_shift_matrix<T: Real>(dim: ModelDim, z: PhasePoint) -> OperatorMatrix<T> {
    let n = dim.n();
    OperatorMatrix::from_fn(
        n,
        |t, s| {
            if s == (t + n - z.k) % n {
                unit_root(n, (z.l * t) as i64)
            } else {
                Complex::zero()
            }
        },
    )
}

/// `π(z) · a`, computed as a phased row permutation.
pub fn shift_mul<T: Real>(dim: ModelDim, z: PhasePoint, a: &OperatorMatrix<T>) -> OperatorMatrix<T> {
    let n = dim.n();
    let mut out = OperatorMatrix::zeros(n);
    for t in 0..n {
        let phase = unit_root::<T>(n, (z.l * t) as i64);
        let src = (t + n - z.k) % n;
        for j in 0..n {
            out[(t, j)] = phase * a[(src, j)];
        }
    }
    out
}

/// `π(z)* · a`.
pub fn shift_adjoint_mul<T: Real>(dim: ModelDim, z: PhasePoint, a: &OperatorMatrix<T>) -> OperatorMatrix<T> {
    let n = dim.n();
    let mut out = OperatorMatrix::zeros(n);
    for s in 0..n {
        let src = (s + z.k) % n;
        let phase = unit_root::<T>(n, -((z.l * src) as i64));
        for j in 0..n {
            out[(s, j)] = phase * a[(src, j)];
        }
    }
    out
}

/// `a · π(z)*`.
pub fn mul_shift_adjoint<T: Real>(dim: ModelDim, a: &OperatorMatrix<T>, z: PhasePoint) -> OperatorMatrix<T> {
    let n = dim.n();
    let mut out = OperatorMatrix::zeros(n);
    for s in 0..n {
        let phase = unit_root::<T>(n, -((z.l * s) as i64));
        let src = (s + n - z.k) % n;
        for i in 0..n {
            out[(i, s)] = a[(i, src)] * phase;
        }
    }
    out
}

/// `c(z, z') = e^{−2πi k'(l − l')/N}`, so that `π(z)*π(z') = c(z, z') π(z − z')*`.
pub fn cocycle<T: Real>(dim: ModelDim, z: PhasePoint, zp: PhasePoint) -> Complex<T> {
    let n = dim.n() as i64;
    let dl = z.l as i64 - zp.l as i64;
    unit_root(dim.n(), -(zp.k as i64) * dl.rem_euclid(n))
}

/// Function STFT `V_g f(z) = ⟨f, π(z) g⟩`.
pub fn fstft<T: Real>(g: &Signal<T>, f: &Signal<T>) -> Result<ScalarField<T>> {
    let dim = ModelDim::new(f.len())?;
    let n = dim.n();
    g.check_len(n)?;
    // V_g f(k, l) = Σ_t f(t) conj(g(t−k)) e^{−2πi l t/N}
    let roots: Vec<Complex<T>> = (0..n).map(|m| unit_root(n, -(m as i64))).collect();
    Ok(Grid::from_fn(dim, |z| {
        (0..n).fold(Complex::zero(), |acc, t| acc + f[t] * g[(t + n - z.k) % n].conj() * roots[(z.l * t) % n])
    }))
}

/// Adjoint `V_g* F = (1/N) Σ_z F(z) π(z) g`.
pub fn fstft_adjoint<T: Real>(g: &Signal<T>, field: &ScalarField<T>) -> Result<Signal<T>> {
    let dim = field.dim();
    let n = dim.n();
    g.check_len(n)?;
    let mass: T = dim.mass();
    let mut out = Signal::zeros(n);
    for (z, &coef) in field.iter() {
        if coef.is_zero() {
            continue;
        }
        for t in 0..n {
            out[t] = out[t] + coef * unit_root::<T>(n, (z.l * t) as i64) * g[(t + n - z.k) % n];
        }
    }
    Ok(out.scale(Complex::new(mass, T::zero())))
}
