//! Gabor g-frames `{S* π(λ)*}` over separable lattices, canonical duals,
//! localization operators and the localization characterization of
//! coorbit norms.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{RealGrid, ScalarField};
use crate::hsalgebra::conjugate_shift;
use crate::linalg::hermitian_eigen;
use crate::matrix::{OperatorMatrix, Signal};
use crate::opstft::op_stft_at;
use crate::phasespace::{fstft, fstft_adjoint, shift_adjoint_mul, shift_mul, ModelDim, PhasePoint};
use crate::scalar::Real;
use crate::weights_norms::{seq_mixed_norm, Weight};

/// Relative threshold below which a lower frame bound counts as zero.
pub const FRAME_TOLERANCE: f64 = 1e-10;

/// `Λ = αZ_N × βZ_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    alpha: usize,
    beta: usize,
    dim: ModelDim,
}

impl Lattice {
    pub fn new(dim: ModelDim, alpha: usize, beta: usize) -> Result<Self> {
        let n = dim.n();
        if alpha == 0 || !n.is_multiple_of(alpha) {
            return Err(Error::NotDivisor { side: "alpha", value: alpha, n });
        }
        if beta == 0 || !n.is_multiple_of(beta) {
            return Err(Error::NotDivisor { side: "beta", value: beta, n });
        }
        Ok(Self { alpha, beta, dim })
    }

    /// The whole phase space.
    pub fn full(dim: ModelDim) -> Self {
        Self { alpha: 1, beta: 1, dim }
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn dim(&self) -> ModelDim {
        self.dim
    }

    /// Number of lattice steps along time and frequency.
    pub fn shape(&self) -> (usize, usize) {
        (self.dim.n() / self.alpha, self.dim.n() / self.beta)
    }

    pub fn len(&self) -> usize {
        let (a, b) = self.shape();
        a * b
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `(αa, βb)`.
    pub fn point(&self, a: usize, b: usize) -> PhasePoint {
        PhasePoint { k: self.alpha * a, l: self.beta * b }
    }

    /// Lattice points with the time step `a` as the slow index.
    pub fn points(&self) -> impl Iterator<Item = PhasePoint> + Clone + '_ {
        let (na, nb) = self.shape();
        (0..na).flat_map(move |a| (0..nb).map(move |b| self.point(a, b)))
    }

    /// Position of `z` in [`Lattice::points`], if `z ∈ Λ`.
    pub fn index_of(&self, z: PhasePoint) -> Option<usize> {
        if !z.k.is_multiple_of(self.alpha) || !z.l.is_multiple_of(self.beta) {
            return None;
        }
        let (_, nb) = self.shape();
        Some((z.k / self.alpha) * nb + z.l / self.beta)
    }
}

/// Operators indexed by the points of a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSequence<T> {
    lattice: Lattice,
    entries: Vec<OperatorMatrix<T>>,
}

impl<T: Real> LatticeSequence<T> {
    /// Entries in the order of [`Lattice::points`].
    pub fn from_entries(lattice: Lattice, entries: Vec<OperatorMatrix<T>>) -> Result<Self> {
        if entries.len() != lattice.len() {
            return Err(Error::IndexMismatch { expected: lattice.len(), found: entries.len() });
        }
        for e in &entries {
            e.check_dim(lattice.dim().n())?;
        }
        Ok(Self { lattice, entries })
    }

    pub fn from_fn(lattice: Lattice, mut f: impl FnMut(PhasePoint) -> OperatorMatrix<T>) -> Self {
        let entries = lattice.points().map(&mut f).collect();
        Self { lattice, entries }
    }

    pub fn zeros(lattice: Lattice) -> Self {
        Self::from_fn(lattice, |_| OperatorMatrix::zeros(lattice.dim().n()))
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn entries(&self) -> &[OperatorMatrix<T>] {
        &self.entries
    }

    pub fn get(&self, z: PhasePoint) -> Option<&OperatorMatrix<T>> {
        self.lattice.index_of(z).map(|i| &self.entries[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (PhasePoint, &OperatorMatrix<T>)> {
        self.lattice.points().zip(self.entries.iter())
    }
}

fn check_lattice<T: Real>(s: &OperatorMatrix<T>, lattice: &Lattice) -> Result<()> {
    s.check_dim(lattice.dim().n())
}

/// `C_S T = {S* π(λ)* T}_λ`.
pub fn analysis<T: Real>(
    s: &OperatorMatrix<T>,
    lattice: &Lattice,
    t: &OperatorMatrix<T>,
) -> Result<LatticeSequence<T>> {
    check_lattice(s, lattice)?;
    check_lattice(t, lattice)?;
    Ok(LatticeSequence::from_fn(*lattice, |z| op_stft_at(s, t, z)))
}

/// `D_S {T_λ} = Σ_λ π(λ) S T_λ`.
pub fn synthesis<T: Real>(
    s: &OperatorMatrix<T>,
    lattice: &Lattice,
    seq: &LatticeSequence<T>,
) -> Result<OperatorMatrix<T>> {
    check_lattice(s, lattice)?;
    if seq.lattice() != *lattice {
        return Err(Error::IndexMismatch { expected: lattice.len(), found: seq.entries().len() });
    }
    let dim = lattice.dim();
    let mut acc = OperatorMatrix::zeros(dim.n());
    for (z, a) in seq.iter() {
        acc += &shift_mul(dim, z, &s.matmul(a));
    }
    Ok(acc)
}

/// `M_{S,R} = Σ_λ α_λ(S R*)`; the frame-type operator `D_S C_R` is `T ↦ M_{S,R} T`.
pub fn frame_matrix<T: Real>(
    s: &OperatorMatrix<T>,
    r: &OperatorMatrix<T>,
    lattice: &Lattice,
) -> Result<OperatorMatrix<T>> {
    check_lattice(s, lattice)?;
    check_lattice(r, lattice)?;
    let srs = s.matmul(&r.adjoint());
    let mut acc = OperatorMatrix::zeros(lattice.dim().n());
    for z in lattice.points() {
        acc += &conjugate_shift(z, &srs);
    }
    Ok(acc)
}

/// Optimal squared g-frame bounds `A ‖T‖² ≤ Σ_λ ‖S* π(λ)* T‖² ≤ B ‖T‖²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameReport<T> {
    pub lower: T,
    pub upper: T,
    pub is_frame: bool,
    /// `upper / lower`, infinite when not a frame.
    pub condition: T,
}

fn report_from_eigen<T: Real>(values: &[T]) -> FrameReport<T> {
    let lower = values.first().copied().unwrap_or_else(T::zero).max(T::zero());
    let upper = values.last().copied().unwrap_or_else(T::zero).max(T::zero());
    let is_frame = upper > T::zero() && lower > T::lit(FRAME_TOLERANCE) * upper;
    let condition = if is_frame { upper / lower } else { T::infinity() };
    FrameReport { lower, upper, is_frame, condition }
}

pub fn frame_bounds<T: Real>(s: &OperatorMatrix<T>, lattice: &Lattice) -> Result<FrameReport<T>> {
    let m = frame_matrix(s, s, lattice)?;
    Ok(report_from_eigen(&hermitian_eigen(&m).values))
}

fn inverse_frame_matrix<T: Real>(s: &OperatorMatrix<T>, lattice: &Lattice) -> Result<OperatorMatrix<T>> {
    let m = frame_matrix(s, s, lattice)?;
    let eig = hermitian_eigen(&m);
    let report = report_from_eigen(&eig.values);
    if !report.is_frame {
        return Err(Error::NotAFrame {
            lower: report.lower.to_f64().unwrap_or(f64::NAN),
            upper: report.upper.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(eig.map_spectrum(|x| x.recip()))
}

/// Analysis with the canonical dual g-frame, `{S* M⁻¹ π(λ)* T}_λ`.
pub fn dual_analysis<T: Real>(
    s: &OperatorMatrix<T>,
    lattice: &Lattice,
    t: &OperatorMatrix<T>,
) -> Result<LatticeSequence<T>> {
    check_lattice(t, lattice)?;
    let inv = inverse_frame_matrix(s, lattice)?;
    let dim = lattice.dim();
    let pulled = inv.matmul(t);
    Ok(LatticeSequence::from_fn(*lattice, |z| s.adjoint_matmul(&shift_adjoint_mul(dim, z, &pulled))))
}

/// Reconstruction `Σ_λ π(λ) S S* M⁻¹ π(λ)* T`, which returns `T`.
pub fn canonical_dual_apply<T: Real>(
    s: &OperatorMatrix<T>,
    lattice: &Lattice,
    t: &OperatorMatrix<T>,
) -> Result<OperatorMatrix<T>> {
    let coeffs = dual_analysis(s, lattice, t)?;
    synthesis(s, lattice, &coeffs)
}

/// Matrix of `f ↦ V_φ*(h · V_φ f)`.
pub fn localization_op<T: Real>(phi: &Signal<T>, h: &ScalarField<T>) -> Result<OperatorMatrix<T>> {
    let n = h.n();
    phi.check_len(n)?;
    if phi.is_zero() {
        return Err(Error::DegenerateSignal);
    }
    let mut data = vec![Complex::zero(); n * n];
    for j in 0..n {
        let coeffs = fstft(phi, &Signal::basis(n, j))?;
        let weighted = ScalarField::from_fn(h.dim(), |z| *h.get(z) * *coeffs.get(z));
        let col = fstft_adjoint(phi, &weighted)?;
        for i in 0..n {
            data[i * n + j] = col[i];
        }
    }
    OperatorMatrix::from_row_major(n, data)
}

fn check_symbol<T: Real>(h: &RealGrid<T>) -> Result<()> {
    for (z, &v) in h.iter() {
        if v.is_nan() || v < T::zero() {
            return Err(Error::NegativeSymbol { k: z.k, l: z.l, value: v.to_f64().unwrap_or(f64::NAN) });
        }
    }
    Ok(())
}

/// Exact `(min_z, max_z)` of the periodization `Σ_{λ∈Λ} h(z − λ)`.
pub fn symbol_frame_condition<T: Real>(h: &RealGrid<T>, lattice: &Lattice) -> Result<(T, T)> {
    check_symbol(h)?;
    let dim = h.dim();
    if lattice.dim() != dim {
        return Err(Error::DimensionMismatch { expected: lattice.dim().n(), found: dim.n() });
    }
    let periodized = RealGrid::from_fn(dim, |z| lattice.points().map(|lam| *h.get(dim.sub(z, lam))).sum::<T>());
    Ok((periodized.min_value(), periodized.max_value()))
}

/// `‖{A_h^φ π(λ)* T}_λ‖_{l^{p,q}_m̃}` for a real nonnegative symbol.
#[allow(clippy::too_many_arguments)]
pub fn characterization_seq<T: Real>(
    t: &OperatorMatrix<T>,
    phi: &Signal<T>,
    h: &RealGrid<T>,
    lattice: &Lattice,
    p: T,
    q: T,
    m: &Weight<T>,
) -> Result<T> {
    check_symbol(h)?;
    check_lattice(t, lattice)?;
    let loc = localization_op(phi, &ScalarField::from_real(h))?;
    let dim = lattice.dim();
    let seq = LatticeSequence::from_fn(*lattice, |z| loc.matmul(&shift_adjoint_mul(dim, z, t)));
    seq_mixed_norm(&seq, p, q, m)
}

/// Eigen-bounds of `Σ_λ α_λ(A* A)` with `A = A_h^φ`: at `p = q = 2`, `m ≡ 1`
/// the squared characterization norm lies in `[lower ‖T‖², upper ‖T‖²]`.
pub fn characterization_bracket<T: Real>(
    phi: &Signal<T>,
    h: &RealGrid<T>,
    lattice: &Lattice,
) -> Result<FrameReport<T>> {
    check_symbol(h)?;
    let loc = localization_op(phi, &ScalarField::from_real(h))?;
    frame_bounds(&loc.adjoint(), lattice)
}

/// Constants of the estimate
/// `‖C_S T‖_{l^{p,q}_m̃} ≤ sampling · amalgam · ‖𝔙_S T‖_{L^{p,q}_m}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisBound<T> {
    /// Lattice-sampling constant for the block partition.
    pub sampling: T,
    /// Bound of `‖𝔙_S T‖_W ≤ amalgam · ‖𝔙_S T‖_{L^{p,q}_m}` from the reproducing formula.
    pub amalgam: T,
    pub bound: T,
}

/// Computes [`AnalysisBound`] for the block partition `block = (a, b)`.
///
/// The amalgam constant is
/// `ρ · (1/N) Σ_u g♯(u) · a^{1−1/p} b^{1−1/q} · N^{(1/p+1/q)/2}`, where
/// `g = v ‖𝔙_S S‖ / ‖S‖²`, `g♯(u) = max_{d,d'} g(u + d − d')` over block
/// offsets, `u` runs over block anchors, and `ρ` bounds `m(anchor)/m(z)`
/// inside a block.
#[allow(clippy::too_many_arguments)]
pub fn analysis_operator_bound<T: Real>(
    s: &OperatorMatrix<T>,
    lattice: &Lattice,
    block: (usize, usize),
    p: T,
    q: T,
    m: &Weight<T>,
    v: &Weight<T>,
) -> Result<AnalysisBound<T>> {
    check_lattice(s, lattice)?;
    if s.is_zero() {
        return Err(Error::DegenerateWindow);
    }
    let dim = lattice.dim();
    let blocks = Lattice::new(dim, block.0, block.1)?;
    let sampling = crate::weights_norms::sampling_constant(lattice, block, p, q, m)?;
    crate::weights_norms::check_exponent(p)?;
    crate::weights_norms::check_exponent(q)?;

    let norm2 = s.hs_norm_sqr();
    let g = RealGrid::from_fn(dim, |z| v.value(z) * op_stft_at(s, s, z).hs_norm() / norm2);
    let offsets: Vec<PhasePoint> =
        (0..block.0).flat_map(|d1| (0..block.1).map(move |d2| PhasePoint { k: d1, l: d2 })).collect();
    let mut g_sharp_sum = T::zero();
    let mut rho = T::zero();
    for u in blocks.points() {
        let mut best = T::zero();
        for &d in &offsets {
            for &dp in &offsets {
                best = best.max(*g.get(dim.add(u, dim.sub(d, dp))));
            }
            rho = rho.max(m.value(u) / m.value(dim.add(u, d)));
        }
        g_sharp_sum = g_sharp_sum + best;
    }
    let inv = |x: T| if x.is_infinite() { T::zero() } else { x.recip() };
    let nf = T::from_count(dim.n());
    let amalgam = rho
        * g_sharp_sum
        * dim.mass::<T>()
        * T::from_count(block.0).powf(T::one() - inv(p))
        * T::from_count(block.1).powf(T::one() - inv(q))
        * nf.powf((inv(p) + inv(q)) * T::lit(0.5));
    Ok(AnalysisBound { sampling, amalgam, bound: sampling * amalgam })
}
