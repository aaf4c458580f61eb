//! Weights on the discrete phase space, weighted mixed norms of operator
//! fields, lattice sequence norms and Wiener amalgam norms, and the
//! Young-type estimate for twisted convolution.
//!
//! Mixed norms put mass `N^{-1/2}` on each axis, so `p = q = 2` is the
//! `1/N`-mass `L²` norm. Sequence norms use counting measure. An infinite
//! exponent means a supremum with no mass factor.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldSource, RealGrid};
use crate::gframe::{Lattice, LatticeSequence};
use crate::opstft::{field_inner, twisted_conv};
use crate::phasespace::{ModelDim, PhasePoint};
use crate::scalar::{conjugate_exponent, Real};

const COMPARE_SLACK: f64 = 1e-12;

/// Strictly positive weight on `Z_N × Z_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight<T> {
    grid: RealGrid<T>,
}

impl<T: Real> Weight<T> {
    pub fn from_grid(grid: RealGrid<T>) -> Result<Self> {
        for (z, &v) in grid.iter() {
            if !v.is_finite() || v <= T::zero() {
                return Err(Error::NonPositiveWeight { k: z.k, l: z.l, value: v.to_f64().unwrap_or(f64::NAN) });
            }
        }
        Ok(Self { grid })
    }

    pub fn constant(dim: ModelDim, value: T) -> Self {
        assert!(value > T::zero() && value.is_finite(), "weight constant must be positive");
        Self { grid: RealGrid::constant(dim, value) }
    }

    pub fn ones(dim: ModelDim) -> Self {
        Self::constant(dim, T::one())
    }

    pub fn dim(&self) -> ModelDim {
        self.grid.dim()
    }

    #[inline]
    pub fn value(&self, z: PhasePoint) -> T {
        *self.grid.get(z)
    }

    pub fn grid(&self) -> &RealGrid<T> {
        &self.grid
    }

    /// `1/m`.
    pub fn reciprocal(&self) -> Self {
        Self { grid: self.grid.map(|x| x.recip()) }
    }

    /// `v(z) = max_w m(z + w) / m(w)`, the smallest function with
    /// `m(z + w) ≤ v(z) m(w)`. It is submultiplicative and `v(0) = 1`.
    pub fn moderating_envelope(&self) -> Self {
        let dim = self.dim();
        let grid = RealGrid::from_fn_par(dim, |z| {
            dim.points().map(|w| self.value(dim.add(z, w)) / self.value(w)).fold(T::zero(), T::max)
        });
        Self { grid }
    }

    fn check_dim(&self, dim: ModelDim) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim.n(), found: self.dim().n() });
        }
        Ok(())
    }
}

/// `v_s(z) = (1 + d(z, 0))^s` with the wraparound `l¹` distance.
pub fn polynomial_weight<T: Real>(dim: ModelDim, s: T) -> Result<Weight<T>> {
    if s.is_nan() || s < T::zero() || s.is_infinite() {
        return Err(Error::InvalidParameter(format!("weight exponent must be finite and >= 0, got {s}")));
    }
    Weight::from_grid(RealGrid::from_fn(dim, |z| (T::one() + T::from_count(dim.wrap_norm(z))).powf(s)))
}

fn exceeds<T: Real>(lhs: T, rhs: T) -> bool {
    lhs > rhs * (T::one() + T::lit(COMPARE_SLACK))
}

/// First pair `(z, w)` with `v(z + w) > v(z) v(w)`, scanning `z` then `w`.
pub fn check_submultiplicative<T: Real>(v: &Weight<T>) -> Option<(PhasePoint, PhasePoint)> {
    let dim = v.dim();
    let pts: Vec<PhasePoint> = dim.points().collect();
    pts.par_iter()
        .map(|&z| pts.iter().find(|&&w| exceeds(v.value(dim.add(z, w)), v.value(z) * v.value(w))).map(|&w| (z, w)))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next()
}

pub fn is_submultiplicative<T: Real>(v: &Weight<T>) -> bool {
    check_submultiplicative(v).is_none()
}

/// Result of the exhaustive check `m(z + w) ≤ v(z) m(w)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModerateCertificate<T> {
    /// `max_z max(m(z)/v(z), 1/(m(z) v(z)))`.
    pub constant: T,
    /// Every offending pair `(z, w)`.
    pub violations: Vec<(PhasePoint, PhasePoint)>,
}

impl<T: Real> ModerateCertificate<T> {
    pub fn is_moderate(&self) -> bool {
        self.violations.is_empty()
    }

    fn into_result(self) -> Result<Self> {
        match self.violations.first() {
            Some(&(z, w)) => Err(Error::NotModerate(z.k, z.l, w.k, w.l)),
            None => Ok(self),
        }
    }
}

pub fn check_moderate<T: Real>(m: &Weight<T>, v: &Weight<T>) -> Result<ModerateCertificate<T>> {
    let dim = m.dim();
    v.check_dim(dim)?;
    let pts: Vec<PhasePoint> = dim.points().collect();
    let violations = pts
        .par_iter()
        .map(|&z| {
            pts.iter()
                .filter(|&&w| exceeds(m.value(dim.add(z, w)), v.value(z) * m.value(w)))
                .map(|&w| (z, w))
                .collect::<Vec<_>>()
        })
        .collect::<Vec<_>>()
        .concat();
    let constant = pts
        .iter()
        .map(|&z| {
            let (mz, vz) = (m.value(z), v.value(z));
            (mz / vz).max((mz * vz).recip())
        })
        .fold(T::zero(), T::max);
    Ok(ModerateCertificate { constant, violations })
}

pub(crate) fn check_exponent<T: Real>(p: T) -> Result<()> {
    if p.is_nan() || p < T::one() {
        return Err(Error::InvalidParameter(format!("mixed-norm exponents must lie in [1, inf], got {p}")));
    }
    Ok(())
}

/// Exponents and weight of `L^{p,q}_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedNormParams<T> {
    pub p: T,
    pub q: T,
    pub m: Weight<T>,
}

impl<T: Real> MixedNormParams<T> {
    pub fn new(p: T, q: T, m: Weight<T>) -> Result<Self> {
        check_exponent(p)?;
        check_exponent(q)?;
        Ok(Self { p, q, m })
    }

    pub fn unweighted(dim: ModelDim, p: T, q: T) -> Result<Self> {
        Self::new(p, q, Weight::ones(dim))
    }

    /// `(p', q', 1/m)`.
    pub fn dual(&self) -> Self {
        Self { p: conjugate_exponent(self.p), q: conjugate_exponent(self.q), m: self.m.reciprocal() }
    }
}

// (Σ_i mass·x_i^p)^{1/p}, or max_i x_i when p = ∞.
fn lp<T: Real>(values: impl Iterator<Item = T>, p: T, mass: T) -> T {
    if p.is_infinite() {
        values.fold(T::zero(), T::max)
    } else {
        (values.map(|x| x.powf(p)).sum::<T>() * mass).powf(p.recip())
    }
}

/// Weighted mixed norm of a nonnegative grid; inner sum over `k`, outer over `l`.
pub fn mixed_norm_values<T: Real>(values: &RealGrid<T>, params: &MixedNormParams<T>) -> Result<T> {
    let dim = values.dim();
    params.m.check_dim(dim)?;
    check_exponent(params.p)?;
    check_exponent(params.q)?;
    let n = dim.n();
    let axis_mass = T::from_count(n).sqrt().recip();
    let inner = (0..n).map(|l| {
        lp(
            (0..n).map(|k| {
                let z = PhasePoint { k, l };
                *values.get(z) * params.m.value(z)
            }),
            params.p,
            axis_mass,
        )
    });
    Ok(lp(inner, params.q, axis_mass))
}

/// `‖Ψ‖_{L^{p,q}_m}` of `z ↦ ‖Ψ(z)‖_HS`.
pub fn mixed_norm<T: Real, F: FieldSource<T> + ?Sized>(field: &F, params: &MixedNormParams<T>) -> Result<T> {
    let dim = field.dim();
    let grid = RealGrid::from_fn_par(dim, |z| field.cell(z).hs_norm());
    mixed_norm_values(&grid, params)
}

// Counting-measure mixed norm of values indexed by the lattice points, with
// the weight sampled at those points.
fn lattice_norm<T: Real>(lattice: &Lattice, values: &[T], p: T, q: T, m: &Weight<T>) -> Result<T> {
    check_exponent(p)?;
    check_exponent(q)?;
    m.check_dim(lattice.dim())?;
    let (na, nb) = lattice.shape();
    let inner = (0..nb).map(|b| lp((0..na).map(|a| values[a * nb + b] * m.value(lattice.point(a, b))), p, T::one()));
    Ok(lp(inner, q, T::one()))
}

/// `‖{A_λ}‖_{l^{p,q}_m̃}` with `m̃(a, b) = m(αa, βb)`; `m` is given on the full grid.
pub fn seq_mixed_norm<T: Real>(seq: &LatticeSequence<T>, p: T, q: T, m: &Weight<T>) -> Result<T> {
    let values: Vec<T> = seq.entries().iter().map(|a| a.hs_norm()).collect();
    lattice_norm(&seq.lattice(), &values, p, q, m)
}

/// Restriction of a field to a lattice.
pub fn restrict<T: Real, F: FieldSource<T> + ?Sized>(field: &F, lattice: &Lattice) -> Result<LatticeSequence<T>> {
    if field.dim() != lattice.dim() {
        return Err(Error::DimensionMismatch { expected: lattice.dim().n(), found: field.dim().n() });
    }
    Ok(LatticeSequence::from_fn(*lattice, |z| field.cell(z).into_owned()))
}

/// `W(L^{p,q}_m)` norm with `a × b` blocks anchored on `aZ_N × bZ_N`.
pub fn amalgam_norm<T: Real, F: FieldSource<T> + ?Sized>(
    field: &F,
    block: (usize, usize),
    p: T,
    q: T,
    m: &Weight<T>,
) -> Result<T> {
    let dim = field.dim();
    let grid = RealGrid::from_fn_par(dim, |z| field.cell(z).hs_norm());
    amalgam_norm_values(&grid, block, p, q, m)
}

pub fn amalgam_norm_values<T: Real>(
    values: &RealGrid<T>,
    block: (usize, usize),
    p: T,
    q: T,
    m: &Weight<T>,
) -> Result<T> {
    let dim = values.dim();
    let anchors = Lattice::new(dim, block.0, block.1)?;
    let sups: Vec<T> = anchors
        .points()
        .map(|u| {
            let mut best = T::zero();
            for d1 in 0..block.0 {
                for d2 in 0..block.1 {
                    best = best.max(*values.get(dim.add(u, PhasePoint { k: d1, l: d2 })));
                }
            }
            best
        })
        .collect();
    lattice_norm(&anchors, &sups, p, q, m)
}

/// Constant `c` with `‖Ψ|_Λ‖_{l^{p,q}_m̃} ≤ c ‖Ψ‖_{W(L^{p,q}_m)}` for the
/// given block partition.
///
/// `c = ρ · n_k^{1/p} · n_l^{1/q}`, where `ρ` is the largest ratio
/// `m(λ)/m(anchor)` between a lattice point and the anchor of its block and
/// `n_k`, `n_l` count the most lattice coordinates falling into one block
/// along each axis.
pub fn sampling_constant<T: Real>(lattice: &Lattice, block: (usize, usize), p: T, q: T, m: &Weight<T>) -> Result<T> {
    check_exponent(p)?;
    check_exponent(q)?;
    let dim = lattice.dim();
    m.check_dim(dim)?;
    Lattice::new(dim, block.0, block.1)?;
    let n = dim.n();
    let per_block = |step: usize, side: usize| -> usize {
        let mut counts = vec![0usize; n / side];
        for c in (0..n).step_by(step) {
            counts[c / side] += 1;
        }
        counts.into_iter().max().unwrap_or(0)
    };
    let n_k = per_block(lattice.alpha(), block.0);
    let n_l = per_block(lattice.beta(), block.1);
    let rho = lattice
        .points()
        .map(|z| {
            let anchor = PhasePoint { k: z.k - z.k % block.0, l: z.l - z.l % block.1 };
            m.value(z) / m.value(anchor)
        })
        .fold(T::zero(), T::max);
    let inv = |x: T| if x.is_infinite() { T::zero() } else { x.recip() };
    Ok(rho * T::from_count(n_k).powf(inv(p)) * T::from_count(n_l).powf(inv(q)))
}

/// Sampling inequality evaluated on one field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingReport<T> {
    /// `‖Ψ|_Λ‖_{l^{p,q}_m̃}`.
    pub restricted: T,
    /// `‖Ψ‖_{W(L^{p,q}_m)}`.
    pub amalgam: T,
    pub constant: T,
}

impl<T: Real> SamplingReport<T> {
    /// `restricted / amalgam`, zero for a zero field.
    pub fn ratio(&self) -> T {
        if self.amalgam > T::zero() {
            self.restricted / self.amalgam
        } else {
            T::zero()
        }
    }

    pub fn holds(&self, rel_tol: T) -> bool {
        self.restricted <= self.constant * self.amalgam * (T::one() + rel_tol)
    }
}

pub fn sampling_report<T: Real, F: FieldSource<T> + ?Sized>(
    field: &F,
    lattice: &Lattice,
    block: (usize, usize),
    p: T,
    q: T,
    m: &Weight<T>,
) -> Result<SamplingReport<T>> {
    let restricted = seq_mixed_norm(&restrict(field, lattice)?, p, q, m)?;
    let amalgam = amalgam_norm(field, block, p, q, m)?;
    let constant = sampling_constant(lattice, block, p, q, m)?;
    Ok(SamplingReport { restricted, amalgam, constant })
}

/// Both sides of `‖F ♮ H‖_{L^{p,q}_m} ≤ C_{m,v} ‖F‖_{L¹_v} ‖H‖_{L^{p,q}_m}`.
pub fn young_twisted_check<T: Real, F, H>(f: &F, h: &H, v: &Weight<T>, m: &Weight<T>, p: T, q: T) -> Result<(T, T)>
where
    F: FieldSource<T> + ?Sized,
    H: FieldSource<T> + ?Sized,
{
    let cert = check_moderate(m, v)?.into_result()?;
    let params = MixedNormParams::new(p, q, m.clone())?;
    let l1 = MixedNormParams::new(T::one(), T::one(), v.clone())?;
    let conv = twisted_conv(f, h)?;
    let lhs = mixed_norm(&conv, &params)?;
    let rhs = cert.constant * mixed_norm(f, &l1)? * mixed_norm(h, &params)?;
    Ok((lhs, rhs))
}

/// Both sides of the weighted Hölder inequality
/// `|(1/N) Σ_z ⟨Ψ(z), Φ(z)⟩| ≤ ‖Ψ‖_{L^{p,q}_m} ‖Φ‖_{L^{p',q'}_{1/m}}`.
pub fn holder_check<T: Real, F, G>(psi: &F, phi: &G, params: &MixedNormParams<T>) -> Result<(T, T)>
where
    F: FieldSource<T> + ?Sized,
    G: FieldSource<T> + ?Sized,
{
    let lhs = field_inner(psi, phi)?.norm();
    let rhs = mixed_norm(psi, params)? * mixed_norm(phi, &params.dual())?;
    Ok((lhs, rhs))
}
