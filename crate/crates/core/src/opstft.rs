//! The operator STFT `𝔙_S T(z) = S* π(z)* T` and the structures built on
//! its image: adjoint, reproducing kernel, projection, twisted convolution,
//! spectrograms and total correlation.

use std::borrow::Cow;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{FieldSource, OperatorField, RealGrid};
use crate::hsalgebra::hs_inner;
use crate::matrix::{OperatorMatrix, Signal};
use crate::phasespace::{cocycle, shift_adjoint_mul, shift_mul, ModelDim, PhasePoint};
use crate::scalar::{unit_root, Real};

/// Largest `N` for which a dense kernel table (`N⁶` entries) is built.
pub const DENSE_LIMIT: usize = 16;

/// Default relative tolerance of identity checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

fn pair_dim<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<ModelDim> {
    let dim = ModelDim::new(s.dim())?;
    t.check_dim(s.dim())?;
    Ok(dim)
}

fn check_window<T: Real>(s: &OperatorMatrix<T>) -> Result<()> {
    if s.is_zero() {
        Err(Error::DegenerateWindow)
    } else {
        Ok(())
    }
}

/// Single cell `S* π(z)* T`.
pub fn op_stft_at<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>, z: PhasePoint) -> OperatorMatrix<T> {
    let dim = ModelDim::unchecked(s.dim());
    s.adjoint_matmul(&shift_adjoint_mul(dim, z, t))
}

/// Dense operator STFT.
pub fn op_stft<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<OperatorField<T>> {
    let dim = pair_dim(s, t)?;
    Ok(OperatorField::from_fn_par(dim, |z| op_stft_at(s, t, z)))
}

/// Operator STFT evaluated cell by cell on request.
#[derive(Debug, Clone)]
pub struct StftEvaluator<'a, T> {
    window: &'a OperatorMatrix<T>,
    target: &'a OperatorMatrix<T>,
    dim: ModelDim,
}

impl<'a, T: Real> StftEvaluator<'a, T> {
    pub fn new(window: &'a OperatorMatrix<T>, target: &'a OperatorMatrix<T>) -> Result<Self> {
        let dim = pair_dim(window, target)?;
        Ok(Self { window, target, dim })
    }
}

impl<T: Real> FieldSource<T> for StftEvaluator<'_, T> {
    fn dim(&self) -> ModelDim {
        self.dim
    }

    fn cell(&self, z: PhasePoint) -> Cow<'_, OperatorMatrix<T>> {
        Cow::Owned(op_stft_at(self.window, self.target, z))
    }
}

// Sums f(z) over the grid. Each time row is reduced sequentially and rows are
// added in order, so the result does not depend on thread scheduling.
fn ordered_sum<T: Real>(dim: ModelDim, f: impl Fn(PhasePoint) -> OperatorMatrix<T> + Sync) -> OperatorMatrix<T> {
    let n = dim.n();
    let rows: Vec<OperatorMatrix<T>> = (0..n)
        .into_par_iter()
        .map(|k| {
            let mut acc = OperatorMatrix::zeros(n);
            for l in 0..n {
                acc += &f(PhasePoint { k, l });
            }
            acc
        })
        .collect();
    rows.iter().fold(OperatorMatrix::zeros(n), |acc, r| &acc + r)
}

/// `𝔙_S* Ψ = (1/N) Σ_z π(z) S Ψ(z)`.
pub fn op_stft_adjoint<T: Real, F: FieldSource<T> + ?Sized>(
    s: &OperatorMatrix<T>,
    field: &F,
) -> Result<OperatorMatrix<T>> {
    let dim = field.dim();
    s.check_dim(dim.n())?;
    let sum = ordered_sum(dim, |z| {
        let cell = field.cell(z);
        shift_mul(dim, z, &s.matmul(&cell))
    });
    Ok(sum.scale_real(dim.mass()))
}

/// `(1/N) Σ_z ⟨Ψ(z), Φ(z)⟩_HS`.
pub fn field_inner<T: Real, F, G>(psi: &F, phi: &G) -> Result<Complex<T>>
where
    F: FieldSource<T> + ?Sized,
    G: FieldSource<T> + ?Sized,
{
    let dim = psi.dim();
    if phi.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim.n(), found: phi.dim().n() });
    }
    let mut acc = Complex::zero();
    for z in dim.points() {
        acc = acc + hs_inner(&psi.cell(z), &phi.cell(z))?;
    }
    Ok(acc * dim.mass::<T>())
}

/// Both sides of `⟨𝔙_S T, 𝔙_Q R⟩ = ⟨Q, S⟩ ⟨T, R⟩`, as `(lhs, rhs)`.
pub fn moyal_orthogonality<T: Real>(
    s: &OperatorMatrix<T>,
    t: &OperatorMatrix<T>,
    q: &OperatorMatrix<T>,
    r: &OperatorMatrix<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    let n = s.dim();
    for x in [t, q, r] {
        x.check_dim(n)?;
    }
    let lhs = field_inner(&StftEvaluator::new(s, t)?, &StftEvaluator::new(q, r)?)?;
    let rhs = hs_inner(q, s)? * hs_inner(t, r)?;
    Ok((lhs, rhs))
}

/// `max_z ‖𝔙_S T(z) − e^{−2πi kl/N} (𝔙_T S(−z))*‖_HS`.
pub fn flip_identity_check<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<T> {
    let dim = pair_dim(s, t)?;
    let n = dim.n();
    let residual = dim
        .points()
        .map(|z| {
            let lhs = op_stft_at(s, t, z);
            let phase = unit_root::<T>(n, -((z.k * z.l) as i64));
            let rhs = op_stft_at(t, s, dim.neg(z)).adjoint().scale(phase);
            lhs.hs_distance(&rhs)
        })
        .fold(T::zero(), T::max);
    Ok(residual)
}

/// `K(z, z') = S* π(z)* π(z') S`, evaluated on demand.
#[derive(Debug, Clone)]
pub struct ReproducingKernel<T> {
    window: OperatorMatrix<T>,
    dim: ModelDim,
}

impl<T: Real> ReproducingKernel<T> {
    pub fn new(window: &OperatorMatrix<T>) -> Result<Self> {
        let dim = ModelDim::new(window.dim())?;
        check_window(window)?;
        Ok(Self { window: window.clone(), dim })
    }

    pub fn dim(&self) -> ModelDim {
        self.dim
    }

    pub fn eval(&self, z: PhasePoint, zp: PhasePoint) -> OperatorMatrix<T> {
        let moved = shift_mul(self.dim, zp, &self.window);
        self.window.adjoint_matmul(&shift_adjoint_mul(self.dim, z, &moved))
    }

    /// Full `N² × N²` table, row index `z`, column index `z'`, both with `k`
    /// as the slow coordinate.
    pub fn to_dense(&self) -> Result<Vec<OperatorMatrix<T>>> {
        let n = self.dim.n();
        if n > DENSE_LIMIT {
            return Err(Error::TooLargeForDense { n, limit: DENSE_LIMIT });
        }
        let pts: Vec<PhasePoint> = self.dim.points().collect();
        Ok(pts
            .par_iter()
            .flat_map_iter(|&z| pts.iter().map(move |&zp| (z, zp)))
            .map(|(z, zp)| self.eval(z, zp))
            .collect())
    }
}

pub fn reproducing_kernel<T: Real>(s: &OperatorMatrix<T>) -> Result<ReproducingKernel<T>> {
    ReproducingKernel::new(s)
}

/// `P_S Ψ(z) = (1/N) Σ_{z'} K(z, z') Ψ(z')`, evaluated as `𝔙_S 𝔙_S* Ψ`.
pub fn kernel_project<T: Real, F: FieldSource<T> + ?Sized>(
    s: &OperatorMatrix<T>,
    field: &F,
) -> Result<OperatorField<T>> {
    check_window(s)?;
    let back = op_stft_adjoint(s, field)?;
    op_stft(s, &back)
}

/// `(F ♮ H)(z) = (1/N) Σ_{z'} H(z − z') F(z') c(z, z')`.
pub fn twisted_conv<T: Real, F, H>(f: &F, h: &H) -> Result<OperatorField<T>>
where
    F: FieldSource<T> + ?Sized,
    H: FieldSource<T> + ?Sized,
{
    let dim = f.dim();
    if h.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim.n(), found: h.dim().n() });
    }
    let n = dim.n();
    let mass: T = dim.mass();
    Ok(OperatorField::from_fn_par(dim, |z| {
        let mut acc = OperatorMatrix::zeros(n);
        for zp in dim.points() {
            let fz = f.cell(zp);
            if fz.is_zero() {
                continue;
            }
            let prod = h.cell(dim.sub(z, zp)).matmul(&fz);
            acc.axpy(cocycle(dim, z, zp), &prod);
        }
        acc.scale_real(mass)
    }))
}

/// Outcome of testing whether a field lies in the transform's image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership<T> {
    pub is_member: bool,
    /// `max_z ‖(Ψ ♮ 𝔙_S S)(z) − Ψ(z)‖_HS`.
    pub residual: T,
    pub tolerance: T,
}

/// Membership test with tolerance `DEFAULT_TOLERANCE · max_z ‖Ψ(z)‖_HS`.
pub fn membership_check<T: Real, F: FieldSource<T> + ?Sized>(
    field: &F,
    s: &OperatorMatrix<T>,
) -> Result<Membership<T>> {
    membership_check_with(field, s, T::lit(DEFAULT_TOLERANCE))
}

pub fn membership_check_with<T: Real, F: FieldSource<T> + ?Sized>(
    field: &F,
    s: &OperatorMatrix<T>,
    rel_tol: T,
) -> Result<Membership<T>> {
    check_window(s)?;
    s.check_dim(field.dim().n())?;
    let kernel = op_stft(s, s)?;
    let conv = twisted_conv(field, &kernel)?;
    let dim = field.dim();
    let mut residual = T::zero();
    let mut scale = T::zero();
    for z in dim.points() {
        let cell = field.cell(z);
        residual = residual.max(conv.get(z).hs_distance(&cell));
        scale = scale.max(cell.hs_norm());
    }
    let tolerance = rel_tol * scale;
    Ok(Membership { is_member: residual <= tolerance, residual, tolerance })
}

/// `z ↦ ‖𝔙_S T(z)‖_HS`.
pub fn spectrogram<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<RealGrid<T>> {
    let dim = pair_dim(s, t)?;
    Ok(RealGrid::from_fn_par(dim, |z| op_stft_at(s, t, z).hs_norm()))
}

/// Squared total correlation `z ↦ ‖𝔙_S S(z)‖²_HS = Σ_{n,m} |V_{f_n} f_m(z)|²`
/// of the data operator `S = Σ f_n ⊗ e_n`.
pub fn total_correlation<T: Real>(signals: &[Signal<T>]) -> Result<RealGrid<T>> {
    let first = signals.first().ok_or_else(|| Error::InvalidParameter("no signals given".into()))?;
    let s = OperatorMatrix::data_operator(first.len(), signals)?;
    Ok(spectrogram(&s, &s)?.map(|x| *x * *x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ScalarField;
    use crate::phasespace::{fstft, tf_shift_matrix};
    use crate::random::{random_field, random_operator, random_signal, random_unit_operator, seeded_rng};

    type C = Complex<f64>;

    fn dim(n: usize) -> ModelDim {
        ModelDim::new(n).unwrap()
    }

    fn unit(n: usize, j: usize) -> Signal<f64> {
        Signal::basis(n, j)
    }

    #[test]
    fn rank_one_reduction() {
        let n = 6;
        let d = dim(n);
        let mut rng = seeded_rng(1);
        let f = random_signal::<f64>(&mut rng, n);
        let g = random_signal::<f64>(&mut rng, n);
        let e = random_signal::<f64>(&mut rng, n).normalized().unwrap();
        let s = OperatorMatrix::rank_one(&g, &e);
        let t = OperatorMatrix::rank_one(&f, &e);
        let field = op_stft(&s, &t).unwrap();
        let v = fstft(&g, &f).unwrap();
        let ee = OperatorMatrix::rank_one(&e, &e);
        for z in d.points() {
            assert!(field.get(z).max_abs_diff(&ee.scale(*v.get(z))) < 1e-12);
        }
    }

    #[test]
    fn stft_examples() {
        let mut rng = seeded_rng(2);
        let s = random_operator::<f64>(&mut rng, 5);
        let t = random_operator::<f64>(&mut rng, 5);
        let field = op_stft(&s, &t).unwrap();
        assert!(field.get(PhasePoint::ORIGIN).max_abs_diff(&s.adjoint().matmul(&t)) < 1e-12);

        let d = dim(5);
        for z in d.points() {
            let oracle = s.adjoint().matmul(&tf_shift_matrix::<f64>(d, z).adjoint()).matmul(&t);
            assert!(field.get(z).max_abs_diff(&oracle) < 1e-12);
        }

        let p0 = OperatorMatrix::rank_one(&unit(4, 0), &unit(4, 0));
        let norms = op_stft(&p0, &p0).unwrap().hs_norm_grid();
        for (z, &v) in norms.iter() {
            let want = if z.k == 0 { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-14);
        }
        assert!(op_stft(&p0, &OperatorMatrix::zeros(5)).is_err());
    }

    #[test]
    fn pointwise_bounds() {
        let mut rng = seeded_rng(3);
        let s = random_operator::<f64>(&mut rng, 6);
        let t = random_operator::<f64>(&mut rng, 6);
        let op_norm = crate::hsalgebra::schatten_norm(&t, f64::INFINITY).unwrap();
        for c in op_stft(&s, &t).unwrap().cells() {
            assert!(c.hs_norm() <= s.hs_norm() * op_norm * (1.0 + 1e-12));
            assert!(c.hs_norm() <= s.hs_norm() * t.hs_norm() * (1.0 + 1e-12));
        }
    }

    #[test]
    fn evaluator_matches_dense() {
        let mut rng = seeded_rng(4);
        let s = random_operator::<f64>(&mut rng, 4);
        let t = random_operator::<f64>(&mut rng, 4);
        let lazy = StftEvaluator::new(&s, &t).unwrap();
        assert_eq!(lazy.to_dense(), op_stft(&s, &t).unwrap());
    }

    #[test]
    fn adjoint_examples() {
        let d = dim(8);
        let mut rng = seeded_rng(5);
        let s = random_unit_operator::<f64>(&mut rng, 8);
        assert!(op_stft_adjoint(&s, &OperatorField::zeros(d)).unwrap().is_zero());

        let t = random_operator::<f64>(&mut rng, 8);
        let back = op_stft_adjoint(&s, &op_stft(&s, &t).unwrap()).unwrap();
        assert!(back.hs_distance(&t) <= 1e-10 * t.hs_norm());

        let r = random_operator::<f64>(&mut rng, 8);
        let cross = op_stft_adjoint(&s, &op_stft(&r, &t).unwrap()).unwrap();
        let want = t.scale(hs_inner(&s, &r).unwrap());
        assert!(cross.hs_distance(&want) <= 1e-10 * want.hs_norm());

        // adjointness with the mass-weighted field inner product
        let psi = random_field::<f64>(&mut rng, d);
        let lhs = field_inner(&op_stft(&s, &t).unwrap(), &psi).unwrap();
        let rhs = hs_inner(&t, &op_stft_adjoint(&s, &psi).unwrap()).unwrap();
        assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm());

        // naive accumulation with explicit shift matrices
        let mut naive = OperatorMatrix::zeros(8);
        for (z, cell) in psi.iter() {
            naive += &tf_shift_matrix::<f64>(d, z).matmul(&s).matmul(cell);
        }
        let naive = naive.scale_real(1.0 / 8.0);
        assert!(op_stft_adjoint(&s, &psi).unwrap().max_abs_diff(&naive) < 1e-11);
    }

    #[test]
    fn moyal_examples() {
        let mut rng = seeded_rng(6);
        let s = random_unit_operator::<f64>(&mut rng, 8);
        let t = random_unit_operator::<f64>(&mut rng, 8);
        let (lhs, rhs) = moyal_orthogonality(&s, &t, &s, &t).unwrap();
        assert!((lhs - C::new(1.0, 0.0)).norm() < 1e-10);
        assert!((rhs - C::new(1.0, 0.0)).norm() < 1e-10);

        let (q, r) = (random_operator::<f64>(&mut rng, 8), random_operator::<f64>(&mut rng, 8));
        let (lhs, rhs) = moyal_orthogonality(&s, &t, &q, &r).unwrap();
        // direct summation oracle
        let mut direct = C::new(0.0, 0.0);
        for z in dim(8).points() {
            let a = op_stft_at(&s, &t, z);
            let b = op_stft_at(&q, &r, z);
            direct += a.matmul(&b.adjoint()).trace();
        }
        direct /= 8.0;
        assert!((lhs - direct).norm() <= 1e-10 * direct.norm());
        assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm());

        // Q ⟂ S
        let d0 = OperatorMatrix::rank_one(&unit(4, 0), &unit(4, 0));
        let d1 = OperatorMatrix::rank_one(&unit(4, 1), &unit(4, 1));
        let t4 = random_operator::<f64>(&mut rng, 4);
        let (lhs, rhs) = moyal_orthogonality(&d0, &t4, &d1, &t4).unwrap();
        assert_eq!(rhs, C::new(0.0, 0.0));
        assert!(lhs.norm() <= 1e-10 * t4.hs_norm_sqr());
    }

    #[test]
    fn flip_identity_examples() {
        let mut rng = seeded_rng(7);
        let s = random_operator::<f64>(&mut rng, 4);
        assert!(flip_identity_check(&s, &s).unwrap() <= 1e-12 * s.hs_norm_sqr());
        let t = random_operator::<f64>(&mut rng, 4);
        assert!(flip_identity_check(&s, &t).unwrap() <= 1e-10 * s.hs_norm() * t.hs_norm());

        let n = 8;
        let d = dim(n);
        let f = random_signal::<f64>(&mut rng, n);
        let g = random_signal::<f64>(&mut rng, n);
        let vgf = fstft(&g, &f).unwrap();
        let vfg = fstft(&f, &g).unwrap();
        for z in d.points() {
            let phase = unit_root::<f64>(n, -((z.k * z.l) as i64));
            let want = phase * vfg.get(d.neg(z)).conj();
            assert!((vgf.get(z) - want).norm() < 1e-11);
        }
    }

    #[test]
    fn kernel_examples() {
        let d = dim(4);
        let mut rng = seeded_rng(8);
        let s = random_operator::<f64>(&mut rng, 4);
        let k = reproducing_kernel(&s).unwrap();
        let ss = s.adjoint().matmul(&s);
        let table = k.to_dense().unwrap();
        let idx = |z: PhasePoint| z.k * 4 + z.l;
        for z in d.points() {
            assert!(k.eval(z, z).max_abs_diff(&ss) < 1e-12);
            for zp in d.points() {
                let a = &table[idx(z) * 16 + idx(zp)];
                let b = &table[idx(zp) * 16 + idx(z)];
                assert!(a.max_abs_diff(&b.adjoint()) < 1e-12);
                // brute-force product with explicit shift matrices
                let oracle = s
                    .adjoint()
                    .matmul(&tf_shift_matrix::<f64>(d, z).adjoint())
                    .matmul(&tf_shift_matrix::<f64>(d, zp))
                    .matmul(&s);
                assert!(a.max_abs_diff(&oracle) < 1e-12);
            }
        }
        assert_eq!(reproducing_kernel(&OperatorMatrix::<f64>::zeros(4)).unwrap_err(), Error::DegenerateWindow);

        let g = random_signal::<f64>(&mut rng, 4);
        let e = unit(4, 2);
        let k1 = reproducing_kernel(&OperatorMatrix::rank_one(&g, &e)).unwrap();
        let ee = OperatorMatrix::rank_one(&e, &e);
        for z in d.points() {
            for zp in d.points() {
                let a = crate::phasespace::tf_shift_apply(d, zp, &g).unwrap();
                let b = crate::phasespace::tf_shift_apply(d, z, &g).unwrap();
                assert!(k1.eval(z, zp).max_abs_diff(&ee.scale(a.inner(&b))) < 1e-12);
            }
        }
    }

    #[test]
    fn dense_kernel_limit() {
        let s = OperatorMatrix::<f64>::identity(17);
        let k = reproducing_kernel(&s).unwrap();
        assert_eq!(k.to_dense().unwrap_err(), Error::TooLargeForDense { n: 17, limit: DENSE_LIMIT });
    }

    #[test]
    fn projection_examples() {
        let d = dim(6);
        let mut rng = seeded_rng(9);
        let s = random_unit_operator::<f64>(&mut rng, 6);
        assert!(kernel_project(&s, &OperatorField::zeros(d)).unwrap().cells().iter().all(|c| c.is_zero()));

        let t = random_operator::<f64>(&mut rng, 6);
        let image = op_stft(&s, &t).unwrap();
        let proj = kernel_project(&s, &image).unwrap();
        assert!(proj.max_cell_distance(&image) <= 1e-10 * t.hs_norm());

        let psi = random_field::<f64>(&mut rng, d);
        let once = kernel_project(&s, &psi).unwrap();
        let twice = kernel_project(&s, &once).unwrap();
        assert!(twice.max_cell_distance(&once) <= 1e-10 * psi.hs_norm_grid().max_value());

        // naive kernel double sum
        let kernel = reproducing_kernel(&s).unwrap();
        for z in d.points() {
            let mut acc = OperatorMatrix::zeros(6);
            for (zp, cell) in psi.iter() {
                acc += &kernel.eval(z, zp).matmul(cell);
            }
            assert!(once.get(z).max_abs_diff(&acc.scale_real(1.0 / 6.0)) < 1e-11);
        }
    }

    fn naive_twisted(f: &OperatorField<f64>, h: &OperatorField<f64>) -> OperatorField<f64> {
        let d = f.dim();
        let n = d.n() as i64;
        OperatorField::from_fn(d, |z| {
            let mut acc = OperatorMatrix::zeros(d.n());
            for zp in d.points() {
                let diff = d.point(z.k as i64 - zp.k as i64, z.l as i64 - zp.l as i64);
                // c(z, z') written out directly
                let expo = -(zp.k as i64) * (z.l as i64 - zp.l as i64);
                let theta = 2.0 * std::f64::consts::PI * (expo as f64) / (n as f64);
                let c = C::from_polar(1.0, theta);
                acc += &h.get(diff).matmul(f.get(zp)).scale(c);
            }
            acc.scale_real(1.0 / n as f64)
        })
    }

    #[test]
    fn twisted_examples() {
        let d = dim(8);
        let mut rng = seeded_rng(10);
        let h = random_field::<f64>(&mut rng, d);
        assert!(twisted_conv(&OperatorField::zeros(d), &h).unwrap().cells().iter().all(|c| c.is_zero()));

        let f = random_field::<f64>(&mut rng, d);
        let got = twisted_conv(&f, &h).unwrap();
        assert!(got.max_cell_distance(&naive_twisted(&f, &h)) < 1e-10);

        let [q, r, s, t] = [0; 4].map(|_| random_operator::<f64>(&mut rng, 8));
        let lhs = twisted_conv(&op_stft(&q, &t).unwrap(), &op_stft(&s, &r).unwrap()).unwrap();
        let rhs = op_stft(&s, &t).unwrap().multiply_scalar(&ScalarField::from_fn(d, |_| hs_inner(&r, &q).unwrap()));
        let scale = q.hs_norm() * r.hs_norm() * s.hs_norm() * t.hs_norm();
        assert!(lhs.max_cell_distance(&rhs) <= 1e-10 * scale);
    }

    #[test]
    fn membership_examples() {
        let d = dim(6);
        let mut rng = seeded_rng(11);
        let s = random_unit_operator::<f64>(&mut rng, 6);
        let t = random_operator::<f64>(&mut rng, 6);
        let member = membership_check(&op_stft(&s, &t).unwrap(), &s).unwrap();
        assert!(member.is_member);
        assert!(member.residual <= 1e-10 * t.hs_norm());

        let psi = random_field::<f64>(&mut rng, d);
        let generic = membership_check(&psi, &s).unwrap();
        assert!(!generic.is_member);
        // the residual is exactly the distance to the projection
        let proj = op_stft(&s, &op_stft_adjoint(&s, &psi).unwrap()).unwrap();
        assert!((generic.residual - proj.max_cell_distance(&psi)).abs() < 1e-10 * generic.residual);

        let zero = membership_check(&OperatorField::zeros(d), &s).unwrap();
        assert!(zero.is_member && zero.residual == 0.0);
        assert!(membership_check(&psi, &OperatorMatrix::zeros(6)).is_err());
    }

    #[test]
    fn spectrogram_examples() {
        let mut rng = seeded_rng(12);
        let s = random_operator::<f64>(&mut rng, 5);
        let zero = spectrogram(&s, &OperatorMatrix::zeros(5)).unwrap();
        assert!(zero.cells().iter().all(|&x| x == 0.0));

        let f = random_signal::<f64>(&mut rng, 5);
        let g = random_signal::<f64>(&mut rng, 5);
        let e = unit(5, 3);
        let spec = spectrogram(&OperatorMatrix::rank_one(&g, &e), &OperatorMatrix::rank_one(&f, &e)).unwrap();
        let v = fstft(&g, &f).unwrap();
        for (z, &x) in spec.iter() {
            assert!((x - v.get(z).norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn total_correlation_examples() {
        let tc = total_correlation(&[unit(4, 0), unit(4, 1)]).unwrap();
        assert!((tc.get(PhasePoint::ORIGIN) - 2.0).abs() < 1e-14);

        let mut rng = seeded_rng(13);
        let fs: Vec<Signal<f64>> = (0..3).map(|_| random_signal(&mut rng, 6)).collect();
        let tc = total_correlation(&fs).unwrap();
        let stfts: Vec<Vec<ScalarField<f64>>> =
            fs.iter().map(|fn_| fs.iter().map(|fm| fstft(fn_, fm).unwrap()).collect()).collect();
        for (z, &x) in tc.iter() {
            let want: f64 = stfts.iter().flatten().map(|v| v.get(z).norm_sqr()).sum();
            assert!((x - want).abs() <= 1e-10 * want);
        }
        assert!(total_correlation::<f64>(&[]).is_err());
    }
}
