//! Coorbit norms `‖T‖ = ‖𝔙_S T‖_{L^{p,q}_m}` and the surrounding
//! machinery: admissibility, window equivalence, the correspondence with
//! the transform image, duality pairing and Toeplitz operators.
//!
//! At finite `N` every operator lies in every coorbit space. What varies
//! with the window, weight and exponents is the size of the norms and the
//! constants relating them, and those are what this module computes.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::{FieldSource, OperatorField, ScalarField};
use crate::matrix::{OperatorMatrix, Signal};
use crate::opstft::{field_inner, op_stft, op_stft_adjoint, StftEvaluator};
use crate::phasespace::ModelDim;
use crate::random::{random_operator, seeded_rng};
use crate::scalar::{conjugate_exponent, Real};
use crate::weights_norms::{
    check_moderate, check_submultiplicative, mixed_norm, MixedNormParams, ModerateCertificate, Weight,
};

fn check_window<T: Real>(s: &OperatorMatrix<T>) -> Result<()> {
    if s.is_zero() {
        Err(Error::DegenerateWindow)
    } else {
        Ok(())
    }
}

fn certify<T: Real>(m: &Weight<T>, v: &Weight<T>) -> Result<ModerateCertificate<T>> {
    if let Some((z, w)) = check_submultiplicative(v) {
        return Err(Error::InvalidParameter(format!(
            "envelope is not submultiplicative at z = ({}, {}), w = ({}, {})",
            z.k, z.l, w.k, w.l
        )));
    }
    let cert = check_moderate(m, v)?;
    if let Some(&(z, w)) = cert.violations.first() {
        return Err(Error::NotModerate(z.k, z.l, w.k, w.l));
    }
    Ok(cert)
}

/// Periodized discrete Gaussian `g(t) ∝ e^{−π((t + N/2 mod N) − N/2)²/N}`, unit norm.
pub fn gaussian_vector<T: Real>(dim: ModelDim) -> Signal<T> {
    let n = dim.n();
    let half = T::from_count(n) / T::lit(2.0);
    let nf = T::from_count(n);
    let values: Vec<T> = (0..n)
        .map(|t| {
            let shifted = (T::from_count(t) + half) % nf - half;
            (-T::PI() * shifted * shifted / nf).exp()
        })
        .collect();
    Signal::from_real(&values).normalized().expect("gaussian is nonzero")
}

/// `g ⊗ δ₀` with `g` the periodized Gaussian.
pub fn default_window<T: Real>(dim: ModelDim) -> OperatorMatrix<T> {
    OperatorMatrix::rank_one(&gaussian_vector(dim), &Signal::basis(dim.n(), 0))
}

/// Window, norm and a certified envelope for `m`.
#[derive(Debug, Clone)]
pub struct CoorbitParams<T> {
    pub window: OperatorMatrix<T>,
    pub norm: MixedNormParams<T>,
    pub v: Weight<T>,
    pub certificate: ModerateCertificate<T>,
}

impl<T: Real> CoorbitParams<T> {
    pub fn new(window: OperatorMatrix<T>, norm: MixedNormParams<T>, v: Weight<T>) -> Result<Self> {
        check_window(&window)?;
        window.check_dim(norm.m.dim().n())?;
        let certificate = certify(&norm.m, &v)?;
        Ok(Self { window, norm, v, certificate })
    }

    /// Same window and envelope with `(p', q', 1/m)`.
    pub fn dual(&self) -> Result<Self> {
        Self::new(self.window.clone(), self.norm.dual(), self.v.clone())
    }
}

/// `‖𝔙_S S‖_{L¹_v}`.
pub fn admissibility<T: Real>(s: &OperatorMatrix<T>, v: &Weight<T>) -> Result<T> {
    let l1 = MixedNormParams::new(T::one(), T::one(), v.clone())?;
    mixed_norm(&StftEvaluator::new(s, s)?, &l1)
}

pub fn coorbit_norm<T: Real>(t: &OperatorMatrix<T>, params: &CoorbitParams<T>) -> Result<T> {
    mixed_norm(&StftEvaluator::new(&params.window, t)?, &params.norm)
}

/// Constants with `lower ‖T‖_{S0} ≤ ‖T‖_R ≤ upper ‖T‖_{S0}` for all `T`.
///
/// With `L = max(‖𝔙_R S0‖_{L¹_v}, ‖𝔙_{S0} R‖_{L¹_v})` and `C` the moderate
/// constant, `upper = C L / ‖S0‖²` and `lower = ‖R‖² / (C L)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceBounds<T> {
    pub lower: T,
    pub upper: T,
    /// `‖𝔙_R S0‖_{L¹_v}`.
    pub cross_r_s0: T,
    /// `‖𝔙_{S0} R‖_{L¹_v}`.
    pub cross_s0_r: T,
    pub moderate_constant: T,
}

impl<T: Real> EquivalenceBounds<T> {
    /// Whether `ratio = ‖T‖_R / ‖T‖_{S0}` lies in the sandwich up to `rel_tol`.
    pub fn contains(&self, ratio: T, rel_tol: T) -> bool {
        ratio >= self.lower * (T::one() - rel_tol) && ratio <= self.upper * (T::one() + rel_tol)
    }
}

pub fn window_equivalence<T: Real>(
    r: &OperatorMatrix<T>,
    s0: &OperatorMatrix<T>,
    norm: &MixedNormParams<T>,
    v: &Weight<T>,
) -> Result<EquivalenceBounds<T>> {
    check_window(r)?;
    check_window(s0)?;
    r.check_dim(s0.dim())?;
    let cert = certify(&norm.m, v)?;
    let l1 = MixedNormParams::new(T::one(), T::one(), v.clone())?;
    let cross_r_s0 = mixed_norm(&StftEvaluator::new(r, s0)?, &l1)?;
    let cross_s0_r = mixed_norm(&StftEvaluator::new(s0, r)?, &l1)?;
    let c = cert.constant;
    let big = cross_r_s0.max(cross_s0_r);
    Ok(EquivalenceBounds {
        lower: r.hs_norm_sqr() / (c * big),
        upper: c * big / s0.hs_norm_sqr(),
        cross_r_s0,
        cross_s0_r,
        moderate_constant: c,
    })
}

/// Bounds together with the extreme observed ratios `‖T‖_R / ‖T‖_{S0}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceBattery<T> {
    pub bounds: EquivalenceBounds<T>,
    pub min_ratio: T,
    pub max_ratio: T,
    pub samples: usize,
}

/// Runs [`window_equivalence`] and measures the ratio on `count` seeded
/// random operators.
pub fn equivalence_battery<T: Real>(
    r: &OperatorMatrix<T>,
    s0: &OperatorMatrix<T>,
    norm: &MixedNormParams<T>,
    v: &Weight<T>,
    seed: u64,
    count: usize,
) -> Result<EquivalenceBattery<T>> {
    let bounds = window_equivalence(r, s0, norm, v)?;
    let mut rng = seeded_rng(seed);
    let mut min_ratio = T::infinity();
    let mut max_ratio = T::zero();
    for _ in 0..count {
        let t = random_operator::<T>(&mut rng, r.dim());
        let via_r = mixed_norm(&StftEvaluator::new(r, &t)?, norm)?;
        let via_s0 = mixed_norm(&StftEvaluator::new(s0, &t)?, norm)?;
        let ratio = via_r / via_s0;
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
    }
    Ok(EquivalenceBattery { bounds, min_ratio, max_ratio, samples: count })
}

/// Constant `C` with `‖T‖_{(p',q',m')} ≤ C ‖T‖_{(p,q,m)}` for a fixed
/// window `S0`, valid whenever `m' ≤ m` and `m` is `v`-moderate.
///
/// `C = N^{(1/p' + 1/q')/2} ‖v · ‖𝔙_{S0} S0‖ / ‖S0‖²‖_{L^{p*,q*}}` with `p*`, `q*`
/// the conjugates of the source exponents.
pub fn embedding_constant<T: Real>(
    s0: &OperatorMatrix<T>,
    source: &MixedNormParams<T>,
    target: &MixedNormParams<T>,
    v: &Weight<T>,
) -> Result<T> {
    check_window(s0)?;
    certify(&source.m, v)?;
    let dim = v.dim();
    for (z, _) in source.m.grid().iter() {
        if target.m.value(z) > source.m.value(z) * (T::one() + T::lit(1e-12)) {
            return Err(Error::InvalidParameter("target weight must not exceed source weight".into()));
        }
    }
    let kernel_params = MixedNormParams::new(conjugate_exponent(source.p), conjugate_exponent(source.q), v.clone())?;
    let k = mixed_norm(&StftEvaluator::new(s0, s0)?, &kernel_params)? / s0.hs_norm_sqr();
    let inv = |x: T| if x.is_infinite() { T::zero() } else { x.recip() };
    let spread = T::from_count(dim.n()).powf((inv(target.p) + inv(target.q)) * T::lit(0.5));
    Ok(spread * k)
}

/// `T ↦ 𝔙_S T`.
pub fn correspondence_forward<T: Real>(t: &OperatorMatrix<T>, s: &OperatorMatrix<T>) -> Result<OperatorField<T>> {
    check_window(s)?;
    op_stft(s, t)
}

/// `Ψ ↦ 𝔙_S* Ψ`.
pub fn correspondence_inverse<T: Real, F: FieldSource<T> + ?Sized>(
    field: &F,
    s: &OperatorMatrix<T>,
) -> Result<OperatorMatrix<T>> {
    check_window(s)?;
    op_stft_adjoint(s, field)
}

/// `(1/N) Σ_z ⟨𝔙_S T(z), 𝔙_S R(z)⟩_HS`.
pub fn duality_pairing<T: Real>(
    t: &OperatorMatrix<T>,
    r: &OperatorMatrix<T>,
    s: &OperatorMatrix<T>,
) -> Result<Complex<T>> {
    check_window(s)?;
    field_inner(&StftEvaluator::new(s, t)?, &StftEvaluator::new(s, r)?)
}

/// `𝔙_S*(f · 𝔙_S T)`.
pub fn toeplitz<T: Real>(
    s: &OperatorMatrix<T>,
    f: &ScalarField<T>,
    t: &OperatorMatrix<T>,
) -> Result<OperatorMatrix<T>> {
    check_window(s)?;
    let field = op_stft(s, t)?;
    if f.dim() != field.dim() {
        return Err(Error::DimensionMismatch { expected: field.n(), found: f.n() });
    }
    op_stft_adjoint(s, &field.multiply_scalar(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsalgebra::{conv_fun_op, hs_inner};
    use crate::opstft::{kernel_project, membership_check};
    use crate::phasespace::fstft;
    use crate::random::{random_field, random_scalar_field, random_signal, random_unit_operator};
    use crate::weights_norms::polynomial_weight;

    type C = Complex<f64>;
    const INF: f64 = f64::INFINITY;

    fn dim(n: usize) -> ModelDim {
        ModelDim::new(n).unwrap()
    }

    fn delta_op(n: usize, j: usize) -> OperatorMatrix<f64> {
        let e = Signal::basis(n, j);
        OperatorMatrix::rank_one(&e, &e)
    }

    #[test]
    fn gaussian_window_shape() {
        let d = dim(8);
        let g = gaussian_vector::<f64>(d);
        assert!((g.norm() - 1.0).abs() < 1e-14);
        for t in 1..8 {
            assert!((g[t].re - g[8 - t].re).abs() < 1e-15);
            assert!(g[t].re < g[0].re);
        }
        let w = default_window::<f64>(d);
        assert!((w.hs_norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn admissibility_examples() {
        let d = dim(4);
        let ones = Weight::ones(d);
        assert_eq!(admissibility(&OperatorMatrix::zeros(4), &ones).unwrap(), 0.0);
        assert!((admissibility(&delta_op(4, 0), &ones).unwrap() - 1.0).abs() < 1e-14);

        let d8 = dim(8);
        let v1 = polynomial_weight::<f64>(d8, 1.0).unwrap();
        let mut rng = seeded_rng(1);
        let phi = random_signal::<f64>(&mut rng, 8);
        let s0 = OperatorMatrix::rank_one(&phi, &Signal::basis(8, 0));
        let v = fstft(&phi, &phi).unwrap();
        let scalar: f64 = v.iter().map(|(z, c)| c.norm() * v1.value(z)).sum::<f64>() / 8.0;
        assert!((admissibility(&s0, &v1).unwrap() - scalar).abs() < 1e-12 * scalar);
    }

    #[test]
    fn coorbit_norm_examples() {
        let d = dim(8);
        let mut rng = seeded_rng(2);
        let s = random_unit_operator::<f64>(&mut rng, 8);
        let v1 = polynomial_weight::<f64>(d, 1.0).unwrap();
        let l2 =
            CoorbitParams::new(s.clone(), MixedNormParams::unweighted(d, 2.0, 2.0).unwrap(), Weight::ones(d)).unwrap();
        assert_eq!(coorbit_norm(&OperatorMatrix::zeros(8), &l2).unwrap(), 0.0);
        let t = random_operator::<f64>(&mut rng, 8);
        assert!((coorbit_norm(&t, &l2).unwrap() - t.hs_norm()).abs() < 1e-12 * t.hs_norm());

        let params =
            CoorbitParams::new(s.clone(), MixedNormParams::new(1.0, INF, v1.clone()).unwrap(), v1.clone()).unwrap();
        let mut best: f64 = 0.0;
        for l in 0..8 {
            let mut inner = 0.0;
            for k in 0..8 {
                let z = crate::PhasePoint { k, l };
                let cell = s.adjoint().matmul(&crate::phasespace::tf_shift_matrix::<f64>(d, z).adjoint()).matmul(&t);
                inner += cell.hs_norm() * v1.value(z) / 8f64.sqrt();
            }
            best = best.max(inner);
        }
        assert!((coorbit_norm(&t, &params).unwrap() - best).abs() < 1e-12 * best);

        assert_eq!(
            CoorbitParams::new(OperatorMatrix::zeros(8), MixedNormParams::unweighted(d, 1.0, 1.0).unwrap(), v1.clone())
                .unwrap_err(),
            Error::DegenerateWindow
        );
        let m3 = polynomial_weight::<f64>(d, 3.0).unwrap();
        assert!(matches!(
            CoorbitParams::new(s, MixedNormParams::new(1.0, 1.0, m3).unwrap(), v1),
            Err(Error::NotModerate(..))
        ));
    }

    #[test]
    fn equivalence_examples() {
        let d = dim(8);
        let ones = Weight::ones(d);
        let mut rng = seeded_rng(3);
        let s0 = random_unit_operator::<f64>(&mut rng, 8);
        let norm = MixedNormParams::unweighted(d, 2.0, 2.0).unwrap();
        let same = equivalence_battery(&s0, &s0, &norm, &ones, 7, 20).unwrap();
        assert!(same.bounds.contains(1.0, 1e-12));
        assert!((same.min_ratio - 1.0).abs() < 1e-12 && (same.max_ratio - 1.0).abs() < 1e-12);

        let l1 = MixedNormParams::unweighted(d, 1.0, 1.0).unwrap();
        let b = equivalence_battery(&delta_op(8, 1), &delta_op(8, 0), &l1, &ones, 8, 20).unwrap();
        assert!(b.bounds.lower <= b.bounds.upper * (1.0 + 1e-12));
        assert!(b.bounds.contains(b.min_ratio, 1e-9) && b.bounds.contains(b.max_ratio, 1e-9));

        let v1 = polynomial_weight::<f64>(d, 1.0).unwrap();
        let r = random_operator::<f64>(&mut rng, 8);
        for (p, q) in [(1.0, 1.0), (2.0, 2.0), (INF, INF)] {
            let norm = MixedNormParams::new(p, q, v1.clone()).unwrap();
            let b = equivalence_battery(&r, &default_window(d), &norm, &v1, 9, 20).unwrap();
            assert!(b.bounds.contains(b.min_ratio, 1e-9) && b.bounds.contains(b.max_ratio, 1e-9));
        }
        assert!(window_equivalence(&OperatorMatrix::zeros(8), &s0, &norm, &ones).is_err());
    }

    #[test]
    fn embedding_examples() {
        let d = dim(8);
        let v1 = polynomial_weight::<f64>(d, 1.0).unwrap();
        let s0 = default_window::<f64>(d);
        let mut rng = seeded_rng(4);
        for ((p, q), (pp, qq)) in [((1.0, 1.0), (2.0, 2.0)), ((1.0, 2.0), (INF, INF)), ((2.0, 2.0), (1.0, 1.0))] {
            let source = MixedNormParams::new(p, q, v1.clone()).unwrap();
            let target = MixedNormParams::unweighted(d, pp, qq).unwrap();
            let c = embedding_constant(&s0, &source, &target, &v1).unwrap();
            assert!(c.is_finite());
            let from = CoorbitParams::new(s0.clone(), source, v1.clone()).unwrap();
            let to = CoorbitParams::new(s0.clone(), target, v1.clone()).unwrap();
            for _ in 0..10 {
                let t = random_operator::<f64>(&mut rng, 8);
                assert!(coorbit_norm(&t, &to).unwrap() <= c * coorbit_norm(&t, &from).unwrap() * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn correspondence_examples() {
        let d = dim(6);
        let mut rng = seeded_rng(5);
        let s = random_unit_operator::<f64>(&mut rng, 6);
        let t = random_operator::<f64>(&mut rng, 6);
        let forward = correspondence_forward(&t, &s).unwrap();
        assert!(membership_check(&forward, &s).unwrap().is_member);
        let back = correspondence_inverse(&forward, &s).unwrap();
        assert!(back.hs_distance(&t) <= 1e-10 * t.hs_norm());

        let psi = random_field::<f64>(&mut rng, d);
        let again = correspondence_forward(&correspondence_inverse(&psi, &s).unwrap(), &s).unwrap();
        assert!(again.max_cell_distance(&kernel_project(&s, &psi).unwrap()) < 1e-12);

        let zero = OperatorMatrix::zeros(6);
        assert!(correspondence_inverse(&correspondence_forward(&zero, &s).unwrap(), &s).unwrap().is_zero());
        assert!(correspondence_forward(&t, &zero).is_err());
    }

    #[test]
    fn pairing_examples() {
        let d = dim(8);
        let mut rng = seeded_rng(6);
        let s = random_unit_operator::<f64>(&mut rng, 8);
        let t = random_unit_operator::<f64>(&mut rng, 8);
        assert!((duality_pairing(&t, &t, &s).unwrap() - C::new(1.0, 0.0)).norm() < 1e-12);

        let r = random_operator::<f64>(&mut rng, 8);
        let p = duality_pairing(&t, &r, &s).unwrap();
        let scale = t.hs_norm() * r.hs_norm();
        assert!((p - hs_inner(&t, &r).unwrap()).norm() <= 1e-10 * scale);
        assert!((p - duality_pairing(&r, &t, &s).unwrap().conj()).norm() <= 1e-12 * scale);

        let v1 = polynomial_weight::<f64>(d, 1.0).unwrap();
        let params = CoorbitParams::new(s.clone(), MixedNormParams::new(1.0, 2.0, v1.clone()).unwrap(), v1).unwrap();
        let dual = params.dual().unwrap();
        assert!(p.norm() <= coorbit_norm(&t, &params).unwrap() * coorbit_norm(&r, &dual).unwrap() + 1e-9 * scale);
    }

    #[test]
    fn toeplitz_examples() {
        let d = dim(8);
        let mut rng = seeded_rng(7);
        let s = random_unit_operator::<f64>(&mut rng, 8);
        let t = random_operator::<f64>(&mut rng, 8);
        let one = ScalarField::from_fn(d, |_| C::new(1.0, 0.0));
        assert!(toeplitz(&s, &one, &t).unwrap().hs_distance(&t) <= 1e-10 * t.hs_norm());
        assert!(toeplitz(&s, &ScalarField::from_fn(d, |_| C::new(0.0, 0.0)), &t).unwrap().is_zero());

        let f = random_scalar_field::<f64>(&mut rng, d);
        let lhs = toeplitz(&s, &f, &t).unwrap();
        let rhs = conv_fun_op(&f, &s.matmul(&s.adjoint())).unwrap().matmul(&t);
        assert!(lhs.hs_distance(&rhs) <= 1e-10 * rhs.hs_norm());
    }
}
