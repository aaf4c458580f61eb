use std::path::Path;

use anyhow::{bail, Context, Result};

use opstft::coorbit::{admissibility, coorbit_norm, equivalence_battery, CoorbitParams};
use opstft::gframe::{
    characterization_bracket, characterization_seq, frame_bounds, localization_op, symbol_frame_condition, Lattice,
};
use opstft::hsalgebra::{conv_fun_op, hs_inner};
use opstft::opstft::{
    kernel_project, membership_check_with, moyal_orthogonality, op_stft, op_stft_adjoint, spectrogram,
    total_correlation, twisted_conv,
};
use opstft::random::{random_field, random_operator, random_scalar_field, random_unit_operator, seeded_rng};
use opstft::weights_norms::{polynomial_weight, young_twisted_check, MixedNormParams, Weight};
use opstft::{coorbit, ModelDim, Operator64, OperatorField64, PhasePoint, RealGrid64, ScalarField64, Signal64};

use crate::io;
use crate::report::Report;
use crate::{Cli, Command, Suite};

const MAX_VERIFY_N: usize = 16;
const BATTERY_SIZE: usize = 20;

pub fn run(cli: &Cli, tol: f64) -> Result<Report> {
    match &cli.command {
        Command::Transform { window, target, spectrogram, field } => {
            transform(window, target, spectrogram.as_deref(), field.as_deref(), tol)
        }
        Command::Verify { suite, n, seed, field } => verify(*suite, *n, *seed, field.as_deref(), tol),
        Command::Framebounds { window, alpha, beta } => framebounds(window, *alpha, *beta, tol),
        Command::Coorbitnorm { window, target, p, q, weight, envelope, window2, seed } => coorbitnorm(
            CoorbitArgs {
                window,
                target,
                p: *p,
                q: *q,
                weight: weight.as_deref(),
                envelope: envelope.as_deref(),
                window2: window2.as_deref(),
                seed: *seed,
            },
            tol,
        ),
        Command::Localize { phi, symbol, out_matrix, alpha, beta, characterize, p, q, target, seed, weight } => {
            localize(
                LocalizeArgs {
                    phi,
                    symbol,
                    out_matrix: out_matrix.as_deref(),
                    alpha: *alpha,
                    beta: *beta,
                    characterize: *characterize,
                    p: *p,
                    q: *q,
                    target: target.as_deref(),
                    seed: *seed,
                    weight: weight.as_deref(),
                },
                tol,
            )
        }
        Command::Correlate { signals, out } => correlate(signals, out.as_deref(), tol),
    }
}

fn expect_n(path: &Path, found: usize, expected: usize) -> Result<()> {
    if found != expected {
        bail!("{}: dimension {found} does not match expected N = {expected}", path.display());
    }
    Ok(())
}

fn matrix_input(report: &mut Report, path: &Path, expected: Option<usize>) -> Result<Operator64> {
    let a = io::read_matrix(path)?;
    if let Some(n) = expected {
        expect_n(path, a.dim(), n)?;
    }
    report.input(path)?;
    Ok(a)
}

fn grid_input(report: &mut Report, path: &Path, n: usize) -> Result<RealGrid64> {
    let g = io::read_grid(path)?;
    expect_n(path, g.n(), n)?;
    report.input(path)?;
    Ok(g)
}

fn weight_input(report: &mut Report, path: Option<&Path>, dim: ModelDim) -> Result<Weight<f64>> {
    match path {
        None => Ok(Weight::ones(dim)),
        Some(p) => {
            let g = grid_input(report, p, dim.n())?;
            Weight::from_grid(g).with_context(|| format!("{}: invalid weight", p.display()))
        }
    }
}

fn transform(
    window: &Path,
    target: &Path,
    spec_out: Option<&Path>,
    field_out: Option<&Path>,
    tol: f64,
) -> Result<Report> {
    let mut report = Report::new("transform", None, tol);
    let s = matrix_input(&mut report, window, None)?;
    let t = matrix_input(&mut report, target, Some(s.dim()))?;
    let n = s.dim();
    ModelDim::new(n).with_context(|| window.display().to_string())?;
    report.count("n", n);
    report.value("window_hs_norm", s.hs_norm());
    report.value("target_hs_norm", t.hs_norm());
    let grid = spectrogram(&s, &t)?;
    report.value("spectrogram_max", grid.max_value());
    if let Some(out) = spec_out {
        io::write_grid(out, &grid)?;
    }
    if let Some(out) = field_out {
        io::write_field(out, &op_stft(&s, &t)?)?;
    }
    Ok(report)
}

fn max_cell(field: &OperatorField64) -> f64 {
    field.hs_norm_grid().max_value()
}

fn verify(suite: Suite, n: usize, seed: u64, field: Option<&Path>, tol: f64) -> Result<Report> {
    if !(2..=MAX_VERIFY_N).contains(&n) {
        bail!("--n must lie in 2..={MAX_VERIFY_N}, got {n}");
    }
    let name = format!("verify {}", format!("{suite:?}").to_lowercase());
    let mut report = Report::new(&name, Some(seed), tol);
    if field.is_some() && suite != Suite::Projection {
        bail!("--field is only used by the projection suite");
    }
    let d = ModelDim::new(n)?;
    let mut rng = seeded_rng(seed);
    report.count("n", n);
    match suite {
        Suite::Moyal => {
            let [s, t, q, r] = [0; 4].map(|_| random_operator::<f64>(&mut rng, n));
            let (lhs, rhs) = moyal_orthogonality(&s, &t, &q, &r)?;
            report.complex("field_inner", lhs);
            report.complex("hs_product", rhs);
            report.relative("moyal", (lhs - rhs).norm(), rhs.norm());
            let unit = random_unit_operator::<f64>(&mut rng, n);
            let back = op_stft_adjoint(&unit, &op_stft(&unit, &t)?)?;
            report.relative("inversion", back.hs_distance(&t), t.hs_norm());
        }
        Suite::Twisted => {
            let [q, r, s, t] = [0; 4].map(|_| random_operator::<f64>(&mut rng, n));
            let lhs = twisted_conv(&op_stft(&q, &t)?, &op_stft(&s, &r)?)?;
            let phase = hs_inner(&r, &q)?;
            let rhs = op_stft(&s, &t)?.multiply_scalar(&ScalarField64::from_fn(d, |_| phase));
            report.complex("window_pairing", phase);
            let scale = q.hs_norm() * r.hs_norm() * s.hs_norm() * t.hs_norm();
            report.relative("twisted_convolution", lhs.max_cell_distance(&rhs), scale);
        }
        Suite::Projection => {
            let s = random_unit_operator::<f64>(&mut rng, n);
            let psi = match field {
                Some(path) => {
                    let f = io::read_field(path)?;
                    expect_n(path, f.n(), n)?;
                    report.input(path)?;
                    f
                }
                None => random_field::<f64>(&mut rng, d),
            };
            let scale = max_cell(&psi);
            let once = kernel_project(&s, &psi)?;
            let twice = kernel_project(&s, &once)?;
            report.value("field_max_cell", scale);
            report.value("distance_to_image", once.max_cell_distance(&psi));
            report.relative("idempotent", twice.max_cell_distance(&once), scale);
            let t = random_operator::<f64>(&mut rng, n);
            let image = op_stft(&s, &t)?;
            let member = membership_check_with(&image, &s, tol)?;
            report.residual("image_membership", member.residual);
            report.check("image_membership", member.is_member);
        }
        Suite::Correspondence => {
            let s = random_unit_operator::<f64>(&mut rng, n);
            let t = random_operator::<f64>(&mut rng, n);
            let forward = coorbit::correspondence_forward(&t, &s)?;
            let back = coorbit::correspondence_inverse(&forward, &s)?;
            report.relative("round_trip", back.hs_distance(&t), t.hs_norm());
            let fixed = twisted_conv(&forward, &op_stft(&s, &s)?)?;
            report.relative("kernel_fixed_point", fixed.max_cell_distance(&forward), max_cell(&forward));
            let member = membership_check_with(&forward, &s, tol)?;
            report.residual("membership", member.residual);
            report.check("membership", member.is_member);
        }
        Suite::Toeplitz => {
            let s = random_unit_operator::<f64>(&mut rng, n);
            let t = random_operator::<f64>(&mut rng, n);
            let f = random_scalar_field::<f64>(&mut rng, d);
            let lhs = coorbit::toeplitz(&s, &f, &t)?;
            let rhs = conv_fun_op(&f, &s.matmul(&s.adjoint()))?.matmul(&t);
            let fmax = f.cells().iter().map(|x| x.norm()).fold(0.0, f64::max);
            report.relative("toeplitz", lhs.hs_distance(&rhs), fmax * t.hs_norm());
        }
        Suite::Young => {
            let f = random_field::<f64>(&mut rng, d);
            let h = random_field::<f64>(&mut rng, d);
            let one = Weight::ones(d);
            let poly = polynomial_weight(d, 1.0)?;
            let combos = [("v1_m1", &one, &one), ("vpoly_m1", &poly, &one), ("vpoly_mpoly", &poly, &poly)];
            for (label, v, m) in combos {
                for (p, q) in [(1.0, 1.0), (2.0, 2.0)] {
                    let key = format!("{label}_p{p}_q{q}");
                    let (lhs, rhs) = young_twisted_check(&f, &h, v, m, p, q)?;
                    report.value(&format!("{key}_lhs"), lhs);
                    report.value(&format!("{key}_rhs"), rhs);
                    report.residual(&key, (lhs - rhs) / rhs);
                    report.check(&key, lhs <= rhs * (1.0 + tol));
                }
            }
        }
    }
    Ok(report)
}

fn framebounds(window: &Path, alpha: usize, beta: usize, tol: f64) -> Result<Report> {
    let mut report = Report::new("framebounds", None, tol);
    let s = matrix_input(&mut report, window, None)?;
    let d = ModelDim::new(s.dim()).with_context(|| window.display().to_string())?;
    let lattice = Lattice::new(d, alpha, beta)?;
    let r = frame_bounds(&s, &lattice)?;
    report.count("n", d.n());
    report.count("lattice_size", lattice.len());
    report.value("lower", r.lower);
    report.value("upper", r.upper);
    report.value("condition", r.condition);
    report.flag("is_frame", r.is_frame);
    Ok(report)
}

struct CoorbitArgs<'a> {
    window: &'a Path,
    target: &'a Path,
    p: f64,
    q: f64,
    weight: Option<&'a Path>,
    envelope: Option<&'a Path>,
    window2: Option<&'a Path>,
    seed: u64,
}

fn coorbitnorm(args: CoorbitArgs<'_>, tol: f64) -> Result<Report> {
    let seed = args.window2.map(|_| args.seed);
    let mut report = Report::new("coorbitnorm", seed, tol);
    let s0 = matrix_input(&mut report, args.window, None)?;
    let n = s0.dim();
    let d = ModelDim::new(n).with_context(|| args.window.display().to_string())?;
    let t = matrix_input(&mut report, args.target, Some(n))?;
    let m = weight_input(&mut report, args.weight, d)?;
    let v = match args.envelope {
        Some(_) => weight_input(&mut report, args.envelope, d)?,
        None => m.moderating_envelope(),
    };
    let norm = MixedNormParams::new(args.p, args.q, m)?;
    let params = CoorbitParams::new(s0.clone(), norm.clone(), v.clone())?;
    let value = coorbit_norm(&t, &params)?;
    report.count("n", n);
    report.value("p", args.p);
    report.value("q", args.q);
    report.value("norm", value);
    report.value("target_hs_norm", t.hs_norm());
    report.value("moderate_constant", params.certificate.constant);
    report.value("admissibility", admissibility(&s0, &v)?);

    if let Some(path) = args.window2 {
        let r = matrix_input(&mut report, path, Some(n))?;
        let params_r = CoorbitParams::new(r.clone(), norm.clone(), v.clone())?;
        let value_r = coorbit_norm(&t, &params_r)?;
        let battery = equivalence_battery(&r, &s0, &norm, &v, args.seed, BATTERY_SIZE)?;
        let b = battery.bounds;
        report.value("norm_window2", value_r);
        report.value("equivalence_lower", b.lower);
        report.value("equivalence_upper", b.upper);
        report.value("battery_min_ratio", battery.min_ratio);
        report.value("battery_max_ratio", battery.max_ratio);
        if value > 0.0 {
            let ratio = value_r / value;
            report.value("ratio", ratio);
            report.check("target_within_bounds", b.contains(ratio, tol));
        }
        report.check("battery_within_bounds", b.contains(battery.min_ratio, tol) && b.contains(battery.max_ratio, tol));
    }
    Ok(report)
}

struct LocalizeArgs<'a> {
    phi: &'a Path,
    symbol: &'a Path,
    out_matrix: Option<&'a Path>,
    alpha: usize,
    beta: usize,
    characterize: bool,
    p: f64,
    q: f64,
    target: Option<&'a Path>,
    seed: u64,
    weight: Option<&'a Path>,
}

fn localize(args: LocalizeArgs<'_>, tol: f64) -> Result<Report> {
    let seed = (args.characterize && args.target.is_none()).then_some(args.seed);
    let mut report = Report::new("localize", seed, tol);
    let phi = io::read_signal(args.phi)?;
    report.input(args.phi)?;
    let n = phi.len();
    let d = ModelDim::new(n)?;
    let h = grid_input(&mut report, args.symbol, n)?;
    let lattice = Lattice::new(d, args.alpha, args.beta)?;
    let (lo, hi) = symbol_frame_condition(&h, &lattice).with_context(|| args.symbol.display().to_string())?;
    let loc = localization_op(&phi, &ScalarField64::from_real(&h)).with_context(|| args.phi.display().to_string())?;
    report.count("n", n);
    report.count("lattice_size", lattice.len());
    report.value("symbol_lower", lo);
    report.value("symbol_upper", hi);
    report.value("localization_hs_norm", loc.hs_norm());
    report.complex("localization_trace", loc.trace());
    if let Some(out) = args.out_matrix {
        io::write_matrix(out, &loc)?;
    }

    if args.characterize {
        let t = match args.target {
            Some(path) => matrix_input(&mut report, path, Some(n))?,
            None => random_operator::<f64>(&mut seeded_rng(args.seed), n),
        };
        let m = weight_input(&mut report, args.weight, d)?;
        let unweighted = args.weight.is_none();
        let seq = characterization_seq(&t, &phi, &h, &lattice, args.p, args.q, &m)?;
        let bracket = characterization_bracket(&phi, &h, &lattice)?;
        let t2 = t.hs_norm_sqr();
        report.value("sequence_norm", seq);
        report.value("bracket_lower", bracket.lower);
        report.value("bracket_upper", bracket.upper);
        if args.p == 2.0 && args.q == 2.0 && unweighted {
            let sq = seq * seq;
            let slack = tol * bracket.upper * t2;
            report.check("within_bracket", sq >= bracket.lower * t2 - slack && sq <= bracket.upper * t2 + slack);
        }
    }
    Ok(report)
}

fn correlate(signals: &[std::path::PathBuf], out: Option<&Path>, tol: f64) -> Result<Report> {
    let mut report = Report::new("correlate", None, tol);
    let mut loaded: Vec<Signal64> = Vec::with_capacity(signals.len());
    for path in signals {
        let f = io::read_signal(path)?;
        if let Some(first) = loaded.first() {
            expect_n(path, f.len(), first.len())?;
        }
        report.input(path)?;
        loaded.push(f);
    }
    let n = loaded.first().map(Signal64::len).context("no signals given")?;
    if loaded.len() > n {
        bail!("{} signals given but at most N = {n} fit", loaded.len());
    }
    let grid = total_correlation(&loaded)?;
    report.count("n", n);
    report.count("signals", loaded.len());
    report.value("origin", *grid.get(PhasePoint { k: 0, l: 0 }));
    report.value("max", grid.max_value());
    if let Some(path) = out {
        io::write_grid(path, &grid)?;
    }
    Ok(report)
}
