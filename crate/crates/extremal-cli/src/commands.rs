//! One function per subcommand. Each reads its keys from [`Settings`] and
//! writes artifacts; the caller owns the manifest and the thread pool.

use std::f64::consts::SQRT_2;
use std::path::PathBuf;

use serde::Serialize;

use extremal::analysis::{
    contradiction_check, ks_log_moment_with, ks_validity_limit, leading_optimal_c, optimize_upper_bound_with,
    saddle_point_x0, tau_optimal, ContradictionCheck, MomentModel, OptimizedBound, SaddlePoint, TauOptimum,
};
use extremal::ensembles::{cue_log_moment, so_log_mgf, sp_log_mgf, Kind};
use extremal::families::family_scan_with;
use extremal::mathfn::sieve_von_mangoldt;
use extremal::montecarlo::{
    derive_seed, estimate_tail, max_over_ensemble, prime_phase_exact_excess_kurtosis, prime_phase_sample,
    ExperimentConfig, PrimePhaseSummary, Statistic, Threshold,
};
use extremal::zeta::{
    default_dimension_constant, find_zeros, hybrid_residual_with, ingest_zero_table, model_dimension, p_x_smoothed, s_of_t, scan_max, window_half_width, Weight,
    ZeroTable, ZeroWindow, FIND_ZEROS_MAX,
};
use num_complex::Complex64;

use crate::config::Settings;
use crate::error::{CliError, Context};
use crate::output::{num, Artifacts, Plot, Style, Table};

pub const ZERO_TABLE_ENV: &str = "ZERO_TABLE_PATH";

fn statistic_name(s: Statistic) -> &'static str {
    match s {
        Statistic::MaxOverTheta => "max-over-theta",
        Statistic::AtPointZero => "at-point-zero",
        Statistic::ImLogAtZero => "im-log-at-zero",
        Statistic::CharpolyAtOne => "charpoly-at-one",
    }
}

pub fn tail(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let kind: Kind = cfg.get("tail.kind")?;
    let n: usize = cfg.get("tail.n")?;
    let trials = cfg.count("tail.trials")?;
    let seed: u64 = cfg.get("tail.seed")?;
    let statistic: Statistic = cfg.get("tail.statistic")?;
    let log_ks: Vec<f64> = cfg.list("tail.log_k")?;
    let thresholds: Vec<Threshold> = if log_ks.is_empty() {
        cfg.list::<f64>("tail.lambda")?.into_iter().map(Threshold::Lambda).collect()
    } else {
        log_ks.into_iter().map(Threshold::LogK).collect()
    };
    if thresholds.is_empty() {
        return Err(CliError::Config("tail needs at least one λ or log K".into()));
    }
    let mut table = Table::new(&[
        "kind", "n", "statistic", "lambda", "log_k", "trials", "seed", "hits", "p_hat", "log_p_hat", "std_err_log",
        "predicted_log_p", "ratio",
    ]);
    let (mut measured, mut predicted) = (Vec::new(), Vec::new());
    for threshold in thresholds {
        let exp = ExperimentConfig { kind, n, threshold, trials, seed, statistic };
        let est = estimate_tail(&exp).context("tail")?;
        let lambda = match threshold {
            Threshold::Lambda(l) => l,
            Threshold::LogK(v) => v.ln() / (n as f64).ln(),
        };
        let ratio = est.log_p_hat / est.predicted_log_p;
        table.push(vec![
            kind.to_string(),
            n.to_string(),
            statistic_name(statistic).into(),
            num(lambda),
            num(est.log_k),
            trials.to_string(),
            seed.to_string(),
            est.hits.to_string(),
            num(est.p_hat),
            num(est.log_p_hat),
            num(est.std_err_log),
            num(est.predicted_log_p),
            num(ratio),
        ]);
        measured.push((est.log_k, est.log_p_hat));
        predicted.push((est.log_k, est.predicted_log_p));
    }
    out.csv("tail.csv", &table)?;
    let mut plot = Plot::new(&format!("tail rate, {kind}({n})"), "log K", "log P");
    plot.add("Monte Carlo", Style::Points, measured);
    plot.add("rate function", Style::Line, predicted);
    out.svg("tail.svg", &plot)
}

#[derive(Serialize)]
struct MaxEnsembleSummary {
    kind: String,
    n: usize,
    m: u64,
    repeats: u64,
    beta: f64,
    median_log_max: f64,
    predicted_log_max: f64,
    scale: f64,
    normalized_deviation: f64,
}

pub fn maxens(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let kind: Kind = cfg.get("maxens.kind")?;
    let n: usize = cfg.get("maxens.n")?;
    let m = cfg.count("maxens.m")?;
    let repeats = cfg.count("maxens.repeats")?;
    let seed: u64 = cfg.get("maxens.seed")?;
    let statistic: Statistic = cfg.get("maxens.statistic")?;
    if repeats == 0 {
        return Err(CliError::Config("key 'maxens.repeats': must be at least 1".into()));
    }
    let scale = ((m as f64).ln() * (n as f64).ln()).sqrt();
    // M = exp(N^β)
    let beta = (m as f64).ln().ln() / (n as f64).ln();
    let predicted = (1.0 - 0.5 * beta).sqrt() * scale;
    let mut table = Table::new(&["repeat", "seed", "log_max", "predicted", "normalized_deviation"]);
    let mut values = Vec::new();
    for r in 0..repeats {
        let s = derive_seed(seed, r);
        let v = max_over_ensemble(kind, n, m, statistic, s).context("maxens")?;
        table.push(vec![r.to_string(), s.to_string(), num(v), num(predicted), num((v - predicted) / scale)]);
        values.push(v);
    }
    out.csv("maxens.csv", &table)?;
    let median = median(&mut values);
    out.json(
        "maxens_summary.json",
        &MaxEnsembleSummary {
            kind: kind.to_string(),
            n,
            m,
            repeats,
            beta,
            median_log_max: median,
            predicted_log_max: predicted,
            scale,
            normalized_deviation: (median - predicted) / scale,
        },
    )
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

#[derive(Serialize)]
struct PrimeReport {
    #[serde(flatten)]
    summary: PrimePhaseSummary,
    exact_excess_kurtosis: f64,
    variance_z: f64,
}

pub fn primes(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let x = cfg.count("primes.x")?;
    let trials = cfg.count("primes.trials")?;
    let seed: u64 = cfg.get("primes.seed")?;
    let keep: bool = cfg.get("primes.keep_samples")?;
    let mut summary = prime_phase_sample(x, trials, seed, keep).context("primes")?;
    if let Some(samples) = summary.samples.take() {
        let mut table = Table::new(&["trial", "y"]);
        for (i, y) in samples.iter().enumerate() {
            table.push(vec![i.to_string(), num(*y)]);
        }
        out.csv("primes_samples.csv", &table)?;
    }
    let variance_z = (summary.variance - summary.variance_target) / summary.variance_std_err;
    out.json(
        "primes.json",
        &PrimeReport { exact_excess_kurtosis: prime_phase_exact_excess_kurtosis(x), variance_z, summary },
    )
}

pub fn zeros(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let t_max: f64 = cfg.get("zeros.t_max")?;
    let table = find_zeros(t_max).context("zeros")?;
    out.write_bytes("zeros.txt", table.to_text().as_bytes())
}

fn zero_file(cfg: &Settings, key: &str) -> Option<PathBuf> {
    let raw = cfg.raw(key).trim();
    if !raw.is_empty() {
        return Some(raw.into());
    }
    std::env::var_os(ZERO_TABLE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// The configured zero table, or zeros computed up to `height` when none is given.
fn load_zeros(cfg: &Settings, key: &str, height: f64, context: &str) -> Result<ZeroTable, CliError> {
    match zero_file(cfg, key) {
        Some(path) => ingest_zero_table(&path).context(&format!("{context}: {}", path.display())),
        None => find_zeros(height.min(FIND_ZEROS_MAX)).context(context),
    }
}

pub fn scan(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let t0: f64 = cfg.get("scan.t0")?;
    let t1: f64 = cfg.get("scan.t1")?;
    let a: f64 = cfg.get("scan.a")?;
    let segments: usize = cfg.get("scan.segments")?;
    if segments == 0 {
        return Err(CliError::Config("key 'scan.segments': must be at least 1".into()));
    }
    let zeros = match zero_file(cfg, "scan.zeros") {
        Some(path) => Some(ingest_zero_table(&path).context(&format!("scan: {}", path.display()))?),
        None => None,
    };
    let mut table = Table::new(&[
        "t0", "t1", "step", "step_constant", "argmax_t", "max_log_abs_zeta", "conjecture_log", "ratio",
    ]);
    let (mut maxima, mut curve) = (Vec::new(), Vec::new());
    for j in 1..=segments {
        let end = if j == segments { t1 } else { t0 + (t1 - t0) * j as f64 / segments as f64 };
        let rec = scan_max(t0, end, a, zeros.as_ref()).context("scan")?;
        table.push(vec![
            num(rec.t0),
            num(rec.t1),
            num(rec.step),
            num(rec.step_constant),
            num(rec.argmax_t),
            num(rec.max_log_abs_zeta),
            num(rec.conjecture_log),
            num(rec.ratio),
        ]);
        maxima.push((end, rec.max_log_abs_zeta));
        curve.push((end, rec.conjecture_log));
    }
    out.csv("scan.csv", &table)?;
    let mut plot = Plot::new("running maximum of log|zeta(1/2+it)|", "T", "log max");
    plot.add("max over [t0, T]", Style::Line, maxima);
    plot.add("sqrt(log T log log T / 2)", Style::Line, curve);
    out.svg("scan.svg", &plot)
}

pub fn hybrid(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let start: f64 = cfg.get("hybrid.t_start")?;
    let end: f64 = cfg.get("hybrid.t_end")?;
    let step: f64 = cfg.get("hybrid.t_step")?;
    let xs: Vec<f64> = cfg.list("hybrid.x")?;
    let tol: f64 = cfg.get("hybrid.window_tol")?;
    let n_constant = match cfg.raw("hybrid.n_constant").trim() {
        "" => default_dimension_constant(),
        _ => cfg.get("hybrid.n_constant")?,
    };
    if !(step > 0.0 && end >= start) || xs.is_empty() {
        return Err(CliError::Config("hybrid needs t_step > 0, t_end >= t_start and at least one X".into()));
    }
    let grid: Vec<f64> = (0..).map(|i| start + i as f64 * step).take_while(|&t| t <= end + 1e-9 * step).collect();
    let widest = xs
        .iter()
        .map(|&x| window_half_width(x, tol, Weight::Bump))
        .collect::<extremal::Result<Vec<f64>>>()
        .context("hybrid")?
        .into_iter()
        .fold(0.0, f64::max);
    let zeros = load_zeros(cfg, "hybrid.zeros", end + widest + 10.0, "hybrid")?;
    let x_max = xs.iter().copied().fold(2.0, f64::max);
    let table_vm = sieve_von_mangoldt(x_max.ceil() as u64).context("hybrid")?;
    let mut table = Table::new(&[
        "t", "x", "p_re", "p_im", "z_re", "z_im", "zeta_re", "zeta_im", "rel_residual", "smoothed_residual", "model_n",
    ]);
    let mut plot = Plot::new("hybrid product residual", "t", "log10 relative residual");
    for &x in &xs {
        let mut pts = Vec::new();
        for &t in &grid {
            let h = hybrid_residual_with(t, x, &zeros, &table_vm, ZeroWindow::Tolerance(tol), Weight::Bump)
                .context("hybrid")?;
            let smooth = p_x_smoothed(Complex64::new(0.5, t), x, &table_vm, Weight::Bump).context("hybrid")?;
            let smoothed_residual = (h.zeta_value - smooth * h.z_value).norm() / h.zeta_value.norm().max(1e-12);
            table.push(vec![
                num(t),
                num(x),
                num(h.p_value.re),
                num(h.p_value.im),
                num(h.z_value.re),
                num(h.z_value.im),
                num(h.zeta_value.re),
                num(h.zeta_value.im),
                num(h.rel_residual),
                num(smoothed_residual),
                model_dimension(t, x, n_constant).context("hybrid")?.to_string(),
            ]);
            pts.push((t, h.rel_residual.log10()));
        }
        plot.add(&format!("X = {x}"), Style::Line, pts);
    }
    out.csv("hybrid.csv", &table)?;
    out.svg("hybrid.svg", &plot)
}

pub fn stat(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let t0: f64 = cfg.get("stat.t0")?;
    let t1: f64 = cfg.get("stat.t1")?;
    let step: f64 = cfg.get("stat.step")?;
    if !(step > 0.0 && t1 >= t0 && t0 > 0.0) {
        return Err(CliError::Config("stat needs 0 < t0 <= t1 and step > 0".into()));
    }
    let zeros = load_zeros(cfg, "stat.zeros", t1 + 1.0, "stat")?;
    let mut table = Table::new(&["t", "s_of_t"]);
    for t in (0..).map(|i| t0 + i as f64 * step).take_while(|&t| t <= t1 + 1e-9 * step) {
        let s = s_of_t(t, &zeros).context(&format!("stat at t = {t}"))?;
        table.push(vec![num(t), num(s)]);
    }
    out.csv("stat.csv", &table)
}

pub fn moments(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let log_t: f64 = cfg.get("moments.log_t")?;
    let ks: Vec<f64> = cfg.list("moments.k")?;
    let ns: Vec<usize> = cfg.list("moments.n")?;
    let ss: Vec<f64> = cfg.list("moments.s")?;

    let mut ks_table = Table::new(&["log_t", "k", "log_moment_full", "log_moment_rmt"]);
    for &k in &ks {
        let full = ks_log_moment_with(log_t, k, MomentModel::Full).context("moments")?;
        let rmt = ks_log_moment_with(log_t, k, MomentModel::RandomMatrixOnly).context("moments")?;
        ks_table.push(vec![num(log_t), num(k), num(full), num(rmt)]);
    }
    out.csv("ks_moments.csv", &ks_table)?;

    let mut cue = Table::new(&["n", "k", "log_moment"]);
    for &n in &ns {
        for &k in &ks {
            cue.push(vec![n.to_string(), num(k), num(cue_log_moment(n, k).context("moments")?)]);
        }
    }
    out.csv("cue_moments.csv", &cue)?;

    let mut mgf = Table::new(&["n", "s", "sp_log_mgf", "so_log_mgf"]);
    for &n in &ns {
        for &s in &ss {
            let sp = sp_log_mgf(n, s).context("moments")?;
            let so = so_log_mgf(n, s).context("moments")?;
            mgf.push(vec![n.to_string(), num(s), num(sp), num(so)]);
        }
    }
    out.csv("mgf.csv", &mgf)
}

#[derive(Serialize)]
struct BoundsReport {
    log_t: f64,
    constant: f64,
    model: MomentModel,
    leading_optimal_c: f64,
    optimized: OptimizedBound,
    ks_validity_limit: f64,
    contradiction_below: ContradictionCheck,
    contradiction_above: ContradictionCheck,
    tau: TauOptimum,
    tau_over_bound: f64,
}

pub fn bounds(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let log_t: f64 = cfg.get("bounds.log_t")?;
    let constant: f64 = cfg.get("bounds.constant")?;
    let model = match cfg.raw("bounds.model").to_ascii_lowercase().as_str() {
        "full" => MomentModel::Full,
        "rmt" | "random-matrix" => MomentModel::RandomMatrixOnly,
        other => return Err(CliError::Config(format!("key 'bounds.model': expected full or rmt, got {other:?}"))),
    };
    let optimized = optimize_upper_bound_with(log_t, constant, model).context("bounds")?;
    let tau = tau_optimal(log_t).context("bounds")?;
    let report = BoundsReport {
        log_t,
        constant,
        model,
        leading_optimal_c: leading_optimal_c().context("bounds")?,
        ks_validity_limit: ks_validity_limit(log_t).context("bounds")?,
        contradiction_below: contradiction_check(log_t, 2.0 * SQRT_2 - 0.5, constant, model).context("bounds")?,
        contradiction_above: contradiction_check(log_t, 2.0 * SQRT_2 + 0.1, constant, model).context("bounds")?,
        tau_over_bound: tau.tau_log / optimized.report.log_bound,
        optimized,
        tau,
    };
    out.json("bounds.json", &report)
}

pub fn saddle(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let log_t: f64 = cfg.get("saddle.log_t")?;
    let alphas: Vec<f64> = cfg.list("saddle.alpha")?;
    let ds: Vec<f64> = cfg.list("saddle.d")?;
    let mut table = Table::new(&[
        "log_t", "alpha", "d", "x0", "leading_x0", "x0_ratio", "f_value", "f_ratio", "iterations",
    ]);
    for &alpha in &alphas {
        for &d in &ds {
            let SaddlePoint { x0, f_value, iterations, leading_x0 } =
                saddle_point_x0(log_t, alpha, d).context(&format!("saddle at alpha = {alpha}, d = {d}"))?;
            table.push(vec![
                num(log_t),
                num(alpha),
                num(d),
                num(x0),
                num(leading_x0),
                num(x0 / leading_x0),
                num(f_value),
                num(f_value / (2.0 * d * d * log_t)),
                iterations.to_string(),
            ]);
        }
    }
    out.csv("saddle.csv", &table)
}

pub fn family(cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    let d_max = cfg.count("family.d_max")?;
    let dump: bool = cfg.get("family.dump")?;
    let (rec, values) = family_scan_with(d_max, dump).context("family")?;
    let mut table = Table::new(&["d_max", "count", "density", "argmax_d", "max_log_l", "normalization", "ratio"]);
    table.push(vec![
        rec.d_max.to_string(),
        rec.count.to_string(),
        num(rec.density),
        rec.argmax_d.to_string(),
        num(rec.max_log_l),
        num(rec.normalization),
        num(rec.ratio),
    ]);
    out.csv("family.csv", &table)?;
    if let Some(values) = values {
        let mut t = Table::new(&["d", "log_l", "ratio"]);
        for v in values {
            t.push(vec![v.d.to_string(), num(v.log_l), num(v.log_l / rec.normalization)]);
        }
        out.csv("family_values.csv", &t)?;
    }
    Ok(())
}
