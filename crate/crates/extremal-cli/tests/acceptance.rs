//! Acceptance suite: one PASS/FAIL line per criterion, with the measured numbers.
//! Exits 0 so the workspace test run stays usable; set ACCEPTANCE_STRICT=1 to make
//! any FAIL a nonzero exit.

use std::collections::BTreeMap;
use std::f64::consts::{PI, SQRT_2};
use std::path::Path;
use std::time::{Duration, Instant};

use extremal::analysis::{
    contradiction_check, leading_optimal_c, optimize_upper_bound_with, saddle_point_x0, tau_optimal,
    ConvolutionExponent, MomentModel,
};
use extremal::ensembles::{cue_log_moment, so_log_mgf, sp_log_mgf, Kind};
use extremal::families::{
    family_scan, fundamental_discriminants, is_fundamental_discriminant, l_central_by_residue_classes,
    l_central_quadratic,
};
use extremal::mathfn::{
    arithmetic_factor_a, log_arith_factor_with_cutoff, log_barnes_ratio, log_barnes_ratio_leading,
    sieve_von_mangoldt, EULER_GAMMA,
};
use extremal::montecarlo::{
    derive_seed, estimate_tail, for_each_chunk, max_over_ensemble, prime_phase_exact_excess_kurtosis,
    prime_phase_sample, trial_rng, Evaluator, ExperimentConfig, Statistic, Threshold,
};
use extremal::zeta::{
    find_zeros, hardy_z_euler_maclaurin, hardy_z_riemann_siegel, hybrid_residual, p_x_smoothed, Weight,
};
use extremal_cli::config::Settings;
use extremal_cli::run_settings;
use num_complex::Complex64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Mean and standard error of exp(s·v) over `trials` draws of the statistic.
fn mc_moment(kind: Kind, n: usize, statistic: Statistic, s: f64, trials: u64, seed: u64) -> (f64, f64) {
    let parts = for_each_chunk(trials, |start, end| {
        let mut eval = Evaluator::new(kind, n, statistic);
        let (mut sum, mut sq) = (0.0, 0.0);
        for i in start..end {
            let y = (s * eval.sample(&mut trial_rng(seed, i))).exp();
            sum += y;
            sq += y * y;
        }
        (sum, sq)
    });
    let (sum, sq) = parts.iter().fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let m = trials as f64;
    let mean = sum / m;
    let var = (sq / m - mean * mean) * m / (m - 1.0);
    (mean, (var / m).sqrt())
}

fn c1_exact_moments() -> Outcome {
    let worst = (1..=200)
        .map(|n| (cue_log_moment(n, 1.0).unwrap() - (n as f64 + 1.0).ln()).abs())
        .fold(0.0, f64::max);
    let start = Instant::now();
    let (mean, se) = mc_moment(Kind::Unitary, 20, Statistic::AtPointZero, 2.0, 200_000, 11);
    let elapsed = start.elapsed();
    let exact = cue_log_moment(20, 1.0).unwrap().exp();
    let z = (mean - exact) / se;
    outcome(
        worst < 1e-9 && z.abs() < 3.0 && elapsed < Duration::from_secs(30),
        format!(
            "max |log M_N(1) - log(N+1)| = {worst:.2e}; MC E|Λ|² = {mean:.4} vs {exact} ({z:+.2} SE) in {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

fn c2_barnes() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for k in [20.0, 50.0, 100.0] {
        let err = (log_barnes_ratio(k).unwrap() - log_barnes_ratio_leading(k)).abs();
        pass &= err < 1.0 / k;
        parts.push(format!("k={k}: {err:.2e}"));
    }
    outcome(pass, format!("|exact - expansion| {}", parts.join(", ")))
}

fn c3_arith() -> Outcome {
    let a1 = arithmetic_factor_a(1.0, 1e-12).unwrap();
    let a2_sieved = log_arith_factor_with_cutoff(2.0, 100_000, 1e-12).unwrap();
    let a2_deep = log_arith_factor_with_cutoff(2.0, 10_000_000, 1e-12).unwrap();
    let a2_gap = (a2_sieved - a2_deep).abs();
    let k = 50.0f64;
    let a50 = arithmetic_factor_a(k, 1e-10).unwrap();
    let asy = -k * k * (2.0 * EULER_GAMMA.exp() * k.ln()).ln();
    let rel = (a50 - asy).abs() / asy.abs();
    outcome(
        a1 == 0.0 && a2_gap < 1e-10 && rel < 0.2,
        format!(
            "log a(1) = {a1}; log a(2) cutoffs 1e5/1e7 differ by {a2_gap:.1e} (6/π² gives {:.1e}); log a(50) = {a50:.2} vs {asy:.2} ({:.1}%)",
            (a2_deep - (6.0 / (PI * PI)).ln()).abs(),
            100.0 * rel
        ),
    )
}

fn c4_tail_rate() -> Outcome {
    let start = Instant::now();
    let cfg = ExperimentConfig {
        kind: Kind::Unitary,
        n: 50,
        threshold: Threshold::Lambda(0.3),
        trials: 1_000_000,
        seed: 7,
        statistic: Statistic::AtPointZero,
    };
    let est = estimate_tail(&cfg).unwrap();
    let elapsed = start.elapsed();
    let n = 50f64;
    let lambda = 0.3;
    let reference = -n.powf(2.0 * lambda) / ((1.0 - lambda) * n.ln());
    let ratio = est.log_p_hat / reference;
    outcome(
        (0.6..=1.6).contains(&ratio) && elapsed < Duration::from_secs(300),
        format!(
            "log p̂ = {:.4} ({} hits), reference {reference:.4}, ratio {ratio:.3} in {:.1}s",
            est.log_p_hat,
            est.hits,
            elapsed.as_secs_f64()
        ),
    )
}

fn c5_max_ensemble() -> Outcome {
    let start = Instant::now();
    let (n, m) = (100usize, 22_026u64);
    let mut values: Vec<f64> = (0..20)
        .map(|r| max_over_ensemble(Kind::Unitary, n, m, Statistic::MaxOverTheta, derive_seed(1, r)).unwrap())
        .collect();
    let elapsed = start.elapsed();
    let median = extremal_cli::commands::median(&mut values);
    let scale = ((m as f64).ln() * (n as f64).ln()).sqrt();
    let beta: f64 = 0.5;
    let predicted = (1.0 - beta / 2.0).sqrt() * scale;
    let band = 0.25 * scale;
    outcome(
        (median - predicted).abs() <= band && elapsed < Duration::from_secs(600),
        format!(
            "median log max = {median:.4}, predicted {predicted:.4} ± {band:.4} (range {:.3}..{:.3}) in {:.1}s",
            values[0],
            values[values.len() - 1],
            elapsed.as_secs_f64()
        ),
    )
}

fn c6_real_mgf() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (kind, exact) in [
        (Kind::Symplectic, sp_log_mgf(20, 1.0).unwrap()),
        (Kind::SpecialOrthogonalEven, so_log_mgf(20, 1.0).unwrap()),
    ] {
        let (mean, se) = mc_moment(kind, 20, Statistic::CharpolyAtOne, 1.0, 200_000, 5);
        let z = (mean - exact.exp()) / se;
        pass &= z.abs() < 3.0;
        parts.push(format!("{kind} E Z = {mean:.4} vs {:.4} ({z:+.2} SE)", exact.exp()));
    }
    let n = 400f64;
    let lambda = 0.5;
    let a = n.powf(lambda);
    let b = n.powf(2.0 * lambda) / ((1.0 - lambda) * n.ln());
    let s = 1.0;
    for (name, f) in [("Sp", sp_log_mgf as fn(usize, f64) -> _), ("SO", so_log_mgf)] {
        let ratio = f(400, s * b / a).unwrap() / b / (0.5 * s * s);
        pass &= (ratio - 1.0).abs() <= 0.15;
        parts.push(format!("{name} limit ratio at N=400 {ratio:.3}"));
    }
    outcome(pass, parts.join("; "))
}

fn c7_zeta() -> Outcome {
    let low = find_zeros(100.0).unwrap();
    let first = low.ordinates()[0];
    let worst = (0..=1000)
        .map(|i| 25.0 + 0.01 * i as f64)
        .map(|t| (hardy_z_euler_maclaurin(t) - hardy_z_riemann_siegel(t)).abs())
        .fold(0.0, f64::max);
    let audit = find_zeros(1000.0);
    let audit_ok = audit.is_ok();
    outcome(
        low.len() == 29 && (first - 14.134725).abs() < 1e-5 && worst < 1e-6 && audit_ok,
        format!(
            "{} zeros in (0,100), γ₁ = {first:.9}, max |EM - RS| on [25,35] = {worst:.1e}, audit to 1000: {}",
            low.len(),
            match audit {
                Ok(t) => format!("ok ({} zeros)", t.len()),
                Err(e) => e.to_string(),
            }
        ),
    )
}

fn c8_hybrid() -> Outcome {
    let start = Instant::now();
    let zeros = find_zeros(3600.0).unwrap();
    let vm = sieve_von_mangoldt(40).unwrap();
    let residual = |t: f64, x: f64| hybrid_residual(t, x, &zeros, &vm).unwrap();
    let smoothed = |t: f64, x: f64| {
        let h = residual(t, x);
        let p = p_x_smoothed(Complex64::new(0.5, t), x, &vm, Weight::Bump).unwrap();
        (h.zeta_value - p * h.z_value).norm() / h.zeta_value.norm()
    };
    let at100 = residual(100.0, 20.0).rel_residual;
    let mut pass = at100 < 0.1;
    let mut parts = vec![format!("t=100 X=20: {at100:.4}")];
    for x in [10.0, 20.0, 40.0] {
        let r = residual(500.0, x).rel_residual;
        pass &= r < 0.15;
        parts.push(format!("t=500 X={x}: {r:.4}"));
    }
    let grid: Vec<f64> = (2..=10).map(|i| 100.0 * i as f64).collect();
    let medians: Vec<f64> = [10.0, 20.0, 40.0]
        .iter()
        .map(|&x| {
            let mut v: Vec<f64> = grid.iter().map(|&t| residual(t, x).rel_residual).collect();
            extremal_cli::commands::median(&mut v)
        })
        .collect();
    pass &= medians[1] < medians[0] && medians[2] < medians[1];
    let elapsed = start.elapsed();
    pass &= elapsed < Duration::from_secs(60);
    println!(
        "    diagnostic: tapered P_X residual t=100 X=20 {:.1e}, t=500 X=20 {:.1e}",
        smoothed(100.0, 20.0),
        smoothed(500.0, 20.0)
    );
    outcome(
        pass,
        format!(
            "{}; medians over t=200..1000 for X=10,20,40: {:.4}, {:.4}, {:.4} in {:.1}s",
            parts.join(", "),
            medians[0],
            medians[1],
            medians[2],
            elapsed.as_secs_f64()
        ),
    )
}

fn c9_prime_phase() -> Outcome {
    let s = prime_phase_sample(10_000, 100_000, 1, false).unwrap();
    let z = (s.variance - s.variance_target) / s.variance_std_err;
    outcome(
        z.abs() < 3.0 && (-0.1..=0.1).contains(&s.excess_kurtosis),
        format!(
            "variance {:.5} vs {:.5} ({z:+.2} SE); excess kurtosis {:.4} (exact at this X {:.4}, SE {:.4})",
            s.variance,
            s.variance_target,
            s.excess_kurtosis,
            prime_phase_exact_excess_kurtosis(10_000),
            s.kurtosis_std_err
        ),
    )
}

fn c10_bounds() -> Outcome {
    let log_t = 1e8;
    let c_lead = leading_optimal_c().unwrap();
    let mut pass = (c_lead - SQRT_2).abs() < 1e-9;
    let report = |model: MomentModel| {
        let opt = optimize_upper_bound_with(log_t, 1.0, model).unwrap();
        let below = contradiction_check(log_t, 2.0 * SQRT_2 - 0.5, 1.0, model).unwrap();
        let above = contradiction_check(log_t, 2.0 * SQRT_2 + 0.1, 1.0, model).unwrap();
        let tau = tau_optimal(log_t).unwrap();
        let tau_ratio = tau.tau_log / opt.report.log_bound;
        (opt, below, above, tau_ratio)
    };
    let (opt, below, above, tau_ratio) = report(MomentModel::Full);
    pass &= (opt.c_star - SQRT_2).abs() <= 0.2;
    pass &= above.contradicts && !below.contradicts;
    pass &= (tau_ratio - 1.0).abs() <= 0.1;
    let (r_opt, r_below, r_above, r_tau) = report(MomentModel::RandomMatrixOnly);
    println!(
        "    diagnostic (Barnes factor only): c* = {:.4}, contradiction at -0.5/+0.1: {}/{}, τ/bound = {:.4}",
        r_opt.c_star, r_below.contradicts, r_above.contradicts, r_tau
    );
    outcome(
        pass,
        format!(
            "leading c = {c_lead:.12}; c* = {:.4}; contradiction at 2√2-0.5: {} (lower {:.0} / upper {:.0}), at 2√2+0.1: {} (lower {:.0} / upper {:.0}); τ/bound = {tau_ratio:.4}",
            opt.c_star,
            below.contradicts,
            below.lower.log_bound,
            below.upper.log_bound,
            above.contradicts,
            above.lower.log_bound,
            above.upper.log_bound
        ),
    )
}

fn c11_saddle() -> Outcome {
    let (log_t, alpha, d) = (1e8, 0.25, 1.0 / SQRT_2);
    let sp = saddle_point_x0(log_t, alpha, d).unwrap();
    let x_ratio = sp.x0 / sp.leading_x0;
    let f_ratio = sp.f_value / (2.0 * d * d * log_t);
    let f = ConvolutionExponent::new(log_t, alpha, d).unwrap();
    let mut worst: f64 = 0.0;
    for x in [0.5 * sp.x0, sp.x0 + 100.0, 2.0 * sp.x0, 10.0] {
        let h = 1e-4 * x.abs().max(1.0);
        let fd = (f.value(x + h) - f.value(x - h)) / (2.0 * h);
        let an = f.derivative(x);
        worst = worst.max((fd - an).abs() / an.abs().max(f.value(x).abs() / x.abs().max(1.0)));
    }
    outcome(
        (x_ratio - 1.0).abs() <= 0.02 && (f_ratio - 1.0).abs() <= 0.05 && worst <= 1e-6,
        format!("x0 ratio {x_ratio:.4}, f ratio {f_ratio:.4}, derivative check {worst:.1e}"),
    )
}

fn c12_families() -> Outcome {
    let count = fundamental_discriminants(100_000).len();
    let density = count as f64 / 1e5;
    let target = 6.0 / (PI * PI);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    let mut i = 0;
    while checked < 100 {
        let d = (derive_seed(12, i) % 20_001) as i64 - 10_000;
        i += 1;
        if d == 1 || !is_fundamental_discriminant(d) {
            continue;
        }
        let a = l_central_quadratic(d, 1e-8).unwrap();
        let b = l_central_by_residue_classes(d).unwrap();
        worst = worst.max((a - b).abs());
        checked += 1;
    }
    let start = Instant::now();
    let rec = family_scan(10_000).unwrap();
    let elapsed = start.elapsed();
    outcome(
        (density / target - 1.0).abs() <= 0.05 && worst <= 1e-5 && elapsed < Duration::from_secs(300),
        format!(
            "count/D = {density:.5} vs 6/π² = {target:.5}; worst oracle gap over 100 d: {worst:.1e}; scan D=1e4 max log L = {:.4} at d = {} in {:.2}s",
            rec.max_log_l,
            rec.argmax_d,
            elapsed.as_secs_f64()
        ),
    )
}

fn run_cli(sub: &str, keys: &[(&str, &str)], workers: usize, dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut flags: Vec<(String, String)> = keys.iter().map(|(k, v)| (format!("{sub}.{k}"), v.to_string())).collect();
    flags.push(("run.workers".into(), workers.to_string()));
    flags.push(("run.out".into(), dir.display().to_string()));
    let settings = Settings::resolve(sub, &BTreeMap::new(), &flags).unwrap();
    let manifest = run_settings(sub, &settings).unwrap();
    manifest
        .outputs
        .iter()
        .filter(|f| f.ends_with(".csv") || f.ends_with(".json"))
        .map(|f| (f.clone(), std::fs::read(dir.join(f)).unwrap()))
        .collect()
}

fn c13_determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let runs: [(&str, &[(&str, &str)]); 5] = [
        ("tail", &[("n", "50"), ("lambda", "0.3,0.4"), ("trials", "100000"), ("seed", "7")]),
        ("maxens", &[("n", "30"), ("m", "3000"), ("repeats", "4"), ("seed", "1")]),
        ("primes", &[("x", "1000"), ("trials", "20000"), ("seed", "1"), ("keep_samples", "true")]),
        ("scan", &[("t0", "0"), ("t1", "200"), ("segments", "2")]),
        ("family", &[("d_max", "5000"), ("dump", "true")]),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (sub, keys) in runs {
        let a = run_cli(sub, keys, 1, &tmp.path().join(format!("{sub}-1")));
        let b = run_cli(sub, keys, 8, &tmp.path().join(format!("{sub}-8")));
        let same = !a.is_empty() && a == b;
        pass &= same;
        parts.push(format!("{sub} {}", if same { "identical" } else { "DIFFERS" }));
    }
    outcome(pass, parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("exact moment identities", c1_exact_moments),
        ("Barnes G asymptotics", c2_barnes),
        ("arithmetic factor", c3_arith),
        ("tail-rate band", c4_tail_rate),
        ("max over ensemble", c5_max_ensemble),
        ("symplectic/orthogonal MGFs", c6_real_mgf),
        ("zeta engine", c7_zeta),
        ("hybrid product", c8_hybrid),
        ("prime-phase model", c9_prime_phase),
        ("bounds pipeline", c10_bounds),
        ("saddle point", c11_saddle),
        ("families", c12_families),
        ("determinism", c13_determinism),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} criterion {id:>2} ({name}): {} [{:.1}s]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {failed} criteria failed");
    if failed > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        std::process::exit(1);
    }
}
