//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any failed.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use zomega::dirichlet::{composed_zeta_series, DirichletSeries};
use zomega::growth::{conjugate, log_plus, stationary_point_ln, GrowthFunction, MfEvaluator, TheoremCase};
use zomega::perron::{perron_truncated, sigma_critical, theorem2_upper_bound, PerronCheckConfig};
use zomega::primes::{lower_bound_for_case, primorials_up_to, PrimeTable};
use zomega::scan::{run_scan, standard_presets, GridSpec, RegionSpec, Spacing};
use zomega::zeta::{ComplexPoint, ZetaConfig};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed <= limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.1?}, limit {limit:?}"))
    }
}

fn zeta_evaluation() -> Outcome {
    let start = Instant::now();
    let cfg = ZetaConfig::default();
    let points = [ComplexPoint::real(2.0), ComplexPoint::real(3.0), ComplexPoint::new(0.5, 14.0)];
    let mut worst = 0.0f64;
    for s in points {
        let a = cfg.evaluate_at_cutoff(s, 0, 40).map_err(|e| e.to_string())?.value;
        let b = cfg.evaluate_at_cutoff(s, 0, 97).map_err(|e| e.to_string())?.value;
        worst = worst.max((a - b).norm());
    }
    let z2 = cfg.evaluate(ComplexPoint::real(2.0), 0, 1e-13).map_err(|e| e.to_string())?.value;
    let err2 = (z2 - Complex64::new(PI * PI / 6.0, 0.0)).norm();
    // Apéry's constant.
    let z3 = cfg.evaluate(ComplexPoint::real(3.0), 0, 1e-13).map_err(|e| e.to_string())?.value;
    let err3 = (z3.re - 1.202_056_903_159_594_3).abs();
    within(start.elapsed(), Duration::from_secs(1))?;
    check(
        worst <= 1e-10 && err2 <= 1e-12 && err3 <= 1e-12,
        format!("cutoff disagreement {worst:.1e}, ζ(2) error {err2:.1e}, ζ(3) error {err3:.1e}"),
    )
}

fn brute_convolve(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let x = a.len();
    let mut out = vec![BigRational::zero(); x];
    for i in 1..=x {
        for j in 1..=x {
            if i * j <= x {
                out[i * j - 1] += &a[i - 1] * &b[j - 1];
            }
        }
    }
    out
}

fn brute_power(a: &[BigRational], k: u32) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = (1..=a.len())
        .map(|n| if n == 1 { BigRational::one() } else { BigRational::zero() })
        .collect();
    for _ in 0..k {
        out = brute_convolve(&out, a);
    }
    out
}

fn dirichlet_oracles() -> Outcome {
    let start = Instant::now();
    let x = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let random = |rng: &mut ChaCha8Rng| -> Vec<BigRational> {
        (0..x)
            .map(|_| BigRational::new(BigInt::from(rng.gen_range(0..20)), BigInt::from(rng.gen_range(1..7))))
            .collect()
    };
    for trial in 0..100 {
        let a = random(&mut rng);
        let b = random(&mut rng);
        let sa = DirichletSeries::new(a.clone()).unwrap();
        let sb = DirichletSeries::new(b.clone()).unwrap();
        if sa.convolve(&sb).unwrap().coeffs() != brute_convolve(&a, &b).as_slice() {
            return Err(format!("convolve mismatch in trial {trial}"));
        }
        let k = 1 + trial as u32 % 4;
        if sa.power(k).coeffs() != brute_power(&a, k).as_slice() {
            return Err(format!("power({k}) mismatch in trial {trial}"));
        }
    }

    let limit = 1_000_000u64;
    let mut table = PrimeTable::default();
    let primorials = primorials_up_to(&mut table, limit);
    let ones = DirichletSeries::<BigUint>::ones(limit as usize);
    let mut checked = 0;
    for k in 1..=6u32 {
        let p = ones.power(k);
        for &(m, value) in &primorials {
            let expected = BigUint::from(k).pow(table.pi(m) as u32);
            if p.get(value as usize) != Some(&expected) {
                return Err(format!("power(ones, {k}) at primorial({m}) = {value} differs from k^π(m)"));
            }
            checked += 1;
        }
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    check(
        true,
        format!("100 rational series at X = {x}, {checked} primorial identities, {:.1?}", start.elapsed()),
    )
}

fn conjugable_families() -> Vec<GrowthFunction> {
    let mut out = g_families();
    out.extend([GrowthFunction::DoubleExp, GrowthFunction::Power { exponent: 2.0 }]);
    out
}

fn g_families() -> Vec<GrowthFunction> {
    vec![
        GrowthFunction::Case1G { eps: 1.0, delta: 0.25 },
        GrowthFunction::Case2G,
        GrowthFunction::Case3G { a: 2.0 },
        GrowthFunction::Case4G { alpha: 0.5 },
        GrowthFunction::Exp,
    ]
}

fn fenchel_young() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = f64::NEG_INFINITY;
    for g in conjugable_families() {
        for _ in 0..10_000 {
            let x = rng.gen_range(0.0..30.0);
            let y = rng.gen_range(0.0..1e3);
            let fx = g.eval(x).map_err(|e| e.to_string())?.value;
            let star = conjugate(&g, y).map_err(|e| e.to_string())?.value;
            let gap = x * y - (fx + star);
            worst = worst.max(gap);
            if gap > 1e-9 {
                return Err(format!("{}: x = {x}, y = {y}, xy - F(x) - F*(y) = {gap:e}", g.name()));
            }
        }
    }
    let mut exp_err = 0.0f64;
    for i in 0..=1000 {
        let y = 1.0 + 999.0 * i as f64 / 1000.0;
        let star = conjugate(&GrowthFunction::Exp, y).map_err(|e| e.to_string())?.value;
        exp_err = exp_err.max((star - (y * y.ln() - y)).abs());
    }
    check(
        exp_err <= 1e-9,
        format!("max xy - F - F* = {worst:.1e} over 7 families, |(e^x)* - (y log y - y)| <= {exp_err:.1e}"),
    )
}

fn mf_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let slack = 1e-9f64.ln_1p();
    let mut worst = f64::NEG_INFINITY;
    for g in g_families() {
        let mut mf = MfEvaluator::new(g.clone()).map_err(|e| e.to_string())?;
        for _ in 0..1000 {
            let r = 100.0 * rng.gen::<f64>().sqrt();
            let z = Complex64::from_polar(r, rng.gen_range(-PI..PI));
            let exponent = g.eval(log_plus(r)).map_err(|e| e.to_string())?.value;
            let ln_bound = (PI * PI / 6.0).ln() + exponent;
            let ln_abs = mf.eval_scaled(z, 1e-13).map_err(|e| e.to_string())?.ln_norm();
            worst = worst.max(ln_abs - ln_bound);
            if ln_abs > ln_bound + slack {
                return Err(format!("{} at z = {z}: ln|M| - ln bound = {:e}", g.name(), ln_abs - ln_bound));
            }
        }
    }
    check(true, format!("max ln|M_F(z)| - ln bound = {worst:.3e} over 5 families"))
}

fn perron_instances() -> Outcome {
    let start = Instant::now();
    let series = [("delta", DirichletSeries::<f64>::identity(100)), ("ones", DirichletSeries::<f64>::ones(100))];
    let mut lines = Vec::new();
    for (name, s) in &series {
        for x in [10.0, 50.5, 100.0] {
            let mut residuals = Vec::new();
            for t in [1e3, 1e4, 1e5] {
                let report = perron_truncated(s, &PerronCheckConfig::new(2.0, x, t)).map_err(|e| e.to_string())?;
                if t == 1e4 && report.ratio > 10.0 {
                    return Err(format!("{name} x = {x}: ratio {} exceeds 10", report.ratio));
                }
                residuals.push(report.residual.abs());
            }
            if residuals.windows(2).any(|w| w[1] > w[0]) {
                return Err(format!("{name} x = {x}: residuals {residuals:?} increase with T"));
            }
            lines.push(format!("{name}@{x}: {:.1e}", residuals[1]));
        }
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    check(true, format!("|residual| at T = 1e4: {}", lines.join(", ")))
}

fn sandwich() -> Outcome {
    let start = Instant::now();
    let case = TheoremCase::Case1 { eps: 1.0, delta: 0.25 };
    let x = 10_000usize;
    let log_x = (x as f64).ln();
    let series = composed_zeta_series(&case.g(), 0, x, None).map_err(|e| e.to_string())?;
    let (argmax, sup) = series.sup_up_to(x).map(|(i, v)| (i, *v)).unwrap();
    let log_sup = sup.ln();
    let lower = lower_bound_for_case(log_x, &case, 64).map_err(|e| e.to_string())?;
    let upper = theorem2_upper_bound(&sigma_critical, &GrowthFunction::DoubleExp, x as f64).map_err(|e| e.to_string())?;
    let slack = (log_sup - upper).max(0.0);
    let results = json!({
        "X": x,
        "case": case,
        "n": 0,
        "log_sup": log_sup,
        "argmax": argmax,
        "lower_bound": lower,
        "upper_bound": upper,
        "slack": slack,
        "upper_margin": upper - log_sup,
    });
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../results");
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    fs::write(dir.join("sandwich.json"), serde_json::to_string_pretty(&results).unwrap() + "\n")
        .map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(300))?;
    check(
        lower.bound <= log_sup,
        format!(
            "lower {:.4} (k = {}, {:?}) <= log sup {log_sup:.4} at n = {argmax}; upper {upper:.4}, slack {slack:.3}",
            lower.bound, lower.k, lower.choice
        ),
    )
}

fn x_k_asymptotics() -> Outcome {
    let cases = [
        TheoremCase::Case1 { eps: 1.0, delta: 0.25 },
        TheoremCase::Case2,
        TheoremCase::Case3 { a: 2.0 },
        TheoremCase::Case4 { alpha: 0.5 },
    ];
    let main_term = |case: &TheoremCase, ln_k: f64| -> f64 {
        let ll = ln_k.ln();
        match *case {
            TheoremCase::Case1 { eps, delta } => (1.0 + eps / 2.0 - delta) * ll,
            TheoremCase::Case2 => ln_k / ll,
            TheoremCase::Case3 { a } => (a * ll).ln(),
            TheoremCase::Case4 { alpha } => ln_k.powf(alpha),
        }
    };
    let mut parts = Vec::new();
    let mut ok = true;
    for case in &cases {
        let g = case.g();
        let mut ratios = [0.0; 2];
        for (i, ln_k) in [50.0 * 10f64.ln(), 100.0 * 10f64.ln()].into_iter().enumerate() {
            let xk = stationary_point_ln(&g, ln_k).map_err(|e| e.to_string())?;
            ratios[i] = xk.ln() / main_term(case, ln_k);
        }
        let pass = (0.9..=1.1).contains(&ratios[0]) && (ratios[1] - 1.0).abs() <= (ratios[0] - 1.0).abs();
        ok &= pass;
        parts.push(format!(
            "case {}: {:.4} -> {:.4}{}",
            case.index(),
            ratios[0],
            ratios[1],
            if pass { "" } else { " (out of band)" }
        ));
    }
    check(ok, parts.join(", "))
}

fn scan_determinism() -> Outcome {
    let mut parts = Vec::new();
    for preset in standard_presets() {
        let spec = RegionSpec {
            preset: preset.clone(),
            n: 0,
            t0: 1e3,
            t_max: 1e5,
            grid: GridSpec { t_points: 9, sigma_points: 5, spacing: Spacing::Log },
            sigma_shift: 0.0,
        };
        let a = run_scan(&spec, 1e-6).map_err(|e| e.to_string())?;
        let b = run_scan(&spec, 1e-6).map_err(|e| e.to_string())?;
        if a.to_json() != b.to_json() {
            return Err(format!("{}: repeated scans differ", preset.name()));
        }
        let mut spec2 = spec.clone();
        spec2.grid = spec.grid.doubled();
        let fine = run_scan(&spec2, 1e-6).map_err(|e| e.to_string())?;
        if fine.sup_ratio < a.sup_ratio {
            return Err(format!("{}: sup_ratio fell from {} to {} on the doubled grid", preset.name(), a.sup_ratio, fine.sup_ratio));
        }
        parts.push(format!("{} {:.3e} -> {:.3e}", preset.name(), a.sup_ratio, fine.sup_ratio));
    }
    check(true, parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("zeta evaluation", zeta_evaluation),
        ("dirichlet algebra oracles", dirichlet_oracles),
        ("fenchel-young", fenchel_young),
        ("M_F growth bound", mf_bound),
        ("perron instances", perron_instances),
        ("coefficient sandwich", sandwich),
        ("x_k asymptotics", x_k_asymptotics),
        ("scan determinism", scan_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({elapsed:.1?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.1?}): {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
