use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::AtomicBool;
use std::sync::Arc;

use clap::{Args, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use zomega::dirichlet::{
    compose_mf, zeta_family_series, CacheKey, DirichletError, DirichletSeries, SeriesCache, DEFAULT_N_MAX,
};
use zomega::growth::{conjugate, mf_ln_bound, GrowthError, GrowthFunction, MfEvaluator, TheoremCase};
use zomega::perron::{perron_truncated, sigma_critical, theorem2_upper_bound, PerronCheckConfig, PerronError};
use zomega::primes::{lower_bound_for_case, select_m, PrimeError, PrimeTable};
use zomega::scan::{run_scan_with, GridSpec, Preset, RegionSpec, ScanError, ScanOptions, Spacing};
use zomega::zeta::{zeta_derivative, ComplexPoint, ZetaError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Precondition(_) => 2,
            CliError::Numerical(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::PrecisionUnreachable { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<GrowthError> for CliError {
    fn from(e: GrowthError) -> Self {
        match e {
            GrowthError::NonConvergent { .. } | GrowthError::Overflow { .. } | GrowthError::NoRoot { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<DirichletError> for CliError {
    fn from(e: DirichletError) -> Self {
        match e {
            DirichletError::Growth(g) => g.into(),
            DirichletError::Io(io) => CliError::Io(io),
            DirichletError::TruncationUnsound { .. } | DirichletError::Cache(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<PrimeError> for CliError {
    fn from(e: PrimeError) -> Self {
        match e {
            PrimeError::Growth(g) => g.into(),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<PerronError> for CliError {
    fn from(e: PerronError) -> Self {
        match e {
            PerronError::Growth(g) => g.into(),
            PerronError::QuadratureNonConverged(_) => CliError::Numerical(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<ScanError> for CliError {
    fn from(e: ScanError) -> Self {
        match e {
            ScanError::Zeta(z) => z.into(),
            ScanError::Io(io) => CliError::Io(io),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

fn precondition(msg: impl Into<String>) -> CliError {
    CliError::Precondition(msg.into())
}

/// Growth family chosen by name plus the parameters the family reads.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct GrowthArgs {
    /// case1_f, case1_g, case2_f, case2_g, case3_f, case3_g, case4_f,
    /// case4_g, double_exp, exp or power.
    #[arg(long, default_value = "exp")]
    pub family: String,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[arg(long = "A", default_value_t = 2.0)]
    #[serde(rename = "A")]
    pub a: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 2.0)]
    pub exponent: f64,
}

impl GrowthArgs {
    pub fn growth(&self) -> Result<GrowthFunction, CliError> {
        let (eps, delta, a, alpha) = (self.eps, self.delta, self.a, self.alpha);
        let g = match self.family.as_str() {
            "case1_f" => GrowthFunction::Case1F { eps, delta },
            "case1_g" => GrowthFunction::Case1G { eps, delta },
            "case2_f" => GrowthFunction::Case2F,
            "case2_g" => GrowthFunction::Case2G,
            "case3_f" => GrowthFunction::Case3F { a },
            "case3_g" => GrowthFunction::Case3G { a },
            "case4_f" => GrowthFunction::Case4F { alpha },
            "case4_g" => GrowthFunction::Case4G { alpha },
            "double_exp" => GrowthFunction::DoubleExp,
            "exp" => GrowthFunction::Exp,
            "power" => GrowthFunction::Power { exponent: self.exponent },
            other => return Err(precondition(format!("unknown growth family {other:?}"))),
        };
        g.validate()?;
        Ok(g)
    }
}

/// One of the four theorem cases with its parameters.
#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CaseArgs {
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub case: u8,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[arg(long = "A", default_value_t = 2.0)]
    #[serde(rename = "A")]
    pub a: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
}

impl CaseArgs {
    pub fn case(&self) -> Result<TheoremCase, CliError> {
        let c = match self.case {
            1 => TheoremCase::Case1 { eps: self.eps, delta: self.delta },
            2 => TheoremCase::Case2,
            3 => TheoremCase::Case3 { a: self.a },
            4 => TheoremCase::Case4 { alpha: self.alpha },
            other => return Err(precondition(format!("case must be 1..4, got {other}"))),
        };
        c.validate()?;
        Ok(c)
    }
}

fn parse_point(s: &str) -> Result<Complex64, CliError> {
    s.trim().parse::<Complex64>().map_err(|_| precondition(format!("cannot parse complex number {s:?}")))
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ZetaArgs {
    /// Point s, e.g. `2` or `0.5+14i`.
    #[arg(long)]
    pub s: String,
    /// Derivative order.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub target_error: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ScanArgs {
    /// zaitsev, case1, case2, case3 or case4.
    #[arg(long, default_value = "zaitsev")]
    pub preset: String,
    /// ε of the boundary; defaults to 0 for zaitsev and 1 for case1.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[arg(long = "A", default_value_t = 2.0)]
    #[serde(rename = "A")]
    pub a: f64,
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, default_value_t = 1e3)]
    pub t0: f64,
    #[arg(long = "T", default_value_t = 1e5)]
    #[serde(rename = "T")]
    pub t_max: f64,
    #[arg(long, default_value_t = 9)]
    pub t_points: usize,
    #[arg(long, default_value_t = 5)]
    pub sigma_points: usize,
    #[arg(long, value_enum, default_value = "log")]
    pub spacing: SpacingArg,
    #[arg(long, default_value_t = 1e-6)]
    pub target_error: f64,
    /// Added to σ(t) before clamping.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub sigma_shift: f64,
    /// Resume from and update this checkpoint file.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Stop after this many cells and report partially.
    #[arg(long)]
    pub max_cells: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpacingArg {
    Linear,
    Log,
}

impl ScanArgs {
    pub fn region(&self) -> Result<RegionSpec, CliError> {
        let preset = match self.preset.as_str() {
            "zaitsev" => Preset::Zaitsev { eps: self.eps.unwrap_or(0.0) },
            "case1" => Preset::Case1 { eps: self.eps.unwrap_or(1.0), delta: self.delta },
            "case2" => Preset::Case2,
            "case3" => Preset::Case3 { a: self.a },
            "case4" => Preset::Case4 { alpha: self.alpha },
            other => return Err(precondition(format!("unknown preset {other:?}"))),
        };
        let spacing = match self.spacing {
            SpacingArg::Linear => Spacing::Linear,
            SpacingArg::Log => Spacing::Log,
        };
        let spec = RegionSpec {
            preset,
            n: self.n,
            t0: self.t0,
            t_max: self.t_max,
            grid: GridSpec { t_points: self.t_points, sigma_points: self.sigma_points, spacing },
            sigma_shift: self.sigma_shift,
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct CoeffsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub case: CaseArgs,
    /// Derivative order in 1 + (-1)^n ζ^{(n)}.
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Cutoff X.
    #[arg(long = "X", default_value_t = 1000)]
    #[serde(rename = "X")]
    pub cutoff: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ConjugateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub growth: GrowthArgs,
    #[arg(long)]
    pub y: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct MfArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub growth: GrowthArgs,
    /// Point z, e.g. `3-4i`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Absolute tolerance, relative to e^{F(log₊|z|)} when that overflows.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Delta,
    Ones,
    /// 1 + (-1)^n ζ^{(n)} coefficients.
    ZetaFamily,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct PerronArgs {
    #[arg(long, value_enum, default_value = "ones")]
    pub series: SeriesKind,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Table length; defaults to max(100, ⌈x⌉).
    #[arg(long = "X")]
    #[serde(rename = "X")]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub x: f64,
    #[arg(long, default_value_t = 2.0)]
    pub b: f64,
    #[arg(long = "T", default_value_t = 1e4)]
    #[serde(rename = "T")]
    pub t_max: f64,
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub rel_tol: f64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct LowerArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub case: CaseArgs,
    #[arg(long)]
    pub x: f64,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    /// Search range for k when the case formula gives k < 2.
    #[arg(long, default_value_t = 64)]
    pub k_max: u64,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct UpperArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub growth: GrowthArgs,
    #[arg(long)]
    pub x: f64,
    /// `critical` for 1 - 2 log log x/log x, or a constant.
    #[arg(long, default_value = "critical")]
    pub sigma: String,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", content = "params", rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate ζ^{(n)}(s) with an error bound.
    Zeta(ZetaArgs),
    /// Grid-scan |ζ^{(n)}|/F(t) over a preset region.
    Scan(ScanArgs),
    /// Coefficients of M_G(1 + (-1)^n ζ^{(n)}) up to X.
    Coeffs(CoeffsArgs),
    /// Legendre–Fenchel conjugate F*(y).
    Conjugate(ConjugateArgs),
    /// Evaluate M_F(z) and compare with its growth bound.
    MfEval(MfArgs),
    /// Check the truncated Perron formula on a finite series.
    PerronCheck(PerronArgs),
    /// Primorial lower bound for sup a_n against the computed coefficients.
    LowerBound(LowerArgs),
    /// Upper bound for log sup a_n.
    UpperBound(UpperArgs),
}

#[derive(Debug)]
pub struct Report {
    pub json: Value,
    /// Optional tabular body for csv output.
    pub rows: Option<(Vec<String>, Vec<Vec<f64>>)>,
}

/// Hash of the resolved command, stable under a JSON round trip.
pub fn config_hash(echo: &Value) -> String {
    zomega::canonical_hash(echo)
}

impl Command {
    pub fn echo(&self) -> Value {
        serde_json::to_value(self).expect("command serializes")
    }

    /// Replaces parameters by the keys of a TOML or JSON file.
    pub fn with_overrides(self, path: &Path) -> Result<Command, CliError> {
        let text = fs::read_to_string(path)?;
        let file: Value = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| precondition(format!("{}: {e}", path.display())))?
        } else {
            serde_json::from_str(&text).map_err(|e| precondition(format!("{}: {e}", path.display())))?
        };
        let Value::Object(keys) = file else {
            return Err(precondition(format!("{}: expected a table of parameters", path.display())));
        };
        let mut echo = self.echo();
        let params = echo["params"].as_object_mut().expect("params object");
        for (k, v) in keys {
            if !params.contains_key(&k) {
                return Err(precondition(format!("{}: unknown key {k:?}", path.display())));
            }
            params.insert(k, v);
        }
        serde_json::from_value(echo).map_err(|e| precondition(format!("{}: {e}", path.display())))
    }

    pub fn execute(&self) -> Result<Report, CliError> {
        let echo = self.echo();
        let hash = config_hash(&echo);
        let (result, rows) = match self {
            Command::Zeta(a) => (zeta(a)?, None),
            Command::Scan(a) => scan(a)?,
            Command::Coeffs(a) => coeffs(a)?,
            Command::Conjugate(a) => (conjugate_cmd(a)?, None),
            Command::MfEval(a) => (mf_eval(a)?, None),
            Command::PerronCheck(a) => (perron(a)?, None),
            Command::LowerBound(a) => (lower_bound(a)?, None),
            Command::UpperBound(a) => (upper_bound(a)?, None),
        };
        Ok(Report { json: json!({ "config": echo, "config_hash": hash, "result": result }), rows })
    }
}

fn zeta(a: &ZetaArgs) -> Result<Value, CliError> {
    let s = parse_point(&a.s)?;
    let r = zeta_derivative(ComplexPoint::from(s), a.n, a.target_error)?;
    Ok(serde_json::to_value(r).unwrap())
}

type Rows = Option<(Vec<String>, Vec<Vec<f64>>)>;

fn scan(a: &ScanArgs) -> Result<(Value, Rows), CliError> {
    let spec = a.region()?;
    let flag = Arc::new(AtomicBool::new(false));
    let handler_flag = flag.clone();
    // A second handler install fails inside one process; scans still run.
    let _ = ctrlc::set_handler(move || handler_flag.store(true, std::sync::atomic::Ordering::Relaxed));
    let options = ScanOptions {
        checkpoint: a.checkpoint.clone(),
        max_cells: a.max_cells,
        interrupt: Some(flag),
        ..Default::default()
    };
    let report = run_scan_with(&spec, a.target_error, &options)?;
    log::info!(
        "scanned {}/{} cells in {:.3}s",
        report.cells_evaluated,
        report.cells_total,
        report.elapsed.as_secs_f64()
    );
    let rows = report
        .per_band_maxima
        .iter()
        .map(|b| vec![b.t, b.sigma_boundary, b.sigma, b.ratio, b.raw_sigma, b.raw_ratio])
        .collect();
    let header = ["t", "sigma_boundary", "sigma", "ratio", "raw_sigma", "raw_ratio"].map(String::from).to_vec();
    Ok((serde_json::to_value(&report).unwrap(), Some((header, rows))))
}

fn composed(case: &TheoremCase, n: u32, cutoff: usize) -> Result<(DirichletSeries<f64>, Value), CliError> {
    let g = case.g();
    let key = CacheKey { family: g.clone(), n, cutoff };
    let cache = SeriesCache::from_env();
    if let Some(c) = &cache {
        if let Some(series) = c.load(&key)? {
            return Ok((series, json!({ "cached": true })));
        }
    }
    let inner = zeta_family_series(n, cutoff)?;
    let mut mf = MfEvaluator::new(g)?;
    let (series, report) = compose_mf(&inner, &mut mf, DEFAULT_N_MAX)?;
    if let Some(c) = &cache {
        c.store(&key, &series)?;
    }
    Ok((series, json!({ "cached": false, "composition": report })))
}

fn coeffs(a: &CoeffsArgs) -> Result<(Value, Rows), CliError> {
    let case = a.case.case()?;
    if a.cutoff < 2 {
        return Err(precondition("X must be at least 2"));
    }
    let (series, meta) = composed(&case, a.n, a.cutoff)?;
    let (sup_index, sup) = series.sup_up_to(a.cutoff).map(|(i, v)| (i, *v)).unwrap();
    let total = series.summatory(a.cutoff as f64)?;
    let rows = series.coeffs().iter().enumerate().map(|(i, &c)| vec![(i + 1) as f64, c]).collect();
    let result = json!({
        "X": a.cutoff,
        "n": a.n,
        "sup_index": sup_index,
        "sup_value": sup,
        "log_sup": sup.ln(),
        "summatory": total,
        "source": meta,
    });
    Ok((result, Some((vec!["index".into(), "coefficient".into()], rows))))
}

fn conjugate_cmd(a: &ConjugateArgs) -> Result<Value, CliError> {
    let g = a.growth.growth()?;
    Ok(serde_json::to_value(conjugate(&g, a.y)?).unwrap())
}

fn mf_eval(a: &MfArgs) -> Result<Value, CliError> {
    let g = a.growth.growth()?;
    let z = parse_point(&a.z)?;
    let mut mf = MfEvaluator::new(g.clone())?;
    let ln_bound = mf_ln_bound(&g, z);
    let value = match mf.eval(z, a.tol) {
        Ok(v) => json!({ "re": v.re, "im": v.im, "ln_abs": v.norm().ln() }),
        Err(GrowthError::Overflow { .. }) => {
            let s = mf.eval_scaled(z, a.tol)?;
            json!({ "mantissa": { "re": s.mantissa.re, "im": s.mantissa.im }, "log_scale": s.log_scale, "ln_abs": s.ln_norm() })
        }
        Err(e) => return Err(e.into()),
    };
    let ln_abs = value["ln_abs"].as_f64().unwrap_or(f64::NEG_INFINITY);
    Ok(json!({
        "z": { "re": z.re, "im": z.im },
        "value": value,
        "ln_bound": ln_bound,
        "within_bound": ln_abs <= ln_bound + 1e-9,
    }))
}

fn perron(a: &PerronArgs) -> Result<Value, CliError> {
    if !(a.x >= 2.0 && a.x.is_finite()) {
        return Err(precondition(format!("x = {} must be at least 2", a.x)));
    }
    let cutoff = a.cutoff.unwrap_or_else(|| (a.x.ceil() as usize).max(100));
    let series = match a.series {
        SeriesKind::Delta => DirichletSeries::<f64>::identity(cutoff),
        SeriesKind::Ones => DirichletSeries::<f64>::ones(cutoff),
        SeriesKind::ZetaFamily => zeta_family_series(a.n, cutoff)?,
    };
    let mut cfg = PerronCheckConfig::new(a.b, a.x, a.t_max);
    cfg.quadrature_step = a.step;
    cfg.rel_tol = a.rel_tol;
    Ok(serde_json::to_value(perron_truncated(&series, &cfg)?).unwrap())
}

fn lower_bound(a: &LowerArgs) -> Result<Value, CliError> {
    let case = a.case.case()?;
    if !(a.x >= 16.0 && a.x <= 1e7) {
        return Err(precondition(format!("x = {} must lie in [16, 1e7] for coefficient tables", a.x)));
    }
    let log_x = a.x.ln();
    let lb = lower_bound_for_case(log_x, &case, a.k_max)?;
    let mut table = PrimeTable::default();
    let m = match select_m(&mut table, log_x) {
        Ok(m) => json!(m),
        Err(e) => json!(e.to_string()),
    };
    let cutoff = a.x.floor() as usize;
    let (series, _) = composed(&case, a.n, cutoff)?;
    let (sup_index, sup) = series.sup_up_to(cutoff).map(|(i, v)| (i, *v)).unwrap();
    Ok(json!({
        "k": lb.k,
        "k_choice": lb.choice,
        "conjugate": lb.conjugate,
        "bound": lb.bound,
        "m": m,
        "sup_index": sup_index,
        "log_sup": sup.ln(),
        "holds": lb.bound <= sup.ln(),
    }))
}

fn upper_bound(a: &UpperArgs) -> Result<Value, CliError> {
    let g = a.growth.growth()?;
    let bound = match a.sigma.as_str() {
        "critical" => theorem2_upper_bound(&sigma_critical, &g, a.x)?,
        s => {
            let v: f64 = s.parse().map_err(|_| precondition(format!("σ must be `critical` or a number, got {s:?}")))?;
            theorem2_upper_bound(&move |_| v, &g, a.x)?
        }
    };
    Ok(json!({ "x": a.x, "bound": bound }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[derive(Parser)]
    struct Wrap {
        #[command(subcommand)]
        command: Command,
    }

    fn parse(args: &[&str]) -> Command {
        Wrap::try_parse_from(std::iter::once("zomega").chain(args.iter().copied())).unwrap().command
    }

    #[test]
    fn zeta_two() {
        let r = parse(&["zeta", "--s", "2"]).execute().unwrap();
        let v = r.json["result"]["value"][0].as_f64().unwrap();
        assert!((v - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn perron_ones_lhs() {
        let r = parse(&["perron-check", "--series", "ones", "--x", "50.5", "--b", "2", "--T", "1e4"]).execute().unwrap();
        assert_eq!(r.json["result"]["lhs"].as_f64().unwrap(), 1250.0);
        for key in ["lhs", "main", "residual", "budget", "ratio", "T", "b", "panels"] {
            assert!(r.json["result"].get(key).is_some(), "{key}");
        }
    }

    #[test]
    fn config_overrides_and_hash() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        fs::write(&path, "y = 3.5\nfamily = \"case3_g\"\n").unwrap();
        let cmd = parse(&["conjugate", "--y", "1"]).with_overrides(&path).unwrap();
        let Command::Conjugate(a) = &cmd else { panic!() };
        assert_eq!(a.y, 3.5);
        assert_eq!(a.growth.family, "case3_g");
        let report = cmd.execute().unwrap();
        let text = crate::output::to_json(&report.json);
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(config_hash(&back["config"]), back["config_hash"].as_str().unwrap());

        fs::write(&path, "bogus = 1\n").unwrap();
        assert!(parse(&["conjugate", "--y", "1"]).with_overrides(&path).is_err());
    }

    #[test]
    fn precondition_exit_codes() {
        let e = parse(&["zeta", "--s", "1"]).execute().unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = parse(&["conjugate", "--family", "power", "--exponent", "1", "--y", "2"]).execute().unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = parse(&["zeta", "--s", "0.5+1e4i", "--target-error", "1e-18"]).execute().unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }
}
