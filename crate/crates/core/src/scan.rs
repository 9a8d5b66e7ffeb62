//! Grid scans of `|ζ^{(n)}(σ+it)| / F(t)` over regions
//! `σ(t) <= σ <= 1, t0 <= t <= T`.
//!
//! Grids are nested: doubling a grid keeps every old node, so the reported
//! supremum can only grow under refinement. Cells are evaluated in parallel
//! but merged in index order, and the serialized report carries no timing,
//! so equal specs give byte-identical output.

use std::f64::consts::E;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::growth::GrowthFunction;
use crate::zeta::{ComplexPoint, ZetaConfig, ZetaError};

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("σ(t) needs t > e^e, got t = {0}")]
    DomainTooSmall(f64),
    #[error("invalid region: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Boundary curves `σ(t)` paired with the growth `F(t)` they are scanned against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "snake_case")]
pub enum Preset {
    /// `σ = 1 - (4+ε) lll/ll`, `F = log T`.
    Zaitsev { eps: f64 },
    /// `σ = 1 - (4+ε) lll/ll`, `F = exp(ll^{1+ε/2-δ})`.
    Case1 { eps: f64, delta: f64 },
    /// `σ = 1 - 2/lll`, `F = exp exp(ll/lll)`.
    Case2,
    /// `σ = 1 - 2 lll/ll`, `F = ll^A`.
    Case3 {
        #[serde(rename = "A")]
        a: f64,
    },
    /// `σ = 1 - 2/ll^{1-α}`, `F = exp exp(ll^α)`.
    Case4 { alpha: f64 },
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Zaitsev { .. } => "zaitsev",
            Preset::Case1 { .. } => "case1",
            Preset::Case2 => "case2",
            Preset::Case3 { .. } => "case3",
            Preset::Case4 { .. } => "case4",
        }
    }

    /// The growth `F` for the four cases; `None` for Zaitsev's `log T`.
    pub fn growth(&self) -> Option<GrowthFunction> {
        match *self {
            Preset::Zaitsev { .. } => None,
            Preset::Case1 { eps, delta } => Some(GrowthFunction::Case1F { eps, delta }),
            Preset::Case2 => Some(GrowthFunction::Case2F),
            Preset::Case3 { a } => Some(GrowthFunction::Case3F { a }),
            Preset::Case4 { alpha } => Some(GrowthFunction::Case4F { alpha }),
        }
    }

    fn validate(&self) -> Result<(), ScanError> {
        let ok = match *self {
            Preset::Zaitsev { eps } => eps >= 0.0 && eps.is_finite(),
            _ => self.growth().unwrap().validate().is_ok(),
        };
        if ok {
            Ok(())
        } else {
            Err(ScanError::InvalidSpec(format!("bad parameters for {}", self.name())))
        }
    }

    /// Unclamped boundary formula with the `o(1)` terms set to zero.
    pub fn raw_boundary(&self, t: f64) -> Result<f64, ScanError> {
        if !(t > E.powf(E)) {
            return Err(ScanError::DomainTooSmall(t));
        }
        self.raw_boundary_loglog(t.ln().ln())
    }

    /// [`Self::raw_boundary`] from `log log t`, for `t` beyond `f64`.
    pub fn raw_boundary_loglog(&self, ll: f64) -> Result<f64, ScanError> {
        if !(ll > 1.0) {
            return Err(ScanError::DomainTooSmall(ll.exp().exp()));
        }
        let lll = ll.ln();
        Ok(match *self {
            Preset::Zaitsev { eps } | Preset::Case1 { eps, .. } => 1.0 - (4.0 + eps) * lll / ll,
            Preset::Case2 => 1.0 - 2.0 / lll,
            Preset::Case3 { .. } => 1.0 - 2.0 * lll / ll,
            Preset::Case4 { alpha } => 1.0 - 2.0 / ll.powf(1.0 - alpha),
        })
    }
}

/// Floor applied to every boundary curve.
pub const SIGMA_MIN: f64 = 0.55;

/// `σ(t) + shift`, clamped into `[SIGMA_MIN, 1]`.
pub fn sigma_boundary(preset: &Preset, t: f64, shift: f64) -> Result<f64, ScanError> {
    Ok((preset.raw_boundary(t)? + shift).clamp(SIGMA_MIN, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_points: usize,
    pub sigma_points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    /// The nested refinement: `2(n-1)+1` points along each axis.
    pub fn doubled(&self) -> Self {
        Self { t_points: 2 * self.t_points - 1, sigma_points: 2 * self.sigma_points - 1, spacing: self.spacing }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSpec {
    #[serde(flatten)]
    pub preset: Preset,
    /// Derivative order.
    pub n: usize,
    pub t0: f64,
    #[serde(rename = "T")]
    pub t_max: f64,
    pub grid: GridSpec,
    /// Additive correction to `σ(t)` standing in for the `o(1)` terms.
    #[serde(default)]
    pub sigma_shift: f64,
}

impl RegionSpec {
    pub fn validate(&self) -> Result<(), ScanError> {
        self.preset.validate()?;
        let bad = |m: String| Err(ScanError::InvalidSpec(m));
        if !(self.t0 < self.t_max && self.t_max.is_finite()) {
            return bad(format!("need t0 < T, got {} and {}", self.t0, self.t_max));
        }
        if self.grid.t_points < 2 || self.grid.sigma_points < 2 {
            return bad("grid counts must be at least 2".into());
        }
        if !self.sigma_shift.is_finite() {
            return bad("σ shift must be finite".into());
        }
        self.boundary(self.t0)?;
        Ok(())
    }

    pub fn boundary(&self, t: f64) -> Result<f64, ScanError> {
        sigma_boundary(&self.preset, t, self.sigma_shift)
    }

    pub fn t_node(&self, i: usize) -> f64 {
        let frac = i as f64 / (self.grid.t_points - 1) as f64;
        if i == self.grid.t_points - 1 {
            return self.t_max;
        }
        match self.grid.spacing {
            Spacing::Linear => self.t0 + (self.t_max - self.t0) * frac,
            Spacing::Log => self.t0 * (self.t_max / self.t0).powf(frac),
        }
    }

    pub fn sigma_node(&self, boundary: f64, j: usize) -> f64 {
        let last = self.grid.sigma_points - 1;
        if j == last {
            return 1.0;
        }
        boundary + (1.0 - boundary) * (j as f64 / last as f64)
    }

    /// `log F(t)`; Zaitsev's preset scales by `log T` for every `t`.
    pub fn ln_scale(&self, t: f64) -> f64 {
        match self.preset.growth() {
            Some(g) => g.ln_eval(t),
            None => self.t_max.ln().ln(),
        }
    }

    pub fn cells(&self) -> usize {
        self.grid.t_points * self.grid.sigma_points
    }

    /// Hex SHA-256 of the canonical JSON of the spec and target.
    pub fn hash(&self, target_error: f64) -> String {
        hex::encode(self.hash_bytes(target_error))
    }

    fn hash_bytes(&self, target_error: f64) -> [u8; 32] {
        let json = serde_json::to_vec(&(self, target_error)).expect("spec serializes");
        Sha256::digest(&json).into()
    }
}

/// Largest ratio in one `t` column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandMax {
    pub t: f64,
    pub sigma_boundary: f64,
    /// Deflated ratio `max(|ζ^{(n)}| - error, 0) / F(t)`.
    pub ratio: f64,
    pub sigma: f64,
    pub raw_ratio: f64,
    pub raw_sigma: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub spec: RegionSpec,
    pub target_error: f64,
    pub spec_hash: String,
    /// Deflated supremum.
    pub sup_ratio: f64,
    pub sup_ratio_raw: f64,
    pub argmax: ComplexPoint,
    pub argmax_raw: ComplexPoint,
    pub cells_evaluated: usize,
    pub cells_total: usize,
    pub complete: bool,
    pub per_band_maxima: Vec<BandMax>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `t, sigma, ratio, raw_sigma, raw_ratio` per band.
    pub fn write_csv<W: std::io::Write>(&self, w: W, digits: usize) -> Result<(), ScanError> {
        let mut out = csv::Writer::from_writer(w);
        let err = |e: csv::Error| ScanError::Checkpoint(e.to_string());
        out.write_record(["t", "sigma", "ratio", "raw_sigma", "raw_ratio"]).map_err(err)?;
        for b in &self.per_band_maxima {
            let f = |v: f64| format!("{v:.digits$e}");
            out.write_record([f(b.t), f(b.sigma), f(b.ratio), f(b.raw_sigma), f(b.raw_ratio)]).map_err(err)?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Running {
    deflated: f64,
    deflated_j: u32,
    raw: f64,
    raw_j: u32,
}

const NONE_J: u32 = u32::MAX;

impl Running {
    fn empty() -> Self {
        Self { deflated: f64::NEG_INFINITY, deflated_j: NONE_J, raw: f64::NEG_INFINITY, raw_j: NONE_J }
    }

    /// Ties keep the smaller σ index, making the merge order-independent.
    fn update(&mut self, j: u32, raw: f64, deflated: f64) {
        if deflated > self.deflated || (deflated == self.deflated && j < self.deflated_j) {
            self.deflated = deflated;
            self.deflated_j = j;
        }
        if raw > self.raw || (raw == self.raw && j < self.raw_j) {
            self.raw = raw;
            self.raw_j = j;
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ScanOptions {
    pub checkpoint: Option<PathBuf>,
    /// Stop once this many cells have been evaluated in this run.
    pub max_cells: Option<usize>,
    pub interrupt: Option<Arc<AtomicBool>>,
    pub chunk_size: Option<usize>,
    pub zeta: ZetaConfig,
}

const CHECKPOINT_MAGIC: &[u8; 4] = b"ZSCK";
pub const CHECKPOINT_VERSION: u32 = 1;

struct State {
    done: Vec<bool>,
    bands: Vec<Running>,
}

impl State {
    fn new(spec: &RegionSpec) -> Self {
        Self { done: vec![false; spec.cells()], bands: vec![Running::empty(); spec.grid.t_points] }
    }

    /// Layout: magic, `u32` version, 32-byte spec hash, `u32` t and σ counts,
    /// completed-cell bitmap, then per band `f64` deflated max, `u32` index,
    /// `f64` raw max, `u32` index.
    fn write(&self, path: &Path, hash: &[u8; 32], spec: &RegionSpec) -> Result<(), ScanError> {
        let mut buf = Vec::new();
        buf.extend_from_slice(CHECKPOINT_MAGIC);
        buf.extend_from_slice(&CHECKPOINT_VERSION.to_le_bytes());
        buf.extend_from_slice(hash);
        buf.extend_from_slice(&(spec.grid.t_points as u32).to_le_bytes());
        buf.extend_from_slice(&(spec.grid.sigma_points as u32).to_le_bytes());
        let mut bits = vec![0u8; self.done.len().div_ceil(8)];
        for (i, &d) in self.done.iter().enumerate() {
            if d {
                bits[i / 8] |= 1 << (i % 8);
            }
        }
        buf.extend_from_slice(&bits);
        for b in &self.bands {
            buf.extend_from_slice(&b.deflated.to_le_bytes());
            buf.extend_from_slice(&b.deflated_j.to_le_bytes());
            buf.extend_from_slice(&b.raw.to_le_bytes());
            buf.extend_from_slice(&b.raw_j.to_le_bytes());
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, buf)?;
        fs::rename(tmp, path)?;
        Ok(())
    }

    fn read(path: &Path, hash: &[u8; 32], spec: &RegionSpec) -> Result<Self, ScanError> {
        let bytes = fs::read(path)?;
        let bad = |m: &str| ScanError::Checkpoint(format!("{}: {m}", path.display()));
        let mut cur = bytes.as_slice();
        let mut take = |n: usize| -> Result<Vec<u8>, ScanError> {
            if cur.len() < n {
                return Err(bad("truncated"));
            }
            let (head, rest) = cur.split_at(n);
            cur = rest;
            Ok(head.to_vec())
        };
        if take(4)? != CHECKPOINT_MAGIC {
            return Err(bad("bad magic"));
        }
        let u32_at = |b: Vec<u8>| u32::from_le_bytes(b.try_into().unwrap());
        let version = u32_at(take(4)?);
        if version != CHECKPOINT_VERSION {
            return Err(bad(&format!("version {version}, expected {CHECKPOINT_VERSION}")));
        }
        if take(32)? != hash {
            return Err(bad("spec hash differs"));
        }
        let (nt, ns) = (u32_at(take(4)?) as usize, u32_at(take(4)?) as usize);
        if nt != spec.grid.t_points || ns != spec.grid.sigma_points {
            return Err(bad("grid size differs"));
        }
        let mut state = State::new(spec);
        let bits = take(state.done.len().div_ceil(8))?;
        for (i, d) in state.done.iter_mut().enumerate() {
            *d = bits[i / 8] >> (i % 8) & 1 == 1;
        }
        for b in state.bands.iter_mut() {
            b.deflated = f64::from_le_bytes(take(8)?.try_into().unwrap());
            b.deflated_j = u32_at(take(4)?);
            b.raw = f64::from_le_bytes(take(8)?.try_into().unwrap());
            b.raw_j = u32_at(take(4)?);
        }
        Ok(state)
    }
}

/// Scans the region with default options.
pub fn run_scan(spec: &RegionSpec, target_error: f64) -> Result<ScanReport, ScanError> {
    run_scan_with(spec, target_error, &ScanOptions::default())
}

/// Scans the region, resuming from and updating `options.checkpoint` when
/// set. Returns a partial report (`complete == false`) when interrupted or
/// when `max_cells` is reached.
pub fn run_scan_with(spec: &RegionSpec, target_error: f64, options: &ScanOptions) -> Result<ScanReport, ScanError> {
    let start = Instant::now();
    spec.validate()?;
    if !(target_error > 0.0 && target_error.is_finite()) {
        return Err(ZetaError::InvalidTarget(target_error).into());
    }
    let hash = spec.hash_bytes(target_error);
    let mut state = match &options.checkpoint {
        Some(path) if path.exists() => State::read(path, &hash, spec)?,
        _ => State::new(spec),
    };

    let ns = spec.grid.sigma_points;
    let ts: Vec<f64> = (0..spec.grid.t_points).map(|i| spec.t_node(i)).collect();
    let bounds: Vec<f64> = ts.iter().map(|&t| spec.boundary(t)).collect::<Result<_, _>>()?;
    let pending: Vec<usize> = (0..spec.cells()).filter(|&c| !state.done[c]).collect();
    let chunk = options.chunk_size.unwrap_or(256).max(1);
    let budget = options.max_cells.unwrap_or(usize::MAX);
    let mut evaluated = 0;

    for batch in pending.chunks(chunk) {
        let interrupted = options.interrupt.as_ref().is_some_and(|f| f.load(Ordering::Relaxed));
        if interrupted || evaluated >= budget {
            break;
        }
        let batch = &batch[..batch.len().min(budget - evaluated)];
        let results: Vec<(usize, f64, f64)> = batch
            .par_iter()
            .map(|&cell| {
                let (i, j) = (cell / ns, cell % ns);
                let (t, boundary) = (ts[i], bounds[i]);
                let sigma = spec.sigma_node(boundary, j);
                assert!(boundary <= sigma && sigma <= 1.0 && spec.t0 <= t && t <= spec.t_max);
                let r = options.zeta.evaluate(ComplexPoint::new(sigma, t), spec.n, target_error)?;
                let ln_f = spec.ln_scale(t);
                let raw = (r.value.norm().ln() - ln_f).exp();
                let deflated = ((r.value.norm() - r.error_bound).max(0.0).ln() - ln_f).exp();
                Ok((cell, raw, deflated))
            })
            .collect::<Result<_, ScanError>>()?;
        for (cell, raw, deflated) in results {
            state.bands[cell / ns].update((cell % ns) as u32, raw, deflated);
            state.done[cell] = true;
        }
        evaluated += batch.len();
        if let Some(path) = &options.checkpoint {
            state.write(path, &hash, spec)?;
        }
    }

    let complete = state.done.iter().all(|&d| d);
    let per_band_maxima: Vec<BandMax> = state
        .bands
        .iter()
        .enumerate()
        .filter(|(_, b)| b.deflated_j != NONE_J)
        .map(|(i, b)| BandMax {
            t: ts[i],
            sigma_boundary: bounds[i],
            ratio: b.deflated,
            sigma: spec.sigma_node(bounds[i], b.deflated_j as usize),
            raw_ratio: b.raw,
            raw_sigma: spec.sigma_node(bounds[i], b.raw_j as usize),
        })
        .collect();
    let pick = |key: fn(&BandMax) -> (f64, f64)| {
        per_band_maxima.iter().fold((f64::NEG_INFINITY, ComplexPoint::new(f64::NAN, f64::NAN)), |best, b| {
            let (v, sigma) = key(b);
            if v > best.0 {
                (v, ComplexPoint::new(sigma, b.t))
            } else {
                best
            }
        })
    };
    let (sup_ratio, argmax) = pick(|b| (b.ratio, b.sigma));
    let (sup_ratio_raw, argmax_raw) = pick(|b| (b.raw_ratio, b.raw_sigma));
    Ok(ScanReport {
        spec: spec.clone(),
        target_error,
        spec_hash: hex::encode(hash),
        sup_ratio,
        sup_ratio_raw,
        argmax,
        argmax_raw,
        cells_evaluated: state.done.iter().filter(|&&d| d).count(),
        cells_total: spec.cells(),
        complete,
        per_band_maxima,
        elapsed: start.elapsed(),
    })
}

/// The five named presets with their customary parameters.
pub fn standard_presets() -> Vec<Preset> {
    vec![
        Preset::Zaitsev { eps: 0.0 },
        Preset::Case1 { eps: 1.0, delta: 0.25 },
        Preset::Case2,
        Preset::Case3 { a: 2.0 },
        Preset::Case4 { alpha: 0.5 },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::zeta_derivative;

    fn tiny(preset: Preset, t0: f64, t_max: f64) -> RegionSpec {
        RegionSpec {
            preset,
            n: 0,
            t0,
            t_max,
            grid: GridSpec { t_points: 3, sigma_points: 3, spacing: Spacing::Log },
            sigma_shift: 0.0,
        }
    }

    #[test]
    fn boundary_examples() {
        let z = Preset::Zaitsev { eps: 0.0 };
        let t = E.powf(E).exp();
        assert!((z.raw_boundary(t).unwrap() - (1.0 - 4.0 / E)).abs() < 1e-12);
        assert_eq!(sigma_boundary(&z, t, 0.0).unwrap(), SIGMA_MIN);
        // e^{e^{e^2}} and e^{e^{100}} overflow f64; pass log log t instead.
        assert!(Preset::Case2.raw_boundary_loglog(E.powi(2)).unwrap().abs() < 1e-12);
        let v = z.raw_boundary_loglog(100.0).unwrap();
        assert!((v - (1.0 - 4.0 * 100f64.ln() / 100.0)).abs() < 1e-15);
        assert!((v - 0.8158).abs() < 1e-4);
        assert!(matches!(z.raw_boundary(15.0), Err(ScanError::DomainTooSmall(_))));
    }

    #[test]
    fn tiny_box_matches_pointwise() {
        let mut spec = tiny(Preset::Zaitsev { eps: 0.0 }, 100.0, 101.0);
        spec.grid = GridSpec { t_points: 2, sigma_points: 2, spacing: Spacing::Linear };
        spec.sigma_shift = 10.0;
        // The shift pins σ(t) to 1, so all four cells sit on σ = 1.
        let r = run_scan(&spec, 1e-10).unwrap();
        let mut best: f64 = 0.0;
        for t in [100.0, 101.0] {
            let v = zeta_derivative(ComplexPoint::new(1.0, t), 0, 1e-10).unwrap();
            best = best.max(v.value.norm() / 101f64.ln());
        }
        assert!((r.sup_ratio_raw - best).abs() < 1e-14);
        assert_eq!(r.cells_evaluated, 4);
    }

    #[test]
    fn nested_grids_and_determinism() {
        let spec = tiny(Preset::Case3 { a: 2.0 }, 100.0, 1000.0);
        let coarse = run_scan(&spec, 1e-8).unwrap();
        let fine_spec = RegionSpec { grid: spec.grid.doubled(), ..spec.clone() };
        let fine = run_scan(&fine_spec, 1e-8).unwrap();
        assert!(fine.sup_ratio >= coarse.sup_ratio);
        assert!(fine.sup_ratio_raw >= coarse.sup_ratio_raw);
        for i in 0..spec.grid.t_points {
            assert_eq!(spec.t_node(i), fine_spec.t_node(2 * i));
        }
        let again = run_scan(&spec, 1e-8).unwrap();
        assert_eq!(coarse.to_json(), again.to_json());
        let max_band = coarse.per_band_maxima.iter().map(|b| b.ratio).fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(max_band, coarse.sup_ratio);
    }

    #[test]
    fn checkpoint_resume_matches_full_run() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ck");
        let mut spec = tiny(Preset::Case4 { alpha: 0.5 }, 100.0, 2000.0);
        spec.grid = GridSpec { t_points: 5, sigma_points: 4, spacing: Spacing::Log };
        let full = run_scan(&spec, 1e-8).unwrap();
        let opts = ScanOptions { checkpoint: Some(path.clone()), max_cells: Some(7), chunk_size: Some(3), ..Default::default() };
        let partial = run_scan_with(&spec, 1e-8, &opts).unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.cells_evaluated, 7);
        let resumed = run_scan_with(&spec, 1e-8, &ScanOptions { max_cells: None, ..opts }).unwrap();
        assert!(resumed.complete);
        assert_eq!(resumed.to_json(), full.to_json());

        let other = RegionSpec { n: 1, ..spec.clone() };
        let opts = ScanOptions { checkpoint: Some(path), ..Default::default() };
        assert!(matches!(run_scan_with(&other, 1e-8, &opts), Err(ScanError::Checkpoint(_))));
    }

    #[test]
    fn interrupt_flag_stops_early() {
        let spec = tiny(Preset::Case2, 100.0, 1000.0);
        let flag = Arc::new(AtomicBool::new(true));
        let r = run_scan_with(&spec, 1e-8, &ScanOptions { interrupt: Some(flag), ..Default::default() }).unwrap();
        assert_eq!(r.cells_evaluated, 0);
        assert!(!r.complete);
    }

    #[test]
    fn invalid_specs() {
        let mut spec = tiny(Preset::Case2, 100.0, 50.0);
        assert!(spec.validate().is_err());
        spec.t_max = 200.0;
        spec.grid.t_points = 1;
        assert!(spec.validate().is_err());
        assert!(tiny(Preset::Case2, 10.0, 200.0).validate().is_err());
    }

    #[test]
    fn spec_json_shape() {
        let spec = tiny(Preset::Case3 { a: 2.0 }, 100.0, 1e5);
        let v: serde_json::Value = serde_json::to_value(&spec).unwrap();
        assert_eq!(v["preset"], "case3");
        assert_eq!(v["A"], 2.0);
        let back: RegionSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, spec);
    }
}
