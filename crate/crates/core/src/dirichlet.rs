//! Truncated Dirichlet series `Σ_{n<=X} a_n n^{-s}` with non-negative
//! coefficients, stored as coefficient tables.
//!
//! Coefficients are generic: [`BigUint`] and [`BigRational`] give exact
//! arithmetic, `f64` is used once `e^{-F*(n)}` weights enter.

use std::fmt;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::growth::{f_infinity, GrowthError, GrowthFunction, MfEvaluator};

#[derive(Debug, Error)]
pub enum DirichletError {
    #[error("cutoff mismatch: {left} vs {right}")]
    CutoffMismatch { left: usize, right: usize },
    #[error("cutoff must be at least {min}, got {got}")]
    CutoffTooSmall { min: usize, got: usize },
    #[error("negative coefficient at index {0}")]
    NegativeCoefficient(usize),
    #[error("x = {x} outside [0, {cutoff}]")]
    OutOfRange { x: f64, cutoff: usize },
    #[error("composition tail at power {power} did not settle within {n_max} terms (g[1] = {g1})")]
    TruncationUnsound { g1: f64, power: usize, n_max: usize },
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(String),
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Integer,
    Rational,
    Float,
}

/// Scalar type of a coefficient table.
pub trait Coefficient: Clone + PartialEq + PartialOrd + fmt::Debug + Send + Sync + 'static {
    const MODE: Mode;
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_nonnegative(&self) -> bool;
    fn add_ref(&mut self, other: &Self);
    /// `self += a * b`
    fn add_product(&mut self, a: &Self, b: &Self);
    fn ln(&self) -> f64;
    fn to_f64(&self) -> f64;
    fn to_text(&self) -> String;
    fn parse_text(text: &str) -> Option<Self>;
}

impl Coefficient for BigUint {
    const MODE: Mode = Mode::Integer;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigUint::from(1u32)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_nonnegative(&self) -> bool {
        true
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn ln(&self) -> f64 {
        big_ln(self)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::INFINITY)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(text: &str) -> Option<Self> {
        text.trim().parse().ok()
    }
}

fn big_ln(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 1000 {
        return ToPrimitive::to_f64(v).unwrap().ln();
    }
    let shift = bits - 64;
    ToPrimitive::to_f64(&(v >> shift)).unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

impl Coefficient for BigRational {
    const MODE: Mode = Mode::Rational;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_nonnegative(&self) -> bool {
        !self.is_negative()
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn ln(&self) -> f64 {
        if Zero::is_zero(self) {
            return f64::NEG_INFINITY;
        }
        let num = self.numer().magnitude().clone();
        let den = self.denom().magnitude().clone();
        big_ln(&num) - big_ln(&den)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_text(&self) -> String {
        self.to_string()
    }
    fn parse_text(text: &str) -> Option<Self> {
        text.trim().parse().ok()
    }
}

impl Coefficient for f64 {
    const MODE: Mode = Mode::Float;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_nonnegative(&self) -> bool {
        *self >= 0.0
    }
    fn add_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn add_product(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn ln(&self) -> f64 {
        f64::ln(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_text(&self) -> String {
        format!("{self:.17e}")
    }
    fn parse_text(text: &str) -> Option<Self> {
        text.trim().parse().ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirichletSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> DirichletSeries<C> {
    /// Builds a series from `a_1..a_X`.
    pub fn new(coeffs: Vec<C>) -> Result<Self, DirichletError> {
        if coeffs.is_empty() {
            return Err(DirichletError::CutoffTooSmall { min: 1, got: 0 });
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_nonnegative()) {
            return Err(DirichletError::NegativeCoefficient(i + 1));
        }
        Ok(Self { coeffs })
    }

    pub fn from_fn(cutoff: usize, f: impl Fn(usize) -> C) -> Result<Self, DirichletError> {
        Self::new((1..=cutoff).map(f).collect())
    }

    pub fn zero(cutoff: usize) -> Self {
        Self { coeffs: vec![C::zero(); cutoff.max(1)] }
    }

    /// The unit `1 = 1^{-s}`.
    pub fn identity(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.coeffs[0] = C::one();
        s
    }

    /// Coefficients of `ζ(s)`.
    pub fn ones(cutoff: usize) -> Self {
        Self { coeffs: vec![C::one(); cutoff.max(1)] }
    }

    pub fn cutoff(&self) -> usize {
        self.coeffs.len()
    }

    /// `a_n` for `1 <= n <= X`.
    pub fn get(&self, n: usize) -> Option<&C> {
        n.checked_sub(1).and_then(|i| self.coeffs.get(i))
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn mode(&self) -> Mode {
        C::MODE
    }

    fn check_cutoff(&self, other: &Self) -> Result<(), DirichletError> {
        if self.cutoff() != other.cutoff() {
            return Err(DirichletError::CutoffMismatch { left: self.cutoff(), right: other.cutoff() });
        }
        Ok(())
    }

    /// Dirichlet product, truncated at the common cutoff.
    pub fn convolve(&self, other: &Self) -> Result<Self, DirichletError> {
        self.check_cutoff(other)?;
        Ok(Self { coeffs: convolve_tables(&self.coeffs, &other.coeffs) })
    }

    /// `k`-fold Dirichlet power; `k = 0` gives the identity.
    pub fn power(&self, k: u32) -> Self {
        let mut result = Self::identity(self.cutoff());
        let mut base = self.clone();
        let mut k = k;
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first {
                    first = false;
                    base.clone()
                } else {
                    Self { coeffs: convolve_tables(&result.coeffs, &base.coeffs) }
                };
            }
            k >>= 1;
            if k > 0 {
                base = Self { coeffs: convolve_tables(&base.coeffs, &base.coeffs) };
            }
        }
        result
    }

    pub fn add(&self, other: &Self) -> Result<Self, DirichletError> {
        self.check_cutoff(other)?;
        let mut coeffs = self.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&other.coeffs) {
            a.add_ref(b);
        }
        Ok(Self { coeffs })
    }

    /// `A(x) = Σ_{n<=x} a_n`, exact in the coefficient type.
    pub fn summatory(&self, x: f64) -> Result<C, DirichletError> {
        if !(0.0..=self.cutoff() as f64).contains(&x) {
            return Err(DirichletError::OutOfRange { x, cutoff: self.cutoff() });
        }
        let mut acc = C::zero();
        for c in &self.coeffs[..x.floor() as usize] {
            acc.add_ref(c);
        }
        Ok(acc)
    }

    /// Running sums `A(1), ..., A(X)`.
    pub fn prefix_sums(&self) -> Vec<C> {
        let mut acc = C::zero();
        self.coeffs
            .iter()
            .map(|c| {
                acc.add_ref(c);
                acc.clone()
            })
            .collect()
    }

    /// Index and value of the largest `a_n` with `n <= x`; ties go to the
    /// smallest index.
    pub fn sup_up_to(&self, x: usize) -> Option<(usize, &C)> {
        let x = x.min(self.cutoff());
        let mut best: Option<(usize, &C)> = None;
        for (i, c) in self.coeffs[..x].iter().enumerate() {
            if best.is_none_or(|(_, b)| c > b) {
                best = Some((i + 1, c));
            }
        }
        best
    }

    pub fn to_float(&self) -> DirichletSeries<f64> {
        DirichletSeries { coeffs: self.coeffs.iter().map(Coefficient::to_f64).collect() }
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<(), DirichletError> {
        let mut w = csv::Writer::from_writer(writer);
        let csv_err = |e: csv::Error| DirichletError::Csv(e.to_string());
        w.write_record(["index", "coefficient"]).map_err(csv_err)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            w.write_record([(i + 1).to_string(), c.to_text()]).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads `index,coefficient` rows; indices must run `1..=X` in order.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self, DirichletError> {
        let mut r = csv::Reader::from_reader(reader);
        let mut coeffs = Vec::new();
        for (row, record) in r.records().enumerate() {
            let record = record.map_err(|e| DirichletError::Csv(e.to_string()))?;
            let index: usize = record
                .get(0)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| DirichletError::Csv(format!("row {}: bad index", row + 1)))?;
            if index != row + 1 {
                return Err(DirichletError::Csv(format!("row {}: expected index {}, got {index}", row + 1, row + 1)));
            }
            let c = record
                .get(1)
                .and_then(C::parse_text)
                .ok_or_else(|| DirichletError::Csv(format!("row {}: bad coefficient", row + 1)))?;
            coeffs.push(c);
        }
        Self::new(coeffs)
    }
}

/// Output indices are split into blocks processed in parallel; within an
/// index the divisor order is fixed, so float results do not depend on the
/// thread count.
fn convolve_tables<C: Coefficient>(f: &[C], g: &[C]) -> Vec<C> {
    let x = f.len();
    let support: Vec<usize> = (1..=x).filter(|&d| !f[d - 1].is_zero()).collect();
    let block = (x / (4 * rayon::current_num_threads().max(1))).max(4096);
    let starts: Vec<usize> = (0..x).step_by(block).collect();
    starts
        .into_par_iter()
        .flat_map_iter(|lo| {
            let hi = (lo + block).min(x);
            let mut out = vec![C::zero(); hi - lo];
            for &d in &support {
                if d > hi {
                    break;
                }
                let fd = &f[d - 1];
                for e in (lo + d) / d..=hi / d {
                    let ge = &g[e - 1];
                    if !ge.is_zero() {
                        out[d * e - 1 - lo].add_product(fd, ge);
                    }
                }
            }
            out
        })
        .collect()
}

/// Coefficients of `1 + (-1)^n ζ^{(n)}(s)`: `a_1 = 1 + [n = 0]`, `a_m = (log m)^n`.
pub fn zeta_family_series(n: u32, cutoff: usize) -> Result<DirichletSeries<f64>, DirichletError> {
    if cutoff < 2 {
        return Err(DirichletError::CutoffTooSmall { min: 2, got: cutoff });
    }
    DirichletSeries::from_fn(cutoff, |m| {
        let base = (m as f64).ln().powi(n as i32);
        if m == 1 {
            1.0 + if n == 0 { 1.0 } else { 0.0 }
        } else {
            base
        }
    })
}

/// Exact `1 + ζ(s)` coefficients.
pub fn one_plus_zeta_exact(cutoff: usize) -> DirichletSeries<BigUint> {
    let mut s = DirichletSeries::<BigUint>::ones(cutoff);
    s.coeffs[0] = BigUint::from(2u32);
    s
}

/// Diagnostics of a composition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComposeReport {
    /// Highest power of `g - g_1` that reaches indices `<= X`.
    pub powers: usize,
    /// Taylor weights `c_j` of `M_F` at `g_1`.
    pub taylor_weights: Vec<f64>,
    /// Largest `n` used in any weight.
    pub n_used: usize,
    /// Bound on the neglected part of each weight, relative to the weight.
    pub max_relative_tail: f64,
}

/// Relative size below which a weight's tail is dropped.
pub const COMPOSE_TAIL: f64 = 1e-20;

/// `M_F(g(s)) = Σ_n g^n e^{-F*(n)} / n²`, truncated at the cutoff of `g`.
///
/// Writing `g = g_1 + h` with `h_1 = 0`, only `h^j` with `2^j <= X` reach the
/// table, so `M_F(g) = Σ_j c_j h^j` with
/// `c_j = Σ_{n>=j} C(n, j) g_1^{n-j} e^{-F*(n)} / n²`. Each `c_j` is summed
/// until its tail, bounded geometrically through `F*(n+1) - F*(n) >= x_n`,
/// drops below [`COMPOSE_TAIL`] of the running value.
pub fn compose_mf(
    g: &DirichletSeries<f64>,
    mf: &mut MfEvaluator,
    n_max: usize,
) -> Result<(DirichletSeries<f64>, ComposeReport), DirichletError> {
    let x = g.cutoff();
    let g1 = g.coeffs[0];
    let powers = usize::BITS as usize - 1 - x.leading_zeros() as usize;
    let mut h = g.clone();
    h.coeffs[0] = 0.0;

    let mut weights = Vec::with_capacity(powers + 1);
    let mut n_used = 0;
    let mut worst_tail: f64 = 0.0;
    for j in 0..=powers {
        let (c, n_last, tail) = taylor_weight(mf, g1, j, n_max)?;
        weights.push(c);
        n_used = n_used.max(n_last);
        worst_tail = worst_tail.max(tail);
    }

    let mut result = DirichletSeries::<f64>::zero(x);
    let mut h_pow = DirichletSeries::<f64>::identity(x);
    for (j, &c) in weights.iter().enumerate() {
        if j > 0 {
            h_pow = h_pow.convolve(&h)?;
        }
        for (r, v) in result.coeffs.iter_mut().zip(&h_pow.coeffs) {
            *r += c * v;
        }
    }
    let report = ComposeReport { powers, taylor_weights: weights, n_used, max_relative_tail: worst_tail };
    Ok((result, report))
}

fn ln_binomial(n: usize, j: usize) -> f64 {
    ln_gamma_int(n + 1) - ln_gamma_int(j + 1) - ln_gamma_int(n - j + 1)
}

fn ln_gamma_int(n: usize) -> f64 {
    // ln((n-1)!) by direct summation; the arguments stay small.
    (2..n).map(|k| (k as f64).ln()).sum()
}

/// Returns `(c_j, last n, relative tail bound)`.
fn taylor_weight(
    mf: &mut MfEvaluator,
    g1: f64,
    j: usize,
    n_max: usize,
) -> Result<(f64, usize, f64), DirichletError> {
    let n0 = j.max(1);
    let w = |mf: &mut MfEvaluator, n: usize| -> f64 {
        let (conj, _) = mf.conjugate_at(n);
        ln_binomial(n, j) + (n - j) as f64 * g1.ln() - conj - 2.0 * (n as f64).ln()
    };
    if g1 == 0.0 {
        if j == 0 {
            return Ok((0.0, 0, 0.0));
        }
        let (conj, _) = mf.conjugate_at(j);
        return Ok(((-conj).exp() / (j * j) as f64, j, 0.0));
    }
    let mut sum = 0.0;
    for n in n0..=n_max {
        let ln_t = w(mf, n);
        let t = ln_t.exp();
        sum += t;
        let (_, x_n) = mf.conjugate_at(n);
        let rho = ((n + 1) as f64 / (n + 1 - j) as f64).ln() + g1.ln() - x_n;
        if rho < 0.0 {
            let r = rho.exp();
            let tail = t * r / (1.0 - r);
            if tail <= COMPOSE_TAIL * sum {
                return Ok((sum, n, tail / sum));
            }
        }
    }
    Err(DirichletError::TruncationUnsound { g1, power: j, n_max })
}

/// Largest `A(x) / (x F_∞(x))` over integers `2 <= x <= X`, with its location.
pub fn summatory_growth_constant(
    series: &DirichletSeries<f64>,
    growth: &GrowthFunction,
) -> Result<(f64, usize), DirichletError> {
    let prefix = series.prefix_sums();
    let mut best = (f64::NEG_INFINITY, 2);
    for x in 2..=series.cutoff() {
        let finf = f_infinity(growth, x as f64)?;
        let ratio = (prefix[x - 1].ln() - (x as f64).ln() - finf.ln_value).exp();
        if ratio > best.0 {
            best = (ratio, x);
        }
    }
    Ok(best)
}

/// Identifies a cached composed series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheKey {
    pub family: GrowthFunction,
    pub n: u32,
    pub cutoff: usize,
}

impl CacheKey {
    fn file_name(&self) -> String {
        let json = serde_json::to_vec(self).expect("cache key serializes");
        format!("{}.zsc", hex::encode(&Sha256::digest(&json)[..16]))
    }
}

const CACHE_MAGIC: &[u8; 4] = b"ZSCC";
pub const CACHE_VERSION: u32 = 1;

/// On-disk store of composed float series.
///
/// Layout: magic, `u32` version, `u32` key length, key JSON, `u64` cutoff,
/// then `cutoff` little-endian `f64`s.
#[derive(Debug, Clone)]
pub struct SeriesCache {
    dir: PathBuf,
}

impl SeriesCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    /// Directory from `ZOMEGA_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os("ZOMEGA_CACHE_DIR").map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn store(&self, key: &CacheKey, series: &DirichletSeries<f64>) -> Result<PathBuf, DirichletError> {
        fs::create_dir_all(&self.dir)?;
        let key_json = serde_json::to_vec(key).map_err(|e| DirichletError::Cache(e.to_string()))?;
        let mut buf = Vec::with_capacity(24 + key_json.len() + 8 * series.cutoff());
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        buf.extend_from_slice(&(key_json.len() as u32).to_le_bytes());
        buf.extend_from_slice(&key_json);
        buf.extend_from_slice(&(series.cutoff() as u64).to_le_bytes());
        for c in &series.coeffs {
            buf.extend_from_slice(&c.to_le_bytes());
        }
        let path = self.dir.join(key.file_name());
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, &buf)?;
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// `Ok(None)` when nothing is cached under `key`.
    pub fn load(&self, key: &CacheKey) -> Result<Option<DirichletSeries<f64>>, DirichletError> {
        let path = self.dir.join(key.file_name());
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let bad = |what: &str| DirichletError::Cache(format!("{}: {what}", path.display()));
        let mut cur = bytes.as_slice();
        let mut take = |n: usize| -> Result<&[u8], DirichletError> {
            if cur.len() < n {
                return Err(bad("truncated"));
            }
            let (head, rest) = cur.split_at(n);
            cur = rest;
            Ok(head)
        };
        if take(4)? != CACHE_MAGIC {
            return Err(bad("bad magic"));
        }
        let version = u32::from_le_bytes(take(4)?.try_into().unwrap());
        if version != CACHE_VERSION {
            return Err(bad(&format!("version {version}, expected {CACHE_VERSION}")));
        }
        let key_len = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
        let stored: CacheKey = serde_json::from_slice(take(key_len)?).map_err(|_| bad("bad key"))?;
        if &stored != key {
            return Err(bad("key collision"));
        }
        let cutoff = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
        let coeffs = take(8 * cutoff)?
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        DirichletSeries::new(coeffs).map(Some)
    }
}

/// `M_G(1 + (-1)^n ζ^{(n)})` truncated at `cutoff`, through the cache when given.
pub fn composed_zeta_series(
    growth: &GrowthFunction,
    n: u32,
    cutoff: usize,
    cache: Option<&SeriesCache>,
) -> Result<DirichletSeries<f64>, DirichletError> {
    let key = CacheKey { family: growth.clone(), n, cutoff };
    let cacheable = !matches!(growth, GrowthFunction::Custom(_));
    if let (Some(cache), true) = (cache, cacheable) {
        if let Some(series) = cache.load(&key)? {
            return Ok(series);
        }
    }
    let g = zeta_family_series(n, cutoff)?;
    let mut mf = MfEvaluator::new(growth.clone())?;
    let (series, _) = compose_mf(&g, &mut mf, DEFAULT_N_MAX)?;
    if let (Some(cache), true) = (cache, cacheable) {
        cache.store(&key, &series)?;
    }
    Ok(series)
}

pub const DEFAULT_N_MAX: usize = 1_000_000;
