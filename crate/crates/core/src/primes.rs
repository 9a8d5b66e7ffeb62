//! Sieved prime tables, `π`, `θ`, primorials and the primorial lower bound
//! `log k · log x / log log x - G*(k)` for coefficients of `M_G(g)`.
//!
//! Arguments `x` are passed as `log x` throughout so that astronomically
//! large `x` stay representable.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::growth::{conjugate, GrowthError, GrowthFunction, TheoremCase};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PrimeError {
    #[error("no m with π(m) >= log x/log log x + 2 and θ(m) <= log x at log x = {log_x}")]
    NoAdmissibleM { log_x: f64 },
    #[error("log x = {log_x} is below log 16")]
    BelowRange { log_x: f64 },
    #[error("k = {k} from the case-{case} formula is below 2")]
    RegimeTooSmall { case: u8, k: f64 },
    #[error("k must be at least 1")]
    InvalidK,
    #[error(transparent)]
    Growth(#[from] GrowthError),
}

/// Primes up to `limit` with prefix tables of `π` and `θ`.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: usize,
    primes: Vec<usize>,
    /// `θ(p_i) = Σ_{j<=i} log p_j`.
    theta_at: Vec<f64>,
}

impl PrimeTable {
    pub fn new(limit: usize) -> Self {
        let limit = limit.max(2);
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for n in 2..=limit {
            if !composite[n] {
                primes.push(n);
                let mut m = n * n;
                while m <= limit {
                    composite[m] = true;
                    m += n;
                }
            }
        }
        let mut acc = 0.0;
        let theta_at = primes
            .iter()
            .map(|&p| {
                acc += (p as f64).ln();
                acc
            })
            .collect();
        Self { limit, primes, theta_at }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    /// Regrows the sieve by doubling until it covers `n`.
    pub fn ensure(&mut self, n: usize) {
        if n > self.limit {
            let mut limit = self.limit;
            while limit < n {
                limit *= 2;
            }
            *self = Self::new(limit);
        }
    }

    /// Ensures at least `count` primes are present.
    pub fn ensure_count(&mut self, count: usize) {
        while self.primes.len() < count {
            let limit = self.limit * 2;
            *self = Self::new(limit);
        }
    }

    pub fn pi(&mut self, m: usize) -> usize {
        self.ensure(m);
        self.primes.partition_point(|&p| p <= m)
    }

    pub fn theta(&mut self, m: usize) -> f64 {
        match self.pi(m) {
            0 => 0.0,
            i => self.theta_at[i - 1],
        }
    }

    /// The `i`-th prime, 1-based.
    pub fn nth(&mut self, i: usize) -> usize {
        self.ensure_count(i);
        self.primes[i - 1]
    }
}

impl Default for PrimeTable {
    fn default() -> Self {
        Self::new(1 << 16)
    }
}

/// The smallest `m` with `π(m) >= log x/log log x + 2`, provided `θ(m) <= log x`.
///
/// `θ` grows with `m`, so if the smallest candidate fails the second
/// inequality every larger one does too.
pub fn select_m(table: &mut PrimeTable, log_x: f64) -> Result<usize, PrimeError> {
    if !(log_x >= 16f64.ln()) {
        return Err(PrimeError::BelowRange { log_x });
    }
    let need = log_x / log_x.ln() + 2.0;
    let count = need.ceil() as usize;
    let m = table.nth(count);
    let (pi, theta) = (table.pi(m), table.theta(m));
    if theta > log_x {
        return Err(PrimeError::NoAdmissibleM { log_x });
    }
    assert!(pi as f64 >= need && theta <= log_x);
    Ok(m)
}

/// `Π_{p<=m} p`.
pub fn primorial(table: &mut PrimeTable, m: usize) -> BigUint {
    table.ensure(m);
    table.primes.iter().take_while(|&&p| p <= m).fold(BigUint::from(1u32), |acc, &p| acc * p)
}

/// Primorials `<= limit`, in increasing order, with their `m`.
pub fn primorials_up_to(table: &mut PrimeTable, limit: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::new();
    let mut acc: u64 = 1;
    let mut i = 1;
    loop {
        let p = table.nth(i);
        match acc.checked_mul(p as u64) {
            Some(v) if v <= limit => {
                acc = v;
                out.push((p, v));
            }
            _ => break,
        }
        i += 1;
    }
    out
}

/// `log k · log x / log log x - G*(k)`, a lower bound for
/// `log sup_{n<=x} a_n`. With `k = 1` the first term vanishes.
pub fn theorem3_lower_bound(log_x: f64, k: u64, growth: &GrowthFunction) -> Result<f64, PrimeError> {
    if !(log_x >= 16f64.ln()) {
        return Err(PrimeError::BelowRange { log_x });
    }
    if k == 0 {
        return Err(PrimeError::InvalidK);
    }
    let star = conjugate(growth, k as f64)?;
    Ok((k as f64).ln() * log_x / log_x.ln() - star.value)
}

/// Explicit main term of the `k` chosen against each case, before flooring.
pub fn optimal_k_raw(log_x: f64, case: &TheoremCase) -> f64 {
    let l = log_x;
    let ll = l.ln();
    let lll = ll.ln();
    match *case {
        TheoremCase::Case1 { eps, delta } => l / ll.powf(2.0 + eps / 2.0 - delta),
        TheoremCase::Case2 => l * (-ll / lll + ll / lll.powf(4.0 / 3.0)).exp(),
        TheoremCase::Case3 { .. } => l / (ll * lll),
        TheoremCase::Case4 { alpha } => l * (-ll.powf(alpha) - ll.powf((3.0 * alpha - 1.0) / 2.0)).exp(),
    }
}

/// `k` for the case, floored; fails when the floor is below 2.
pub fn optimal_k(log_x: f64, case: &TheoremCase) -> Result<u64, PrimeError> {
    case.validate()?;
    let raw = if log_x > std::f64::consts::E { optimal_k_raw(log_x, case) } else { f64::NAN };
    if !(raw >= 2.0) {
        return Err(PrimeError::RegimeTooSmall { case: case.index(), k: raw });
    }
    Ok(raw.floor() as u64)
}

/// Which `k` a lower-bound report used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KChoice {
    Formula,
    /// The formula fell below 2; `k` maximises the bound over `2..=k_max`.
    Maximised,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub k: u64,
    pub choice: KChoice,
    pub conjugate: f64,
    pub bound: f64,
}

/// The case's `k` when its formula applies, otherwise the `k` in `2..=k_max`
/// maximising the bound.
pub fn lower_bound_for_case(log_x: f64, case: &TheoremCase, k_max: u64) -> Result<LowerBound, PrimeError> {
    let g = case.g();
    let finish = |k: u64, choice| -> Result<LowerBound, PrimeError> {
        let conj = conjugate(&g, k as f64)?.value;
        let bound = theorem3_lower_bound(log_x, k, &g)?;
        Ok(LowerBound { k, choice, conjugate: conj, bound })
    };
    match optimal_k(log_x, case) {
        Ok(k) => finish(k, KChoice::Formula),
        Err(PrimeError::RegimeTooSmall { .. }) => {
            let mut best = (2, f64::NEG_INFINITY);
            for k in 2..=k_max.max(2) {
                let b = theorem3_lower_bound(log_x, k, &g)?;
                if b > best.1 {
                    best = (k, b);
                }
            }
            finish(best.0, KChoice::Maximised)
        }
        Err(e) => Err(e),
    }
}
