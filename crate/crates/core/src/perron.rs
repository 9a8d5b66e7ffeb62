//! Instance checks of the truncated Perron formula
//! `∫_0^x B(ξ)dξ = (1/2πi)∫_{b-iT}^{b+iT} F_B(s) x^{s+1}/(s(s+1)) ds + R(b, x, T)`
//! for finite coefficient tables, together with the step size of the
//! asymptotic differentiation argument and the resulting upper bound for
//! `log sup_{n<=x} a_n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dirichlet::DirichletSeries;
use crate::growth::{f_infinity, log_plus, GrowthError, GrowthFunction};
use crate::quadrature::{dyadic_edges, integrate_panels, refine_edges, QuadratureError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PerronError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("series cutoff {cutoff} is below x = {x}")]
    CutoffBelowX { cutoff: usize, x: f64 },
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConverged(#[from] QuadratureError),
    #[error("Q({x}) = {q:e} violates 0 < Q(x) <= x²/4")]
    PreconditionQ { x: f64, q: f64 },
    #[error("step h = {h:e} exceeds x = {x}")]
    StepTooLarge { x: f64, h: f64 },
    #[error("σ fails at x = e^{log_x}: {reason}")]
    SigmaOutOfRange { log_x: f64, reason: String },
    #[error(transparent)]
    Growth(#[from] GrowthError),
}

/// Piecewise-linear `σ(|t|)` through `(t, σ)` knots, constant outside them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SigmaProfile {
    pub knots: Vec<(f64, f64)>,
}

impl SigmaProfile {
    pub fn constant(sigma: f64) -> Self {
        Self { knots: vec![(0.0, sigma)] }
    }

    pub fn validate(&self) -> Result<(), PerronError> {
        let bad = |m: &str| Err(PerronError::InvalidConfig(m.to_string()));
        if self.knots.is_empty() {
            return bad("σ profile needs at least one knot");
        }
        if self.knots.iter().any(|&(t, s)| !(t >= 0.0 && s > 0.0 && t.is_finite() && s.is_finite())) {
            return bad("σ profile knots need t >= 0 and σ > 0");
        }
        if self.knots.windows(2).any(|w| !(w[1].0 > w[0].0 && w[1].1 >= w[0].1)) {
            return bad("σ profile must have increasing t and non-decreasing σ");
        }
        Ok(())
    }

    pub fn at(&self, t: f64) -> f64 {
        let t = t.abs();
        let k = &self.knots;
        if t <= k[0].0 {
            return k[0].1;
        }
        for w in k.windows(2) {
            if t <= w[1].0 {
                let f = (t - w[0].0) / (w[1].0 - w[0].0);
                return w[0].1 + f * (w[1].1 - w[0].1);
            }
        }
        k[k.len() - 1].1
    }

    /// Breakpoints in `[0, t_max]` where the slope may change.
    fn breakpoints(&self, t_max: f64) -> Vec<f64> {
        let mut b = vec![0.0];
        b.extend(self.knots.iter().map(|k| k.0).filter(|&t| t > 0.0 && t < t_max));
        b.push(t_max);
        b
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contour {
    VerticalLine,
    BentContour { sigma: SigmaProfile },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronCheckConfig {
    pub b: f64,
    pub x: f64,
    #[serde(rename = "T")]
    pub t_max: f64,
    /// Width of the first panel; later panels double.
    pub quadrature_step: f64,
    pub contour: Contour,
    pub rel_tol: f64,
}

impl PerronCheckConfig {
    pub fn new(b: f64, x: f64, t_max: f64) -> Self {
        Self { b, x, t_max, quadrature_step: 1.0, contour: Contour::VerticalLine, rel_tol: 1e-9 }
    }

    pub fn validate(&self) -> Result<(), PerronError> {
        let bad = |m: String| Err(PerronError::InvalidConfig(m));
        if !(self.b > 1.0 && self.b.is_finite()) {
            return bad(format!("b = {} must exceed 1", self.b));
        }
        if !(self.x >= 2.0 && self.x.is_finite()) {
            return bad(format!("x = {} must be at least 2", self.x));
        }
        if !(self.t_max >= 2.0 && self.t_max.is_finite()) {
            return bad(format!("T = {} must be at least 2", self.t_max));
        }
        if !(self.quadrature_step > 0.0) {
            return bad(format!("quadrature step {} must be positive", self.quadrature_step));
        }
        if !(self.rel_tol > 0.0) {
            return bad(format!("tolerance {} must be positive", self.rel_tol));
        }
        if let Contour::BentContour { sigma } = &self.contour {
            sigma.validate()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerronReport {
    pub lhs: f64,
    pub main: f64,
    pub residual: f64,
    pub budget: f64,
    pub ratio: f64,
    #[serde(rename = "T")]
    pub t_max: f64,
    pub b: f64,
    pub x: f64,
    pub panels: usize,
    pub quadrature_error: f64,
}

/// `F_B(s) x^{s+1}` as `Σ w_n e^{s ℓ_n}` with `ℓ_n = log(x/n)`.
struct Kernel {
    weights: Vec<f64>,
    logs: Vec<f64>,
    x: f64,
}

impl Kernel {
    fn new(series: &DirichletSeries<f64>, x: f64) -> Self {
        let (mut weights, mut logs) = (Vec::new(), Vec::new());
        for (i, &c) in series.coeffs().iter().enumerate() {
            if c != 0.0 {
                weights.push(c * x);
                logs.push((x / (i + 1) as f64).ln());
            }
        }
        Self { weights, logs, x }
    }

    fn max_frequency(&self) -> f64 {
        self.logs.iter().fold(1.0f64, |m, l| m.max(l.abs()))
    }

    /// `F_B(s) x^{s+1} / (s(s+1))`.
    fn integrand(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, l) in self.weights.iter().zip(&self.logs) {
            acc += w * (s * l).exp();
        }
        acc / (s * (s + 1.0))
    }

    fn f_b(&self, s: Complex64) -> Complex64 {
        self.integrand(s) * s * (s + 1.0) / Complex64::new(self.x, 0.0).powc(s + 1.0)
    }

    fn scale(&self, b: f64) -> f64 {
        let f: f64 = self.weights.iter().zip(&self.logs).map(|(w, l)| w * (b * l).exp()).sum();
        f.abs().max(f64::MIN_POSITIVE) / (b * (b + 1.0))
    }
}

/// `∫_0^x B(ξ)dξ` from prefix sums of the step function `B`.
pub fn lhs_exact(series: &DirichletSeries<f64>, x: f64) -> f64 {
    let prefix = series.prefix_sums();
    let mut acc = 0.0;
    let top = (x.floor() as usize).min(series.cutoff());
    for m in 1..=top {
        let right = ((m + 1) as f64).min(x);
        acc += prefix[m - 1] * (right - m as f64);
    }
    acc
}

/// `x^{b+1}/T ∫_1^∞ |B|/ξ^{b+1} + 2^b (x log x / T + log T) max_{x/2<=ξ<=3x/2} |B|`,
/// all implied constants set to 1. `B` is frozen at `B(X)` beyond the cutoff.
pub fn remainder_budget(series: &DirichletSeries<f64>, b: f64, x: f64, t_max: f64) -> f64 {
    let prefix = series.prefix_sums();
    let cutoff = series.cutoff();
    let mut integral = 0.0;
    for m in 1..cutoff {
        integral += prefix[m - 1].abs() * ((m as f64).powf(-b) - ((m + 1) as f64).powf(-b)) / b;
    }
    integral += prefix[cutoff - 1].abs() * (cutoff as f64).powf(-b) / b;
    let b_at = |m: usize| if m == 0 { 0.0 } else { prefix[m.min(cutoff) - 1].abs() };
    let lo = (x / 2.0).floor() as usize;
    let hi = (1.5 * x).floor() as usize;
    let max_b = (lo..=hi).map(b_at).fold(0.0, f64::max);
    x.powf(b + 1.0) / t_max * integral + 2f64.powf(b) * (x * x.ln() / t_max + t_max.ln()) * max_b
}

/// `(1/π) ∫_0^T Re[F_B(b+it) x^{b+1+it} / (s(s+1))] dt`, the vertical integral
/// folded onto `t >= 0` for real coefficients.
fn vertical_main(kernel: &Kernel, cfg: &PerronCheckConfig) -> Result<(f64, f64, usize), PerronError> {
    let width = PI / kernel.max_frequency();
    let edges = dyadic_edges(cfg.t_max, cfg.quadrature_step, width);
    let tol = cfg.rel_tol * kernel.scale(cfg.b) * PI;
    let b = cfg.b;
    let r = integrate_panels(|t| Complex64::new(kernel.integrand(Complex64::new(b, t)).re, 0.0), &edges, tol, 40)?;
    Ok((r.value.re / PI, r.error / PI, edges.len() - 1))
}

pub fn perron_truncated(series: &DirichletSeries<f64>, cfg: &PerronCheckConfig) -> Result<PerronReport, PerronError> {
    cfg.validate()?;
    if (series.cutoff() as f64) < cfg.x {
        return Err(PerronError::CutoffBelowX { cutoff: series.cutoff(), x: cfg.x });
    }
    let kernel = Kernel::new(series, cfg.x);
    let lhs = lhs_exact(series, cfg.x);
    let (main, quadrature_error, panels) = vertical_main(&kernel, cfg)?;
    let residual = lhs - main;
    let budget = remainder_budget(series, cfg.b, cfg.x, cfg.t_max);
    Ok(PerronReport {
        lhs,
        main,
        residual,
        budget,
        ratio: residual.abs() / budget,
        t_max: cfg.t_max,
        b: cfg.b,
        x: cfg.x,
        panels,
        quadrature_error,
    })
}

/// Pieces of the bent contour `b-iT → σ(T)-iT → σ(|t|)+it → σ(T)+iT → b+iT`,
/// each already divided by `2πi`. For the finite sum the integrand is
/// analytic right of `Re s = 0`, so `vertical = minus + bent + plus`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BentContourReport {
    pub vertical: Complex64,
    pub minus: Complex64,
    pub bent: Complex64,
    pub plus: Complex64,
    pub identity_gap: f64,
    /// Largest `|F_B(s)| / (|t| + 1)` sampled along the bent piece.
    pub max_growth_ratio: f64,
}

pub fn bent_contour_check(
    series: &DirichletSeries<f64>,
    cfg: &PerronCheckConfig,
) -> Result<BentContourReport, PerronError> {
    cfg.validate()?;
    let Contour::BentContour { sigma } = &cfg.contour else {
        return Err(PerronError::InvalidConfig("bent contour check needs a σ profile".into()));
    };
    let kernel = Kernel::new(series, cfg.x);
    let (b, t_max) = (cfg.b, cfg.t_max);
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    let width = PI / kernel.max_frequency();
    let tol = cfg.rel_tol * kernel.scale(b) * 2.0 * t_max.max(1.0);

    let half = dyadic_edges(t_max, cfg.quadrature_step, width);
    let full: Vec<f64> = half.iter().rev().map(|t| -t).chain(half.iter().skip(1).copied()).collect();
    let vertical = integrate_panels(|t| kernel.integrand(Complex64::new(b, t)) * Complex64::i(), &full, tol, 40)?.value;

    let mut bent_half = sigma.breakpoints(t_max);
    bent_half = refine_edges(&bent_half, width);
    let bent_full: Vec<f64> = bent_half.iter().rev().map(|t| -t).chain(bent_half.iter().skip(1).copied()).collect();
    let slope = |t: f64| {
        let h = 1e-7 * t.abs().max(1.0);
        (sigma.at(t + h) - sigma.at(t - h)) / (2.0 * h)
    };
    let bent = integrate_panels(
        |t| {
            let s = Complex64::new(sigma.at(t), t);
            kernel.integrand(s) * Complex64::new(slope(t), 1.0)
        },
        &bent_full,
        tol,
        40,
    )?
    .value;

    let sig_t = sigma.at(t_max);
    let horizontal = refine_edges(&[sig_t, b], width);
    let plus = integrate_panels(|u| kernel.integrand(Complex64::new(u, t_max)), &horizontal, tol, 40)?.value;
    let minus = -integrate_panels(|u| kernel.integrand(Complex64::new(u, -t_max)), &horizontal, tol, 40)?.value;

    let (vertical, minus, bent, plus) = (vertical / two_pi_i, minus / two_pi_i, bent / two_pi_i, plus / two_pi_i);
    let mut max_growth_ratio: f64 = 0.0;
    for &t in bent_half.iter().step_by((bent_half.len() / 2000).max(1)) {
        let v = kernel.f_b(Complex64::new(sigma.at(t), t)).norm() / (t.abs() + 1.0);
        max_growth_ratio = max_growth_ratio.max(v);
    }
    Ok(BentContourReport {
        vertical,
        minus,
        bent,
        plus,
        identity_gap: (vertical - (minus + bent + plus)).norm(),
        max_growth_ratio,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticDifferentiation {
    pub h: f64,
    pub error_scale: f64,
}

/// `h = sqrt(Q(2x)/F_∞(2x))` and the error scale `sqrt(F_∞(2x) Q(2x))`.
pub fn asymptotic_differentiation(
    q: impl Fn(f64) -> f64,
    f_inf: impl Fn(f64) -> f64,
    x: f64,
) -> Result<AsymptoticDifferentiation, PerronError> {
    for y in [x, 2.0 * x] {
        let qy = q(y);
        if !(qy > 0.0 && qy <= y * y / 4.0) {
            return Err(PerronError::PreconditionQ { x: y, q: qy });
        }
    }
    let (q2, f2) = (q(2.0 * x), f_inf(2.0 * x));
    let h = (q2 / f2).sqrt();
    if !(h <= x) {
        return Err(PerronError::StepTooLarge { x, h });
    }
    Ok(AsymptoticDifferentiation { h, error_scale: (f2 * q2).sqrt() })
}

/// Smallest grid point of a log-spaced grid on `[lo, hi]` from which on
/// `Q(x) <= x²/4` holds at every later grid point.
pub fn q_threshold(q: impl Fn(f64) -> f64, lo: f64, hi: f64, points: usize) -> Option<f64> {
    let grid: Vec<f64> = (0..points).map(|i| lo * (hi / lo).powf(i as f64 / (points - 1) as f64)).collect();
    let mut threshold = None;
    for &x in grid.iter().rev() {
        if q(x) <= x * x / 4.0 {
            threshold = Some(x);
        } else {
            break;
        }
    }
    threshold
}

/// Range of `log x` on which an admissible σ is checked.
pub const SIGMA_CHECK_LOG_RANGE: (f64, f64) = (20.0, 400.0);

/// Checks `σ(x) <= 1 - 2 log log x/log x` and monotonicity on a log grid.
pub fn check_sigma(sigma: &dyn Fn(f64) -> f64) -> Result<(), PerronError> {
    let (lo, hi) = SIGMA_CHECK_LOG_RANGE;
    let n = 200;
    let mut prev = f64::NEG_INFINITY;
    for i in 0..n {
        let l = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let s = sigma(l.exp());
        let cap = 1.0 - 2.0 * l.ln() / l;
        if !(s <= cap + 1e-12) {
            return Err(PerronError::SigmaOutOfRange { log_x: l, reason: format!("σ = {s} above {cap}") });
        }
        if s < prev - 1e-12 {
            return Err(PerronError::SigmaOutOfRange { log_x: l, reason: format!("σ decreases to {s}") });
        }
        prev = s;
    }
    Ok(())
}

/// `((σ(x)+1)/2) log x + ½ log₊ log x + ½ log F_∞(2x)`, the log of the
/// upper bound for `sup_{n<=x} a_n` with implied constant 1.
pub fn theorem2_upper_bound(
    sigma: &dyn Fn(f64) -> f64,
    growth: &GrowthFunction,
    x: f64,
) -> Result<f64, PerronError> {
    check_sigma(sigma)?;
    if !(x >= 2.0) {
        return Err(PerronError::InvalidConfig(format!("x = {x} must be at least 2")));
    }
    let l = x.ln();
    let finf = f_infinity(growth, 2.0 * x)?;
    Ok((sigma(x) + 1.0) / 2.0 * l + 0.5 * log_plus(l) + 0.5 * finf.ln_value)
}

/// The largest admissible `σ(x) = 1 - 2 log log x / log x`, guarded below e^e.
pub fn sigma_critical(x: f64) -> f64 {
    let l = x.ln();
    if l <= std::f64::consts::E {
        return 1.0 - 2.0 / std::f64::consts::E;
    }
    1.0 - 2.0 * l.ln() / l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn delta_series(cutoff: usize) -> DirichletSeries<f64> {
        DirichletSeries::identity(cutoff)
    }

    #[test]
    fn lhs_two_ways() {
        let s = DirichletSeries::from_fn(100, |n| ((n * 7) % 5) as f64).unwrap();
        for x in [2.0, 10.0, 50.5, 99.9, 100.0] {
            let direct: f64 = (1..=100).filter(|&n| n as f64 <= x).map(|n| s.get(n).unwrap() * (x - n as f64)).sum();
            assert!((lhs_exact(&s, x) - direct).abs() < 1e-9, "{x}");
        }
        assert_eq!(lhs_exact(&DirichletSeries::ones(100), 50.5), 1250.0);
    }

    #[test]
    fn delta_series_kernel() {
        let cfg = PerronCheckConfig::new(2.0, 10.0, 1e4);
        let r = perron_truncated(&delta_series(20), &cfg).unwrap();
        assert_eq!(r.lhs, 9.0);
        assert!((r.main - 9.0).abs() < 1e-3, "{}", r.main);
        assert!(r.ratio <= 10.0);
    }

    #[test]
    fn rejects_bad_config() {
        let s = delta_series(20);
        assert!(perron_truncated(&s, &PerronCheckConfig::new(1.0, 10.0, 100.0)).is_err());
        assert!(matches!(
            perron_truncated(&s, &PerronCheckConfig::new(2.0, 50.0, 100.0)),
            Err(PerronError::CutoffBelowX { .. })
        ));
        let mut bent = PerronCheckConfig::new(2.0, 10.0, 100.0);
        bent.contour = Contour::BentContour { sigma: SigmaProfile { knots: vec![(0.0, 0.9), (10.0, 0.8)] } };
        assert!(bent.validate().is_err());
    }

    #[test]
    fn bent_contour_identity() {
        let s = DirichletSeries::<f64>::ones(30);
        let mut cfg = PerronCheckConfig::new(2.0, 20.0, 200.0);
        cfg.contour = Contour::BentContour { sigma: SigmaProfile { knots: vec![(0.0, 0.6), (50.0, 0.7), (200.0, 0.8)] } };
        let r = bent_contour_check(&s, &cfg).unwrap();
        assert!(r.identity_gap < 1e-6 * r.vertical.norm(), "{r:?}");
        assert!(r.max_growth_ratio > 0.0);
    }

    #[test]
    fn asymptotic_step() {
        let x = 100.0;
        let r = asymptotic_differentiation(|y| y, |_| 4.0, x).unwrap();
        assert!((r.h - (2.0 * x).sqrt() / 2.0).abs() < 1e-12);
        assert!((r.error_scale - 2.0 * (2.0 * x).sqrt()).abs() < 1e-12);
        assert!(matches!(
            asymptotic_differentiation(|y| y * y, |_| 4.0, x),
            Err(PerronError::PreconditionQ { .. })
        ));
    }

    #[test]
    fn q_threshold_is_e_to_the_fourth() {
        let q = |x: f64| {
            let l = x.ln();
            x.powf(1.0 + 1.0 - 2.0 * l.ln() / l) * l
        };
        let x0 = q_threshold(q, 16.0, 1e6, 4001).unwrap();
        let e4 = 4f64.exp();
        assert!(x0 >= e4 && x0 < e4 * 1.01, "{x0}");
    }

    #[test]
    fn upper_bound_examples() {
        let half = |_: f64| 0.5;
        let x = 100.0f64;
        let v = theorem2_upper_bound(&half, &GrowthFunction::Power { exponent: 1.0 }, x).unwrap();
        let expect = 0.75 * x.ln() + 0.5 * x.ln().ln() + 0.5 * (std::f64::consts::E * 200f64.ln()).ln();
        assert!((v - expect).abs() < 1e-9, "{v} vs {expect}");

        let v = theorem2_upper_bound(&sigma_critical, &GrowthFunction::DoubleExp, 1e6).unwrap();
        assert!(v.is_finite() && v > 1e6f64.ln() - 1e6f64.ln().ln());
        assert!(theorem2_upper_bound(&half, &GrowthFunction::Exp, 2.0).is_ok());

        let too_big = |_: f64| 0.99;
        assert!(matches!(
            theorem2_upper_bound(&too_big, &GrowthFunction::Exp, 100.0),
            Err(PerronError::SigmaOutOfRange { .. })
        ));
    }
}
