//! Growth functions `F`, `G`, `R`, their Legendre–Fenchel conjugates, the
//! regularisation `F_∞`, stationary points `x_k` and the entire function
//! `M_F(z) = Σ z^n e^{-F*(n)} / n²`.
//!
//! Every family is evaluated in the log domain first (`ln_eval`), since the
//! interesting arguments push values far past the `f64` exponent range.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GrowthError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: &'static str, reason: String },
    #[error("argument {0} outside [0, ∞)")]
    NegativeArgument(f64),
    #[error("{0} is not superlinear (F(x)/x stays bounded on sampled points)")]
    NotSuperlinear(String),
    #[error("no stationary point found for slope {slope:e}")]
    NoRoot { slope: f64 },
    #[error("{0} carries no analytic derivative")]
    NoDerivative(String),
    #[error("value overflows f64: ln|M_F| ≈ {log_magnitude:e}")]
    Overflow { log_magnitude: f64 },
    #[error("series did not reach tolerance {tol:e} within {terms} terms")]
    NonConvergent { tol: f64, terms: usize },
}

/// User-supplied growth function: must be non-negative and non-decreasing.
#[derive(Clone)]
pub struct CustomGrowth {
    pub name: String,
    pub func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for CustomGrowth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomGrowth").field("name", &self.name).finish()
    }
}

impl PartialEq for CustomGrowth {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && Arc::ptr_eq(&self.func, &other.func)
    }
}

/// The `F` and `G` families of the four theorem cases, plus the auxiliary
/// functions used by the proofs and the tests.
///
/// Below each formula's natural domain the function is extended by its
/// value at the left endpoint, which keeps it monotone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum GrowthFunction {
    /// `exp((log log t)^{1+ε/2-δ})`, natural on `t >= e`.
    Case1F { eps: f64, delta: f64 },
    /// `exp exp(log z / (1+ε/2-δ))`, natural on `z >= 1`.
    Case1G { eps: f64, delta: f64 },
    /// `exp exp(log log t / log log log t)`, natural on `t >= e^{e^e}`.
    Case2F,
    /// `exp(log z · log log z)`, natural on `z >= e`.
    Case2G,
    /// `(log log t)^A`, natural on `t >= e`.
    Case3F {
        #[serde(rename = "A")]
        a: f64,
    },
    /// `exp exp(z / A)`.
    Case3G {
        #[serde(rename = "A")]
        a: f64,
    },
    /// `exp exp((log log t)^α)`, natural on `t >= e`.
    Case4F { alpha: f64 },
    /// `exp((log z)^{1/α})`, natural on `z >= 1`.
    Case4G { alpha: f64 },
    /// `R(x) = e^{e^x}`.
    DoubleExp,
    /// `e^x`.
    Exp,
    /// `x^p`.
    Power { exponent: f64 },
    #[serde(skip)]
    Custom(CustomGrowth),
}

/// One of the four `(F, σ)` pairs, with the `G` used against it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum TheoremCase {
    Case1 { eps: f64, delta: f64 },
    Case2,
    Case3 {
        #[serde(rename = "A")]
        a: f64,
    },
    Case4 { alpha: f64 },
}

impl TheoremCase {
    pub fn f(&self) -> GrowthFunction {
        match *self {
            TheoremCase::Case1 { eps, delta } => GrowthFunction::Case1F { eps, delta },
            TheoremCase::Case2 => GrowthFunction::Case2F,
            TheoremCase::Case3 { a } => GrowthFunction::Case3F { a },
            TheoremCase::Case4 { alpha } => GrowthFunction::Case4F { alpha },
        }
    }

    pub fn g(&self) -> GrowthFunction {
        match *self {
            TheoremCase::Case1 { eps, delta } => GrowthFunction::Case1G { eps, delta },
            TheoremCase::Case2 => GrowthFunction::Case2G,
            TheoremCase::Case3 { a } => GrowthFunction::Case3G { a },
            TheoremCase::Case4 { alpha } => GrowthFunction::Case4G { alpha },
        }
    }

    pub fn validate(&self) -> Result<(), GrowthError> {
        self.g().validate()
    }

    pub fn index(&self) -> u8 {
        match self {
            TheoremCase::Case1 { .. } => 1,
            TheoremCase::Case2 => 2,
            TheoremCase::Case3 { .. } => 3,
            TheoremCase::Case4 { .. } => 4,
        }
    }
}

/// Value of a growth function, saturated at `f64::MAX` on overflow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthValue {
    pub value: f64,
    pub overflow: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugateResult {
    pub y: f64,
    pub value: f64,
    pub argmax_x: f64,
}

/// `F_∞(x) = inf_{ε>0} x^ε F(1/ε)`, reported with its minimiser.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FInfinity {
    pub x: f64,
    pub value: f64,
    pub ln_value: f64,
    pub epsilon: f64,
}

const LN_F64_MAX: f64 = 709.782712893384;

fn p_case1(eps: f64, delta: f64) -> f64 {
    1.0 + eps / 2.0 - delta
}

/// `e^{e^e}`, left end of the natural domain of the case-2 `F`.
fn case2_f_start() -> f64 {
    E.powf(E).exp()
}

impl GrowthFunction {
    pub fn name(&self) -> String {
        match self {
            GrowthFunction::Case1F { .. } => "case1_f".into(),
            GrowthFunction::Case1G { .. } => "case1_g".into(),
            GrowthFunction::Case2F => "case2_f".into(),
            GrowthFunction::Case2G => "case2_g".into(),
            GrowthFunction::Case3F { .. } => "case3_f".into(),
            GrowthFunction::Case3G { .. } => "case3_g".into(),
            GrowthFunction::Case4F { .. } => "case4_f".into(),
            GrowthFunction::Case4G { .. } => "case4_g".into(),
            GrowthFunction::DoubleExp => "double_exp".into(),
            GrowthFunction::Exp => "exp".into(),
            GrowthFunction::Power { .. } => "power".into(),
            GrowthFunction::Custom(c) => c.name.clone(),
        }
    }

    pub fn custom(name: impl Into<String>, func: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        GrowthFunction::Custom(CustomGrowth { name: name.into(), func: Arc::new(func) })
    }

    pub fn validate(&self) -> Result<(), GrowthError> {
        let bad = |family: &'static str, reason: String| Err(GrowthError::InvalidParams { family, reason });
        match *self {
            GrowthFunction::Case1F { eps, delta } | GrowthFunction::Case1G { eps, delta } => {
                if !(eps > 0.0 && eps.is_finite()) {
                    return bad("case1", format!("ε = {eps} must be positive"));
                }
                if !(delta > 0.0 && delta < eps / 2.0 + 1.0) {
                    return bad("case1", format!("δ = {delta} must lie in (0, ε/2 + 1)"));
                }
            }
            GrowthFunction::Case3F { a } | GrowthFunction::Case3G { a } => {
                if !(a > 0.0 && a.is_finite()) {
                    return bad("case3", format!("A = {a} must be positive"));
                }
            }
            GrowthFunction::Case4F { alpha } | GrowthFunction::Case4G { alpha } => {
                if !(alpha > 0.0 && alpha < 1.0) {
                    return bad("case4", format!("α = {alpha} must lie in (0, 1)"));
                }
            }
            GrowthFunction::Power { exponent } => {
                if !(exponent > 0.0 && exponent.is_finite()) {
                    return bad("power", format!("exponent {exponent} must be positive"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Natural logarithm of the function value (`-∞` where it vanishes).
    pub fn ln_eval(&self, x: f64) -> f64 {
        match *self {
            GrowthFunction::Case1F { eps, delta } => {
                if x <= E {
                    0.0
                } else {
                    x.ln().ln().powf(p_case1(eps, delta))
                }
            }
            GrowthFunction::Case1G { eps, delta } => x.max(1.0).powf(1.0 / p_case1(eps, delta)),
            GrowthFunction::Case2F => {
                let u = x.max(case2_f_start()).ln().ln();
                (u / u.ln()).exp()
            }
            GrowthFunction::Case2G => {
                if x <= E {
                    0.0
                } else {
                    let l = x.ln();
                    l * l.ln()
                }
            }
            GrowthFunction::Case3F { a } => {
                if x <= E {
                    f64::NEG_INFINITY
                } else {
                    a * x.ln().ln().ln()
                }
            }
            GrowthFunction::Case3G { a } => (x / a).exp(),
            GrowthFunction::Case4F { alpha } => {
                if x <= E {
                    1.0
                } else {
                    x.ln().ln().powf(alpha).exp()
                }
            }
            GrowthFunction::Case4G { alpha } => {
                if x <= 1.0 {
                    0.0
                } else {
                    x.ln().powf(1.0 / alpha)
                }
            }
            GrowthFunction::DoubleExp => x.exp(),
            GrowthFunction::Exp => x,
            GrowthFunction::Power { exponent } => exponent * x.ln(),
            GrowthFunction::Custom(ref c) => (c.func)(x).ln(),
        }
    }

    /// Function value; saturates at `f64::MAX` with `overflow` set.
    pub fn eval(&self, x: f64) -> Result<GrowthValue, GrowthError> {
        if !(x >= 0.0) {
            return Err(GrowthError::NegativeArgument(x));
        }
        let ln = self.ln_eval(x);
        if ln > LN_F64_MAX || ln.is_nan() && x.is_infinite() {
            return Ok(GrowthValue { value: f64::MAX, overflow: true });
        }
        let value = ln.exp();
        if value.is_infinite() {
            Ok(GrowthValue { value: f64::MAX, overflow: true })
        } else {
            Ok(GrowthValue { value, overflow: false })
        }
    }

    /// Saturating evaluation for internal use; `x` must be non-negative.
    fn value(&self, x: f64) -> f64 {
        let ln = self.ln_eval(x);
        if ln > LN_F64_MAX {
            f64::MAX
        } else {
            ln.exp()
        }
    }

    /// Log of the derivative, `-∞` on flat stretches; `None` when the family
    /// has no analytic derivative.
    pub fn ln_derivative(&self, x: f64) -> Option<f64> {
        let ninf = f64::NEG_INFINITY;
        let d = match *self {
            GrowthFunction::Case1F { eps, delta } => {
                if x <= E {
                    ninf
                } else {
                    let p = p_case1(eps, delta);
                    let (l, u) = (x.ln(), x.ln().ln());
                    u.powf(p) + p.ln() + (p - 1.0) * u.ln() - l - u
                }
            }
            GrowthFunction::Case1G { eps, delta } => {
                if x <= 1.0 {
                    ninf
                } else {
                    let q = 1.0 / p_case1(eps, delta);
                    x.powf(q) + q.ln() + (q - 1.0) * x.ln()
                }
            }
            GrowthFunction::Case2F => {
                if x <= case2_f_start() {
                    ninf
                } else {
                    let (l, u) = (x.ln(), x.ln().ln());
                    let lu = u.ln();
                    let w = u / lu;
                    w.exp() + w + (lu - 1.0).ln() - 2.0 * lu.ln() - l - u
                }
            }
            GrowthFunction::Case2G => {
                if x <= E {
                    ninf
                } else {
                    let l = x.ln();
                    l * l.ln() + (l.ln() + 1.0).ln() - l
                }
            }
            GrowthFunction::Case3F { a } => {
                if x <= E {
                    ninf
                } else {
                    let (l, u) = (x.ln(), x.ln().ln());
                    a.ln() + (a - 1.0) * u.ln() - l - u
                }
            }
            GrowthFunction::Case3G { a } => (x / a).exp() + x / a - a.ln(),
            GrowthFunction::Case4F { alpha } => {
                if x <= E {
                    ninf
                } else {
                    let (l, u) = (x.ln(), x.ln().ln());
                    let ua = u.powf(alpha);
                    ua.exp() + ua + alpha.ln() + (alpha - 1.0) * u.ln() - l - u
                }
            }
            GrowthFunction::Case4G { alpha } => {
                if x <= 1.0 {
                    ninf
                } else {
                    let r = 1.0 / alpha;
                    let l = x.ln();
                    l.powf(r) + r.ln() + (r - 1.0) * l.ln() - l
                }
            }
            GrowthFunction::DoubleExp => x.exp() + x,
            GrowthFunction::Exp => x,
            GrowthFunction::Power { exponent } => exponent.ln() + (exponent - 1.0) * x.ln(),
            GrowthFunction::Custom(_) => return None,
        };
        Some(d)
    }

    pub fn derivative(&self, x: f64) -> Option<f64> {
        self.ln_derivative(x).map(f64::exp)
    }

    /// Left end of the natural domain; the function is differentiable beyond it.
    pub fn natural_start(&self) -> f64 {
        match self {
            GrowthFunction::Case1F { .. }
            | GrowthFunction::Case3F { .. }
            | GrowthFunction::Case4F { .. }
            | GrowthFunction::Case2G => E,
            GrowthFunction::Case2F => case2_f_start(),
            GrowthFunction::Case1G { .. } | GrowthFunction::Case4G { .. } => 1.0,
            _ => 0.0,
        }
    }

    /// Families known to be convex on all of `[0, ∞)` (flat extension included).
    pub fn is_globally_convex(&self) -> bool {
        match *self {
            GrowthFunction::Case1G { eps, delta } => p_case1(eps, delta) >= 1.0,
            GrowthFunction::Case2G
            | GrowthFunction::Case3G { .. }
            | GrowthFunction::Case4G { .. }
            | GrowthFunction::DoubleExp
            | GrowthFunction::Exp => true,
            GrowthFunction::Power { exponent } => exponent >= 1.0,
            _ => false,
        }
    }

    /// Sampling test of `F(x)/x → ∞` at `x = 2^j`, `j = 1..=1000`.
    pub fn is_superlinear(&self) -> bool {
        let ratio = |j: i32| self.ln_eval(2f64.powi(j)) - j as f64 * std::f64::consts::LN_2;
        let samples: Vec<f64> = (1..=1000).map(ratio).collect();
        if samples.iter().any(|r| r.is_nan()) {
            return false;
        }
        let tail = &samples[samples.len() * 2 / 3..];
        let rising = tail
            .windows(2)
            .all(|w| w[1] == f64::INFINITY || w[1] >= w[0] - 1e-9 * w[0].abs().max(1.0));
        let last = *samples.last().unwrap();
        rising && (last == f64::INFINITY || last - samples[samples.len() / 2] > 1000f64.ln())
    }

    fn require_superlinear(&self) -> Result<(), GrowthError> {
        self.validate()?;
        if self.is_superlinear() {
            Ok(())
        } else {
            Err(GrowthError::NotSuperlinear(self.name()))
        }
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// Maximises a function on `[a, b]` assumed unimodal; returns the argmax.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 4.0 * f64::EPSILON * (a.abs() + b.abs()) + f64::MIN_POSITIVE {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        c
    } else {
        d
    }
}

const COARSE_SAMPLES: usize = 64;
const DENSE_SAMPLES: usize = 20_000;

/// `F*(y) = sup_{x >= 0} (xy - F(x))`.
pub fn conjugate(g: &GrowthFunction, y: f64) -> Result<ConjugateResult, GrowthError> {
    if !(y >= 0.0 && y.is_finite()) {
        return Err(GrowthError::NegativeArgument(y));
    }
    g.require_superlinear()?;
    Ok(conjugate_unchecked(g, y))
}

fn conjugate_unchecked(g: &GrowthFunction, y: f64) -> ConjugateResult {
    let phi = |x: f64| x * y - g.value(x);
    let f0 = g.value(0.0);

    // Beyond the first x with chord slope (F(x) - F(0))/x > y the objective
    // stays below its value at 0 for convex F.
    let mut hi = 1.0;
    for _ in 0..2000 {
        if (g.value(hi) - f0) / hi > y {
            break;
        }
        hi *= 2.0;
    }

    let scan = |count: usize| -> (usize, Vec<f64>) {
        let xs: Vec<f64> = (0..=count).map(|i| hi * i as f64 / count as f64).collect();
        let best = xs
            .iter()
            .enumerate()
            .max_by(|a, b| phi(*a.1).total_cmp(&phi(*b.1)))
            .map(|(i, _)| i)
            .unwrap();
        (best, xs)
    };

    let (mut best, mut xs) = scan(COARSE_SAMPLES);
    let convex = g.is_globally_convex() || {
        let fs: Vec<f64> = xs.iter().map(|&x| g.value(x)).collect();
        fs.windows(3).all(|w| w[0] - 2.0 * w[1] + w[2] >= -1e-12 * w[1].abs().max(1.0))
    };
    if !convex {
        let dense = scan(DENSE_SAMPLES);
        best = dense.0;
        xs = dense.1;
    }
    let lo_b = xs[best.saturating_sub(1)];
    let hi_b = xs[(best + 1).min(xs.len() - 1)];
    let mut x = golden_max(phi, lo_b, hi_b);

    // Polish with the analytic derivative: bisect on F'(x) < y.
    if g.ln_derivative(x).is_some() && y > 0.0 {
        let ln_y = y.ln();
        let below = |x: f64| g.ln_derivative(x).unwrap() < ln_y;
        let (mut a, mut b) = (lo_b, hi_b);
        if !below(a) {
            if g.is_globally_convex() || phi(a) >= phi(x) {
                x = a;
            }
        } else if !below(b) {
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if below(m) {
                    a = m;
                } else {
                    b = m;
                }
            }
            let cand = if phi(a) >= phi(b) { a } else { b };
            if phi(cand) >= phi(x) {
                x = cand;
            }
        }
    }
    for cand in [0.0, lo_b, hi_b] {
        if phi(cand) > phi(x) + 4.0 * f64::EPSILON * phi(x).abs() {
            x = cand;
        }
    }
    ConjugateResult { y, value: phi(x), argmax_x: x }
}

/// The unique `x_k` with `F'(x_k) = k` on the convex part of `F`.
pub fn stationary_point(g: &GrowthFunction, k: f64) -> Result<f64, GrowthError> {
    g.validate()?;
    if !(k >= 1.0 && k.is_finite()) {
        return Err(GrowthError::NoRoot { slope: k });
    }
    stationary_point_ln(g, k.ln())
}

/// [`stationary_point`] with the slope given as `ln k`, for slopes beyond `f64`.
pub fn stationary_point_ln(g: &GrowthFunction, ln_k: f64) -> Result<f64, GrowthError> {
    let slope = ln_k.exp();
    let d = |x: f64| g.ln_derivative(x).ok_or_else(|| GrowthError::NoDerivative(g.name()));
    let mut lo = g.natural_start().max(f64::MIN_POSITIVE);
    if d(lo)? >= ln_k {
        // Still verify just past the threshold; a kink there carries no root.
        let nudged = lo * (1.0 + 1e-12) + 1e-300;
        if d(nudged)? >= ln_k {
            return Err(GrowthError::NoRoot { slope });
        }
        lo = nudged;
    }
    let mut hi = lo.max(1.0) * 2.0;
    let mut grown = 0;
    while d(hi)? < ln_k {
        lo = hi;
        hi *= 2.0;
        grown += 1;
        if grown > 2000 || !hi.is_finite() {
            return Err(GrowthError::NoRoot { slope });
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if d(mid)? < ln_k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (dl, dh) = (d(lo)?, d(hi)?);
    let x = if (dl - ln_k).abs() <= (dh - ln_k).abs() { lo } else { hi };
    if (d(x)? - ln_k).abs() > 1e-9 {
        return Err(GrowthError::NoRoot { slope });
    }
    Ok(x)
}

/// `F_∞(x) = inf_{0<ε<=1} x^ε F(1/ε)`, minimised in the log domain over
/// `u = 1/ε >= 1`.
pub fn f_infinity(g: &GrowthFunction, x: f64) -> Result<FInfinity, GrowthError> {
    g.validate()?;
    if !(x >= 2.0) {
        return Err(GrowthError::NegativeArgument(x));
    }
    let ln_x = x.ln();
    let objective = |v: f64| {
        let u = v.exp();
        ln_x / u + g.ln_eval(u)
    };
    let at_one = objective(0.0);
    // Past the first u with ln F(u) >= objective(0) nothing can improve.
    let mut v_hi: f64 = 1.0;
    while v_hi < 700.0 && g.ln_eval(v_hi.exp()) < at_one {
        v_hi *= 2.0;
    }
    let v_hi = v_hi.min(700.0);
    let count = 400;
    let vs: Vec<f64> = (0..=count).map(|i| v_hi * i as f64 / count as f64).collect();
    let best = vs
        .iter()
        .enumerate()
        .min_by(|a, b| objective(*a.1).total_cmp(&objective(*b.1)))
        .map(|(i, _)| i)
        .unwrap();
    let lo = vs[best.saturating_sub(1)];
    let hi = vs[(best + 1).min(count)];
    let mut v = golden_max(|v| -objective(v), lo, hi);
    if objective(vs[best]) < objective(v) {
        v = vs[best];
    }
    let ln_value = objective(v);
    Ok(FInfinity { x, value: ln_value.exp(), ln_value, epsilon: (-v).exp() })
}

/// `log₊ x = max(0, log x)`.
pub fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

/// Complex number stored as `mantissa · e^{log_scale}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaledComplex {
    pub mantissa: Complex64,
    pub log_scale: f64,
}

impl ScaledComplex {
    pub fn ln_norm(&self) -> f64 {
        self.mantissa.norm().ln() + self.log_scale
    }

    pub fn to_complex(&self) -> Option<Complex64> {
        if self.log_scale > LN_F64_MAX {
            return None;
        }
        let v = self.mantissa * self.log_scale.exp();
        (v.re.is_finite() && v.im.is_finite()).then_some(v)
    }
}

/// Evaluator of `M_F(z) = Σ_{n>=1} z^n e^{-F*(n)} / n²` that caches `F*(n)`.
#[derive(Debug, Clone)]
pub struct MfEvaluator {
    growth: GrowthFunction,
    /// `(F*(n), argmax)` for `n = 1..=len`.
    table: Vec<(f64, f64)>,
    max_terms: usize,
}

const DEFAULT_MAX_TERMS: usize = 20_000_000;

impl MfEvaluator {
    pub fn new(growth: GrowthFunction) -> Result<Self, GrowthError> {
        growth.require_superlinear()?;
        Ok(Self { growth, table: Vec::new(), max_terms: DEFAULT_MAX_TERMS })
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn growth(&self) -> &GrowthFunction {
        &self.growth
    }

    /// `(F*(n), x_n)` for `n >= 1`.
    pub fn conjugate_at(&mut self, n: usize) -> (f64, f64) {
        assert!(n >= 1);
        while self.table.len() < n {
            let y = (self.table.len() + 1) as f64;
            let c = conjugate_unchecked(&self.growth, y);
            self.table.push((c.value, c.argmax_x));
        }
        self.table[n - 1]
    }

    /// `e^{-F*(n)} / n²`, the Taylor coefficient of `M_F`.
    pub fn coefficient(&mut self, n: usize) -> f64 {
        let (c, _) = self.conjugate_at(n);
        (-c).exp() / (n as f64 * n as f64)
    }

    /// Sums the series until the remaining tail is provably below
    /// `exp(ln_tol)`. With `x_N` the maximiser at `N`, Fenchel–Young gives
    /// `|term_m| <= e^{F(x_N) - m(x_N - log|z|)} / m²` for `m > N`, a
    /// geometric tail once `x_N > log|z|`.
    fn sum(&mut self, z: Complex64, ln_tol: f64) -> Result<ScaledComplex, GrowthError> {
        if z == Complex64::new(0.0, 0.0) {
            return Ok(ScaledComplex { mantissa: Complex64::new(0.0, 0.0), log_scale: 0.0 });
        }
        let ln_abs = z.norm().ln();
        let arg = z.arg();
        let mut reference = f64::NEG_INFINITY;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 1..=self.max_terms {
            let (conj, x_n) = self.conjugate_at(n);
            let nf = n as f64;
            let ln_term = nf * ln_abs - conj - 2.0 * nf.ln();
            if ln_term > reference {
                acc *= (reference - ln_term).exp();
                reference = ln_term;
            }
            acc += Complex64::from_polar((ln_term - reference).exp(), nf * arg);

            let gap = x_n - ln_abs;
            if gap > 0.0 {
                let q = (-gap).exp();
                let ln_tail = ln_term + 2.0 * (nf / (nf + 1.0)).ln() + q.ln() - (1.0 - q).ln();
                if ln_tail <= ln_tol {
                    return Ok(ScaledComplex { mantissa: acc, log_scale: reference });
                }
            }
        }
        Err(GrowthError::NonConvergent { tol: ln_tol.exp(), terms: self.max_terms })
    }

    /// `M_F(z)` with absolute error at most `tol`.
    pub fn eval(&mut self, z: Complex64, tol: f64) -> Result<Complex64, GrowthError> {
        let bound = self.growth.value(log_plus(z.norm()));
        let ln_bound = (PI * PI / 6.0).ln() + self.growth.ln_eval(log_plus(z.norm())).exp();
        if bound >= f64::MAX || ln_bound > LN_F64_MAX {
            return Err(GrowthError::Overflow { log_magnitude: ln_bound });
        }
        let scaled = self.sum(z, tol.ln())?;
        scaled.to_complex().ok_or(GrowthError::Overflow { log_magnitude: scaled.ln_norm() })
    }

    /// `M_F(z)` in scaled form, with error at most `rel_tol · e^{F(log₊|z|)}`.
    pub fn eval_scaled(&mut self, z: Complex64, rel_tol: f64) -> Result<ScaledComplex, GrowthError> {
        let exponent = self.growth.value(log_plus(z.norm()));
        self.sum(z, rel_tol.ln() + exponent)
    }
}

/// `M_F(z)` to absolute tolerance `tol`.
pub fn mf_eval(g: &GrowthFunction, z: Complex64, tol: f64) -> Result<Complex64, GrowthError> {
    MfEvaluator::new(g.clone())?.eval(z, tol)
}

/// Natural log of the bound `(π²/6) e^{F(log₊|z|)}` on `|M_F(z)|`.
pub fn mf_ln_bound(g: &GrowthFunction, z: Complex64) -> f64 {
    (PI * PI / 6.0).ln() + g.value(log_plus(z.norm()))
}
