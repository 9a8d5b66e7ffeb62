//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands
//! of one real variable, with panels evaluated in parallel and summed by a
//! fixed pairwise tree.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
#[error("quadrature on [{a}, {b}] stalled at error {error:e} (tolerance {tol:e})")]
pub struct QuadratureError {
    pub a: f64,
    pub b: f64,
    pub error: f64,
    pub tol: f64,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    /// Leaf intervals accepted by the adaptive rule.
    pub intervals: usize,
}

fn adapt(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Result<Integral, QuadratureError> {
    let (value, error) = gk15(f, a, b);
    if error <= tol {
        return Ok(Integral { value, error, intervals: 1 });
    }
    let m = 0.5 * (a + b);
    if depth == 0 || m <= a || m >= b {
        return Err(QuadratureError { a, b, error, tol });
    }
    let left = adapt(f, a, m, 0.5 * tol, depth - 1)?;
    let right = adapt(f, m, b, 0.5 * tol, depth - 1)?;
    Ok(Integral {
        value: left.value + right.value,
        error: left.error + right.error,
        intervals: left.intervals + right.intervals,
    })
}

/// Sums in a balanced binary tree over the slice order.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        n => pairwise_sum(&values[..n / 2]) + pairwise_sum(&values[n / 2..]),
    }
}

/// Integrates `f` over consecutive panels `edges[i]..edges[i+1]`, each
/// refined adaptively to a share of `abs_tol` proportional to its width.
pub fn integrate_panels(
    f: impl Fn(f64) -> Complex64 + Sync,
    edges: &[f64],
    abs_tol: f64,
    max_depth: u32,
) -> Result<Integral, QuadratureError> {
    let span = edges.last().unwrap() - edges[0];
    let parts: Vec<Integral> = edges
        .par_windows(2)
        .map(|w| adapt(&f, w[0], w[1], abs_tol * (w[1] - w[0]) / span, max_depth))
        .collect::<Result<_, _>>()?;
    let values: Vec<Complex64> = parts.iter().map(|p| p.value).collect();
    Ok(Integral {
        value: pairwise_sum(&values),
        error: parts.iter().map(|p| p.error).sum(),
        intervals: parts.iter().map(|p| p.intervals).sum(),
    })
}

/// Panel edges on `[0, t_max]`: `[0, step]` followed by dyadic panels
/// `[step·2^k, step·2^{k+1}]`, each cut into equal pieces no wider than
/// `max_width`.
pub fn dyadic_edges(t_max: f64, step: f64, max_width: f64) -> Vec<f64> {
    let mut coarse = vec![0.0];
    let mut right = step.min(t_max);
    loop {
        coarse.push(right);
        if right >= t_max {
            break;
        }
        right = (2.0 * right).min(t_max);
    }
    refine_edges(&coarse, max_width)
}

pub fn refine_edges(coarse: &[f64], max_width: f64) -> Vec<f64> {
    let mut edges = vec![coarse[0]];
    for w in coarse.windows(2) {
        let pieces = ((w[1] - w[0]) / max_width).ceil().max(1.0) as usize;
        for i in 1..=pieces {
            edges.push(if i == pieces { w[1] } else { w[0] + (w[1] - w[0]) * i as f64 / pieces as f64 });
        }
    }
    edges
}
