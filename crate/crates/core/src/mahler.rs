//! Mahler measure of the Alexander polynomial, by roots and by integrating
//! `log |Delta|` over the unit circle, and the large-`N` comparison with
//! `(1/N) log q_N`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::invariants::{q_relative, InvariantError};
use crate::json::int_string;
use crate::poly::{IntPoly, LaurentPoly};

pub const ROOT_TOL: f64 = 1e-10;
pub const DEFAULT_SAMPLES: usize = 4096;
/// Differences below this are treated as rounding noise by the tail check.
pub const NOISE_FLOOR: f64 = 1e-14;

const MAX_ITER: usize = 1000;
const MAX_DEPTH: u32 = 60;
const SAMPLE_RETRIES: usize = 4;
/// Absolute error target for every accepted sub-panel. It is not halved on
/// subdivision: only the panels next to a zero keep splitting, so the total
/// error stays a small multiple of this.
const PANEL_TOL: f64 = 1e-16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MahlerError {
    #[error("the zero polynomial has no Mahler measure")]
    ZeroPolynomial,
    #[error("root finding needs degree at least 1")]
    DegreeTooLow,
    #[error("root iteration did not converge after {0} steps")]
    NonConvergence(usize),
    #[error("log |Delta| is singular at a sample point after {0} offsets")]
    SingularSample(usize),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residual_bound: f64,
}

fn horner(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Evaluation scale at `z`: `sum |a_i| |z|^i`.
fn eval_scale(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

/// All complex roots by Aberth-Ehrlich iteration from a fixed circle of
/// radius `1 + max |a_i / a_n|`. Each root satisfies
/// `|p(root)| <= tol * sum |a_i| |root|^i`; the largest such bound is
/// reported.
pub fn poly_roots(p: &IntPoly, tol: f64) -> Result<RootSet, MahlerError> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(MahlerError::DegreeTooLow),
    };
    let a: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
    let lead = a[deg];
    let radius = 1.0 + a[..deg].iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / deg as f64 + 0.4))
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITER {
        let mut biggest = 0.0f64;
        for k in 0..deg {
            let (pv, dp) = horner(&a, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dp;
            let repulsion: Complex64 = (0..deg).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if biggest < 1e-15 {
            converged = true;
            break;
        }
    }

    let mut residual_bound = 0.0f64;
    for &root in &z {
        let bound = horner(&a, root).0.norm() / eval_scale(&a, root);
        if !converged && bound > tol {
            return Err(MahlerError::NonConvergence(MAX_ITER));
        }
        residual_bound = residual_bound.max(bound);
    }
    if residual_bound > tol {
        return Err(MahlerError::NonConvergence(MAX_ITER));
    }
    Ok(RootSet { roots: z, residual_bound })
}

/// `|a| * prod max(1, |lambda|)` over the roots of the shifted polynomial.
pub fn mahler_measure_roots(delta: &LaurentPoly) -> Result<f64, MahlerError> {
    if delta.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    let (p, _) = delta.to_int_poly();
    let lead = p.leading().and_then(|c| c.to_f64()).unwrap_or(f64::INFINITY).abs();
    if p.degree() == Some(0) {
        return Ok(lead);
    }
    let roots = poly_roots(&p, ROOT_TOL)?;
    Ok(roots.roots.iter().fold(lead, |acc, r| acc * r.norm().max(1.0)))
}

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
const G_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gauss_kronrod<F: Fn(f64) -> Option<f64>>(f: &F, a: f64, b: f64) -> Option<(f64, f64)> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let centre = f(mid)?;
    let mut kronrod = GK_WEIGHTS[7] * centre;
    let mut gauss = G_WEIGHTS[3] * centre;
    for i in 0..7 {
        let x = half * GK_NODES[i];
        let pair = f(mid - x)? + f(mid + x)?;
        kronrod += GK_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += G_WEIGHTS[i / 2] * pair;
        }
    }
    Some((kronrod * half, ((kronrod - gauss) * half).abs()))
}

fn adaptive<F: Fn(f64) -> Option<f64>>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Option<f64> {
    let (value, err) = gauss_kronrod(f, a, b)?;
    // Below a few ulps of `a` the nodes collide and the estimate is noise.
    let resolvable = b - a > 64.0 * f64::EPSILON * a.abs().max(1.0);
    if err <= tol || depth >= MAX_DEPTH || !resolvable {
        return Some(value);
    }
    let mid = 0.5 * (a + b);
    Some(adaptive(f, a, mid, tol, depth + 1)? + adaptive(f, mid, b, tol, depth + 1)?)
}

/// `exp` of the mean of `log |Delta(e^{2 pi i t})|` over `t` in `[0, 1]`.
///
/// The interval is cut into `n_samples` equal panels, each integrated by
/// adaptive Gauss-Kronrod so that logarithmic singularities at unit-circle
/// zeros are resolved. A node landing exactly on a zero shifts the panel
/// grid by a fraction of a panel and retries.
pub fn mahler_measure_integral(delta: &LaurentPoly, n_samples: usize) -> Result<f64, MahlerError> {
    if delta.is_zero() {
        return Err(MahlerError::ZeroPolynomial);
    }
    let n = n_samples.max(1);
    let width = 1.0 / n as f64;
    let f = |t: f64| -> Option<f64> {
        let v = delta.eval_complex(Complex64::from_polar(1.0, 2.0 * PI * t)).ok()?.norm();
        (v > 0.0 && v.is_finite()).then(|| v.ln())
    };
    'attempt: for attempt in 0..SAMPLE_RETRIES {
        let offset = attempt as f64 * 0.381966 * width;
        let mut total = 0.0;
        for i in 0..n {
            let a = offset + i as f64 * width;
            match adaptive(&f, a, a + width, PANEL_TOL, 0) {
                Some(v) => total += v,
                None => continue 'attempt,
            }
        }
        return Ok(total.exp());
    }
    Err(MahlerError::SingularSample(SAMPLE_RETRIES))
}

/// Natural log of a positive big integer without overflowing `f64`.
pub fn big_ln(v: &BigInt) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let top: BigInt = v >> shift;
    top.to_f64().map_or(f64::INFINITY, f64::ln) + shift as f64 * std::f64::consts::LN_2
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub n: usize,
    pub q: BigInt,
    /// `(1/N) log q_N`; absent when the product vanishes.
    pub normalized_log: Option<f64>,
    pub log_alpha: f64,
    pub difference: Option<f64>,
    pub degenerate: bool,
}

impl AsymptoticRow {
    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "q_N": int_string(&self.q),
            "normalized_log": self.normalized_log,
            "log_alpha": self.log_alpha,
            "difference": self.difference,
            "degenerate": self.degenerate,
        })
    }
}

fn asymptotic_row(delta: &LaurentPoly, n: usize, log_alpha: f64) -> Result<AsymptoticRow, MahlerError> {
    let rel = q_relative(delta, n)?;
    let normalized_log = (!rel.degenerate).then(|| big_ln(&rel.value) / n as f64);
    Ok(AsymptoticRow {
        n,
        difference: normalized_log.map(|v| v - log_alpha),
        normalized_log,
        log_alpha,
        q: rel.value,
        degenerate: rel.degenerate,
    })
}

/// One row per `N`, computed in parallel and returned in input order.
pub fn asymptotic_table(delta: &LaurentPoly, n_values: &[usize]) -> Result<Vec<AsymptoticRow>, MahlerError> {
    let log_alpha = mahler_measure_roots(delta)?.ln();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(n_values.len().max(1));
    let mut slots: Vec<Option<Result<AsymptoticRow, MahlerError>>> = vec![None; n_values.len()];
    std::thread::scope(|scope| {
        let chunks: Vec<_> = slots.chunks_mut(n_values.len().div_ceil(workers).max(1)).collect();
        let mut start = 0;
        for chunk in chunks {
            let ns = &n_values[start..start + chunk.len()];
            start += chunk.len();
            scope.spawn(move || {
                // Interleave large and small N so the work stays balanced.
                for (slot, &n) in chunk.iter_mut().zip(ns) {
                    *slot = Some(asymptotic_row(delta, n, log_alpha));
                }
            });
        }
    });
    slots.into_iter().map(|s| s.expect("every slot filled")).collect()
}

/// Odd `N` from 3 up to `n_max`.
pub fn odd_ladder(n_max: usize) -> Vec<usize> {
    (3..=n_max).step_by(2).collect()
}

/// Whether `|difference|` is non-increasing over the nondegenerate rows with
/// `N > from_n`, ignoring changes below `NOISE_FLOOR`.
pub fn tail_is_monotone(rows: &[AsymptoticRow], from_n: usize) -> bool {
    let tail: Vec<f64> = rows
        .iter()
        .filter(|r| r.n > from_n)
        .filter_map(|r| r.difference.map(f64::abs))
        .collect();
    tail.windows(2).all(|w| w[1] <= w[0] || w[1] < NOISE_FLOOR)
}

pub fn table_csv(rows: &[AsymptoticRow]) -> String {
    let mut out = String::from("N,q_N,normalized_log,log_alpha,difference,degenerate\n");
    let opt = |v: Option<f64>| v.map_or(String::new(), |x| format!("{x:.17e}"));
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.17e},{},{}",
            r.n,
            r.q,
            opt(r.normalized_log),
            r.log_alpha,
            opt(r.difference),
            r.degenerate
        );
    }
    out
}

pub fn table_json(knot: &str, rows: &[AsymptoticRow]) -> Value {
    json!({
        "schema": 1,
        "knot": knot,
        "rows": rows.iter().map(AsymptoticRow::to_json).collect::<Vec<_>>(),
    })
}

/// Largest absolute coefficient, the scale used for residual checks.
pub fn coefficient_scale(p: &IntPoly) -> f64 {
    p.coeffs().iter().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}
