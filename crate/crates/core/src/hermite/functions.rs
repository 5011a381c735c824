//! Normalized Hermite functions `h_k(x) = (√π 2^k k!)^{-1/2} H_k(x) e^{-x²/2}`.

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Largest degree accepted by the public evaluation and basis APIs.
pub const MAX_DEGREE: usize = 512;

// Below this x², h_0 = π^{-1/4} e^{-x²/2} stays a normal double and the plain
// recurrence is exact to rounding.
const PLAIN_LIMIT: f64 = 1300.0;
const RESCALE: f64 = 1e100;

/// `h_k(x)` by the normalized three-term recurrence.
pub fn eval_hermite_1d(k: usize, x: f64) -> Result<f64> {
    if k > MAX_DEGREE {
        return Err(Error::UnsupportedDegree {
            degree: k,
            cap: MAX_DEGREE,
        });
    }
    let (cur, _, log_scale) = scaled_pair(k, x);
    Ok(unscale(cur, log_scale))
}

/// Fills `out[k] = h_k(x)` for `k < out.len()`.
pub fn hermite_row(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    let h0_log = -0.5 * x * x - 0.25 * PI.ln();
    if x * x < PLAIN_LIMIT {
        let mut prev = 0.0;
        let mut cur = h0_log.exp();
        out[0] = cur;
        for k in 1..out.len() {
            let next = step(k - 1, x, cur, prev);
            prev = cur;
            cur = next;
            out[k] = cur;
        }
        return;
    }
    let mut log_scale = h0_log;
    let mut prev = 0.0;
    let mut cur = 1.0;
    out[0] = unscale(cur, log_scale);
    for k in 1..out.len() {
        let next = step(k - 1, x, cur, prev);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
        out[k] = unscale(cur, log_scale);
    }
}

/// Returns `(a, b, s)` with `h_n(x) = a·e^s` and `h_{n-1}(x) = b·e^s`
/// (`b = 0` for `n = 0`). The common scale keeps the pair representable far
/// outside the oscillatory region, where `h_0` itself underflows.
pub(crate) fn scaled_pair(n: usize, x: f64) -> (f64, f64, f64) {
    let mut log_scale = -0.5 * x * x - 0.25 * PI.ln();
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let next = step(k, x, cur, prev);
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE {
            cur /= RESCALE;
            prev /= RESCALE;
            log_scale += RESCALE.ln();
        }
    }
    (cur, prev, log_scale)
}

// h_{k+1} = √(2/(k+1)) x h_k − √(k/(k+1)) h_{k−1}
#[inline]
fn step(k: usize, x: f64, cur: f64, prev: f64) -> f64 {
    let kf = k as f64;
    (2.0 / (kf + 1.0)).sqrt() * x * cur - (kf / (kf + 1.0)).sqrt() * prev
}

#[inline]
fn unscale(v: f64, log_scale: f64) -> f64 {
    if v == 0.0 {
        0.0
    } else {
        (v.abs().ln() + log_scale).exp().copysign(v)
    }
}
