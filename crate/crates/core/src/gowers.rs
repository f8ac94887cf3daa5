//! Certified estimates of the little Gowers norms
//! `‖f‖_{u^{s+1}(I)} = sup_P |E_{n∈I} f(n) e(P(n))|`, the supremum taken over
//! real polynomials of degree at most `s`.
//!
//! Polynomials are written in the recentred variable `m = n - c`, where `c` is
//! the integer midpoint of `I`. Shifting a coefficient by an integer changes
//! `e(P(n))` by an integer phase, so every coefficient is searched modulo 1
//! on a dyadic grid. The linear coefficient is handled in one zero-padded
//! transform per slice of the higher coefficients.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::approximants::WeightFunction;
use crate::error::{Error, Result};
use crate::numeric::e_ratio;

/// Largest supported degree `s`.
pub const MAX_DEGREE: usize = 3;
/// Budget for `slices · M · log₂ M`.
pub const COST_BUDGET: f64 = 4e10;
/// Longest transform used for the linear slice.
pub const MAX_TRANSFORM: usize = 1 << 24;
/// Minimum zero-padding factor of the linear slice.
pub const OVERSAMPLING: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct UNormEstimate {
    /// Largest correlation found on the grid.
    pub lower_bound: f64,
    /// Certified gap: the norm lies in `[lower_bound, lower_bound + additive_error]`.
    pub additive_error: f64,
    /// Coefficients `a_0..a_s` of the best phase in the variable `n - center`.
    pub witness: Vec<f64>,
    /// Integer midpoint of the interval.
    pub center: i64,
    /// Grid steps actually used (never larger than those requested).
    pub steps: Vec<f64>,
}

impl UNormEstimate {
    pub fn upper_bound(&self) -> f64 {
        self.lower_bound + self.additive_error
    }

    /// True when this interval lies strictly below `other`'s.
    pub fn certainly_below(&self, other: &UNormEstimate) -> bool {
        self.upper_bound() < other.lower_bound
    }
}

/// Steps giving `additive_error ≤ target · E|f|` on an interval of length
/// `len`, spread evenly over the degrees `1..=s`.
pub fn steps_for_error(len: usize, s: usize, target: f64) -> Vec<f64> {
    let radius = (len / 2 + 1) as f64;
    let mut out = vec![1.0];
    for j in 1..=s {
        out.push(target / (s as f64 * std::f64::consts::PI * radius.powi(j as i32)));
    }
    out
}

fn dyadic_bits(step: f64) -> Result<u32> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::range("grid step", format!("{step} (need a positive step)")));
    }
    let bits = (-step.min(1.0).log2()).ceil();
    let mut b = bits.max(0.0) as u32;
    while 2f64.powi(-(b as i32)) > step {
        b += 1;
    }
    Ok(b)
}

/// Candidate ordering: larger value first, then the lexicographically
/// smallest coefficient tuple.
fn better(a: &(f64, Vec<u64>), b: &(f64, Vec<u64>)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Grid estimate of `u^{s+1}` for `values[i] = f(start + i)`; `steps[j]` is the
/// requested step for the degree-`j` coefficient.
pub fn u_norm_estimate(values: &[Complex64], start: i64, s: usize, steps: &[f64]) -> Result<UNormEstimate> {
    let len = values.len();
    if len == 0 {
        return Err(Error::invalid("empty interval"));
    }
    if s > MAX_DEGREE {
        return Err(Error::range("degree s", format!("{s} (at most {MAX_DEGREE})")));
    }
    if steps.len() != s + 1 {
        return Err(Error::invalid(format!("expected {} grid steps, got {}", s + 1, steps.len())));
    }
    let center = start + (len as i64 - 1) / 2;
    let radius = (center - start).max(start + len as i64 - 1 - center) as f64;
    let mean_abs = values.iter().map(|v| v.norm()).sum::<f64>() / len as f64;

    if s == 0 {
        let total: Complex64 = values.iter().sum();
        return Ok(UNormEstimate {
            lower_bound: total.norm() / len as f64,
            additive_error: 0.0,
            witness: vec![0.0],
            center,
            steps: vec![steps[0]],
        });
    }

    let linear_bits = dyadic_bits(steps[1])?;
    let m_len = (len * OVERSAMPLING)
        .next_power_of_two()
        .max(1usize << linear_bits.min(40));
    if m_len > MAX_TRANSFORM {
        return Err(Error::CostBudget {
            estimate: m_len as f64,
            budget: MAX_TRANSFORM as f64,
        });
    }
    let higher_bits: Vec<u32> = steps[2..].iter().map(|&d| dyadic_bits(d)).collect::<Result<_>>()?;
    let slices: f64 = higher_bits.iter().map(|&b| 2f64.powi(b as i32)).product();
    let cost = slices * m_len as f64 * (m_len as f64).log2().max(1.0);
    if cost > COST_BUDGET {
        return Err(Error::CostBudget {
            estimate: cost,
            budget: COST_BUDGET,
        });
    }
    let n_slices = slices as u64;

    let mut effective = vec![steps[0], 1.0 / m_len as f64];
    effective.extend(higher_bits.iter().map(|&b| 2f64.powi(-(b as i32))));
    let additive_error = std::f64::consts::PI
        * mean_abs
        * (1..=s).map(|j| effective[j] * radius.powi(j as i32)).sum::<f64>();

    let fft: Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft_forward(m_len);
    // higher powers of m = n - center, exact
    let powers: Vec<Vec<i128>> = (2..=s)
        .map(|j| {
            (0..len as i64)
                .map(|i| {
                    let m = (start + i - center) as i128;
                    m.pow(j as u32)
                })
                .collect()
        })
        .collect();

    let slice_best = |idx: u64| -> (f64, Vec<u64>) {
        let mut ks = Vec::with_capacity(higher_bits.len());
        let mut rest = idx;
        for &b in higher_bits.iter().rev() {
            ks.push(rest & ((1u64 << b) - 1));
            rest >>= b;
        }
        ks.reverse();
        let mut buf = vec![Complex64::new(0.0, 0.0); m_len];
        for i in 0..len {
            let mut v = values[i];
            for (jj, (&k, &b)) in ks.iter().zip(&higher_bits).enumerate() {
                if k != 0 {
                    v *= e_ratio(k as i128 * powers[jj][i], 1u64 << b);
                }
            }
            buf[i] = v;
        }
        fft.process(&mut buf);
        let mut best = (0.0f64, 0u64);
        for (t, z) in buf.iter().enumerate() {
            let a = z.norm();
            if a > best.0 {
                best = (a, t as u64);
            }
        }
        let mut key = vec![best.1];
        key.extend(ks);
        (best.0, key)
    };

    let (value, key) = (0..n_slices)
        .into_par_iter()
        .map(slice_best)
        .reduce(
            || (-1.0, vec![u64::MAX]),
            |a, b| if better(&b, &a) { b } else { a },
        );

    let mut witness = vec![0.0, key[0] as f64 / m_len as f64];
    for (k, &b) in key[1..].iter().zip(&higher_bits) {
        witness.push(*k as f64 / 2f64.powi(b as i32));
    }
    Ok(UNormEstimate {
        lower_bound: value / len as f64,
        additive_error,
        witness,
        center,
        steps: effective,
    })
}

/// Estimate of `‖w1 - w2‖_{u^{d+1}[N]}`, both weights evaluated at scale `N`.
pub fn weight_unorm_gap(
    w1: &WeightFunction,
    w2: &WeightFunction,
    n: u64,
    d: usize,
    steps: &[f64],
) -> Result<UNormEstimate> {
    if n == 0 {
        return Err(Error::range("N", "need N >= 1"));
    }
    let scale = (n as f64).max(2.0);
    let a = w1.table(n, scale)?;
    let b = w2.table(n, scale)?;
    let values: Vec<Complex64> = (1..=n as usize)
        .map(|i| Complex64::new(a[i] - b[i], 0.0))
        .collect();
    u_norm_estimate(&values, 1, d, steps)
}
