//! Shared numerical helpers: the standard character, exact phase
//! reduction, compensated and thread-count independent summation.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

/// Fixed chunk length for parallel reductions. Chunk boundaries never depend
/// on the number of worker threads, so results are bit-identical for any
/// pool size.
pub const REDUCTION_CHUNK: usize = 1 << 12;

/// The standard character `e(θ) = exp(-2πiθ)`.
pub fn e(theta: f64) -> Complex64 {
    let t = theta.rem_euclid(1.0);
    let (s, c) = (TAU * t).sin_cos();
    Complex64::new(c, -s)
}

/// `e(num/den)` with exact values at multiples of a quarter turn.
pub fn e_ratio(num: i128, den: u64) -> Complex64 {
    assert!(den > 0, "e_ratio: zero denominator");
    let den = den as i128;
    let r = num.rem_euclid(den);
    let scaled = 4 * r;
    let quadrant = scaled / den;
    let rest = scaled - quadrant * den;
    // angle within the quadrant, as a fraction of a full turn, in [0, 1/4)
    let x = rest as f64 / (4.0 * den as f64);
    let (s, c) = (TAU * x).sin_cos();
    let z = match quadrant {
        0 => Complex64::new(c, s),
        1 => Complex64::new(-s, c),
        2 => Complex64::new(-c, -s),
        _ => Complex64::new(s, -c),
    };
    z.conj()
}

/// Fractional part of `xi * p`, computed from the exact binary expansion of
/// `xi` so that large integer arguments do not lose the phase.
pub fn frac_mul(xi: f64, p: i128) -> f64 {
    if !xi.is_finite() {
        return f64::NAN;
    }
    if xi == 0.0 || p == 0 {
        return 0.0;
    }
    let bits = xi.to_bits();
    let sign: i128 = if bits >> 63 == 0 { 1 } else { -1 };
    let exponent = ((bits >> 52) & 0x7ff) as i32;
    let mantissa = if exponent == 0 {
        (bits & 0xf_ffff_ffff_ffff) << 1
    } else {
        (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000
    };
    // xi = sign * mantissa * 2^exp2
    let exp2 = exponent - 1075;
    if exp2 >= 0 {
        return 0.0;
    }
    let shift = (-exp2) as u32;
    let Some(prod) = (mantissa as i128)
        .checked_mul(p)
        .and_then(|v| v.checked_mul(sign))
    else {
        return (xi * p as f64).rem_euclid(1.0);
    };
    let value = if shift >= 127 {
        (prod as f64 * 2f64.powi(-(shift as i32))).rem_euclid(1.0)
    } else {
        let modulus = 1i128 << shift;
        let r = prod.rem_euclid(modulus);
        r as f64 * 2f64.powi(-(shift as i32))
    };
    if value >= 1.0 {
        0.0
    } else {
        value
    }
}

/// `e(xi * p)` with the phase reduced exactly.
pub fn e_mul(xi: f64, p: i128) -> Complex64 {
    e(frac_mul(xi, p))
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(Complex64::new(other.re, other.im));
        self.add(Complex64::new(other.re_c, other.im_c));
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re + self.re_c, self.im + self.im_c)
    }
}

/// Compensated sum of `f(i)` over `range`, evaluated in parallel over fixed
/// chunks and merged in index order.
pub fn par_sum<F>(range: std::ops::Range<u64>, f: F) -> Complex64
where
    F: Fn(u64) -> Complex64 + Sync,
{
    if range.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let chunk = REDUCTION_CHUNK as u64;
    let n_chunks = (range.end - range.start).div_ceil(chunk);
    let partials: Vec<CompensatedSum> = (0..n_chunks)
        .into_par_iter()
        .map(|c| {
            let lo = range.start + c * chunk;
            let hi = (lo + chunk).min(range.end);
            let mut acc = CompensatedSum::new();
            for i in lo..hi {
                acc.add(f(i));
            }
            acc
        })
        .collect();
    let mut total = CompensatedSum::new();
    for p in &partials {
        total.merge(p);
    }
    total.value()
}

/// Real counterpart of [`par_sum`].
pub fn par_sum_real<F>(range: std::ops::Range<u64>, f: F) -> f64
where
    F: Fn(u64) -> f64 + Sync,
{
    par_sum(range, |i| Complex64::new(f(i), 0.0)).re
}

/// Japanese bracket `⟨x⟩ = (1 + x²)^{1/2}`.
pub fn japanese(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

/// Logarithmic scale `Log N = ⌊log₂ N⌋` for `N ≥ 1`.
pub fn log_scale(n: f64) -> u32 {
    assert!(n >= 1.0, "log_scale requires N >= 1");
    let mut l = n.log2().floor() as i32;
    // guard against rounding of log2 near powers of two
    while l > 0 && 2f64.powi(l) > n {
        l -= 1;
    }
    while 2f64.powi(l + 1) <= n {
        l += 1;
    }
    l.max(0) as u32
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
