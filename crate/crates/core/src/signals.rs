//! Finitely supported signals on ℤ, the multilinear averages
//! `A_{N,w}`, `Ã_{N,w}`, their duals `Ã^{*j}`, and the bilinear pairing.

use std::fmt::Write as _;
use std::ops::Range;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::approximants::WeightFunction;
use crate::error::{Error, Result};
use crate::numeric::{CompensatedSum, REDUCTION_CHUNK};
use crate::polynomial::PolynomialFamily;

/// Largest output window an averaging operator will materialise.
pub const MAX_OUTPUT_SUPPORT: u64 = 1 << 26;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex sequence on ℤ, zero outside `[offset, offset + values.len())`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalZ {
    offset: i64,
    values: Vec<Complex64>,
}

impl SignalZ {
    /// An empty window is normalised to offset 0.
    pub fn new(offset: i64, values: Vec<Complex64>) -> Self {
        let offset = if values.is_empty() { 0 } else { offset };
        Self { offset, values }
    }

    pub fn zero() -> Self {
        Self::new(0, Vec::new())
    }

    /// `δ_x`.
    pub fn delta(x: i64) -> Self {
        Self::new(x, vec![Complex64::new(1.0, 0.0)])
    }

    pub fn from_real(offset: i64, values: &[f64]) -> Self {
        Self::new(offset, values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Stored window `[offset, offset + len)`.
    pub fn window(&self) -> Range<i64> {
        self.offset..self.offset + self.values.len() as i64
    }

    pub fn get(&self, x: i64) -> Complex64 {
        let i = x.wrapping_sub(self.offset);
        if i >= 0 && (i as usize) < self.values.len() {
            self.values[i as usize]
        } else {
            ZERO
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == ZERO)
    }

    /// Same signal with leading and trailing zeros removed.
    pub fn trimmed(&self) -> Self {
        let Some(first) = self.values.iter().position(|v| *v != ZERO) else {
            return Self::zero();
        };
        let last = self.values.iter().rposition(|v| *v != ZERO).unwrap();
        Self::new(self.offset + first as i64, self.values[first..=last].to_vec())
    }

    /// Pointwise sum on the smallest window covering both inputs.
    pub fn add(&self, other: &SignalZ) -> SignalZ {
        if self.values.is_empty() {
            return other.clone();
        }
        if other.values.is_empty() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = self.window().end.max(other.window().end);
        let values = (lo..hi).map(|x| self.get(x) + other.get(x)).collect();
        SignalZ::new(lo, values)
    }

    pub fn scale(&self, c: Complex64) -> SignalZ {
        SignalZ::new(self.offset, self.values.iter().map(|v| v * c).collect())
    }

    /// `x ↦ f(x - t)`.
    pub fn shift(&self, t: i64) -> SignalZ {
        SignalZ::new(self.offset + t, self.values.clone())
    }

    /// CSV with header `x,re,im`, one row per stored position, floats in
    /// 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,re,im\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "{},{:.16e},{:.16e}", self.offset + i as i64, v.re, v.im);
        }
        s
    }

    /// Inverse of [`SignalZ::to_csv`]. Rows may skip positions (they are
    /// zero) but must be in increasing `x` order.
    pub fn from_csv(text: &str) -> Result<SignalZ> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::invalid("empty signal CSV"))?;
        if header.trim() != "x,re,im" {
            return Err(Error::invalid(format!("expected header 'x,re,im', got '{header}'")));
        }
        let mut rows: Vec<(i64, Complex64)> = Vec::new();
        for line in lines {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || Error::invalid(format!("bad signal row '{line}'"));
            if cols.len() != 3 {
                return Err(bad());
            }
            let x: i64 = cols[0].parse().map_err(|_| bad())?;
            let re: f64 = cols[1].parse().map_err(|_| bad())?;
            let im: f64 = cols[2].parse().map_err(|_| bad())?;
            if let Some(&(prev, _)) = rows.last() {
                if x <= prev {
                    return Err(Error::invalid("signal rows must have increasing x"));
                }
            }
            rows.push((x, Complex64::new(re, im)));
        }
        let Some(&(lo, _)) = rows.first() else {
            return Ok(SignalZ::zero());
        };
        let hi = rows.last().unwrap().0;
        let mut values = vec![ZERO; (hi - lo + 1) as usize];
        for (x, v) in rows {
            values[(x - lo) as usize] = v;
        }
        Ok(SignalZ::new(lo, values))
    }
}

/// Bilinear pairing `⟨f, g⟩ = Σ_x f(x)·g(x)` (no conjugation).
pub fn inner_product(f: &SignalZ, g: &SignalZ) -> Complex64 {
    let lo = f.offset.max(g.offset);
    let hi = f.window().end.min(g.window().end);
    let mut acc = CompensatedSum::new();
    for x in lo..hi {
        acc.add(f.get(x) * g.get(x));
    }
    acc.value()
}

/// Index set of an average: `J_N = [N] \ [N/2]` when truncated, else `[N]`.
pub fn index_range(n: f64, truncated: bool) -> Result<Range<u64>> {
    if !(n >= 1.0) || !n.is_finite() {
        return Err(Error::range("scale N", format!("{n} (need floor(N) >= 1)")));
    }
    let hi = n.floor() as u64;
    let lo = if truncated {
        (n / 2.0).floor() as u64 + 1
    } else {
        1
    };
    Ok(lo..hi + 1)
}

/// `x ↦ prefactor · Σ_t coef_t · Π_i g_i(x - shift_{t,i})`.
fn shifted_product_sum(
    terms: &[(Complex64, Vec<i64>)],
    signals: &[SignalZ],
    prefactor: f64,
) -> Result<SignalZ> {
    if signals.iter().any(|s| s.values.is_empty()) || terms.is_empty() {
        return Ok(SignalZ::zero());
    }
    // support of each term: intersection of the shifted input windows
    let spans: Vec<Option<(i64, i64)>> = terms
        .iter()
        .map(|(_, shifts)| {
            let mut lo = i64::MIN;
            let mut hi = i64::MAX;
            for (s, g) in shifts.iter().zip(signals) {
                let w = g.window();
                lo = lo.max(w.start.checked_add(*s)?);
                hi = hi.min(w.end.checked_add(*s)?);
            }
            (lo < hi).then_some((lo, hi))
        })
        .collect();
    let Some(out_lo) = spans.iter().flatten().map(|s| s.0).min() else {
        return Ok(SignalZ::zero());
    };
    let out_hi = spans.iter().flatten().map(|s| s.1).max().unwrap();
    let width = (out_hi as i128 - out_lo as i128) as u64;
    if width > MAX_OUTPUT_SUPPORT {
        return Err(Error::range(
            "output support",
            format!("{width} points exceeds 2^26; use the cyclic-group model for large runs"),
        ));
    }
    let mut out = vec![ZERO; width as usize];
    out.par_chunks_mut(REDUCTION_CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| {
            let c_lo = out_lo + (c * REDUCTION_CHUNK) as i64;
            let c_hi = c_lo + chunk.len() as i64;
            for ((coef, shifts), span) in terms.iter().zip(&spans) {
                let Some((lo, hi)) = *span else { continue };
                let lo = lo.max(c_lo);
                let hi = hi.min(c_hi);
                for x in lo..hi {
                    let mut prod = *coef;
                    for (s, g) in shifts.iter().zip(signals) {
                        prod *= g.get(x - s);
                    }
                    chunk[(x - c_lo) as usize] += prod;
                }
            }
        });
    for v in &mut out {
        *v *= prefactor;
    }
    Ok(SignalZ::new(out_lo, out))
}

fn check_arity(fam: &PolynomialFamily, signals: &[SignalZ]) -> Result<()> {
    if signals.len() != fam.k() {
        return Err(Error::invalid(format!(
            "expected {} signals for a family of {} polynomials, got {}",
            fam.k(),
            fam.k(),
            signals.len()
        )));
    }
    Ok(())
}

fn weighted_terms(
    w: &WeightFunction,
    n: f64,
    truncated: bool,
    shifts: impl Fn(i64) -> Result<Vec<i64>>,
) -> Result<Vec<(Complex64, Vec<i64>)>> {
    let range = index_range(n, truncated)?;
    let table = w.table(range.end - 1, n.max(2.0))?;
    let mut terms = Vec::new();
    for m in range {
        let wm = table[m as usize];
        if wm == 0.0 {
            continue;
        }
        terms.push((Complex64::new(wm, 0.0), shifts(m as i64)?));
    }
    Ok(terms)
}

/// `A_{N,w}(f_1..f_k)(x) = (1/⌊N⌋) Σ_{n∈[N]} w(n) Π_i f_i(x - P_i(n))`, or
/// the truncated `Ã_{N,w}` summing over `J_N = [N] \ [N/2]`.
pub fn multi_average(
    w: &WeightFunction,
    fam: &PolynomialFamily,
    signals: &[SignalZ],
    n: f64,
    truncated: bool,
) -> Result<SignalZ> {
    check_arity(fam, signals)?;
    let terms = weighted_terms(w, n, truncated, |m| fam.eval_all(m))?;
    shifted_product_sum(&terms, signals, 1.0 / n.floor())
}

/// Dual operator in slot `j` (0-based):
/// `x ↦ (1/⌊N⌋) Σ_n w(n) Π_i g_i(x - 1_{i≠j} P_i(n) + P_j(n))`.
pub fn dual_average(
    j: usize,
    w: &WeightFunction,
    fam: &PolynomialFamily,
    signals: &[SignalZ],
    n: f64,
    truncated: bool,
) -> Result<SignalZ> {
    check_arity(fam, signals)?;
    if j >= fam.k() {
        return Err(Error::range("dual slot", format!("{j} (family has {} slots)", fam.k())));
    }
    let terms = weighted_terms(w, n, truncated, |m| {
        let p = fam.eval_all(m)?;
        let pj = p[j];
        p.iter()
            .enumerate()
            .map(|(i, &pi)| {
                if i == j {
                    pj.checked_neg()
                } else {
                    pi.checked_sub(pj)
                }
                .ok_or(Error::Overflow { n: m, index: i + 1 })
            })
            .collect()
    })?;
    shifted_product_sum(&terms, signals, 1.0 / n.floor())
}
