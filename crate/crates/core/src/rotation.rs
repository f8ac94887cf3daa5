//! Circle rotations `T x = x + α mod 1` and convergence experiments for the
//! weighted polynomial multiple averages with trigonometric observables.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64;

use crate::approximants::WeightFunction;
use crate::arithmetic::ArithTables;
use crate::error::{Error, Result};
use crate::numeric::{e, frac_mul, par_sum};
use crate::polynomial::PolynomialFamily;
use crate::signals::index_range;
use crate::variation::{variation_norm, LacunarySet};

/// Largest number of frequencies in one observable.
pub const MAX_TRIG_TERMS: usize = 64;
/// Denominators up to this bound count as "small" when flagging rational angles.
pub const RATIONAL_DENOMINATOR_BOUND: u64 = 1000;
pub const RATIONAL_TOLERANCE: f64 = 1e-12;

/// Trigonometric polynomial `x ↦ Σ_k c_k e(kx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    terms: Vec<(i64, Complex64)>,
}

impl TrigPoly {
    pub fn new(mut terms: Vec<(i64, Complex64)>) -> Result<Self> {
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(i64, Complex64)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => merged.push((k, c)),
            }
        }
        if merged.len() > MAX_TRIG_TERMS {
            return Err(Error::range(
                "trigonometric polynomial",
                format!("{} frequencies (at most {MAX_TRIG_TERMS})", merged.len()),
            ));
        }
        Ok(Self { terms: merged })
    }

    pub fn one() -> Self {
        Self {
            terms: vec![(0, Complex64::new(1.0, 0.0))],
        }
    }

    /// The character `x ↦ e(kx)`.
    pub fn character(k: i64) -> Self {
        Self {
            terms: vec![(k, Complex64::new(1.0, 0.0))],
        }
    }

    pub fn terms(&self) -> &[(i64, Complex64)] {
        &self.terms
    }

    /// Zero-frequency coefficient, i.e. `∫_0^1 f`.
    pub fn mean(&self) -> Complex64 {
        self.terms
            .iter()
            .filter(|t| t.0 == 0)
            .map(|t| t.1)
            .sum()
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|&(k, c)| c * e(frac_mul(x, k as i128)))
            .sum()
    }
}

/// Formats as `k:re:im` terms joined by `+`, e.g. `1:1:0+0:0.5:0`.
impl fmt::Display for TrigPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{k}:{}:{}", c.re, c.im))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Accepts `one`, `e` (the character `e(x)`), `e:k`, or `+`-joined terms
/// `k:re[:im]`.
impl FromStr for TrigPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse trigonometric polynomial '{s}'"));
        match s {
            "one" | "1" => return Ok(Self::one()),
            "e" => return Ok(Self::character(1)),
            _ => {}
        }
        if let Some(k) = s.strip_prefix("e:") {
            return Ok(Self::character(k.parse().map_err(|_| bad())?));
        }
        let mut terms = Vec::new();
        for part in s.split('+') {
            let fields: Vec<&str> = part.split(':').map(str::trim).collect();
            let (k, re, im) = match fields.as_slice() {
                [k, re] => (k, re, &"0"),
                [k, re, im] => (k, re, im),
                _ => return Err(bad()),
            };
            terms.push((
                k.parse::<i64>().map_err(|_| bad())?,
                Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?),
            ));
        }
        Self::new(terms)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationSystem {
    pub alpha: f64,
}

impl RotationSystem {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::invalid("rotation angle must be finite"));
        }
        Ok(Self { alpha })
    }

    /// `T^m x`, computed with exact phase reduction.
    pub fn orbit_point(&self, x: f64, m: i128) -> f64 {
        (x.rem_euclid(1.0) + frac_mul(self.alpha, m)).rem_euclid(1.0)
    }

    /// A convergent `p/q` with `q ≤ RATIONAL_DENOMINATOR_BOUND` and
    /// `|α - p/q| ≤ RATIONAL_TOLERANCE`, if one exists.
    pub fn rational_approximation(&self) -> Option<(i64, u64)> {
        let mut x = self.alpha;
        let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0u64, x.floor() as i64, 1u64);
        loop {
            if (self.alpha - p1 as f64 / q1 as f64).abs() <= RATIONAL_TOLERANCE {
                return Some((p1, q1));
            }
            let frac = x - x.floor();
            if frac == 0.0 {
                return Some((p1, q1));
            }
            x = 1.0 / frac;
            let a = x.floor() as i64;
            let (p2, q2) = (a * p1 + p0, (a as u64).checked_mul(q1)?.checked_add(q0)?);
            if q2 > RATIONAL_DENOMINATOR_BOUND {
                return None;
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
        }
    }
}

fn check_funcs(fam: &PolynomialFamily, funcs: &[TrigPoly]) -> Result<()> {
    if funcs.len() != fam.k() {
        return Err(Error::invalid(format!(
            "expected {} observables, got {}",
            fam.k(),
            funcs.len()
        )));
    }
    Ok(())
}

/// Rejects families whose values on `[1, top]` could leave 64-bit range.
fn check_range(fam: &PolynomialFamily, top: u64) -> Result<()> {
    for (i, p) in fam.polys().iter().enumerate() {
        if p.abs_bound(top as f64) >= i64::MAX as f64 {
            return Err(Error::Overflow { n: top as i64, index: i + 1 });
        }
    }
    Ok(())
}

fn orbit_product(sys: &RotationSystem, funcs: &[TrigPoly], x: f64, pv: &[i64]) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    for (f, &p) in funcs.iter().zip(pv) {
        prod *= f.eval(sys.orbit_point(x, p as i128));
    }
    prod
}

/// `E_{n∈[N]} w(n) Π_i f_i(x + P_i(n)α)` with prefactor `1/⌊N⌋`.
pub fn rotation_average(
    sys: &RotationSystem,
    w: &WeightFunction,
    fam: &PolynomialFamily,
    funcs: &[TrigPoly],
    n: f64,
    x: f64,
) -> Result<Complex64> {
    check_funcs(fam, funcs)?;
    let range = index_range(n, false)?;
    let table = w.table(range.end - 1, n.max(2.0))?;
    check_range(fam, range.end - 1)?;
    let total = par_sum(range, |m| {
        let wm = table[m as usize];
        if wm == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let pv = fam.eval_all(m as i64).expect("bounded by check_range");
        orbit_product(sys, funcs, x, &pv) * wm
    });
    Ok(total / n.floor())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: f64,
    pub value: Complex64,
    pub deviation: f64,
    /// `𝐕²` of the values up to and including this row.
    pub v2_so_far: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// `Π_i mean(f_i)`.
    pub limit: Complex64,
    /// Set when `α` is (numerically) rational with a small denominator, where
    /// the limit formula does not apply.
    pub rational_warning: bool,
}

impl ConvergenceReport {
    /// Columns `N, re, im, deviation, v2_so_far`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("N,re,im,deviation,v2_so_far\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                r.n, r.value.re, r.value.im, r.deviation, r.v2_so_far
            );
        }
        s
    }
}

/// Values of the average along the scales, their deviation from
/// `Π_i mean(f_i)` and the running `𝐕²` norm.
pub fn convergence_series(
    sys: &RotationSystem,
    w: &WeightFunction,
    fam: &PolynomialFamily,
    funcs: &[TrigPoly],
    scales: &LacunarySet,
    x: f64,
) -> Result<ConvergenceReport> {
    check_funcs(fam, funcs)?;
    if scales.lambda() < 1.5 {
        return Err(Error::range(
            "lacunarity",
            format!("{} (need λ >= 1.5)", scales.lambda()),
        ));
    }
    let limit: Complex64 = funcs.iter().map(TrigPoly::mean).product();
    let mut values = Vec::new();
    let mut rows = Vec::new();
    for &n in scales.values() {
        let value = rotation_average(sys, w, fam, funcs, n, x)?;
        values.push(value);
        rows.push(ConvergenceRow {
            n,
            value,
            deviation: (value - limit).norm(),
            v2_so_far: variation_norm(&values, 2.0)?.1,
        });
    }
    Ok(ConvergenceReport {
        rows,
        limit,
        rational_warning: sys.rational_approximation().is_some(),
    })
}

/// `|(ln N / N) Σ_{p≤N} Π f_i(x + P_i(p)α) - (1/N) Σ_{n≤N} Λ(n) Π f_i(x + P_i(n)α)|`.
pub fn prime_vs_mangoldt_gap(
    sys: &RotationSystem,
    fam: &PolynomialFamily,
    funcs: &[TrigPoly],
    n: f64,
    x: f64,
) -> Result<f64> {
    check_funcs(fam, funcs)?;
    if !(n >= 10.0) {
        return Err(Error::range("N", format!("{n} (need N >= 10)")));
    }
    let top = n.floor() as u64;
    check_range(fam, top)?;
    let tables = ArithTables::build(top)?;
    let lambda = tables.mangoldt_table();
    let diff = par_sum(1..top + 1, |m| {
        let lm = lambda[m as usize];
        if lm == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let pv = fam.eval_all(m as i64).expect("bounded by check_range");
        let prod = orbit_product(sys, funcs, x, &pv);
        let prime_part = if tables.is_prime(m) { (n.floor()).ln() } else { 0.0 };
        prod * (prime_part - lm)
    });
    Ok(diff.norm() / n.floor())
}
