//! Weight functions: the unit weight, von Mangoldt, the Cramér and
//! Heath-Brown approximants, the scale-linked Cramér weight `Λ_N`, and
//! pointwise differences of these.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::arithmetic::{euler_phi, mangoldt, moebius, ArithTables};
use crate::error::{Error, Result};
use crate::numeric::{gcd, japanese, log_scale, CompensatedSum};

/// Largest `ω` for which the primorial `∏_{p≤ω} p` fits in 64 bits.
pub const MAX_PRIMORIAL_OMEGA: f64 = 52.0;

/// Default truncation exponent for the truncated Heath-Brown weight.
pub const DEFAULT_C_CIRC: f64 = 0.1;

/// Default `C0` for scale-linked experiments.
pub const DEFAULT_C0: u32 = 4;

fn primes_up_to(x: f64) -> Vec<u64> {
    if x < 2.0 {
        return Vec::new();
    }
    let limit = x.floor() as u64;
    (2..=limit)
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

/// `W / φ(W) = ∏_{p≤ω} p/(p-1)`, used by every Cramér evaluation.
#[derive(Debug, Clone)]
struct CramerModel {
    primes: Vec<u64>,
    prefactor: f64,
    primorial: Option<u64>,
    vanishes: bool,
}

impl CramerModel {
    fn new(omega: f64) -> Result<Self> {
        if !(omega >= 1.0) || !omega.is_finite() {
            return Err(Error::range("cutoff omega", format!("{omega} (must be >= 1)")));
        }
        let primes = primes_up_to(omega);
        let prefactor = primes
            .iter()
            .fold(1.0, |acc, &p| acc * (p as f64 / (p as f64 - 1.0)));
        let primorial = primes.iter().try_fold(1u64, |acc, &p| acc.checked_mul(p));
        Ok(Self {
            primes,
            prefactor,
            primorial,
            vanishes: omega == 1.0,
        })
    }

    fn coprime(&self, n: u64) -> bool {
        match self.primorial {
            Some(w) => gcd(n, w) == 1,
            None => self.primes.iter().all(|&p| n % p != 0),
        }
    }

    fn value(&self, n: u64) -> f64 {
        if self.vanishes || !self.coprime(n) {
            0.0
        } else {
            self.prefactor
        }
    }

    fn table(&self, n_max: u64) -> Vec<f64> {
        let len = n_max as usize + 1;
        if self.vanishes {
            return vec![0.0; len];
        }
        let mut out = vec![self.prefactor; len];
        out[0] = 0.0;
        for &p in &self.primes {
            let mut m = p as usize;
            while m < len {
                out[m] = 0.0;
                m += p as usize;
            }
        }
        out
    }
}

/// Cramér approximant `(W/φ(W))·1_{gcd(n,W)=1}` with `W = ∏_{p≤ω} p`,
/// evaluated through the primorial itself.
///
/// Rejects `ω > 52`, where `W` no longer fits in 64 bits; use
/// [`cramer_weight_factored`] there.
pub fn cramer_weight(n: u64, omega: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("cramer_weight requires n >= 1"));
    }
    if !(omega >= 1.0) {
        return Err(Error::range("cutoff omega", format!("{omega} (must be >= 1)")));
    }
    if omega > MAX_PRIMORIAL_OMEGA {
        return Err(Error::range(
            "cutoff omega",
            format!(
                "{omega}: primorial exceeds 64 bits for omega > {MAX_PRIMORIAL_OMEGA}; \
                 use the factored gcd path (cramer_weight_factored)"
            ),
        ));
    }
    if omega == 1.0 {
        return Ok(0.0);
    }
    let primes = primes_up_to(omega);
    let w: u64 = primes.iter().product();
    let phi_w: u64 = primes.iter().map(|p| p - 1).product();
    Ok(if gcd(n, w) == 1 {
        w as f64 / phi_w as f64
    } else {
        0.0
    })
}

/// Cramér approximant with gcd tested prime by prime; valid for any `ω`.
pub fn cramer_weight_factored(n: u64, omega: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("cramer_weight requires n >= 1"));
    }
    Ok(CramerModel::new(omega)?.value(n))
}

/// Optional truncation of the Heath-Brown weight: values with modulus above
/// `ω^{c∘·ε}` are replaced by 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub epsilon: f64,
    pub c_circ: f64,
}

impl Truncation {
    pub fn new(epsilon: f64) -> Self {
        Self {
            epsilon,
            c_circ: DEFAULT_C_CIRC,
        }
    }

    pub fn threshold(&self, omega: f64) -> f64 {
        omega.powf(self.c_circ * self.epsilon)
    }
}

#[derive(Debug, Clone)]
struct HeathBrownModel {
    /// `(q, μ(q)/φ(q), c_q(r) for r in 0..q)` over squarefree `q < ω`.
    terms: Vec<(u64, f64, Vec<f64>)>,
    threshold: Option<f64>,
}

impl HeathBrownModel {
    fn new(omega: f64, truncation: Option<Truncation>) -> Result<Self> {
        if !(omega >= 1.0) || !omega.is_finite() {
            return Err(Error::range("cutoff omega", format!("{omega} (must be >= 1)")));
        }
        if let Some(t) = truncation {
            if !(t.epsilon > 0.0) || !(t.c_circ > 0.0) {
                return Err(Error::invalid("truncation epsilon and c_circ must be positive"));
            }
        }
        let mut terms = Vec::new();
        let mut q = 1u64;
        while (q as f64) < omega {
            let mu = moebius(q);
            if mu != 0 {
                let phi_q = euler_phi(q);
                let periodic = (0..q)
                    .map(|r| ramanujan_closed(q, phi_q, r))
                    .collect::<Vec<_>>();
                terms.push((q, mu as f64 / phi_q as f64, periodic));
            }
            q += 1;
        }
        Ok(Self {
            terms,
            threshold: truncation.map(|t| t.threshold(omega)),
        })
    }

    fn value(&self, n: u64) -> f64 {
        let mut acc = CompensatedSum::new();
        for (q, coef, periodic) in &self.terms {
            acc.add((coef * periodic[(n % q) as usize]).into());
        }
        let v = acc.value().re;
        match self.threshold {
            Some(t) if v.abs() > t => 0.0,
            _ => v,
        }
    }
}

fn ramanujan_closed(q: u64, phi_q: u64, n: u64) -> f64 {
    let g = gcd(n, q);
    let r = q / g;
    let mu = moebius(r);
    if mu == 0 {
        0.0
    } else {
        mu as f64 * (phi_q / euler_phi(r)) as f64
    }
}

/// Heath-Brown approximant `Σ_{q<ω} μ(q)/φ(q)·c_q(n)`, optionally truncated.
pub fn heath_brown_weight(n: u64, omega: f64, truncation: Option<Truncation>) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("heath_brown_weight requires n >= 1"));
    }
    Ok(HeathBrownModel::new(omega, truncation)?.value(n))
}

/// Cutoff `exp((Log N)^{1/C0})` of the scale-linked weight `Λ_N`.
pub fn scale_linked_omega(scale: f64, c0: u32) -> Result<f64> {
    if !(scale >= 2.0) {
        return Err(Error::range("scale N", format!("{scale} (must be >= 2)")));
    }
    if c0 < 2 {
        return Err(Error::range("C0", format!("{c0} (must be >= 2)")));
    }
    Ok((log_scale(scale) as f64).powf(1.0 / c0 as f64).exp())
}

/// `Λ_N(n) = Λ_{Cramér, exp((Log N)^{1/C0})}(n)`.
pub fn scale_linked_cramer(n: u64, scale: f64, c0: u32) -> Result<f64> {
    cramer_weight_factored(n, scale_linked_omega(scale, c0)?)
}

/// Closed description of a weight `w: ℤ₊ → ℝ`.
///
/// `ScaleLinkedCramer` depends on the averaging scale `N`; every evaluation
/// entry point therefore takes the scale alongside `n`, and the remaining
/// variants ignore it.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightFunction {
    Unit,
    VonMangoldt,
    Cramer { omega: f64 },
    HeathBrown { omega: f64 },
    HeathBrownTruncated { omega: f64, truncation: Truncation },
    ScaleLinkedCramer { c0: u32 },
    Difference(Box<WeightFunction>, Box<WeightFunction>),
}

impl WeightFunction {
    pub fn cramer(omega: f64) -> Self {
        Self::Cramer { omega }
    }

    pub fn heath_brown(omega: f64) -> Self {
        Self::HeathBrown { omega }
    }

    pub fn lambda_n(c0: u32) -> Self {
        Self::ScaleLinkedCramer { c0 }
    }

    pub fn difference(left: WeightFunction, right: WeightFunction) -> Self {
        Self::Difference(Box::new(left), Box::new(right))
    }

    /// Cutoff of the Heath-Brown component, used for the moment bound.
    fn heath_brown_omega(&self) -> Option<f64> {
        match self {
            Self::HeathBrown { omega } | Self::HeathBrownTruncated { omega, .. } => Some(*omega),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Unit | Self::VonMangoldt => Ok(()),
            Self::Cramer { omega } => CramerModel::new(*omega).map(|_| ()),
            Self::HeathBrown { omega } => {
                if *omega >= 1.0 && omega.is_finite() {
                    Ok(())
                } else {
                    Err(Error::range("cutoff omega", format!("{omega} (must be >= 1)")))
                }
            }
            Self::HeathBrownTruncated { omega, truncation } => {
                Self::HeathBrown { omega: *omega }.validate()?;
                if truncation.epsilon > 0.0 && truncation.c_circ > 0.0 {
                    Ok(())
                } else {
                    Err(Error::invalid("truncation epsilon and c_circ must be positive"))
                }
            }
            Self::ScaleLinkedCramer { c0 } => {
                if *c0 >= 2 {
                    Ok(())
                } else {
                    Err(Error::range("C0", format!("{c0} (must be >= 2)")))
                }
            }
            Self::Difference(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    /// `w(n)` at averaging scale `scale`.
    pub fn eval(&self, n: u64, scale: f64) -> Result<f64> {
        if n == 0 {
            return Err(Error::invalid("weights are defined for n >= 1"));
        }
        match self {
            Self::Unit => Ok(1.0),
            Self::VonMangoldt => mangoldt(n),
            Self::Cramer { omega } => cramer_weight_factored(n, *omega),
            Self::HeathBrown { omega } => heath_brown_weight(n, *omega, None),
            Self::HeathBrownTruncated { omega, truncation } => {
                heath_brown_weight(n, *omega, Some(*truncation))
            }
            Self::ScaleLinkedCramer { c0 } => scale_linked_cramer(n, scale, *c0),
            Self::Difference(a, b) => Ok(a.eval(n, scale)? - b.eval(n, scale)?),
        }
    }

    /// Values `w(0..=n_max)` at scale `scale`, index 0 set to 0.
    pub fn table(&self, n_max: u64, scale: f64) -> Result<Vec<f64>> {
        let len = n_max as usize + 1;
        let mut out = match self {
            Self::Unit => vec![1.0; len],
            Self::VonMangoldt => {
                if n_max < 2 {
                    vec![0.0; len]
                } else {
                    ArithTables::build(n_max)?.mangoldt_table()
                }
            }
            Self::Cramer { omega } => CramerModel::new(*omega)?.table(n_max),
            Self::ScaleLinkedCramer { c0 } => {
                CramerModel::new(scale_linked_omega(scale, *c0)?)?.table(n_max)
            }
            Self::HeathBrown { omega } => hb_table(HeathBrownModel::new(*omega, None)?, len),
            Self::HeathBrownTruncated { omega, truncation } => {
                hb_table(HeathBrownModel::new(*omega, Some(*truncation))?, len)
            }
            Self::Difference(a, b) => {
                let left = a.table(n_max, scale)?;
                let right = b.table(n_max, scale)?;
                left.iter().zip(&right).map(|(x, y)| x - y).collect()
            }
        };
        out[0] = 0.0;
        Ok(out)
    }
}

fn hb_table(model: HeathBrownModel, len: usize) -> Vec<f64> {
    (0..len as u64)
        .into_par_iter()
        .map(|n| if n == 0 { 0.0 } else { model.value(n) })
        .collect()
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

impl fmt::Display for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unit => write!(f, "unit"),
            Self::VonMangoldt => write!(f, "mangoldt"),
            Self::Cramer { omega } => write!(f, "cramer:{}", fmt_num(*omega)),
            Self::HeathBrown { omega } => write!(f, "hb:{}", fmt_num(*omega)),
            Self::HeathBrownTruncated { omega, truncation } => write!(
                f,
                "hbt:{}:{}:{}",
                fmt_num(*omega),
                fmt_num(truncation.epsilon),
                fmt_num(truncation.c_circ)
            ),
            Self::ScaleLinkedCramer { c0 } => write!(f, "lambda_n:{c0}"),
            Self::Difference(a, b) => write!(f, "diff({a},{b})"),
        }
    }
}

/// Parses `unit`, `mangoldt`, `cramer:ω`, `hb:ω`, `hbt:ω:ε[:c∘]`,
/// `lambda_n:C0` and `diff(A,B)`.
impl FromStr for WeightFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::invalid(format!("cannot parse weight '{s}'"));
        if let Some(inner) = s.strip_prefix("diff(").and_then(|r| r.strip_suffix(')')) {
            let mut depth = 0i32;
            for (i, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        let a = inner[..i].parse()?;
                        let b = inner[i + 1..].parse()?;
                        return Ok(Self::difference(a, b));
                    }
                    _ => {}
                }
            }
            return Err(bad());
        }
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts
                .get(i)
                .ok_or_else(bad)?
                .parse::<f64>()
                .map_err(|_| bad())
        };
        let w = match parts[0].to_ascii_lowercase().as_str() {
            "unit" | "1" => Self::Unit,
            "mangoldt" | "lambda" => Self::VonMangoldt,
            "cramer" => Self::Cramer { omega: num(1)? },
            "hb" => Self::HeathBrown { omega: num(1)? },
            "hbt" => Self::HeathBrownTruncated {
                omega: num(1)?,
                truncation: Truncation {
                    epsilon: num(2)?,
                    c_circ: if parts.len() > 3 { num(3)? } else { DEFAULT_C_CIRC },
                },
            },
            "lambda_n" | "lambdan" => Self::ScaleLinkedCramer {
                c0: if parts.len() > 1 {
                    parts[1].parse().map_err(|_| bad())?
                } else {
                    DEFAULT_C0
                },
            },
            _ => return Err(bad()),
        };
        w.validate()?;
        Ok(w)
    }
}

/// Summary statistics of a weight over `[N]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightReport {
    pub mean: f64,
    /// `E_{n∈[N]} w(n)·1_{n≡b (mod q)}`.
    pub residue_mean: Option<f64>,
    /// `1_{(b,q)=1}/φ(q)`.
    pub residue_target: Option<f64>,
    /// `E_{n∈[N]} |w(n)|^k`.
    pub moment: Option<f64>,
    /// `⟨Log ω⟩^{2^k+k}` for Heath-Brown weights.
    pub moment_bound: Option<f64>,
}

/// Largest moment accepted by [`weight_statistics`].
pub const MAX_MOMENT: u32 = 8;

pub fn weight_statistics(
    w: &WeightFunction,
    n: u64,
    residue: Option<(u64, u64)>,
    moment: Option<u32>,
) -> Result<WeightReport> {
    if n == 0 {
        return Err(Error::invalid("weight_statistics requires N >= 1"));
    }
    if let Some((q, b)) = residue {
        if q == 0 || b == 0 || b > q {
            return Err(Error::range("residue class", format!("b={b}, q={q} (need 1 <= b <= q)")));
        }
    }
    if let Some(k) = moment {
        if k == 0 || k > MAX_MOMENT {
            return Err(Error::range("moment", format!("{k} (must be in 1..={MAX_MOMENT})")));
        }
    }
    let scale = (n as f64).max(2.0);
    let table = w.table(n, scale)?;
    let values = &table[1..];
    let nf = n as f64;
    let mut acc = CompensatedSum::new();
    values.iter().for_each(|&v| acc.add(v.into()));
    let mean = acc.value().re / nf;

    let (residue_mean, residue_target) = match residue {
        Some((q, b)) => {
            let mut acc = CompensatedSum::new();
            let mut m = b % q;
            if m == 0 {
                m = q;
            }
            while m <= n {
                acc.add(values[m as usize - 1].into());
                m += q;
            }
            let target = if gcd(b, q) == 1 {
                1.0 / euler_phi(q) as f64
            } else {
                0.0
            };
            (Some(acc.value().re / nf), Some(target))
        }
        None => (None, None),
    };

    let (moment_value, moment_bound) = match moment {
        Some(k) => {
            let mut acc = CompensatedSum::new();
            values.iter().for_each(|&v| acc.add(v.abs().powi(k as i32).into()));
            let bound = w.heath_brown_omega().map(|omega| {
                let log_omega = log_scale(omega) as f64;
                japanese(log_omega).powi((1i32 << k) + k as i32)
            });
            (Some(acc.value().re / nf), bound)
        }
        None => (None, None),
    };

    Ok(WeightReport {
        mean,
        residue_mean,
        residue_target,
        moment: moment_value,
        moment_bound,
    })
}
