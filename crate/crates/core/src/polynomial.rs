//! Integer-coefficient polynomials and families with distinct degrees.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Polynomial with integer coefficients, stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Self { coeffs }
    }

    /// The monomial `n^d`.
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![0; d + 1];
        c[d] = 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        if self.coeffs.len() == 1 && self.coeffs[0] == 0 {
            0
        } else {
            self.coeffs.len() - 1
        }
    }

    /// Exact evaluation; `None` on overflow of 128-bit intermediates.
    pub fn eval_i128(&self, n: i64) -> Option<i128> {
        let x = n as i128;
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(x)?.checked_add(c as i128)?;
        }
        Some(acc)
    }

    /// Exact evaluation into 64 bits; `None` on overflow.
    pub fn eval_i64(&self, n: i64) -> Option<i64> {
        self.eval_i128(n).and_then(|v| i64::try_from(v).ok())
    }

    /// `P(n) mod q` in `[0, q)`, computed without overflow.
    pub fn eval_mod(&self, n: i64, q: u64) -> u64 {
        let q = q as i128;
        let x = (n as i128).rem_euclid(q);
        let mut acc: i128 = 0;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + (c as i128).rem_euclid(q)).rem_euclid(q);
        }
        acc as u64
    }

    /// Real evaluation by Horner's rule.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    /// Upper bound for `|P(x)|` on `|x| ≤ r`.
    pub fn abs_bound(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, &c)| (c as f64).abs() * r.powi(j as i32))
            .sum()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 && !(j == 0 && first) {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{sign}")?;
            }
            let a = c.unsigned_abs();
            match j {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "n")?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Parses expressions such as `n`, `n^2`, `3n^2-2n+1` or `2*n^3`.
impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::invalid("empty polynomial"));
        }
        let mut coeffs: Vec<i64> = Vec::new();
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1i64, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let bad = || Error::invalid(format!("cannot parse polynomial term '{term}' in '{s}'"));
            let (coef, power) = match body.find('n') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let coef = if head.is_empty() {
                        1
                    } else {
                        head.parse::<i64>().map_err(|_| bad())?
                    };
                    let tail = &body[pos + 1..];
                    let power = if tail.is_empty() {
                        1
                    } else if let Some(p) = tail.strip_prefix('^') {
                        p.parse::<usize>().map_err(|_| bad())?
                    } else {
                        return Err(bad());
                    };
                    (coef, power)
                }
            };
            if coeffs.len() <= power {
                coeffs.resize(power + 1, 0);
            }
            coeffs[power] = coeffs[power]
                .checked_add(sign * coef)
                .ok_or_else(|| Error::invalid("coefficient overflow"))?;
        }
        Ok(Polynomial::new(coeffs))
    }
}

/// Polynomials `P_1, …, P_k` with strictly increasing degrees `1 ≤ d_1 < … < d_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialFamily {
    polys: Vec<Polynomial>,
}

impl PolynomialFamily {
    pub fn new(polys: Vec<Polynomial>) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::invalid("polynomial family must be non-empty"));
        }
        let mut prev = 0usize;
        for (i, p) in polys.iter().enumerate() {
            let d = p.degree();
            if d == 0 {
                return Err(Error::invalid(format!("polynomial {} is constant", i + 1)));
            }
            if i > 0 && d <= prev {
                return Err(Error::invalid(format!(
                    "degrees must be strictly increasing (polynomial {} has degree {d} after {prev})",
                    i + 1
                )));
            }
            prev = d;
        }
        Ok(Self { polys })
    }

    /// The monomial family `(n^{d_1}, …, n^{d_k})`.
    pub fn monomials(degrees: &[usize]) -> Result<Self> {
        Self::new(degrees.iter().map(|&d| Polynomial::monomial(d)).collect())
    }

    pub fn k(&self) -> usize {
        self.polys.len()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.polys.iter().map(Polynomial::degree).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.polys.last().map(Polynomial::degree).unwrap_or(0)
    }

    /// Exact values `P_i(n)` for every `i`, or an overflow error naming `n`
    /// and the (1-based) polynomial index.
    pub fn eval_all(&self, n: i64) -> Result<Vec<i64>> {
        self.polys
            .iter()
            .enumerate()
            .map(|(i, p)| p.eval_i64(n).ok_or(Error::Overflow { n, index: i + 1 }))
            .collect()
    }
}

impl fmt::Display for PolynomialFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.polys.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses a comma-separated list, e.g. `n,n^2`. Surrounding parentheses are
/// optional.
impl FromStr for PolynomialFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let polys = t
            .split(',')
            .map(str::parse)
            .collect::<Result<Vec<Polynomial>>>()?;
        Self::new(polys)
    }
}
