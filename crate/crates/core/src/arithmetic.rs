//! Sieve-backed arithmetic functions and Ramanujan sums.

use crate::error::{Error, Result};
use crate::numeric::{e_ratio, gcd, CompensatedSum};

/// Largest sieve limit accepted by [`ArithTables::build`].
pub const MAX_SIEVE_LIMIT: u64 = 1 << 31;

/// Smallest-prime-factor, totient and Möbius tables from one linear sieve.
#[derive(Debug, Clone)]
pub struct ArithTables {
    limit: u32,
    spf: Vec<u32>,
    primes: Vec<u32>,
    phi: Vec<u32>,
    mu: Vec<i8>,
}

impl ArithTables {
    pub fn build(limit: u64) -> Result<Self> {
        if !(2..=MAX_SIEVE_LIMIT).contains(&limit) {
            return Err(Error::range(
                "sieve limit",
                format!("{limit} not in [2, 2^31]"),
            ));
        }
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut phi = vec![0u32; n + 1];
        let mut mu = vec![0i8; n + 1];
        let mut primes: Vec<u32> = Vec::with_capacity(estimate_pi(limit));
        phi[1] = 1;
        mu[1] = 1;
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                phi[i] = i as u32 - 1;
                mu[i] = -1;
                primes.push(i as u32);
            }
            let si = spf[i];
            for &p in &primes {
                if p > si {
                    break;
                }
                let m = i * p as usize;
                if m > n {
                    break;
                }
                spf[m] = p;
                if p == si {
                    phi[m] = phi[i] * p;
                    mu[m] = 0;
                } else {
                    phi[m] = phi[i] * (p - 1);
                    mu[m] = -mu[i];
                }
            }
        }
        Ok(Self {
            limit: limit as u32,
            spf,
            primes,
            phi,
            mu,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit as u64
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        self.spf[n as usize] as u64
    }

    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }

    pub fn mu(&self, n: u64) -> i32 {
        self.mu[n as usize] as i32
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// `Λ(n)` for `1 ≤ n ≤ limit`.
    pub fn mangoldt(&self, n: u64) -> f64 {
        if n < 2 {
            return 0.0;
        }
        let p = self.spf[n as usize] as u64;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        if m == 1 {
            (p as f64).ln()
        } else {
            0.0
        }
    }

    /// `Λ(n)` for every `n ≤ limit`, index 0 holding 0.
    pub fn mangoldt_table(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.limit as usize + 1];
        for &p in &self.primes {
            let lp = (p as f64).ln();
            let mut q = p as u64;
            while q <= self.limit as u64 {
                out[q as usize] = lp;
                q *= p as u64;
            }
        }
        out
    }
}

fn estimate_pi(limit: u64) -> usize {
    let x = limit as f64;
    if x < 10.0 {
        4
    } else {
        (1.26 * x / x.ln()) as usize + 1
    }
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn moebius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The von Mangoldt function with the natural logarithm.
pub fn mangoldt(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("mangoldt(0) is undefined"));
    }
    let f = factorize(n);
    Ok(match f.as_slice() {
        [(p, _)] => (*p as f64).ln(),
        _ => 0.0,
    })
}

/// Ramanujan sum `c_q(n)` by the closed form `μ(q/g)·φ(q)/φ(q/g)`, `g = gcd(n, q)`.
pub fn ramanujan_sum(q: u64, n: i64) -> Result<f64> {
    if q == 0 {
        return Err(Error::invalid("ramanujan_sum requires q >= 1"));
    }
    let g = gcd(n.unsigned_abs(), q);
    let r = q / g;
    let mu = moebius(r);
    if mu == 0 {
        return Ok(0.0);
    }
    Ok(mu as f64 * (euler_phi(q) / euler_phi(r)) as f64)
}

/// Ramanujan sum by direct summation of `e(rn/q)` over `r ∈ [q]^×`.
pub fn ramanujan_sum_brute(q: u64, n: i64) -> f64 {
    let mut acc = CompensatedSum::new();
    for r in 1..=q {
        if gcd(r, q) == 1 {
            acc.add(e_ratio(r as i128 * n as i128, q));
        }
    }
    acc.value().re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tables() {
        let t = ArithTables::build(10).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7]);
        let t = ArithTables::build(30).unwrap();
        assert_eq!(t.phi(12), 4);
        assert_eq!(t.mu(30), -1);
        assert_eq!(t.mu(12), 0);
        assert_eq!(t.mu(1), 1);
    }

    #[test]
    fn build_rejects_bad_limits() {
        assert!(matches!(ArithTables::build(1), Err(Error::OutOfRange { .. })));
        assert!(ArithTables::build(MAX_SIEVE_LIMIT + 1).is_err());
    }

    #[test]
    fn table_invariants() {
        let t = ArithTables::build(10_000).unwrap();
        for n in 2..=10_000u64 {
            assert_eq!(n % t.smallest_prime_factor(n), 0);
        }
        for &p in t.primes() {
            assert_eq!(t.phi(p as u64), p as u64 - 1);
            assert_eq!(t.mu(p as u64), -1);
        }
        // Σ_{d|n} φ(d) = n
        let mut sums = vec![0u64; 10_001];
        for d in 1..=10_000u64 {
            let mut m = d;
            while m <= 10_000 {
                sums[m as usize] += t.phi(d);
                m += d;
            }
        }
        for n in 1..=10_000u64 {
            assert_eq!(sums[n as usize], n);
            assert_eq!(t.phi(n), euler_phi(n));
            assert_eq!(t.mu(n), moebius(n));
        }
    }

    #[test]
    fn mangoldt_values() {
        assert_eq!(mangoldt(1).unwrap(), 0.0);
        assert_eq!(mangoldt(8).unwrap(), 2f64.ln());
        assert_eq!(mangoldt(6).unwrap(), 0.0);
        assert!(mangoldt(0).is_err());
        let t = ArithTables::build(1000).unwrap();
        let table = t.mangoldt_table();
        for n in 1..=1000u64 {
            assert_eq!(t.mangoldt(n), mangoldt(n).unwrap());
            assert_eq!(table[n as usize], mangoldt(n).unwrap());
        }
    }

    #[test]
    fn ramanujan_examples() {
        for n in -5..5 {
            assert_eq!(ramanujan_sum(1, n).unwrap(), 1.0);
        }
        assert_eq!(ramanujan_sum(6, 3).unwrap(), -2.0);
        assert_eq!(ramanujan_sum(4, 2).unwrap(), -2.0);
        assert!((ramanujan_sum_brute(6, 3) + 2.0).abs() < 1e-12);
        assert!((ramanujan_sum_brute(4, 2) + 2.0).abs() < 1e-12);
        assert!(ramanujan_sum(0, 1).is_err());
    }

    #[test]
    fn ramanujan_multiplicative() {
        for q in 1..=60u64 {
            for q2 in 1..=60u64 {
                if gcd(q, q2) != 1 {
                    continue;
                }
                for n in [-7i64, 0, 1, 6, 12, 30, 35] {
                    let lhs = ramanujan_sum(q * q2, n).unwrap();
                    let rhs = ramanujan_sum(q, n).unwrap() * ramanujan_sum(q2, n).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn chebyshev_mean_at_desk_scale() {
        let t = ArithTables::build(1_000_000).unwrap();
        let psi: f64 = t.mangoldt_table().iter().sum();
        let mean = psi / 1e6;
        assert!((0.8..=1.2).contains(&mean), "{mean}");
    }
}
