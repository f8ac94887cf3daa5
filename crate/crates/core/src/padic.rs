//! Averages on the finite groups ℤ/Qℤ and their unit groups.
//!
//! Profinite objects are handled through finite quotients: a function on
//! ℤ/Qℤ is a [`CyclicSignal`], the unit-group average runs over the φ(Q)
//! residues coprime to `Q`, and the linear averages along one polynomial are
//! diagonalised by the additive characters `y ↦ e(ξy/Q)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::arithmetic::is_prime;
use crate::error::{Error, Result};
use crate::numeric::{gcd, REDUCTION_CHUNK};
use crate::polynomial::{Polynomial, PolynomialFamily};
use crate::signals::index_range;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest prime power accepted by the eigenvalue and fiber routines.
pub const MAX_PRIME_POWER: u64 = 1 << 20;

/// A complex function on ℤ/Qℤ, `Q = values.len()`.
#[derive(Debug, Clone, PartialEq)]
pub struct CyclicSignal {
    values: Vec<Complex64>,
}

impl CyclicSignal {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("cyclic signal needs modulus Q >= 1"));
        }
        Ok(Self { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn constant(modulus: usize, c: Complex64) -> Self {
        Self {
            values: vec![c; modulus.max(1)],
        }
    }

    pub fn delta(modulus: usize, y: i64) -> Self {
        let q = modulus.max(1);
        let mut values = vec![ZERO; q];
        values[y.rem_euclid(q as i64) as usize] = Complex64::new(1.0, 0.0);
        Self { values }
    }

    /// The pure tone `n ↦ e(t·n/Q)`.
    pub fn tone(modulus: usize, t: i64) -> Self {
        let q = modulus.max(1) as u64;
        Self {
            values: (0..q as i64)
                .map(|n| crate::numeric::e_ratio(t as i128 * n as i128, q))
                .collect(),
        }
    }

    pub fn modulus(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, y: i64) -> Complex64 {
        self.values[y.rem_euclid(self.values.len() as i64) as usize]
    }

    pub fn abs(&self) -> Self {
        Self {
            values: self.values.iter().map(|v| Complex64::new(v.norm(), 0.0)).collect(),
        }
    }

    /// Normalised `L^s` norm `(E_y |f(y)|^s)^{1/s}`.
    pub fn norm_l(&self, s: f64) -> f64 {
        let q = self.values.len() as f64;
        if s.is_infinite() {
            return self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        }
        (self.values.iter().map(|v| v.norm().powf(s)).sum::<f64>() / q).powf(1.0 / s)
    }

    /// `F(ξ) = Σ_y f(y) e(ξy/Q)`.
    pub fn dft(&self) -> Vec<Complex64> {
        let mut buf = self.values.clone();
        FftPlanner::new()
            .plan_fft_forward(buf.len())
            .process(&mut buf);
        buf
    }

    /// Inverse of [`CyclicSignal::dft`].
    pub fn from_spectrum(spectrum: &[Complex64]) -> Result<Self> {
        let mut buf = spectrum.to_vec();
        if buf.is_empty() {
            return Err(Error::invalid("empty spectrum"));
        }
        FftPlanner::new()
            .plan_fft_inverse(buf.len())
            .process(&mut buf);
        let scale = 1.0 / buf.len() as f64;
        for v in &mut buf {
            *v *= scale;
        }
        Self::new(buf)
    }
}

fn common_modulus(fam: &PolynomialFamily, signals: &[CyclicSignal]) -> Result<usize> {
    if signals.len() != fam.k() {
        return Err(Error::invalid(format!(
            "expected {} signals, got {}",
            fam.k(),
            signals.len()
        )));
    }
    let q = signals[0].modulus();
    if signals.iter().any(|s| s.modulus() != q) {
        return Err(Error::invalid("cyclic signals have mismatched moduli"));
    }
    Ok(q)
}

/// `y ↦ scale · Σ_{n∈ns} Π_i g_i(y - P_i(n))` on ℤ/Qℤ.
fn residue_average(
    fam: &PolynomialFamily,
    signals: &[CyclicSignal],
    q: usize,
    ns: &[i64],
    scale: f64,
) -> CyclicSignal {
    let shifts: Vec<Vec<usize>> = ns
        .iter()
        .map(|&n| fam.polys().iter().map(|p| p.eval_mod(n, q as u64) as usize).collect())
        .collect();
    let mut out = vec![ZERO; q];
    out.par_chunks_mut(REDUCTION_CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| {
            let base = c * REDUCTION_CHUNK;
            for (off, slot) in chunk.iter_mut().enumerate() {
                let y = base + off;
                let mut acc = ZERO;
                for sh in &shifts {
                    let mut prod = Complex64::new(1.0, 0.0);
                    for (s, g) in sh.iter().zip(signals) {
                        prod *= g.values[(y + q - s) % q];
                    }
                    acc += prod;
                }
                *slot = acc * scale;
            }
        });
    CyclicSignal { values: out }
}

/// `y ↦ E_{n∈(ℤ/Qℤ)^×} Π_i g_i(y - P_i(n))`.
pub fn unit_group_average(fam: &PolynomialFamily, signals: &[CyclicSignal]) -> Result<CyclicSignal> {
    let q = common_modulus(fam, signals)?;
    if q < 2 {
        return Err(Error::range("modulus Q", "unit-group averages need Q >= 2"));
    }
    let units: Vec<i64> = (1..q as u64).filter(|&n| gcd(n, q as u64) == 1).map(|n| n as i64).collect();
    Ok(residue_average(fam, signals, q, &units, 1.0 / units.len() as f64))
}

/// `y ↦ E_{n∈ℤ/Qℤ} Π_i g_i(y - P_i(n))`.
pub fn full_group_average(fam: &PolynomialFamily, signals: &[CyclicSignal]) -> Result<CyclicSignal> {
    let q = common_modulus(fam, signals)?;
    let all: Vec<i64> = (0..q as i64).collect();
    Ok(residue_average(fam, signals, q, &all, 1.0 / q as f64))
}

/// Unit-weight average on ℤ/Qℤ at scale `N`:
/// `y ↦ (1/⌊N⌋) Σ_{n} Π_i g_i(y - P_i(n))` over `J_N` (truncated) or `[N]`.
pub fn cyclic_average(
    fam: &PolynomialFamily,
    signals: &[CyclicSignal],
    n: f64,
    truncated: bool,
) -> Result<CyclicSignal> {
    let q = common_modulus(fam, signals)?;
    let ns: Vec<i64> = index_range(n, truncated)?.map(|m| m as i64).collect();
    Ok(residue_average(fam, signals, q, &ns, 1.0 / n.floor()))
}

fn check_prime_power(p: u64, j: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if j == 0 {
        return Err(Error::range("exponent j", "need j >= 1"));
    }
    match p.checked_pow(j) {
        Some(q) if q <= MAX_PRIME_POWER => Ok(q),
        _ => Err(Error::range("prime power", format!("{p}^{j} exceeds 2^20"))),
    }
}

/// Eigenvalues `λ(ξ) = E_{n∈(ℤ/p^jℤ)^×} e(ξP(n)/p^j)` for every ξ, from one
/// transform of the unit pushforward along `P`.
pub fn char_eigenvalues(p: u64, j: u32, poly: &Polynomial) -> Result<Vec<Complex64>> {
    let q = check_prime_power(p, j)?;
    let mut push = vec![ZERO; q as usize];
    let mut units = 0u64;
    for n in 0..q {
        if n % p != 0 {
            push[poly.eval_mod(n as i64, q) as usize] += 1.0;
            units += 1;
        }
    }
    let spectrum = CyclicSignal { values: push }.dft();
    let inv = 1.0 / units as f64;
    Ok(spectrum.into_iter().map(|v| v * inv).collect())
}

/// `max_{ξ≠0} |λ(ξ)|`.
pub fn spectral_gap(p: u64, j: u32, poly: &Polynomial) -> Result<f64> {
    let eig = char_eigenvalues(p, j, poly)?;
    Ok(eig[1..].iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// Weil-type bound `(√p + 1)/(p - 1)` for the restricted quadratic sums.
pub fn weil_bound(p: u64) -> f64 {
    let pf = p as f64;
    (pf.sqrt() + 1.0) / (pf - 1.0)
}

/// One row of an eigenvalue report.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenRow {
    pub p: u64,
    pub j: u32,
    pub xi: u64,
    pub value: Complex64,
    pub bound: f64,
}

pub fn eigen_report(p: u64, j: u32, poly: &Polynomial) -> Result<Vec<EigenRow>> {
    let eig = char_eigenvalues(p, j, poly)?;
    let bound = weil_bound(p);
    Ok(eig
        .into_iter()
        .enumerate()
        .map(|(xi, value)| EigenRow {
            p,
            j,
            xi: xi as u64,
            value,
            bound,
        })
        .collect())
}

/// Fiber sizes `h(m) = #{n ∈ ℤ/p^jℤ : P(n) ≡ m}`.
pub fn fiber_counts(p: u64, j: u32, poly: &Polynomial) -> Result<Vec<u64>> {
    let q = check_prime_power(p, j)?;
    let mut h = vec![0u64; q as usize];
    for n in 0..q {
        h[poly.eval_mod(n as i64, q) as usize] += 1;
    }
    Ok(h)
}

/// `((1/p^j) Σ_m h(m)^s)^{1/s}`.
pub fn fiber_count_norm(p: u64, j: u32, poly: &Polynomial, s: f64) -> Result<f64> {
    if !(s > 1.0) {
        return Err(Error::range("exponent s", format!("{s} (need s > 1)")));
    }
    let h = fiber_counts(p, j, poly)?;
    let q = h.len() as f64;
    if s.is_infinite() {
        return Ok(h.into_iter().max().unwrap_or(0) as f64);
    }
    Ok((h.iter().map(|&c| (c as f64).powf(s)).sum::<f64>() / q).powf(1.0 / s))
}

/// Seeded Monte-Carlo lower bound for the `L² → L^{2s}` norm of the unit-group
/// average along `P` on ℤ/p^jℤ: the largest observed
/// `‖A g‖_{2s} / ‖g‖_2` over `trials` random test functions. Half of the
/// trials use Gaussian-like noise, the other half random indicator sets.
pub fn mc_norm_lower_bound(
    p: u64,
    j: u32,
    poly: &Polynomial,
    s: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let q = check_prime_power(p, j)? as usize;
    if !(s >= 1.0) {
        return Err(Error::range("exponent s", format!("{s} (need s >= 1)")));
    }
    let fam = PolynomialFamily::new(vec![poly.clone()])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: f64 = 0.0;
    for t in 0..trials {
        let values: Vec<Complex64> = if t % 2 == 0 {
            (0..q)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        } else {
            let density = rng.gen_range(0.01..0.5);
            (0..q)
                .map(|_| Complex64::new(if rng.gen_bool(density) { 1.0 } else { 0.0 }, 0.0))
                .collect()
        };
        let g = CyclicSignal::new(values)?;
        let denom = g.norm_l(2.0);
        if denom == 0.0 {
            continue;
        }
        let out = unit_group_average(&fam, &[g])?;
        best = best.max(out.norm_l(2.0 * s) / denom);
    }
    Ok(best)
}
