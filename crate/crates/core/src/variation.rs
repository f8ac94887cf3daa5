//! r-variation seminorms and norms, lacunary scale sets, and the empirical
//! Rademacher-Menshov harness for multilinear forms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{japanese, log_scale};
use crate::padic::{cyclic_average, CyclicSignal};
use crate::polynomial::PolynomialFamily;

/// Longest sequence accepted by the O(J²) dynamic program.
pub const MAX_SEQUENCE_LEN: usize = 10_000;

/// Returns `(V^r, 𝐕^r)` for `r ∈ [1, ∞]` (`f64::INFINITY` for `r = ∞`).
///
/// `V^r` is computed exactly: along any increasing chain the objective
/// `Σ |a_{t_{j+1}} - a_{t_j}|^r` is additive, so
/// `best[i] = max(0, max_{j<i} best[j] + |a_i - a_j|^r)` is the optimum over
/// chains ending at `i`.
pub fn variation_norm(seq: &[Complex64], r: f64) -> Result<(f64, f64)> {
    if r.is_nan() || r < 1.0 {
        return Err(Error::range("variation exponent r", format!("{r} (need r >= 1)")));
    }
    if seq.len() > MAX_SEQUENCE_LEN {
        return Err(Error::range(
            "sequence length",
            format!("{} exceeds {MAX_SEQUENCE_LEN}", seq.len()),
        ));
    }
    let sup = seq.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let semi = if r.is_infinite() {
        let mut best: f64 = 0.0;
        for (i, a) in seq.iter().enumerate() {
            for b in &seq[i + 1..] {
                best = best.max((b - a).norm());
            }
        }
        best
    } else {
        let jump = |d: Complex64| -> f64 {
            if r == 2.0 {
                d.norm_sqr()
            } else if r == 1.0 {
                d.norm()
            } else {
                d.norm().powf(r)
            }
        };
        let mut best = vec![0.0f64; seq.len()];
        for i in 1..seq.len() {
            let mut b: f64 = 0.0;
            for j in 0..i {
                b = b.max(best[j] + jump(seq[i] - seq[j]));
            }
            best[i] = b;
        }
        let top = best.iter().copied().fold(0.0, f64::max);
        if r == 1.0 {
            top
        } else {
            top.powf(1.0 / r)
        }
    };
    Ok((semi, sup + semi))
}

/// A sequence together with its variation seminorms and norms.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationProfile {
    pub sequence: Vec<Complex64>,
    pub exponents: Vec<f64>,
    pub seminorms: Vec<f64>,
    pub norms: Vec<f64>,
}

impl VariationProfile {
    pub fn compute(sequence: Vec<Complex64>, exponents: &[f64]) -> Result<Self> {
        let mut seminorms = Vec::with_capacity(exponents.len());
        let mut norms = Vec::with_capacity(exponents.len());
        for &r in exponents {
            let (v, n) = variation_norm(&sequence, r)?;
            seminorms.push(v);
            norms.push(n);
        }
        Ok(Self {
            sequence,
            exponents: exponents.to_vec(),
            seminorms,
            norms,
        })
    }
}

/// Increasing scales `≥ 1` whose consecutive ratios are at least `λ > 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LacunarySet {
    values: Vec<f64>,
    lambda: f64,
}

impl LacunarySet {
    pub fn new(values: Vec<f64>, lambda: f64) -> Result<Self> {
        if !(lambda > 1.0) {
            return Err(Error::range("lacunarity ratio", format!("{lambda} (need > 1)")));
        }
        if values.iter().any(|&v| !(v >= 1.0)) {
            return Err(Error::invalid("lacunary scales must be >= 1"));
        }
        for w in values.windows(2) {
            if w[1] < lambda * w[0] {
                return Err(Error::invalid(format!(
                    "scales {} -> {} have ratio below {lambda}",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { values, lambda })
    }

    /// `start, start·ratio, …` (`count` terms).
    pub fn geometric(start: f64, ratio: f64, count: usize) -> Result<Self> {
        let values = (0..count).map(|i| start * ratio.powi(i as i32)).collect();
        Self::new(values, ratio)
    }

    /// `2^lo, 2^{lo+1}, …, 2^hi`.
    pub fn dyadic(lo: u32, hi: u32) -> Result<Self> {
        Self::new((lo..=hi).map(|e| 2f64.powi(e as i32)).collect(), 2.0)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

/// Parameters of the Rademacher-Menshov harness.
#[derive(Debug, Clone, PartialEq)]
pub struct RmConfig {
    /// Size `Q` of the cyclic group carrying the signals.
    pub modulus: usize,
    /// Number of scales `K`.
    pub scales: usize,
    /// Lebesgue exponent `q ∈ (0, ∞)` of the outer norm.
    pub exponent: f64,
    pub seed: u64,
    /// Fixed scale of the truncated unit-weight average realising `B`.
    pub n0: f64,
}

impl Default for RmConfig {
    fn default() -> Self {
        Self {
            modulus: 64,
            scales: 5,
            exponent: 2.0,
            seed: 1,
            n0: 16.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RmReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `⟨Log K⟩^{k-2+k·max(1,1/q)}`.
    pub log_factor: f64,
    pub ratio: f64,
    /// Number of sign patterns evaluated.
    pub patterns: u64,
}

/// Largest `k·K` for exhaustive sign enumeration.
pub const MAX_SIGN_BITS: usize = 18;

fn lq_norm(values: impl Iterator<Item = f64>, q: f64, len: usize) -> f64 {
    let s: f64 = values.map(|v| v.powf(q)).sum();
    (s / len as f64).powf(1.0 / q)
}

/// Rademacher-Menshov ratio for explicit families `families[i][N]`
/// (`k` slots, `K` scales each, all on the same cyclic group).
pub fn rm_ratio(
    fam: &PolynomialFamily,
    families: &[Vec<CyclicSignal>],
    exponent: f64,
    n0: f64,
) -> Result<RmReport> {
    let k = fam.k();
    if families.len() != k {
        return Err(Error::invalid(format!("expected {k} signal families, got {}", families.len())));
    }
    let big_k = families[0].len();
    if big_k == 0 || families.iter().any(|f| f.len() != big_k) {
        return Err(Error::invalid("every slot needs the same non-zero number of scales"));
    }
    if k * big_k > MAX_SIGN_BITS {
        return Err(Error::range(
            "sign enumeration",
            format!("k*K = {} exceeds {MAX_SIGN_BITS}", k * big_k),
        ));
    }
    if !(exponent > 0.0) || !exponent.is_finite() {
        return Err(Error::range("exponent q", format!("{exponent} (need 0 < q < inf)")));
    }
    let modulus = families[0][0].modulus();

    // left side: L^q over x of the V^2 norm of N -> B(f_{1,N}, ..., f_{k,N})(x)
    let outputs: Vec<CyclicSignal> = (0..big_k)
        .map(|t| {
            let args: Vec<CyclicSignal> = families.iter().map(|f| f[t].clone()).collect();
            cyclic_average(fam, &args, n0, true)
        })
        .collect::<Result<_>>()?;
    let mut pointwise = Vec::with_capacity(modulus);
    for x in 0..modulus {
        let seq: Vec<Complex64> = outputs.iter().map(|o| o.values()[x]).collect();
        pointwise.push(variation_norm(&seq, 2.0)?.1);
    }
    let lhs = lq_norm(pointwise.into_iter(), exponent, modulus);

    // increments f_{i,j} - f_{i,j-1}
    let increments: Vec<Vec<Vec<Complex64>>> = families
        .iter()
        .map(|f| {
            (0..big_k)
                .map(|t| {
                    let cur = f[t].values();
                    if t == 0 {
                        cur.to_vec()
                    } else {
                        cur.iter().zip(f[t - 1].values()).map(|(a, b)| a - b).collect()
                    }
                })
                .collect()
        })
        .collect();

    // Negating every sign in one slot negates B, so the first sign of each
    // slot is fixed to +1.
    let free_bits = k * (big_k - 1);
    let patterns = 1u64 << free_bits;
    let best = (0..patterns)
        .into_par_iter()
        .map(|mask| -> Result<f64> {
            let args: Vec<CyclicSignal> = (0..k)
                .map(|i| {
                    let mut acc = increments[i][0].clone();
                    for t in 1..big_k {
                        let bit = i * (big_k - 1) + (t - 1);
                        let neg = (mask >> bit) & 1 == 1;
                        for (a, d) in acc.iter_mut().zip(&increments[i][t]) {
                            if neg {
                                *a -= d;
                            } else {
                                *a += d;
                            }
                        }
                    }
                    CyclicSignal::new(acc)
                })
                .collect::<Result<_>>()?;
            let out = cyclic_average(fam, &args, n0, true)?;
            Ok(lq_norm(out.values().iter().map(|v| v.norm()), exponent, modulus))
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))?;

    let power = (k as f64) - 2.0 + (k as f64) * (1.0f64).max(1.0 / exponent);
    let log_factor = japanese(log_scale(big_k as f64) as f64).powf(power);
    let rhs = log_factor * best;
    let ratio = if lhs == 0.0 && rhs == 0.0 { 0.0 } else { lhs / rhs };
    Ok(RmReport {
        lhs,
        rhs,
        log_factor,
        ratio,
        patterns,
    })
}

/// Seeded cumulative random families: `f_{i,N} = Σ_{j≤N} Δ_{i,j}` with
/// independent increments uniform on `[-1,1] + i[-1,1]`.
pub fn random_cumulative_families(
    k: usize,
    cfg: &RmConfig,
) -> Result<Vec<Vec<CyclicSignal>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let mut running = vec![Complex64::new(0.0, 0.0); cfg.modulus];
        let mut slot = Vec::with_capacity(cfg.scales);
        for _ in 0..cfg.scales {
            for v in running.iter_mut() {
                *v += Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
            }
            slot.push(CyclicSignal::new(running.clone())?);
        }
        out.push(slot);
    }
    Ok(out)
}

/// Rademacher-Menshov ratio on seeded random cumulative families.
pub fn rm_check(fam: &PolynomialFamily, cfg: &RmConfig) -> Result<RmReport> {
    if cfg.scales == 0 {
        return Err(Error::invalid("K must be at least 1"));
    }
    if fam.k() * cfg.scales > MAX_SIGN_BITS {
        return Err(Error::range(
            "sign enumeration",
            format!("k*K = {} exceeds {MAX_SIGN_BITS}", fam.k() * cfg.scales),
        ));
    }
    if cfg.modulus < 2 {
        return Err(Error::range("modulus Q", format!("{} (need >= 2)", cfg.modulus)));
    }
    let families = random_cumulative_families(fam.k(), cfg)?;
    rm_ratio(fam, &families, cfg.exponent, cfg.n0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn real(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    /// Exhaustive maximum over all increasing subsequences.
    fn brute_force(seq: &[Complex64], r: f64) -> f64 {
        let n = seq.len();
        let mut best: f64 = 0.0;
        for mask in 0u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            if idx.len() < 2 {
                continue;
            }
            let v = if r.is_infinite() {
                idx.windows(2).map(|w| (seq[w[1]] - seq[w[0]]).norm()).fold(0.0, f64::max)
            } else {
                idx.windows(2)
                    .map(|w| (seq[w[1]] - seq[w[0]]).norm().powf(r))
                    .sum::<f64>()
                    .powf(1.0 / r)
            };
            best = best.max(v);
        }
        best
    }

    #[test]
    fn examples() {
        let (v, n) = variation_norm(&real(&[0.0, 1.0, 0.0, 1.0]), 2.0).unwrap();
        assert!((v - 3f64.sqrt()).abs() < 1e-15);
        assert!((n - 1.0 - 3f64.sqrt()).abs() < 1e-15);
        assert!((brute_force(&real(&[0.0, 1.0, 0.0, 1.0]), 2.0) - 3f64.sqrt()).abs() < 1e-15);
        for r in [1.0, 2.0, 3.5, f64::INFINITY] {
            let (v, n) = variation_norm(&real(&[-2.0; 5]), r).unwrap();
            assert_eq!((v, n), (0.0, 2.0));
            let (v, _) = variation_norm(&real(&[0.0, 1.0]), r).unwrap();
            assert_eq!(v, 1.0);
        }
        assert!(variation_norm(&real(&[0.0, 1.0]), 0.5).is_err());
        assert_eq!(variation_norm(&[], 2.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn three_point_sequence_decreases_in_r() {
        let seq = real(&[0.0, 1.0, 0.0]);
        let v1 = variation_norm(&seq, 1.0).unwrap().0;
        let v2 = variation_norm(&seq, 2.0).unwrap().0;
        let vinf = variation_norm(&seq, f64::INFINITY).unwrap().0;
        assert!((v1 - 2.0).abs() < 1e-15);
        assert!((v2 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(vinf, 1.0);
    }

    #[test]
    fn lacunary_validation() {
        assert!(LacunarySet::new(vec![1.0, 2.0, 4.0], 2.0).is_ok());
        assert!(LacunarySet::new(vec![1.0, 1.5, 4.0], 2.0).is_err());
        assert!(LacunarySet::new(vec![1.0, 2.0], 1.0).is_err());
        assert!(LacunarySet::new(vec![0.5, 2.0], 1.5).is_err());
        assert_eq!(LacunarySet::dyadic(3, 5).unwrap().values(), &[8.0, 16.0, 32.0]);
    }

    #[test]
    fn rm_singleton_ratio_is_one() {
        let fam: PolynomialFamily = "n,n^2".parse().unwrap();
        for seed in 0..5 {
            let cfg = RmConfig { scales: 1, seed, ..RmConfig::default() };
            assert_eq!(rm_check(&fam, &cfg).unwrap().ratio, 1.0);
        }
    }

    #[test]
    fn rm_zero_families() {
        let fam: PolynomialFamily = "n,n^2".parse().unwrap();
        let zero = CyclicSignal::new(vec![Complex64::new(0.0, 0.0); 16]).unwrap();
        let families = vec![vec![zero.clone(); 3], vec![zero; 3]];
        assert_eq!(rm_ratio(&fam, &families, 2.0, 8.0).unwrap().ratio, 0.0);
    }

    #[test]
    fn rm_rejects_large_enumeration() {
        let fam: PolynomialFamily = "n,n^2,n^3".parse().unwrap();
        let cfg = RmConfig { scales: 7, ..RmConfig::default() };
        assert!(rm_check(&fam, &cfg).is_err());
    }

    fn seq_strategy() -> impl Strategy<Value = Vec<Complex64>> {
        prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 0..=10)
            .prop_map(|v| v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect())
    }

    proptest! {
        #[test]
        fn dp_matches_exhaustive(seq in seq_strategy(), ri in 0usize..4) {
            let r = [1.0, 2.0, 3.0, f64::INFINITY][ri];
            let dp = variation_norm(&seq, r).unwrap().0;
            let bf = brute_force(&seq, r);
            prop_assert!((dp - bf).abs() <= 1e-12 * (1.0 + bf));
        }

        #[test]
        fn non_increasing_in_r(seq in seq_strategy()) {
            let vals: Vec<f64> = [1.0, 2.0, 4.0, f64::INFINITY]
                .iter()
                .map(|&r| variation_norm(&seq, r).unwrap().0)
                .collect();
            for w in vals.windows(2) {
                prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-12);
            }
        }

        #[test]
        fn partition_and_lr_bounds(seq in seq_strategy(), cut in 0usize..=10, ri in 0usize..3) {
            let r = [1.0, 2.0, 4.0][ri];
            let cut = cut.min(seq.len());
            let whole = variation_norm(&seq, r).unwrap().1;
            let left = variation_norm(&seq[..cut], r).unwrap().1;
            let right = variation_norm(&seq[cut..], r).unwrap().1;
            prop_assert!(whole <= 2.0 * (left + right) + 1e-12);
            let lr: f64 = seq.iter().map(|a| a.norm().powf(r)).sum::<f64>().powf(1.0 / r);
            prop_assert!(whole <= 3.0 * lr + 1e-12);
        }
    }
}
