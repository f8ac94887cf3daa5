//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Run with `cargo test -p ergodic-lab-cli --test acceptance -- --nocapture`
//! to see the report. Every tolerance, ceiling and runtime limit is a
//! constant below; calibrated values are frozen from pilot runs whose
//! observations are noted next to them.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ergodic_lab::approximants::{heath_brown_weight, weight_statistics, WeightFunction};
use ergodic_lab::arithmetic::ramanujan_sum;
use ergodic_lab::circle_method::{continuous_symbol, farey_set, major_arc_scan, projection_pi, RationalFrequency};
use ergodic_lab::gowers::{steps_for_error, weight_unorm_gap, UNormEstimate};
use ergodic_lab::padic::{char_eigenvalues, fiber_count_norm, fiber_counts, spectral_gap, CyclicSignal};
use ergodic_lab::polynomial::{Polynomial, PolynomialFamily};
use ergodic_lab::rotation::{prime_vs_mangoldt_gap, rotation_average, RotationSystem, TrigPoly};
use ergodic_lab::signals::{dual_average, inner_product, multi_average, SignalZ};
use ergodic_lab::variation::{rm_check, variation_norm, RmConfig};
use ergodic_lab::Complex64;

const RAMANUJAN_TOL: f64 = 1e-9;
const CRAMER_STAT_TOL: f64 = 0.01;
const ADJOINT_REL_TOL: f64 = 1e-10;
/// Pilot at radii `(1/N, 1/N²)`, grid 5: max error 4.96e-4 at N = 10^4,
/// 8.6e-6 at N = 10^6.
const ARC_SCAN_CEILING: f64 = 5e-3;
const SYMBOL_AT_ZERO_TOL: f64 = 1e-12;
const SYMBOL_REL_TOL: f64 = 1e-6;
const VARIATION_TOL: f64 = 1e-12;
/// Pilot over seeds 0..50: largest ratio 0.427.
const C_RM: f64 = 1.0;
const SPECTRAL_GAP_CONST: f64 = 1.5;
/// Eigenvalues come out of a floating-point DFT; "exactly" means agreement
/// to this absolute tolerance.
const LINEAR_EIGEN_TOL: f64 = 1e-13;
/// Pilot over all `p^j ≤ 4096`: largest `‖h‖_{L^{3/2}}` is 2.108 at `2^12`.
const FIBER_NORM_BOUND: f64 = 2.5;
/// Relative additive-error target of the Gowers estimates for `N ≤ 2^12`.
const GOWERS_ERROR_TARGET: f64 = 5e-4;
/// Target at `N = 2^14`, the finest whose transform fits in `2^24` points.
const GOWERS_ERROR_TARGET_LARGE: f64 = 2e-3;
/// Pilot: deviation 0.142 at `2^10`, 0.00208 at `2^20`.
const ROTATION_DEVIATION_THRESHOLD: f64 = 0.01;
const PRIME_GAP_BOUND: f64 = 0.3;
const PROJECTION_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(theta: f64) -> Complex64 {
    let a = -2.0 * std::f64::consts::PI * theta;
    Complex64::new(a.cos(), a.sin())
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn totient(q: u64) -> u64 {
    (1..=q).filter(|&r| gcd(r, q) == 1).count() as u64
}

fn family(s: &str) -> PolynomialFamily {
    s.parse().expect("family")
}

fn ac1() -> Outcome {
    let mut worst: f64 = 0.0;
    for q in 1..=200u64 {
        let units: Vec<u64> = (1..=q).filter(|&r| gcd(r, q) == 1).collect();
        for n in -200i64..=200 {
            let brute: f64 = units
                .iter()
                .map(|&r| (2.0 * std::f64::consts::PI * ((r as i64 * n).rem_euclid(q as i64)) as f64 / q as f64).cos())
                .sum();
            let v = ramanujan_sum(q, n).map_err(|e| e.to_string())?;
            worst = worst.max((v - brute).abs());
        }
    }
    check(worst <= RAMANUJAN_TOL, || format!("max |Δ| = {worst:e}"))?;
    Ok(format!("max |Δ| = {worst:.2e}"))
}

fn ac2() -> Outcome {
    for n in 1..=10_000u64 {
        let two = heath_brown_weight(n, 2.0, None).map_err(|e| e.to_string())?;
        check(two == 1.0, || format!("Λ_HB,2({n}) = {two}"))?;
        let three = heath_brown_weight(n, 3.0, None).map_err(|e| e.to_string())?;
        let want = if n % 2 == 0 { 0.0 } else { 2.0 };
        check(three == want, || format!("Λ_HB,3({n}) = {three}, expected {want}"))?;
    }
    Ok("exact for n ≤ 10^4".into())
}

fn ac3() -> Outcome {
    let w = WeightFunction::cramer(20.0);
    let n = 1_000_000u64;
    let mean = weight_statistics(&w, n, None, None).map_err(|e| e.to_string())?.mean;
    check((mean - 1.0).abs() <= CRAMER_STAT_TOL, || format!("mean = {mean}"))?;
    let mut worst: f64 = 0.0;
    for q in 1..=20u64 {
        for b in 1..=q {
            let r = weight_statistics(&w, n, Some((q, b)), None).map_err(|e| e.to_string())?;
            let target = if gcd(b, q) == 1 { 1.0 / totient(q) as f64 } else { 0.0 };
            let got = r.residue_mean.ok_or("missing residue mean")?;
            worst = worst.max((got - target).abs());
        }
    }
    check(worst <= CRAMER_STAT_TOL, || format!("max residue deviation {worst}"))?;
    Ok(format!("|mean-1| = {:.2e}, max residue deviation {worst:.2e}", (mean - 1.0).abs()))
}

fn random_signal(rng: &mut ChaCha8Rng) -> SignalZ {
    let len = rng.gen_range(1..6);
    let values = (0..len)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    SignalZ::new(rng.gen_range(-40..40), values)
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    let mut checks = 0;
    for instance in 0..200 {
        let k = if instance % 2 == 0 { 2 } else { 3 };
        let fam = family(if k == 2 { "n,n^2" } else { "n,n^2,n^3" });
        let w = if rng.gen_bool(0.5) { WeightFunction::Unit } else { WeightFunction::cramer(5.0) };
        let n = rng.gen_range(1..=64) as f64;
        let fs: Vec<SignalZ> = (0..k).map(|_| random_signal(&mut rng)).collect();
        let h = random_signal(&mut rng);
        let lhs = inner_product(&multi_average(&w, &fam, &fs, n, true).map_err(|e| e.to_string())?, &h);
        for j in 0..k {
            let mut gs = fs.clone();
            gs[j] = h.clone();
            let dual = dual_average(j, &w, &fam, &gs, n, true).map_err(|e| e.to_string())?;
            let rhs = inner_product(&dual, &fs[j]);
            let scale = lhs.norm().max(rhs.norm());
            let rel = if scale == 0.0 { 0.0 } else { (lhs - rhs).norm() / scale };
            worst = worst.max(rel);
            checks += 1;
        }
    }
    check(worst <= ADJOINT_REL_TOL, || format!("max relative error {worst:e}"))?;
    Ok(format!("{checks} slot checks, max relative error {worst:.2e}"))
}

fn ac5() -> Outcome {
    let fam = family("n,n^2");
    let theta = [RationalFrequency::new(1, 3).unwrap(); 2];
    let w = WeightFunction::lambda_n(4);
    let err = |n: f64| -> Result<f64, String> {
        let radii = [1.0 / n, 1.0 / (n * n)];
        Ok(major_arc_scan(&w, &fam, n, &theta, &radii, 5).map_err(|e| e.to_string())?.max_error)
    };
    let small = err(1e4)?;
    let large = err(1e6)?;
    check(large < small, || format!("error at 1e6 ({large:e}) not below error at 1e4 ({small:e})"))?;
    check(small < ARC_SCAN_CEILING && large < ARC_SCAN_CEILING, || {
        format!("errors {small:e}, {large:e} exceed ceiling {ARC_SCAN_CEILING:e}")
    })?;
    Ok(format!("err(1e4) = {small:.3e}, err(1e6) = {large:.3e}"))
}

/// Composite Simpson rule for `∫_{1/2}^{1} e(ζ·𝒫(Nt)) dt` on `2^22` panels.
fn symbol_oracle(n: f64, zeta: &[f64]) -> Complex64 {
    let panels = 1usize << 22;
    let h = 0.5 / panels as f64;
    let f = |t: f64| {
        let x = n * t;
        e(zeta[0] * x + zeta[1] * x * x)
    };
    let mut acc = f(0.5) + f(1.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for i in 1..panels {
        let wgt = if i % 2 == 1 { 4.0 } else { 2.0 };
        let y = f(0.5 + i as f64 * h) * wgt - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    acc * (h / 3.0)
}

fn ac6() -> Outcome {
    let fam = family("n,n^2");
    let n = 1000.0;
    let zero = continuous_symbol(&fam, n, &[0.0, 0.0], 1e-12).map_err(|e| e.to_string())?;
    check((zero - Complex64::new(0.5, 0.0)).norm() <= SYMBOL_AT_ZERO_TOL, || format!("m̃(0) = {zero}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let zeta = [rng.gen_range(-1e3..1e3) / n, rng.gen_range(-1e3..1e3) / (n * n)];
        let got = continuous_symbol(&fam, n, &zeta, 1e-12).map_err(|e| e.to_string())?;
        let want = symbol_oracle(n, &zeta);
        worst = worst.max((got - want).norm() / want.norm());
    }
    check(worst <= SYMBOL_REL_TOL, || format!("max relative error {worst:e}"))?;
    Ok(format!("|m̃(0) - 1/2| = {:.1e}, max relative error {worst:.2e}", (zero - 0.5).norm()))
}

/// Exhaustive `V^r`: every increasing index chain of length ≥ 2.
fn variation_oracle(seq: &[Complex64], r: f64) -> f64 {
    let n = seq.len();
    let mut best: f64 = 0.0;
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if idx.len() < 2 {
            continue;
        }
        let jumps = idx.windows(2).map(|p| (seq[p[1]] - seq[p[0]]).norm());
        let v = if r.is_infinite() {
            jumps.fold(0.0, f64::max)
        } else {
            jumps.map(|d| d.powf(r)).sum::<f64>().powf(1.0 / r)
        };
        best = best.max(v);
    }
    best
}

fn random_sequence(rng: &mut ChaCha8Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), 0.0)).collect()
}

fn lr_norm(seq: &[Complex64], r: f64) -> f64 {
    if r.is_infinite() {
        seq.iter().map(|a| a.norm()).fold(0.0, f64::max)
    } else {
        seq.iter().map(|a| a.norm().powf(r)).sum::<f64>().powf(1.0 / r)
    }
}

fn ac7() -> Outcome {
    let exps = [1.0, 2.0, 4.0, f64::INFINITY];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let len = rng.gen_range(0..=10);
        let seq = random_sequence(&mut rng, len);
        let mut prev = f64::INFINITY;
        for &r in &exps {
            let (v, _) = variation_norm(&seq, r).map_err(|e| e.to_string())?;
            let want = variation_oracle(&seq, r);
            worst = worst.max((v - want).abs() / want.max(1.0));
            check(v <= prev + VARIATION_TOL, || format!("V^r increased at r = {r}: {prev} -> {v}"))?;
            prev = v;
        }
    }
    check(worst <= VARIATION_TOL, || format!("DP vs oracle deviation {worst:e}"))?;
    for _ in 0..500 {
        let len = rng.gen_range(2..=40);
        let seq = random_sequence(&mut rng, len);
        let split = rng.gen_range(1..len);
        for &r in &exps {
            let (_, whole) = variation_norm(&seq, r).map_err(|e| e.to_string())?;
            let (_, a) = variation_norm(&seq[..split], r).map_err(|e| e.to_string())?;
            let (_, b) = variation_norm(&seq[split..], r).map_err(|e| e.to_string())?;
            let lr = lr_norm(&seq, r);
            check(whole <= 3.0 * lr * (1.0 + VARIATION_TOL), || format!("𝐕^{r} = {whole} > 3·ℓ^r = {}", 3.0 * lr))?;
            check(whole <= 2.0 * (a + b) * (1.0 + VARIATION_TOL), || format!("partition bound fails at r = {r}"))?;
        }
    }
    Ok(format!("DP vs oracle max deviation {worst:.1e}"))
}

fn ac8() -> Outcome {
    let fam = family("n,n^2");
    let mut worst: f64 = 0.0;
    for seed in 0..50 {
        let cfg = RmConfig { modulus: 64, scales: 5, exponent: 2.0, seed, n0: 16.0 };
        worst = worst.max(rm_check(&fam, &cfg).map_err(|e| e.to_string())?.ratio);
    }
    check(worst <= C_RM, || format!("max ratio {worst} > C_rm = {C_RM}"))?;
    let single = rm_check(&fam, &RmConfig { modulus: 64, scales: 1, exponent: 2.0, seed: 0, n0: 16.0 })
        .map_err(|e| e.to_string())?;
    check(single.ratio == 1.0, || format!("K = 1 ratio {}", single.ratio))?;
    Ok(format!("max ratio {worst:.3} (C_rm = {C_RM}), K = 1 ratio exactly 1"))
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn ac9() -> Outcome {
    let sq: Polynomial = "n^2".parse().unwrap();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for p in (101..=20_000u64).filter(|&p| is_prime(p)) {
        let gap = spectral_gap(p, 1, &sq).map_err(|e| e.to_string())?;
        let scaled = gap * (p as f64).sqrt();
        check(scaled <= SPECTRAL_GAP_CONST, || format!("p = {p}: √p·gap = {scaled}"))?;
        worst = worst.max(scaled);
        count += 1;
    }
    let lin: Polynomial = "n".parse().unwrap();
    for p in [101u64, 1009, 10007] {
        let eig = char_eigenvalues(p, 1, &lin).map_err(|e| e.to_string())?;
        let want = 1.0 / (p - 1) as f64;
        let max = eig[1..].iter().map(|v| v.norm()).fold(0.0, f64::max);
        check((max - want).abs() <= LINEAR_EIGEN_TOL, || format!("p = {p}: max |λ| = {max}, want {want}"))?;
    }
    Ok(format!("{count} primes, max √p·gap = {worst:.3}"))
}

fn ac10() -> Outcome {
    let sq: Polynomial = "n^2".parse().unwrap();
    let mut worst: f64 = 0.0;
    for p in (2..=4096u64).filter(|&p| is_prime(p)) {
        let mut j = 1;
        while p.pow(j) <= 4096 {
            let total: u64 = fiber_counts(p, j, &sq).map_err(|e| e.to_string())?.iter().sum();
            check(total == p.pow(j), || format!("{p}^{j}: Σh = {total}"))?;
            let norm = fiber_count_norm(p, j, &sq, 1.5).map_err(|e| e.to_string())?;
            check(norm <= FIBER_NORM_BOUND, || format!("{p}^{j}: ‖h‖ = {norm}"))?;
            worst = worst.max(norm);
            j += 1;
        }
    }
    Ok(format!("max ‖h‖_L^(3/2) = {worst:.3} (bound {FIBER_NORM_BOUND})"))
}

fn gap(a: &WeightFunction, b: &WeightFunction, n: u64) -> Result<UNormEstimate, String> {
    let target = if n <= 1 << 12 { GOWERS_ERROR_TARGET } else { GOWERS_ERROR_TARGET_LARGE };
    let steps = steps_for_error(n as usize, 1, target);
    weight_unorm_gap(a, b, n, 1, &steps).map_err(|e| e.to_string())
}

fn ac11() -> Outcome {
    let c = WeightFunction::cramer;
    let hb = WeightFunction::heath_brown;
    let n = 1 << 12;
    let mut lines = Vec::new();
    let pairs = [
        ("Cramer(4)-Cramer(64) < Cramer(2)-Cramer(64)", gap(&c(4.0), &c(64.0), n)?, gap(&c(2.0), &c(64.0), n)?),
        ("Cramer(16)-HB(16) < Cramer(2)-HB(2)", gap(&c(16.0), &hb(16.0), n)?, gap(&c(2.0), &hb(2.0), n)?),
        (
            "Λ-Λ_N at 2^14 < at 2^10",
            gap(&WeightFunction::VonMangoldt, &WeightFunction::lambda_n(4), 1 << 14)?,
            gap(&WeightFunction::VonMangoldt, &WeightFunction::lambda_n(4), 1 << 10)?,
        ),
    ];
    for (label, lo, hi) in &pairs {
        check(lo.certainly_below(hi), || {
            format!(
                "{label}: [{:.5}, {:.5}] vs [{:.5}, {:.5}]",
                lo.lower_bound,
                lo.upper_bound(),
                hi.lower_bound,
                hi.upper_bound()
            )
        })?;
        lines.push(format!("{:.4}<{:.4}", lo.upper_bound(), hi.lower_bound));
    }
    Ok(lines.join(", "))
}

fn ac12() -> Outcome {
    let sys = RotationSystem::new(2f64.sqrt()).map_err(|e| e.to_string())?;
    let fam = family("n,n^2");
    let w = WeightFunction::lambda_n(4);
    let chars = [TrigPoly::character(1), TrigPoly::character(1)];
    let dev = |n: f64| -> Result<f64, String> {
        Ok(rotation_average(&sys, &w, &fam, &chars, n, 0.0).map_err(|e| e.to_string())?.norm())
    };
    let small = dev((1u64 << 10) as f64)?;
    let large = dev((1u64 << 20) as f64)?;
    check(large < small, || format!("deviation {large} at 2^20 not below {small} at 2^10"))?;
    check(large < ROTATION_DEVIATION_THRESHOLD, || format!("deviation {large} above {ROTATION_DEVIATION_THRESHOLD}"))?;
    let ones = [TrigPoly::one(), TrigPoly::one()];
    let pg = prime_vs_mangoldt_gap(&sys, &fam, &ones, 1e5, 0.0).map_err(|e| e.to_string())?;
    check(pg <= PRIME_GAP_BOUND, || format!("prime-vs-Λ gap {pg}"))?;
    Ok(format!("deviation {small:.4} -> {large:.5}, prime gap {pg:.4}"))
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

fn ac13() -> Outcome {
    let q = 256usize;
    let radius = 2f64.powi(-4);
    let mut summary = Vec::new();
    for level in 0..=2u32 {
        let centres: Vec<f64> = farey_set(level).map_err(|e| e.to_string())?.members().iter().map(|m| m.value()).collect();
        let (mut kept, mut killed) = (0, 0);
        for t in 0..q as i64 {
            let tone = CyclicSignal::tone(q, t);
            let out = projection_pi(&tone, level, -4).map_err(|e| e.to_string())?;
            let freq = t as f64 / q as f64;
            let diff = |target: &CyclicSignal| {
                out.values().iter().zip(target.values()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
            };
            if centres.iter().any(|&c| circle_distance(c, freq) == 0.0) {
                let d = diff(&tone);
                check(d <= PROJECTION_TOL, || format!("l = {level}, tone {t} changed by {d:e}"))?;
                kept += 1;
            } else if centres.iter().all(|&c| circle_distance(c, freq) >= radius) {
                let d = diff(&CyclicSignal::constant(q, Complex64::new(0.0, 0.0)));
                check(d <= PROJECTION_TOL, || format!("l = {level}, tone {t} survives with {d:e}"))?;
                killed += 1;
            }
        }
        summary.push(format!("l={level}: {kept} kept, {killed} annihilated"));
    }
    Ok(summary.join("; "))
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_ergodic-lab"))
}

const DETERMINISM_RUNS: &[&[&str]] = &[
    &["weights", "--weight", "cramer:20", "--N", "2^16", "--modulus", "7", "--residue", "3", "--moment", "2"],
    &["unorm", "--weight", "mangoldt", "--minus", "lambda_n:4", "--N", "64", "--degree", "2", "--error", "0.5"],
    &["expsum", "--weight", "lambda_n:4", "--family", "n,n^2", "--N", "1e5", "--xi", "0.3,0.1"],
    &["symbol", "--family", "n,n^2", "--N", "1e4", "--zeta", "1e-2,3e-6"],
    &["arcscan", "--family", "n,n^2", "--N", "1e5", "--theta", "1/3,1/3", "--grid", "3"],
    &["gauss", "--family", "n,n^2", "--a", "1,2", "--q", "15"],
    &["average", "--weight", "cramer:5", "--family", "n,n^2", "--signal", "0:1;2;3", "--signal", "-1:1;-1;2;0.5", "--N", "8", "--untruncated"],
    &["dual", "--weight", "cramer:5", "--family", "n,n^2", "--signal", "0:1;2;3", "--signal", "-1:1;-1;2;0.5", "--N", "8", "--untruncated", "--j", "2"],
    &["variation", "--values", "1,-2,0.5,3,2,-1", "--r", "1,2,4,inf"],
    &["rmcheck", "--trials", "3"],
    &["padic-eig", "--p", "101", "--j", "1"],
    &["padic-count", "--p", "3", "--j", "5", "--s", "1.5"],
    &["rotation", "--func", "e", "--func", "e", "--N", "2^16"],
    &["converge", "--func", "e", "--func", "e", "--scales", "2^10,2^12,2^14,2^16"],
    &["farey", "--level", "5"],
    &["project", "--Q", "256", "--tone", "64", "--level", "2", "--k-scale", "-4"],
    &["iwconst", "--C", "1", "--N", "65536"],
];

fn ac14() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ergodic-lab-ac14-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for args in DETERMINISM_RUNS {
        let mut outputs = Vec::new();
        for (run, threads) in ["1", "8", "1", "8"].iter().enumerate() {
            let path = dir.join(format!("{}-{run}.csv", args[0]));
            let status = Command::new(bin())
                .args(*args)
                .args(["--threads", threads, "-o"])
                .arg(&path)
                .status()
                .map_err(|e| e.to_string())?;
            check(status.success(), || format!("{} exited with {status}", args[0]))?;
            outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
        }
        check(outputs.iter().all(|o| o == &outputs[0]), || format!("{} output depends on the thread count", args[0]))?;
        let lines = outputs[0].iter().filter(|&&b| b == b'\n').count();
        check(lines >= 2, || format!("{} wrote no data rows", args[0]))?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} subcommands byte-identical across 1 and 8 threads", DETERMINISM_RUNS.len()))
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, name: "Ramanujan closed form vs brute force", limit: secs(5), run: ac1 },
    Criterion { id: 2, name: "Heath-Brown small cases", limit: None, run: ac2 },
    Criterion { id: 3, name: "Cramer statistics", limit: secs(30), run: ac3 },
    Criterion { id: 4, name: "adjoint identity", limit: secs(10), run: ac4 },
    Criterion { id: 5, name: "major-arc approximation", limit: secs(120), run: ac5 },
    Criterion { id: 6, name: "continuous symbol", limit: secs(20), run: ac6 },
    Criterion { id: 7, name: "variation DP", limit: secs(10), run: ac7 },
    Criterion { id: 8, name: "Rademacher-Menshov harness", limit: secs(120), run: ac8 },
    Criterion { id: 9, name: "p-adic spectral gap", limit: secs(180), run: ac9 },
    Criterion { id: 10, name: "fiber counting", limit: secs(30), run: ac10 },
    Criterion { id: 11, name: "Gowers-norm trends", limit: secs(300), run: ac11 },
    Criterion { id: 12, name: "rotation convergence", limit: secs(180), run: ac12 },
    Criterion { id: 13, name: "projection correctness", limit: secs(5), run: ac13 },
    Criterion { id: 14, name: "CLI determinism", limit: None, run: ac14 },
];

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                Err(format!("panicked: {msg}"))
            });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match &outcome {
            Ok(detail) => println!("[PASS] AC{} {} ({elapsed:.2?}): {detail}", c.id, c.name),
            Err(why) => {
                println!("[FAIL] AC{} {} ({elapsed:.2?}): {why}", c.id, c.name);
                failures.push(c.id);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
