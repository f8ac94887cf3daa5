//! Rational frequencies, major arcs, exponential sums and their major-arc
//! approximation, the Ionescu-Wainger constant and projection.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::approximants::WeightFunction;
use crate::error::{Error, Result};
use crate::numeric::{e, e_ratio, frac_mul, gcd, par_sum, CompensatedSum};
use crate::padic::CyclicSignal;
use crate::polynomial::PolynomialFamily;
use crate::signals::{index_range, SignalZ};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest Farey level: `2^l ≤ 2^16`.
pub const MAX_FAREY_LEVEL: u32 = 16;
/// Largest number of Farey members materialised at once.
pub const MAX_FAREY_MEMBERS: u64 = 1 << 24;

/// Smallest power of two `≥ q`, for a reduced fraction `b/q`.
pub fn height(b: i64, q: u64) -> Result<u64> {
    if q == 0 {
        return Err(Error::invalid("denominator must be positive"));
    }
    if gcd(b.unsigned_abs(), q) != 1 {
        return Err(Error::invalid(format!("{b}/{q} is not reduced")));
    }
    Ok(q.next_power_of_two())
}

/// A reduced fraction `b/q` with `0 ≤ b < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalFrequency {
    pub b: u64,
    pub q: u64,
}

impl RationalFrequency {
    pub fn new(b: u64, q: u64) -> Result<Self> {
        if q == 0 || b >= q {
            return Err(Error::invalid(format!("{b}/{q} is not in [0, 1) with q >= 1")));
        }
        if gcd(b, q) != 1 {
            return Err(Error::invalid(format!("{b}/{q} is not reduced")));
        }
        Ok(Self { b, q })
    }

    /// The reduced representative of `b/q mod 1`.
    pub fn reduce(b: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::invalid("denominator must be positive"));
        }
        let r = b.rem_euclid(q as i64) as u64;
        let g = gcd(r, q);
        Ok(Self { b: r / g, q: q / g })
    }

    pub fn value(&self) -> f64 {
        self.b as f64 / self.q as f64
    }

    pub fn height(&self) -> u64 {
        self.q.next_power_of_two()
    }
}

impl std::fmt::Display for RationalFrequency {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.b, self.q)
    }
}

impl std::str::FromStr for RationalFrequency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("cannot parse rational frequency '{s}'"));
        let (b, q) = match s.trim().split_once('/') {
            Some((b, q)) => (
                b.trim().parse::<i64>().map_err(|_| bad())?,
                q.trim().parse::<u64>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
        };
        Self::reduce(b, q)
    }
}

/// `Σ_{q ≤ 2^l} φ(q) ≈ (3/π²)·4^l`.
pub fn farey_cardinality_estimate(level: u32) -> f64 {
    3.0 / (PI * PI) * 4f64.powi(level as i32)
}

/// All reduced `b/q ∈ [0, 1)` with `q ≤ 2^l`, in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct FareySet {
    level: u32,
    members: Vec<RationalFrequency>,
}

pub fn farey_set(level: u32) -> Result<FareySet> {
    if level > MAX_FAREY_LEVEL {
        return Err(Error::range("Farey level", format!("{level} (2^l must not exceed 2^16)")));
    }
    let est = farey_cardinality_estimate(level);
    if est > MAX_FAREY_MEMBERS as f64 {
        return Err(Error::range(
            "Farey level",
            format!("level {level} has about {est:.3e} members (limit 2^24)"),
        ));
    }
    let n = 1u64 << level;
    let mut members = vec![RationalFrequency { b: 0, q: 1 }];
    // next-term recurrence of the Farey sequence of order n
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c < d {
        members.push(RationalFrequency { b: c, q: d });
        let k = (n + b) / d;
        let (nc, nd) = (k * c - a, k * d - b);
        a = c;
        b = d;
        c = nc;
        d = nd;
    }
    Ok(FareySet { level, members })
}

impl FareySet {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn members(&self) -> &[RationalFrequency] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Smallest distance mod 1 between two distinct members (1 for a singleton).
    pub fn min_gap(&self) -> f64 {
        if self.members.len() < 2 {
            return 1.0;
        }
        let mut gap = 1.0 - self.members.last().unwrap().value();
        for w in self.members.windows(2) {
            gap = gap.min(1.0 / (w[0].q * w[1].q) as f64);
        }
        gap
    }

    /// Members within distance `radius` (mod 1) of `xi`, with signed offsets
    /// `xi - b/q ∈ [-1/2, 1/2)`.
    pub fn near(&self, xi: f64, radius: f64) -> Vec<(RationalFrequency, f64)> {
        let x = xi.rem_euclid(1.0);
        let len = self.members.len();
        let pos = self.members.partition_point(|m| m.value() <= x);
        let mut out = Vec::new();
        let signed = |m: &RationalFrequency| {
            let d = (x - m.value()).rem_euclid(1.0);
            if d >= 0.5 {
                d - 1.0
            } else {
                d
            }
        };
        // walk downwards then upwards, wrapping around
        for step in 0..len {
            let m = &self.members[(pos + len - 1 - step) % len];
            let d = signed(m);
            if d.abs() > radius {
                break;
            }
            out.push((*m, d));
        }
        for step in 0..len {
            let m = &self.members[(pos + step) % len];
            let d = signed(m);
            if d.abs() > radius || out.iter().any(|(o, _)| o == m) {
                break;
            }
            out.push((*m, d));
        }
        out
    }
}

/// Union of the arcs `[b/q - 2^k, b/q + 2^k]` over `FareySet(l)`, mod 1.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorArcSpec {
    pub farey: FareySet,
    pub k_scale: i32,
}

impl MajorArcSpec {
    pub fn new(level: u32, k_scale: i32) -> Result<Self> {
        Ok(Self {
            farey: farey_set(level)?,
            k_scale,
        })
    }

    pub fn radius(&self) -> f64 {
        2f64.powi(self.k_scale)
    }

    pub fn contains(&self, xi: f64) -> bool {
        !self.farey.near(xi, self.radius()).is_empty()
    }
}

/// `G^×(a/q) = E_{n∈[q]^×} e(Σ_i a_i P_i(n)/q)`.
pub fn gauss_sum(fam: &PolynomialFamily, a: &[i64], q: u64) -> Result<Complex64> {
    if q == 0 {
        return Err(Error::invalid("gauss_sum requires q >= 1"));
    }
    if a.len() != fam.k() {
        return Err(Error::invalid(format!("expected {} numerators, got {}", fam.k(), a.len())));
    }
    let qi = q as i128;
    let mut acc = CompensatedSum::new();
    let mut units = 0u64;
    for n in 1..=q {
        if gcd(n, q) != 1 {
            continue;
        }
        units += 1;
        let mut num: i128 = 0;
        for (p, &ai) in fam.polys().iter().zip(a) {
            num = (num + (ai as i128).rem_euclid(qi) * p.eval_mod(n as i64, q) as i128).rem_euclid(qi);
        }
        acc.add(e_ratio(num, q));
    }
    Ok(acc.value() / units as f64)
}

/// Nonzero weighted terms `(w(n), P_1(n), …, P_k(n))` over `J_N`.
struct Terms {
    weights: Vec<f64>,
    values: Vec<Vec<i128>>,
    floor_n: f64,
}

impl Terms {
    fn build(w: &WeightFunction, fam: &PolynomialFamily, n: f64) -> Result<Self> {
        let range = index_range(n, true)?;
        let table = w.table(range.end - 1, n.max(2.0))?;
        let mut weights = Vec::new();
        let mut values = Vec::new();
        for m in range {
            let wm = table[m as usize];
            if wm == 0.0 {
                continue;
            }
            weights.push(wm);
            values.push(fam.eval_all(m as i64)?.into_iter().map(|v| v as i128).collect());
        }
        Ok(Self {
            weights,
            values,
            floor_n: n.floor(),
        })
    }

    /// `(1/⌊N⌋) Σ w(n) e(a·P(n)/q) e(η·P(n))`.
    fn sum(&self, a: &[i64], q: u64, eta: &[f64]) -> Complex64 {
        let qi = q as i128;
        let total = par_sum(0..self.weights.len() as u64, |t| {
            let t = t as usize;
            let p = &self.values[t];
            let mut num: i128 = 0;
            let mut frac = 0.0;
            for i in 0..p.len() {
                if q > 1 {
                    num = (num + (a[i] as i128) * p[i].rem_euclid(qi)).rem_euclid(qi);
                }
                frac += frac_mul(eta[i], p[i]);
            }
            let rational = if q > 1 { e_ratio(num, q) } else { Complex64::new(1.0, 0.0) };
            rational * e(frac) * self.weights[t]
        });
        total / self.floor_n
    }
}

/// `m_{N,w}(ξ) = (1/⌊N⌋) Σ_{n∈J_N} w(n) e(ξ·𝒫(n))`.
pub fn exp_sum_m(w: &WeightFunction, fam: &PolynomialFamily, n: f64, xi: &[f64]) -> Result<Complex64> {
    if xi.len() != fam.k() {
        return Err(Error::invalid(format!("expected {} frequencies, got {}", fam.k(), xi.len())));
    }
    let terms = Terms::build(w, fam, n)?;
    let zeros = vec![0i64; fam.k()];
    Ok(terms.sum(&zeros, 1, xi))
}

const GL_ORDER: usize = 16;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, by Newton iteration.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static NODES: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    NODES.get_or_init(|| {
        let n = GL_ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        out
    })
}

fn composite_gl(phase: &(impl Fn(f64) -> f64 + Sync), panels: usize) -> Complex64 {
    let nodes = gauss_legendre();
    let h = 0.5 / panels as f64;
    par_sum(0..panels as u64, |p| {
        let lo = 0.5 + p as f64 * h;
        let mid = lo + 0.5 * h;
        let mut acc = ZERO;
        for &(x, wgt) in nodes {
            acc += e(phase(mid + 0.5 * h * x)) * wgt;
        }
        acc * (0.5 * h)
    })
}

/// `m̃_{N,ℝ}(ζ) = ∫_{1/2}^{1} e(ζ·𝒫(Nt)) dt` by composite Gauss-Legendre
/// quadrature, refined by panel doubling until two successive values agree
/// to `rel_tol`.
pub fn continuous_symbol(fam: &PolynomialFamily, n: f64, zeta: &[f64], rel_tol: f64) -> Result<Complex64> {
    if zeta.len() != fam.k() {
        return Err(Error::invalid(format!("expected {} frequencies, got {}", fam.k(), zeta.len())));
    }
    if !(rel_tol >= 1e-12) {
        return Err(Error::range("rel_tol", format!("{rel_tol} (need >= 1e-12)")));
    }
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::range("scale N", format!("{n}")));
    }
    if zeta.iter().all(|&z| z == 0.0) {
        return Ok(Complex64::new(0.5, 0.0));
    }
    let polys = fam.polys();
    let phase = |t: f64| -> f64 {
        zeta.iter()
            .zip(polys)
            .map(|(z, p)| z * p.eval_f64(n * t))
            .sum()
    };
    let cycles: f64 = zeta.iter().zip(polys).map(|(z, p)| z.abs() * p.abs_bound(n)).sum();
    let mut panels = 16usize.max(cycles.ceil().min(1e9) as usize);
    let mut prev = composite_gl(&phase, panels);
    let mut residual = f64::INFINITY;
    for _ in 0..12 {
        panels *= 2;
        let next = composite_gl(&phase, panels);
        residual = (next - prev).norm();
        if residual <= rel_tol * next.norm() + 1e-15 {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NonConvergence {
        doublings: 12,
        residual,
    })
}

/// One evaluation point of a major-arc scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcScanPoint {
    pub xi: Vec<f64>,
    pub value: Complex64,
    pub approximation: Complex64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArcScanReport {
    pub points: Vec<ArcScanPoint>,
    pub max_error: f64,
    pub gauss: Complex64,
    /// `2^{k·l}·(1 + max_i radius_i·N^{d_i})`, with `2^l` the height of `θ`.
    pub comparison_scale: f64,
}

impl ArcScanReport {
    /// Columns `xi_1..xi_k, re, im, abs, err`.
    pub fn to_csv(&self) -> String {
        let k = self.points.first().map(|p| p.xi.len()).unwrap_or(0);
        let mut s = String::new();
        for i in 1..=k {
            let _ = write!(s, "xi_{i},");
        }
        s.push_str("re,im,abs,err\n");
        for p in &self.points {
            for x in &p.xi {
                let _ = write!(s, "{x:.16e},");
            }
            let _ = writeln!(
                s,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                p.value.re,
                p.value.im,
                p.value.norm(),
                p.error
            );
        }
        s
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Maximum of `|m_{N,w}(ξ) - G^×(θ)·m̃_{N,ℝ}(ξ - θ)|` over the product grid
/// `|ξ_i - θ_i| ≤ radii_i` with `grid` points per coordinate.
pub fn major_arc_scan(
    w: &WeightFunction,
    fam: &PolynomialFamily,
    n: f64,
    theta: &[RationalFrequency],
    radii: &[f64],
    grid: usize,
) -> Result<ArcScanReport> {
    let k = fam.k();
    if theta.len() != k || radii.len() != k {
        return Err(Error::invalid(format!("θ and radii need {k} components")));
    }
    if grid == 0 {
        return Err(Error::range("grid", "need at least one point per coordinate"));
    }
    let q = theta.iter().fold(1u64, |acc, t| lcm(acc, t.q));
    for (t, &r) in theta.iter().zip(radii) {
        if !(r >= 0.0) || r > 1.0 / (2.0 * (q * q) as f64) {
            return Err(Error::range(
                "arc radius",
                format!("{r} leaves the arc around {t} (limit 1/(2q²) with q = {q})"),
            ));
        }
    }
    let points_total = (grid as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
    if points_total > 1 << 20 {
        return Err(Error::range("scan grid", format!("{points_total} points exceeds 2^20")));
    }
    let a: Vec<i64> = theta.iter().map(|t| (t.b * (q / t.q)) as i64).collect();
    let gauss = gauss_sum(fam, &a, q)?;
    let terms = Terms::build(w, fam, n)?;

    let offsets = |idx: u64| -> Vec<f64> {
        let mut rest = idx;
        let mut out = vec![0.0; k];
        for i in (0..k).rev() {
            let t = rest % grid as u64;
            rest /= grid as u64;
            out[i] = if grid == 1 {
                0.0
            } else {
                radii[i] * (2.0 * t as f64 / (grid - 1) as f64 - 1.0)
            };
        }
        out
    };
    let points: Vec<ArcScanPoint> = (0..points_total)
        .into_par_iter()
        .map(|idx| -> Result<ArcScanPoint> {
            let eta = offsets(idx);
            let value = terms.sum(&a, q, &eta);
            let approximation = gauss * continuous_symbol(fam, n, &eta, 1e-10)?;
            Ok(ArcScanPoint {
                xi: theta.iter().zip(&eta).map(|(t, d)| t.value() + d).collect(),
                value,
                approximation,
                error: (value - approximation).norm(),
            })
        })
        .collect::<Result<_>>()?;
    let max_error = points.iter().map(|p| p.error).fold(0.0, f64::max);
    let level = q.next_power_of_two().trailing_zeros() as i32;
    let growth = radii
        .iter()
        .zip(fam.degrees())
        .map(|(r, d)| r * n.powi(d as i32))
        .fold(0.0, f64::max);
    Ok(ArcScanReport {
        points,
        max_error,
        gauss,
        comparison_scale: 2f64.powi(k as i32 * level) * (1.0 + growth),
    })
}

/// `C · log N · (log log log N / log log N)`, base-2 logarithms.
pub fn iw_constant(c: f64, n: f64) -> Result<f64> {
    if !(n >= 100.0) {
        return Err(Error::range("N", format!("{n} (need N >= 100)")));
    }
    if !(c > 0.0) {
        return Err(Error::range("C", format!("{c} (need C > 0)")));
    }
    let l1 = n.log2();
    let l2 = l1.log2();
    let l3 = l2.log2();
    Ok(c * l1 * l3 / l2)
}

/// Smooth even cutoff: `1` on `[-1/2, 1/2]`, supported in `[-1, 1]`.
pub fn eta(x: f64) -> f64 {
    fn psi(t: f64) -> f64 {
        if t > 0.0 {
            (-1.0 / t).exp()
        } else {
            0.0
        }
    }
    let t = 2.0 - 2.0 * x.abs();
    if t >= 1.0 {
        1.0
    } else if t <= 0.0 {
        0.0
    } else {
        psi(t) / (psi(t) + psi(1.0 - t))
    }
}

/// Fourier multiplier `Σ_{b/q∈FareySet(l)} η((t/Q - b/q)/2^k)` at every `t ∈ ℤ/Q`.
pub fn projection_multiplier(modulus: usize, level: u32, k_scale: i32) -> Result<Vec<f64>> {
    if modulus < 2 || !modulus.is_power_of_two() {
        return Err(Error::range("modulus Q", format!("{modulus} (need a power of two >= 2)")));
    }
    let radius = 2f64.powi(k_scale);
    if radius < 1.0 / modulus as f64 {
        return Err(Error::range(
            "arc scale",
            format!("2^{k_scale} is below the resolution 1/{modulus}"),
        ));
    }
    let farey = farey_set(level)?;
    let gap = farey.min_gap();
    if farey.len() > 1 && radius > gap {
        return Err(Error::range(
            "arc scale",
            format!("2^{k_scale} exceeds the minimal Farey gap {gap:.6} at level {level}; arcs overlap"),
        ));
    }
    Ok((0..modulus)
        .into_par_iter()
        .map(|t| {
            let xi = t as f64 / modulus as f64;
            farey
                .near(xi, radius)
                .into_iter()
                .map(|(_, d)| eta(d / radius))
                .sum()
        })
        .collect())
}

/// `Π_{≤l, k}` on ℤ/Qℤ: the projection multiplier applied to the transform of `f`.
pub fn projection_pi(f: &CyclicSignal, level: u32, k_scale: i32) -> Result<CyclicSignal> {
    let mult = projection_multiplier(f.modulus(), level, k_scale)?;
    let spectrum: Vec<Complex64> = f.dft().into_iter().zip(&mult).map(|(v, m)| v * m).collect();
    CyclicSignal::from_spectrum(&spectrum)
}

/// [`projection_pi`] for a finitely supported signal, embedded in ℤ/Qℤ. The
/// support must occupy at most `Q/4` points; the output is returned on the
/// `Q` points centred on the input window.
pub fn projection_pi_z(f: &SignalZ, modulus: usize, level: u32, k_scale: i32) -> Result<SignalZ> {
    let len = f.values().len();
    if len * 4 > modulus {
        return Err(Error::range(
            "support width",
            format!("{len} exceeds Q/4 = {} (aliasing guard)", modulus / 4),
        ));
    }
    let pad = (modulus - len) / 2;
    let mut buf = vec![ZERO; modulus];
    buf[pad..pad + len].copy_from_slice(f.values());
    let out = projection_pi(&CyclicSignal::new(buf)?, level, k_scale)?;
    Ok(SignalZ::new(f.offset() - pad as i64, out.values().to_vec()))
}
