//! Subcommand definitions and their reports.

use clap::{Args, Subcommand};

use ergodic_lab::approximants::{weight_statistics, WeightFunction};
use ergodic_lab::circle_method::{
    continuous_symbol, exp_sum_m, farey_set, gauss_sum, iw_constant, major_arc_scan, projection_pi,
};
use ergodic_lab::gowers::{steps_for_error, u_norm_estimate, UNormEstimate};
use ergodic_lab::padic::{eigen_report, fiber_count_norm, fiber_counts, CyclicSignal};
use ergodic_lab::polynomial::{Polynomial, PolynomialFamily};
use ergodic_lab::rotation::{convergence_series, rotation_average, RotationSystem, TrigPoly};
use ergodic_lab::signals::{dual_average, multi_average, SignalZ};
use ergodic_lab::variation::{rm_check, variation_norm, LacunarySet, RmConfig};
use ergodic_lab::Complex64;

use crate::parse;
use crate::table::{Cell, Table};
use crate::CliError;

pub const NAMES: &[&str] = &[
    "weights",
    "unorm",
    "expsum",
    "symbol",
    "arcscan",
    "gauss",
    "average",
    "dual",
    "variation",
    "rmcheck",
    "padic-eig",
    "padic-count",
    "rotation",
    "converge",
    "farey",
    "project",
    "iwconst",
];

type Res<T> = Result<T, CliError>;

fn weight(s: &str) -> Res<WeightFunction> {
    Ok(s.parse::<WeightFunction>()?)
}

fn family(s: &str) -> Res<PolynomialFamily> {
    Ok(s.parse::<PolynomialFamily>()?)
}

#[derive(Debug, Clone, Args)]
pub struct WeightsArgs {
    /// Weight, e.g. `cramer:20`, `hb:8`, `hbt:8:0.5`, `lambda_n:4`, `mangoldt`, `diff(A,B)`.
    #[arg(long)]
    pub weight: String,
    #[arg(long = "N")]
    pub n: String,
    #[arg(long)]
    pub modulus: Option<u64>,
    #[arg(long)]
    pub residue: Option<u64>,
    #[arg(long)]
    pub moment: Option<u32>,
    /// List `n, w(n)` for every `n ≤ N` instead of the statistics.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Args)]
pub struct UnormArgs {
    /// Weight sampled on `[N]` (unless `--from-csv` supplies the sequence).
    #[arg(long)]
    pub weight: Option<String>,
    /// Subtracted weight.
    #[arg(long)]
    pub minus: Option<String>,
    #[arg(long = "N")]
    pub n: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub degree: usize,
    /// Target for `additive_error / E|f|` when `--steps` is absent.
    #[arg(long, default_value = "0.01")]
    pub error: String,
    /// Explicit grid steps `δ_0,…,δ_s`.
    #[arg(long)]
    pub steps: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ExpSumArgs {
    #[arg(long, default_value = "unit")]
    pub weight: String,
    #[arg(long)]
    pub family: String,
    #[arg(long = "N")]
    pub n: String,
    /// Frequencies `ξ_1,…,ξ_k`.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: String,
}

#[derive(Debug, Clone, Args)]
pub struct SymbolArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long = "N")]
    pub n: String,
    #[arg(long, allow_hyphen_values = true)]
    pub zeta: String,
    #[arg(long = "rel-tol", default_value = "1e-10")]
    pub rel_tol: String,
}

#[derive(Debug, Clone, Args)]
pub struct ArcScanArgs {
    #[arg(long, default_value = "lambda_n:4")]
    pub weight: String,
    #[arg(long)]
    pub family: String,
    #[arg(long = "N")]
    pub n: String,
    /// Rational centre, e.g. `1/3,1/3`.
    #[arg(long)]
    pub theta: String,
    /// Radii per coordinate; overrides `--radius-c`.
    #[arg(long)]
    pub radii: Option<String>,
    /// Radii `c / N^{d_i}`.
    #[arg(long = "radius-c", default_value = "1")]
    pub radius_c: String,
    #[arg(long, default_value_t = 5)]
    pub grid: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GaussArgs {
    #[arg(long)]
    pub family: String,
    /// Numerators `a_1,…,a_k`.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long)]
    pub q: u64,
}

#[derive(Debug, Clone, Args)]
pub struct AverageArgs {
    #[arg(long, default_value = "unit")]
    pub weight: String,
    #[arg(long)]
    pub family: String,
    /// One per slot: `delta:X`, `OFFSET:v;v;…` or `file:PATH`.
    #[arg(long = "signal", allow_hyphen_values = true)]
    pub signals: Vec<String>,
    #[arg(long = "N")]
    pub n: String,
    /// Sum over `[N]` instead of `J_N = [N] \ [N/2]`.
    #[arg(long)]
    pub untruncated: bool,
    /// Dual slot (1-based); used by `dual` only.
    #[arg(long)]
    pub j: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct VariationArgs {
    /// Real sequence; `--from-csv` may supply it instead.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// Exponents, e.g. `1,2,inf`.
    #[arg(long, default_value = "2")]
    pub r: String,
}

#[derive(Debug, Clone, Args)]
pub struct RmArgs {
    #[arg(long, default_value = "n,n^2")]
    pub family: String,
    #[arg(long = "Q", default_value_t = 64)]
    pub modulus: usize,
    #[arg(long = "K", default_value_t = 5)]
    pub scales: usize,
    #[arg(long, default_value = "2")]
    pub q: String,
    #[arg(long = "N0", default_value = "16")]
    pub n0: String,
    /// Number of consecutive seeds starting at `--seed`.
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PadicArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub j: u32,
    #[arg(long, default_value = "n^2")]
    pub poly: String,
    /// Exponent of the fiber norm (`padic-count`).
    #[arg(long, default_value = "1.5")]
    pub s: String,
    /// List every fiber size (`padic-count`).
    #[arg(long)]
    pub fibers: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RotationArgs {
    #[arg(long, default_value = "sqrt(2)", allow_hyphen_values = true)]
    pub alpha: String,
    #[arg(long, default_value = "lambda_n:4")]
    pub weight: String,
    #[arg(long, default_value = "n,n^2")]
    pub family: String,
    /// One observable per slot: `one`, `e`, `e:K` or `K:re[:im]+…`.
    #[arg(long = "func", allow_hyphen_values = true)]
    pub funcs: Vec<String>,
    #[arg(long = "N", default_value = "2^10")]
    pub n: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub x: String,
    /// Scales for `converge`, e.g. `2^10,2^12,2^14`.
    #[arg(long)]
    pub scales: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct FareyArgs {
    #[arg(long)]
    pub level: u32,
}

#[derive(Debug, Clone, Args)]
pub struct ProjectArgs {
    #[arg(long = "Q", default_value_t = 256)]
    pub modulus: usize,
    /// Project the tone `n ↦ e(t n / Q)`.
    #[arg(long, allow_hyphen_values = true)]
    pub tone: Option<i64>,
    /// Or explicit values `v;v;…` (real or `a+bi`), length `Q`.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    #[arg(long)]
    pub level: u32,
    #[arg(long = "k-scale", allow_hyphen_values = true)]
    pub k_scale: i32,
}

#[derive(Debug, Clone, Args)]
pub struct IwArgs {
    #[arg(long = "C")]
    pub c: String,
    #[arg(long = "N")]
    pub n: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Weight statistics or values.
    Weights(WeightsArgs),
    /// Little Gowers norm estimate of a weight difference or a sequence.
    Unorm(UnormArgs),
    /// Discrete exponential sum m_{N,w}(ξ).
    Expsum(ExpSumArgs),
    /// Continuous symbol m̃_{N,ℝ}(ζ).
    Symbol(SymbolArgs),
    /// Major-arc approximation error scan.
    Arcscan(ArcScanArgs),
    /// Gauss sum G^×(a/q).
    Gauss(GaussArgs),
    /// Multilinear average on the integers.
    Average(AverageArgs),
    /// Dual average in slot j.
    Dual(AverageArgs),
    /// r-variation seminorms and norms.
    Variation(VariationArgs),
    /// Rademacher-Menshov ratio harness.
    Rmcheck(RmArgs),
    /// Character eigenvalues of the unit-group average.
    #[command(name = "padic-eig")]
    PadicEig(PadicArgs),
    /// Fiber-count norm.
    #[command(name = "padic-count")]
    PadicCount(PadicArgs),
    /// Weighted average along a circle rotation.
    Rotation(RotationArgs),
    /// Convergence table along lacunary scales.
    Converge(RotationArgs),
    /// Farey set of level l.
    Farey(FareyArgs),
    /// Ionescu-Wainger projection on ℤ/Q.
    Project(ProjectArgs),
    /// Ionescu-Wainger constant.
    Iwconst(IwArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Weights(_) => "weights",
            Command::Unorm(_) => "unorm",
            Command::Expsum(_) => "expsum",
            Command::Symbol(_) => "symbol",
            Command::Arcscan(_) => "arcscan",
            Command::Gauss(_) => "gauss",
            Command::Average(_) => "average",
            Command::Dual(_) => "dual",
            Command::Variation(_) => "variation",
            Command::Rmcheck(_) => "rmcheck",
            Command::PadicEig(_) => "padic-eig",
            Command::PadicCount(_) => "padic-count",
            Command::Rotation(_) => "rotation",
            Command::Converge(_) => "converge",
            Command::Farey(_) => "farey",
            Command::Project(_) => "project",
            Command::Iwconst(_) => "iwconst",
        }
    }
}

fn read_csv(path: &std::path::Path) -> Res<Table> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(Table::from_csv(&text)?)
}

/// The sequence stored in `--column` (or the `re`/`im` pair) of a table.
fn sequence_from(table: &Table, column: Option<&str>) -> Res<Vec<Complex64>> {
    let value = |row: &Vec<Cell>, c: usize| -> Res<f64> {
        row[c]
            .as_f64()
            .ok_or_else(|| CliError::Invalid(format!("non-numeric entry in column '{}'", table.columns[c])))
    };
    match column {
        Some(name) => {
            let c = table
                .column(name)
                .ok_or_else(|| CliError::Invalid(format!("no column '{name}' in the CSV")))?;
            table.rows.iter().map(|r| Ok(Complex64::new(value(r, c)?, 0.0))).collect()
        }
        None => {
            let re = table
                .column("re")
                .ok_or_else(|| CliError::Invalid("CSV has no 're' column; pass --column".into()))?;
            let im = table.column("im");
            table
                .rows
                .iter()
                .map(|r| {
                    let i = match im {
                        Some(c) => value(r, c)?,
                        None => 0.0,
                    };
                    Ok(Complex64::new(value(r, re)?, i))
                })
                .collect()
        }
    }
}

/// Builds the report of one subcommand.
pub fn execute(cli: &crate::Cli) -> Res<Table> {
    let g = &cli.global;
    let from_csv = match &g.from_csv {
        Some(p) => Some(read_csv(p)?),
        None => None,
    };
    match (&cli.command, from_csv) {
        (Command::Variation(a), Some(t)) => variation(a, Some(sequence_from(&t, g.column.as_deref())?)),
        (Command::Unorm(a), Some(t)) => unorm(a, Some(sequence_from(&t, g.column.as_deref())?)),
        (_, Some(t)) => Ok(t),
        (Command::Weights(a), None) => weights(a),
        (Command::Unorm(a), None) => unorm(a, None),
        (Command::Expsum(a), None) => expsum(a),
        (Command::Symbol(a), None) => symbol(a),
        (Command::Arcscan(a), None) => arcscan(a),
        (Command::Gauss(a), None) => gauss(a),
        (Command::Average(a), None) => average(a, None),
        (Command::Dual(a), None) => {
            let j = a.j.ok_or_else(|| CliError::Invalid("dual needs --j (1-based slot)".into()))?;
            if j == 0 {
                return Err(CliError::Invalid("--j is 1-based".into()));
            }
            average(a, Some(j - 1))
        }
        (Command::Variation(a), None) => variation(a, None),
        (Command::Rmcheck(a), None) => rmcheck(a, g.seed),
        (Command::PadicEig(a), None) => padic_eig(a),
        (Command::PadicCount(a), None) => padic_count(a),
        (Command::Rotation(a), None) => rotation(a),
        (Command::Converge(a), None) => converge(a),
        (Command::Farey(a), None) => farey(a),
        (Command::Project(a), None) => project(a),
        (Command::Iwconst(a), None) => iwconst(a),
    }
}

fn weights(a: &WeightsArgs) -> Res<Table> {
    let w = weight(&a.weight)?;
    let n = parse::count(&a.n)?;
    if a.list {
        let values = w.table(n, (n as f64).max(2.0))?;
        let mut t = Table::new(&["n", "w"]);
        for (i, v) in values.iter().enumerate().skip(1) {
            t.push(vec![i.into(), (*v).into()]);
        }
        return Ok(t);
    }
    let residue = match (a.modulus, a.residue) {
        (Some(q), Some(b)) => Some((q, b)),
        (None, None) => None,
        _ => return Err(CliError::Invalid("--modulus and --residue go together".into())),
    };
    let r = weight_statistics(&w, n, residue, a.moment)?;
    let mut t = Table::new(&["weight", "N", "mean", "residue_mean", "residue_target", "moment", "moment_bound"]);
    t.push(vec![
        w.to_string().into(),
        n.into(),
        r.mean.into(),
        r.residue_mean.into(),
        r.residue_target.into(),
        r.moment.into(),
        r.moment_bound.into(),
    ]);
    Ok(t)
}

fn estimate_row(t: &mut Table, e: &UNormEstimate, s: usize) {
    let mut row: Vec<Cell> = vec![
        e.lower_bound.into(),
        e.additive_error.into(),
        e.upper_bound().into(),
        e.center.into(),
    ];
    for j in 0..=s {
        row.push(e.witness[j].into());
    }
    t.push(row);
}

fn unorm(a: &UnormArgs, sequence: Option<Vec<Complex64>>) -> Res<Table> {
    let (values, start) = match sequence {
        Some(v) => (v, 1i64),
        None => {
            let w = weight(a.weight.as_deref().ok_or_else(|| CliError::Invalid("unorm needs --weight or --from-csv".into()))?)?;
            let n = parse::count(a.n.as_deref().ok_or_else(|| CliError::Invalid("unorm needs --N".into()))?)?;
            if n == 0 {
                return Err(CliError::Invalid("--N must be at least 1".into()));
            }
            let scale = (n as f64).max(2.0);
            let left = w.table(n, scale)?;
            let right = match &a.minus {
                Some(m) => weight(m)?.table(n, scale)?,
                None => vec![0.0; left.len()],
            };
            ((1..=n as usize).map(|i| Complex64::new(left[i] - right[i], 0.0)).collect(), 1)
        }
    };
    let steps = match &a.steps {
        Some(s) => parse::numbers(s)?,
        None => steps_for_error(values.len(), a.degree, parse::number(&a.error)?),
    };
    let e = u_norm_estimate(&values, start, a.degree, &steps)?;
    let mut cols = vec!["lower_bound", "additive_error", "upper_bound", "center"];
    let names: Vec<String> = (0..=a.degree).map(|j| format!("a_{j}")).collect();
    cols.extend(names.iter().map(String::as_str));
    let mut t = Table::new(&cols);
    estimate_row(&mut t, &e, a.degree);
    Ok(t)
}

fn xi_columns(k: usize, prefix: &str, tail: &[&str]) -> Table {
    let names: Vec<String> = (1..=k).map(|i| format!("{prefix}_{i}")).collect();
    let mut cols: Vec<&str> = names.iter().map(String::as_str).collect();
    cols.extend(tail);
    Table::new(&cols)
}

fn expsum(a: &ExpSumArgs) -> Res<Table> {
    let fam = family(&a.family)?;
    let xi = parse::numbers(&a.xi)?;
    let v = exp_sum_m(&weight(&a.weight)?, &fam, parse::number(&a.n)?, &xi)?;
    let mut t = xi_columns(fam.k(), "xi", &["re", "im", "abs"]);
    let mut row: Vec<Cell> = xi.iter().map(|&x| x.into()).collect();
    row.extend([v.re.into(), v.im.into(), v.norm().into()]);
    t.push(row);
    Ok(t)
}

fn symbol(a: &SymbolArgs) -> Res<Table> {
    let fam = family(&a.family)?;
    let zeta = parse::numbers(&a.zeta)?;
    let v = continuous_symbol(&fam, parse::number(&a.n)?, &zeta, parse::number(&a.rel_tol)?)?;
    let mut t = xi_columns(fam.k(), "zeta", &["re", "im", "abs"]);
    let mut row: Vec<Cell> = zeta.iter().map(|&x| x.into()).collect();
    row.extend([v.re.into(), v.im.into(), v.norm().into()]);
    t.push(row);
    Ok(t)
}

fn arcscan(a: &ArcScanArgs) -> Res<Table> {
    let fam = family(&a.family)?;
    let n = parse::number(&a.n)?;
    let theta = parse::rationals(&a.theta)?;
    let radii = match &a.radii {
        Some(r) => parse::numbers(r)?,
        None => {
            let c = parse::number(&a.radius_c)?;
            fam.degrees().iter().map(|&d| c / n.powi(d as i32)).collect()
        }
    };
    let report = major_arc_scan(&weight(&a.weight)?, &fam, n, &theta, &radii, a.grid)?;
    let mut t = xi_columns(fam.k(), "xi", &["re", "im", "abs", "err"]);
    for p in &report.points {
        let mut row: Vec<Cell> = p.xi.iter().map(|&x| x.into()).collect();
        row.extend([p.value.re.into(), p.value.im.into(), p.value.norm().into(), p.error.into()]);
        t.push(row);
    }
    Ok(t)
}

fn gauss(a: &GaussArgs) -> Res<Table> {
    let fam = family(&a.family)?;
    let nums = parse::integers(&a.a)?;
    let v = gauss_sum(&fam, &nums, a.q)?;
    let mut t = Table::new(&["q", "re", "im", "abs"]);
    t.push(vec![a.q.into(), v.re.into(), v.im.into(), v.norm().into()]);
    Ok(t)
}

fn signal_table(s: &SignalZ) -> Table {
    let mut t = Table::new(&["x", "re", "im"]);
    for (i, v) in s.values().iter().enumerate() {
        t.push(vec![(s.offset() + i as i64).into(), v.re.into(), v.im.into()]);
    }
    t
}

fn average(a: &AverageArgs, dual: Option<usize>) -> Res<Table> {
    let fam = family(&a.family)?;
    let signals = a
        .signals
        .iter()
        .map(|s| parse::signal(s))
        .collect::<Result<Vec<_>, _>>()?;
    let w = weight(&a.weight)?;
    let n = parse::number(&a.n)?;
    let out = match dual {
        None => multi_average(&w, &fam, &signals, n, !a.untruncated)?,
        Some(j) => dual_average(j, &w, &fam, &signals, n, !a.untruncated)?,
    };
    Ok(signal_table(&out))
}

fn variation(a: &VariationArgs, sequence: Option<Vec<Complex64>>) -> Res<Table> {
    let seq = match sequence {
        Some(s) => s,
        None => {
            let v = a
                .values
                .as_deref()
                .ok_or_else(|| CliError::Invalid("variation needs --values or --from-csv".into()))?;
            v.split(',')
                .filter(|p| !p.trim().is_empty())
                .map(parse::complex)
                .collect::<Result<_, _>>()?
        }
    };
    let mut t = Table::new(&["r", "V", "Vnorm"]);
    for r in parse::numbers(&a.r)? {
        let (v, norm) = variation_norm(&seq, r)?;
        t.push(vec![r.into(), v.into(), norm.into()]);
    }
    Ok(t)
}

fn rmcheck(a: &RmArgs, seed: u64) -> Res<Table> {
    let fam = family(&a.family)?;
    let mut t = Table::new(&["seed", "lhs", "rhs", "log_factor", "ratio", "patterns"]);
    for s in seed..seed + a.trials {
        let cfg = RmConfig {
            modulus: a.modulus,
            scales: a.scales,
            exponent: parse::number(&a.q)?,
            seed: s,
            n0: parse::number(&a.n0)?,
        };
        let r = rm_check(&fam, &cfg)?;
        t.push(vec![s.into(), r.lhs.into(), r.rhs.into(), r.log_factor.into(), r.ratio.into(), r.patterns.into()]);
    }
    Ok(t)
}

fn padic_eig(a: &PadicArgs) -> Res<Table> {
    let poly: Polynomial = a.poly.parse()?;
    let mut t = Table::new(&["p", "j", "xi", "re", "im", "abs", "bound"]);
    for r in eigen_report(a.p, a.j, &poly)? {
        t.push(vec![
            r.p.into(),
            (r.j as u64).into(),
            r.xi.into(),
            r.value.re.into(),
            r.value.im.into(),
            r.value.norm().into(),
            r.bound.into(),
        ]);
    }
    Ok(t)
}

fn padic_count(a: &PadicArgs) -> Res<Table> {
    let poly: Polynomial = a.poly.parse()?;
    if a.fibers {
        let mut t = Table::new(&["m", "h"]);
        for (m, h) in fiber_counts(a.p, a.j, &poly)?.into_iter().enumerate() {
            t.push(vec![m.into(), h.into()]);
        }
        return Ok(t);
    }
    let s = parse::number(&a.s)?;
    let total: u64 = fiber_counts(a.p, a.j, &poly)?.iter().sum();
    let mut t = Table::new(&["p", "j", "s", "norm", "total"]);
    t.push(vec![
        a.p.into(),
        (a.j as u64).into(),
        s.into(),
        fiber_count_norm(a.p, a.j, &poly, s)?.into(),
        total.into(),
    ]);
    Ok(t)
}

fn rotation_inputs(a: &RotationArgs) -> Res<(RotationSystem, WeightFunction, PolynomialFamily, Vec<TrigPoly>, f64)> {
    let fam = family(&a.family)?;
    let funcs: Vec<TrigPoly> = if a.funcs.is_empty() {
        vec![TrigPoly::character(1); fam.k()]
    } else {
        a.funcs.iter().map(|f| f.parse()).collect::<Result<_, _>>()?
    };
    Ok((
        RotationSystem::new(parse::number(&a.alpha)?)?,
        weight(&a.weight)?,
        fam,
        funcs,
        parse::number(&a.x)?,
    ))
}

fn rotation(a: &RotationArgs) -> Res<Table> {
    let (sys, w, fam, funcs, x) = rotation_inputs(a)?;
    let n = parse::number(&a.n)?;
    let v = rotation_average(&sys, &w, &fam, &funcs, n, x)?;
    let mut t = Table::new(&["N", "re", "im", "abs"]);
    t.push(vec![n.into(), v.re.into(), v.im.into(), v.norm().into()]);
    Ok(t)
}

fn converge(a: &RotationArgs) -> Res<Table> {
    let (sys, w, fam, funcs, x) = rotation_inputs(a)?;
    let scales = parse::numbers(a.scales.as_deref().unwrap_or("2^10,2^12,2^14,2^16"))?;
    let lambda = scales
        .windows(2)
        .map(|p| p[1] / p[0])
        .fold(f64::INFINITY, f64::min);
    let lambda = if lambda.is_finite() { lambda } else { 2.0 };
    let set = LacunarySet::new(scales, lambda)?;
    let report = convergence_series(&sys, &w, &fam, &funcs, &set, x)?;
    if report.rational_warning {
        eprintln!("warning: alpha is numerically rational with a small denominator; the limit column does not apply");
    }
    let mut t = Table::new(&["N", "re", "im", "deviation", "v2_so_far"]);
    for r in &report.rows {
        t.push(vec![r.n.into(), r.value.re.into(), r.value.im.into(), r.deviation.into(), r.v2_so_far.into()]);
    }
    Ok(t)
}

fn farey(a: &FareyArgs) -> Res<Table> {
    let f = farey_set(a.level)?;
    let mut t = Table::new(&["b", "q", "value", "height"]);
    for m in f.members() {
        t.push(vec![m.b.into(), m.q.into(), m.value().into(), m.height().into()]);
    }
    Ok(t)
}

fn project(a: &ProjectArgs) -> Res<Table> {
    let signal = match (&a.tone, &a.values) {
        (Some(tone), None) => CyclicSignal::tone(a.modulus, *tone),
        (None, Some(v)) => {
            let values = v
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(parse::complex)
                .collect::<Result<Vec<_>, _>>()?;
            if values.len() != a.modulus {
                return Err(CliError::Invalid(format!("--values has {} entries, expected Q = {}", values.len(), a.modulus)));
            }
            CyclicSignal::new(values)?
        }
        _ => return Err(CliError::Invalid("project needs exactly one of --tone and --values".into())),
    };
    let out = projection_pi(&signal, a.level, a.k_scale)?;
    let mut t = Table::new(&["n", "re", "im"]);
    for (i, v) in out.values().iter().enumerate() {
        t.push(vec![i.into(), v.re.into(), v.im.into()]);
    }
    Ok(t)
}

fn iwconst(a: &IwArgs) -> Res<Table> {
    let c = parse::number(&a.c)?;
    let n = parse::number(&a.n)?;
    let mut t = Table::new(&["value"]);
    t.push(vec![iw_constant(c, n)?.into()]);
    Ok(t)
}
