use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use fucik_core::export::{self, Curve1DRow, Plot, PlotBranch};
use fucik_core::one_dim::{
    self, converge_check, curve_1d_finite, curve_1d_infinity, pi_p, Branch, CurveFamily1D, Exponent, FucikPair,
    GridFunction1D, ProfileP,
};
use fucik_core::packing::{inradius as solve_inradius, SolverOptions};
use fucik_core::spectrum::{self, ClassifyOptions, DEFAULT_SAMPLES, DEFAULT_T_MAX, DEFAULT_T_MIN};
use fucik_core::{Domain, DomainSpec, Execution};

use crate::error::CliError;
use crate::{Common, DomainArgs, Format};

/// Share of curve samples that must succeed for exit code 0.
const MIN_SUCCESS_RATE: f64 = 0.9;

fn solver_options(common: &Common) -> SolverOptions {
    let mut opts = SolverOptions::default().with_seed(common.seed);
    opts.tol = common.tol;
    if let Some(cells) = common.max_cells {
        opts.max_cells = cells;
    }
    if common.sequential {
        opts = opts.with_execution(Execution::Sequential);
    }
    opts
}

fn load_domain(args: &DomainArgs) -> Result<Domain, CliError> {
    match (&args.domain, args.interval) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
            Ok(Domain::new(DomainSpec::from_json(&text)?)?)
        }
        (None, true) => Ok(Domain::interval(0.0, 1.0)?),
        (None, false) => Err(CliError::Validation("one of --domain or --interval is required".into())),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn emit(common: &Common, bytes: &[u8]) -> Result<(), CliError> {
    match &common.out {
        Some(path) => write_file(path, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn json_bytes<T: Serialize>(kind: &str, data: &T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_string_pretty(&export::envelope(kind, data)?)?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn only_formats(common: &Common, allowed: &[Format], default: Format) -> Result<Format, CliError> {
    let f = common.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Validation(format!("--format {f:?} is not supported by this command").to_lowercase()))
    }
}

pub fn inradius(args: &DomainArgs, common: &Common) -> Result<(), CliError> {
    let format = only_formats(common, &[Format::Json, Format::Csv], Format::Json)?;
    let domain = load_domain(args)?;
    let sol = solve_inradius(&domain, &solver_options(common))?;
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
                w.write_record(["radius", "cx", "cy", "certified_gap"])?;
                w.write_record([sol.radius, sol.center.x, sol.center.y, sol.certified_gap].map(|v| v.to_string()))?;
                w.flush()?;
            }
            buf
        }
        _ => json_bytes("inradius", &sol)?,
    };
    emit(common, &bytes)
}

/// Curve indices from `--k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Indices(pub Vec<u32>);

/// `k` as a single index, an inclusive range `a..b` or a comma list.
fn parse_k(s: &str) -> Result<Indices, String> {
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad index '{t}': {e}"));
    let ks: Vec<u32> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(parse).collect::<Result<_, _>>()?
    };
    if ks.contains(&0) {
        return Err("indices start at 1".into());
    }
    Ok(Indices(ks))
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Smallest weight t (slope s for interval families).
    #[arg(long, default_value_t = DEFAULT_T_MIN)]
    pub t_min: f64,
    #[arg(long, default_value_t = DEFAULT_T_MAX)]
    pub t_max: f64,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Also write an SVG plot here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Interval families: index, range `1..4` or list `1,3`.
    #[arg(long, value_parser = parse_k)]
    pub k: Option<Indices>,
    /// Interval families: restrict to one branch (even, odd_plus, odd_minus).
    #[arg(long)]
    pub branch: Option<Branch>,
    /// Interval families: finite exponents, comma separated.
    #[arg(long = "p", visible_alias = "p-list", value_delimiter = ',')]
    pub p: Vec<f64>,
    /// Interval families: include the p = ∞ limit (default when no --p is given).
    #[arg(long)]
    pub infinity: bool,
}

pub fn curve(args: &CurveArgs, common: &Common) -> Result<(), CliError> {
    let format = only_formats(common, &[Format::Csv, Format::Json, Format::Svg], Format::Csv)?;
    let families = args.k.is_some() || !args.p.is_empty() || args.infinity || args.branch.is_some();
    if families || (args.domain.interval && args.domain.domain.is_none()) {
        if args.domain.domain.is_some() {
            return Err(CliError::Validation("--k/--p/--branch/--infinity need --interval".into()));
        }
        return interval_families(args, common, format);
    }
    let domain = load_domain(&args.domain)?;
    let opts = solver_options(common);
    let curve = spectrum::curve_c2(&domain, args.t_min, args.t_max, args.samples, &opts)?;
    for f in &curve.failures {
        eprintln!("fucik: sample t = {} failed: {}", f.t, f.error);
    }
    let plot = || -> Result<String, CliError> {
        let level = spectrum::trivial_lines(&domain, &opts)?;
        let points = curve.samples.iter().map(|s| (s.alpha, s.beta)).collect();
        Ok(Plot {
            title: "C2,∞".into(),
            branches: vec![PlotBranch { label: "C2,∞".into(), points }],
            trivial_level: level,
        }
        .to_svg())
    };
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            export::write_curve_csv(&mut buf, &curve)?;
            buf
        }
        Format::Json => json_bytes("curve", &curve)?,
        Format::Svg => plot()?.into_bytes(),
    };
    emit(common, &bytes)?;
    if let Some(path) = &args.svg {
        write_file(path, plot()?.as_bytes())?;
    }
    if curve.success_rate() < MIN_SUCCESS_RATE {
        return Err(CliError::Computation(format!(
            "{} of {} samples failed",
            curve.failures.len(),
            curve.failures.len() + curve.samples.len()
        )));
    }
    Ok(())
}

fn interval_families(args: &CurveArgs, common: &Common, format: Format) -> Result<(), CliError> {
    let ks = args.k.clone().map_or_else(|| (1..=4).collect(), |k| k.0);
    let mut exponents: Vec<Exponent> = args.p.iter().map(|&p| Exponent::Finite(p)).collect();
    if args.infinity || exponents.is_empty() {
        exponents.push(Exponent::Infinity);
    }
    let ss = spectrum::log_spaced(args.t_min, args.t_max, args.samples)?;
    let mut rows = Vec::new();
    let mut branches = Vec::new();
    for &p in &exponents {
        for &k in &ks {
            let wanted: Vec<Branch> = match args.branch {
                Some(b) => vec![b],
                None => Branch::for_index(k).to_vec(),
            };
            for branch in wanted {
                let family = CurveFamily1D::new(k, branch, p)?;
                let mut points = Vec::with_capacity(ss.len());
                for &s in &ss {
                    let pt = match p {
                        Exponent::Finite(_) => curve_1d_finite(&family, s)?,
                        Exponent::Infinity => curve_1d_infinity(k, branch, s)?,
                    };
                    rows.push(Curve1DRow { k, branch, p, s, alpha_root: pt.alpha, beta_root: pt.beta });
                    points.push((pt.alpha, pt.beta));
                }
                branches.push(PlotBranch { label: format!("k={k} {branch} p={p}"), points });
            }
        }
    }
    let level = match exponents[0] {
        Exponent::Finite(p) => pi_p(p)?,
        Exponent::Infinity => 2.0,
    };
    let svg = || Plot { title: "Σ∞ of the unit interval".into(), branches: branches.clone(), trivial_level: level }.to_svg();
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            export::write_curves_1d_csv(&mut buf, &rows)?;
            buf
        }
        Format::Json => json_bytes("interval_curves", &rows)?,
        Format::Svg => svg().into_bytes(),
    };
    emit(common, &bytes)?;
    if let Some(path) = &args.svg {
        write_file(path, svg().as_bytes())?;
    }
    Ok(())
}

pub fn classify(args: &DomainArgs, common: &Common) -> Result<(), CliError> {
    only_formats(common, &[Format::Json], Format::Json)?;
    let domain = load_domain(args)?;
    let c = spectrum::classify(&domain, &ClassifyOptions::default(), &solver_options(common))?;
    emit(common, &json_bytes("classification", &c)?)
}

fn default_branch(k: u32) -> Branch {
    Branch::for_index(k)[0]
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[arg(long, default_value_t = 2)]
    pub k: u32,
    /// Default: even for even k, odd_plus otherwise.
    #[arg(long)]
    pub branch: Option<Branch>,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    /// Increasing exponents, comma separated.
    #[arg(
        long = "p",
        visible_alias = "p-list",
        value_delimiter = ',',
        default_value = "4,8,16,32,64,128,256,512,1024"
    )]
    pub p: Vec<f64>,
}

pub fn converge(args: &ConvergeArgs, common: &Common) -> Result<(), CliError> {
    let format = only_formats(common, &[Format::Csv, Format::Json], Format::Csv)?;
    let branch = args.branch.unwrap_or_else(|| default_branch(args.k));
    let table = converge_check(args.k, branch, args.s, &args.p)?;
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
                w.write_record(["p", "alpha_root", "beta_root", "distance"])?;
                for r in &table.rows {
                    w.write_record([r.p, r.alpha_root, r.beta_root, r.distance].map(|v| v.to_string()))?;
                }
                w.flush()?;
            }
            buf
        }
        _ => json_bytes("convergence", &table)?,
    };
    emit(common, &bytes)
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    /// Nodal point in (0, 1).
    #[arg(long, default_value_t = 0.4)]
    pub ell: f64,
    /// Finite exponent; omitted means the p = ∞ profile.
    #[arg(long, conflicts_with = "infinity")]
    pub p: Option<f64>,
    #[arg(long)]
    pub infinity: bool,
    /// Grid intervals; values are written at x = i/n.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    /// Scale the finite-p bumps by ℓ/π_p and (1-ℓ)/π_p.
    #[arg(long)]
    pub matched: bool,
    /// Rescale to max |u| = 1.
    #[arg(long)]
    pub normalize: bool,
}

#[derive(Serialize)]
struct ProfileOut<'a> {
    ell: f64,
    p: Exponent,
    x: &'a [f64],
    u: &'a [f64],
}

pub fn profile(args: &ProfileArgs, common: &Common) -> Result<(), CliError> {
    let format = only_formats(common, &[Format::Csv, Format::Json], Format::Csv)?;
    let mode = solver_options(common).execution;
    let ell = args.ell;
    let (mut u, p) = match args.p {
        Some(p) => {
            let prof = if args.matched { ProfileP::matched(ell, p)? } else { ProfileP::new(ell, p)? };
            (one_dim::sample(args.n, mode, |x| prof.eval(x))?, Exponent::Finite(p))
        }
        None => (one_dim::sample(args.n, mode, |x| one_dim::eigenfunction_infinity(ell, x))?, Exponent::Infinity),
    };
    if args.normalize {
        one_dim::normalize_sup(&mut u);
    }
    let xs: Vec<f64> = (0..=args.n).map(|i| i as f64 / args.n as f64).collect();
    let bytes = match format {
        Format::Csv => {
            let mut buf = Vec::new();
            export::write_profile_csv(&mut buf, &xs, &u)?;
            buf
        }
        _ => json_bytes("profile", &ProfileOut { ell, p, x: &xs, u: &u })?,
    };
    emit(common, &bytes)
}

#[derive(Debug, Clone, Args)]
pub struct ViscosityArgs {
    /// Nodal point of the limit profile, which also sets the default pair (2/ℓ, 2/(1-ℓ)).
    #[arg(long, default_value_t = 0.4)]
    pub ell: f64,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Profile CSV (columns x,u on the grid x = i/n) to check instead of the limit profile.
    #[arg(long)]
    pub profile: Option<PathBuf>,
    /// One-sided slopes closer than this count as smooth.
    #[arg(long, default_value_t = one_dim::DEFAULT_KINK_TOL)]
    pub kink_tol: f64,
}

#[derive(Serialize)]
struct ViscosityOut {
    pair: FucikPair,
    n: usize,
    #[serde(flatten)]
    report: one_dim::ViscosityReport,
}

fn read_profile(path: &Path) -> Result<Vec<f64>, CliError> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    let rows: Vec<(f64, f64)> = r.deserialize().collect::<Result<_, _>>()?;
    let n = rows.len().saturating_sub(1).max(1);
    for (i, (x, _)) in rows.iter().enumerate() {
        if (x - i as f64 / n as f64).abs() > 1e-9 {
            return Err(CliError::Validation(format!("profile row {i} is not on the uniform grid x = i/{n}")));
        }
    }
    Ok(rows.into_iter().map(|r| r.1).collect())
}

pub fn viscosity(args: &ViscosityArgs, common: &Common) -> Result<(), CliError> {
    only_formats(common, &[Format::Json], Format::Json)?;
    let limit = one_dim::pair_infinity(args.ell)?;
    let pair = FucikPair::new(args.alpha.unwrap_or(limit.alpha), args.beta.unwrap_or(limit.beta))?;
    let grid = match &args.profile {
        Some(path) => GridFunction1D::new(read_profile(path)?, args.kink_tol)?,
        None => {
            let values = (0..=args.n)
                .map(|i| one_dim::eigenfunction_infinity(args.ell, i as f64 / args.n as f64))
                .collect::<Result<Vec<_>, _>>()?;
            GridFunction1D::new(values, args.kink_tol)?
        }
    };
    let report = one_dim::viscosity_residual(&grid, &pair);
    emit(common, &json_bytes("viscosity", &ViscosityOut { pair, n: grid.n(), report })?)
}
