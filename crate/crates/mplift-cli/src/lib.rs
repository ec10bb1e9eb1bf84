//! Command implementations behind the `mplift` binary. Every command is a pure function of its
//! arguments and input files; `main` only prints.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use mplift::builder::{construct, PipelineConfig};
use mplift::catalog;
use mplift::csp::{self, CspInstance};
use mplift::graphview::{
    bicycle_free_radius, extend, lift_graph, local_cover_check, random_walk_connectivity, tree_decomposition_ball,
};
use mplift::lifting::{random_lift, Lift, Signing};
use mplift::limitspec::{MethodParams, MethodRegistry};
use mplift::spectra::{adjacency_operator, hausdorff_distance, SpectrumSet};
use mplift::{ErrorKind, IndexSet, MatrixPolynomial};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug, Clone)]
#[command(name = "mplift", version, about = "Lifts of matrix polynomials and their spectra")]
pub struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
pub enum Command {
    /// Eigenvalues of a finite lift.
    Spectrum(SpectrumArgs),
    /// Spectrum of the infinite lift.
    Infinite(InfiniteArgs),
    /// Certify-and-double construction of an explicit lift.
    Construct(ConstructArgs),
    /// Hausdorff distance between two spectrum files.
    Hausdorff { a: PathBuf, b: PathBuf },
    #[command(subcommand)]
    Catalog(CatalogCmd),
    #[command(subcommand)]
    Csp(CspCmd),
    /// Connectivity, covering, bicycle-freeness and tree-width of a lift.
    Check(CheckArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub poly: PathBuf,
    /// Lift file; otherwise --random and --seed.
    #[arg(long, conflicts_with = "random")]
    pub lift: Option<PathBuf>,
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random signing with this seed.
    #[arg(long)]
    pub signed: Option<u64>,
    /// Drop the trivial eigenvalues.
    #[arg(long)]
    pub perp: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodName {
    Resolvent,
    Lift,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InfiniteArgs {
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodName::Resolvent)]
    pub method: MethodName,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Lift size for the lift method.
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    #[arg(long, value_delimiter = ',', default_values_t = vec![0u64, 1, 2])]
    pub seeds: Vec<u64>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ConstructArgs {
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub e: usize,
    #[arg(long, default_value_t = 1)]
    pub r: usize,
    #[arg(long = "R", default_value_t = 1.0)]
    pub r_bound: f64,
    #[arg(long, default_value_t = 0.3)]
    pub eps: f64,
    #[arg(long = "N", default_value_t = 64)]
    pub n_target: usize,
    #[arg(long)]
    pub n0: Option<usize>,
    #[arg(long)]
    pub lambda: Option<usize>,
    #[arg(long)]
    pub power: Option<u32>,
    #[arg(long)]
    pub grid_delta: Option<f64>,
    #[arg(long)]
    pub seed_budget: Option<usize>,
    #[arg(long)]
    pub signing_budget: Option<usize>,
    /// Also write the lift on its own.
    #[arg(long)]
    pub lift_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
pub enum CatalogCmd {
    List,
    /// Polynomial JSON of an entry; `sl2z_displayed` gives the unsymmetrized four-term form.
    Emit { name: String },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutName {
    Nae3,
    Maxcut,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
pub enum CspCmd {
    /// Random regular instance from a signed lift of a layout.
    Gen {
        #[arg(long, value_enum, default_value_t = LayoutName::Nae3)]
        layout: LayoutName,
        /// Constraints per layout (NAE only).
        #[arg(long, default_value_t = 4)]
        c: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Eigenvalue bound of an instance file; brute force too when n ≤ 20 and --opt is given.
    Eig {
        file: PathBuf,
        #[arg(long)]
        opt: bool,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CheckArgs {
    #[arg(long)]
    pub lift: PathBuf,
    #[arg(long)]
    pub poly: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub radius: usize,
    /// Ball depth for the tree decomposition of the infinite extension.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
}

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Lib(mplift::Error),
}

impl CliError {
    /// 1 for I/O and parse failures, then 2 validation, 3 construction, 4 numeric regime.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Lib(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Construction => 3,
                ErrorKind::Numeric => 4,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<mplift::Error> for CliError {
    fn from(e: mplift::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub command: Command,
    pub jobs: usize,
    pub seeds: Vec<u64>,
    pub version: &'static str,
    pub wall_clock_ms: u128,
}

pub struct Output {
    /// The primary result; printed to stdout.
    pub result: Value,
    pub manifest: RunManifest,
    /// Extra files to write: (path, contents).
    pub files: Vec<(PathBuf, String)>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn with_schema(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    }
    v
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

pub fn cmd_spectrum(a: &SpectrumArgs) -> CliResult<Value> {
    let p: MatrixPolynomial = read_json(&a.poly)?;
    let lift: Lift = match (&a.lift, a.random) {
        (Some(f), _) => read_json(f)?,
        (None, Some(n)) => random_lift(p.index_set, n, a.seed)?,
        (None, None) => return Err(mplift::Error::Invalid("give --lift FILE or --random N".into()).into()),
    };
    let chi = a.signed.map(|s| Signing::random(&lift, s));
    let op = adjacency_operator(&lift, &p, chi.as_ref())?;
    let m = if a.perp { op.nontrivial()? } else { op.to_dense() };
    if !m.is_hermitian(1e-9) {
        return Err(mplift::Error::Unsupported("spectrum needs a self-adjoint polynomial".into()).into());
    }
    let mut ev = m.hermitian_eigenvalues()?;
    ev.sort_by(f64::total_cmp);
    Ok(with_schema(json!({ "n": lift.n, "perp": a.perp, "signed": a.signed, "eigenvalues": ev })))
}

pub fn cmd_infinite(a: &InfiniteArgs, jobs: usize) -> CliResult<Value> {
    let p: MatrixPolynomial = read_json(&a.poly)?;
    let name = match a.method {
        MethodName::Resolvent => "resolvent",
        MethodName::Lift => "lift",
    };
    let mut params = MethodParams { lo: a.lo, hi: a.hi, step: a.step, n: a.n, seeds: a.seeds.clone(), ..Default::default() };
    params.scan.jobs = jobs.max(1);
    let registry = MethodRegistry::default();
    let spectrum = registry.get(name)?.compute(&p, &params)?;
    Ok(with_schema(json!({ "method": name, "step": a.step, "n": a.n, "seeds": a.seeds, "spectrum": spectrum })))
}

pub fn pipeline_config(a: &ConstructArgs) -> PipelineConfig {
    let mut c = PipelineConfig::defaults(a.n_target, a.eps);
    c.r_bound = a.r_bound;
    c.r_max = a.r;
    if let Some(x) = a.n0 {
        c.n0 = x;
    }
    if let Some(x) = a.lambda {
        c.lambda = x;
    }
    if let Some(x) = a.power {
        c.power = x;
    }
    if let Some(x) = a.grid_delta {
        c.grid_delta = x;
    }
    if let Some(x) = a.seed_budget {
        c.seed_budget = x;
    }
    if let Some(x) = a.signing_budget {
        c.signing_budget = x;
    }
    c
}

pub fn cmd_construct(a: &ConstructArgs) -> CliResult<(Value, Vec<(PathBuf, String)>)> {
    let cfg = pipeline_config(a);
    let c = construct(IndexSet::new(a.d, a.e), &cfg)?;
    let mut files = vec![];
    if let Some(path) = &a.lift_out {
        files.push((path.clone(), serde_json::to_string(&c.lift).map_err(mplift::Error::from)? + "\n"));
    }
    Ok((with_schema(to_value(&c)), files))
}

/// Accepts a bare SpectrumSet, or the output of `spectrum` / `infinite`.
fn load_spectrum(path: &Path) -> CliResult<SpectrumSet> {
    let v: Value = read_json(path)?;
    let bad = || CliError::Io(format!("{}: not a spectrum file", path.display()));
    if let Some(ev) = v.get("eigenvalues") {
        let vals: Vec<f64> = serde_json::from_value(ev.clone()).map_err(|_| bad())?;
        return Ok(SpectrumSet::from_values(vals));
    }
    let inner = v.get("spectrum").cloned().unwrap_or(v);
    let s: SpectrumSet = serde_json::from_value(inner).map_err(|_| bad())?;
    Ok(SpectrumSet::from_parts(s.intervals, s.points))
}

pub fn cmd_hausdorff(a: &Path, b: &Path) -> CliResult<Value> {
    let d = hausdorff_distance(&load_spectrum(a)?, &load_spectrum(b)?)?;
    Ok(with_schema(json!({ "distance": d })))
}

pub fn cmd_catalog(c: &CatalogCmd) -> CliResult<Value> {
    match c {
        CatalogCmd::List => {
            let list: Vec<Value> = catalog::entries()
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name,
                        "d": e.polynomial.index_set.d,
                        "e": e.polynomial.index_set.e,
                        "r": e.polynomial.r,
                        "known_spectrum": e.known_spectrum,
                        "note": e.note,
                    })
                })
                .collect();
            Ok(with_schema(json!({ "entries": list })))
        }
        CatalogCmd::Emit { name } => {
            let p = if name == "sl2z_displayed" { catalog::sl2z_displayed_polynomial() } else { catalog::entry(name)?.polynomial };
            Ok(with_schema(to_value(&p)))
        }
    }
}

pub fn cmd_csp(c: &CspCmd) -> CliResult<Value> {
    match c {
        CspCmd::Gen { layout, c, n, seed } => {
            let lay = match layout {
                LayoutName::Nae3 => csp::nae3_layout(*c),
                LayoutName::Maxcut => csp::max_cut_layout(),
            };
            let (inst, _, _) = csp::random_regular_instance(&lay, *n, *seed)?;
            Ok(with_schema(to_value(&inst)))
        }
        CspCmd::Eig { file, opt } => {
            let inst: CspInstance = read_json(file)?;
            let eig = csp::eig_bound(&inst)?;
            let best = if *opt { Some(csp::brute_force_opt(&inst)?) } else { None };
            Ok(with_schema(json!({
                "n": inst.n,
                "constraints": inst.constraints.len(),
                "eig_bound": eig,
                "eig_per_variable": if inst.n > 0 { eig / inst.n as f64 } else { 0.0 },
                "constant_offset": inst.constant_offset(),
                "opt": best,
            })))
        }
    }
}

pub fn cmd_check(a: &CheckArgs) -> CliResult<Value> {
    let lift: Lift = read_json(&a.lift)?;
    let p: MatrixPolynomial = read_json(&a.poly)?;
    let ext = extend(&lift, &p)?;
    let walk = random_walk_connectivity(&ext)?;
    let cover = local_cover_check(&lift, &p, a.radius)?;
    let bf = bicycle_free_radius(&lift_graph(&lift), a.radius);
    let td = tree_decomposition_ball(&p, a.depth)?;
    Ok(with_schema(json!({
        "n": lift.n,
        "connected": walk.connected,
        "spectral_gap": walk.gap,
        "cover_ok": cover,
        "cover_radius": a.radius,
        "bicycle_free_radius": bf,
        "bicycle_free_cap": a.radius,
        "ball_depth": a.depth,
        "tree_decomposition_width": td.max_bag().saturating_sub(1),
    })))
}

fn seeds_of(c: &Command) -> Vec<u64> {
    match c {
        Command::Spectrum(a) => std::iter::once(a.seed).chain(a.signed).collect(),
        Command::Infinite(a) => a.seeds.clone(),
        Command::Csp(CspCmd::Gen { seed, .. }) => vec![*seed],
        _ => vec![],
    }
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    let start = Instant::now();
    let mut files = vec![];
    let result = match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a)?,
        Command::Infinite(a) => cmd_infinite(a, cli.jobs)?,
        Command::Construct(a) => {
            let (v, f) = cmd_construct(a)?;
            files = f;
            v
        }
        Command::Hausdorff { a, b } => cmd_hausdorff(a, b)?,
        Command::Catalog(c) => cmd_catalog(c)?,
        Command::Csp(c) => cmd_csp(c)?,
        Command::Check(a) => cmd_check(a)?,
    };
    let manifest = RunManifest {
        schema_version: SCHEMA_VERSION,
        command: cli.command.clone(),
        jobs: cli.jobs,
        seeds: seeds_of(&cli.command),
        version: env!("CARGO_PKG_VERSION"),
        wall_clock_ms: start.elapsed().as_millis(),
    };
    Ok(Output { result, manifest, files })
}

/// Parses, runs and writes outputs; returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = String>, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    for (path, text) in &out.files {
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            return 1;
        }
    }
    let _ = writeln!(stdout, "{}", serde_json::to_string(&out.result).expect("json values serialize"));
    let manifest = serde_json::to_string(&out.manifest).expect("manifest serializes");
    match &cli.manifest {
        Some(path) => {
            if let Err(e) = std::fs::write(path, manifest + "\n") {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return 1;
            }
        }
        None => {
            let _ = writeln!(stderr, "{manifest}");
        }
    }
    0
}
