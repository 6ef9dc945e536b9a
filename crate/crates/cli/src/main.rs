//! `ds`: parse templates, compute divided symmetrizations and verify the
//! identity catalog.
//!
//! Exit status: 0 success, 1 a verification failed, 2 invalid input or
//! unknown identity, 3 permutation size limit exceeded, 4 pole at the
//! evaluation point.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use divsym::divsym::{ds_eval_with, ds_partial, ds_symbolic_with, DsConfig, DsError, DsProblem};
use divsym::exact::rational::parse_rational;
use divsym::exact::{Rational, VarId};
use divsym::registry::{
    load_identities, verify_many, IdentitySpec, Mode, Outcome, Registry, Report, Status, VerifyConfig,
};
use divsym::template::{parse_with_params, pretty_print, Template};

/// `println!` that ends the process quietly when stdout is a closed pipe.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

#[derive(Parser, Debug)]
#[command(
    name = "ds",
    version,
    about = "Exact divided symmetrization and identity verification"
)]
struct Cli {
    /// Seed for random-mode verification.
    #[arg(long, global = true, env = "DIVSYM_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses all cores.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Largest m for which S_m is enumerated.
    #[arg(long, global = true, default_value_t = 12)]
    max_factorial: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a template and print its canonical form.
    Parse {
        expr: String,
        /// Names usable as integer parameters, e.g. `--param m`.
        #[arg(long = "param")]
        params: Vec<String>,
    },
    /// Divided symmetrization of a summand over S_{n+1}.
    Ds(DsArgs),
    /// Verify catalog identities.
    Verify(VerifyArgs),
    /// List catalog identities.
    List {
        #[arg(long)]
        status: Option<Status>,
        /// Extra identity definition files.
        #[arg(long = "identities")]
        files: Vec<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct DsArgs {
    expr: String,
    #[arg(long)]
    n: u32,
    /// Comma-separated values of λ_1..λ_{n+1}.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eval: Option<Vec<String>>,
    /// Auxiliary variable values, e.g. `--set Y=3 --set t=1/2`.
    #[arg(long = "set")]
    sets: Vec<String>,
    /// Integer parameters, e.g. `--param m=2`.
    #[arg(long = "param")]
    params: Vec<String>,
    /// The expression already contains the kernel.
    #[arg(long)]
    no_kernel: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    id: Vec<String>,
    #[arg(long)]
    all: bool,
    /// Restrict `--all` to one status.
    #[arg(long, requires = "all")]
    status: Option<Status>,
    /// Inclusive range `a..b`, or a single `n`.
    #[arg(long, default_value = "1..3")]
    n_range: String,
    /// symbolic, grid, random or random(N).
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// Trials per assignment in random mode.
    #[arg(long)]
    trials: Option<u32>,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Pin a parameter, e.g. `--param j=2`.
    #[arg(long = "param")]
    params: Vec<String>,
    /// Extra identity definition files.
    #[arg(long = "identities")]
    files: Vec<PathBuf>,
    /// Run only the first N (id, n) pairs.
    #[arg(long)]
    budget: Option<usize>,
    /// Override the per-kind largest n.
    #[arg(long)]
    max_n: Option<u32>,
    /// Record wall-clock seconds in the report.
    #[arg(long)]
    timings: bool,
}

/// A failure with its exit status.
struct Exit(u8, String);

impl Exit {
    fn input(msg: impl Into<String>) -> Self {
        Exit(2, msg.into())
    }
}

impl From<DsError> for Exit {
    fn from(e: DsError) -> Self {
        let code = match e {
            DsError::SizeLimitExceeded { .. } => 3,
            DsError::PoleAtPoint => 4,
            _ => 2,
        };
        Exit(code, format!("error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool is configured once");
    }
    let result = match &cli.command {
        Command::Parse { expr, params } => cmd_parse(&cli, expr, params),
        Command::Ds(args) => cmd_ds(&cli, args),
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::List { status, files } => cmd_list(&cli, *status, files),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

fn parse_template(expr: &str, params: &[&str]) -> Result<Template, Exit> {
    parse_with_params(expr, params).map_err(|e| Exit::input(e.render(expr)))
}

fn split_assignment(s: &str) -> Result<(&str, &str), Exit> {
    s.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Exit::input(format!("error: expected NAME=VALUE, got `{s}`")))
}

fn rational(s: &str) -> Result<Rational, Exit> {
    parse_rational(s).ok_or_else(|| Exit::input(format!("error: `{s}` is not a rational number")))
}

fn int_params(items: &[String]) -> Result<BTreeMap<String, i64>, Exit> {
    items
        .iter()
        .map(|s| {
            let (k, v) = split_assignment(s)?;
            let v = v
                .parse()
                .map_err(|_| Exit::input(format!("error: parameter `{k}` needs an integer, got `{v}`")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn print_json(v: &serde_json::Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn cmd_parse(cli: &Cli, expr: &str, params: &[String]) -> Result<u8, Exit> {
    let names: Vec<&str> = params.iter().map(String::as_str).collect();
    let t = parse_template(expr, &names)?;
    match cli.format {
        Format::Text => out!("{}", pretty_print(&t)),
        Format::Json => print_json(&json!({ "canonical": pretty_print(&t) })),
    }
    Ok(0)
}

fn cmd_ds(cli: &Cli, args: &DsArgs) -> Result<u8, Exit> {
    let params = int_params(&args.params)?;
    let names: Vec<&str> = params.keys().map(String::as_str).collect();
    let body = parse_template(&args.expr, &names)?;
    let problem = DsProblem::new(body, args.n)
        .kernel_included(args.no_kernel)
        .with_params(params);
    let cfg = DsConfig {
        max_m: cli.max_factorial,
        chunks: 0,
    };

    let mut point = BTreeMap::new();
    for s in &args.sets {
        let (k, v) = split_assignment(s)?;
        let var: VarId = k.parse().map_err(|e| Exit::input(format!("error: {e}")))?;
        if var.is_lambda() {
            return Err(Exit::input("error: bind λ values with --eval"));
        }
        point.insert(var, rational(v)?);
    }
    let result = match &args.eval {
        Some(values) => {
            if values.len() != args.n as usize + 1 {
                return Err(Exit::input(format!(
                    "error: --eval needs {} values for λ_1..λ_{}, got {}",
                    args.n + 1,
                    args.n + 1,
                    values.len()
                )));
            }
            for (i, v) in values.iter().enumerate() {
                point.insert(VarId::Lambda(i as u32 + 1), rational(v)?);
            }
            ds_eval_with(&problem, &point, &cfg)?.to_string()
        }
        None if point.is_empty() => ds_symbolic_with(&problem, &cfg)?.to_string(),
        None => ds_partial(&problem, &point, &cfg)?.to_string(),
    };
    match cli.format {
        Format::Text => out!("{result}"),
        Format::Json => print_json(&json!({ "n": args.n, "result": result })),
    }
    Ok(0)
}

fn registry(files: &[PathBuf]) -> Result<Registry, Exit> {
    let mut reg = Registry::builtin();
    for f in files {
        let text = fs::read_to_string(f).map_err(|e| Exit::input(format!("error: {}: {e}", f.display())))?;
        let specs = load_identities(&text).map_err(|e| Exit::input(format!("error: {}: {e}", f.display())))?;
        reg.extend(specs).map_err(|e| Exit::input(format!("error: {e}")))?;
    }
    Ok(reg)
}

fn n_range(s: &str) -> Result<std::ops::RangeInclusive<u32>, Exit> {
    let bad = || Exit::input(format!("error: --n-range expects a..b with 1 <= a <= b, got `{s}`"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: u32 = a.parse().map_err(|_| bad())?;
    let b: u32 = b.parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<u8, Exit> {
    let reg = registry(&args.files)?;
    let mut mode: Mode = args.mode.parse().map_err(|e| Exit::input(format!("error: {e}")))?;
    if let (Mode::Random(_), Some(t)) = (mode, args.trials) {
        mode = Mode::Random(t);
    }
    let ns = n_range(&args.n_range)?;
    let ids: Vec<&str> = if args.all {
        reg.list()
            .into_iter()
            .filter(|s| args.status.is_none_or(|st| s.status == st))
            .map(|s| s.id.as_str())
            .collect()
    } else {
        args.id.iter().map(String::as_str).collect()
    };
    let cfg = VerifyConfig {
        seed: cli.seed,
        max_m: cli.max_factorial,
        timings: args.timings,
        max_n: args.max_n,
        params: int_params(&args.params)?,
        ..Default::default()
    };
    let reports =
        verify_many(&reg, &ids, ns, mode, args.budget, &cfg).map_err(|e| Exit::input(format!("error: {e}")))?;
    let report_json = serde_json::to_string_pretty(&reports).expect("reports serialize");
    if let Some(path) = &args.out {
        fs::write(path, format!("{report_json}\n"))
            .map_err(|e| Exit::input(format!("error: {}: {e}", path.display())))?;
    }
    match (cli.format, &args.out) {
        (Format::Json, None) => out!("{report_json}"),
        _ => print_summary(&reports),
    }
    Ok(if reports.iter().any(|r| r.outcome.is_fail()) {
        1
    } else {
        0
    })
}

fn print_summary(reports: &[Report]) {
    let (mut pass, mut fail, mut skip) = (0, 0, 0);
    for r in reports {
        let detail = match &r.outcome {
            Outcome::Pass { value, note } => {
                pass += 1;
                let mut parts = Vec::new();
                if let Some(v) = value {
                    parts.push(format!("= {v}"));
                }
                if let Some(d) = r.degree_bound {
                    parts.push(format!("degree bound {d}"));
                }
                if let Some(note) = note {
                    parts.push(format!("({note})"));
                }
                format!("PASS {}", parts.join(" "))
            }
            Outcome::Fail { witness } => {
                fail += 1;
                let point: Vec<String> = witness.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let params: Vec<String> = witness.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!(
                    "FAIL at {} [{}]: lhs {} rhs {}",
                    point.join(", "),
                    params.join(", "),
                    witness.lhs,
                    witness.rhs
                )
            }
            Outcome::Skipped { reason } => {
                skip += 1;
                format!("SKIP {reason}")
            }
        };
        out!(
            "{:<8} n={:<2} {:<11} {}",
            r.id,
            r.n,
            r.mode.to_string(),
            detail.trim_end()
        );
    }
    out!("{pass} passed, {fail} failed, {skip} skipped");
}

fn aux_list(spec: &IdentitySpec) -> String {
    let fams: Vec<String> = spec.aux_families().iter().map(|f| f.to_string()).collect();
    if fams.is_empty() {
        "-".to_string()
    } else {
        fams.join(",")
    }
}

fn cmd_list(cli: &Cli, status: Option<Status>, files: &[PathBuf]) -> Result<u8, Exit> {
    let reg = registry(files)?;
    let rows: Vec<&IdentitySpec> = reg
        .list()
        .into_iter()
        .filter(|s| status.is_none_or(|st| s.status == st))
        .collect();
    match cli.format {
        Format::Json => {
            let v: Vec<serde_json::Value> = rows
                .iter()
                .map(|s| {
                    let [sym, grid, random] = s.default_max_n();
                    json!({
                        "id": s.id,
                        "status": s.status,
                        "kind": s.kind,
                        "auxVars": s.aux_families().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                        "params": s.param_names(),
                        "maxN": { "symbolic": sym, "grid": grid, "random": random },
                        "notes": s.notes,
                    })
                })
                .collect();
            print_json(&serde_json::Value::Array(v));
        }
        Format::Text => {
            for s in rows {
                let [sym, grid, random] = s.default_max_n();
                out!(
                    "{:<8} {:<8} {:<11} {:<9} {sym}/{grid}/{random}",
                    s.id,
                    s.status.to_string(),
                    format!("{:?}", s.kind).to_lowercase(),
                    aux_list(s)
                );
            }
        }
    }
    Ok(0)
}
