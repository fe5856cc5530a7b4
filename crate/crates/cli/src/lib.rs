//! Command-line driver: parses a run configuration, dispatches to the
//! engine and writes a versioned JSON (or plain table) report.

pub mod regress;
pub mod report;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use superdirac::rep::parse_module;
use superdirac::AlgebraContext;

use report::{CohomologyOptions, DiracOptions, Outcome};

pub const SCHEMA: u32 = 1;
pub const WORKERS_ENV: &str = "SUPERDIRAC_WORKERS";

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "superdirac", version, about = "Exact Dirac cohomology and (co)homology checks for gl(m|n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Clone, Debug, Args)]
pub struct Rank {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Algebraic identities.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Dirac cohomology degree by degree.
    Dirac {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, default_value = "nat")]
        module: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        check_infinitesimal: bool,
        #[arg(long)]
        bound: bool,
    },
    /// g+ cohomology, optionally g- homology, twist comparison and Hodge checks.
    Cohomology {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, default_value = "nat")]
        module: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long)]
        homology: bool,
        #[arg(long)]
        twist_compare: bool,
        #[arg(long)]
        hodge: bool,
    },
    /// Re-derive the stored fixtures and compare byte for byte.
    Regress {
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Rewrite the fixtures instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// sp table, α morphism, linear and constant parts of α, constant C.
    Identities {
        #[command(flatten)]
        rank: Rank,
        /// Include the rendered Weyl elements α(E_kl).
        #[arg(long)]
        explain: bool,
    },
    /// D² identity, symbolically in U(g)⊗W or on module slices.
    D2 {
        #[command(flatten)]
        rank: Rank,
        #[arg(long, conflicts_with = "on_module")]
        symbolic: bool,
        #[arg(long)]
        on_module: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_degree: usize,
    },
}

/// Bad input: unparsable module, invalid rank, unreadable paths.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn context(rank: &Rank) -> anyhow::Result<AlgebraContext> {
    AlgebraContext::new(rank.m, rank.n).map_err(|e| UsageError(e.to_string()).into())
}

fn module(ctx: &AlgebraContext, spec: &str) -> anyhow::Result<superdirac::rep::ModuleData> {
    parse_module(ctx, spec).map_err(|e| UsageError(e.to_string()).into())
}

fn wrap(command: &str, outcome: Outcome) -> Outcome {
    let mut value = json!({"schema": SCHEMA, "command": command, "passed": outcome.passed});
    if let Value::Object(body) = outcome.value {
        for (k, v) in body {
            value[k] = v;
        }
    }
    Outcome { value, passed: outcome.passed }
}

/// Runs one command and returns its report.
pub fn execute(command: &Command) -> anyhow::Result<Outcome> {
    let outcome = match command {
        Command::Verify { what: Verify::Identities { rank, explain } } => {
            wrap("verify identities", report::identities(&context(rank)?, *explain)?)
        }
        Command::Verify { what: Verify::D2 { rank, symbolic, on_module, max_degree } } => {
            let ctx = context(rank)?;
            match on_module {
                Some(spec) if !symbolic => wrap("verify d2", report::d2_on_module(&module(&ctx, spec)?, *max_degree)?),
                _ => wrap("verify d2", report::d2_symbolic(&ctx)?),
            }
        }
        Command::Dirac { rank, module: spec, max_degree, check_infinitesimal, bound } => {
            let ctx = context(rank)?;
            let opts = DiracOptions { infinitesimal: *check_infinitesimal, bound: *bound };
            wrap("dirac", report::dirac(&module(&ctx, spec)?, *max_degree, opts)?)
        }
        Command::Cohomology { rank, module: spec, max_degree, homology, twist_compare, hodge } => {
            let ctx = context(rank)?;
            let opts = CohomologyOptions { homology: *homology, twist: *twist_compare, hodge: *hodge };
            wrap("cohomology", report::cohomology(&module(&ctx, spec)?, *max_degree, opts)?)
        }
        Command::Regress { fixtures, bless } => {
            let dir = fixtures.clone().unwrap_or_else(regress::default_dir);
            let results = regress::run(&dir, *bless)?;
            let passed = results.iter().all(|r| r.identical && r.checks_passed);
            let value = json!({
                "schema": SCHEMA,
                "command": "regress",
                "fixtures": results.iter().map(|r| json!({
                    "name": r.name,
                    "identical": r.identical,
                    "checks_passed": r.checks_passed,
                    "note": r.note,
                })).collect::<Vec<_>>(),
                "passed": passed,
            });
            Outcome { value, passed }
        }
    };
    Ok(outcome)
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn canonical(v: &Value) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

pub fn write_atomic(path: &Path, text: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path)?;
    Ok(())
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            format!("({})", a.iter().map(scalar_text).collect::<Vec<_>>().join(","))
        }
        other => other.to_string(),
    }
}

fn types_text(v: &Value) -> String {
    let Some(items) = v.as_array() else { return String::new() };
    items
        .iter()
        .map(|t| format!("{}x{}", t["multiplicity"], scalar_text(&t["weight"])))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (k, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{k}]"), x, out);
            }
        }
        _ => {
            let _ = writeln!(out, "{prefix:<48} {}", scalar_text(v));
        }
    }
}

fn degree_table(rows: &[Value], columns: &[&str], out: &mut String) {
    let _ = writeln!(out, "{}", columns.join("\t"));
    for r in rows {
        let cells: Vec<String> =
            columns.iter().map(|c| if *c == "g0_types" { types_text(&r[*c]) } else { scalar_text(&r[*c]) }).collect();
        let _ = writeln!(out, "{}", cells.join("\t"));
    }
}

/// Human-readable rendering: per-degree tables where the report has them,
/// then every remaining field as `path value`.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    let mut rest = v.clone();
    if let Some(blocks) = v["blocks"].as_array() {
        for b in blocks {
            if let Some(rows) = b["degrees"].as_array() {
                if rows.first().is_some_and(|r| r.get("slice_dim").is_some()) {
                    let _ = writeln!(out, "{} (Omega = {})", scalar_text(&b["module"]), scalar_text(&b["block_eigenvalue"]));
                    degree_table(rows, &["i", "slice_dim", "harmonic_dim", "g0_types"], &mut out);
                    out.push('\n');
                }
            }
        }
    }
    if let Some(rows) = v["degrees"].as_array() {
        if rows.first().is_some_and(|r| r.get("kernel_dim").is_some()) {
            let _ = writeln!(out, "H^i(g+, {})", scalar_text(&v["module"]));
            degree_table(rows, &["i", "dim", "kernel_dim", "boundary_rank", "g0_types"], &mut out);
            out.push('\n');
            rest.as_object_mut().map(|m| m.remove("degrees"));
        }
    }
    flatten("", &rest, &mut out);
    out
}

pub fn render(v: &Value, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => canonical(v),
        Format::Table => Ok(table(v)),
    }
}

/// Sizes the global worker pool from the environment, if requested.
pub fn configure_workers() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var(WORKERS_ENV) {
        let n: usize = raw.trim().parse().map_err(|_| UsageError(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")))?;
        if n == 0 {
            return Err(UsageError(format!("{WORKERS_ENV} must be positive")).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Full run: returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let result = configure_workers().and_then(|_| execute(&cli.command)).and_then(|outcome| {
        let text = render(&outcome.value, cli.format)?;
        match &cli.output {
            Some(path) => write_atomic(path, &text)?,
            None => print!("{text}"),
        }
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) if e.downcast_ref::<UsageError>().is_some() => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_FAIL
        }
    }
}
