//! Argument parsing and the subcommands.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use congruence_core::identity::{
    check_int_valued, identity_catalog, int_valued_claims, verify_identity,
    verify_u_recurrence, IntValuedLimits,
};
use congruence_core::{catalog, Filter};
use rayon::prelude::*;

use crate::cache;
use crate::config::{parse_modulus, parse_range, Command, Format, RunConfig, XPolicyArg};
use crate::report::{self, CatalogEntry};
use crate::run::run_parallel;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "congruence-lab",
    version,
    about = "Checks supercongruences and identities over ranges of primes"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Check catalog congruences over a prime range.
    Verify(VerifyArgs),
    /// Certify polynomial identities and integer-valuedness claims.
    Identity(IdentityArgs),
    /// Print the statement catalog.
    List(ListArgs),
    /// Write the statement catalog as one JSON document.
    Export(ExportArgs),
}

#[derive(Debug, Args)]
struct Selection {
    /// Statement kind (theorem, lemma, corollary, remark, conjecture).
    #[arg(long = "kind", value_delimiter = ',')]
    kinds: Vec<String>,
    /// Statement id, `*` glob, or group prefix.
    #[arg(long = "id", value_delimiter = ',')]
    ids: Vec<String>,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Report file; standard output if absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    sel: Selection,
    /// Inclusive prime range `lo..hi`.
    #[arg(long, default_value = "3..50")]
    primes: String,
    /// Comma-separated x samples `a/b`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    x: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = XPolicyArg::Full)]
    x_policy: XPolicyArg,
    /// Worker threads (default: hardware width).
    #[arg(long)]
    jobs: Option<usize>,
    /// Use exact rational arithmetic throughout.
    #[arg(long)]
    exact: bool,
    /// Check a statement at a lower exponent, `id=e`.
    #[arg(long = "modulus")]
    modulus: Vec<String>,
    /// Run statements beyond their default prime cap.
    #[arg(long)]
    ignore_caps: bool,
    /// Corrupt one statement's right side (for testing exit codes).
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct IdentityArgs {
    /// Every identity and integer-valuedness claim.
    #[arg(long)]
    all: bool,
    #[arg(long = "id", value_delimiter = ',')]
    ids: Vec<String>,
    /// Largest integer parameter on the certification grid.
    #[arg(long, default_value_t = 8)]
    param_max: u64,
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct ListArgs {
    #[command(flatten)]
    sel: Selection,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Cli {
    fn into_config(self) -> Result<RunConfig> {
        let cfg = match self.command {
            Sub::Verify(a) => RunConfig {
                kinds: a.sel.kinds,
                ids: a.sel.ids,
                primes: parse_range(&a.primes)?,
                x: a.x,
                x_policy: a.x_policy,
                modulus: a
                    .modulus
                    .iter()
                    .map(|m| parse_modulus(m))
                    .collect::<Result<_>>()?,
                jobs: a.jobs,
                output: a.out.output,
                format: a.out.format,
                exact: a.exact,
                ignore_caps: a.ignore_caps,
                inject_fault: a.inject_fault,
                ..RunConfig::new(Command::Verify)
            },
            Sub::Identity(a) => RunConfig {
                ids: a.ids,
                all: a.all,
                param_max: a.param_max,
                jobs: a.jobs,
                output: a.out.output,
                format: a.out.format,
                ..RunConfig::new(Command::Identity)
            },
            Sub::List(a) => RunConfig {
                kinds: a.sel.kinds,
                ids: a.sel.ids,
                output: a.out.output,
                format: a.out.format,
                ..RunConfig::new(Command::List)
            },
            Sub::Export(a) => RunConfig {
                output: a.output,
                ..RunConfig::new(Command::Export)
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// A usage problem (exit 2) as opposed to a failed check (exit 1).
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_USAGE;
        }
    };
    match execute(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn open_output(cfg: &RunConfig) -> Result<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn execute(cfg: &RunConfig) -> Result<i32> {
    match cfg.command {
        Command::Verify => cmd_verify(cfg),
        Command::Identity => cmd_identity(cfg),
        Command::List => cmd_list(cfg),
        Command::Export => cmd_export(cfg),
    }
}

fn known_id(cat: &[congruence_core::Statement], pattern: &str) -> bool {
    cat.iter().any(|s| Filter::id_matches(pattern, s.id))
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<i32> {
    let cat = catalog();
    for pattern in &cfg.ids {
        if !known_id(&cat, pattern) {
            bail!(Usage(format!("no statement matches --id {pattern:?}")));
        }
    }
    for (id, _) in &cfg.modulus {
        if !cat.iter().any(|s| s.id == id) {
            bail!(Usage(format!("--modulus names unknown statement {id:?}")));
        }
    }
    if let Some(id) = &cfg.inject_fault {
        if !cat.iter().any(|s| s.id == id) {
            bail!(Usage(format!(
                "--inject-fault names unknown statement {id:?}"
            )));
        }
    }
    let range = cfg.range()?;
    let suite = cfg.suite_config()?;
    let dir = cache::cache_dir();
    let seq_cache = dir.as_deref().map(cache::load).unwrap_or_default();

    let (summary, records, seq_cache) =
        run_parallel(&cat, &cfg.filter(), &range, &suite, seq_cache, cfg.jobs)?;

    let mut out = open_output(cfg)?;
    report::write_records(&mut *out, cfg.format, &records)?;
    if cfg.format == Format::Pretty {
        writeln!(out)?;
        report::write_summary(&mut *out, &summary)?;
    } else {
        report::write_summary(&mut io::stderr().lock(), &summary)?;
    }
    out.flush()?;
    if records.is_empty() {
        eprintln!("note: no (statement, prime) pairs selected");
    }
    if let Some(dir) = dir {
        if let Err(e) = cache::store(&dir, &seq_cache) {
            eprintln!("warning: could not save the sequence cache: {e:#}");
        }
    }
    Ok(if summary.failed {
        EXIT_FAILURE
    } else {
        EXIT_OK
    })
}

pub fn cmd_identity(cfg: &RunConfig) -> Result<i32> {
    if !cfg.all && cfg.ids.is_empty() {
        bail!(Usage(String::from("identity needs --all or --id")));
    }
    let chosen = |id: &str| cfg.all || cfg.ids.iter().any(|p| Filter::id_matches(p, id));
    let identities: Vec<_> = identity_catalog()
        .into_iter()
        .filter(|s| chosen(s.id))
        .collect();
    let claims: Vec<_> = int_valued_claims(IntValuedLimits::default())
        .into_iter()
        .filter(|c| chosen(c.id))
        .collect();
    if identities.is_empty() && claims.is_empty() {
        bail!(Usage(format!("no identity matches {:?}", cfg.ids)));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.unwrap_or(0))
        .build()?;
    let (id_reports, claim_reports) = pool.install(|| {
        let a: Vec<_> = identities
            .par_iter()
            .map(|s| verify_identity(s, cfg.param_max))
            .collect();
        let b: Vec<_> = claims.par_iter().map(check_int_valued).collect();
        (a, b)
    });
    let mut out = open_output(cfg)?;
    let mut ok = true;
    let json = cfg.format != Format::Pretty;
    for (stmt, r) in identities.iter().zip(id_reports) {
        let r = r.with_context(|| format!("certifying {}", stmt.id))?;
        ok &= r.pass;
        if json {
            writeln!(out, "{}", report::identity_json(&r))?;
        } else {
            let verdict = if r.pass { "pass" } else { "FAIL" };
            writeln!(
                out,
                "{:<20} {verdict}  tuples={} points={}",
                r.id, r.tuples_checked, r.points_checked
            )?;
            if let Some(c) = &r.counterexample {
                writeln!(
                    out,
                    "  counterexample at params {:?}: lhs {} rhs {}",
                    c.params, c.lhs, c.rhs
                )?;
            }
        }
        if stmt.id == "eq4.6" {
            let rec = verify_u_recurrence(cfg.param_max);
            ok &= rec.pass;
            if json {
                writeln!(
                    out,
                    "{}",
                    serde_json::json!({"id": "eq4.6/recurrence", "pass": rec.pass,
                        "n_max": rec.n_max, "base_cases": rec.base_cases, "failures": rec.failures})
                )?;
            } else if rec.pass {
                writeln!(
                    out,
                    "{:<20} pass  recurrence verified for both sides, n <= {}, initial values agree",
                    "eq4.6/recurrence", rec.n_max
                )?;
            } else {
                writeln!(
                    out,
                    "{:<20} FAIL  {}",
                    "eq4.6/recurrence",
                    rec.failures.join("; ")
                )?;
            }
        }
    }
    for r in claim_reports {
        let r = r?;
        ok &= r.pass;
        if json {
            writeln!(out, "{}", report::int_valued_json(&r))?;
        } else {
            let verdict = if r.pass { "pass" } else { "FAIL" };
            write!(out, "{:<20} {verdict}  {}", r.id, r.label)?;
            match &r.detail {
                Some(d) => writeln!(out, "  {d}")?,
                None => writeln!(out)?,
            }
        }
    }
    out.flush()?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn catalog_entries(cfg: &RunConfig) -> Vec<CatalogEntry> {
    let filter = cfg.filter();
    let mut entries: Vec<CatalogEntry> = catalog()
        .iter()
        .filter(|s| filter.matches(s))
        .map(CatalogEntry::from_statement)
        .collect();
    let want_conj =
        filter.kinds.is_empty() || filter.kinds.contains(&congruence_core::Kind::Conjecture);
    if want_conj {
        let claims: Vec<_> = int_valued_claims(IntValuedLimits::default())
            .into_iter()
            .filter(|c| {
                filter.ids.is_empty() || filter.ids.iter().any(|p| Filter::id_matches(p, c.id))
            })
            .collect();
        entries.extend(CatalogEntry::from_claims(&claims));
    }
    entries.sort_by_cached_key(|e| report::natural_key(&e.id));
    entries
}

pub fn cmd_list(cfg: &RunConfig) -> Result<i32> {
    let entries = catalog_entries(cfg);
    if entries.is_empty() {
        bail!(Usage(String::from(
            "no catalog entry matches the selection"
        )));
    }
    let mut out = open_output(cfg)?;
    report::write_catalog(&mut *out, cfg.format, &entries)?;
    out.flush()?;
    Ok(EXIT_OK)
}

pub fn cmd_export(cfg: &RunConfig) -> Result<i32> {
    let entries = catalog_entries(cfg);
    let doc = serde_json::json!({
        "version": congruence_core::VERSION,
        "statements": entries,
    });
    let mut out = open_output(cfg)?;
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    out.flush()?;
    Ok(EXIT_OK)
}
