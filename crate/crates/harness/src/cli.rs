//! The `isoq` command line.

use crate::config::{self, Options};
use crate::report::{self, CheckReport};
use crate::run;
use crate::HarnessError;
use clap::{Args, Parser, Subcommand};
use isoq::rep::{Convention, GeneratorTable};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "isoq",
    version,
    about = "Exact and numeric checks of the quantum euclidean groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check.
    Suite,
    /// Tensor-expression scripts.
    Dsl {
        #[command(subcommand)]
        command: DslCommand,
    },
    /// Hilbert space representation scan.
    Rep,
    /// Symbolic embedding checks.
    Embed,
}

#[derive(Debug, Subcommand)]
pub enum DslCommand {
    /// Run the checks of one `.qvt` script.
    Run { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct Flags {
    /// exact or numeric (default: both where applicable)
    #[arg(long, global = true)]
    pub backend: Option<String>,
    /// Numeric sample point in (0, 1); Q = q^(1/4) internally
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// euclid or lorentz
    #[arg(long, global = true)]
    pub signature: Option<String>,
    /// verbatim, adjoint-consistent or corrected
    #[arg(long, global = true)]
    pub convention: Option<String>,
    /// Basis window, e.g. `n=0..6,m=-6..6,k=-6..6,r=0..6,s=0..6,v=-6..6`
    #[arg(long, global = true)]
    pub window: Option<String>,
    /// Write the JSON report here
    #[arg(long, global = true)]
    pub report: Option<String>,
    /// Numeric tolerance
    #[arg(long, global = true)]
    pub tolerance: Option<String>,
    /// Leave durations out of the report
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Keep only checks whose id starts with this prefix
    #[arg(long, global = true)]
    pub only: Option<String>,
    /// Directory of `.qvt` scripts run by `suite`
    #[arg(long, global = true)]
    pub corpus: Option<String>,
    /// `key = value` settings file; flags win over it
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

impl Flags {
    fn settings(&self) -> Result<BTreeMap<String, String>, HarnessError> {
        let mut m = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| HarnessError::Io(p.display().to_string(), e))?;
                config::parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        let flags = [
            ("backend", &self.backend),
            ("q", &self.q),
            ("signature", &self.signature),
            ("convention", &self.convention),
            ("window", &self.window),
            ("report", &self.report),
            ("tolerance", &self.tolerance),
            ("only", &self.only),
            ("corpus", &self.corpus),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                m.insert(k.to_string(), v.clone());
            }
        }
        if self.no_timing {
            m.insert("no-timing".into(), "true".into());
        }
        Ok(m)
    }
}

fn print_line(out: &mut dyn Write, r: &CheckReport) -> std::io::Result<()> {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    write!(out, "{status} {}", r.id)?;
    if let Some(q) = r.q {
        write!(out, " q={q}")?;
    }
    if let Some(x) = r.residual {
        write!(out, " residual={x:.3e}")?;
    }
    if let Some(d) = &r.detail {
        write!(out, "  {d}")?;
    }
    writeln!(out)
}

/// The printed coefficients that disagree with the adjoint of their
/// partner, and what the selected convention uses instead.
fn discrepancies(convention: Convention) -> Vec<String> {
    let fix = GeneratorTable::new(Convention::Corrected).substitutions;
    let used = GeneratorTable::new(convention).substitutions;
    fix.iter()
        .map(|s| {
            let state = if used.iter().any(|u| u.generator == s.generator) {
                format!("replaced by {}", s.used)
            } else {
                format!("kept; consistent value {}", s.used)
            };
            format!(
                "discrepancy: pi({}) printed coefficient {}, {state}",
                s.generator, s.printed
            )
        })
        .collect()
}

fn execute(cli: &Cli, opts: &Options, out: &mut dyn Write) -> Result<Vec<CheckReport>, HarnessError> {
    let reports = match &cli.command {
        Command::Suite => run::suite(opts)?,
        Command::Embed => run::select(run::embed_checks(opts), opts),
        Command::Dsl {
            command: DslCommand::Run { file },
        } => {
            let mut o = opts.clone();
            o.backend = Some(o.backend.unwrap_or(crate::BackendChoice::Exact));
            run::select(run::dsl_checks(file, &o)?, &o)
        }
        Command::Rep => {
            let r = run::select(run::rep_checks(opts)?, opts);
            for d in discrepancies(opts.convention) {
                writeln!(out, "{d}").ok();
            }
            r
        }
    };
    Ok(reports)
}

/// Runs the command line; the exit code is 0 iff every selected check
/// passed, 1 if some failed and 2 on usage or input errors.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let opts = match cli.flags.settings().and_then(|m| config::options(&m)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let reports = match execute(&cli, &opts, out) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    for r in &reports {
        let _ = print_line(out, r);
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let _ = writeln!(
        out,
        "{} checks, {} passed, {failed} failed",
        reports.len(),
        reports.len() - failed
    );
    if let Some(path) = &opts.report {
        if let Err(e) = report::write_report(path, &reports) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return 2;
        }
    }
    i32::from(failed > 0)
}
