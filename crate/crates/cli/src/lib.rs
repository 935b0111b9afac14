//! Command-line front end: self-closeness numbers with certificates,
//! certificate verification, and the brute-force ring labs.
//!
//! Exit codes are a stable contract: 0 success, 1 usage or parse error,
//! 2 inconclusive result under `--require-exact`, 3 failed verification
//! or failed lab.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use scn_core::abgroup::primary_decomposition;
use scn_core::engine::VerificationFailure;
use scn_core::oracle::{check_bcm, check_lu, check_nj_equivalence, check_quasi_regular_and_nc, enumerate_end};
use scn_core::{
    parse_expression, verify_certificate, verify_result, Bounds, Catalog, Certificate, Engine, EngineResult,
    FgAbGroup, ResultStatus, SphereTable,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "scn", version, about = "Self-closeness numbers of products of spaces")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Sphere homotopy table to use instead of the bundled one.
    #[arg(long, global = true, env = "SCN_SPHERE_TABLE")]
    pub table: Option<PathBuf>,
    /// Largest group order the brute-force checks may enumerate.
    #[arg(long, global = true, default_value_t = Bounds::default().max_order)]
    pub max_order: u64,
    /// Also try groups of leading factors as pivots.
    #[arg(long, global = true)]
    pub pivot_search: bool,
    /// Exit with status 2 when only a lower bound is established.
    #[arg(long, global = true)]
    pub require_exact: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the self-closeness number of a product, e.g. "S^2 x S^5 x S^7".
    Ne { expression: String },
    /// Re-check a certificate or result written by `ne --json`.
    Verify { file: PathBuf },
    /// Exhaustive checks of the ring lemmas on small groups.
    #[command(subcommand)]
    Lab(Lab),
}

#[derive(Debug, Subcommand)]
pub enum Lab {
    /// Quasi-regularity and unit-plus-nilpotent in End(G).
    Qr { group: String },
    /// Ulm-Kaplansky criterion against reducedness of End(H)/J, for a p-group H.
    Nj { group: String },
    /// Diagonal blocks of automorphisms of G + H.
    Bcm { first: String, second: String },
    /// Block LU factorization of automorphisms of a sum.
    Lu {
        #[arg(num_args = 2.., required = true)]
        groups: Vec<String>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed at {}: {}", .0.path, .0.reason)]
    Verification(VerificationFailure),
}

/// Parses `args` (program name first) and runs the command, writing
/// results to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Verification(_) => EXIT_VERIFICATION,
            }
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn catalog(o: &Options) -> Result<Catalog, CliError> {
    let table = match &o.table {
        Some(path) => SphereTable::load(path).map_err(usage)?,
        None => SphereTable::default(),
    };
    Ok(Catalog::new(table, bounds(o)))
}

fn bounds(o: &Options) -> Bounds {
    Bounds {
        max_order: o.max_order,
        ..Bounds::default()
    }
}

fn emit(out: &mut dyn Write, json: bool, value: &impl Serialize, text: &str) -> Result<(), CliError> {
    let written = if json {
        serde_json::to_string_pretty(value)
            .map_err(std::io::Error::other)
            .and_then(|s| writeln!(out, "{s}"))
    } else {
        write!(out, "{text}")
    };
    written.map_err(usage)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let o = &cli.options;
    match &cli.command {
        Command::Ne { expression } => ne(o, expression, out),
        Command::Verify { file } => verify(o, file, out),
        Command::Lab(lab) => run_lab(o, lab, out),
    }
}

/// The expression with a caret under the offending column.
fn point_at(source: &str, column: usize) -> String {
    format!("  {source}\n  {}^", " ".repeat(column.saturating_sub(1)))
}

fn ne(o: &Options, text: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let expr = parse_expression(text).map_err(|e| usage(format!("{e}\n{}", point_at(text, e.column()))))?;
    let engine = Engine::new(catalog(o)?).with_pivot_search(o.pivot_search);
    let result = engine.compute_ne(&expr.factors).map_err(usage)?;
    let mut text = format!("{} {}\n", status_name(result.status), result.value);
    match &result.certificate {
        Some(c) => text.push_str(&format!("certificate:\n{c}")),
        None => text.push_str(&format!(
            "no reducibility rule applies; {} is the largest factor value and a lower bound\n",
            result.value
        )),
    }
    emit(out, o.json, &result, &text)?;
    Ok(match result.status {
        ResultStatus::LowerBound if o.require_exact => EXIT_INCONCLUSIVE,
        _ => EXIT_OK,
    })
}

fn status_name(s: ResultStatus) -> &'static str {
    match s {
        ResultStatus::Exact => "EXACT",
        ResultStatus::LowerBound => "LOWER_BOUND",
    }
}

/// Either document `ne --json` can produce.
#[derive(serde::Deserialize)]
#[serde(untagged)]
enum Document {
    Result(EngineResult),
    Certificate(Certificate),
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    status: Option<ResultStatus>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u32>,
    nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<&'a VerificationFailure>,
}

fn verify(o: &Options, file: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let doc: Document = serde_json::from_str(&text).map_err(|e| {
        CliError::Verification(VerificationFailure {
            path: "$".into(),
            reason: format!("not a result or certificate document: {e}"),
        })
    })?;
    let catalog = catalog(o)?;
    let (checked, status, value, nodes) = match &doc {
        Document::Result(r) => (
            verify_result(&catalog, r),
            Some(r.status),
            Some(r.value),
            r.certificate.as_ref().map_or(0, Certificate::node_count),
        ),
        Document::Certificate(c) => (verify_certificate(&catalog, c), None, None, c.node_count()),
    };
    let report = VerifyReport {
        valid: checked.is_ok(),
        status,
        value,
        nodes,
        failure: checked.as_ref().err(),
    };
    let text = match (&checked, status) {
        (Ok(()), Some(s)) => format!("valid: {} {}, {nodes} certificate nodes checked\n", status_name(s), value.unwrap_or(0)),
        (Ok(()), None) => format!("valid: {nodes} certificate nodes checked\n"),
        (Err(f), _) => format!("invalid: {}: {}\n", f.path, f.reason),
    };
    if o.json || checked.is_ok() {
        emit(out, o.json, &report, &text)?;
    }
    match checked {
        Ok(()) => Ok(EXIT_OK),
        Err(_) if o.json => Ok(EXIT_VERIFICATION),
        Err(f) => Err(CliError::Verification(f)),
    }
}

fn group(text: &str) -> Result<FgAbGroup, CliError> {
    let g: FgAbGroup = text.parse().map_err(|e| usage(format!("{text}: {e}")))?;
    if !g.is_finite() {
        return Err(usage(format!("{text}: labs need a finite group")));
    }
    Ok(g)
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_lab(o: &Options, lab: &Lab, out: &mut dyn Write) -> Result<i32, CliError> {
    let b = bounds(o);
    let passed = match lab {
        Lab::Qr { group: g } => {
            let ring = enumerate_end(&group(g)?, &b).map_err(usage)?;
            let r = check_quasi_regular_and_nc(&ring);
            let mut text = format!(
                "End({}): {} elements, {} units, {} nilpotents, {} commuting unit-nilpotent pairs\n",
                r.group, r.ring_size, r.units, r.nilpotents, r.commuting_pairs
            );
            for c in &r.counterexamples {
                text.push_str(&format!("  {c}\n"));
            }
            text.push_str(&format!("{}\n", verdict(r.passed)));
            emit(out, o.json, &r, &text)?;
            r.passed
        }
        Lab::Nj { group: g } => {
            let h = group(g)?;
            let parts = primary_decomposition(&h);
            let [c] = parts.as_slice() else {
                return Err(usage(format!("{g}: the NJ lab needs a nontrivial p-group")));
            };
            let r = check_nj_equivalence(c, &b).map_err(usage)?;
            let text = format!(
                "p = {}, exponents {:?}: criterion {}, End/J reduced {}, N in J {}, |J| = {}\n{}{}\n",
                r.prime,
                r.exponents,
                r.criterion,
                r.quotient_reduced,
                r.nilpotents_in_radical,
                r.radical_size,
                r.witness.as_ref().map_or(String::new(), |w| format!("  nilpotent mod J: {w}\n")),
                verdict(r.passed)
            );
            emit(out, o.json, &r, &text)?;
            r.passed
        }
        Lab::Bcm { first, second } => {
            let r = check_bcm(&group(first)?, &group(second)?, &b).map_err(usage)?;
            let text = format!(
                "{} + {}: common direct factor {}, {} automorphisms, {} with a non-invertible diagonal block\n{}{}\n",
                r.groups[0],
                r.groups[1],
                r.common_direct_factor,
                r.automorphisms,
                r.violations,
                r.counterexample.as_ref().map_or(String::new(), |c| format!("  example: {c}\n")),
                verdict(r.passed)
            );
            emit(out, o.json, &r, &text)?;
            r.passed
        }
        Lab::Lu { groups } => {
            let gs = groups.iter().map(|g| group(g)).collect::<Result<Vec<_>, _>>()?;
            let r = check_lu(&gs, &b).map_err(usage)?;
            let text = format!(
                "{}: {} maps, {} reducible automorphisms, {} factored, {} failures, {} correctly refused, {} wrongly factored\n{}\n",
                r.groups.join(" + "),
                r.maps,
                r.reducible_automorphisms,
                r.factored,
                r.factorization_failures,
                r.correctly_refused,
                r.wrongly_factored,
                verdict(r.passed)
            );
            emit(out, o.json, &r, &text)?;
            r.passed
        }
    };
    Ok(if passed { EXIT_OK } else { EXIT_VERIFICATION })
}
