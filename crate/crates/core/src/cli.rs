//! The `padic-dyn` command line: decompose, verify, lift-tree and census.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::decompose::{decompose_with, DecomposeError, DecomposeOptions, Decomposition};
use crate::dot::{lift_tree, DEFAULT_DOT_NODES};
use crate::engine::Behavior;
use crate::oracle::{build_graph, census, crosscheck};
use crate::padic::{IntPolynomial, Prime};
use crate::theorems::{classify_case, conjecture_check, predict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;
pub const EXIT_STRICT: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "padic-dyn", version, about = "Minimal decompositions of polynomial dynamics on Z_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decompose Z_p into periodic orbits, minimal components and basins.
    Decompose(RunConfig),
    /// Compare the closed-form prediction, the decomposer and the brute-force oracle.
    Verify(RunConfig),
    /// Write the lift tree of cycles as a Graphviz digraph.
    LiftTree(RunConfig),
    /// Count cycles (and growing cycles) of f mod p^n with the oracle.
    Census(RunConfig),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long)]
    pub p: u32,
    /// Exponent of the monomial x^m.
    #[arg(long, conflicts_with = "coeffs")]
    pub m: Option<u64>,
    /// Polynomial coefficients, constant term first, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Option<Vec<BigInt>>,
    #[arg(long = "max-level")]
    pub max_level: u32,
    /// Working precision in digits (default: max level + 8).
    #[arg(long = "working-precision")]
    pub working_precision: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Treat unresolved balls and budget exhaustion as failures.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl RunConfig {
    pub fn prime(&self) -> Result<Prime, CliError> {
        Prime::new(self.p).map_err(|e| CliError::Invalid(e.to_string()))
    }

    pub fn polynomial(&self) -> Result<IntPolynomial, CliError> {
        match (&self.m, &self.coeffs) {
            (Some(m), None) if *m >= 2 => u32::try_from(*m)
                .map(IntPolynomial::monomial)
                .map_err(|_| CliError::Invalid(format!("exponent {m} is too large"))),
            (Some(m), None) => Err(CliError::Invalid(format!("exponent must be at least 2, got {m}"))),
            (None, Some(c)) => Ok(IntPolynomial::new(c.clone())),
            _ => Err(CliError::Invalid("give exactly one of --m or --coeffs".into())),
        }
    }

    fn check_level(&self) -> Result<(), CliError> {
        if self.max_level < 2 {
            return Err(CliError::Invalid(format!("max level must be at least 2, got {}", self.max_level)));
        }
        Ok(())
    }

    fn options(&self) -> Result<DecomposeOptions, CliError> {
        let mut opts = DecomposeOptions::default();
        if let Some(w) = self.working_precision {
            if w <= self.max_level {
                return Err(CliError::Invalid("working precision must exceed the max level".into()));
            }
            opts.headroom = w - self.max_level;
        }
        Ok(opts)
    }

    fn emit(&self, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
        match &self.output {
            Some(path) => std::fs::write(path, text)?,
            None => out.write_all(text.as_bytes())?,
        }
        Ok(())
    }
}

fn summary(d: &Decomposition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "f = {} over Z_{} to level {}", d.polynomial, d.prime, d.max_level);
    let _ = writeln!(s, "periodic orbits: {}", d.periodic_orbits.len());
    for o in &d.periodic_orbits {
        let pts: Vec<String> = o.points().iter().map(|x| x.value().to_string()).collect();
        let _ = writeln!(s, "  period {}: {{{}}} mod {}^{}", o.period(), pts.join(", "), d.prime, d.max_level);
    }
    let _ = writeln!(s, "minimal components: {}", d.components.len());
    for c in &d.components {
        let balls: Vec<String> = c.balls().iter().map(|b| b.to_string()).collect();
        let _ = writeln!(s, "  {}  [{}]", balls.join(" u "), c.certificate);
    }
    let _ = writeln!(s, "basins: {}", d.basins.len());
    for b in &d.basins {
        let region: Vec<String> = b.region.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "  {} -> {}", region.join(" u "), d.attractor_label(&b.attractor));
    }
    let _ = writeln!(s, "unresolved balls: {}", d.unresolved.len());
    for b in &d.unresolved {
        let _ = writeln!(s, "  {b}");
    }
    s
}

pub fn cmd_decompose(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    cfg.check_level()?;
    let f = cfg.polynomial()?;
    let prime = cfg.prime()?;
    let (dec, exhausted) = match decompose_with(&f, prime, cfg.max_level, cfg.options()?) {
        Ok(d) => (d, false),
        Err(DecomposeError::BudgetExhausted(d)) => (*d, true),
        Err(e) => return Err(CliError::Invalid(e.to_string())),
    };
    let text = match cfg.format {
        Format::Json => crate::json::to_string(&dec),
        Format::Text => summary(&dec),
    };
    cfg.emit(&text, out)?;
    Ok(match (exhausted || !dec.is_fully_resolved(), cfg.strict) {
        (false, _) => EXIT_OK,
        (true, true) => EXIT_STRICT,
        (true, false) => EXIT_UNRESOLVED,
    })
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    cfg.check_level()?;
    let m = cfg.m.ok_or_else(|| CliError::Invalid("verify needs --m".into()))?;
    let case = classify_case(cfg.p, m).map_err(|e| CliError::Invalid(e.to_string()))?;

    if case.conjectural {
        let r = conjecture_check(m, cfg.max_level).map_err(|e| CliError::Invalid(e.to_string()))?;
        let status = if r.matches() { "conjectural-pass" } else { "conjectural-fail" };
        let text = match cfg.format {
            Format::Json => {
                let observed: serde_json::Map<String, serde_json::Value> =
                    r.observed.iter().map(|(n, c)| (n.to_string(), json!(c))).collect();
                let v = json!({
                    "case": case.label(), "status": status, "t": r.t,
                    "cycle_length": r.cycle_length, "expected": r.expected, "observed": observed,
                });
                serde_json::to_string_pretty(&v).expect("serializable") + "\n"
            }
            Format::Text => {
                let mut s = format!("{case}\n");
                for (n, c) in &r.observed {
                    let _ = writeln!(s, "  level {n}: {c} growing {}-cycles (expected {})", r.cycle_length, r.expected);
                }
                let _ = writeln!(s, "{status}");
                s
            }
        };
        cfg.emit(&text, out)?;
        return Ok(if r.matches() { EXIT_OK } else { EXIT_MISMATCH });
    }

    let predicted = predict(&case, cfg.max_level).map_err(|e| CliError::Invalid(e.to_string()))?;
    let computed = decompose_with(&case.polynomial(), case.prime, cfg.max_level, cfg.options()?)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let differences = predicted.differences(&computed);
    let mut violations = Vec::new();
    let mut oracle_level = 0;
    for n in 1..=cfg.max_level {
        let g = match build_graph(&case.polynomial(), case.prime, n) {
            Ok(g) => g,
            Err(_) => break,
        };
        oracle_level = n;
        for (who, d) in [("predicted", &predicted), ("decomposed", &computed)] {
            for v in crosscheck(d, &g).violations {
                violations.push(json!({ "source": who, "level": n, "kind": v.kind, "detail": v.detail }));
            }
        }
    }
    let pass = differences.is_empty() && violations.is_empty();
    let status = if pass { "pass" } else { "mismatch" };
    let text = match cfg.format {
        Format::Json => {
            let v = json!({
                "case": case.label(), "status": status,
                "differences": differences, "violations": violations, "oracle_level": oracle_level,
            });
            serde_json::to_string_pretty(&v).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = format!("{case}\n");
            for d in &differences {
                let _ = writeln!(s, "  diff: {d}");
            }
            for v in &violations {
                let _ = writeln!(s, "  violation: {v}");
            }
            let _ = writeln!(s, "oracle checked to level {oracle_level}");
            let _ = writeln!(s, "{status}");
            s
        }
    };
    cfg.emit(&text, out)?;
    Ok(if pass { EXIT_OK } else { EXIT_MISMATCH })
}

pub fn cmd_lift_tree(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    cfg.check_level()?;
    let tree = lift_tree(&cfg.polynomial()?, cfg.prime()?, cfg.max_level, DEFAULT_DOT_NODES)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    let dot = tree.to_dot();
    match &cfg.dot {
        Some(path) => std::fs::write(path, dot)?,
        None => cfg.emit(&dot, out)?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_census(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let f = cfg.polynomial()?;
    let prime = cfg.prime()?;
    let mut levels = Vec::new();
    for n in 1..=cfg.max_level {
        let g = build_graph(&f, prime, n).map_err(|e| CliError::Invalid(e.to_string()))?;
        let all = census(&g, &f, None);
        let growing = census(&g, &f, Some(Behavior::Grows));
        levels.push((n, all, growing));
    }
    let text = match cfg.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = levels
                .iter()
                .map(|(n, all, grow)| {
                    let counts = |c: &crate::oracle::CycleCensus| -> serde_json::Map<String, serde_json::Value> {
                        c.counts.iter().map(|(k, v)| (k.to_string(), json!(v))).collect()
                    };
                    json!({ "level": n, "cycles": counts(all), "growing": counts(grow), "tail_nodes": all.tail_nodes })
                })
                .collect();
            serde_json::to_string_pretty(&json!({ "p": cfg.p, "levels": rows })).expect("serializable") + "\n"
        }
        Format::Text => {
            let mut s = String::new();
            for (n, all, grow) in &levels {
                let _ = writeln!(s, "level {n}: cycles {:?}, growing {:?}, tails {}", all.counts, grow.counts, all.tail_nodes);
            }
            s
        }
    };
    cfg.emit(&text, out)?;
    Ok(EXIT_OK)
}

/// Parses `args` (including the program name) and runs the command; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Decompose(c) => cmd_decompose(c, out),
        Command::Verify(c) => cmd_verify(c, out),
        Command::LiftTree(c) => cmd_lift_tree(c, out),
        Command::Census(c) => cmd_census(c, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVALID
        }
    }
}
