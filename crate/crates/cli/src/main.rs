//! `fanver`: batch verification of Ky Fan type parity identities.
//!
//! Reports go to stdout as JSON. Diagnostics go to stderr as JSON. Exit codes
//! are 0 for a pass, 1 for a theorem-level finding, 2 for bad input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fanver_core::complexes::{
    barycentric_subdivide, crosspolytope_boundary, torus_fixture, ComplexError, ComplexFile, Labelling, Z2Complex,
    TORUS_DEFAULT_N,
};
use fanver_core::om::{
    alternating_dual, axiom_verdict, chirotope_from_matrix, MatrixFile, MatroidFile, OmError, OrientedMatroid,
};
use fanver_core::verifier::{
    build_cochain_representative, fuzz_campaign, kyfan_classical, parity_check, rotated_argmax_labelling,
    verify_cochain, verify_representative, FuzzConfig, VerifierError, ROTATION_ATTEMPTS,
};
use fanver_core::z2homology::GF2Cochain;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fanver", version, about = "Exact checks of oriented-matroid Ky Fan parity identities")]
struct Cli {
    /// Add the missing negation of every cocircuit in matroid files.
    #[arg(long, global = true)]
    complete_negations: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parity check of a labelled complex against an oriented matroid.
    Verify {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[command(flatten)]
        source: MatroidSource,
    },
    /// Parity check against the alternating matroid, with sequence counts.
    Kyfan {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Oriented matroid constructions.
    #[command(subcommand)]
    Om(OmCommand),
    /// Fixture and labelling generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// The cochain of a uniform matroid on the crosspolytope boundary.
    Cochain {
        #[arg(required_unless_present = "cochain")]
        matroid: Option<PathBuf>,
        /// Check that it is an invariant cocycle and not an invariant coboundary.
        #[arg(long)]
        check: bool,
        /// Check a cochain file on the boundary of the m-crosspolytope instead.
        #[arg(long, requires = "m", conflicts_with = "matroid")]
        cochain: Option<PathBuf>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Seeded random campaign.
    Fuzz {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Inclusive, written `lo..hi`.
        #[arg(long, default_value = "1..2", value_parser = parse_range)]
        n_range: (usize, usize),
        /// Inclusive, written `lo..hi`.
        #[arg(long, default_value = "2..6", value_parser = parse_range)]
        m_range: (usize, usize),
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MatroidSource {
    #[arg(long)]
    matroid: Option<PathBuf>,
    #[arg(long)]
    matrix: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OmCommand {
    /// Cocircuits of the row space of a rational matrix.
    FromMatrix { matrix: PathBuf },
    /// Dual oriented matroid.
    Dual {
        #[command(flatten)]
        source: MatroidSource,
    },
    /// Run the cocircuit axioms on a matroid file.
    CheckAxioms { matroid: PathBuf },
    /// The alternating matroid of rank m - n.
    Alternating {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Boundary of the k-dimensional crosspolytope.
    Crosspolytope {
        #[arg(long)]
        k: usize,
    },
    /// Barycentric subdivision.
    Subdivide {
        complex: PathBuf,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Grid torus with a free translation involution.
    Torus {
        #[arg(long, default_value_t = TORUS_DEFAULT_N)]
        n: usize,
    },
    /// Argmax labelling after a seeded random rotation.
    Labelling {
        complex: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: usize = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

/// Machine-readable input error.
#[derive(Debug, Serialize)]
struct Diagnostic {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    advice: Option<&'static str>,
}

impl Diagnostic {
    fn new(error: &'static str, message: impl ToString) -> Self {
        Diagnostic { error, message: message.to_string(), witness: None, advice: None }
    }

    fn witness(mut self, w: impl Serialize) -> Self {
        self.witness = serde_json::to_value(w).ok();
        self
    }
}

impl From<OmError> for Diagnostic {
    fn from(e: OmError) -> Self {
        match &e {
            OmError::Axioms(v) => Diagnostic::new("axioms", &e).witness(v),
            _ => Diagnostic::new("matroid", e),
        }
    }
}

impl From<ComplexError> for Diagnostic {
    fn from(e: ComplexError) -> Self {
        match &e {
            ComplexError::Invalid(v) => Diagnostic::new("complex", &e).witness(v),
            ComplexError::LabellingInadmissible { edge, label } => Diagnostic {
                advice: Some("subdivide and retry"),
                ..Diagnostic::new("labelling", &e).witness(json!({ "condition": "(b)", "edge": edge, "label": label }))
            },
            _ => Diagnostic::new("complex", e),
        }
    }
}

impl From<VerifierError> for Diagnostic {
    fn from(e: VerifierError) -> Self {
        match e {
            VerifierError::Labelling(v) => Diagnostic::new("labelling", &v).witness(&v),
            VerifierError::Complex(c) => c.into(),
            VerifierError::Matroid(m) => m.into(),
            other => Diagnostic::new("configuration", other),
        }
    }
}

enum Outcome {
    Pass(Value),
    Finding(Value),
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Diagnostic> {
    let text = fs::read_to_string(path)
        .map_err(|e| Diagnostic::new("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Diagnostic::new("parse", format!("{}: {e}", path.display())))
}

fn read_complex(path: &Path) -> Result<Z2Complex, Diagnostic> {
    Ok(read_json::<ComplexFile>(path)?.into_complex()?)
}

fn read_matroid(path: &Path, complete: bool) -> Result<OrientedMatroid, Diagnostic> {
    Ok(read_json::<MatroidFile>(path)?.into_matroid(complete)?)
}

fn read_source(source: &MatroidSource, complete: bool) -> Result<OrientedMatroid, Diagnostic> {
    match (&source.matroid, &source.matrix) {
        (Some(p), _) => read_matroid(p, complete),
        (None, Some(p)) => Ok(OrientedMatroid::from_matrix(&read_json::<MatrixFile>(p)?.to_matrix()?)?),
        (None, None) => Err(Diagnostic::new("usage", "one of --matroid or --matrix is required")),
    }
}

fn value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn verdict(v: impl Serialize, pass: bool) -> Outcome {
    if pass {
        Outcome::Pass(value(v))
    } else {
        Outcome::Finding(value(v))
    }
}

fn run(cli: &Cli) -> Result<Outcome, Diagnostic> {
    let complete = cli.complete_negations;
    match &cli.command {
        Command::Verify { complex, labels, source } => {
            let k = read_complex(complex)?;
            let lambda: Labelling = read_json(labels)?;
            let om = read_source(source, complete)?;
            let report = parity_check(&k, &lambda, &om)?;
            let pass = report.pass;
            Ok(verdict(report, pass))
        }
        Command::Kyfan { complex, labels, m } => {
            let k = read_complex(complex)?;
            let lambda: Labelling = read_json(labels)?;
            let report = kyfan_classical(&k, &lambda, *m)?;
            let pass = report.report.pass;
            Ok(verdict(report, pass))
        }
        Command::Om(cmd) => run_om(cmd, complete),
        Command::Gen(cmd) => run_gen(cmd),
        Command::Cochain { cochain: Some(path), m: Some(m), .. } => {
            let cochain: GF2Cochain = read_json(path)?;
            let record = verify_cochain(*m, &cochain)?;
            Ok(verdict(json!({ "cochain": cochain, "check": record }), record.pass))
        }
        Command::Cochain { matroid, check, .. } => {
            let path = matroid.as_ref().ok_or_else(|| Diagnostic::new("usage", "a matroid file is required"))?;
            let om = read_matroid(path, complete)?;
            let cochain = build_cochain_representative(&om)?;
            if !check {
                return Ok(Outcome::Pass(json!({ "cochain": cochain })));
            }
            let record = verify_representative(&om)?;
            Ok(verdict(json!({ "cochain": cochain, "check": record }), record.pass))
        }
        Command::Fuzz { trials, seed, n_range, m_range } => {
            let report = fuzz_campaign(&FuzzConfig { trials: *trials, n_range: *n_range, m_range: *m_range, seed: *seed });
            let pass = report.pass;
            if !pass {
                eprintln!("{}", json!({ "findings": report.failures }));
            }
            Ok(verdict(report, pass))
        }
    }
}

fn run_om(cmd: &OmCommand, complete: bool) -> Result<Outcome, Diagnostic> {
    Ok(Outcome::Pass(match cmd {
        OmCommand::FromMatrix { matrix } => {
            let a = read_json::<MatrixFile>(matrix)?.to_matrix()?;
            value(OrientedMatroid::from_matrix(&a)?.to_file())
        }
        OmCommand::Dual { source } => match (&source.matroid, &source.matrix) {
            (None, Some(p)) => {
                let a = read_json::<MatrixFile>(p)?.to_matrix()?;
                value(chirotope_from_matrix(&a)?.dual().cocircuits().to_file())
            }
            _ => value(read_source(source, complete)?.dual()?.to_file()),
        },
        OmCommand::CheckAxioms { matroid } => {
            let file: MatroidFile = read_json(matroid)?;
            let mut vectors = file.cocircuits.clone();
            if complete {
                vectors.extend(file.cocircuits.iter().map(|v| v.negate()));
            }
            let verdict = axiom_verdict(&vectors);
            if let Some(v) = &verdict.violation {
                return Err(Diagnostic::new("axioms", v).witness(v));
            }
            value(verdict)
        }
        OmCommand::Alternating { m, n } => value(alternating_dual(*m, *n)?.to_file()),
    }))
}

fn run_gen(cmd: &GenCommand) -> Result<Outcome, Diagnostic> {
    let k = match cmd {
        GenCommand::Crosspolytope { k } => crosspolytope_boundary(*k)?,
        GenCommand::Subdivide { complex, times } => {
            let mut k = read_complex(complex)?;
            for _ in 0..*times {
                k = barycentric_subdivide(&k)?;
            }
            k
        }
        GenCommand::Torus { n } => torus_fixture(*n)?,
        GenCommand::Labelling { complex, m, seed } => {
            let k = read_complex(complex)?;
            k.validate().map_err(ComplexError::Invalid)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let lambda = rotated_argmax_labelling(&k, *m, &mut rng, ROTATION_ATTEMPTS)?;
            return Ok(Outcome::Pass(value(lambda)));
        }
    };
    Ok(Outcome::Pass(value(k.to_file())))
}

fn emit(cli: &Cli, v: &Value) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("json values print") + "\n";
    match &cli.output {
        Some(path) => fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (v, code) = match run(&cli) {
        Ok(Outcome::Pass(v)) => (v, 0),
        Ok(Outcome::Finding(v)) => (v, 1),
        Err(d) => {
            eprintln!("{}", serde_json::to_string(&d).expect("diagnostics serialize"));
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &v) {
        eprintln!("{}", json!({ "error": "io", "message": e.to_string() }));
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
