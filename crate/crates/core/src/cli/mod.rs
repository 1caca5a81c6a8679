//! Command-line front end. [`run_with`] parses arguments, runs one pipeline
//! and writes JSON or CSV; the binary is a thin wrapper around it.

pub mod parse;
pub mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classifier::{classify, predicted_profile, verify, ClassifierError, VerifyOptions};
use crate::coding::{cutting_word, CodingError, Point, SymbolicWord};
use crate::geometry::{count_diagonals, DiagonalCount, GeometryError};
use crate::numfield::AlgebraicNumber;
use crate::wordlab::{complexity_profile, growth_fit, period_detect, ComplexityProfile, WordlabError};

pub use parse::{parse_any_direction, parse_direction, parse_point, AnyDirection, ExprError, ParseError};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "cubeword", version, about = "Cutting-sequence words of cube billiards and their complexity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// word prefix length
    #[arg(long, default_value_t = 1_000_000)]
    pub length: usize,
    /// largest factor length
    #[arg(long, default_value_t = 100)]
    pub nmax: usize,
    /// start point, e.g. "(1/7, 1/11, 1/13)"
    #[arg(long)]
    pub start: Option<String>,
    /// output file (written atomically); stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// start points sampled for non-minimal directions
    #[arg(long = "seed-points", default_value_t = 1)]
    pub seed_points: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Case, relations and predicted complexity law of a direction
    Classify {
        direction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Letters of the cutting sequence and its detected period
    Word {
        direction: String,
        #[command(flatten)]
        common: Common,
    },
    /// p(n), s(n), d2(n) of a prefix
    Profile {
        direction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Diagonal counts N(n) for n in 1..=nmax
    Diagonals {
        direction: String,
        #[command(flatten)]
        common: Common,
    },
    /// Measured complexity against the prediction for the direction's case
    Verify {
        direction: String,
        /// second direction expected to share the complexity function
        #[arg(long)]
        partner: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// The full acceptance battery
    Suite {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Classifier(#[from] ClassifierError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<CodingError> for CliError {
    fn from(e: CodingError) -> Self {
        Self::Classifier(e.into())
    }
}

impl From<WordlabError> for CliError {
    fn from(e: WordlabError) -> Self {
        Self::Classifier(e.into())
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        Self::Classifier(e.into())
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            Self::Expr(_) => EXIT_PARSE,
            Self::Classifier(ClassifierError::Coding(CodingError::SingularOrbit { .. }))
            | Self::Classifier(ClassifierError::Geometry(GeometryError::Coding(CodingError::SingularOrbit {
                ..
            }))) => EXIT_SINGULAR,
            _ => EXIT_OTHER,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Self::Expr(ExprError::Parse(_)) => "parse",
            Self::Expr(ExprError::NonPositiveCoordinate { .. }) => "non_positive_coordinate",
            Self::Expr(ExprError::FieldMismatch(_)) => "field_mismatch",
            Self::Expr(_) => "expression",
            Self::Classifier(ClassifierError::Coding(CodingError::SingularOrbit { .. })) => "singular_orbit",
            Self::Classifier(ClassifierError::Geometry(GeometryError::NotMinimal(_))) => "not_minimal",
            Self::Classifier(_) => "computation",
            Self::Usage(_) => "usage",
            Self::Io(_) => "io",
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "error": { "kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() },
        });
        if let Self::Expr(ExprError::Parse(p)) = self {
            v["error"]["position"] = json!(p.position);
            v["error"]["expected"] = json!(p.expected);
            v["error"]["found"] = json!(p.found);
        }
        v
    }
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let name = path.file_name().ok_or_else(|| std::io::Error::other("output path has no file name"))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let mut file = std::fs::File::create(&tmp)?;
    file.write_all(contents)?;
    file.sync_all()?;
    drop(file);
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

struct Output {
    body: String,
    warnings: Vec<String>,
    exit: i32,
}

impl Output {
    fn ok(body: String) -> Self {
        Self { body, warnings: Vec::new(), exit: EXIT_OK }
    }
}

fn envelope<T: Serialize>(command: &str, input: Value, result: &T, warnings: &[String]) -> String {
    let v = json!({
        "schema": SCHEMA,
        "command": command,
        "input": input,
        "warnings": warnings,
        "result": result,
    });
    let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
    s.push('\n');
    s
}

fn start_point<const D: usize>(common: &Common, like: &AlgebraicNumber) -> Result<Point<AlgebraicNumber, D>, CliError> {
    match &common.start {
        Some(text) => Ok(parse_point::<D>(text, like.field())?),
        None => Ok(Point::default_for(like)),
    }
}

fn generate(direction: &AnyDirection, common: &Common) -> Result<SymbolicWord, CliError> {
    Ok(match direction {
        AnyDirection::Two(d) => cutting_word(d, &start_point::<2>(common, d.get(0))?, common.length)?,
        AnyDirection::Three(d) => cutting_word(d, &start_point::<3>(common, d.get(0))?, common.length)?,
    })
}

fn input_json(direction: &str, common: &Common) -> Value {
    json!({
        "direction": direction,
        "length": common.length,
        "nmax": common.nmax,
        "start": common.start,
        "seed_points": common.seed_points,
    })
}

fn run_classify(direction: &str, common: &Common) -> Result<Output, CliError> {
    let w = parse_direction(direction)?;
    let c = classify(&w)?;
    let prediction = predicted_profile(&c, common.nmax as u64);
    let body = match common.format {
        Format::Json => {
            let result = json!({ "classification": c, "prediction_at_nmax": prediction });
            envelope("classify", input_json(direction, common), &result, &[])
        }
        Format::Csv => {
            let c_pred = c.c_pred.as_ref().map(|x| x.to_decimal(30)).unwrap_or_default();
            let l = c.l_frequency.as_ref().map(|x| x.to_decimal(30)).unwrap_or_default();
            let predicted = serde_json::to_value(c.predicted).expect("law serializes");
            format!(
                "case_tag,predicted,c_pred,l_frequency\n{},{},{c_pred},{l}\n",
                c.case_tag,
                predicted.as_str().unwrap_or_default()
            )
        }
    };
    Ok(Output::ok(body))
}

/// Letters per closed orbit when every coordinate is rational: the
/// coordinate sum of the primitive integer vector along the direction.
fn orbit_period(coords: &[AlgebraicNumber]) -> Option<BigInt> {
    let qs: Vec<crate::Rational> = coords.iter().map(|c| c.as_rational()).collect::<Option<_>>()?;
    let lcm = qs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<BigInt> = qs.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    Some(ints.iter().map(|x| x / &g).sum())
}

fn run_word(direction: &str, common: &Common) -> Result<Output, CliError> {
    let d = parse_any_direction(direction)?;
    let word = generate(&d, common)?;
    let periodicity = period_detect(&word.letters);
    let orbit = match &d {
        AnyDirection::Two(d) => orbit_period(d.coords()),
        AnyDirection::Three(d) => orbit_period(d.coords()),
    };
    let body = match common.format {
        Format::Json => {
            let result = json!({
                "alphabet": word.alphabet,
                "direction": word.direction,
                "start": word.start,
                "length": word.len(),
                "letters": word.as_string(),
                "periodicity": periodicity,
                "orbit_period": orbit.map(|p| p.to_string()),
            });
            envelope("word", input_json(direction, common), &result, &[])
        }
        Format::Csv => format!("letters\n{}\n", word.as_string()),
    };
    Ok(Output::ok(body))
}

/// Profile at `nmax + 2`, shrunk to the stable range with a warning.
fn stable_profile(word: &SymbolicWord, nmax: usize, warnings: &mut Vec<String>) -> Result<ComplexityProfile, CliError> {
    if nmax == 0 {
        return Err(CliError::Usage("--nmax must be at least 1".into()));
    }
    let cap = (nmax + 2).min(word.len().saturating_sub(1));
    let full = complexity_profile(word, cap)?;
    let stable = full.stable_up_to;
    if stable < nmax {
        warnings.push(format!("nmax reduced from {nmax} to stable_up_to = {stable}"));
    }
    Ok(full.truncated(nmax.min(stable).max(1)))
}

fn run_profile(direction: &str, common: &Common) -> Result<Output, CliError> {
    let d = parse_any_direction(direction)?;
    let word = generate(&d, common)?;
    let mut warnings = Vec::new();
    let profile = stable_profile(&word, common.nmax, &mut warnings)?;
    let growth = growth_fit(&profile).map_err(|e| e.to_string());
    let body = match common.format {
        Format::Json => {
            let result = json!({
                "profile": profile,
                "growth": growth.as_ref().ok(),
                "growth_error": growth.as_ref().err(),
                "certificate": "stable_up_to: largest n with p(1..=n) equal on the half and the full prefix (heuristic)",
            });
            envelope("profile", input_json(direction, common), &result, &warnings)
        }
        Format::Csv => profile.to_csv(),
    };
    Ok(Output { body, warnings, exit: EXIT_OK })
}

fn run_diagonals(direction: &str, common: &Common) -> Result<Output, CliError> {
    let w = parse_direction(direction)?;
    let counts: Vec<DiagonalCount> =
        (1..=common.nmax as u64).into_par_iter().map(|n| count_diagonals(&w, n)).collect::<Result<_, _>>()?;
    let body = match common.format {
        Format::Json => envelope("diagonals", input_json(direction, common), &counts, &[]),
        Format::Csv => {
            let mut s = String::from("n,count,simple_count\n");
            for c in &counts {
                s.push_str(&format!("{},{},{}\n", c.n, c.count, c.simple_count));
            }
            s
        }
    };
    Ok(Output::ok(body))
}

fn csv_from_counts(p: &[u64], stable: usize) -> String {
    let mut out = String::from("n,p,s,d2,stable\n");
    for n in 1..p.len() {
        let s = p.get(n + 1).map(|&b| (b as i64 - p[n] as i64).to_string()).unwrap_or_default();
        let d2 = p.get(n + 2).map(|&c| (c as i64 - 2 * p[n + 1] as i64 + p[n] as i64).to_string()).unwrap_or_default();
        out.push_str(&format!("{n},{},{s},{d2},{}\n", p[n], n <= stable));
    }
    out
}

fn run_verify(direction: &str, partner: Option<&str>, common: &Common) -> Result<Output, CliError> {
    let w = parse_direction(direction)?;
    let start = common.start.as_ref().map(|_| start_point::<3>(common, w.get(0))).transpose()?;
    let partner_text = partner;
    let partner = partner.map(parse_direction).transpose()?;
    let options =
        VerifyOptions { length: common.length, n_max: common.nmax, start, seed_points: common.seed_points, partner };
    let report = verify(&w, &options)?;
    let body = match common.format {
        Format::Json => {
            let mut input = input_json(direction, common);
            input["partner"] = json!(partner_text);
            envelope("verify", input, &report, &report.warnings)
        }
        Format::Csv => csv_from_counts(&report.p, report.stable_up_to),
    };
    let exit = if report.passed { EXIT_OK } else { EXIT_VERIFY };
    Ok(Output { body, warnings: report.warnings.clone(), exit })
}

fn run_suite(common: &Common, stderr: &mut dyn Write) -> Result<Output, CliError> {
    let results = suite::run_suite(&mut |r| {
        let _ = writeln!(stderr, "{}", r.line());
    });
    let passed = results.iter().all(|r| r.passed);
    let body = match common.format {
        Format::Json => envelope("suite", json!({}), &results, &[]),
        Format::Csv => {
            let mut s = String::from("criterion,name,passed\n");
            for r in &results {
                s.push_str(&format!("{},{},{}\n", r.id, r.name, r.passed));
            }
            s
        }
    };
    Ok(Output { body, warnings: Vec::new(), exit: if passed { EXIT_OK } else { EXIT_VERIFY } })
}

fn dispatch(cli: &Cli, stderr: &mut dyn Write) -> Result<(Output, Option<PathBuf>), CliError> {
    let (out, common) = match &cli.command {
        Command::Classify { direction, common } => (run_classify(direction, common)?, common),
        Command::Word { direction, common } => (run_word(direction, common)?, common),
        Command::Profile { direction, common } => (run_profile(direction, common)?, common),
        Command::Diagonals { direction, common } => (run_diagonals(direction, common)?, common),
        Command::Verify { direction, partner, common } => (run_verify(direction, partner.as_deref(), common)?, common),
        Command::Suite { common } => (run_suite(common, stderr)?, common),
    };
    Ok((out, common.out.clone()))
}

/// Runs the command line `args` (including the program name) and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let _ = if code == EXIT_OK { write!(stdout, "{}", e.render()) } else { write!(stderr, "{}", e.render()) };
            return code;
        }
    };
    let result = dispatch(&cli, stderr).and_then(|(out, path)| {
        for w in &out.warnings {
            let _ = writeln!(stderr, "warning: {w}");
        }
        match path {
            Some(path) => write_atomic(&path, out.body.as_bytes())?,
            None => stdout.write_all(out.body.as_bytes())?,
        }
        Ok(out.exit)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&e.to_json()).expect("error serializes"));
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
