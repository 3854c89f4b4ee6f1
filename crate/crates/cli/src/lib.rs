//! `sgq`: JSON-in, JSON-out front end to `sgq-core`.
//!
//! Exit status 0 on success, 1 on a domain error (an error document is
//! written to the output), 2 on malformed input or arguments (a diagnostic
//! goes to stderr).

pub mod harness;

use std::fs;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sgq_core::flag_quotient::{cosets_equal, normal_form};
use sgq_core::grassmannian::{chart_down, chart_up, orbit_map};
use sgq_core::json::{self, MatrixDoc, NCoordinatesDoc, PointDoc, PresentationDoc, RationalPointDoc, RingCache};
use sgq_core::smoothness::is_smooth_at;
use sgq_core::{BlockProfile, Error};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    Ber,
    Minv,
    Factor,
    CosetEq,
    Orbit,
    ChartUp,
    ChartDown,
    Smooth,
    Proptest,
}

#[derive(Debug, Parser)]
#[command(name = "sgq", version, about = "Exact supermatrix, flag-quotient and smoothness computations")]
pub struct Args {
    pub command: CommandName,
    /// Input document.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Second input: the other matrix for coset-eq, the point for smooth.
    #[arg(long = "in2")]
    pub input2: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Block profile `m,n,r,s`.
    #[arg(long, value_parser = parse_profile)]
    pub profile: Option<BlockProfile>,
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Size bounds `m,n,r,s,q` for generated inputs.
    #[arg(long, value_parser = parse_size, default_value = "2,2,1,1,4")]
    pub size: harness::Size,
    /// Bound on numerators and denominators of generated coefficients.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(i64).range(1..))]
    pub coeff: i64,
}

fn parse_numbers<const N: usize>(text: &str) -> Result<[usize; N], String> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|v: Vec<usize>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

fn parse_profile(text: &str) -> Result<BlockProfile, String> {
    let [m, n, r, s] = parse_numbers::<4>(text)?;
    BlockProfile::new(m, n, r, s).map_err(|e| e.to_string())
}

fn parse_size(text: &str) -> Result<harness::Size, String> {
    let [m, n, r, s, q] = parse_numbers::<5>(text)?;
    let profile = BlockProfile::new(m, n, r, s).map_err(|e| e.to_string())?;
    if q > sgq_core::superalgebra::MAX_ODD_VARS {
        return Err(format!("q = {q} exceeds {}", sgq_core::superalgebra::MAX_ODD_VARS));
    }
    Ok(harness::Size { profile, q })
}

/// Failure of a command before a result document exists.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2.
    Malformed(String),
    /// Exit 1, with an error document.
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(msg) => Failure::Malformed(msg),
            other => Failure::Domain(other),
        }
    }
}

/// Result document and exit status of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub status: i32,
    pub document: Option<String>,
    pub diagnostic: Option<String>,
}

fn read_doc<T: serde::de::DeserializeOwned>(path: Option<&PathBuf>, flag: &str) -> Result<T, Failure> {
    let path = path.ok_or_else(|| Failure::Malformed(format!("missing --{flag}")))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::Malformed(format!("{}: {e}", path.display())))?;
    json::from_str(&text).map_err(|e| match e {
        Error::Malformed(msg) => Failure::Malformed(format!("{}: {msg}", path.display())),
        other => Failure::Domain(other),
    })
}

fn need_profile(args: &Args) -> Result<BlockProfile, Failure> {
    let name = args.command.to_possible_value().expect("no skipped variants");
    args.profile.ok_or_else(|| Failure::Malformed(format!("{} needs --profile m,n,r,s", name.get_name())))
}

fn render<T: Serialize>(value: &T) -> String {
    json::to_string(value)
}

/// Runs one command and returns its document; `Ok(false)` status for a
/// property suite with failures.
fn execute(args: &Args) -> Result<(String, bool), Failure> {
    let mut cache = RingCache::default();
    let input = args.input.as_ref();
    let doc = match args.command {
        CommandName::Ber => {
            let m = json::decode_matrix(&read_doc::<MatrixDoc>(input, "in")?, &mut cache)?;
            render(&json!({ "berezinian": json::encode_element(&m.berezinian()?) }))
        }
        CommandName::Minv => {
            let m = json::decode_matrix(&read_doc::<MatrixDoc>(input, "in")?, &mut cache)?;
            render(&json!({ "inverse": json::encode_matrix(&m.inverse()?) }))
        }
        CommandName::Factor => {
            let bp = need_profile(args)?;
            let g = json::decode_matrix(&read_doc::<MatrixDoc>(input, "in")?, &mut cache)?;
            let (n, p) = normal_form(&g, &bp)?;
            render(&json!({
                "profile": bp,
                "n": json::encode_ncoordinates(&n),
                "p": json::encode_matrix(&p),
            }))
        }
        CommandName::CosetEq => {
            let bp = need_profile(args)?;
            let g1 = json::decode_matrix(&read_doc::<MatrixDoc>(input, "in")?, &mut cache)?;
            let g2 = json::decode_matrix(&read_doc::<MatrixDoc>(args.input2.as_ref(), "in2")?, &mut cache)?;
            render(&json!({ "equal": cosets_equal(&g1, &g2, &bp)? }))
        }
        CommandName::Orbit => {
            let bp = need_profile(args)?;
            let g = json::decode_matrix(&read_doc::<MatrixDoc>(input, "in")?, &mut cache)?;
            render(&json!({ "point": json::encode_point(&orbit_map(&g, &bp)?) }))
        }
        CommandName::ChartUp => {
            let bp = need_profile(args)?;
            let n = json::decode_ncoordinates(&read_doc::<NCoordinatesDoc>(input, "in")?, bp, &mut cache)?;
            render(&json!({ "point": json::encode_point(&chart_up(&n)?) }))
        }
        CommandName::ChartDown => {
            let doc = read_doc::<PointDoc>(input, "in")?;
            if let Some(bp) = args.profile {
                if bp != doc.profile {
                    return Err(Failure::Malformed(format!(
                        "--profile {bp} disagrees with the point's profile {}",
                        doc.profile
                    )));
                }
            }
            let point = json::decode_point(&doc, &mut cache)?;
            render(&json!({ "profile": doc.profile, "n": json::encode_ncoordinates(&chart_down(&point)?) }))
        }
        CommandName::Smooth => {
            let pres = json::decode_presentation(&read_doc::<PresentationDoc>(input, "in")?, &mut cache)?;
            let pt = json::decode_rational_point(&read_doc::<RationalPointDoc>(args.input2.as_ref(), "in2")?)?;
            render(&json::encode_verdict(&is_smooth_at(&pres, &pt)?))
        }
        CommandName::Proptest => {
            let settings = harness::Settings { trials: args.trials, seed: args.seed, size: args.size, coeff: args.coeff };
            let report = harness::run_suite(&args.suite, &settings)?;
            let ok = report.passed;
            return Ok((render(&report), ok));
        }
    };
    Ok((doc, true))
}

pub fn run(args: &Args) -> Outcome {
    match execute(args) {
        Ok((document, ok)) => Outcome { status: if ok { 0 } else { 1 }, document: Some(document), diagnostic: None },
        Err(Failure::Malformed(msg)) => Outcome { status: 2, document: None, diagnostic: Some(msg) },
        Err(Failure::Domain(e)) => Outcome {
            status: 1,
            document: Some(render(&json!({ "error": { "kind": e.kind(), "detail": e.to_string() } }))),
            diagnostic: Some(e.to_string()),
        },
    }
}

/// Parses `argv`, runs, and writes the document. Returns the exit status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = run(&args);
    if let Some(doc) = &outcome.document {
        let written = match &args.out {
            Some(path) => fs::write(path, doc).map_err(|e| format!("{}: {e}", path.display())),
            None => {
                print!("{doc}");
                Ok(())
            }
        };
        if let Err(msg) = written {
            eprintln!("sgq: {msg}");
            return 2;
        }
    }
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("sgq: {msg}");
    }
    outcome.status
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_parsing() {
        assert_eq!(parse_profile("2,2,1,1").unwrap(), BlockProfile::new(2, 2, 1, 1).unwrap());
        assert!(parse_profile("2,2,3,1").is_err());
        assert!(parse_profile("2,2,1").is_err());
        assert!(parse_profile("2,x,1,1").is_err());
        assert_eq!(parse_size("1,1,1,0,4").unwrap().q, 4);
        assert!(parse_size("1,1,1,0,65").is_err());
    }

    #[test]
    fn missing_input_is_malformed() {
        let args = Args::try_parse_from(["sgq", "ber"]).unwrap();
        let outcome = run(&args);
        assert_eq!(outcome.status, 2);
        assert!(outcome.document.is_none());
    }
}
