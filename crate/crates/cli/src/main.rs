mod document;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use clusterkit_core::{Error, ErrorKind};
use serde_json::{json, Value};

use document::ParseError;
use run::{Command, Failure, Options};

/// Clusters, decompositions and induced modules for modules of restricted
/// Lie algebras over finite fields.
#[derive(Parser, Debug)]
#[command(name = "clusterkit", version)]
struct Cli {
    command: Command,
    /// JSON problem document.
    input: PathBuf,
    /// Subalgebra for `decompose` (overrides the tasks' `wrt`).
    #[arg(long)]
    wrt: Option<String>,
    /// Cobasis value `alpha + beta t` for `induce` (overrides the tasks).
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    beta: Option<i64>,
    /// Print the machine-readable report instead of the text one.
    #[arg(long)]
    json: bool,
    /// Degree of the splitting field over the base field.
    #[arg(long)]
    splitting_degree: Option<usize>,
    /// Largest number of vectors the oracle may enumerate.
    #[arg(long)]
    oracle_bound: Option<u64>,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Input => 2,
        ErrorKind::Validation => 3,
        ErrorKind::Precondition => 4,
        ErrorKind::Invariant => 5,
    }
}

fn kind_name(code: u8) -> &'static str {
    match code {
        2 => "parse",
        3 => "validation",
        4 => "precondition",
        _ => "invariant",
    }
}

fn fail(code: u8, message: String, extra: Value) -> ExitCode {
    let mut err = json!({ "kind": kind_name(code), "exit_code": code, "message": message });
    if let (Value::Object(obj), Value::Object(more)) = (&mut err, extra) {
        obj.extend(more);
    }
    eprintln!("{}", json!({ "error": err }));
    ExitCode::from(code)
}

fn core_failure(e: &Error) -> ExitCode {
    fail(exit_code(e.kind()), e.to_string(), json!({}))
}

fn print_report(report: &run::Report, as_json: bool) {
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
    } else {
        print!("{}", report.text);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let text = match std::fs::read_to_string(&cli.input) {
        Ok(t) => t,
        Err(e) => return fail(2, format!("cannot read {}: {e}", cli.input.display()), json!({})),
    };
    let doc = match document::parse(&text) {
        Ok(doc) => doc,
        Err(ParseError::Syntax { message, line, column }) => {
            return fail(2, message, json!({ "line": line, "column": column }))
        }
        Err(ParseError::Semantic(e)) => return core_failure(&e),
    };
    let opts = Options {
        wrt: cli.wrt,
        alpha: cli.alpha,
        beta: cli.beta,
        splitting_degree: cli.splitting_degree,
        oracle_bound: cli.oracle_bound,
    };
    match run::run(&doc, cli.command, &opts) {
        Ok(report) => {
            print_report(&report, cli.json);
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) => core_failure(&e),
        Err(Failure::Violations(message, details)) => fail(3, message, json!({ "violations": details })),
        Err(Failure::Disagreement(report)) => {
            print_report(&report, cli.json);
            fail(5, "fast and brute-force computations disagree".into(), json!({}))
        }
    }
}
