//! `precu <verb> <file> [target] [--budget N] [--json out] [--parallel]`
//!
//! Verbs: check, classify, complete, hereditary, morphism, limit, commute,
//! counterexample and model run one kind of command; `run` executes the
//! file's `[run]` block; `replay` re-runs a saved JSON report and compares
//! it byte for byte.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use precu_core::commands::{
    exit_code, json_string, render_json, render_text, replay, run_commands, RunOptions, EXIT_CONFIG, EXIT_FAILED,
    EXIT_OK,
};
use precu_core::spec_file::{check_target, parse_spec, Command, Expect, SpecDocument, TargetKind, Verb};
use precu_core::Error;

#[derive(Parser)]
#[command(name = "precu", version, about = "Decide order, way-below and suprema in PreCu, 𝒞 and Cu monoids")]
struct Cli {
    /// check | classify | complete | hereditary | morphism | limit | commute | counterexample | model | run | replay
    verb: String,
    /// A monoid-spec file, or a saved JSON report for `replay`.
    file: PathBuf,
    /// Declared object to act on; every matching object when omitted.
    target: Option<String>,
    /// Budget for every command, overriding the file's own.
    #[arg(long)]
    budget: Option<u64>,
    /// Write the structured report here (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run independent commands in parallel; output order is unchanged.
    #[arg(long)]
    parallel: bool,
}

fn fail(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("precu: {message}");
    ExitCode::from(EXIT_CONFIG as u8)
}

fn commands_for(doc: &SpecDocument, verb: Verb, target: Option<String>) -> Result<Vec<Command>, Error> {
    let make = |target: Option<String>| Command {
        verb,
        target,
        budget: None,
        depth: None,
        expect: Expect::Pass,
    };
    if let Some(t) = target {
        let c = make(Some(t));
        check_target(doc, &c)?;
        return Ok(vec![c]);
    }
    let listed: Vec<Command> = doc.commands.iter().filter(|c| c.verb == verb).cloned().collect();
    if !listed.is_empty() {
        return Ok(listed);
    }
    Ok(match verb.target_kind() {
        TargetKind::None => vec![make(None)],
        kind => doc.targets(kind).into_iter().map(|t| make(Some(t))).collect(),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.budget == Some(0) {
        return fail(Error::InvalidBudget);
    }
    let text = match fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => return fail(Error::Io(format!("{}: {e}", cli.file.display()))),
    };
    if cli.verb == "replay" {
        return match replay(&text) {
            Ok(r) if r.identical() => {
                println!("replay: identical ({} bytes)", r.original.len());
                ExitCode::from(EXIT_OK as u8)
            }
            Ok(r) => {
                let at = r.original.bytes().zip(r.reproduced.bytes()).position(|(a, b)| a != b);
                println!("replay: differs at byte {}", at.unwrap_or(r.original.len().min(r.reproduced.len())));
                ExitCode::from(EXIT_FAILED as u8)
            }
            Err(e) => fail(e),
        };
    }
    let doc = match parse_spec(&text) {
        Ok(d) => d,
        Err(errs) => {
            for e in &errs {
                eprintln!("precu: {}: {e}", cli.file.display());
            }
            return ExitCode::from(EXIT_CONFIG as u8);
        }
    };
    let commands = if cli.verb == "run" {
        if doc.commands.is_empty() {
            return fail("the document has no [run] commands");
        }
        doc.commands.clone()
    } else {
        let Some(verb) = Verb::parse(&cli.verb) else {
            return fail(Error::UnknownCommand(cli.verb.clone()));
        };
        match commands_for(&doc, verb, cli.target.clone()) {
            Ok(c) if c.is_empty() => return fail(format!("nothing in the document for `{}`", cli.verb)),
            Ok(c) => c,
            Err(e) => return fail(e),
        }
    };
    let opts = RunOptions {
        budget: cli.budget,
        parallel: cli.parallel,
    };
    let outcomes = run_commands(&doc, &commands, opts);
    print!("{}", render_text(&outcomes));
    if let Some(path) = &cli.json {
        let out = json_string(&render_json(&doc, &outcomes, opts));
        if path.as_os_str() == "-" {
            print!("{out}");
        } else if let Err(e) = fs::write(path, out) {
            return fail(Error::Io(format!("{}: {e}", path.display())));
        }
    }
    ExitCode::from(exit_code(&outcomes) as u8)
}
