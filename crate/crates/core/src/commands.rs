//! Dispatch of `[run]` commands to the checks, exit codes, and the text and
//! JSON renderings of their reports.
//!
//! The JSON document embeds the source text and the command lines, so a
//! saved report can be replayed and compared byte for byte.

use rayon::prelude::*;
use serde_json::{json, Value as Json};

use crate::completion::{hereditary_iota, verify_completion};
use crate::error::{Error, Result};
use crate::finite::FiniteMonoid;
use crate::lab::{build_completion_bruteforce, verify_completion_def};
use crate::limits::{check_limit_completion_commutes, counterexample_suite, limit_fixtures};
use crate::models::{almost_unperforated, verify_model_completion};
use crate::order::{
    check_c_membership, check_order_axioms, check_precu_membership, classify, is_precu_morphism, Chain, Entry,
    Probe, Report, Status,
};
use crate::spec_file::{parse_command, parse_spec, Command, Expect, SpecDocument, Verb, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    /// Overrides every command's own budget.
    pub budget: Option<u64>,
    pub parallel: bool,
}

#[derive(Debug)]
pub struct Outcome {
    pub command: Command,
    pub result: Result<Report>,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        match &self.result {
            Err(_) => EXIT_CONFIG,
            Ok(r) => match (r.status(), self.command.expect) {
                (Status::Pass, Expect::Pass) | (Status::Fail, Expect::Fail) | (Status::Unknown, Expect::Unknown) => EXIT_OK,
                (Status::Unknown, _) => EXIT_UNKNOWN,
                _ => EXIT_FAILED,
            },
        }
    }
}

/// Config errors dominate, then failed checks, then unexpected Unknowns.
pub fn exit_code(outcomes: &[Outcome]) -> i32 {
    let codes: Vec<i32> = outcomes.iter().map(Outcome::code).collect();
    [EXIT_CONFIG, EXIT_FAILED, EXIT_UNKNOWN]
        .into_iter()
        .find(|c| codes.contains(c))
        .unwrap_or(EXIT_OK)
}

fn target<'a>(cmd: &'a Command) -> Result<&'a str> {
    cmd.target.as_deref().ok_or_else(|| Error::Validation {
        object: cmd.verb.name().to_string(),
        reason: "missing target".into(),
    })
}

/// Runs one command against the document.
pub fn run_command(doc: &SpecDocument, cmd: &Command, budget: Option<u64>) -> Result<Report> {
    let b = budget.or(cmd.budget).unwrap_or(DEFAULT_BUDGET);
    match cmd.verb {
        Verb::Check => {
            let m = doc.monoid(target(cmd)?)?;
            let sample = m.handle.samples();
            let axioms = check_order_axioms(m.handle.as_ref(), &sample, b)?;
            let precu = check_precu_membership(&m.handle, &sample, b)?;
            let mut r = Report::new(format!("check of {}", m.name));
            r.exhaustive = axioms.exhaustive && precu.exhaustive;
            r.extend(axioms);
            r.extend(precu);
            Ok(r)
        }
        Verb::Classify => classify(&doc.monoid(target(cmd)?)?.handle, b),
        Verb::Complete => {
            let m = doc.monoid(target(cmd)?)?;
            match &m.finite {
                Some(fm) => complete_finite(&m.name, fm),
                None => verify_completion(&m.handle, b),
            }
        }
        Verb::Hereditary => {
            let m = doc.monoid(target(cmd)?)?;
            let h = m.handle.as_ref();
            let bounded: Vec<Probe> = h.probes().into_iter().filter(|p| p.bound.is_some()).collect();
            let her = hereditary_iota(&m.handle, b)?;
            let c = check_c_membership(h, &bounded, b)?;
            let (hs, cs) = (her.status(), c.status());
            let agree = match (hs, cs) {
                (Status::Unknown, _) | (_, Status::Unknown) => Status::Unknown,
                _ if hs == cs => Status::Pass,
                _ => Status::Fail,
            };
            let mut r = Report::new(format!("hereditary ι against 𝒞 membership for {}", m.name));
            r.exhaustive = her.exhaustive;
            r.push(
                Entry::new("ι hereditary ⇔ 𝒞", "hereditary.iff-c", agree)
                    .detail(format!("hereditary: {}, 𝒞: {}", hs.label(), cs.label())),
            );
            r.extend(her);
            r.extend(c);
            Ok(r)
        }
        Verb::Morphism => {
            let f = &doc.map(target(cmd)?)?.map;
            let sample = f.dom.samples();
            let chains: Vec<Chain> = f.dom.probes().into_iter().map(|p| p.chain).collect();
            is_precu_morphism(f, &sample, &chains, b)
        }
        Verb::Limit => limit_fixtures(&doc.system(target(cmd)?)?.system, cmd.depth.unwrap_or(8)),
        Verb::Commute => check_limit_completion_commutes(&doc.system(target(cmd)?)?.system, b),
        Verb::Counterexample => counterexample_suite(cmd.depth.unwrap_or(64)),
        Verb::Model => {
            let m = &doc.model(target(cmd)?)?.model;
            let mut r = verify_model_completion(m, b)?;
            let sample = m.handle().samples();
            r.extend(almost_unperforated(m, &sample, 4));
            Ok(r)
        }
    }
}

/// The exhaustive ideal completion of a finite table, its listing and the
/// isomorphism `ι: M → M̄`.
fn complete_finite(name: &str, m: &FiniteMonoid) -> Result<Report> {
    let bc = build_completion_bruteforce(m)?;
    let mut r = Report::new(format!("completion of {name}"));
    r.exhaustive = true;
    let listing: Vec<String> = bc
        .ideals
        .iter()
        .map(|ideal| {
            let names: Vec<&str> = ideal.iter().map(|&i| m.names()[i].as_str()).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    r.push(
        Entry::new("ideal monoid", "completion.ideals", Status::Pass)
            .detail(format!("{} ideals: {}", listing.len(), listing.join(" "))),
    );
    let mut onto = vec![false; bc.ideals.len()];
    for &k in &bc.iota {
        onto[k] = true;
    }
    let iso = onto.iter().all(|&b| b) && bc.iota.len() == bc.ideals.len();
    r.push(
        Entry::new("ι: M → M̄ is an isomorphism", "completion.self-isomorphism", if iso { Status::Pass } else { Status::Fail })
            .detail(if iso {
                "every ideal is principal".to_string()
            } else {
                format!("{} of {} ideals are principal", onto.iter().filter(|&&b| b).count(), onto.len())
            }),
    );
    let def = verify_completion_def(m, &bc);
    r.extend(bc.cross_check);
    r.extend(def);
    Ok(r)
}

/// Runs the commands in order, or in parallel with the results kept in
/// command order.
pub fn run_commands(doc: &SpecDocument, commands: &[Command], opts: RunOptions) -> Vec<Outcome> {
    let run = |c: &Command| Outcome {
        command: c.clone(),
        result: run_command(doc, c, opts.budget),
    };
    if opts.parallel {
        commands.par_iter().map(run).collect()
    } else {
        commands.iter().map(run).collect()
    }
}

/// One line per class for classification reports.
fn class_summary(r: &Report) -> Option<String> {
    let parts: Vec<String> = ["PreCu", "C", "Cu"]
        .iter()
        .map(|c| {
            let e = r.entry(c)?;
            let word = e.detail.split(" (").next().unwrap_or("");
            Some(match &e.witness {
                Some(w) if e.status == Status::Fail => format!("{c}: {word} (witness {w})"),
                _ => format!("{c}: {word}"),
            })
        })
        .collect::<Option<_>>()?;
    Some(parts.join("; "))
}

pub fn render_text(outcomes: &[Outcome]) -> String {
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&format!("== {} ==\n", o.command));
        match &o.result {
            Ok(r) => {
                if o.command.verb == Verb::Classify {
                    if let Some(s) = class_summary(r) {
                        out.push_str(&s);
                        out.push('\n');
                    }
                }
                out.push_str(&r.to_string());
                out.push_str(&format!("result: {} (expected {}), exit {}\n\n", r.status().label(), o.command.expect.label(), o.code()));
            }
            Err(e) => out.push_str(&format!("error: {e}\nexit {}\n\n", o.code())),
        }
    }
    out
}

pub fn render_json(doc: &SpecDocument, outcomes: &[Outcome], opts: RunOptions) -> Json {
    let results: Vec<Json> = outcomes
        .iter()
        .map(|o| {
            let mut v = json!({
                "command": o.command.to_string(),
                "expect": o.command.expect.label(),
                "exit": o.code(),
            });
            match &o.result {
                Ok(r) => {
                    v["report"] = r.to_json();
                    if let Some(s) = (o.command.verb == Verb::Classify).then(|| class_summary(r)).flatten() {
                        v["summary"] = json!(s);
                    }
                }
                Err(e) => v["error"] = json!(e.to_string()),
            }
            v
        })
        .collect();
    json!({
        "document": doc.source,
        "budget": opts.budget,
        "commands": outcomes.iter().map(|o| o.command.to_string()).collect::<Vec<_>>(),
        "results": results,
        "exit": exit_code(outcomes),
    })
}

/// The serialized form written by `--json`.
pub fn json_string(value: &Json) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

/// A saved report re-run from its embedded document and commands.
#[derive(Debug)]
pub struct Replay {
    pub original: String,
    pub reproduced: String,
}

impl Replay {
    pub fn identical(&self) -> bool {
        self.original == self.reproduced
    }
}

pub fn replay(saved: &str) -> Result<Replay> {
    let bad = |reason: &str| Error::Validation {
        object: "report".into(),
        reason: reason.into(),
    };
    let v: Json = serde_json::from_str(saved).map_err(|e| Error::Parse {
        line: e.line(),
        col: e.column(),
        message: e.to_string(),
    })?;
    let source = v["document"].as_str().ok_or_else(|| bad("no embedded document"))?;
    let doc = parse_spec(source).map_err(|mut errs| errs.remove(0))?;
    let commands = v["commands"]
        .as_array()
        .ok_or_else(|| bad("no embedded commands"))?
        .iter()
        .enumerate()
        .map(|(i, c)| parse_command(c.as_str().unwrap_or(""), i + 1, 1))
        .collect::<Result<Vec<_>>>()?;
    let opts = RunOptions {
        budget: v["budget"].as_u64(),
        parallel: false,
    };
    let outcomes = run_commands(&doc, &commands, opts);
    Ok(Replay {
        original: saved.to_string(),
        reproduced: json_string(&render_json(&doc, &outcomes, opts)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOC: &str = "[monoid T]\nfamily = chain 3\n[monoid Q]\nfamily = rational\n[run]\ncomplete T\nclassify Q expect=fail\n";

    #[test]
    fn finite_completion_lists_ideals() {
        let doc = parse_spec(DOC).unwrap();
        let r = run_command(&doc, &doc.commands[0], None).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.entry("ideal monoid").unwrap().detail.starts_with("4 ideals"));
    }

    #[test]
    fn expectations_set_the_exit_code() {
        let doc = parse_spec(DOC).unwrap();
        let outcomes = run_commands(&doc, &doc.commands, RunOptions::default());
        assert_eq!(exit_code(&outcomes), EXIT_OK);
        let mut strict = doc.commands[1].clone();
        strict.expect = Expect::Pass;
        let o = run_commands(&doc, &[strict], RunOptions::default());
        assert_eq!(exit_code(&o), EXIT_FAILED);
    }

    #[test]
    fn replay_is_byte_identical() {
        let doc = parse_spec(DOC).unwrap();
        let opts = RunOptions::default();
        let saved = json_string(&render_json(&doc, &run_commands(&doc, &doc.commands, opts), opts));
        assert!(replay(&saved).unwrap().identical());
    }
}
