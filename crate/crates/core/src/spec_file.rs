//! The monoid-spec document: line-oriented sections that declare monoids,
//! maps, inductive systems and models, followed by a `[run]` block of
//! commands.
//!
//! ```text
//! # comments run to the end of the line
//! [monoid Q]
//! family = rational
//!
//! [monoid M]
//! elements = 0 a b
//! row = 0 a b
//! row = a a b
//! row = b b b
//! order = 0<a a<b
//!
//! [map f]
//! spec = dyadic-inclusion 0
//!
//! [system D]
//! kind = dyadic
//! stages = 3
//!
//! [model W]
//! k = 2
//! v = nat
//! rho = 1 2
//! variant = Cu
//!
//! [run]
//! check Q budget=64 expect=pass
//! counterexample budget=64
//! ```
//!
//! Table rows and order pairs accept element names or indices. A table
//! without `order` gets the algebraic order. Finite maps are given as
//! `from`, `to` and `images` (one image per domain element).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::catalog::{self, Nat};
use crate::error::{Error, Result};
use crate::finite::FiniteMonoid;
use crate::lab::finite_map;
use crate::limits::{InductiveSystem, SystemKind};
use crate::models::{parse_matrix, SimplexModel, StateOrdered, Variant};
use crate::order::{MonoidHandle, MonoidMap};

pub const DEFAULT_BUDGET: u64 = 64;

/// A declared monoid: an explicit table or a catalog family.
#[derive(Clone, Debug)]
pub struct MonoidEntry {
    pub name: String,
    pub source: String,
    /// The table behind a finite monoid, for the exhaustive laboratory.
    pub finite: Option<FiniteMonoid>,
    pub handle: MonoidHandle,
}

#[derive(Clone, Debug)]
pub struct MapEntry {
    pub name: String,
    pub map: MonoidMap,
}

#[derive(Clone, Debug)]
pub struct SystemEntry {
    pub name: String,
    pub system: Arc<InductiveSystem>,
}

#[derive(Clone, Debug)]
pub struct ModelEntry {
    pub name: String,
    pub model: Arc<SimplexModel>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verb {
    Check,
    Classify,
    Complete,
    Hereditary,
    Morphism,
    Limit,
    Commute,
    Counterexample,
    Model,
}

/// What a verb's target must name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetKind {
    Monoid,
    Map,
    System,
    Model,
    None,
}

impl Verb {
    pub const ALL: [Verb; 9] = [
        Verb::Check,
        Verb::Classify,
        Verb::Complete,
        Verb::Hereditary,
        Verb::Morphism,
        Verb::Limit,
        Verb::Commute,
        Verb::Counterexample,
        Verb::Model,
    ];

    pub fn parse(word: &str) -> Option<Verb> {
        Verb::ALL.into_iter().find(|v| v.name() == word)
    }

    pub fn name(self) -> &'static str {
        match self {
            Verb::Check => "check",
            Verb::Classify => "classify",
            Verb::Complete => "complete",
            Verb::Hereditary => "hereditary",
            Verb::Morphism => "morphism",
            Verb::Limit => "limit",
            Verb::Commute => "commute",
            Verb::Counterexample => "counterexample",
            Verb::Model => "model",
        }
    }

    pub fn target_kind(self) -> TargetKind {
        match self {
            Verb::Check | Verb::Classify | Verb::Complete | Verb::Hereditary => TargetKind::Monoid,
            Verb::Morphism => TargetKind::Map,
            Verb::Limit | Verb::Commute => TargetKind::System,
            Verb::Model => TargetKind::Model,
            Verb::Counterexample => TargetKind::None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Pass,
    Fail,
    Unknown,
}

impl Expect {
    fn parse(word: &str) -> Option<Expect> {
        match word {
            "pass" => Some(Expect::Pass),
            "fail" => Some(Expect::Fail),
            "unknown" => Some(Expect::Unknown),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Expect::Pass => "pass",
            Expect::Fail => "fail",
            Expect::Unknown => "unknown",
        }
    }
}

/// One line of the `[run]` block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub target: Option<String>,
    pub budget: Option<u64>,
    pub depth: Option<usize>,
    pub expect: Expect,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.verb.name())?;
        if let Some(t) = &self.target {
            write!(f, " {t}")?;
        }
        if let Some(b) = self.budget {
            write!(f, " budget={b}")?;
        }
        if let Some(d) = self.depth {
            write!(f, " depth={d}")?;
        }
        write!(f, " expect={}", self.expect.label())
    }
}

/// A validated document: every reference resolves and every table
/// satisfies the monoid axioms.
#[derive(Clone, Debug)]
pub struct SpecDocument {
    pub source: String,
    pub monoids: BTreeMap<String, MonoidEntry>,
    pub maps: BTreeMap<String, MapEntry>,
    pub systems: BTreeMap<String, SystemEntry>,
    pub models: BTreeMap<String, ModelEntry>,
    pub commands: Vec<Command>,
}

impl SpecDocument {
    pub fn monoid(&self, name: &str) -> Result<&MonoidEntry> {
        self.monoids.get(name).ok_or_else(|| missing("monoid", name))
    }

    pub fn map(&self, name: &str) -> Result<&MapEntry> {
        self.maps.get(name).ok_or_else(|| missing("map", name))
    }

    pub fn system(&self, name: &str) -> Result<&SystemEntry> {
        self.systems.get(name).ok_or_else(|| missing("system", name))
    }

    pub fn model(&self, name: &str) -> Result<&ModelEntry> {
        self.models.get(name).ok_or_else(|| missing("model", name))
    }

    /// Declared names a verb can target, in name order.
    pub fn targets(&self, kind: TargetKind) -> Vec<String> {
        match kind {
            TargetKind::Monoid => self.monoids.keys().cloned().collect(),
            TargetKind::Map => self.maps.keys().cloned().collect(),
            TargetKind::System => self.systems.keys().cloned().collect(),
            TargetKind::Model => self.models.keys().cloned().collect(),
            TargetKind::None => Vec::new(),
        }
    }
}

fn missing(kind: &str, name: &str) -> Error {
    Error::Validation {
        object: name.to_string(),
        reason: format!("no {kind} named `{name}`"),
    }
}

struct Field {
    key: String,
    value: String,
    line: usize,
    col: usize,
}

struct Block {
    kind: String,
    name: String,
    line: usize,
    fields: Vec<Field>,
}

struct RunLine {
    text: String,
    line: usize,
    col: usize,
}

fn parse_error(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Parses and validates a document, reporting every positioned error found.
pub fn parse_spec(text: &str) -> std::result::Result<SpecDocument, Vec<Error>> {
    let (blocks, runs) = split_sections(text)?;
    if blocks.is_empty() && runs.is_empty() {
        return Err(vec![parse_error(1, 1, "the document declares nothing")]);
    }
    let mut errors = Vec::new();
    let mut doc = SpecDocument {
        source: text.to_string(),
        monoids: BTreeMap::new(),
        maps: BTreeMap::new(),
        systems: BTreeMap::new(),
        models: BTreeMap::new(),
        commands: Vec::new(),
    };
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for b in &blocks {
        if let Some(first) = seen.insert(b.name.clone(), b.line) {
            errors.push(Error::Validation {
                object: b.name.clone(),
                reason: format!("declared on line {first} and again on line {}", b.line),
            });
        }
    }
    // monoids first, since maps and models refer to them
    for kind in ["monoid", "map", "system", "model"] {
        for b in blocks.iter().filter(|b| b.kind == kind) {
            let r = match kind {
                "monoid" => resolve_monoid(b).map(|e| {
                    doc.monoids.insert(b.name.clone(), e);
                }),
                "map" => resolve_map(b, &doc).map(|e| {
                    doc.maps.insert(b.name.clone(), e);
                }),
                "system" => resolve_system(b).map(|e| {
                    doc.systems.insert(b.name.clone(), e);
                }),
                _ => resolve_model(b, &doc).map(|e| {
                    doc.models.insert(b.name.clone(), e);
                }),
            };
            if let Err(e) = r {
                errors.push(e);
            }
        }
    }
    for r in &runs {
        match parse_command(&r.text, r.line, r.col).and_then(|c| check_target(&doc, &c).map(|_| c)) {
            Ok(c) => doc.commands.push(c),
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(doc)
    } else {
        Err(errors)
    }
}

fn split_sections(text: &str) -> std::result::Result<(Vec<Block>, Vec<RunLine>), Vec<Error>> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut runs = Vec::new();
    let mut errors = Vec::new();
    enum Section {
        None,
        Decl,
        Run,
    }
    let mut section = Section::None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body.len() - body.trim_start().len() + 1;
        if let Some(inner) = trimmed.strip_prefix('[') {
            let Some(inner) = inner.strip_suffix(']') else {
                errors.push(parse_error(line, col + trimmed.len(), "section header lacks `]`"));
                continue;
            };
            let words: Vec<&str> = inner.split_whitespace().collect();
            match words.as_slice() {
                ["run"] => section = Section::Run,
                [kind @ ("monoid" | "map" | "system" | "model"), name] => {
                    blocks.push(Block {
                        kind: kind.to_string(),
                        name: name.to_string(),
                        line,
                        fields: Vec::new(),
                    });
                    section = Section::Decl;
                }
                [kind @ ("monoid" | "map" | "system" | "model")] => {
                    errors.push(parse_error(line, col, format!("`[{kind}]` needs a name")));
                    section = Section::None;
                }
                _ => {
                    errors.push(parse_error(line, col + 1, format!("unknown section `[{inner}]`")));
                    section = Section::None;
                }
            }
            continue;
        }
        match section {
            Section::Run => runs.push(RunLine {
                text: trimmed.to_string(),
                line,
                col,
            }),
            Section::Decl => match trimmed.split_once('=') {
                Some((k, v)) if !k.trim().is_empty() => {
                    let eq = body.find('=').expect("split on `=`");
                    let after = &body[eq + 1..];
                    let vcol = eq + 2 + (after.len() - after.trim_start().len());
                    blocks.last_mut().expect("declaration section").fields.push(Field {
                        key: k.trim().to_string(),
                        value: v.trim().to_string(),
                        line,
                        col: vcol,
                    });
                }
                _ => errors.push(parse_error(line, col, "expected `key = value`")),
            },
            Section::None => errors.push(parse_error(line, col, "content outside any section")),
        }
    }
    if errors.is_empty() {
        Ok((blocks, runs))
    } else {
        Err(errors)
    }
}

impl Block {
    fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|f| f.key == key)
    }

    fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a Field> + 'a {
        self.fields.iter().filter(move |f| f.key == key)
    }

    fn require(&self, key: &str) -> Result<&Field> {
        self.get(key).ok_or_else(|| Error::Validation {
            object: self.name.clone(),
            reason: format!("missing `{key}`"),
        })
    }

    fn known(&self, keys: &[&str]) -> Result<()> {
        match self.fields.iter().find(|f| !keys.contains(&f.key.as_str())) {
            Some(f) => Err(parse_error(f.line, f.col, format!("unknown key `{}` in [{} {}]", f.key, self.kind, self.name))),
            None => Ok(()),
        }
    }
}

fn finite_family(spec: &str) -> Option<FiniteMonoid> {
    let words: Vec<&str> = spec.split_whitespace().collect();
    let num = |w: &str| w.parse::<usize>().ok();
    Some(match words.as_slice() {
        ["chain", n] => FiniteMonoid::chain(num(n)?),
        ["saturating", n] => FiniteMonoid::saturating(num(n)?),
        ["grid", a, b] if num(a)? > 0 && num(b)? > 0 => FiniteMonoid::grid(num(a)?, num(b)?),
        ["two-point"] => FiniteMonoid::two_point(),
        ["random", s] => FiniteMonoid::random(s.parse().ok()?),
        _ => return None,
    })
}

fn resolve_monoid(b: &Block) -> Result<MonoidEntry> {
    b.known(&["family", "elements", "row", "order"])?;
    if let Some(f) = b.get("family") {
        if b.get("elements").is_some() {
            return Err(Error::Validation {
                object: b.name.clone(),
                reason: "declare either `family` or a table, not both".into(),
            });
        }
        let handle = catalog::family(&f.value).map_err(|e| parse_error(f.line, f.col, e.to_string()))?;
        return Ok(MonoidEntry {
            name: b.name.clone(),
            source: f.value.clone(),
            finite: finite_family(&f.value),
            handle,
        });
    }
    let el = b.require("elements")?;
    let names: Vec<String> = el.value.split_whitespace().map(str::to_string).collect();
    let index = |word: &str, line: usize, col: usize| -> Result<usize> {
        names
            .iter()
            .position(|n| n == word)
            .or_else(|| word.parse::<usize>().ok().filter(|&i| i < names.len()))
            .ok_or_else(|| parse_error(line, col, format!("`{word}` is not an element of {}", b.name)))
    };
    let mut table = Vec::new();
    for f in b.all("row") {
        let row = f.value.split_whitespace().map(|w| index(w, f.line, f.col)).collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    let monoid = match b.get("order") {
        None => FiniteMonoid::algebraic(b.name.clone(), names.clone(), table),
        Some(f) => {
            let mut pairs = Vec::new();
            for pair in f.value.split_whitespace() {
                let (a, c) = pair
                    .split_once('<')
                    .ok_or_else(|| parse_error(f.line, f.col, format!("order pair `{pair}` is not of the form a<b")))?;
                pairs.push((index(a, f.line, f.col)?, index(c, f.line, f.col)?));
            }
            FiniteMonoid::from_pairs(b.name.clone(), names.clone(), table, &pairs)
        }
    }
    .map_err(|e| match e {
        Error::InvalidTable { name, reason } => Error::Validation { object: name, reason },
        other => other,
    })?;
    Ok(MonoidEntry {
        name: b.name.clone(),
        source: format!("table of {} elements", names.len()),
        handle: monoid.handle(),
        finite: Some(monoid),
    })
}

fn resolve_map(b: &Block, doc: &SpecDocument) -> Result<MapEntry> {
    b.known(&["spec", "from", "to", "images"])?;
    if let Some(f) = b.get("spec") {
        let map = catalog::map(&f.value).map_err(|e| parse_error(f.line, f.col, e.to_string()))?;
        return Ok(MapEntry {
            name: b.name.clone(),
            map,
        });
    }
    let table_of = |key: &str| -> Result<FiniteMonoid> {
        let f = b.require(key)?;
        doc.monoid(&f.value)?.finite.clone().ok_or_else(|| Error::Validation {
            object: b.name.clone(),
            reason: format!("`{}` is not a finite monoid", f.value),
        })
    };
    let (m, p) = (table_of("from")?, table_of("to")?);
    let f = b.require("images")?;
    let alpha = f
        .value
        .split_whitespace()
        .map(|w| {
            p.names()
                .iter()
                .position(|n| n == w)
                .ok_or_else(|| parse_error(f.line, f.col, format!("`{w}` is not an element of {}", p.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    if alpha.len() != m.size() {
        return Err(Error::Validation {
            object: b.name.clone(),
            reason: format!("{} images for {} domain elements", alpha.len(), m.size()),
        });
    }
    Ok(MapEntry {
        name: b.name.clone(),
        map: finite_map(&b.name, &m, &p, &alpha),
    })
}

fn resolve_system(b: &Block) -> Result<SystemEntry> {
    b.known(&["kind", "stages"])?;
    let k = b.require("kind")?;
    let kind = SystemKind::parse(&k.value)
        .ok_or_else(|| parse_error(k.line, k.col, format!("unknown system kind `{}`", k.value)))?;
    let stages = match b.get("stages") {
        Some(f) => f
            .value
            .parse::<usize>()
            .map_err(|_| parse_error(f.line, f.col, format!("`{}` is not a stage count", f.value)))?,
        None => 3,
    };
    Ok(SystemEntry {
        name: b.name.clone(),
        system: InductiveSystem::new(b.name.clone(), kind, stages)?,
    })
}

fn resolve_model(b: &Block, doc: &SpecDocument) -> Result<ModelEntry> {
    b.known(&["k", "v", "rho", "variant"])?;
    let kf = b.require("k")?;
    let k: usize = kf
        .value
        .parse()
        .map_err(|_| parse_error(kf.line, kf.col, format!("`{}` is not a count of extreme traces", kf.value)))?;
    let rf = b.require("rho")?;
    let rho = parse_matrix(&rf.value).ok_or_else(|| parse_error(rf.line, rf.col, "rho must be rows of rationals separated by `;`"))?;
    let v = match b.get("v").map(|f| f.value.as_str()).unwrap_or("nat") {
        "nat" => Nat::handle(),
        "nat-states" => StateOrdered::handle(rho.clone())?,
        name => doc.monoid(name)?.handle.clone(),
    };
    let variant = match b.get("variant").map(|f| (f, f.value.as_str())) {
        None | Some((_, "W")) => Variant::W,
        Some((_, "Cu")) => Variant::Cu,
        Some((f, other)) => return Err(parse_error(f.line, f.col, format!("unknown variant `{other}`"))),
    };
    Ok(ModelEntry {
        name: b.name.clone(),
        model: SimplexModel::new(k, v, rho, variant)?,
    })
}

/// Parses `verb [target] [budget=N] [depth=N] [expect=pass|fail|unknown]`.
pub fn parse_command(text: &str, line: usize, col: usize) -> Result<Command> {
    let mut words = text.split_whitespace();
    let head = words.next().ok_or_else(|| parse_error(line, col, "empty command"))?;
    let verb = Verb::parse(head).ok_or_else(|| Error::UnknownCommand(head.to_string()))?;
    let mut cmd = Command {
        verb,
        target: None,
        budget: None,
        depth: None,
        expect: Expect::Pass,
    };
    for w in words {
        let wcol = col + text.find(w).unwrap_or(0);
        match w.split_once('=') {
            Some(("budget", v)) => {
                let b: u64 = v.parse().map_err(|_| parse_error(line, wcol, format!("`{v}` is not a budget")))?;
                if b == 0 {
                    return Err(parse_error(line, wcol, "budget must be at least 1"));
                }
                cmd.budget = Some(b);
            }
            Some(("depth", v)) => {
                cmd.depth = Some(v.parse().map_err(|_| parse_error(line, wcol, format!("`{v}` is not a depth")))?);
            }
            Some(("expect", v)) => {
                cmd.expect = Expect::parse(v).ok_or_else(|| parse_error(line, wcol, format!("`{v}` is not pass, fail or unknown")))?;
            }
            Some((k, _)) => return Err(parse_error(line, wcol, format!("unknown option `{k}`"))),
            None if cmd.target.is_none() => cmd.target = Some(w.to_string()),
            None => return Err(parse_error(line, wcol, format!("unexpected word `{w}`"))),
        }
    }
    Ok(cmd)
}

/// The target names an object of the kind the verb needs.
pub fn check_target(doc: &SpecDocument, cmd: &Command) -> Result<()> {
    match (cmd.verb.target_kind(), &cmd.target) {
        (TargetKind::None, None) => Ok(()),
        (TargetKind::None, Some(t)) => Err(Error::Validation {
            object: t.clone(),
            reason: format!("`{}` takes no target", cmd.verb.name()),
        }),
        (_, None) => Err(Error::Validation {
            object: cmd.verb.name().to_string(),
            reason: "missing target".into(),
        }),
        (TargetKind::Monoid, Some(t)) => doc.monoid(t).map(|_| ()),
        (TargetKind::Map, Some(t)) => doc.map(t).map(|_| ()),
        (TargetKind::System, Some(t)) => doc.system(t).map(|_| ()),
        (TargetKind::Model, Some(t)) => doc.model(t).map(|_| ()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "[monoid M]\nelements = 0 a b\nrow = 0 a b\nrow = a a b\nrow = b b b\norder = 0<a a<b\n\n[run]\nclassify M\n";

    #[test]
    fn table_and_run_block() {
        let doc = parse_spec(SMALL).unwrap();
        assert_eq!(doc.monoid("M").unwrap().finite.as_ref().unwrap().size(), 3);
        assert_eq!(doc.commands[0].to_string(), "classify M expect=pass");
    }

    #[test]
    fn empty_document_is_a_parse_error() {
        let errs = parse_spec("# nothing here\n").unwrap_err();
        assert!(matches!(errs[0], Error::Parse { line: 1, .. }));
    }

    #[test]
    fn positions_are_reported() {
        let errs = parse_spec("[monoid Q]\nfamily = reals\n").unwrap_err();
        assert!(matches!(errs[0], Error::Parse { line: 2, col: 10, .. }), "{:?}", errs);
        let errs = parse_spec("[run]\nfrobnicate Q\n").unwrap_err();
        assert!(matches!(&errs[0], Error::UnknownCommand(v) if v == "frobnicate"));
    }

    #[test]
    fn dangling_references_are_validation_errors() {
        let errs = parse_spec("[run]\nclassify Nope\n").unwrap_err();
        assert!(matches!(&errs[0], Error::Validation { object, .. } if object == "Nope"));
    }

    #[test]
    fn options_parse() {
        let c = parse_command("counterexample budget=64 depth=8 expect=unknown", 1, 1).unwrap();
        assert_eq!((c.budget, c.depth, c.expect), (Some(64), Some(8), Expect::Unknown));
        assert!(parse_command("check M budget=0", 1, 1).is_err());
    }
}
