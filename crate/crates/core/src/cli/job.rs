//! Job files: named groups, maps, subgroups, sequences and ladders, plus a
//! list of commands over them.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "groups": { "K": "[Z + Z/4 ; Z/9]", "Z": "Z" },
//!   "maps": { "two": { "domain": "Z", "codomain": "Z", "matrix": [[2]] } },
//!   "subgroups": { "G": { "ambient": "K", "even": [[0, 1]], "odd": [] } },
//!   "sequences": { "s": ["two"] },
//!   "ladders": { "L": { "top": ["f", "g"], "bottom": ["f", "g"], "vertical": ["a", "b", "c"] } },
//!   "commands": [ { "op": "kk", "a": "K", "b": "Z", "deg": 1 } ]
//! }
//! ```
//!
//! Group arguments of commands are either names from `groups` or inline
//! expressions. Matrix entries are integers, or strings for big values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Deserialize;

use super::commands::Command;
use crate::error::{Error, Result};
use crate::graded::{GradedGroup, GradedSubgroup, Parity};
use crate::group::FgaGroup;
use crate::map::GroupMap;
use crate::matrix::IntMatrix;
use crate::parse::{parse_expr, GroupExpr};
use crate::sequences::{LadderDiagram, LongSequence};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Int {
    Small(i64),
    Big(String),
}

impl Int {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Int::Small(x) => Ok(BigInt::from(*x)),
            Int::Big(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Validation(format!("'{s}' is not an integer"))),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub domain: String,
    pub codomain: String,
    /// Row lists over the canonical generators.
    pub matrix: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub ambient: String,
    #[serde(default)]
    pub even: Vec<Vec<Int>>,
    #[serde(default)]
    pub odd: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LadderSpec {
    pub top: [String; 2],
    pub bottom: [String; 2],
    pub vertical: [String; 3],
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase", deny_unknown_fields)]
pub enum CommandSpec {
    Decompose { k: String },
    Primary { k: String },
    Realize { subgroup: String },
    Kk { a: String, b: String, deg: Option<i64> },
    Kdual { a: String, deg: Option<i64> },
    Kunneth { a: String, b: String, deg: Option<i64> },
    Coeff { a: String, g: String, deg: Option<i64> },
    Dual { g: String },
    Fourway { a: String, b: String, deg: Option<i64> },
    Split21 { a: String, b: String },
    Split26 { a: String, b: String },
    Thm43 { a: String, b: String, deg: Option<i64> },
    Thm44 { a: String, deg: Option<i64> },
    Snake { ladder: String },
    Checkexact { sequence: String },
    Ispure { map: String },
    Issummand { map: String },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub schema_version: u32,
    #[serde(default)]
    pub groups: BTreeMap<String, String>,
    #[serde(default)]
    pub maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    pub subgroups: BTreeMap<String, SubgroupSpec>,
    #[serde(default)]
    pub sequences: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub ladders: BTreeMap<String, LadderSpec>,
    #[serde(default)]
    pub commands: Vec<CommandSpec>,
}

fn ints(v: &[Int]) -> Result<Vec<BigInt>> {
    v.iter().map(Int::to_bigint).collect()
}

fn unknown(kind: &str, name: &str) -> Error {
    Error::Validation(format!("unknown {kind} '{name}'"))
}

/// Named objects of a job file, parsed and validated.
#[derive(Clone, Debug, Default)]
pub struct Context {
    groups: BTreeMap<String, GroupExpr>,
    maps: BTreeMap<String, GroupMap>,
    subgroups: BTreeMap<String, GradedSubgroup>,
    sequences: BTreeMap<String, LongSequence>,
    ladders: BTreeMap<String, LadderDiagram>,
}

impl Context {
    pub fn from_job(job: &JobFile) -> Result<Self> {
        if job.schema_version != SCHEMA_VERSION {
            return Err(Error::Validation(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                job.schema_version
            )));
        }
        let mut ctx = Context::default();
        for (name, text) in &job.groups {
            let g = parse_expr(text).map_err(|e| Error::Validation(format!("group '{name}': {e}")))?;
            ctx.groups.insert(name.clone(), g);
        }
        for (name, spec) in &job.maps {
            let domain = ctx.plain(&spec.domain)?;
            let codomain = ctx.plain(&spec.codomain)?;
            let rows = spec.matrix.iter().map(|r| ints(r)).collect::<Result<Vec<_>>>()?;
            if rows.len() != codomain.num_generators() {
                return Err(Error::Validation(format!(
                    "map '{name}': {} rows, but {codomain} has {} generators",
                    rows.len(),
                    codomain.num_generators()
                )));
            }
            let m = IntMatrix::from_rows(&rows, domain.num_generators())
                .map_err(|e| Error::Validation(format!("map '{name}': {e}")))?;
            let f = GroupMap::new(domain, codomain, m).map_err(|e| Error::Validation(format!("map '{name}': {e}")))?;
            ctx.maps.insert(name.clone(), f);
        }
        for (name, spec) in &job.subgroups {
            let ambient = ctx.graded(&spec.ambient)?;
            let conv = |gens: &[Vec<Int>]| gens.iter().map(|g| ints(g)).collect::<Result<Vec<_>>>();
            let s = GradedSubgroup::new(ambient, conv(&spec.even)?, conv(&spec.odd)?)
                .map_err(|e| Error::Validation(format!("subgroup '{name}': {e}")))?;
            ctx.subgroups.insert(name.clone(), s);
        }
        for (name, maps) in &job.sequences {
            let maps = maps.iter().map(|m| ctx.map(m)).collect::<Result<Vec<_>>>()?;
            let seq = LongSequence::new(maps).map_err(|e| Error::Validation(format!("sequence '{name}': {e}")))?;
            ctx.sequences.insert(name.clone(), seq);
        }
        for (name, spec) in &job.ladders {
            let pair = |n: &[String; 2]| -> Result<[GroupMap; 2]> { Ok([ctx.map(&n[0])?, ctx.map(&n[1])?]) };
            let vertical = [
                ctx.map(&spec.vertical[0])?,
                ctx.map(&spec.vertical[1])?,
                ctx.map(&spec.vertical[2])?,
            ];
            let ladder = LadderDiagram::new(pair(&spec.top)?, pair(&spec.bottom)?, vertical)?;
            ctx.ladders.insert(name.clone(), ladder);
        }
        Ok(ctx)
    }

    /// A named group, or an inline expression.
    pub fn group(&self, s: &str) -> Result<GroupExpr> {
        match self.groups.get(s) {
            Some(g) => Ok(g.clone()),
            None => parse_expr(s),
        }
    }

    pub fn graded(&self, s: &str) -> Result<GradedGroup> {
        self.group(s).map(GroupExpr::into_graded)
    }

    pub fn plain(&self, s: &str) -> Result<FgaGroup> {
        self.group(s)?.into_plain()
    }

    pub fn map(&self, name: &str) -> Result<GroupMap> {
        self.maps.get(name).cloned().ok_or_else(|| unknown("map", name))
    }

    pub fn subgroup(&self, name: &str) -> Result<GradedSubgroup> {
        self.subgroups
            .get(name)
            .cloned()
            .ok_or_else(|| unknown("subgroup", name))
    }

    pub fn sequence(&self, name: &str) -> Result<LongSequence> {
        self.sequences
            .get(name)
            .cloned()
            .ok_or_else(|| unknown("sequence", name))
    }

    pub fn ladder(&self, name: &str) -> Result<LadderDiagram> {
        self.ladders.get(name).cloned().ok_or_else(|| unknown("ladder", name))
    }

    pub fn resolve(&self, spec: &CommandSpec) -> Result<Command> {
        let deg = |d: &Option<i64>| d.map(Parity::of);
        Ok(match spec {
            CommandSpec::Decompose { k } => Command::Decompose { k: self.graded(k)? },
            CommandSpec::Primary { k } => Command::Primary { k: self.graded(k)? },
            CommandSpec::Realize { subgroup } => Command::Realize {
                subgroup: self.subgroup(subgroup)?,
            },
            CommandSpec::Kk { a, b, deg: d } => Command::Kk {
                a: self.graded(a)?,
                b: self.graded(b)?,
                deg: deg(d),
            },
            CommandSpec::Kdual { a, deg: d } => Command::KDual {
                a: self.graded(a)?,
                deg: deg(d),
            },
            CommandSpec::Kunneth { a, b, deg: d } => Command::Kunneth {
                a: self.graded(a)?,
                b: self.graded(b)?,
                deg: deg(d),
            },
            CommandSpec::Coeff { a, g, deg: d } => Command::Coeff {
                a: self.graded(a)?,
                g: self.plain(g)?,
                deg: deg(d),
            },
            CommandSpec::Dual { g } => Command::Dual { g: self.plain(g)? },
            CommandSpec::Fourway { a, b, deg: d } => Command::FourWay {
                a: self.graded(a)?,
                b: self.graded(b)?,
                deg: deg(d),
            },
            CommandSpec::Split21 { a, b } => Command::Split21 {
                a: self.graded(a)?,
                b: self.graded(b)?,
            },
            CommandSpec::Split26 { a, b } => Command::Split26 {
                a: self.graded(a)?,
                b: self.graded(b)?,
            },
            CommandSpec::Thm43 { a, b, deg: d } => Command::Thm43 {
                a: self.graded(a)?,
                b: self.graded(b)?,
                deg: deg(d),
            },
            CommandSpec::Thm44 { a, deg: d } => Command::Thm44 {
                a: self.graded(a)?,
                deg: deg(d),
            },
            CommandSpec::Snake { ladder } => Command::Snake {
                ladder: Box::new(self.ladder(ladder)?),
            },
            CommandSpec::Checkexact { sequence } => Command::CheckExact {
                sequence: self.sequence(sequence)?,
            },
            CommandSpec::Ispure { map } => Command::IsPure { map: self.map(map)? },
            CommandSpec::Issummand { map } => Command::IsSummand { map: self.map(map)? },
        })
    }
}

pub fn parse_job(text: &str) -> Result<JobFile> {
    serde_json::from_str(text).map_err(|e| Error::Validation(format!("job file: {e}")))
}

/// Parses, validates and resolves every command of a job file.
pub fn load_job(text: &str) -> Result<(Context, Vec<Command>)> {
    let job = parse_job(text)?;
    let ctx = Context::from_job(&job)?;
    let cmds = job
        .commands
        .iter()
        .map(|c| ctx.resolve(c))
        .collect::<Result<Vec<_>>>()?;
    Ok((ctx, cmds))
}
