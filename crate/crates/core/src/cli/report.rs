//! Report values and their text and JSON renderings.

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value as Json};

use crate::graded::GradedGroup;
use crate::group::FgaGroup;
use crate::map::GroupMap;
use crate::matrix::IntMatrix;
use crate::parse::{format_graded, format_group};

#[derive(Clone, Debug)]
pub enum Value {
    Bool(bool),
    Int(BigInt),
    Text(String),
    Group(FgaGroup),
    Graded(GradedGroup),
    Map(GroupMap),
    Matrix(IntMatrix),
    /// Nested section.
    Record(Report),
    /// Sibling blocks, printed one after another.
    Blocks(Vec<Report>),
    Table(Table),
    Optional(Option<Box<Value>>),
}

/// Rows of strings for text, and of JSON values keyed by column.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub keys: Vec<&'static str>,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Clone, Debug)]
struct Entry {
    key: String,
    label: String,
    value: Value,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<Entry>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TextStyle {
    pub primary_form: bool,
    pub color: bool,
}

impl TextStyle {
    fn paint(&self, s: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn with(mut self, key: impl Into<String>, label: impl Into<String>, value: Value) -> Self {
        self.push(key, label, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, label: impl Into<String>, value: Value) {
        self.entries.push(Entry {
            key: key.into(),
            label: label.into(),
            value,
        });
    }

    pub fn to_json(&self) -> Json {
        let mut m = Map::new();
        for e in &self.entries {
            m.insert(e.key.clone(), e.value.to_json());
        }
        Json::Object(m)
    }

    pub fn render_text(&self, style: &TextStyle) -> String {
        let mut out = String::new();
        self.write_text(&mut out, 0, style);
        out
    }

    fn write_text(&self, out: &mut String, indent: usize, style: &TextStyle) {
        let pad = " ".repeat(indent);
        for e in &self.entries {
            match &e.value {
                Value::Record(r) => {
                    out.push_str(&format!("{pad}{}:\n", style.paint(&e.label, "1")));
                    r.write_text(out, indent + 2, style);
                }
                Value::Blocks(blocks) => {
                    for (i, b) in blocks.iter().enumerate() {
                        if i > 0 {
                            out.push('\n');
                        }
                        b.write_text(out, indent, style);
                    }
                }
                Value::Table(t) => {
                    out.push_str(&format!("{pad}{}:\n", style.paint(&e.label, "1")));
                    t.write_text(out, indent + 2, style);
                }
                v => out.push_str(&format!("{pad}{} = {}\n", e.label, v.text(style))),
            }
        }
    }
}

fn bigint_json(x: &BigInt) -> Json {
    if let Ok(v) = u64::try_from(x) {
        Json::Number(Number::from(v))
    } else if let Ok(v) = i64::try_from(x) {
        Json::Number(Number::from(v))
    } else {
        Json::String(x.to_string())
    }
}

pub fn group_json(g: &FgaGroup) -> Json {
    json!({
        "free_rank": g.free_rank(),
        "torsion": g.torsion().iter().map(bigint_json).collect::<Vec<_>>(),
    })
}

pub fn graded_json(g: &GradedGroup) -> Json {
    json!({ "even": group_json(&g.even), "odd": group_json(&g.odd) })
}

fn matrix_json(m: &IntMatrix) -> Json {
    Json::Array(
        m.to_rows()
            .iter()
            .map(|r| Json::Array(r.iter().map(bigint_json).collect()))
            .collect(),
    )
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

impl Value {
    pub fn to_json(&self) -> Json {
        match self {
            Value::Bool(b) => Json::Bool(*b),
            Value::Int(x) => bigint_json(x),
            Value::Text(s) => Json::String(s.clone()),
            Value::Group(g) => group_json(g),
            Value::Graded(g) => graded_json(g),
            Value::Map(f) => json!({
                "domain": group_json(f.domain()),
                "codomain": group_json(f.codomain()),
                "matrix": matrix_json(f.matrix()),
            }),
            Value::Matrix(m) => matrix_json(m),
            Value::Record(r) => r.to_json(),
            Value::Blocks(bs) => Json::Array(bs.iter().map(Report::to_json).collect()),
            Value::Table(t) => Json::Array(
                t.rows
                    .iter()
                    .map(|row| {
                        let mut m = Map::new();
                        for (k, v) in t.keys.iter().zip(row) {
                            m.insert(k.to_string(), v.to_json());
                        }
                        Json::Object(m)
                    })
                    .collect(),
            ),
            Value::Optional(v) => v.as_ref().map_or(Json::Null, |v| v.to_json()),
        }
    }

    fn text(&self, style: &TextStyle) -> String {
        match self {
            Value::Bool(true) => style.paint("true", "32"),
            Value::Bool(false) => style.paint("false", "31"),
            Value::Int(x) => x.to_string(),
            Value::Text(s) => s.clone(),
            Value::Group(g) => format_group(g, style.primary_form),
            Value::Graded(g) => format_graded(g, style.primary_form),
            Value::Map(f) => format!(
                "{} -> {} {}",
                format_group(f.domain(), style.primary_form),
                format_group(f.codomain(), style.primary_form),
                matrix_text(f.matrix())
            ),
            Value::Matrix(m) => matrix_text(m),
            Value::Optional(None) => "-".into(),
            Value::Optional(Some(v)) => v.text(style),
            Value::Record(_) | Value::Blocks(_) | Value::Table(_) => String::new(),
        }
    }
}

impl Table {
    pub fn new(columns: &[(&'static str, &'static str)]) -> Self {
        Table {
            keys: columns.iter().map(|c| c.0).collect(),
            headers: columns.iter().map(|c| c.1).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Value>) {
        debug_assert_eq!(cells.len(), self.keys.len());
        self.rows.push(cells);
    }

    fn write_text(&self, out: &mut String, indent: usize, style: &TextStyle) {
        let plain = TextStyle { color: false, ..*style };
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.text(&plain)).collect())
            .collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].chars().count())
                    .chain([self.headers[c].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |items: Vec<String>| -> String {
            let padded: Vec<String> = items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                .collect();
            format!("{}{}\n", " ".repeat(indent), padded.join("  ").trim_end())
        };
        out.push_str(&line(self.headers.iter().map(|h| h.to_string()).collect()));
        for r in cells {
            out.push_str(&line(r));
        }
    }
}
