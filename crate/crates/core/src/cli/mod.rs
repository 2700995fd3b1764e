//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when a theorem hypothesis is violated, 1 for
//! every other error (syntax, validation, unknown names). Text output is
//! colored only on a terminal and never when `NO_COLOR` is set.

pub mod commands;
pub mod job;
pub mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value as Json};

pub use commands::Command;
pub use job::{load_job, parse_job, CommandSpec, Context, JobFile, SCHEMA_VERSION};
pub use report::{Report, TextStyle, Value};

use crate::error::{Error, Result};
use crate::graded::GradedSubgroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "kshadow", version, about = "Group-level K-theory and KK-theory calculator")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Print torsion as prime powers instead of invariant factors.
    #[arg(long, global = true)]
    primary_form: bool,
    /// Job file; without a subcommand its command list is run, with one its
    /// names can be used as arguments.
    #[arg(long, global = true, value_name = "FILE")]
    job: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Torsion subgroup, torsionfree quotient and the summand check.
    Decompose { k: String },
    /// p-primary parts of a torsion graded group.
    Primary { k: String },
    /// Realization record for a subgroup: a job subgroup name, or a group
    /// with generators given as comma-separated coordinates.
    Realize {
        /// Subgroup name from the job file, or the ambient graded group.
        k: String,
        /// Even-degree generator, e.g. `0,2`; repeat for more generators.
        #[arg(long = "gen0", value_name = "COORDS", allow_hyphen_values = true)]
        gen0: Vec<String>,
        /// Odd-degree generator; repeat for more generators.
        #[arg(long = "gen1", value_name = "COORDS", allow_hyphen_values = true)]
        gen1: Vec<String>,
    },
    /// KK_j(A, B) through the universal coefficient theorem.
    Kk {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<i64>,
    },
    /// K^j(A) = KK_j(A, C).
    Kdual {
        #[arg(long)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<i64>,
    },
    /// K_j(A ⊗ B) by the Künneth formula.
    Kunneth {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<i64>,
    },
    /// K_j(A; G).
    Coeff {
        #[arg(long)]
        a: String,
        #[arg(long)]
        g: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<i64>,
    },
    /// Pontryagin dual of a finite group.
    Dual { g: String },
    /// KK_j(A, B) assembled from torsion and free parts.
    Fourway {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<i64>,
    },
    /// Splitting along the torsion subgroup of the first argument.
    Split21 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Splitting along the torsionfree quotient of the second argument.
    Split26 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Torsion A against free B: Ext form, Q/Z form and dual form.
    Thm43 {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<i64>,
    },
    /// The sequence 0 -> Hom(K, R) -> X(K_j) -> K^{j-1} -> 0 for torsion K.
    Thm44 {
        #[arg(long)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: Option<i64>,
    },
    /// Snake lemma on a ladder from the job file.
    Snake { ladder: String },
    /// Exactness of a sequence from the job file.
    Checkexact { sequence: String },
    /// Purity of a subgroup embedding from the job file.
    Ispure { map: String },
    /// Direct-summand test for a subgroup embedding from the job file.
    Issummand { map: String },
}

fn coords(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::Validation(format!("'{}' is not an integer coordinate", s.trim())))
        })
        .collect()
}

fn resolve(cmd: Cmd, ctx: &Context) -> Result<Command> {
    let spec = match cmd {
        Cmd::Realize { k, gen0, gen1 } => {
            if gen0.is_empty() && gen1.is_empty() {
                if let Ok(s) = ctx.subgroup(&k) {
                    return Ok(Command::Realize { subgroup: s });
                }
            }
            let ambient = ctx.graded(&k)?;
            let even = gen0.iter().map(|g| coords(g)).collect::<Result<Vec<_>>>()?;
            let odd = gen1.iter().map(|g| coords(g)).collect::<Result<Vec<_>>>()?;
            return Ok(Command::Realize {
                subgroup: GradedSubgroup::new(ambient, even, odd)?,
            });
        }
        Cmd::Decompose { k } => CommandSpec::Decompose { k },
        Cmd::Primary { k } => CommandSpec::Primary { k },
        Cmd::Kk { a, b, deg } => CommandSpec::Kk { a, b, deg },
        Cmd::Kdual { a, deg } => CommandSpec::Kdual { a, deg },
        Cmd::Kunneth { a, b, deg } => CommandSpec::Kunneth { a, b, deg },
        Cmd::Coeff { a, g, deg } => CommandSpec::Coeff { a, g, deg },
        Cmd::Dual { g } => CommandSpec::Dual { g },
        Cmd::Fourway { a, b, deg } => CommandSpec::Fourway { a, b, deg },
        Cmd::Split21 { a, b } => CommandSpec::Split21 { a, b },
        Cmd::Split26 { a, b } => CommandSpec::Split26 { a, b },
        Cmd::Thm43 { a, b, deg } => CommandSpec::Thm43 { a, b, deg },
        Cmd::Thm44 { a, deg } => CommandSpec::Thm44 { a, deg },
        Cmd::Snake { ladder } => CommandSpec::Snake { ladder },
        Cmd::Checkexact { sequence } => CommandSpec::Checkexact { sequence },
        Cmd::Ispure { map } => CommandSpec::Ispure { map },
        Cmd::Issummand { map } => CommandSpec::Issummand { map },
    };
    ctx.resolve(&spec)
}

fn error_json(e: &Error) -> Json {
    json!({ "kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code() })
}

/// Runs commands concurrently; results come back in input order.
pub fn run_commands(cmds: &[Command]) -> Vec<(&'static str, Result<Report>)> {
    cmds.par_iter().map(|c| (c.op(), c.run())).collect()
}

/// JSON document for a list of command results.
pub fn results_json(results: &[(&'static str, Result<Report>)]) -> Json {
    let items: Vec<Json> = results
        .iter()
        .map(|(op, r)| match r {
            Ok(rep) => json!({ "op": op, "result": rep.to_json() }),
            Err(e) => json!({ "op": op, "error": error_json(e) }),
        })
        .collect();
    json!({ "schema_version": SCHEMA_VERSION, "results": items })
}

fn first_failure_code(results: &[(&'static str, Result<Report>)]) -> i32 {
    results
        .iter()
        .find_map(|(_, r)| r.as_ref().err().map(Error::exit_code))
        .unwrap_or(0)
}

/// Runs every command of a job file given as text. Returns the JSON
/// document `--format json --job` would print and the exit code.
pub fn run_job_json(text: &str) -> (String, i32) {
    match load_job(text) {
        Ok((_, cmds)) => {
            let results = run_commands(&cmds);
            (render_json(&results_json(&results)), first_failure_code(&results))
        }
        Err(e) => {
            let out = fail(&e, Format::Json, None);
            (out.stdout, out.code)
        }
    }
}

fn render_json(v: &Json) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

struct Outcome {
    stdout: String,
    stderr: String,
    code: i32,
}

fn fail(e: &Error, format: Format, op: Option<&str>) -> Outcome {
    let stdout = match format {
        Format::Json => render_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "op": op,
            "error": error_json(e),
        })),
        Format::Text => String::new(),
    };
    Outcome {
        stdout,
        stderr: format!("error: {e}\n"),
        code: e.exit_code(),
    }
}

fn execute(cli: Cli, color: bool) -> Outcome {
    let style = TextStyle {
        primary_form: cli.primary_form,
        color: color && cli.format == Format::Text,
    };
    let (ctx, job_cmds) = match &cli.job {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    let err = Error::Validation(format!("cannot read {}: {e}", path.display()));
                    return fail(&err, cli.format, None);
                }
            };
            match load_job(&text) {
                Ok((ctx, cmds)) => (ctx, cmds),
                Err(e) => return fail(&e, cli.format, None),
            }
        }
        None => (Context::default(), Vec::new()),
    };

    let Some(cmd) = cli.command else {
        if cli.job.is_none() {
            let err = Error::Validation("nothing to do: give a subcommand or --job FILE (see --help)".into());
            return fail(&err, cli.format, None);
        }
        let results = run_commands(&job_cmds);
        let code = first_failure_code(&results);
        let mut stderr = String::new();
        let stdout = match cli.format {
            Format::Json => render_json(&results_json(&results)),
            Format::Text => {
                let mut out = String::new();
                for (i, (op, r)) in results.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    out.push_str(&format!("# {} {op}\n", i + 1));
                    match r {
                        Ok(rep) => out.push_str(&rep.render_text(&style)),
                        Err(e) => out.push_str(&format!("error: {e}\n")),
                    }
                }
                out
            }
        };
        for (i, (op, r)) in results.iter().enumerate() {
            if let Err(e) = r {
                stderr.push_str(&format!("error in command {} ({op}): {e}\n", i + 1));
            }
        }
        return Outcome { stdout, stderr, code };
    };

    let command = match resolve(cmd, &ctx) {
        Ok(c) => c,
        Err(e) => return fail(&e, cli.format, None),
    };
    let op = command.op();
    match command.run() {
        Ok(rep) => Outcome {
            stdout: match cli.format {
                Format::Text => rep.render_text(&style),
                Format::Json => render_json(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "op": op,
                    "result": rep.to_json(),
                })),
            },
            stderr: String::new(),
            code: 0,
        },
        Err(e) => fail(&e, cli.format, Some(op)),
    }
}

/// Parses `args` (program name first), runs, writes output, and returns
/// the exit code. `terminal` says whether stdout is a terminal.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write, terminal: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let no_color = std::env::var_os("NO_COLOR").is_some_and(|v| !v.is_empty());
    let out = execute(cli, terminal && !no_color);
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stderr.write_all(out.stderr.as_bytes());
    out.code
}
