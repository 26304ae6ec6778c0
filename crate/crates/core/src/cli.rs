//! Command-line front end.
//!
//! [`run`] does all the work on in-memory text and returns the exit code
//! with both output streams, so the binary is a thin shell around it.
//!
//! Exit codes: `0` success or pass, `1` counterexample, `2` usage, parse or
//! resource error, `3` the forgotten atom survives in the result.

use std::collections::BTreeSet;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::depgraph::{dependency_graph, to_dot};
use crate::forget::{applicability, forget_atom, Guarantee};
use crate::semantics::{equilibrium_models, ht_models, SemanticsConfig};
use crate::syntax::{parse_program, parse_theory, render_formula, render_theory, Atom, ParseError};
use crate::verify::{check_strong_persistence, check_uniform_persistence, ContextBudget, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESIDUAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "esforget",
    version,
    about = "Forget auxiliary atoms in logic programs and check the result"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Args)]
pub struct InputArgs {
    /// Program file, or `-` for standard input.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Print the stable (equilibrium) models.
    Models(InputArgs),
    /// Print every Here-and-There model as `{here} {there}`.
    HtModels(InputArgs),
    /// Print the dependency graph.
    Graph {
        #[command(flatten)]
        input: InputArgs,
        /// DOT output, also with `--format json`.
        #[arg(long)]
        dot: bool,
    },
    /// Forget one atom and print the resulting theory.
    Forget {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        atom: String,
        /// Apply the model-preserving rewrites before printing.
        #[arg(long)]
        simplify: bool,
    },
    /// Report which sufficient conditions hold for forgetting an atom.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        atom: String,
    },
    /// Forget an atom, then test the result against the input.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        atom: String,
        /// Maximum number of contexts in the strong-persistence sweep.
        #[arg(long, value_name = "N")]
        budget: Option<usize>,
        /// Restrict the sweep to sets of facts.
        #[arg(long)]
        facts_only: bool,
    },
}

impl Command {
    pub fn input(&self) -> &InputArgs {
        match self {
            Command::Models(i) | Command::HtModels(i) => i,
            Command::Graph { input, .. }
            | Command::Forget { input, .. }
            | Command::Check { input, .. }
            | Command::Verify { input, .. } => input,
        }
    }
}

/// A parsed command line plus the settings that have no flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: Command,
    pub semantics: SemanticsConfig,
}

impl CliConfig {
    pub fn new(command: Command) -> CliConfig {
        CliConfig {
            command,
            semantics: SemanticsConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Outcome {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl std::fmt::Display) -> Outcome {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn parse_atom(name: &str) -> Result<Atom, Outcome> {
    Atom::new(name).map_err(|e| Outcome::usage(format!("--atom: {e}")))
}

fn source_name(config: &CliConfig) -> String {
    let path = &config.command.input().input;
    if path.as_os_str() == "-" {
        "<stdin>".to_string()
    } else {
        path.display().to_string()
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("outputs serialize");
    s.push('\n');
    s
}

/// Runs one command on `input`, the content of the input file.
pub fn run(config: &CliConfig, input: &str) -> Outcome {
    match execute(config, input) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

fn execute(config: &CliConfig, input: &str) -> Result<Outcome, Outcome> {
    let cfg = &config.semantics;
    let parse_failed = |e: ParseError| Outcome::usage(format!("{}:{e}", source_name(config)));
    let format = config.command.input().format;
    match &config.command {
        Command::Models(_) => {
            let theory = parse_theory(input).map_err(parse_failed)?;
            let models = equilibrium_models(&theory, cfg).map_err(Outcome::usage)?;
            Ok(Outcome::ok(
                EXIT_OK,
                match format {
                    Format::Text => models.to_text(),
                    Format::Json => models.to_json() + "\n",
                },
            ))
        }
        Command::HtModels(_) => {
            let theory = parse_theory(input).map_err(parse_failed)?;
            let models = ht_models(&theory, cfg).map_err(Outcome::usage)?;
            Ok(Outcome::ok(
                EXIT_OK,
                match format {
                    Format::Text => models.to_text(),
                    Format::Json => models.to_json() + "\n",
                },
            ))
        }
        Command::Graph { dot, .. } => {
            let program = parse_program(input).map_err(parse_failed)?;
            let graph = dependency_graph(&program);
            let out = if *dot || format == Format::Text {
                to_dot(&graph)
            } else {
                #[derive(Serialize)]
                struct GraphJson<'a> {
                    nodes: &'a BTreeSet<Atom>,
                    edges: &'a BTreeSet<crate::depgraph::Edge>,
                }
                json(&GraphJson {
                    nodes: graph.nodes(),
                    edges: graph.edges(),
                })
            };
            Ok(Outcome::ok(EXIT_OK, out))
        }
        Command::Forget { atom, simplify, .. } => {
            let a = parse_atom(atom)?;
            let program = parse_program(input).map_err(parse_failed)?;
            let result = forget_atom(&program, &a);
            let theory = if *simplify {
                result.theory.simplified()
            } else {
                result.theory.clone()
            };
            let code = if result.residual {
                EXIT_RESIDUAL
            } else {
                EXIT_OK
            };
            let out = match format {
                Format::Text => {
                    let mut out = render_theory(&theory);
                    if result.residual {
                        out.push_str(&format!(
                            "% residual: {a} occurs in its own external support {}\n",
                            render_formula(&result.external_support)
                        ));
                    }
                    out
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct ForgetJson {
                        atom: Atom,
                        theory: String,
                        external_support: String,
                        residual: bool,
                    }
                    json(&ForgetJson {
                        atom: a,
                        theory: render_theory(&theory),
                        external_support: render_formula(&result.external_support),
                        residual: result.residual,
                    })
                }
            };
            Ok(Outcome::ok(code, out))
        }
        Command::Check { atom, .. } => {
            let a = parse_atom(atom)?;
            let program = parse_program(input).map_err(parse_failed)?;
            let report = applicability(&program, &a);
            Ok(Outcome::ok(
                EXIT_OK,
                match format {
                    Format::Text => report.to_text(),
                    Format::Json => report.to_json() + "\n",
                },
            ))
        }
        Command::Verify {
            atom,
            budget,
            facts_only,
            ..
        } => {
            let a = parse_atom(atom)?;
            if *budget == Some(0) {
                return Err(Outcome::usage("--budget must be at least 1"));
            }
            let program = parse_program(input).map_err(parse_failed)?;
            let guarantee = applicability(&program, &a).guarantee;
            let result = forget_atom(&program, &a);
            let forgotten: BTreeSet<Atom> = [a.clone()].into();
            let uniform = check_uniform_persistence(&program, &result.theory, &forgotten, cfg)
                .map_err(Outcome::usage)?;
            let strong = if uniform.status == crate::verify::Status::Pass {
                let limits = ContextBudget {
                    facts_only: *facts_only,
                    max_contexts: budget.unwrap_or(crate::verify::DEFAULT_MAX_CONTEXTS),
                    pair_cap: None,
                };
                Some(
                    check_strong_persistence(&program, &result.theory, &forgotten, &limits, cfg)
                        .map_err(Outcome::usage)?,
                )
            } else {
                None
            };
            let code = if result.residual {
                EXIT_RESIDUAL
            } else if uniform.is_counterexample()
                || strong.as_ref().is_some_and(Verdict::is_counterexample)
            {
                EXIT_COUNTEREXAMPLE
            } else {
                EXIT_OK
            };
            Ok(Outcome::ok(
                code,
                verify_output(format, &a, guarantee, &uniform, strong.as_ref()),
            ))
        }
    }
}

fn verify_output(
    format: Format,
    a: &Atom,
    guarantee: Guarantee,
    uniform: &Verdict,
    strong: Option<&Verdict>,
) -> String {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct VerifyJson<'a> {
                atom: &'a Atom,
                guarantee: Guarantee,
                uniform: &'a Verdict,
                strong: Option<&'a Verdict>,
            }
            json(&VerifyJson {
                atom: a,
                guarantee,
                uniform,
                strong,
            })
        }
        Format::Text => {
            let mut out = format!("atom: {a}\nguarantee: {guarantee}\n[uniform]\n");
            out.push_str(&uniform.to_text());
            if let Some(strong) = strong {
                out.push_str("[strong]\n");
                out.push_str(&strong.to_text());
            }
            out
        }
    }
}

/// Parses `args`, reads the input and runs. Help and version requests
/// go to standard output with exit code 0.
pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome::ok(EXIT_OK, rendered)
            };
        }
    };
    let path = &cli.command.input().input;
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map(|_| buf)
    } else {
        std::fs::read_to_string(path)
    };
    match text {
        Ok(text) => run(&CliConfig::new(cli.command), &text),
        Err(e) => Outcome::usage(format!("{}: {e}", path.display())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(line: &str) -> Command {
        let words = std::iter::once("esforget").chain(line.split_whitespace());
        Cli::try_parse_from(words).unwrap().command
    }

    fn exec(line: &str, input: &str) -> Outcome {
        run(&CliConfig::new(args(line)), input)
    }

    #[test]
    fn models_text() {
        let out = exec("models -", "a | b.");
        assert_eq!((out.code, out.stdout.as_str()), (0, "{a}\n{b}\n"));
    }

    #[test]
    fn forget_noop() {
        let out = exec("forget - --atom a", "b :- c.");
        assert_eq!((out.code, out.stdout.as_str()), (0, "b :- c.\n"));
    }

    #[test]
    fn forget_residual() {
        let out = exec("forget - --atom a", "a :- not not a. b :- a.");
        assert_eq!(out.code, EXIT_RESIDUAL);
        assert_eq!(
            out.stdout,
            "b :- not not a.\n% residual: a occurs in its own external support not not a\n"
        );
    }

    #[test]
    fn verify_residual() {
        let out = exec("verify - --atom a --format json", "a :- not not a. b :- a.");
        assert_eq!(out.code, EXIT_RESIDUAL);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["uniform"]["status"], "residual_atom");
        assert!(v["strong"].is_null());
    }

    #[test]
    fn verify_pass() {
        let out = exec("verify - --atom a", "a :- b. c :- a. b.");
        assert_eq!(out.code, 0, "{}", out.stdout);
        assert!(out
            .stdout
            .contains("[uniform]\nstatus: pass\ncontexts_checked: 4\n"));
        assert!(out
            .stdout
            .contains("[strong]\nstatus: budget_exhausted_pass\n"));
    }

    #[test]
    fn usage_errors() {
        let out = exec("forget - --atom Bad", "b.");
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.starts_with("error: --atom"));
        let out = exec("models -", "a :-");
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stdout.is_empty() && out.stderr.starts_with("error: <stdin>:1:"));
        let out = exec("verify - --atom a --budget 0", "b.");
        assert_eq!(out.code, EXIT_USAGE);
        assert_eq!(
            main_with_args(["esforget", "frobnicate", "-"]).code,
            EXIT_USAGE
        );
        assert_eq!(
            main_with_args(["esforget", "models", "-", "--atom", "a"]).code,
            EXIT_USAGE
        );
        assert_eq!(main_with_args(["esforget", "forget", "-"]).code, EXIT_USAGE);
        assert_eq!(main_with_args(["esforget", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn graph_formats() {
        let dot = exec("graph -", "a :- not b.");
        assert_eq!(
            dot.stdout,
            "digraph G {\na;\nb;\na -> b [style=dashed];\n}\n"
        );
        assert_eq!(
            exec("graph - --dot --format json", "a :- not b.").stdout,
            dot.stdout
        );
        assert_eq!(
            exec("graph - --format json", "a :- not b.").stdout,
            "{\"nodes\":[\"a\",\"b\"],\"edges\":[{\"from\":\"a\",\"to\":\"b\",\"sign\":\"-\"}]}\n"
        );
    }
}
