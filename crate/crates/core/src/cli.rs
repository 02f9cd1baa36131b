//! Command-line driver.
//!
//! Exit status: 0 on success (a query that was answered counts as success,
//! whatever the answer), 1 when a check fails, 2 on usage or word-syntax
//! errors. With `--json` every command prints one JSON document per line.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::confluence::{
    audit_local_confluence, audit_termination, cross_check_oracle, AuditOptions, Oracle,
    OracleAnswer, OracleError,
};
use crate::monoid::{
    answer_open_question, check_axioms, check_n_closure, in_n, iso_conditions, Element,
    IdentityReport, Membership, Outcome,
};
use crate::rewrite::{normalize, normalize_trace};
use crate::words::{Index, ParseError, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "freeadj",
    version,
    about = "Word problem and confluence audit for the initial monoid adjunction"
)]
pub struct Cli {
    /// Print line-delimited JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for the enumerating checks (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[arg(long, global = true)]
    pub max_index: Option<Index>,

    #[arg(long, global = true)]
    pub max_len: Option<usize>,

    #[arg(long, global = true)]
    pub max_degree: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normal form of each word.
    Normalize {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Show the leftmost reduction of a word step by step.
    Trace { word: String },
    /// Decide whether two words denote the same element.
    Eq { u: String, v: String },
    /// Multiply elements.
    Mul {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Apply the shift endomorphism f (repeatedly with --power).
    F {
        word: String,
        #[arg(long, default_value_t = 1)]
        power: Index,
    },
    /// Print the degree of a word.
    Degree { word: String },
    /// Check the defining identities on all elements within bounds
    /// (defaults: --max-len 4 --max-index 3).
    Axioms,
    /// Check closure of N = ε f(M) (defaults: --max-len 3 --max-index 2) and
    /// search membership witnesses for the given words.
    Ncheck {
        words: Vec<String>,
        #[arg(long, default_value_t = 8)]
        search_bound: u64,
    },
    /// Evaluate the conditions equivalent to f being an isomorphism.
    Prop3,
    /// Local confluence audit (default --max-index 6) and termination audit.
    Audit {
        #[arg(long, default_value_t = 64)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Word length bound for the termination audit.
        #[arg(long, default_value_t = 4)]
        term_max_len: usize,
        /// Index bound for the termination audit.
        #[arg(long, default_value_t = 3)]
        term_max_index: Index,
    },
    /// Bounded equivalence oracle (default --max-degree 9). With two words,
    /// query them; without, cross-check against normal forms (defaults
    /// --max-len 3 --max-index 2).
    Oracle { words: Vec<String> },
    /// Is every adjunction between monoids an isomorphism?
    Answer,
}

struct Out<'a> {
    json: bool,
    w: &'a mut dyn Write,
}

impl Out<'_> {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.w, "{}", text.as_ref());
    }

    fn text(&mut self, text: impl AsRef<str>) {
        let _ = write!(self.w, "{}", text.as_ref());
    }

    fn record(&mut self, value: &impl Serialize) {
        let line = serde_json::to_string(value).expect("records serialize");
        self.line(line);
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Word(#[from] ParseError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Usage(&'static str),
}

fn word(text: &str) -> Result<Word, ParseError> {
    text.parse()
}

fn identity_report(out: &mut Out<'_>, report: &IdentityReport) {
    if out.json {
        for check in &report.checks {
            out.record(check);
        }
    } else {
        out.text(report.render());
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut buffer = Vec::new();
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&cli, &mut buffer)),
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
        },
        None => execute(&cli, &mut buffer),
    };
    let _ = stdout.write_all(&buffer);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, stdout: &mut Vec<u8>) -> Result<i32, CliError> {
    let mut out = Out {
        json: cli.json,
        w: stdout,
    };
    match &cli.command {
        Command::Normalize { words } => {
            let parsed = words
                .iter()
                .map(|t| word(t))
                .collect::<Result<Vec<_>, _>>()?;
            for w in parsed {
                let nf = normalize(&w);
                if out.json {
                    out.record(&json!({ "input": w, "normal_form": nf }));
                } else {
                    out.line(nf.to_string());
                }
            }
        }
        Command::Trace { word: text } => {
            let trace = normalize_trace(&word(text)?);
            if out.json {
                out.record(&trace.to_record());
            } else {
                out.text(trace.render());
            }
        }
        Command::Eq { u, v } => {
            let (u, v) = (word(u)?, word(v)?);
            let (nu, nv) = (normalize(&u), normalize(&v));
            let equal = nu == nv;
            if out.json {
                out.record(&json!({ "u": u, "v": v, "u_nf": nu, "v_nf": nv, "equal": equal }));
            } else {
                out.line(if equal { "equal" } else { "not-equal" });
            }
        }
        Command::Mul { words } => {
            let parsed = words
                .iter()
                .map(|t| word(t))
                .collect::<Result<Vec<_>, _>>()?;
            let product = parsed
                .iter()
                .fold(Element::identity(), |acc, w| acc.mul(&Element::new(w)));
            if out.json {
                out.record(&json!({ "factors": parsed, "product": product }));
            } else {
                out.line(product.to_string());
            }
        }
        Command::F { word: text, power } => {
            let w = word(text)?;
            let image = Element::new(&w).apply_f_pow(*power);
            if out.json {
                out.record(&json!({ "input": w, "power": power, "image": image }));
            } else {
                out.line(image.to_string());
            }
        }
        Command::Degree { word: text } => {
            let w = word(text)?;
            let degree = w.degree();
            if out.json {
                out.record(&json!({ "input": w, "degree": degree.to_string() }));
            } else {
                out.line(degree.to_string());
            }
        }
        Command::Axioms => {
            let report = check_axioms(cli.max_len.unwrap_or(4), cli.max_index.unwrap_or(3));
            identity_report(&mut out, &report);
            return Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL });
        }
        Command::Ncheck {
            words,
            search_bound,
        } => {
            let parsed = words
                .iter()
                .map(|t| word(t))
                .collect::<Result<Vec<_>, _>>()?;
            let report = check_n_closure(cli.max_len.unwrap_or(3), cli.max_index.unwrap_or(2));
            identity_report(&mut out, &report);
            for w in parsed {
                let element = Element::new(&w);
                let membership = in_n(&element, *search_bound);
                if out.json {
                    out.record(&json!({ "element": element, "membership": membership }));
                } else {
                    match membership {
                        Membership::Member { witness } => {
                            out.line(format!("in-N {element}  yes, witness m={witness}"))
                        }
                        Membership::NotFoundWithin { bound } => {
                            out.line(format!("in-N {element}  no witness of degree <= {bound}"))
                        }
                    }
                }
            }
            return Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL });
        }
        Command::Prop3 => {
            let conditions = iso_conditions();
            if out.json {
                out.record(&conditions);
            } else {
                out.text(conditions.render());
            }
            return Ok(if conditions.consistent() {
                EXIT_OK
            } else {
                EXIT_FAIL
            });
        }
        Command::Audit {
            samples,
            seed,
            term_max_len,
            term_max_index,
        } => {
            let options = AuditOptions {
                disjoint_samples: *samples,
                seed: *seed,
            };
            let confluence = audit_local_confluence(cli.max_index.unwrap_or(6), options);
            let termination = audit_termination(*term_max_len, *term_max_index);
            if out.json {
                for row in &confluence.rows {
                    out.record(row);
                }
                out.record(&json!({
                    "local_confluence": if confluence.passed() { "PASS" } else { "FAIL" },
                    "not_instantiated": confluence.not_instantiated,
                    "failures": confluence.failures,
                    "scan_mismatches": confluence.scan_mismatches,
                    "partition_violations": confluence.partition_violations,
                }));
                out.record(&termination);
            } else {
                out.text(confluence.render());
                out.text(termination.render());
            }
            let ok = confluence.passed() && termination.passed();
            return Ok(if ok { EXIT_OK } else { EXIT_FAIL });
        }
        Command::Oracle { words } => {
            let max_degree = cli.max_degree.unwrap_or(9);
            match words.as_slice() {
                [u, v] => {
                    let (u, v) = (word(u)?, word(v)?);
                    let answer = Oracle::new(max_degree).equivalent(&u, &v)?;
                    if out.json {
                        out.record(
                            &json!({ "u": u, "v": v, "max_degree": max_degree, "answer": answer }),
                        );
                    } else {
                        out.line(match answer {
                            OracleAnswer::Equivalent => "equivalent".to_string(),
                            OracleAnswer::NotEquivalentWithinBound { truncated } => format!(
                                "not-equivalent-within-bound{}",
                                if truncated {
                                    " (search truncated by degree bound)"
                                } else {
                                    ""
                                }
                            ),
                        });
                    }
                }
                [] => {
                    let report = cross_check_oracle(
                        cli.max_len.unwrap_or(3),
                        cli.max_index.unwrap_or(2),
                        max_degree,
                    );
                    if out.json {
                        out.record(&report);
                    } else {
                        out.text(report.render());
                        for d in &report.discrepancies {
                            out.line(format!(
                                "discrepancy: {} ~ {}: oracle {:?}, normal forms equal {}",
                                d.u, d.v, d.oracle, d.normal_forms_equal
                            ));
                        }
                    }
                    return Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL });
                }
                _ => return Err(CliError::Usage("oracle takes zero or two words")),
            }
        }
        Command::Answer => {
            let verdict = answer_open_question();
            let audit = audit_local_confluence(cli.max_index.unwrap_or(6), AuditOptions::default());
            let certified = audit.passed();
            if out.json {
                out.record(&json!({
                    "verdict": verdict.outcome,
                    "witness": verdict.witness,
                    "witness_trace": verdict.witness_trace.to_record(),
                    "counit_trace": verdict.counit_trace.to_record(),
                    "eta_eps_idempotent": verdict.eta_eps_idempotent,
                    "conditions": verdict.conditions,
                    "confluence_audit": if certified { "PASS" } else { "FAIL" },
                }));
            } else {
                out.text(verdict.render());
                out.text(verdict.witness_trace.render());
                out.line(format!(
                    "confluence audit (max index {})  {}",
                    audit.max_index,
                    if certified { "PASS" } else { "FAIL" }
                ));
            }
            let ok =
                certified && verdict.outcome == Outcome::NotIso && verdict.conditions.consistent();
            return Ok(if ok { EXIT_OK } else { EXIT_FAIL });
        }
    }
    Ok(EXIT_OK)
}
