//! Command-line interface of the `wid` binary.

mod parse;
mod report;

pub use parse::{format_expr, parse_expr, parse_poly, parse_word, ExprAst, VarKind};
pub use report::{Outcome, Report};

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::clifford::FormParams;
use crate::error::{Error, Result};
use crate::freealg::{standard_poly, Gen, DEFAULT_MAX_DEGREE};
use crate::pairs::{evaluate_at_basis, is_weak_identity_capped, PairTarget, Verdict};
use crate::scalars::Rational;
use crate::structure::{
    self, factor_through_standard, minimal_diagrams, FactorOutput, Partition, RankOptions,
    DEFAULT_RANK_CAP, DEFAULT_SEEDS, HARD_RANK_CAP,
};

#[derive(Parser, Debug)]
#[command(
    name = "wid",
    version,
    about = "Weak polynomial identities of Clifford algebras"
)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest polynomial degree accepted by identity checks.
    #[arg(long, global = true, env = "WID_MAX_DEGREE", default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: usize,
    /// Specialization seeds for generic ranks.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = DEFAULT_SEEDS)]
    pub seeds: Vec<u64>,
    /// Also compute ranks by fraction-free elimination over the symbolic form.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Permit rank computations in degree 7.
    #[arg(long, global = true)]
    pub allow_degree_7: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether an expression is a weak identity.
    Check {
        /// `clifford:<k>` or `m2`.
        #[arg(long)]
        pair: String,
        /// Explicit nonzero Gram values `q1,q2,...` instead of symbolic ones.
        #[arg(long, value_delimiter = ',')]
        form: Option<Vec<String>>,
        expr: String,
    },
    /// Rank of the degree-n multilinear evaluation map.
    Dim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pair: String,
    },
    /// Dimension of the degree-n multilinear consequences of generators.
    Span {
        #[arg(long)]
        n: usize,
        /// Generators separated by `;`.
        #[arg(long)]
        gens: String,
    },
    /// Compare consequences of [x1^2,x2] with all identities of C_n.
    Theorem1 {
        #[arg(long)]
        n: usize,
    },
    /// Compare consequences of [x1^2,x2] and S_{k+1} with all identities of C_k.
    Corollary1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Coefficients of y inserted into the standard polynomial.
    Lemma2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Write x1 Y x2 - x2 Y x1 through [x1,x2].
    Lemma1 {
        #[arg(long)]
        n: usize,
    },
    /// Factor an alternating sum with interleaved words through S_n.
    Factor {
        #[arg(long)]
        n: usize,
        /// n-1 words separated by `,`; `y<j>` letters are x_{n+j}.
        #[arg(long, allow_hyphen_values = true)]
        ys: String,
    },
    /// The standard polynomial and its value at e1..en.
    Standard {
        #[arg(long)]
        n: usize,
    },
    /// Young diagram utilities.
    Diagrams {
        #[command(subcommand)]
        action: DiagramAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum DiagramAction {
    /// Inclusion-minimal diagrams of a `;`-separated list such as `2,1;3,1`.
    Min { set: String },
}

/// Result of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                CliOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                CliOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => CliOutput {
            code: report.outcome.exit_code(),
            stdout: if cli.json {
                report.to_json() + "\n"
            } else {
                report.to_text()
            },
            stderr: String::new(),
        },
        Err(e) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let out = run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}

fn parse_pair(s: &str, form: Option<&[String]>) -> Result<PairTarget> {
    let s = s.trim();
    if s == "m2" {
        if form.is_some() {
            return Err(Error::InvalidArgument(
                "--form applies to Clifford pairs only".into(),
            ));
        }
        return Ok(PairTarget::Matrix);
    }
    let k = s
        .strip_prefix("clifford:")
        .and_then(|k| k.parse::<usize>().ok())
        .ok_or_else(|| {
            Error::InvalidArgument(format!("unknown pair {s:?}; use clifford:<k> or m2"))
        })?;
    match form {
        None => PairTarget::clifford(k),
        Some(values) => {
            let values = values
                .iter()
                .map(|v| parse_rational(v))
                .collect::<Result<Vec<_>>>()?;
            if values.len() != k {
                return Err(Error::DimensionMismatch(values.len(), k));
            }
            Ok(PairTarget::Clifford(FormParams::explicit(values)?))
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let p = parse_poly(s)?;
    if p.degree() > 0 || p.len() > 1 {
        return Err(Error::InvalidArgument(format!(
            "{s:?} is not a rational number"
        )));
    }
    Ok(p.coeff(&crate::freealg::Word::empty()))
}

fn rank_options(cli: &Cli) -> RankOptions {
    let cap = if cli.allow_degree_7 {
        HARD_RANK_CAP
    } else {
        DEFAULT_RANK_CAP
    };
    RankOptions {
        max_degree: cap.min(cli.max_degree),
        seeds: cli.seeds.clone(),
        exact: cli.exact,
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let start = Instant::now();
    let mut inputs = BTreeMap::new();
    let mut seeds = Vec::new();
    let opts = rank_options(cli);
    let outcome = match &cli.command {
        Command::Check { pair, form, expr } => {
            inputs.insert("pair".into(), pair.clone());
            inputs.insert("expr".into(), expr.clone());
            if let Some(f) = form {
                inputs.insert("form".into(), f.join(","));
            }
            let target = parse_pair(pair, form.as_deref())?;
            let f = parse_poly(expr)?;
            match is_weak_identity_capped(&f, &target, cli.max_degree)? {
                Verdict::Holds => Outcome::Holds,
                Verdict::Fails(w) => Outcome::Witness {
                    component: w.component.to_string(),
                    assignment: w
                        .assignment
                        .iter()
                        .map(|(g, e)| (format!("x{g}"), e.to_string()))
                        .collect(),
                    value: w.value.to_string(),
                },
            }
        }
        Command::Dim { n, pair } => {
            inputs.insert("n".into(), n.to_string());
            inputs.insert("pair".into(), pair.clone());
            let report = structure::evaluation_kernel(*n, &parse_pair(pair, None)?, &opts)?;
            seeds = report.seeds.clone();
            Outcome::Rank { report }
        }
        Command::Span { n, gens } => {
            inputs.insert("n".into(), n.to_string());
            inputs.insert("gens".into(), gens.clone());
            let gens = gens
                .split(';')
                .filter(|g| !g.trim().is_empty())
                .map(parse_poly)
                .collect::<Result<Vec<_>>>()?;
            Outcome::Rank {
                report: structure::consequence_span_dim(*n, &gens, &opts)?,
            }
        }
        Command::Theorem1 { n } => {
            inputs.insert("n".into(), n.to_string());
            let report = structure::central_square_generation_check(*n, &opts)?;
            seeds = report.kernel.seeds.clone();
            Outcome::Generation { report }
        }
        Command::Corollary1 { n, k } => {
            inputs.insert("n".into(), n.to_string());
            inputs.insert("k".into(), k.to_string());
            let report = structure::clifford_generation_check(*n, *k, &opts)?;
            seeds = report.kernel.seeds.clone();
            Outcome::Generation { report }
        }
        Command::Lemma2 { n, k } => {
            inputs.insert("n".into(), n.to_string());
            inputs.insert("k".into(), k.to_string());
            let rec = structure::insertion_coeffs(*n, *k)?;
            let ev = structure::insertion_coeffs_by_evaluation(*n, *k)?;
            Outcome::Coefficients {
                n: *n,
                k: *k,
                agree: rec == ev,
                alpha: rec.alpha.to_string(),
                beta: rec.beta.to_string(),
                evaluated_alpha: ev.alpha.to_string(),
                evaluated_beta: ev.beta.to_string(),
            }
        }
        Command::Lemma1 { n } => {
            inputs.insert("n".into(), n.to_string());
            let pairs = structure::swap_decomposition(*n)?;
            let defect = structure::swap_decomposition_defect(*n, &pairs);
            let target = PairTarget::clifford(*n + 2)?;
            let defect_vanishes =
                defect.is_zero() || is_weak_identity_capped(&defect, &target, *n + 2)?.holds();
            Outcome::Decomposition {
                pairs: pairs
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
                defect_vanishes,
            }
        }
        Command::Factor { n, ys } => {
            inputs.insert("n".into(), n.to_string());
            inputs.insert("ys".into(), ys.clone());
            let words = ys
                .split(',')
                .map(|w| parse_word(w, *n as Gen))
                .collect::<Result<Vec<_>>>()?;
            let f = factor_through_standard(*n, &words)?;
            let (two_sided, right_factor) = match &f.output {
                FactorOutput::TwoSided(t) => (
                    t.iter()
                        .map(|(c, d, e)| (c.to_string(), d.to_string(), e.to_string()))
                        .collect(),
                    None,
                ),
                FactorOutput::RightFactor(d) => (Vec::new(), Some(d.to_string())),
            };
            Outcome::Factorization {
                alternating_sum: f.alternating_sum.to_string(),
                two_sided,
                right_factor,
                verified: true,
            }
        }
        Command::Standard { n } => {
            inputs.insert("n".into(), n.to_string());
            let s = standard_poly(*n)?;
            let q = FormParams::symbolic(*n)?;
            let assign = (1..=*n).map(|i| (i as Gen, i)).collect();
            let value = evaluate_at_basis(&s, &q, &assign)?;
            Outcome::Standard {
                polynomial: s.to_string(),
                value_at_basis: value.to_string(),
            }
        }
        Command::Diagrams {
            action: DiagramAction::Min { set },
        } => {
            inputs.insert("set".into(), set.clone());
            let parts = set
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(str::parse::<Partition>)
                .collect::<Result<Vec<_>>>()?;
            Outcome::Diagrams {
                minimal: minimal_diagrams(&parts)
                    .iter()
                    .map(Partition::to_string)
                    .collect(),
            }
        }
    };
    Ok(Report {
        command: command_name(&cli.command).to_string(),
        inputs,
        outcome,
        timing_us: start.elapsed().as_micros() as u64,
        seeds,
    })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Dim { .. } => "dim",
        Command::Span { .. } => "span",
        Command::Theorem1 { .. } => "theorem1",
        Command::Corollary1 { .. } => "corollary1",
        Command::Lemma2 { .. } => "lemma2",
        Command::Lemma1 { .. } => "lemma1",
        Command::Factor { .. } => "factor",
        Command::Standard { .. } => "standard",
        Command::Diagrams { .. } => "diagrams",
    }
}
