//! `csr`: committee scoring rules over exact rationals — scoring, ranking,
//! pairwise comparison, axiom checking, Johnson-graph paths, symmetric
//! kernel bases, and scoring-function recovery from comparison oracles.
//!
//! Output is deterministic for identical inputs and seeds; every sampling
//! subcommand requires an explicit seed.

use std::cmp::Ordering;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use csr_core::axioms::{run_suite, RuleOracle, SuiteConfig, Verdict};
use csr_core::combinat::{johnson_path, johnson_path_restricted};
use csr_core::error::Error;
use csr_core::linalg::{alpha, kernel_basis_symmetric_with_limit, verify_symmetric_situation};
use csr_core::model::{default_name, Committee};
use csr_core::profile_fmt::{parse_profile, serialize_with_default_names, NameTable};
use csr_core::rational::format_rational;
use csr_core::recovery::{recover_scoring, GaugeSearch};
use csr_core::scoring::{BuiltinRule, CommitteeScoringFunction};

const FORMATS_HELP: &str = "\
FILE FORMATS

Profile (UTF-8 text):
  # comment lines start with '#'
  m=<int> k=<int>
  <count>: <name> > <name> > ...
The first non-comment line is the header. Each following line gives one
linear order with its multiplicity; <count> is an integer or a p/q rational,
possibly negative. Names are whitespace-free tokens. The candidate universe
is the union of names in order of first appearance and must contain exactly
m names.

Scoring table TSV (--rule table:<path>, and written by `recover`):
  m<TAB>k
  <p1,p2,...><TAB><rational>
One row per sorted committee position set in [m] choose k.

Decision table TSV:
  m<TAB>k<TAB>s
  <I1><TAB><I2><TAB><rational>
Rows carry only pairs with I1 < I2 lexicographically; antisymmetry implies
the rest.

EXIT CODES
  0   success (for `axioms`: all checks passed)
  1   runtime failure (for `axioms`: at least one axiom failed)
  2   usage error, or (for `axioms`) inconclusive checks only
  3   input parse error
  4   enumeration cap exceeded
  20/21/22  `compare` verdict: C2 wins / tie / C1 wins";

#[derive(Parser)]
#[command(name = "csr", version, about = "Committee scoring rules: evaluate, check axioms, recover scoring functions", after_long_help = FORMATS_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct RuleArg {
    /// Rule: sntv | bloc | k-borda | cc | pav:`<t>` | table:`<path>`
    #[arg(long)]
    rule: String,
}

#[derive(Subcommand)]
enum Command {
    /// Exact score of one committee under a rule on a profile
    Score {
        #[command(flatten)]
        rule: RuleArg,
        /// Profile file path
        #[arg(long)]
        profile: PathBuf,
        /// Committee as comma-separated candidate names
        #[arg(long)]
        committee: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// All committees ranked best-to-worst; equal scores share a class
    Rank {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        profile: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Pairwise comparison; the exit code encodes the verdict (20/21/22)
    Compare {
        #[command(flatten)]
        rule: RuleArg,
        #[arg(long)]
        profile: PathBuf,
        /// First committee (comma-separated names)
        #[arg(long)]
        c1: String,
        /// Second committee (comma-separated names)
        #[arg(long)]
        c2: String,
    },
    /// Run the axiom suite and emit a JSON report (exit 0/1/2)
    Axioms {
        /// Rule: builtins, table:`<path>`, or the controls leximax | majority
        #[arg(long)]
        rule: String,
        #[arg(long)]
        m: u8,
        #[arg(long)]
        k: u8,
        /// Sampling seed (mandatory; there is no hidden entropy)
        #[arg(long)]
        seed: u64,
        /// Sampled instances per checker when a space is too large
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, default_value_t = 3)]
        max_voters: u32,
        /// Continuity witness bound
        #[arg(long, default_value_t = 1000)]
        n_max: u32,
        /// Largest replication factor for homogeneity-style checks
        #[arg(long, default_value_t = 3)]
        ell_max: u32,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hamiltonian path in the Johnson graph; one position set per line
    Johnson {
        /// Subset size
        #[arg(long)]
        j: u8,
        /// Ground set size
        #[arg(long)]
        p: u8,
        /// Restrict to subsets with an element smaller than r
        #[arg(long)]
        r: Option<u8>,
    },
    /// Symmetric kernel basis for a pair of adjacent committees
    KernelBasis {
        #[arg(long)]
        m: u8,
        #[arg(long)]
        k: u8,
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        /// Re-verify every element before printing
        #[arg(long)]
        verify: bool,
        /// Candidate-count limit override
        #[arg(long, default_value_t = 6)]
        limit: u8,
        /// Write the JSON summary here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover a scoring table from a comparison oracle
    Recover {
        /// Oracle: builtins, table:`<path>`, or majority
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        m: u8,
        #[arg(long)]
        k: u8,
        /// Numerator/denominator bound for the threshold search
        #[arg(long, default_value_t = 64)]
        bound: u64,
        /// Seed for the verification sample (mandatory)
        #[arg(long)]
        seed: u64,
        /// Seeded situations used for verification
        #[arg(long, default_value_t = 200)]
        verify_situations: usize,
        /// Write the recovered table TSV here
        #[arg(long)]
        out: PathBuf,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Parse { .. } => 3,
        Error::ResourceCap(_) => 4,
        _ => 1,
    }
}

fn load_scoring(spec: &str, m: u8, k: u8) -> Result<CommitteeScoringFunction, Error> {
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("cannot read {path}: {e}"),
        })?;
        let table = CommitteeScoringFunction::from_tsv(&text)?;
        if !table.is_canonical() {
            eprintln!(
                "warning: table violates dominance-monotonicity; accepted as a non-canonical rule"
            );
        }
        if table.m() != m || table.k() != k {
            return Err(Error::DimensionMismatch(format!(
                "table is for m={} k={}, expected m={m} k={k}",
                table.m(),
                table.k()
            )));
        }
        Ok(table)
    } else {
        let rule = BuiltinRule::from_name(spec, None)?;
        CommitteeScoringFunction::builtin(rule, m, k)
    }
}

fn load_oracle(spec: &str, m: u8, k: u8) -> Result<RuleOracle, Error> {
    match spec {
        "leximax" => Ok(RuleOracle::leximax(m, k)),
        "majority" => {
            if k != 1 {
                return Err(Error::InvalidParameter(
                    "the majority oracle is defined for k = 1".into(),
                ));
            }
            RuleOracle::majority(m)
        }
        other => Ok(RuleOracle::from_scoring(load_scoring(other, m, k)?)),
    }
}

fn read_profile(path: &PathBuf) -> Result<csr_core::profile_fmt::ParsedProfile, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_profile(&text)
}

fn resolve_committee(names: &NameTable, spec: &str) -> Result<Committee, Error> {
    Committee::new(names.resolve_committee(spec)?)
}

fn committee_display(names: &NameTable, committee: &Committee) -> String {
    committee
        .members()
        .iter()
        .map(|&c| names.name(c).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct AxiomsCliReport<'a> {
    verdict: Verdict,
    #[serde(flatten)]
    outcome: &'a csr_core::axioms::SuiteOutcome,
}

#[derive(Serialize)]
struct KernelCliReport {
    m: u8,
    k: u8,
    c1: String,
    c2: String,
    element_count: usize,
    b1_count: Option<usize>,
    b2_count: Option<usize>,
    verified: bool,
}

#[derive(Serialize)]
struct RecoverCliReport {
    oracle: String,
    m: u8,
    k: u8,
    bound: u64,
    seed: u64,
    trivial: bool,
    gauge: Option<(Vec<u8>, Vec<u8>)>,
    reference_position: Vec<u8>,
    residuals_checked: usize,
    nonzero_residuals: usize,
    verification: csr_core::recovery::VerificationReport,
    table_path: String,
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Score {
            rule,
            profile,
            committee,
            format,
        } => {
            let parsed = read_profile(&profile)?;
            let lambda = load_scoring(&rule.rule, parsed.situation.m(), parsed.k)?;
            let c = resolve_committee(&parsed.names, &committee)?;
            let score = lambda.committee_score(&c, &parsed.situation)?;
            match format {
                OutputFormat::Text => println!("{}", format_rational(&score)),
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::json!({
                        "committee": committee_display(&parsed.names, &c),
                        "score": format_rational(&score),
                    })
                ),
            }
            Ok(0)
        }
        Command::Rank {
            rule,
            profile,
            format,
        } => {
            let parsed = read_profile(&profile)?;
            let lambda = load_scoring(&rule.rule, parsed.situation.m(), parsed.k)?;
            let order = lambda.rank_committees(&parsed.situation)?;
            match format {
                OutputFormat::Text => {
                    for (index, (score, class)) in order.classes().iter().enumerate() {
                        let members: Vec<String> = class
                            .iter()
                            .map(|c| committee_display(&parsed.names, c))
                            .collect();
                        println!(
                            "{}. [{}] {}",
                            index + 1,
                            format_rational(score),
                            members.join("  ")
                        );
                    }
                }
                OutputFormat::Json => {
                    let classes: Vec<serde_json::Value> = order
                        .classes()
                        .iter()
                        .map(|(score, class)| {
                            serde_json::json!({
                                "score": format_rational(score),
                                "committees": class
                                    .iter()
                                    .map(|c| committee_display(&parsed.names, c))
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::json!({ "classes": classes }));
                }
            }
            Ok(0)
        }
        Command::Compare {
            rule,
            profile,
            c1,
            c2,
        } => {
            let parsed = read_profile(&profile)?;
            let lambda = load_scoring(&rule.rule, parsed.situation.m(), parsed.k)?;
            let first = resolve_committee(&parsed.names, &c1)?;
            let second = resolve_committee(&parsed.names, &c2)?;
            let verdict = lambda.compare(&first, &second, &parsed.situation)?;
            let (text, code) = match verdict {
                Ordering::Less => ("C2 ≻ C1", 20),
                Ordering::Equal => ("C1 = C2", 21),
                Ordering::Greater => ("C1 ≻ C2", 22),
            };
            println!("{text}");
            Ok(code)
        }
        Command::Axioms {
            rule,
            m,
            k,
            seed,
            budget,
            max_voters,
            n_max,
            ell_max,
            out,
        } => {
            let oracle = load_oracle(&rule, m, k)?;
            let mut config = SuiteConfig::new(seed);
            config.budget = budget;
            config.max_voters = max_voters;
            config.n_max = n_max;
            config.ell_max = ell_max;
            let outcome = run_suite(&oracle, &config)?;
            let verdict = outcome.verdict();
            let report = AxiomsCliReport {
                verdict,
                outcome: &outcome,
            };
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::InternalCheck(e.to_string()))?;
            emit(&out, &json)?;
            Ok(match verdict {
                Verdict::Pass => 0,
                Verdict::Fail => 1,
                Verdict::Inconclusive => 2,
            })
        }
        Command::Johnson { j, p, r } => {
            let path = match r {
                None => johnson_path(j, p)?,
                Some(r) => johnson_path_restricted(j, p, r)?,
            };
            for position in path {
                let cells: Vec<String> = position.positions().iter().map(u8::to_string).collect();
                println!("{}", cells.join(","));
            }
            Ok(0)
        }
        Command::KernelBasis {
            m,
            k,
            c1,
            c2,
            verify,
            limit,
            out,
        } => {
            let names = NameTable::default_for(m);
            let first = resolve_committee(&names, &c1)?;
            let second = resolve_committee(&names, &c2)?;
            if first.k() != k || second.k() != k {
                return Err(Error::DimensionMismatch(format!(
                    "committees must have size k={k}"
                )));
            }
            let basis = kernel_basis_symmetric_with_limit(m, &first, &second, limit)?;
            let mut verified = true;
            for (index, element) in basis.elements.iter().enumerate() {
                if verify {
                    verified &= verify_symmetric_situation(element, &first, &second)?
                        && alpha(&first, &second, &element.situation)?.is_zero();
                }
                let walk: Vec<String> = element
                    .committees
                    .iter()
                    .map(|f| committee_display(&names, f))
                    .collect();
                let sigma: Vec<String> = (1..=m)
                    .map(|c| {
                        format!(
                            "{}->{}",
                            default_name(c),
                            default_name(element.sigma.image(c))
                        )
                    })
                    .collect();
                println!("# element {} sigma: {}", index + 1, sigma.join(" "));
                println!("# committee walk: {}", walk.join(" -> "));
                print!("{}", serialize_with_default_names(&element.situation, k));
                println!();
            }
            let report = KernelCliReport {
                m,
                k,
                c1,
                c2,
                element_count: basis.elements.len(),
                b1_count: basis.b1_count,
                b2_count: basis.b2_count,
                verified: !verify || verified,
            };
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::InternalCheck(e.to_string()))?;
            emit(&out, &json)?;
            Ok(0)
        }
        Command::Recover {
            oracle,
            m,
            k,
            bound,
            seed,
            verify_situations,
            out,
        } => {
            let rule_oracle = load_oracle(&oracle, m, k)?;
            let outcome = recover_scoring(&rule_oracle, bound, seed, verify_situations)?;
            std::fs::write(&out, outcome.scoring.lambda.to_tsv()).map_err(|e| {
                Error::InvalidParameter(format!("cannot write {}: {e}", out.display()))
            })?;
            let nonzero = outcome.scoring.nonzero_residuals();
            let report = RecoverCliReport {
                oracle,
                m,
                k,
                bound,
                seed,
                trivial: outcome.gauge == GaugeSearch::Trivial,
                gauge: match &outcome.gauge {
                    GaugeSearch::Found(g) => Some((
                        g.i1_star.positions().to_vec(),
                        g.i2_star.positions().to_vec(),
                    )),
                    GaugeSearch::Trivial => None,
                },
                reference_position: outcome.scoring.normalization.reference_position.clone(),
                residuals_checked: outcome.scoring.residuals.len(),
                nonzero_residuals: nonzero,
                verification: outcome.verification,
                table_path: out.display().to_string(),
            };
            let json = serde_json::to_string_pretty(&report)
                .map_err(|e| Error::InternalCheck(e.to_string()))?;
            println!("{json}");
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(exit_code_for(&error))
        }
    }
}
