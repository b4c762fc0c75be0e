//! `pmscheme` command line: JSON results on stdout, a one-line summary on
//! stderr, and exit codes 0 (pass), 1 (fail), 2 (usage), 3 (capacity or
//! inconclusive).

pub mod acceptance;
pub mod cache;
pub mod compute;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write as _;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use pmscheme::combinat::double_factorial;
use pmscheme::ekr::{
    clique_projection, small_value_matrix, solve_weight_coefficients, target_row_sum, verify_main_theorem,
    verify_weighted_matrix,
};
use pmscheme::geometry::{build_clique, develop_plane, lemma_lines_with_zero, singer_difference_set, verify_oval};
use pmscheme::matchings::{enumerate_matchings, intersection_size, ENUMERATION_CAP};
use pmscheme::quotient::{conjecture_check, extract_eigenvalues, standard_chain, CharacterTable};
use pmscheme::scheme::{bose_mesner_checks, classes, ClassTable, DENSE_CAP};
use pmscheme::{linalg, rational, Error, Execution, IntegerPartition};

use crate::cache::Cache;

#[derive(Parser, Debug)]
#[command(name = "pmscheme", version, about = "Exact computations in the perfect-matching scheme of K_2k")]
struct Cli {
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Count (and optionally list) the perfect matchings of K_2k.
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        list: bool,
    },
    /// Classes of the scheme with their degrees.
    Scheme {
        #[arg(long)]
        k: usize,
        /// Also verify the Bose-Mesner identities densely (k <= 5).
        #[arg(long)]
        check: bool,
    },
    /// Quotient of a class matrix by the orbits of a Young subgroup, or the
    /// eigenvalue extraction along the standard chain.
    Quotient {
        #[arg(long)]
        k: usize,
        /// Class shape, e.g. 10,2.
        #[arg(long)]
        class: IntegerPartition,
        /// Young subgroup shape, e.g. 8,2,2.
        #[arg(long, required_unless_present = "chain")]
        subgroup: Option<IntegerPartition>,
        /// Extract module eigenvalues along [2k],[2k-2,2],[2k-4,4],[2k-6,6],[2k-4,2,2].
        #[arg(long, conflicts_with = "subgroup")]
        chain: bool,
    },
    /// Character table: full for k <= 5, the five-row partial table for k >= 6.
    CharTable {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        partial: bool,
    },
    /// Where each two-part row of the table takes its maximum.
    Conjecture {
        #[arg(long)]
        k: usize,
    },
    /// Singer difference set of PG(d, n) and its developed design.
    Singer {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// The clique of pairwise at-most-1-intersecting matchings on 2^a + 2 vertices.
    SingerClique {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Coefficients of the weighted adjacency matrix.
    WeightedMatrix {
        #[arg(long)]
        k: usize,
        /// The explicit small matrices (k in 3,4,5,7,8,9) instead of the solved ones.
        #[arg(long)]
        paper_small: bool,
    },
    /// Ratio-bound certificate for 2-intersecting families.
    VerifyEkr {
        #[arg(long)]
        k: usize,
    },
    /// Read a character table in the JSON format and validate it.
    ImportChartable { file: std::path::PathBuf },
    /// Run the acceptance suite.
    Selftest {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 3,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Value,
    pub outcome: Outcome,
    pub artifacts: Vec<String>,
    pub wall_time_seconds: f64,
}

struct Output {
    outcome: Outcome,
    summary: String,
    json: Value,
    artifacts: Vec<String>,
}

fn out(ok: bool, summary: impl Into<String>, json: impl Serialize) -> pmscheme::Result<Output> {
    Ok(Output {
        outcome: Outcome::from_bool(ok),
        summary: summary.into(),
        json: serde_json::to_value(json).map_err(|e| Error::Format(e.to_string()))?,
        artifacts: vec![],
    })
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Format(_) => 2,
        Error::Capacity { .. } | Error::Ambiguous { .. } | Error::IrrationalSpectrum { .. } => 3,
        _ => 1,
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    let name = command_name(&cli.command);
    let parameters = serde_json::to_value(&cli.command).unwrap_or(Value::Null);
    let start = Instant::now();
    match execute(cli.command, exec) {
        Ok(o) => {
            let report = RunReport {
                command: name.to_string(),
                parameters,
                outcome: o.outcome,
                artifacts: o.artifacts,
                wall_time_seconds: start.elapsed().as_secs_f64(),
            };
            // selftest reports on the run itself; other commands print their result.
            let json = if name == "selftest" {
                let mut v = serde_json::to_value(&report).unwrap_or(Value::Null);
                v["criteria"] = o.json["criteria"].clone();
                v
            } else {
                o.json
            };
            match serde_json::to_string_pretty(&json) {
                Ok(s) => {
                    // A closed pipe (e.g. `| head`) is not an error of the run.
                    let _ = writeln!(std::io::stdout().lock(), "{s}");
                }
                Err(e) => {
                    eprintln!("pmscheme {name}: could not serialize output: {e}");
                    return 1;
                }
            }
            let outcome = serde_json::to_value(report.outcome).unwrap_or(Value::Null);
            eprintln!(
                "pmscheme {name}: {} in {:.2} s. {}",
                outcome.as_str().unwrap_or("?"),
                report.wall_time_seconds,
                o.summary
            );
            report.outcome.exit_code()
        }
        Err(e) => {
            eprintln!("pmscheme {name}: {e}");
            error_code(&e)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate { .. } => "enumerate",
        Command::Scheme { .. } => "scheme",
        Command::Quotient { .. } => "quotient",
        Command::CharTable { .. } => "char-table",
        Command::Conjecture { .. } => "conjecture",
        Command::Singer { .. } => "singer",
        Command::SingerClique { .. } => "singer-clique",
        Command::WeightedMatrix { .. } => "weighted-matrix",
        Command::VerifyEkr { .. } => "verify-ekr",
        Command::ImportChartable { .. } => "import-chartable",
        Command::Selftest { .. } => "selftest",
    }
}

fn spectrum_json(spec: &[(rational::Rational, usize)]) -> Vec<(String, usize)> {
    spec.iter().map(|(v, m)| (rational::to_string(v), *m)).collect()
}

fn execute(command: Command, exec: Execution) -> pmscheme::Result<Output> {
    let cache = Cache::from_env();
    match command {
        Command::Enumerate { k, list } => {
            if k > ENUMERATION_CAP {
                return Err(Error::Capacity { what: "matchings enumerated".into(), limit: ENUMERATION_CAP as u64 });
            }
            let ms: Vec<String> = enumerate_matchings(k)?.map(|m| m.to_string()).collect();
            let count = ms.len();
            let ok = BigUint::from(count) == double_factorial(2 * k as i64 - 1)?;
            let mut j = json!({ "k": k, "count": count });
            if list {
                j["matchings"] = json!(ms);
            }
            out(ok, format!("{count} matchings of K_{}", 2 * k), j)
        }
        Command::Scheme { k, check } => {
            let cls = classes(k)?;
            let report = if check {
                if k > DENSE_CAP {
                    return Err(Error::Capacity { what: "dense scheme size k".into(), limit: DENSE_CAP as u64 });
                }
                Some(bose_mesner_checks(&ClassTable::build(k, exec)?, exec)?)
            } else {
                None
            };
            let total: BigUint = cls.iter().map(|c| c.degree.clone()).sum();
            let ok = total == double_factorial(2 * k as i64 - 1)?;
            let n = cls.len();
            out(
                ok,
                format!("{n} classes, degrees sum to {total}"),
                json!({ "k": k, "classes": cls, "bose_mesner": report }),
            )
        }
        Command::Quotient { k, class, subgroup, chain } => {
            if chain {
                let ex = extract_eigenvalues(k, &class, &standard_chain(k)?, exec)?;
                let n = ex.steps.len();
                return out(true, format!("{n} module eigenvalues extracted for A_{class}"), ex);
            }
            let subgroup = subgroup.expect("clap requires it without --chain");
            let q = compute::quotient(&cache, k, &class, &subgroup, exec)?;
            let spec = linalg::rational_spectrum(&q.entries, &format!("X_{class}/{subgroup}"))?;
            let size = q.size();
            out(
                true,
                format!("{size}x{size} quotient X_{class}/{subgroup}"),
                json!({ "quotient": q, "spectrum": spectrum_json(&spec) }),
            )
        }
        Command::CharTable { k, partial } => {
            let t = if partial || k > DENSE_CAP {
                compute::partial_table(&cache, k, exec)?
            } else {
                compute::full_table(&cache, k, exec)?
            };
            let ok = !t.is_full() || t.verify_orthogonality().is_ok();
            let filled = t.entries.iter().flatten().filter(|e| e.is_some()).count();
            let summary = format!("{}x{} table, {filled} entries known", t.modules.len(), t.classes.len());
            out(ok, summary, &t)
        }
        Command::Conjecture { k } => {
            let t = compute::full_table(&cache, k, exec)?;
            let r = conjecture_check(&t)?;
            let summary = r.rows.iter().map(|r| r.observation.clone()).collect::<Vec<_>>().join(" ");
            out(true, summary, r)
        }
        Command::Singer { n, d } => {
            let ds = singer_difference_set(n, d)?;
            let counts = ds.difference_counts();
            let ok_counts = counts[1..].iter().all(|&c| c == ds.lambda);
            let mut j = json!({ "difference_set": ds, "difference_counts_constant": ok_counts });
            let mut ok = ok_counts;
            if ds.lambda == 1 {
                let plane = develop_plane(&ds)?;
                let oval = ds.negated();
                let oval_check = verify_oval(&plane, &oval);
                j["plane"] = json!({ "points": plane.v, "order": plane.order, "lines": plane.lines.len() });
                j["oval"] = json!(oval_check);
                if n % 2 == 0 && d == 2 {
                    let lemma = lemma_lines_with_zero(&plane, &oval);
                    ok &= oval_check.is_oval && lemma.holds();
                    j["lines_through_zero"] = json!(lemma);
                }
            }
            out(ok, format!("difference set of size {} in Z_{}", ds.elements.len(), ds.v), j)
        }
        Command::SingerClique { a, verify } => {
            let c = build_clique(a, exec)?;
            let mut j = json!({ "clique": c });
            let mut ok = true;
            if verify {
                let pairwise =
                    c.matchings.iter().enumerate().all(|(i, p)| {
                        c.matchings[i + 1..].iter().all(|q| intersection_size(p, q).is_ok_and(|s| s <= 1))
                    });
                let expected = (2 * c.k as u64 - 1) * (2 * c.k as u64 - 3);
                ok = pairwise && c.matchings.len() as u64 == expected;
                j["pairwise_at_most_one"] = json!(pairwise);
                if c.k <= DENSE_CAP {
                    let proj = clique_projection(c.k, &c.matchings, exec)?;
                    ok &= proj.m_hat_psd && proj.forbidden.is_empty();
                    j["projection"] = json!(proj);
                }
            }
            out(ok, format!("{} matchings on K_{}", c.matchings.len(), 2 * c.k), j)
        }
        Command::WeightedMatrix { k, paper_small } => {
            let m = if paper_small { small_value_matrix(k)? } else { solve_weight_coefficients(k)?.matrix()? };
            let coefficients: BTreeMap<String, String> =
                m.terms.iter().map(|t| (t.shape.to_string(), rational::to_string(&t.coefficient))).collect();
            let row_sum = m.row_sum()?;
            let expected = target_row_sum(k);
            let summary = format!("{} row sum {}", m.name, rational::to_string(&row_sum));
            out(
                row_sum == expected,
                summary,
                json!({
                    "k": k,
                    "name": m.name,
                    "coefficients": coefficients,
                    "row_sum": rational::to_string(&row_sum),
                    "expected_row_sum": rational::to_string(&expected),
                }),
            )
        }
        Command::VerifyEkr { k } => {
            let expected = double_factorial(2 * k as i64 - 5)?;
            let expected = rational::big(num_bigint::BigInt::from(expected));
            let (cert, mut outcome, extra) = if k <= 5 {
                let r = verify_main_theorem(k, exec)?;
                let cert = r.certificate.clone().expect("always set");
                let mut ok = cert.bound == expected && cert.is_consistent();
                if let Some(a) = r.alpha {
                    ok &= rational::int(a as i64) == expected;
                }
                let outcome = if r.inconclusive { Outcome::Inconclusive } else { Outcome::from_bool(ok) };
                (cert, outcome, json!(r))
            } else {
                let r = verify_weighted_matrix(k, exec)?;
                let ok = r.valid && r.certificate.bound == expected;
                (r.certificate.clone(), Outcome::from_bool(ok), json!({ "notes": r.notes }))
            };
            if outcome == Outcome::Pass && !cert.tau_verified {
                outcome = Outcome::Inconclusive;
            }
            let summary = format!(
                "bound {} for v = {}, least eigenvalue {}{}",
                rational::to_string(&cert.bound),
                cert.v,
                rational::to_string(&cert.tau),
                if cert.tau_verified { "" } else { " (checked on the target modules only)" }
            );
            let mut j = serde_json::to_value(&cert).map_err(|e| Error::Format(e.to_string()))?;
            j["details"] = extra;
            let mut o = out(true, summary, j)?;
            o.outcome = outcome;
            Ok(o)
        }
        Command::ImportChartable { file } => {
            let src = std::fs::read_to_string(&file)
                .map_err(|e| Error::Format(format!("cannot read {}: {e}", file.display())))?;
            let t = CharacterTable::from_json(&src)?;
            let summary = format!(
                "{}x{} table for k = {}, {}",
                t.modules.len(),
                t.classes.len(),
                t.k,
                if t.is_full() { "full and orthogonal" } else { "partial" }
            );
            let mut o = out(true, summary, &t)?;
            o.artifacts.push(file.display().to_string());
            Ok(o)
        }
        Command::Selftest { only } => {
            let ctx = acceptance::Ctx { cache: cache.clone(), exec };
            let results: Vec<_> = if only.is_empty() {
                acceptance::run_all(&ctx, |r| eprintln!("{}", r.line()))
            } else {
                only.iter()
                    .map(|&id| {
                        acceptance::run_criterion(&ctx, id)
                            .ok_or_else(|| Error::Domain(format!("no criterion {id}")))
                            .inspect(|r| eprintln!("{}", r.line()))
                    })
                    .collect::<pmscheme::Result<_>>()?
            };
            let passed = results.iter().filter(|r| r.passed).count();
            let mut o = out(
                passed == results.len(),
                format!("{passed}/{} criteria passed", results.len()),
                json!({ "criteria": results }),
            )?;
            o.artifacts.extend(cache.dir().map(|d| d.display().to_string()));
            Ok(o)
        }
    }
}
