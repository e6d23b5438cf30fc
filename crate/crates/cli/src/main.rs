//! The `tsirelson` binary: exact norm evaluation, Schreier families,
//! repeated averages, derived constructions, and verification suites.
//!
//! Output is buffered and printed only on success (or with a complete
//! suite report); exit codes: 0 success, 1 computation error or a failing
//! verification suite, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::{Signed, Zero};
use serde_json::json;

use tsirelson_cli::io::{
    load_vector, parse_ordinal_flag, parse_rational_flag, parse_rational_list, parse_stream_spec,
    parse_u64_list, resolve_budget, vector_to_file, CliError,
};
use tsirelson_cli::report::render_report;
use tsirelson_cli::suites;

use tsirelson_core::averages::{largeness_witness, repeated_average, verify_subsequence_identity};
use tsirelson_core::constructions::{
    distance_in_distribution, estimate_spreading_model, l1m_average_block, mixing_curve,
    solve_mixing_target, witness_vector, BlockBasisSpec, DEFAULT_SUPPORT_BUDGET,
};
use tsirelson_core::norms::{self, implicit, spreading_norm, NormSpec, TruncatedInner};
use tsirelson_core::rat::{decimal_approx, format_rational, Rational};
use tsirelson_core::schreier::{FiniteSet, SchreierCtx};
use tsirelson_core::stream::{IndexStream, DEFAULT_ELEMENT_BUDGET};

const ELEMENT_BUDGET_ENV: &str = "TSIRELSON_ELEMENT_BUDGET";
const SUPPORT_BUDGET_ENV: &str = "TSIRELSON_SUPPORT_BUDGET";
const DECIMAL_DIGITS: u32 = 12;

#[derive(Parser)]
#[command(
    name = "tsirelson",
    version,
    about = "Exact-arithmetic norms, Schreier families, repeated averages, and verification suites"
)]
struct Cli {
    /// Seed for the randomized parts of verification suites
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    /// Stream element budget (falls back to TSIRELSON_ELEMENT_BUDGET, then 100000)
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,
    /// Block support budget (falls back to TSIRELSON_SUPPORT_BUDGET, then 60)
    #[arg(long = "support-budget", global = true, value_name = "N")]
    support_budget: Option<u64>,
    /// Emit CSV (columns: parameter, exact, decimal) for sweeps and curves
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a norm on a vector loaded from a JSON file
    Norm {
        /// Variant: tsirelson | tsirelson-q | trunc-j | trunc-q | sup-j |
        /// triple | n1 | n2 | n3 | n4 | spreading | max-diff | c0-l1 | l1 | sup
        #[arg(long)]
        spec: String,
        /// Bonus weight, 0 < q < 1/2, for the q-parameterized variants [default: 1/5]
        #[arg(long)]
        q: Option<String>,
        /// Distinguished-piece weight, 0 < c < 1, for n1/n2 [default: 7/10]
        #[arg(long)]
        c: Option<String>,
        /// Truncation level for trunc-j / trunc-q
        #[arg(long)]
        level: Option<u64>,
        /// Inner norm for trunc-j / trunc-q: q-norm | plain [default: q-norm]
        #[arg(long)]
        inner: Option<String>,
        /// Vector file: {"entries":[{"i":3,"v":"2/3"},...]}
        #[arg(long)]
        vec: PathBuf,
    },
    /// Generalized Schreier families
    Schreier {
        #[command(subcommand)]
        action: SchreierAction,
    },
    /// Repeated-averages hierarchy (default action: compute one term)
    Avg(AvgCmd),
    /// Derived vectors: the witness family and l1-average blocks
    Construct {
        #[command(subcommand)]
        action: ConstructAction,
    },
    /// Distance in distribution between two coefficient lists
    Dist {
        /// Position-free norm to measure in: spreading | max-diff | c0-l1 | l1 | sup
        #[arg(long, default_value = "spreading")]
        spec: String,
        /// Vector file for the first coefficient list
        #[arg(long)]
        x: PathBuf,
        /// Vector file for the second coefficient list
        #[arg(long)]
        y: PathBuf,
    },
    /// Finite-shift spreading-model estimates over a block basis
    Estimate {
        /// Block basis: l1m (widths from --m-stream) | const:<width>
        #[arg(long, default_value = "l1m")]
        basis: String,
        /// Stream of averaging widths for the l1m basis [default: naturals]
        #[arg(long = "m-stream")]
        m_stream: Option<String>,
        /// Comma-separated exact coefficients, e.g. 2/3,2/3
        #[arg(long)]
        coeffs: String,
        /// Single shift to evaluate
        #[arg(long)]
        shift: Option<u64>,
        /// Comma-separated shift sweep
        #[arg(long)]
        shifts: Option<String>,
    },
    /// Parameterized norm curves
    Curve {
        #[command(subcommand)]
        action: CurveAction,
    },
    /// Run a named verification suite
    Verify {
        /// One of: schreier, averages, oracle, chain, spreading, witness,
        /// triple, mixing, all
        #[arg(long)]
        suite: String,
    },
}

#[derive(Subcommand)]
enum SchreierAction {
    /// Membership of a finite set, absolute or relative to a stream
    Member {
        /// Family level (ordinal text, e.g. 2, w, w^2+w*3)
        #[arg(long)]
        alpha: String,
        /// Comma-separated elements, e.g. 2,3,4 (empty for the empty set)
        #[arg(long)]
        set: String,
        /// Test relative membership against this stream
        #[arg(long)]
        stream: Option<String>,
    },
    /// All members (or only inclusion-maximal ones) inside {1..universe}
    Enum {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        universe: u64,
        /// Keep only inclusion-maximal members
        #[arg(long = "max-only")]
        max_only: bool,
    },
    /// Exhaustive hereditary/spreading check on {1..universe}
    Regular {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        universe: u64,
    },
    /// Greedy thinning with a min-removal stability certificate
    Thin {
        /// Stream to thin
        #[arg(long = "n-stream")]
        n_stream: String,
        /// Comma-separated family levels, e.g. 1,2
        #[arg(long)]
        alphas: String,
        #[arg(long)]
        universe: u64,
    },
}

#[derive(Args)]
#[command(args_conflicts_with_subcommands = true)]
struct AvgCmd {
    #[command(subcommand)]
    action: Option<AvgAction>,
    /// Hierarchy level (ordinal text)
    #[arg(long)]
    alpha: Option<String>,
    /// Stream spec: naturals | evens | odds | arith:START:STEP | from:A,B,C:STEP
    #[arg(long)]
    stream: Option<String>,
    /// 1-based term number
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Subcommand)]
enum AvgAction {
    /// Check the picked-terms identity (both sides computed independently)
    VerifySubsequence {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        stream: String,
        /// Comma-separated strictly increasing term numbers, e.g. 1,3
        #[arg(long)]
        picks: String,
    },
    /// Search for family members pairing above a threshold against the averages
    Largeness {
        #[arg(long)]
        alpha: String,
        /// The ambient stream every sub-stream must come from
        #[arg(long)]
        stream: String,
        /// Family to search: all | empty | schreier:<ordinal>
        #[arg(long)]
        family: String,
        /// Pairing threshold (exact rational)
        #[arg(long)]
        eps: String,
        /// Check terms 1..=N over each sub-stream
        #[arg(long = "n-max")]
        n_max: u64,
        /// Semicolon-separated sub-stream specs [default: the ambient stream]
        #[arg(long = "sub-streams")]
        sub_streams: Option<String>,
    },
}

#[derive(Subcommand)]
enum ConstructAction {
    /// Coefficient list of the n-th witness vector
    Witness {
        #[arg(long)]
        n: u64,
    },
    /// One l1-average block: m unit coordinates from `start`, normalized
    Block {
        /// Averaging width
        #[arg(long)]
        m: u64,
        /// First support index (at least m)
        #[arg(long)]
        start: u64,
    },
}

#[derive(Subcommand)]
enum CurveAction {
    /// The sup-to-sum mixing curve r(t) on [0, 1]
    Mixing {
        /// Evenly spaced samples (at least 2)
        #[arg(long, default_value_t = 101)]
        samples: u64,
        /// Exact target in (1, 2); solves r(t) = target
        #[arg(long)]
        target: Option<String>,
    },
}

struct Output {
    text: String,
    suite_failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            suite_failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.suite_failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Computation(_) => ExitCode::from(1),
            }
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON rendering is total");
    s.push('\n');
    s
}

fn require_no_csv(csv: bool, what: &str) -> Result<(), CliError> {
    if csv {
        Err(CliError::Usage(format!(
            "--csv applies to shift sweeps and curve samples, not to {what}"
        )))
    } else {
        Ok(())
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let seed = cli.seed.unwrap_or(0);
    let element_budget = resolve_budget(cli.budget, ELEMENT_BUDGET_ENV, DEFAULT_ELEMENT_BUDGET)?;
    let support_budget = resolve_budget(
        cli.support_budget,
        SUPPORT_BUDGET_ENV,
        DEFAULT_SUPPORT_BUDGET,
    )?;
    match cli.command {
        Command::Norm {
            spec,
            q,
            c,
            level,
            inner,
            vec,
        } => {
            require_no_csv(cli.csv, "norm evaluation")?;
            run_norm(
                &spec,
                q.as_deref(),
                c.as_deref(),
                level,
                inner.as_deref(),
                &vec,
            )
        }
        Command::Schreier { action } => {
            require_no_csv(cli.csv, "family operations")?;
            run_schreier(action)
        }
        Command::Avg(cmd) => {
            require_no_csv(cli.csv, "average terms")?;
            run_avg(cmd, element_budget)
        }
        Command::Construct { action } => {
            require_no_csv(cli.csv, "constructions")?;
            run_construct(action)
        }
        Command::Dist { spec, x, y } => {
            require_no_csv(cli.csv, "distances")?;
            run_dist(&spec, &x, &y)
        }
        Command::Estimate {
            basis,
            m_stream,
            coeffs,
            shift,
            shifts,
        } => run_estimate(
            &basis,
            m_stream.as_deref(),
            &coeffs,
            shift,
            shifts.as_deref(),
            support_budget,
            cli.csv,
        ),
        Command::Curve { action } => run_curve(action, cli.csv),
        Command::Verify { suite } => {
            require_no_csv(cli.csv, "suite reports")?;
            run_verify(&suite, seed)
        }
    }
}

/// Builds the norm spec from the flag set, rejecting parameters that the
/// chosen variant does not take.
fn build_norm_spec(
    name: &str,
    q_flag: Option<&str>,
    c_flag: Option<&str>,
    level: Option<u64>,
    inner: Option<&str>,
) -> Result<(NormSpec, TruncatedInner, serde_json::Value), CliError> {
    let parse_q = |text: Option<&str>| -> Result<Rational, CliError> {
        parse_rational_flag(text.unwrap_or("1/5"), "--q")
    };
    let parse_c = |text: Option<&str>| -> Result<Rational, CliError> {
        parse_rational_flag(text.unwrap_or("7/10"), "--c")
    };
    let reject = |flag: &str, present: bool| -> Result<(), CliError> {
        if present {
            Err(CliError::Usage(format!(
                "{flag} does not apply to --spec {name}"
            )))
        } else {
            Ok(())
        }
    };
    let takes_q = matches!(
        name,
        "tsirelson-q" | "trunc-j" | "trunc-q" | "sup-j" | "triple"
    );
    let takes_c = matches!(name, "n1" | "n2");
    let takes_level = matches!(name, "trunc-j" | "trunc-q");
    if !takes_q {
        reject("--q", q_flag.is_some())?;
    }
    if !takes_c {
        reject("--c", c_flag.is_some())?;
    }
    if !takes_level {
        reject("--level", level.is_some())?;
        reject("--inner", inner.is_some())?;
    }
    let inner_norm = match inner {
        None | Some("q-norm") => TruncatedInner::QNorm,
        Some("plain") => TruncatedInner::Plain,
        Some(other) => {
            return Err(CliError::Usage(format!(
                "--inner must be q-norm or plain, got '{other}'"
            )))
        }
    };
    let need_level =
        || level.ok_or_else(|| CliError::Usage(format!("--spec {name} requires --level")));
    let spec = match name {
        "tsirelson" => NormSpec::Tsirelson,
        "tsirelson-q" => NormSpec::TsirelsonQ(parse_q(q_flag)?),
        "trunc-j" => NormSpec::TruncJ(need_level()?, parse_q(q_flag)?),
        "trunc-q" => NormSpec::TruncQ(need_level()?, parse_q(q_flag)?),
        "sup-j" => NormSpec::SupJ(parse_q(q_flag)?),
        "triple" => NormSpec::Triple(parse_q(q_flag)?),
        "n1" => NormSpec::N1(parse_c(c_flag)?),
        "n2" => NormSpec::N2(parse_c(c_flag)?),
        "n3" => NormSpec::N3,
        "n4" => NormSpec::N4,
        "spreading" => NormSpec::Spreading,
        "max-diff" => NormSpec::MaxDiff,
        "c0-l1" => NormSpec::C0PlusL1,
        "l1" => NormSpec::L1,
        "sup" => NormSpec::Sup,
        other => return Err(CliError::Usage(format!("unknown norm variant '{other}'"))),
    };
    let mut echo = serde_json::Map::new();
    echo.insert("name".into(), json!(name));
    match &spec {
        NormSpec::TsirelsonQ(qv) | NormSpec::SupJ(qv) | NormSpec::Triple(qv) => {
            echo.insert("q".into(), json!(format_rational(qv)));
        }
        NormSpec::TruncJ(n, qv) | NormSpec::TruncQ(n, qv) => {
            echo.insert("level".into(), json!(n));
            echo.insert("q".into(), json!(format_rational(qv)));
            echo.insert(
                "inner".into(),
                json!(match inner_norm {
                    TruncatedInner::QNorm => "q-norm",
                    TruncatedInner::Plain => "plain",
                }),
            );
        }
        NormSpec::N1(cv) | NormSpec::N2(cv) => {
            echo.insert("c".into(), json!(format_rational(cv)));
        }
        _ => {}
    }
    Ok((spec, inner_norm, serde_json::Value::Object(echo)))
}

fn run_norm(
    name: &str,
    q_flag: Option<&str>,
    c_flag: Option<&str>,
    level: Option<u64>,
    inner: Option<&str>,
    vec_path: &std::path::Path,
) -> Result<Output, CliError> {
    let (spec, inner_norm, echo) = build_norm_spec(name, q_flag, c_flag, level, inner)?;
    let x = load_vector(vec_path)?;
    let value = match (&spec, inner_norm) {
        (NormSpec::TruncJ(n, qv), TruncatedInner::Plain) => {
            implicit::truncated_norms(&x, *n, qv, TruncatedInner::Plain)?.0
        }
        (NormSpec::TruncQ(n, qv), TruncatedInner::Plain) => {
            implicit::truncated_norms(&x, *n, qv, TruncatedInner::Plain)?.1
        }
        _ => norms::evaluate(&spec, &x)?,
    };
    Ok(Output::ok(pretty(&json!({
        "spec": echo,
        "value": format_rational(&value),
    }))))
}

fn finite_set_flag(text: &str) -> Result<FiniteSet, CliError> {
    let elements = parse_u64_list(text)?;
    FiniteSet::new(elements)
        .map_err(|e| CliError::Usage(format!("--set must strictly increase: {e}")))
}

fn run_schreier(action: SchreierAction) -> Result<Output, CliError> {
    let ctx = SchreierCtx::new();
    match action {
        SchreierAction::Member { alpha, set, stream } => {
            let a = parse_ordinal_flag(&alpha, "--alpha")?;
            let f = finite_set_flag(&set)?;
            let (member, stream_echo) = match stream {
                Some(spec_text) => {
                    let m = parse_stream_spec(&spec_text)?;
                    (ctx.member_relative(&f, &a, &m)?, Some(spec_text))
                }
                None => (ctx.member(&f, &a), None),
            };
            Ok(Output::ok(pretty(&json!({
                "alpha": a.render(),
                "set": f.elements(),
                "stream": stream_echo,
                "member": member,
            }))))
        }
        SchreierAction::Enum {
            alpha,
            universe,
            max_only,
        } => {
            let a = parse_ordinal_flag(&alpha, "--alpha")?;
            let members = ctx.enumerate(&a, universe, max_only)?;
            let rendered: Vec<&[u64]> = members.iter().map(|f| f.elements()).collect();
            Ok(Output::ok(pretty(&json!({
                "alpha": a.render(),
                "universe": universe,
                "max_only": max_only,
                "count": rendered.len(),
                "members": rendered,
            }))))
        }
        SchreierAction::Regular { alpha, universe } => {
            let a = parse_ordinal_flag(&alpha, "--alpha")?;
            let report = ctx.check_regularity(&a, universe)?;
            let counterexample = report
                .counterexample
                .as_ref()
                .map(|(member, variant)| json!([member.elements(), variant.elements()]));
            Ok(Output::ok(pretty(&json!({
                "alpha": a.render(),
                "universe": report.universe,
                "hereditary_ok": report.hereditary_ok,
                "spreading_ok": report.spreading_ok,
                "counterexample": counterexample,
            }))))
        }
        SchreierAction::Thin {
            n_stream,
            alphas,
            universe,
        } => {
            let stream = parse_stream_spec(&n_stream)?;
            let parsed: Result<Vec<_>, _> = alphas
                .split(',')
                .map(|t| parse_ordinal_flag(t.trim(), "--alphas"))
                .collect();
            let parsed = parsed?;
            if parsed.is_empty() {
                return Err(CliError::Usage(
                    "--alphas must list at least one level".into(),
                ));
            }
            let outcome = ctx.thin(&stream, &parsed, universe)?;
            Ok(Output::ok(pretty(&json!({
                "n_stream": n_stream,
                "alphas": parsed.iter().map(|a| a.render()).collect::<Vec<_>>(),
                "universe": universe,
                "selected": outcome.selected,
                "certified": outcome.certified,
            }))))
        }
    }
}

fn run_avg(cmd: AvgCmd, element_budget: u64) -> Result<Output, CliError> {
    match cmd.action {
        None => {
            let alpha = cmd
                .alpha
                .ok_or_else(|| CliError::Usage("avg requires --alpha".into()))?;
            let stream = cmd
                .stream
                .ok_or_else(|| CliError::Usage("avg requires --stream".into()))?;
            let n = cmd
                .n
                .ok_or_else(|| CliError::Usage("avg requires --n".into()))?;
            let a = parse_ordinal_flag(&alpha, "--alpha")?;
            let m = parse_stream_spec(&stream)?;
            let result = repeated_average(&a, &m, n, element_budget)?;
            let file = vector_to_file(&result.vector);
            Ok(Output::ok(pretty(&json!({
                "alpha": a.render(),
                "stream": stream,
                "n": n,
                "entries": serde_json::to_value(&file.entries).expect("schema serializes"),
                "support": result.support.elements(),
                "consumed_prefix_length": result.consumed_prefix_length,
            }))))
        }
        Some(AvgAction::VerifySubsequence {
            alpha,
            stream,
            picks,
        }) => {
            let a = parse_ordinal_flag(&alpha, "--alpha")?;
            let m = parse_stream_spec(&stream)?;
            let picks = parse_u64_list(&picks)?;
            let holds = verify_subsequence_identity(&a, &m, &picks, element_budget)?;
            Ok(Output::ok(pretty(&json!({
                "alpha": a.render(),
                "stream": stream,
                "picks": picks,
                "holds": holds,
            }))))
        }
        Some(AvgAction::Largeness {
            alpha,
            stream,
            family,
            eps,
            n_max,
            sub_streams,
        }) => {
            let a = parse_ordinal_flag(&alpha, "--alpha")?;
            let m = parse_stream_spec(&stream)?;
            let eps = parse_rational_flag(&eps, "--eps")?;
            let subs: Vec<IndexStream> = match &sub_streams {
                Some(text) => text
                    .split(';')
                    .map(parse_stream_spec)
                    .collect::<Result<_, _>>()?,
                None => vec![m.clone()],
            };
            let ctx = SchreierCtx::new();
            let family_fn: Box<dyn Fn(&FiniteSet) -> bool> = match family.as_str() {
                "all" => Box::new(|_: &FiniteSet| true),
                "empty" => Box::new(|f: &FiniteSet| f.is_empty()),
                other => match other.strip_prefix("schreier:") {
                    Some(level) => {
                        let a = parse_ordinal_flag(level, "--family")?;
                        Box::new(move |f: &FiniteSet| ctx.member(f, &a))
                    }
                    None => {
                        return Err(CliError::Usage(format!(
                            "--family must be all, empty, or schreier:<ordinal>, got '{other}'"
                        )))
                    }
                },
            };
            let entries =
                largeness_witness(&*family_fn, &m, &a, &eps, n_max, &subs, element_budget)?;
            let rendered: Vec<serde_json::Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "stream_index": e.stream,
                        "n": e.n,
                        "support": e.support.elements(),
                        "witness": e.witness.as_ref().map(|(f, pairing)| json!({
                            "set": f.elements(),
                            "pairing": format_rational(pairing),
                        })),
                    })
                })
                .collect();
            Ok(Output::ok(pretty(&json!({
                "alpha": a.render(),
                "stream": stream,
                "family": family,
                "eps": format_rational(&eps),
                "n_max": n_max,
                "entries": rendered,
            }))))
        }
    }
}

fn run_construct(action: ConstructAction) -> Result<Output, CliError> {
    match action {
        ConstructAction::Witness { n } => {
            let coeffs = witness_vector(n)?;
            let mass = coeffs.iter().fold(Rational::zero(), |acc, v| acc + v.abs());
            let norm = spreading_norm(&coeffs);
            Ok(Output::ok(pretty(&json!({
                "n": n,
                "coeffs": coeffs.iter().map(format_rational).collect::<Vec<_>>(),
                "spreading_norm": format_rational(&norm),
                "l1_mass": format_rational(&mass),
            }))))
        }
        ConstructAction::Block { m, start } => {
            let block = l1m_average_block(m, start)?;
            let file = vector_to_file(&block);
            Ok(Output::ok(pretty(&json!({
                "m": m,
                "start": start,
                "entries": serde_json::to_value(&file.entries).expect("schema serializes"),
            }))))
        }
    }
}

fn run_dist(spec_name: &str, x: &std::path::Path, y: &std::path::Path) -> Result<Output, CliError> {
    let spec = match spec_name {
        "spreading" => NormSpec::Spreading,
        "max-diff" => NormSpec::MaxDiff,
        "c0-l1" => NormSpec::C0PlusL1,
        "l1" => NormSpec::L1,
        "sup" => NormSpec::Sup,
        other => {
            return Err(CliError::Usage(format!(
                "--spec must be a position-free norm (spreading, max-diff, c0-l1, l1, sup), \
                 got '{other}'"
            )))
        }
    };
    let xv = coefficient_list(x)?;
    let yv = coefficient_list(y)?;
    let result = distance_in_distribution(&xv, &yv, &spec)?;
    let placement: Vec<serde_json::Value> = result
        .placement
        .iter()
        .map(|(a, b)| json!([a, b]))
        .collect();
    Ok(Output::ok(pretty(&json!({
        "spec": spec_name,
        "distance": format_rational(&result.achieved),
        "optimal": result.optimal,
        "placement": placement,
    }))))
}

/// Loads a vector file and keeps the coefficient list (values in index
/// order); distances in distribution ignore the support positions.
fn coefficient_list(path: &std::path::Path) -> Result<Vec<Rational>, CliError> {
    Ok(load_vector(path)?
        .entries()
        .iter()
        .map(|(_, v)| v.clone())
        .collect())
}

fn run_estimate(
    basis_text: &str,
    m_stream: Option<&str>,
    coeffs_text: &str,
    shift: Option<u64>,
    shifts: Option<&str>,
    support_budget: u64,
    csv: bool,
) -> Result<Output, CliError> {
    let basis = match basis_text {
        "l1m" => BlockBasisSpec::L1mAverages {
            m_stream: parse_stream_spec(m_stream.unwrap_or("naturals"))?,
        },
        other => match other.strip_prefix("const:") {
            Some(width) => {
                if m_stream.is_some() {
                    return Err(CliError::Usage(
                        "--m-stream applies only to the l1m basis".into(),
                    ));
                }
                let length: u64 = width.trim().parse().map_err(|_| {
                    CliError::Usage(format!("malformed constant-block width '{width}'"))
                })?;
                BlockBasisSpec::ConstantBlocks { length }
            }
            None => {
                return Err(CliError::Usage(format!(
                    "--basis must be l1m or const:<width>, got '{other}'"
                )))
            }
        },
    };
    let coeffs = parse_rational_list(coeffs_text, "--coeffs")?;
    if coeffs.is_empty() {
        return Err(CliError::Usage(
            "--coeffs must list at least one value".into(),
        ));
    }
    let sweep: Vec<u64> = match (shift, shifts) {
        (Some(s), None) => vec![s],
        (None, Some(list)) => {
            let parsed = parse_u64_list(list)?;
            if parsed.is_empty() {
                return Err(CliError::Usage(
                    "--shifts must list at least one shift".into(),
                ));
            }
            parsed
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either --shift or --shifts, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::Usage(
                "estimate requires --shift or --shifts".into(),
            ))
        }
    };
    let mut values = Vec::with_capacity(sweep.len());
    for s in &sweep {
        values.push(estimate_spreading_model(
            &basis,
            &coeffs,
            *s,
            support_budget,
        )?);
    }
    if csv {
        let mut rows = Vec::with_capacity(sweep.len());
        for (s, v) in sweep.iter().zip(&values) {
            rows.push((s.to_string(), v.clone()));
        }
        return Ok(Output::ok(render_csv(&rows)?));
    }
    let coeff_echo: Vec<String> = coeffs.iter().map(format_rational).collect();
    if sweep.len() == 1 {
        return Ok(Output::ok(pretty(&json!({
            "basis": basis_text,
            "coeffs": coeff_echo,
            "shift": sweep[0],
            "value": format_rational(&values[0]),
        }))));
    }
    let points: Vec<serde_json::Value> = sweep
        .iter()
        .zip(&values)
        .map(|(s, v)| json!({"shift": s, "value": format_rational(v)}))
        .collect();
    Ok(Output::ok(pretty(&json!({
        "basis": basis_text,
        "coeffs": coeff_echo,
        "sweep": points,
    }))))
}

fn run_curve(action: CurveAction, csv: bool) -> Result<Output, CliError> {
    match action {
        CurveAction::Mixing { samples, target } => {
            let points = mixing_curve(samples)?;
            let solved = match &target {
                Some(text) => {
                    let t = parse_rational_flag(text, "--target")?;
                    Some((t.clone(), solve_mixing_target(&t)?))
                }
                None => None,
            };
            if csv {
                let mut rows: Vec<(String, Rational)> = points
                    .iter()
                    .map(|p| (format_rational(&p.t), p.r.clone()))
                    .collect();
                if let Some((target, t)) = &solved {
                    rows.push((format!("target={}", format_rational(target)), t.clone()));
                }
                return Ok(Output::ok(render_csv(&rows)?));
            }
            let rendered: Vec<serde_json::Value> = points
                .iter()
                .map(|p| {
                    json!({
                        "t": format_rational(&p.t),
                        "alpha": format_rational(&p.alpha),
                        "beta": format_rational(&p.beta),
                        "r": format_rational(&p.r),
                    })
                })
                .collect();
            let target_json = solved.map(|(target, t)| {
                json!({
                    "target": format_rational(&target),
                    "t": format_rational(&t),
                })
            });
            Ok(Output::ok(pretty(&json!({
                "samples": samples,
                "points": rendered,
                "target": target_json,
            }))))
        }
    }
}

/// CSV with the fixed columns (parameter, exact, decimal); the decimal
/// column is a 12-digit advisory rendering.
fn render_csv(rows: &[(String, Rational)]) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["parameter", "exact", "decimal"])
        .and_then(|_| {
            rows.iter().try_for_each(|(param, value)| {
                writer.write_record([
                    param.as_str(),
                    &format_rational(value),
                    &decimal_approx(value, DECIMAL_DIGITS),
                ])
            })
        })
        .map_err(|e| CliError::Computation(format!("CSV rendering failed: {e}")))?;
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Computation(format!("CSV rendering failed: {e}")))?;
    String::from_utf8(bytes)
        .map_err(|e| CliError::Computation(format!("CSV rendering failed: {e}")))
}

fn run_verify(suite: &str, seed: u64) -> Result<Output, CliError> {
    match suites::run_suite(suite, seed) {
        Some(report) => Ok(Output {
            text: render_report(&report),
            suite_failed: !report.pass(),
        }),
        None => Err(CliError::Usage(format!(
            "unknown suite '{suite}' (expected one of: {})",
            suites::SUITE_NAMES.join(", ")
        ))),
    }
}
