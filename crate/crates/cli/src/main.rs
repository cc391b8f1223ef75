//! `maxsub`: command-line access to certificates, family membership,
//! generating-pair decisions, relation witnesses and the finite `T_n` runs.
//!
//! Every command prints one JSON document on stdout (or a short table with
//! `--pretty`). Exit status: 0 for decided results, 2 when the answer is
//! unknown, 1 on errors, which are printed as `{"error": code, "message": …}`.

mod selftest;

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxsub_core::{
    bfin_greedy, bfin_witness, classify, decide_pair, maximal_subgroups_symn, maximal_subsemigroups_tn, parse_expr,
    rho, ClassifyError, Context, Decision, ExprError, Family, FilterOracle, FinError, GenError, MapExpr, RelError,
    Relation, Side, Threshold, TooLarge, Tri,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "maxsub", version, about = "Maximal subsemigroups of the full transformation monoid on ℕ")]
struct Cli {
    /// Window `[0, M)` used for empirical statistics.
    #[arg(long, global = true, default_value_t = 1000)]
    window: u64,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Emit a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certificate of defect, collapse and infinite contraction.
    Certify { expr: String },
    /// Membership of a map in one family: S1..S5, F1, F2, U1, U2, A1, A2.
    Classify {
        family: String,
        expr: String,
        #[command(flatten)]
        params: Params,
    },
    /// Whether a stabiliser and two maps generate ℕ^ℕ.
    Genpair {
        context: ContextKind,
        f: String,
        g: String,
        #[command(flatten)]
        params: Params,
    },
    /// The class relation ρ_f for the residues mod `--n`.
    Rho {
        expr: String,
        #[arg(long)]
        n: usize,
    },
    /// A word in Sym(n) ∪ {ρ, σ} evaluating to the full relation.
    Bfin {
        rho: String,
        sigma: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Algorithm::Bfs)]
        algorithm: Algorithm,
    },
    /// Maximal subsemigroups of the finite monoid T_n.
    Maxtn {
        #[arg(long)]
        n: usize,
        /// Include the element lists.
        #[arg(long)]
        elements: bool,
    },
    /// Run a built-in check suite.
    Selftest {
        #[arg(value_enum, default_value_t = selftest::Suite::Examples)]
        suite: selftest::Suite,
    },
}

#[derive(clap::Args)]
struct Params {
    /// Finite set Γ, e.g. `0,1`.
    #[arg(long, value_delimiter = ',')]
    gamma: Vec<u64>,
    /// Threshold μ (or ν for the second families).
    #[arg(long, default_value = "aleph0")]
    mu: Threshold,
    /// Partition size.
    #[arg(long)]
    n: Option<usize>,
    /// Use the Fréchet filter instead of the principal filter on Γ.
    #[arg(long)]
    frechet: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ContextKind {
    Sym,
    Pointwise,
    Filter,
    Partition,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Bfs,
    Greedy,
}

struct Failure {
    code: &'static str,
    message: String,
}

impl Failure {
    fn new(code: &'static str, message: impl ToString) -> Failure {
        Failure { code, message: message.to_string() }
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        let code = match e {
            ExprError::Parse { .. } => "parse_error",
            ExprError::Arity { .. } => "arity_error",
        };
        Failure::new(code, e)
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        let code = match e {
            ClassifyError::InvalidParameters(_) => "invalid_parameters",
            ClassifyError::Undecidable(_) => "undecidable",
        };
        Failure::new(code, e)
    }
}

impl From<GenError> for Failure {
    fn from(e: GenError) -> Self {
        let code = match e {
            GenError::UnsupportedFilter(_) => "unsupported_filter",
            GenError::InvalidParameters(_) => "invalid_parameters",
        };
        Failure::new(code, e)
    }
}

impl From<RelError> for Failure {
    fn from(e: RelError) -> Self {
        let code = match e {
            RelError::DimensionMismatch(..) => "dimension_mismatch",
            RelError::BadSize(_) => "invalid_parameters",
            RelError::Parse(_) => "parse_error",
            RelError::HypothesisViolated(_) => "hypothesis_violated",
        };
        Failure::new(code, e)
    }
}

impl From<FinError> for Failure {
    fn from(e: FinError) -> Self {
        let code = match e {
            FinError::CompletenessFailure(_) => "completeness_failure",
            _ => "invalid_parameters",
        };
        Failure::new(code, e)
    }
}

impl From<TooLarge> for Failure {
    fn from(e: TooLarge) -> Self {
        Failure::new("too_large", e)
    }
}

/// A successful result: its JSON form, a human rendering, and whether the
/// answer was decided.
struct Output {
    json: Value,
    pretty: String,
    decided: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.render().to_string();
            println!("{}", json!({ "error": "usage", "message": message.trim_end() }));
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.pretty {
                print!("{}", out.pretty);
            } else {
                println!("{}", out.json);
            }
            ExitCode::from(if out.decided { 0 } else { 2 })
        }
        Err(f) => {
            println!("{}", json!({ "error": f.code, "message": f.message }));
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Certify { expr } => certify(&parse_expr(expr)?, cli.window),
        Command::Classify { family, expr, params } => {
            let family = family_from(family, params)?;
            let e = parse_expr(expr)?;
            let verdict = match classify(&family, &e) {
                Ok(v) => v,
                Err(ClassifyError::Undecidable(why)) => {
                    maxsub_core::Verdict { family, answer: Tri::Unknown, reason: why }
                }
                Err(err) => return Err(err.into()),
            };
            Ok(Output {
                pretty: format!(
                    "family  {}\nanswer  {:?}\nreason  {}\n",
                    verdict.family, verdict.answer, verdict.reason
                ),
                decided: verdict.answer.is_decided(),
                json: serde_json::to_value(&verdict).expect("verdicts serialize"),
            })
        }
        Command::Genpair { context, f, g, params } => {
            let context = context_from(*context, params)?;
            let decision = decide_pair(&context, &parse_expr(f)?, &parse_expr(g)?)?;
            let pretty = match &decision {
                Decision::Generates => "generates\n".to_owned(),
                Decision::DoesNotGenerate { witness } => format!("does not generate: both lie in {witness}\n"),
                Decision::Unknown { blocking } => format!("unknown: {blocking}\n"),
            };
            Ok(Output {
                decided: !matches!(decision, Decision::Unknown { .. }),
                json: serde_json::to_value(&decision).expect("decisions serialize"),
                pretty,
            })
        }
        Command::Rho { expr, n } => {
            let relation = rho(&parse_expr(expr)?, *n)?;
            Ok(Output {
                pretty: format!("ρ_f = {relation}\n"),
                json: json!({ "n": n, "rho": relation }),
                decided: true,
            })
        }
        Command::Bfin { rho, sigma, n, algorithm } => {
            let rho = Relation::parse(rho, *n)?;
            let sigma = Relation::parse(sigma, *n)?;
            let word = match algorithm {
                Algorithm::Bfs => bfin_witness(&rho, &sigma)?,
                Algorithm::Greedy => bfin_greedy(&rho, &sigma)?,
            };
            let value = word.eval(&rho, &sigma);
            Ok(Output {
                pretty: format!("word    {word}\nlength  {}\nvalue   {value}\n", word.len()),
                json: json!({ "word": word, "length": word.len(), "value": value, "full": value.is_full() }),
                decided: true,
            })
        }
        Command::Maxtn { n, elements } => {
            let reports = maximal_subsemigroups_tn(*n)?;
            let subgroups = maximal_subgroups_symn(*n)?.len();
            let mut pretty =
                format!("T_{n}: {} maximal subsemigroups ({subgroups} maximal subgroups of S_{n})\n", reports.len());
            for r in &reports {
                pretty.push_str(&format!("  {:>4}  {}\n", r.size, r.description));
            }
            let mut listed = serde_json::to_value(&reports).expect("reports serialize");
            if !elements {
                for r in listed.as_array_mut().expect("a list of reports") {
                    r.as_object_mut().expect("a report object").remove("elements");
                }
            }
            Ok(Output {
                json: json!({ "n": n, "count": reports.len(), "maximalSubgroups": subgroups, "complete": true, "subsemigroups": listed }),
                pretty,
                decided: true,
            })
        }
        Command::Selftest { suite } => {
            let results = selftest::run(*suite);
            let failed = results.iter().filter(|(_, ok)| !ok).count();
            if failed > 0 {
                let names: Vec<&str> = results.iter().filter(|(_, ok)| !ok).map(|(n, _)| n.as_str()).collect();
                return Err(Failure::new("selftest_failed", format!("failed: {}", names.join(", "))));
            }
            let mut pretty = String::new();
            for (name, _) in &results {
                pretty.push_str(&format!("pass  {name}\n"));
            }
            Ok(Output {
                json: json!({ "suite": suite.to_possible_value().expect("named suite").get_name(), "passed": results.len(), "failed": 0 }),
                pretty,
                decided: true,
            })
        }
    }
}

fn certify(e: &MapExpr, window: u64) -> Result<Output, Failure> {
    let cert = e.certify();
    let stats = e.window_stats(window);
    let pretty = format!(
        "expr      {e}\ninj       {:?}\nsurj      {:?}\nd         {}\nc         {}\nkinf      {}\nfinImage  {:?}\nwindow    [0,{window}): {} missed, {} collisions\n",
        cert.inj,
        cert.surj,
        cert.d,
        cert.c,
        cert.kinf,
        cert.fin_image,
        stats.missed.len(),
        stats.collisions,
    );
    Ok(Output { json: serde_json::to_value(cert).expect("certificates serialize"), pretty, decided: cert.is_exact() })
}

fn gamma(params: &Params) -> Result<BTreeSet<u64>, Failure> {
    if params.gamma.is_empty() {
        return Err(Failure::new("invalid_parameters", "--gamma is required"));
    }
    Ok(params.gamma.iter().copied().collect())
}

fn filter(params: &Params) -> Result<FilterOracle, Failure> {
    if params.frechet {
        Ok(FilterOracle::Frechet)
    } else {
        Ok(FilterOracle::principal(gamma(params)?)?)
    }
}

fn partition(params: &Params) -> Result<usize, Failure> {
    params.n.ok_or_else(|| Failure::new("invalid_parameters", "--n is required"))
}

fn family_from(name: &str, params: &Params) -> Result<Family, Failure> {
    let side = |digit: char| if digit == '1' { Side::One } else { Side::Two };
    let fixed_mu = |family: Family| {
        if params.mu == Threshold::Aleph0 {
            Ok(family)
        } else {
            Err(Failure::new("invalid_parameters", format!("{} is only supported with μ = ℵ₀", family.name())))
        }
    };
    match name.to_ascii_uppercase().as_str() {
        "S1" => Ok(Family::S1),
        "S2" => Ok(Family::S2),
        "S3" => fixed_mu(Family::S3),
        "S4" => fixed_mu(Family::S4),
        "S5" => Ok(Family::S5),
        n @ ("F1" | "F2") => {
            Ok(Family::F { side: side(n.as_bytes()[1] as char), gamma: gamma(params)?, mu: params.mu })
        }
        n @ ("U1" | "U2") => {
            Ok(Family::U { side: side(n.as_bytes()[1] as char), filter: filter(params)?, mu: params.mu })
        }
        n @ ("A1" | "A2") => Ok(Family::A { side: side(n.as_bytes()[1] as char), n: partition(params)? }),
        _ => Err(Failure::new("invalid_parameters", format!("unknown family '{name}'"))),
    }
}

fn context_from(kind: ContextKind, params: &Params) -> Result<Context, Failure> {
    Ok(match kind {
        ContextKind::Sym => Context::Sym,
        ContextKind::Pointwise => Context::PointwiseStab(gamma(params)?),
        ContextKind::Filter => Context::Filter(filter(params)?),
        ContextKind::Partition => Context::Partition(partition(params)?),
    })
}
