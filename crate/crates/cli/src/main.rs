use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use linhyper::bounds::{
    clique_degree_split_condition, excess_deficit_condition, extreme_order_condition, large_rank_condition,
    local_sparsity_diagnostics, rank_two_degree_condition, regular_core_condition, triangle_counts, Rational,
};
use linhyper::coloring::{
    chromatic_index_exact, edge_order, extend_coloring, greedy_color, greedy_list_color, is_k_choosable,
    ChoosabilityBudget, ChoosabilityStatus, EdgeColoring, EdgeOrder, ExactBudget, ExactOutcome, GreedyOutcome,
    ListAssignment,
};
use linhyper::conjectures::{
    check_conjecture, critical_check, random_sweep_specs, sweep, write_csv, Conjecture, ConjectureBudget,
    SweepOptions, VerdictStatus,
};
use linhyper::dimacs::export_dimacs;
use linhyper::generators::{GenSpec, RNG_ALGORITHM};
use linhyper::{parse, AnalysisReport, Error, Hypergraph};
use serde::{Deserialize, Serialize};
use serde_json::json;

const EXIT_VIOLATION: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "linhyper", version, about = "Linear hypergraphs and their list edge colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Options shared by verbs that read an instance and may search.
#[derive(Args)]
struct Common {
    /// Instance file in canonical JSON; standard input when omitted or `-`.
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Wall-clock limit for searches, in milliseconds.
    #[arg(long)]
    limit_ms: Option<u64>,
    /// Node limit for searches.
    #[arg(long)]
    limit_nodes: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated instance as canonical JSON.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Report instance statistics.
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Include per-edge triangle counts.
        #[arg(long)]
        triangles: bool,
        /// Include the local-sparsity bound chain (uniform, rank >= 3).
        #[arg(long)]
        diagnostics: bool,
        /// Include every hypothesis checker.
        #[arg(long)]
        conditions: bool,
        /// Value of the universal constant C, as an integer or `p/q`.
        #[arg(long, default_value = "3")]
        c: String,
    },
    /// Color the edges greedily, exactly, or by extending a partial coloring.
    Color {
        #[command(flatten)]
        common: Common,
        /// Compute the chromatic index exactly.
        #[arg(long, conflicts_with_all = ["lists", "extend"])]
        exact: bool,
        /// Palette size for greedy coloring; defaults to max R(e) + 1.
        #[arg(long)]
        palette: Option<usize>,
        #[arg(long, value_enum, default_value = "input")]
        order: OrderArg,
        /// Seed for `--order random`.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSON file mapping edge index to a list of colors.
        #[arg(long, conflicts_with = "palette")]
        lists: Option<PathBuf>,
        /// JSON file {"h3": {edge: color}, "lists": {edge: [colors]}, "n_colors": k}
        /// extending a coloring of the rank >= 3 edges to the rank-2 edges.
        #[arg(long)]
        extend: Option<PathBuf>,
    },
    /// Decide whether every assignment of k-lists admits a proper coloring.
    Choosability {
        #[command(flatten)]
        common: Common,
        #[arg(short, long)]
        k: usize,
    },
    /// Check one conjecture on one instance.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_conjecture)]
        conjecture: Conjecture,
    },
    /// Evaluate the minimal-counterexample clauses.
    Critical {
        #[command(flatten)]
        common: Common,
    },
    /// Check conjectures over a stream of generated instances.
    Sweep(SweepArgs),
    /// Write the line graph in DIMACS .col format.
    Export {
        /// Instance file; standard input when omitted or `-`.
        input: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Number of random linear instances.
    #[arg(long, default_value_t = 100, conflicts_with = "specs")]
    count: usize,
    #[arg(long, default_value_t = 8)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// JSON array of generator specs to run instead of random instances.
    #[arg(long)]
    specs: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', value_parser = parse_conjecture, default_value = "C1,C2,C3")]
    conjecture: Vec<Conjecture>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Where to write the certificate if a violation is found.
    #[arg(long)]
    witness_out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    limit_ms: Option<u64>,
    #[arg(long)]
    limit_nodes: Option<u64>,
}

#[derive(Subcommand)]
enum Family {
    /// The Fano plane.
    Fano,
    /// Projective plane over the integers mod a prime q.
    Pg { q: usize },
    /// Complete graph on n vertices.
    Kn { n: usize },
    /// One edge of size n - 1 plus the n - 1 edges joining it to the last vertex.
    NearPencil { n: usize },
    /// Steiner triple system on n vertices, n = 3 mod 6.
    Sts { n: usize },
    /// Rejection-sampled linear hypergraph.
    Random {
        #[arg(long)]
        n: usize,
        /// Target edge count.
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        rank_min: usize,
        #[arg(long, default_value_t = 3)]
        rank_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Input,
    CliqueRank,
    Random,
}

fn parse_conjecture(s: &str) -> Result<Conjecture, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } => EXIT_BUDGET,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn read_text(path: Option<&Path>) -> Result<String, Failure> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display()))),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut text = String::new();
    io::stdin()
        .read_to_string(&mut text)
        .map_err(|e| invalid(format!("stdin: {e}")))?;
    Ok(text)
}

fn read_instance(path: Option<&Path>) -> Result<Hypergraph, Failure> {
    Ok(parse(&read_text(path)?)?)
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| invalid(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn require_json(format: Format, verb: &str) -> Result<(), Failure> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(invalid(format!("{verb} has no CSV output"))),
    }
}

impl Common {
    fn exact_budget(&self) -> ExactBudget {
        let mut b = ExactBudget::default();
        if let Some(n) = self.limit_nodes {
            b.max_nodes = n;
        }
        b.time_limit = self.limit_ms.map(Duration::from_millis);
        b
    }

    fn choosability_budget(&self) -> ChoosabilityBudget {
        let mut b = ConjectureBudget::default().choosability;
        if let Some(n) = self.limit_nodes {
            b.max_assignments = n;
        }
        b.time_limit = self.limit_ms.map(Duration::from_millis);
        b
    }

    fn conjecture_budget(&self) -> ConjectureBudget {
        ConjectureBudget {
            exact: self.exact_budget(),
            choosability: self.choosability_budget(),
        }
    }
}

fn generate(family: Family) -> CmdResult {
    let spec = match family {
        Family::Fano => GenSpec::ProjectivePlane { q: 2 },
        Family::Pg { q } => GenSpec::ProjectivePlane { q },
        Family::Kn { n } => GenSpec::CompleteGraph { n },
        Family::NearPencil { n } => GenSpec::NearPencil { n },
        Family::Sts { n } => GenSpec::SteinerTriple { n },
        Family::Random {
            n,
            m,
            rank_min,
            rank_max,
            seed,
        } => GenSpec::RandomLinear {
            n,
            m_target: m,
            rank_min,
            rank_max,
            seed,
        },
    };
    let generated = spec.generate()?;
    if let Some(seed) = spec.seed() {
        eprintln!("seed {seed}, rng {RNG_ALGORITHM}");
    }
    if generated.partial {
        eprintln!(
            "warning: rejection cap reached; generated {} edges",
            generated.hypergraph.m()
        );
    }
    println!("{}", generated.hypergraph.to_json());
    Ok(0)
}

fn analysis_csv(a: &AnalysisReport) -> String {
    let header = "n,m,delta,Delta,rho,P,maxD,maxR,linear,uniform,regular,sum_ranks";
    let row = format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        a.n, a.m, a.delta_min, a.delta_max, a.rho, a.p, a.max_d, a.max_r, a.linear, a.uniform, a.regular, a.sum_ranks
    );
    format!("{header}\n{row}")
}

fn analyze(common: &Common, triangles: bool, diagnostics: bool, conditions: bool, c: &str) -> CmdResult {
    let c: Rational = c.parse().map_err(|_| invalid(format!("--c: not a rational number: {c}")))?;
    let h = read_instance(common.input.as_deref())?;
    let report = h.analyze();
    if !(triangles || diagnostics || conditions) {
        match common.format {
            Format::Json => emit_json(&report)?,
            Format::Csv => println!("{}", analysis_csv(&report)),
        }
        return Ok(0);
    }
    require_json(common.format, "analyze with extra sections")?;
    let mut out = json!({ "analysis": report });
    if triangles {
        out["triangles"] = json!(triangle_counts(&h)?.per_edge);
    }
    if diagnostics {
        out["diagnostics"] = json!(local_sparsity_diagnostics(&h, c)?);
    }
    if conditions {
        let reports = vec![
            large_rank_condition(&h, c)?,
            extreme_order_condition(&h)?,
            rank_two_degree_condition(&h)?,
            clique_degree_split_condition(&h)?,
            regular_core_condition(&h)?,
            excess_deficit_condition(&h)?,
        ];
        out["conditions"] = json!(reports);
    }
    emit_json(&out)?;
    Ok(0)
}

#[derive(Deserialize)]
struct ExtendRequest {
    h3: EdgeColoring,
    lists: ListAssignment,
    n_colors: usize,
}

fn emit_coloring(format: Format, value: serde_json::Value, coloring: Option<&EdgeColoring>) -> Result<(), Failure> {
    match format {
        Format::Json => emit_json(&value),
        Format::Csv => {
            let coloring = coloring.ok_or_else(|| invalid("no coloring to write as CSV"))?;
            println!("edge,color");
            for (e, c) in &coloring.colors {
                println!("{e},{c}");
            }
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn color(
    common: &Common,
    exact: bool,
    palette: Option<usize>,
    order: OrderArg,
    seed: u64,
    lists: Option<&Path>,
    extend: Option<&Path>,
) -> CmdResult {
    let h = read_instance(common.input.as_deref())?;
    if let Some(path) = extend {
        let request: ExtendRequest =
            serde_json::from_str(&read_text(Some(path))?).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let report = extend_coloring(&h, &request.h3, &request.lists, request.n_colors)?;
        for note in &report.notes {
            eprintln!("{note}");
        }
        let code = match &report.failure {
            Some(f) if f.limit_hit => EXIT_BUDGET,
            _ => 0,
        };
        emit_coloring(common.format, json!(report), report.coloring.as_ref())?;
        return Ok(code);
    }
    if exact {
        let outcome = chromatic_index_exact(&h, &common.exact_budget())?;
        let code = match outcome {
            ExactOutcome::Exact { .. } => 0,
            ExactOutcome::LimitExceeded { lower, upper, .. } => {
                eprintln!("budget exhausted: {lower} <= q <= {upper}");
                EXIT_BUDGET
            }
        };
        emit_coloring(common.format, json!(outcome), Some(outcome.coloring()))?;
        return Ok(code);
    }
    let order_kind = match order {
        OrderArg::Input => EdgeOrder::Input,
        OrderArg::CliqueRank => EdgeOrder::DecreasingCliqueRank,
        OrderArg::Random => EdgeOrder::Random { seed },
    };
    let perm = edge_order(&h, order_kind);
    let outcome = match lists {
        Some(path) => {
            let lists: ListAssignment = serde_json::from_str(&read_text(Some(path))?)
                .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            greedy_list_color(&h, &lists, &perm)?
        }
        None => {
            let k = palette.unwrap_or_else(|| linhyper::derived::max_clique_rank(&h) + 1);
            greedy_color(&h, k, &perm)?
        }
    };
    let value = json!({
        "order": format!("{order_kind:?}"),
        "seed": matches!(order, OrderArg::Random).then_some(seed),
        "result": outcome,
    });
    if let GreedyOutcome::Stuck(f) = &outcome {
        eprintln!("greedy coloring stuck at edge {}", f.edge);
    }
    emit_coloring(common.format, value, outcome.coloring())?;
    Ok(0)
}

fn choosability(common: &Common, k: usize) -> CmdResult {
    require_json(common.format, "choosability")?;
    let h = read_instance(common.input.as_deref())?;
    let verdict = is_k_choosable(&h, k, &common.choosability_budget())?;
    emit_json(&verdict)?;
    Ok(if verdict.status == ChoosabilityStatus::Inconclusive {
        EXIT_BUDGET
    } else {
        0
    })
}

fn check(common: &Common, which: Conjecture) -> CmdResult {
    require_json(common.format, "check")?;
    let h = read_instance(common.input.as_deref())?;
    let verdict = check_conjecture(&h, which, &common.conjecture_budget())?;
    emit_json(&verdict)?;
    Ok(match verdict.status {
        VerdictStatus::Consistent => 0,
        VerdictStatus::Violated => EXIT_VIOLATION,
        VerdictStatus::Undecided => EXIT_BUDGET,
    })
}

fn critical(common: &Common) -> CmdResult {
    require_json(common.format, "critical")?;
    let h = read_instance(common.input.as_deref())?;
    emit_json(&critical_check(&h, &common.conjecture_budget())?)?;
    Ok(0)
}

fn run_sweep(args: &SweepArgs) -> CmdResult {
    let specs: Vec<GenSpec> = match &args.specs {
        Some(path) => serde_json::from_str(&read_text(Some(path))?)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?,
        None => random_sweep_specs(args.count, args.n_max, args.seed)?,
    };
    for spec in &specs {
        spec.validate()?;
    }
    let mut budget = ConjectureBudget::default();
    if let Some(n) = args.limit_nodes {
        budget.exact.max_nodes = n;
        budget.choosability.max_assignments = n;
    }
    budget.exact.time_limit = args.limit_ms.map(Duration::from_millis);
    budget.choosability.time_limit = budget.exact.time_limit;
    let opts = SweepOptions {
        conjectures: args.conjecture.clone(),
        budget,
        jobs: args.jobs,
    };
    eprintln!("sweep: {} instances, seed {}, rng {RNG_ALGORITHM}", specs.len(), args.seed);
    let report = sweep(&specs, &opts)?;
    match args.format {
        Format::Csv => write_csv(&report.rows, io::stdout().lock())?,
        Format::Json => emit_json(&report.rows)?,
    }
    for failure in &report.invariant_failures {
        eprintln!("invariant failure: {failure}");
    }
    if let Some(v) = &report.violation {
        let certificate = serde_json::to_string_pretty(&v).map_err(|e| invalid(e.to_string()))?;
        eprintln!("VIOLATION of {} at instance {}", v.verdict.conjecture, v.instance_id);
        eprintln!("{certificate}");
        if let Some(path) = &args.witness_out {
            fs::write(path, &certificate).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        }
        return Ok(EXIT_VIOLATION);
    }
    Ok(0)
}

fn export(input: Option<&Path>) -> CmdResult {
    let h = read_instance(input)?;
    print!("{}", export_dimacs(&h));
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate { family } => generate(family),
        Command::Analyze {
            common,
            triangles,
            diagnostics,
            conditions,
            c,
        } => analyze(&common, triangles, diagnostics, conditions, &c),
        Command::Color {
            common,
            exact,
            palette,
            order,
            seed,
            lists,
            extend,
        } => color(&common, exact, palette, order, seed, lists.as_deref(), extend.as_deref()),
        Command::Choosability { common, k } => choosability(&common, k),
        Command::Check { common, conjecture } => check(&common, conjecture),
        Command::Critical { common } => critical(&common),
        Command::Sweep(args) => run_sweep(&args),
        Command::Export { input } => export(input.as_deref()),
    };
    let _ = io::stdout().flush();
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
