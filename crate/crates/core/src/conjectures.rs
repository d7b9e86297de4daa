//! Conjectured bounds, per-instance consistency checks, the criticality
//! verifier, and parallel sweeps with CSV reporting.
//!
//! A verdict of `consistent` means only that every piece of gathered evidence
//! respects the bound on this instance. The evidence channels (exact `q`,
//! the `max R(e) + 1` greedy bound, choosability search) are reported
//! separately.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coloring::{
    chromatic_index_exact, edge_order, greedy_color, is_k_choosable, list_color_exact, ChoosabilityBudget,
    ChoosabilityStatus, ChoosabilityVerdict, EdgeColoring, EdgeOrder, ExactBudget, ExactOutcome, ListAssignment,
    ListSearchOutcome, LowerBoundSource,
};
use crate::derived::{clique_ranks, line_graph, max_clique_degree, max_clique_rank};
use crate::error::{Error, Result};
use crate::generators::GenSpec;
use crate::hypergraph::Hypergraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Conjecture {
    #[serde(rename = "EFL")]
    Efl,
    C1,
    C2,
    C3,
    C4,
}

impl Conjecture {
    pub const ALL: [Conjecture; 5] = [Conjecture::Efl, Conjecture::C1, Conjecture::C2, Conjecture::C3, Conjecture::C4];

    /// True for the list-coloring conjectures; EFL concerns `q` itself.
    pub fn is_list(self) -> bool {
        self != Conjecture::Efl
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conjecture::Efl => "EFL",
            Conjecture::C1 => "C1",
            Conjecture::C2 => "C2",
            Conjecture::C3 => "C3",
            Conjecture::C4 => "C4",
        })
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EFL" => Ok(Conjecture::Efl),
            "C1" => Ok(Conjecture::C1),
            "C2" => Ok(Conjecture::C2),
            "C3" => Ok(Conjecture::C3),
            "C4" => Ok(Conjecture::C4),
            _ => Err(Error::InvalidParameter(format!("unknown conjecture {s:?}"))),
        }
    }
}

/// The bound a conjecture asserts for `h`:
/// EFL and C1 give `n`, C2 gives `max D(x) + 1`, C3 gives
/// `Delta P - max(Delta, P) + 1`, and C4 (graphs only) gives `Delta + 1`.
pub fn conjectured_bound(h: &Hypergraph, which: Conjecture) -> Result<usize> {
    h.require_no_rank_one()?;
    h.require_linear()?;
    Ok(match which {
        Conjecture::Efl | Conjecture::C1 => h.n(),
        Conjecture::C2 => max_clique_degree(h) + 1,
        Conjecture::C3 => {
            let (delta, p) = (h.max_degree(), h.max_rank());
            delta * p - delta.max(p) + 1
        }
        Conjecture::C4 => {
            if let Some(e) = (0..h.m()).find(|&e| h.rank(e) != 2) {
                return Err(Error::NotAGraph { edge: e, rank: h.rank(e) });
            }
            h.max_degree() + 1
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureBudget {
    pub exact: ExactBudget,
    pub choosability: ChoosabilityBudget,
}

impl Default for ConjectureBudget {
    fn default() -> Self {
        ConjectureBudget {
            exact: ExactBudget::default(),
            choosability: ChoosabilityBudget {
                max_k: 16,
                max_assignments: 200_000,
                ..ChoosabilityBudget::default()
            },
        }
    }
}

/// Bounds on `q(H)` and `q_list(H)` shared by every conjecture check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evidence {
    pub q_exact: Option<usize>,
    pub q_lower: usize,
    pub q_upper: usize,
    pub certified_by: Option<LowerBoundSource>,
    /// Coloring achieving `q_upper`.
    pub upper_coloring: EdgeColoring,
    /// `max R(e) + 1`: greedy list coloring never needs more.
    pub list_upper: usize,
    pub notes: Vec<String>,
}

/// Runs the exact solver (within budget) and the greedy upper bound.
pub fn gather_evidence(h: &Hypergraph, budget: &ConjectureBudget) -> Result<Evidence> {
    let list_upper = max_clique_rank(h) + 1;
    let order = edge_order(h, EdgeOrder::DecreasingCliqueRank);
    let greedy = greedy_color(h, list_upper, &order)?;
    let greedy_coloring = greedy
        .coloring()
        .cloned()
        .ok_or_else(|| Error::Precondition("greedy coloring with max R(e) + 1 colors got stuck".into()))?;
    let greedy_upper = greedy_coloring.num_colors();
    let mut notes = Vec::new();
    let mut evidence = Evidence {
        q_exact: None,
        // Edges through one vertex pairwise meet.
        q_lower: h.max_degree(),
        q_upper: greedy_upper,
        certified_by: None,
        upper_coloring: greedy_coloring,
        list_upper,
        notes: vec![],
    };
    match chromatic_index_exact(h, &budget.exact) {
        Ok(outcome) => {
            evidence.q_lower = evidence.q_lower.max(outcome.lower());
            if outcome.upper() <= evidence.q_upper {
                evidence.q_upper = outcome.upper();
                evidence.upper_coloring = outcome.coloring().clone();
            }
            if let ExactOutcome::Exact { q, certified_by, .. } = outcome {
                evidence.q_exact = Some(q);
                evidence.certified_by = Some(certified_by);
            } else {
                notes.push("exact search budget exhausted".to_string());
            }
        }
        Err(Error::TooLarge { value, max, .. }) => {
            notes.push(format!("exact search skipped: {value} edges exceeds {max}"));
        }
        Err(e) => return Err(e),
    }
    evidence.notes = notes;
    Ok(evidence)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Consistent,
    Violated,
    Undecided,
}

impl VerdictStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictStatus::Consistent => "consistent",
            VerdictStatus::Violated => "violated",
            VerdictStatus::Undecided => "undecided",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Proof {
    /// The exact solver (or a lower bound it certified) shows `q > bound`.
    ChromaticIndexAbove {
        lower: usize,
        q_exact: Option<usize>,
        certified_by: Option<LowerBoundSource>,
    },
    /// Lists of size `bound` admitting no proper coloring.
    NotChoosable { k: usize, lists: ListAssignment },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationCertificate {
    pub instance: Hypergraph,
    pub conjecture: Conjecture,
    pub bound: usize,
    pub proof: Proof,
}

/// Re-checks a certificate from scratch: reruns the exact solver, or
/// searches the witness lists exhaustively.
pub fn verify_certificate(cert: &ViolationCertificate, node_limit: u64) -> Result<bool> {
    let h = &cert.instance;
    match &cert.proof {
        Proof::ChromaticIndexAbove { .. } => {
            let budget = ExactBudget {
                max_edges: 128,
                max_nodes: node_limit,
                time_limit: None,
            };
            Ok(chromatic_index_exact(h, &budget)?.lower() > cert.bound)
        }
        Proof::NotChoosable { k, lists } => {
            let sizes_ok = *k == cert.bound
                && (0..h.m()).all(|e| lists.get(e).is_some_and(|l| l.len() == *k));
            Ok(sizes_ok && list_color_exact(h, lists, node_limit)? == ListSearchOutcome::Infeasible)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub conjecture: Conjecture,
    pub bound: usize,
    pub q_exact: Option<usize>,
    /// Exact `q` when decided, else the best lower bound.
    pub lower_evidence: usize,
    /// Best constructive upper bound on `q`.
    pub upper_evidence: usize,
    /// `max R(e) + 1`, an unconditional upper bound on `q_list`.
    pub list_upper_evidence: usize,
    pub choosability_evidence: Option<ChoosabilityVerdict>,
    /// `q_list <= bound` is established on this instance.
    pub list_bound_verified: bool,
    pub status: VerdictStatus,
    pub witness: Option<ViolationCertificate>,
    pub notes: Vec<String>,
}

/// Checks one conjecture on one instance.
pub fn check_conjecture(h: &Hypergraph, which: Conjecture, budget: &ConjectureBudget) -> Result<ConjectureVerdict> {
    let bound = conjectured_bound(h, which)?;
    let evidence = gather_evidence(h, budget)?;
    judge(h, which, bound, &evidence, budget)
}

/// Runs choosability at `k` when it can add information: the instance is
/// small enough and `k` is below the unconditional `max R(e) + 1` bound.
fn choosability_probe(h: &Hypergraph, k: usize, budget: &ChoosabilityBudget) -> Option<ChoosabilityVerdict> {
    let useful = k >= 1 && k <= max_clique_rank(h) && h.m() <= budget.max_edges && k <= budget.max_k;
    useful.then(|| is_k_choosable(h, k, budget).ok()).flatten()
}

/// Combines shared evidence into a verdict for `which`.
pub fn judge(
    h: &Hypergraph,
    which: Conjecture,
    bound: usize,
    evidence: &Evidence,
    budget: &ConjectureBudget,
) -> Result<ConjectureVerdict> {
    let mut notes = evidence.notes.clone();
    let choosability = if which.is_list() {
        choosability_probe(h, bound, &budget.choosability)
    } else {
        None
    };
    let list_bound_verified = which.is_list()
        && (evidence.list_upper <= bound
            || choosability.as_ref().is_some_and(|v| v.status == ChoosabilityStatus::Choosable));

    let mut witness = None;
    if evidence.q_lower > bound {
        witness = Some(Proof::ChromaticIndexAbove {
            lower: evidence.q_lower,
            q_exact: evidence.q_exact,
            certified_by: evidence.certified_by,
        });
    } else if let Some(v) = choosability.as_ref().filter(|v| v.status == ChoosabilityStatus::NotChoosable) {
        witness = Some(Proof::NotChoosable {
            k: bound,
            lists: v.witness.clone().expect("not choosable verdicts carry a witness"),
        });
    }
    let status = if witness.is_some() {
        VerdictStatus::Violated
    } else if evidence.q_upper <= bound {
        VerdictStatus::Consistent
    } else {
        VerdictStatus::Undecided
    };
    if status == VerdictStatus::Consistent && which.is_list() && !list_bound_verified {
        notes.push(format!("q <= {bound} checked; q_list <= {bound} not established"));
    }
    if evidence.q_exact == Some(bound) {
        notes.push("tight".to_string());
    }
    Ok(ConjectureVerdict {
        conjecture: which,
        bound,
        q_exact: evidence.q_exact,
        lower_evidence: evidence.q_lower,
        upper_evidence: evidence.q_upper,
        list_upper_evidence: evidence.list_upper,
        choosability_evidence: choosability,
        list_bound_verified,
        status,
        witness: witness.map(|proof| ViolationCertificate {
            instance: h.clone(),
            conjecture: which,
            bound,
            proof,
        }),
        notes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseStatus {
    Verified,
    Refuted,
    Undecided,
}

/// Re-check for an edge `e` with `R(e) < D`: color `H \ e` with `D + 1`
/// colors, then give `e` a color unused on the edges meeting it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RemovalRecheck {
    pub edge: usize,
    pub clique_rank: usize,
    /// `q(H \ e)` when the exact solver decided it.
    pub q_without: Option<usize>,
    /// Coloring of `H` with at most `D + 1` colors obtained by extension.
    pub extended: Option<EdgeColoring>,
}

/// Necessary conditions for `H` to be a minimal counterexample to C2, with
/// `D = max D(x)`:
/// (i) `q_list(H) > D + 1`; (ii) removing any edge keeps `max D(x) = D`;
/// (iii) `q_list(H \ e) = D + 1` for every edge `e`; (iv) `R(e) >= D` for
/// every edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub max_clique_degree: usize,
    pub list_exceeds: ClauseStatus,
    pub list_exceeds_evidence: String,
    pub all_e_preserve_d: bool,
    /// First edge whose removal lowers `max D(x)`.
    pub d_dropping_edge: Option<usize>,
    pub subgraph_list_equals: ClauseStatus,
    pub subgraph_list_equals_evidence: String,
    pub all_e_r_ge_d: bool,
    /// First edge with `R(e) < D`.
    pub short_edge: Option<usize>,
    pub removal_rechecks: Vec<RemovalRecheck>,
    /// Set when (ii) or (iv) fails, or (i) or (iii) is refuted.
    pub not_minimal_counterexample: bool,
}

/// `q_list(h) <= k` established (`Some(true)`), refuted (`Some(false)`), or neither.
fn list_at_most(h: &Hypergraph, k: usize, evidence: &Evidence, budget: &ConjectureBudget) -> Option<bool> {
    if evidence.list_upper <= k {
        return Some(true);
    }
    if evidence.q_lower > k {
        return Some(false);
    }
    match choosability_probe(h, k, &budget.choosability).map(|v| v.status) {
        Some(ChoosabilityStatus::Choosable) => Some(true),
        Some(ChoosabilityStatus::NotChoosable) => Some(false),
        _ => None,
    }
}

/// Decides (ii) and (iv) exactly and attempts (i) and (iii).
pub fn critical_check(h: &Hypergraph, budget: &ConjectureBudget) -> Result<CriticalityReport> {
    h.require_no_rank_one()?;
    h.require_linear()?;
    let d = max_clique_degree(h);
    let ranks = clique_ranks(h);

    let mut d_dropping_edge = None;
    for e in 0..h.m() {
        if max_clique_degree(&h.remove_edge(e)?) != d {
            d_dropping_edge = Some(e);
            break;
        }
    }
    let short_edge = ranks.iter().position(|&r| r < d);

    let evidence = gather_evidence(h, budget)?;
    let (list_exceeds, list_exceeds_evidence) = match list_at_most(h, d + 1, &evidence, budget) {
        Some(true) => (ClauseStatus::Refuted, format!("q_list <= {} established", d + 1)),
        Some(false) => (ClauseStatus::Verified, format!("q_list > {} established", d + 1)),
        None => (ClauseStatus::Undecided, "budgets exhausted".to_string()),
    };

    let mut subgraph_list_equals = ClauseStatus::Verified;
    let mut subgraph_list_equals_evidence = format!("q_list(H \\ e) = {} for every edge", d + 1);
    let mut removal_rechecks = Vec::new();
    for (e, &rank) in ranks.iter().enumerate() {
        let sub = h.remove_edge(e)?;
        let sub_evidence = gather_evidence(&sub, budget)?;
        let at_most = list_at_most(&sub, d + 1, &sub_evidence, budget);
        let below = list_at_most(&sub, d, &sub_evidence, budget);
        if rank < d {
            removal_rechecks.push(removal_recheck(h, e, rank, d, &sub_evidence)?);
        }
        if subgraph_list_equals == ClauseStatus::Refuted {
            continue;
        }
        match (at_most, below) {
            (Some(false), _) => {
                subgraph_list_equals = ClauseStatus::Refuted;
                subgraph_list_equals_evidence = format!("q_list(H \\ e{e}) > {}", d + 1);
            }
            (_, Some(true)) => {
                subgraph_list_equals = ClauseStatus::Refuted;
                subgraph_list_equals_evidence = format!("q_list(H \\ e{e}) <= {d}");
            }
            (Some(true), Some(false)) => {}
            _ => {
                subgraph_list_equals = ClauseStatus::Undecided;
                subgraph_list_equals_evidence = format!("q_list(H \\ e{e}) not pinned down within budget");
            }
        }
    }

    let all_e_preserve_d = d_dropping_edge.is_none();
    let all_e_r_ge_d = short_edge.is_none();
    Ok(CriticalityReport {
        max_clique_degree: d,
        not_minimal_counterexample: !all_e_preserve_d
            || !all_e_r_ge_d
            || list_exceeds == ClauseStatus::Refuted
            || subgraph_list_equals == ClauseStatus::Refuted,
        list_exceeds,
        list_exceeds_evidence,
        all_e_preserve_d,
        d_dropping_edge,
        subgraph_list_equals,
        subgraph_list_equals_evidence,
        all_e_r_ge_d,
        short_edge,
        removal_rechecks,
    })
}

fn removal_recheck(h: &Hypergraph, e: usize, clique_rank: usize, d: usize, sub: &Evidence) -> Result<RemovalRecheck> {
    let mut recheck = RemovalRecheck {
        edge: e,
        clique_rank,
        q_without: sub.q_exact,
        extended: None,
    };
    if sub.q_upper > d + 1 {
        return Ok(recheck);
    }
    // Sub-instance edges keep their order, with `e` removed.
    let lg = line_graph(h);
    let mut coloring = EdgeColoring::new();
    for f in (0..h.m()).filter(|&f| f != e) {
        let sub_index = if f < e { f } else { f - 1 };
        coloring.set(f, sub.upper_coloring.get(sub_index).expect("sub coloring is total"));
    }
    let used: Vec<_> = lg.neighbors(e).iter().filter_map(|&f| coloring.get(f)).collect();
    if let Some(c) = (1..=(d + 1) as u32).find(|c| !used.contains(c)) {
        coloring.set(e, c);
        recheck.extended = Some(coloring);
    }
    Ok(recheck)
}

/// One CSV row of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub instance_id: usize,
    pub kind: String,
    pub seed: Option<u64>,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    #[serde(rename = "Delta")]
    pub delta_max: usize,
    pub rho: usize,
    #[serde(rename = "P")]
    pub p: usize,
    #[serde(rename = "maxD")]
    pub max_d: usize,
    #[serde(rename = "maxR")]
    pub max_r: usize,
    pub linear: bool,
    pub uniform: bool,
    pub regular: bool,
    pub q_exact: Option<usize>,
    pub q_lower: Option<usize>,
    pub q_upper: Option<usize>,
    pub bound_efl: Option<usize>,
    pub bound_c2: Option<usize>,
    pub bound_c3: Option<usize>,
    pub verdict_c1: String,
    pub verdict_c2: String,
    pub verdict_c3: String,
    pub notes: String,
}

pub const SWEEP_COLUMNS: [&str; 24] = [
    "instance_id",
    "kind",
    "seed",
    "n",
    "m",
    "delta",
    "Delta",
    "rho",
    "P",
    "maxD",
    "maxR",
    "linear",
    "uniform",
    "regular",
    "q_exact",
    "q_lower",
    "q_upper",
    "bound_efl",
    "bound_c2",
    "bound_c3",
    "verdict_c1",
    "verdict_c2",
    "verdict_c3",
    "notes",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepViolation {
    pub instance_id: usize,
    pub spec: GenSpec,
    pub verdict: ConjectureVerdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// First violated verdict in instance order; rows stop at its instance.
    pub violation: Option<SweepViolation>,
    /// Breaches of invariants that hold for every linear hypergraph without
    /// rank-1 edges (`maxD + 1 <= n`, `q_lower <= q_upper`).
    pub invariant_failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub conjectures: Vec<Conjecture>,
    pub budget: ConjectureBudget,
    /// Worker threads; 0 uses rayon's default.
    pub jobs: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            conjectures: vec![Conjecture::C1, Conjecture::C2, Conjecture::C3],
            budget: ConjectureBudget::default(),
            jobs: 0,
        }
    }
}

struct InstanceResult {
    row: SweepRow,
    violation: Option<ConjectureVerdict>,
    invariant_failures: Vec<String>,
}

fn blank_row(id: usize, spec: &GenSpec) -> SweepRow {
    SweepRow {
        instance_id: id,
        kind: spec.kind().to_string(),
        seed: spec.seed(),
        n: 0,
        m: 0,
        delta: 0,
        delta_max: 0,
        rho: 0,
        p: 0,
        max_d: 0,
        max_r: 0,
        linear: false,
        uniform: false,
        regular: false,
        q_exact: None,
        q_lower: None,
        q_upper: None,
        bound_efl: None,
        bound_c2: None,
        bound_c3: None,
        verdict_c1: "skipped".into(),
        verdict_c2: "skipped".into(),
        verdict_c3: "skipped".into(),
        notes: String::new(),
    }
}

fn run_instance(id: usize, spec: &GenSpec, opts: &SweepOptions) -> InstanceResult {
    let mut row = blank_row(id, spec);
    let mut out = InstanceResult {
        row: row.clone(),
        violation: None,
        invariant_failures: vec![],
    };
    let generated = match spec.generate() {
        Ok(g) => g,
        Err(e) => {
            row.verdict_c1 = "error".into();
            row.verdict_c2 = "error".into();
            row.verdict_c3 = "error".into();
            row.notes = format!("error: {e}");
            out.row = row;
            return out;
        }
    };
    let h = generated.hypergraph;
    let a = h.analyze();
    row.n = a.n;
    row.m = a.m;
    row.delta = a.delta_min;
    row.delta_max = a.delta_max;
    row.rho = a.rho;
    row.p = a.p;
    row.max_d = a.max_d;
    row.max_r = a.max_r;
    row.linear = a.linear;
    row.uniform = a.uniform;
    row.regular = a.regular;
    let mut notes: Vec<String> = Vec::new();
    if generated.partial {
        notes.push("partial".into());
    }
    if let Err(e) = h.require_no_rank_one().and_then(|_| h.require_linear()) {
        row.verdict_c1 = "inapplicable".into();
        row.verdict_c2 = "inapplicable".into();
        row.verdict_c3 = "inapplicable".into();
        notes.push(e.to_string());
        row.notes = notes.join("; ");
        out.row = row;
        return out;
    }
    if a.max_d + 1 > a.n {
        out.invariant_failures.push(format!("instance {id}: maxD + 1 = {} > n = {}", a.max_d + 1, a.n));
    }
    let evidence = match gather_evidence(&h, &opts.budget) {
        Ok(ev) => ev,
        Err(e) => {
            notes.push(format!("error: {e}"));
            row.notes = notes.join("; ");
            out.row = row;
            return out;
        }
    };
    if evidence.q_lower > evidence.q_upper {
        out.invariant_failures
            .push(format!("instance {id}: q_lower {} > q_upper {}", evidence.q_lower, evidence.q_upper));
    }
    row.q_exact = evidence.q_exact;
    row.q_lower = Some(evidence.q_lower);
    row.q_upper = Some(evidence.q_upper);
    row.bound_efl = conjectured_bound(&h, Conjecture::Efl).ok();
    row.bound_c2 = conjectured_bound(&h, Conjecture::C2).ok();
    row.bound_c3 = conjectured_bound(&h, Conjecture::C3).ok();
    notes.extend(evidence.notes.iter().cloned());

    for &which in &opts.conjectures {
        let bound = match conjectured_bound(&h, which) {
            Ok(b) => b,
            Err(e) => {
                notes.push(format!("{which}: {e}"));
                continue;
            }
        };
        let verdict = match judge(&h, which, bound, &evidence, &opts.budget) {
            Ok(v) => v,
            Err(e) => {
                notes.push(format!("{which}: error: {e}"));
                continue;
            }
        };
        let status = verdict.status.as_str().to_string();
        match which {
            Conjecture::C1 => row.verdict_c1 = status,
            Conjecture::Efl if !opts.conjectures.contains(&Conjecture::C1) => row.verdict_c1 = status,
            Conjecture::C2 => row.verdict_c2 = status,
            Conjecture::C3 => row.verdict_c3 = status,
            _ => notes.push(format!("{which}: {status}")),
        }
        if which.is_list() {
            let list = if verdict.list_bound_verified { "verified" } else { "open" };
            notes.push(format!("{which}: list bound {list}"));
        }
        if verdict.status == VerdictStatus::Violated && out.violation.is_none() {
            out.violation = Some(verdict);
        }
    }
    notes.dedup();
    row.notes = notes.join("; ");
    out.row = row;
    out
}

/// Runs every spec through the selected checks. Instances are processed in
/// parallel batches; rows come back in input order, and the sweep stops
/// after the first instance with a violated verdict.
pub fn sweep(specs: &[GenSpec], opts: &SweepOptions) -> Result<SweepReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let batch = pool.current_num_threads().max(1) * 4;
    let mut report = SweepReport::default();
    for (start, chunk) in (0..specs.len()).step_by(batch).map(|s| (s, &specs[s..(s + batch).min(specs.len())])) {
        let results: Vec<InstanceResult> = pool.install(|| {
            chunk
                .par_iter()
                .enumerate()
                .map(|(i, spec)| run_instance(start + i, spec, opts))
                .collect()
        });
        for (i, r) in results.into_iter().enumerate() {
            report.invariant_failures.extend(r.invariant_failures);
            report.rows.push(r.row);
            if let Some(verdict) = r.violation {
                report.violation = Some(SweepViolation {
                    instance_id: start + i,
                    spec: chunk[i].clone(),
                    verdict,
                });
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Writes the header and one line per row.
pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| Error::Malformed(format!("csv: {e}"));
    w.write_record(SWEEP_COLUMNS).map_err(io)?;
    for row in rows {
        w.serialize(row).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Malformed(format!("csv: {e}")))?;
    Ok(())
}

/// Random linear instance specs with `3 <= n <= n_max`, ranks in
/// `2..=min(n, 4)`, and per-instance seeds drawn from `seed`.
pub fn random_sweep_specs(count: usize, n_max: usize, seed: u64) -> Result<Vec<GenSpec>> {
    if n_max < 3 {
        return Err(Error::InvalidParameter(format!("n_max must be at least 3, got {n_max}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let n = rng.gen_range(3..=n_max);
            let rank_max = rng.gen_range(2..=n.min(4));
            GenSpec::RandomLinear {
                n,
                m_target: rng.gen_range(1..=n * (n - 1) / 2),
                rank_min: 2,
                rank_max,
                seed: rng.next_u64(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generators::{complete_graph, near_pencil, projective_plane};

    fn hyper(n: usize, edges: &[&[usize]]) -> Hypergraph {
        Hypergraph::canonical(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn bounds_on_named_instances() {
        let fano = projective_plane(2).unwrap();
        for which in [Conjecture::Efl, Conjecture::C1, Conjecture::C2, Conjecture::C3] {
            assert_eq!(conjectured_bound(&fano, which).unwrap(), 7, "{which}");
        }
        assert!(matches!(conjectured_bound(&fano, Conjecture::C4), Err(Error::NotAGraph { .. })));
        let k4 = complete_graph(4).unwrap();
        assert_eq!(conjectured_bound(&k4, Conjecture::C4).unwrap(), 4);
        assert_eq!(conjectured_bound(&k4, Conjecture::C3).unwrap(), 4);
        assert!(conjectured_bound(&hyper(2, &[&[0], &[0, 1]]), Conjecture::C1).is_err());
        assert!(conjectured_bound(&hyper(4, &[&[0, 1, 2], &[0, 1, 3]]), Conjecture::C1).is_err());
    }

    #[test]
    fn conjecture_names_round_trip() {
        for c in Conjecture::ALL {
            assert_eq!(c.to_string().parse::<Conjecture>().unwrap(), c);
        }
        assert!("C5".parse::<Conjecture>().is_err());
    }

    #[test]
    fn fano_c2_is_tight() {
        let fano = projective_plane(2).unwrap();
        let v = check_conjecture(&fano, Conjecture::C2, &ConjectureBudget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::Consistent);
        assert_eq!((v.bound, v.q_exact), (7, Some(7)));
        assert!(v.list_bound_verified);
        assert!(v.notes.iter().any(|n| n == "tight"));
    }

    #[test]
    fn near_pencil_and_triangle_consistent() {
        let v = check_conjecture(&near_pencil(6).unwrap(), Conjecture::C1, &ConjectureBudget::default()).unwrap();
        assert_eq!((v.status, v.q_exact, v.bound), (VerdictStatus::Consistent, Some(6), 6));
        let v = check_conjecture(&complete_graph(3).unwrap(), Conjecture::C4, &ConjectureBudget::default()).unwrap();
        assert_eq!((v.status, v.q_exact, v.bound), (VerdictStatus::Consistent, Some(3), 3));
        assert!(v.list_bound_verified);
    }

    #[test]
    fn choosability_channel_runs_below_fact_bound() {
        // C4 on the 4-cycle: bound 3, max R(e) = 2, so no search is needed.
        let c4 = hyper(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let v = check_conjecture(&c4, Conjecture::C4, &ConjectureBudget::default()).unwrap();
        assert!(v.choosability_evidence.is_none() && v.list_bound_verified);
        // A bound of 2 on the same cycle sits below max R(e) + 1 = 3.
        let ev = gather_evidence(&c4, &ConjectureBudget::default()).unwrap();
        let v = judge(&c4, Conjecture::C1, 2, &ev, &ConjectureBudget::default()).unwrap();
        let ch = v.choosability_evidence.unwrap();
        assert_eq!((ch.k, ch.status), (2, ChoosabilityStatus::Choosable));
        assert!(v.list_bound_verified);
        assert_eq!(v.status, VerdictStatus::Consistent);
        // K4 under C3 probes k = 4 on six edges; the budget may stop it, but
        // it must never report a violation.
        let v = check_conjecture(&complete_graph(4).unwrap(), Conjecture::C3, &ConjectureBudget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::Consistent);
        assert_ne!(v.choosability_evidence.unwrap().status, ChoosabilityStatus::NotChoosable);
    }

    #[test]
    fn false_bounds_produce_checkable_certificates() {
        let k3 = complete_graph(3).unwrap();
        let ev = gather_evidence(&k3, &ConjectureBudget::default()).unwrap();
        let v = judge(&k3, Conjecture::C1, 2, &ev, &ConjectureBudget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::Violated);
        let cert = v.witness.unwrap();
        assert!(verify_certificate(&cert, 1_000_000).unwrap());

        let lists = ListAssignment::uniform(3, 2);
        let cert = ViolationCertificate {
            instance: k3.clone(),
            conjecture: Conjecture::C1,
            bound: 2,
            proof: Proof::NotChoosable { k: 2, lists },
        };
        assert!(verify_certificate(&cert, 1_000_000).unwrap());
        let bogus = ViolationCertificate {
            bound: 3,
            proof: Proof::NotChoosable { k: 3, lists: ListAssignment::uniform(3, 3) },
            ..cert
        };
        assert!(!verify_certificate(&bogus, 1_000_000).unwrap());
    }

    #[test]
    fn criticality_fano() {
        let r = critical_check(&projective_plane(2).unwrap(), &ConjectureBudget::default()).unwrap();
        assert_eq!(r.max_clique_degree, 6);
        assert!(r.all_e_preserve_d && r.all_e_r_ge_d);
        assert!(r.removal_rechecks.is_empty());
        // Greedy with max R(e) + 1 = D + 1 colors always succeeds.
        assert_eq!(r.list_exceeds, ClauseStatus::Refuted);
        assert!(r.not_minimal_counterexample);
    }

    #[test]
    fn criticality_single_edge_and_near_pencil() {
        let r = critical_check(&hyper(3, &[&[0, 1, 2]]), &ConjectureBudget::default()).unwrap();
        assert_eq!(r.max_clique_degree, 2);
        assert!(!r.all_e_preserve_d);
        assert_eq!(r.d_dropping_edge, Some(0));

        // D(4) = 4 survives removal of the big edge, so (ii) holds here.
        let r = critical_check(&near_pencil(5).unwrap(), &ConjectureBudget::default()).unwrap();
        assert_eq!(r.max_clique_degree, 4);
        assert!(r.all_e_preserve_d && r.all_e_r_ge_d);
    }

    #[test]
    fn short_edges_recolor_by_extension() {
        // Path a-b-c plus a pendant triangle edge: the end edges have R(e) < D.
        let h = hyper(6, &[&[0, 1], &[1, 2, 3], &[3, 4], &[4, 5]]);
        let r = critical_check(&h, &ConjectureBudget::default()).unwrap();
        assert!(!r.all_e_r_ge_d);
        assert!(!r.removal_rechecks.is_empty());
        for recheck in &r.removal_rechecks {
            let coloring = recheck.extended.as_ref().expect("extension succeeds");
            assert!(is_proper(&h, coloring).unwrap());
            assert!(coloring.colors.values().all(|&c| c as usize <= r.max_clique_degree + 1));
        }
    }

    #[test]
    fn sweep_projective_planes_and_empty_stream() {
        let specs = vec![GenSpec::ProjectivePlane { q: 2 }, GenSpec::ProjectivePlane { q: 3 }];
        let report = sweep(&specs, &SweepOptions::default()).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!(report.violation.is_none() && report.invariant_failures.is_empty());
        for row in &report.rows {
            assert_eq!(row.q_exact, Some(row.n));
            assert_eq!(row.verdict_c1, "consistent");
        }
        let mut out = Vec::new();
        write_csv(&sweep(&[], &SweepOptions::default()).unwrap().rows, &mut out).unwrap();
        assert_eq!(String::from_utf8(out).unwrap().trim_end(), SWEEP_COLUMNS.join(","));
    }

    #[test]
    fn sweep_rows_follow_input_order() {
        let specs = random_sweep_specs(24, 7, 11).unwrap();
        let opts = SweepOptions { jobs: 3, ..SweepOptions::default() };
        let a = sweep(&specs, &opts).unwrap();
        let b = sweep(&specs, &SweepOptions { jobs: 1, ..opts }).unwrap();
        assert_eq!(a, b);
        assert!(a.rows.iter().enumerate().all(|(i, r)| r.instance_id == i));
        assert_eq!(random_sweep_specs(24, 7, 11).unwrap(), specs);
    }

    #[test]
    fn sweep_records_generation_errors() {
        let specs = vec![GenSpec::ProjectivePlane { q: 4 }, GenSpec::CompleteGraph { n: 3 }];
        let report = sweep(&specs, &SweepOptions::default()).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].verdict_c1, "error");
        assert_eq!(report.rows[1].verdict_c1, "consistent");
    }

    #[test]
    fn csv_has_fixed_columns() {
        let report = sweep(&[GenSpec::NearPencil { n: 4 }], &SweepOptions::default()).unwrap();
        let mut out = Vec::new();
        write_csv(&report.rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_COLUMNS.join(","));
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), SWEEP_COLUMNS.len());
        assert_eq!(&fields[..5], ["0", "near_pencil", "", "4", "4"]);
    }
}
