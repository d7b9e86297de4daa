//! Triangle counts, local-sparsity diagnostics, and hypothesis checkers.
//!
//! Every bound is evaluated in exact rational arithmetic, so no comparison
//! can flip on rounding. The universal constant `C` of the large-rank
//! results is never given a value here; checkers take it as a parameter
//! (default 3, its smallest admissible value) and label their conclusions
//! as conditional on it.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::coloring::{deficit_excess, DeficitExcess};
use crate::derived::{clique_degrees, clique_ranks, line_graph, split_by_rank};
use crate::error::{Error, Result};
use crate::hypergraph::{common_vertex, Hypergraph};

pub type Rational = Ratio<i128>;

/// Default value for the universal constant `C`.
pub fn default_c() -> Rational {
    Rational::from_integer(3)
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i128)
}

/// Serializes a rational as `"p/q"` (or `"p"` when integral).
pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn ser_opt_rational<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Triangles with side `e`: unordered pairs `{f, g}` of other edges such
/// that `e`, `f`, `g` pairwise intersect.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeTriangles {
    /// All three edges through one common vertex.
    pub t1: u64,
    /// Three distinct pairwise meeting vertices.
    pub t2: u64,
}

impl EdgeTriangles {
    pub fn t(&self) -> u64 {
        self.t1 + self.t2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleCounts {
    pub per_edge: Vec<EdgeTriangles>,
}

impl TriangleCounts {
    pub fn max_t1(&self) -> u64 {
        self.per_edge.iter().map(|t| t.t1).max().unwrap_or(0)
    }

    pub fn max_t2(&self) -> u64 {
        self.per_edge.iter().map(|t| t.t2).max().unwrap_or(0)
    }

    pub fn max_t(&self) -> u64 {
        self.per_edge.iter().map(EdgeTriangles::t).max().unwrap_or(0)
    }
}

/// Counts triangles per edge through pairs of line-graph neighbors.
pub fn triangle_counts(h: &Hypergraph) -> Result<TriangleCounts> {
    h.require_linear()?;
    let lg = line_graph(h);
    let edges = h.edges();
    let per_edge = (0..h.m())
        .map(|e| {
            let nbrs = lg.neighbors(e);
            let mut counts = EdgeTriangles::default();
            for (i, &f) in nbrs.iter().enumerate() {
                let at_f = common_vertex(&edges[e], &edges[f]);
                for &g in &nbrs[i + 1..] {
                    if !lg.has_edge(f, g) {
                        continue;
                    }
                    if at_f == common_vertex(&edges[e], &edges[g]) {
                        counts.t1 += 1;
                    } else {
                        counts.t2 += 1;
                    }
                }
            }
            counts
        })
        .collect();
    Ok(TriangleCounts { per_edge })
}

/// Pads every edge with fresh degree-1 vertices up to the maximum rank.
/// Edge order, and hence the line graph, is unchanged.
pub fn uniformize(h: &Hypergraph) -> Hypergraph {
    let p = h.max_rank();
    let mut next = h.n();
    let edges: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .map(|edge| {
            let mut padded = edge.clone();
            padded.extend(next..next + (p - edge.len()));
            next += p - edge.len();
            padded
        })
        .collect();
    Hypergraph::new(next, edges).expect("padding keeps edges distinct and in range")
}

/// The bound chain for a uniform linear hypergraph of rank `r >= 3` and
/// maximum degree `delta`, with `k = delta * (r - 1)`:
///
/// * line-graph degree bound `R = r (k + 1 - r) / (r - 1)`,
/// * vertex degree bounds `k / (r - 1)` and `R / r + 1`,
/// * `1/f = 1/(2r) + (r - 1)^2 / (2R)`,
/// * concurrent-triangle bound `(R/2)(R/r - 1)`, spread-triangle bound
///   `R (r - 1)^2 / 2`, and total `R^2 / f`,
///
/// each compared against what the instance actually measures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSparsityDiagnostics {
    pub r: usize,
    pub delta: usize,
    pub k: usize,
    #[serde(rename = "R", serialize_with = "ser_rational")]
    pub line_degree_bound: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub degree_bound: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub degree_r_bound: Rational,
    pub k_le_r: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub f: Option<Rational>,
    pub f_gt_one: bool,
    #[serde(serialize_with = "ser_rational")]
    pub t1_bound: Rational,
    /// Set when `R/r - 1 < 0` forced `t1_bound` to 0.
    pub t1_bound_clamped: bool,
    #[serde(serialize_with = "ser_rational")]
    pub t2_bound: Rational,
    /// `R^2 / f`, undefined when `R = 0`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub triangle_bound: Option<Rational>,
    #[serde(rename = "C", serialize_with = "ser_rational")]
    pub c: Rational,
    /// `P >= C >= 3` and `delta >= C (P - 1)`.
    pub hypothesis_holds: bool,
    pub measured_max_clique_rank: usize,
    pub measured_max_degree: usize,
    pub measured_max_t1: u64,
    pub measured_max_t2: u64,
    pub measured_max_t: u64,
    /// Human-readable description of each measured quantity exceeding its bound.
    pub violations: Vec<String>,
    pub conclusion: String,
}

impl LocalSparsityDiagnostics {
    pub fn chain_holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates the bound chain on a uniform linear hypergraph of rank >= 3.
pub fn local_sparsity_diagnostics(h: &Hypergraph, c: Rational) -> Result<LocalSparsityDiagnostics> {
    if !h.is_uniform() {
        return Err(Error::NotUniform {
            min: h.min_rank(),
            max: h.max_rank(),
        });
    }
    let r = h.max_rank();
    if r < 3 {
        return Err(Error::Precondition(format!("rank must be at least 3, got {r}")));
    }
    let counts = triangle_counts(h)?;
    let delta = h.max_degree();
    let k = delta * (r - 1);
    let rr = int(r);
    let r1 = int(r - 1);
    let big_r = rr * (int(k) + Rational::one() - rr) / r1;
    let degree_bound = int(k) / r1;
    let degree_r_bound = big_r / rr + Rational::one();
    let f_inv = (!big_r.is_zero())
        .then(|| Rational::one() / (int(2) * rr) + r1 * r1 / (int(2) * big_r));
    let f = f_inv.map(|fi| fi.recip());
    let raw_t1 = big_r / int(2) * (big_r / rr - Rational::one());
    let t1_bound_clamped = raw_t1 < Rational::zero();
    let t1_bound = if t1_bound_clamped { Rational::zero() } else { raw_t1 };
    let t2_bound = big_r * r1 * r1 / int(2);
    let triangle_bound = f_inv.map(|fi| big_r * big_r * fi);
    let hypothesis_holds = rr >= c && c >= int(3) && int(delta) >= c * r1;

    let measured_max_clique_rank = clique_ranks(h).into_iter().max().unwrap_or(0);
    let degrees = h.degrees();
    let mut violations = Vec::new();
    for (e, &re) in clique_ranks(h).iter().enumerate() {
        if int(re) > big_r {
            violations.push(format!("R(e{e}) = {re} > R = {big_r}"));
        }
    }
    for (x, &d) in degrees.iter().enumerate() {
        if int(d) > degree_r_bound {
            violations.push(format!("d({x}) = {d} > R/r + 1 = {degree_r_bound}"));
        }
    }
    for (e, t) in counts.per_edge.iter().enumerate() {
        if Rational::from_integer(t.t1 as i128) > t1_bound {
            violations.push(format!("T1(e{e}) = {} > {t1_bound}", t.t1));
        }
        if Rational::from_integer(t.t2 as i128) > t2_bound {
            violations.push(format!("T2(e{e}) = {} > {t2_bound}", t.t2));
        }
        if let Some(tb) = triangle_bound {
            if Rational::from_integer(t.t() as i128) > tb {
                violations.push(format!("T(e{e}) = {} > R^2/f = {tb}", t.t()));
            }
        }
    }
    let conclusion = if hypothesis_holds {
        format!(
            "q_list <= Delta(P-1) = {}, conditional on the universal constant C = {c}",
            delta * (r - 1)
        )
    } else {
        format!("hypothesis P >= C >= 3 and Delta >= C(P-1) fails for C = {c}; no conclusion")
    };

    Ok(LocalSparsityDiagnostics {
        r,
        delta,
        k,
        line_degree_bound: big_r,
        degree_bound,
        degree_r_bound,
        k_le_r: int(k) <= big_r,
        f_gt_one: f.is_some_and(|f| f > Rational::one()),
        f,
        t1_bound,
        t1_bound_clamped,
        t2_bound,
        triangle_bound,
        c,
        hypothesis_holds,
        measured_max_clique_rank,
        measured_max_degree: delta,
        measured_max_t1: counts.max_t1(),
        measured_max_t2: counts.max_t2(),
        measured_max_t: counts.max_t(),
        violations,
        conclusion,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionStatus {
    Holds,
    Fails,
    /// A precondition of the checker itself is not met.
    Inapplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Vertex(usize),
    Edge(usize),
    Pair(usize, usize),
}

/// One named inequality, instantiated on the instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

impl Clause {
    fn new(name: &str, holds: bool, detail: String) -> Self {
        Clause {
            name: name.into(),
            holds,
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub status: ConditionStatus,
    pub clauses: Vec<Clause>,
    pub witness: Option<Witness>,
    /// What the condition yields when it holds.
    pub conclusion: Option<String>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.status == ConditionStatus::Holds
    }

    fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn clause_holds(&self, name: &str) -> Option<bool> {
        self.clause(name).map(|c| c.holds)
    }
}

fn status(holds: bool) -> ConditionStatus {
    if holds {
        ConditionStatus::Holds
    } else {
        ConditionStatus::Fails
    }
}

/// `P >= C >= 3`, `Delta >= C (P - 1)`, and (`H` uniform or
/// `n > Delta (P - 1)`); yields `q_list <= n - 1` conditional on `C`.
pub fn large_rank_condition(h: &Hypergraph, c: Rational) -> Result<ConditionReport> {
    h.require_no_rank_one()?;
    let (n, p, delta) = (h.n(), h.max_rank(), h.max_degree());
    let p1 = p.saturating_sub(1);
    let rank_ok = int(p) >= c && c >= int(3);
    let degree_ok = int(delta) >= c * int(p1);
    let uniform = h.is_uniform();
    let order_ok = n > delta * p1;
    let clauses = vec![
        Clause::new("rank", rank_ok, format!("P = {p} >= C = {c} >= 3")),
        Clause::new("degree", degree_ok, format!("Delta = {delta} >= C(P-1) = {}", c * int(p1))),
        Clause::new("uniform", uniform, format!("uniform = {uniform}")),
        Clause::new("order", order_ok, format!("n = {n} > Delta(P-1) = {}", delta * p1)),
    ];
    let holds = rank_ok && degree_ok && (uniform || order_ok);
    Ok(ConditionReport {
        condition: "large_rank".into(),
        status: status(holds),
        clauses,
        witness: None,
        conclusion: holds.then(|| format!("q_list <= n - 1 = {}, conditional on the universal constant C = {c}", n - 1)),
    })
}

/// `n > (Delta - 1)^2` or `n < rho^2`; yields `q_list <= n`.
pub fn extreme_order_condition(h: &Hypergraph) -> Result<ConditionReport> {
    h.require_no_rank_one()?;
    h.require_linear()?;
    let (n, delta, rho) = (h.n(), h.max_degree(), h.min_rank());
    let dense_bound = delta.saturating_sub(1).pow(2);
    let dense = n > dense_bound;
    let sparse = n < rho * rho;
    let clauses = vec![
        Clause::new("dense", dense, format!("n = {n} > (Delta-1)^2 = {dense_bound}")),
        Clause::new("sparse", sparse, format!("n = {n} < rho^2 = {}", rho * rho)),
    ];
    let holds = dense || sparse;
    Ok(ConditionReport {
        condition: "extreme_order".into(),
        status: status(holds),
        clauses,
        witness: None,
        conclusion: holds.then(|| format!("q_list <= n = {n}")),
    })
}

/// `Delta(H2) <= n - 2 Delta(H3) - 1`, where `H3` keeps the edges of rank at
/// least 3 and `H2` those of rank 2. Vacuous when there are no rank-2 edges.
pub fn rank_two_degree_condition(h: &Hypergraph) -> Result<ConditionReport> {
    let split = split_by_rank(h)?;
    let n = h.n() as i64;
    let d3 = split.h3.max_degree() as i64;
    let d2 = split.h2.max_degree() as i64;
    let rhs = n - 2 * d3 - 1;
    let vacuous = split.h2.m() == 0;
    let holds = vacuous || d2 <= rhs;
    let witness = if holds {
        None
    } else {
        let deg = split.h2.degrees();
        deg.iter().position(|&d| d as i64 == d2).map(Witness::Vertex)
    };
    let detail = if vacuous {
        "no rank-2 edges".to_string()
    } else {
        format!("Delta(H2) = {d2} <= n - 2 Delta(H3) - 1 = {rhs}")
    };
    Ok(ConditionReport {
        condition: "rank_two_degree".into(),
        status: status(holds),
        clauses: vec![Clause::new("degree", holds, detail)],
        witness,
        conclusion: holds.then(|| {
            "any list n-coloring of H3 extends to H, given the weak Vizing list conjecture for H2".to_string()
        }),
    })
}

/// Shared precondition of the pair-coverage checkers.
fn pair_coverage_gate(h: &Hypergraph, condition: &str) -> Option<ConditionReport> {
    h.pair_coverage_defect().map(|(x, y, count)| ConditionReport {
        condition: condition.into(),
        status: ConditionStatus::Inapplicable,
        clauses: vec![Clause::new(
            "pair_coverage",
            false,
            format!("vertex pair ({x}, {y}) lies in {count} edges, not exactly one"),
        )],
        witness: Some(Witness::Pair(x, y)),
        conclusion: None,
    })
}

const EXTENSION_CONCLUSION: &str =
    "any list n-coloring of H3 extends to H, given the weak Vizing list conjecture for H2";

/// Every vertex has `D(x, H3) >= 2 Delta(H3)`. Needs every vertex pair in
/// exactly one edge; otherwise inapplicable.
pub fn clique_degree_split_condition(h: &Hypergraph) -> Result<ConditionReport> {
    let split = split_by_rank(h)?;
    if let Some(report) = pair_coverage_gate(h, "clique_degree_split") {
        return Ok(report);
    }
    let d = clique_degrees(&split.h3);
    let need = 2 * split.h3.max_degree();
    let (x, min) = d.iter().copied().enumerate().min_by_key(|&(_, v)| v).unwrap_or((0, 0));
    let holds = min >= need;
    Ok(ConditionReport {
        condition: "clique_degree_split".into(),
        status: status(holds),
        clauses: vec![Clause::new(
            "clique_degree",
            holds,
            format!("min D(x, H3) = {min} (at {x}) >= 2 Delta(H3) = {need}"),
        )],
        witness: (!holds).then_some(Witness::Vertex(x)),
        conclusion: holds.then(|| EXTENSION_CONCLUSION.to_string()),
    })
}

/// `H3` (over all vertices of `H`) is regular. Same precondition as
/// [`clique_degree_split_condition`].
pub fn regular_core_condition(h: &Hypergraph) -> Result<ConditionReport> {
    let split = split_by_rank(h)?;
    if let Some(report) = pair_coverage_gate(h, "regular_core") {
        return Ok(report);
    }
    let deg = split.h3.degrees();
    let max = deg.iter().copied().max().unwrap_or(0);
    let holds = deg.iter().all(|&d| d == max);
    Ok(ConditionReport {
        condition: "regular_core".into(),
        status: status(holds),
        clauses: vec![Clause::new("regular", holds, format!("H3 degrees all equal {max}: {holds}"))],
        witness: deg.iter().position(|&d| d != max).map(Witness::Vertex),
        conclusion: holds.then(|| EXTENSION_CONCLUSION.to_string()),
    })
}

/// First vertex whose excess is below twice its deficit.
pub fn excess_shortfall(entries: &[DeficitExcess]) -> Option<DeficitExcess> {
    entries.iter().find(|d| d.excess < 2 * d.deficit).copied()
}

/// Every vertex has excess at least twice its deficit, with
/// `Delta = Delta(H3)`. Same precondition as [`clique_degree_split_condition`].
pub fn excess_deficit_condition(h: &Hypergraph) -> Result<ConditionReport> {
    let split = split_by_rank(h)?;
    if let Some(report) = pair_coverage_gate(h, "excess_deficit") {
        return Ok(report);
    }
    let entries = deficit_excess(&split.h3, split.h3.max_degree())?;
    let shortfall = excess_shortfall(&entries);
    let holds = shortfall.is_none();
    let detail = match shortfall {
        Some(d) => format!("at {}: excess {} < 2 * deficit {}", d.vertex, d.excess, d.deficit),
        None => "excess(x) >= 2 deficit(x) at every vertex".to_string(),
    };
    Ok(ConditionReport {
        condition: "excess_deficit".into(),
        status: status(holds),
        clauses: vec![Clause::new("excess", holds, detail)],
        witness: shortfall.map(|d| Witness::Vertex(d.vertex)),
        conclusion: holds.then(|| EXTENSION_CONCLUSION.to_string()),
    })
}
