//! Canonical and random instance families.
//!
//! Every generator returns a hypergraph in canonical form.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Identifier of the random source used by [`random_linear`], recorded in
/// sweep reports.
pub const RNG_ALGORITHM: &str = "chacha8 (rand_chacha 0.3)";

pub const MAX_PROJECTIVE_ORDER: usize = 13;
pub const MAX_STEINER_ORDER: usize = 99;

/// Failed draws tolerated per requested edge before [`random_linear`] gives up.
pub const REJECTIONS_PER_EDGE: usize = 1000;

/// A request for one generated instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    ProjectivePlane {
        q: usize,
    },
    CompleteGraph {
        n: usize,
    },
    NearPencil {
        n: usize,
    },
    SteinerTriple {
        n: usize,
    },
    RandomLinear {
        n: usize,
        m_target: usize,
        rank_min: usize,
        rank_max: usize,
        seed: u64,
    },
}

impl GenSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            GenSpec::ProjectivePlane { .. } => "projective_plane",
            GenSpec::CompleteGraph { .. } => "complete_graph",
            GenSpec::NearPencil { .. } => "near_pencil",
            GenSpec::SteinerTriple { .. } => "steiner_triple",
            GenSpec::RandomLinear { .. } => "random_linear",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            GenSpec::RandomLinear { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GenSpec::ProjectivePlane { q } => check_projective_order(q),
            GenSpec::CompleteGraph { n } => check_min("complete_graph n", n, 2),
            GenSpec::NearPencil { n } => check_min("near_pencil n", n, 3),
            GenSpec::SteinerTriple { n } => check_steiner_order(n),
            GenSpec::RandomLinear {
                n,
                rank_min,
                rank_max,
                ..
            } => check_random_params(n, rank_min, rank_max),
        }
    }

    pub fn generate(&self) -> Result<Generated> {
        self.validate()?;
        let plain = |hypergraph| Generated {
            hypergraph,
            partial: false,
        };
        match *self {
            GenSpec::ProjectivePlane { q } => projective_plane(q).map(plain),
            GenSpec::CompleteGraph { n } => complete_graph(n).map(plain),
            GenSpec::NearPencil { n } => near_pencil(n).map(plain),
            GenSpec::SteinerTriple { n } => steiner_triple(n).map(plain),
            GenSpec::RandomLinear {
                n,
                m_target,
                rank_min,
                rank_max,
                seed,
            } => random_linear(n, m_target, rank_min, rank_max, seed).map(|r| Generated {
                partial: r.partial,
                hypergraph: r.hypergraph,
            }),
        }
    }
}

/// A generated instance. `partial` is set when a random generator stopped
/// short of its target edge count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub hypergraph: Hypergraph,
    pub partial: bool,
}

fn check_min(what: &str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::InvalidParameter(format!("{what} must be at least {min}, got {value}")));
    }
    Ok(())
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

fn check_projective_order(q: usize) -> Result<()> {
    if !is_prime(q) {
        return Err(Error::InvalidParameter(format!(
            "projective plane order must be prime, got {q}"
        )));
    }
    if q > MAX_PROJECTIVE_ORDER {
        return Err(Error::InvalidParameter(format!(
            "projective plane order {q} exceeds {MAX_PROJECTIVE_ORDER}"
        )));
    }
    Ok(())
}

fn check_steiner_order(n: usize) -> Result<()> {
    if n % 6 != 3 {
        return Err(Error::InvalidParameter(format!(
            "Bose construction needs n = 3 (mod 6), got {n}"
        )));
    }
    if n > MAX_STEINER_ORDER {
        return Err(Error::InvalidParameter(format!(
            "Steiner triple order {n} exceeds {MAX_STEINER_ORDER}"
        )));
    }
    Ok(())
}

fn check_random_params(n: usize, rank_min: usize, rank_max: usize) -> Result<()> {
    if !(2 <= rank_min && rank_min <= rank_max && rank_max <= n) {
        return Err(Error::InvalidParameter(format!(
            "need 2 <= rank_min <= rank_max <= n, got rank_min={rank_min}, rank_max={rank_max}, n={n}"
        )));
    }
    Ok(())
}

/// The projective plane of prime order `q` over the integers mod `q`.
///
/// Points and lines are both the normalized nonzero triples `(1,a,b)`,
/// `(0,1,b)`, `(0,0,1)`; a point lies on a line iff their dot product
/// vanishes mod `q`.
pub fn projective_plane(q: usize) -> Result<Hypergraph> {
    check_projective_order(q)?;
    let mut points = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            points.push([1, a, b]);
        }
    }
    for b in 0..q {
        points.push([0, 1, b]);
    }
    points.push([0, 0, 1]);
    let lines = points
        .iter()
        .map(|l| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| (l[0] * p[0] + l[1] * p[1] + l[2] * p[2]) % q == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    Hypergraph::canonical(points.len(), lines)
}

/// All `n choose 2` pairs as rank-2 edges.
pub fn complete_graph(n: usize) -> Result<Hypergraph> {
    check_min("complete_graph n", n, 2)?;
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| vec![i, j]))
        .collect();
    Hypergraph::canonical(n, edges)
}

/// One edge `{0, .., n-2}` plus the pairs `{i, n-1}`.
pub fn near_pencil(n: usize) -> Result<Hypergraph> {
    check_min("near_pencil n", n, 3)?;
    let mut edges = vec![(0..n - 1).collect::<Vec<_>>()];
    edges.extend((0..n - 1).map(|i| vec![i, n - 1]));
    Hypergraph::canonical(n, edges)
}

/// Steiner triple system on `n = 6t + 3` points by the Bose construction.
///
/// Points are `(x, i)` with `x` in `Z_{2t+1}` and `i` in `Z_3`, numbered
/// `3x + i`. The quasigroup is `x o y = (x + y)(t + 1) mod (2t + 1)`, which is
/// idempotent and commutative.
pub fn steiner_triple(n: usize) -> Result<Hypergraph> {
    check_steiner_order(n)?;
    let t = (n - 3) / 6;
    let v = 2 * t + 1;
    let id = |x: usize, i: usize| 3 * x + i;
    let op = |x: usize, y: usize| ((x + y) * (t + 1)) % v;
    let mut triples = Vec::with_capacity(n * (n - 1) / 6);
    for x in 0..v {
        triples.push(vec![id(x, 0), id(x, 1), id(x, 2)]);
    }
    for x in 0..v {
        for y in x + 1..v {
            for i in 0..3 {
                triples.push(vec![id(x, i), id(y, i), id(op(x, y), (i + 1) % 3)]);
            }
        }
    }
    Hypergraph::canonical(n, triples)
}

/// Outcome of [`random_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomLinear {
    pub hypergraph: Hypergraph,
    /// Set when the rejection cap was hit before `m_target` edges were found.
    pub partial: bool,
    pub rejections: usize,
}

/// Rejection-sampled linear hypergraph with ranks in `rank_min..=rank_max`.
///
/// Each draw picks a rank uniformly, then a uniform vertex subset of that
/// size, and keeps it iff it shares no vertex pair with an accepted edge.
/// Stops at `m_target` edges or after `1000 * m_target` rejected draws.
pub fn random_linear(
    n: usize,
    m_target: usize,
    rank_min: usize,
    rank_max: usize,
    seed: u64,
) -> Result<RandomLinear> {
    check_random_params(n, rank_min, rank_max)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut covered = vec![false; n * n];
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m_target);
    let cap = REJECTIONS_PER_EDGE.saturating_mul(m_target);
    let mut rejections = 0;
    while edges.len() < m_target && rejections < cap {
        let rank = rng.gen_range(rank_min..=rank_max);
        let mut edge = index::sample(&mut rng, n, rank).into_vec();
        edge.sort_unstable();
        let clash = edge
            .iter()
            .enumerate()
            .any(|(i, &x)| edge[i + 1..].iter().any(|&y| covered[x * n + y]));
        if clash {
            rejections += 1;
            continue;
        }
        for (i, &x) in edge.iter().enumerate() {
            for &y in &edge[i + 1..] {
                covered[x * n + y] = true;
            }
        }
        edges.push(edge);
    }
    let partial = edges.len() < m_target;
    Ok(RandomLinear {
        hypergraph: Hypergraph::canonical(n, edges)?,
        partial,
        rejections,
    })
}
