//! (c, ε)-fullness of a pair of disjoint sets.
//!
//! `(A, B)` is (c, ε)-full when every `A' ⊆ A`, `B' ⊆ B` with
//! `|A'| >= c|A|` and `|B'| >= c|B|` spans at least `ε|A'||B'|` edges;
//! (c, ε)-empty is the same statement in the complement.
//!
//! The exact checker only enumerates `A'` of the minimum admissible size
//! and picks `B'` greedily. This is enough: deleting a maximum-degree row
//! (or column) from a pair of density below ε leaves a pair of density
//! below ε, so any violating pair shrinks to a violating pair of minimum
//! sizes, and for a fixed `A'` the sparsest `B'` of a given size is the
//! set of `B`-vertices with fewest edges to `A'`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::combinatorics::{binomial, Combinations};
use super::graph::{Graph, Side};
use super::predicates::{ceil_tol, ensure_disjoint};
use super::vertex_set::VertexSet;
use crate::error::{Error, Result};

/// How a fullness claim is backed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FullnessStatus {
    /// Checked exactly.
    Verified,
    /// Too large to enumerate; sampled refutation found no violation.
    Witnessed,
    /// Inherited from an earlier claim, not rechecked.
    Trusted,
}

#[derive(Clone, Debug)]
pub struct FullnessConfig {
    /// Exact enumeration is allowed when the number of minimum-size subsets
    /// of the smaller side is at most `C(exact_cap, exact_cap / 2)`, which
    /// covers every side of at most `exact_cap` vertices.
    pub exact_cap: usize,
    /// Random subsets tried by the sampled refutation.
    pub samples: usize,
    pub seed: u64,
}

impl Default for FullnessConfig {
    fn default() -> Self {
        FullnessConfig {
            exact_cap: 20,
            samples: 64,
            seed: 0,
        }
    }
}

impl FullnessConfig {
    fn enumeration_budget(&self) -> f64 {
        binomial(self.exact_cap, self.exact_cap / 2)
    }
}

/// Minimum size of a qualifying subset of a set of `len` vertices, or
/// `None` when no subset qualifies (c > 1). Subsets of size 0 never
/// violate, so the minimum is taken over nonempty subsets.
pub fn qualifying_size(c: f64, len: usize) -> Option<usize> {
    let s = ceil_tol(c * len as f64).max(1);
    (s <= len).then_some(s)
}

struct Oriented<'a> {
    small: Vec<usize>,
    big: &'a VertexSet,
    s_small: usize,
    s_big: usize,
}

fn orient<'a>(a: &'a VertexSet, b: &'a VertexSet, c: f64) -> Option<Oriented<'a>> {
    let sa = qualifying_size(c, a.len())?;
    let sb = qualifying_size(c, b.len())?;
    Some(if a.len() <= b.len() {
        Oriented {
            small: a.to_vec(),
            big: b,
            s_small: sa,
            s_big: sb,
        }
    } else {
        Oriented {
            small: b.to_vec(),
            big: a,
            s_small: sb,
            s_big: sa,
        }
    })
}

/// Edge count of the sparsest `B'` of size `s_big` against `small_part`.
fn sparsest_completion(
    g: &Graph,
    small_part: &VertexSet,
    big: &VertexSet,
    s_big: usize,
    side: Side,
) -> (usize, Vec<usize>) {
    let k = small_part.len();
    let mut degs: Vec<(usize, usize)> = big
        .iter()
        .map(|y| (g.degree_into_side_sized(y, small_part, k, side), y))
        .collect();
    degs.sort_unstable();
    let chosen: Vec<usize> = degs[..s_big].iter().map(|&(_, y)| y).collect();
    (degs[..s_big].iter().map(|&(d, _)| d).sum(), chosen)
}

fn violates(edges: usize, eps: f64, sa: usize, sb: usize) -> bool {
    let need = eps * (sa * sb) as f64;
    (edges as f64) < need - 1e-9 * (1.0 + need)
}

fn check_pair(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<()> {
    ensure_disjoint(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::PreconditionViolated(
            "fullness is defined for nonempty sets".into(),
        ));
    }
    debug_assert_eq!(a.universe(), g.n());
    Ok(())
}

/// Exact (c, ε)-fullness (side = graph) or (c, ε)-emptiness
/// (side = complement) of `(a, b)`.
pub fn is_full_pair_exact(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    c: f64,
    eps: f64,
    side: Side,
    cfg: &FullnessConfig,
) -> Result<bool> {
    check_pair(g, a, b)?;
    let Some(o) = orient(a, b, c) else {
        return Ok(true);
    };
    let count = binomial(o.small.len(), o.s_small);
    if count > cfg.enumeration_budget() {
        return Err(Error::ExactCapExceeded(format!(
            "C({}, {}) subsets exceed the exact cap {}; use sampled refutation",
            o.small.len(),
            o.s_small,
            cfg.exact_cap
        )));
    }
    let universe = g.n();
    for combo in Combinations::new(o.small.len(), o.s_small) {
        let part = VertexSet::from_iter(universe, combo.iter().map(|&i| o.small[i]));
        let (e, _) = sparsest_completion(g, &part, o.big, o.s_big, side);
        if violates(e, eps, o.s_small, o.s_big) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Can [`is_full_pair_exact`] run on this pair under `cfg`?
pub fn exact_feasible(a: &VertexSet, b: &VertexSet, c: f64, cfg: &FullnessConfig) -> bool {
    match orient(a, b, c) {
        None => true,
        Some(o) => binomial(o.small.len(), o.s_small) <= cfg.enumeration_budget(),
    }
}

/// Looks for a violating sub-pair among deterministic low-degree candidates
/// and `cfg.samples` random ones. Returns the violating pair if found.
pub fn refute_fullness_sampled(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    c: f64,
    eps: f64,
    side: Side,
    cfg: &FullnessConfig,
) -> Result<Option<(VertexSet, VertexSet)>> {
    check_pair(g, a, b)?;
    let Some(sa) = qualifying_size(c, a.len()) else {
        return Ok(None);
    };
    let Some(sb) = qualifying_size(c, b.len()) else {
        return Ok(None);
    };
    let universe = g.n();
    let try_part = |part: VertexSet, big: &VertexSet, s_big: usize, s_part: usize| {
        let (e, chosen) = sparsest_completion(g, &part, big, s_big, side);
        violates(e, eps, s_part, s_big).then(|| (part, VertexSet::from_iter(universe, chosen)))
    };
    let lowest = |from: &VertexSet, to: &VertexSet, k: usize| {
        let len = to.len();
        let mut d: Vec<(usize, usize)> = from
            .iter()
            .map(|v| (g.degree_into_side_sized(v, to, len, side), v))
            .collect();
        d.sort_unstable();
        VertexSet::from_iter(universe, d[..k].iter().map(|&(_, v)| v))
    };
    if let Some((pa, pb)) = try_part(lowest(a, b, sa), b, sb, sa) {
        return Ok(Some((pa, pb)));
    }
    if let Some((pb, pa)) = try_part(lowest(b, a, sb), a, sa, sb) {
        return Ok(Some((pa, pb)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (av, bv) = (a.to_vec(), b.to_vec());
    for i in 0..cfg.samples {
        if i % 2 == 0 {
            let part = VertexSet::from_iter(
                universe,
                sample(&mut rng, av.len(), sa).into_iter().map(|j| av[j]),
            );
            if let Some((pa, pb)) = try_part(part, b, sb, sa) {
                return Ok(Some((pa, pb)));
            }
        } else {
            let part = VertexSet::from_iter(
                universe,
                sample(&mut rng, bv.len(), sb).into_iter().map(|j| bv[j]),
            );
            if let Some((pb, pa)) = try_part(part, a, sa, sb) {
                return Ok(Some((pa, pb)));
            }
        }
    }
    Ok(None)
}

/// Exact check when feasible, sampled refutation otherwise. `None` means
/// the pair is not full (a violation was found).
pub fn check_fullness(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    c: f64,
    eps: f64,
    side: Side,
    cfg: &FullnessConfig,
) -> Result<Option<FullnessStatus>> {
    if exact_feasible(a, b, c, cfg) {
        Ok(is_full_pair_exact(g, a, b, c, eps, side, cfg)?.then_some(FullnessStatus::Verified))
    } else {
        Ok(refute_fullness_sampled(g, a, b, c, eps, side, cfg)?
            .is_none()
            .then_some(FullnessStatus::Witnessed))
    }
}
