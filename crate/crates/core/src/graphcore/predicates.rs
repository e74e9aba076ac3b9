//! Exact checkers for the density notions used throughout the crate:
//! ε-restricted and weakly ε-restricted sets, and ε-sparse / ε-dense
//! relations between disjoint sets.

use super::graph::{Graph, Side};
use super::vertex_set::VertexSet;
use crate::error::{Error, Result};

const TOL: f64 = 1e-9;

/// `count <= eps * size`, with a relative tolerance absorbing float noise
/// in products such as `0.4 * 5`.
#[inline]
pub fn within(count: usize, eps: f64, size: f64) -> bool {
    let bound = eps * size;
    (count as f64) <= bound + TOL * (1.0 + bound.abs())
}

/// Largest integer `c` with `within(c, eps, size)`, saturating at 0 from below.
#[inline]
pub fn budget(eps: f64, size: f64) -> usize {
    let bound = eps * size;
    let b = (bound + TOL * (1.0 + bound.abs())).floor();
    if b < 0.0 {
        0
    } else {
        b as usize
    }
}

/// Smallest integer `>= x`, tolerant of `x` landing a hair above an integer.
#[inline]
pub fn ceil_tol(x: f64) -> usize {
    let c = (x - TOL * (1.0 + x.abs())).ceil();
    if c < 0.0 {
        0
    } else {
        c as usize
    }
}

pub(crate) fn ensure_disjoint(a: &VertexSet, b: &VertexSet) -> Result<()> {
    match a.intersection(b).first() {
        Some(v) => Err(Error::Overlap(v)),
        None => Ok(()),
    }
}

/// Number of edges with one end in `a` and the other in `b`.
pub fn edges_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    ensure_disjoint(a, b)?;
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    Ok(small.iter().map(|v| g.degree_into(v, large)).sum())
}

/// Edges between disjoint `a` and `b` on the given side.
pub fn edges_between_side(g: &Graph, a: &VertexSet, b: &VertexSet, side: Side) -> Result<usize> {
    let e = edges_between(g, a, b)?;
    Ok(match side {
        Side::Graph => e,
        Side::Complement => a.len() * b.len() - e,
    })
}

/// `max_{v in b} |N(v) ∩ a|`, or 0 when `b` is empty.
pub fn max_degree_into(g: &Graph, b: &VertexSet, a: &VertexSet) -> Result<usize> {
    max_degree_into_side(g, b, a, Side::Graph)
}

pub fn max_degree_into_side(g: &Graph, b: &VertexSet, a: &VertexSet, side: Side) -> Result<usize> {
    ensure_disjoint(a, b)?;
    let a_len = a.len();
    Ok(b
        .iter()
        .map(|v| g.degree_into_side_sized(v, a, a_len, side))
        .max()
        .unwrap_or(0))
}

/// Maximum degree of `G[x]` (side = graph) or of the complement of `G[x]`.
pub fn max_degree_within(g: &Graph, x: &VertexSet, side: Side) -> usize {
    let len = x.len();
    x.iter()
        .map(|v| g.degree_into_side_sized(v, x, len, side))
        .max()
        .unwrap_or(0)
}

/// Edge count of `G[x]` on the given side.
pub fn edges_within(g: &Graph, x: &VertexSet, side: Side) -> usize {
    let twice: usize = x.iter().map(|v| g.degree_into(v, x)).sum();
    let e = twice / 2;
    match side {
        Side::Graph => e,
        Side::Complement => {
            let k = x.len();
            k * k.saturating_sub(1) / 2 - e
        }
    }
}

/// Is `x` ε-restricted on this particular side?
pub fn is_restricted_on(g: &Graph, x: &VertexSet, eps: f64, side: Side) -> bool {
    let len = x.len();
    let cap = budget(eps, len as f64);
    x.iter()
        .all(|v| g.degree_into_side_sized(v, x, len, side) <= cap)
}

/// The side witnessing that `x` is ε-restricted, preferring the graph side
/// when both qualify; `None` if neither does. The empty set is restricted
/// on the graph side.
pub fn restricted_side(g: &Graph, x: &VertexSet, eps: f64) -> Option<Side> {
    let len = x.len();
    let cap = budget(eps, len as f64);
    let mut graph_ok = true;
    let mut comp_ok = true;
    for v in x.iter() {
        let d = g.degree_into(v, x);
        let cd = len - 1 - d;
        graph_ok &= d <= cap;
        comp_ok &= cd <= cap;
        if !graph_ok && !comp_ok {
            return None;
        }
    }
    if graph_ok {
        Some(Side::Graph)
    } else {
        Some(Side::Complement)
    }
}

pub fn is_restricted(g: &Graph, x: &VertexSet, eps: f64) -> bool {
    restricted_side(g, x, eps).is_some()
}

/// The side on which `x` spans at most `eps * |x|^2` edges, graph first.
pub fn weakly_restricted_side(g: &Graph, x: &VertexSet, eps: f64) -> Option<Side> {
    let len = x.len() as f64;
    let e = edges_within(g, x, Side::Graph);
    let k = x.len();
    let ce = k * k.saturating_sub(1) / 2 - e;
    if within(e, eps, len * len) {
        Some(Side::Graph)
    } else if within(ce, eps, len * len) {
        Some(Side::Complement)
    } else {
        None
    }
}

pub fn is_weakly_restricted(g: &Graph, x: &VertexSet, eps: f64) -> bool {
    weakly_restricted_side(g, x, eps).is_some()
}

/// Is `b` ε-sparse to `a` on `side` (ε-dense to `a` when side = complement)?
/// Vacuously true when `b` is empty, and when `a` is empty.
pub fn is_sparse_to(g: &Graph, b: &VertexSet, a: &VertexSet, eps: f64, side: Side) -> Result<bool> {
    ensure_disjoint(a, b)?;
    let a_len = a.len();
    let cap = budget(eps, a_len as f64);
    Ok(b
        .iter()
        .all(|v| g.degree_into_side_sized(v, a, a_len, side) <= cap))
}

/// The side on which `b` is ε-sparse to `a`, graph first.
pub fn sparse_side(g: &Graph, b: &VertexSet, a: &VertexSet, eps: f64) -> Result<Option<Side>> {
    if is_sparse_to(g, b, a, eps, Side::Graph)? {
        Ok(Some(Side::Graph))
    } else if is_sparse_to(g, b, a, eps, Side::Complement)? {
        Ok(Some(Side::Complement))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, v.iter().copied())
    }

    #[test]
    fn edges_between_c4() {
        let c4 = generators::cycle(4);
        assert_eq!(edges_between(&c4, &set(4, &[0, 1]), &set(4, &[2, 3])).unwrap(), 2);
        assert_eq!(edges_between(&c4, &set(4, &[]), &set(4, &[2, 3])).unwrap(), 0);
        assert!(matches!(
            edges_between(&c4, &set(4, &[0, 1]), &set(4, &[1, 2])),
            Err(Error::Overlap(1))
        ));
    }

    #[test]
    fn edges_between_complete_bipartite() {
        let g = generators::complete_bipartite(3, 4);
        assert_eq!(edges_between(&g, &set(7, &[0, 1, 2]), &set(7, &[3, 4, 5, 6])).unwrap(), 12);
    }

    #[test]
    fn max_degree_into_examples() {
        let star = generators::star(6);
        let leaves = set(6, &[1, 2, 3, 4, 5]);
        assert_eq!(max_degree_into(&star, &set(6, &[0]), &leaves).unwrap(), 5);
        assert_eq!(max_degree_into(&Graph::empty(4), &set(4, &[0]), &set(4, &[1, 2])).unwrap(), 0);
        let c5 = generators::cycle(5);
        assert_eq!(max_degree_into(&c5, &set(5, &[0]), &set(5, &[2, 3])).unwrap(), 0);
        assert_eq!(max_degree_into(&c5, &set(5, &[]), &set(5, &[2, 3])).unwrap(), 0);
    }

    #[test]
    fn restricted_examples() {
        let k5 = Graph::complete(5);
        assert_eq!(restricted_side(&k5, &k5.vertices(), 0.0), Some(Side::Complement));
        let star = generators::star(10);
        assert_eq!(restricted_side(&star, &star.vertices(), 0.3), None);
        let c5 = generators::cycle(5);
        assert_eq!(restricted_side(&c5, &c5.vertices(), 0.4), Some(Side::Graph));
        assert_eq!(restricted_side(&c5, &VertexSet::empty(5), 0.0), Some(Side::Graph));
    }

    #[test]
    fn weakly_restricted_examples() {
        let k4 = Graph::complete(4);
        assert_eq!(weakly_restricted_side(&k4, &k4.vertices(), 0.0), Some(Side::Complement));
        let c5 = generators::cycle(5);
        assert_eq!(weakly_restricted_side(&c5, &c5.vertices(), 0.1), None);
        // K_{1,n}: n edges against eps (n+1)^2 once n >= ceil(1/eps).
        for n in [10usize, 25, 60] {
            let eps = 1.0 / n as f64;
            let star = generators::star(n + 1);
            assert!(is_weakly_restricted(&star, &star.vertices(), eps));
        }
    }

    #[test]
    fn sparse_examples() {
        let g = generators::complete_bipartite(3, 3);
        let (a, b) = (set(6, &[0, 1, 2]), set(6, &[3, 4, 5]));
        assert!(!is_sparse_to(&g, &b, &a, 0.9, Side::Graph).unwrap());
        assert!(is_sparse_to(&g, &b, &a, 0.9, Side::Complement).unwrap());
        let e = Graph::empty(6);
        assert!(is_sparse_to(&e, &b, &a, 0.0, Side::Graph).unwrap());
        let c5 = generators::cycle(5);
        assert!(is_sparse_to(&c5, &set(5, &[0]), &set(5, &[2, 3]), 0.0, Side::Graph).unwrap());
        // Empty a: vacuous.
        assert!(is_sparse_to(&g, &b, &set(6, &[]), 0.0, Side::Graph).unwrap());
        assert!(is_sparse_to(&g, &b, &set(6, &[]), 0.0, Side::Complement).unwrap());
    }

    #[test]
    fn tolerance_helpers() {
        assert!(within(2, 0.4, 5.0));
        assert_eq!(budget(0.4, 5.0), 2);
        assert_eq!(budget(0.1, 3.0), 0);
        assert_eq!(ceil_tol(0.5 * 6.0), 3);
        assert_eq!(ceil_tol(0.1 * 30.0), 3);
        assert_eq!(ceil_tol(0.0), 0);
    }
}
