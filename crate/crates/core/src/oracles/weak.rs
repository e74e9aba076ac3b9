//! Partition into weakly ε-restricted sets: extract weakly ε/2-restricted
//! sets until the remainder can be absorbed by the largest part.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{edges_within, weakly_restricted_side, within, Graph, Side, VertexSet};

#[derive(Clone, Debug, Serialize)]
pub struct WeakPartition {
    pub parts: Vec<(VertexSet, Side)>,
    /// Size of the remainder merged into the largest part (0 if none).
    pub merged: usize,
    /// `|part| / |remainder before extraction|` per extraction round.
    pub round_deltas: Vec<f64>,
}

/// A weakly `eps`-restricted subset of `x` on `side`, found by peeling the
/// vertex with most side-neighbours and then growing back greedily.
fn weak_subset_on(g: &Graph, x: &VertexSet, eps: f64, side: Side) -> VertexSet {
    let pool = x.to_vec();
    let k = pool.len();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in pool.iter().enumerate() {
        pos[v] = i;
    }
    let mut member = vec![true; k];
    let mut deg: Vec<usize> = pool.iter().map(|&v| g.degree_into(v, x)).collect();
    let mut size = k;
    let mut edges = edges_within(g, x, Side::Graph);
    let sdeg = |deg: &[usize], member: &[bool], size: usize, i: usize| match side {
        Side::Graph => deg[i],
        Side::Complement => size - usize::from(member[i]) - deg[i],
    };
    let sedges = |edges: usize, size: usize| match side {
        Side::Graph => edges,
        Side::Complement => size * size.saturating_sub(1) / 2 - edges,
    };
    let flip = |i: usize, add: bool, deg: &mut Vec<usize>, member: &mut Vec<bool>| {
        member[i] = add;
        for &u in g.neighbors(pool[i]) {
            let j = pos[u as usize];
            if j != usize::MAX {
                if add {
                    deg[j] += 1;
                } else {
                    deg[j] -= 1;
                }
            }
        }
    };
    while !within(sedges(edges, size), eps, (size * size) as f64) {
        let (_, worst) = (0..k)
            .filter(|&i| member[i])
            .map(|i| (sdeg(&deg, &member, size, i), i))
            .max()
            .expect("nonempty");
        edges -= deg[worst];
        flip(worst, false, &mut deg, &mut member);
        size -= 1;
    }
    loop {
        let best = (0..k)
            .filter(|&i| !member[i])
            .map(|i| (sdeg(&deg, &member, size, i), i))
            .min();
        let Some((d, i)) = best else { break };
        let new_size = size + 1;
        if !within(sedges(edges, size) + d, eps, (new_size * new_size) as f64) {
            break;
        }
        edges += deg[i];
        flip(i, true, &mut deg, &mut member);
        size = new_size;
    }
    VertexSet::from_iter(g.n(), (0..k).filter(|&i| member[i]).map(|i| pool[i]))
}

/// The larger of the two one-sided searches.
pub fn find_weak_subset(g: &Graph, x: &VertexSet, eps: f64) -> (VertexSet, Side) {
    let a = weak_subset_on(g, x, eps, Side::Graph);
    let b = weak_subset_on(g, x, eps, Side::Complement);
    let set = if b.len() > a.len() { b } else { a };
    let side = weakly_restricted_side(g, &set, eps).expect("constructed weakly restricted");
    (set, side)
}

pub fn weak_partition(g: &Graph, eps: f64) -> Result<WeakPartition> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::PreconditionViolated(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let mut rest = g.vertices();
    let mut parts: Vec<(VertexSet, Side)> = Vec::new();
    let mut round_deltas = Vec::new();
    let mut merged = 0;
    while !rest.is_empty() {
        if parts.is_empty() {
            if let Some(side) = weakly_restricted_side(g, &rest, eps) {
                parts.push((rest.clone(), side));
                break;
            }
        } else {
            let largest = (0..parts.len())
                .max_by_key(|&i| (parts[i].0.len(), std::cmp::Reverse(i)))
                .expect("nonempty");
            let joined = parts[largest].0.union(&rest);
            if let Some(side) = weakly_restricted_side(g, &joined, eps) {
                merged = rest.len();
                parts[largest] = (joined, side);
                break;
            }
        }
        let (part, side) = find_weak_subset(g, &rest, eps / 2.0);
        round_deltas.push(part.len() as f64 / rest.len() as f64);
        rest.difference_with(&part);
        parts.push((part, side));
    }
    Ok(WeakPartition {
        parts,
        merged,
        round_deltas,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graphcore::is_weakly_restricted;

    #[test]
    fn trivial_graphs_are_one_part() {
        for g in [Graph::empty(9), Graph::complete(9)] {
            assert_eq!(weak_partition(&g, 0.1).unwrap().parts.len(), 1);
        }
    }

    #[test]
    fn c5_plus_k5() {
        let g = generators::cycle(5).disjoint_union(&Graph::complete(5));
        let wp = weak_partition(&g, 0.2).unwrap();
        assert!(wp.parts.len() <= 3, "{:?}", wp.parts);
        let mut seen = VertexSet::empty(10);
        for (p, _) in &wp.parts {
            assert!(is_weakly_restricted(&g, p, 0.2));
            assert!(seen.is_disjoint(p));
            seen.union_with(p);
        }
        assert_eq!(seen.len(), 10);
    }

    #[test]
    fn large_star_single_part() {
        for n in [10usize, 40, 200] {
            let g = generators::star(n + 1);
            let wp = weak_partition(&g, 1.0 / (n as f64 + 1.0)).unwrap();
            assert_eq!(wp.parts.len(), 1);
        }
    }

    #[test]
    fn rejects_nonpositive_eps() {
        assert!(weak_partition(&Graph::empty(3), 0.0).is_err());
    }
}
