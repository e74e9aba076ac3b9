//! Canonical and random graph constructions.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graphcore::{find_induced_copy, Graph, GraphBuilder, VertexSet};
use crate::rng;

pub fn path(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge(v - 1, v);
    }
    b.build()
}

/// The cycle on `n >= 3` vertices, `0-1-...-(n-1)-0`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut b = GraphBuilder::new(n);
    for v in 0..n {
        b.add_edge(v, (v + 1) % n);
    }
    b.build()
}

/// `K_{1,n-1}` on `n` vertices with centre 0.
pub fn star(n: usize) -> Graph {
    let mut b = GraphBuilder::new(n);
    for v in 1..n {
        b.add_edge(0, v);
    }
    b.build()
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut g = GraphBuilder::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.add_edge(u, v);
        }
    }
    g.build()
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// A clique on `0..k`, an independent set on `k..k+m`, and each cross pair
/// joined with probability `p`.
pub fn split<R: Rng>(k: usize, m: usize, p: f64, rng: &mut R) -> Graph {
    let mut b = GraphBuilder::new(k + m);
    for u in 0..k {
        for v in u + 1..k {
            b.add_edge(u, v);
        }
        for v in k..k + m {
            if rng.random_bool(p) {
                b.add_edge(u, v);
            }
        }
    }
    b.build()
}

/// Small named patterns accepted wherever an `H` is expected.
pub fn preset(name: &str) -> Option<Graph> {
    Some(match name {
        "K1" => Graph::empty(1),
        "K2" => Graph::complete(2),
        "K3" => Graph::complete(3),
        "K4" => Graph::complete(4),
        "K5" => Graph::complete(5),
        "P3" => path(3),
        "P4" => path(4),
        "C4" => cycle(4),
        "C5" => cycle(5),
        "paw" => Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).ok()?,
        _ => return None,
    })
}

pub const PRESETS: [&str; 7] = ["K2", "K3", "P3", "P4", "C4", "C5", "paw"];

/// `G(n, p)` made `h`-free by repeatedly deleting the lowest-id vertex of a
/// found induced copy. Deleted vertices are removed, so the result may have
/// fewer than `n` vertices; ids are compacted.
pub fn h_free(n: usize, p: f64, h: &Graph, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be positive".into()));
    }
    if h.n() == 0 {
        return Err(Error::PreconditionViolated(
            "every graph contains the empty pattern".into(),
        ));
    }
    let mut g = gnp(n, p, &mut rng::stream(seed, "gen.hfree"));
    loop {
        match find_induced_copy(&g, h) {
            None => return Ok(g),
            Some(map) => {
                let victim = *map.iter().min().expect("nonempty pattern");
                let mut keep = g.vertices();
                keep.remove(victim);
                g = g.induced(&keep).graph;
            }
        }
    }
}

/// The set `{0, .., n-1}` minus `skip`.
pub fn all_but(n: usize, skip: &[usize]) -> VertexSet {
    let mut s = VertexSet::full(n);
    for &v in skip {
        s.remove(v);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_shapes() {
        assert_eq!(star(10).edge_count(), 9);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(complete_bipartite(3, 4).edge_count(), 12);
        for name in PRESETS {
            assert!(preset(name).is_some(), "{name}");
        }
        assert_eq!(preset("paw").unwrap().edge_count(), 4);
    }

    #[test]
    fn hfree_output_is_free() {
        let k3 = Graph::complete(3);
        let g = h_free(50, 0.3, &k3, 7).unwrap();
        assert!(find_induced_copy(&g, &k3).is_none());
        assert!(h_free(0, 0.3, &k3, 7).is_err());
    }
}
