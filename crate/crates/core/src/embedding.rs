//! Greedy transversal embedding of a pattern into pairwise full/empty
//! blocks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{verify_induced_copy, Graph, Side, VertexSet};

/// One block of host vertices per pattern vertex.
#[derive(Clone, Debug)]
pub struct BlockSystem {
    pub pattern: Graph,
    pub blocks: Vec<VertexSet>,
    pub eps: f64,
}

impl BlockSystem {
    pub fn new(pattern: Graph, blocks: Vec<VertexSet>, eps: f64) -> Result<Self> {
        let sys = BlockSystem {
            pattern,
            blocks,
            eps,
        };
        sys.validate()?;
        Ok(sys)
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks.len() != self.pattern.n() {
            return Err(Error::PreconditionViolated(format!(
                "{} blocks for a pattern on {} vertices",
                self.blocks.len(),
                self.pattern.n()
            )));
        }
        if !(self.eps > 0.0 && self.eps <= 0.5) {
            return Err(Error::PreconditionViolated(format!(
                "eps must lie in (0, 1/2], got {}",
                self.eps
            )));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::PreconditionViolated(format!("block {i} is empty")));
            }
            for other in &self.blocks[..i] {
                if let Some(v) = b.intersection(other).first() {
                    return Err(Error::Overlap(v));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub vertex: usize,
    pub chosen: usize,
    /// Sizes of all blocks after shrinking at this step (0 for placed ones).
    pub block_sizes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Embedding {
    /// `mapping[v]` is the host vertex for pattern vertex `v`.
    pub mapping: Vec<usize>,
    pub trace: Vec<TraceStep>,
}

/// Pattern vertices by descending degree, ties by id.
fn order(h: &Graph) -> Vec<usize> {
    let mut o: Vec<usize> = (0..h.n()).collect();
    o.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
    o
}

pub fn embed_transversal(g: &Graph, sys: &BlockSystem) -> Result<Embedding> {
    embed_in_order(g, sys, &order(&sys.pattern))
}

/// As [`embed_transversal`] with an explicit processing order.
pub fn embed_in_order(g: &Graph, sys: &BlockSystem, order: &[usize]) -> Result<Embedding> {
    sys.validate()?;
    let h = &sys.pattern;
    assert_eq!(order.len(), h.n(), "order must list every pattern vertex");
    let mut cur = sys.blocks.clone();
    let mut mapping = vec![usize::MAX; h.n()];
    let mut trace = Vec::with_capacity(h.n());
    for (level, &v) in order.iter().enumerate() {
        let rest = &order[level + 1..];
        let mut best: Option<(f64, usize)> = None;
        for x in cur[v].iter() {
            let mut worst = 1.0f64;
            let mut ok = true;
            for &u in rest {
                let side = Side::from_adjacency(h.has_edge(v, u));
                let len = cur[u].len();
                let d = g.degree_into_side(x, &cur[u], side);
                let need = sys.eps * len as f64;
                if (d as f64) < need - 1e-9 * (1.0 + need) {
                    ok = false;
                    break;
                }
                worst = worst.min(d as f64 / len as f64);
            }
            if ok && best.is_none_or(|(w, _)| worst > w) {
                best = Some((worst, x));
            }
        }
        let Some((_, x)) = best else {
            return Err(Error::NoViableVertex { vertex: v, level });
        };
        mapping[v] = x;
        let nb = g.neighbourhood(x);
        for &u in rest {
            if h.has_edge(v, u) {
                cur[u].intersect_with(&nb);
            } else {
                cur[u].difference_with(&nb);
            }
        }
        cur[v] = VertexSet::singleton(g.n(), x);
        trace.push(TraceStep {
            vertex: v,
            chosen: x,
            block_sizes: (0..h.n())
                .map(|u| if rest.contains(&u) { cur[u].len() } else { 0 })
                .collect(),
        });
    }
    if !verify_induced_copy(g, h, &mapping) {
        return Err(Error::ValidationFailed(
            "embedding does not induce the pattern".into(),
        ));
    }
    Ok(Embedding { mapping, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graphcore::{find_induced_copy, GraphBuilder};

    fn blocks(n: usize, ranges: &[std::ops::Range<usize>]) -> Vec<VertexSet> {
        ranges.iter().map(|r| VertexSet::from_iter(n, r.clone())).collect()
    }

    #[test]
    fn k2_on_complete_bipartite() {
        let g = generators::complete_bipartite(3, 3);
        let sys = BlockSystem::new(Graph::complete(2), blocks(6, &[0..3, 3..6]), 0.5).unwrap();
        let e = embed_transversal(&g, &sys).unwrap();
        assert!(g.has_edge(e.mapping[0], e.mapping[1]));
    }

    #[test]
    fn two_isolated_on_empty() {
        let g = Graph::empty(6);
        let sys = BlockSystem::new(Graph::empty(2), blocks(6, &[0..3, 3..6]), 0.5).unwrap();
        let e = embed_transversal(&g, &sys).unwrap();
        assert!(!g.has_edge(e.mapping[0], e.mapping[1]));
    }

    /// P3 u-v-w with blocks of 4: complete between consecutive blocks,
    /// empty between the ends.
    fn p3_fixture() -> (Graph, BlockSystem) {
        let mut gb = GraphBuilder::new(12);
        for x in 0..4 {
            for y in 4..8 {
                gb.add_edge(x, y);
            }
        }
        for x in 4..8 {
            for y in 8..12 {
                gb.add_edge(x, y);
            }
        }
        let g = gb.build();
        let sys = BlockSystem::new(generators::path(3), blocks(12, &[0..4, 4..8, 8..12]), 0.5).unwrap();
        (g, sys)
    }

    #[test]
    fn p3_fixture_embeds() {
        let (g, sys) = p3_fixture();
        let e = embed_transversal(&g, &sys).unwrap();
        assert!(verify_induced_copy(&g, &sys.pattern, &e.mapping));
        assert!(find_induced_copy(&g, &sys.pattern).is_some());
        // Middle vertex has the highest degree and goes first.
        assert_eq!(e.trace[0].vertex, 1);
        for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0]] {
            assert!(embed_in_order(&g, &sys, &order).is_ok());
        }
    }

    #[test]
    fn failure_is_reported() {
        // K2 pattern on blocks with no edges between them.
        let g = Graph::empty(4);
        let sys = BlockSystem::new(Graph::complete(2), blocks(4, &[0..2, 2..4]), 0.5).unwrap();
        assert!(matches!(
            embed_transversal(&g, &sys),
            Err(Error::NoViableVertex { vertex: 0, level: 0 })
        ));
    }

    #[test]
    fn invalid_systems_rejected() {
        let h = Graph::complete(2);
        assert!(BlockSystem::new(h.clone(), blocks(4, &[0..2, 1..4]), 0.5).is_err());
        assert!(BlockSystem::new(h.clone(), blocks(4, &[0..2, 2..2]), 0.5).is_err());
        assert!(BlockSystem::new(h.clone(), blocks(4, &[0..2, 2..4]), 0.6).is_err());
        assert!(BlockSystem::new(h, blocks(4, &[0..2]), 0.5).is_err());
    }
}
