//! Instances satisfying the path- and tree-partition definitions by
//! construction. Levels and bags are contiguous id ranges, the root (or
//! `W_0`) first.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::path::PathPartition;
use super::tree::{RootedTree, TreePartition};
use crate::graphcore::{budget, ceil_tol, Graph, GraphBuilder, Side, VertexSet};
use crate::rng;

#[derive(Clone, Debug)]
pub struct PathSpec {
    /// Cover parameter; the partition itself is a `(k, eps/2)` one.
    pub eps: f64,
    /// `|W_0|, .., |W_k|`.
    pub sizes: Vec<usize>,
    /// Random partners per vertex inside each level.
    pub inner_deg: usize,
    /// Sparse-side partners per tail vertex in each level above it.
    pub cross_deg: usize,
    /// A level may be made dense to its tail when `|W_i| |tail|` is at most
    /// this many pairs.
    pub dense_cap: usize,
}

impl PathSpec {
    /// The smallest instance with `k = ⌈2/ε⌉` and `|W_k| = p`: each level is
    /// exactly 12 times its tail, plus `slack`.
    pub fn full_depth(eps: f64, p: usize, slack: usize) -> PathSpec {
        let k = ceil_tol(2.0 / eps);
        let mut sizes = vec![0; k + 1];
        sizes[k] = p;
        let mut tail = p;
        for i in (0..k).rev() {
            sizes[i] = 12 * tail + slack;
            tail += sizes[i];
        }
        PathSpec {
            eps,
            sizes,
            inner_deg: 3,
            cross_deg: 2,
            dense_cap: 200_000,
        }
    }

    /// `k = ⌈2/ε⌉` with only `W_0, .., W_{depth-1}` nonempty: the last
    /// nonempty level has `base` vertices and each earlier one is 12 times
    /// its tail plus `slack`. Needs `1 <= depth <= k`.
    pub fn truncated(eps: f64, depth: usize, base: usize, slack: usize) -> PathSpec {
        let k = ceil_tol(2.0 / eps);
        assert!((1..=k).contains(&depth), "depth {depth} outside 1..={k}");
        let mut sizes = vec![0; k + 1];
        sizes[depth - 1] = base.max(1);
        let mut tail = sizes[depth - 1];
        for i in (0..depth - 1).rev() {
            sizes[i] = 12 * tail + slack;
            tail += sizes[i];
        }
        PathSpec {
            eps,
            sizes,
            inner_deg: 3,
            cross_deg: 2,
            dense_cap: 200_000,
        }
    }
}

/// Random graph on `members` with about `deg` partners per vertex and max
/// degree at most `cap`.
fn sparse_inside(gb: &mut GraphBuilder, members: &[usize], deg: usize, cap: usize, rng: &mut ChaCha8Rng) {
    if members.len() < 2 || deg == 0 || cap == 0 {
        return;
    }
    let mut cand = Vec::new();
    for (i, &v) in members.iter().enumerate() {
        for _ in 0..deg {
            let j = rng.random_range(0..members.len());
            if j != i {
                let (a, b) = (v.min(members[j]), v.max(members[j]));
                cand.push((a, b));
            }
        }
    }
    cand.sort_unstable();
    cand.dedup();
    cand.shuffle(rng);
    let base = members[0];
    let mut d = vec![0usize; members.len()];
    let idx = |v: usize| v - base;
    for (a, b) in cand {
        if d[idx(a)] < cap && d[idx(b)] < cap {
            d[idx(a)] += 1;
            d[idx(b)] += 1;
            gb.add_edge(a, b);
        }
    }
}

/// Join every `t` in `tail` to `level` so that `tail` is `frac`-sparse
/// (side = graph) or `frac`-dense (side = complement) to `level`.
fn cross(
    gb: &mut GraphBuilder,
    tail: &[usize],
    level: &[usize],
    side: Side,
    deg: usize,
    frac: f64,
    rng: &mut ChaCha8Rng,
) {
    if level.is_empty() {
        return;
    }
    let cap = budget(frac, level.len() as f64);
    let m = deg.min(cap);
    for &t in tail {
        let picks: Vec<usize> = (0..m).map(|_| level[rng.random_range(0..level.len())]).collect();
        match side {
            Side::Graph => {
                for w in picks {
                    gb.add_edge(t, w);
                }
            }
            Side::Complement => {
                let mut skip = picks;
                skip.sort_unstable();
                skip.dedup();
                for &w in level {
                    if skip.binary_search(&w).is_err() {
                        gb.add_edge(t, w);
                    }
                }
            }
        }
    }
}

pub fn path_instance(spec: &PathSpec, seed: u64) -> (Graph, PathPartition) {
    let mut rng = rng::stream(seed, "gen.path");
    let k = spec.sizes.len() - 1;
    let n: usize = spec.sizes.iter().sum();
    let mut ranges = Vec::with_capacity(k + 1);
    let mut start = 0;
    for &s in &spec.sizes {
        ranges.push((start..start + s).collect::<Vec<usize>>());
        start += s;
    }
    let half = spec.eps / 2.0;
    let mut gb = GraphBuilder::new(n);
    for (i, r) in ranges.iter().enumerate() {
        let cap = if i < k { budget(half, r.len() as f64) } else { usize::MAX };
        sparse_inside(&mut gb, r, spec.inner_deg, cap, &mut rng);
    }
    let mut directions = Vec::with_capacity(k);
    for i in 0..k {
        let tail: Vec<usize> = ranges[i + 1..].iter().flatten().copied().collect();
        let side = if ranges[i].len() * tail.len() <= spec.dense_cap && rng.random_bool(0.5) {
            Side::Complement
        } else {
            Side::Graph
        };
        cross(&mut gb, &tail, &ranges[i], side, spec.cross_deg, half / 12.0, &mut rng);
        directions.push(side);
    }
    let levels = ranges.iter().map(|r| VertexSet::from_iter(n, r.iter().copied())).collect();
    (
        gb.build(),
        PathPartition {
            levels,
            eps: half,
            directions,
        },
    )
}

#[derive(Clone, Debug)]
pub struct TreeSpec {
    pub h: usize,
    pub ell: usize,
    /// The tree-partition's own ε (bags are ε-restricted, descendants
    /// ε/12-sparse or dense).
    pub eps: f64,
    pub eta: f64,
    /// Children per node at each depth `0..ell`; entries are capped at `h`,
    /// and at 1 for depth `ell - 1`.
    pub branching: Vec<usize>,
    pub leaf_size: usize,
    pub inner_deg: usize,
    pub cross_deg: usize,
    pub dense_cap: usize,
}

/// A tight tree-partition when every branching entry is positive.
pub fn tree_instance(spec: &TreeSpec, seed: u64) -> (Graph, TreePartition) {
    let mut rng = rng::stream(seed, "gen.tree");
    // Shape, breadth first.
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut depth = vec![0usize];
    let mut frontier = vec![0usize];
    for d in 0..spec.ell {
        let mut b = spec.branching.get(d).copied().unwrap_or(0).min(spec.h);
        if d + 1 == spec.ell {
            b = b.min(1);
        }
        let mut next = Vec::new();
        for &t in &frontier {
            for _ in 0..b {
                parent.push(Some(t));
                depth.push(d + 1);
                next.push(parent.len() - 1);
            }
        }
        frontier = next;
    }
    let tree = RootedTree::from_parents(parent).expect("generated shape is a tree");
    let nodes = tree.len();
    // Sizes bottom up: a bag holds its descendants' total over eta, rounded up.
    let mut size = vec![0usize; nodes];
    let mut below = vec![0usize; nodes];
    for t in (0..nodes).rev() {
        let desc: usize = tree.children(t).iter().map(|&c| size[c] + below[c]).sum();
        below[t] = desc;
        size[t] = if desc == 0 {
            spec.leaf_size.max(1)
        } else {
            ceil_tol(desc as f64 / spec.eta).max(spec.leaf_size.max(1))
        };
    }
    let n: usize = size.iter().sum();
    let mut bags_ids: Vec<Vec<usize>> = Vec::with_capacity(nodes);
    let mut start = 0;
    for &s in &size {
        bags_ids.push((start..start + s).collect());
        start += s;
    }
    let mut gb = GraphBuilder::new(n);
    for t in 0..nodes {
        let cap = if depth[t] < spec.ell { budget(spec.eps, size[t] as f64) } else { usize::MAX };
        sparse_inside(&mut gb, &bags_ids[t], spec.inner_deg, cap, &mut rng);
    }
    let mut directions = vec![Side::Graph; nodes];
    for t in 0..nodes {
        let desc: Vec<usize> = tree
            .descendants(t)
            .into_iter()
            .flat_map(|s| bags_ids[s].iter().copied())
            .collect();
        if desc.is_empty() {
            continue;
        }
        let side = if size[t] * desc.len() <= spec.dense_cap && rng.random_bool(0.5) {
            Side::Complement
        } else {
            Side::Graph
        };
        cross(&mut gb, &desc, &bags_ids[t], side, spec.cross_deg, spec.eps / 12.0, &mut rng);
        directions[t] = side;
    }
    let bags = bags_ids.iter().map(|b| VertexSet::from_iter(n, b.iter().copied())).collect();
    (
        gb.build(),
        TreePartition {
            tree,
            bags,
            h: spec.h,
            ell: spec.ell,
            eps: spec.eps,
            eta: spec.eta,
            directions,
        },
    )
}
