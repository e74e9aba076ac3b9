//! Search for large ε-restricted subsets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{budget, is_restricted_on, restricted_side, Graph, Side, VertexSet};

/// Largest input the exact search accepts.
pub const EXACT_LIMIT: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    #[default]
    Greedy,
    Exact,
}

/// A nonempty ε-restricted subset of `x` and the side witnessing it.
///
/// Greedy mode returns a set that is maximal by inclusion; exact mode a
/// maximum one (and fails with `ExactCapExceeded` above [`EXACT_LIMIT`]).
pub fn find_restricted_subset(
    g: &Graph,
    x: &VertexSet,
    eps: f64,
    mode: SearchMode,
) -> Result<(VertexSet, Side)> {
    if x.is_empty() {
        return Err(Error::PreconditionViolated(
            "cannot extract from an empty set".into(),
        ));
    }
    let (set, side) = match mode {
        SearchMode::Greedy => greedy(g, x, eps),
        SearchMode::Exact => exact(g, x, eps)?,
    };
    debug_assert!(is_restricted_on(g, &set, eps, side));
    Ok((set, side))
}

/// Side-adjusted degree bookkeeping over a working set `X`.
struct Work<'a> {
    g: &'a Graph,
    side: Side,
    /// Graph-side neighbours in `X`, indexed by position in `pool`.
    deg: Vec<usize>,
    pool: Vec<usize>,
    pos: Vec<usize>,
    member: Vec<bool>,
    size: usize,
}

impl<'a> Work<'a> {
    fn new(g: &'a Graph, x: &VertexSet, side: Side) -> Self {
        let pool = x.to_vec();
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in pool.iter().enumerate() {
            pos[v] = i;
        }
        let k = pool.len();
        Work {
            g,
            side,
            deg: vec![0; k],
            pool,
            pos,
            member: vec![false; k],
            size: 0,
        }
    }

    /// Side degree of pool item `i` into `X`.
    fn sdeg(&self, i: usize) -> usize {
        match self.side {
            Side::Graph => self.deg[i],
            Side::Complement => {
                let others = self.size - usize::from(self.member[i]);
                others - self.deg[i]
            }
        }
    }

    fn touch(&mut self, i: usize, add: bool) {
        let v = self.pool[i];
        for &u in self.g.neighbors(v) {
            let j = self.pos[u as usize];
            if j != usize::MAX {
                if add {
                    self.deg[j] += 1;
                } else {
                    self.deg[j] -= 1;
                }
            }
        }
    }

    fn add(&mut self, i: usize) {
        debug_assert!(!self.member[i]);
        self.member[i] = true;
        self.size += 1;
        self.touch(i, true);
    }

    fn remove(&mut self, i: usize) {
        debug_assert!(self.member[i]);
        self.member[i] = false;
        self.size -= 1;
        self.touch(i, false);
    }

    fn fill(&mut self) {
        for i in 0..self.pool.len() {
            self.add(i);
        }
    }

    /// Member with largest side degree, ties to the larger id.
    fn worst_member(&self) -> Option<(usize, usize)> {
        (0..self.pool.len())
            .filter(|&i| self.member[i])
            .map(|i| (self.sdeg(i), i))
            .max()
    }

    fn is_ok(&self, eps: f64) -> bool {
        let cap = budget(eps, self.size as f64);
        self.worst_member().is_none_or(|(d, _)| d <= cap)
    }

    /// Would adding pool item `i` keep `X` restricted?
    fn can_add(&self, i: usize, eps: f64) -> bool {
        let cap = budget(eps, (self.size + 1) as f64);
        if self.sdeg(i) > cap {
            return false;
        }
        let v = self.pool[i];
        (0..self.pool.len()).filter(|&j| self.member[j]).all(|j| {
            let adj = self.g.has_edge(v, self.pool[j]);
            let bump = usize::from(adj == (self.side == Side::Graph));
            self.sdeg(j) + bump <= cap
        })
    }

    /// Add non-members in increasing side degree while the set stays
    /// restricted, until no single vertex can be added.
    fn grow_to_maximal(&mut self, eps: f64) {
        loop {
            let mut order: Vec<(usize, usize)> = (0..self.pool.len())
                .filter(|&i| !self.member[i])
                .map(|i| (self.sdeg(i), i))
                .collect();
            order.sort_unstable();
            let mut changed = false;
            for (_, i) in order {
                if self.can_add(i, eps) {
                    self.add(i);
                    changed = true;
                }
            }
            if !changed {
                return;
            }
        }
    }

    fn set(&self) -> VertexSet {
        VertexSet::from_iter(
            self.g.n(),
            (0..self.pool.len()).filter(|&i| self.member[i]).map(|i| self.pool[i]),
        )
    }
}

/// Grow from empty, adding the vertex with fewest side-neighbours in `X`;
/// when the budget breaks, drop the worst member for good.
fn grow_rebalance(g: &Graph, x: &VertexSet, eps: f64, side: Side) -> VertexSet {
    let mut w = Work::new(g, x, side);
    let mut rejected = vec![false; w.pool.len()];
    loop {
        let next = (0..w.pool.len())
            .filter(|&i| !w.member[i] && !rejected[i])
            .map(|i| (w.sdeg(i), i))
            .min();
        let Some((_, i)) = next else { break };
        w.add(i);
        // Dropping one member can shrink the budget again, so repeat.
        while !w.is_ok(eps) {
            let (_, worst) = w.worst_member().expect("nonempty");
            w.remove(worst);
            rejected[worst] = true;
        }
    }
    w.grow_to_maximal(eps);
    w.set()
}

/// Start from all of `x` and delete the worst member until restricted.
fn peel(g: &Graph, x: &VertexSet, eps: f64, side: Side) -> VertexSet {
    let mut w = Work::new(g, x, side);
    w.fill();
    while !w.is_ok(eps) {
        let (_, worst) = w.worst_member().expect("nonempty");
        w.remove(worst);
    }
    w.grow_to_maximal(eps);
    w.set()
}

fn greedy(g: &Graph, x: &VertexSet, eps: f64) -> (VertexSet, Side) {
    let mut best: Option<(VertexSet, Side)> = None;
    for side in [Side::Graph, Side::Complement] {
        for cand in [grow_rebalance(g, x, eps, side), peel(g, x, eps, side)] {
            if best.as_ref().is_none_or(|(b, _)| cand.len() > b.len()) {
                best = Some((cand, side));
            }
        }
    }
    let (mut set, _) = best.expect("at least one candidate");
    // A set grown on one side may also be restricted on the other, where it
    // might still extend; keep growing until no single vertex fits.
    loop {
        let before = set.len();
        for side in [Side::Graph, Side::Complement] {
            if is_restricted_on(g, &set, eps, side) {
                let mut w = Work::new(g, x, side);
                for v in set.iter() {
                    w.add(w.pos[v]);
                }
                w.grow_to_maximal(eps);
                set = w.set();
            }
        }
        if set.len() == before {
            break;
        }
    }
    let side = restricted_side(g, &set, eps).expect("grown sets stay restricted");
    (set, side)
}

fn exact(g: &Graph, x: &VertexSet, eps: f64) -> Result<(VertexSet, Side)> {
    let verts = x.to_vec();
    let k = verts.len();
    if k > EXACT_LIMIT {
        return Err(Error::ExactCapExceeded(format!(
            "exact restricted-subset search takes at most {EXACT_LIMIT} vertices, got {k}"
        )));
    }
    let adj: Vec<u32> = verts
        .iter()
        .map(|&v| {
            (0..k)
                .filter(|&j| g.has_edge(v, verts[j]))
                .fold(0u32, |m, j| m | (1 << j))
        })
        .collect();
    let ok = |mask: u32, side: Side| {
        let size = mask.count_ones() as usize;
        let cap = budget(eps, size as f64);
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            let d = (adj[i] & mask).count_ones() as usize;
            let sd = match side {
                Side::Graph => d,
                Side::Complement => size - 1 - d,
            };
            if sd > cap {
                return false;
            }
        }
        true
    };
    for size in (1..=k).rev() {
        for combo in crate::graphcore::Combinations::new(k, size) {
            let mask = combo.iter().fold(0u32, |m, &j| m | (1 << j));
            for side in [Side::Graph, Side::Complement] {
                if ok(mask, side) {
                    let set = VertexSet::from_iter(g.n(), combo.iter().map(|&j| verts[j]));
                    return Ok((set, side));
                }
            }
        }
    }
    unreachable!("singletons are always restricted")
}
