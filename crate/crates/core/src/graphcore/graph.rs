use serde::{Deserialize, Serialize};

use super::vertex_set::{words_for, VertexSet};
use crate::error::{Error, Result};

/// Graphs up to this many vertices also keep a dense bit matrix, so that
/// neighbourhood/set intersections are word-parallel. Larger graphs (the
/// geometric level structures of path-partitions reach millions of
/// vertices) fall back to the sorted neighbour lists alone.
pub const DENSE_LIMIT: usize = 4096;

/// Which of `G` or its complement a sparsity condition is stated in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Graph,
    Complement,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Graph => Side::Complement,
            Side::Complement => Side::Graph,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Graph => "graph",
            Side::Complement => "complement",
        }
    }

    /// Side on which "u adjacent to v in H" has to be realised.
    pub fn from_adjacency(adjacent: bool) -> Side {
        if adjacent {
            Side::Graph
        } else {
            Side::Complement
        }
    }
}

/// Undirected simple graph on `0..n`.
///
/// Neighbourhoods are stored in CSR form (sorted). For `n <= DENSE_LIMIT`
/// the adjacency is additionally kept as fixed-width bit rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    rows: Option<Vec<u64>>,
    words_per_row: usize,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Result of [`Graph::induced`]: the subgraph plus both directions of the
/// relabelling.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    /// `to_old[new] = old`.
    pub to_old: Vec<usize>,
    /// `to_new[old] = Some(new)` for members of the inducing set.
    pub to_new: Vec<Option<usize>>,
}

/// Accumulates edges; duplicates are merged at `build`.
#[derive(Clone, Debug)]
pub struct GraphBuilder {
    n: usize,
    edges: Vec<(u32, u32)>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        assert!(n <= u32::MAX as usize, "graph too large");
        GraphBuilder {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Panics on self-loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "edge ({u},{v}) out of range");
        assert_ne!(u, v, "self-loop at {u}");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges.push((a as u32, b as u32));
    }

    pub fn build(mut self) -> Graph {
        self.edges.sort_unstable();
        self.edges.dedup();
        Graph::from_sorted_unique(self.n, &self.edges)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph::from_sorted_unique(n, &[])
    }

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v);
            }
        }
        b.build()
    }

    /// Strict constructor: rejects self-loops, out-of-range endpoints and
    /// duplicate edges (in either orientation).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > u32::MAX as usize {
            return Err(Error::InvalidGraph(format!("{n} vertices is too many")));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            norm.push((a as u32, b as u32));
        }
        norm.sort_unstable();
        for w in norm.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge ({},{})",
                    w[0].0, w[0].1
                )));
            }
        }
        Ok(Graph::from_sorted_unique(n, &norm))
    }

    fn from_sorted_unique(n: usize, edges: &[(u32, u32)]) -> Graph {
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let words_per_row = words_for(n);
        let rows = (n <= DENSE_LIMIT).then(|| {
            let mut rows = vec![0u64; n * words_per_row];
            for &(u, v) in edges {
                let (u, v) = (u as usize, v as usize);
                rows[u * words_per_row + (v >> 6)] |= 1 << (v & 63);
                rows[v * words_per_row + (u >> 6)] |= 1 << (u & 63);
            }
            rows
        });
        Graph {
            n,
            offsets,
            targets,
            rows,
            words_per_row,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    #[inline]
    fn row(&self, v: usize) -> Option<&[u64]> {
        self.rows
            .as_ref()
            .map(|r| &r[v * self.words_per_row..(v + 1) * self.words_per_row])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match self.row(u) {
            Some(row) => (row[v >> 6] >> (v & 63)) & 1 == 1,
            None => self.neighbors(u).binary_search(&(v as u32)).is_ok(),
        }
    }

    /// `|N(v) ∩ set|`.
    #[inline]
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        debug_assert_eq!(set.universe(), self.n);
        match self.row(v) {
            Some(row) if self.degree(v) > self.words_per_row => row
                .iter()
                .zip(set.words())
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum(),
            _ => self
                .neighbors(v)
                .iter()
                .filter(|&&u| set.contains(u as usize))
                .count(),
        }
    }

    /// Number of neighbours of `v` in `set` on the given side; on the
    /// complement side this counts non-neighbours other than `v` itself.
    #[inline]
    pub fn degree_into_side(&self, v: usize, set: &VertexSet, side: Side) -> usize {
        let d = self.degree_into(v, set);
        match side {
            Side::Graph => d,
            Side::Complement => set.len() - d - usize::from(set.contains(v)),
        }
    }

    /// Same as [`degree_into_side`](Self::degree_into_side) with a
    /// precomputed `|set|`.
    #[inline]
    pub(crate) fn degree_into_side_sized(
        &self,
        v: usize,
        set: &VertexSet,
        set_len: usize,
        side: Side,
    ) -> usize {
        let d = self.degree_into(v, set);
        match side {
            Side::Graph => d,
            Side::Complement => set_len - d - usize::from(set.contains(v)),
        }
    }

    pub fn neighbourhood(&self, v: usize) -> VertexSet {
        match self.row(v) {
            Some(row) => VertexSet::from_words(self.n, row.to_vec()),
            None => VertexSet::from_iter(self.n, self.neighbors(v).iter().map(|&u| u as usize)),
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// The complement graph. Quadratic in `n`.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            let nb = self.neighbors(u);
            let mut j = 0;
            for v in u + 1..self.n {
                while j < nb.len() && (nb[j] as usize) < v {
                    j += 1;
                }
                if j < nb.len() && nb[j] as usize == v {
                    continue;
                }
                edges.push((u as u32, v as u32));
            }
        }
        Graph::from_sorted_unique(self.n, &edges)
    }

    /// `G[x]` with vertices relabelled `0..|x|` in increasing order of the
    /// original ids.
    pub fn induced(&self, x: &VertexSet) -> Induced {
        let to_old: Vec<usize> = x.iter().collect();
        let mut to_new = vec![None; self.n];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        let mut edges = Vec::new();
        for (i, &v) in to_old.iter().enumerate() {
            for &u in self.neighbors(v) {
                if let Some(j) = to_new[u as usize] {
                    if j > i {
                        edges.push((i as u32, j as u32));
                    }
                }
            }
        }
        edges.sort_unstable();
        Induced {
            graph: Graph::from_sorted_unique(to_old.len(), &edges),
            to_old,
            to_new,
        }
    }

    /// Vertex-disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut b = GraphBuilder::new(self.n + other.n);
        for (u, v) in self.edges() {
            b.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            b.add_edge(u + self.n, v + self.n);
        }
        b.build()
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut b = GraphBuilder::new(self.n);
        for (u, v) in self.edges() {
            b.add_edge(perm[u], perm[v]);
        }
        b.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn complement_of_complete_is_empty() {
        let k4 = Graph::complete(4);
        assert_eq!(k4.complement().edge_count(), 0);
    }

    #[test]
    fn complement_of_path() {
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let c = p3.complement();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 2)]);
    }

    #[test]
    fn complement_is_involution_on_c5() {
        let c5 = generators::cycle(5);
        assert_eq!(c5.complement().complement(), c5);
    }

    #[test]
    fn induced_on_c5_prefix_is_path() {
        let c5 = generators::cycle(5);
        let ind = c5.induced(&VertexSet::from_iter(5, [0, 1, 2]));
        assert_eq!(ind.graph.n(), 3);
        assert_eq!(ind.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(ind.to_old, vec![0, 1, 2]);
        assert_eq!(ind.to_new[3], None);
    }

    #[test]
    fn induced_on_empty_and_full() {
        let g = generators::cycle(6);
        assert_eq!(g.induced(&VertexSet::empty(6)).graph.n(), 0);
        assert_eq!(g.induced(&g.vertices()).graph, g);
    }

    #[test]
    fn strict_constructor_rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn sparse_and_dense_paths_agree() {
        // Same edges, one graph above the dense limit.
        let n = DENSE_LIMIT + 10;
        let mut big = GraphBuilder::new(n);
        let mut small = GraphBuilder::new(50);
        for i in 0..49 {
            big.add_edge(i, i + 1);
            small.add_edge(i, i + 1);
            if i % 3 == 0 {
                big.add_edge(i, 49 - i / 3);
                small.add_edge(i, 49 - i / 3);
            }
        }
        let (big, small) = (big.build(), small.build());
        let set_big = VertexSet::from_iter(n, (0..50).step_by(2));
        let set_small = VertexSet::from_iter(50, (0..50).step_by(2));
        for v in 0..50 {
            assert_eq!(big.degree_into(v, &set_big), small.degree_into(v, &set_small));
            for u in 0..50 {
                assert_eq!(big.has_edge(u, v), small.has_edge(u, v));
            }
        }
    }
}
