//! Rooted trees, (h, ℓ, ε, η)-tree-partitions and their covers.

use std::fmt;

use serde::Serialize;

use super::certificate::PartitionCertificate;
use super::path::{check_path, cover_path_any, PathBranch, PathPartition};
use crate::covering::DEFAULT_RETRY_CAP;
use crate::driver::{main_lemma_on, LemmaConfig, LemmaOutcome};
use crate::error::{Error, Result};
use crate::graphcore::{ceil_tol, is_sparse_to, restricted_side, within, Graph, Side, VertexSet};
use crate::rng;

/// A rooted tree given by parent links. Depths, children and descendant
/// sets are always recomputed from the links.
#[derive(Clone, Debug, Serialize)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    root: usize,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn from_parents(parent: Vec<Option<usize>>) -> Result<RootedTree> {
        let n = parent.len();
        let roots: Vec<usize> = (0..n).filter(|&t| parent[t].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidGraph(format!("tree needs exactly one root, found {}", roots.len())));
        }
        let root = roots[0];
        let mut children = vec![Vec::new(); n];
        for (t, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n || p == t {
                    return Err(Error::InvalidGraph(format!("node {t} has invalid parent {p}")));
                }
                children[p].push(t);
            }
        }
        let mut depth = vec![usize::MAX; n];
        depth[root] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(t) = queue.pop_front() {
            for &c in &children[t] {
                depth[c] = depth[t] + 1;
                queue.push_back(c);
            }
        }
        if let Some(t) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(Error::InvalidGraph(format!("node {t} is not connected to the root")));
        }
        Ok(RootedTree {
            parent,
            root,
            depth,
            children,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn depth(&self, t: usize) -> usize {
        self.depth[t]
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    /// Proper descendants of `t`, in breadth-first order.
    pub fn descendants(&self, t: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack: Vec<usize> = self.children[t].iter().rev().copied().collect();
        while let Some(s) = stack.pop() {
            out.push(s);
            stack.extend(self.children[s].iter().rev());
        }
        out.sort_unstable();
        out
    }

    /// Descendants of `t` (including `t`) at depth `d`, by id.
    pub fn descendants_at(&self, t: usize, d: usize) -> Vec<usize> {
        let mut out: Vec<usize> = if self.depth[t] == d {
            vec![t]
        } else {
            self.descendants(t).into_iter().filter(|&s| self.depth[s] == d).collect()
        };
        out.sort_unstable();
        out
    }

    /// Nodes on the path from the root to `t`, root first.
    pub fn path_to(&self, t: usize) -> Vec<usize> {
        let mut p = vec![t];
        let mut cur = t;
        while let Some(q) = self.parent[cur] {
            p.push(q);
            cur = q;
        }
        p.reverse();
        p
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TreePartition {
    pub tree: RootedTree,
    pub bags: Vec<VertexSet>,
    pub h: usize,
    pub ell: usize,
    pub eps: f64,
    pub eta: f64,
    /// Side on which the union of proper-descendant bags is ε/12-sparse to
    /// the node's bag.
    pub directions: Vec<Side>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum TreeViolation {
    Shape { reason: String },
    TooDeep { node: usize },
    TooManyChildren { node: usize, children: usize, allowed: usize },
    EmptyBag { node: usize },
    Overlap { vertex: usize },
    NotCovering { vertex: usize },
    NotRestricted { node: usize },
    TooHeavy { node: usize, below: usize, size: usize },
    NotSparse { node: usize, side: Side },
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::Shape { reason } => write!(f, "malformed tree-partition: {reason}"),
            TreeViolation::TooDeep { node } => write!(f, "node {node} is deeper than ell"),
            TreeViolation::TooManyChildren { node, children, allowed } => {
                write!(f, "node {node} has {children} children, at most {allowed} allowed")
            }
            TreeViolation::EmptyBag { node } => write!(f, "bag {node} is empty"),
            TreeViolation::Overlap { vertex } => write!(f, "vertex {vertex} lies in two bags"),
            TreeViolation::NotCovering { vertex } => write!(f, "vertex {vertex} lies in no bag"),
            TreeViolation::NotRestricted { node } => write!(f, "bag {node} is not restricted"),
            TreeViolation::TooHeavy { node, below, size } => {
                write!(f, "node {node}: {below} vertices below exceed eta * {size}")
            }
            TreeViolation::NotSparse { node, side } => write!(
                f,
                "node {node}: descendants are not eps/12-sparse on the {} side",
                side.as_str()
            ),
        }
    }
}

impl TreePartition {
    pub fn ground(&self, n: usize) -> VertexSet {
        let mut all = VertexSet::empty(n);
        for b in &self.bags {
            all.union_with(b);
        }
        all
    }

    /// Union of the bags of proper descendants of `t`.
    pub fn below(&self, t: usize, n: usize) -> VertexSet {
        let mut u = VertexSet::empty(n);
        for s in self.tree.descendants(t) {
            u.union_with(&self.bags[s]);
        }
        u
    }

    /// Every root-to-leaf path has length ℓ.
    pub fn is_tight(&self) -> bool {
        (0..self.tree.len())
            .filter(|&t| self.tree.children(t).is_empty())
            .all(|t| self.tree.depth(t) == self.ell)
    }
}

pub(crate) fn check_tree(g: &Graph, tp: &TreePartition, ground: Option<&VertexSet>) -> Option<TreeViolation> {
    let t = &tp.tree;
    let nodes = t.len();
    if tp.bags.len() != nodes || tp.directions.len() != nodes {
        return Some(TreeViolation::Shape {
            reason: format!("{} nodes, {} bags, {} directions", nodes, tp.bags.len(), tp.directions.len()),
        });
    }
    for node in 0..nodes {
        let d = t.depth(node);
        if d > tp.ell {
            return Some(TreeViolation::TooDeep { node });
        }
        let allowed = if d + 1 == tp.ell { 1.min(tp.h) } else { tp.h };
        let children = t.children(node).len();
        if children > allowed {
            return Some(TreeViolation::TooManyChildren { node, children, allowed });
        }
    }
    let mut seen = VertexSet::empty(g.n());
    for (node, b) in tp.bags.iter().enumerate() {
        if b.universe() != g.n() {
            return Some(TreeViolation::Shape { reason: "bag over a different universe".into() });
        }
        if b.is_empty() {
            return Some(TreeViolation::EmptyBag { node });
        }
        if let Some(v) = seen.intersection(b).first() {
            return Some(TreeViolation::Overlap { vertex: v });
        }
        seen.union_with(b);
    }
    if let Some(ground) = ground {
        if let Some(v) = ground.difference(&seen).first() {
            return Some(TreeViolation::NotCovering { vertex: v });
        }
        if let Some(v) = seen.difference(ground).first() {
            return Some(TreeViolation::Overlap { vertex: v });
        }
    }
    for node in 0..nodes {
        let bag = &tp.bags[node];
        if t.depth(node) < tp.ell && restricted_side(g, bag, tp.eps).is_none() {
            return Some(TreeViolation::NotRestricted { node });
        }
        let below = tp.below(node, g.n());
        if !within(below.len(), tp.eta, bag.len() as f64) {
            return Some(TreeViolation::TooHeavy { node, below: below.len(), size: bag.len() });
        }
        let side = tp.directions[node];
        if !is_sparse_to(g, &below, bag, tp.eps / 12.0, side).unwrap_or(false) {
            return Some(TreeViolation::NotSparse { node, side });
        }
    }
    None
}

/// Checks every clause of the definition, requiring the bags to partition
/// `V(g)`.
pub fn validate_tree_partition(g: &Graph, tp: &TreePartition) -> std::result::Result<(), TreeViolation> {
    match check_tree(g, tp, Some(&g.vertices())) {
        None => Ok(()),
        Some(v) => Err(v),
    }
}

pub fn is_tight(tp: &TreePartition) -> bool {
    tp.is_tight()
}

/// `h^K` and `K = ⌈2/ε⌉`.
fn scale(h: usize, eps: f64) -> (usize, f64) {
    let k = ceil_tol(2.0 / eps);
    (k, (h as f64).powi(k as i32))
}

fn check_params(tp: &TreePartition, eps: f64) -> Result<(usize, f64)> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::PreconditionViolated(format!("eps must lie in (0, 1], got {eps}")));
    }
    let (k, hk) = scale(tp.h, eps);
    let want = eps / (4.0 * hk);
    if (tp.eps - want).abs() > 1e-9 * want {
        return Err(Error::PreconditionViolated(format!(
            "tree-partition parameter is {}, expected eps/(4h^K) = {want}",
            tp.eps
        )));
    }
    if tp.eta > 1.0 / (24.0 * hk) * (1.0 + 1e-12) {
        return Err(Error::PreconditionViolated(format!(
            "eta = {} exceeds 1/(24 h^K) = {}",
            tp.eta,
            1.0 / (24.0 * hk)
        )));
    }
    Ok((k, hk))
}

/// Round-robin split of `bag` (id order) into `parts` slices.
pub fn round_robin(bag: &VertexSet, parts: usize) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::empty(bag.universe()); parts];
    for (i, v) in bag.iter().enumerate() {
        out[i % parts].insert(v);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeCover {
    pub certificate: PartitionCertificate,
    /// Number of root-to-depth-K chains covered.
    pub chains: usize,
    pub branches: Vec<PathBranch>,
    pub bound: f64,
}

/// Cover a tight `(h, K, ε/(4h^K), η)`-tree-partition by at most
/// `9217 h^K ε^-2` ε-restricted sets.
pub fn cover_tight_tree(g: &Graph, tp: &TreePartition, eps: f64, seed: u64) -> Result<TreeCover> {
    cover_tight_tree_with_cap(g, tp, eps, seed, DEFAULT_RETRY_CAP)
}

pub fn cover_tight_tree_with_cap(
    g: &Graph,
    tp: &TreePartition,
    eps: f64,
    seed: u64,
    retry_cap: usize,
) -> Result<TreeCover> {
    let (k, hk) = check_params(tp, eps)?;
    if tp.ell != k {
        return Err(Error::PreconditionViolated(format!("ell = {}, expected K = {k}", tp.ell)));
    }
    if !tp.is_tight() {
        return Err(Error::PreconditionViolated("tree-partition is not tight".into()));
    }
    if let Some(v) = check_tree(g, tp, None) {
        return Err(Error::PreconditionViolated(v.to_string()));
    }
    let tree = &tp.tree;
    let nodes = tree.len();
    // slices[t][j] belongs to the j-th member of S(t).
    let mut deep: Vec<Vec<usize>> = Vec::with_capacity(nodes);
    let mut slices: Vec<Vec<VertexSet>> = Vec::with_capacity(nodes);
    for t in 0..nodes {
        let s = tree.descendants_at(t, k);
        let sl = round_robin(&tp.bags[t], s.len());
        let need = tp.bags[t].len() as f64 * (tp.h as f64).powi(tree.depth(t) as i32 - k as i32) / 2.0;
        for piece in &sl {
            if (piece.len() as f64) < need - 1e-9 * (1.0 + need) {
                return Err(Error::ValidationFailed(format!(
                    "slice of node {t} has {} vertices, needs {need}",
                    piece.len()
                )));
            }
        }
        deep.push(s);
        slices.push(sl);
    }
    let root = tree.root();
    let mut cert = PartitionCertificate::new(eps);
    let mut branches = Vec::new();
    for &s in &deep[root] {
        let path = tree.path_to(s);
        let levels: Vec<VertexSet> = path
            .iter()
            .map(|&t| {
                let j = deep[t].binary_search(&s).expect("s is a deep descendant");
                slices[t][j].clone()
            })
            .collect();
        let directions = path[..k].iter().map(|&t| tp.directions[t]).collect();
        let chain = PathPartition {
            levels,
            eps: eps / 2.0,
            directions,
        };
        if let Some(v) = check_path(g, &chain, None) {
            return Err(Error::ValidationFailed(format!("chain to node {s}: {v}")));
        }
        let cover = cover_path_any(g, &chain, eps, rng::derive(seed, "tree.chain", s as u64), retry_cap)?;
        branches.push(cover.branch);
        cert.extend(cover.certificate);
    }
    let bound = (9217.0 * hk / (eps * eps)).ceil();
    if cert.len() as f64 > bound {
        return Err(Error::ValidationFailed(format!("{} parts exceed {bound}", cert.len())));
    }
    cert.verify_on(g, &tp.ground(g.n()))?;
    Ok(TreeCover {
        certificate: cert,
        chains: deep[root].len(),
        branches,
        bound,
    })
}

/// The sub-partition on `keep` (closed under taking parents), renumbered
/// in increasing id order.
fn restrict(tp: &TreePartition, keep: &[bool]) -> TreePartition {
    let ids: Vec<usize> = (0..keep.len()).filter(|&t| keep[t]).collect();
    let mut new_id = vec![usize::MAX; keep.len()];
    for (i, &t) in ids.iter().enumerate() {
        new_id[t] = i;
    }
    let parent = ids.iter().map(|&t| tp.tree.parent(t).map(|p| new_id[p])).collect();
    TreePartition {
        tree: RootedTree::from_parents(parent).expect("parent-closed subset"),
        bags: ids.iter().map(|&t| tp.bags[t].clone()).collect(),
        h: tp.h,
        ell: tp.ell,
        eps: tp.eps,
        eta: tp.eta,
        directions: ids.iter().map(|&t| tp.directions[t]).collect(),
    }
}

/// Cover any `(h, K, ε/(4h^K), η)`-tree-partition by at most
/// `9218 h^K ε^-2` ε-restricted sets: bags with no depth-K descendant are
/// parts on their own, the rest form a tight tree.
pub fn cover_tree(g: &Graph, tp: &TreePartition, eps: f64, seed: u64) -> Result<TreeCover> {
    cover_tree_with_cap(g, tp, eps, seed, DEFAULT_RETRY_CAP)
}

pub fn cover_tree_with_cap(g: &Graph, tp: &TreePartition, eps: f64, seed: u64, retry_cap: usize) -> Result<TreeCover> {
    let (k, hk) = check_params(tp, eps)?;
    if tp.ell != k {
        return Err(Error::PreconditionViolated(format!("ell = {}, expected K = {k}", tp.ell)));
    }
    if let Some(v) = check_tree(g, tp, None) {
        return Err(Error::PreconditionViolated(v.to_string()));
    }
    let nodes = tp.tree.len();
    let keep: Vec<bool> = (0..nodes).map(|t| !tp.tree.descendants_at(t, k).is_empty()).collect();
    let mut cert = PartitionCertificate::new(eps);
    for t in (0..nodes).filter(|&t| !keep[t]) {
        let side = restricted_side(g, &tp.bags[t], eps)
            .ok_or_else(|| Error::ValidationFailed(format!("bag {t} is not eps-restricted")))?;
        cert.parts.push((tp.bags[t].clone(), side));
    }
    let mut chains = 0;
    let mut branches = Vec::new();
    if keep.iter().any(|&x| x) {
        let tight = restrict(tp, &keep);
        let inner = cover_tight_tree_with_cap(g, &tight, eps, seed, retry_cap)?;
        chains = inner.chains;
        branches = inner.branches;
        cert.extend(inner.certificate);
    }
    let bound = (9218.0 * hk / (eps * eps)).ceil();
    if cert.len() as f64 > bound {
        return Err(Error::ValidationFailed(format!("{} parts exceed {bound}", cert.len())));
    }
    cert.verify_on(g, &tp.ground(g.n()))?;
    Ok(TreeCover {
        certificate: cert,
        chains,
        branches,
        bound,
    })
}

/// Replace leaf `s` (whose parent has `s` as only child) by nodes
/// `t_j` with bag `pairs[j].0`, each with a child `u_j` with bag
/// `pairs[j].1`; `pairs[j].2` is the side on which `u_j`'s bag is sparse to
/// `t_j`'s. Other nodes keep their relative order.
pub fn graft(tp: &TreePartition, s: usize, pairs: &[(VertexSet, VertexSet, Side)], new_ell: usize) -> TreePartition {
    let parent_of_s = tp.tree.parent(s).expect("grafted node has a parent");
    let old = tp.tree.len();
    let mut new_id = vec![usize::MAX; old];
    let mut next = 0;
    for (t, id) in new_id.iter_mut().enumerate() {
        if t != s {
            *id = next;
            next += 1;
        }
    }
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut bags = Vec::new();
    let mut directions = Vec::new();
    for t in (0..old).filter(|&t| t != s) {
        parent.push(tp.tree.parent(t).map(|p| new_id[p]));
        bags.push(tp.bags[t].clone());
        directions.push(tp.directions[t]);
    }
    let attach = new_id[parent_of_s];
    for (a, b, side) in pairs {
        let tj = parent.len();
        parent.push(Some(attach));
        bags.push(a.clone());
        directions.push(*side);
        parent.push(Some(tj));
        bags.push(b.clone());
        directions.push(Side::Graph);
    }
    TreePartition {
        tree: RootedTree::from_parents(parent).expect("graft keeps a tree"),
        bags,
        h: tp.h,
        ell: new_ell,
        eps: tp.eps,
        eta: tp.eta,
        directions,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallTreeCover {
    pub certificate: PartitionCertificate,
    /// Largest number of restricted sets any main-lemma call produced.
    pub n_achieved: usize,
    /// `(K - k) h^K N + 9218 h^K ε^-2` with `N = n_achieved`.
    pub bound: f64,
    pub lemma_calls: usize,
}

#[derive(Clone, Debug, Serialize)]
pub enum SmallTreeOutcome {
    Certificate(SmallTreeCover),
    /// Pattern vertex -> host vertex.
    InducedCopy(Vec<usize>),
}

/// Cover an `(h, k, ε/(4h^K), η)`-tree-partition of an `H`-free graph,
/// `h = |H|^2`, `η = 1/(24h^K)`, by growing it one level at a time with the
/// main lemma until depth `K` and then covering the tree.
pub fn cover_small_tree(
    g: &Graph,
    tp: &TreePartition,
    pattern: &Graph,
    eps: f64,
    config: &LemmaConfig,
    seed: u64,
) -> Result<SmallTreeOutcome> {
    let (big_k, hk) = check_params(tp, eps)?;
    let h = pattern.n() * pattern.n();
    if tp.h != h {
        return Err(Error::PreconditionViolated(format!("h = {}, expected |H|^2 = {h}", tp.h)));
    }
    let eta = 1.0 / (24.0 * hk);
    if (tp.eta - eta).abs() > 1e-9 * eta {
        return Err(Error::PreconditionViolated(format!("eta = {}, expected {eta}", tp.eta)));
    }
    if tp.ell == 0 || tp.ell > big_k {
        return Err(Error::PreconditionViolated(format!("depth {} outside 1..={big_k}", tp.ell)));
    }
    let ground = tp.ground(g.n());
    let mut cur = tp.clone();
    let mut standalone = PartitionCertificate::new(eps);
    let mut n_achieved = 0usize;
    let mut calls = 0usize;
    for depth in tp.ell..big_k {
        let leaves = cur.tree.descendants_at(cur.tree.root(), depth);
        // Graft from the highest id down so earlier ids stay valid.
        for &s in leaves.iter().rev() {
            let bag = cur.bags[s].clone();
            calls += 1;
            let out = main_lemma_on(
                g,
                &bag,
                pattern,
                cur.eps,
                eta,
                cur.eps / 12.0,
                config,
                rng::derive(seed, "small_tree.lemma", calls as u64),
            )?;
            let lemma = match out {
                LemmaOutcome::InducedCopy(map) => return Ok(SmallTreeOutcome::InducedCopy(map)),
                LemmaOutcome::Partition(p) => p,
            };
            n_achieved = n_achieved.max(lemma.c_sets.len());
            for (c, _) in &lemma.c_sets {
                let side = restricted_side(g, c, eps)
                    .ok_or_else(|| Error::ValidationFailed("lemma set is not eps-restricted".into()))?;
                standalone.parts.push((c.clone(), side));
            }
            let pairs: Vec<(VertexSet, VertexSet, Side)> =
                lemma.pairs.iter().map(|p| (p.a.clone(), p.b.clone(), p.side)).collect();
            cur = graft(&cur, s, &pairs, depth + 1);
        }
        cur.ell = depth + 1;
    }
    let mut cert = standalone;
    {
        let rest = cover_tree_with_cap(g, &cur, eps, rng::derive(seed, "small_tree.cover", 0), config.retry_cap)?;
        cert.extend(rest.certificate);
    }
    let bound = (big_k - tp.ell) as f64 * hk * n_achieved as f64 + (9218.0 * hk / (eps * eps)).ceil();
    if cert.len() as f64 > bound {
        return Err(Error::ValidationFailed(format!("{} parts exceed {bound}", cert.len())));
    }
    cert.verify_on(g, &ground)?;
    Ok(SmallTreeOutcome::Certificate(SmallTreeCover {
        certificate: cert,
        n_achieved,
        bound,
        lemma_calls: calls,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::partitions::gen::{tree_instance, TreeSpec};

    fn spec(h: usize, eps: f64, branching: Vec<usize>, leaf: usize, cross_deg: usize) -> TreeSpec {
        let (k, hk) = scale(h, eps);
        TreeSpec {
            h,
            ell: k,
            eps: eps / (4.0 * hk),
            eta: 1.0 / (24.0 * hk),
            branching,
            leaf_size: leaf,
            inner_deg: 2,
            cross_deg,
            dense_cap: 0,
        }
    }

    #[test]
    fn from_parents_rejects_bad_shapes() {
        assert!(RootedTree::from_parents(vec![None, None]).is_err());
        assert!(RootedTree::from_parents(vec![None, Some(2), Some(1)]).is_err());
        assert!(RootedTree::from_parents(vec![Some(0)]).is_err());
        let t = RootedTree::from_parents(vec![None, Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(t.descendants(0), vec![1, 2, 3]);
        assert_eq!(t.descendants_at(0, 2), vec![3]);
        assert_eq!(t.path_to(3), vec![0, 1, 3]);
    }

    #[test]
    fn slices_are_large_enough() {
        let bag = VertexSet::from_iter(40, 0..40);
        let sl = round_robin(&bag, 4);
        // h = 2, K = 2, depth 0: each slice needs |bag| h^{-2} / 2 = 5.
        assert!(sl.iter().all(|s| s.len() == 10 && s.len() >= 5));
        let mut all = VertexSet::empty(40);
        for s in &sl {
            assert!(all.is_disjoint(s));
            all.union_with(s);
        }
        assert_eq!(all, bag);
    }

    #[test]
    fn generated_instances_validate() {
        let (g, tp) = tree_instance(&spec(2, 1.0, vec![2, 1], 1, 1), 3);
        assert_eq!(validate_tree_partition(&g, &tp), Ok(()));
        assert!(tp.is_tight());
        assert_eq!(tp.tree.len(), 5);
    }

    #[test]
    fn clause_violations_are_named() {
        let (g, mut tp) = tree_instance(&spec(2, 1.0, vec![2, 1], 1, 1), 3);
        tp.ell = 1;
        assert_eq!(
            validate_tree_partition(&g, &tp),
            Err(TreeViolation::TooManyChildren { node: 0, children: 2, allowed: 1 })
        );
        let (g, mut tp) = tree_instance(&spec(1, 1.0, vec![1, 1], 1, 1), 3);
        tp.ell = 1;
        assert_eq!(validate_tree_partition(&g, &tp), Err(TreeViolation::TooDeep { node: 2 }));
        let (g, mut tp) = tree_instance(&spec(2, 1.0, vec![2, 1], 1, 1), 3);
        let leaf = tp.bags.len() - 1;
        let v = tp.bags[leaf].first().unwrap();
        tp.bags[0].insert(v);
        assert_eq!(validate_tree_partition(&g, &tp), Err(TreeViolation::Overlap { vertex: v }));
    }

    #[test]
    fn tight_path_tree_uses_covering() {
        // h = 1, eps = 1: K = 2, a three-bag chain with p = 160.
        let (g, tp) = tree_instance(&spec(1, 1.0, vec![1, 1], 160, 10), 5);
        assert_eq!(validate_tree_partition(&g, &tp), Ok(()));
        let cover = cover_tight_tree(&g, &tp, 1.0, 2).unwrap();
        assert_eq!(cover.chains, 1);
        assert!(matches!(cover.branches[0], PathBranch::Covering | PathBranch::CoveringSplit));
        cover.certificate.verify(&g).unwrap();
        assert!(cover.certificate.len() as f64 <= cover.bound);
    }

    #[test]
    fn branching_tree_covers_every_chain() {
        let (g, tp) = tree_instance(&spec(2, 1.0, vec![2, 1], 1, 1), 7);
        let cover = cover_tight_tree(&g, &tp, 1.0, 1).unwrap();
        assert_eq!(cover.chains, 2);
        cover.certificate.verify(&g).unwrap();
        let again = cover_tight_tree(&g, &tp, 1.0, 1).unwrap();
        assert_eq!(cover.certificate, again.certificate);
    }

    #[test]
    fn cover_tree_handles_short_branches() {
        let (g, tp) = tree_instance(&spec(2, 1.0, vec![2, 1], 1, 1), 9);
        // Drop the last leaf: its parent no longer reaches depth K.
        let mut keep = vec![true; tp.tree.len()];
        let leaf = tp.tree.descendants_at(tp.tree.root(), 2)[1];
        keep[leaf] = false;
        let short = restrict(&tp, &keep);
        assert!(!short.is_tight());
        let cover = cover_tree(&g, &short, 1.0, 4).unwrap();
        cover.certificate.verify_on(&g, &short.ground(g.n())).unwrap();
        assert_eq!(cover.chains, 1);
        assert!(cover_tight_tree(&g, &short, 1.0, 4).is_err());
    }

    #[test]
    fn wrong_parameters_rejected() {
        let (g, mut tp) = tree_instance(&spec(2, 1.0, vec![2, 1], 1, 1), 3);
        tp.eps *= 2.0;
        assert!(matches!(cover_tree(&g, &tp, 1.0, 0), Err(Error::PreconditionViolated(_))));
    }

    fn pair_tree(g: &Graph, a: VertexSet, b: VertexSet, side: Side, h: usize, eps: f64) -> TreePartition {
        let (_, hk) = scale(h, eps);
        let _ = g;
        TreePartition {
            tree: RootedTree::from_parents(vec![None, Some(0)]).unwrap(),
            bags: vec![a, b],
            h,
            ell: 1,
            eps: eps / (4.0 * hk),
            eta: 1.0 / (24.0 * hk),
            directions: vec![side, Side::Graph],
        }
    }

    #[test]
    fn small_tree_on_star() {
        // K3, eps = 1: h = 9, K = 2, eta = 1/1944. Leaves form A, the centre B.
        let n = 1945;
        let g = generators::star(n);
        let a = VertexSet::from_iter(n, 1..n);
        let b = VertexSet::singleton(n, 0);
        let tp = pair_tree(&g, a, b, Side::Complement, 9, 1.0);
        assert_eq!(validate_tree_partition(&g, &tp), Ok(()));
        let k3 = generators::preset("K3").unwrap();
        match cover_small_tree(&g, &tp, &k3, 1.0, &LemmaConfig::default(), 1).unwrap() {
            SmallTreeOutcome::Certificate(c) => {
                c.certificate.verify(&g).unwrap();
                assert_eq!(c.lemma_calls, 1);
                assert!(c.certificate.len() as f64 <= c.bound);
            }
            SmallTreeOutcome::InducedCopy(_) => panic!("a star has no triangle"),
        }
    }

    #[test]
    fn small_tree_finds_planted_triangle() {
        let (na, nb) = (5832, 3);
        let n = na + nb;
        let mut edges = vec![(na, na + 1), (na, na + 2), (na + 1, na + 2)];
        for u in 0..na {
            for w in na..n {
                edges.push((u, w));
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let tp = pair_tree(
            &g,
            VertexSet::from_iter(n, 0..na),
            VertexSet::from_iter(n, na..n),
            Side::Complement,
            9,
            1.0,
        );
        assert_eq!(validate_tree_partition(&g, &tp), Ok(()));
        let k3 = generators::preset("K3").unwrap();
        match cover_small_tree(&g, &tp, &k3, 1.0, &LemmaConfig::default(), 1).unwrap() {
            SmallTreeOutcome::InducedCopy(map) => {
                assert!(crate::graphcore::verify_induced_copy(&g, &k3, &map));
            }
            SmallTreeOutcome::Certificate(_) => panic!("the leaf bag is a triangle"),
        }
    }
}
