//! Text and JSON formats read and written by the command line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators;
use crate::graphcore::{Graph, Side, VertexSet};
use crate::partitions::{PartitionCertificate, PathPartition, RootedTree, TreePartition, Violation};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
    #[error("missing header line \"n m\"")]
    MissingHeader,
    #[error("header announces {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

/// Parse `n m` followed by `m` lines `u v`; `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let nums: Vec<usize> = body
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| FormatError::Line { line, reason: e.to_string() })?;
        if nums.len() != 2 {
            return Err(FormatError::Line { line, reason: format!("expected two integers, got {}", nums.len()) });
        }
        let (a, b) = (nums[0], nums[1]);
        let Some((n, _)) = header else {
            header = Some((a, b));
            continue;
        };
        if a >= n || b >= n {
            return Err(FormatError::Line { line, reason: format!("vertex out of range 0..{n}") });
        }
        if a == b {
            return Err(FormatError::Line { line, reason: format!("self-loop at {a}") });
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(FormatError::Line { line, reason: format!("duplicate edge {a} {b}") });
        }
        edges.push((a, b));
    }
    let (n, m) = header.ok_or(FormatError::MissingHeader)?;
    if edges.len() != m {
        return Err(FormatError::EdgeCount { expected: m, found: edges.len() });
    }
    Graph::from_edges(n, &edges).map_err(|e| FormatError::Invalid(e.to_string()))
}

/// Edges in increasing `(u, v)` order with `u < v`.
pub fn render_graph(g: &Graph) -> String {
    let mut edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// A preset name or the text of a graph file.
pub fn parse_pattern(spec: &str, read: impl FnOnce(&str) -> std::io::Result<String>) -> anyhow::Result<Graph> {
    if let Some(g) = generators::preset(spec) {
        return Ok(g);
    }
    let text = read(spec).map_err(|e| {
        anyhow::anyhow!(
            "pattern {spec:?} is neither a preset ({}) nor a readable graph file: {e}",
            generators::PRESETS.join(", ")
        )
    })?;
    Ok(parse_graph(&text)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartFile {
    pub vertices: Vec<usize>,
    pub side: Side,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CertificateMeta {
    pub seed: u64,
    pub mode: String,
    /// `None` when the bound overflows.
    pub bound: Option<f64>,
    pub achieved_counts: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub eps: f64,
    pub parts: Vec<PartFile>,
    #[serde(default)]
    pub meta: CertificateMeta,
}

impl CertificateFile {
    pub fn from_certificate(cert: &PartitionCertificate, meta: CertificateMeta) -> Self {
        CertificateFile {
            eps: cert.eps,
            parts: cert
                .parts
                .iter()
                .map(|(s, side)| PartFile { vertices: s.to_vec(), side: *side })
                .collect(),
            meta,
        }
    }

    /// The certificate over `0..n`, or the violations that stop it from
    /// being one (ids out of range, repeats inside a part).
    pub fn to_certificate(&self, n: usize) -> Result<PartitionCertificate, Vec<Violation>> {
        let mut bad = Vec::new();
        let mut parts = Vec::with_capacity(self.parts.len());
        for (i, p) in self.parts.iter().enumerate() {
            let mut set = VertexSet::empty(n);
            for &v in &p.vertices {
                if v >= n {
                    bad.push(Violation::OutOfRange { part: i, vertex: v });
                } else if !set.insert(v) {
                    bad.push(Violation::Overlap { vertex: v, first: i, second: i });
                }
            }
            parts.push((set, p.side));
        }
        if bad.is_empty() {
            Ok(PartitionCertificate { eps: self.eps, parts })
        } else {
            Err(bad)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPartitionFile {
    pub eps: f64,
    pub levels: Vec<Vec<usize>>,
    pub directions: Vec<Side>,
}

impl PathPartitionFile {
    pub fn from_partition(pp: &PathPartition) -> Self {
        PathPartitionFile {
            eps: pp.eps,
            levels: pp.levels.iter().map(|l| l.to_vec()).collect(),
            directions: pp.directions.clone(),
        }
    }

    pub fn to_partition(&self, n: usize) -> Result<PathPartition, FormatError> {
        Ok(PathPartition {
            levels: self.levels.iter().map(|l| to_set(n, l)).collect::<Result<_, _>>()?,
            eps: self.eps,
            directions: self.directions.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreePartitionFile {
    pub h: usize,
    pub ell: usize,
    pub eps: f64,
    pub eta: f64,
    pub parents: Vec<Option<usize>>,
    pub bags: Vec<Vec<usize>>,
    pub directions: Vec<Side>,
}

impl TreePartitionFile {
    pub fn from_partition(tp: &TreePartition) -> Self {
        TreePartitionFile {
            h: tp.h,
            ell: tp.ell,
            eps: tp.eps,
            eta: tp.eta,
            parents: tp.tree.parents().to_vec(),
            bags: tp.bags.iter().map(|b| b.to_vec()).collect(),
            directions: tp.directions.clone(),
        }
    }

    pub fn to_partition(&self, n: usize) -> Result<TreePartition, FormatError> {
        Ok(TreePartition {
            tree: RootedTree::from_parents(self.parents.clone()).map_err(|e| FormatError::Invalid(e.to_string()))?,
            bags: self.bags.iter().map(|b| to_set(n, b)).collect::<Result<_, _>>()?,
            h: self.h,
            ell: self.ell,
            eps: self.eps,
            eta: self.eta,
            directions: self.directions.clone(),
        })
    }
}

/// Vertex list to a set, rejecting ids `>= n`.
pub fn to_set(n: usize, vs: &[usize]) -> Result<VertexSet, FormatError> {
    if let Some(&v) = vs.iter().find(|&&v| v >= n) {
        return Err(FormatError::Invalid(format!("vertex {v} out of range 0..{n}")));
    }
    Ok(VertexSet::from_iter(n, vs.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let g = parse_graph("# a path\n3 2\n\n0 1 # first\n1 2\n").unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 2));
    }

    #[test]
    fn rejects_malformed_files() {
        assert!(matches!(parse_graph("3 2\n0 1\n1 0\n"), Err(FormatError::Line { line: 3, .. })));
        assert!(matches!(parse_graph("3 1\n0 3\n"), Err(FormatError::Line { .. })));
        assert!(matches!(parse_graph("3 2\n0 1\n"), Err(FormatError::EdgeCount { expected: 2, found: 1 })));
        assert!(matches!(parse_graph("# nothing\n"), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_graph("3 1\n1 1\n"), Err(FormatError::Line { .. })));
        assert!(matches!(parse_graph("3 x\n"), Err(FormatError::Line { line: 1, .. })));
    }

    #[test]
    fn certificate_round_trip() {
        let g = Graph::empty(4);
        let cert = PartitionCertificate {
            eps: 0.5,
            parts: vec![(VertexSet::from_iter(4, [0, 2]), Side::Graph), (VertexSet::from_iter(4, [1, 3]), Side::Complement)],
        };
        let file = CertificateFile::from_certificate(&cert, CertificateMeta::default());
        let text = serde_json::to_string(&file).unwrap();
        let back: CertificateFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_certificate(g.n()).unwrap(), cert);
    }

    #[test]
    fn out_of_range_and_repeats_are_violations() {
        let file = CertificateFile {
            eps: 0.5,
            parts: vec![PartFile { vertices: vec![0, 0, 9], side: Side::Graph }],
            meta: CertificateMeta::default(),
        };
        let bad = file.to_certificate(3).unwrap_err();
        assert_eq!(bad.len(), 2);
    }

    proptest! {
        #[test]
        fn graph_round_trip(n in 1usize..30, seed in any::<u64>(), p in 0.0f64..1.0) {
            let mut rng = crate::rng::stream(seed, "test.io");
            let g = generators::gnp(n, p, &mut rng);
            let back = parse_graph(&render_graph(&g)).unwrap();
            prop_assert_eq!(render_graph(&back), render_graph(&g));
            prop_assert_eq!(back.edge_count(), g.edge_count());
        }
    }
}
