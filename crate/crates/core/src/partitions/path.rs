//! (k, ε)-path-partitions and their cover by ε-restricted sets.

use std::fmt;

use serde::Serialize;

use super::certificate::PartitionCertificate;
use crate::covering::{find_cover_set, CoverRequest, DEFAULT_RETRY_CAP};
use crate::error::{Error, Result};
use crate::graphcore::{
    ceil_tol, is_restricted_on, is_sparse_to, restricted_side, within, Graph, Side, VertexSet,
};
use crate::oracles::{extract_until, SearchMode};
use crate::rng;

/// Levels `W_0, .., W_k`; `directions[i]` is the side on which
/// `W_{i+1} ∪ .. ∪ W_k` is ε/12-sparse to `W_i`.
#[derive(Clone, Debug, Serialize)]
pub struct PathPartition {
    pub levels: Vec<VertexSet>,
    pub eps: f64,
    pub directions: Vec<Side>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum PathViolation {
    Shape { reason: String },
    Overlap { vertex: usize },
    NotCovering { vertex: usize },
    NotRestricted { level: usize },
    Cardinality { level: usize, tail: usize, size: usize },
    NotSparse { level: usize, side: Side },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::Shape { reason } => write!(f, "malformed path-partition: {reason}"),
            PathViolation::Overlap { vertex } => write!(f, "vertex {vertex} lies in two levels"),
            PathViolation::NotCovering { vertex } => write!(f, "vertex {vertex} lies in no level"),
            PathViolation::NotRestricted { level } => write!(f, "level {level} is not restricted"),
            PathViolation::Cardinality { level, tail, size } => {
                write!(f, "level {level}: tail of {tail} vertices exceeds {size}/12")
            }
            PathViolation::NotSparse { level, side } => write!(
                f,
                "level {level}: tail is not eps/12-sparse on the {} side",
                side.as_str()
            ),
        }
    }
}

impl PathPartition {
    pub fn k(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn ground(&self, n: usize) -> VertexSet {
        let mut all = VertexSet::empty(n);
        for l in &self.levels {
            all.union_with(l);
        }
        all
    }
}

/// First violated clause, with the levels required to cover `ground`.
pub(crate) fn check_path(g: &Graph, pp: &PathPartition, ground: Option<&VertexSet>) -> Option<PathViolation> {
    let k = pp.k();
    if pp.levels.len() < 2 {
        return Some(PathViolation::Shape { reason: "need k >= 1".into() });
    }
    if pp.directions.len() != k {
        return Some(PathViolation::Shape {
            reason: format!("{} directions for k = {k}", pp.directions.len()),
        });
    }
    let mut seen = VertexSet::empty(g.n());
    for l in &pp.levels {
        if l.universe() != g.n() {
            return Some(PathViolation::Shape { reason: "level over a different universe".into() });
        }
        if let Some(v) = seen.intersection(l).first() {
            return Some(PathViolation::Overlap { vertex: v });
        }
        seen.union_with(l);
    }
    if let Some(ground) = ground {
        if let Some(v) = ground.difference(&seen).first() {
            return Some(PathViolation::NotCovering { vertex: v });
        }
        if let Some(v) = seen.difference(ground).first() {
            return Some(PathViolation::Overlap { vertex: v });
        }
    }
    let mut tails = vec![VertexSet::empty(g.n()); k + 1];
    tails[k] = pp.levels[k].clone();
    for i in (0..k).rev() {
        tails[i] = tails[i + 1].union(&pp.levels[i]);
    }
    for i in 0..k {
        let w = &pp.levels[i];
        let tail = &tails[i + 1];
        if restricted_side(g, w, pp.eps).is_none() {
            return Some(PathViolation::NotRestricted { level: i });
        }
        if !within(tail.len(), 1.0 / 12.0, w.len() as f64) {
            return Some(PathViolation::Cardinality { level: i, tail: tail.len(), size: w.len() });
        }
        let side = pp.directions[i];
        if !is_sparse_to(g, tail, w, pp.eps / 12.0, side).unwrap_or(false) {
            return Some(PathViolation::NotSparse { level: i, side });
        }
    }
    None
}

/// Checks every clause of the definition, requiring the levels to
/// partition `V(g)`.
pub fn validate_path_partition(g: &Graph, pp: &PathPartition) -> std::result::Result<(), PathViolation> {
    match check_path(g, pp, Some(&g.vertices())) {
        None => Ok(()),
        Some(v) => Err(v),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathBranch {
    /// `W_k` is empty; the other levels are the parts.
    EmptyTail,
    /// `ln(2kp) > εp/24`: levels plus singletons of `W_k`.
    Singletons,
    /// Covering sets chosen level by level and merged into one part.
    Covering,
    /// As `Covering`, but the merged part failed its check and was split
    /// by extraction.
    CoveringSplit,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathCover {
    pub certificate: PartitionCertificate,
    pub branch: PathBranch,
    /// `|W_k|`.
    pub p: usize,
    /// Sampling attempts spent by the covering calls.
    pub attempts: usize,
}

/// `⌈9217 ε^-2⌉`.
pub fn path_bound(eps: f64) -> f64 {
    (9217.0 / (eps * eps)).ceil()
}

/// Cover a `(k, ε/2)`-path-partition with `k = ⌈2/ε⌉` and `ε <= 1/3` by
/// at most `9217 ε^-2` ε-restricted sets. The certificate covers the union
/// of the levels.
pub fn cover_path(g: &Graph, pp: &PathPartition, eps: f64, seed: u64) -> Result<PathCover> {
    if !(eps > 0.0 && eps <= 1.0 / 3.0) {
        return Err(Error::PreconditionViolated(format!(
            "eps must lie in (0, 1/3], got {eps}"
        )));
    }
    cover_path_any(g, pp, eps, seed, DEFAULT_RETRY_CAP)
}

/// [`cover_path`] with an explicit sampling cap for the covering step.
pub fn cover_path_with_cap(g: &Graph, pp: &PathPartition, eps: f64, seed: u64, retry_cap: usize) -> Result<PathCover> {
    if !(eps > 0.0 && eps <= 1.0 / 3.0) {
        return Err(Error::PreconditionViolated(format!(
            "eps must lie in (0, 1/3], got {eps}"
        )));
    }
    cover_path_any(g, pp, eps, seed, retry_cap)
}

/// [`cover_path`] for any `ε <= 1`; tree covers need the wider range. The
/// part-count bound holds there too, since `k <= 3/ε²` for `ε <= 1`.
pub(crate) fn cover_path_any(
    g: &Graph,
    pp: &PathPartition,
    eps: f64,
    seed: u64,
    retry_cap: usize,
) -> Result<PathCover> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::PreconditionViolated(format!("eps must lie in (0, 1], got {eps}")));
    }
    let k = ceil_tol(2.0 / eps);
    if pp.k() != k {
        return Err(Error::PreconditionViolated(format!(
            "path-partition has k = {}, expected ceil(2/eps) = {k}",
            pp.k()
        )));
    }
    if (pp.eps - eps / 2.0).abs() > 1e-12 * (1.0 + eps) {
        return Err(Error::PreconditionViolated(format!(
            "path-partition parameter is {}, expected eps/2 = {}",
            pp.eps,
            eps / 2.0
        )));
    }
    if let Some(v) = check_path(g, pp, None) {
        return Err(Error::PreconditionViolated(v.to_string()));
    }
    let ground = pp.ground(g.n());
    let p = pp.levels[k].len();
    let eps1 = eps / 24.0;
    let mut cert = PartitionCertificate::new(eps);
    let push_level = |cert: &mut PartitionCertificate, set: VertexSet| -> Result<()> {
        if set.is_empty() {
            return Ok(());
        }
        let side = restricted_side(g, &set, eps)
            .ok_or_else(|| Error::ValidationFailed("a level is not eps-restricted".into()))?;
        cert.parts.push((set, side));
        Ok(())
    };

    let branch;
    let mut attempts = 0;
    if p == 0 {
        branch = PathBranch::EmptyTail;
        for w in &pp.levels[..k] {
            push_level(&mut cert, w.clone())?;
        }
    } else if (2.0 * k as f64 * p as f64).ln() > eps1 * p as f64 {
        branch = PathBranch::Singletons;
        assert!(
            (p as f64) < 815.0 / (eps * eps),
            "p = {p} violates p < 815/eps^2 in the singleton branch"
        );
        for w in &pp.levels[..k] {
            push_level(&mut cert, w.clone())?;
        }
        for v in pp.levels[k].iter() {
            cert.parts.push((VertexSet::singleton(g.n(), v), Side::Graph));
        }
    } else {
        let mut cs: Vec<VertexSet> = vec![VertexSet::empty(g.n()); k + 1];
        cs[k] = pp.levels[k].clone();
        let mut below = cs[k].clone();
        for i in (0..k).rev() {
            let req = CoverRequest {
                a: pp.levels[i].clone(),
                b: below.clone(),
                eps: eps1,
                p,
                side: pp.directions[i],
                seed: rng::derive(seed, "cover_path.level", i as u64),
                retry_cap,
            };
            let r = find_cover_set(g, &req)?;
            attempts += r.attempts;
            below.union_with(&r.set);
            cs[i] = r.set;
        }
        let sparse = pp.directions.iter().filter(|&&s| s == Side::Graph).count();
        let side = if 2 * sparse >= k { Side::Graph } else { Side::Complement };
        let in_i: Vec<bool> = pp.directions.iter().map(|&s| s == side).collect();
        let mut c = cs[k].clone();
        for i in 0..k {
            if in_i[i] {
                c.union_with(&cs[i]);
                push_level(&mut cert, pp.levels[i].difference(&cs[i]))?;
            } else {
                push_level(&mut cert, pp.levels[i].clone())?;
            }
        }
        if is_restricted_on(g, &c, eps, side) {
            branch = PathBranch::Covering;
            cert.parts.push((c, side));
        } else if let Some(s) = restricted_side(g, &c, eps) {
            branch = PathBranch::Covering;
            cert.parts.push((c, s));
        } else {
            branch = PathBranch::CoveringSplit;
            let split = extract_until(g, &c, eps, SearchMode::Greedy, 0)?;
            cert.parts.extend(split.parts);
        }
    }
    if cert.len() as f64 > path_bound(eps) {
        return Err(Error::ValidationFailed(format!(
            "{} parts exceed the bound {}",
            cert.len(),
            path_bound(eps)
        )));
    }
    cert.verify_on(g, &ground)?;
    Ok(PathCover {
        certificate: cert,
        branch,
        p,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::gen::{path_instance, PathSpec};

    #[test]
    fn edgeless_two_levels_validate() {
        let g = Graph::empty(13);
        let pp = PathPartition {
            levels: vec![VertexSet::from_iter(13, 0..12), VertexSet::singleton(13, 12)],
            eps: 0.1,
            directions: vec![Side::Graph],
        };
        assert_eq!(validate_path_partition(&g, &pp), Ok(()));
    }

    #[test]
    fn cardinality_clause_reported() {
        let g = Graph::empty(13);
        let pp = PathPartition {
            levels: vec![VertexSet::from_iter(13, 0..11), VertexSet::from_iter(13, 11..13)],
            eps: 0.1,
            directions: vec![Side::Graph],
        };
        assert!(matches!(
            validate_path_partition(&g, &pp),
            Err(PathViolation::Cardinality { level: 0, tail: 2, size: 11 })
        ));
    }

    #[test]
    fn singleton_branch_at_third() {
        let spec = PathSpec::full_depth(1.0 / 3.0, 1, 0);
        let (g, pp) = path_instance(&spec, 1);
        assert_eq!(validate_path_partition(&g, &pp), Ok(()));
        let cover = cover_path(&g, &pp, 1.0 / 3.0, 5).unwrap();
        assert_eq!(cover.branch, PathBranch::Singletons);
        assert_eq!(cover.certificate.len(), 7);
        cover.certificate.verify(&g).unwrap();
    }

    #[test]
    fn covering_branch_at_eps_one() {
        // k = 2, eps' = 1/24: p = 200 satisfies ln(4p) <= p/24.
        let spec = PathSpec {
            eps: 1.0,
            sizes: vec![31_400, 2_410, 200],
            inner_deg: 2,
            cross_deg: 20,
            dense_cap: 0,
        };
        let (g, pp) = path_instance(&spec, 3);
        assert_eq!(validate_path_partition(&g, &pp), Ok(()));
        let cover = cover_path_any(&g, &pp, 1.0, 9, DEFAULT_RETRY_CAP).unwrap();
        assert!(matches!(cover.branch, PathBranch::Covering | PathBranch::CoveringSplit));
        cover.certificate.verify(&g).unwrap();
        assert!(cover.certificate.len() as f64 <= path_bound(1.0));
    }

    #[test]
    fn trailing_empty_levels_use_the_empty_tail_branch() {
        let spec = PathSpec::truncated(0.25, 3, 5, 2);
        let (g, pp) = path_instance(&spec, 4);
        assert_eq!(validate_path_partition(&g, &pp), Ok(()));
        let cover = cover_path(&g, &pp, 0.25, 1).unwrap();
        assert_eq!(cover.branch, PathBranch::EmptyTail);
        assert_eq!(cover.certificate.len(), 3);
        cover.certificate.verify(&g).unwrap();
    }

    #[test]
    fn wrong_k_rejected() {
        let g = Graph::empty(13);
        let pp = PathPartition {
            levels: vec![VertexSet::from_iter(13, 0..12), VertexSet::singleton(13, 12)],
            eps: 1.0 / 6.0,
            directions: vec![Side::Graph],
        };
        assert!(cover_path(&g, &pp, 1.0 / 3.0, 0).is_err());
    }
}
