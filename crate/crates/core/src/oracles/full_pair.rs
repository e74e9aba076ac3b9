//! Search for large (c, ε)-full (or -empty) sub-pairs of a dense pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{
    check_fullness, edges_between_side, ensure_disjoint, Combinations, FullnessConfig,
    FullnessStatus, Graph, Side, VertexSet,
};

/// Inputs with `|a| + |b|` up to this size are searched exhaustively in
/// auto mode.
pub const EXHAUSTIVE_LIMIT: usize = 24;

/// Fullness checks an exhaustive search may spend.
const EXHAUSTIVE_CHECKS: usize = 200_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PairMode {
    #[default]
    Auto,
    Exhaustive,
    Heuristic,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullPair {
    pub a: VertexSet,
    pub b: VertexSet,
    /// `min(|a'| / |a|, |b'| / |b|)`.
    pub achieved_gamma: f64,
    pub status: FullnessStatus,
}

#[derive(Clone, Debug)]
pub struct PairRequest {
    pub c: f64,
    pub eps: f64,
    pub tau: f64,
    pub side: Side,
    pub mode: PairMode,
}

pub fn find_full_pair(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    req: &PairRequest,
    cfg: &FullnessConfig,
) -> Result<FullPair> {
    ensure_disjoint(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::PreconditionViolated("both sets must be nonempty".into()));
    }
    if !(req.eps < req.tau && req.tau <= 8.0 / 9.0) {
        return Err(Error::PreconditionViolated(format!(
            "need eps < tau <= 8/9, got eps={} tau={}",
            req.eps, req.tau
        )));
    }
    let e = edges_between_side(g, a, b, req.side)?;
    let cells = (a.len() * b.len()) as f64;
    if (e as f64) < req.tau * cells - 1e-9 * (1.0 + cells) {
        return Err(Error::PreconditionViolated(format!(
            "pair has {e} {} edges, below tau |a||b| = {}",
            req.side.as_str(),
            req.tau * cells
        )));
    }
    let found = match req.mode {
        PairMode::Exhaustive => exhaustive(g, a, b, req, cfg)?,
        PairMode::Heuristic => heuristic(g, a, b, req, cfg)?,
        PairMode::Auto => {
            if a.len() + b.len() <= EXHAUSTIVE_LIMIT {
                match exhaustive(g, a, b, req, cfg) {
                    Ok(p) => p,
                    Err(Error::SearchFailed(_)) => heuristic(g, a, b, req, cfg)?,
                    Err(e) => return Err(e),
                }
            } else {
                heuristic(g, a, b, req, cfg)?
            }
        }
    };
    Ok(found)
}

fn gamma_of(pa: &VertexSet, pb: &VertexSet, a: &VertexSet, b: &VertexSet) -> f64 {
    (pa.len() as f64 / a.len() as f64).min(pb.len() as f64 / b.len() as f64)
}

/// Minimal sub-pair sizes for each attainable gamma, largest gamma first,
/// and the first (lexicographic) full sub-pair found.
fn exhaustive(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    req: &PairRequest,
    cfg: &FullnessConfig,
) -> Result<FullPair> {
    let (av, bv) = (a.to_vec(), b.to_vec());
    let (na, nb) = (av.len(), bv.len());
    let mut targets: Vec<(usize, usize)> = Vec::new();
    let mut gammas: Vec<f64> = (1..=na)
        .map(|i| i as f64 / na as f64)
        .chain((1..=nb).map(|j| j as f64 / nb as f64))
        .collect();
    gammas.sort_by(|x, y| y.partial_cmp(x).expect("finite"));
    gammas.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
    for gm in gammas {
        let sa = crate::graphcore::ceil_tol(gm * na as f64).max(1);
        let sb = crate::graphcore::ceil_tol(gm * nb as f64).max(1);
        if !targets.contains(&(sa, sb)) {
            targets.push((sa, sb));
        }
    }
    let mut checks = 0usize;
    for (sa, sb) in targets {
        for ca in Combinations::new(na, sa) {
            let pa = VertexSet::from_iter(g.n(), ca.iter().map(|&i| av[i]));
            for cb in Combinations::new(nb, sb) {
                checks += 1;
                if checks > EXHAUSTIVE_CHECKS {
                    return Err(Error::SearchFailed(format!(
                        "exhaustive full-pair search exceeded {EXHAUSTIVE_CHECKS} checks"
                    )));
                }
                let pb = VertexSet::from_iter(g.n(), cb.iter().map(|&j| bv[j]));
                if let Some(status) = check_fullness(g, &pa, &pb, req.c, req.eps, req.side, cfg)? {
                    let achieved_gamma = gamma_of(&pa, &pb, a, b);
                    return Ok(FullPair {
                        a: pa,
                        b: pb,
                        achieved_gamma,
                        status,
                    });
                }
            }
        }
    }
    Err(Error::SearchFailed("no full sub-pair of any size".into()))
}

/// Peel the vertex with smallest cross-degree ratio until the remaining
/// pair checks out. If peeling empties a side, fall back to a star: the
/// vertex of `a` with most side-neighbours in `b` against those neighbours,
/// which is complete on the requested side and hence full.
fn heuristic(
    g: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    req: &PairRequest,
    cfg: &FullnessConfig,
) -> Result<FullPair> {
    let side = req.side;
    let (mut ca, mut cb) = (a.clone(), b.clone());
    while !ca.is_empty() && !cb.is_empty() {
        if let Some(status) = check_fullness(g, &ca, &cb, req.c, req.eps, side, cfg)? {
            let achieved_gamma = gamma_of(&ca, &cb, a, b);
            return Ok(FullPair {
                a: ca,
                b: cb,
                achieved_gamma,
                status,
            });
        }
        let (la, lb) = (ca.len(), cb.len());
        // Compare d/|other| as cross-multiplied integers: (d, len, id, from_a).
        let mut worst: Option<(usize, usize, usize, bool)> = None;
        let better = |cand: (usize, usize, usize, bool), cur: Option<(usize, usize, usize, bool)>| match cur {
            None => true,
            Some((d, l, id, _)) => {
                let lhs = cand.0 * l;
                let rhs = d * cand.1;
                lhs < rhs || (lhs == rhs && cand.2 < id)
            }
        };
        for v in ca.iter() {
            let cand = (g.degree_into_side(v, &cb, side), lb, v, true);
            if better(cand, worst) {
                worst = Some(cand);
            }
        }
        for v in cb.iter() {
            let cand = (g.degree_into_side(v, &ca, side), la, v, false);
            if better(cand, worst) {
                worst = Some(cand);
            }
        }
        let (_, _, v, from_a) = worst.expect("nonempty sides");
        if from_a {
            ca.remove(v);
        } else {
            cb.remove(v);
        }
    }
    let x = a
        .iter()
        .map(|v| (g.degree_into_side(v, b, side), std::cmp::Reverse(v)))
        .max()
        .map(|(_, std::cmp::Reverse(v))| v)
        .expect("a nonempty");
    let pa = VertexSet::singleton(g.n(), x);
    let pb = match side {
        Side::Graph => g.neighbourhood(x).intersection(b),
        Side::Complement => b.difference(&g.neighbourhood(x)),
    };
    if pb.is_empty() {
        return Err(Error::SearchFailed("no vertex of a has a side-neighbour in b".into()));
    }
    let status = check_fullness(g, &pa, &pb, req.c, req.eps, side, cfg)?
        .ok_or_else(|| Error::SearchFailed("star fallback is not full".into()))?;
    let achieved_gamma = gamma_of(&pa, &pb, a, b);
    Ok(FullPair {
        a: pa,
        b: pb,
        achieved_gamma,
        status,
    })
}
