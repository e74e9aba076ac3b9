//! Randomized covering sets: from `A` with `B` ε-sparse to it, pick
//! `P ⊆ A` of size exactly `p` such that `P` is 2ε-sparse to `B` and `B` is
//! 12ε-sparse to `P`.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{ceil_tol, ensure_disjoint, is_sparse_to, Graph, Side, VertexSet};
use crate::rng;

pub const DEFAULT_RETRY_CAP: usize = 1000;

#[derive(Clone, Debug)]
pub struct CoverRequest {
    pub a: VertexSet,
    pub b: VertexSet,
    pub eps: f64,
    pub p: usize,
    pub side: Side,
    pub seed: u64,
    pub retry_cap: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverResult {
    pub set: VertexSet,
    /// Samples drawn; 0 when no sampling was needed.
    pub attempts: usize,
    /// Size of the low-degree pool the samples are drawn from.
    pub q: usize,
}

/// The admissible range `ln(2|b|)/eps <= p <= |a|/12`, as integers.
pub fn p_range(a_len: usize, b_len: usize, eps: f64) -> (usize, usize) {
    let lo = ceil_tol((2.0 * b_len as f64).ln() / eps);
    let hi = a_len / 12;
    (lo, hi)
}

fn check(g: &Graph, req: &CoverRequest) -> Result<()> {
    let bad = |m: String| Err(Error::PreconditionViolated(m));
    if !(req.eps > 0.0 && req.eps <= 1.0 / 16.0) {
        return bad(format!("eps must lie in (0, 1/16], got {}", req.eps));
    }
    ensure_disjoint(&req.a, &req.b)?;
    if req.a.is_empty() || req.b.is_empty() {
        return bad("a and b must be nonempty".into());
    }
    let (lo, hi) = p_range(req.a.len(), req.b.len(), req.eps);
    if req.p < lo || req.p > hi {
        return bad(format!(
            "p = {} outside [ln(2|b|)/eps, |a|/12] = [{lo}, {hi}]",
            req.p
        ));
    }
    if !is_sparse_to(g, &req.b, &req.a, req.eps, req.side)? {
        return bad(format!("b is not {}-sparse to a on the {} side", req.eps, req.side.as_str()));
    }
    Ok(())
}

pub fn find_cover_set(g: &Graph, req: &CoverRequest) -> Result<CoverResult> {
    check(g, req)?;
    let side = req.side;
    let (a, b, eps, p) = (&req.a, &req.b, req.eps, req.p);
    let b_len = b.len();
    let bound = 2.0 * eps * b_len as f64;
    let pool: Vec<usize> = a
        .iter()
        .filter(|&v| (g.degree_into_side(v, b, side) as f64) < bound - 1e-9 * (1.0 + bound))
        .collect();
    let q = pool.len();
    // Edge counting: (|a| - q) 2ε|b| <= #edges <= ε|a||b| forces q >= |a|/2.
    debug_assert!(2 * q >= a.len(), "q = {q} below |a|/2 = {}", a.len() as f64 / 2.0);

    let touches = b.iter().any(|v| g.degree_into_side(v, a, side) > 0);
    if !touches {
        let set = a.smallest(p);
        return Ok(CoverResult { set, attempts: 0, q });
    }

    let k = ceil_tol(12.0 * eps * p as f64);
    let bv = b.to_vec();
    let mut bpos = vec![usize::MAX; g.n()];
    for (i, &v) in bv.iter().enumerate() {
        bpos[v] = i;
    }
    let mut rng = rng::stream(req.seed, "covering");
    let mut hits = vec![0usize; b_len];
    let mut drawn: Vec<usize> = Vec::with_capacity(2 * p);
    for attempt in 1..=req.retry_cap {
        hits.iter_mut().for_each(|h| *h = 0);
        drawn.clear();
        let draws = 2 * p;
        for _ in 0..draws {
            let u = pool[rng.random_range(0..q)];
            drawn.push(u);
            for &w in g.neighbors(u) {
                let j = bpos[w as usize];
                if j != usize::MAX {
                    hits[j] += 1;
                }
            }
        }
        drawn.sort_unstable();
        drawn.dedup();
        if drawn.len() <= p {
            continue;
        }
        let side_hits = |h: usize| match side {
            Side::Graph => h,
            Side::Complement => draws - h,
        };
        if hits.iter().any(|&h| side_hits(h) >= k) {
            continue;
        }
        let set = VertexSet::from_iter(g.n(), drawn[..p].iter().copied());
        let ok = is_sparse_to(g, &set, b, 2.0 * eps, side)?
            && is_sparse_to(g, b, &set, 12.0 * eps, side)?;
        if !ok {
            return Err(Error::ValidationFailed(
                "accepted sample fails the sparsity check".into(),
            ));
        }
        return Ok(CoverResult {
            set,
            attempts: attempt,
            q,
        });
    }
    Err(Error::RetryExhausted {
        attempts: req.retry_cap,
    })
}
