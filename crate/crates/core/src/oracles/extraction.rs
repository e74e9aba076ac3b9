//! Iterated extraction of restricted sets, and the geometric-decay count
//! that bounds it.

use serde::Serialize;

use super::restricted::{find_restricted_subset, SearchMode};
use crate::error::{Error, Result};
use crate::graphcore::{within, Graph, Side, VertexSet};

#[derive(Clone, Debug, Serialize)]
pub struct ExtractionResult {
    pub parts: Vec<(VertexSet, Side)>,
    pub leftover: VertexSet,
    /// Smallest `|part| / |remainder before extraction|` over the rounds;
    /// 1 when no round ran.
    pub achieved_delta: f64,
    pub round_deltas: Vec<f64>,
}

/// Least `n >= 0` with `(1 - delta)^n <= gamma`; infinite when `delta = 0`
/// and `gamma < 1`.
pub fn n_gamma(delta: f64, gamma: f64) -> f64 {
    assert!((0.0..=1.0).contains(&delta), "delta out of range: {delta}");
    assert!(gamma > 0.0, "gamma must be positive");
    if gamma >= 1.0 {
        return 0.0;
    }
    if delta >= 1.0 {
        return 1.0;
    }
    if delta <= 0.0 {
        return f64::INFINITY;
    }
    let est = (gamma.ln() / (1.0 - delta).ln()).ceil().max(0.0);
    if est > 1e12 {
        return est;
    }
    // Settle float error on either side of the estimate.
    let mut n = est;
    while n > 0.0 && (1.0 - delta).powf(n - 1.0) <= gamma {
        n -= 1.0;
    }
    while (1.0 - delta).powf(n) > gamma {
        n += 1.0;
    }
    n
}

/// Extract restricted sets from `x` until at most `max_leftover` vertices
/// remain.
pub fn extract_until(
    g: &Graph,
    x: &VertexSet,
    eps: f64,
    mode: SearchMode,
    max_leftover: usize,
) -> Result<ExtractionResult> {
    let mut rest = x.clone();
    let mut parts = Vec::new();
    let mut round_deltas = Vec::new();
    while rest.len() > max_leftover {
        let (part, side) = find_restricted_subset(g, &rest, eps, mode)?;
        round_deltas.push(part.len() as f64 / rest.len() as f64);
        rest.difference_with(&part);
        parts.push((part, side));
    }
    let achieved_delta = round_deltas.iter().copied().fold(1.0, f64::min);
    Ok(ExtractionResult {
        parts,
        leftover: rest,
        achieved_delta,
        round_deltas,
    })
}

/// Partition `x` into ε-restricted parts plus a leftover of at most
/// `gamma |x|` vertices.
pub fn extraction_partition(
    g: &Graph,
    x: &VertexSet,
    eps: f64,
    gamma: f64,
    mode: SearchMode,
) -> Result<ExtractionResult> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::PreconditionViolated(format!(
            "gamma must lie in (0, 1), got {gamma}"
        )));
    }
    let n = x.len();
    // Largest count that still satisfies `count <= gamma n`.
    let max_leftover = (0..=n).rev().find(|&c| within(c, gamma, n as f64)).unwrap_or(0);
    extract_until(g, x, eps, mode, max_leftover)
}
