//! Partition an H-free graph into boundedly many ε-restricted sets, or
//! return an induced copy of H.

use serde::Serialize;

use super::lemma::{main_lemma_partition, LemmaConfig, LemmaOutcome};
use super::schedule::Mode;
use crate::error::{Error, Result};
use crate::graphcore::{ceil_tol, restricted_side, verify_induced_copy, Graph, Side};
use crate::partitions::{cover_small_tree, PartitionCertificate, RootedTree, SmallTreeOutcome, TreePartition};
use crate::rng;

/// Constants derived from `|H|` and ε.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremParams {
    /// `K = ⌈2/ε⌉`.
    pub k: usize,
    /// `h = |H|^2`.
    pub h: usize,
    /// `h^K`.
    pub hk: f64,
    /// `η = 1/(24 h^K)`.
    pub eta: f64,
    /// The lemma's ε: `ε/(4h^K)`.
    pub lemma_eps: f64,
    /// The lemma's θ: `ε/(48h^K)`.
    pub theta: f64,
}

pub fn theorem_params(pattern_n: usize, eps: f64) -> TheoremParams {
    let k = ceil_tol(2.0 / eps);
    let h = pattern_n * pattern_n;
    let hk = (h as f64).powi(k as i32);
    TheoremParams {
        k,
        h,
        hk,
        eta: 1.0 / (24.0 * hk),
        lemma_eps: eps / (4.0 * hk),
        theta: eps / (48.0 * hk),
    }
}

/// `M = h^{K+1}((K-1)N + 9218 ε^-2) + N`.
pub fn m_bound(params: &TheoremParams, eps: f64, n: f64) -> f64 {
    params.h as f64 * params.hk * ((params.k as f64 - 1.0) * n + 9218.0 / (eps * eps)) + n
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub certificate: PartitionCertificate,
    pub params: TheoremParams,
    /// The `N` plugged into the bound.
    pub n_used: f64,
    pub bound: f64,
    /// Pairs and restricted sets from the top-level lemma call.
    pub lemma_pairs: usize,
    pub lemma_sets: usize,
    pub stall: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub enum Outcome {
    Certificate(PartitionReport),
    /// Pattern vertex -> host vertex.
    InducedCopy(Vec<usize>),
}

fn copy(g: &Graph, pattern: &Graph, map: Vec<usize>) -> Result<Outcome> {
    if !verify_induced_copy(g, pattern, &map) {
        return Err(Error::ValidationFailed("returned map is not an induced copy".into()));
    }
    Ok(Outcome::InducedCopy(map))
}

pub fn partition_into_restricted(
    g: &Graph,
    pattern: &Graph,
    eps: f64,
    config: &LemmaConfig,
    seed: u64,
) -> Result<Outcome> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::PreconditionViolated(format!("eps must lie in (0, 1], got {eps}")));
    }
    if g.n() == 0 {
        return Err(Error::PreconditionViolated("the graph has no vertices".into()));
    }
    let params = theorem_params(pattern.n(), eps);
    let lemma = match main_lemma_partition(
        g,
        pattern,
        params.lemma_eps,
        params.eta,
        params.theta,
        config,
        rng::derive(seed, "theorem.lemma", 0),
    )? {
        LemmaOutcome::InducedCopy(map) => return copy(g, pattern, map),
        LemmaOutcome::Partition(p) => p,
    };
    let mut cert = PartitionCertificate::new(eps);
    let mut n_achieved = lemma.achieved_n();
    for (i, pair) in lemma.pairs.iter().enumerate() {
        let tp = TreePartition {
            tree: RootedTree::from_parents(vec![None, Some(0)])?,
            bags: vec![pair.a.clone(), pair.b.clone()],
            h: params.h,
            ell: 1,
            eps: params.lemma_eps,
            eta: params.eta,
            directions: vec![pair.side, Side::Graph],
        };
        match cover_small_tree(g, &tp, pattern, eps, config, rng::derive(seed, "theorem.pair", i as u64))? {
            SmallTreeOutcome::InducedCopy(map) => return copy(g, pattern, map),
            SmallTreeOutcome::Certificate(c) => {
                n_achieved = n_achieved.max(c.n_achieved);
                cert.parts.extend(c.certificate.parts);
            }
        }
    }
    for (c, _) in &lemma.c_sets {
        let side = restricted_side(g, c, eps)
            .ok_or_else(|| Error::ValidationFailed("a lemma set is not eps-restricted".into()))?;
        cert.parts.push((c.clone(), side));
    }
    let n_used = match (config.mode, lemma.schedule.n_total) {
        (Mode::Theoretical, Some(n)) => n,
        _ => n_achieved as f64,
    };
    let bound = m_bound(&params, eps, n_used);
    if cert.len() as f64 > bound {
        return Err(Error::ValidationFailed(format!("{} parts exceed the bound {bound}", cert.len())));
    }
    cert.verify(g)?;
    Ok(Outcome::Certificate(PartitionReport {
        certificate: cert,
        params,
        n_used,
        bound,
        lemma_pairs: lemma.pairs.len(),
        lemma_sets: lemma.c_sets.len(),
        stall: lemma.stall,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn certificate(out: Outcome) -> PartitionReport {
        match out {
            Outcome::Certificate(r) => r,
            Outcome::InducedCopy(m) => panic!("unexpected copy {m:?}"),
        }
    }

    #[test]
    fn star_centre_part_is_tiny() {
        let g = generators::star(51);
        let k3 = generators::preset("K3").unwrap();
        let r = certificate(partition_into_restricted(&g, &k3, 0.4, &LemmaConfig::default(), 3).unwrap());
        r.certificate.verify(&g).unwrap();
        let centre = r.certificate.parts.iter().find(|(p, _)| p.contains(0)).unwrap();
        assert!(centre.0.len() <= 2);
    }

    #[test]
    fn edgeless_is_one_part() {
        let g = Graph::empty(30);
        let r = certificate(
            partition_into_restricted(&g, &generators::preset("K3").unwrap(), 0.2, &LemmaConfig::default(), 0).unwrap(),
        );
        assert_eq!(r.certificate.len(), 1);
        assert!(r.certificate.len() as f64 <= r.bound);
    }

    #[test]
    fn k5_gives_a_triangle() {
        let g = Graph::complete(5);
        let k3 = generators::preset("K3").unwrap();
        match partition_into_restricted(&g, &k3, 0.3, &LemmaConfig::default(), 0).unwrap() {
            Outcome::InducedCopy(map) => assert!(verify_induced_copy(&g, &k3, &map)),
            Outcome::Certificate(_) => panic!("expected a copy"),
        }
    }

    #[test]
    fn bound_formula() {
        let p = theorem_params(2, 1.0);
        assert_eq!((p.k, p.h), (2, 4));
        assert_eq!(p.hk, 16.0);
        assert_eq!(m_bound(&p, 1.0, 3.0), 4.0 * 16.0 * (3.0 + 9218.0) + 3.0);
    }

    #[test]
    fn rejects_bad_eps() {
        let g = Graph::empty(3);
        let k3 = generators::preset("K3").unwrap();
        assert!(partition_into_restricted(&g, &k3, 0.0, &LemmaConfig::default(), 0).is_err());
        assert!(partition_into_restricted(&g, &k3, 1.5, &LemmaConfig::default(), 0).is_err());
    }
}
