//! The main lemma: grow a partition of type (k, ℓ, m) until the residue
//! is empty, or embed the pattern once there are |H| anchors.

use serde::{Deserialize, Serialize};

use super::schedule::{compute_schedule, DeltaModel, Mode, ParamSchedule};
use super::state::{verify_with, Claim, LemmaReport, LemmaState, Pair};
use crate::covering::DEFAULT_RETRY_CAP;
use crate::embedding::{embed_transversal, BlockSystem};
use crate::error::{Error, Result};
use crate::graphcore::{
    check_fullness, find_induced_copy, is_sparse_to, restricted_side, within, FullnessConfig, Graph, Side,
    VertexSet,
};
use crate::oracles::{extract_until, find_full_pair, find_restricted_subset, PairMode, PairRequest, SearchMode};
use crate::rng;

/// Rounds of shrinking ε' before falling back to ε' = 0.
const TIGHTEN_ROUNDS: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StallPolicy {
    /// Return `StallDetected` with the state.
    Error,
    /// Turn anchors into restricted sets, extract the residue completely
    /// and report the reason alongside the partition.
    #[default]
    Flush,
}

#[derive(Clone, Debug)]
pub struct LemmaConfig {
    pub mode: Mode,
    pub delta: Option<DeltaModel>,
    pub gamma: Option<f64>,
    pub stall_policy: StallPolicy,
    /// Look for an induced copy of the pattern before running the loop.
    pub precheck_h_free: bool,
    pub fullness: FullnessConfig,
    pub pair_mode: PairMode,
    pub search: SearchMode,
    /// Sampling cap for the covering step of tree covers.
    pub retry_cap: usize,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            mode: Mode::Empirical,
            delta: None,
            gamma: None,
            stall_policy: StallPolicy::Flush,
            precheck_h_free: true,
            fullness: FullnessConfig::default(),
            pair_mode: PairMode::Auto,
            search: SearchMode::Greedy,
            retry_cap: DEFAULT_RETRY_CAP,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StepRecord {
    pub m: usize,
    pub residue_before: usize,
    pub e0: usize,
    pub f: usize,
    pub f_m: usize,
    pub eps_f: f64,
    pub j_parts: usize,
    pub residue_after: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaPartition {
    /// Pairs with nonempty `b`.
    pub pairs: Vec<Pair>,
    /// ε-restricted sets, sides at the lemma's ε.
    pub c_sets: Vec<(VertexSet, Side)>,
    /// Last partition of type (k, ℓ, m) reached, and its check.
    pub last_state: LemmaState,
    pub report: LemmaReport,
    pub schedule: ParamSchedule,
    pub steps: Vec<StepRecord>,
    /// Set when the loop stalled and the state was flushed.
    pub stall: Option<String>,
}

impl LemmaPartition {
    pub fn achieved_n(&self) -> usize {
        self.c_sets.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum LemmaOutcome {
    Partition(LemmaPartition),
    /// Pattern vertex -> host vertex.
    InducedCopy(Vec<usize>),
}

enum Step {
    Next(LemmaState, StepRecord),
    /// `E_0` was empty: every residue vertex joined a pair.
    Closed(LemmaState),
    Copy(Vec<usize>),
    Stall(String),
}

pub fn main_lemma_partition(
    g: &Graph,
    pattern: &Graph,
    eps: f64,
    eta: f64,
    theta: f64,
    config: &LemmaConfig,
    seed: u64,
) -> Result<LemmaOutcome> {
    main_lemma_on(g, &g.vertices(), pattern, eps, eta, theta, config, seed)
}

/// [`main_lemma_partition`] restricted to `ground`.
#[allow(clippy::too_many_arguments)]
pub fn main_lemma_on(
    g: &Graph,
    ground: &VertexSet,
    pattern: &Graph,
    eps: f64,
    eta: f64,
    theta: f64,
    config: &LemmaConfig,
    seed: u64,
) -> Result<LemmaOutcome> {
    if ground.is_empty() {
        return Err(Error::PreconditionViolated("the ground set is empty".into()));
    }
    if pattern.n() == 0 {
        return Err(Error::PreconditionViolated("the pattern has no vertices".into()));
    }
    let sched = compute_schedule(pattern.n(), eps, eta, theta, config.mode, config.delta, config.gamma)?;
    if config.precheck_h_free {
        let sub = g.induced(ground);
        if let Some(map) = find_induced_copy(&sub.graph, pattern) {
            return Ok(LemmaOutcome::InducedCopy(map.iter().map(|&v| sub.to_old[v]).collect()));
        }
    }
    let mut state = LemmaState::initial(ground.clone(), pattern);
    let mut steps = Vec::new();
    let mut stall = None;
    let mut closed = None;
    let mut round = 0u64;
    while !state.residue.is_empty() {
        round += 1;
        match advance(g, &state, pattern, &sched, config, rng::derive(seed, "lemma.step", round))? {
            Step::Next(next, rec) => {
                state = next;
                steps.push(rec);
            }
            Step::Closed(done) => {
                closed = Some(done);
                break;
            }
            Step::Copy(map) => return Ok(LemmaOutcome::InducedCopy(map)),
            Step::Stall(reason) => match config.stall_policy {
                StallPolicy::Error => {
                    return Err(Error::StallDetected {
                        reason,
                        state: Box::new(state),
                    })
                }
                StallPolicy::Flush => {
                    stall = Some(reason);
                    break;
                }
            },
        }
    }
    let report = verify_with(g, &state, &sched, &config.fullness);
    let out = finish(g, closed.as_ref().unwrap_or(&state), &sched, config)?;
    let (pairs, c_sets) = out;
    let part = LemmaPartition {
        pairs,
        c_sets,
        last_state: state,
        report,
        schedule: sched,
        steps,
        stall,
    };
    check_output(g, ground, &part, pattern.n())?;
    Ok(LemmaOutcome::Partition(part))
}

type Finished = (Vec<Pair>, Vec<(VertexSet, Side)>);

/// Pairs with nonempty `b`; everything else as restricted sets. A nonempty
/// residue (after a stall) is extracted completely.
fn finish(
    g: &Graph,
    state: &LemmaState,
    sched: &ParamSchedule,
    config: &LemmaConfig,
) -> Result<Finished> {
    let eps = sched.eps;
    let side_of = |set: &VertexSet| {
        restricted_side(g, set, eps).ok_or_else(|| Error::ValidationFailed("a final set is not eps-restricted".into()))
    };
    let mut pairs = Vec::new();
    let mut cs = state.c_sets.clone();
    for p in &state.pairs {
        if p.b.is_empty() {
            cs.push((p.a.clone(), side_of(&p.a)?));
        } else {
            pairs.push(p.clone());
        }
    }
    for d in &state.anchors {
        match restricted_side(g, d, eps) {
            Some(s) => cs.push((d.clone(), s)),
            None => cs.extend(extract_until(g, d, eps, config.search, 0)?.parts),
        }
    }
    if !state.residue.is_empty() {
        cs.extend(extract_until(g, &state.residue, eps, config.search, 0)?.parts);
    }
    Ok((pairs, cs))
}

fn check_output(g: &Graph, ground: &VertexSet, part: &LemmaPartition, h: usize) -> Result<()> {
    let s = &part.schedule;
    if part.pairs.len() > h * h {
        return Err(Error::ValidationFailed(format!("{} pairs exceed |H|^2", part.pairs.len())));
    }
    let mut seen = VertexSet::empty(g.n());
    let mut add = |x: &VertexSet| -> Result<()> {
        if x.is_empty() {
            return Err(Error::ValidationFailed("an output set is empty".into()));
        }
        if let Some(v) = seen.intersection(x).first() {
            return Err(Error::Overlap(v));
        }
        seen.union_with(x);
        Ok(())
    };
    for p in &part.pairs {
        add(&p.a)?;
        add(&p.b)?;
        if restricted_side(g, &p.a, s.eps).is_none()
            || !within(p.b.len(), s.eta, p.a.len() as f64)
            || !is_sparse_to(g, &p.b, &p.a, s.theta, p.side)?
        {
            return Err(Error::ValidationFailed("an output pair breaks its bounds".into()));
        }
    }
    for (c, side) in &part.c_sets {
        add(c)?;
        if !crate::graphcore::is_restricted_on(g, c, s.eps, *side) {
            return Err(Error::ValidationFailed("an output set is not eps-restricted".into()));
        }
    }
    if &seen != ground {
        return Err(Error::ValidationFailed("the output does not partition the ground set".into()));
    }
    Ok(())
}

fn advance(
    g: &Graph,
    state: &LemmaState,
    pattern: &Graph,
    sched: &ParamSchedule,
    config: &LemmaConfig,
    seed: u64,
) -> Result<Step> {
    let m = state.m();
    let theta = sched.theta;
    let e = &state.residue;
    if m == pattern.n() {
        let sys = BlockSystem::new(pattern.clone(), state.anchors.clone(), theta / 4.0)?;
        return Ok(match embed_transversal(g, &sys) {
            Ok(emb) => Step::Copy(emb.mapping),
            Err(err) => Step::Stall(format!("embedding failed with {} anchors: {err}", m)),
        });
    }

    // v_{m+1} is pattern vertex m.
    let sides: Vec<Side> = (0..m).map(|i| Side::from_adjacency(pattern.has_edge(m, i))).collect();
    let mut e_parts = vec![VertexSet::empty(g.n()); m];
    let mut e0 = VertexSet::empty(g.n());
    for v in e.iter() {
        let hit = (0..m).find(|&i| {
            let d = &state.anchors[i];
            within(g.degree_into_side(v, d, sides[i]), theta / 2.0, d.len() as f64)
        });
        match hit {
            Some(i) => e_parts[i].insert(v),
            None => e0.insert(v),
        };
    }

    if e0.is_empty() {
        let mut done = state.clone();
        for (i, d) in state.anchors.iter().enumerate() {
            done.pairs.push(Pair {
                a: d.clone(),
                b: e_parts[i].clone(),
                side: sides[i],
            });
        }
        done.anchors.clear();
        done.claims.clear();
        done.residue = VertexSet::empty(g.n());
        return Ok(Step::Closed(done));
    }

    let theoretical = config.mode == Mode::Theoretical;
    let eps_next = sched.eps_at(m + 1);
    let gamma0 = if theoretical { sched.big_gamma[m][0] } else { None };
    let c_next = if theoretical {
        sched.c[m + 1].expect("theoretical schedule is complete")
    } else {
        sched.c_target()
    };
    let mut eps_f = match gamma0 {
        Some(g0) => eps_next * g0,
        None => eps_next,
    };
    let rounds = if theoretical { 1 } else { TIGHTEN_ROUNDS + 1 };
    let mut fcfg = config.fullness.clone();
    fcfg.seed = rng::derive(seed, "lemma.fullness", 0);

    let mut chosen = None;
    for r in 0..rounds {
        let (f, _) = match find_restricted_subset(g, &e0, eps_f, config.search) {
            Ok(x) => x,
            Err(err) => return Ok(Step::Stall(format!("no restricted subset of E_0: {err}"))),
        };
        let mut prev = f.clone();
        let mut hs = Vec::with_capacity(m);
        for i in 0..m {
            let gi = if theoretical { sched.big_gamma[m][i + 1].unwrap_or(1.0) } else { 1.0 };
            let req = PairRequest {
                c: if theoretical { gi * c_next / 3.0 } else { c_next / 3.0 },
                eps: theta / 4.0,
                tau: theta / 2.0,
                side: sides[i],
                mode: config.pair_mode,
            };
            let d = &state.anchors[i];
            let fp = match find_full_pair(g, &prev, d, &req, &fcfg) {
                Ok(fp) => fp,
                Err(err) => return Ok(Step::Stall(format!("full pair search against anchor {i} failed: {err}"))),
            };
            let keep = fp.b.len().min(d.len() / 2);
            hs.push(fp.b.smallest(keep));
            prev = fp.a;
        }
        if restricted_side(g, &prev, eps_next).is_some() {
            chosen = Some((f, prev, hs));
            break;
        }
        if r + 1 == rounds {
            break;
        }
        eps_f = if r + 2 == rounds { 0.0 } else { eps_f * prev.len() as f64 / f.len() as f64 };
    }
    let Some((f, f_m, hs)) = chosen else {
        return Ok(Step::Stall(format!("F_m is not {eps_next}-restricted")));
    };

    for (i, h) in hs.iter().enumerate() {
        if h.is_empty() {
            return Ok(Step::Stall(format!("H_{} is empty", i + 1)));
        }
        if restricted_side(g, h, eps_next).is_none() {
            return Ok(Step::Stall(format!("H_{} is not {eps_next}-restricted", i + 1)));
        }
        let rest = state.anchors[i].difference(h);
        if rest.is_empty() || restricted_side(g, &rest, sched.eps).is_none() {
            return Ok(Step::Stall(format!("D_{} minus H_{} is not eps-restricted", i + 1, i + 1)));
        }
    }

    let rest = e0.difference(&f_m);
    let min_anchor = hs.iter().map(|h| h.len()).chain([f_m.len()]).min().unwrap_or(0);
    let mut max_left = largest_within(sched.eta / 2.0, min_anchor as f64, rest.len());
    if let (true, Some(g0)) = (theoretical, gamma0) {
        let d = sched.delta_at(eps_f).unwrap_or(1.0);
        let eta1 = sched.eta * d * g0 / 2.0;
        max_left = max_left.min(largest_within(eta1, rest.len() as f64, rest.len()));
    }
    let j = match extract_until(g, &rest, sched.eps, config.search, max_left) {
        Ok(j) => j,
        Err(err) => return Ok(Step::Stall(format!("extraction failed: {err}"))),
    };

    let mut next = state.clone();
    for (i, d) in state.anchors.iter().enumerate() {
        next.pairs.push(Pair {
            a: d.difference(&hs[i]),
            b: e_parts[i].clone(),
            side: sides[i],
        });
    }
    next.c_sets.extend(j.parts.iter().cloned());
    next.anchors = hs.clone();
    next.anchors.push(f_m.clone());
    next.residue = j.leftover.clone();
    next.claims.clear();
    for jj in 0..=m {
        for ii in 0..jj {
            let side = Side::from_adjacency(pattern.has_edge(ii, jj));
            let status = check_fullness(g, &next.anchors[ii], &next.anchors[jj], c_next, theta / 4.0, side, &fcfg)?;
            let Some(status) = status else {
                return Ok(Step::Stall(format!("anchors {ii} and {jj} are not full on the {} side", side.as_str())));
            };
            next.claims.push(Claim {
                i: ii,
                j: jj,
                c: c_next,
                eps: theta / 4.0,
                side,
                status,
            });
        }
    }
    let rec = StepRecord {
        m,
        residue_before: e.len(),
        e0: e0.len(),
        f: f.len(),
        f_m: f_m.len(),
        eps_f,
        j_parts: j.parts.len(),
        residue_after: next.residue.len(),
    };
    Ok(Step::Next(next, rec))
}

/// Largest `c <= cap` with `c <= x * size`.
fn largest_within(x: f64, size: f64, cap: usize) -> usize {
    (0..=cap).rev().find(|&c| within(c, x, size)).unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graphcore::verify_induced_copy;

    fn run(g: &Graph, h: &Graph, cfg: &LemmaConfig, seed: u64) -> LemmaOutcome {
        main_lemma_partition(g, h, 0.25, 0.2, 0.25, cfg, seed).unwrap()
    }

    fn partition(out: LemmaOutcome) -> LemmaPartition {
        match out {
            LemmaOutcome::Partition(p) => p,
            LemmaOutcome::InducedCopy(m) => panic!("unexpected copy {m:?}"),
        }
    }

    #[test]
    fn edgeless_is_one_set() {
        let g = Graph::empty(30);
        let p = partition(run(&g, &generators::preset("K3").unwrap(), &LemmaConfig::default(), 1));
        assert!(p.pairs.is_empty());
        assert_eq!(p.c_sets.len(), 1);
        assert_eq!(p.c_sets[0].0, g.vertices());
        assert!(p.report.ok);
    }

    #[test]
    fn clique_is_one_dense_set() {
        let g = Graph::complete(12);
        let p = partition(run(&g, &generators::preset("P3").unwrap(), &LemmaConfig::default(), 1));
        assert_eq!(p.c_sets, vec![(g.vertices(), Side::Complement)]);
    }

    #[test]
    fn triangle_free_state_verifies() {
        let k3 = generators::preset("K3").unwrap();
        for seed in 0..5 {
            let g = generators::h_free(60, 0.3, &k3, seed).unwrap();
            let p = partition(run(&g, &k3, &LemmaConfig::default(), seed));
            assert!(p.report.ok, "seed {seed}: {:?}", p.report.failed().collect::<Vec<_>>());
            assert!(p.pairs.len() <= 9);
        }
    }

    #[test]
    fn precheck_finds_copy() {
        let g = Graph::complete(5);
        match run(&g, &generators::preset("K3").unwrap(), &LemmaConfig::default(), 0) {
            LemmaOutcome::InducedCopy(map) => assert!(verify_induced_copy(&g, &generators::preset("K3").unwrap(), &map)),
            LemmaOutcome::Partition(_) => panic!("K5 contains a triangle"),
        }
    }

    #[test]
    fn without_precheck_both_outcomes_verify() {
        let k2 = generators::preset("K2").unwrap();
        let cfg = LemmaConfig {
            precheck_h_free: false,
            ..LemmaConfig::default()
        };
        let mut rng = rng::stream(11, "test");
        for seed in 0..10 {
            let g = generators::gnp(50, 0.5, &mut rng);
            match run(&g, &k2, &cfg, seed) {
                LemmaOutcome::InducedCopy(map) => assert!(verify_induced_copy(&g, &k2, &map)),
                LemmaOutcome::Partition(p) => assert!(p.report.ok || p.stall.is_some()),
            }
        }
    }

    #[test]
    fn deterministic() {
        let k3 = generators::preset("K3").unwrap();
        let g = generators::h_free(60, 0.3, &k3, 4).unwrap();
        let a = partition(run(&g, &k3, &LemmaConfig::default(), 9));
        let b = partition(run(&g, &k3, &LemmaConfig::default(), 9));
        assert_eq!(a.pairs, b.pairs);
        assert_eq!(a.c_sets, b.c_sets);
    }

    #[test]
    fn theoretical_mode_needs_constants() {
        let cfg = LemmaConfig {
            mode: Mode::Theoretical,
            ..LemmaConfig::default()
        };
        let e = main_lemma_partition(&Graph::empty(5), &generators::preset("K3").unwrap(), 0.25, 0.2, 0.25, &cfg, 0)
            .unwrap_err();
        assert!(matches!(e, Error::ConfigMissing(_)));
    }

    #[test]
    fn theoretical_mode_runs_with_constants() {
        let cfg = LemmaConfig {
            mode: Mode::Theoretical,
            delta: Some(DeltaModel::Constant { delta: 0.1 }),
            gamma: Some(0.2),
            ..LemmaConfig::default()
        };
        let k3 = generators::preset("K3").unwrap();
        let g = generators::h_free(40, 0.2, &k3, 2).unwrap();
        let p = partition(main_lemma_partition(&g, &k3, 0.25, 0.2, 0.25, &cfg, 0).unwrap());
        assert!(p.schedule.n_total.is_some());
    }
}
