//! The main lemma's partition of type (k, ℓ, m) and its checker.

use serde::Serialize;

use super::schedule::ParamSchedule;
use crate::graphcore::{
    check_fullness, is_restricted_on, is_sparse_to, restricted_side, within, FullnessConfig,
    FullnessStatus, Graph, Side, VertexSet,
};

/// `b` is θ-sparse to `a` on `side`, and `|b| <= η|a|`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pair {
    pub a: VertexSet,
    pub b: VertexSet,
    pub side: Side,
}

/// `(D_i, D_j)` is claimed `(c, eps)`-full on `side` (empty means full on
/// the complement side). Indices are 0-based anchor positions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub i: usize,
    pub j: usize,
    pub c: f64,
    pub eps: f64,
    pub side: Side,
    pub status: FullnessStatus,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaState {
    /// Vertices the partition covers.
    pub ground: VertexSet,
    /// Pattern edges; anchor `i` stands for pattern vertex `i`.
    pub pattern_n: usize,
    pub pattern_edges: Vec<(usize, usize)>,
    pub pairs: Vec<Pair>,
    pub c_sets: Vec<(VertexSet, Side)>,
    pub anchors: Vec<VertexSet>,
    pub claims: Vec<Claim>,
    pub residue: VertexSet,
}

impl LemmaState {
    /// Type (0, 0, 0): everything in the residue.
    pub fn initial(ground: VertexSet, pattern: &Graph) -> LemmaState {
        LemmaState {
            residue: ground.clone(),
            ground,
            pattern_n: pattern.n(),
            pattern_edges: pattern.edges().collect(),
            pairs: Vec::new(),
            c_sets: Vec::new(),
            anchors: Vec::new(),
            claims: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn ell(&self) -> usize {
        self.c_sets.len()
    }

    pub fn m(&self) -> usize {
        self.anchors.len()
    }

    pub fn pattern_adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = (i.min(j), i.max(j));
        self.pattern_edges.contains(&(a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub clause: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub ok: bool,
    pub checks: Vec<Check>,
    /// One entry per anchor pair, in claim order.
    pub claim_statuses: Vec<Option<FullnessStatus>>,
}

impl LemmaReport {
    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    pub fn flagged(&self, clause: &str) -> bool {
        self.checks.iter().any(|c| c.clause == clause && !c.ok)
    }
}

/// Check every clause of a type-(k, ℓ, m) partition. Fullness claims are
/// rechecked: exactly when small enough, by sampled refutation otherwise.
pub fn verify_lemma_state(g: &Graph, state: &LemmaState, schedule: &ParamSchedule) -> LemmaReport {
    verify_with(g, state, schedule, &FullnessConfig::default())
}

pub fn verify_with(g: &Graph, state: &LemmaState, schedule: &ParamSchedule, cfg: &FullnessConfig) -> LemmaReport {
    let mut checks = Vec::new();
    let mut push = |clause: &'static str, ok: bool, detail: String| checks.push(Check { clause, ok, detail });
    let m = state.m();
    let eps = schedule.eps;

    let k_cap = schedule.k.get(m).copied().unwrap_or(usize::MAX);
    push("counts", state.k() <= k_cap, format!("k = {} against k_m = {k_cap}", state.k()));
    if let Some(Some(l)) = schedule.ell.get(m) {
        push("counts", state.ell() as f64 <= *l, format!("l = {} against l_m = {l}", state.ell()));
    }
    if m > state.pattern_n {
        push("counts", false, format!("m = {m} exceeds |H| = {}", state.pattern_n));
    }

    let empty_a = state.pairs.iter().position(|p| p.a.is_empty());
    let empty_c = state.c_sets.iter().position(|(c, _)| c.is_empty());
    let empty_d = state.anchors.iter().position(|d| d.is_empty());
    push(
        "nonempty",
        empty_a.is_none() && empty_c.is_none() && empty_d.is_none(),
        format!("first empty A {empty_a:?}, C {empty_c:?}, D {empty_d:?}"),
    );

    let bad_a = state.pairs.iter().position(|p| restricted_side(g, &p.a, eps).is_none());
    let bad_c = state
        .c_sets
        .iter()
        .position(|(c, side)| !is_restricted_on(g, c, eps, *side));
    push(
        "restricted",
        bad_a.is_none() && bad_c.is_none(),
        format!("first unrestricted A {bad_a:?}, C {bad_c:?}"),
    );

    let bad_pair = state.pairs.iter().position(|p| {
        !within(p.b.len(), schedule.eta, p.a.len() as f64)
            || !is_sparse_to(g, &p.b, &p.a, schedule.theta, p.side).unwrap_or(false)
    });
    push("pairs", bad_pair.is_none(), format!("first bad pair {bad_pair:?}"));

    let eps_m = schedule.eps_at(m);
    let bad_d = state.anchors.iter().position(|d| restricted_side(g, d, eps_m).is_none());
    push("anchors", bad_d.is_none(), format!("first anchor not {eps_m}-restricted: {bad_d:?}"));

    let mut claim_statuses = Vec::new();
    let mut claims_ok = state.claims.len() == m * m.saturating_sub(1) / 2;
    for cl in &state.claims {
        let expected = Side::from_adjacency(state.pattern_adjacent(cl.i, cl.j));
        let (Some(a), Some(b)) = (state.anchors.get(cl.i), state.anchors.get(cl.j)) else {
            claims_ok = false;
            claim_statuses.push(None);
            continue;
        };
        let status = check_fullness(g, a, b, cl.c, cl.eps, cl.side, cfg).ok().flatten();
        claims_ok &= cl.side == expected && status.is_some();
        claim_statuses.push(status);
    }
    push("fullness", claims_ok, format!("{} claims for {m} anchors", state.claims.len()));

    if m > 0 {
        let min_d = state.anchors.iter().map(|d| d.len()).min().unwrap_or(0);
        push(
            "residue",
            within(state.residue.len(), schedule.eta / 2.0, min_d as f64),
            format!("|E| = {} against eta/2 * {min_d}", state.residue.len()),
        );
    }

    let mut seen = VertexSet::empty(state.ground.universe());
    let mut overlap = None;
    let all = state
        .pairs
        .iter()
        .flat_map(|p| [&p.a, &p.b])
        .chain(state.c_sets.iter().map(|(c, _)| c))
        .chain(state.anchors.iter())
        .chain(std::iter::once(&state.residue));
    for s in all {
        if overlap.is_none() {
            overlap = seen.intersection(s).first();
        }
        seen.union_with(s);
    }
    push(
        "conservation",
        overlap.is_none() && seen == state.ground,
        format!("overlap at {overlap:?}, covers ground: {}", seen == state.ground),
    );

    LemmaReport {
        ok: checks.iter().all(|c| c.ok),
        checks,
        claim_statuses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::schedule::{compute_schedule, Mode};
    use crate::generators;

    fn schedule() -> ParamSchedule {
        compute_schedule(3, 0.25, 0.2, 0.25, Mode::Empirical, None, None).unwrap()
    }

    #[test]
    fn initial_state_is_fine() {
        let g = generators::path(10);
        let s = LemmaState::initial(g.vertices(), &generators::preset("K3").unwrap());
        let r = verify_lemma_state(&g, &s, &schedule());
        assert!(r.ok, "{:?}", r.checks);
    }

    #[test]
    fn oversized_residue_flagged() {
        let g = Graph::empty(10);
        let mut s = LemmaState::initial(g.vertices(), &generators::preset("K3").unwrap());
        s.anchors.push(VertexSet::from_iter(10, 0..4));
        s.residue = VertexSet::from_iter(10, 4..10);
        let r = verify_lemma_state(&g, &s, &schedule());
        assert!(r.flagged("residue"));
        assert!(!r.flagged("conservation"));
    }

    #[test]
    fn missing_vertex_breaks_conservation() {
        let g = Graph::empty(6);
        let mut s = LemmaState::initial(g.vertices(), &generators::preset("K3").unwrap());
        s.residue.remove(5);
        assert!(verify_lemma_state(&g, &s, &schedule()).flagged("conservation"));
    }
}
