//! The main lemma's parameter schedule.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::n_gamma;

/// The proof may assume ε, η, θ < 1/3; larger inputs are reduced to this.
pub const PARAM_CAP: f64 = 0.33;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Searches run with achieved sizes; every invariant is checked after
    /// the fact.
    #[default]
    Empirical,
    /// Thresholds come from configured δ and γ.
    Theoretical,
}

/// `ε' ↦ δ_ε'`, the linear fraction an ε'-restricted set is assumed to
/// reach.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DeltaModel {
    Constant { delta: f64 },
    /// `min(1, scale · ε'^exponent)`.
    PowerLaw { scale: f64, exponent: f64 },
}

impl DeltaModel {
    pub fn eval(&self, eps: f64) -> f64 {
        match *self {
            DeltaModel::Constant { delta } => delta,
            DeltaModel::PowerLaw { scale, exponent } => (scale * eps.powf(exponent)).min(1.0),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamSchedule {
    pub h_size: usize,
    pub eps: f64,
    pub eta: f64,
    pub theta: f64,
    pub mode: Mode,
    pub delta: Option<DeltaModel>,
    /// `c_m` for `m = 0..=|H|`.
    pub c: Vec<Option<f64>>,
    /// `ε_m = 3^{m-|H|} ε` for `m = 0..=|H|+1`.
    pub eps_m: Vec<f64>,
    /// `gamma[m][i]` for `m < |H|`, `i = 0..=m`.
    pub gamma: Vec<Vec<Option<f64>>>,
    /// `big_gamma[m][i] = Γ(m, i)`.
    pub big_gamma: Vec<Vec<Option<f64>>>,
    /// `k_m = m(m-1)/2` for `m = 0..=|H|`.
    pub k: Vec<usize>,
    /// `p_i` and `q_i` for `i = 0..|H|`.
    pub p: Vec<Option<f64>>,
    pub q: Vec<Option<f64>>,
    /// `ℓ_m = Σ_{i<m} n_{q_i}` for `m = 0..=|H|`.
    pub ell: Vec<Option<f64>>,
    /// `ℓ_{|H|} + k_{|H|} + |H|`.
    pub n_total: Option<f64>,
}

impl ParamSchedule {
    pub fn delta_at(&self, eps: f64) -> Option<f64> {
        self.delta.map(|d| d.eval(eps))
    }

    /// Least `n` with `(1 - δ_ε)^n <= γ`.
    pub fn n_gamma(&self, gamma: f64) -> Option<f64> {
        self.delta_at(self.eps).map(|d| n_gamma(d, gamma))
    }

    /// `ε_m` clamped to the available range.
    pub fn eps_at(&self, m: usize) -> f64 {
        self.eps_m[m.min(self.eps_m.len() - 1)]
    }

    pub fn c_target(&self) -> f64 {
        (self.theta / 4.0).powi(self.h_size as i32)
    }
}

fn check_unit(name: &str, x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::PreconditionViolated(format!("{name} must lie in (0, 1), got {x}")));
    }
    Ok(x.min(PARAM_CAP))
}

/// Build the schedule for a pattern on `h_size` vertices. `gamma` is used
/// for every `γ_{m,i}` (capped at 1/3).
pub fn compute_schedule(
    h_size: usize,
    eps: f64,
    eta: f64,
    theta: f64,
    mode: Mode,
    delta: Option<DeltaModel>,
    gamma: Option<f64>,
) -> Result<ParamSchedule> {
    let eps = check_unit("eps", eps)?;
    let eta = check_unit("eta", eta)?;
    let theta = check_unit("theta", theta)?;
    if mode == Mode::Theoretical && (delta.is_none() || gamma.is_none()) {
        return Err(Error::ConfigMissing(
            "theoretical mode needs both a delta model and gamma".into(),
        ));
    }
    let gamma = match gamma {
        Some(g) if g.is_nan() || g <= 0.0 => {
            return Err(Error::PreconditionViolated(format!("gamma must be positive, got {g}")))
        }
        Some(g) => Some(g.min(1.0 / 3.0)),
        None => None,
    };
    let hs = h_size;
    let eps_m: Vec<f64> = (0..=hs + 1).map(|m| 3f64.powi(m as i32 - hs as i32) * eps).collect();
    let k: Vec<usize> = (0..=hs).map(|m| m * m.saturating_sub(1) / 2).collect();

    let mut gamma_t = Vec::with_capacity(hs);
    let mut big_gamma = Vec::with_capacity(hs);
    for m in 0..hs {
        gamma_t.push(vec![gamma; m + 1]);
        let mut row = vec![None; m + 1];
        row[m] = Some(1.0);
        for i in (1..m).rev() {
            row[i] = row[i + 1].zip(gamma).map(|(r, g)| r * g);
        }
        // Γ(m, 0) = γ_{m,1} Γ(m, 1) γ_{m,0}; Γ(0, 0) = 1.
        if m > 0 {
            row[0] = row[1].zip(gamma).map(|(r, g)| r * g * g);
        }
        big_gamma.push(row);
    }
    let mut c = vec![None; hs + 1];
    c[hs] = Some((theta / 4.0).powi(hs as i32));
    for m in (0..hs).rev() {
        c[m] = c[m + 1].zip(gamma).map(|(x, g)| x * g);
    }
    let d = |e: f64| delta.map(|dm| dm.eval(e));
    let p: Vec<Option<f64>> = (0..hs).map(|i| big_gamma[i][0].map(|g0| eps_m[i + 1] * g0)).collect();
    let q: Vec<Option<f64>> = (0..hs)
        .map(|i| match (p[i], big_gamma[i][0]) {
            (Some(pi), Some(g0)) => d(pi).map(|dp| eta * dp * g0 / 2.0),
            _ => None,
        })
        .collect();
    let d_eps = d(eps);
    let mut ell = vec![Some(0.0); hs + 1];
    for m in 1..=hs {
        ell[m] = match (ell[m - 1], q[m - 1], d_eps) {
            (Some(prev), Some(qi), Some(de)) => Some(prev + n_gamma(de, qi)),
            _ => None,
        };
    }
    let n_total = ell[hs].map(|l| l + k[hs] as f64 + hs as f64);
    Ok(ParamSchedule {
        h_size,
        eps,
        eta,
        theta,
        mode,
        delta,
        c,
        eps_m,
        gamma: gamma_t,
        big_gamma,
        k,
        p,
        q,
        ell,
        n_total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn c_top_is_theta_over_four_cubed() {
        let s = compute_schedule(3, 0.1, 0.1, 0.25, Mode::Empirical, None, None).unwrap();
        assert!(close(s.c[3].unwrap(), 1.0 / 4096.0));
        assert!(s.c[0].is_none());
    }

    #[test]
    fn eps_m_grows_by_three() {
        let s = compute_schedule(3, 0.01, 0.1, 0.1, Mode::Empirical, None, None).unwrap();
        assert!(close(s.eps_m[3], 0.01));
        assert!(close(s.eps_m[1], 0.01 / 9.0));
        for m in 0..3 {
            assert!(close(s.eps_m[m + 1], 3.0 * s.eps_m[m]));
        }
    }

    #[test]
    fn n_gamma_from_configured_delta() {
        let s = compute_schedule(
            2,
            0.1,
            0.1,
            0.1,
            Mode::Theoretical,
            Some(DeltaModel::Constant { delta: 0.5 }),
            Some(0.125),
        )
        .unwrap();
        assert_eq!(s.n_gamma(0.125), Some(3.0));
    }

    #[test]
    fn theoretical_needs_config() {
        let e = compute_schedule(3, 0.1, 0.1, 0.1, Mode::Theoretical, None, Some(0.1)).unwrap_err();
        assert!(matches!(e, Error::ConfigMissing(_)));
    }

    #[test]
    fn tables_follow_recurrences() {
        let g = 0.2;
        let s = compute_schedule(
            4,
            0.2,
            0.1,
            0.2,
            Mode::Theoretical,
            Some(DeltaModel::PowerLaw { scale: 1.0, exponent: 2.0 }),
            Some(g),
        )
        .unwrap();
        for m in 0..4 {
            assert_eq!(s.k[m + 1], s.k[m] + m);
            assert!(close(s.c[m].unwrap(), g * s.c[m + 1].unwrap()));
            assert_eq!(s.big_gamma[m][m], Some(1.0));
            for i in 1..m {
                assert!(close(s.big_gamma[m][i].unwrap(), g * s.big_gamma[m][i + 1].unwrap()));
            }
            let want0 = if m == 0 { 1.0 } else { g.powi(m as i32 + 1) };
            assert!(close(s.big_gamma[m][0].unwrap(), want0));
            let de = 0.2f64.powi(2);
            let n = n_gamma(de, s.q[m].unwrap());
            assert!(close(s.ell[m + 1].unwrap(), s.ell[m].unwrap() + n));
        }
        let n = s.n_total.unwrap();
        assert!(close(n, s.ell[4].unwrap() + 6.0 + 4.0));
    }

    #[test]
    fn inputs_clamped_below_third() {
        let s = compute_schedule(2, 0.9, 0.5, 0.4, Mode::Empirical, None, None).unwrap();
        assert!(s.eps < 1.0 / 3.0 && s.eta < 1.0 / 3.0 && s.theta < 1.0 / 3.0);
        assert!(compute_schedule(2, 1.0, 0.5, 0.4, Mode::Empirical, None, None).is_err());
    }
}
