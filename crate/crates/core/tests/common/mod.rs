//! Independent checkers used by the integration tests. They work from
//! `has_edge` alone and share no code with the library predicates.

#![allow(dead_code)]

use restrictor::{Graph, Side};

const TOL: f64 = 1e-9;

pub fn le(count: usize, bound: f64) -> bool {
    count as f64 <= bound + TOL * (1.0 + bound.abs())
}

pub fn adjacent_on(g: &Graph, u: usize, v: usize, side: Side) -> bool {
    u != v && g.has_edge(u, v) == (side == Side::Graph)
}

pub fn side_degree(g: &Graph, v: usize, into: &[usize], side: Side) -> usize {
    into.iter().filter(|&&u| adjacent_on(g, v, u, side)).count()
}

/// Linear in `|x|` plus the degrees, so it also handles levels of millions
/// of vertices.
pub fn restricted_on(g: &Graph, x: &[usize], eps: f64, side: Side) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in x {
        inside[v] = true;
    }
    let bound = eps * x.len() as f64;
    x.iter().all(|&v| {
        let d = g.neighbors(v).iter().filter(|&&u| inside[u as usize]).count();
        let sd = match side {
            Side::Graph => d,
            Side::Complement => x.len() - 1 - d,
        };
        le(sd, bound)
    })
}

pub fn restricted(g: &Graph, x: &[usize], eps: f64) -> bool {
    restricted_on(g, x, eps, Side::Graph) || restricted_on(g, x, eps, Side::Complement)
}

pub fn weakly_restricted(g: &Graph, x: &[usize], eps: f64) -> bool {
    let mut e = 0;
    for (i, &u) in x.iter().enumerate() {
        for &v in &x[i + 1..] {
            e += usize::from(g.has_edge(u, v));
        }
    }
    let pairs = x.len() * x.len().saturating_sub(1) / 2;
    let sq = (x.len() * x.len()) as f64;
    le(e, eps * sq) || le(pairs - e, eps * sq)
}

/// Every vertex of `b` has at most `eps |a|` side-neighbours in `a`.
pub fn sparse_to(g: &Graph, b: &[usize], a: &[usize], eps: f64, side: Side) -> bool {
    b.iter().all(|&v| le(side_degree(g, v, a, side), eps * a.len() as f64))
}

pub fn induced_copy(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if map.len() != h.n() || map.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..h.n() {
        for j in i + 1..h.n() {
            if map[i] == map[j] || g.has_edge(map[i], map[j]) != h.has_edge(i, j) {
                return false;
            }
        }
    }
    true
}

/// The parts are disjoint, nonempty, and cover `0..n`.
pub fn is_partition(n: usize, parts: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; n];
    for p in parts {
        if p.is_empty() {
            return false;
        }
        for &v in p {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// Run the command surface in process; returns the exit status and stdout.
pub fn run_cli(args: &[&str]) -> (i32, String) {
    use clap::Parser;
    let cli = match restrictor::cli::Cli::try_parse_from(std::iter::once("restrictor").chain(args.iter().copied())) {
        Ok(c) => c,
        Err(_) => return (restrictor::cli::EXIT_PARSE, String::new()),
    };
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = restrictor::cli::run(cli, &mut out, &mut err).unwrap_or(restrictor::cli::EXIT_ERROR);
    (code, String::from_utf8(out).expect("utf-8 output"))
}
