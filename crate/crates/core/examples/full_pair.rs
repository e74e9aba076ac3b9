//! (c, ε)-full pairs: exact checking, and searching for a full sub-pair.

use restrictor::graphcore::{check_fullness, is_full_pair_exact, FullnessConfig};
use restrictor::oracles::{find_full_pair, PairMode, PairRequest};
use restrictor::{GraphBuilder, Side, VertexSet};

fn main() -> restrictor::Result<()> {
    // K_{6,6} minus a perfect matching.
    let mut gb = GraphBuilder::new(12);
    for x in 0..6 {
        for y in 6..12 {
            if y != x + 6 {
                gb.add_edge(x, y);
            }
        }
    }
    let g = gb.build();
    let (a, b) = (VertexSet::from_iter(12, 0..6), VertexSet::from_iter(12, 6..12));
    let cfg = FullnessConfig::default();
    for (c, eps) in [(0.5, 0.6), (0.5, 0.7), (1.0 / 6.0, 0.5)] {
        let full = is_full_pair_exact(&g, &a, &b, c, eps, Side::Graph, &cfg)?;
        println!("(c = {c:.3}, eps = {eps}) full: {full}");
    }
    println!("status with sampled fallback: {:?}", check_fullness(&g, &a, &b, 0.5, 0.6, Side::Graph, &cfg)?);

    let req = PairRequest {
        c: 0.5,
        eps: 0.3,
        tau: 0.6,
        side: Side::Graph,
        mode: PairMode::Auto,
    };
    let pair = find_full_pair(&g, &a, &b, &req, &cfg)?;
    println!(
        "found a full sub-pair of sizes {} x {} (fraction {:.2}, {:?})",
        pair.a.len(),
        pair.b.len(),
        pair.achieved_gamma,
        pair.status
    );
    Ok(())
}
