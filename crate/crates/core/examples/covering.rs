//! Covering sets: an exact-size P inside A that is 2ε-sparse to B while B
//! is 12ε-sparse to P.

use restrictor::covering::{find_cover_set, p_range, CoverRequest};
use restrictor::graphcore::is_sparse_to;
use restrictor::{GraphBuilder, Side, VertexSet};

fn main() -> restrictor::Result<()> {
    // |A| = 420, |B| = 4, each b adjacent to its own 5% slice of A.
    let (na, nb) = (420, 4);
    let n = na + nb;
    let mut gb = GraphBuilder::new(n);
    for j in 0..nb {
        for i in j * 21..(j + 1) * 21 {
            gb.add_edge(na + j, i);
        }
    }
    let g = gb.build();
    let eps = 1.0 / 16.0;
    let (lo, hi) = p_range(na, nb, eps);
    println!("admissible p: {lo}..={hi}");
    let req = CoverRequest {
        a: VertexSet::from_iter(n, 0..na),
        b: VertexSet::from_iter(n, na..n),
        eps,
        p: lo,
        side: Side::Graph,
        seed: 9,
        retry_cap: 100,
    };
    let r = find_cover_set(&g, &req)?;
    println!("|P| = {} after {} samples from a pool of {}", r.set.len(), r.attempts, r.q);
    println!(
        "P 2eps-sparse to B: {}, B 12eps-sparse to P: {}",
        is_sparse_to(&g, &r.set, &req.b, 2.0 * eps, Side::Graph)?,
        is_sparse_to(&g, &req.b, &r.set, 12.0 * eps, Side::Graph)?
    );
    Ok(())
}
