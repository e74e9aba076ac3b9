//! Covering a tight tree-partition, chain by chain.

use restrictor::partitions::gen::{tree_instance, TreeSpec};
use restrictor::partitions::{cover_tight_tree, validate_tree_partition};

fn main() -> restrictor::Result<()> {
    // eps = 1 gives K = 2; with h = 2 the tree has two root-to-leaf chains.
    let (h, eps) = (2, 1.0);
    let hk = 4.0;
    let spec = TreeSpec {
        h,
        ell: 2,
        eps: eps / (4.0 * hk),
        eta: 1.0 / (24.0 * hk),
        branching: vec![2, 1],
        leaf_size: 3,
        inner_deg: 2,
        cross_deg: 1,
        dense_cap: 0,
    };
    let (g, tp) = tree_instance(&spec, 4);
    validate_tree_partition(&g, &tp).map_err(|v| restrictor::Error::ValidationFailed(v.to_string()))?;
    let sizes: Vec<usize> = tp.bags.iter().map(|b| b.len()).collect();
    println!("{} vertices in bags {sizes:?}", g.n());
    let cover = cover_tight_tree(&g, &tp, eps, 4)?;
    cover.certificate.verify(&g)?;
    println!(
        "{} chains, branches {:?}, {} parts (bound {})",
        cover.chains,
        cover.branches,
        cover.certificate.len(),
        cover.bound
    );
    Ok(())
}
