//! Embedding a pattern transversally into blocks that are pairwise full or
//! empty according to its adjacency.

use restrictor::embedding::{embed_transversal, BlockSystem};
use restrictor::{generators, Graph, VertexSet};

fn main() -> restrictor::Result<()> {
    // P3 on blocks {0..4}, {4..8}, {8..12}: consecutive blocks complete,
    // the end blocks empty to each other.
    let edges: Vec<(usize, usize)> = (0..4)
        .flat_map(|x| (4..8).map(move |y| (x, y)))
        .chain((4..8).flat_map(|x| (8..12).map(move |y| (x, y))))
        .collect();
    let g = Graph::from_edges(12, &edges)?;
    let blocks = (0..3).map(|i| VertexSet::from_iter(12, 4 * i..4 * i + 4)).collect();
    let sys = BlockSystem::new(generators::path(3), blocks, 0.5)?;
    let emb = embed_transversal(&g, &sys)?;
    println!("mapping (pattern vertex -> host vertex): {:?}", emb.mapping);
    for step in &emb.trace {
        println!("  placed {} at {}, remaining block sizes {:?}", step.vertex, step.chosen, step.block_sizes);
    }
    Ok(())
}
