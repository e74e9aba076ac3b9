//! Largest ε-restricted subsets: greedy search against the exact one.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use restrictor::oracles::{find_restricted_subset, SearchMode};
use restrictor::{generators, graphcore};

fn main() -> restrictor::Result<()> {
    // A star on 10 vertices: the leaves form the largest restricted set.
    let star = generators::star(10);
    let (set, side) = find_restricted_subset(&star, &star.vertices(), 0.3, SearchMode::Exact)?;
    println!("star, eps 0.3: {} vertices on the {} side: {:?}", set.len(), side.as_str(), set.to_vec());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [12, 18, 22] {
        let g = generators::gnp(n, 0.4, &mut rng);
        let (exact, _) = find_restricted_subset(&g, &g.vertices(), 0.2, SearchMode::Exact)?;
        let (greedy, side) = find_restricted_subset(&g, &g.vertices(), 0.2, SearchMode::Greedy)?;
        assert!(graphcore::is_restricted_on(&g, &greedy, 0.2, side));
        println!("G({n}, 0.4): exact {} greedy {}", exact.len(), greedy.len());
    }

    // Greedy mode has no size cap.
    let k3 = generators::preset("K3").unwrap();
    let g = generators::h_free(400, 0.1, &k3, 3)?;
    let (set, side) = find_restricted_subset(&g, &g.vertices(), 0.1, SearchMode::Greedy)?;
    println!("triangle-free graph on {}: greedy found {} ({})", g.n(), set.len(), side.as_str());
    Ok(())
}
