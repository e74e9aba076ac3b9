//! Partitions into weakly ε-restricted sets (few edges, or few non-edges).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use restrictor::graphcore::is_weakly_restricted;
use restrictor::{generators, oracles};

fn main() -> restrictor::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, p) in [(60, 0.1), (60, 0.5), (120, 0.9)] {
        let g = generators::gnp(n, p, &mut rng);
        let w = oracles::weak_partition(&g, 0.1)?;
        assert!(w.parts.iter().all(|(s, _)| is_weakly_restricted(&g, s, 0.1)));
        let sizes: Vec<usize> = w.parts.iter().map(|(s, _)| s.len()).collect();
        println!("G({n}, {p}), eps 0.1: {} parts {sizes:?}, {} merged", w.parts.len(), w.merged);
    }

    // K_{1,50} has 50 edges against eps 51^2, so one part suffices once eps >= 1/51.
    let star = generators::star(51);
    let w = oracles::weak_partition(&star, 1.0 / 51.0)?;
    println!("K_1,50 at eps 1/51: {} part", w.parts.len());
    Ok(())
}
