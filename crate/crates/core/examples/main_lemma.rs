//! The main lemma on an H-free graph: pairs, restricted sets, and the
//! per-step record of how the residue shrank.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use restrictor::driver::{main_lemma_partition, LemmaConfig, LemmaOutcome};
use restrictor::generators;

fn main() -> restrictor::Result<()> {
    let c5 = generators::preset("C5").unwrap();
    // Split graphs (a clique plus an independent set) never contain C5.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let g = generators::split(150, 250, 0.5, &mut rng);
    match main_lemma_partition(&g, &c5, 0.25, 0.2, 0.25, &LemmaConfig::default(), 1)? {
        LemmaOutcome::Partition(p) => {
            println!("{} vertices -> {} pairs and {} restricted sets", g.n(), p.pairs.len(), p.c_sets.len());
            for s in &p.steps {
                println!(
                    "  m = {}: residue {} -> {}, F {} of E0 {}, {} extracted",
                    s.m, s.residue_before, s.residue_after, s.f, s.e0, s.j_parts
                );
            }
            for c in &p.report.checks {
                println!("  check {:<12} {}", c.clause, if c.ok { "ok" } else { "FAILED" });
            }
            if let Some(reason) = &p.stall {
                println!("  flushed after a stall: {reason}");
            }
        }
        LemmaOutcome::InducedCopy(map) => println!("found C5 at {map:?}"),
    }
    Ok(())
}
