//! Covering a generated path-partition by ε-restricted sets.

use restrictor::partitions::gen::{path_instance, PathSpec};
use restrictor::partitions::{cover_path, path_bound, validate_path_partition};

fn main() -> restrictor::Result<()> {
    for (eps, depth) in [(1.0 / 3.0, 4), (0.25, 5)] {
        let spec = PathSpec::truncated(eps, depth, 4, 2);
        let (g, pp) = path_instance(&spec, 1);
        validate_path_partition(&g, &pp).map_err(|v| restrictor::Error::ValidationFailed(v.to_string()))?;
        let cover = cover_path(&g, &pp, eps, 1)?;
        cover.certificate.verify(&g)?;
        println!(
            "eps {eps:.3}: levels {:?}, {:?} branch, {} parts (bound {})",
            spec.sizes,
            cover.branch,
            cover.certificate.len(),
            path_bound(eps)
        );
    }
    Ok(())
}
