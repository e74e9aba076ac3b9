//! End-to-end runs across modules, each output checked by the independent
//! oracles in `common`.

mod common;

use restrictor::cli::io::{render_graph, CertificateFile, CertificateMeta};
use restrictor::driver::{partition_into_restricted, LemmaConfig, Mode, Outcome};
use restrictor::generators;
use restrictor::partitions::gen::{path_instance, tree_instance, PathSpec, TreeSpec};
use restrictor::partitions::{cover_path, cover_tight_tree, validate_path_partition, validate_tree_partition};
use restrictor::Side;

use common::*;

fn parts_of(cert: &restrictor::partitions::PartitionCertificate) -> (Vec<Vec<usize>>, Vec<Side>) {
    cert.parts.iter().map(|(p, s)| (p.to_vec(), *s)).unzip()
}

#[test]
fn hfree_graph_to_verified_certificate_file() {
    let k3 = generators::preset("K3").unwrap();
    let g = generators::h_free(150, 0.2, &k3, 21).unwrap();
    let Outcome::Certificate(report) = partition_into_restricted(&g, &k3, 0.2, &LemmaConfig::default(), 5).unwrap() else {
        panic!("a triangle-free graph has no triangle");
    };
    let (parts, sides) = parts_of(&report.certificate);
    assert!(is_partition(g.n(), &parts));
    assert!(parts.iter().zip(&sides).all(|(p, &s)| restricted_on(&g, p, 0.2, s)));

    let dir = tempfile::tempdir().unwrap();
    let (gp, cp) = (dir.path().join("g.txt"), dir.path().join("c.json"));
    std::fs::write(&gp, render_graph(&g)).unwrap();
    let file = CertificateFile::from_certificate(&report.certificate, CertificateMeta::default());
    std::fs::write(&cp, serde_json::to_string(&file).unwrap()).unwrap();
    let (code, out) = run_cli(&["verify", gp.to_str().unwrap(), cp.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn theoretical_mode_with_explicit_delta() {
    let p4 = generators::preset("P4").unwrap();
    let g = generators::h_free(60, 0.4, &p4, 2).unwrap();
    let cfg = LemmaConfig {
        mode: Mode::Theoretical,
        delta: Some(restrictor::driver::DeltaModel::Constant { delta: 0.2 }),
        gamma: Some(0.5),
        ..LemmaConfig::default()
    };
    match partition_into_restricted(&g, &p4, 0.3, &cfg, 1).unwrap() {
        Outcome::Certificate(r) => {
            let (parts, sides) = parts_of(&r.certificate);
            assert!(is_partition(g.n(), &parts));
            assert!(parts.iter().zip(&sides).all(|(p, &s)| restricted_on(&g, p, 0.3, s)));
            assert!(r.n_used.is_finite());
        }
        Outcome::InducedCopy(map) => panic!("P4-free graph returned {map:?}"),
    }
}

#[test]
fn tight_tree_covers_are_restricted_partitions() {
    for (h, seed) in [(1usize, 1u64), (2, 2), (2, 3)] {
        let hk = (h * h) as f64;
        let spec = TreeSpec {
            h,
            ell: 2,
            eps: 1.0 / (4.0 * hk),
            eta: 1.0 / (24.0 * hk),
            branching: vec![h, 1],
            leaf_size: 2,
            inner_deg: 2,
            cross_deg: 1,
            dense_cap: 0,
        };
        let (g, tp) = tree_instance(&spec, seed);
        validate_tree_partition(&g, &tp).unwrap();
        let cover = cover_tight_tree(&g, &tp, 1.0, seed).unwrap();
        let (parts, sides) = parts_of(&cover.certificate);
        assert!(is_partition(g.n(), &parts));
        assert!(parts.iter().zip(&sides).all(|(p, &s)| restricted_on(&g, p, 1.0, s)));
        assert!(parts.len() as f64 <= cover.bound);
        assert_eq!(cover.chains, h);
    }
}

#[test]
fn truncated_path_partitions_cover_at_both_eps() {
    for (eps, depth) in [(1.0 / 3.0, 3), (0.25, 4), (0.25, 1)] {
        let (g, pp) = path_instance(&PathSpec::truncated(eps, depth, 3, 1), 7);
        validate_path_partition(&g, &pp).unwrap();
        let cover = cover_path(&g, &pp, eps, 7).unwrap();
        let (parts, sides) = parts_of(&cover.certificate);
        assert_eq!(parts.len(), depth);
        assert!(is_partition(g.n(), &parts));
        assert!(parts.iter().zip(&sides).all(|(p, &s)| restricted_on(&g, p, eps, s)));
    }
}
