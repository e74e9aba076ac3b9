//! Certificates as files: write, read back, verify, and catch tampering.

use restrictor::cli::io::{parse_graph, render_graph, CertificateFile, CertificateMeta};
use restrictor::driver::{partition_into_restricted, LemmaConfig, Outcome};
use restrictor::generators;

fn main() -> anyhow::Result<()> {
    let p4 = generators::preset("P4").unwrap();
    let g = generators::h_free(200, 0.01, &p4, 6)?;
    let Outcome::Certificate(r) = partition_into_restricted(&g, &p4, 0.25, &LemmaConfig::default(), 0)? else {
        anyhow::bail!("a P4-free graph cannot contain P4");
    };
    let graph_text = render_graph(&g);
    let json = serde_json::to_string_pretty(&CertificateFile::from_certificate(&r.certificate, CertificateMeta::default()))?;
    println!("graph file: {} lines, certificate: {} bytes", graph_text.lines().count(), json.len());

    let g2 = parse_graph(&graph_text)?;
    let mut file: CertificateFile = serde_json::from_str(&json)?;
    let cert = file.to_certificate(g2.n()).map_err(|v| anyhow::anyhow!("{v:?}"))?;
    println!("read back: {} violations", cert.violations(&g2).len());

    // Move one vertex into a second part.
    if file.parts.len() >= 2 {
        let v = file.parts[1].vertices[0];
        file.parts[0].vertices.push(v);
        let tampered = file.to_certificate(g2.n()).map_err(|v| anyhow::anyhow!("{v:?}"))?;
        for v in tampered.violations(&g2) {
            println!("tampered: {v}");
        }
    }
    Ok(())
}
