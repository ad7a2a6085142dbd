//! Writes a synthetic helix-bundle family into a directory.
//!
//! cargo run -p ssein --example make_family -- out/bundle

use ssein::synthetic::{write_bundle_family, BundleSpec, Perturbation};
use ssein_core::protein::SseKind;

fn main() -> ssein::Result<()> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "bundle".into());
    let mut base = BundleSpec::new("hairpin", vec![2, 1], vec![16, 14, 8]);
    base.kinds[2] = SseKind::Strand;
    let family = write_bundle_family(dir.as_ref(), &base, 6, &Perturbation::default(), 1)?;
    println!("{}", family.index.display());
    for m in &family.members {
        println!("{}", m.display());
    }
    Ok(())
}
