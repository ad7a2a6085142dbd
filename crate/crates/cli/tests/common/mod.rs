#![allow(dead_code)]

use std::path::Path;

use ssein::synthetic::{write_bundle_family, BundleSpec, FamilyFixture, Perturbation};
use ssein_core::protein::SseKind;

/// Two packed helices and a distant strand.
pub fn hairpin() -> BundleSpec {
    let mut base = BundleSpec::new("hairpin", vec![2, 1], vec![16, 14, 8]);
    base.kinds[2] = SseKind::Strand;
    base
}

pub fn hairpin_family(dir: &Path) -> FamilyFixture {
    write_bundle_family(dir, &hairpin(), 6, &Perturbation::default(), 1).unwrap()
}
