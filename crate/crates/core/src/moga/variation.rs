use rand::Rng;

use crate::error::{Error, Result};
use crate::rng;

use super::Chromosome;

/// Gene `i` comes from `p1` where `mask[i]` is false and from `p2` where it
/// is true.
pub fn uniform_crossover(p1: &Chromosome, p2: &Chromosome, mask: &[bool]) -> Result<Chromosome> {
    if p1.len() != p2.len() {
        return Err(Error::DimensionMismatch { expected: p1.len(), found: p2.len() });
    }
    if mask.len() != p1.len() {
        return Err(Error::DimensionMismatch { expected: p1.len(), found: mask.len() });
    }
    let genes = p1
        .genes()
        .iter()
        .zip(p2.genes())
        .zip(mask)
        .map(|((&a, &b), &take_second)| if take_second { b } else { a })
        .collect();
    Chromosome::new(genes)
}

/// Each gene, with probability `rate`, moves to a uniformly chosen other
/// allele.
pub fn mutate<R: Rng + ?Sized>(c: &Chromosome, rate: f64, rng: &mut R) -> Chromosome {
    let mut out = c.clone();
    let m = out.len();
    if m < 2 {
        return out;
    }
    for g in out.genes_mut() {
        if rng::chance(rng, rate) {
            let pick = rng::index(rng, m - 1);
            *g = if pick >= *g { pick + 1 } else { pick };
        }
    }
    out
}
