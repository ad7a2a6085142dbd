//! In-memory protein records: residues, secondary-structure annotations,
//! hydrophobicity and backbone dihedrals.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{dihedral, Vec3};

/// Ordinal of an SSE within [`ProteinStructure::sse_list`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SseId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SseKind {
    Helix,
    Strand,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Residue {
    /// 1-based position in the chain after renumbering.
    pub index: usize,
    /// Residue sequence number as written in the source file.
    pub seq_num: i32,
    pub code: char,
    pub ca: Vec3,
    pub phi: Option<f64>,
    pub psi: Option<f64>,
    pub hydrophobicity: f64,
    pub sse_id: Option<SseId>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SseAnnotation {
    pub sse_id: SseId,
    pub kind: SseKind,
    /// 1-based inclusive residue range.
    pub first_residue: usize,
    pub last_residue: usize,
}

impl SseAnnotation {
    pub fn size(&self) -> usize {
        self.last_residue - self.first_residue + 1
    }

    pub fn contains(&self, index: usize) -> bool {
        (self.first_residue..=self.last_residue).contains(&index)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProteinStructure {
    pub id: alloc::string::String,
    pub residues: Vec<Residue>,
    pub sse_list: Vec<SseAnnotation>,
}

impl ProteinStructure {
    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Residue counts of the SSEs, in sequence order.
    pub fn sse_sizes(&self) -> Vec<usize> {
        self.sse_list.iter().map(SseAnnotation::size).collect()
    }

    /// Checks the structural invariants: contiguous 1-based indices, finite
    /// coordinates, disjoint in-range SSE ranges and consistent `sse_id`s.
    pub fn validate(&self) -> Result<()> {
        for (pos, r) in self.residues.iter().enumerate() {
            if r.index != pos + 1 {
                return Err(crate::error::invalid("residues", "indices must be 1..=N in order"));
            }
            if r.ca.iter().any(|c| !c.is_finite()) {
                return Err(crate::error::invalid("residues", "non-finite CA coordinate"));
            }
        }
        let n = self.residues.len();
        for (pos, s) in self.sse_list.iter().enumerate() {
            if s.sse_id != SseId(pos) || s.first_residue == 0 || s.first_residue > s.last_residue || s.last_residue > n {
                return Err(crate::error::invalid("sse_list", "bad SSE range or ordinal"));
            }
            if pos > 0 && self.sse_list[pos - 1].last_residue >= s.first_residue {
                return Err(crate::error::invalid("sse_list", "SSE ranges overlap or are unordered"));
            }
        }
        for r in &self.residues {
            let expected = self.sse_list.iter().find(|s| s.contains(r.index)).map(|s| s.sse_id);
            if r.sse_id != expected {
                return Err(crate::error::invalid("residues", "sse_id disagrees with sse_list"));
            }
        }
        Ok(())
    }
}

/// Kyte–Doolittle hydropathy value for a one-letter amino-acid code.
pub fn hydrophobicity(code: char) -> Result<f64> {
    let v = match code.to_ascii_uppercase() {
        'A' => 1.8,
        'R' => -4.5,
        'N' => -3.5,
        'D' => -3.5,
        'C' => 2.5,
        'Q' => -3.5,
        'E' => -3.5,
        'G' => -0.4,
        'H' => -3.2,
        'I' => 4.5,
        'L' => 3.8,
        'K' => -3.9,
        'M' => 1.9,
        'F' => 2.8,
        'P' => -1.6,
        'S' => -0.8,
        'T' => -0.7,
        'W' => -0.9,
        'Y' => -1.3,
        'V' => 4.2,
        _ => return Err(Error::UnknownResidue(code)),
    };
    Ok(v)
}

/// One-letter code for a standard three-letter residue name.
pub fn one_letter(name: &str) -> Option<char> {
    const TABLE: [(&str, char); 20] = [
        ("ALA", 'A'), ("ARG", 'R'), ("ASN", 'N'), ("ASP", 'D'), ("CYS", 'C'),
        ("GLN", 'Q'), ("GLU", 'E'), ("GLY", 'G'), ("HIS", 'H'), ("ILE", 'I'),
        ("LEU", 'L'), ("LYS", 'K'), ("MET", 'M'), ("PHE", 'F'), ("PRO", 'P'),
        ("SER", 'S'), ("THR", 'T'), ("TRP", 'W'), ("TYR", 'Y'), ("VAL", 'V'),
    ];
    TABLE.iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|&(_, c)| c)
}

/// Inverse of [`one_letter`].
pub fn three_letter(code: char) -> Option<&'static str> {
    const TABLE: [(&str, char); 20] = [
        ("ALA", 'A'), ("ARG", 'R'), ("ASN", 'N'), ("ASP", 'D'), ("CYS", 'C'),
        ("GLN", 'Q'), ("GLU", 'E'), ("GLY", 'G'), ("HIS", 'H'), ("ILE", 'I'),
        ("LEU", 'L'), ("LYS", 'K'), ("MET", 'M'), ("PHE", 'F'), ("PRO", 'P'),
        ("SER", 'S'), ("THR", 'T'), ("TRP", 'W'), ("TYR", 'Y'), ("VAL", 'V'),
    ];
    TABLE.iter().find(|&&(_, c)| c == code).map(|&(n, _)| n)
}

/// Backbone atoms of one residue; any of them may be missing.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct BackboneAtoms {
    pub n: Option<Vec3>,
    pub ca: Option<Vec3>,
    pub c: Option<Vec3>,
}

/// Fills `phi`/`psi` of every residue from the backbone coordinates.
///
/// phi(i) = dihedral(C(i-1), N(i), CA(i), C(i)) and
/// psi(i) = dihedral(N(i), CA(i), C(i), N(i+1)). An angle is left `None`
/// when a neighbour is missing (chain termini) or any atom is absent.
pub fn compute_backbone_dihedrals(protein: &mut ProteinStructure, backbone: &[BackboneAtoms]) -> Result<()> {
    if backbone.len() != protein.residues.len() {
        return Err(Error::DimensionMismatch {
            expected: protein.residues.len(),
            found: backbone.len(),
        });
    }
    let n = backbone.len();
    for i in 0..n {
        let here = &backbone[i];
        let phi = match (i.checked_sub(1).and_then(|p| backbone[p].c), here.n, here.ca, here.c) {
            (Some(c_prev), Some(nn), Some(ca), Some(c)) => dihedral(&c_prev, &nn, &ca, &c),
            _ => None,
        };
        let psi = match (here.n, here.ca, here.c, backbone.get(i + 1).and_then(|b| b.n)) {
            (Some(nn), Some(ca), Some(c), Some(n_next)) => dihedral(&nn, &ca, &c, &n_next),
            _ => None,
        };
        protein.residues[i].phi = phi;
        protein.residues[i].psi = psi;
    }
    Ok(())
}
