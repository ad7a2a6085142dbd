//! Fixed-column PDB reader and a canonical writer.
//!
//! Reads ATOM, HELIX, SHEET and HEADER records of the first chain in the
//! first model. HETATM records are ignored. Residues are renumbered
//! `1..=N` in file order; the original residue number is kept as
//! `seq_num`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use ssein_core::geometry::{distance, Vec3};
use ssein_core::protein::{
    compute_backbone_dihedrals, hydrophobicity, one_letter, three_letter, BackboneAtoms, ProteinStructure, Residue,
    SseAnnotation, SseId, SseKind,
};

use crate::error::{Error, Result};

/// Peptide C–N distances above this mark a chain break.
const MAX_PEPTIDE_BOND: f64 = 2.0;

/// Input that was skipped while reading a structure.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestWarnings {
    pub missing_ca: usize,
    pub nonstandard_residues: usize,
    pub insertion_codes: usize,
    pub skipped_sses: usize,
}

impl IngestWarnings {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedStructure {
    pub structure: ProteinStructure,
    pub backbone: Vec<BackboneAtoms>,
    pub warnings: IngestWarnings,
}

struct RawResidue {
    seq: i32,
    icode: char,
    name: String,
    atoms: BackboneAtoms,
}

/// 1-based inclusive column range; short lines yield what is there.
fn cols(line: &str, first: usize, last: usize) -> &str {
    let end = last.min(line.len());
    line.get(first - 1..end).unwrap_or("")
}

fn col(line: &str, at: usize) -> char {
    line.as_bytes().get(at - 1).map_or(' ', |&b| b as char)
}

fn int(line: &str, first: usize, last: usize, ln: usize, what: &str) -> Result<i32> {
    let field = cols(line, first, last).trim();
    field.parse().map_err(|_| Error::parse(ln, format!("bad {what} {field:?}")))
}

fn coord(line: &str, first: usize, ln: usize) -> Result<f64> {
    let field = cols(line, first, first + 7).trim();
    match field.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::parse(ln, format!("bad coordinate {field:?}"))),
    }
}

/// Parses PDB text. `default_id` names the protein when there is no
/// HEADER record.
pub fn parse_pdb(text: &str, default_id: &str) -> Result<ParsedStructure> {
    let mut id: Option<String> = None;
    let mut chain: Option<char> = None;
    let mut raw: Vec<RawResidue> = Vec::new();
    let mut ranges: Vec<(char, i32, i32, SseKind)> = Vec::new();
    let mut model_done = false;

    for (k, line) in text.lines().enumerate() {
        let ln = k + 1;
        match cols(line, 1, 6).trim_end() {
            "HEADER" if id.is_none() => {
                let code = line.get(62..).unwrap_or("").trim();
                if !code.is_empty() {
                    id = Some(code.to_string());
                }
            }
            "ENDMDL" => model_done = true,
            "ATOM" if !model_done => {
                if line.len() < 54 {
                    return Err(Error::parse(ln, "ATOM record shorter than 54 columns"));
                }
                let ch = col(line, 22);
                if *chain.get_or_insert(ch) != ch {
                    continue;
                }
                let seq = int(line, 23, 26, ln, "residue number")?;
                let xyz = [coord(line, 31, ln)?, coord(line, 39, ln)?, coord(line, 47, ln)?];
                let icode = col(line, 27);
                if raw.last().is_none_or(|r| r.seq != seq || r.icode != icode) {
                    let name = cols(line, 18, 20).trim().to_string();
                    raw.push(RawResidue { seq, icode, name, atoms: BackboneAtoms::default() });
                }
                let atoms = &mut raw.last_mut().expect("pushed above").atoms;
                let slot = match cols(line, 13, 16).trim() {
                    "N" => &mut atoms.n,
                    "CA" => &mut atoms.ca,
                    "C" => &mut atoms.c,
                    _ => continue,
                };
                // alternate locations: the first one wins
                slot.get_or_insert(xyz);
            }
            "HELIX" => {
                let (a, b) = (int(line, 22, 25, ln, "helix start")?, int(line, 34, 37, ln, "helix end")?);
                ranges.push((col(line, 20), a, b, SseKind::Helix));
            }
            "SHEET" => {
                let (a, b) = (int(line, 23, 26, ln, "strand start")?, int(line, 34, 37, ln, "strand end")?);
                ranges.push((col(line, 22), a, b, SseKind::Strand));
            }
            _ => {}
        }
    }

    let mut warnings = IngestWarnings::default();
    let mut residues = Vec::new();
    let mut backbone = Vec::new();
    for r in raw {
        if r.icode != ' ' {
            warnings.insertion_codes += 1;
            continue;
        }
        let Some(ca) = r.atoms.ca else {
            warnings.missing_ca += 1;
            continue;
        };
        let Some(code) = one_letter(&r.name) else {
            warnings.nonstandard_residues += 1;
            continue;
        };
        residues.push(Residue {
            index: residues.len() + 1,
            seq_num: r.seq,
            code,
            ca,
            phi: None,
            psi: None,
            hydrophobicity: hydrophobicity(code)?,
            sse_id: None,
        });
        backbone.push(r.atoms);
    }
    if residues.is_empty() {
        return Err(Error::EmptyStructure);
    }

    let mut spans: Vec<(usize, usize, SseKind)> = Vec::new();
    for &(ch, a, b, kind) in &ranges {
        if Some(ch) != chain {
            continue;
        }
        let inside = |r: &Residue| (a..=b).contains(&r.seq_num);
        match (residues.iter().position(inside), residues.iter().rposition(inside)) {
            (Some(first), Some(last)) => spans.push((first + 1, last + 1, kind)),
            _ => warnings.skipped_sses += 1,
        }
    }
    spans.sort_unstable();
    // sheets may list the same strand twice
    spans.dedup_by_key(|s| (s.0, s.1));
    let mut sse_list: Vec<SseAnnotation> = Vec::new();
    for (first, last, kind) in spans {
        if sse_list.last().is_some_and(|prev| prev.last_residue >= first) {
            warnings.skipped_sses += 1;
            continue;
        }
        let sse_id = SseId(sse_list.len());
        for r in &mut residues[first - 1..last] {
            r.sse_id = Some(sse_id);
        }
        sse_list.push(SseAnnotation { sse_id, kind, first_residue: first, last_residue: last });
    }

    let mut structure = ProteinStructure { id: id.unwrap_or_else(|| default_id.to_string()), residues, sse_list };
    compute_backbone_dihedrals(&mut structure, &backbone)?;
    for i in 1..backbone.len() {
        let bonded = matches!((backbone[i - 1].c, backbone[i].n), (Some(c), Some(n)) if distance(&c, &n) <= MAX_PEPTIDE_BOND);
        if !bonded {
            structure.residues[i].phi = None;
            structure.residues[i - 1].psi = None;
        }
    }
    structure.validate()?;
    Ok(ParsedStructure { structure, backbone, warnings })
}

fn atom_line(out: &mut String, serial: usize, name: &str, res: &str, seq: i32, xyz: &Vec3) {
    let element = name.trim().chars().next().unwrap_or(' ');
    let _ = writeln!(
        out,
        "ATOM  {serial:>5} {name:<4} {res:>3} A{seq:>4}    {:>8.3}{:>8.3}{:>8.3}  1.00  0.00          {element:>2}",
        xyz[0], xyz[1], xyz[2]
    );
}

/// Canonical PDB text for a structure: HEADER, HELIX/SHEET and backbone
/// ATOM records on chain A. Coordinates are written with three decimals.
pub fn write_pdb(structure: &ProteinStructure, backbone: &[BackboneAtoms]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "HEADER{:56}{}", "", structure.id);
    let res = |i: usize| &structure.residues[i - 1];
    let name = |i: usize| three_letter(res(i).code).unwrap_or("UNK");
    let (mut helices, mut strands) = (0, 0);
    for s in &structure.sse_list {
        let (a, b) = (s.first_residue, s.last_residue);
        let (sa, sb) = (res(a).seq_num, res(b).seq_num);
        match s.kind {
            SseKind::Helix => {
                helices += 1;
                let _ = writeln!(out, "HELIX  {helices:>3} {helices:>3} {} A {sa:>4}  {} A {sb:>4}  1", name(a), name(b));
            }
            SseKind::Strand => {
                strands += 1;
                let _ = writeln!(out, "SHEET  {strands:>3} {strands:>3} 1 {} A{sa:>4}  {} A{sb:>4}  0", name(a), name(b));
            }
        }
    }
    let mut serial = 0;
    for (i, r) in structure.residues.iter().enumerate() {
        let rn = three_letter(r.code).unwrap_or("UNK");
        let atoms = backbone.get(i).copied().unwrap_or_default();
        for (label, xyz) in [(" N", atoms.n), (" CA", Some(r.ca)), (" C", atoms.c)] {
            if let Some(xyz) = xyz {
                serial += 1;
                atom_line(&mut out, serial, label, rn, r.seq_num, &xyz);
            }
        }
    }
    out.push_str("TER\nEND\n");
    out
}
