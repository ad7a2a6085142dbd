//! Synthetic helix-bundle structures and families written as PDB files.
//!
//! Helices are built from ideal backbone geometry and stood upright, with
//! consecutive helices running in opposite directions. Helices of one
//! cluster sit on a regular polygon with side `spacing`, so clusters of up
//! to three helices are cliques of the SSE graph; clusters are
//! `cluster_gap` apart along x. Loops are straight interpolations between
//! SSE ends and carry only a Cα atom. Helices are all leucine and strands
//! all threonine, so SSEs of one kind have equal mean hydrophobicity.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rand::Rng;
use ssein_core::geometry::{cross, dot, norm, sub, Vec3};
use ssein_core::protein::{hydrophobicity, BackboneAtoms, ProteinStructure, Residue, SseAnnotation, SseId, SseKind};
use ssein_core::rng;

use crate::error::{write, Error, Result};
use crate::pdb::write_pdb;

const HELIX_ANGLES: (f64, f64) = (-57.0, -47.0);
const STRAND_ANGLES: (f64, f64) = (-119.0, 113.0);

#[derive(Debug, Clone, PartialEq)]
pub struct BundleSpec {
    pub id: String,
    pub cluster_sizes: Vec<usize>,
    pub helix_lengths: Vec<usize>,
    /// Kind of each SSE; all helices by default.
    pub kinds: Vec<SseKind>,
    pub loop_len: usize,
    /// Axis distance between neighbouring helices of a cluster.
    pub spacing: f64,
    pub cluster_gap: f64,
    /// Rotation of each helix about its own axis, in degrees.
    pub phases: Vec<f64>,
    /// Displacement of each helix axis in the xy plane.
    pub shifts: Vec<[f64; 2]>,
}

impl BundleSpec {
    pub fn new(id: impl Into<String>, cluster_sizes: Vec<usize>, helix_lengths: Vec<usize>) -> Self {
        let m = helix_lengths.len();
        Self {
            id: id.into(),
            cluster_sizes,
            kinds: vec![SseKind::Helix; m],
            helix_lengths,
            loop_len: 4,
            spacing: 10.0,
            cluster_gap: 40.0,
            phases: vec![0.0; m],
            shifts: vec![[0.0; 2]; m],
        }
    }

    /// A family-like variant drawn within the bounds of `p`.
    pub fn perturbed<R: Rng + ?Sized>(&self, id: impl Into<String>, p: &Perturbation, rng: &mut R) -> Self {
        let mut out = self.clone();
        out.id = id.into();
        for k in 0..out.helix_lengths.len() {
            let delta = rng::index(rng, 2 * p.length + 1) as isize - p.length as isize;
            out.helix_lengths[k] = (out.helix_lengths[k] as isize + delta).max(6) as usize;
            out.phases[k] += p.twist * (2.0 * rng.random::<f64>() - 1.0);
            for s in &mut out.shifts[k] {
                *s += p.shift * (2.0 * rng.random::<f64>() - 1.0);
            }
        }
        out
    }
}

/// Bounds on how far a family member may stray from the base bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    /// Axis displacement per coordinate, in Å.
    pub shift: f64,
    /// Phase change, in degrees.
    pub twist: f64,
    /// SSE length change, in residues.
    pub length: usize,
}

impl Default for Perturbation {
    fn default() -> Self {
        Self { shift: 0.5, twist: 15.0, length: 1 }
    }
}

fn scale(a: &Vec3, s: f64) -> Vec3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn add(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn unit(a: &Vec3) -> Vec3 {
    scale(a, 1.0 / norm(a))
}

// Places d with |cd| = len, angle bcd = theta and dihedral abcd = tors.
fn place(a: &Vec3, b: &Vec3, c: &Vec3, len: f64, theta: f64, tors: f64) -> Vec3 {
    let (theta, tors) = (theta.to_radians(), tors.to_radians());
    let bc = unit(&sub(c, b));
    let n = unit(&cross(&sub(b, a), &bc));
    let m = cross(&n, &bc);
    let d = [-len * theta.cos(), len * theta.sin() * tors.cos(), len * theta.sin() * tors.sin()];
    add(c, &add(&scale(&bc, d[0]), &add(&scale(&m, d[1]), &scale(&n, d[2]))))
}

/// Ideal backbone with the given repeating angles, as (N, CA, C) triples.
pub fn ideal_backbone(len: usize, phi: f64, psi: f64) -> Vec<[Vec3; 3]> {
    let mut atoms: Vec<Vec3> = vec![[0.0; 3], [1.458, 0.0, 0.0]];
    let a = 111.2f64.to_radians();
    atoms.push([1.458 - 1.525 * a.cos(), 1.525 * a.sin(), 0.0]);
    for _ in 1..len {
        let k = atoms.len();
        atoms.push(place(&atoms[k - 3], &atoms[k - 2], &atoms[k - 1], 1.329, 116.2, psi));
        atoms.push(place(&atoms[k - 2], &atoms[k - 1], &atoms[k], 1.458, 121.7, 180.0));
        atoms.push(place(&atoms[k - 1], &atoms[k], &atoms[k + 1], 1.525, 111.2, phi));
    }
    atoms.chunks(3).map(|c| [c[0], c[1], c[2]]).collect()
}

// Rotation taking unit vector `from` onto unit vector `to`.
fn rotation(from: &Vec3, to: &Vec3) -> [Vec3; 3] {
    let v = cross(from, to);
    let c = dot(from, to);
    if norm(&v) < 1e-12 {
        return if c > 0.0 { [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] } else { [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]] };
    }
    let k = 1.0 / (1.0 + c);
    [
        [1.0 - k * (v[1] * v[1] + v[2] * v[2]), k * v[0] * v[1] - v[2], k * v[0] * v[2] + v[1]],
        [k * v[0] * v[1] + v[2], 1.0 - k * (v[0] * v[0] + v[2] * v[2]), k * v[1] * v[2] - v[0]],
        [k * v[0] * v[2] - v[1], k * v[1] * v[2] + v[0], 1.0 - k * (v[0] * v[0] + v[1] * v[1])],
    ]
}

fn apply(r: &[Vec3; 3], p: &Vec3) -> Vec3 {
    [dot(&r[0], p), dot(&r[1], p), dot(&r[2], p)]
}

fn helix_positions(spec: &BundleSpec) -> Vec<[f64; 2]> {
    let mut out = Vec::new();
    for (c, &size) in spec.cluster_sizes.iter().enumerate() {
        let x0 = c as f64 * spec.cluster_gap;
        if size == 1 {
            out.push([x0, 0.0]);
            continue;
        }
        let radius = spec.spacing / (2.0 * (std::f64::consts::PI / size as f64).sin());
        for k in 0..size {
            let t = 2.0 * std::f64::consts::PI * k as f64 / size as f64;
            out.push([x0 + radius * t.cos(), radius * t.sin()]);
        }
    }
    out
}

/// Builds the structure and its backbone atoms.
pub fn build_bundle(spec: &BundleSpec) -> Result<(ProteinStructure, Vec<BackboneAtoms>)> {
    let m = spec.helix_lengths.len();
    if spec.cluster_sizes.iter().sum::<usize>() != m || [spec.kinds.len(), spec.phases.len(), spec.shifts.len()] != [m; 3] {
        return Err(Error::Config("bundle spec: cluster sizes, lengths, kinds, phases and shifts disagree".into()));
    }
    if spec.helix_lengths.iter().any(|&l| l < 6) {
        return Err(Error::Config("bundle spec: helices need at least 6 residues".into()));
    }
    let positions = helix_positions(spec);
    let mut helices: Vec<Vec<[Vec3; 3]>> = Vec::with_capacity(m);
    for k in 0..m {
        let (phi, psi) = match spec.kinds[k] {
            SseKind::Helix => HELIX_ANGLES,
            SseKind::Strand => STRAND_ANGLES,
        };
        let bb = ideal_backbone(spec.helix_lengths[k], phi, psi);
        let len = bb.len();
        let mean = |r: std::ops::Range<usize>| {
            let n = r.len() as f64;
            r.fold([0.0; 3], |acc, i| add(&acc, &scale(&bb[i][1], 1.0 / n)))
        };
        let axis = unit(&sub(&mean(len - 4..len), &mean(0..4)));
        let up = if k % 2 == 0 { [0.0, 0.0, 1.0] } else { [0.0, 0.0, -1.0] };
        let r = rotation(&axis, &up);
        let centre = mean(0..len);
        let (s, c) = spec.phases[k].to_radians().sin_cos();
        let target = [positions[k][0] + spec.shifts[k][0], positions[k][1] + spec.shifts[k][1], 0.0];
        let moved = bb
            .iter()
            .map(|atoms| {
                atoms.map(|p| {
                    let q = apply(&r, &sub(&p, &centre));
                    add(&[c * q[0] - s * q[1], s * q[0] + c * q[1], q[2]], &target)
                })
            })
            .collect();
        helices.push(moved);
    }

    let mut residues = Vec::new();
    let mut backbone = Vec::new();
    let mut sse_list = Vec::new();
    let mut push = |code: char, atoms: BackboneAtoms, sse: Option<usize>, residues: &mut Vec<Residue>| -> Result<()> {
        residues.push(Residue {
            index: residues.len() + 1,
            seq_num: residues.len() as i32 + 1,
            code,
            ca: atoms.ca.expect("CA present"),
            phi: None,
            psi: None,
            hydrophobicity: hydrophobicity(code)?,
            sse_id: sse.map(SseId),
        });
        backbone.push(atoms);
        Ok(())
    };
    for k in 0..m {
        if k > 0 {
            let (from, to) = (helices[k - 1].last().expect("non-empty")[1], helices[k][0][1]);
            for t in 1..=spec.loop_len {
                let ca = add(&from, &scale(&sub(&to, &from), t as f64 / (spec.loop_len + 1) as f64));
                push('G', BackboneAtoms { n: None, ca: Some(ca), c: None }, None, &mut residues)?;
            }
        }
        let first = residues.len() + 1;
        let code = if spec.kinds[k] == SseKind::Helix { 'L' } else { 'T' };
        for atoms in &helices[k] {
            push(code, BackboneAtoms { n: Some(atoms[0]), ca: Some(atoms[1]), c: Some(atoms[2]) }, Some(k), &mut residues)?;
        }
        sse_list.push(SseAnnotation { sse_id: SseId(k), kind: spec.kinds[k], first_residue: first, last_residue: residues.len() });
    }
    let structure = ProteinStructure { id: spec.id.clone(), residues, sse_list };
    structure.validate()?;
    Ok((structure, backbone))
}

pub fn bundle_pdb(spec: &BundleSpec) -> Result<String> {
    let (structure, backbone) = build_bundle(spec)?;
    Ok(write_pdb(&structure, &backbone))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyFixture {
    pub index: PathBuf,
    /// One PDB file per member; the first member is `base` unperturbed.
    pub members: Vec<PathBuf>,
}

/// Writes `members` bundle PDB files and a family index into `dir`.
/// Member 0 is `base` itself, the others are perturbed copies.
pub fn write_bundle_family(dir: &Path, base: &BundleSpec, members: usize, perturbation: &Perturbation, seed: u64) -> Result<FamilyFixture> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io { path: dir.to_path_buf(), source })?;
    let mut rng = rng::stream(seed, 0);
    let mut index = format!("# family: {}\n", base.id);
    let mut paths = Vec::with_capacity(members);
    for k in 0..members {
        let id = format!("{}_{k}", base.id);
        let spec = if k == 0 { BundleSpec { id: id.clone(), ..base.clone() } } else { base.perturbed(id.clone(), perturbation, &mut rng) };
        let file = format!("{id}.pdb");
        let path = dir.join(&file);
        write(&path, bundle_pdb(&spec)?)?;
        let _ = writeln!(index, "{id}\t{file}\t{}", spec.helix_lengths.len());
        paths.push(path);
    }
    let index_path = dir.join(format!("{}.tsv", base.id));
    write(&index_path, index)?;
    Ok(FamilyFixture { index: index_path, members: paths })
}
