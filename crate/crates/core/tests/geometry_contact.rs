use proptest::prelude::*;
use ssein_core::contact::{build_contact_map, induce_sse_in, EdgeKind};
use ssein_core::geometry::{dihedral, Vec3};
use ssein_core::protein::{compute_backbone_dihedrals, BackboneAtoms, ProteinStructure, Residue, SseAnnotation, SseId, SseKind};

// Places d so that |cd| = len, angle bcd = theta and dihedral abcd = tors.
fn nerf(a: Vec3, b: Vec3, c: Vec3, len: f64, theta: f64, tors: f64) -> Vec3 {
    let sub = |p: Vec3, q: Vec3| [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
    let unit = |p: Vec3| {
        let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        [p[0] / n, p[1] / n, p[2] / n]
    };
    let cross = |p: Vec3, q: Vec3| [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
    let (theta, tors) = (theta.to_radians(), tors.to_radians());
    let bc = unit(sub(c, b));
    let n = unit(cross(sub(b, a), bc));
    let m = cross(n, bc);
    let d2 = [-len * theta.cos(), len * theta.sin() * tors.cos(), len * theta.sin() * tors.sin()];
    [
        c[0] + d2[0] * bc[0] + d2[1] * m[0] + d2[2] * n[0],
        c[1] + d2[0] * bc[1] + d2[1] * m[1] + d2[2] * n[1],
        c[2] + d2[0] * bc[2] + d2[1] * m[2] + d2[2] * n[2],
    ]
}

// Ideal peptide backbone with fixed bond lengths and angles.
fn backbone(phi: f64, psi: f64, len: usize) -> Vec<BackboneAtoms> {
    let mut atoms: Vec<Vec3> = vec![[0.0, 0.0, 0.0], [1.458, 0.0, 0.0]];
    let third = {
        let a = 111.2f64.to_radians();
        [1.458 - 1.525 * a.cos(), 1.525 * a.sin(), 0.0]
    };
    atoms.push(third);
    for _ in 1..len {
        let k = atoms.len();
        let n = nerf(atoms[k - 3], atoms[k - 2], atoms[k - 1], 1.329, 116.2, psi);
        atoms.push(n);
        let ca = nerf(atoms[k - 2], atoms[k - 1], atoms[k], 1.458, 121.7, 180.0);
        atoms.push(ca);
        let c = nerf(atoms[k - 1], atoms[k], atoms[k + 1], 1.525, 111.2, phi);
        atoms.push(c);
    }
    atoms.chunks(3).map(|c| BackboneAtoms { n: Some(c[0]), ca: Some(c[1]), c: Some(c[2]) }).collect()
}

fn residue(i: usize, ca: Vec3, sse: Option<usize>) -> Residue {
    Residue { index: i + 1, seq_num: i as i32 + 1, code: 'A', ca, phi: None, psi: None, hydrophobicity: 1.8, sse_id: sse.map(SseId) }
}

fn protein_from(bb: &[BackboneAtoms]) -> ProteinStructure {
    ProteinStructure {
        id: "t".into(),
        residues: bb.iter().enumerate().map(|(i, b)| residue(i, b.ca.unwrap(), None)).collect(),
        sse_list: Vec::new(),
    }
}

// Independent dihedral: angle between the two plane normals, signed by the
// orientation of the middle bond.
fn dihedral_oracle(p: [Vec3; 4]) -> f64 {
    let v = |a: Vec3, b: Vec3| [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let cross = |p: Vec3, q: Vec3| [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]];
    let dot = |p: Vec3, q: Vec3| p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
    let (b1, b2, b3) = (v(p[0], p[1]), v(p[1], p[2]), v(p[2], p[3]));
    let (n1, n2) = (cross(b1, b2), cross(b2, b3));
    let c = (dot(n1, n2) / (dot(n1, n1) * dot(n2, n2)).sqrt()).clamp(-1.0, 1.0);
    let angle = c.acos().to_degrees();
    if dot(cross(n1, n2), b2) < 0.0 {
        -angle
    } else {
        angle
    }
}

#[test]
fn ideal_alpha_helix_angles() {
    let bb = backbone(-57.0, -47.0, 12);
    let mut p = protein_from(&bb);
    compute_backbone_dihedrals(&mut p, &bb).unwrap();
    assert!(p.residues[0].phi.is_none());
    assert!(p.residues[11].psi.is_none());
    for r in &p.residues[1..11] {
        assert!((r.phi.unwrap() + 57.0).abs() < 2.0, "phi {:?}", r.phi);
        assert!((r.psi.unwrap() + 47.0).abs() < 2.0, "psi {:?}", r.psi);
    }
    // same angles through the independent oracle
    for i in 1..11 {
        let phi = dihedral_oracle([bb[i - 1].c.unwrap(), bb[i].n.unwrap(), bb[i].ca.unwrap(), bb[i].c.unwrap()]);
        assert!((phi - p.residues[i].phi.unwrap()).abs() < 1e-9);
    }
}

#[test]
fn ideal_strand_angles() {
    let bb = backbone(-119.0, 113.0, 8);
    let mut p = protein_from(&bb);
    compute_backbone_dihedrals(&mut p, &bb).unwrap();
    for r in &p.residues[1..7] {
        assert!((r.phi.unwrap() + 119.0).abs() < 2.0);
        assert!((r.psi.unwrap() - 113.0).abs() < 2.0);
    }
}

fn point() -> impl Strategy<Value = Vec3> {
    [-20.0f64..20.0, -20.0f64..20.0, -20.0f64..20.0]
}

proptest! {
    #[test]
    fn dihedral_matches_oracle_and_range(a in point(), b in point(), c in point(), d in point()) {
        if let Some(x) = dihedral(&a, &b, &c, &d) {
            prop_assert!((-180.0..=180.0).contains(&x));
            let o = dihedral_oracle([a, b, c, d]);
            // near ±180 the two conventions may land on opposite signs
            let gap = (x - o).abs().min(360.0 - (x - o).abs());
            prop_assert!(gap < 1e-6, "{x} vs {o}");
        }
    }

    #[test]
    fn reflection_negates_backbone_angles(phi in -180.0f64..180.0, psi in -180.0f64..180.0, axis in 0usize..3) {
        let bb = backbone(phi, psi, 6);
        let mirror = |p: Vec3| { let mut q = p; q[axis] = -q[axis]; q };
        let flipped: Vec<BackboneAtoms> = bb.iter().map(|b| BackboneAtoms { n: b.n.map(mirror), ca: b.ca.map(mirror), c: b.c.map(mirror) }).collect();
        let (mut p, mut q) = (protein_from(&bb), protein_from(&flipped));
        compute_backbone_dihedrals(&mut p, &bb).unwrap();
        compute_backbone_dihedrals(&mut q, &flipped).unwrap();
        for (r, s) in p.residues.iter().zip(&q.residues) {
            for (x, y) in [(r.phi, s.phi), (r.psi, s.psi)] {
                match (x, y) {
                    (Some(x), Some(y)) => {
                        let gap = (x + y).abs().min(360.0 - (x + y).abs());
                        prop_assert!(gap < 1e-9, "{x} vs {y}");
                    }
                    (None, None) => {}
                    _ => prop_assert!(false, "angle presence differs"),
                }
            }
        }
    }

    #[test]
    fn contact_map_matches_pairwise_oracle(cloud in prop::collection::vec(point(), 1..30), threshold in 1.0f64..15.0) {
        let p = ProteinStructure {
            id: "c".into(),
            residues: cloud.iter().enumerate().map(|(i, &x)| residue(i, x, None)).collect(),
            sse_list: Vec::new(),
        };
        let map = build_contact_map(&p, threshold).unwrap();
        prop_assert!(map.is_symmetric());
        for i in 0..cloud.len() {
            prop_assert!(!map.get(i, i));
            for j in 0..cloud.len() {
                let d = ((cloud[i][0] - cloud[j][0]).powi(2) + (cloud[i][1] - cloud[j][1]).powi(2) + (cloud[i][2] - cloud[j][2]).powi(2)).sqrt();
                prop_assert_eq!(map.get(i, j), i != j && d < threshold);
            }
        }
    }

    #[test]
    fn raising_threshold_keeps_contacts(cloud in prop::collection::vec(point(), 2..25), t in 2.0f64..10.0, extra in 0.0f64..5.0) {
        let p = ProteinStructure {
            id: "c".into(),
            residues: cloud.iter().enumerate().map(|(i, &x)| residue(i, x, None)).collect(),
            sse_list: Vec::new(),
        };
        let low = build_contact_map(&p, t).unwrap();
        let high = build_contact_map(&p, t + extra).unwrap();
        for (i, j) in low.pairs() {
            prop_assert!(high.get(i, j));
        }
    }

    #[test]
    fn induced_network_is_tagged_subgraph(cloud in prop::collection::vec(point(), 6..25), cut in 1usize..5, len in 1usize..4) {
        let n = cloud.len();
        let first = 1 + cut.min(n - 1);
        let sse_a = (first, (first + len - 1).min(n));
        let second = (sse_a.1 + 2).min(n);
        let sse_b = (second, (second + len).min(n));
        let mut sses = vec![SseAnnotation { sse_id: SseId(0), kind: SseKind::Helix, first_residue: sse_a.0, last_residue: sse_a.1 }];
        if sse_b.0 > sse_a.1 {
            sses.push(SseAnnotation { sse_id: SseId(1), kind: SseKind::Strand, first_residue: sse_b.0, last_residue: sse_b.1 });
        }
        let sse_of = |i: usize| sses.iter().find(|s| s.contains(i + 1)).map(|s| s.sse_id.0);
        let p = ProteinStructure {
            id: "c".into(),
            residues: cloud.iter().enumerate().map(|(i, &x)| residue(i, x, sse_of(i))).collect(),
            sse_list: sses.clone(),
        };
        let map = build_contact_map(&p, 9.0).unwrap();
        let g = induce_sse_in(&map, &p).unwrap();
        prop_assert_eq!(g.vertices.len(), sses.iter().map(|s| s.size()).sum::<usize>());
        for e in &g.edges {
            prop_assert!(e.a != e.b);
            prop_assert!(map.get(e.a, e.b));
            prop_assert!(g.sse_of.contains_key(&e.a) && g.sse_of.contains_key(&e.b));
            prop_assert_eq!(e.kind == EdgeKind::InterSse, g.sse_of[&e.a] != g.sse_of[&e.b]);
        }
        let expected = map.pairs().filter(|&(i, j)| sse_of(i).is_some() && sse_of(j).is_some()).count();
        prop_assert_eq!(g.edges.len(), expected);
    }
}
