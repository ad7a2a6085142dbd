//! Small 3-vector helpers and the backbone dihedral.

use libm::{atan2, sqrt};

pub type Vec3 = [f64; 3];

#[inline]
pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: &Vec3) -> f64 {
    sqrt(dot(a, a))
}

#[inline]
pub fn distance(a: &Vec3, b: &Vec3) -> f64 {
    norm(&sub(a, b))
}

/// Signed dihedral angle in degrees, in `[-180, 180]`, between the planes
/// (p1, p2, p3) and (p2, p3, p4). Returns `None` when the central bond has
/// zero length or either plane is degenerate.
pub fn dihedral(p1: &Vec3, p2: &Vec3, p3: &Vec3, p4: &Vec3) -> Option<f64> {
    let b1 = sub(p2, p1);
    let b2 = sub(p3, p2);
    let b3 = sub(p4, p3);
    let n1 = cross(&b1, &b2);
    let n2 = cross(&b2, &b3);
    let b2_len = norm(&b2);
    if b2_len < 1e-12 || norm(&n1) < 1e-12 || norm(&n2) < 1e-12 {
        return None;
    }
    // atan2(|b2| b1·(b2×b3), (b1×b2)·(b2×b3))
    let y = b2_len * dot(&b1, &n2);
    let x = dot(&n1, &n2);
    Some(atan2(y, x).to_degrees())
}

/// Absolute angular difference folded into `[0, 180]`.
pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = libm::fmod((a - b).abs(), 360.0);
    if d > 180.0 {
        360.0 - d
    } else {
        d
    }
}
