//! Physical sticker coordinates. Used to derive the move tables and to group
//! facelets into cubies.
//!
//! Axes: x to the right, y up, z toward the viewer (front face at z = +1).
//! Every sticker is identified by its cubie position in {-1, 0, 1}^3 and the
//! outward normal of the face it sits on.

use std::sync::OnceLock;

#[cfg(test)]
use super::Move;
use super::{Face, FACELETS};

type Vec3 = [i8; 3];

fn normal(face: Face) -> Vec3 {
    match face {
        Face::Front => [0, 0, 1],
        Face::Left => [-1, 0, 0],
        Face::Back => [0, 0, -1],
        Face::Right => [1, 0, 0],
        Face::Up => [0, 1, 0],
        Face::Down => [0, -1, 0],
    }
}

/// Cubie position of (face, row, col) under the fixed grid orientation.
fn cubie_position(face: Face, row: i8, col: i8) -> Vec3 {
    let (r, c) = (row - 1, col - 1);
    match face {
        Face::Front => [c, -r, 1],
        Face::Left => [-1, -r, c],
        Face::Back => [-c, -r, -1],
        Face::Right => [1, -r, -c],
        Face::Up => [c, 1, r],
        Face::Down => [c, -1, -r],
    }
}

pub(crate) fn sticker(index: usize) -> (Vec3, Vec3) {
    let face = Face::ALL[index / 9];
    let pos = (index % 9) as i8;
    (cubie_position(face, pos / 3, pos % 3), normal(face))
}

#[cfg(test)]
fn locate(position: Vec3, normal_vec: Vec3) -> usize {
    (0..FACELETS)
        .find(|&i| sticker(i) == (position, normal_vec))
        .expect("rotated sticker must land on the cube surface")
}

/// Clockwise quarter turn (seen from outside) about the face normal `axis`.
#[cfg(test)]
fn rotate(v: Vec3, axis: Vec3) -> Vec3 {
    // Rodrigues with angle -90 degrees: v' = -(a x v) + a (a.v).
    let cross = [
        axis[1] * v[2] - axis[2] * v[1],
        axis[2] * v[0] - axis[0] * v[2],
        axis[0] * v[1] - axis[1] * v[0],
    ];
    let dot = axis[0] * v[0] + axis[1] * v[1] + axis[2] * v[2];
    [
        -cross[0] + axis[0] * dot,
        -cross[1] + axis[1] * dot,
        -cross[2] + axis[2] * dot,
    ]
}

/// Derives the destination-to-source permutation of `m` from the geometry.
#[cfg(test)]
pub(crate) fn derive_permutation(m: Move) -> [u8; FACELETS] {
    let axis = normal(m.face);
    let mut perm = [0u8; FACELETS];
    for (i, p) in perm.iter_mut().enumerate() {
        *p = i as u8;
    }
    for src in 0..FACELETS {
        let (mut pos, mut nrm) = sticker(src);
        let in_layer = pos[0] * axis[0] + pos[1] * axis[1] + pos[2] * axis[2] == 1;
        if !in_layer {
            continue;
        }
        for _ in 0..m.turn.quarters() {
            pos = rotate(pos, axis);
            nrm = rotate(nrm, axis);
        }
        perm[locate(pos, nrm)] = src as u8;
    }
    perm
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubieKind {
    Corner,
    Edge,
    Center,
}

#[derive(Debug, Clone)]
pub struct CubieGroup {
    pub kind: CubieKind,
    pub facelets: Vec<usize>,
}

/// The 26 visible cubies (8 corners, 12 edges, 6 centers) as facelet groups.
pub fn cubie_groups() -> &'static [CubieGroup] {
    static GROUPS: OnceLock<Vec<CubieGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        let mut groups: Vec<(Vec3, Vec<usize>)> = Vec::new();
        for i in 0..FACELETS {
            let (pos, _) = sticker(i);
            match groups.iter_mut().find(|(p, _)| *p == pos) {
                Some((_, members)) => members.push(i),
                None => groups.push((pos, vec![i])),
            }
        }
        groups
            .into_iter()
            .map(|(_, facelets)| CubieGroup {
                kind: match facelets.len() {
                    3 => CubieKind::Corner,
                    2 => CubieKind::Edge,
                    _ => CubieKind::Center,
                },
                facelets,
            })
            .collect()
    })
}
