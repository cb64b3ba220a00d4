use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CubeState, Face, Maneuver, Move, Turn};

/// Whether `next` may follow `prev` in a scramble: no repeated face, and
/// commuting pairs only as U D, L R, F B. Inverting such a sequence yields a
/// sequence the solver's pruning admits.
pub fn scramble_canonical(prev: Option<Face>, next: Face) -> bool {
    match prev {
        None => true,
        Some(p) if p == next => false,
        Some(Face::Down) => next != Face::Up,
        Some(Face::Right) => next != Face::Left,
        Some(Face::Back) => next != Face::Front,
        Some(_) => true,
    }
}

/// Deterministic canonical scramble of `length` moves from `seed`.
pub fn scramble(seed: u64, length: usize) -> (Maneuver, CubeState) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moves = Vec::with_capacity(length);
    let mut prev = None;
    while moves.len() < length {
        let face = Face::ALL[rng.gen_range(0..6)];
        if !scramble_canonical(prev, face) {
            continue;
        }
        let turn = Turn::ALL[rng.gen_range(0..3)];
        moves.push(Move::new(face, turn));
        prev = Some(face);
    }
    let mv = Maneuver(moves);
    let state = CubeState::solved().apply_maneuver(&mv);
    (mv, state)
}
