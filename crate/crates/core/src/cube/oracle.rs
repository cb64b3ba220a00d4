//! Brute-force optimal solver used as ground truth for the SAT planner.

use super::{CubeState, Face, Maneuver, Move};
use crate::error::OracleError;

/// Largest depth the exhaustive search accepts.
pub const ORACLE_MAX_DEPTH: usize = 7;

/// Whether `next` may follow `prev` in a solver-canonical sequence: no two
/// turns of the same face in a row, and no U→D, L→R or F→B adjacency
/// (commuting pairs are kept only in the D U / R L / B F order).
pub fn solver_canonical(prev: Option<Face>, next: Face) -> bool {
    match prev {
        None => true,
        Some(p) if p == next => false,
        Some(Face::Up) => next != Face::Down,
        Some(Face::Left) => next != Face::Right,
        Some(Face::Front) => next != Face::Back,
        Some(_) => true,
    }
}

/// Minimal face-turn depth `d <= max_depth` with a witness solving `state`,
/// found by iterative deepening over solver-canonical sequences.
pub fn optimal_depth_oracle(state: &CubeState, max_depth: usize) -> Result<Option<(usize, Maneuver)>, OracleError> {
    if max_depth > ORACLE_MAX_DEPTH {
        return Err(OracleError::DepthOutOfRange {
            requested: max_depth,
            max: ORACLE_MAX_DEPTH,
        });
    }
    let moves: Vec<Move> = Move::all().collect();
    let mut path = Vec::with_capacity(max_depth);
    for depth in 0..=max_depth {
        if search(state, depth, None, &moves, &mut path) {
            let witness = Maneuver(path);
            debug_assert!(state.apply_maneuver(&witness).is_solved());
            return Ok(Some((depth, witness)));
        }
    }
    Ok(None)
}

fn search(state: &CubeState, remaining: usize, prev: Option<Face>, moves: &[Move], path: &mut Vec<Move>) -> bool {
    if remaining == 0 {
        return state.is_solved();
    }
    for &m in moves {
        if !solver_canonical(prev, m.face) {
            continue;
        }
        path.push(m);
        if search(&state.apply_move(m), remaining - 1, Some(m.face), moves, path) {
            return true;
        }
        path.pop();
    }
    false
}
