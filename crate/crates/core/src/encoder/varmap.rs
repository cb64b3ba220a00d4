//! Semantic roles of encoding variables and their text labels.
//!
//! Labels: `c(i,j,t,b)` color bit `b` of facelet `j` on face `i` in state
//! `t`; `s(t)` state `t` is solved; `u(k)`..`b(k)` move type at step `k`;
//! `U(k)`, `U'(k)`, `U2(k)`.. concrete move at step `k`; `<prefix>#<id>`
//! auxiliaries.

use std::fmt;
use std::str::FromStr;

use crate::cnf::Var;
use crate::cube::{facelet, is_center, parse_maneuver, Face, Move, FACELETS};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Role {
    Color {
        face: Face,
        pos: usize,
        state: usize,
        bit: usize,
    },
    Solved {
        state: usize,
    },
    MoveType {
        step: usize,
        face: Face,
    },
    Move {
        step: usize,
        mv: Move,
    },
    Aux {
        prefix: String,
        id: u32,
    },
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Color { face, pos, state, bit } => write!(f, "c({},{pos},{state},{bit})", face.number()),
            Role::Solved { state } => write!(f, "s({state})"),
            Role::MoveType { step, face } => write!(f, "{}({step})", face.type_name()),
            Role::Move { step, mv } => write!(f, "{mv}({step})"),
            Role::Aux { prefix, id } => write!(f, "{prefix}#{id}"),
        }
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(label: &str) -> Result<Self, Self::Err> {
        let bad = || format!("unrecognised label {label:?}");
        if let Some((prefix, id)) = label.rsplit_once('#') {
            return Ok(Role::Aux {
                prefix: prefix.to_string(),
                id: id.parse().map_err(|_| bad())?,
            });
        }
        let (head, rest) = label.split_once('(').ok_or_else(bad)?;
        let args: Vec<usize> = rest
            .strip_suffix(')')
            .ok_or_else(bad)?
            .split(',')
            .map(|a| a.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (head, args.as_slice()) {
            ("c", &[i, pos, state, bit]) => {
                let face = Face::from_index(i.wrapping_sub(1)).ok_or_else(bad)?;
                Ok(Role::Color { face, pos, state, bit })
            }
            ("s", &[state]) => Ok(Role::Solved { state }),
            (name, &[step]) if name.len() == 1 && name.chars().all(|c| c.is_ascii_lowercase()) => {
                let face = Face::from_letter(name.chars().next().unwrap().to_ascii_uppercase()).ok_or_else(bad)?;
                Ok(Role::MoveType { step, face })
            }
            (name, &[step]) => {
                let mv = parse_maneuver(name).map_err(|_| bad())?;
                match mv.moves() {
                    &[m] => Ok(Role::Move { step, mv: m }),
                    _ => Err(bad()),
                }
            }
            _ => Err(bad()),
        }
    }
}

/// Index of each movable facelet among the 48.
pub fn movable_facelets() -> impl Iterator<Item = usize> {
    (0..FACELETS).filter(|&i| !is_center(i))
}

pub(crate) fn slot_of(index: usize) -> usize {
    debug_assert!(!is_center(index));
    index - index / 9 - usize::from(index % 9 > 4)
}

/// Variable handles of one encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    n_states: usize,
    /// `colors[t - 1][slot]` holds the bit variables, most significant first.
    colors: Vec<Vec<Vec<Var>>>,
    solved: Vec<Var>,
    types: Vec<[Var; 6]>,
    moves: Vec<[Var; 18]>,
}

impl VarMap {
    pub(crate) fn new(
        n_states: usize,
        colors: Vec<Vec<Vec<Var>>>,
        solved: Vec<Var>,
        types: Vec<[Var; 6]>,
        moves: Vec<[Var; 18]>,
    ) -> VarMap {
        VarMap {
            n_states,
            colors,
            solved,
            types,
            moves,
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn steps(&self) -> usize {
        self.types.len()
    }

    /// Bits per facelet in `state`.
    pub fn width(&self, state: usize) -> usize {
        self.colors[state - 1][0].len()
    }

    /// Bit variables of a movable facelet, most significant first.
    pub fn color_bits(&self, state: usize, index: usize) -> &[Var] {
        &self.colors[state - 1][slot_of(index)]
    }

    pub fn solved_flag(&self, state: usize) -> Option<Var> {
        self.solved.get(state.wrapping_sub(1)).copied()
    }

    pub fn move_type(&self, step: usize, face: Face) -> Var {
        self.types[step - 1][face.turn_rank()]
    }

    pub fn move_var(&self, step: usize, mv: Move) -> Var {
        self.moves[step - 1][mv.index()]
    }

    /// Type variables of a step in u, d, l, r, f, b order.
    pub fn move_types(&self, step: usize) -> &[Var; 6] {
        &self.types[step - 1]
    }

    pub fn move_vars(&self, step: usize) -> &[Var; 18] {
        &self.moves[step - 1]
    }

    /// Variable playing `role`, if this map allocated one.
    pub fn var_of(&self, role: &Role) -> Option<Var> {
        match *role {
            Role::Color { face, pos, state, bit } => {
                if pos >= 9 || pos == 4 || state == 0 || state > self.n_states {
                    return None;
                }
                self.color_bits(state, facelet(face, pos))
                    .get(bit.wrapping_sub(1))
                    .copied()
            }
            Role::Solved { state } => self.solved_flag(state),
            Role::MoveType { step, face } => (1..=self.steps()).contains(&step).then(|| self.move_type(step, face)),
            Role::Move { step, mv } => (1..=self.steps()).contains(&step).then(|| self.move_var(step, mv)),
            Role::Aux { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::Turn;

    #[test]
    fn slots_are_dense() {
        let slots: Vec<usize> = movable_facelets().map(slot_of).collect();
        assert_eq!(slots, (0..48).collect::<Vec<_>>());
    }

    #[test]
    fn labels_round_trip() {
        let roles = [
            Role::Color {
                face: Face::Down,
                pos: 8,
                state: 21,
                bit: 3,
            },
            Role::Solved { state: 4 },
            Role::MoveType {
                step: 2,
                face: Face::Back,
            },
            Role::Move {
                step: 7,
                mv: Move::new(Face::Right, Turn::CounterClockwise),
            },
            Role::Move {
                step: 1,
                mv: Move::new(Face::Up, Turn::Half),
            },
            Role::Aux {
                prefix: "amo-u".into(),
                id: 99,
            },
        ];
        for role in roles {
            let label = role.to_string();
            assert_eq!(label.parse::<Role>().unwrap(), role, "{label}");
        }
        assert_eq!(
            Role::Move {
                step: 3,
                mv: Move::new(Face::Up, Turn::CounterClockwise)
            }
            .to_string(),
            "U'(3)"
        );
        assert_eq!(
            Role::Color {
                face: Face::Front,
                pos: 0,
                state: 1,
                bit: 2
            }
            .to_string(),
            "c(1,0,1,2)"
        );
        assert!("q(1)".parse::<Role>().is_err());
        assert!("nonsense".parse::<Role>().is_err());
    }
}
