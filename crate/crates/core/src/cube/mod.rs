//! Facelet model of the 3x3x3 cube.
//!
//! A state is a grid of 54 facelet colors, six faces of nine positions each.
//! Faces are numbered 1..=6 as front, left, back, right, up, down. Positions
//! 0..=8 are row-major with position 4 the (fixed) center. Side faces are read
//! with the up face above them, the up face with row 0 next to the back face,
//! and the down face with row 0 next to the front face.

mod geometry;
mod notation;
mod oracle;
mod scramble;
mod tables;

use std::fmt;

pub use geometry::{cubie_groups, CubieKind};
pub use notation::{format_facelets, format_maneuver, parse_facelets, parse_maneuver};
pub use oracle::{optimal_depth_oracle, solver_canonical, ORACLE_MAX_DEPTH};
pub use scramble::{scramble, scramble_canonical};

pub const FACELETS: usize = 54;
pub const CENTER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    Front,
    Left,
    Back,
    Right,
    Up,
    Down,
}

impl Face {
    /// Faces in facelet-grid order (1..=6).
    pub const ALL: [Face; 6] = [Face::Front, Face::Left, Face::Back, Face::Right, Face::Up, Face::Down];

    /// Order used for move types: u, d, l, r, f, b.
    pub const TURN_ORDER: [Face; 6] = [Face::Up, Face::Down, Face::Left, Face::Right, Face::Front, Face::Back];

    /// 1-based face number.
    pub fn number(self) -> usize {
        self.index() + 1
    }

    /// 0-based index into [`Face::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Face> {
        Face::ALL.get(index).copied()
    }

    pub fn opposite(self) -> Face {
        match self {
            Face::Front => Face::Back,
            Face::Back => Face::Front,
            Face::Left => Face::Right,
            Face::Right => Face::Left,
            Face::Up => Face::Down,
            Face::Down => Face::Up,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Face::Front => 'F',
            Face::Left => 'L',
            Face::Back => 'B',
            Face::Right => 'R',
            Face::Up => 'U',
            Face::Down => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Face> {
        Some(match c {
            'F' => Face::Front,
            'L' => Face::Left,
            'B' => Face::Back,
            'R' => Face::Right,
            'U' => Face::Up,
            'D' => Face::Down,
            _ => return None,
        })
    }

    /// Lower-case move-type name (u, d, l, r, f, b).
    pub fn type_name(self) -> char {
        self.letter().to_ascii_lowercase()
    }

    /// Position of this face in [`Face::TURN_ORDER`].
    pub fn turn_rank(self) -> usize {
        match self {
            Face::Up => 0,
            Face::Down => 1,
            Face::Left => 2,
            Face::Right => 3,
            Face::Front => 4,
            Face::Back => 5,
        }
    }

    /// Up and down faces stay put under every phase-2 move.
    pub fn is_up_down(self) -> bool {
        matches!(self, Face::Up | Face::Down)
    }
}

/// A sticker color, named after the face whose center carries it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(u8);

impl Color {
    pub const fn of(face: Face) -> Color {
        Color(face as u8)
    }

    pub fn from_index(index: u8) -> Option<Color> {
        (index < 6).then_some(Color(index))
    }

    /// Color index 0..=5 (front, left, back, right, up, down).
    pub fn index(self) -> u8 {
        self.0
    }

    pub fn face(self) -> Face {
        Face::ALL[self.0 as usize]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Turn {
    Clockwise,
    CounterClockwise,
    Half,
}

impl Turn {
    pub const ALL: [Turn; 3] = [Turn::Clockwise, Turn::CounterClockwise, Turn::Half];

    pub fn inverse(self) -> Turn {
        match self {
            Turn::Clockwise => Turn::CounterClockwise,
            Turn::CounterClockwise => Turn::Clockwise,
            Turn::Half => Turn::Half,
        }
    }

    pub fn suffix(self) -> &'static str {
        match self {
            Turn::Clockwise => "",
            Turn::CounterClockwise => "'",
            Turn::Half => "2",
        }
    }

    /// Number of clockwise quarter turns.
    pub fn quarters(self) -> usize {
        match self {
            Turn::Clockwise => 1,
            Turn::Half => 2,
            Turn::CounterClockwise => 3,
        }
    }
}

/// One of the 18 face turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub face: Face,
    pub turn: Turn,
}

impl Move {
    pub const fn new(face: Face, turn: Turn) -> Move {
        Move { face, turn }
    }

    /// All 18 moves: U U' U2 D D' D2 L L' L2 R R' R2 F F' F2 B B' B2.
    pub fn all() -> impl Iterator<Item = Move> {
        Face::TURN_ORDER
            .into_iter()
            .flat_map(|face| Turn::ALL.into_iter().map(move |turn| Move { face, turn }))
    }

    /// Index of this move in [`Move::all`].
    pub fn index(self) -> usize {
        self.face.turn_rank() * 3
            + match self.turn {
                Turn::Clockwise => 0,
                Turn::CounterClockwise => 1,
                Turn::Half => 2,
            }
    }

    pub fn from_index(index: usize) -> Option<Move> {
        if index >= 18 {
            return None;
        }
        Some(Move {
            face: Face::TURN_ORDER[index / 3],
            turn: Turn::ALL[index % 3],
        })
    }

    pub fn inverse(self) -> Move {
        Move {
            face: self.face,
            turn: self.turn.inverse(),
        }
    }

    /// Membership in the phase-2 move set {U, U', U2, D, D', D2, L2, R2, F2, B2}.
    pub fn in_a10(self) -> bool {
        self.face.is_up_down() || self.turn == Turn::Half
    }

    /// Source index for every destination facelet: `new[i] = old[perm[i]]`.
    pub fn permutation(self) -> &'static [u8; FACELETS] {
        &tables::MOVE_TABLES[self.index()]
    }

    /// Facelets whose color this move changes (always 20 of them).
    pub fn moved_facelets(self) -> impl Iterator<Item = usize> {
        let perm = self.permutation();
        (0..FACELETS).filter(move |&i| perm[i] as usize != i)
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.face.letter(), self.turn.suffix())
    }
}

/// An ordered sequence of moves.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Maneuver(pub Vec<Move>);

impl Maneuver {
    pub fn new() -> Maneuver {
        Maneuver(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn moves(&self) -> &[Move] {
        &self.0
    }

    pub fn inverse(&self) -> Maneuver {
        Maneuver(self.0.iter().rev().map(|m| m.inverse()).collect())
    }
}

impl From<Vec<Move>> for Maneuver {
    fn from(moves: Vec<Move>) -> Self {
        Maneuver(moves)
    }
}

impl fmt::Display for Maneuver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_maneuver(self))
    }
}

impl std::str::FromStr for Maneuver {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_maneuver(s)
    }
}

/// Facelet index of position `pos` on `face`.
pub const fn facelet(face: Face, pos: usize) -> usize {
    face as usize * 9 + pos
}

/// (face, position) of a facelet index.
pub fn facelet_coords(index: usize) -> (Face, usize) {
    (Face::ALL[index / 9], index % 9)
}

pub fn is_center(index: usize) -> bool {
    index % 9 == CENTER
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct CubeState {
    facelets: [Color; FACELETS],
}

impl CubeState {
    pub fn solved() -> CubeState {
        let mut facelets = [Color(0); FACELETS];
        for (i, f) in facelets.iter_mut().enumerate() {
            *f = Color(i as u8 / 9);
        }
        CubeState { facelets }
    }

    /// Builds a state from raw colors, checking color counts and centers only.
    pub fn from_colors(facelets: [Color; FACELETS]) -> Result<CubeState, crate::error::ParseError> {
        use crate::error::ParseError;
        let mut counts = [0usize; 6];
        for c in facelets.iter() {
            counts[c.0 as usize] += 1;
        }
        if let Some(bad) = counts.iter().position(|&n| n != 9) {
            return Err(ParseError::ColorCount {
                color: Face::ALL[bad].letter(),
                count: counts[bad],
            });
        }
        for face in Face::ALL {
            let center = facelets[facelet(face, CENTER)];
            if center != Color::of(face) {
                return Err(ParseError::CenterMismatch {
                    face: face.letter(),
                    found: center.face().letter(),
                });
            }
        }
        Ok(CubeState { facelets })
    }

    pub fn color(&self, index: usize) -> Color {
        self.facelets[index]
    }

    pub fn color_at(&self, face: Face, pos: usize) -> Color {
        self.facelets[facelet(face, pos)]
    }

    pub fn colors(&self) -> &[Color; FACELETS] {
        &self.facelets
    }

    /// Exchanges two facelet colors without any validity check.
    pub fn swap_facelets(&self, a: usize, b: usize) -> CubeState {
        let mut out = *self;
        out.facelets.swap(a, b);
        out
    }

    pub fn apply_move(&self, m: Move) -> CubeState {
        let perm = m.permutation();
        let mut facelets = self.facelets;
        for (dst, &src) in facelets.iter_mut().zip(perm.iter()) {
            *dst = self.facelets[src as usize];
        }
        CubeState { facelets }
    }

    pub fn apply_maneuver(&self, mv: &Maneuver) -> CubeState {
        mv.moves().iter().fold(*self, |s, &m| s.apply_move(m))
    }

    pub fn is_solved(&self) -> bool {
        self.facelets.iter().enumerate().all(|(i, c)| c.0 as usize == i / 9)
    }

    /// Facelet-level membership test for the phase-2 subgroup: the up and
    /// down faces show only up/down colors, and the middle-layer edge
    /// facelets (positions 3 and 5) of each side face show that face's color
    /// or its opposite's.
    pub fn is_h_state(&self) -> bool {
        h_constraints().all(|(index, allowed)| allowed.contains(&self.facelets[index]))
    }

    /// True iff the facelets group into the corner, edge and center cubies of
    /// a physical cube, each cubie's color set appearing exactly once.
    pub fn validate_cubies(&self) -> bool {
        let solved = CubeState::solved();
        let key = |state: &CubeState, group: &[usize]| {
            let mut colors: Vec<u8> = group.iter().map(|&i| state.facelets[i].0).collect();
            colors.sort_unstable();
            colors
        };
        let mut want: Vec<Vec<u8>> = cubie_groups().iter().map(|g| key(&solved, &g.facelets)).collect();
        let mut have: Vec<Vec<u8>> = cubie_groups().iter().map(|g| key(self, &g.facelets)).collect();
        want.sort();
        have.sort();
        want == have
    }
}

impl Default for CubeState {
    fn default() -> Self {
        CubeState::solved()
    }
}

impl fmt::Debug for CubeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CubeState({})", format_facelets(self))
    }
}

impl fmt::Display for CubeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_facelets(self))
    }
}

/// The facelets the phase-2 subgroup constrains, with their two admissible
/// colors.
pub fn h_constraints() -> impl Iterator<Item = (usize, [Color; 2])> {
    let axis = |face: Face| [Color::of(face), Color::of(face.opposite())];
    let sides = [Face::Front, Face::Left, Face::Back, Face::Right]
        .into_iter()
        .flat_map(move |face| [3, 5].into_iter().map(move |pos| (facelet(face, pos), axis(face))));
    let caps = [Face::Up, Face::Down].into_iter().flat_map(move |face| {
        (0..9)
            .filter(|&pos| pos != CENTER)
            .map(move |pos| (facelet(face, pos), axis(face)))
    });
    sides.chain(caps)
}

/// All corners solved and every edge flipped in place.
pub fn superflip_state() -> CubeState {
    let mut state = CubeState::solved();
    for group in cubie_groups().iter().filter(|g| g.kind == CubieKind::Edge) {
        state = state.swap_facelets(group.facelets[0], group.facelets[1]);
    }
    state
}
