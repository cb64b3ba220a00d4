//! Compiles a cube state and an [`EncodingConfig`] into CNF.
//!
//! Facelet colors are stored as bit vectors (3 bits, or 2 bits in phase-2
//! states). Each step has six move-type variables and eighteen move
//! variables; a type variable guards the frame clauses for the 28 facelets
//! its turns leave in place, and a move variable guards the copy clauses
//! for the 20 facelets it moves. Centers never move and are folded into
//! constants.

mod config;
mod varmap;

pub use config::{ColorBits, EncodingConfig, Mode};
pub use varmap::{movable_facelets, Role, VarMap};

use crate::cnf::{encode_conditional_exactly_one, encode_exactly_one, AmoMethod, ClauseTag, Formula, Lit, Model, Var};
use crate::cube::{facelet_coords, h_constraints, Color, CubeState, Face, Maneuver, Move, Turn, FACELETS};
use crate::error::{CnfError, DecodeError, EncodeError};

/// Bit pattern of `color` in a `width`-bit scheme, most significant bit
/// first. Three bits: the color index. Two bits: front, left, back, right
/// as 00, 01, 10, 11 and up, down reusing 00, 01.
pub fn color_code(color: Color, width: usize) -> Vec<bool> {
    let code = match width {
        3 => color.index(),
        2 => color.index() & 3,
        _ => panic!("unsupported color width {width}"),
    };
    (0..width).rev().map(|b| (code >> b) & 1 == 1).collect()
}

/// Decodes a bit pattern read from facelet `index`.
pub fn color_from_code(bits: &[bool], index: usize) -> Option<Color> {
    let code = bits.iter().fold(0u8, |acc, &b| (acc << 1) | u8::from(b));
    match bits.len() {
        3 => Color::from_index(code),
        2 if facelet_coords(index).0.is_up_down() => (code < 2).then(|| Color::of(Face::ALL[4 + code as usize])),
        2 => Color::from_index(code),
        _ => None,
    }
}

/// Facelets a turn of `face` leaves in place (28 of the 48 movable ones).
pub fn frame_facelets(face: Face) -> Vec<usize> {
    let perm = Move::new(face, Turn::Clockwise).permutation();
    movable_facelets().filter(|&i| perm[i] as usize == i).collect()
}

fn quarter_turns_outside_a10() -> impl Iterator<Item = Move> {
    Move::all().filter(|m| !m.in_a10())
}

/// A compiled instance.
#[derive(Debug, Clone)]
pub struct Encoding {
    pub formula: Formula,
    pub varmap: VarMap,
    pub config: EncodingConfig,
    pub initial: CubeState,
}

/// A verified solution read back from a model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub maneuver: Maneuver,
    /// Index of the first solved state (1-based); `maneuver.len() + 1`.
    pub solved_at: usize,
}

impl Encoding {
    /// Reads the move sequence from a model, truncates it at the solved
    /// state and replays it on the initial state.
    pub fn decode(&self, model: &Model) -> Result<Decoded, DecodeError> {
        if !self.formula.is_satisfied_by(model) {
            return Err(DecodeError::Unsatisfied);
        }
        let vm = &self.varmap;
        let mut moves = Vec::with_capacity(vm.steps());
        for step in 1..=vm.steps() {
            let chosen: Vec<Move> = Move::all().filter(|&m| model.value(vm.move_var(step, m))).collect();
            match chosen.as_slice() {
                &[m] => moves.push(m),
                _ => {
                    return Err(DecodeError::MoveCount {
                        step,
                        count: chosen.len(),
                    })
                }
            }
        }
        let solved_at = match self.config.mode {
            Mode::ExactLength => vm.n_states(),
            Mode::AtMost => {
                let flagged: Vec<usize> = (1..=vm.n_states())
                    .filter(|&t| vm.solved_flag(t).is_some_and(|v| model.value(v)))
                    .collect();
                match flagged.as_slice() {
                    &[t] => t,
                    _ => return Err(DecodeError::SolvedFlagCount(flagged.len())),
                }
            }
        };
        moves.truncate(solved_at - 1);
        let maneuver = Maneuver(moves);
        if !self.initial.apply_maneuver(&maneuver).is_solved() {
            return Err(DecodeError::Verification { step: solved_at });
        }
        Ok(Decoded { maneuver, solved_at })
    }

    /// Colors of state `t` as stored in the model.
    pub fn decode_state(&self, model: &Model, state: usize) -> Result<CubeState, DecodeError> {
        let mut colors = *CubeState::solved().colors();
        for index in movable_facelets() {
            let bits: Vec<bool> = self
                .varmap
                .color_bits(state, index)
                .iter()
                .map(|&v| model.value(v))
                .collect();
            colors[index] = color_from_code(&bits, index).ok_or(DecodeError::BadColor { state, facelet: index })?;
        }
        CubeState::from_colors(colors).map_err(|_| DecodeError::BadColor {
            state,
            facelet: FACELETS,
        })
    }
}

/// Incremental builder; [`encode`] runs every block in the canonical order.
pub struct Encoder {
    config: EncodingConfig,
    initial: CubeState,
    formula: Formula,
    varmap: VarMap,
}

impl Encoder {
    /// Validates the configuration and allocates all semantic variables:
    /// color bits by state, then type and move variables by step, then the
    /// solved flags (at-most mode).
    pub fn new(initial: &CubeState, config: EncodingConfig) -> Result<Encoder, EncodeError> {
        config.validate()?;
        let n = config.n_states;
        let mut formula = Formula::new();
        let width = |t: usize| match (config.color_bits, config.h_state_index()) {
            (ColorBits::TwoForPhase2, Some(h)) if t > h => 2,
            _ => 3,
        };
        let mut colors = Vec::with_capacity(n);
        for t in 1..=n {
            let w = width(t);
            let state: Vec<Vec<Var>> = movable_facelets()
                .map(|index| {
                    let (face, pos) = facelet_coords(index);
                    (1..=w)
                        .map(|bit| {
                            formula.new_var(
                                Role::Color {
                                    face,
                                    pos,
                                    state: t,
                                    bit,
                                }
                                .to_string(),
                            )
                        })
                        .collect()
                })
                .collect();
            colors.push(state);
        }
        let mut types = Vec::with_capacity(config.steps());
        let mut moves = Vec::with_capacity(config.steps());
        for step in 1..=config.steps() {
            let ty = Face::TURN_ORDER.map(|face| formula.new_var(Role::MoveType { step, face }.to_string()));
            let mut mv = [ty[0]; 18];
            for m in Move::all() {
                mv[m.index()] = formula.new_var(Role::Move { step, mv: m }.to_string());
            }
            types.push(ty);
            moves.push(mv);
        }
        let solved = match config.mode {
            Mode::AtMost => (1..=n)
                .map(|t| formula.new_var(Role::Solved { state: t }.to_string()))
                .collect(),
            Mode::ExactLength => Vec::new(),
        };
        let varmap = VarMap::new(n, colors, solved, types, moves);
        Ok(Encoder {
            config,
            initial: *initial,
            formula,
            varmap,
        })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn varmap(&self) -> &VarMap {
        &self.varmap
    }

    /// Adds an arbitrary clause (used by tests and callers that pin extra facts).
    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = Lit>) -> Result<(), EncodeError> {
        self.formula.add_clause(lits)?;
        Ok(())
    }

    /// `facelet(state) == color`, one literal per bit, each optionally
    /// weakened by `guard` (the block holds only when `guard` is true).
    pub fn encode_facelet_equals_constant(
        &mut self,
        index: usize,
        state: usize,
        color: Color,
        guard: Option<Lit>,
    ) -> Result<(), CnfError> {
        let bits = self.varmap.color_bits(state, index).to_vec();
        let code = color_code(color, bits.len());
        for (&v, &set) in bits.iter().zip(code.iter()) {
            let lit = Lit::new(v, set);
            match guard {
                Some(g) => self.formula.add_clause([!g, lit])?,
                None => self.formula.add_clause([lit])?,
            };
        }
        Ok(())
    }

    /// `facelet(state) in {a, b}` by distributing the two constant bit
    /// patterns: shared bits become single literals, differing bits pair up,
    /// tautologies are dropped.
    fn encode_facelet_in(
        &mut self,
        index: usize,
        state: usize,
        allowed: [Color; 2],
        guard: Option<Lit>,
    ) -> Result<(), CnfError> {
        let bits = self.varmap.color_bits(state, index).to_vec();
        let lits = |c: Color| -> Vec<Lit> {
            bits.iter()
                .zip(color_code(c, bits.len()))
                .map(|(&v, set)| Lit::new(v, set))
                .collect()
        };
        let (a, b) = (lits(allowed[0]), lits(allowed[1]));
        let mut clauses: Vec<Vec<Lit>> = Vec::new();
        for &x in &a {
            for &y in &b {
                if x == !y {
                    continue;
                }
                let mut clause = if x == y { vec![x] } else { vec![x, y] };
                clause.sort();
                if !clauses.contains(&clause) {
                    clauses.push(clause);
                }
            }
        }
        for clause in clauses {
            self.formula.add_clause(guard.map(|g| !g).into_iter().chain(clause))?;
        }
        Ok(())
    }

    /// `dst(state + 1) == src(state)` guarded by `guard`. When the target
    /// state has fewer bits, the low-order bits are compared.
    fn encode_copy(&mut self, guard: Lit, state: usize, src: usize, dst: usize) -> Result<(), CnfError> {
        let from = self.varmap.color_bits(state, src).to_vec();
        let to = self.varmap.color_bits(state + 1, dst).to_vec();
        let offset = from.len() - to.len();
        for (&t, &f) in to.iter().zip(&from[offset..]) {
            self.formula.add_clause([!guard, t.neg(), f.pos()])?;
            self.formula.add_clause([!guard, t.pos(), f.neg()])?;
        }
        Ok(())
    }

    /// Unit clauses fixing every movable facelet of state 1.
    pub fn encode_initial_state(&mut self) -> Result<(), EncodeError> {
        for index in movable_facelets() {
            let color = self.initial.color(index);
            self.encode_facelet_equals_constant(index, 1, color, None)?;
        }
        Ok(())
    }

    /// Exactly one move type (tagged ALO), exactly one variant under the
    /// chosen type, and each variant implying its type.
    pub fn encode_move_selection(&mut self, step: usize) -> Result<(), EncodeError> {
        let types: Vec<Lit> = self.varmap.move_types(step).iter().map(|v| v.pos()).collect();
        let alo = encode_exactly_one(&mut self.formula, &types, AmoMethod::Pairwise)?;
        self.formula.set_tag(alo, ClauseTag::MoveTypeEo { step });
        for face in Face::TURN_ORDER {
            let ty = self.varmap.move_type(step, face).pos();
            let variants: Vec<Lit> = Turn::ALL
                .iter()
                .map(|&t| self.varmap.move_var(step, Move::new(face, t)).pos())
                .collect();
            encode_conditional_exactly_one(&mut self.formula, ty, &variants)?;
        }
        for m in Move::all() {
            let (mv, ty) = (self.varmap.move_var(step, m), self.varmap.move_type(step, m.face));
            self.formula.add_clause([mv.neg(), ty.pos()])?;
        }
        Ok(())
    }

    /// Transition clauses from state `step` to state `step + 1`.
    pub fn encode_move_semantics(&mut self, step: usize) -> Result<(), EncodeError> {
        if self.config.frame_split {
            for face in Face::TURN_ORDER {
                let guard = self.varmap.move_type(step, face).pos();
                for index in frame_facelets(face) {
                    self.encode_copy(guard, step, index, index)?;
                }
            }
            for m in Move::all() {
                let guard = self.varmap.move_var(step, m).pos();
                let perm = m.permutation();
                for dst in m.moved_facelets() {
                    self.encode_copy(guard, step, perm[dst] as usize, dst)?;
                }
            }
        } else {
            for m in Move::all() {
                let guard = self.varmap.move_var(step, m).pos();
                let perm = m.permutation();
                for dst in movable_facelets() {
                    self.encode_copy(guard, step, perm[dst] as usize, dst)?;
                }
            }
        }
        Ok(())
    }

    /// Bans U→D, L→R and F→B across steps `step`, `step + 1` (and repeated
    /// faces when configured).
    pub fn encode_pruning(&mut self, step: usize) -> Result<(), EncodeError> {
        let ty = |vm: &VarMap, s: usize, f: Face| vm.move_type(s, f);
        if self.config.pruning_opposite {
            for (first, second) in [
                (Face::Up, Face::Down),
                (Face::Left, Face::Right),
                (Face::Front, Face::Back),
            ] {
                let a = ty(&self.varmap, step, first);
                let b = ty(&self.varmap, step + 1, second);
                self.formula.add_clause([a.neg(), b.neg()])?;
            }
        }
        if self.config.pruning_same_face {
            for face in Face::TURN_ORDER {
                let a = ty(&self.varmap, step, face);
                let b = ty(&self.varmap, step + 1, face);
                self.formula.add_clause([a.neg(), b.neg()])?;
            }
        }
        Ok(())
    }

    /// Exact mode: the last state is solved. At-most mode: solved flags guard
    /// the solved pattern on each state and exactly one flag holds.
    pub fn encode_solved_target(&mut self) -> Result<(), EncodeError> {
        let n = self.config.n_states;
        match self.config.mode {
            Mode::ExactLength => {
                for index in movable_facelets() {
                    self.encode_facelet_equals_constant(index, n, Color::of(facelet_coords(index).0), None)?;
                }
            }
            Mode::AtMost => {
                for t in 1..=n {
                    let guard = self.varmap.solved_flag(t).expect("at-most mode allocates flags").pos();
                    for index in movable_facelets() {
                        let color = Color::of(facelet_coords(index).0);
                        self.encode_facelet_equals_constant(index, t, color, Some(guard))?;
                    }
                }
                let flags: Vec<Lit> = (1..=n)
                    .filter_map(|t| self.varmap.solved_flag(t))
                    .map(|v| v.pos())
                    .collect();
                encode_exactly_one(&mut self.formula, &flags, self.config.amo_method)?;
            }
        }
        Ok(())
    }

    /// Phase-2 membership of state `k + 1` and the phase-2 move restriction
    /// on steps `k + 1..n`.
    pub fn encode_phase_constraints(&mut self) -> Result<(), EncodeError> {
        let Some(k) = self.config.phase1_len else {
            return Ok(());
        };
        let h = k + 1;
        for (index, allowed) in h_constraints() {
            self.encode_facelet_in(index, h, allowed, None)?;
        }
        for step in k + 1..=self.config.steps() {
            for m in quarter_turns_outside_a10() {
                let v = self.varmap.move_var(step, m);
                self.formula.add_clause([v.neg()])?;
            }
        }
        Ok(())
    }

    /// The state before the final move already shows solved colors on the
    /// 28 facelets the final move type keeps. When a phase-1 length is set,
    /// the state before the last phase-1 move likewise satisfies the
    /// phase-2 pattern on the facelets that move keeps.
    pub fn encode_last_move_constraint(&mut self) -> Result<(), EncodeError> {
        if !self.config.last_move_constraint || self.config.mode != Mode::ExactLength {
            return Ok(());
        }
        let last = self.config.steps();
        if last >= 1 {
            for face in Face::TURN_ORDER {
                let guard = self.varmap.move_type(last, face).pos();
                for index in frame_facelets(face) {
                    let color = Color::of(facelet_coords(index).0);
                    self.encode_facelet_equals_constant(index, last, color, Some(guard))?;
                }
            }
        }
        if let Some(k) = self.config.phase1_len.filter(|&k| k >= 1) {
            for face in Face::TURN_ORDER {
                let guard = self.varmap.move_type(k, face).pos();
                let kept = frame_facelets(face);
                for (index, allowed) in h_constraints().filter(|(i, _)| kept.contains(i)) {
                    self.encode_facelet_in(index, k, allowed, Some(guard))?;
                }
            }
        }
        Ok(())
    }

    pub fn finish(self) -> Encoding {
        Encoding {
            formula: self.formula,
            varmap: self.varmap,
            config: self.config,
            initial: self.initial,
        }
    }
}

/// Builds the full instance: initial state; per step selection, semantics,
/// pruning; solved target; phase constraints; last-move constraints.
pub fn encode(state: &CubeState, config: &EncodingConfig) -> Result<Encoding, EncodeError> {
    let mut enc = Encoder::new(state, config.clone())?;
    enc.encode_initial_state()?;
    let steps = config.steps();
    for step in 1..=steps {
        enc.encode_move_selection(step)?;
        enc.encode_move_semantics(step)?;
        if step < steps {
            enc.encode_pruning(step)?;
        }
    }
    enc.encode_solved_target()?;
    enc.encode_phase_constraints()?;
    enc.encode_last_move_constraint()?;
    Ok(enc.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::to_dimacs;
    use crate::cube::parse_maneuver;

    /// Builds a total assignment from a move sequence: color bits from the
    /// replayed states, move and type variables from the maneuver, solved
    /// flags at the first solved state. Product-AMO selectors are set to
    /// satisfy their implications.
    fn witness(enc: &Encoding, maneuver: &Maneuver) -> Model {
        let vm = &enc.varmap;
        let mut model = Model::new(vec![false; enc.formula.num_vars()]);
        // steps past the solution (at-most mode) still carry a move
        let padding = std::iter::repeat(Move::new(Face::Up, Turn::Clockwise));
        let moves: Vec<Move> = maneuver
            .moves()
            .iter()
            .copied()
            .chain(padding)
            .take(vm.steps())
            .collect();
        let mut states = vec![enc.initial];
        for &m in &moves {
            states.push(states.last().unwrap().apply_move(m));
        }
        let first_solved = states.iter().position(CubeState::is_solved).map(|i| i + 1);
        for (t, state) in states.iter().enumerate().take(vm.n_states()) {
            for index in movable_facelets() {
                let bits = vm.color_bits(t + 1, index);
                for (&v, b) in bits.iter().zip(color_code(state.color(index), bits.len())) {
                    model.set(v, b);
                }
            }
        }
        for (step, &m) in moves.iter().enumerate() {
            model.set(vm.move_var(step + 1, m), true);
            model.set(vm.move_type(step + 1, m.face), true);
        }
        if let Some(t) = first_solved {
            if let Some(v) = vm.solved_flag(t) {
                model.set(v, true);
            }
        }
        for clause in enc.formula.clauses() {
            if let &[a, b] = clause.lits() {
                let aux = |l: Lit| enc.formula.label(l.var()).unwrap().contains('#');
                if !a.is_positive() && model.lit_value(!a) && aux(b) && b.is_positive() {
                    model.set(b.var(), true);
                }
            }
        }
        model
    }

    fn scrambled(text: &str) -> CubeState {
        CubeState::solved().apply_maneuver(&parse_maneuver(text).unwrap())
    }

    #[test]
    fn color_codes() {
        assert_eq!(color_code(Color::from_index(2).unwrap(), 3), vec![false, true, false]);
        assert_eq!(color_code(Color::of(Face::Front), 2), vec![false, false]);
        assert_eq!(color_code(Color::of(Face::Right), 2), vec![true, true]);
        assert_eq!(color_code(Color::of(Face::Up), 2), vec![false, false]);
        assert_eq!(color_code(Color::of(Face::Down), 2), vec![false, true]);
        for c in 0..6 {
            let color = Color::from_index(c).unwrap();
            let index = facelet(color.face(), 0);
            assert_eq!(color_from_code(&color_code(color, 3), index), Some(color));
            assert_eq!(color_from_code(&color_code(color, 2), index), Some(color));
        }
    }

    use crate::cube::facelet;

    #[test]
    fn initial_units() {
        let mut enc = Encoder::new(&CubeState::solved(), EncodingConfig::exact(0)).unwrap();
        enc.encode_initial_state().unwrap();
        assert_eq!(enc.formula().num_clauses(), 144);
        assert!(enc.formula().clauses().iter().all(|c| c.lits.len() == 1));
    }

    #[test]
    fn frame_of_up() {
        let frame = frame_facelets(Face::Up);
        assert_eq!(frame.len(), 28);
        for pos in (0..9).filter(|&p| p != 4) {
            assert!(frame.contains(&facelet(Face::Down, pos)));
        }
        for face in [Face::Front, Face::Left, Face::Back, Face::Right] {
            for pos in 0..3 {
                assert!(!frame.contains(&facelet(face, pos)));
            }
            for pos in [3, 5, 6, 7, 8] {
                assert!(frame.contains(&facelet(face, pos)));
            }
        }
    }

    #[test]
    fn selection_block_shape() {
        let mut enc = Encoder::new(&CubeState::solved(), EncodingConfig::exact(2)).unwrap();
        enc.encode_move_selection(1).unwrap();
        let f = enc.formula();
        // ALO + 15 pairwise, 6 x (1 + 3), 18 implications
        assert_eq!(f.num_clauses(), 16 + 24 + 18);
        let tagged: Vec<_> = f.tagged().collect();
        assert_eq!(tagged.len(), 1);
        assert_eq!(tagged[0].1, ClauseTag::MoveTypeEo { step: 1 });
        assert_eq!(f.clause(tagged[0].0).lits.len(), 6);
    }

    #[test]
    fn pruning_and_a10_counts() {
        let mut enc = Encoder::new(&CubeState::solved(), EncodingConfig::exact(3)).unwrap();
        enc.encode_pruning(1).unwrap();
        assert_eq!(enc.formula().num_clauses(), 3);

        let config = EncodingConfig {
            last_move_constraint: false,
            ..EncodingConfig::exact(8).with_phase1(3)
        };
        let mut enc = Encoder::new(&CubeState::solved(), config).unwrap();
        enc.encode_phase_constraints().unwrap();
        let units = enc.formula().clauses().iter().filter(|c| c.lits.len() == 1).count();
        // n = 9 states, k = 3: steps 4..=8
        assert_eq!(units - h_units(), 8 * (9 - 1 - 3));
    }

    fn h_units() -> usize {
        // every H pair differs in one bit, leaving two shared-bit units
        h_constraints().count() * 2
    }

    #[test]
    fn witness_models_satisfy_and_decode() {
        let cases = [("R U F'", "F U' R'"), ("U2", "U2"), ("F D", "D' F'")];
        for (scramble, solution) in cases {
            let state = scrambled(scramble);
            let mv = parse_maneuver(solution).unwrap();
            for config in [EncodingConfig::exact(mv.len()), EncodingConfig::at_most(mv.len() + 2)] {
                let enc = encode(&state, &config).unwrap();
                let model = witness(&enc, &mv);
                assert!(enc.formula.is_satisfied_by(&model), "{scramble} {:?}", config.mode);
                let decoded = enc.decode(&model).unwrap();
                assert_eq!(decoded.maneuver, mv);
                assert_eq!(decoded.solved_at, mv.len() + 1);
                assert_eq!(enc.decode_state(&model, 1).unwrap(), state);
            }
        }
    }

    #[test]
    fn witness_of_wrong_move_is_rejected() {
        let state = scrambled("U");
        let enc = encode(&state, &EncodingConfig::exact(1)).unwrap();
        assert!(!enc
            .formula
            .is_satisfied_by(&witness(&enc, &parse_maneuver("U").unwrap())));
        let good = witness(&enc, &parse_maneuver("U'").unwrap());
        assert!(enc.formula.is_satisfied_by(&good));
        let mut tampered = good.clone();
        tampered.set(enc.varmap.move_var(1, Move::new(Face::Up, Turn::Half)), true);
        assert_eq!(enc.decode(&tampered), Err(DecodeError::Unsatisfied));
    }

    #[test]
    fn phase_split_witnesses() {
        // R takes solved out of H; R' brings it back, then U-layer moves stay in H
        let state = scrambled("U D2 R");
        let solution = parse_maneuver("R' D2 U'").unwrap();
        for bits in [ColorBits::ThreeEverywhere, ColorBits::TwoForPhase2] {
            for mode in [Mode::ExactLength, Mode::AtMost] {
                let base = match mode {
                    Mode::ExactLength => EncodingConfig::exact(3),
                    Mode::AtMost => EncodingConfig::at_most(4),
                };
                let config = EncodingConfig {
                    color_bits: bits,
                    ..base.with_phase1(1)
                };
                let enc = encode(&state, &config).unwrap();
                let model = witness(&enc, &solution);
                assert!(enc.formula.is_satisfied_by(&model), "{bits:?} {mode:?}");
                assert_eq!(enc.decode(&model).unwrap().maneuver, solution);
                if bits == ColorBits::TwoForPhase2 {
                    assert_eq!(enc.varmap.width(3), 2);
                    assert_eq!(enc.varmap.width(2), 3);
                }
            }
        }
        // the H boundary at state 1 rejects the same witness
        let enc = encode(&state, &EncodingConfig::exact(3).with_phase1(0)).unwrap();
        assert!(!enc.formula.is_satisfied_by(&witness(&enc, &solution)));
    }

    #[test]
    fn h_block_separates_states() {
        for (state, expected) in [
            (CubeState::solved(), true),
            (scrambled("F"), false),
            (scrambled("U R2"), true),
        ] {
            let config = EncodingConfig {
                last_move_constraint: false,
                ..EncodingConfig::exact(1).with_phase1(0)
            };
            let mut enc = Encoder::new(&state, config).unwrap();
            enc.encode_initial_state().unwrap();
            enc.encode_phase_constraints().unwrap();
            let enc = enc.finish();
            let model = witness(&enc, &Maneuver::new());
            assert_eq!(enc.formula.is_satisfied_by(&model), expected);
            assert_eq!(state.is_h_state(), expected);
        }
    }

    #[test]
    fn last_move_block_of_up() {
        let config = EncodingConfig::exact(3);
        let mut enc = Encoder::new(&CubeState::solved(), config).unwrap();
        enc.encode_last_move_constraint().unwrap();
        // 6 types x 28 facelets x 3 guarded bits
        assert_eq!(enc.formula().num_clauses(), 6 * 28 * 3);
        assert!(enc.formula().clauses().iter().all(|c| c.lits.len() == 2));
    }

    #[test]
    fn table_one_sizes() {
        let reference = [
            (9, 3570.0, 66028.0),
            (10, 3570.0, 66026.0),
            (11, 3594.0, 66201.0),
            (12, 3618.0, 66248.0),
        ];
        for (k, vars, clauses) in reference {
            let enc = encode(&CubeState::solved(), &EncodingConfig::at_most(20).with_phase1(k)).unwrap();
            let (v, c) = (enc.formula.num_vars() as f64, enc.formula.num_clauses() as f64);
            assert!((v / vars - 1.0).abs() <= 0.25, "k={k} vars {v} vs {vars}");
            assert!((c / clauses - 1.0).abs() <= 0.25, "k={k} clauses {c} vs {clauses}");
        }
    }

    #[test]
    fn frame_split_is_smaller() {
        let split = encode(&CubeState::solved(), &EncodingConfig::exact(5)).unwrap();
        let naive = encode(
            &CubeState::solved(),
            &EncodingConfig {
                frame_split: false,
                ..EncodingConfig::exact(5)
            },
        )
        .unwrap();
        assert!(split.formula.num_clauses() < naive.formula.num_clauses());
        assert_eq!(split.formula.num_vars(), naive.formula.num_vars());
    }

    #[test]
    fn deterministic_output() {
        let state = scrambled("R U2 F'");
        let config = EncodingConfig::at_most(6).with_phase1(2);
        let a = to_dimacs(&encode(&state, &config).unwrap().formula);
        let b = to_dimacs(&encode(&state, &config).unwrap().formula);
        assert_eq!(a, b);
    }

    #[test]
    fn labels_resolve_to_their_variables() {
        let enc = encode(&CubeState::solved(), &EncodingConfig::at_most(3).with_phase1(1)).unwrap();
        for (i, label) in enc.formula.labels().iter().enumerate() {
            let role: Role = label.parse().unwrap();
            if let Some(v) = enc.varmap.var_of(&role) {
                assert_eq!(v.index(), i, "{label}");
            } else {
                assert!(matches!(role, Role::Aux { .. }), "{label}");
            }
        }
    }

    #[test]
    fn rejects_bad_configs() {
        let bad = EncodingConfig::exact(2).with_phase1(2);
        assert!(matches!(
            encode(&CubeState::solved(), &bad),
            Err(EncodeError::Config(_))
        ));
    }
}
