//! End-to-end solving: encode, solve, decode, and re-check every answer
//! against the cube model.

mod bench;

use std::fmt;
use std::time::{Duration, Instant};

pub use bench::{bench, parse_corpus_line, BenchReport, BenchRow, CSV_HEADER};

use crate::cnf::Formula;
use crate::cube::{CubeState, Maneuver};
use crate::encoder::{encode, ColorBits, EncodingConfig, Mode};
use crate::error::PlanError;
use crate::orchestrator::{self, DecomposeConfig};
use crate::sat::{solve, BackendConfig, SolverResult};

/// Longest horizon the optimal-shallow strategy accepts.
pub const MAX_SHALLOW_LENGTH: usize = 13;
pub const DEFAULT_BUDGET: usize = 20;
pub const DEFAULT_SWEEP: [usize; 4] = [9, 10, 11, 12];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Engine {
    Direct(BackendConfig),
    Decompose(DecomposeConfig),
}

impl Engine {
    pub fn timeout(&self) -> Duration {
        match self {
            Engine::Direct(b) => b.timeout,
            Engine::Decompose(d) => d.backend.timeout,
        }
    }

    /// Solves `formula`; returns the result and the number of backend calls.
    pub fn run(&self, formula: &Formula) -> Result<(SolverResult, usize), PlanError> {
        match self {
            Engine::Direct(backend) => Ok((solve(formula, backend)?, 1)),
            Engine::Decompose(config) => {
                let out = orchestrator::solve(formula, config)?;
                Ok((out.result, out.leaves.len()))
            }
        }
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::Direct(BackendConfig::default())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Strategy {
    /// Exact-length encodings of length 0, 1, .. up to `max_length`.
    OptimalShallow { max_length: usize },
    /// Phase-split encodings within `budget` moves, one per phase-1 length.
    TwoPhase { budget: usize, sweep: Vec<usize> },
    /// One encoding of `length` moves in the template's mode.
    Bounded { length: usize, phase1: Option<usize> },
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::OptimalShallow { max_length } => write!(f, "optimal-shallow(max={max_length})"),
            Strategy::TwoPhase { budget, sweep } => {
                let ks: Vec<String> = sweep.iter().map(usize::to_string).collect();
                write!(f, "two-phase(budget={budget},k={})", ks.join("/"))
            }
            Strategy::Bounded {
                length,
                phase1: Some(k),
            } => write!(f, "bounded(length={length},k={k})"),
            Strategy::Bounded { length, phase1: None } => write!(f, "bounded(length={length})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Solved,
    /// Every attempt was unsatisfiable.
    Unsolved,
    /// Some attempt ran out of time and none succeeded.
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Solved => "solved",
            Outcome::Unsolved => "unsolved",
            Outcome::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Attempt {
    pub config: EncodingConfig,
    pub num_vars: usize,
    pub num_clauses: usize,
    pub result: &'static str,
    pub backend_calls: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub input: CubeState,
    pub strategy: Strategy,
    pub attempts: Vec<Attempt>,
    pub outcome: Outcome,
    maneuver: Option<Maneuver>,
    pub phase1_len: Option<usize>,
    pub phase2_len: Option<usize>,
}

impl SolveReport {
    fn new(input: CubeState, strategy: Strategy) -> SolveReport {
        SolveReport {
            input,
            strategy,
            attempts: Vec::new(),
            outcome: Outcome::Unsolved,
            maneuver: None,
            phase1_len: None,
            phase2_len: None,
        }
    }

    /// The solution; only present once it has been checked on the input.
    pub fn maneuver(&self) -> Option<&Maneuver> {
        self.maneuver.as_ref()
    }

    pub fn verified(&self) -> bool {
        self.maneuver.is_some()
    }

    pub fn total_seconds(&self) -> f64 {
        self.attempts.iter().map(|a| a.seconds).sum()
    }

    fn accept(&mut self, maneuver: Maneuver) -> Result<(), PlanError> {
        let check = verify_solution(&self.input, &maneuver);
        if !check.solves {
            return Err(PlanError::Verification(format!(
                "{maneuver} does not solve {}",
                self.input
            )));
        }
        let k = measured_phase1_len(&self.input, &maneuver);
        self.phase1_len = Some(k);
        self.phase2_len = Some(maneuver.len() - k);
        self.maneuver = Some(maneuver);
        self.outcome = Outcome::Solved;
        Ok(())
    }
}

/// Result of replaying a maneuver; steps count moves applied (0 = input).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verification {
    pub solves: bool,
    pub first_solved_step: Option<usize>,
    pub first_h_step: Option<usize>,
}

pub fn verify_solution(state: &CubeState, maneuver: &Maneuver) -> Verification {
    let mut current = *state;
    let mut first_solved_step = current.is_solved().then_some(0);
    let mut first_h_step = current.is_h_state().then_some(0);
    for (i, &m) in maneuver.moves().iter().enumerate() {
        current = current.apply_move(m);
        if first_solved_step.is_none() && current.is_solved() {
            first_solved_step = Some(i + 1);
        }
        if first_h_step.is_none() && current.is_h_state() {
            first_h_step = Some(i + 1);
        }
    }
    Verification {
        solves: current.is_solved(),
        first_solved_step,
        first_h_step,
    }
}

/// Smallest `i` such that the state after `i` moves is in the phase-2
/// subgroup and every later move is a phase-2 move.
pub fn measured_phase1_len(state: &CubeState, maneuver: &Maneuver) -> usize {
    let moves = maneuver.moves();
    let mut current = *state;
    for i in 0..=moves.len() {
        if current.is_h_state() && moves[i..].iter().all(|m| m.in_a10()) {
            return i;
        }
        if i < moves.len() {
            current = current.apply_move(moves[i]);
        }
    }
    moves.len()
}

/// Encoding knobs plus the solving engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planner {
    /// Source of pruning, AMO, last-move and bit-scheme settings; the
    /// horizon, mode and phase split are set per attempt.
    pub template: EncodingConfig,
    pub engine: Engine,
}

impl Default for Planner {
    fn default() -> Self {
        Planner {
            template: EncodingConfig::exact(0),
            engine: Engine::default(),
        }
    }
}

impl Planner {
    pub fn new(engine: Engine) -> Planner {
        Planner {
            engine,
            ..Planner::default()
        }
    }

    fn config(&self, moves: usize, mode: Mode, phase1: Option<usize>) -> EncodingConfig {
        EncodingConfig {
            n_states: moves + 1,
            mode,
            phase1_len: phase1,
            color_bits: if phase1.is_some() {
                self.template.color_bits
            } else {
                ColorBits::ThreeEverywhere
            },
            last_move_constraint: mode == Mode::ExactLength && self.template.last_move_constraint,
            ..self.template.clone()
        }
    }

    fn attempt(
        &self,
        state: &CubeState,
        config: EncodingConfig,
        report: &mut SolveReport,
    ) -> Result<SolverResult, PlanError> {
        let start = Instant::now();
        let enc = encode(state, &config)?;
        let (result, backend_calls) = self.engine.run(&enc.formula)?;
        if let SolverResult::Sat(model) = &result {
            let decoded = enc.decode(model)?;
            if let Some(k) = config.phase1_len {
                check_phase_split(state, &decoded.maneuver, k)?;
            }
            report.accept(decoded.maneuver)?;
        }
        report.attempts.push(Attempt {
            num_vars: enc.formula.num_vars(),
            num_clauses: enc.formula.num_clauses(),
            config,
            result: result.label(),
            backend_calls,
            seconds: start.elapsed().as_secs_f64(),
        });
        Ok(result)
    }

    pub fn solve(&self, state: &CubeState, strategy: &Strategy) -> Result<SolveReport, PlanError> {
        match strategy {
            Strategy::OptimalShallow { max_length } => self.solve_optimal_shallow(state, *max_length),
            Strategy::TwoPhase { budget, sweep } => self.solve_two_phase(state, *budget, sweep),
            Strategy::Bounded { length, phase1 } => self.solve_bounded(state, *length, *phase1),
        }
    }

    /// Iterative deepening over exact-length encodings; the first
    /// satisfiable length is optimal within the canonical move space.
    pub fn solve_optimal_shallow(&self, state: &CubeState, max_length: usize) -> Result<SolveReport, PlanError> {
        if max_length > MAX_SHALLOW_LENGTH {
            return Err(PlanError::LengthGuard {
                requested: max_length,
                max: MAX_SHALLOW_LENGTH,
            });
        }
        let mut report = SolveReport::new(*state, Strategy::OptimalShallow { max_length });
        for length in 0..=max_length {
            match self.attempt(state, self.config(length, Mode::ExactLength, None), &mut report)? {
                SolverResult::Sat(_) => return Ok(report),
                SolverResult::Unsat => {}
                SolverResult::Unknown(_) => {
                    report.outcome = Outcome::Unknown;
                    return Ok(report);
                }
            }
        }
        Ok(report)
    }

    /// One phase-split attempt per `k` in `sweep`, in order, each allowing
    /// up to `budget` moves (exactly `budget` if the template is exact).
    pub fn solve_two_phase(&self, state: &CubeState, budget: usize, sweep: &[usize]) -> Result<SolveReport, PlanError> {
        if let Some(&k) = sweep.iter().find(|&&k| k >= budget) {
            return Err(PlanError::Sweep { phase1: k, budget });
        }
        let mut report = SolveReport::new(
            *state,
            Strategy::TwoPhase {
                budget,
                sweep: sweep.to_vec(),
            },
        );
        if state.is_solved() {
            report.accept(Maneuver::new())?;
            return Ok(report);
        }
        let mut unknown = false;
        for &k in sweep {
            match self.attempt(state, self.config(budget, self.template.mode, Some(k)), &mut report)? {
                SolverResult::Sat(_) => return Ok(report),
                SolverResult::Unsat => {}
                SolverResult::Unknown(_) => unknown = true,
            }
        }
        if unknown {
            report.outcome = Outcome::Unknown;
        }
        Ok(report)
    }

    /// A single encoding of `length` moves in the template's mode.
    pub fn solve_bounded(
        &self,
        state: &CubeState,
        length: usize,
        phase1: Option<usize>,
    ) -> Result<SolveReport, PlanError> {
        let mut report = SolveReport::new(*state, Strategy::Bounded { length, phase1 });
        if let SolverResult::Unknown(_) =
            self.attempt(state, self.config(length, self.template.mode, phase1), &mut report)?
        {
            report.outcome = Outcome::Unknown;
        }
        Ok(report)
    }
}

fn check_phase_split(state: &CubeState, maneuver: &Maneuver, k: usize) -> Result<(), PlanError> {
    let moves = maneuver.moves();
    let boundary = k.min(moves.len());
    if !moves[boundary..].iter().all(|m| m.in_a10()) {
        return Err(PlanError::Verification(format!(
            "{maneuver}: move after step {k} outside the phase-2 set"
        )));
    }
    let at_boundary = state.apply_maneuver(&Maneuver(moves[..boundary].to_vec()));
    if !at_boundary.is_h_state() {
        return Err(PlanError::Verification(format!(
            "{maneuver}: state after {boundary} moves is not in H"
        )));
    }
    Ok(())
}

/// Optimal shallow search with default encoding settings.
pub fn solve_optimal_shallow(state: &CubeState, max_length: usize, engine: Engine) -> Result<SolveReport, PlanError> {
    Planner::new(engine).solve_optimal_shallow(state, max_length)
}

/// Two-phase sweep in at-most mode with default encoding settings.
pub fn solve_two_phase(
    state: &CubeState,
    budget: usize,
    sweep: &[usize],
    engine: Engine,
) -> Result<SolveReport, PlanError> {
    let planner = Planner {
        template: EncodingConfig::at_most(0),
        engine,
    };
    planner.solve_two_phase(state, budget, sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{parse_maneuver, superflip_state};

    fn mv(s: &str) -> Maneuver {
        parse_maneuver(s).unwrap()
    }

    #[test]
    fn verification_report() {
        let flip = superflip_state();
        let published = mv("B F' L' U2 F2 L D' U' F' R' L F2 U2 R2 B2 U R2 D' B2 U' R2");
        assert!(verify_solution(&flip, &published).solves);

        let v = verify_solution(&CubeState::solved(), &mv("U"));
        assert!(!v.solves);
        assert_eq!(v.first_solved_step, Some(0));
        assert_eq!(v.first_h_step, Some(0));

        let scramble = mv("R U2 F' L");
        let s = CubeState::solved().apply_maneuver(&scramble);
        let v = verify_solution(&s, &scramble.inverse());
        assert!(v.solves);
        assert_eq!(v.first_solved_step, Some(4));
    }

    #[test]
    fn measured_boundary() {
        let s = CubeState::solved().apply_maneuver(&mv("U R"));
        assert_eq!(measured_phase1_len(&s, &mv("R' U'")), 1);
        let s = CubeState::solved().apply_maneuver(&mv("U2 D"));
        assert_eq!(measured_phase1_len(&s, &mv("D' U2")), 0);
        // an H state reached early but left again does not count
        let s = CubeState::solved().apply_maneuver(&mv("F R2 F'"));
        assert_eq!(measured_phase1_len(&s, &mv("F R2 F'")), 3);
    }

    #[test]
    fn optimal_shallow_basics() {
        let r = solve_optimal_shallow(&CubeState::solved(), 3, Engine::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Solved);
        assert!(r.maneuver().unwrap().is_empty());
        assert_eq!(r.attempts.len(), 1);

        let s = CubeState::solved().apply_maneuver(&mv("U2"));
        let r = solve_optimal_shallow(&s, 3, Engine::default()).unwrap();
        assert_eq!(r.maneuver().unwrap().to_string(), "U2");
        assert_eq!(
            r.attempts.iter().map(|a| a.result).collect::<Vec<_>>(),
            vec!["unsat", "sat"]
        );

        let s = CubeState::solved().apply_maneuver(&mv("R U F"));
        let r = solve_optimal_shallow(&s, 2, Engine::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Unsolved);
        assert!(r.maneuver().is_none());
        assert!(solve_optimal_shallow(&s, 14, Engine::default()).is_err());
    }

    #[test]
    fn two_phase_basics() {
        let r = solve_two_phase(&CubeState::solved(), 8, &[2, 3], Engine::default()).unwrap();
        assert_eq!(r.outcome, Outcome::Solved);
        assert!(r.attempts.is_empty());

        let s = CubeState::solved().apply_maneuver(&mv("U R2 D'"));
        let r = solve_two_phase(&s, 4, &[0], Engine::default()).unwrap();
        let m = r.maneuver().unwrap();
        assert!(m.moves().iter().all(|m| m.in_a10()));
        assert_eq!(r.phase1_len, Some(0));

        let s = CubeState::solved().apply_maneuver(&mv("F U R"));
        let r = solve_two_phase(&s, 6, &[2, 3], Engine::default()).unwrap();
        let m = r.maneuver().unwrap();
        assert!(verify_solution(&s, m).solves);
        assert!(m.len() <= 6);
        assert!(solve_two_phase(&s, 6, &[6], Engine::default()).is_err());
    }

    #[test]
    fn decomposing_engine() {
        let s = CubeState::solved().apply_maneuver(&mv("L D"));
        let r = solve_optimal_shallow(&s, 3, Engine::Decompose(DecomposeConfig::default())).unwrap();
        assert_eq!(r.maneuver().unwrap().len(), 2);
    }
}
