//! Solving CNF formulas: propagation, the built-in CDCL solver and an
//! external-solver runner. Every satisfying model is checked against the
//! formula before it is returned.

mod cdcl;
mod external;
mod propagate;

use std::path::PathBuf;
use std::sync::atomic::AtomicBool;
use std::time::{Duration, Instant};

pub use external::{parse_output, Reply};
pub use propagate::{failed_literal_probe, propagate, Conflict, ProbeOutcome, Propagator};

use crate::cnf::{Formula, Lit, Model};
use crate::error::BackendError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnknownReason {
    Timeout,
    /// A stop signal arrived (a sibling found a model).
    Cancelled,
    /// The external solver answered `s UNKNOWN`.
    Solver,
    /// The external solver exited without a status line.
    Exit(Option<i32>),
}

impl std::fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnknownReason::Timeout => f.write_str("timeout"),
            UnknownReason::Cancelled => f.write_str("cancelled"),
            UnknownReason::Solver => f.write_str("solver gave up"),
            UnknownReason::Exit(Some(code)) => write!(f, "solver exited with status {code}"),
            UnknownReason::Exit(None) => f.write_str("solver killed by a signal"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverResult {
    Sat(Model),
    Unsat,
    Unknown(UnknownReason),
}

impl SolverResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolverResult::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolverResult::Unsat)
    }

    pub fn model(&self) -> Option<&Model> {
        match self {
            SolverResult::Sat(m) => Some(m),
            _ => None,
        }
    }

    /// `sat`, `unsat` or `unknown`.
    pub fn label(&self) -> &'static str {
        match self {
            SolverResult::Sat(_) => "sat",
            SolverResult::Unsat => "unsat",
            SolverResult::Unknown(_) => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BackendKind {
    Builtin,
    /// A DIMACS solver. `{}` in the argument template is replaced by the CNF
    /// path; without a placeholder the path is appended.
    External {
        path: PathBuf,
        args: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackendConfig {
    pub kind: BackendKind,
    pub timeout: Duration,
    /// Fixed branching order. Otherwise `seed` perturbs the initial order.
    pub deterministic: bool,
    pub seed: u64,
}

impl Default for BackendConfig {
    fn default() -> Self {
        BackendConfig {
            kind: BackendKind::Builtin,
            timeout: Duration::from_secs(60),
            deterministic: true,
            seed: 0,
        }
    }
}

impl BackendConfig {
    pub fn builtin() -> BackendConfig {
        BackendConfig::default()
    }

    pub fn external(path: impl Into<PathBuf>, args: Vec<String>) -> BackendConfig {
        BackendConfig {
            kind: BackendKind::External {
                path: path.into(),
                args,
            },
            ..BackendConfig::default()
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> BackendConfig {
        self.timeout = timeout;
        self
    }

    pub fn validate(&self) -> Result<(), BackendError> {
        if self.timeout.is_zero() {
            return Err(BackendError::Config("timeout must be positive".into()));
        }
        if let BackendKind::External { path, .. } = &self.kind {
            if path.as_os_str().is_empty() {
                return Err(BackendError::Config("external backend needs a solver path".into()));
            }
        }
        Ok(())
    }

    /// Deadline for a run starting now.
    pub fn deadline(&self) -> Instant {
        Instant::now() + self.timeout
    }
}

/// Limits shared by nested solver calls: an absolute deadline and an
/// optional stop flag.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget<'a> {
    pub deadline: Option<Instant>,
    pub stop: Option<&'a AtomicBool>,
}

/// True iff every clause has a true literal under `model`.
pub fn verify_model(formula: &Formula, model: &Model) -> bool {
    formula.is_satisfied_by(model)
}

fn checked(formula: &Formula, model: Model) -> Result<SolverResult, BackendError> {
    match formula
        .clauses()
        .iter()
        .position(|c| !c.lits.iter().any(|&l| model.lit_value(l)))
    {
        Some(clause) => Err(BackendError::InvalidModel { clause }),
        None => Ok(SolverResult::Sat(model)),
    }
}

fn assumptions_hold(model: &Model, assumptions: &[Lit]) -> Result<(), BackendError> {
    if assumptions.iter().all(|&l| model.lit_value(l)) {
        Ok(())
    } else {
        Err(BackendError::InvalidModel { clause: usize::MAX })
    }
}

/// Complete search with the built-in solver under `config.timeout`.
pub fn solve_builtin(
    formula: &Formula,
    assumptions: &[Lit],
    config: &BackendConfig,
) -> Result<SolverResult, BackendError> {
    let budget = Budget {
        deadline: Some(config.deadline()),
        stop: None,
    };
    solve_builtin_within(formula, assumptions, config, &budget)
}

/// Built-in search bounded by `budget` (and by `config.timeout`).
pub fn solve_builtin_within(
    formula: &Formula,
    assumptions: &[Lit],
    config: &BackendConfig,
    budget: &Budget,
) -> Result<SolverResult, BackendError> {
    config.validate()?;
    let deadline = earliest(budget.deadline, config.deadline());
    let limits = cdcl::Limits {
        deadline: Some(deadline),
        stop: budget.stop,
    };
    let jitter = (!config.deterministic).then_some(config.seed);
    let mut solver = cdcl::Solver::new(formula, jitter);
    match solver.solve(assumptions, &limits) {
        cdcl::Outcome::Sat => {
            let model = solver.model();
            assumptions_hold(&model, assumptions)?;
            checked(formula, model)
        }
        cdcl::Outcome::Unsat => Ok(SolverResult::Unsat),
        cdcl::Outcome::Timeout => Ok(SolverResult::Unknown(UnknownReason::Timeout)),
        cdcl::Outcome::Cancelled => Ok(SolverResult::Unknown(UnknownReason::Cancelled)),
    }
}

fn earliest(a: Option<Instant>, b: Instant) -> Instant {
    a.map_or(b, |a| a.min(b))
}

/// Runs the configured external solver on `formula`.
pub fn solve_external(formula: &Formula, config: &BackendConfig) -> Result<SolverResult, BackendError> {
    let budget = Budget {
        deadline: Some(config.deadline()),
        stop: None,
    };
    solve_external_within(formula, &[], config, &budget)
}

/// External run with `assumptions` added as unit clauses.
pub fn solve_external_within(
    formula: &Formula,
    assumptions: &[Lit],
    config: &BackendConfig,
    budget: &Budget,
) -> Result<SolverResult, BackendError> {
    config.validate()?;
    let BackendKind::External { path, args } = &config.kind else {
        return Err(BackendError::Config("not an external backend".into()));
    };
    let budget = Budget {
        deadline: Some(earliest(budget.deadline, config.deadline())),
        stop: budget.stop,
    };
    external::run(formula, assumptions, &path.to_string_lossy(), args, &budget)
}

/// Dispatches on the backend kind.
pub fn solve_with(
    formula: &Formula,
    assumptions: &[Lit],
    config: &BackendConfig,
    budget: &Budget,
) -> Result<SolverResult, BackendError> {
    match config.kind {
        BackendKind::Builtin => solve_builtin_within(formula, assumptions, config, budget),
        BackendKind::External { .. } => solve_external_within(formula, assumptions, config, budget),
    }
}

pub fn solve(formula: &Formula, config: &BackendConfig) -> Result<SolverResult, BackendError> {
    let budget = Budget {
        deadline: Some(config.deadline()),
        stop: None,
    };
    solve_with(formula, &[], config, &budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Var;

    fn formula(num_vars: u32, clauses: &[&[i32]]) -> Formula {
        let mut f = Formula::new();
        for i in 1..=num_vars {
            f.new_var(format!("x{i}"));
        }
        for c in clauses {
            f.add_clause(c.iter().map(|&d| Lit::from_dimacs(d).unwrap())).unwrap();
        }
        f
    }

    fn builtin(f: &Formula) -> SolverResult {
        solve_builtin(f, &[], &BackendConfig::default()).unwrap()
    }

    #[test]
    fn trivial_cases() {
        assert!(builtin(&Formula::new()).is_sat());
        assert!(builtin(&formula(1, &[&[1], &[-1]])).is_unsat());
        let r = builtin(&formula(1, &[&[1]]));
        assert!(r.model().unwrap().value(Var::new(1)));
    }

    #[test]
    fn assumptions_restrict_models() {
        let f = formula(2, &[&[1, 2]]);
        let cfg = BackendConfig::default();
        let r = solve_builtin(&f, &[Var::new(1).neg()], &cfg).unwrap();
        assert!(r.model().unwrap().value(Var::new(2)));
        assert!(solve_builtin(&f, &[Var::new(1).neg(), Var::new(2).neg()], &cfg)
            .unwrap()
            .is_unsat());
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 5 pigeons, 4 holes
        let (p, h) = (5, 4);
        let var = |i: i32, j: i32| i * h + j + 1;
        let mut clauses: Vec<Vec<i32>> = (0..p).map(|i| (0..h).map(|j| var(i, j)).collect()).collect();
        for j in 0..h {
            for a in 0..p {
                for b in a + 1..p {
                    clauses.push(vec![-var(a, j), -var(b, j)]);
                }
            }
        }
        let refs: Vec<&[i32]> = clauses.iter().map(Vec::as_slice).collect();
        assert!(builtin(&formula((p * h) as u32, &refs)).is_unsat());
    }

    #[test]
    fn verify_model_basics() {
        let f = formula(2, &[&[1], &[-1, 2]]);
        assert!(verify_model(&f, &Model::new(vec![true, true])));
        assert!(!verify_model(&f, &Model::new(vec![false, true])));
        assert!(verify_model(&Formula::new(), &Model::new(vec![])));
    }

    #[test]
    fn config_validation() {
        assert!(BackendConfig::default()
            .with_timeout(Duration::ZERO)
            .validate()
            .is_err());
        assert!(BackendConfig::external("", vec![]).validate().is_err());
        assert!(BackendConfig::external("kissat", vec![]).validate().is_ok());
    }

    #[test]
    fn missing_binary_is_a_spawn_error() {
        let cfg = BackendConfig::external("/nonexistent/solver-binary", vec![]);
        assert!(matches!(
            solve_external(&formula(1, &[&[1]]), &cfg),
            Err(BackendError::Spawn { .. })
        ));
    }

    #[test]
    fn stop_flag_cancels() {
        let stop = AtomicBool::new(true);
        let budget = Budget {
            deadline: None,
            stop: Some(&stop),
        };
        let r = solve_builtin_within(&formula(1, &[&[1]]), &[], &BackendConfig::default(), &budget).unwrap();
        assert_eq!(r, SolverResult::Unknown(UnknownReason::Cancelled));
    }
}
