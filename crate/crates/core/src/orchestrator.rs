//! Recursive decomposition over move-type clauses.
//!
//! At each node the earliest unsatisfied tagged clause is split into one
//! subproblem per free literal. Nodes below the depth limit recurse; the
//! rest are handed to a backend with the node's assignment as assumptions.
//! The tagged clause is an at-least-one constraint, so the subproblems
//! together cover every model.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::cnf::{Assignment, ClauseId, ClauseTag, Formula, Lit, Var};
use crate::error::{BackendError, OrchestratorError};
use crate::sat::{solve_with, BackendConfig, Budget, ProbeOutcome, Propagator, SolverResult, UnknownReason};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeConfig {
    /// Largest number of free literals a branch clause may have.
    pub width: usize,
    pub max_depth: usize,
    pub backend: BackendConfig,
    /// Threads sharing the top-level subproblems; 1 runs serially.
    pub workers: usize,
    /// Branch in clause order. Otherwise the order is rotated by `seed`.
    pub deterministic: bool,
    pub seed: u64,
    /// Failed-literal probing at every node.
    pub lookahead: bool,
    /// Probe candidates; `None` probes every move-type variable.
    pub probe_vars: Option<Vec<Var>>,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig {
            width: 6,
            max_depth: 4,
            backend: BackendConfig::default(),
            workers: 1,
            deterministic: true,
            seed: 0,
            lookahead: false,
            probe_vars: None,
        }
    }
}

impl DecomposeConfig {
    pub fn validate(&self) -> Result<(), OrchestratorError> {
        if self.width < 2 {
            return Err(OrchestratorError::Config("branch width must be at least 2".into()));
        }
        if self.max_depth < 1 {
            return Err(OrchestratorError::Config("depth limit must be at least 1".into()));
        }
        if self.workers < 1 {
            return Err(OrchestratorError::Config("need at least one worker".into()));
        }
        self.backend
            .validate()
            .map_err(|e| OrchestratorError::Config(e.to_string()))
    }
}

/// One backend call at a leaf of the decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafTrace {
    /// Branch literals from the root, as DIMACS integers.
    pub path: Vec<i32>,
    pub result: &'static str,
    pub seconds: f64,
}

impl LeafTrace {
    /// `leaf,<path>,<result>,<seconds>` with the path joined by spaces.
    pub fn to_log_line(&self) -> String {
        let path: Vec<String> = self.path.iter().map(i32::to_string).collect();
        format!("leaf,{},{},{:.6}", path.join(" "), self.result, self.seconds)
    }
}

#[derive(Debug, Clone)]
pub struct Decomposed {
    pub result: SolverResult,
    pub leaves: Vec<LeafTrace>,
}

/// Earliest-step unsatisfied tagged clause with between 2 and `max_free`
/// free literals, and those literals in clause order.
pub fn find_branch_clause(formula: &Formula, a: &Assignment, max_free: usize) -> Option<(ClauseId, Vec<Lit>)> {
    branch_among(formula, a, &tagged_by_step(formula), max_free)
}

fn tagged_by_step(formula: &Formula) -> Vec<(usize, ClauseId)> {
    let mut tagged: Vec<(usize, ClauseId)> = formula
        .tagged()
        .map(|(id, tag)| match tag {
            ClauseTag::MoveTypeEo { step } => (step, id),
        })
        .collect();
    tagged.sort();
    tagged
}

fn branch_among(
    formula: &Formula,
    a: &Assignment,
    tagged: &[(usize, ClauseId)],
    max_free: usize,
) -> Option<(ClauseId, Vec<Lit>)> {
    for &(_, id) in tagged {
        let lits = &formula.clause(id).lits;
        if lits.iter().any(|&l| a.value(l) == Some(true)) {
            continue;
        }
        let free: Vec<Lit> = lits.iter().copied().filter(|&l| a.value(l).is_none()).collect();
        if (2..=max_free).contains(&free.len()) {
            return Some((id, free));
        }
    }
    None
}

struct Search<'f> {
    prop: Propagator<'f>,
    tagged: Vec<(usize, ClauseId)>,
    probe_vars: Vec<Var>,
    config: &'f DecomposeConfig,
    traces: Mutex<Vec<LeafTrace>>,
}

impl<'f> Search<'f> {
    fn new(formula: &'f Formula, config: &'f DecomposeConfig) -> Search<'f> {
        let tagged = tagged_by_step(formula);
        let probe_vars = config.probe_vars.clone().unwrap_or_else(|| {
            let mut vars: Vec<Var> = tagged
                .iter()
                .flat_map(|&(_, id)| formula.clause(id).lits.iter().map(|l| l.var()))
                .collect();
            vars.dedup();
            vars
        });
        Search {
            prop: Propagator::new(formula),
            tagged,
            probe_vars,
            config,
            traces: Mutex::new(Vec::new()),
        }
    }

    fn branches(&self, a: &Assignment, level: usize) -> Option<Vec<Lit>> {
        let (_, mut lits) = branch_among(self.prop.formula(), a, &self.tagged, self.config.width)?;
        if !self.config.deterministic {
            let k = lits.len();
            lits.rotate_left((self.config.seed as usize).wrapping_add(level) % k);
        }
        Some(lits)
    }

    fn delegate(&self, a: &Assignment, path: &[Lit], budget: &Budget) -> Result<SolverResult, OrchestratorError> {
        let start = Instant::now();
        let result = solve_with(self.prop.formula(), &a.true_lits(), &self.config.backend, budget)
            .map_err(|source| self.error(path, source))?;
        self.traces.lock().unwrap().push(LeafTrace {
            path: path.iter().map(|l| l.to_dimacs()).collect(),
            result: result.label(),
            seconds: start.elapsed().as_secs_f64(),
        });
        Ok(result)
    }

    fn error(&self, path: &[Lit], source: BackendError) -> OrchestratorError {
        OrchestratorError::Backend {
            path: path.iter().map(|l| l.to_dimacs()).collect(),
            source,
        }
    }

    fn interrupted(budget: &Budget) -> Option<UnknownReason> {
        if budget.stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
            return Some(UnknownReason::Cancelled);
        }
        budget
            .deadline
            .filter(|&d| Instant::now() >= d)
            .map(|_| UnknownReason::Timeout)
    }

    /// One node: optional probing, then branching or delegation.
    fn node(
        &self,
        a: &mut Assignment,
        level: usize,
        path: &mut Vec<Lit>,
        budget: &Budget,
    ) -> Result<SolverResult, OrchestratorError> {
        if self.config.lookahead && self.prop.probe(a, &self.probe_vars) == ProbeOutcome::Conflict {
            return Ok(SolverResult::Unsat);
        }
        let Some(lits) = self.branches(a, level) else {
            return self.delegate(a, path, budget);
        };
        let mut unknown = None;
        for lit in lits {
            match self.branch(a, lit, level, path, budget)? {
                SolverResult::Sat(model) => return Ok(SolverResult::Sat(model)),
                SolverResult::Unsat => {}
                SolverResult::Unknown(reason) => unknown = Some(reason),
            }
        }
        Ok(unknown.map_or(SolverResult::Unsat, SolverResult::Unknown))
    }

    fn branch(
        &self,
        a: &Assignment,
        lit: Lit,
        level: usize,
        path: &mut Vec<Lit>,
        budget: &Budget,
    ) -> Result<SolverResult, OrchestratorError> {
        if let Some(reason) = Self::interrupted(budget) {
            return Ok(SolverResult::Unknown(reason));
        }
        let mut child = a.clone();
        if self.prop.assume(&mut child, &[lit]).is_err() {
            return Ok(SolverResult::Unsat);
        }
        path.push(lit);
        let result = if level < self.config.max_depth {
            self.node(&mut child, level + 1, path, budget)
        } else {
            self.delegate(&child, path, budget)
        };
        path.pop();
        result
    }
}

/// Propagates at the root, then decomposes. With more than one worker the
/// root's subproblems run concurrently and the first model stops the rest.
pub fn solve(formula: &Formula, config: &DecomposeConfig) -> Result<Decomposed, OrchestratorError> {
    config.validate()?;
    let budget = Budget {
        deadline: Some(config.backend.deadline()),
        stop: None,
    };
    let search = Search::new(formula, config);
    let mut root = Assignment::new(formula.num_vars());
    if search.prop.propagate(&mut root).is_err() {
        return Ok(Decomposed {
            result: SolverResult::Unsat,
            leaves: Vec::new(),
        });
    }
    let result = if config.workers <= 1 {
        search.node(&mut root, 1, &mut Vec::new(), &budget)?
    } else {
        parallel_root(&search, &mut root, &budget)?
    };
    let mut leaves = search.traces.into_inner().unwrap();
    if config.workers > 1 {
        leaves.sort_by(|a, b| a.path.cmp(&b.path));
    }
    Ok(Decomposed { result, leaves })
}

fn parallel_root(search: &Search, root: &mut Assignment, budget: &Budget) -> Result<SolverResult, OrchestratorError> {
    if search.config.lookahead && search.prop.probe(root, &search.probe_vars) == ProbeOutcome::Conflict {
        return Ok(SolverResult::Unsat);
    }
    let Some(lits) = search.branches(root, 1) else {
        return search.delegate(root, &[], budget);
    };
    let stop = AtomicBool::new(false);
    let shared = Budget {
        deadline: budget.deadline,
        stop: Some(&stop),
    };
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<SolverResult, OrchestratorError>>>> = Mutex::new(vec![None; lits.len()]);
    let root = &*root;
    std::thread::scope(|scope| {
        for _ in 0..search.config.workers.min(lits.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= lits.len() {
                    break;
                }
                let outcome = search.branch(root, lits[i], 1, &mut Vec::new(), &shared);
                if matches!(outcome, Ok(SolverResult::Sat(_)) | Err(_)) {
                    stop.store(true, Ordering::Relaxed);
                }
                results.lock().unwrap()[i] = Some(outcome);
            });
        }
    });
    let results: Vec<Result<SolverResult, OrchestratorError>> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every branch ran"))
        .collect();
    let mut unknown = None;
    let mut error = None;
    for r in results {
        match r {
            Ok(SolverResult::Sat(model)) => return Ok(SolverResult::Sat(model)),
            Ok(SolverResult::Unsat) => {}
            Ok(SolverResult::Unknown(reason)) => unknown = Some(reason),
            Err(e) => error = error.or(Some(e)),
        }
    }
    if let Some(e) = error {
        return Err(e);
    }
    Ok(unknown.map_or(SolverResult::Unsat, SolverResult::Unknown))
}
