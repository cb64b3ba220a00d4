//! Unit propagation over occurrence lists and failed-literal probing.

use crate::cnf::{Assignment, ClauseId, Formula, Lit, Var};

/// A clause every literal of which is false.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    pub clause: ClauseId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbeOutcome {
    /// Literals fixed by probing and the propagation that followed.
    Implied(Vec<Lit>),
    /// Both polarities of some candidate fail: the formula is unsatisfiable
    /// under the given assignment.
    Conflict,
}

/// Read-only propagation index over a formula. Cheap to share between
/// threads; all mutable state lives in the caller's [`Assignment`].
pub struct Propagator<'f> {
    formula: &'f Formula,
    /// Clauses containing each literal, by literal code.
    occurs: Vec<Vec<ClauseId>>,
}

enum Status {
    Satisfied,
    Conflict,
    Unit(Lit),
    Open,
}

impl<'f> Propagator<'f> {
    pub fn new(formula: &'f Formula) -> Propagator<'f> {
        let mut occurs = vec![Vec::new(); 2 * formula.num_vars()];
        for (id, clause) in formula.clauses().iter().enumerate() {
            for &l in &clause.lits {
                occurs[l.code()].push(id);
            }
        }
        Propagator { formula, occurs }
    }

    pub fn formula(&self) -> &'f Formula {
        self.formula
    }

    fn status(&self, id: ClauseId, a: &Assignment) -> Status {
        let mut free = None;
        let mut open = 0;
        for &l in &self.formula.clause(id).lits {
            match a.value(l) {
                Some(true) => return Status::Satisfied,
                Some(false) => {}
                None => {
                    open += 1;
                    free = Some(l);
                }
            }
        }
        match (open, free) {
            (0, _) => Status::Conflict,
            (1, Some(l)) => Status::Unit(l),
            _ => Status::Open,
        }
    }

    /// Unit-propagation fixpoint of `a`, scanning every clause. Returns the
    /// literals it assigned; on conflict `a` is left unchanged.
    pub fn propagate(&self, a: &mut Assignment) -> Result<Vec<Lit>, Conflict> {
        let mut trail = Vec::new();
        for id in 0..self.formula.num_clauses() {
            match self.status(id, a) {
                Status::Conflict => return self.undo(a, trail, id),
                Status::Unit(l) => {
                    a.assign(l);
                    trail.push(l);
                }
                _ => {}
            }
        }
        self.run(a, trail, 0)
    }

    /// Asserts `lits` on top of a fixpoint and propagates their
    /// consequences. Returns every literal newly assigned (including `lits`);
    /// on conflict `a` is left unchanged.
    pub fn assume(&self, a: &mut Assignment, lits: &[Lit]) -> Result<Vec<Lit>, Conflict> {
        let mut trail = Vec::new();
        for &l in lits {
            match a.value(l) {
                Some(true) => {}
                Some(false) => {
                    // report a clause mentioning the literal if one exists
                    let clause = self.occurs[(!l).code()].first().or(self.occurs[l.code()].first());
                    return self.undo(a, trail, clause.copied().unwrap_or(0));
                }
                None => {
                    a.assign(l);
                    trail.push(l);
                }
            }
        }
        self.run(a, trail, 0)
    }

    fn run(&self, a: &mut Assignment, mut trail: Vec<Lit>, mut head: usize) -> Result<Vec<Lit>, Conflict> {
        while head < trail.len() {
            let falsified = !trail[head];
            head += 1;
            for &id in &self.occurs[falsified.code()] {
                match self.status(id, a) {
                    Status::Conflict => return self.undo(a, trail, id),
                    Status::Unit(l) => {
                        a.assign(l);
                        trail.push(l);
                    }
                    _ => {}
                }
            }
        }
        Ok(trail)
    }

    fn undo(&self, a: &mut Assignment, trail: Vec<Lit>, clause: ClauseId) -> Result<Vec<Lit>, Conflict> {
        for l in trail {
            a.unassign(l.var());
        }
        Err(Conflict { clause })
    }

    /// Single failed-literal probing to a fixpoint: for each unassigned
    /// candidate and polarity, a propagation conflict asserts the opposite
    /// literal. `a` must be a propagation fixpoint; on success it is
    /// extended by the returned literals.
    pub fn probe(&self, a: &mut Assignment, candidates: &[Var]) -> ProbeOutcome {
        let mut implied = Vec::new();
        loop {
            let mut changed = false;
            for &v in candidates {
                for lit in [v.pos(), v.neg()] {
                    if a.var_value(v).is_some() {
                        break;
                    }
                    let mut scratch = a.clone();
                    if self.assume(&mut scratch, &[lit]).is_ok() {
                        continue;
                    }
                    match self.assume(a, &[!lit]) {
                        Ok(lits) => {
                            implied.extend(lits);
                            changed = true;
                        }
                        Err(_) => return ProbeOutcome::Conflict,
                    }
                }
            }
            if !changed {
                return ProbeOutcome::Implied(implied);
            }
        }
    }
}

/// Unit-propagation fixpoint of `a` under `formula`.
pub fn propagate(formula: &Formula, a: &mut Assignment) -> Result<Vec<Lit>, Conflict> {
    Propagator::new(formula).propagate(a)
}

/// Failed-literal probing of `candidates` after propagating `a`.
pub fn failed_literal_probe(formula: &Formula, a: &mut Assignment, candidates: &[Var]) -> ProbeOutcome {
    let p = Propagator::new(formula);
    let mut implied = match p.propagate(a) {
        Ok(lits) => lits,
        Err(_) => return ProbeOutcome::Conflict,
    };
    match p.probe(a, candidates) {
        ProbeOutcome::Implied(more) => {
            implied.extend(more);
            ProbeOutcome::Implied(implied)
        }
        ProbeOutcome::Conflict => ProbeOutcome::Conflict,
    }
}
