//! CNF formulas with deterministic variable allocation, clause tags and
//! cardinality encoders.

mod card;
mod dimacs;

use std::fmt;
use std::ops::Not;

pub use card::{
    encode_alo, encode_amo, encode_amo_pairwise, encode_amo_product, encode_conditional_exactly_one,
    encode_exactly_one, product_shape, AmoMethod,
};
pub use dimacs::{from_dimacs, to_dimacs, write_varmap};

use crate::error::CnfError;

/// A propositional variable, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    /// # Panics
    /// If `id` is zero.
    pub fn new(id: u32) -> Var {
        assert!(id >= 1, "variable ids start at 1");
        Var(id)
    }

    pub fn id(self) -> u32 {
        self.0
    }

    /// 0-based index for dense tables.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn pos(self) -> Lit {
        Lit::new(self, true)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A variable or its negation, packed as `2 * index + negated`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Lit {
        Lit(((var.0 - 1) << 1) | u32::from(!positive))
    }

    pub fn from_dimacs(value: i32) -> Option<Lit> {
        (value != 0).then(|| Lit::new(Var(value.unsigned_abs()), value > 0))
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().0 as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> Var {
        Var((self.0 >> 1) + 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Dense code in `0..2 * num_vars`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn from_code(code: usize) -> Lit {
        Lit(code as u32)
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Marks clauses the decomposing solver may branch on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClauseTag {
    /// The at-least-one clause over the six move types of a step.
    MoveTypeEo { step: usize },
}

impl fmt::Display for ClauseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClauseTag::MoveTypeEo { step } => write!(f, "move-type-eo {step}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub lits: Vec<Lit>,
    pub tag: Option<ClauseTag>,
}

impl Clause {
    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }
}

/// Index of a clause in its formula.
pub type ClauseId = usize;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Formula {
    clauses: Vec<Clause>,
    labels: Vec<String>,
}

impl Formula {
    pub fn new() -> Formula {
        Formula::default()
    }

    /// Allocates the next variable id.
    pub fn new_var(&mut self, label: impl Into<String>) -> Var {
        self.labels.push(label.into());
        Var(self.labels.len() as u32)
    }

    /// Allocates an auxiliary variable labelled `<prefix>#<id>`.
    pub fn new_aux(&mut self, prefix: &str) -> Var {
        let id = self.labels.len() + 1;
        self.new_var(format!("{prefix}#{id}"))
    }

    pub fn num_vars(&self) -> usize {
        self.labels.len()
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn label(&self, var: Var) -> Option<&str> {
        self.labels.get(var.index()).map(String::as_str)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, id: ClauseId) -> &Clause {
        &self.clauses[id]
    }

    /// Appends a clause. Empty clauses, unknown variables, repeated
    /// literals and complementary pairs are rejected.
    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = Lit>) -> Result<ClauseId, CnfError> {
        self.push(lits.into_iter().collect(), None)
    }

    pub fn add_tagged_clause(
        &mut self,
        lits: impl IntoIterator<Item = Lit>,
        tag: ClauseTag,
    ) -> Result<ClauseId, CnfError> {
        self.push(lits.into_iter().collect(), Some(tag))
    }

    pub fn set_tag(&mut self, id: ClauseId, tag: ClauseTag) {
        self.clauses[id].tag = Some(tag);
    }

    fn push(&mut self, lits: Vec<Lit>, tag: Option<ClauseTag>) -> Result<ClauseId, CnfError> {
        if lits.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        for (i, &l) in lits.iter().enumerate() {
            if l.var().index() >= self.labels.len() {
                return Err(CnfError::UnknownVariable(l.var().id()));
            }
            for &other in &lits[..i] {
                if other == l {
                    return Err(CnfError::DuplicateLiteral(l.to_dimacs()));
                }
                if other == !l {
                    return Err(CnfError::Tautology(l.var().id()));
                }
            }
        }
        self.clauses.push(Clause { lits, tag });
        Ok(self.clauses.len() - 1)
    }

    /// Clause ids carrying a tag, in emission order.
    pub fn tagged(&self) -> impl Iterator<Item = (ClauseId, ClauseTag)> + '_ {
        self.clauses
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.tag.map(|t| (i, t)))
    }
}

/// Partial truth assignment indexed by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new(num_vars: usize) -> Assignment {
        Assignment {
            values: vec![None; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.values.len()
    }

    pub fn var_value(&self, var: Var) -> Option<bool> {
        self.values.get(var.index()).copied().flatten()
    }

    /// Truth value of a literal, if its variable is assigned.
    pub fn value(&self, lit: Lit) -> Option<bool> {
        self.var_value(lit.var()).map(|v| v == lit.is_positive())
    }

    /// Makes `lit` true. Returns false if it was already false.
    pub fn assign(&mut self, lit: Lit) -> bool {
        match self.value(lit) {
            Some(v) => v,
            None => {
                self.values[lit.var().index()] = Some(lit.is_positive());
                true
            }
        }
    }

    pub fn unassign(&mut self, var: Var) {
        self.values[var.index()] = None;
    }

    /// All currently true literals, by variable order.
    pub fn true_lits(&self) -> Vec<Lit> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| Lit::new(Var(i as u32 + 1), b)))
            .collect()
    }

    pub fn num_assigned(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }
}

/// Total assignment; entry `i` is the value of variable `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model(Vec<bool>);

impl Model {
    pub fn new(values: Vec<bool>) -> Model {
        Model(values)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    /// Value of `var`; variables beyond the model read as false.
    pub fn value(&self, var: Var) -> bool {
        self.0.get(var.index()).copied().unwrap_or(false)
    }

    pub fn lit_value(&self, lit: Lit) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.0[var.index()] = value;
    }

    /// Signed DIMACS literals, one per variable.
    pub fn to_dimacs_lits(&self) -> Vec<i32> {
        (1..=self.0.len() as u32)
            .map(|v| Lit::new(Var(v), self.value(Var(v))).to_dimacs())
            .collect()
    }
}

impl Formula {
    /// True iff every clause has a literal the model makes true.
    pub fn is_satisfied_by(&self, model: &Model) -> bool {
        self.clauses.iter().all(|c| c.lits.iter().any(|&l| model.lit_value(l)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn allocation_is_sequential() {
        let mut f = Formula::new();
        let a = f.new_var("a");
        let b = f.new_var("b");
        assert_eq!(a.id(), 1);
        assert_eq!(b.id(), 2);
        assert_eq!(f.label(b), Some("b"));
    }

    #[test]
    fn literal_packing() {
        let v = Var::new(7);
        assert_eq!(v.pos().to_dimacs(), 7);
        assert_eq!(v.neg().to_dimacs(), -7);
        assert_eq!(!!v.pos(), v.pos());
        assert_eq!(Lit::from_dimacs(-7), Some(v.neg()));
        assert_eq!(Lit::from_dimacs(0), None);
        assert_eq!(v.neg().var(), v);
    }

    #[test]
    fn rejects_malformed_clauses() {
        let mut f = Formula::new();
        let a = f.new_var("a");
        assert_eq!(f.add_clause([]), Err(CnfError::EmptyClause));
        assert_eq!(f.add_clause([a.pos(), a.pos()]), Err(CnfError::DuplicateLiteral(1)));
        assert_eq!(f.add_clause([a.pos(), a.neg()]), Err(CnfError::Tautology(1)));
        assert_eq!(f.add_clause([Var::new(2).pos()]), Err(CnfError::UnknownVariable(2)));
        assert_eq!(f.num_clauses(), 0);
    }

    #[test]
    fn assignment_basics() {
        let mut a = Assignment::new(3);
        let x = Var::new(2);
        assert_eq!(a.value(x.pos()), None);
        assert!(a.assign(x.neg()));
        assert_eq!(a.value(x.pos()), Some(false));
        assert!(!a.assign(x.pos()));
        assert_eq!(a.true_lits(), vec![x.neg()]);
    }
}
