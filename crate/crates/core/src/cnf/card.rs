//! At-least-one, at-most-one and exactly-one encodings.

use std::str::FromStr;

use super::{ClauseId, Formula, Lit};
use crate::error::CnfError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmoMethod {
    /// All n(n-1)/2 binary exclusions.
    Pairwise,
    /// One-level two-product encoding over a p x q grid of selectors.
    #[default]
    Product,
}

impl FromStr for AmoMethod {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pairwise" => Ok(AmoMethod::Pairwise),
            "product" => Ok(AmoMethod::Product),
            other => Err(format!("unknown AMO method {other:?} (expected pairwise or product)")),
        }
    }
}

impl std::fmt::Display for AmoMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AmoMethod::Pairwise => "pairwise",
            AmoMethod::Product => "product",
        })
    }
}

/// One clause containing every literal.
pub fn encode_alo(formula: &mut Formula, lits: &[Lit]) -> Result<ClauseId, CnfError> {
    if lits.is_empty() {
        return Err(CnfError::EmptyClause);
    }
    formula.add_clause(lits.iter().copied())
}

pub fn encode_amo_pairwise(formula: &mut Formula, lits: &[Lit]) -> Result<(), CnfError> {
    for (i, &a) in lits.iter().enumerate() {
        for &b in &lits[i + 1..] {
            formula.add_clause([!a, !b])?;
        }
    }
    Ok(())
}

/// Grid shape `(p, q)` with `p = ceil(sqrt(n))` and `q = ceil(n / p)`.
pub fn product_shape(n: usize) -> (usize, usize) {
    let mut p = (n as f64).sqrt().ceil() as usize;
    // guard against float rounding either way
    while p * p < n {
        p += 1;
    }
    while p > 1 && (p - 1) * (p - 1) >= n {
        p -= 1;
    }
    let q = n.div_ceil(p);
    (p, q)
}

/// Two-product AMO: literal `k = i * q + j` (0-based) implies row selector
/// `u_i` and column selector `v_j`; both selector sets are pairwise AMO.
/// Emits `2n + p(p-1)/2 + q(q-1)/2` clauses over `p + q` fresh variables.
pub fn encode_amo_product(formula: &mut Formula, lits: &[Lit]) -> Result<(), CnfError> {
    let n = lits.len();
    if n < 2 {
        return Err(CnfError::ProductTooSmall(n));
    }
    let (p, q) = product_shape(n);
    let rows: Vec<Lit> = (0..p).map(|_| formula.new_aux("amo-u").pos()).collect();
    let cols: Vec<Lit> = (0..q).map(|_| formula.new_aux("amo-v").pos()).collect();
    for (k, &x) in lits.iter().enumerate() {
        formula.add_clause([!x, rows[k / q]])?;
        formula.add_clause([!x, cols[k % q]])?;
    }
    encode_amo_pairwise(formula, &rows)?;
    encode_amo_pairwise(formula, &cols)
}

pub fn encode_amo(formula: &mut Formula, lits: &[Lit], method: AmoMethod) -> Result<(), CnfError> {
    match method {
        AmoMethod::Product if lits.len() >= 2 => encode_amo_product(formula, lits),
        _ => encode_amo_pairwise(formula, lits),
    }
}

/// ALO plus the chosen AMO. Returns the id of the ALO clause.
pub fn encode_exactly_one(formula: &mut Formula, lits: &[Lit], method: AmoMethod) -> Result<ClauseId, CnfError> {
    let alo = encode_alo(formula, lits)?;
    encode_amo(formula, lits, method)?;
    Ok(alo)
}

/// `!guard | lits...` plus an unconditional pairwise AMO over `lits`.
pub fn encode_conditional_exactly_one(formula: &mut Formula, guard: Lit, lits: &[Lit]) -> Result<(), CnfError> {
    if lits.is_empty() {
        return Err(CnfError::EmptyClause);
    }
    formula.add_clause(std::iter::once(!guard).chain(lits.iter().copied()))?;
    encode_amo_pairwise(formula, lits)
}
