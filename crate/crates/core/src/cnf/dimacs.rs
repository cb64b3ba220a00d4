//! DIMACS CNF text with the variable table and clause tags carried in
//! comment lines:
//!
//! ```text
//! c var <id> <label>
//! c tag <clause-index> move-type-eo <step>
//! p cnf <vars> <clauses>
//! ```

use std::fmt::Write as _;
use std::io::{self, Write};

use super::{ClauseTag, Formula, Lit};
use crate::error::CnfError;

pub fn to_dimacs(formula: &Formula) -> String {
    let mut out = String::new();
    for (i, label) in formula.labels().iter().enumerate() {
        let _ = writeln!(out, "c var {} {}", i + 1, label);
    }
    for (id, tag) in formula.tagged() {
        let _ = writeln!(out, "c tag {id} {tag}");
    }
    let _ = writeln!(out, "p cnf {} {}", formula.num_vars(), formula.num_clauses());
    for clause in formula.clauses() {
        for lit in &clause.lits {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// Variable-map sidecar: one `<id> <label>` line per variable.
pub fn write_varmap(formula: &Formula, mut out: impl Write) -> io::Result<()> {
    for (i, label) in formula.labels().iter().enumerate() {
        writeln!(out, "{} {}", i + 1, label)?;
    }
    Ok(())
}

pub fn from_dimacs(text: &str) -> Result<Formula, CnfError> {
    let err = |line: usize, message: String| CnfError::Dimacs { line, message };
    let mut header: Option<(usize, usize)> = None;
    let mut labels: Vec<(usize, String)> = Vec::new();
    let mut tags: Vec<(usize, ClauseTag)> = Vec::new();
    let mut clauses: Vec<(usize, Vec<Lit>)> = Vec::new();
    let mut pending: Vec<Lit> = Vec::new();
    let mut pending_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line == "%" {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let mut words = rest.split_whitespace();
            match words.next() {
                Some("var") => {
                    let id: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| err(line_no, "malformed variable comment".into()))?;
                    let label = words.collect::<Vec<_>>().join(" ");
                    labels.push((id, label));
                }
                Some("tag") => {
                    let parts: Vec<&str> = words.collect();
                    let tag = match parts.as_slice() {
                        [id, "move-type-eo", step] => {
                            let id = id.parse().map_err(|_| err(line_no, "bad tag clause index".into()))?;
                            let step = step.parse().map_err(|_| err(line_no, "bad tag step".into()))?;
                            (id, ClauseTag::MoveTypeEo { step })
                        }
                        _ => return Err(err(line_no, "malformed tag comment".into())),
                    };
                    tags.push(tag);
                }
                _ => {}
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate problem line".into()));
            }
            let parts: Vec<&str> = rest.split_whitespace().collect();
            match parts.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| err(line_no, "bad variable count".into()))?;
                    let c = c.parse().map_err(|_| err(line_no, "bad clause count".into()))?;
                    header = Some((v, c));
                }
                _ => return Err(err(line_no, "expected `p cnf <vars> <clauses>`".into())),
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(err(line_no, "clause before problem line".into()));
        };
        for token in line.split_whitespace() {
            let value: i32 = token
                .parse()
                .map_err(|_| err(line_no, format!("bad literal {token:?}")))?;
            if pending.is_empty() {
                pending_line = line_no;
            }
            match Lit::from_dimacs(value) {
                None => clauses.push((pending_line, std::mem::take(&mut pending))),
                Some(l) if l.var().id() as usize > num_vars => {
                    return Err(err(
                        line_no,
                        format!("variable {} exceeds header count {num_vars}", l.var()),
                    ))
                }
                Some(l) => pending.push(l),
            }
        }
    }
    let (num_vars, num_clauses) = header.ok_or_else(|| err(text.lines().count(), "missing problem line".into()))?;
    if !pending.is_empty() {
        return Err(err(pending_line, "clause not terminated by 0".into()));
    }
    if clauses.len() != num_clauses {
        return Err(err(
            text.lines().count(),
            format!("header declares {num_clauses} clauses, found {}", clauses.len()),
        ));
    }

    let mut names: Vec<Option<String>> = vec![None; num_vars];
    for (id, label) in labels {
        if id == 0 || id > num_vars {
            return Err(err(0, format!("label for unknown variable {id}")));
        }
        names[id - 1] = Some(label);
    }
    let mut formula = Formula::new();
    for (i, name) in names.into_iter().enumerate() {
        formula.new_var(name.unwrap_or_else(|| format!("x{}", i + 1)));
    }
    for (line, lits) in clauses {
        formula.add_clause(lits).map_err(|e| err(line, e.to_string()))?;
    }
    for (id, tag) in tags {
        if id >= formula.num_clauses() {
            return Err(err(0, format!("tag for unknown clause {id}")));
        }
        formula.set_tag(id, tag);
    }
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Var;

    fn sample() -> Formula {
        let mut f = Formula::new();
        let a = f.new_var("a");
        let b = f.new_var("b lab");
        f.add_clause([a.pos(), b.neg()]).unwrap();
        f.add_tagged_clause([b.pos()], ClauseTag::MoveTypeEo { step: 3 })
            .unwrap();
        f
    }

    #[test]
    fn empty_formula() {
        assert_eq!(to_dimacs(&Formula::new()), "p cnf 0 0\n");
        assert_eq!(from_dimacs("p cnf 0 0\n").unwrap(), Formula::new());
    }

    #[test]
    fn header_matches_counts() {
        let text = to_dimacs(&sample());
        assert!(text.contains("p cnf 2 2\n"));
        assert!(text.ends_with("1 -2 0\n2 0\n"));
    }

    #[test]
    fn round_trip() {
        let f = sample();
        assert_eq!(from_dimacs(&to_dimacs(&f)).unwrap(), f);
    }

    #[test]
    fn plain_dimacs_and_multiline_clauses() {
        let f = from_dimacs("c hello\np cnf 3 2\n1 -3\n 2 0 -1 0\n").unwrap();
        assert_eq!(f.num_clauses(), 2);
        assert_eq!(
            f.clause(0).lits.iter().map(|l| l.to_dimacs()).collect::<Vec<_>>(),
            vec![1, -3, 2]
        );
        assert_eq!(f.label(Var::new(3)), Some("x3"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = from_dimacs("p cnf 2 1\n1 x 0\n").unwrap_err();
        assert!(matches!(e, CnfError::Dimacs { line: 2, .. }), "{e}");
        let e = from_dimacs("p cnf 2 1\n1 3 0\n").unwrap_err();
        assert!(matches!(e, CnfError::Dimacs { line: 2, .. }), "{e}");
        let e = from_dimacs("1 2 0\n").unwrap_err();
        assert!(matches!(e, CnfError::Dimacs { line: 1, .. }), "{e}");
        assert!(from_dimacs("p cnf 2 2\n1 2 0\n").is_err());
    }

    #[test]
    fn varmap_sidecar() {
        let mut buf = Vec::new();
        write_varmap(&sample(), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1 a\n2 b lab\n");
    }
}
