//! Corpus runs with one CSV row per input line.

use std::fmt::Write as _;

use super::{Outcome, Planner, Strategy};
use crate::cube::{parse_facelets, parse_maneuver, CubeState, FACELETS};

pub const CSV_HEADER: &str = "id,phase1_len,phase2_len,total_len,result,seconds";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    /// 1-based line number in the corpus.
    pub id: usize,
    pub phase1_len: Option<usize>,
    pub phase2_len: Option<usize>,
    pub total_len: Option<usize>,
    /// `solved`, `unsolved`, `unknown` or `error`.
    pub result: String,
    /// Sum of the attempt times.
    pub seconds: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        let opt = |v: Option<usize>| v.map(|n| n.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.3}",
                r.id,
                opt(r.phase1_len),
                opt(r.phase2_len),
                opt(r.total_len),
                r.result,
                r.seconds
            );
        }
        out
    }
}

/// A corpus line is a 54-letter facelet string or a scramble maneuver
/// applied to the solved cube.
pub fn parse_corpus_line(line: &str) -> Result<CubeState, String> {
    let line = line.trim();
    let facelet_like = line.len() == FACELETS && line.chars().all(|c| "FLBRUD".contains(c));
    if facelet_like {
        return parse_facelets(line).map_err(|e| e.to_string());
    }
    parse_maneuver(line)
        .map(|m| CubeState::solved().apply_maneuver(&m))
        .map_err(|e| e.to_string())
}

/// Runs `strategy` on every non-blank line. Parse and solver errors are
/// recorded in the row and the run continues.
pub fn bench(corpus: &str, strategy: &Strategy, planner: &Planner) -> BenchReport {
    let mut report = BenchReport::default();
    for (i, line) in corpus.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let id = i + 1;
        let failed = |message: String| BenchRow {
            id,
            phase1_len: None,
            phase2_len: None,
            total_len: None,
            result: "error".into(),
            seconds: 0.0,
            error: Some(message),
        };
        let state = match parse_corpus_line(line) {
            Ok(state) => state,
            Err(e) => {
                report.rows.push(failed(e));
                continue;
            }
        };
        let row = match planner.solve(&state, strategy) {
            Ok(r) => BenchRow {
                id,
                phase1_len: r.phase1_len,
                phase2_len: r.phase2_len,
                total_len: r.maneuver().map(|m| m.len()),
                result: r.outcome.to_string(),
                seconds: r.total_seconds(),
                error: None,
            },
            Err(e) => failed(e.to_string()),
        };
        debug_assert!(row.result != Outcome::Solved.to_string() || row.total_len.is_some());
        report.rows.push(row);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::format_facelets;

    #[test]
    fn corpus_lines() {
        let solved = format_facelets(&CubeState::solved());
        assert_eq!(parse_corpus_line(&solved).unwrap(), CubeState::solved());
        assert!(parse_corpus_line("R U R'").is_ok());
        assert!(parse_corpus_line("X2").is_err());
        let mut bad = solved.clone();
        bad.replace_range(0..1, "L");
        assert!(parse_corpus_line(&bad).is_err());
    }

    #[test]
    fn three_rows_and_errors() {
        let corpus = format!("{}\nU2\n\nQ\n", format_facelets(&CubeState::solved()));
        let report = bench(
            &corpus,
            &Strategy::OptimalShallow { max_length: 2 },
            &Planner::default(),
        );
        assert_eq!(report.rows.len(), 3);
        assert_eq!(report.rows[0].phase1_len, Some(0));
        assert_eq!(report.rows[0].phase2_len, Some(0));
        assert_eq!(report.rows[1].total_len, Some(1));
        assert_eq!(report.rows[2].result, "error");
        assert_eq!(report.rows[2].id, 4);
        let csv = report.to_csv();
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.lines().nth(3).unwrap().starts_with("4,,,,error,"));
    }
}
