use std::time::Duration;

use proptest::prelude::*;
use rubiksat::cnf::{Assignment, Formula, Lit, Var};
use rubiksat::cube::{optimal_depth_oracle, parse_maneuver, scramble, CubeState};
use rubiksat::encoder::{encode, EncodingConfig};
use rubiksat::sat::{
    failed_literal_probe, propagate, solve_builtin, verify_model, BackendConfig, ProbeOutcome, SolverResult,
};

fn build(num_vars: usize, clauses: &[Vec<i32>]) -> Formula {
    let mut f = Formula::new();
    for i in 1..=num_vars {
        f.new_var(format!("x{i}"));
    }
    for c in clauses {
        f.add_clause(c.iter().map(|&d| Lit::from_dimacs(d).unwrap())).unwrap();
    }
    f
}

/// Brute-force satisfiability over every assignment.
fn truth_table_sat(num_vars: usize, clauses: &[Vec<i32>]) -> bool {
    (0u32..1 << num_vars).any(|bits| {
        clauses.iter().all(|c| {
            c.iter()
                .any(|&l| ((bits >> (l.unsigned_abs() - 1)) & 1 == 1) == (l > 0))
        })
    })
}

fn random_cnf() -> impl Strategy<Value = (usize, Vec<Vec<i32>>)> {
    (1usize..=12).prop_flat_map(|n| {
        let clause = proptest::collection::btree_set(1..=n as i32, 1..=3.min(n)).prop_flat_map(|vars| {
            let vars: Vec<i32> = vars.into_iter().collect();
            let k = vars.len();
            proptest::collection::vec(any::<bool>(), k)
                .prop_map(move |signs| vars.iter().zip(signs).map(|(&v, s)| if s { v } else { -v }).collect())
        });
        (Just(n), proptest::collection::vec(clause, 0..=(4 * n)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn builtin_agrees_with_truth_table((n, clauses) in random_cnf()) {
        let f = build(n, &clauses);
        let result = solve_builtin(&f, &[], &BackendConfig::default()).unwrap();
        prop_assert_eq!(result.is_sat(), truth_table_sat(n, &clauses));
        if let SolverResult::Sat(model) = &result {
            prop_assert!(verify_model(&f, model));
        }
    }

    #[test]
    fn propagation_fixpoint_is_order_independent((n, clauses) in random_cnf(), seed in any::<u64>()) {
        let f = build(n, &clauses);
        let mut shuffled = clauses.clone();
        // deterministic permutation driven by the seed
        let len = shuffled.len();
        for i in (1..len).rev() {
            let j = (seed.wrapping_mul(6364136223846793005).wrapping_add(i as u64) % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        let g = build(n, &shuffled);
        let (mut a, mut b) = (Assignment::new(n), Assignment::new(n));
        let ra = propagate(&f, &mut a);
        let rb = propagate(&g, &mut b);
        prop_assert_eq!(ra.is_err(), rb.is_err());
        if ra.is_ok() {
            prop_assert_eq!(a, b);
        }
    }
}

#[test]
fn cube_instances_agree_with_oracle() {
    let cfg = BackendConfig::default().with_timeout(Duration::from_secs(120));
    for seed in 0..6 {
        let (_, state) = scramble(seed, 3);
        let (depth, _) = optimal_depth_oracle(&state, 5).unwrap().unwrap();
        for length in 0..=depth {
            let enc = encode(&state, &EncodingConfig::exact(length)).unwrap();
            let result = solve_builtin(&enc.formula, &[], &cfg).unwrap();
            assert_eq!(result.is_sat(), length == depth, "seed {seed} length {length}");
            if let SolverResult::Sat(model) = result {
                let decoded = enc.decode(&model).unwrap();
                assert_eq!(decoded.maneuver.len(), depth);
            }
        }
    }
}

#[test]
fn single_move_instances() {
    let cfg = BackendConfig::default();
    let solved = CubeState::solved();
    assert!(
        solve_builtin(&encode(&solved, &EncodingConfig::exact(0)).unwrap().formula, &[], &cfg)
            .unwrap()
            .is_sat()
    );
    let u = solved.apply_maneuver(&parse_maneuver("U").unwrap());
    assert!(
        solve_builtin(&encode(&u, &EncodingConfig::exact(0)).unwrap().formula, &[], &cfg)
            .unwrap()
            .is_unsat()
    );
    let enc = encode(&u, &EncodingConfig::exact(1)).unwrap();
    let model = solve_builtin(&enc.formula, &[], &cfg)
        .unwrap()
        .model()
        .cloned()
        .unwrap();
    assert_eq!(enc.decode(&model).unwrap().maneuver.to_string(), "U'");

    let enc = encode(&solved, &EncodingConfig::at_most(3)).unwrap();
    let model = solve_builtin(&enc.formula, &[], &cfg)
        .unwrap()
        .model()
        .cloned()
        .unwrap();
    let decoded = enc.decode(&model).unwrap();
    assert!(decoded.maneuver.is_empty());
    assert_eq!(decoded.solved_at, 1);
}

#[test]
fn probing_on_a_cube_encoding_keeps_it_satisfiable() {
    let state = CubeState::solved().apply_maneuver(&parse_maneuver("R U").unwrap());
    let enc = encode(&state, &EncodingConfig::exact(2)).unwrap();
    let candidates: Vec<Var> = (1..=2).flat_map(|s| enc.varmap.move_types(s).to_vec()).collect();
    let mut a = Assignment::new(enc.formula.num_vars());
    match failed_literal_probe(&enc.formula, &mut a, &candidates) {
        ProbeOutcome::Implied(lits) => {
            // only U' then R' solves it
            let u1 = enc.varmap.move_type(1, rubiksat::cube::Face::Up);
            assert!(lits.contains(&u1.pos()) || a.value(u1.pos()) == Some(true));
        }
        ProbeOutcome::Conflict => panic!("satisfiable instance refuted"),
    }
    let too_short = encode(&state, &EncodingConfig::exact(1)).unwrap();
    let mut a = Assignment::new(too_short.formula.num_vars());
    let candidates: Vec<Var> = too_short.varmap.move_types(1).to_vec();
    assert_eq!(
        failed_literal_probe(&too_short.formula, &mut a, &candidates),
        ProbeOutcome::Conflict
    );
}
