use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rubiksat::cnf::{from_dimacs, to_dimacs, write_varmap, AmoMethod};
use rubiksat::cube::{format_facelets, optimal_depth_oracle, parse_facelets, parse_maneuver, scramble, CubeState};
use rubiksat::encoder::{encode, ColorBits, EncodingConfig, Mode};
use rubiksat::orchestrator::DecomposeConfig;
use rubiksat::planner::{
    bench, verify_solution, Engine, Outcome, Planner, SolveReport, Strategy, DEFAULT_BUDGET, DEFAULT_SWEEP,
    MAX_SHALLOW_LENGTH,
};
use rubiksat::sat::{solve_builtin, BackendConfig, BackendKind, SolverResult};

const EXIT_USAGE: u8 = 1;
const EXIT_UNSOLVED: u8 = 2;
const EXIT_UNKNOWN: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser)]
#[command(name = "rubiksat", version, about = "Solve Rubik's Cube states with SAT encodings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the CNF encoding of a state as DIMACS
    Encode {
        #[command(flatten)]
        input: StateArgs,
        #[command(flatten)]
        encoding: EncodingArgs,
        /// DIMACS output file (default: standard output)
        #[arg(long, value_name = "PATH")]
        emit_dimacs: Option<PathBuf>,
        /// Variable-map sidecar file
        #[arg(long, value_name = "PATH")]
        varmap: Option<PathBuf>,
    },
    /// Find a solution and print it
    Solve {
        #[command(flatten)]
        input: StateArgs,
        #[command(flatten)]
        encoding: EncodingArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum)]
        strategy: Option<StrategyKind>,
    },
    /// Check that a maneuver solves a state
    Verify {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, allow_hyphen_values = true)]
        maneuver: String,
    },
    /// Generate a seeded canonical scramble
    Scramble {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        length: usize,
    },
    /// Brute-force optimal depth (up to 7)
    Oracle {
        #[command(flatten)]
        input: StateArgs,
        #[arg(long, default_value_t = 5)]
        max_depth: usize,
    },
    /// Solve every line of a corpus and report CSV
    Bench {
        corpus: PathBuf,
        #[command(flatten)]
        encoding: EncodingArgs,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long, value_enum)]
        strategy: Option<StrategyKind>,
        /// CSV output file (default: standard output)
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Solve a DIMACS file with the built-in solver (competition output)
    Dimacs {
        path: PathBuf,
        #[arg(long, default_value_t = 3600.0)]
        timeout: f64,
    },
}

#[derive(Args)]
struct StateArgs {
    /// 54-letter facelet string, faces F L B R U D
    state: Option<String>,
    /// Start from the solved cube scrambled by this maneuver
    #[arg(long, allow_hyphen_values = true)]
    scramble: Option<String>,
}

#[derive(Args)]
struct EncodingArgs {
    /// Number of states (moves + 1)
    #[arg(long)]
    states: Option<usize>,
    /// Number of moves (maximum length or total budget)
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Phase-1 length
    #[arg(long, conflicts_with = "phase1_sweep")]
    phase1: Option<usize>,
    /// Phase-1 lengths to try, `A..B` (inclusive) or `a,b,c`
    #[arg(long, value_name = "RANGE")]
    phase1_sweep: Option<String>,
    #[arg(long, value_enum, default_value = "3")]
    color_bits: BitsArg,
    #[arg(long)]
    no_prune_opposite: bool,
    #[arg(long)]
    prune_same_face: bool,
    #[arg(long)]
    no_last_move: bool,
    /// Full transition clauses per move instead of shared frame clauses
    #[arg(long)]
    naive_frame: bool,
    #[arg(long, value_enum, default_value = "product")]
    amo: AmoArg,
}

#[derive(Args)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "builtin")]
    backend: BackendArg,
    /// External solver executable
    #[arg(long, value_name = "PATH")]
    solver_path: Option<PathBuf>,
    /// External solver argument; `{}` stands for the CNF path (repeatable)
    #[arg(long = "solver-arg", value_name = "ARG", allow_hyphen_values = true)]
    solver_args: Vec<String>,
    /// Seconds per attempt
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    /// Threads for the decomposing solver (more than 1 enables it)
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Use the decomposing solver
    #[arg(long)]
    decompose: bool,
    /// Decomposition depth limit
    #[arg(long, default_value_t = 4)]
    depth: usize,
    /// Failed-literal probing at each decomposition node
    #[arg(long)]
    lookahead: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    deterministic: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Atmost,
}

#[derive(Clone, Copy, ValueEnum)]
enum BitsArg {
    #[value(name = "3")]
    Three,
    #[value(name = "2")]
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmoArg {
    Pairwise,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Builtin,
    External,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyKind {
    Optimal,
    TwoPhase,
    Bounded,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

impl StateArgs {
    fn load(&self) -> Result<CubeState, Failure> {
        match (&self.state, &self.scramble) {
            (Some(_), Some(_)) => Err(usage("give either a facelet string or --scramble, not both")),
            (Some(text), None) => parse_facelets(text.trim()).map_err(|e| usage(format!("bad facelet string: {e}"))),
            (None, Some(mv)) => parse_maneuver(mv)
                .map(|m| CubeState::solved().apply_maneuver(&m))
                .map_err(|e| usage(format!("bad scramble: {e}"))),
            (None, None) => Err(usage("no input state: pass a facelet string or --scramble")),
        }
    }
}

impl EncodingArgs {
    fn moves(&self) -> Result<Option<usize>, Failure> {
        match (self.states, self.length) {
            (Some(0), _) => Err(usage("--states must be at least 1")),
            (Some(n), Some(l)) if n != l + 1 => Err(usage("--states must equal --length + 1")),
            (Some(n), _) => Ok(Some(n - 1)),
            (None, l) => Ok(l),
        }
    }

    fn sweep(&self) -> Result<Option<Vec<usize>>, Failure> {
        if let Some(k) = self.phase1 {
            return Ok(Some(vec![k]));
        }
        let Some(text) = &self.phase1_sweep else {
            return Ok(None);
        };
        let bad = || usage(format!("bad --phase1-sweep {text:?}, expected A..B or a,b,c"));
        let values = if let Some((a, b)) = text.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            (a..=b).collect::<Vec<_>>()
        } else {
            text.split(',')
                .map(|v| v.trim().parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        };
        if values.is_empty() {
            return Err(bad());
        }
        Ok(Some(values))
    }

    fn template(&self, mode: Mode) -> EncodingConfig {
        EncodingConfig {
            mode,
            color_bits: match self.color_bits {
                BitsArg::Three => ColorBits::ThreeEverywhere,
                BitsArg::Two => ColorBits::TwoForPhase2,
            },
            pruning_opposite: !self.no_prune_opposite,
            pruning_same_face: self.prune_same_face,
            last_move_constraint: !self.no_last_move && mode == Mode::ExactLength,
            amo_method: match self.amo {
                AmoArg::Pairwise => AmoMethod::Pairwise,
                AmoArg::Product => AmoMethod::Product,
            },
            frame_split: !self.naive_frame,
            ..EncodingConfig::exact(0)
        }
    }

    fn explicit_mode(&self) -> Option<Mode> {
        self.mode.map(|m| match m {
            ModeArg::Exact => Mode::ExactLength,
            ModeArg::Atmost => Mode::AtMost,
        })
    }

    /// Strategy and planner template from the flags: phase flags select the
    /// two-phase sweep, `--mode atmost` a single bounded attempt, anything
    /// else iterative deepening.
    fn strategy(&self, kind: Option<StrategyKind>) -> Result<(Strategy, EncodingConfig), Failure> {
        let moves = self.moves()?;
        let sweep = self.sweep()?;
        let kind = kind.unwrap_or(match (&sweep, self.explicit_mode()) {
            (Some(_), _) => StrategyKind::TwoPhase,
            (None, Some(Mode::AtMost)) => StrategyKind::Bounded,
            _ => StrategyKind::Optimal,
        });
        match kind {
            StrategyKind::Optimal => {
                if sweep.is_some() {
                    return Err(usage("phase-1 flags need the two-phase or bounded strategy"));
                }
                let max_length = moves.unwrap_or(MAX_SHALLOW_LENGTH);
                Ok((
                    Strategy::OptimalShallow { max_length },
                    self.template(Mode::ExactLength),
                ))
            }
            StrategyKind::TwoPhase => {
                let budget = moves.unwrap_or(DEFAULT_BUDGET);
                let sweep = sweep.unwrap_or_else(|| DEFAULT_SWEEP.to_vec());
                let mode = self.explicit_mode().unwrap_or(Mode::AtMost);
                Ok((Strategy::TwoPhase { budget, sweep }, self.template(mode)))
            }
            StrategyKind::Bounded => {
                let length = moves.ok_or_else(|| usage("the bounded strategy needs --length or --states"))?;
                let phase1 = match sweep.as_deref() {
                    None => None,
                    Some(&[k]) => Some(k),
                    Some(_) => return Err(usage("the bounded strategy takes a single --phase1")),
                };
                let mode = self.explicit_mode().unwrap_or(Mode::AtMost);
                Ok((Strategy::Bounded { length, phase1 }, self.template(mode)))
            }
        }
    }
}

impl SolverArgs {
    fn engine(&self) -> Result<Engine, Failure> {
        if !(self.timeout > 0.0 && self.timeout.is_finite()) {
            return Err(usage("--timeout must be a positive number of seconds"));
        }
        let kind = match self.backend {
            BackendArg::Builtin => BackendKind::Builtin,
            BackendArg::External => {
                let path = self
                    .solver_path
                    .clone()
                    .ok_or_else(|| usage("--backend external needs --solver-path"))?;
                BackendKind::External {
                    path,
                    args: self.solver_args.clone(),
                }
            }
        };
        let backend = BackendConfig {
            kind,
            timeout: Duration::from_secs_f64(self.timeout),
            deterministic: self.deterministic || self.seed.is_none(),
            seed: self.seed.unwrap_or(0),
        };
        if self.workers == 0 {
            return Err(usage("--workers must be at least 1"));
        }
        if self.decompose || self.workers > 1 || self.lookahead {
            let config = DecomposeConfig {
                max_depth: self.depth,
                workers: self.workers,
                deterministic: backend.deterministic,
                seed: backend.seed,
                lookahead: self.lookahead,
                backend,
                ..DecomposeConfig::default()
            };
            config.validate().map_err(|e| usage(e.to_string()))?;
            Ok(Engine::Decompose(config))
        } else {
            Ok(Engine::Direct(backend))
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_encode(
    input: &StateArgs,
    args: &EncodingArgs,
    dimacs: Option<&PathBuf>,
    varmap: Option<&PathBuf>,
) -> Result<(), Failure> {
    let state = input.load()?;
    let moves = args
        .moves()?
        .ok_or_else(|| usage("encode needs --states or --length"))?;
    let mode = args.explicit_mode().unwrap_or(Mode::ExactLength);
    let phase1 = match args.sweep()?.as_deref() {
        None => None,
        Some(&[k]) => Some(k),
        Some(_) => return Err(usage("encode takes a single --phase1")),
    };
    let config = EncodingConfig {
        n_states: moves + 1,
        phase1_len: phase1,
        ..args.template(mode)
    };
    let enc = encode(&state, &config).map_err(|e| usage(e.to_string()))?;
    write_output(dimacs, &to_dimacs(&enc.formula))?;
    if let Some(path) = varmap {
        let mut buf = Vec::new();
        write_varmap(&enc.formula, &mut buf).map_err(|e| usage(e.to_string()))?;
        write_output(Some(path), &String::from_utf8_lossy(&buf))?;
    }
    eprintln!(
        "variables {} clauses {}",
        enc.formula.num_vars(),
        enc.formula.num_clauses()
    );
    Ok(())
}

fn print_report(report: &SolveReport) {
    for a in &report.attempts {
        let k = a.config.phase1_len.map_or("-".to_string(), |k| k.to_string());
        eprintln!(
            "attempt mode={} moves={} k={} vars={} clauses={} result={} calls={} seconds={:.3}",
            a.config.mode,
            a.config.steps(),
            k,
            a.num_vars,
            a.num_clauses,
            a.result,
            a.backend_calls,
            a.seconds
        );
    }
    if let (Some(m), Some(p1), Some(p2)) = (report.maneuver(), report.phase1_len, report.phase2_len) {
        eprintln!("length {} (phase 1: {p1}, phase 2: {p2})", m.len());
    }
}

fn outcome_code(outcome: Outcome) -> Result<(), Failure> {
    match outcome {
        Outcome::Solved => Ok(()),
        Outcome::Unsolved => Err(Failure {
            code: EXIT_UNSOLVED,
            message: "no solution within the given length".into(),
        }),
        Outcome::Unknown => Err(Failure {
            code: EXIT_UNKNOWN,
            message: "time limit reached without an answer".into(),
        }),
    }
}

fn plan_failure(e: rubiksat::error::PlanError) -> Failure {
    use rubiksat::error::PlanError;
    let code = match e {
        PlanError::Verification(_) => EXIT_VERIFY,
        PlanError::Backend(_) | PlanError::Orchestrator(_) => EXIT_UNKNOWN,
        _ => EXIT_USAGE,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode {
            input,
            encoding,
            emit_dimacs,
            varmap,
        } => run_encode(&input, &encoding, emit_dimacs.as_ref(), varmap.as_ref()),
        Command::Solve {
            input,
            encoding,
            solver,
            strategy,
        } => {
            let state = input.load()?;
            let (strategy, template) = encoding.strategy(strategy)?;
            let planner = Planner {
                template,
                engine: solver.engine()?,
            };
            let report = planner.solve(&state, &strategy).map_err(plan_failure)?;
            print_report(&report);
            if let Some(m) = report.maneuver() {
                println!("{m}");
            }
            outcome_code(report.outcome)
        }
        Command::Verify { input, maneuver } => {
            let state = input.load()?;
            let mv = parse_maneuver(&maneuver).map_err(|e| usage(format!("bad maneuver: {e}")))?;
            let v = verify_solution(&state, &mv);
            let step = |s: Option<usize>| s.map_or("none".to_string(), |n| n.to_string());
            println!("solves {}", v.solves);
            println!("first_solved_step {}", step(v.first_solved_step));
            println!("first_h_step {}", step(v.first_h_step));
            if v.solves {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_UNSOLVED,
                    message: "maneuver does not solve the state".into(),
                })
            }
        }
        Command::Scramble { seed, length } => {
            let (mv, state) = scramble(seed, length);
            println!("{mv}");
            println!("{}", format_facelets(&state));
            Ok(())
        }
        Command::Oracle { input, max_depth } => {
            let state = input.load()?;
            match optimal_depth_oracle(&state, max_depth).map_err(|e| usage(e.to_string()))? {
                Some((depth, mv)) => {
                    println!("{depth} {mv}");
                    Ok(())
                }
                None => Err(Failure {
                    code: EXIT_UNSOLVED,
                    message: format!("no solution within {max_depth} moves"),
                }),
            }
        }
        Command::Bench {
            corpus,
            encoding,
            solver,
            strategy,
            csv,
        } => {
            let text =
                fs::read_to_string(&corpus).map_err(|e| usage(format!("cannot read {}: {e}", corpus.display())))?;
            // corpus runs default to the two-phase sweep
            let kind = strategy.or_else(|| encoding.explicit_mode().is_none().then_some(StrategyKind::TwoPhase));
            let (strategy, template) = encoding.strategy(kind)?;
            let planner = Planner {
                template,
                engine: solver.engine()?,
            };
            let report = bench(&text, &strategy, &planner);
            for row in &report.rows {
                if let Some(e) = &row.error {
                    eprintln!("line {}: {e}", row.id);
                }
            }
            write_output(csv.as_ref(), &report.to_csv())
        }
        Command::Dimacs { path, timeout } => {
            let text = fs::read_to_string(&path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            let formula = from_dimacs(&text).map_err(|e| usage(e.to_string()))?;
            if !(timeout > 0.0 && timeout.is_finite()) {
                return Err(usage("--timeout must be positive"));
            }
            let config = BackendConfig::default().with_timeout(Duration::from_secs_f64(timeout));
            match solve_builtin(&formula, &[], &config) {
                Ok(SolverResult::Sat(model)) => {
                    println!("s SATISFIABLE");
                    let values: Vec<String> = model.to_dimacs_lits().iter().map(i32::to_string).collect();
                    println!("v {} 0", values.join(" "));
                    Err(Failure {
                        code: 10,
                        message: String::new(),
                    })
                }
                Ok(SolverResult::Unsat) => {
                    println!("s UNSATISFIABLE");
                    Err(Failure {
                        code: 20,
                        message: String::new(),
                    })
                }
                Ok(SolverResult::Unknown(_)) => {
                    println!("s UNKNOWN");
                    Ok(())
                }
                Err(e) => Err(Failure {
                    code: EXIT_VERIFY,
                    message: e.to_string(),
                }),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("rubiksat: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
