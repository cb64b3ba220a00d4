use std::fmt;
use std::str::FromStr;

use crate::cnf::AmoMethod;
use crate::error::ConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// The last state is forced solved; every step carries a move.
    #[default]
    ExactLength,
    /// Exactly one state is flagged solved.
    AtMost,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" | "exact-length" => Ok(Mode::ExactLength),
            "atmost" | "at-most" => Ok(Mode::AtMost),
            other => Err(format!("unknown mode {other:?} (expected exact or atmost)")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::ExactLength => "exact",
            Mode::AtMost => "atmost",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ColorBits {
    #[default]
    ThreeEverywhere,
    /// States after the phase-1 boundary use 2 bits per facelet.
    TwoForPhase2,
}

impl FromStr for ColorBits {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "3" | "three" => Ok(ColorBits::ThreeEverywhere),
            "2" | "two" => Ok(ColorBits::TwoForPhase2),
            other => Err(format!("unknown color-bit scheme {other:?} (expected 3 or 2)")),
        }
    }
}

impl fmt::Display for ColorBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorBits::ThreeEverywhere => "3",
            ColorBits::TwoForPhase2 => "2",
        })
    }
}

/// Every knob of the CNF encoding.
///
/// States are numbered `1..=n_states`; the move at step `t` turns state `t`
/// into state `t + 1`. With `phase1_len = Some(k)` the state after `k` moves
/// (state `k + 1`) must lie in the phase-2 subgroup and steps `k + 1..n_states`
/// use only phase-2 moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingConfig {
    pub n_states: usize,
    pub mode: Mode,
    pub phase1_len: Option<usize>,
    pub color_bits: ColorBits,
    pub pruning_opposite: bool,
    pub pruning_same_face: bool,
    pub last_move_constraint: bool,
    pub amo_method: AmoMethod,
    /// Frame clauses shared per move type (true) or full 48-facelet
    /// transition clauses per concrete move (false).
    pub frame_split: bool,
}

impl EncodingConfig {
    /// Exact-length instance with `moves` moves and default options.
    pub fn exact(moves: usize) -> EncodingConfig {
        EncodingConfig {
            n_states: moves + 1,
            mode: Mode::ExactLength,
            phase1_len: None,
            color_bits: ColorBits::ThreeEverywhere,
            pruning_opposite: true,
            pruning_same_face: false,
            last_move_constraint: true,
            amo_method: AmoMethod::Product,
            frame_split: true,
        }
    }

    /// At-most instance allowing up to `moves` moves.
    pub fn at_most(moves: usize) -> EncodingConfig {
        EncodingConfig {
            mode: Mode::AtMost,
            last_move_constraint: false,
            ..EncodingConfig::exact(moves)
        }
    }

    pub fn with_phase1(mut self, k: usize) -> EncodingConfig {
        self.phase1_len = Some(k);
        self
    }

    /// Number of move steps (`n_states - 1`).
    pub fn steps(&self) -> usize {
        self.n_states.saturating_sub(1)
    }

    /// State index that must be in the phase-2 subgroup, if any.
    pub fn h_state_index(&self) -> Option<usize> {
        self.phase1_len.map(|k| k + 1)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_states == 0 {
            return Err(ConfigError::NoStates);
        }
        if let Some(k) = self.phase1_len {
            if k + 1 >= self.n_states {
                return Err(ConfigError::Phase1TooLong {
                    phase1: k,
                    steps: self.steps(),
                });
            }
        }
        if self.color_bits == ColorBits::TwoForPhase2 && self.phase1_len.is_none() {
            return Err(ConfigError::TwoBitsWithoutPhase1);
        }
        if self.last_move_constraint && self.mode != Mode::ExactLength {
            return Err(ConfigError::LastMoveNeedsExact);
        }
        Ok(())
    }

    /// Plain `key=value` lines.
    pub fn to_key_value(&self) -> String {
        self.to_string()
    }

    pub fn from_key_value(text: &str) -> Result<EncodingConfig, ConfigError> {
        text.parse()
    }
}

impl Default for EncodingConfig {
    fn default() -> Self {
        EncodingConfig::exact(0)
    }
}

impl fmt::Display for EncodingConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n_states={}", self.n_states)?;
        writeln!(f, "mode={}", self.mode)?;
        match self.phase1_len {
            Some(k) => writeln!(f, "phase1_len={k}")?,
            None => writeln!(f, "phase1_len=none")?,
        }
        writeln!(f, "color_bits={}", self.color_bits)?;
        writeln!(f, "pruning_opposite={}", self.pruning_opposite)?;
        writeln!(f, "pruning_same_face={}", self.pruning_same_face)?;
        writeln!(f, "last_move_constraint={}", self.last_move_constraint)?;
        writeln!(f, "amo_method={}", self.amo_method)?;
        writeln!(f, "frame_split={}", self.frame_split)
    }
}

impl FromStr for EncodingConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut config = EncodingConfig::exact(0);
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: String| ConfigError::Syntax(format!("{key}: {e}"));
            let flag = |v: &str| v.parse::<bool>().map_err(|e| bad(e.to_string()));
            match key {
                "n_states" => {
                    config.n_states = value.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?
                }
                "mode" => config.mode = value.parse().map_err(bad)?,
                "phase1_len" => {
                    config.phase1_len = match value {
                        "none" => None,
                        v => Some(v.parse().map_err(|e: std::num::ParseIntError| bad(e.to_string()))?),
                    }
                }
                "color_bits" => config.color_bits = value.parse().map_err(bad)?,
                "pruning_opposite" => config.pruning_opposite = flag(value)?,
                "pruning_same_face" => config.pruning_same_face = flag(value)?,
                "last_move_constraint" => config.last_move_constraint = flag(value)?,
                "amo_method" => config.amo_method = value.parse().map_err(bad)?,
                "frame_split" => config.frame_split = flag(value)?,
                other => return Err(ConfigError::Syntax(format!("unknown key {other:?}"))),
            }
        }
        Ok(config)
    }
}
