//! Automated players: Monte-Carlo tree search driven by a per-persona
//! utility.

mod mcts;

use std::fmt;
use std::str::FromStr;

pub use mcts::{mcts_select_action, replay, run_persona, PersonaError, PersonaParams, PlayTrace};

use crate::engine::{GameState, Outcome, RuleConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PersonaKind {
    /// Reach the exit in as few turns as possible.
    Runner,
    /// Kill as many monsters as possible, then leave.
    MonsterKiller,
    /// Collect as many treasures as possible, then leave.
    TreasureCollector,
}

impl PersonaKind {
    pub const ALL: [PersonaKind; 3] =
        [PersonaKind::Runner, PersonaKind::MonsterKiller, PersonaKind::TreasureCollector];

    pub fn id(self) -> &'static str {
        match self {
            PersonaKind::Runner => "runner",
            PersonaKind::MonsterKiller => "mk",
            PersonaKind::TreasureCollector => "tc",
        }
    }
}

impl fmt::Display for PersonaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for PersonaKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PersonaKind::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| format!("unknown persona `{s}` (expected runner, mk or tc)"))
    }
}

/// Utility of `state` for `persona`, in `[0, 1]`.
pub fn persona_value(persona: PersonaKind, state: &GameState, rules: &RuleConfig) -> f64 {
    let info = &state.info;
    let win = f64::from(u8::from(state.outcome == Outcome::Win));
    let death = f64::from(u8::from(state.outcome == Outcome::Death));
    // A zero total leaves nothing to do: the term is fully satisfied.
    let ratio = |got: u32, total: u32| if total == 0 { 1.0 } else { f64::from(got) / f64::from(total) };
    let v = match persona {
        PersonaKind::Runner => match state.outcome {
            Outcome::Win => 1.0 - 0.5 * f64::from(state.turn) / f64::from(rules.hero_step_limit),
            Outcome::Death => 0.0,
            Outcome::Ongoing | Outcome::StepLimit => {
                let d = state.distance_to_exit().map_or(f64::from(info.diameter), f64::from);
                let diameter = f64::from(info.diameter.max(1));
                0.5 * (1.0 - d / diameter)
            }
        },
        PersonaKind::MonsterKiller => {
            0.5 * ratio(state.kills, info.killable_total) + 0.5 * win - 0.5 * death
        }
        PersonaKind::TreasureCollector => {
            0.5 * ratio(state.treasures_collected, info.treasure_total) + 0.5 * win - 0.5 * death
        }
    };
    v.clamp(0.0, 1.0)
}
