//! Layout creators: step one of the pipeline, producing walls and floors.

mod agent;
mod cellular;
mod constraint;

use std::fmt;
use std::str::FromStr;

pub use agent::{create_agent_layout, dig, DiggerTrace};
pub use cellular::{ca_step, create_cellular_layout, prune_islands, PruneOutcome};
pub use constraint::{
    create_constraint_layout, create_constraint_layout_traced, overlap_area, rasterize_rooms,
    separate_rooms_step, ConstraintTrace, Room,
};

use crate::grid::LayoutGrid;
use crate::rng::RandomStream;

#[derive(Debug, Clone, PartialEq)]
pub struct CreatorParams {
    pub room_count_range: (u32, u32),
    pub room_w_range: (i32, i32),
    pub room_h_range: (i32, i32),
    pub max_separation_iters: u32,
    pub ca_wall_prob: f64,
    pub ca_floor_cap: f64,
    pub ca_reseed_wall_prob: f64,
    pub ca_max_initial_steps: u32,
    pub digger_floor_target_range: (usize, usize),
    pub digger_turn_prob_step: f64,
}

impl Default for CreatorParams {
    fn default() -> Self {
        Self {
            room_count_range: (8, 16),
            room_w_range: (4, 6),
            room_h_range: (4, 8),
            max_separation_iters: 100,
            ca_wall_prob: 0.45,
            ca_floor_cap: 0.75,
            ca_reseed_wall_prob: 0.2,
            ca_max_initial_steps: 10,
            digger_floor_target_range: (75, 95),
            digger_turn_prob_step: 0.05,
        }
    }
}

/// The three layout creators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CreatorKind {
    /// Room spawning and separation.
    Constraint,
    /// Majority-rule cellular automaton.
    Cellular,
    /// Digger agent.
    Agent,
}

impl CreatorKind {
    pub const ALL: [CreatorKind; 3] = [CreatorKind::Constraint, CreatorKind::Cellular, CreatorKind::Agent];

    pub fn id(self) -> &'static str {
        match self {
            CreatorKind::Constraint => "cc",
            CreatorKind::Cellular => "cac",
            CreatorKind::Agent => "ac",
        }
    }

    pub fn create(self, rng: &mut RandomStream, params: &CreatorParams) -> LayoutGrid {
        match self {
            CreatorKind::Constraint => create_constraint_layout(rng, params),
            CreatorKind::Cellular => create_cellular_layout(rng, params),
            CreatorKind::Agent => create_agent_layout(rng, params),
        }
    }
}

impl fmt::Display for CreatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CreatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CreatorKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| format!("unknown creator `{s}` (expected cc, cac or ac)"))
    }
}
