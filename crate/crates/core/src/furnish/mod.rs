//! Furnishers: step two of the pipeline, distributing game objects over a
//! finished layout.

mod agent;
mod budget;
mod cellular;
mod constraint;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use thiserror::Error;

pub use agent::{furnish_agent, furnish_agent_traced, AgentTrace, AGENT_TURNS};
pub use budget::{Budget, KindCounts};
pub use cellular::{furnish_cellular, CELLULAR_MAX_PASSES};
pub use constraint::furnish_constraint;

use crate::grid::{LayoutGrid, Pos, CELLS};
use crate::level::{EntityKind, Level, Placement, Provenance};
use crate::rng::RandomStream;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FurnishError {
    #[error("layout has no floor cells")]
    NoFloor,
    #[error("layout has {available} floor cells but the budget needs {needed}")]
    InsufficientFloor { needed: usize, available: usize },
}

#[derive(Debug, Clone)]
pub struct FurnishReport {
    pub level: Level,
    /// Objects placed by the uniform fallback instead of their own rule.
    pub relaxations: u32,
    /// Placement passes (CAF), movement turns (AF) or 1 (CF).
    pub passes: u32,
    pub relaxed: Vec<Placement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FurnisherKind {
    Constraint,
    Cellular,
    Agent,
}

impl FurnisherKind {
    pub const ALL: [FurnisherKind; 3] =
        [FurnisherKind::Constraint, FurnisherKind::Cellular, FurnisherKind::Agent];

    pub fn id(self) -> &'static str {
        match self {
            FurnisherKind::Constraint => "cf",
            FurnisherKind::Cellular => "caf",
            FurnisherKind::Agent => "af",
        }
    }

    pub fn furnish(
        self,
        grid: &LayoutGrid,
        rng: &mut RandomStream,
        budget: &Budget,
    ) -> Result<FurnishReport, FurnishError> {
        match self {
            FurnisherKind::Constraint => furnish_constraint(grid, rng, budget),
            FurnisherKind::Cellular => furnish_cellular(grid, rng, budget),
            FurnisherKind::Agent => furnish_agent(grid, rng, budget),
        }
    }
}

impl fmt::Display for FurnisherKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for FurnisherKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FurnisherKind::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| format!("unknown furnisher `{s}` (expected cf, caf or af)"))
    }
}

/// Layout plus the objects placed on it so far.
#[derive(Debug, Clone)]
pub(crate) struct Board<'a> {
    pub grid: &'a LayoutGrid,
    occupant: [Option<EntityKind>; CELLS],
    pub placements: Vec<Placement>,
    pub relaxed: Vec<Placement>,
}

impl<'a> Board<'a> {
    pub fn new(grid: &'a LayoutGrid) -> Self {
        Self { grid, occupant: [None; CELLS], placements: Vec::new(), relaxed: Vec::new() }
    }

    pub fn occupant(&self, p: Pos) -> Option<EntityKind> {
        if p.in_bounds() {
            self.occupant[p.index()]
        } else {
            None
        }
    }

    pub fn is_empty_floor(&self, p: Pos) -> bool {
        self.grid.is_floor(p) && self.occupant(p).is_none()
    }

    pub fn empty_floor(&self) -> Vec<Pos> {
        self.grid.floor_cells().into_iter().filter(|&p| self.occupant(p).is_none()).collect()
    }

    pub fn place(&mut self, kind: EntityKind, pos: Pos) {
        debug_assert!(self.is_empty_floor(pos));
        self.occupant[pos.index()] = Some(kind);
        self.placements.push(Placement::new(kind, pos));
    }

    pub fn move_object(&mut self, index: usize, to: Pos) {
        let from = self.placements[index].pos;
        if from == to {
            return;
        }
        debug_assert!(self.is_empty_floor(to));
        self.occupant[to.index()] = self.occupant[from.index()].take();
        self.placements[index].pos = to;
    }

    pub fn positions(&self, kind: EntityKind) -> impl Iterator<Item = Pos> + '_ {
        self.placements.iter().filter(move |p| p.kind == kind).map(|p| p.pos)
    }

    pub fn first(&self, kind: EntityKind) -> Option<Pos> {
        self.positions(kind).next()
    }

    pub fn count(&self, kind: EntityKind) -> usize {
        self.positions(kind).count()
    }

    /// Uniform fallback placement on any empty floor cell.
    pub fn place_relaxed(&mut self, kind: EntityKind, rng: &mut RandomStream) -> Result<(), FurnishError> {
        let pos = *self.empty_floor().choose(rng).ok_or(FurnishError::InsufficientFloor {
            needed: self.placements.len() + 1,
            available: self.grid.floor_count(),
        })?;
        self.place(kind, pos);
        self.relaxed.push(Placement::new(kind, pos));
        Ok(())
    }

    /// Chebyshev-square neighbourhood of radius `r`, centre excluded.
    pub fn any_within(&self, p: Pos, r: i32, mut pred: impl FnMut(Pos) -> bool) -> bool {
        for dy in -r..=r {
            for dx in -r..=r {
                if (dx, dy) != (0, 0) && pred(p.offset(dx, dy)) {
                    return true;
                }
            }
        }
        false
    }

    pub fn kind_within(&self, p: Pos, r: i32, kind: EntityKind) -> bool {
        self.any_within(p, r, |q| self.occupant(q) == Some(kind))
    }

    pub fn into_report(mut self, furnisher: FurnisherKind, passes: u32) -> FurnishReport {
        self.placements.sort_by_key(|p| p.pos.index());
        let relaxations = self.relaxed.len() as u32;
        FurnishReport {
            level: Level::new(
                self.grid.clone(),
                self.placements,
                Provenance { furnisher: furnisher.id().to_owned(), ..Provenance::default() },
            ),
            relaxations,
            passes,
            relaxed: self.relaxed,
        }
    }
}

pub(crate) fn require_floor(grid: &LayoutGrid) -> Result<(), FurnishError> {
    if grid.floor_count() == 0 {
        Err(FurnishError::NoFloor)
    } else {
        Ok(())
    }
}
