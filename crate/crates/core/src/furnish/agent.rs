//! Agent-based furnisher: objects start on random cells and then move
//! greedily for a fixed number of turns, each following its own heuristic.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::furnish::{require_floor, Board, Budget, FurnishError, FurnishReport, FurnisherKind};
use crate::grid::{Direction, LayoutGrid, Pos};
use crate::level::EntityKind;
use crate::rng::RandomStream;
use crate::spatial::{DistanceTable, SightTable};

pub const AGENT_TURNS: u32 = 45;

/// Per-turn observations for inspection in tests.
#[derive(Debug, Clone, Default)]
pub struct AgentTrace {
    /// Entrance-exit path distance after each turn (index 0 = initial).
    pub entrance_exit: Vec<u32>,
    /// `(stay score, chosen score)` for every decision taken.
    pub decisions: Vec<(f64, f64)>,
}

struct Scorer<'a> {
    dist: DistanceTable,
    sight: SightTable,
    board: Board<'a>,
}

impl Scorer<'_> {
    fn path(&self, a: Pos, b: Pos) -> f64 {
        f64::from(self.dist.get(a, b).unwrap_or(0))
    }

    /// Euclidean distance to the nearest visible object of `kinds`, skipping
    /// the mover itself.
    fn nearest_visible(&self, me: usize, at: Pos, kinds: &[EntityKind]) -> Option<f64> {
        self.board
            .placements
            .iter()
            .enumerate()
            .filter(|&(i, p)| i != me && kinds.contains(&p.kind) && self.sight.visible(at, p.pos))
            .map(|(_, p)| at.euclidean(p.pos))
            .min_by(f64::total_cmp)
    }

    fn visible_count(&self, me: usize, at: Pos, kinds: &[EntityKind]) -> usize {
        self.board
            .placements
            .iter()
            .enumerate()
            .filter(|&(i, p)| i != me && kinds.contains(&p.kind) && self.sight.visible(at, p.pos))
            .count()
    }

    fn first_other(&self, me: usize, kind: EntityKind) -> Option<Pos> {
        self.board
            .placements
            .iter()
            .enumerate()
            .find(|&(i, p)| i != me && p.kind == kind)
            .map(|(_, p)| p.pos)
    }

    /// Heuristic value of object `me` standing on `at`; higher is better.
    fn score(&self, me: usize, at: Pos) -> f64 {
        use EntityKind::*;
        let kind = self.board.placements[me].kind;
        let or_zero = |d: Option<f64>| d.unwrap_or(0.0);
        match kind {
            Entrance => self.first_other(me, Exit).map_or(0.0, |x| self.path(at, x)),
            Exit => self.first_other(me, Entrance).map_or(0.0, |e| self.path(at, e)),
            Portal => [self.first_other(me, Portal), self.first_other(me, Entrance), self.first_other(me, Exit)]
                .into_iter()
                .flatten()
                .map(|q| self.path(at, q))
                .min_by(f64::total_cmp)
                .unwrap_or(0.0),
            Treasure => -or_zero(self.nearest_visible(me, at, &[Goblin])),
            Trap => {
                -(self.visible_count(me, at, &[Trap, Goblin]) as f64)
                    - or_zero(self.nearest_visible(me, at, &[Treasure]))
            }
            Goblin => or_zero(self.nearest_visible(me, at, &[Goblin])),
            GoblinMage => {
                -or_zero(self.nearest_visible(me, at, &[Goblin]))
                    + or_zero(self.nearest_visible(me, at, &[GoblinMage]))
            }
            Ogre => {
                let crowd = self.nearest_visible(me, at, &[Ogre]).filter(|&d| d < 6.0).unwrap_or(0.0);
                let guard = self.nearest_visible(me, at, &[Treasure]).map_or(0.0, |d| -(d - 4.0).abs());
                crowd + guard
            }
            Blob => -self.nearest_visible(me, at, &[Blob, Potion]).map_or(0.0, |d| (d - 4.0).max(0.0)),
            Minitaur => {
                let e = self.first_other(me, Entrance).map(|e| self.path(at, e));
                let x = self.first_other(me, Exit).map(|x| self.path(at, x));
                match (e, x) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => 0.0,
                }
            }
            Potion => 0.0,
        }
    }
}

pub fn furnish_agent(
    grid: &LayoutGrid,
    rng: &mut RandomStream,
    budget: &Budget,
) -> Result<FurnishReport, FurnishError> {
    furnish_agent_traced(grid, rng, budget).map(|(r, _)| r)
}

pub fn furnish_agent_traced(
    grid: &LayoutGrid,
    rng: &mut RandomStream,
    budget: &Budget,
) -> Result<(FurnishReport, AgentTrace), FurnishError> {
    require_floor(grid)?;
    let counts = budget.resolve(rng);
    let floor = grid.floor_cells();
    if floor.len() < counts.total() {
        return Err(FurnishError::InsufficientFloor { needed: counts.total(), available: floor.len() });
    }
    let mut board = Board::new(grid);
    let cells: Vec<Pos> = floor.choose_multiple(rng, counts.total()).copied().collect();
    for (kind, pos) in Budget::sequence(&counts).into_iter().zip(cells) {
        board.place(kind, pos);
    }
    let mut scorer = Scorer { dist: DistanceTable::new(grid), sight: SightTable::new(grid), board };
    let mut trace = AgentTrace::default();
    let entrance_exit = |s: &Scorer<'_>| {
        match (s.board.first(EntityKind::Entrance), s.board.first(EntityKind::Exit)) {
            (Some(e), Some(x)) => s.dist.get(e, x).unwrap_or(0),
            _ => 0,
        }
    };
    trace.entrance_exit.push(entrance_exit(&scorer));

    for _ in 0..AGENT_TURNS {
        for me in 0..scorer.board.placements.len() {
            let here = scorer.board.placements[me].pos;
            let random_walk = scorer.board.placements[me].kind == EntityKind::Potion;
            let mut options = vec![here];
            options.extend(Direction::ALL.iter().map(|&d| here.step(d)).filter(|&q| scorer.board.is_empty_floor(q)));
            let scores: Vec<f64> = options
                .iter()
                .map(|&q| if random_walk { rng.gen::<f64>() } else { scorer.score(me, q) })
                .collect();
            // First maximum wins: stay, then N, S, E, W.
            let mut best = 0;
            for (i, s) in scores.iter().enumerate() {
                if *s > scores[best] {
                    best = i;
                }
            }
            trace.decisions.push((scores[0], scores[best]));
            scorer.board.move_object(me, options[best]);
        }
        trace.entrance_exit.push(entrance_exit(&scorer));
    }
    Ok((scorer.board.into_report(FurnisherKind::Agent, AGENT_TURNS), trace))
}
