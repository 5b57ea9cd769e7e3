//! Digger-agent creator.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::creators::CreatorParams;
use crate::grid::{Direction, LayoutGrid, Pos, Tile, INTERIOR_HEIGHT, INTERIOR_WIDTH};
use crate::rng::RandomStream;

/// Turn probability seen before each digger step, for inspection.
#[derive(Debug, Clone, Default)]
pub struct DiggerTrace {
    pub turn_probs: Vec<f64>,
    pub target: usize,
}

pub fn create_agent_layout(rng: &mut RandomStream, params: &CreatorParams) -> LayoutGrid {
    dig(rng, params).0
}

pub fn dig(rng: &mut RandomStream, params: &CreatorParams) -> (LayoutGrid, DiggerTrace) {
    let (lo, hi) = params.digger_floor_target_range;
    let target = rng.gen_range(lo..=hi);
    let mut grid = LayoutGrid::all_wall();
    let mut pos = Pos::new(
        rng.gen_range(1..=INTERIOR_WIDTH as i32),
        rng.gen_range(1..=INTERIOR_HEIGHT as i32),
    );
    grid.set(pos, Tile::Floor);
    let mut floor = 1;
    let mut dir = *Direction::ALL.choose(rng).expect("four directions");
    let mut turn_prob = 0.0_f64;
    let mut trace = DiggerTrace { turn_probs: Vec::new(), target };

    while floor < target {
        trace.turn_probs.push(turn_prob);
        if rng.gen_bool(turn_prob.min(1.0)) {
            let others: Vec<Direction> = Direction::ALL.into_iter().filter(|&d| d != dir).collect();
            dir = *others.choose(rng).expect("three directions");
            turn_prob = 0.0;
        } else {
            turn_prob = (turn_prob + params.digger_turn_prob_step).min(1.0);
        }
        if !pos.step(dir).is_interior() {
            let open: Vec<Direction> =
                Direction::ALL.into_iter().filter(|&d| d != dir && pos.step(d).is_interior()).collect();
            dir = *open.choose(rng).expect("an interior cell always has an interior neighbour");
            turn_prob = 0.0;
        }
        pos = pos.step(dir);
        if grid.is_wall(pos) {
            grid.set(pos, Tile::Floor);
            floor += 1;
        }
    }
    (grid, trace)
}
