//! Cellular-automaton cave creator.

use rand::Rng;

use crate::creators::CreatorParams;
use crate::grid::{interior_positions, LayoutGrid, Tile, INTERIOR_CELLS};
use crate::rng::RandomStream;

/// One synchronous majority step over the 8-neighbourhood, restricted to the
/// interior: the wall frame is not counted and never changes. A cell becomes
/// wall when walls outnumber floors among its interior neighbours and floor
/// otherwise, so a tie opens the cell.
pub fn ca_step(grid: &LayoutGrid) -> LayoutGrid {
    let mut next = grid.clone();
    for p in interior_positions() {
        let (mut walls, mut floors) = (0, 0);
        for n in p.neighbors8().filter(|n| n.is_interior()) {
            if grid.is_wall(n) {
                walls += 1;
            } else {
                floors += 1;
            }
        }
        next.set(p, if walls > floors { Tile::Wall } else { Tile::Floor });
    }
    next
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PruneOutcome {
    /// Floor cells remain: the largest region kept, `filled` cells walled.
    Kept { region: usize, filled: usize },
    /// The grid had no floor at all.
    NoFloor,
}

/// Wall off every floor cell outside the largest 4-connected region. Equal
/// sizes keep the region whose first cell comes first in scan order.
pub fn prune_islands(grid: &LayoutGrid) -> (LayoutGrid, PruneOutcome) {
    let regions = grid.floor_regions();
    let Some(keep) = regions
        .iter()
        .enumerate()
        .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
        .map(|(i, _)| i)
    else {
        return (grid.clone(), PruneOutcome::NoFloor);
    };
    let mut out = grid.clone();
    let mut filled = 0;
    for (i, region) in regions.iter().enumerate() {
        if i != keep {
            filled += region.len();
            for &p in region {
                out.set(p, Tile::Wall);
            }
        }
    }
    (out, PruneOutcome::Kept { region: regions[keep].len(), filled })
}

fn interior_floor_fraction(grid: &LayoutGrid) -> f64 {
    grid.floor_count() as f64 / INTERIOR_CELLS as f64
}

pub fn create_cellular_layout(rng: &mut RandomStream, params: &CreatorParams) -> LayoutGrid {
    let mut grid = LayoutGrid::all_wall();
    for p in interior_positions() {
        if !rng.gen_bool(params.ca_wall_prob) {
            grid.set(p, Tile::Floor);
        }
    }
    for _ in 0..params.ca_max_initial_steps {
        let next = ca_step(&grid);
        if next == grid {
            break;
        }
        grid = next;
    }
    while interior_floor_fraction(&grid) > params.ca_floor_cap {
        for p in interior_positions() {
            if grid.is_floor(p) && rng.gen_bool(params.ca_reseed_wall_prob) {
                grid.set(p, Tile::Wall);
            }
        }
        grid = ca_step(&grid);
    }
    prune_islands(&grid).0
}
