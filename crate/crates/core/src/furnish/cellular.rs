//! Cellular-automaton furnisher: visits empty floor cells in random order
//! and drops the first object whose neighbourhood rule the cell satisfies.

use rand::seq::SliceRandom;

use crate::furnish::{require_floor, Board, Budget, FurnishError, FurnishReport, FurnisherKind, KindCounts};
use crate::grid::{LayoutGrid, Pos};
use crate::level::EntityKind;
use crate::rng::RandomStream;

pub const CELLULAR_MAX_PASSES: u32 = 20;

const PRIORITY: [EntityKind; 11] = [
    EntityKind::Entrance,
    EntityKind::Exit,
    EntityKind::Portal,
    EntityKind::Treasure,
    EntityKind::Trap,
    EntityKind::Goblin,
    EntityKind::GoblinMage,
    EntityKind::Ogre,
    EntityKind::Blob,
    EntityKind::Minitaur,
    EntityKind::Potion,
];

/// Neighbourhood rule for `kind` at `p`. Neighbourhoods are Chebyshev
/// squares with the centre excluded.
pub(crate) fn cellular_rule(board: &Board<'_>, kind: EntityKind, p: Pos) -> bool {
    let grid = board.grid;
    let populated = |q: Pos| board.occupant(q).is_some();
    let count8 = |f: &dyn Fn(Pos) -> bool| p.neighbors8().filter(|&q| f(q)).count();
    match kind {
        EntityKind::Entrance => !board.kind_within(p, 5, EntityKind::Exit),
        EntityKind::Exit => !board.kind_within(p, 5, EntityKind::Entrance),
        EntityKind::Portal => {
            let near_entrance = board.kind_within(p, 3, EntityKind::Entrance);
            let near_exit = board.kind_within(p, 3, EntityKind::Exit);
            match board.first(EntityKind::Portal) {
                None => near_entrance || near_exit,
                Some(other) => {
                    let other_by_entrance = board.kind_within(other, 3, EntityKind::Entrance);
                    if other_by_entrance {
                        near_exit
                    } else {
                        near_entrance
                    }
                }
            }
        }
        EntityKind::Treasure => grid.wall_neighbors8(p) >= 3,
        EntityKind::Potion => count8(&populated) <= 3,
        EntityKind::Trap => count8(&|q| grid.is_wall(q) || populated(q)) >= 5,
        EntityKind::Goblin => {
            grid.wall_neighbors8(p) >= 4 && !board.kind_within(p, 3, EntityKind::Goblin)
        }
        EntityKind::GoblinMage => board.kind_within(p, 3, EntityKind::Goblin),
        EntityKind::Ogre => grid.wall_neighbors8(p) == 0,
        EntityKind::Blob => board.kind_within(p, 3, EntityKind::Potion),
        EntityKind::Minitaur => board.kind_within(p, 3, EntityKind::Entrance),
    }
}

fn complete(board: &Board<'_>, counts: &KindCounts) -> bool {
    EntityKind::ALL.iter().all(|&k| board.count(k) >= counts.get(k))
}

pub fn furnish_cellular(
    grid: &LayoutGrid,
    rng: &mut RandomStream,
    budget: &Budget,
) -> Result<FurnishReport, FurnishError> {
    require_floor(grid)?;
    let counts = budget.resolve(rng);
    let mut board = Board::new(grid);
    let mut passes = 0;
    while passes < CELLULAR_MAX_PASSES && !complete(&board, &counts) {
        passes += 1;
        let mut order = board.empty_floor();
        order.shuffle(rng);
        for p in order {
            if board.occupant(p).is_some() {
                continue;
            }
            let kind = PRIORITY
                .into_iter()
                .find(|&k| board.count(k) < counts.get(k) && cellular_rule(&board, k, p));
            if let Some(kind) = kind {
                board.place(kind, p);
            }
        }
    }
    for kind in PRIORITY {
        while board.count(kind) < counts.get(kind) {
            board.place_relaxed(kind, rng)?;
        }
    }
    Ok(board.into_report(FurnisherKind::Cellular, passes))
}
