//! Constraint-based furnisher: every object kind has a placement rule; each
//! object goes to a uniformly chosen cell among those satisfying it.

use rand::seq::SliceRandom;

use crate::furnish::{require_floor, Board, Budget, FurnishError, FurnishReport, FurnisherKind};
use crate::grid::{LayoutGrid, Pos};
use crate::level::EntityKind;
use crate::rng::RandomStream;
use crate::spatial::{diameter, shortest_path, DistanceTable, SightTable};

const PLACEMENT_ORDER: [EntityKind; 11] = [
    EntityKind::Entrance,
    EntityKind::Exit,
    EntityKind::Portal,
    EntityKind::Treasure,
    EntityKind::Potion,
    EntityKind::Trap,
    EntityKind::Goblin,
    EntityKind::GoblinMage,
    EntityKind::Ogre,
    EntityKind::Blob,
    EntityKind::Minitaur,
];

struct Context<'a> {
    board: Board<'a>,
    dist: DistanceTable,
    sight: SightTable,
    lp_ends: (Pos, Pos),
    /// Endpoint of the longest path the entrance was placed near.
    entrance_end: Option<Pos>,
    trap_zone: Vec<Pos>,
}

impl Context<'_> {
    fn path(&self, a: Pos, b: Pos) -> u32 {
        self.dist.get(a, b).unwrap_or(u32::MAX)
    }

    fn in_sight_band(&self, p: Pos, target: Pos) -> bool {
        let d = p.euclidean(target);
        (4.0..=8.0).contains(&d) && self.sight.visible(p, target)
    }

    fn satisfies(&self, kind: EntityKind, p: Pos) -> bool {
        let board = &self.board;
        let grid = board.grid;
        match kind {
            EntityKind::Entrance => {
                self.path(p, self.lp_ends.0) <= 8 || self.path(p, self.lp_ends.1) <= 8
            }
            EntityKind::Exit => {
                let far_end = match self.entrance_end {
                    Some(e) if e == self.lp_ends.0 => self.lp_ends.1,
                    Some(_) => self.lp_ends.0,
                    None => return false,
                };
                self.path(p, far_end) <= 5
            }
            EntityKind::Portal => {
                let (Some(entrance), Some(exit)) = (board.first(EntityKind::Entrance), board.first(EntityKind::Exit))
                else {
                    return false;
                };
                match board.first(EntityKind::Portal) {
                    None => (5..=10).contains(&self.path(p, entrance)),
                    Some(other) => (5..=10).contains(&self.path(p, exit)) && self.path(p, other) >= 10,
                }
            }
            EntityKind::Treasure => grid.wall_neighbors4(p) >= 2,
            EntityKind::Potion => true,
            EntityKind::Trap => self.trap_zone.iter().any(|&q| q.manhattan(p) <= 1),
            EntityKind::Goblin => grid.wall_neighbors4(p) >= 1,
            EntityKind::GoblinMage => {
                p.neighbors4().any(|q| board.occupant(q) == Some(EntityKind::Goblin))
            }
            EntityKind::Ogre => board.positions(EntityKind::Treasure).any(|t| self.in_sight_band(p, t)),
            EntityKind::Blob => board.positions(EntityKind::Potion).any(|t| self.in_sight_band(p, t)),
            EntityKind::Minitaur => match board.first(EntityKind::Entrance) {
                Some(e) => (4..=8).contains(&self.path(p, e)),
                None => false,
            },
        }
    }

    fn candidates(&self, kind: EntityKind) -> Vec<Pos> {
        let cells: Vec<Pos> =
            self.board.empty_floor().into_iter().filter(|&p| self.satisfies(kind, p)).collect();
        if kind == EntityKind::Treasure {
            let enclosed: Vec<Pos> =
                cells.iter().copied().filter(|&p| self.board.grid.wall_neighbors4(p) >= 3).collect();
            if !enclosed.is_empty() {
                return enclosed;
            }
        }
        cells
    }
}

pub fn furnish_constraint(
    grid: &LayoutGrid,
    rng: &mut RandomStream,
    budget: &Budget,
) -> Result<FurnishReport, FurnishError> {
    require_floor(grid)?;
    let counts = budget.resolve(rng);
    if grid.floor_count() < counts.total() {
        return Err(FurnishError::InsufficientFloor {
            needed: counts.total(),
            available: grid.floor_count(),
        });
    }
    let lp = diameter(grid).ok_or(FurnishError::NoFloor)?;
    let mut ctx = Context {
        board: Board::new(grid),
        dist: DistanceTable::new(grid),
        sight: SightTable::new(grid),
        lp_ends: (lp.a, lp.b),
        entrance_end: None,
        trap_zone: Vec::new(),
    };

    for kind in PLACEMENT_ORDER {
        for _ in 0..counts.get(kind) {
            let candidates = ctx.candidates(kind);
            match candidates.choose(rng) {
                Some(&p) => ctx.board.place(kind, p),
                None => ctx.board.place_relaxed(kind, rng)?,
            }
            if kind == EntityKind::Entrance {
                let e = ctx.board.first(EntityKind::Entrance).expect("just placed");
                let (a, b) = ctx.lp_ends;
                ctx.entrance_end = Some(if ctx.path(e, a) <= ctx.path(e, b) { a } else { b });
            }
            if kind == EntityKind::Exit {
                let (e, x) = (ctx.board.first(EntityKind::Entrance), ctx.board.first(EntityKind::Exit));
                if let (Some(e), Some(x)) = (e, x) {
                    ctx.trap_zone = shortest_path(grid, e, x).unwrap_or_default();
                }
            }
        }
    }
    Ok(ctx.board.into_report(FurnisherKind::Constraint, 1))
}
