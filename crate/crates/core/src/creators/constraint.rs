//! Constraint-based creator: spawn overlapping rooms, push colliding rooms
//! apart one tile at a time, then rasterize.

use rand::Rng;

use crate::creators::cellular::prune_islands;
use crate::creators::CreatorParams;
use crate::grid::{LayoutGrid, Pos, Tile, INTERIOR_HEIGHT, INTERIOR_WIDTH};
use crate::rng::RandomStream;

/// A rectangular room in interior coordinates (`(0,0)` is grid cell `(1,1)`).
/// The outermost ring of the rectangle is the room's wall; the rest is its
/// floor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Room {
    pub x: i32,
    pub y: i32,
    pub w: i32,
    pub h: i32,
}

impl Room {
    pub fn new(x: i32, y: i32, w: i32, h: i32) -> Self {
        Self { x, y, w, h }
    }

    pub fn in_bounds(&self) -> bool {
        self.x >= 0
            && self.y >= 0
            && self.x + self.w <= INTERIOR_WIDTH as i32
            && self.y + self.h <= INTERIOR_HEIGHT as i32
    }

    fn clamped(self) -> Self {
        let x = self.x.clamp(0, (INTERIOR_WIDTH as i32 - self.w).max(0));
        let y = self.y.clamp(0, (INTERIOR_HEIGHT as i32 - self.h).max(0));
        Self { x, y, ..self }
    }

    /// Twice the centre, to stay in integers.
    fn center2(&self) -> (i32, i32) {
        (2 * self.x + self.w, 2 * self.y + self.h)
    }

    fn contains_interior(&self, x: i32, y: i32) -> bool {
        x > self.x && x < self.x + self.w - 1 && y > self.y && y < self.y + self.h - 1
    }
}

/// Area of the intersection of two rooms.
pub fn overlap_area(a: &Room, b: &Room) -> i32 {
    let w = (a.x + a.w).min(b.x + b.w) - a.x.max(b.x);
    let h = (a.y + a.h).min(b.y + b.h) - a.y.max(b.y);
    w.max(0) * h.max(0)
}

fn has_collisions(rooms: &[Room]) -> bool {
    rooms.iter().enumerate().any(|(i, a)| rooms[i + 1..].iter().any(|b| overlap_area(a, b) > 0))
}

/// One separation pass. Every overlapping pair pushes its two rooms one tile
/// apart along the dominant axis of their centre offset (horizontal on a
/// tie; direction drawn from `rng` when the centres coincide on that axis).
/// Pushes accumulate per room; rooms are then clamped into the interior.
pub fn separate_rooms_step(rooms: &[Room], rng: &mut RandomStream) -> Vec<Room> {
    let mut shift = vec![(0i32, 0i32); rooms.len()];
    for i in 0..rooms.len() {
        for j in i + 1..rooms.len() {
            if overlap_area(&rooms[i], &rooms[j]) == 0 {
                continue;
            }
            let (ci, cj) = (rooms[i].center2(), rooms[j].center2());
            let (dx, dy) = (cj.0 - ci.0, cj.1 - ci.1);
            let horizontal = dx.abs() >= dy.abs();
            let along = if horizontal { dx } else { dy };
            let sign = match along.signum() {
                0 => {
                    if rng.gen_bool(0.5) {
                        1
                    } else {
                        -1
                    }
                }
                s => s,
            };
            let push = if horizontal { (sign, 0) } else { (0, sign) };
            shift[j].0 += push.0;
            shift[j].1 += push.1;
            shift[i].0 -= push.0;
            shift[i].1 -= push.1;
        }
    }
    rooms
        .iter()
        .zip(shift)
        .map(|(r, (sx, sy))| Room { x: r.x + sx, y: r.y + sy, ..*r }.clamped())
        .collect()
}

/// Floor is the union of room floor areas; wall rings stay wall unless
/// another room's floor covers them.
pub fn rasterize_rooms(rooms: &[Room]) -> LayoutGrid {
    let mut grid = LayoutGrid::all_wall();
    for y in 0..INTERIOR_HEIGHT as i32 {
        for x in 0..INTERIOR_WIDTH as i32 {
            if rooms.iter().any(|r| r.contains_interior(x, y)) {
                grid.set(Pos::new(x + 1, y + 1), Tile::Floor);
            }
        }
    }
    grid
}

#[derive(Debug, Clone)]
pub struct ConstraintTrace {
    pub spawned: Vec<Room>,
    pub rooms: Vec<Room>,
    /// Separation steps executed.
    pub iterations: u32,
    pub converged: bool,
}

pub fn create_constraint_layout(rng: &mut RandomStream, params: &CreatorParams) -> LayoutGrid {
    create_constraint_layout_traced(rng, params).0
}

pub fn create_constraint_layout_traced(
    rng: &mut RandomStream,
    params: &CreatorParams,
) -> (LayoutGrid, ConstraintTrace) {
    let count = rng.gen_range(params.room_count_range.0..=params.room_count_range.1);
    let spawned: Vec<Room> = (0..count)
        .map(|_| {
            let w = rng.gen_range(params.room_w_range.0..=params.room_w_range.1);
            let h = rng.gen_range(params.room_h_range.0..=params.room_h_range.1);
            let x = rng.gen_range(0..=(INTERIOR_WIDTH as i32 - w).max(0));
            let y = rng.gen_range(0..=(INTERIOR_HEIGHT as i32 - h).max(0));
            Room::new(x, y, w, h)
        })
        .collect();
    let (rooms, iterations, converged) = separate(spawned.clone(), rng, params.max_separation_iters);
    let (grid, _) = prune_islands(&rasterize_rooms(&rooms));
    (grid, ConstraintTrace { spawned, rooms, iterations, converged })
}

fn separate(mut rooms: Vec<Room>, rng: &mut RandomStream, max_iters: u32) -> (Vec<Room>, u32, bool) {
    let mut iterations = 0;
    loop {
        let done = !has_collisions(&rooms) && rooms.iter().all(Room::in_bounds);
        if done || iterations >= max_iters {
            return (rooms, iterations, done);
        }
        rooms = separate_rooms_step(&rooms, rng);
        iterations += 1;
    }
}
