//! Grid distances, the floor-graph diameter and line of sight.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

use crate::grid::{LayoutGrid, Pos, CELLS};

/// Distance value for cells that cannot be reached.
pub const UNREACHABLE: u16 = u16::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpatialError {
    #[error("{0} is not a floor cell")]
    NotFloor(Pos),
}

/// 4-connected BFS distances from `start` over floor cells.
pub fn bfs_distances(grid: &LayoutGrid, start: Pos) -> [u16; CELLS] {
    bfs_distances_where(grid, start, |_| false)
}

/// BFS over floor cells, additionally treating cells where `blocked` holds
/// as walls. `start` itself is always expanded.
pub fn bfs_distances_where(
    grid: &LayoutGrid,
    start: Pos,
    blocked: impl Fn(Pos) -> bool,
) -> [u16; CELLS] {
    let mut dist = [UNREACHABLE; CELLS];
    if !grid.is_floor(start) {
        return dist;
    }
    dist[start.index()] = 0;
    let mut queue = VecDeque::with_capacity(CELLS);
    queue.push_back(start);
    while let Some(p) = queue.pop_front() {
        let d = dist[p.index()] + 1;
        for n in p.neighbors4() {
            if dist[n.index()] == UNREACHABLE && grid.is_floor(n) && !blocked(n) {
                dist[n.index()] = d;
                queue.push_back(n);
            }
        }
    }
    dist
}

/// Shortest 4-connected path length in tiles, `None` when disconnected.
pub fn shortest_path_distance(grid: &LayoutGrid, a: Pos, b: Pos) -> Result<Option<u32>, SpatialError> {
    for p in [a, b] {
        if !grid.is_floor(p) {
            return Err(SpatialError::NotFloor(p));
        }
    }
    let d = bfs_distances(grid, a)[b.index()];
    Ok((d != UNREACHABLE).then_some(u32::from(d)))
}

/// One shortest path from `a` to `b` (inclusive), preferring N, S, E, W at
/// each step.
pub fn shortest_path(grid: &LayoutGrid, a: Pos, b: Pos) -> Option<Vec<Pos>> {
    let dist = bfs_distances(grid, b);
    if dist[a.index()] == UNREACHABLE {
        return None;
    }
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let d = dist[cur.index()];
        cur = cur.neighbors4().find(|n| grid.is_floor(*n) && dist[n.index()] + 1 == d)?;
        path.push(cur);
    }
    Some(path)
}

/// A* distance with the Manhattan heuristic. Agrees with BFS; kept as the
/// search the minitaur is specified to use.
pub fn astar_distance(grid: &LayoutGrid, a: Pos, b: Pos) -> Option<u32> {
    if !grid.is_floor(a) || !grid.is_floor(b) {
        return None;
    }
    let mut best = [u32::MAX; CELLS];
    let mut open = BinaryHeap::new();
    best[a.index()] = 0;
    open.push(Reverse((a.manhattan(b), 0u32, a.index())));
    while let Some(Reverse((_, g, i))) = open.pop() {
        let p = Pos::from_index(i);
        if p == b {
            return Some(g);
        }
        if g > best[i] {
            continue;
        }
        for n in p.neighbors4() {
            if grid.is_floor(n) && g + 1 < best[n.index()] {
                best[n.index()] = g + 1;
                open.push(Reverse((g + 1 + n.manhattan(b), g + 1, n.index())));
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LongestPath {
    pub a: Pos,
    pub b: Pos,
    pub length: u32,
}

/// Graph diameter of the floor cells: the pair with the largest shortest-path
/// distance. Ties keep the first pair in scan order of `a`, then `b`.
pub fn diameter(grid: &LayoutGrid) -> Option<LongestPath> {
    let floors = grid.floor_cells();
    let mut best: Option<LongestPath> = None;
    for &a in &floors {
        let dist = bfs_distances(grid, a);
        for &b in &floors {
            let d = dist[b.index()];
            if d == UNREACHABLE {
                continue;
            }
            let d = u32::from(d);
            if best.is_none_or(|lp| d > lp.length) {
                best = Some(LongestPath { a, b, length: d });
            }
        }
    }
    best
}

/// Cells strictly between `a` and `b` on the symmetric Bresenham line. When
/// the ideal line passes exactly between two cells both are visited, which
/// makes the cell set independent of direction.
pub fn line_cells(a: Pos, b: Pos, mut visit: impl FnMut(Pos) -> bool) -> bool {
    let dx = b.x - a.x;
    let dy = b.y - a.y;
    let (major, minor) = (dx.abs().max(dy.abs()), dx.abs().min(dy.abs()));
    if major <= 1 {
        return true;
    }
    let x_major = dx.abs() >= dy.abs();
    let (smaj, smin) = if x_major { (dx.signum(), dy.signum()) } else { (dy.signum(), dx.signum()) };
    let cell = |i: i32, j: i32| {
        if x_major {
            Pos::new(a.x + smaj * i, a.y + smin * j)
        } else {
            Pos::new(a.x + smin * j, a.y + smaj * i)
        }
    };
    for i in 1..major {
        let t = i * minor;
        let (q, r) = (t / major, t % major);
        let ok = match (2 * r).cmp(&major) {
            std::cmp::Ordering::Less => visit(cell(i, q)),
            std::cmp::Ordering::Greater => visit(cell(i, q + 1)),
            std::cmp::Ordering::Equal => visit(cell(i, q)) && visit(cell(i, q + 1)),
        };
        if !ok {
            return false;
        }
    }
    true
}

/// True iff no wall lies strictly between `a` and `b`.
pub fn line_of_sight(grid: &LayoutGrid, a: Pos, b: Pos) -> bool {
    line_cells(a, b, |p| !grid.is_wall(p))
}

/// All-pairs shortest-path distances between floor cells.
#[derive(Clone)]
pub struct DistanceTable {
    dist: Vec<u8>,
}

/// Byte distance marking unreachable pairs in a [`DistanceTable`].
pub const TABLE_UNREACHABLE: u8 = u8::MAX;

impl DistanceTable {
    pub fn new(grid: &LayoutGrid) -> Self {
        let mut dist = vec![TABLE_UNREACHABLE; CELLS * CELLS];
        for a in grid.floor_cells() {
            let row = bfs_distances(grid, a);
            let base = a.index() * CELLS;
            for (i, &d) in row.iter().enumerate() {
                if d != UNREACHABLE {
                    dist[base + i] = d.min(u16::from(TABLE_UNREACHABLE - 1)) as u8;
                }
            }
        }
        Self { dist }
    }

    #[inline]
    pub fn raw(&self, a: Pos, b: Pos) -> u8 {
        self.dist[a.index() * CELLS + b.index()]
    }

    pub fn get(&self, a: Pos, b: Pos) -> Option<u32> {
        let d = self.raw(a, b);
        (d != TABLE_UNREACHABLE).then_some(u32::from(d))
    }
}

/// Precomputed line-of-sight relation between floor cells.
#[derive(Clone)]
pub struct SightTable {
    bits: Vec<u64>,
}

const WORDS_PER_ROW: usize = CELLS.div_ceil(64);

impl SightTable {
    pub fn new(grid: &LayoutGrid) -> Self {
        let mut bits = vec![0u64; CELLS * WORDS_PER_ROW];
        let floors = grid.floor_cells();
        for (i, &a) in floors.iter().enumerate() {
            for &b in &floors[i..] {
                if line_of_sight(grid, a, b) {
                    bits[a.index() * WORDS_PER_ROW + b.index() / 64] |= 1 << (b.index() % 64);
                    bits[b.index() * WORDS_PER_ROW + a.index() / 64] |= 1 << (a.index() % 64);
                }
            }
        }
        Self { bits }
    }

    #[inline]
    pub fn visible(&self, a: Pos, b: Pos) -> bool {
        self.bits[a.index() * WORDS_PER_ROW + b.index() / 64] & (1 << (b.index() % 64)) != 0
    }
}
