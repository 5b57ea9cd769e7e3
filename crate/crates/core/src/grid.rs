//! The 10×20 wall/floor layout grid.

use std::fmt;

pub const WIDTH: usize = 10;
pub const HEIGHT: usize = 20;
pub const CELLS: usize = WIDTH * HEIGHT;
/// Playable area inside the fixed wall frame.
pub const INTERIOR_WIDTH: usize = WIDTH - 2;
pub const INTERIOR_HEIGHT: usize = HEIGHT - 2;
pub const INTERIOR_CELLS: usize = INTERIOR_WIDTH * INTERIOR_HEIGHT;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tile {
    Wall,
    Floor,
}

/// Grid coordinate, origin top-left, `x` to the right and `y` down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
}

impl Pos {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn in_bounds(self) -> bool {
        self.x >= 0 && self.y >= 0 && (self.x as usize) < WIDTH && (self.y as usize) < HEIGHT
    }

    pub fn is_border(self) -> bool {
        self.x == 0 || self.y == 0 || self.x as usize == WIDTH - 1 || self.y as usize == HEIGHT - 1
    }

    pub fn is_interior(self) -> bool {
        self.in_bounds() && !self.is_border()
    }

    /// Row-major index; only meaningful for in-bounds positions.
    pub fn index(self) -> usize {
        self.y as usize * WIDTH + self.x as usize
    }

    pub fn from_index(i: usize) -> Self {
        Self::new((i % WIDTH) as i32, (i / WIDTH) as i32)
    }

    pub fn offset(self, dx: i32, dy: i32) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }

    pub fn step(self, dir: Direction) -> Self {
        let (dx, dy) = dir.delta();
        self.offset(dx, dy)
    }

    pub fn manhattan(self, other: Pos) -> u32 {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y)
    }

    pub fn chebyshev(self, other: Pos) -> u32 {
        self.x.abs_diff(other.x).max(self.y.abs_diff(other.y))
    }

    pub fn euclidean(self, other: Pos) -> f64 {
        let dx = f64::from(self.x - other.x);
        let dy = f64::from(self.y - other.y);
        dx.hypot(dy)
    }

    /// In-bounds 4-neighbours in N, S, E, W order.
    pub fn neighbors4(self) -> impl Iterator<Item = Pos> {
        Direction::ALL.into_iter().map(move |d| self.step(d)).filter(|p| p.in_bounds())
    }

    /// In-bounds 8-neighbours.
    pub fn neighbors8(self) -> impl Iterator<Item = Pos> {
        const OFFSETS: [(i32, i32); 8] =
            [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];
        OFFSETS.into_iter().map(move |(dx, dy)| self.offset(dx, dy)).filter(|p| p.in_bounds())
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The four movement directions. Declaration order is the tie-break order
/// used everywhere (N, S, E, W).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    North,
    South,
    East,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::North, Direction::South, Direction::East, Direction::West];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Direction::North => (0, -1),
            Direction::South => (0, 1),
            Direction::East => (1, 0),
            Direction::West => (-1, 0),
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::North => Direction::South,
            Direction::South => Direction::North,
            Direction::East => Direction::West,
            Direction::West => Direction::East,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn glyph(self) -> char {
        match self {
            Direction::North => 'N',
            Direction::South => 'S',
            Direction::East => 'E',
            Direction::West => 'W',
        }
    }

    pub fn from_glyph(c: char) -> Option<Direction> {
        Some(match c {
            'N' => Direction::North,
            'S' => Direction::South,
            'E' => Direction::East,
            'W' => Direction::West,
            _ => return None,
        })
    }
}

/// A 10×20 grid of tiles. Generators keep the border frame as walls and the
/// floor as one 4-connected region; [`LayoutGrid::violations`] checks both.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LayoutGrid {
    cells: [Tile; CELLS],
}

impl LayoutGrid {
    pub fn all_wall() -> Self {
        Self { cells: [Tile::Wall; CELLS] }
    }

    /// Border walls with every interior cell floor.
    pub fn open() -> Self {
        let mut g = Self::all_wall();
        for p in interior_positions() {
            g.set(p, Tile::Floor);
        }
        g
    }

    pub fn get(&self, p: Pos) -> Tile {
        if p.in_bounds() {
            self.cells[p.index()]
        } else {
            Tile::Wall
        }
    }

    pub fn set(&mut self, p: Pos, tile: Tile) {
        self.cells[p.index()] = tile;
    }

    pub fn is_floor(&self, p: Pos) -> bool {
        self.get(p) == Tile::Floor
    }

    pub fn is_wall(&self, p: Pos) -> bool {
        self.get(p) == Tile::Wall
    }

    pub fn floor_count(&self) -> usize {
        self.cells.iter().filter(|&&t| t == Tile::Floor).count()
    }

    /// Floor cells in row-major scan order.
    pub fn floor_cells(&self) -> Vec<Pos> {
        (0..CELLS).map(Pos::from_index).filter(|&p| self.is_floor(p)).collect()
    }

    pub fn wall_neighbors4(&self, p: Pos) -> usize {
        Direction::ALL.iter().filter(|&&d| self.is_wall(p.step(d))).count()
    }

    pub fn wall_neighbors8(&self, p: Pos) -> usize {
        const OFFSETS: [(i32, i32); 8] =
            [(-1, -1), (0, -1), (1, -1), (-1, 0), (1, 0), (-1, 1), (0, 1), (1, 1)];
        OFFSETS.iter().filter(|&&(dx, dy)| self.is_wall(p.offset(dx, dy))).count()
    }

    /// 4-connected floor regions, each listed in scan order; regions are
    /// ordered by their first cell.
    pub fn floor_regions(&self) -> Vec<Vec<Pos>> {
        let mut seen = [false; CELLS];
        let mut regions = Vec::new();
        for i in 0..CELLS {
            let start = Pos::from_index(i);
            if seen[i] || !self.is_floor(start) {
                continue;
            }
            let mut region = Vec::new();
            let mut stack = vec![start];
            seen[i] = true;
            while let Some(p) = stack.pop() {
                region.push(p);
                for n in p.neighbors4() {
                    if !seen[n.index()] && self.is_floor(n) {
                        seen[n.index()] = true;
                        stack.push(n);
                    }
                }
            }
            region.sort_by_key(|p| p.index());
            regions.push(region);
        }
        regions
    }

    pub fn is_connected(&self) -> bool {
        self.floor_regions().len() <= 1
    }

    /// Layout invariant breaches: non-wall border cells and floor split into
    /// more than one region.
    pub fn violations(&self) -> Vec<GridViolation> {
        let mut out: Vec<GridViolation> = (0..CELLS)
            .map(Pos::from_index)
            .filter(|p| p.is_border() && self.is_floor(*p))
            .map(GridViolation::BorderNotWall)
            .collect();
        let regions = self.floor_regions().len();
        if regions > 1 {
            out.push(GridViolation::DisconnectedFloor { regions });
        }
        out
    }
}

impl fmt::Debug for LayoutGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f)?;
        for y in 0..HEIGHT {
            for x in 0..WIDTH {
                let c = match self.get(Pos::new(x as i32, y as i32)) {
                    Tile::Wall => '#',
                    Tile::Floor => '.',
                };
                write!(f, "{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridViolation {
    BorderNotWall(Pos),
    DisconnectedFloor { regions: usize },
}

/// Interior cells in scan order.
pub fn interior_positions() -> impl Iterator<Item = Pos> {
    (1..HEIGHT as i32 - 1).flat_map(|y| (1..WIDTH as i32 - 1).map(move |x| Pos::new(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_grid_has_interior_floor_only() {
        let g = LayoutGrid::open();
        assert_eq!(g.floor_count(), INTERIOR_CELLS);
        assert_eq!(INTERIOR_CELLS, 144);
        assert!(g.violations().is_empty());
        assert!(g.is_wall(Pos::new(0, 5)));
        assert!(g.is_wall(Pos::new(-3, 5)));
    }

    #[test]
    fn regions_split_by_a_wall_row() {
        let mut g = LayoutGrid::open();
        for x in 1..9 {
            g.set(Pos::new(x, 10), Tile::Wall);
        }
        let regions = g.floor_regions();
        assert_eq!(regions.len(), 2);
        assert_eq!(regions[0].len(), 8 * 9);
        assert_eq!(regions[1].len(), 8 * 8);
        assert_eq!(g.violations(), vec![GridViolation::DisconnectedFloor { regions: 2 }]);
    }

    #[test]
    fn border_floor_is_reported() {
        let mut g = LayoutGrid::open();
        g.set(Pos::new(0, 3), Tile::Floor);
        assert!(g.violations().contains(&GridViolation::BorderNotWall(Pos::new(0, 3))));
    }
}
