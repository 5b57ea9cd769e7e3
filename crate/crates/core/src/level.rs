//! Furnished levels, their text format and structural validation.
//!
//! Text format: 20 lines of 10 glyphs, each line terminated by LF.
//!
//! | glyph | meaning    | glyph | meaning    |
//! |-------|------------|-------|------------|
//! | `#`   | wall       | `^`   | trap       |
//! | `.`   | floor      | `g`   | goblin     |
//! | `H`   | entrance   | `m`   | goblin mage|
//! | `X`   | exit       | `b`   | blob       |
//! | `T`   | treasure   | `o`   | ogre       |
//! | `P`   | potion     | `M`   | minitaur   |
//! | `O`   | portal     |       |            |
//!
//! The hero is not a placed object; `H` marks the entrance where it spawns.
//! Provenance lives in a `key = value` sidecar (see [`Provenance`]).

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::config::{parse_flat, ConfigError};
use crate::grid::{LayoutGrid, Pos, Tile, HEIGHT, WIDTH};
use crate::spatial::bfs_distances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Entrance,
    Exit,
    Treasure,
    Potion,
    Portal,
    Trap,
    Goblin,
    GoblinMage,
    Blob,
    Ogre,
    Minitaur,
}

impl EntityKind {
    pub const ALL: [EntityKind; 11] = [
        EntityKind::Entrance,
        EntityKind::Exit,
        EntityKind::Treasure,
        EntityKind::Potion,
        EntityKind::Portal,
        EntityKind::Trap,
        EntityKind::Goblin,
        EntityKind::GoblinMage,
        EntityKind::Blob,
        EntityKind::Ogre,
        EntityKind::Minitaur,
    ];

    pub const MONSTERS: [EntityKind; 5] = [
        EntityKind::Goblin,
        EntityKind::GoblinMage,
        EntityKind::Blob,
        EntityKind::Ogre,
        EntityKind::Minitaur,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn is_monster(self) -> bool {
        matches!(
            self,
            EntityKind::Goblin
                | EntityKind::GoblinMage
                | EntityKind::Blob
                | EntityKind::Ogre
                | EntityKind::Minitaur
        )
    }

    pub fn glyph(self) -> char {
        match self {
            EntityKind::Entrance => 'H',
            EntityKind::Exit => 'X',
            EntityKind::Treasure => 'T',
            EntityKind::Potion => 'P',
            EntityKind::Portal => 'O',
            EntityKind::Trap => '^',
            EntityKind::Goblin => 'g',
            EntityKind::GoblinMage => 'm',
            EntityKind::Blob => 'b',
            EntityKind::Ogre => 'o',
            EntityKind::Minitaur => 'M',
        }
    }

    pub fn from_glyph(c: char) -> Option<EntityKind> {
        EntityKind::ALL.into_iter().find(|k| k.glyph() == c)
    }

    /// Lower-case identifier used in CSV headers and config keys.
    pub fn name(self) -> &'static str {
        match self {
            EntityKind::Entrance => "entrance",
            EntityKind::Exit => "exit",
            EntityKind::Treasure => "treasure",
            EntityKind::Potion => "potion",
            EntityKind::Portal => "portal",
            EntityKind::Trap => "trap",
            EntityKind::Goblin => "goblin",
            EntityKind::GoblinMage => "mage",
            EntityKind::Blob => "blob",
            EntityKind::Ogre => "ogre",
            EntityKind::Minitaur => "minitaur",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Placement {
    pub kind: EntityKind,
    pub pos: Pos,
}

impl Placement {
    pub fn new(kind: EntityKind, pos: Pos) -> Self {
        Self { kind, pos }
    }
}

/// Where a level came from. Serialized as a `key = value` sidecar.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Provenance {
    pub creator: String,
    pub furnisher: String,
    pub seed: u64,
}

impl Provenance {
    pub fn new(creator: &str, furnisher: &str, seed: u64) -> Self {
        Self { creator: creator.to_owned(), furnisher: furnisher.to_owned(), seed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub grid: LayoutGrid,
    pub placements: Vec<Placement>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BorderNotWall(Pos),
    DisconnectedFloor { regions: usize },
    EntityOutOfBounds { kind: EntityKind, pos: Pos },
    EntityOnWall { kind: EntityKind, pos: Pos },
    SharedPosition(Pos),
    MissingEntrance,
    MultipleEntrances(usize),
    MissingExit,
    MultipleExits(usize),
    PortalParity(usize),
    ExitUnreachable,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BorderNotWall(p) => write!(f, "border cell {p} is not a wall"),
            Violation::DisconnectedFloor { regions } => write!(f, "floor split into {regions} regions"),
            Violation::EntityOutOfBounds { kind, pos } => write!(f, "{kind} at {pos} is out of bounds"),
            Violation::EntityOnWall { kind, pos } => write!(f, "{kind} at {pos} sits on a wall"),
            Violation::SharedPosition(p) => write!(f, "several objects share {p}"),
            Violation::MissingEntrance => f.write_str("missing entrance"),
            Violation::MultipleEntrances(n) => write!(f, "{n} entrances"),
            Violation::MissingExit => f.write_str("missing exit"),
            Violation::MultipleExits(n) => write!(f, "{n} exits"),
            Violation::PortalParity(n) => write!(f, "{n} portals (need 0 or 2)"),
            Violation::ExitUnreachable => f.write_str("exit unreachable from entrance"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("expected {HEIGHT} lines, found {0}")]
    LineCount(usize),
    #[error("line {line}: expected {WIDTH} characters, found {found}")]
    LineWidth { line: usize, found: usize },
    #[error("line {line}, column {column}: unknown glyph {glyph:?}")]
    UnknownGlyph { line: usize, column: usize, glyph: char },
    #[error("line {line}, column {column}: {glyph:?} placed on the wall frame")]
    EntityOnBorder { line: usize, column: usize, glyph: char },
}

#[derive(Debug, Error)]
pub enum MetadataError {
    #[error(transparent)]
    Syntax(#[from] ConfigError),
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("bad seed {0:?}")]
    BadSeed(String),
}

impl Level {
    pub fn new(grid: LayoutGrid, placements: Vec<Placement>, provenance: Provenance) -> Self {
        Self { grid, placements, provenance }
    }

    pub fn count(&self, kind: EntityKind) -> usize {
        self.placements.iter().filter(|p| p.kind == kind).count()
    }

    pub fn positions(&self, kind: EntityKind) -> impl Iterator<Item = Pos> + '_ {
        self.placements.iter().filter(move |p| p.kind == kind).map(|p| p.pos)
    }

    pub fn first(&self, kind: EntityKind) -> Option<Pos> {
        self.positions(kind).next()
    }

    pub fn entrance(&self) -> Option<Pos> {
        self.first(EntityKind::Entrance)
    }

    pub fn exit(&self) -> Option<Pos> {
        self.first(EntityKind::Exit)
    }

    pub fn kind_at(&self, pos: Pos) -> Option<EntityKind> {
        self.placements.iter().find(|p| p.pos == pos).map(|p| p.kind)
    }

    pub fn monster_count(&self) -> usize {
        self.placements.iter().filter(|p| p.kind.is_monster()).count()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_level(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}

pub fn parse_level(text: &str) -> Result<Level, ParseError> {
    let lines: Vec<&str> = text.strip_suffix('\n').unwrap_or(text).split('\n').collect();
    if lines.len() != HEIGHT {
        return Err(ParseError::LineCount(lines.len()));
    }
    let mut grid = LayoutGrid::all_wall();
    let mut placements = Vec::new();
    for (y, line) in lines.iter().enumerate() {
        let width = line.chars().count();
        if width != WIDTH {
            return Err(ParseError::LineWidth { line: y + 1, found: width });
        }
        for (x, glyph) in line.chars().enumerate() {
            let pos = Pos::new(x as i32, y as i32);
            let (line, column) = (y + 1, x + 1);
            match glyph {
                '#' => {}
                '.' => grid.set(pos, Tile::Floor),
                _ => {
                    let kind = EntityKind::from_glyph(glyph)
                        .ok_or(ParseError::UnknownGlyph { line, column, glyph })?;
                    if pos.is_border() {
                        return Err(ParseError::EntityOnBorder { line, column, glyph });
                    }
                    grid.set(pos, Tile::Floor);
                    placements.push(Placement::new(kind, pos));
                }
            }
        }
    }
    Ok(Level::new(grid, placements, Provenance::default()))
}

pub fn serialize_level(level: &Level) -> String {
    let mut rows = vec![vec!['#'; WIDTH]; HEIGHT];
    for (y, row) in rows.iter_mut().enumerate() {
        for (x, c) in row.iter_mut().enumerate() {
            if level.grid.is_floor(Pos::new(x as i32, y as i32)) {
                *c = '.';
            }
        }
    }
    for p in &level.placements {
        if p.pos.in_bounds() {
            rows[p.pos.y as usize][p.pos.x as usize] = p.kind.glyph();
        }
    }
    let mut out = String::with_capacity(HEIGHT * (WIDTH + 1));
    for row in rows {
        out.extend(row);
        out.push('\n');
    }
    out
}

pub fn validate_level(level: &Level) -> Vec<Violation> {
    let grid = &level.grid;
    let mut out: Vec<Violation> = grid
        .violations()
        .into_iter()
        .map(|v| match v {
            crate::grid::GridViolation::BorderNotWall(p) => Violation::BorderNotWall(p),
            crate::grid::GridViolation::DisconnectedFloor { regions } => {
                Violation::DisconnectedFloor { regions }
            }
        })
        .collect();

    let mut seen = HashSet::new();
    let mut shared = Vec::new();
    for p in &level.placements {
        if !p.pos.in_bounds() {
            out.push(Violation::EntityOutOfBounds { kind: p.kind, pos: p.pos });
            continue;
        }
        if grid.is_wall(p.pos) {
            out.push(Violation::EntityOnWall { kind: p.kind, pos: p.pos });
        }
        if !seen.insert(p.pos) && !shared.contains(&p.pos) {
            shared.push(p.pos);
        }
    }
    out.extend(shared.into_iter().map(Violation::SharedPosition));

    match level.count(EntityKind::Entrance) {
        0 => out.push(Violation::MissingEntrance),
        1 => {}
        n => out.push(Violation::MultipleEntrances(n)),
    }
    match level.count(EntityKind::Exit) {
        0 => out.push(Violation::MissingExit),
        1 => {}
        n => out.push(Violation::MultipleExits(n)),
    }
    let portals = level.count(EntityKind::Portal);
    if portals != 0 && portals != 2 {
        out.push(Violation::PortalParity(portals));
    }

    if let (Some(a), Some(b)) = (level.entrance(), level.exit()) {
        if a.in_bounds() && b.in_bounds() && grid.is_floor(a) && grid.is_floor(b) {
            let dist = bfs_distances(grid, a);
            if dist[b.index()] == crate::spatial::UNREACHABLE {
                out.push(Violation::ExitUnreachable);
            }
        }
    }
    out
}

pub fn serialize_provenance(p: &Provenance) -> String {
    format!("creator = {}\nfurnisher = {}\nseed = {}\n", p.creator, p.furnisher, p.seed)
}

pub fn parse_provenance(text: &str) -> Result<Provenance, MetadataError> {
    let map = parse_flat(text)?;
    let get = |k: &'static str| map.get(k).cloned().ok_or(MetadataError::MissingKey(k));
    let seed_text = get("seed")?;
    let seed = seed_text.parse().map_err(|_| MetadataError::BadSeed(seed_text))?;
    Ok(Provenance { creator: get("creator")?, furnisher: get("furnisher")?, seed })
}
