use std::collections::{BTreeMap, VecDeque};

use crate::engine::Outcome;
use crate::grid::{LayoutGrid, Pos, CELLS};
use crate::level::{EntityKind, Level};
use crate::persona::PlayTrace;
use crate::spatial::diameter;

/// One row of named metrics plus the tags used for grouping (creator,
/// furnisher, persona, ...).
///
/// Unreachable distances are `f64::INFINITY`; metrics that do not apply
/// (no portals on the level, a run that did not finish) are `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsRecord {
    pub id: String,
    pub tags: BTreeMap<String, String>,
    pub values: Vec<(String, f64)>,
}

impl MetricsRecord {
    pub fn new(id: impl Into<String>) -> Self {
        Self { id: id.into(), tags: BTreeMap::new(), values: Vec::new() }
    }

    pub fn tag(mut self, key: &str, value: impl Into<String>) -> Self {
        self.tags.insert(key.to_owned(), value.into());
        self
    }

    pub fn set(&mut self, name: &str, value: f64) {
        match self.values.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value,
            None => self.values.push((name.to_owned(), value)),
        }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }

    /// Appends every metric of `other` (tags and id are kept).
    pub fn extend(&mut self, other: &MetricsRecord) {
        for (n, v) in &other.values {
            self.set(n, *v);
        }
    }
}

pub const LAYOUT_METRICS: [&str; 3] = ["floor_tiles", "longest_path", "wall_chunks"];

pub const LEVEL_METRICS: [&str; 30] = [
    "dist_entrance_to_exit",
    "dist_entrance_to_portal",
    "dist_entrance_to_treasure_min",
    "dist_entrance_to_treasure_mean",
    "dist_entrance_to_potion_min",
    "dist_entrance_to_potion_mean",
    "dist_entrance_to_trap",
    "dist_entrance_to_goblin",
    "dist_entrance_to_mage",
    "dist_entrance_to_blob",
    "dist_entrance_to_ogre",
    "dist_entrance_to_minitaur",
    "guarded_treasures",
    "guarded_potions",
    "count_entrance",
    "count_exit",
    "count_treasure",
    "count_potion",
    "count_portal",
    "count_trap",
    "count_goblin",
    "count_mage",
    "count_blob",
    "count_ogre",
    "count_minitaur",
    "count_total",
    "count_monsters",
    "ratio_monsters_total",
    "ratio_potions_treasures",
    "unreachable_objects",
];

pub const PLAY_METRICS: [&str; 6] =
    ["completion", "kills", "treasures_collected", "steps", "steps_completed", "final_hp"];

/// Number of 4-connected components of non-border wall cells.
pub fn wall_chunks(grid: &LayoutGrid) -> usize {
    let inner_wall = |p: Pos| p.is_interior() && grid.is_wall(p);
    let mut seen = [false; CELLS];
    let mut chunks = 0;
    for i in 0..CELLS {
        let p = Pos::from_index(i);
        if seen[i] || !inner_wall(p) {
            continue;
        }
        chunks += 1;
        seen[i] = true;
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            for n in q.neighbors4() {
                if n.in_bounds() && !seen[n.index()] && inner_wall(n) {
                    seen[n.index()] = true;
                    stack.push(n);
                }
            }
        }
    }
    chunks
}

pub fn layout_metrics(grid: &LayoutGrid) -> MetricsRecord {
    let mut r = MetricsRecord::new("");
    r.set("floor_tiles", grid.floor_count() as f64);
    r.set("longest_path", diameter(grid).map_or(0.0, |lp| f64::from(lp.length)));
    r.set("wall_chunks", wall_chunks(grid) as f64);
    r
}

/// Distances from `start`, optionally with a free hop between the two
/// portals. Cells where `blocked` holds are impassable (but still get a
/// distance if reached, so blocked targets read as unreachable only when
/// every approach is blocked).
fn distances_from(
    level: &Level,
    start: Pos,
    use_portals: bool,
    blocked: impl Fn(Pos) -> bool,
) -> [f64; CELLS] {
    let grid = &level.grid;
    let portals: Vec<Pos> = level.positions(EntityKind::Portal).collect();
    let twin = |p: Pos| -> Option<Pos> {
        if !use_portals || portals.len() != 2 {
            return None;
        }
        if p == portals[0] {
            Some(portals[1])
        } else if p == portals[1] {
            Some(portals[0])
        } else {
            None
        }
    };
    let mut dist = [f64::INFINITY; CELLS];
    dist[start.index()] = 0.0;
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        let d = dist[p.index()];
        if p != start && blocked(p) {
            continue;
        }
        if let Some(t) = twin(p) {
            if dist[t.index()] > d {
                dist[t.index()] = d;
                queue.push_front(t);
            }
        }
        for n in p.neighbors4() {
            if grid.is_floor(n) && dist[n.index()] > d + 1.0 {
                dist[n.index()] = d + 1.0;
                queue.push_back(n);
            }
        }
    }
    dist
}

/// Entrance-to-object distances, guarded counts and element counts.
/// Distances are plain grid BFS unless `use_portals` adds a zero-cost edge
/// between the two portals.
pub fn level_metrics(level: &Level, use_portals: bool) -> MetricsRecord {
    let mut r = MetricsRecord::new("");
    let Some(entrance) = level.entrance() else {
        for name in LEVEL_METRICS {
            r.set(name, f64::NAN);
        }
        return r;
    };
    let dist = distances_from(level, entrance, use_portals, |_| false);
    let d = |p: Pos| dist[p.index()];
    let of = |k: EntityKind| level.positions(k).map(d).collect::<Vec<f64>>();
    let min = |v: &[f64]| v.iter().copied().reduce(f64::min).unwrap_or(f64::NAN);
    let mean = |v: &[f64]| if v.is_empty() { f64::NAN } else { v.iter().sum::<f64>() / v.len() as f64 };

    use EntityKind::*;
    r.set("dist_entrance_to_exit", min(&of(Exit)));
    r.set("dist_entrance_to_portal", min(&of(Portal)));
    let treasures = of(Treasure);
    let potions = of(Potion);
    r.set("dist_entrance_to_treasure_min", min(&treasures));
    r.set("dist_entrance_to_treasure_mean", mean(&treasures));
    r.set("dist_entrance_to_potion_min", min(&potions));
    r.set("dist_entrance_to_potion_mean", mean(&potions));
    r.set("dist_entrance_to_trap", min(&of(Trap)));
    r.set("dist_entrance_to_goblin", min(&of(Goblin)));
    r.set("dist_entrance_to_mage", min(&of(GoblinMage)));
    r.set("dist_entrance_to_blob", min(&of(Blob)));
    r.set("dist_entrance_to_ogre", min(&of(Ogre)));
    r.set("dist_entrance_to_minitaur", min(&of(Minitaur)));

    let monsters: Vec<Pos> =
        level.placements.iter().filter(|p| p.kind.is_monster()).map(|p| p.pos).collect();
    let guarded_dist = distances_from(level, entrance, use_portals, |p| monsters.contains(&p));
    let guarded = |k: EntityKind| {
        level.positions(k).filter(|p| !guarded_dist[p.index()].is_finite()).count() as f64
    };
    r.set("guarded_treasures", guarded(Treasure));
    r.set("guarded_potions", guarded(Potion));

    for (name, kind) in [
        ("count_entrance", Entrance),
        ("count_exit", Exit),
        ("count_treasure", Treasure),
        ("count_potion", Potion),
        ("count_portal", Portal),
        ("count_trap", Trap),
        ("count_goblin", Goblin),
        ("count_mage", GoblinMage),
        ("count_blob", Blob),
        ("count_ogre", Ogre),
        ("count_minitaur", Minitaur),
    ] {
        r.set(name, level.count(kind) as f64);
    }
    let total = level.placements.len() as f64;
    let monsters = level.monster_count() as f64;
    r.set("count_total", total);
    r.set("count_monsters", monsters);
    r.set("ratio_monsters_total", if total > 0.0 { monsters / total } else { f64::NAN });
    let t = level.count(Treasure) as f64;
    r.set("ratio_potions_treasures", if t > 0.0 { level.count(Potion) as f64 / t } else { f64::NAN });
    r.set(
        "unreachable_objects",
        level.placements.iter().filter(|p| !d(p.pos).is_finite()).count() as f64,
    );
    r
}

/// One record per trace: completion flag, kills, treasures, steps (and
/// steps again restricted to completed runs), final hit points.
pub fn play_metrics(traces: &[PlayTrace]) -> Vec<MetricsRecord> {
    traces
        .iter()
        .map(|t| {
            let won = t.outcome == Outcome::Win;
            let mut r = MetricsRecord::new("").tag("persona", t.persona.id());
            r.set("completion", if won { 1.0 } else { 0.0 });
            r.set("kills", f64::from(t.kills));
            r.set("treasures_collected", f64::from(t.treasures_collected));
            r.set("steps", f64::from(t.steps));
            r.set("steps_completed", if won { f64::from(t.steps) } else { f64::NAN });
            r.set("final_hp", f64::from(t.final_hp));
            r
        })
        .collect()
}
