//! Deterministic forward model of a dungeon run: hero actions, object
//! interactions and monster behaviour.

mod rules;

use std::sync::Arc;

use thiserror::Error;

pub use rules::{RuleConfig, RulesFileError};

use crate::grid::{Direction, LayoutGrid, Pos};
use crate::level::{EntityKind, Level, Violation};
use crate::spatial::{diameter, DistanceTable, SightTable};

/// The hero's move: one of the four compass steps. Stepping into a monster
/// attacks it instead.
pub type Action = Direction;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("level is invalid: {0:?}")]
    InvalidLevel(Vec<Violation>),
    #[error("game is already over ({0:?})")]
    Terminal(Outcome),
    #[error("illegal action {0:?}")]
    IllegalAction(Action),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Ongoing,
    Win,
    Death,
    StepLimit,
}

/// Fixed-size set of grid cells.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CellSet([u64; 4]);

impl CellSet {
    pub fn contains(&self, p: Pos) -> bool {
        let i = p.index();
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn insert(&mut self, p: Pos) {
        let i = p.index();
        self.0[i / 64] |= 1 << (i % 64);
    }

    /// Returns whether `p` was present.
    pub fn remove(&mut self, p: Pos) -> bool {
        let had = self.contains(p);
        let i = p.index();
        self.0[i / 64] &= !(1 << (i % 64));
        had
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Members in scan order.
    pub fn iter(&self) -> impl Iterator<Item = Pos> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                (bits != 0).then(|| {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Pos::from_index(w * 64 + b)
                })
            })
        })
    }
}

impl FromIterator<Pos> for CellSet {
    fn from_iter<I: IntoIterator<Item = Pos>>(iter: I) -> Self {
        let mut s = CellSet::default();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

/// Subset of the four directions, iterated in N, S, E, W order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ActionSet(u8);

impl ActionSet {
    pub fn insert(&mut self, a: Action) {
        self.0 |= 1 << a.index();
    }

    pub fn remove(&mut self, a: Action) {
        self.0 &= !(1 << a.index());
    }

    pub fn contains(&self, a: Action) -> bool {
        self.0 & (1 << a.index()) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Action> {
        Direction::ALL.into_iter().filter(move |a| self.contains(*a))
    }

    pub fn nth(self, n: usize) -> Option<Action> {
        self.iter().nth(n)
    }
}

/// Static per-level data shared by every state of one game.
#[derive(Clone)]
pub struct LevelInfo {
    pub grid: LayoutGrid,
    pub dist: DistanceTable,
    pub sight: SightTable,
    pub entrance: Pos,
    pub exit: Pos,
    pub portals: Option<(Pos, Pos)>,
    /// Longest shortest path in the layout.
    pub diameter: u32,
    pub treasure_total: u32,
    /// Monsters the hero can kill (the minitaur cannot die).
    pub killable_total: u32,
    pub monster_total: u32,
}

impl LevelInfo {
    pub fn distance(&self, a: Pos, b: Pos) -> Option<u32> {
        self.dist.get(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonsterState {
    pub kind: EntityKind,
    pub pos: Pos,
    pub hp: u32,
    pub attack: u32,
    /// Rounds of stun left; only the minitaur is ever stunned.
    pub stun_remaining: u32,
    /// Potions and blobs absorbed; blobs only.
    pub power_level: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hero {
    pub pos: Pos,
    pub hp: u32,
}

#[derive(Clone)]
pub struct GameState {
    pub info: Arc<LevelInfo>,
    pub hero: Hero,
    /// Live monsters in turn order. Killed or absorbed monsters are removed.
    pub monsters: Vec<MonsterState>,
    pub treasures: CellSet,
    pub potions: CellSet,
    pub traps: CellSet,
    pub emptied_treasures: CellSet,
    pub kills: u32,
    /// Blobs absorbed by other blobs.
    pub absorbed: u32,
    pub treasures_collected: u32,
    pub turn: u32,
    pub outcome: Outcome,
}

impl std::fmt::Debug for GameState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GameState")
            .field("hero", &self.hero)
            .field("monsters", &self.monsters)
            .field("kills", &self.kills)
            .field("treasures_collected", &self.treasures_collected)
            .field("turn", &self.turn)
            .field("outcome", &self.outcome)
            .finish_non_exhaustive()
    }
}

impl PartialEq for GameState {
    fn eq(&self, other: &Self) -> bool {
        self.hero == other.hero
            && self.monsters == other.monsters
            && self.treasures == other.treasures
            && self.potions == other.potions
            && self.traps == other.traps
            && self.emptied_treasures == other.emptied_treasures
            && self.kills == other.kills
            && self.absorbed == other.absorbed
            && self.treasures_collected == other.treasures_collected
            && self.turn == other.turn
            && self.outcome == other.outcome
    }
}

fn spawn(kind: EntityKind, pos: Pos, rules: &RuleConfig) -> MonsterState {
    let (hp, attack) = match kind {
        EntityKind::Goblin => (rules.goblin_hp, rules.goblin_attack),
        EntityKind::GoblinMage => (rules.mage_hp, rules.mage_bolt_damage),
        EntityKind::Blob => (rules.blob_hp, rules.blob_attack),
        EntityKind::Ogre => (rules.ogre_hp, rules.ogre_attack),
        EntityKind::Minitaur => (rules.minitaur_hp, rules.minitaur_attack),
        other => unreachable!("{other:?} is not a monster"),
    };
    MonsterState { kind, pos, hp, attack, stun_remaining: 0, power_level: 0 }
}

pub fn initial_state(level: &Level, rules: &RuleConfig) -> Result<GameState, EngineError> {
    let violations = level.validate();
    if !violations.is_empty() {
        return Err(EngineError::InvalidLevel(violations));
    }
    let set = |k| level.positions(k).collect::<CellSet>();
    let mut monsters: Vec<MonsterState> = level
        .placements
        .iter()
        .filter(|p| p.kind.is_monster())
        .map(|p| spawn(p.kind, p.pos, rules))
        .collect();
    monsters.sort_by_key(|m| m.pos.index());

    let portals: Vec<Pos> = level.positions(EntityKind::Portal).collect();
    let entrance = level.entrance().expect("validated");
    let info = LevelInfo {
        dist: DistanceTable::new(&level.grid),
        sight: SightTable::new(&level.grid),
        diameter: diameter(&level.grid).map_or(0, |lp| lp.length),
        grid: level.grid.clone(),
        entrance,
        exit: level.exit().expect("validated"),
        portals: (portals.len() == 2).then(|| (portals[0], portals[1])),
        treasure_total: level.count(EntityKind::Treasure) as u32,
        killable_total: monsters.iter().filter(|m| m.kind != EntityKind::Minitaur).count() as u32,
        monster_total: monsters.len() as u32,
    };
    let mut state = GameState {
        info: Arc::new(info),
        hero: Hero { pos: entrance, hp: rules.hero_max_hp },
        monsters,
        treasures: set(EntityKind::Treasure),
        potions: set(EntityKind::Potion),
        traps: set(EntityKind::Trap),
        emptied_treasures: CellSet::default(),
        kills: 0,
        absorbed: 0,
        treasures_collected: 0,
        turn: 0,
        outcome: Outcome::Ongoing,
    };
    if state.moves().is_empty() {
        state.outcome = Outcome::StepLimit;
    }
    Ok(state)
}

pub fn legal_actions(state: &GameState) -> Result<ActionSet, EngineError> {
    match state.outcome {
        Outcome::Ongoing => Ok(state.moves()),
        other => Err(EngineError::Terminal(other)),
    }
}

pub fn step(state: &GameState, action: Action, rules: &RuleConfig) -> Result<GameState, EngineError> {
    let mut next = state.clone();
    next.step_in_place(action, rules)?;
    Ok(next)
}

pub fn is_terminal(state: &GameState) -> Outcome {
    state.outcome
}

impl GameState {
    /// Directions whose target is floor, regardless of outcome.
    pub fn moves(&self) -> ActionSet {
        let mut set = ActionSet::default();
        for d in Direction::ALL {
            if self.info.grid.is_floor(self.hero.pos.step(d)) {
                set.insert(d);
            }
        }
        set
    }

    pub fn monster_at(&self, p: Pos) -> Option<usize> {
        self.monsters.iter().position(|m| m.pos == p)
    }

    /// Path distance from the hero to the exit. Stepping onto a portal
    /// counts as arriving at its pair.
    pub fn distance_to_exit(&self) -> Option<u32> {
        let info = &self.info;
        let direct = info.distance(self.hero.pos, info.exit);
        let Some((a, b)) = info.portals else { return direct };
        let via = |from: Pos, to: Pos| Some(info.distance(self.hero.pos, from)? + info.distance(to, info.exit)?);
        [direct, via(a, b), via(b, a)].into_iter().flatten().min()
    }

    /// Advances one full round. On error the state is left untouched.
    pub fn step_in_place(&mut self, action: Action, rules: &RuleConfig) -> Result<(), EngineError> {
        if self.outcome != Outcome::Ongoing {
            return Err(EngineError::Terminal(self.outcome));
        }
        let target = self.hero.pos.step(action);
        if !self.info.grid.is_floor(target) {
            return Err(EngineError::IllegalAction(action));
        }

        let mut struck = None;
        if let Some(i) = self.monster_at(target) {
            struck = Some(target);
            self.hero_attack(i, rules);
        } else if self.enter(target, rules) {
            return Ok(());
        }

        self.monster_phase(struck, rules);
        if self.outcome == Outcome::Ongoing {
            self.turn += 1;
            if self.turn >= rules.hero_step_limit {
                self.outcome = Outcome::StepLimit;
            }
        } else {
            self.turn += 1;
        }
        Ok(())
    }

    fn hero_attack(&mut self, i: usize, rules: &RuleConfig) {
        let m = &mut self.monsters[i];
        if m.kind == EntityKind::Minitaur {
            m.hp = rules.minitaur_hp;
            m.stun_remaining = rules.minitaur_stun_rounds;
            return;
        }
        m.hp = m.hp.saturating_sub(rules.hero_attack);
        if m.hp == 0 {
            self.monsters.remove(i);
            self.kills += 1;
        }
    }

    fn hurt_hero(&mut self, damage: u32) {
        self.hero.hp = self.hero.hp.saturating_sub(damage);
        if self.hero.hp == 0 {
            self.outcome = Outcome::Death;
        }
    }

    /// Moves the hero onto `p` and resolves what is there. Returns true when
    /// the round ends early (death by trap or reaching the exit).
    fn enter(&mut self, p: Pos, rules: &RuleConfig) -> bool {
        self.hero.pos = p;
        if self.traps.remove(p) {
            self.hurt_hero(rules.trap_damage);
            if self.outcome == Outcome::Death {
                self.turn += 1;
                return true;
            }
        }
        if self.potions.remove(p) {
            self.hero.hp = (self.hero.hp + rules.potion_heal).min(rules.hero_max_hp);
        }
        if self.treasures.remove(p) {
            self.treasures_collected += 1;
        }
        if let Some((a, b)) = self.info.portals {
            let dest = if p == a {
                Some(b)
            } else if p == b {
                Some(a)
            } else {
                None
            };
            if let Some(dest) = dest {
                if self.monster_at(dest).is_none() {
                    self.hero.pos = dest;
                }
            }
        }
        if self.hero.pos == self.info.exit {
            self.outcome = Outcome::Win;
            self.turn += 1;
            return true;
        }
        false
    }

    /// First neighbour (N, S, E, W) one step closer to `goal`.
    fn step_toward(&self, from: Pos, goal: Pos) -> Option<Pos> {
        let d = self.info.distance(from, goal)?;
        if d == 0 {
            return None;
        }
        Direction::ALL
            .into_iter()
            .map(|dir| from.step(dir))
            .find(|&n| self.info.distance(n, goal) == Some(d - 1))
    }

    /// Nearest goal by path distance among the hero (if visible) and the
    /// visible members of `items`; the hero wins ties, then scan order.
    fn nearest_visible_goal(&self, from: Pos, items: &CellSet) -> Option<Pos> {
        let sight = &self.info.sight;
        let mut best: Option<(u32, Pos)> = None;
        let hero = sight.visible(from, self.hero.pos).then_some(self.hero.pos);
        for goal in hero.into_iter().chain(items.iter().filter(|&q| sight.visible(from, q))) {
            if let Some(d) = self.info.distance(from, goal) {
                if best.is_none_or(|(bd, _)| d < bd) {
                    best = Some((d, goal));
                }
            }
        }
        best.map(|(_, p)| p)
    }

    /// `struck` is the cell the hero attacked this round, if any. A minitaur
    /// stunned this very round loses its current turn without counting it,
    /// so it then sits out `minitaur_stun_rounds` further rounds.
    fn monster_phase(&mut self, struck: Option<Pos>, rules: &RuleConfig) {
        let mut alive = vec![true; self.monsters.len()];
        for i in 0..self.monsters.len() {
            if !alive[i] || self.outcome != Outcome::Ongoing {
                continue;
            }
            let m = self.monsters[i];
            let hero = self.hero.pos;
            let goal = match m.kind {
                EntityKind::Goblin => self.info.sight.visible(m.pos, hero).then_some(hero),
                EntityKind::GoblinMage => {
                    if self.info.sight.visible(m.pos, hero)
                        && m.pos.euclidean(hero) <= f64::from(rules.mage_range)
                    {
                        self.hurt_hero(rules.mage_bolt_damage);
                    }
                    None
                }
                EntityKind::Blob => self.nearest_visible_goal(m.pos, &self.potions),
                EntityKind::Ogre => self.nearest_visible_goal(m.pos, &self.treasures),
                EntityKind::Minitaur => {
                    if m.stun_remaining > 0 {
                        if struck != Some(m.pos) {
                            self.monsters[i].stun_remaining -= 1;
                        }
                        None
                    } else {
                        Some(hero)
                    }
                }
                _ => None,
            };
            let Some(next) = goal.and_then(|g| self.step_toward(m.pos, g)) else {
                continue;
            };
            if next == hero {
                self.hurt_hero(m.attack);
                continue;
            }
            let blocked = self
                .monsters
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && alive[j] && o.pos == next);
            if blocked {
                continue;
            }
            self.monsters[i].pos = next;
            match m.kind {
                EntityKind::Blob => {
                    if self.potions.remove(next) {
                        self.power_up(i, rules);
                    }
                    let partner = (0..self.monsters.len()).find(|&j| {
                        j != i
                            && alive[j]
                            && self.monsters[j].kind == EntityKind::Blob
                            && self.monsters[j].pos.manhattan(next) == 1
                    });
                    if let Some(j) = partner {
                        alive[j] = false;
                        self.absorbed += 1;
                        self.power_up(i, rules);
                    }
                }
                EntityKind::Ogre => {
                    if self.treasures.remove(next) {
                        self.emptied_treasures.insert(next);
                    }
                }
                _ => {}
            }
        }
        if alive.iter().any(|a| !a) {
            let mut k = 0;
            self.monsters.retain(|_| {
                k += 1;
                alive[k - 1]
            });
        }
    }

    fn power_up(&mut self, i: usize, rules: &RuleConfig) {
        let m = &mut self.monsters[i];
        m.power_level += 1;
        m.hp += rules.blob_hp_gain;
        m.attack += rules.blob_attack_gain;
    }
}
