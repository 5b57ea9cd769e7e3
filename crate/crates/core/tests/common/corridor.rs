//! Independent model of the 1×5 corridor `H.g.X` (hero, one goblin, exit),
//! checked step for step against the engine over every action sequence.

use twostep_core::engine::{legal_actions, step, GameState, Outcome, RuleConfig};
use twostep_core::grid::{Direction, Pos};

/// Map rows of the corridor level.
pub const ROWS: [&str; 2] = ["##########", "#H.g.X####"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corridor {
    hero: i32,
    hp: i32,
    goblin: Option<(i32, i32)>,
    kills: u32,
    turn: u32,
    outcome: Outcome,
}

impl Corridor {
    pub fn new(hp: i32) -> Self {
        Self { hero: 1, hp, goblin: Some((3, 2)), kills: 0, turn: 0, outcome: Outcome::Ongoing }
    }

    fn moves(&self) -> Vec<i32> {
        [-1, 1].into_iter().filter(|d| (1..=5).contains(&(self.hero + d))).collect()
    }

    fn step(mut self, d: i32, hero_attack: i32, goblin_attack: i32) -> Self {
        let target = self.hero + d;
        match self.goblin {
            Some((gx, ghp)) if gx == target => {
                let left = ghp - hero_attack;
                if left <= 0 {
                    self.goblin = None;
                    self.kills += 1;
                } else {
                    self.goblin = Some((gx, left));
                }
            }
            _ => {
                self.hero = target;
                if target == 5 {
                    self.outcome = Outcome::Win;
                    self.turn += 1;
                    return self;
                }
            }
        }
        if let Some((gx, ghp)) = self.goblin {
            if (gx - self.hero).abs() == 1 {
                self.hp = (self.hp - goblin_attack).max(0);
                if self.hp == 0 {
                    self.outcome = Outcome::Death;
                }
            } else {
                self.goblin = Some((gx + (self.hero - gx).signum(), ghp));
            }
        }
        self.turn += 1;
        self
    }

    fn matches(&self, s: &GameState) -> bool {
        let goblin = s.monsters.first().map(|m| (m.pos.x, m.hp as i32));
        s.hero.pos == Pos::new(self.hero, 1)
            && s.hero.hp as i32 == self.hp
            && goblin == self.goblin
            && s.kills == self.kills
            && s.turn == self.turn
            && s.outcome == self.outcome
    }
}

pub fn enumerate(model: Corridor, state: GameState, rules: &RuleConfig, depth: u32, visited: &mut u64) {
    *visited += 1;
    assert!(model.matches(&state), "{model:?} vs {state:?}");
    if depth == 0 || model.outcome != Outcome::Ongoing {
        assert_eq!(model.outcome != Outcome::Ongoing, legal_actions(&state).is_err());
        return;
    }
    let mut engine_moves: Vec<i32> = legal_actions(&state)
        .unwrap()
        .iter()
        .map(|d| d.delta().0)
        .collect();
    engine_moves.sort();
    assert_eq!(engine_moves, model.moves());
    for d in model.moves() {
        let dir = if d < 0 { Direction::West } else { Direction::East };
        let next = step(&state, dir, rules).unwrap();
        enumerate(model.step(d, rules.hero_attack as i32, rules.goblin_attack as i32), next, rules, depth - 1, visited);
    }
}

