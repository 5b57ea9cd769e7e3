use rand::Rng;
use thiserror::Error;

use super::{persona_value, PersonaKind};
use crate::engine::{initial_state, ActionSet, Action, EngineError, GameState, Outcome, RuleConfig};
use crate::level::Level;
use crate::rng::RandomStream;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PersonaError {
    #[error("no legal actions")]
    NoActions,
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone)]
pub struct PersonaParams {
    pub iterations_per_move: u32,
    pub rollout_depth: u32,
    pub exploration_constant: f64,
    pub rng: RandomStream,
}

impl PersonaParams {
    pub fn new(rng: RandomStream) -> Self {
        Self { iterations_per_move: 1000, rollout_depth: 20, exploration_constant: 0.3, rng }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlayTrace {
    pub persona: PersonaKind,
    pub actions: Vec<Action>,
    pub outcome: Outcome,
    /// Hero turns used; equals `actions.len()`.
    pub steps: u32,
    pub kills: u32,
    pub treasures_collected: u32,
    pub final_hp: u32,
}

struct Node {
    parent: usize,
    action: Option<Action>,
    children: Vec<usize>,
    untried: ActionSet,
    visits: u32,
    total: f64,
}

impl Node {
    fn new(parent: usize, action: Option<Action>, state: &GameState) -> Self {
        let untried = if state.outcome == Outcome::Ongoing { state.moves() } else { ActionSet::default() };
        Self { parent, action, children: Vec::new(), untried, visits: 0, total: 0.0 }
    }
}

/// Uniform random move that avoids undoing `last` unless nothing else is
/// possible.
fn rollout_action(state: &GameState, last: Option<Action>, rng: &mut RandomStream) -> Option<Action> {
    let mut moves = state.moves();
    if let Some(last) = last {
        if moves.len() > 1 {
            moves.remove(last.opposite());
        }
    }
    if moves.is_empty() {
        return None;
    }
    moves.nth(rng.gen_range(0..moves.len()))
}

/// One UCT decision. The returned action is the most visited root child,
/// ties going to the earlier direction in N, S, E, W order.
pub fn mcts_select_action(
    state: &GameState,
    persona: PersonaKind,
    params: &mut PersonaParams,
    rules: &RuleConfig,
) -> Result<Action, PersonaError> {
    if state.outcome != Outcome::Ongoing {
        return Err(EngineError::Terminal(state.outcome).into());
    }
    if state.moves().is_empty() {
        return Err(PersonaError::NoActions);
    }
    let c = params.exploration_constant;
    let rng = &mut params.rng;
    let mut nodes = vec![Node::new(0, None, state)];

    for _ in 0..params.iterations_per_move.max(1) {
        let mut sim = state.clone();
        let mut node = 0;
        let mut last = None;

        while nodes[node].untried.is_empty() && !nodes[node].children.is_empty() {
            let ln_n = f64::from(nodes[node].visits).ln();
            let mut best = nodes[node].children[0];
            let mut best_score = f64::NEG_INFINITY;
            for &child in &nodes[node].children {
                let ch = &nodes[child];
                let n = f64::from(ch.visits);
                let score = ch.total / n + c * (ln_n / n).sqrt();
                if score > best_score {
                    best_score = score;
                    best = child;
                }
            }
            node = best;
            let a = nodes[node].action.expect("non-root");
            sim.step_in_place(a, rules).expect("tree actions are legal");
            last = Some(a);
        }

        if !nodes[node].untried.is_empty() {
            let untried = nodes[node].untried;
            let a = untried.nth(rng.gen_range(0..untried.len())).expect("nonempty");
            nodes[node].untried.remove(a);
            sim.step_in_place(a, rules).expect("legal");
            last = Some(a);
            let child = nodes.len();
            nodes.push(Node::new(node, Some(a), &sim));
            nodes[node].children.push(child);
            node = child;
        }

        for _ in 0..params.rollout_depth {
            if sim.outcome != Outcome::Ongoing {
                break;
            }
            let Some(a) = rollout_action(&sim, last, rng) else { break };
            sim.step_in_place(a, rules).expect("legal");
            last = Some(a);
        }

        let value = persona_value(persona, &sim, rules);
        loop {
            nodes[node].visits += 1;
            nodes[node].total += value;
            if node == 0 {
                break;
            }
            node = nodes[node].parent;
        }
    }

    let root = &nodes[0];
    let best = root
        .children
        .iter()
        .map(|&c| (&nodes[c], nodes[c].action.expect("non-root")))
        .max_by(|(a, da), (b, db)| a.visits.cmp(&b.visits).then(db.index().cmp(&da.index())))
        .map(|(_, a)| a)
        .expect("root has children");
    Ok(best)
}

/// Plays `level` to completion with one MCTS decision per hero turn.
pub fn run_persona(
    level: &Level,
    persona: PersonaKind,
    params: &mut PersonaParams,
    rules: &RuleConfig,
) -> Result<PlayTrace, PersonaError> {
    let mut state = initial_state(level, rules)?;
    let mut actions = Vec::new();
    while state.outcome == Outcome::Ongoing {
        let a = mcts_select_action(&state, persona, params, rules)?;
        state.step_in_place(a, rules)?;
        actions.push(a);
    }
    Ok(PlayTrace {
        persona,
        steps: actions.len() as u32,
        actions,
        outcome: state.outcome,
        kills: state.kills,
        treasures_collected: state.treasures_collected,
        final_hp: state.hero.hp,
    })
}

/// Re-applies a trace's actions from the level's initial state.
pub fn replay(level: &Level, actions: &[Action], rules: &RuleConfig) -> Result<GameState, EngineError> {
    let mut state = initial_state(level, rules)?;
    for &a in actions {
        state.step_in_place(a, rules)?;
    }
    Ok(state)
}
