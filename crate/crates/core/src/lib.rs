//! Two-step procedural dungeon generation: a layout creator carves a
//! 10×20 grid, then a furnisher places the game objects. Includes the
//! turn-based game model, MCTS play personas and expressive-range analysis.

pub mod analysis;
pub mod config;
pub mod creators;
pub mod engine;
pub mod furnish;
pub mod grid;
pub mod level;
pub mod persona;
pub mod pipeline;
pub mod rng;
pub mod spatial;

pub use creators::{CreatorKind, CreatorParams};
pub use engine::{Action, GameState, Outcome, RuleConfig};
pub use furnish::{Budget, FurnishReport, FurnisherKind};
pub use grid::{Direction, LayoutGrid, Pos, Tile};
pub use level::{parse_level, serialize_level, EntityKind, Level, Placement, Provenance};
pub use persona::{PersonaKind, PersonaParams, PlayTrace};
pub use rng::RandomStream;
