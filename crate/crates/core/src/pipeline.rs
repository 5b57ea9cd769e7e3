//! Seeded end-to-end generation: every level, and every playthrough of it,
//! is a pure function of the run seed and its coordinates.

use crate::creators::{CreatorKind, CreatorParams};
use crate::engine::RuleConfig;
use crate::furnish::{Budget, FurnishError, FurnishReport, FurnisherKind};
use crate::grid::LayoutGrid;
use crate::level::Level;
use crate::persona::{run_persona, PersonaError, PersonaKind, PersonaParams, PlayTrace};
use crate::rng::{RandomStream, STAGE_FURNISH, STAGE_LAYOUT, STAGE_PERSONA};

/// Layout `index` of `creator`. Independent of the furnisher, so all three
/// furnishers decorate the same grids.
pub fn layout_for(seed: u64, creator: CreatorKind, index: u64, params: &CreatorParams) -> LayoutGrid {
    let mut rng = RandomStream::derive(seed, STAGE_LAYOUT, &[creator.id(), &index.to_string()]);
    creator.create(&mut rng, params)
}

/// Level `index` of the (`creator`, `furnisher`) combination, with
/// provenance filled in.
pub fn generate_level(
    seed: u64,
    creator: CreatorKind,
    furnisher: FurnisherKind,
    index: u64,
    params: &CreatorParams,
    budget: &Budget,
) -> Result<FurnishReport, FurnishError> {
    let grid = layout_for(seed, creator, index, params);
    let mut rng =
        RandomStream::derive(seed, STAGE_FURNISH, &[creator.id(), furnisher.id(), &index.to_string()]);
    let mut report = furnisher.furnish(&grid, &mut rng, budget)?;
    report.level.provenance.creator = creator.id().to_owned();
    report.level.provenance.seed = seed;
    Ok(report)
}

/// Search randomness for one playthrough of level `index`.
pub fn persona_stream(seed: u64, creator: &str, furnisher: &str, index: u64, persona: PersonaKind) -> RandomStream {
    RandomStream::derive(seed, STAGE_PERSONA, &[creator, furnisher, &index.to_string(), persona.id()])
}

/// Plays one level with one persona using the level's own search stream.
pub fn play_level(
    level: &Level,
    index: u64,
    persona: PersonaKind,
    seed: u64,
    iterations: u32,
    rules: &RuleConfig,
) -> Result<PlayTrace, PersonaError> {
    let p = &level.provenance;
    let mut params = PersonaParams::new(persona_stream(seed, &p.creator, &p.furnisher, index, persona));
    params.iterations_per_move = iterations;
    run_persona(level, persona, &mut params, rules)
}
