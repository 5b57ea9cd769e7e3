#![allow(dead_code)]

pub mod corridor;

use twostep_core::creators::{CreatorKind, CreatorParams};
use twostep_core::furnish::{Budget, FurnisherKind};
use twostep_core::level::{parse_level, Level};
use twostep_core::rng::RandomStream;

/// Builds a level from the top rows of a map; missing columns and rows are
/// filled with walls.
pub fn level_from_rows(rows: &[&str]) -> Level {
    let mut text = String::new();
    for y in 0..20 {
        let row = rows.get(y).copied().unwrap_or("");
        let mut line: String = row.chars().take(10).collect();
        while line.chars().count() < 10 {
            line.push('#');
        }
        text.push_str(&line);
        text.push('\n');
    }
    parse_level(&text).unwrap()
}

pub fn generated_level(seed: u64, creator: CreatorKind, furnisher: FurnisherKind) -> Level {
    let grid = creator.create(&mut RandomStream::new(seed, "test-layout"), &CreatorParams::default());
    furnisher
        .furnish(&grid, &mut RandomStream::new(seed, "test-furnish"), &Budget::default())
        .unwrap()
        .level
}
