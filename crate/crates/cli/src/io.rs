//! Level directory layout: `{root}/{creator}-{furnisher}/level_{i}.txt`
//! plus a `level_{i}.meta` sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use twostep_core::level::{parse_level, parse_provenance};
use twostep_core::{CreatorKind, FurnisherKind, Level};

pub fn combo_dir(root: &Path, c: CreatorKind, f: FurnisherKind) -> PathBuf {
    root.join(format!("{c}-{f}"))
}

pub fn level_path(dir: &Path, index: u64) -> PathBuf {
    dir.join(format!("level_{index}.txt"))
}

pub fn meta_path(dir: &Path, index: u64) -> PathBuf {
    dir.join(format!("level_{index}.meta"))
}

/// Level indices present in `dir`, ascending.
pub fn level_indices(dir: &Path) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("reading {}", dir.display()))? {
        let name = entry?.file_name();
        let name = name.to_string_lossy();
        if let Some(i) = name.strip_prefix("level_").and_then(|s| s.strip_suffix(".txt")) {
            if let Ok(i) = i.parse() {
                out.push(i);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Combination directories under `root`, in creator-then-furnisher order.
pub fn combos(root: &Path, wanted: &[(CreatorKind, FurnisherKind)]) -> Vec<(CreatorKind, FurnisherKind, PathBuf)> {
    wanted
        .iter()
        .map(|&(c, f)| (c, f, combo_dir(root, c, f)))
        .filter(|(_, _, d)| d.is_dir())
        .collect()
}

pub struct LoadedLevel {
    pub level: Level,
    pub relaxations: Option<u32>,
}

pub fn load_level(dir: &Path, index: u64) -> Result<LoadedLevel> {
    let path = level_path(dir, index);
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let mut level = parse_level(&text).with_context(|| format!("parsing {}", path.display()))?;
    let meta = meta_path(dir, index);
    let mut relaxations = None;
    if let Ok(meta_text) = fs::read_to_string(&meta) {
        level.provenance = parse_provenance(&meta_text).with_context(|| format!("parsing {}", meta.display()))?;
        relaxations = twostep_core::config::parse_flat(&meta_text)
            .ok()
            .and_then(|m| m.get("relaxations").and_then(|v| v.parse().ok()));
    }
    let violations = level.validate();
    anyhow::ensure!(violations.is_empty(), "{}: invalid level {violations:?}", path.display());
    Ok(LoadedLevel { level, relaxations })
}
