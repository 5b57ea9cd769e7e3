use std::fmt::Write as _;
use std::fs;

use anyhow::{Context, Result};
use rayon::prelude::*;
use twostep_core::engine::Outcome;
use twostep_core::pipeline::play_level;

use crate::io::{combos, level_indices, load_level};
use crate::manifest::Manifest;

pub const TRACE_HEADER: &str =
    "creator,furnisher,level,persona,outcome,completion,steps,kills,treasures_collected,final_hp,actions";

fn outcome_name(o: Outcome) -> &'static str {
    match o {
        Outcome::Ongoing => "ongoing",
        Outcome::Win => "win",
        Outcome::Death => "death",
        Outcome::StepLimit => "step_limit",
    }
}

pub fn run(m: &Manifest) -> Result<()> {
    let first = m.count.unwrap_or(100);
    let out = m.out.clone().unwrap_or_else(|| m.levels.join("traces.csv"));
    let pool = m.pool()?;

    let mut jobs = Vec::new();
    for (c, f, dir) in combos(&m.levels, &m.pairs) {
        for i in level_indices(&dir)?.into_iter().filter(|&i| i < first) {
            match load_level(&dir, i) {
                Ok(loaded) => {
                    for &p in &m.personas {
                        jobs.push((c, f, i, p, loaded.level.clone()));
                    }
                }
                Err(e) => eprintln!("warning: skipping {c}-{f} level {i}: {e:#}"),
            }
        }
    }
    anyhow::ensure!(!jobs.is_empty(), "no levels found under {}", m.levels.display());
    eprintln!("simulating {} playthroughs on {} threads", jobs.len(), m.jobs);

    let rows: Vec<Option<String>> = pool.install(|| {
        jobs.par_iter()
            .map(|(c, f, i, p, level)| {
                // Levels keep their file coordinates even if the metadata
                // is missing.
                let mut level = level.clone();
                level.provenance.creator = c.id().to_owned();
                level.provenance.furnisher = f.id().to_owned();
                match play_level(&level, *i, *p, m.seed, m.mcts_iters, &m.rules) {
                    Ok(t) => Some(format!(
                        "{c},{f},{i},{p},{},{},{},{},{},{},{}",
                        outcome_name(t.outcome),
                        u8::from(t.outcome == Outcome::Win),
                        t.steps,
                        t.kills,
                        t.treasures_collected,
                        t.final_hp,
                        t.actions.iter().map(|a| a.glyph()).collect::<String>()
                    )),
                    Err(e) => {
                        eprintln!("warning: {c}-{f} level {i} ({p}): {e}");
                        None
                    }
                }
            })
            .collect()
    });

    let mut text = String::from(TRACE_HEADER);
    text.push('\n');
    for row in rows.into_iter().flatten() {
        let _ = writeln!(text, "{row}");
    }
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(&out, text).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("traces -> {}", out.display());
    Ok(())
}
