use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use twostep_core::analysis::{
    aggregate, histogram, layout_metrics, level_metrics, write_histogram_csv, write_records_csv,
    write_summary_csv, write_welch_csv, MetricsRecord, LAYOUT_METRICS, LEVEL_METRICS, PLAY_METRICS,
};

use crate::io::{combos, level_indices, load_level};
use crate::manifest::Manifest;
use crate::simulate::TRACE_HEADER;

const LEVEL_TAGS: [&str; 3] = ["creator", "furnisher", "level"];
const PLAY_TAGS: [&str; 4] = ["creator", "furnisher", "level", "persona"];

fn grouped<'a>(records: &'a [MetricsRecord], keys: &[&str]) -> Vec<(String, Vec<&'a MetricsRecord>)> {
    let mut groups: BTreeMap<String, Vec<&MetricsRecord>> = BTreeMap::new();
    for r in records {
        let label = keys.iter().map(|k| r.tags.get(*k).map_or("", String::as_str)).collect::<Vec<_>>().join("/");
        groups.entry(label).or_default().push(r);
    }
    groups.into_iter().collect()
}

fn level_records(m: &Manifest) -> Result<(Vec<MetricsRecord>, Vec<MetricsRecord>)> {
    let mut jobs = Vec::new();
    for (c, f, dir) in combos(&m.levels, &m.pairs) {
        let indices = level_indices(&dir)?;
        let take = m.count.unwrap_or(u64::MAX);
        for i in indices.into_iter().filter(|&i| i < take) {
            jobs.push((c, f, i, dir.clone()));
        }
    }
    if jobs.is_empty() {
        bail!("no levels found under {}", m.levels.display());
    }
    let pool = m.pool()?;
    let results: Vec<Result<(MetricsRecord, MetricsRecord)>> = pool.install(|| {
        jobs.par_iter()
            .map(|(c, f, i, dir)| {
                let loaded = load_level(dir, *i)?;
                let id = format!("{c}-{f}-{i}");
                let layout = layout_metrics(&loaded.level.grid);
                let mut rec = MetricsRecord::new(&id)
                    .tag("creator", c.id())
                    .tag("furnisher", f.id())
                    .tag("level", i.to_string());
                rec.extend(&layout);
                rec.extend(&level_metrics(&loaded.level, m.use_portals));
                rec.set("relaxations", loaded.relaxations.map_or(f64::NAN, f64::from));
                let layout_rec = {
                    let mut r = MetricsRecord::new(format!("{c}-{i}")).tag("creator", c.id()).tag("level", i.to_string());
                    r.extend(&layout);
                    r
                };
                Ok((rec, layout_rec))
            })
            .collect()
    });
    let mut levels = Vec::new();
    let mut layouts: BTreeMap<(String, u64), MetricsRecord> = BTreeMap::new();
    for ((c, _, i, _), r) in jobs.iter().zip(results) {
        let (rec, layout) = r?;
        levels.push(rec);
        // Furnishers share grids: keep one layout record per (creator, index).
        layouts.entry((c.id().to_owned(), *i)).or_insert(layout);
    }
    let mut layouts: Vec<MetricsRecord> = layouts.into_values().collect();
    layouts.sort_by_key(|r| (creator_rank(&r.tags["creator"]), r.tags["level"].parse::<u64>().unwrap_or(0)));
    Ok((levels, layouts))
}

fn creator_rank(id: &str) -> usize {
    ["cc", "cac", "ac"].iter().position(|c| *c == id).unwrap_or(usize::MAX)
}

fn play_records(path: &Path) -> Result<Vec<MetricsRecord>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text.lines();
    if lines.next() != Some(TRACE_HEADER) {
        bail!("{}: unexpected header (expected `{TRACE_HEADER}`)", path.display());
    }
    let mut out = Vec::new();
    for (n, line) in lines.enumerate() {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 11 {
            bail!("{}: line {}: expected 11 columns, found {}", path.display(), n + 2, cols.len());
        }
        let num = |i: usize| -> Result<f64> {
            cols[i].parse().with_context(|| format!("{}: line {}: bad number `{}`", path.display(), n + 2, cols[i]))
        };
        let mut r = MetricsRecord::new(format!("{}-{}-{}-{}", cols[0], cols[1], cols[2], cols[3]))
            .tag("creator", cols[0])
            .tag("furnisher", cols[1])
            .tag("level", cols[2])
            .tag("persona", cols[3]);
        let won = num(5)?;
        r.set("completion", won);
        r.set("kills", num(7)?);
        r.set("treasures_collected", num(8)?);
        r.set("steps", num(6)?);
        r.set("steps_completed", if won == 1.0 { num(6)? } else { f64::NAN });
        r.set("final_hp", num(9)?);
        out.push(r);
    }
    Ok(out)
}

pub fn run(m: &Manifest) -> Result<()> {
    let fallback = m.levels.join("analysis");
    let out = m.out_or(&fallback);
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;

    let (levels, layouts) = level_records(m)?;
    let mut level_columns: Vec<&str> = LAYOUT_METRICS.to_vec();
    level_columns.extend(LEVEL_METRICS);
    level_columns.push("relaxations");
    write_records_csv(&out.join("levels.csv"), &levels, &LEVEL_TAGS, &level_columns)?;
    write_records_csv(&out.join("layouts.csv"), &layouts, &["creator", "level"], &LAYOUT_METRICS)?;
    write_summary_csv(&out.join("layout_summary.csv"), &aggregate(&layouts, &["creator"]))?;
    write_summary_csv(&out.join("level_summary.csv"), &aggregate(&levels, &["creator", "furnisher"]))?;
    write_summary_csv(&out.join("furnisher_summary.csv"), &aggregate(&levels, &["furnisher"]))?;
    write_welch_csv(&out.join("welch_layouts.csv"), &grouped(&layouts, &["creator"]), &LAYOUT_METRICS)?;
    write_welch_csv(&out.join("welch_furnishers.csv"), &grouped(&levels, &["furnisher"]), &LEVEL_METRICS)?;
    write_welch_csv(
        &out.join("welch_levels.csv"),
        &grouped(&levels, &["creator", "furnisher"]),
        &level_columns,
    )?;

    let hist = |records: &[MetricsRecord], key: &str, x: &str, y: &str| -> Result<()> {
        for (label, group) in grouped(records, &[key]) {
            let owned: Vec<MetricsRecord> = group.into_iter().cloned().collect();
            let h = histogram(&owned, x, y, m.bins);
            write_histogram_csv(&out.join(format!("hist_{label}_{x}_x_{y}.csv")), &h, x, y)?;
        }
        Ok(())
    };
    hist(&layouts, "creator", "floor_tiles", "longest_path")?;
    hist(&layouts, "creator", "floor_tiles", "wall_chunks")?;
    hist(&levels, "furnisher", "dist_entrance_to_exit", "dist_entrance_to_minitaur")?;
    eprintln!("{} levels, {} layouts analyzed", levels.len(), layouts.len());

    let traces = m.traces.clone().unwrap_or_else(|| m.levels.join("traces.csv"));
    if m.traces.is_some() || traces.exists() {
        let plays = play_records(&traces)?;
        write_records_csv(&out.join("plays.csv"), &plays, &PLAY_TAGS, &PLAY_METRICS)?;
        write_summary_csv(&out.join("play_summary.csv"), &aggregate(&plays, &["persona"]))?;
        write_summary_csv(
            &out.join("play_summary_by_combo.csv"),
            &aggregate(&plays, &["creator", "furnisher", "persona"]),
        )?;
        write_welch_csv(&out.join("welch_personas.csv"), &grouped(&plays, &["persona"]), &PLAY_METRICS)?;
        eprintln!("{} playthroughs analyzed", plays.len());
    }
    eprintln!("analysis -> {}", out.display());
    Ok(())
}
