use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use twostep_core::level::{serialize_level, serialize_provenance};
use twostep_core::pipeline::generate_level;
use twostep_core::{Budget, CreatorParams};

use crate::io::{combo_dir, level_path, meta_path};
use crate::manifest::Manifest;

pub fn run(m: &Manifest) -> Result<()> {
    let root = m.out_or(Path::new("out"));
    let count = m.count.unwrap_or(100);
    let params = CreatorParams::default();
    let budget = Budget::default();
    let pool = m.pool()?;
    for &(c, f) in &m.pairs {
        let dir = combo_dir(root, c, f);
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        let levels: Vec<_> = pool.install(|| {
            (0..count)
                .into_par_iter()
                .map(|i| generate_level(m.seed, c, f, i, &params, &budget))
                .collect::<Result<_, _>>()
        })?;
        for (i, report) in levels.iter().enumerate() {
            let i = i as u64;
            fs::write(level_path(&dir, i), serialize_level(&report.level))
                .with_context(|| format!("writing {}", level_path(&dir, i).display()))?;
            let meta = format!(
                "{}index = {i}\nrelaxations = {}\n",
                serialize_provenance(&report.level.provenance),
                report.relaxations
            );
            fs::write(meta_path(&dir, i), meta).with_context(|| format!("writing {}", meta_path(&dir, i).display()))?;
        }
        eprintln!("{c}-{f}: {count} levels -> {}", dir.display());
    }
    Ok(())
}
