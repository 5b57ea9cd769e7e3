use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use twostep_core::config::parse_flat;
use twostep_core::{CreatorKind, FurnisherKind, PersonaKind, RuleConfig};

use crate::Opts;

const KEYS: [&str; 14] = [
    "seed",
    "creator",
    "furnisher",
    "all_pairs",
    "count",
    "out",
    "persona",
    "mcts_iters",
    "rules",
    "levels",
    "traces",
    "use_portals",
    "bins",
    "jobs",
];

/// Fully resolved run settings: defaults, then the manifest file, then
/// command-line flags.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub seed: u64,
    pub pairs: Vec<(CreatorKind, FurnisherKind)>,
    pub count: Option<u64>,
    pub out: Option<PathBuf>,
    pub personas: Vec<PersonaKind>,
    pub mcts_iters: u32,
    pub rules: RuleConfig,
    pub levels: PathBuf,
    pub traces: Option<PathBuf>,
    pub use_portals: bool,
    pub bins: usize,
    pub jobs: usize,
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| anyhow!("{key}: {e}"))
}

fn flag_or<T: FromStr>(flag: Option<T>, file: &std::collections::BTreeMap<String, String>, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key).map(|v| parse(key, v)).transpose(),
    }
}

fn personas(spec: &str) -> Result<Vec<PersonaKind>> {
    if spec == "all" {
        return Ok(PersonaKind::ALL.to_vec());
    }
    spec.split(',').map(|s| s.trim().parse().map_err(|e: String| anyhow!(e))).collect()
}

impl Manifest {
    pub fn resolve(o: &Opts) -> Result<Self> {
        let file = match &o.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading manifest {}", path.display()))?;
                let map = parse_flat(&text).with_context(|| format!("manifest {}", path.display()))?;
                if let Some(k) = map.keys().find(|k| !KEYS.contains(&k.as_str())) {
                    bail!("manifest {}: unknown key `{k}`", path.display());
                }
                map
            }
            None => Default::default(),
        };

        let all_pairs = o.all_pairs || flag_or(None::<bool>, &file, "all_pairs")?.unwrap_or(false);
        let creator: Option<CreatorKind> = flag_or(o.creator.clone(), &file, "creator")?
            .map(|s| s.parse().map_err(|e: String| anyhow!(e)))
            .transpose()?;
        let furnisher: Option<FurnisherKind> = flag_or(o.furnisher.clone(), &file, "furnisher")?
            .map(|s| s.parse().map_err(|e: String| anyhow!(e)))
            .transpose()?;
        let pairs = if all_pairs {
            CreatorKind::ALL
                .into_iter()
                .flat_map(|c| FurnisherKind::ALL.into_iter().map(move |f| (c, f)))
                .collect()
        } else {
            let creators = creator.map_or(CreatorKind::ALL.to_vec(), |c| vec![c]);
            let furnishers = furnisher.map_or(FurnisherKind::ALL.to_vec(), |f| vec![f]);
            creators.iter().flat_map(|&c| furnishers.iter().map(move |&f| (c, f))).collect()
        };

        let count = flag_or(o.count, &file, "count")?;
        if count == Some(0) {
            bail!("count must be at least 1");
        }
        let rules = match flag_or(o.rules.clone(), &file, "rules")? {
            Some(path) => RuleConfig::load(&path).with_context(|| format!("rules file {}", path.display()))?,
            None => RuleConfig::default(),
        };
        let persona_spec = flag_or(o.persona.clone(), &file, "persona")?.unwrap_or_else(|| "all".into());
        let mcts_iters = flag_or(o.mcts_iters, &file, "mcts_iters")?.unwrap_or(1000);
        if mcts_iters == 0 {
            bail!("mcts_iters must be at least 1");
        }
        let jobs = flag_or(o.jobs, &file, "jobs")?.unwrap_or(1).max(1);
        Ok(Self {
            seed: flag_or(o.seed, &file, "seed")?.unwrap_or(1),
            pairs,
            count,
            out: flag_or(o.out.clone(), &file, "out")?,
            personas: personas(&persona_spec)?,
            mcts_iters,
            rules,
            levels: flag_or(o.levels.clone(), &file, "levels")?.unwrap_or_else(|| PathBuf::from("out")),
            traces: flag_or(o.traces.clone(), &file, "traces")?,
            use_portals: o.use_portals || flag_or(None::<bool>, &file, "use_portals")?.unwrap_or(false),
            bins: flag_or(o.bins, &file, "bins")?.unwrap_or(10).max(1),
            jobs,
        })
    }

    /// Worker pool sized by `jobs`.
    pub fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build().context("starting worker threads")
    }

    pub fn out_or<'a>(&'a self, fallback: &'a Path) -> &'a Path {
        self.out.as_deref().unwrap_or(fallback)
    }
}
