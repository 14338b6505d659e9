//! Sharded, resumable catalogue generation.
//!
//! For each order the shards are the representatives one color short of
//! complete (see [`level_representatives`]). Shards are completed in
//! parallel, in batches of `jobs`; after each batch the companion `.meta`
//! state records the codes every finished shard produced. Records are
//! computed once all shards are done, from the merged, deduplicated codes,
//! so the output never depends on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{complete_shard, level_representatives, perfect_matchings};
use super::record::{filter_counts, CatalogueRecord, Filter, GENERATOR_VERSION};
use crate::canon::{canonical_code, CanonicalCode, CodeFlavor};
use crate::error::{GemError, Result};
use crate::graph::ColoredGraph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerateParams {
    pub n_colors: usize,
    pub max_order: usize,
    pub filters: Vec<Filter>,
}

impl GenerateParams {
    pub fn validate(&self) -> Result<()> {
        if !(2..=8).contains(&self.n_colors) {
            return Err(GemError::InvalidGraph(format!("n_colors must be between 2 and 8, got {}", self.n_colors)));
        }
        if self.max_order < 2 || self.max_order % 2 != 0 {
            return Err(GemError::InvalidGraph(format!("max order must be even and at least 2, got {}", self.max_order)));
        }
        Ok(())
    }

    fn orders(&self) -> impl Iterator<Item = usize> {
        (2..=self.max_order).step_by(2)
    }
}

/// Checkpoint state, persisted next to the catalogue.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub generator: String,
    pub params: GenerateParams,
    /// Unix seconds when the run started.
    pub started: u64,
    /// Shard count per order.
    pub shards: BTreeMap<usize, usize>,
    /// Connected codes per finished shard, keyed `order:index`.
    pub completed: BTreeMap<String, Vec<String>>,
    /// Records surviving each filter prefix, per order; set when complete.
    pub counts: BTreeMap<usize, Vec<usize>>,
    pub complete: bool,
}

impl Meta {
    pub fn new(params: GenerateParams) -> Meta {
        let started = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Meta {
            generator: GENERATOR_VERSION.to_string(),
            params,
            started,
            shards: BTreeMap::new(),
            completed: BTreeMap::new(),
            counts: BTreeMap::new(),
            complete: false,
        }
    }

    pub fn load(path: &Path) -> Result<Meta> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| GemError::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("meta.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(self).expect("meta serializes"))?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Path of the `.meta` file that goes with a catalogue.
pub fn meta_path(catalogue: &Path) -> PathBuf {
    let mut s = catalogue.as_os_str().to_owned();
    s.push(".meta");
    PathBuf::from(s)
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub jobs: usize,
    /// Stop after this many newly completed shards.
    pub shard_budget: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { jobs: 1, shard_budget: None }
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| GemError::Io(format!("thread pool: {e}")))
}

/// Runs (or resumes) generation. `checkpoint` is called with the updated
/// state after every batch of finished shards. Returns the filtered records
/// sorted by code; on an exhausted budget returns
/// [`GemError::BudgetExhausted`] after a final checkpoint.
pub fn run(meta: &mut Meta, opts: &RunOptions, checkpoint: &mut dyn FnMut(&Meta) -> Result<()>) -> Result<Vec<CatalogueRecord>> {
    meta.params.validate()?;
    let pool = pool(opts.jobs)?;
    let params = meta.params.clone();
    let mut budget = opts.shard_budget;
    let mut done_now = 0;
    for order in params.orders() {
        let shards = level_representatives(order, params.n_colors - 1);
        if let Some(&known) = meta.shards.get(&order) {
            if known != shards.len() {
                return Err(GemError::Structural(format!(
                    "checkpoint lists {known} shards at order {order}, this generator has {}",
                    shards.len()
                )));
            }
        }
        meta.shards.insert(order, shards.len());
        let matchings = perfect_matchings(order);
        let todo: Vec<usize> = (0..shards.len()).filter(|i| !meta.completed.contains_key(&format!("{order}:{i}"))).collect();
        for batch in todo.chunks(opts.jobs.max(1)) {
            let batch = match budget {
                Some(0) => {
                    checkpoint(meta)?;
                    return Err(GemError::BudgetExhausted { completed: done_now });
                }
                Some(b) => &batch[..batch.len().min(b)],
                None => batch,
            };
            let results: Vec<(usize, BTreeSet<CanonicalCode>)> =
                pool.install(|| batch.par_iter().map(|&i| (i, complete_shard(&shards[i], &matchings))).collect());
            for (i, codes) in results {
                meta.completed.insert(format!("{order}:{i}"), codes.iter().map(|c| c.to_hex()).collect());
            }
            done_now += batch.len();
            if let Some(b) = budget.as_mut() {
                *b -= batch.len();
            }
            checkpoint(meta)?;
        }
    }

    let mut codes = BTreeSet::new();
    for list in meta.completed.values() {
        codes.extend(list.iter().cloned());
    }
    let codes: Vec<String> = codes.into_iter().collect();
    let analyzed: Vec<Result<CatalogueRecord>> = pool.install(|| {
        codes
            .par_iter()
            .map(|hex| {
                let g = CanonicalCode::from_hex(CodeFlavor::UpToColorPermutation, hex)?.decode()?;
                CatalogueRecord::from_graph(&g)
            })
            .collect()
    });
    let mut all = analyzed.into_iter().collect::<Result<Vec<_>>>()?;
    all.sort_by(|a, b| a.code.cmp(&b.code));

    meta.counts.clear();
    for order in params.orders() {
        let at: Vec<CatalogueRecord> = all.iter().filter(|r| r.order == order).cloned().collect();
        meta.counts.insert(order, filter_counts(&at, &params.filters));
    }
    all.retain(|r| params.filters.iter().all(|f| f.accepts(r)));
    meta.complete = true;
    checkpoint(meta)?;
    Ok(all)
}

/// Generates in memory, without checkpoints.
pub fn enumerate(params: &GenerateParams, jobs: usize) -> Result<Vec<CatalogueRecord>> {
    let mut meta = Meta::new(params.clone());
    run(&mut meta, &RunOptions { jobs, shard_budget: None }, &mut |_| Ok(()))
}

pub fn write_catalogue(path: &Path, records: &[CatalogueRecord]) -> Result<()> {
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    for r in records {
        writeln!(f, "{}", r.to_json_line())?;
    }
    f.flush()?;
    Ok(())
}

pub fn read_catalogue(path: &Path) -> Result<Vec<CatalogueRecord>> {
    let text = fs::read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| serde_json::from_str(l).map_err(|e| GemError::Parse { line: n + 1, msg: e.to_string() }))
        .collect()
}

/// Records for arbitrary graphs (connected ones), sorted and deduplicated.
pub fn records_for(graphs: &[ColoredGraph]) -> Result<Vec<CatalogueRecord>> {
    let mut by_code = BTreeMap::new();
    for g in graphs {
        let code = canonical_code(g, CodeFlavor::UpToColorPermutation)?.to_hex();
        if !by_code.contains_key(&code) {
            by_code.insert(code, CatalogueRecord::from_graph(g)?);
        }
    }
    Ok(by_code.into_values().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, max: usize, filters: &[Filter]) -> GenerateParams {
        GenerateParams { n_colors: n, max_order: max, filters: filters.to_vec() }
    }

    #[test]
    fn order_two() {
        assert_eq!(enumerate(&params(5, 2, &[]), 1).unwrap().len(), 1);
        assert_eq!(enumerate(&params(3, 2, &[]), 1).unwrap().len(), 1);
    }

    #[test]
    fn budget_and_resume() {
        let p = params(4, 6, &[Filter::Manifold]);
        let full = enumerate(&p, 2).unwrap();
        let mut meta = Meta::new(p.clone());
        let mut saved = None;
        let err = run(&mut meta, &RunOptions { jobs: 1, shard_budget: Some(2) }, &mut |m| {
            saved = Some(m.clone());
            Ok(())
        })
        .unwrap_err();
        assert!(matches!(err, GemError::BudgetExhausted { completed: 2 }));
        let mut meta = saved.unwrap();
        assert!(!meta.complete);
        assert_eq!(meta.completed.len(), 2);
        let resumed = run(&mut meta, &RunOptions { jobs: 3, shard_budget: None }, &mut |_| Ok(())).unwrap();
        assert_eq!(resumed, full);
        assert!(meta.complete);
    }

    #[test]
    fn counts_are_monotone() {
        let p = params(4, 6, &[Filter::Bipartite, Filter::Manifold, Filter::Crystallization, Filter::Sphere]);
        let mut meta = Meta::new(p);
        run(&mut meta, &RunOptions::default(), &mut |_| Ok(())).unwrap();
        for counts in meta.counts.values() {
            assert!(counts.windows(2).all(|w| w[0] >= w[1]), "{counts:?}");
        }
    }

    #[test]
    fn projective_space_among_nonspheres() {
        let records = enumerate(&params(4, 8, &[Filter::Crystallization, Filter::Nonsphere]), 2).unwrap();
        let rp3 = canonical_code(&crate::fixtures::rp3(), CodeFlavor::UpToColorPermutation).unwrap().to_hex();
        assert!(records.iter().any(|r| r.code == rp3));
        assert!(records.iter().all(|r| r.homology.h1.as_deref() != Some("0")));
    }
}
