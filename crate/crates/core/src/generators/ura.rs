use std::collections::HashSet;

use rand::seq::index::sample as sample_indices;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::constructions::{ore_merge, urquhart_compose, MergeSpec, OreSpec, UrquhartStep};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::io::GraphJson;

use super::{random_edge, stream_rng, Sample, SampleBatch};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UraConfig {
    pub k: usize,
    pub t: usize,
    /// Most extra vertices per component.
    pub m: usize,
    /// Most components per sample.
    pub n: usize,
    pub seed: u64,
    /// Resamples of the identification pairs (and of `l`, and of the
    /// edges) before giving up on a merge.
    #[serde(default = "default_retry_cap")]
    pub retry_cap: usize,
    /// Attempt limit; `1000 * t` when unset.
    #[serde(default)]
    pub max_attempts: Option<usize>,
}

fn default_retry_cap() -> usize {
    50
}

impl UraConfig {
    pub fn new(k: usize, m: usize, n: usize, t: usize, seed: u64) -> Self {
        UraConfig { k, t, m, n, seed, retry_cap: default_retry_cap(), max_attempts: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::spec("URA needs k >= 3"));
        }
        if self.m < 1 || self.n < 1 || self.retry_cap < 1 {
            return Err(Error::spec("URA needs m, n and retry_cap >= 1"));
        }
        Ok(())
    }
}

/// The components and merge steps of one URA sample; replaying them with
/// [`urquhart_compose`] rebuilds the sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UraRecipe {
    pub components: Vec<GraphJson>,
    pub steps: Vec<UrquhartStep>,
}

impl UraRecipe {
    pub fn replay(&self, k: usize) -> Result<Graph> {
        let graphs = self.components.iter().map(GraphJson::to_graph).collect::<Result<Vec<_>>>()?;
        Ok(urquhart_compose(graphs, &self.steps, Some(k))?.compacted())
    }
}

/// `K_k` plus `1..=m` extra vertices, each joined to a random nonempty
/// subset of the clique, plus a `G(r, 1/2)` on the extra vertices.
fn component(k: usize, m: usize, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::complete(k);
    let r = rng.gen_range(1..=m);
    for j in 0..r {
        let v = Vertex((k + j) as u32);
        g.add_vertex(v);
        loop {
            let chosen: Vec<u32> = (0..k as u32).filter(|_| rng.gen_bool(0.5)).collect();
            if !chosen.is_empty() {
                for w in chosen {
                    g.insert_edge(v, Vertex(w));
                }
                break;
            }
        }
    }
    for a in 0..r {
        for b in a + 1..r {
            if rng.gen_bool(0.5) {
                g.insert_edge(Vertex((k + a) as u32), Vertex((k + b) as u32));
            }
        }
    }
    g
}

fn pick_distinct(pool: &[Vertex], count: usize, rng: &mut impl Rng) -> Vec<Vertex> {
    sample_indices(rng, pool.len(), count).into_iter().map(|i| pool[i]).collect()
}

/// One Ore merge with random edges, `l` and pairs; `None` when every retry
/// failed.
fn random_ore(g1: &Graph, g2: &Graph, retry_cap: usize, rng: &mut impl Rng) -> Option<(OreSpec, Graph)> {
    for _ in 0..retry_cap {
        let spec = MergeSpec::new(random_edge(g1, rng)?, random_edge(g2, rng)?);
        let ((x1, y1), (x2, y2)) = spec.roles();
        let pool1: Vec<Vertex> = g1.vertices().filter(|&v| v != x1).collect();
        let pool2: Vec<Vertex> = g2.vertices().filter(|&v| v != x2).collect();
        let top = g1.order().min(g2.order()) - 1;
        for _ in 0..retry_cap {
            let l = rng.gen_range(1..=top);
            for _ in 0..retry_cap {
                let dom = pick_distinct(&pool1, l, rng);
                let ran = pick_distinct(&pool2, l, rng);
                let mu: Vec<(Vertex, Vertex)> = dom.into_iter().zip(ran).collect();
                if mu.contains(&(y1, y2)) {
                    continue;
                }
                let ore = OreSpec { merge: spec, mu };
                if let Ok(g) = ore_merge(g1, g2, &ore) {
                    return Some((ore, g));
                }
            }
        }
    }
    None
}

/// One URA attempt; `None` when a merge could not be completed.
fn attempt(config: &UraConfig, index: usize) -> Option<(Graph, UraRecipe)> {
    let mut rng = stream_rng(config.seed, index as u64);
    let rc = rng.gen_range(1..=config.n);
    let components: Vec<Graph> = (0..rc).map(|_| component(config.k, config.m, &mut rng)).collect();
    let mut list = components.clone();
    let mut steps = Vec::new();
    while list.len() > 1 {
        let first = rng.gen_range(0..list.len());
        let mut second = rng.gen_range(0..list.len() - 1);
        if second >= first {
            second += 1;
        }
        let (spec, merged) = random_ore(&list[first], &list[second], config.retry_cap, &mut rng)?;
        let (hi, lo) = (first.max(second), first.min(second));
        list.remove(hi);
        list.remove(lo);
        list.push(merged);
        steps.push(UrquhartStep { first, second, spec });
    }
    let graph = list.pop().unwrap().compacted();
    let recipe = UraRecipe { components: components.iter().map(GraphJson::from_graph).collect(), steps };
    Some((graph, recipe))
}

/// Runs the Urquhart random algorithm until `t` pairwise non-isomorphic
/// graphs are found. Attempts run in parallel; results are consumed in
/// attempt order.
pub fn ura(config: &UraConfig) -> Result<SampleBatch<UraRecipe>> {
    config.validate()?;
    let cap = config.max_attempts.unwrap_or(config.t.saturating_mul(1000));
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut batch = SampleBatch { samples: Vec::new(), attempts: 0, duplicates: 0, discarded: 0 };
    let mut next = 0;
    while batch.samples.len() < config.t {
        if next >= cap {
            return Err(Error::Sampler(format!(
                "URA stopped after {cap} attempts with {} of {} graphs ({} duplicates, {} discarded)",
                batch.samples.len(),
                config.t,
                batch.duplicates,
                batch.discarded
            )));
        }
        let chunk = (config.t - batch.samples.len()).clamp(8, 256).min(cap - next);
        let results: Vec<_> = (next..next + chunk)
            .into_par_iter()
            .map(|i| attempt(config, i).map(|(g, r)| (canonical_form(&g), g, r)))
            .collect();
        for (offset, res) in results.into_iter().enumerate() {
            if batch.samples.len() == config.t {
                break;
            }
            batch.attempts += 1;
            match res {
                None => batch.discarded += 1,
                Some((form, graph, recipe)) => {
                    if seen.insert(form) {
                        batch.samples.push(Sample { graph, provenance: recipe, attempt: next + offset });
                    } else {
                        batch.duplicates += 1;
                    }
                }
            }
        }
        next += chunk;
    }
    Ok(batch)
}
