use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::constructions::{hajos_merge, vertex_identify, MergeSpec};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair};

use super::{random_edge, random_non_edge, stream_rng, Sample, SampleBatch};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CraConfig {
    pub k: usize,
    /// Probability of the merge branch once the list has grown.
    pub p: f64,
    pub t: usize,
    pub seed: u64,
    /// Round limit; `1000 * t` when unset.
    #[serde(default)]
    pub max_rounds: Option<usize>,
}

impl CraConfig {
    pub fn new(k: usize, p: f64, t: usize, seed: u64) -> Self {
        CraConfig { k, p, t, seed, max_rounds: None }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::spec("CRA needs k >= 3"));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::spec(format!("CRA needs 0 < p < 1, got {}", self.p)));
        }
        Ok(())
    }
}

/// How a CRA graph was obtained from earlier list members; indices refer to
/// the list that starts with `K_k` at position 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CraOp {
    Merge { first: usize, second: usize, spec: MergeSpec },
    Identify { source: usize, pair: VertexPair },
}

fn apply(list: &[Graph], op: &CraOp) -> Result<Graph> {
    let get = |i: usize| list.get(i).ok_or_else(|| Error::spec(format!("list index {i} out of range")));
    let g = match op {
        CraOp::Merge { first, second, spec } => hajos_merge(get(*first)?, get(*second)?, spec)?,
        CraOp::Identify { source, pair } => vertex_identify(get(*source)?, &[*pair])?,
    };
    Ok(g.compacted())
}

/// Runs the constructible random algorithm. The returned samples exclude
/// the initial `K_k`.
pub fn cra(config: &CraConfig) -> Result<SampleBatch<CraOp>> {
    config.validate()?;
    let cap = config.max_rounds.unwrap_or(config.t.saturating_mul(1000));
    let mut rng = stream_rng(config.seed, 0);
    let mut list = vec![Graph::complete(config.k)];
    let mut seen: HashSet<Vec<u8>> = HashSet::from([canonical_form(&list[0])]);
    let mut batch = SampleBatch { samples: Vec::new(), attempts: 0, duplicates: 0, discarded: 0 };
    while batch.samples.len() < config.t {
        if batch.attempts >= cap {
            return Err(Error::Sampler(format!(
                "CRA stopped after {cap} rounds with {} of {} graphs ({} duplicates)",
                batch.samples.len(),
                config.t,
                batch.duplicates
            )));
        }
        batch.attempts += 1;
        let r: f64 = rng.gen();
        let op = if r > config.p && !batch.samples.is_empty() {
            let open: Vec<usize> = (0..list.len()).filter(|&i| !list[i].is_complete()).collect();
            let source = open[rng.gen_range(0..open.len())];
            let pair = random_non_edge(&list[source], &mut rng).expect("non-complete graph has a non-edge");
            CraOp::Identify { source, pair }
        } else {
            let first = rng.gen_range(0..list.len());
            let second = rng.gen_range(0..list.len());
            let edge1 = random_edge(&list[first], &mut rng).expect("CRA graphs have edges");
            let edge2 = random_edge(&list[second], &mut rng).expect("CRA graphs have edges");
            CraOp::Merge { first, second, spec: MergeSpec::new(edge1, edge2) }
        };
        let g = apply(&list, &op)?;
        if seen.insert(canonical_form(&g)) {
            list.push(g.clone());
            batch.samples.push(Sample { graph: g, provenance: op, attempt: batch.attempts - 1 });
        } else {
            batch.duplicates += 1;
        }
    }
    Ok(batch)
}

/// Rebuilds the CRA list (starting with `K_k`) from its operations.
pub fn replay_cra(k: usize, ops: &[CraOp]) -> Result<Vec<Graph>> {
    let mut list = vec![Graph::complete(k)];
    for op in ops {
        let g = apply(&list, op)?;
        list.push(g);
    }
    Ok(list)
}
