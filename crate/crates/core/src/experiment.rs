//! Per-sample records and batch summaries for generator experiments.

use std::collections::BTreeMap;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{betti_numbers, neighborhood_complex, Field};
use crate::error::Result;
use crate::graph::Graph;

/// One sampled graph. Column order is the `records.csv` schema.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub sample_index: usize,
    pub order: usize,
    pub size: usize,
    pub betti1: usize,
    pub wall_time_ms: f64,
    pub provenance: String,
}

/// An exact fraction in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub numerator: u64,
    pub denominator: u64,
}

impl Fraction {
    /// `0/1` when `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        if den == 0 {
            return Fraction { numerator: 0, denominator: 1 };
        }
        let g = num.gcd(&den);
        Fraction { numerator: num / g, denominator: den / g }
    }

    pub fn value(self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub betti1: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatterRow {
    pub order: usize,
    pub size: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub config: serde_json::Value,
    pub count: usize,
    /// Samples whose homology hit the capacity bound.
    pub skipped: usize,
    pub zero_betti_count: usize,
    pub zero_betti_fraction: Fraction,
    pub zero_betti_fraction_value: f64,
    pub histogram: Vec<HistogramRow>,
    pub scatter: Vec<ScatterRow>,
    /// Generator counters (attempts, duplicates, discarded) when available.
    #[serde(default)]
    pub generator: BTreeMap<String, usize>,
}

/// `b~_1(N(g))` over `field`.
pub fn first_betti(g: &Graph, field: Field) -> Result<usize> {
    Ok(betti_numbers(&neighborhood_complex(g), 1, field)?.get(1))
}

/// Computes one record per sample in parallel; records stay in input order.
/// Samples that exceed the face capacity are dropped and counted.
pub fn measure<'a>(samples: impl IntoParallelIterator<Item = (usize, String, &'a Graph)>, field: Field) -> Result<(Vec<ExperimentRecord>, usize)> {
    let results: Vec<Result<Option<ExperimentRecord>>> = samples
        .into_par_iter()
        .map(|(sample_index, provenance, g)| {
            let start = Instant::now();
            match first_betti(g, field) {
                Ok(betti1) => Ok(Some(ExperimentRecord {
                    sample_index,
                    order: g.order(),
                    size: g.size(),
                    betti1,
                    wall_time_ms: start.elapsed().as_secs_f64() * 1000.0,
                    provenance,
                })),
                Err(e) if e.is_capacity() => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect();
    let mut records = Vec::new();
    let mut skipped = 0;
    for r in results {
        match r? {
            Some(rec) => records.push(rec),
            None => skipped += 1,
        }
    }
    Ok((records, skipped))
}

pub fn summarize(config: serde_json::Value, records: &[ExperimentRecord], skipped: usize) -> ExperimentSummary {
    let zero = records.iter().filter(|r| r.betti1 == 0).count();
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut scatter: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for r in records {
        *hist.entry(r.betti1).or_default() += 1;
        *scatter.entry((r.order, r.size)).or_default() += 1;
    }
    let fraction = Fraction::new(zero as u64, records.len() as u64);
    ExperimentSummary {
        config,
        count: records.len(),
        skipped,
        zero_betti_count: zero,
        zero_betti_fraction: fraction,
        zero_betti_fraction_value: fraction.value(),
        histogram: hist.into_iter().map(|(betti1, count)| HistogramRow { betti1, count }).collect(),
        scatter: scatter.into_iter().map(|((order, size), count)| ScatterRow { order, size, count }).collect(),
        generator: BTreeMap::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_counts() {
        let graphs = [Graph::cycle(5), Graph::complete(4), Graph::cycle(7), Graph::complete(3)];
        let (records, skipped) =
            measure(graphs.par_iter().enumerate().map(|(i, g)| (i, format!("fixture:{i}"), g)), Field::Gf2).unwrap();
        assert_eq!(skipped, 0);
        assert_eq!(records.iter().map(|r| r.betti1).collect::<Vec<_>>(), vec![1, 0, 1, 1]);
        let s = summarize(serde_json::json!({"k": 3}), &records, 0);
        assert_eq!(s.zero_betti_fraction, Fraction::new(1, 4));
        assert_eq!(s.histogram, vec![HistogramRow { betti1: 0, count: 1 }, HistogramRow { betti1: 1, count: 3 }]);
        assert_eq!(s.scatter.len(), 4);
    }

    #[test]
    fn empty_summary() {
        let s = summarize(serde_json::Value::Null, &[], 0);
        assert_eq!(s.count, 0);
        assert_eq!(s.zero_betti_fraction.to_string(), "0/1");
    }
}
