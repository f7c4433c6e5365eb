//! Property suites for the structural results on neighbourhood complexes.
//!
//! Each suite draws random instances that satisfy the hypotheses of one
//! statement (rejection sampling, one random stream per trial) and checks the
//! homological conclusion. The fixture suites (`fig4`, `prop4.8`, `prop4.9`)
//! and the exhaustive `prop2.9` suite are deterministic.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, canonical_graph};
use crate::coloring::chromatic_number;
use crate::complex::{betti_numbers, neighborhood_complex, BettiVector, Field};
use crate::constructions::{
    build_fig4_graph, build_gn, build_gn_prime, dhgo_compose, hajos_merge, vertex_identify, MergeSpec, Orientation,
};
use crate::error::{Error, Result};
use crate::generators::stream_rng;
use crate::graph::{Distance, Graph, Vertex, VertexPair};
use crate::io::to_graph6;
use crate::morse::{build_prop48_matching, build_prop49_matching, critical_cells, is_acyclic, Acyclicity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    #[serde(rename = "prop2.9")]
    Prop29,
    #[serde(rename = "thm3.3")]
    Thm33,
    #[serde(rename = "thm3.7")]
    Thm37,
    #[serde(rename = "thm4.2")]
    Thm42,
    #[serde(rename = "thm4.3")]
    Thm43,
    #[serde(rename = "thm5.3")]
    Thm53,
    #[serde(rename = "fig4")]
    Fig4,
    #[serde(rename = "prop4.8")]
    Prop48,
    #[serde(rename = "prop4.9")]
    Prop49,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Prop29,
        Suite::Thm33,
        Suite::Thm37,
        Suite::Thm42,
        Suite::Thm43,
        Suite::Thm53,
        Suite::Fig4,
        Suite::Prop48,
        Suite::Prop49,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Prop29 => "prop2.9",
            Suite::Thm33 => "thm3.3",
            Suite::Thm37 => "thm3.7",
            Suite::Thm42 => "thm4.2",
            Suite::Thm43 => "thm4.3",
            Suite::Thm53 => "thm5.3",
            Suite::Fig4 => "fig4",
            Suite::Prop48 => "prop4.8",
            Suite::Prop49 => "prop4.9",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Suite::Prop29 => "N(G) path-connected iff G connected and not bipartite (all graphs up to max_order)",
            Suite::Thm33 => "Hajos merge of connected non-bipartite graphs along non-bridges has b1 >= 1",
            Suite::Thm37 => "identifying vertices at distance >= 5 adds exactly 2 to b1 and keeps b2",
            Suite::Thm42 => "identifying vertices with d >= 3 joined by a path of length 4 never raises b1",
            Suite::Thm43 => "identifying vertices at distance 2 under the three neighbourhood conditions never raises b1",
            Suite::Thm53 => "DHGO composition with a non-bridge edge has b1 >= 1",
            Suite::Fig4 => "six-cycle example: b1 goes from 2 to 3",
            Suite::Prop48 => "N(G_n): b1 = 2n + 5, b2 = 0, and the explicit acyclic matching",
            Suite::Prop49 => "N(G_n'): b1 = 0, b2 = 2n - 1, and the explicit acyclic matching",
        }
    }

    pub fn known_ids() -> String {
        Suite::ALL.iter().map(|s| s.id()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}; known: {}", Suite::known_ids())))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub field: Field,
    /// Largest order for the exhaustive suite.
    pub max_order: usize,
    /// Values of `n` for the `G_n` suites.
    pub ns: Vec<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { trials: 100, seed: 0, field: Field::Gf2, max_order: 7, ns: vec![5, 6] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub instance: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub instances: usize,
    pub passed: usize,
    /// Instances whose homology exceeded the capacity bound.
    pub skipped: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.skipped == 0 && self.passed == self.instances
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} passed", self.suite, self.passed, self.instances)?;
        if self.skipped > 0 {
            write!(f, ", {} skipped", self.skipped)?;
        }
        Ok(())
    }
}

struct Tally {
    report: VerifyReport,
}

impl Tally {
    fn new(suite: Suite) -> Self {
        Tally { report: VerifyReport { suite, instances: 0, passed: 0, skipped: 0, failures: Vec::new() } }
    }

    fn record(&mut self, outcome: Result<Option<String>>) -> Result<()> {
        let i = self.report.instances;
        self.report.instances += 1;
        match outcome {
            Ok(None) => self.report.passed += 1,
            Ok(Some(detail)) => self.report.failures.push(Failure { instance: i, detail }),
            Err(e) if e.is_capacity() => self.report.skipped += 1,
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<VerifyReport> {
    let mut tally = Tally::new(suite);
    match suite {
        Suite::Prop29 => {
            for g in connected_graphs_up_to(config.max_order)? {
                tally.record(check_prop29(&g))?;
            }
        }
        Suite::Fig4 => tally.record(check_fig4(config.field))?,
        Suite::Prop48 | Suite::Prop49 => {
            for &n in &config.ns {
                tally.record(check_gn(suite, n, config.field))?;
            }
        }
        _ => {
            for trial in 0..config.trials {
                let mut rng = stream_rng(config.seed, trial as u64);
                let outcome = match suite {
                    Suite::Thm33 => check_thm33(trial, config.field, &mut rng),
                    Suite::Thm37 => check_thm37(config.field, &mut rng),
                    Suite::Thm42 => check_thm42(config.field, &mut rng),
                    Suite::Thm43 => check_thm43(config.field, &mut rng),
                    Suite::Thm53 => check_thm53(trial, config.field, &mut rng),
                    _ => unreachable!(),
                };
                tally.record(outcome)?;
            }
        }
    }
    Ok(tally.report)
}

fn betti(g: &Graph, d: usize, field: Field) -> Result<BettiVector> {
    betti_numbers(&neighborhood_complex(g), d, field)
}

/// One representative of every isomorphism class of connected graphs with
/// `2..=max_order` vertices, built by adding a vertex with every possible
/// neighbourhood to the graphs one size smaller.
pub fn connected_graphs_up_to(max_order: usize) -> Result<Vec<Graph>> {
    if max_order > 9 {
        return Err(Error::spec("exhaustive enumeration is limited to 9 vertices"));
    }
    let mut level = vec![Graph::empty(1)];
    let mut out = Vec::new();
    for n in 2..=max_order {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            let new = Vertex((n - 1) as u32);
            for mask in 0u32..(1 << (n - 1)) {
                let mut h = g.clone();
                h.add_vertex(new);
                for b in 0..n - 1 {
                    if mask & (1 << b) != 0 {
                        h.insert_edge(new, Vertex(b as u32));
                    }
                }
                if seen.insert(canonical_form(&h)) {
                    next.push(canonical_graph(&h));
                }
            }
        }
        out.extend(next.iter().filter(|g| g.is_connected()).cloned());
        level = next;
    }
    Ok(out)
}

fn check_prop29(g: &Graph) -> Result<Option<String>> {
    let connected = neighborhood_complex(g).is_path_connected();
    let expected = g.is_connected() && !g.is_bipartite();
    Ok((connected != expected)
        .then(|| format!("{}: N(G) path-connected = {connected}, expected {expected}", to_graph6(g))))
}

fn check_fig4(field: Field) -> Result<Option<String>> {
    let (g, pair) = build_fig4_graph();
    let before = betti(&g, 1, field)?.get(1);
    let after = betti(&vertex_identify(&g, &[pair])?, 1, field)?.get(1);
    Ok((before != 2 || after != 3).then(|| format!("b1 {before} -> {after}, expected 2 -> 3")))
}

fn check_gn(suite: Suite, n: usize, field: Field) -> Result<Option<String>> {
    let (g, fixture, want, dim) = if suite == Suite::Prop48 {
        (build_gn(n)?, build_prop48_matching(n)?, vec![0, 2 * n + 5, 0], 1)
    } else {
        (build_gn_prime(n)?, build_prop49_matching(n)?, vec![0, 0, 2 * n - 1], 2)
    };
    let b = betti(&g, 2, field)?;
    if b.betti != want {
        return Ok(Some(format!("n = {n}: Betti numbers {:?}, expected {want:?}", b.betti)));
    }
    if fixture.fibers.assignment.len() != fixture.poset.len() {
        return Ok(Some(format!("n = {n}: the fiber assignment is not total")));
    }
    let m = fixture.matching()?;
    if let Acyclicity::Cycle(c) = is_acyclic(&fixture.poset, &m)? {
        return Ok(Some(format!("n = {n}: matching has a cycle through {} faces", c.len())));
    }
    let crit = critical_cells(&fixture.poset, &m)?;
    let outside = fixture.critical_outside_base(&crit);
    let expected = want[dim];
    if outside.get(dim).copied().unwrap_or(0) != expected {
        return Ok(Some(format!("n = {n}: critical cells outside the base {outside:?}, expected {expected} in dimension {dim}")));
    }
    if crit.euler_characteristic() != fixture.poset.euler_characteristic() {
        return Ok(Some(format!("n = {n}: Euler characteristic of critical cells differs from the face counts")));
    }
    Ok(None)
}

const MAX_DRAWS: usize = 100_000;

fn draw<T>(what: &str, mut f: impl FnMut() -> Result<Option<T>>) -> Result<T> {
    for _ in 0..MAX_DRAWS {
        if let Some(x) = f()? {
            return Ok(x);
        }
    }
    Err(Error::Sampler(format!("no {what} found in {MAX_DRAWS} draws")))
}

/// Random spanning tree (each vertex attached to an earlier one) plus every
/// other edge with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for v in 1..n as u32 {
        g.insert_edge(Vertex(v), Vertex(rng.gen_range(0..v)));
    }
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if !g.has_edge(Vertex(a), Vertex(b)) && rng.gen_bool(p) {
                g.insert_edge(Vertex(a), Vertex(b));
            }
        }
    }
    g
}

fn non_bipartite(lo: usize, hi: usize, rng: &mut impl Rng) -> Result<Graph> {
    draw("non-bipartite graph", || {
        let n = rng.gen_range(lo..=hi);
        let p = rng.gen_range(0.15..0.7);
        let g = random_connected(n, p, rng);
        Ok((!g.is_bipartite()).then_some(g))
    })
}

fn at_least_four_chromatic(rng: &mut impl Rng) -> Result<Graph> {
    draw("4-chromatic graph", || {
        let n = rng.gen_range(4..=8);
        let p = rng.gen_range(0.4..0.9);
        let g = random_connected(n, p, rng);
        Ok(chromatic_number(&g, 3)?.exact().is_none().then_some(g))
    })
}

/// Adds a random tree on `m` new vertices hanging from a random vertex.
fn attach_tree(g: &mut Graph, m: usize, rng: &mut impl Rng) {
    let existing: Vec<Vertex> = g.vertices().collect();
    let base = g.next_id().0;
    let root = *existing.choose(rng).unwrap();
    for i in 0..m as u32 {
        let v = Vertex(base + i);
        g.add_vertex(v);
        let parent = if i == 0 { root } else { Vertex(base + rng.gen_range(0..i)) };
        g.insert_edge(v, parent);
    }
}

fn edges_where(g: &Graph, want_bridge: Option<bool>) -> Result<Vec<VertexPair>> {
    let mut out = Vec::new();
    for e in g.edges() {
        if want_bridge.map_or(true, |b| g.is_bridge(e).unwrap_or(false) == b) {
            out.push(e);
        }
    }
    Ok(out)
}

fn oriented(e: VertexPair, rng: &mut impl Rng) -> VertexPair {
    if rng.gen_bool(0.5) {
        e
    } else {
        e.reversed()
    }
}

fn pairs_where(g: &Graph, mut keep: impl FnMut(Vertex, Vertex, Distance) -> Result<bool>) -> Result<Vec<VertexPair>> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if keep(a, b, g.distance(a, b)?)? {
                out.push(VertexPair { a, b });
            }
        }
    }
    Ok(out)
}

fn describe(g: &Graph, pair: VertexPair) -> String {
    format!("{} pair {pair}", to_graph6(&g.compacted()))
}

fn check_thm33(trial: usize, field: Field, rng: &mut impl Rng) -> Result<Option<String>> {
    // alternate between the two hypotheses
    let second_case = trial % 2 == 1;
    let (g1, g2, e1, e2) = draw("Hajos instance", || {
        let mut g1 = non_bipartite(3, 7, rng)?;
        if second_case && rng.gen_bool(0.5) {
            let m = rng.gen_range(1..=3);
            attach_tree(&mut g1, m, rng);
        }
        let g2 = if second_case { at_least_four_chromatic(rng)? } else { non_bipartite(3, 7, rng)? };
        let c1 = edges_where(&g1, if second_case { None } else { Some(false) })?;
        let c2 = edges_where(&g2, Some(false))?;
        if c1.is_empty() || c2.is_empty() {
            return Ok(None);
        }
        let e1 = oriented(*c1.choose(rng).unwrap(), rng);
        let e2 = oriented(*c2.choose(rng).unwrap(), rng);
        Ok(Some((g1, g2, e1, e2)))
    })?;
    let orientation = if rng.gen_bool(0.5) { Orientation::IdentifyFirst } else { Orientation::IdentifySecond };
    let merged = hajos_merge(&g1, &g2, &MergeSpec { edge1: e1, edge2: e2, orientation })?;
    let b1 = betti(&merged, 1, field)?.get(1);
    Ok((b1 == 0).then(|| {
        format!("merge of {} along {e1} and {} along {e2} has b1 = 0", to_graph6(&g1), to_graph6(&g2))
    }))
}

fn check_thm37(field: Field, rng: &mut impl Rng) -> Result<Option<String>> {
    let (g, pair) = draw("pair at distance >= 5", || {
        let mut g = non_bipartite(3, 7, rng)?;
        for _ in 0..rng.gen_range(1..=2) {
            let m = rng.gen_range(3..=7);
            attach_tree(&mut g, m, rng);
        }
        // a few chords keep the tails from being trees
        for _ in 0..rng.gen_range(0..=3) {
            let vs: Vec<Vertex> = g.vertices().collect();
            let (a, b) = (*vs.choose(rng).unwrap(), *vs.choose(rng).unwrap());
            if a != b {
                g.insert_edge(a, b);
            }
        }
        let pairs = pairs_where(&g, |_, _, d| Ok(d.at_least(5)))?;
        Ok(pairs.choose(rng).map(|&p| (g.clone(), p)))
    })?;
    let before = betti(&g, 2, field)?;
    let after = betti(&vertex_identify(&g, &[pair])?, 2, field)?;
    let ok = after.get(1) == before.get(1) + 2 && after.get(2) == before.get(2);
    Ok((!ok).then(|| format!("{}: Betti {:?} -> {:?}", describe(&g, pair), before.betti, after.betti)))
}

fn b1_does_not_rise(g: &Graph, pair: VertexPair, field: Field) -> Result<Option<String>> {
    let before = betti(g, 1, field)?.get(1);
    let after = betti(&vertex_identify(g, &[pair])?, 1, field)?.get(1);
    Ok((after > before).then(|| format!("{}: b1 {before} -> {after}", describe(g, pair))))
}

fn check_thm42(field: Field, rng: &mut impl Rng) -> Result<Option<String>> {
    let (g, pair) = draw("pair with d >= 3 and a path of length 4", || {
        let n = rng.gen_range(5..=10);
        let g = random_connected(n, rng.gen_range(0.1..0.5), rng);
        let pairs = pairs_where(&g, |a, b, d| Ok(d.at_least(3) && g.has_path_of_length(a, b, 4)?))?;
        Ok(pairs.choose(rng).map(|&p| (g.clone(), p)))
    })?;
    b1_does_not_rise(&g, pair, field)
}

/// Condition (3): the neighbourhoods of the private neighbours of `v` and of
/// `w` are disjoint.
pub fn private_neighbourhoods_disjoint(g: &Graph, v: Vertex, w: Vertex) -> Result<bool> {
    let nv = g.neighbors(v)?;
    let nw = g.neighbors(w)?;
    let reach = |own: &BTreeSet<Vertex>, other: &BTreeSet<Vertex>| -> BTreeSet<Vertex> {
        own.difference(other).flat_map(|a| g.neighbors(*a).expect("neighbour is a vertex").iter().copied()).collect()
    };
    Ok(reach(nv, nw).is_disjoint(&reach(nw, nv)))
}

fn check_thm43(field: Field, rng: &mut impl Rng) -> Result<Option<String>> {
    let (g, pair) = draw("pair meeting the distance-2 conditions", || {
        let n = rng.gen_range(5..=10);
        let g = random_connected(n, rng.gen_range(0.1..0.4), rng);
        let pairs = pairs_where(&g, |a, b, d| {
            Ok(d == Distance::Finite(2) && !g.has_path_of_length(a, b, 3)? && private_neighbourhoods_disjoint(&g, a, b)?)
        })?;
        Ok(pairs.choose(rng).map(|&p| (g.clone(), p)))
    })?;
    b1_does_not_rise(&g, pair, field)
}

fn check_thm53(trial: usize, field: Field, rng: &mut impl Rng) -> Result<Option<String>> {
    let second_case = trial % 2 == 1;
    let (g1, x1, side, g2, e2) = draw("DHGO instance", || {
        let g1 = non_bipartite(3, 7, rng)?;
        let g2 = if second_case { at_least_four_chromatic(rng)? } else { non_bipartite(3, 7, rng)? };
        let splittable: Vec<Vertex> = g1.vertices().filter(|&v| g1.degree(v).unwrap_or(0) >= 2).collect();
        let c2 = edges_where(&g2, Some(false))?;
        let (Some(&x1), Some(&e2)) = (splittable.choose(rng), c2.choose(rng)) else {
            return Ok(None);
        };
        let nbrs: Vec<Vertex> = g1.neighbors(x1)?.iter().copied().collect();
        let size = rng.gen_range(1..nbrs.len());
        let side: BTreeSet<Vertex> = nbrs.choose_multiple(rng, size).copied().collect();
        Ok(Some((g1, x1, side, g2, oriented(e2, rng))))
    })?;
    let d = dhgo_compose(&g1, x1, &side, &g2, e2)?;
    let b1 = betti(&d, 1, field)?.get(1);
    Ok((b1 == 0).then(|| {
        format!("D({}, {}) with x1 = {x1}, side {side:?}, edge {e2} has b1 = 0", to_graph6(&g1), to_graph6(&g2))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        let gs = connected_graphs_up_to(6).unwrap();
        let mut by_order = [0usize; 7];
        for g in &gs {
            by_order[g.order()] += 1;
        }
        assert_eq!(&by_order[2..], &[1, 2, 6, 21, 112]);
    }

    #[test]
    fn ids_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.id().parse::<Suite>().unwrap(), s);
        }
        assert!("thm9.9".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs() {
        let c = VerifyConfig { trials: 12, seed: 3, max_order: 5, ns: vec![5], ..VerifyConfig::default() };
        for s in Suite::ALL {
            let r = run_suite(s, &c).unwrap();
            assert!(r.ok(), "{r} {:?}", r.failures);
        }
    }

    #[test]
    fn condition_three() {
        // path a - v - u - w - b: private neighbours a and b have
        // neighbourhoods {v} and {w}
        let g = Graph::path(5);
        assert!(private_neighbourhoods_disjoint(&g, Vertex(1), Vertex(3)).unwrap());
        let c = Graph::cycle(6);
        assert!(!private_neighbourhoods_disjoint(&c, Vertex(0), Vertex(2)).unwrap());
    }
}
