//! Hajós-type graph operations.
//!
//! Every operation takes its inputs by reference and returns a new graph.
//! When two graphs are combined, the first keeps its vertex identifiers and
//! the second is shifted past them, so the inputs never need to be disjoint
//! beforehand. Identified vertices receive fresh identifiers; their origins
//! are recorded on the output graph (see [`Graph::origin`]).

mod families;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::coloring::has_clique;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexPair};

pub use families::{build_fig4_graph, build_gn, build_gn_prime, gn_label};

/// Which endpoint of each merge edge is identified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Identify `edge1.a` with `edge2.a` and join `edge1.b` to `edge2.b`.
    #[default]
    IdentifyFirst,
    /// Identify `edge1.b` with `edge2.b` and join `edge1.a` to `edge2.a`.
    IdentifySecond,
}

/// The two edges of a Hajós merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MergeSpec {
    pub edge1: VertexPair,
    pub edge2: VertexPair,
    #[serde(default)]
    pub orientation: Orientation,
}

impl MergeSpec {
    pub fn new(edge1: VertexPair, edge2: VertexPair) -> Self {
        MergeSpec { edge1, edge2, orientation: Orientation::IdentifyFirst }
    }

    /// `((x1, y1), (x2, y2))`: the `x`s are identified, the `y`s joined.
    pub fn roles(&self) -> ((Vertex, Vertex), (Vertex, Vertex)) {
        match self.orientation {
            Orientation::IdentifyFirst => ((self.edge1.a, self.edge1.b), (self.edge2.a, self.edge2.b)),
            Orientation::IdentifySecond => ((self.edge1.b, self.edge1.a), (self.edge2.b, self.edge2.a)),
        }
    }
}

/// A Hajós merge followed by identifications along a partial injection `mu`
/// from the first graph's vertices to the second's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OreSpec {
    pub merge: MergeSpec,
    #[serde(default)]
    pub mu: Vec<(Vertex, Vertex)>,
}

impl OreSpec {
    pub fn hajos(merge: MergeSpec) -> Self {
        OreSpec { merge, mu: Vec::new() }
    }
}

/// Replace `vertex` by two nonadjacent copies; the first copy keeps
/// `side`, the second keeps the remaining neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub vertex: Vertex,
    pub side: BTreeSet<Vertex>,
}

/// Output of a two-graph operation together with where every input vertex
/// ended up.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub graph: Graph,
    pub left: BTreeMap<Vertex, Vertex>,
    pub right: BTreeMap<Vertex, Vertex>,
}

fn disjoint_union(g1: &Graph, g2: &Graph) -> (Graph, u32) {
    let offset = g1.next_id().0;
    let mut u = g1.clone();
    let shifted = g2.shifted(offset);
    for v in shifted.vertices() {
        u.add_vertex(v);
        if let Some(name) = shifted.name(v) {
            u.set_name(v, name);
        }
    }
    for e in shifted.edges() {
        u.insert_edge(e.a, e.b);
    }
    (u, offset)
}

/// Hajós merge `G1 Δ G2`: delete one edge from each graph, identify one
/// endpoint of each, join the other two endpoints.
pub fn hajos_merge(g1: &Graph, g2: &Graph, spec: &MergeSpec) -> Result<Graph> {
    hajos_merge_tracked(g1, g2, spec).map(|t| t.graph)
}

pub fn hajos_merge_tracked(g1: &Graph, g2: &Graph, spec: &MergeSpec) -> Result<Tracked> {
    g1.check_edge(spec.edge1)?;
    g2.check_edge(spec.edge2)?;
    let ((x1, y1), (x2, y2)) = spec.roles();
    let (mut u, offset) = disjoint_union(g1, g2);
    let s = |v: Vertex| Vertex(v.0 + offset);
    u.delete_edge(VertexPair { a: x1, b: y1 })?;
    u.delete_edge(VertexPair { a: s(x2), b: s(y2) })?;
    u.insert_edge(y1, s(y2));
    let merged = u.merge_vertices(x1, s(x2));
    let left = g1.vertices().map(|v| (v, if v == x1 { merged } else { v })).collect();
    let right = g2.vertices().map(|v| (v, if v == x2 { merged } else { s(v) })).collect();
    Ok(Tracked { graph: u, left, right })
}

/// Identifies each pair in order. Returns the graph and, for every original
/// vertex, the vertex it became.
pub fn vertex_identify_tracked(g: &Graph, pairs: &[VertexPair]) -> Result<(Graph, BTreeMap<Vertex, Vertex>)> {
    let mut out = g.clone();
    let mut current: BTreeMap<Vertex, Vertex> = g.vertices().map(|v| (v, v)).collect();
    let mut merged_away: BTreeSet<Vertex> = BTreeSet::new();
    for &pair in pairs {
        for v in [pair.a, pair.b] {
            if merged_away.contains(&v) {
                return Err(Error::StaleVertex { pair, vertex: v });
            }
            out.check_vertex(v)?;
        }
        if out.has_edge(pair.a, pair.b) {
            return Err(Error::AdjacentPair(pair));
        }
        let m = out.merge_vertices(pair.a, pair.b);
        merged_away.insert(pair.a);
        merged_away.insert(pair.b);
        for target in current.values_mut() {
            if *target == pair.a || *target == pair.b {
                *target = m;
            }
        }
        current.insert(m, m);
    }
    current.retain(|v, _| g.has_vertex(*v));
    Ok((out, current))
}

/// `vid(G, L)`: identify each listed pair of nonadjacent vertices in order.
pub fn vertex_identify(g: &Graph, pairs: &[VertexPair]) -> Result<Graph> {
    vertex_identify_tracked(g, pairs).map(|(g, _)| g)
}

fn check_ore_spec(g1: &Graph, g2: &Graph, spec: &OreSpec) -> Result<()> {
    let ((x1, y1), (x2, y2)) = spec.merge.roles();
    let mut range = BTreeSet::new();
    let mut domain = BTreeSet::new();
    for &(a, b) in &spec.mu {
        g1.check_vertex(a)?;
        g2.check_vertex(b)?;
        if !domain.insert(a) {
            return Err(Error::spec(format!("mu maps {a} twice")));
        }
        if !range.insert(b) {
            return Err(Error::spec(format!("mu is not injective: {b} is hit twice")));
        }
        if a == x1 {
            return Err(Error::spec(format!("mu pair ({a}->{b}): the identified endpoint x1 = {x1} cannot be in the domain")));
        }
        if b == x2 {
            return Err(Error::spec(format!("mu pair ({a}->{b}): the identified endpoint x2 = {x2} cannot be in the range")));
        }
        if a == y1 && b == y2 {
            return Err(Error::spec(format!("mu pair ({a}->{b}): mu(y1) must differ from y2")));
        }
    }
    Ok(())
}

/// Ore merge: [`hajos_merge`] followed by identifying every `(x, mu(x))`,
/// in increasing order of `x`.
pub fn ore_merge(g1: &Graph, g2: &Graph, spec: &OreSpec) -> Result<Graph> {
    ore_merge_tracked(g1, g2, spec).map(|t| t.graph)
}

pub fn ore_merge_tracked(g1: &Graph, g2: &Graph, spec: &OreSpec) -> Result<Tracked> {
    check_ore_spec(g1, g2, spec)?;
    let merged = hajos_merge_tracked(g1, g2, &spec.merge)?;
    let mut mu = spec.mu.clone();
    mu.sort();
    let mut graph = merged.graph;
    let mut left = merged.left;
    let mut right = merged.right;
    for (a, b) in mu {
        let pair = VertexPair { a: left[&a], b: right[&b] };
        let (next, moved) =
            vertex_identify_tracked(&graph, &[pair]).map_err(|e| Error::spec(format!("mu pair ({a}->{b}): {e}")))?;
        graph = next;
        for v in left.values_mut().chain(right.values_mut()) {
            *v = moved[v];
        }
    }
    Ok(Tracked { graph, left, right })
}

/// One Ore merge inside an Urquhart composition: the graphs at positions
/// `first` and `second` of the working list are removed and their merge is
/// appended.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UrquhartStep {
    pub first: usize,
    pub second: usize,
    pub spec: OreSpec,
}

impl UrquhartStep {
    /// Steps that fold the list from the left: `Ore(Ore(G1, G2), G3), ...`.
    pub fn left_fold(specs: Vec<OreSpec>) -> Vec<UrquhartStep> {
        let total = specs.len() + 1;
        specs
            .into_iter()
            .enumerate()
            .map(|(i, spec)| {
                if i == 0 {
                    UrquhartStep { first: 0, second: 1, spec }
                } else {
                    // the running result sits at the end of the list
                    UrquhartStep { first: total - 1 - i, second: 0, spec }
                }
            })
            .collect()
    }
}

/// `Urq(G1, ..., Gl)`: Ore merges over a working list until one graph is
/// left. With `k` set, every input must be connected and contain `K_k`.
pub fn urquhart_compose(graphs: Vec<Graph>, steps: &[UrquhartStep], k: Option<usize>) -> Result<Graph> {
    if graphs.is_empty() {
        return Err(Error::spec("Urquhart composition needs at least one graph"));
    }
    for (i, g) in graphs.iter().enumerate() {
        if !g.is_connected() {
            return Err(Error::spec(format!("input graph {i} is not connected")));
        }
        if let Some(k) = k {
            if !has_clique(g, k)? {
                return Err(Error::spec(format!("input graph {i} does not contain K_{k}")));
            }
        }
    }
    let mut list = graphs;
    for (s, step) in steps.iter().enumerate() {
        let len = list.len();
        if step.first == step.second || step.first >= len || step.second >= len {
            return Err(Error::spec(format!(
                "step {s}: positions ({}, {}) invalid for a list of {len} graphs",
                step.first, step.second
            )));
        }
        let merged = ore_merge(&list[step.first], &list[step.second], &step.spec)
            .map_err(|e| Error::spec(format!("step {s}: {e}")))?;
        let (hi, lo) = (step.first.max(step.second), step.first.min(step.second));
        list.remove(hi);
        list.remove(lo);
        list.push(merged);
    }
    if list.len() != 1 {
        return Err(Error::spec(format!("{} graphs remain after all steps", list.len())));
    }
    Ok(list.pop().unwrap())
}

/// Result of a vertex split: the graph plus the two new vertices.
#[derive(Clone, Debug)]
pub struct Split {
    pub graph: Graph,
    pub first: Vertex,
    pub second: Vertex,
}

pub fn vertex_split(g: &Graph, spec: &SplitSpec) -> Result<Split> {
    let nbrs = g.neighbors(spec.vertex)?.clone();
    if spec.side.is_empty() {
        return Err(Error::spec(format!("split of {}: the first side is empty", spec.vertex)));
    }
    if let Some(v) = spec.side.iter().find(|v| !nbrs.contains(v)) {
        return Err(Error::spec(format!("split of {}: {v} is not a neighbour", spec.vertex)));
    }
    if spec.side.len() == nbrs.len() {
        return Err(Error::spec(format!("split of {}: the second side is empty", spec.vertex)));
    }
    let mut out = g.clone();
    let name = g.name(spec.vertex).map(str::to_owned);
    out.remove_vertex(spec.vertex);
    let first = out.next_id().max(Vertex(spec.vertex.0 + 1));
    let second = Vertex(first.0 + 1);
    out.add_vertex(first);
    out.add_vertex(second);
    for &u in &nbrs {
        out.insert_edge(if spec.side.contains(&u) { first } else { second }, u);
    }
    if let Some(name) = name {
        out.set_name(first, format!("{name}'"));
        out.set_name(second, format!("{name}''"));
    }
    Ok(Split { graph: out, first, second })
}

/// DHGO composition `D(G1, G2)`: delete `edge2 = (x2, y2)` from `G2`, split
/// `x1` into `x1'` (neighbours `side`) and `x1''` (the rest), then identify
/// `x1'` with `x2` and `x1''` with `y2`.
pub fn dhgo_compose(g1: &Graph, x1: Vertex, side: &BTreeSet<Vertex>, g2: &Graph, edge2: VertexPair) -> Result<Graph> {
    g1.check_vertex(x1)?;
    g2.check_edge(edge2)?;
    let (u, offset) = disjoint_union(g1, g2);
    let x2 = Vertex(edge2.a.0 + offset);
    let y2 = Vertex(edge2.b.0 + offset);
    let u = u.without_edge(VertexPair { a: x2, b: y2 })?;
    let split = vertex_split(&u, &SplitSpec { vertex: x1, side: side.clone() })?;
    vertex_identify(
        &split.graph,
        &[VertexPair { a: split.first, b: x2 }, VertexPair { a: split.second, b: y2 }],
    )
}
