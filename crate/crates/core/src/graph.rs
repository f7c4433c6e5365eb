//! Simple undirected graphs with opaque vertex identifiers.
//!
//! A [`Graph`] is built once and then treated as an immutable value: every
//! construction in [`crate::constructions`] returns a new graph. Vertices that
//! come out of an identification get a fresh identifier, and the graph keeps a
//! small provenance record (the two vertices that were merged, plus an
//! optional human-readable name such as `"XZ"`).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque vertex identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vertex(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Vertex {
    fn from(v: u32) -> Self {
        Vertex(v)
    }
}

/// An unordered-in-meaning but ordered-in-storage pair of distinct vertices.
///
/// The order matters for operations that give the two endpoints different
/// roles (which endpoint of a merge edge is identified, for instance).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[u32; 2]", into = "[u32; 2]")]
pub struct VertexPair {
    pub a: Vertex,
    pub b: Vertex,
}

impl VertexPair {
    pub fn new(a: impl Into<Vertex>, b: impl Into<Vertex>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::DegeneratePair(a));
        }
        Ok(VertexPair { a, b })
    }

    pub fn reversed(self) -> Self {
        VertexPair { a: self.b, b: self.a }
    }

    /// The same pair with the smaller identifier first.
    pub fn normalized(self) -> Self {
        if self.a <= self.b {
            self
        } else {
            self.reversed()
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.a == v || self.b == v
    }
}

impl TryFrom<[u32; 2]> for VertexPair {
    type Error = Error;

    fn try_from(value: [u32; 2]) -> Result<Self> {
        VertexPair::new(value[0], value[1])
    }
}

impl From<VertexPair> for [u32; 2] {
    fn from(p: VertexPair) -> Self {
        [p.a.0, p.b.0]
    }
}

impl fmt::Display for VertexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Shortest-path length, with a dedicated value for "different components".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// True when the distance is at least `k` (an infinite distance always is).
    pub fn at_least(self, k: usize) -> bool {
        self >= Distance::Finite(k)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Result of a bipartiteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartiteness {
    /// A proper 2-colouring: every edge joins `left` to `right`.
    Bipartite {
        left: Vec<Vertex>,
        right: Vec<Vertex>,
    },
    /// A closed walk of odd length, listed without repeating the start vertex.
    OddClosedWalk(Vec<Vertex>),
}

/// Simple undirected graph. No loops, no parallel edges.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
    names: BTreeMap<Vertex, String>,
    origins: BTreeMap<Vertex, [Vertex; 2]>,
}

/// Structural equality: same vertex identifiers and same edges. Names and
/// provenance are ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

/// Dense, index-based view of a graph used by the hot loops (colouring,
/// canonical labelling, complexes). `vertices[i]` is the vertex at index `i`;
/// adjacency lists are sorted.
#[derive(Clone, Debug)]
pub struct DenseGraph {
    pub vertices: Vec<Vertex>,
    pub adj: Vec<Vec<u32>>,
}

impl DenseGraph {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` isolated vertices `0..n`.
    pub fn empty(n: usize) -> Self {
        let mut g = Graph::new();
        for i in 0..n as u32 {
            g.add_vertex(Vertex(i));
        }
        g
    }

    /// Builds a graph on vertices `0..n` from an edge list.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(a, b) in edges {
            for v in [a, b] {
                if v as usize >= n {
                    return Err(Error::UnknownVertex(Vertex(v)));
                }
            }
            g.add_edge(Vertex(a), Vertex(b))?;
        }
        Ok(g)
    }

    pub fn complete(k: usize) -> Self {
        let mut g = Graph::empty(k);
        for a in 0..k as u32 {
            for b in a + 1..k as u32 {
                g.insert_edge(Vertex(a), Vertex(b));
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::empty(n);
        for i in 0..n as u32 {
            g.insert_edge(Vertex(i), Vertex((i + 1) % n as u32));
        }
        g
    }

    /// Path on `n` vertices (so `n - 1` edges).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for i in 1..n as u32 {
            g.insert_edge(Vertex(i - 1), Vertex(i));
        }
        g
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    /// Adds an edge, creating missing endpoints. Loops are rejected; an
    /// existing edge is left alone.
    pub fn add_edge(&mut self, a: Vertex, b: Vertex) -> Result<()> {
        if a == b {
            return Err(Error::DegeneratePair(a));
        }
        self.insert_edge(a, b);
        Ok(())
    }

    pub(crate) fn insert_edge(&mut self, a: Vertex, b: Vertex) {
        debug_assert_ne!(a, b);
        self.adj.entry(a).or_default().insert(b);
        self.adj.entry(b).or_default().insert(a);
    }

    pub(crate) fn delete_edge(&mut self, e: VertexPair) -> Result<()> {
        if !self.has_edge(e.a, e.b) {
            return Err(Error::NotAnEdge(e));
        }
        self.adj.get_mut(&e.a).unwrap().remove(&e.b);
        self.adj.get_mut(&e.b).unwrap().remove(&e.a);
        Ok(())
    }

    pub(crate) fn remove_vertex(&mut self, v: Vertex) -> BTreeSet<Vertex> {
        let nbrs = self.adj.remove(&v).unwrap_or_default();
        for u in &nbrs {
            if let Some(s) = self.adj.get_mut(u) {
                s.remove(&v);
            }
        }
        self.names.remove(&v);
        self.origins.remove(&v);
        nbrs
    }

    /// Identifies two vertices into a fresh vertex and returns it. Parallel
    /// edges collapse; the caller is responsible for nonadjacency.
    pub(crate) fn merge_vertices(&mut self, a: Vertex, b: Vertex) -> Vertex {
        let fresh = self.next_id();
        let name = match (self.names.get(&a), self.names.get(&b)) {
            (None, None) => None,
            (na, nb) => Some(format!(
                "{}{}",
                na.cloned().unwrap_or_else(|| a.to_string()),
                nb.cloned().unwrap_or_else(|| b.to_string())
            )),
        };
        let na = self.remove_vertex(a);
        let nb = self.remove_vertex(b);
        self.add_vertex(fresh);
        for u in na.into_iter().chain(nb) {
            self.insert_edge(fresh, u);
        }
        if let Some(name) = name {
            self.names.insert(fresh, name);
        }
        self.origins.insert(fresh, [a, b]);
        fresh
    }

    pub fn set_name(&mut self, v: Vertex, name: impl Into<String>) {
        self.names.insert(v, name.into());
    }

    pub fn name(&self, v: Vertex) -> Option<&str> {
        self.names.get(&v).map(String::as_str)
    }

    /// Looks a vertex up by its name.
    pub fn vertex_named(&self, name: &str) -> Option<Vertex> {
        self.names.iter().find(|(_, n)| n.as_str() == name).map(|(v, _)| *v)
    }

    /// Name if one was assigned, else the numeric identifier.
    pub fn display_name(&self, v: Vertex) -> String {
        self.name(v).map(str::to_owned).unwrap_or_else(|| v.to_string())
    }

    /// The two vertices that were identified to create `v`, if any.
    pub fn origin(&self, v: Vertex) -> Option<[Vertex; 2]> {
        self.origins.get(&v).copied()
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    /// Edges with the smaller endpoint first, in lexicographic order.
    pub fn edges(&self) -> Vec<VertexPair> {
        let mut out = Vec::with_capacity(self.size());
        for (&a, nbrs) in &self.adj {
            for &b in nbrs.range(a..) {
                if a != b {
                    out.push(VertexPair { a, b });
                }
            }
        }
        out
    }

    /// Unordered nonadjacent pairs of distinct vertices.
    pub fn non_edges(&self) -> Vec<VertexPair> {
        let vs: Vec<Vertex> = self.vertices().collect();
        let mut out = Vec::new();
        for (i, &a) in vs.iter().enumerate() {
            let nbrs = &self.adj[&a];
            for &b in &vs[i + 1..] {
                if !nbrs.contains(&b) {
                    out.push(VertexPair { a, b });
                }
            }
        }
        out
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|s| s.contains(&b))
    }

    pub fn neighbors(&self, v: Vertex) -> Result<&BTreeSet<Vertex>> {
        self.adj.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.neighbors(v).map(BTreeSet::len)
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub(crate) fn check_edge(&self, e: VertexPair) -> Result<()> {
        self.check_vertex(e.a)?;
        self.check_vertex(e.b)?;
        if self.has_edge(e.a, e.b) {
            Ok(())
        } else {
            Err(Error::NotAnEdge(e))
        }
    }

    /// Smallest identifier not in use (one past the maximum).
    pub fn next_id(&self) -> Vertex {
        self.adj
            .keys()
            .next_back()
            .map_or(Vertex(0), |v| Vertex(v.0 + 1))
    }

    /// Copy with every identifier increased by `offset`.
    pub fn shifted(&self, offset: u32) -> Graph {
        let s = |v: &Vertex| Vertex(v.0 + offset);
        Graph {
            adj: self
                .adj
                .iter()
                .map(|(v, n)| (s(v), n.iter().map(s).collect()))
                .collect(),
            names: self.names.iter().map(|(v, n)| (s(v), n.clone())).collect(),
            origins: self
                .origins
                .iter()
                .map(|(v, o)| (s(v), [s(&o[0]), s(&o[1])]))
                .collect(),
        }
    }

    /// Copy with vertices renamed `0..n` in identifier order. Names are kept.
    pub fn compacted(&self) -> Graph {
        let index: BTreeMap<Vertex, Vertex> = self
            .vertices()
            .enumerate()
            .map(|(i, v)| (v, Vertex(i as u32)))
            .collect();
        let mut g = Graph::empty(self.order());
        for e in self.edges() {
            g.insert_edge(index[&e.a], index[&e.b]);
        }
        for (v, n) in &self.names {
            g.names.insert(index[v], n.clone());
        }
        g
    }

    /// Copy with one edge removed.
    pub fn without_edge(&self, e: VertexPair) -> Result<Graph> {
        self.check_edge(e)?;
        let mut g = self.clone();
        g.delete_edge(e)?;
        Ok(g)
    }

    pub fn dense(&self) -> DenseGraph {
        let vertices: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u32))
            .collect();
        let adj = self
            .adj
            .values()
            .map(|n| n.iter().map(|u| index[u]).collect())
            .collect();
        DenseGraph { vertices, adj }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        self.adj.values().all(|s| s.len() + 1 == n)
    }

    /// Breadth-first distances from `source` to every reachable vertex.
    fn bfs(&self, source: Vertex) -> BTreeMap<Vertex, (usize, Option<Vertex>)> {
        let mut seen = BTreeMap::new();
        seen.insert(source, (0, None));
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = seen[&u].0;
            for &w in &self.adj[&u] {
                if !seen.contains_key(&w) {
                    seen.insert(w, (d + 1, Some(u)));
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn distance(&self, v: Vertex, w: Vertex) -> Result<Distance> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        Ok(self
            .bfs(v)
            .get(&w)
            .map_or(Distance::Infinite, |(d, _)| Distance::Finite(*d)))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp: Vec<Vertex> = self.bfs(v).into_keys().collect();
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// True iff deleting `e` increases the number of components.
    pub fn is_bridge(&self, e: VertexPair) -> Result<bool> {
        let without = self.without_edge(e)?;
        Ok(!without.bfs(e.a).contains_key(&e.b))
    }

    pub fn bipartition(&self) -> Bipartiteness {
        let mut colour: BTreeMap<Vertex, (bool, Option<Vertex>)> = BTreeMap::new();
        for root in self.vertices() {
            if colour.contains_key(&root) {
                continue;
            }
            colour.insert(root, (false, None));
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[&u].0;
                for &w in &self.adj[&u] {
                    match colour.get(&w) {
                        None => {
                            colour.insert(w, (!cu, Some(u)));
                            queue.push_back(w);
                        }
                        Some(&(cw, _)) if cw == cu => {
                            return Bipartiteness::OddClosedWalk(odd_walk(&colour, u, w));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (left, right): (Vec<_>, Vec<_>) = colour.iter().partition(|(_, (c, _))| !*c);
        Bipartiteness::Bipartite {
            left: left.into_iter().map(|(v, _)| *v).collect(),
            right: right.into_iter().map(|(v, _)| *v).collect(),
        }
    }

    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition(), Bipartiteness::Bipartite { .. })
    }

    /// Whether some simple path with exactly `len` edges joins `v` and `w`.
    pub fn has_path_of_length(&self, v: Vertex, w: Vertex, len: usize) -> Result<bool> {
        self.check_vertex(v)?;
        self.check_vertex(w)?;
        let mut on_path = BTreeSet::from([v]);
        Ok(self.path_search(v, w, len, &mut on_path))
    }

    fn path_search(&self, at: Vertex, target: Vertex, left: usize, on_path: &mut BTreeSet<Vertex>) -> bool {
        if left == 0 {
            return at == target;
        }
        if at == target {
            return false;
        }
        for &u in &self.adj[&at] {
            if on_path.contains(&u) {
                continue;
            }
            on_path.insert(u);
            let found = self.path_search(u, target, left - 1, on_path);
            on_path.remove(&u);
            if found {
                return true;
            }
        }
        false
    }
}

/// Closed odd walk through the conflicting edge `u`-`w` and the BFS tree.
fn odd_walk(colour: &BTreeMap<Vertex, (bool, Option<Vertex>)>, u: Vertex, w: Vertex) -> Vec<Vertex> {
    let up = |mut x: Vertex| {
        let mut p = vec![x];
        while let Some(parent) = colour[&x].1 {
            p.push(parent);
            x = parent;
        }
        p
    };
    let pu = up(u);
    let pw = up(w);
    // root..=u, then w..root (exclusive of the root, which closes the walk)
    let mut walk: Vec<Vertex> = pu.into_iter().rev().collect();
    walk.extend(pw.into_iter().take_while(|x| colour[x].1.is_some()));
    walk
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(a: u32, b: u32) -> VertexPair {
        VertexPair::new(a, b).unwrap()
    }

    fn two_triangles_bridged() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn path_endpoints_distance() {
        let p5 = Graph::path(5);
        assert_eq!(p5.distance(Vertex(0), Vertex(4)).unwrap(), Distance::Finite(4));
        assert_eq!(p5.distance(Vertex(2), Vertex(2)).unwrap(), Distance::Finite(0));
    }

    #[test]
    fn distance_across_components_is_infinite() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let d = g.distance(Vertex(0), Vertex(3)).unwrap();
        assert_eq!(d, Distance::Infinite);
        assert!(d.at_least(5));
        assert!(d > Distance::Finite(usize::MAX));
    }

    #[test]
    fn distance_unknown_vertex() {
        let g = Graph::path(3);
        assert_eq!(g.distance(Vertex(0), Vertex(9)), Err(Error::UnknownVertex(Vertex(9))));
    }

    #[test]
    fn bridges() {
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        for e in tree.edges() {
            assert!(tree.is_bridge(e).unwrap());
        }
        let c5 = Graph::cycle(5);
        for e in c5.edges() {
            assert!(!c5.is_bridge(e).unwrap());
        }
        let g = two_triangles_bridged();
        assert!(g.is_bridge(pair(2, 3)).unwrap());
        assert!(!g.is_bridge(pair(0, 1)).unwrap());
        assert_eq!(g.is_bridge(pair(0, 4)), Err(Error::NotAnEdge(pair(0, 4))));
    }

    #[test]
    fn bipartite_cases() {
        assert!(Graph::cycle(6).is_bipartite());
        match Graph::cycle(5).bipartition() {
            Bipartiteness::OddClosedWalk(w) => {
                assert_eq!(w.len() % 2, 1);
                let c5 = Graph::cycle(5);
                for i in 0..w.len() {
                    assert!(c5.has_edge(w[i], w[(i + 1) % w.len()]));
                }
            }
            other => panic!("expected odd walk, got {other:?}"),
        }
        // K4 minus a perfect matching is C4
        let mut k4 = Graph::complete(4);
        k4.delete_edge(pair(0, 1)).unwrap();
        k4.delete_edge(pair(2, 3)).unwrap();
        match k4.bipartition() {
            Bipartiteness::Bipartite { left, right } => {
                for e in k4.edges() {
                    assert_ne!(left.contains(&e.a), left.contains(&e.b));
                }
                assert_eq!(left.len() + right.len(), 4);
            }
            other => panic!("C4 is bipartite, got {other:?}"),
        }
    }

    #[test]
    fn components() {
        let two = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(two.component_count(), 2);
        assert_eq!(Graph::complete(4).component_count(), 1);
        assert_eq!(Graph::empty(5).component_count(), 5);
    }

    #[test]
    fn merge_vertices_collapses_parallel_edges() {
        let mut p3 = Graph::path(3);
        let m = p3.merge_vertices(Vertex(0), Vertex(2));
        assert_eq!(p3.order(), 2);
        assert_eq!(p3.size(), 1);
        assert_eq!(p3.origin(m), Some([Vertex(0), Vertex(2)]));
        assert_eq!(m, Vertex(3));
    }

    #[test]
    fn paths_of_given_length() {
        let c6 = Graph::cycle(6);
        assert!(c6.has_path_of_length(Vertex(0), Vertex(2), 4).unwrap());
        assert!(c6.has_path_of_length(Vertex(0), Vertex(2), 2).unwrap());
        assert!(!c6.has_path_of_length(Vertex(0), Vertex(2), 3).unwrap());
    }

    #[test]
    fn pair_serde_rejects_loops() {
        assert!(serde_json::from_str::<VertexPair>("[1,1]").is_err());
        assert_eq!(serde_json::from_str::<VertexPair>("[1,2]").unwrap(), pair(1, 2));
    }
}
