//! Canonical labelling by colour refinement and individualisation.
//!
//! The search tree is the usual one: refine to an equitable ordered
//! partition, individualise each vertex of the first non-singleton cell, and
//! recurse. Every leaf is a labelling; the canonical labelling is the one
//! whose relabelled edge list is lexicographically smallest. Two pruning rules
//! keep symmetric graphs tractable:
//!
//! * when a leaf reproduces the certificate of the first or best leaf, the
//!   discovered automorphism maps an explored subtree onto the current one,
//!   so the search backs up to their common ancestor;
//! * at each node, children that lie in one orbit of the automorphisms found
//!   so far that fix the current prefix are explored once.
//!
//! Refinement only ever looks at cell indices and neighbour counts, so the set
//! of leaf certificates does not depend on the input labelling.

use crate::graph::{DenseGraph, Graph};

/// Ordered partition of `0..n` stored as a permutation plus cell bounds.
#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    /// cell_start[i] = start index of the cell containing position i
    cell_start: Vec<u32>,
    /// cell_len[s] = length of the cell starting at s (valid at starts only)
    cell_len: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_len = vec![0; n];
        if n > 0 {
            cell_len[0] = n as u32;
        }
        Partition {
            lab: (0..n as u32).collect(),
            pos: (0..n as u32).collect(),
            cell_start: vec![0; n],
            cell_len,
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn first_nonsingleton(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.lab.len() {
            let len = self.cell_len[s] as usize;
            if len > 1 {
                return Some(s);
            }
            s += len;
        }
        None
    }

    fn cell(&self, start: usize) -> &[u32] {
        &self.lab[start..start + self.cell_len[start] as usize]
    }

    /// Splits off `v` as a singleton at the front of its cell.
    fn individualize(&mut self, v: u32) -> usize {
        let start = self.cell_start[self.pos[v as usize] as usize] as usize;
        let len = self.cell_len[start] as usize;
        let p = self.pos[v as usize] as usize;
        let other = self.lab[start];
        self.lab.swap(start, p);
        self.pos[other as usize] = p as u32;
        self.pos[v as usize] = start as u32;
        self.cell_len[start] = 1;
        self.cell_len[start + 1] = (len - 1) as u32;
        for i in start + 1..start + len {
            self.cell_start[i] = (start + 1) as u32;
        }
        self.cells += 1;
        start
    }

    /// Refines to the coarsest equitable partition finer than the current one,
    /// starting from the given splitter cells.
    fn refine(&mut self, g: &DenseGraph, initial: &[usize]) {
        let n = self.lab.len();
        let mut in_queue = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        for &s in initial {
            if !in_queue[s] {
                in_queue[s] = true;
                queue.push_back(s);
            }
        }
        let mut count = vec![0u32; n];
        let mut touched_cells: Vec<usize> = Vec::new();
        let mut cell_touched = vec![false; n];
        let mut touched_vertices: Vec<u32> = Vec::new();
        while let Some(w) = queue.pop_front() {
            in_queue[w] = false;
            if self.is_discrete() {
                break;
            }
            let splitter: Vec<u32> = self.cell(w).to_vec();
            for &u in &splitter {
                for &x in &g.adj[u as usize] {
                    if count[x as usize] == 0 {
                        touched_vertices.push(x);
                        let c = self.cell_start[self.pos[x as usize] as usize] as usize;
                        if !cell_touched[c] {
                            cell_touched[c] = true;
                            touched_cells.push(c);
                        }
                    }
                    count[x as usize] += 1;
                }
            }
            touched_cells.sort_unstable();
            for &c in &touched_cells {
                let len = self.cell_len[c] as usize;
                if len == 1 {
                    continue;
                }
                let cell = &mut self.lab[c..c + len];
                cell.sort_by_key(|&v| count[v as usize]);
                if count[cell[0] as usize] == count[cell[len - 1] as usize] {
                    continue;
                }
                // split into runs of equal count
                let mut fragments: Vec<(usize, usize)> = Vec::new();
                let mut s = 0;
                for i in 1..=len {
                    if i == len || count[cell[i] as usize] != count[cell[s] as usize] {
                        fragments.push((c + s, i - s));
                        s = i;
                    }
                }
                for (i, &v) in self.lab[c..c + len].iter().enumerate() {
                    self.pos[v as usize] = (c + i) as u32;
                }
                for &(fs, fl) in &fragments {
                    self.cell_len[fs] = fl as u32;
                    for i in fs..fs + fl {
                        self.cell_start[i] = fs as u32;
                    }
                }
                self.cells += fragments.len() - 1;
                if in_queue[c] {
                    for &(fs, _) in &fragments[1..] {
                        in_queue[fs] = true;
                        queue.push_back(fs);
                    }
                } else {
                    // all fragments but the first largest one
                    let largest = fragments
                        .iter()
                        .enumerate()
                        .max_by(|a, b| a.1 .1.cmp(&b.1 .1).then(b.0.cmp(&a.0)))
                        .map(|(i, _)| i)
                        .unwrap();
                    for (i, &(fs, _)) in fragments.iter().enumerate() {
                        if i != largest {
                            in_queue[fs] = true;
                            queue.push_back(fs);
                        }
                    }
                }
            }
            for &x in &touched_vertices {
                count[x as usize] = 0;
            }
            for &c in &touched_cells {
                cell_touched[c] = false;
            }
            touched_vertices.clear();
            touched_cells.clear();
        }
    }
}

type Certificate = Vec<(u32, u32)>;

fn certificate(g: &DenseGraph, lab: &[u32]) -> Certificate {
    // lab[i] = original vertex placed at position i; new label of v = pos
    let mut newlabel = vec![0u32; lab.len()];
    for (i, &v) in lab.iter().enumerate() {
        newlabel[v as usize] = i as u32;
    }
    let mut edges: Certificate = Vec::with_capacity(g.edge_count());
    for (u, nbrs) in g.adj.iter().enumerate() {
        let lu = newlabel[u];
        for &w in nbrs {
            let lw = newlabel[w as usize];
            if lu < lw {
                edges.push((lu, lw));
            }
        }
    }
    edges.sort_unstable();
    edges
}

struct Leaf {
    lab: Vec<u32>,
    path: Vec<u32>,
    cert: Certificate,
}

struct Search<'a> {
    g: &'a DenseGraph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// automorphisms as images: auto[v] = image of v
    autos: Vec<Vec<u32>>,
}

fn common_prefix(a: &[u32], b: &[u32]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Returns `Some(level)` when the search should back up to the node whose
    /// prefix has length `level`.
    fn visit(&mut self, part: Partition, path: &mut Vec<u32>) -> Option<usize> {
        if part.is_discrete() {
            return self.leaf(part.lab, path);
        }
        let start = part.first_nonsingleton().unwrap();
        let mut children: Vec<u32> = part.cell(start).to_vec();
        children.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let level = path.len();
        let mut orbits: Option<(usize, UnionFind)> = None;
        for c in children {
            if !explored.is_empty() {
                if orbits.as_ref().map_or(true, |(seen, _)| *seen != self.autos.len()) {
                    orbits = Some((self.autos.len(), self.stabilizer_orbits(path)));
                }
                let uf = &mut orbits.as_mut().unwrap().1;
                let rc = uf.find(c);
                if explored.iter().any(|&e| uf.find(e) == rc) {
                    continue;
                }
            }
            explored.push(c);
            let mut child = part.clone();
            let s = child.individualize(c);
            child.refine(self.g, &[s]);
            path.push(c);
            let jump = self.visit(child, path);
            path.pop();
            if let Some(target) = jump {
                if target < level {
                    return Some(target);
                }
            }
        }
        None
    }

    fn leaf(&mut self, lab: Vec<u32>, path: &[u32]) -> Option<usize> {
        let cert = certificate(self.g, &lab);
        let Some(first) = &self.first else {
            let leaf = Leaf { lab, path: path.to_vec(), cert };
            self.best = Some(Leaf { lab: leaf.lab.clone(), path: leaf.path.clone(), cert: leaf.cert.clone() });
            self.first = Some(leaf);
            return None;
        };
        if cert == first.cert {
            let auto = automorphism(&first.lab, &lab);
            let back = common_prefix(&first.path, path);
            self.autos.push(auto);
            return Some(back);
        }
        let best = self.best.as_ref().unwrap();
        match cert.cmp(&best.cert) {
            std::cmp::Ordering::Less => {
                self.best = Some(Leaf { lab, path: path.to_vec(), cert });
                None
            }
            std::cmp::Ordering::Equal => {
                let auto = automorphism(&best.lab, &lab);
                let back = common_prefix(&best.path, path);
                self.autos.push(auto);
                Some(back)
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Orbits of the group generated by the known automorphisms that fix
    /// every vertex of `prefix`.
    fn stabilizer_orbits(&self, prefix: &[u32]) -> UnionFind {
        let mut uf = UnionFind::new(self.g.order());
        for auto in &self.autos {
            if prefix.iter().all(|&p| auto[p as usize] == p) {
                for (v, &img) in auto.iter().enumerate() {
                    uf.union(v as u32, img);
                }
            }
        }
        uf
    }
}

/// The permutation sending the leaf labelling `from` onto `to`.
fn automorphism(from: &[u32], to: &[u32]) -> Vec<u32> {
    let mut img = vec![0u32; from.len()];
    for (a, b) in from.iter().zip(to) {
        img[*a as usize] = *b;
    }
    img
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Canonical labelling: `result[i]` is the index (in the dense view of `g`)
/// of the vertex that receives canonical label `i`.
pub fn canonical_labeling(g: &DenseGraph) -> Vec<u32> {
    let n = g.order();
    let mut part = Partition::unit(n);
    if n == 0 {
        return Vec::new();
    }
    part.refine(g, &[0]);
    let mut search = Search { g, first: None, best: None, autos: Vec::new() };
    search.visit(part, &mut Vec::new());
    search.best.unwrap().lab
}

/// Canonical byte string: equal for two graphs iff they are isomorphic.
///
/// Layout: vertex count as little-endian `u32`, then every edge of the
/// canonically relabelled graph as two little-endian `u32`s, sorted.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    let dense = g.dense();
    let lab = canonical_labeling(&dense);
    let cert = certificate(&dense, &lab);
    let mut out = Vec::with_capacity(4 + 8 * cert.len());
    out.extend_from_slice(&(dense.order() as u32).to_le_bytes());
    for (a, b) in cert {
        out.extend_from_slice(&a.to_le_bytes());
        out.extend_from_slice(&b.to_le_bytes());
    }
    out
}

/// The graph relabelled canonically onto `0..n`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let dense = g.dense();
    let lab = canonical_labeling(&dense);
    let cert = certificate(&dense, &lab);
    let edges: Vec<(u32, u32)> = cert.into_iter().collect();
    Graph::from_edges(dense.order(), &edges).expect("certificate edges are in range")
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.size() == b.size() && canonical_form(a) == canonical_form(b)
}
