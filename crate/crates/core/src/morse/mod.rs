//! Discrete Morse matchings on face posets.
//!
//! Faces are bitmasks over the poset's ground set (at most 128 vertices);
//! the empty face is not part of the poset.

mod fixtures;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use fixtures::{build_prop48_matching, build_prop49_matching, MorseFixture};

/// A face of a [`FacePoset`], as a bitmask over ground-set positions.
pub type Cell = u128;

/// Bound on the number of faces of a [`FacePoset`].
pub const DEFAULT_POSET_LIMIT: usize = 4_000_000;

/// The poset of nonempty faces of a complex under inclusion.
#[derive(Clone, Debug)]
pub struct FacePoset {
    ground: Vec<u32>,
    faces: Vec<Cell>,
    index: HashMap<Cell, u32>,
}

impl FacePoset {
    pub fn from_complex(k: &SimplicialComplex) -> Result<Self> {
        Self::from_complex_with_limit(k, DEFAULT_POSET_LIMIT)
    }

    pub fn from_complex_with_limit(k: &SimplicialComplex, limit: usize) -> Result<Self> {
        let ground = k.ground().to_vec();
        if ground.len() > 128 {
            return Err(Error::Capacity { what: "face poset ground set", size: ground.len(), limit: 128 });
        }
        let bit = |v: &u32| 1u128 << ground.binary_search(v).unwrap();
        let mut seen: std::collections::HashSet<Cell> = ground.iter().map(bit).collect();
        for f in k.facets() {
            if f.len() >= 40 {
                return Err(Error::Capacity { what: "face poset facet size", size: f.len(), limit: 39 });
            }
            let mask = f.iter().map(bit).fold(0, |m, b| m | b);
            let mut sub = mask;
            while sub != 0 {
                seen.insert(sub);
                if seen.len() > limit {
                    return Err(Error::Capacity { what: "face poset faces", size: seen.len(), limit });
                }
                sub = (sub - 1) & mask;
            }
        }
        let mut faces: Vec<Cell> = seen.into_iter().collect();
        faces.sort_unstable_by_key(|&c| (c.count_ones(), c));
        let index = faces.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        Ok(FacePoset { ground, faces, index })
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// All faces, ordered by dimension and then by mask.
    pub fn faces(&self) -> &[Cell] {
        &self.faces
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    pub fn index_of(&self, c: Cell) -> Option<usize> {
        self.index.get(&c).map(|&i| i as usize)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.index.contains_key(&c)
    }

    /// The cell spanned by the given vertex identifiers, if it is a face.
    pub fn cell(&self, vertices: &[u32]) -> Option<Cell> {
        let mut c = 0;
        for v in vertices {
            c |= 1u128 << self.ground.binary_search(v).ok()?;
        }
        self.contains(c).then_some(c)
    }

    /// Bit of a ground vertex.
    pub fn bit(&self, v: u32) -> Option<Cell> {
        self.ground.binary_search(&v).ok().map(|i| 1u128 << i)
    }

    pub fn vertices(&self, c: Cell) -> Vec<u32> {
        bits(c).map(|i| self.ground[i]).collect()
    }

    /// Face counts `f_0, f_1, ...`.
    pub fn counts(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for &c in &self.faces {
            let d = dim(c);
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.counts())
    }

    /// All cover pairs `(σ, τ)` with `σ ⊂ τ` and `dim τ = dim σ + 1`.
    pub fn covers(&self) -> impl Iterator<Item = (Cell, Cell)> + '_ {
        self.faces.iter().filter(|c| c.count_ones() >= 2).flat_map(|&t| bits(t).map(move |i| (t & !(1u128 << i), t)))
    }
}

pub fn dim(c: Cell) -> usize {
    c.count_ones() as usize - 1
}

fn bits(c: Cell) -> impl Iterator<Item = usize> {
    let mut rest = c;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

fn alternating(counts: &[usize]) -> i64 {
    counts.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

fn is_cover(a: Cell, b: Cell) -> bool {
    a != 0 && a & !b == 0 && (b & !a).count_ones() == 1
}

/// A set of `(face, coface)` cover pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialMatching {
    pub pairs: Vec<(Cell, Cell)>,
}

impl PartialMatching {
    pub fn new(pairs: Vec<(Cell, Cell)>) -> Self {
        PartialMatching { pairs }
    }

    /// Checks the matching axioms and returns, for every face index, the
    /// index of its partner (or `u32::MAX`).
    pub fn partners(&self, p: &FacePoset) -> Result<Vec<u32>> {
        let mut partner = vec![u32::MAX; p.len()];
        for &(a, b) in &self.pairs {
            if !is_cover(a, b) {
                return Err(Error::spec(format!("{:?} -> {:?} is not a cover relation", p.vertices(a), p.vertices(b))));
            }
            let (Some(i), Some(j)) = (p.index_of(a), p.index_of(b)) else {
                return Err(Error::spec(format!("pair {:?} -> {:?} is not in the poset", p.vertices(a), p.vertices(b))));
            };
            for k in [i, j] {
                if partner[k] != u32::MAX {
                    return Err(Error::spec(format!("face {:?} is matched twice", p.vertices(p.faces[k]))));
                }
            }
            partner[i] = j as u32;
            partner[j] = i as u32;
        }
        Ok(partner)
    }
}

/// Outcome of [`is_acyclic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acyclicity {
    Acyclic,
    /// A directed cycle of the modified Hasse diagram.
    Cycle(Vec<Cell>),
}

impl Acyclicity {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, Acyclicity::Acyclic)
    }
}

/// Whether the modified Hasse diagram (matched covers point up, all other
/// covers point down) has no directed cycle.
pub fn is_acyclic(p: &FacePoset, m: &PartialMatching) -> Result<Acyclicity> {
    let partner = m.partners(p)?;
    Ok(find_cycle(p, &partner, |_| true))
}

fn successors(p: &FacePoset, partner: &[u32], x: usize, out: &mut Vec<u32>) {
    out.clear();
    let c = p.faces[x];
    let mate = (partner[x] != u32::MAX).then(|| p.faces[partner[x] as usize]);
    if let Some(up) = mate.filter(|&m| m & c == c) {
        out.push(p.index[&up]);
    }
    if c.count_ones() >= 2 {
        for i in bits(c) {
            let down = c & !(1u128 << i);
            if Some(down) != mate {
                out.push(p.index[&down]);
            }
        }
    }
}

fn find_cycle(p: &FacePoset, partner: &[u32], keep: impl Fn(usize) -> bool) -> Acyclicity {
    // 0 = unvisited, 1 = on stack, 2 = done
    let mut state = vec![0u8; p.len()];
    let mut stack: Vec<(u32, Vec<u32>, usize)> = Vec::new();
    let mut scratch = Vec::new();
    for root in 0..p.len() {
        if state[root] != 0 || !keep(root) || partner[root] == u32::MAX {
            // a cycle must use an up edge, hence a matched face
            continue;
        }
        state[root] = 1;
        successors(p, partner, root, &mut scratch);
        stack.push((root as u32, scratch.clone(), 0));
        while let Some((node, succ, pos)) = stack.last_mut() {
            if *pos == succ.len() {
                state[*node as usize] = 2;
                stack.pop();
                continue;
            }
            let next = succ[*pos] as usize;
            *pos += 1;
            if !keep(next) {
                continue;
            }
            match state[next] {
                0 => {
                    state[next] = 1;
                    successors(p, partner, next, &mut scratch);
                    stack.push((next as u32, scratch.clone(), 0));
                }
                1 => {
                    let start = stack.iter().position(|(n, _, _)| *n as usize == next).unwrap();
                    return Acyclicity::Cycle(stack[start..].iter().map(|(n, _, _)| p.faces[*n as usize]).collect());
                }
                _ => {}
            }
        }
    }
    Acyclicity::Acyclic
}

/// Unmatched faces of an acyclic matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalCells {
    /// `c_0, c_1, ...` up to the poset dimension.
    pub counts: Vec<usize>,
    pub cells: Vec<Cell>,
}

impl CriticalCells {
    pub fn euler_characteristic(&self) -> i64 {
        alternating(&self.counts)
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts.get(i).copied().unwrap_or(0)
    }
}

pub fn critical_cells(p: &FacePoset, m: &PartialMatching) -> Result<CriticalCells> {
    let partner = m.partners(p)?;
    if let Acyclicity::Cycle(c) = find_cycle(p, &partner, |_| true) {
        return Err(Error::spec(format!("matching has a cycle through {} faces", c.len())));
    }
    let mut counts = vec![0; p.counts().len()];
    let mut cells = Vec::new();
    for (i, &c) in p.faces.iter().enumerate() {
        if partner[i] == u32::MAX {
            counts[dim(c)] += 1;
            cells.push(c);
        }
    }
    Ok(CriticalCells { counts, cells })
}

/// A finite poset given by labelled elements and cover relations `a < b`.
#[derive(Clone, Debug)]
pub struct TargetPoset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

impl TargetPoset {
    pub fn new(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &covers {
            if a >= n || b >= n {
                return Err(Error::spec(format!("cover ({a}, {b}) outside {n} labels")));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| a != b && leq[a][b] && leq[b][a]) {
            return Err(Error::spec(format!("relations form a cycle through {} and {}", labels[a], labels[b])));
        }
        Ok(TargetPoset { labels, covers, leq })
    }

    /// A chain in the given order.
    pub fn chain(labels: Vec<String>) -> Result<Self> {
        let covers = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Self::new(labels, covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.leq[a][b] || self.leq[b][a]))
    }
}

/// A poset map from faces to a [`TargetPoset`] with one matching per fiber.
#[derive(Clone, Debug)]
pub struct PosetMapFibers {
    pub target: TargetPoset,
    /// Label index of every face, indexed like [`FacePoset::faces`].
    pub assignment: Vec<usize>,
    pub matchings: Vec<PartialMatching>,
}

impl PosetMapFibers {
    pub fn fiber(&self, p: &FacePoset, label: usize) -> Vec<Cell> {
        p.faces.iter().zip(&self.assignment).filter(|(_, &l)| l == label).map(|(&c, _)| c).collect()
    }

    pub fn check_order_preserving(&self, p: &FacePoset) -> Result<()> {
        if self.assignment.len() != p.len() {
            return Err(Error::spec(format!("{} faces but {} assignments", p.len(), self.assignment.len())));
        }
        for (s, t) in p.covers() {
            let (ls, lt) = (self.assignment[p.index[&s] as usize], self.assignment[p.index[&t] as usize]);
            if !self.target.leq(ls, lt) {
                return Err(Error::spec(format!(
                    "not order preserving: {:?} -> {} but {:?} -> {}",
                    p.vertices(s),
                    self.target.labels[ls],
                    p.vertices(t),
                    self.target.labels[lt]
                )));
            }
        }
        Ok(())
    }
}

/// Union of fiberwise acyclic matchings over an order-preserving map. The
/// union is checked for acyclicity once more before it is returned.
pub fn patchwork_union(p: &FacePoset, fibers: &PosetMapFibers) -> Result<PartialMatching> {
    fibers.check_order_preserving(p)?;
    if fibers.matchings.len() != fibers.target.len() {
        return Err(Error::spec("one matching per target element is required"));
    }
    let mut union = Vec::new();
    for (label, m) in fibers.matchings.iter().enumerate() {
        for &(a, b) in &m.pairs {
            for c in [a, b] {
                match p.index_of(c) {
                    Some(i) if fibers.assignment[i] == label => {}
                    _ => {
                        return Err(Error::spec(format!(
                            "pair {:?} -> {:?} leaves the fiber of {}",
                            p.vertices(a),
                            p.vertices(b),
                            fibers.target.labels[label]
                        )))
                    }
                }
            }
        }
        let partner = m.partners(p)?;
        if let Acyclicity::Cycle(_) = find_cycle(p, &partner, |i| fibers.assignment[i] == label) {
            return Err(Error::spec(format!("matching on the fiber of {} has a cycle", fibers.target.labels[label])));
        }
        union.extend_from_slice(&m.pairs);
    }
    let union = PartialMatching::new(union);
    if let Acyclicity::Cycle(c) = is_acyclic(p, &union)? {
        return Err(Error::spec(format!("union has a cycle of length {}", c.len())));
    }
    Ok(union)
}

/// Debug export: matched pairs and critical cells as vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingJson {
    pub pairs: Vec<[Vec<u32>; 2]>,
    pub critical_counts: Vec<usize>,
    pub critical: Vec<Vec<u32>>,
}

pub fn matching_json(p: &FacePoset, m: &PartialMatching) -> Result<MatchingJson> {
    let crit = critical_cells(p, m)?;
    Ok(MatchingJson {
        pairs: m.pairs.iter().map(|&(a, b)| [p.vertices(a), p.vertices(b)]).collect(),
        critical_counts: crit.counts.clone(),
        critical: crit.cells.iter().map(|&c| p.vertices(c)).collect(),
    })
}
