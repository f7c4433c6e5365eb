//! Exact chromatic number by backtracking, for graphs of at most
//! [`MAX_EXACT_VERTICES`] vertices.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The exact solver works on 64-bit adjacency masks.
pub const MAX_EXACT_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chromatic {
    Exact(usize),
    /// The chromatic number is larger than the requested limit.
    ExceedsLimit,
}

impl Chromatic {
    pub fn exact(self) -> Option<usize> {
        match self {
            Chromatic::Exact(k) => Some(k),
            Chromatic::ExceedsLimit => None,
        }
    }
}

struct Masks {
    n: usize,
    adj: Vec<u64>,
}

impl Masks {
    fn new(g: &Graph) -> Result<Self> {
        let n = g.order();
        if n > MAX_EXACT_VERTICES {
            return Err(Error::Capacity {
                what: "exact colouring vertex count",
                size: n,
                limit: MAX_EXACT_VERTICES,
            });
        }
        let dense = g.dense();
        let adj = dense
            .adj
            .iter()
            .map(|nbrs| nbrs.iter().fold(0u64, |m, &u| m | (1 << u)))
            .collect();
        Ok(Masks { n, adj })
    }

    /// DSATUR-ordered backtracking for a proper colouring with `k` colours.
    fn colourable(&self, k: usize) -> bool {
        if self.n == 0 {
            return true;
        }
        if k == 0 {
            return false;
        }
        let mut colour = vec![usize::MAX; self.n];
        // used[v] = mask of colours seen among coloured neighbours of v
        let mut used = vec![0u64; self.n];
        self.assign(&mut colour, &mut used, k, 0, 0)
    }

    fn assign(&self, colour: &mut [usize], used: &mut [u64], k: usize, coloured: usize, max_used: usize) -> bool {
        if coloured == self.n {
            return true;
        }
        // pick the uncoloured vertex with the most distinct neighbour colours,
        // ties broken by degree among uncoloured vertices
        let mut best = usize::MAX;
        let mut best_key = (0u32, 0u32);
        let uncoloured_mask = colour
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == usize::MAX)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        for v in 0..self.n {
            if colour[v] != usize::MAX {
                continue;
            }
            let key = (used[v].count_ones(), (self.adj[v] & uncoloured_mask).count_ones());
            if best == usize::MAX || key > best_key {
                best = v;
                best_key = key;
            }
        }
        let v = best;
        // symmetry breaking: never open more than one new colour class
        let limit = k.min(max_used + 1);
        for c in 0..limit {
            if used[v] & (1 << c) != 0 {
                continue;
            }
            colour[v] = c;
            let mut touched = Vec::new();
            let mut nbrs = self.adj[v];
            let mut dead = false;
            while nbrs != 0 {
                let u = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                if colour[u] == usize::MAX && used[u] & (1 << c) == 0 {
                    used[u] |= 1 << c;
                    touched.push(u);
                    if used[u].count_ones() as usize >= k {
                        dead = true;
                    }
                }
            }
            if !dead && self.assign(colour, used, k, coloured + 1, max_used.max(c + 1)) {
                return true;
            }
            for u in touched {
                used[u] &= !(1 << c);
            }
            colour[v] = usize::MAX;
        }
        false
    }

    /// Size of a greedily found clique; a cheap lower bound.
    fn greedy_clique(&self) -> usize {
        let mut best = 0;
        for start in 0..self.n {
            let mut clique: u64 = 1 << start;
            let mut cand = self.adj[start];
            while cand != 0 {
                // take the candidate with most neighbours inside cand
                let mut pick = cand.trailing_zeros() as usize;
                let mut pick_deg = 0;
                let mut rest = cand;
                while rest != 0 {
                    let u = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let d = (self.adj[u] & cand).count_ones();
                    if d > pick_deg {
                        pick = u;
                        pick_deg = d;
                    }
                }
                clique |= 1 << pick;
                cand &= self.adj[pick];
            }
            best = best.max(clique.count_ones() as usize);
        }
        best
    }

    fn has_clique(&self, k: usize, cand: u64, size: usize) -> bool {
        if size >= k {
            return true;
        }
        if (cand.count_ones() as usize) + size < k {
            return false;
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if self.has_clique(k, rest & self.adj[v], size + 1) {
                return true;
            }
        }
        false
    }
}

/// Exact chromatic number, or [`Chromatic::ExceedsLimit`] when it is larger
/// than `limit`. Errors (never approximates) above [`MAX_EXACT_VERTICES`].
pub fn chromatic_number(g: &Graph, limit: usize) -> Result<Chromatic> {
    let masks = Masks::new(g)?;
    if masks.n == 0 {
        return Ok(Chromatic::Exact(0));
    }
    let lower = masks.greedy_clique();
    for k in lower..=limit {
        if masks.colourable(k) {
            return Ok(Chromatic::Exact(k));
        }
    }
    Ok(Chromatic::ExceedsLimit)
}

pub fn is_colourable(g: &Graph, k: usize) -> Result<bool> {
    Ok(Masks::new(g)?.colourable(k))
}

/// Whether `g` contains a clique on `k` vertices.
pub fn has_clique(g: &Graph, k: usize) -> Result<bool> {
    let masks = Masks::new(g)?;
    let all = if masks.n == 64 { u64::MAX } else { (1u64 << masks.n) - 1 };
    Ok(masks.has_clique(k, all, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;

    #[test]
    fn small_cases() {
        assert_eq!(chromatic_number(&Graph::complete(5), 10).unwrap(), Chromatic::Exact(5));
        assert_eq!(chromatic_number(&Graph::cycle(5), 10).unwrap(), Chromatic::Exact(3));
        assert_eq!(chromatic_number(&Graph::cycle(6), 10).unwrap(), Chromatic::Exact(2));
        assert_eq!(chromatic_number(&Graph::empty(3), 10).unwrap(), Chromatic::Exact(1));
        assert_eq!(chromatic_number(&Graph::new(), 10).unwrap(), Chromatic::Exact(0));
        assert_eq!(chromatic_number(&Graph::complete(5), 4).unwrap(), Chromatic::ExceedsLimit);
    }

    #[test]
    fn complete_graphs_and_bipartite() {
        for n in 1..9 {
            assert_eq!(chromatic_number(&Graph::complete(n), 20).unwrap(), Chromatic::Exact(n));
        }
        let k33 = Graph::from_edges(6, &[(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        assert_eq!(chromatic_number(&k33, 20).unwrap(), Chromatic::Exact(2));
    }

    #[test]
    fn grotzsch_graph_is_four_chromatic() {
        // Mycielskian of C5: triangle-free with chromatic number 4
        let mut g = Graph::cycle(5);
        for i in 0..5u32 {
            for j in [(i + 1) % 5, (i + 4) % 5] {
                g.add_edge(Vertex(5 + i), Vertex(j)).unwrap();
            }
            g.add_edge(Vertex(5 + i), Vertex(10)).unwrap();
        }
        assert!(!has_clique(&g, 3).unwrap());
        assert_eq!(chromatic_number(&g, 10).unwrap(), Chromatic::Exact(4));
    }

    #[test]
    fn capacity_error_above_cap() {
        let g = Graph::path(65);
        assert!(matches!(chromatic_number(&g, 3), Err(Error::Capacity { .. })));
        assert!(chromatic_number(&Graph::path(64), 3).is_ok());
    }

    #[test]
    fn cliques() {
        assert!(has_clique(&Graph::complete(4), 4).unwrap());
        assert!(!has_clique(&Graph::cycle(5), 3).unwrap());
        assert!(has_clique(&Graph::cycle(5), 2).unwrap());
    }
}
