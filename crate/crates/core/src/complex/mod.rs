//! Simplicial complexes given by facets, neighbourhood complexes, face
//! enumeration and reduced Betti numbers.

mod faces;
mod rank;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub use faces::{faces_up_to, faces_up_to_with_limit, Face, FaceTable, DEFAULT_FACE_LIMIT};
pub use rank::{betti_numbers, betti_numbers_with_limit, boundary_rank};

/// A finite simplicial complex stored by its maximal faces.
///
/// Vertices of the ground set that lie in no facet are isolated points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground: Vec<u32>,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating family of faces; duplicates and
    /// non-maximal sets are dropped. Every facet vertex must be in `ground`.
    pub fn new(ground: impl IntoIterator<Item = u32>, faces: impl IntoIterator<Item = Vec<u32>>) -> Result<Self> {
        let ground: BTreeSet<u32> = ground.into_iter().collect();
        let mut sets: Vec<Vec<u32>> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if let Some(v) = f.iter().find(|v| !ground.contains(v)) {
                return Err(Error::spec(format!("facet vertex {v} is not in the ground set")));
            }
            if !f.is_empty() {
                sets.push(f);
            }
        }
        Ok(SimplicialComplex { ground: ground.into_iter().collect(), facets: maximal(sets) })
    }

    /// The ground set is the union of the given faces.
    pub fn from_faces(faces: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let faces: Vec<Vec<u32>> = faces.into_iter().collect();
        let ground: BTreeSet<u32> = faces.iter().flatten().copied().collect();
        Self::new(ground, faces).expect("ground set covers all faces")
    }

    pub fn ground(&self) -> &[u32] {
        &self.ground
    }

    /// Maximal faces, each sorted, in lexicographic order.
    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    /// Largest facet dimension; `None` for a complex with no vertices.
    pub fn dimension(&self) -> Option<usize> {
        if self.ground.is_empty() {
            return None;
        }
        Some(self.facets.iter().map(|f| f.len() - 1).max().unwrap_or(0))
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        match face {
            [] => true,
            [v] => self.ground.binary_search(v).is_ok(),
            _ => self.facets.iter().any(|f| is_sorted_subset(face, f)),
        }
    }

    /// Whether the 1-skeleton, isolated ground vertices included, has a
    /// single component.
    pub fn is_path_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn component_count(&self) -> usize {
        let index = |v: &u32| self.ground.binary_search(v).unwrap();
        let mut parent: Vec<usize> = (0..self.ground.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut count = self.ground.len();
        for f in &self.facets {
            let root = index(&f[0]);
            for v in &f[1..] {
                let (a, b) = (find(&mut parent, root), find(&mut parent, index(v)));
                if a != b {
                    parent[a] = b;
                    count -= 1;
                }
            }
        }
        count
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson { vertices: self.ground.clone(), facets: self.facets.clone() }
    }
}

fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

fn maximal(mut sets: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| k.len() > s.len() && is_sorted_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// `{"vertices": [...], "facets": [[...], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<u32>,
    pub facets: Vec<Vec<u32>>,
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::new(self.vertices.iter().copied(), self.facets.iter().cloned())
    }
}

/// The neighbourhood complex `N(G)`: facets are the open neighbourhoods,
/// ground set `V(G)` (vertex identifiers are kept).
pub fn neighborhood_complex(g: &Graph) -> SimplicialComplex {
    let facets = g
        .vertices()
        .map(|v| g.neighbors(v).expect("own vertex").iter().map(|u| u.0).collect::<Vec<u32>>())
        .collect::<Vec<_>>();
    SimplicialComplex::new(g.vertices().map(|v: Vertex| v.0), facets).expect("neighbours are vertices")
}

/// Coefficient field for homology.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[default]
    #[serde(rename = "gf2")]
    Gf2,
    #[serde(rename = "q")]
    Rational,
}

impl std::str::FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gf2" | "GF2" | "2" => Ok(Field::Gf2),
            "q" | "Q" | "rational" => Ok(Field::Rational),
            _ => Err(Error::Parse(format!("unknown field {s:?}; use gf2 or q"))),
        }
    }
}

/// Reduced Betti numbers `b~_0, ..., b~_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub field: Field,
    pub betti: Vec<usize>,
}

impl BettiVector {
    /// `b~_i`, zero past the computed range.
    pub fn get(&self, i: usize) -> usize {
        self.betti.get(i).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        // reduced Euler characteristic + 1
        1 + self.betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum::<i64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_fig4_graph, build_gn, build_gn_prime, vertex_identify};

    fn betti(g: &Graph, d: usize) -> Vec<usize> {
        betti_numbers(&neighborhood_complex(g), d, Field::Gf2).unwrap().betti
    }

    #[test]
    fn nk3_is_a_circle() {
        let k = neighborhood_complex(&Graph::complete(3));
        assert_eq!(k.facets(), &[vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(betti(&Graph::complete(3), 1), vec![0, 1]);
    }

    #[test]
    fn nc6_is_two_triangles() {
        let k = neighborhood_complex(&Graph::cycle(6));
        assert_eq!(k.facets(), &[vec![0, 2], vec![0, 4], vec![1, 3], vec![1, 5], vec![2, 4], vec![3, 5]]);
        assert_eq!(k.component_count(), 2);
        assert_eq!(betti(&Graph::cycle(6), 1), vec![1, 2]);
    }

    #[test]
    fn nk2_is_two_points() {
        let k = neighborhood_complex(&Graph::complete(2));
        assert_eq!(k.facets(), &[vec![0], vec![1]]);
        assert!(!k.is_path_connected());
    }

    #[test]
    fn path_connectivity() {
        assert!(neighborhood_complex(&Graph::cycle(5)).is_path_connected());
        assert!(!neighborhood_complex(&Graph::cycle(6)).is_path_connected());
        assert!(neighborhood_complex(&Graph::empty(1)).is_path_connected());
        assert!(!neighborhood_complex(&Graph::empty(2)).is_path_connected());
    }

    #[test]
    fn dominated_facets_pruned() {
        let k = SimplicialComplex::from_faces(vec![vec![1, 2], vec![2, 1, 3], vec![3], vec![4]]);
        assert_eq!(k.facets(), &[vec![1, 2, 3], vec![4]]);
        assert!(k.contains_face(&[1, 3]));
        assert!(!k.contains_face(&[3, 4]));
    }

    #[test]
    fn tetrahedron_boundary() {
        let k = SimplicialComplex::from_faces(vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        for field in [Field::Gf2, Field::Rational] {
            assert_eq!(betti_numbers(&k, 2, field).unwrap().betti, vec![0, 0, 1]);
        }
        assert_eq!(betti(&Graph::complete(4), 2), vec![0, 0, 1]);
    }

    #[test]
    fn gn_family_small() {
        let g = build_gn(5).unwrap();
        assert_eq!(betti(&g, 2), vec![0, 15, 0]);
        let gp = build_gn_prime(5).unwrap();
        assert_eq!(betti(&gp, 2), vec![0, 0, 9]);
    }

    #[test]
    fn six_cycle_values() {
        let (g, pair) = build_fig4_graph();
        assert_eq!(betti(&g, 1)[1], 2);
        let h = vertex_identify(&g, &[pair]).unwrap();
        assert_eq!(betti(&h, 1)[1], 3);
    }

    #[test]
    fn json_forms() {
        let k = neighborhood_complex(&Graph::path(3));
        let s = serde_json::to_string(&k.to_json()).unwrap();
        assert_eq!(s, r#"{"vertices":[0,1,2],"facets":[[0,2],[1]]}"#);
        let b = betti_numbers(&k, 1, Field::Rational).unwrap();
        assert_eq!(serde_json::to_string(&b).unwrap(), r#"{"field":"q","betti":[1,0]}"#);
        assert_eq!(serde_json::from_str::<ComplexJson>(&s).unwrap().to_complex().unwrap(), k);
    }
}
