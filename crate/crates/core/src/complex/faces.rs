use crate::error::{Error, Result};

use super::SimplicialComplex;

/// Default bound on the number of enumerated faces.
pub const DEFAULT_FACE_LIMIT: usize = 5_000_000;

/// A face as a sorted list of vertex identifiers.
pub type Face = Box<[u32]>;

/// Faces of dimension `0..=dim`, each dimension sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTable {
    faces: Vec<Vec<Face>>,
}

impl FaceTable {
    /// Highest dimension enumerated (faces may be absent there).
    pub fn dim(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    pub fn faces(&self, i: usize) -> &[Face] {
        self.faces.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, i: usize) -> usize {
        self.faces(i).len()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        let i = face.len().checked_sub(1)?;
        self.faces(i).binary_search_by(|f| f.as_ref().cmp(face)).ok()
    }
}

fn push_subsets(facet: &[u32], size: usize, out: &mut Vec<Face>) {
    let n = facet.len();
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().map(|&i| facet[i]).collect());
        let mut j = size;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            if idx[j] != j + n - size {
                break;
            }
            if j == 0 {
                return;
            }
        }
        idx[j] += 1;
        for t in j + 1..size {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

fn binomial_capped(n: usize, k: usize, cap: usize) -> usize {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return cap + 1;
        }
    }
    acc as usize
}

/// All faces of dimension at most `d`.
pub fn faces_up_to(k: &SimplicialComplex, d: usize) -> Result<FaceTable> {
    faces_up_to_with_limit(k, d, DEFAULT_FACE_LIMIT)
}

pub fn faces_up_to_with_limit(k: &SimplicialComplex, d: usize, limit: usize) -> Result<FaceTable> {
    let mut faces = Vec::with_capacity(d + 1);
    let mut total = k.ground.len();
    if total > limit {
        return Err(Error::Capacity { what: "complex faces", size: total, limit });
    }
    faces.push(k.ground.iter().map(|&v| Box::from([v])).collect::<Vec<Face>>());
    for i in 1..=d {
        let size = i + 1;
        let raw: usize = k
            .facets
            .iter()
            .map(|f| if f.len() < size { 0 } else { binomial_capped(f.len(), size, limit) })
            .fold(0usize, |a, b| a.saturating_add(b));
        // a generous bound on duplicates across facets before dedup
        if raw > limit.saturating_mul(4) {
            return Err(Error::Capacity { what: "complex faces", size: raw, limit });
        }
        let mut layer = Vec::with_capacity(raw);
        for f in &k.facets {
            push_subsets(f, size, &mut layer);
        }
        layer.sort_unstable();
        layer.dedup();
        total += layer.len();
        if total > limit {
            return Err(Error::Capacity { what: "complex faces", size: total, limit });
        }
        let empty = layer.is_empty();
        faces.push(layer);
        if empty {
            // pad remaining dimensions so `dim()` reports the requested range
            faces.extend((i + 1..=d).map(|_| Vec::new()));
            break;
        }
    }
    Ok(FaceTable { faces })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::neighborhood_complex;
    use crate::constructions::build_gn;

    #[test]
    fn simplex_binomials() {
        let k = SimplicialComplex::from_faces(vec![vec![0, 1, 2, 3]]);
        let t = faces_up_to(&k, 1).unwrap();
        assert_eq!(t.counts(), vec![4, 6]);
        assert_eq!(faces_up_to(&k, 5).unwrap().counts(), vec![4, 6, 4, 1, 0, 0]);
    }

    #[test]
    fn two_disjoint_edges() {
        let k = SimplicialComplex::from_faces(vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(faces_up_to(&k, 2).unwrap().counts(), vec![4, 2, 0]);
    }

    #[test]
    fn gn_triangles_match_triple_scan() {
        let g = build_gn(5).unwrap();
        let k = neighborhood_complex(&g);
        let t = faces_up_to(&k, 2).unwrap();
        let n = g.order() as u32;
        let mut brute = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if g.vertices().any(|v| {
                        let nb = g.neighbors(v).unwrap();
                        [a, b, c].iter().all(|x| nb.contains(&crate::graph::Vertex(*x)))
                    }) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(t.count(2), brute);
        assert_eq!(t.index_of(&t.faces(2)[3]), Some(3));
    }

    #[test]
    fn capacity_guard() {
        let k = SimplicialComplex::from_faces(vec![(0..30).collect()]);
        let err = faces_up_to_with_limit(&k, 3, 1000).unwrap_err();
        assert!(err.is_capacity());
    }
}
