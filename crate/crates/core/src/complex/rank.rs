use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

use crate::error::Result;

use super::faces::{faces_up_to_with_limit, FaceTable, DEFAULT_FACE_LIMIT};
use super::{BettiVector, Field, SimplicialComplex};

/// Reduced Betti numbers `b~_0..=b~_max_dim`.
pub fn betti_numbers(k: &SimplicialComplex, max_dim: usize, field: Field) -> Result<BettiVector> {
    betti_numbers_with_limit(k, max_dim, field, DEFAULT_FACE_LIMIT)
}

pub fn betti_numbers_with_limit(k: &SimplicialComplex, max_dim: usize, field: Field, limit: usize) -> Result<BettiVector> {
    let table = faces_up_to_with_limit(k, max_dim + 1, limit)?;
    let ranks: Vec<usize> = (0..=max_dim + 1).map(|i| boundary_rank(&table, i, field)).collect();
    let betti = (0..=max_dim).map(|i| table.count(i) - ranks[i] - ranks[i + 1]).collect();
    Ok(BettiVector { field, betti })
}

/// Rank of `∂_i : C_i -> C_{i-1}`, with `∂_0` the augmentation map.
pub fn boundary_rank(table: &FaceTable, i: usize, field: Field) -> usize {
    if i == 0 {
        return usize::from(table.count(0) > 0);
    }
    let faces = table.faces(i);
    if faces.is_empty() {
        return 0;
    }
    let rows = table.count(i - 1);
    let columns = faces.iter().map(|f| {
        let mut col: Vec<(u32, bool)> = (0..f.len())
            .map(|skip| {
                let sub: Vec<u32> = f.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, v)| *v).collect();
                let row = table.index_of(&sub).expect("boundary face is enumerated");
                (row as u32, skip % 2 == 1)
            })
            .collect();
        col.sort_unstable();
        col
    });
    match field {
        Field::Gf2 => rank_gf2(rows, columns.map(|c| c.into_iter().map(|(r, _)| r).collect())),
        Field::Rational => {
            let cols: Vec<Vec<(u32, bool)>> = columns.collect();
            rank_integer::<i128>(rows, &cols).unwrap_or_else(|| {
                rank_integer::<BigInt>(rows, &cols).expect("big integers do not overflow")
            })
        }
    }
}

fn xor_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Column reduction over GF(2); each column is a sorted list of row indices.
fn rank_gf2(rows: usize, columns: impl Iterator<Item = Vec<u32>>) -> usize {
    let mut pivot_of: Vec<u32> = vec![u32::MAX; rows];
    let mut reduced: Vec<Vec<u32>> = Vec::new();
    for mut col in columns {
        while let Some(&low) = col.last() {
            let p = pivot_of[low as usize];
            if p == u32::MAX {
                pivot_of[low as usize] = reduced.len() as u32;
                reduced.push(col);
                break;
            }
            col = xor_sorted(&col, &reduced[p as usize]);
        }
    }
    reduced.len()
}

trait Coef: Clone + Integer + Signed + CheckedMul + CheckedSub {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub> Coef for T {}

/// `a * x - b * y` on sparse integer columns, or `None` on overflow.
fn combine<T: Coef>(a: &T, x: &[(u32, T)], b: &T, y: &[(u32, T)]) -> Option<Vec<(u32, T)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a.checked_mul(&x[i].1)?));
            i += 1;
        } else if take_y {
            out.push((y[j].0, T::zero().checked_sub(&b.checked_mul(&y[j].1)?)?));
            j += 1;
        } else {
            let v = a.checked_mul(&x[i].1)?.checked_sub(&b.checked_mul(&y[j].1)?)?;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    let g = out.iter().fold(T::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in out.iter_mut() {
            *v = v.div_floor(&g);
        }
    }
    Some(out)
}

/// Fraction-free column reduction over the integers; the rank equals the
/// rank over the rationals. `None` when `T` overflows.
fn rank_integer<T: Coef>(rows: usize, columns: &[Vec<(u32, bool)>]) -> Option<usize> {
    let mut pivot_of: Vec<u32> = vec![u32::MAX; rows];
    let mut reduced: Vec<Vec<(u32, T)>> = Vec::new();
    for c in columns {
        let mut col: Vec<(u32, T)> =
            c.iter().map(|&(r, neg)| (r, if neg { -T::one() } else { T::one() })).collect();
        while let Some((low, b)) = col.last().cloned() {
            let p = pivot_of[low as usize];
            if p == u32::MAX {
                pivot_of[low as usize] = reduced.len() as u32;
                reduced.push(col);
                break;
            }
            let pivot = &reduced[p as usize];
            let a = pivot.last().unwrap().1.clone();
            col = combine(&a, &col, &b, pivot)?;
        }
    }
    Some(reduced.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_rank_small() {
        // columns of the boundary of a triangle: rank 2
        let cols = vec![
            vec![(0, true), (1, false)],
            vec![(0, true), (2, false)],
            vec![(1, true), (2, false)],
        ];
        assert_eq!(rank_integer::<i128>(3, &cols), Some(2));
        assert_eq!(rank_integer::<BigInt>(3, &cols), Some(2));
        assert_eq!(rank_gf2(3, cols.iter().map(|c| c.iter().map(|x| x.0).collect())), 2);
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX / 2 + 1;
        let x = vec![(0u32, big)];
        let y = vec![(0u32, 1i128)];
        assert_eq!(combine(&3i128, &x, &1i128, &y), None);
    }

    #[test]
    fn projective_plane_torsion() {
        // six-vertex triangulation of RP^2: H_1 = Z/2, so the fields disagree
        let tris = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let k = SimplicialComplex::from_faces(tris.iter().map(|t| t.to_vec()));
        assert_eq!(betti_numbers(&k, 2, Field::Gf2).unwrap().betti, vec![0, 1, 1]);
        assert_eq!(betti_numbers(&k, 2, Field::Rational).unwrap().betti, vec![0, 0, 0]);
    }
}
