//! Named fixture graphs: the `G_n` family and the six-cycle example.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexPair};

use super::vertex_identify;

/// Name of the vertex `iA`, `iB` or `iC` of `G_n`.
pub fn gn_label(i: usize, part: char) -> String {
    format!("{i}{part}")
}

/// `G_n` on vertices `X, Y, Z` and `iA, iB, iC` for `1 <= i <= n`.
///
/// Identifiers: `X = 0`, `Y = 1`, `Z = 2`, then `iA, iB, iC` are
/// `3i, 3i + 1, 3i + 2`.
pub fn build_gn(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::spec("G_n needs n >= 1"));
    }
    let (x, y, z) = (Vertex(0), Vertex(1), Vertex(2));
    let a = |i: usize| Vertex(3 * i as u32);
    let b = |i: usize| Vertex(3 * i as u32 + 1);
    let c = |i: usize| Vertex(3 * i as u32 + 2);
    let mut g = Graph::new();
    for (v, name) in [(x, "X"), (y, "Y"), (z, "Z")] {
        g.add_vertex(v);
        g.set_name(v, name);
    }
    for i in 1..=n {
        for (v, part) in [(a(i), 'A'), (b(i), 'B'), (c(i), 'C')] {
            g.add_vertex(v);
            g.set_name(v, gn_label(i, part));
        }
    }
    g.insert_edge(x, y);
    g.insert_edge(y, z);
    g.insert_edge(a(1), x);
    g.insert_edge(c(n), x);
    for i in 1..=n {
        g.insert_edge(b(i), x);
        g.insert_edge(a(i), b(i));
        g.insert_edge(b(i), c(i));
        g.insert_edge(c(i), a(i));
    }
    for j in 1..n {
        g.insert_edge(c(j), z);
        g.insert_edge(c(j), a(j + 1));
    }
    for k in 2..=n {
        g.insert_edge(a(k), z);
    }
    Ok(g)
}

/// `G_n' = vid(G_n, [X, Z])`; the merged vertex is named `XZ`.
pub fn build_gn_prime(n: usize) -> Result<Graph> {
    let g = build_gn(n)?;
    vertex_identify(&g, &[VertexPair { a: Vertex(0), b: Vertex(2) }])
}

/// The six-cycle `v, 1, 2, w, 4, 3` with the pair `(v, w)` at distance 3.
pub fn build_fig4_graph() -> (Graph, VertexPair) {
    let names = ["v", "1", "2", "w", "4", "3"];
    let mut g = Graph::cycle(6);
    for (i, name) in names.iter().enumerate() {
        g.set_name(Vertex(i as u32), *name);
    }
    (g, VertexPair { a: Vertex(0), b: Vertex(3) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{chromatic_number, Chromatic};
    use crate::graph::Distance;

    fn named(g: &Graph, s: &str) -> Vertex {
        g.vertex_named(s).unwrap()
    }

    #[test]
    fn g3_shape() {
        let g = build_gn(3).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.size(), 22);
        assert_eq!(g.degree(named(&g, "X")).unwrap(), 6);
        assert!(!g.has_edge(named(&g, "X"), named(&g, "Z")));
        let nz: Vec<String> = g.neighbors(named(&g, "Z")).unwrap().iter().map(|v| g.display_name(*v)).collect();
        assert_eq!(nz, ["Y", "1C", "2A", "2C", "3A"]);
    }

    #[test]
    fn g1_degenerate_ranges() {
        let g = build_gn(1).unwrap();
        // X-Y, Y-Z, 1A-X, 1C-X, 1B-X and the triangle
        assert_eq!((g.order(), g.size()), (6, 8));
        assert_eq!(g.degree(named(&g, "Z")).unwrap(), 1);
        assert!(build_gn(0).is_err());
    }

    #[test]
    fn gn_is_four_chromatic() {
        for n in [2, 5] {
            assert_eq!(chromatic_number(&build_gn(n).unwrap(), 8).unwrap(), Chromatic::Exact(4));
        }
    }

    #[test]
    fn gn_prime_merges_x_and_z() {
        let g = build_gn_prime(3).unwrap();
        assert_eq!(g.order(), 11);
        let xz = named(&g, "XZ");
        assert_eq!(g.degree(xz).unwrap(), 10);
        assert_eq!(g.origin(xz), Some([Vertex(0), Vertex(2)]));
    }

    #[test]
    fn six_cycle_pair_distance() {
        let (g, pair) = build_fig4_graph();
        assert_eq!(g.distance(pair.a, pair.b).unwrap(), Distance::Finite(3));
        assert_eq!(g.display_name(pair.b), "w");
    }
}
