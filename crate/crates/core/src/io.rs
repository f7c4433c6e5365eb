//! graph6 and JSON graph formats.
//!
//! Both formats index vertices `0..n`; a [`Graph`] with arbitrary identifiers
//! is written in identifier order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut String, n: usize) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push(126 as char);
        out.push(126 as char);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

/// Encodes `g` in graph6 (no header, no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let dense = g.dense();
    let n = dense.order();
    let mut out = String::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        let row = &dense.adj[j];
        for i in 0..j {
            acc <<= 1;
            if row.binary_search(&(i as u32)).is_ok() {
                acc |= 1;
            }
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn from_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(bad) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Parse(format!("byte {bad} outside the graph6 range 63..=126")));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        ((six(bytes[1]) << 12) | (six(bytes[2]) << 6) | six(bytes[3]), &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| (acc << 6) | six(b));
        (n, &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Parse(format!(
            "graph6 body for n={n} needs {expected} bytes, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(body[k / 6]);
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(Vertex(i as u32), Vertex(j as u32))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// JSON form of a graph: `{"n": 5, "edges": [[0,1], ...]}` with 0-based
/// indices. `labels` is optional and carries vertex names when present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        let c = g.compacted();
        let has_names = g.vertices().any(|v| g.name(v).is_some());
        GraphJson {
            n: c.order(),
            edges: c.edges().into_iter().map(|e| [e.a.0, e.b.0]).collect(),
            labels: has_names.then(|| c.vertices().map(|v| c.display_name(v)).collect()),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut g = Graph::from_edges(self.n, &edges)?;
        if let Some(labels) = &self.labels {
            if labels.len() != self.n {
                return Err(Error::Parse(format!("{} labels for {} vertices", labels.len(), self.n)));
            }
            for (i, l) in labels.iter().enumerate() {
                g.set_name(Vertex(i as u32), l.clone());
            }
        }
        Ok(g)
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&GraphJson::from_graph(g)).expect("graph JSON serialises")
}

pub fn from_json(s: &str) -> Result<Graph> {
    let parsed: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    parsed.to_graph()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&Graph::new()), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
    }

    #[test]
    fn large_size_prefix() {
        let g = Graph::empty(63);
        let s = to_graph6(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 63 + 0, 63 + 63]);
        assert_eq!(from_graph6(&s).unwrap().order(), 63);
    }

    #[test]
    fn header_and_errors() {
        assert_eq!(from_graph6(">>graph6<<C~\n").unwrap().size(), 6);
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("").is_err());
        assert!(from_graph6("C\u{7f}").is_err());
    }

    #[test]
    fn json_roundtrip_with_labels() {
        let mut g = Graph::path(3);
        g.set_name(Vertex(1), "mid");
        let s = to_json(&g);
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[1,2]],"labels":["0","mid","2"]}"#);
        let back = from_json(&s).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.name(Vertex(1)), Some("mid"));
        assert!(from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
        assert!(from_json(r#"{"n":2,"edges":[[1,1]]}"#).is_err());
    }

    proptest! {
        #[test]
        fn graph6_roundtrip(n in 0usize..80, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for a in 0..n as u32 {
                for b in a + 1..n as u32 {
                    if rng.gen_bool(0.2) {
                        edges.push((a, b));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let s = to_graph6(&g);
            prop_assert_eq!(from_graph6(&s).unwrap(), g);
        }
    }
}
