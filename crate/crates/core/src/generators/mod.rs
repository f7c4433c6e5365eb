//! Random graph generators: the constructible random algorithm (CRA), the
//! Urquhart random algorithm (URA) and `G(n, p)`.
//!
//! Randomness comes from ChaCha8 seeded with the master seed; independent
//! samples use independent streams of that generator, so a batch depends only
//! on its configuration and seed, never on the number of worker threads.

mod cra;
mod ura;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex, VertexPair};

pub use cra::{cra, replay_cra, CraConfig, CraOp};
pub use ura::{ura, UraConfig, UraRecipe};

/// One generated graph with the record needed to rebuild it.
#[derive(Clone, Debug)]
pub struct Sample<P> {
    pub graph: Graph,
    pub provenance: P,
    /// CRA: the round that produced the graph. URA: the attempt index, which
    /// is also the random stream used.
    pub attempt: usize,
}

/// Pairwise non-isomorphic samples in generation order.
#[derive(Clone, Debug)]
pub struct SampleBatch<P> {
    pub samples: Vec<Sample<P>>,
    /// Rounds (CRA) or attempts (URA) consumed.
    pub attempts: usize,
    /// Candidates rejected as isomorphic to an earlier graph.
    pub duplicates: usize,
    /// URA attempts abandoned because no valid Ore merge was found.
    pub discarded: usize,
}

impl<P> SampleBatch<P> {
    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.samples.iter().map(|s| &s.graph)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Generator for stream `stream` of the master seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Erdős–Rényi `G(n, p)`: each of the `n choose 2` edges independently.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    gnp_with(n, p, &mut stream_rng(seed, 0))
}

pub fn gnp_with(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let p = p.clamp(0.0, 1.0);
    let mut g = Graph::empty(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if rng.gen_bool(p) {
                g.insert_edge(Vertex(a), Vertex(b));
            }
        }
    }
    g
}

/// Uniform edge of `g` with a uniform orientation, or `None` without edges.
pub(crate) fn random_edge(g: &Graph, rng: &mut impl Rng) -> Option<VertexPair> {
    let edges = g.edges();
    if edges.is_empty() {
        return None;
    }
    let e = edges[rng.gen_range(0..edges.len())];
    Some(if rng.gen_bool(0.5) { e } else { e.reversed() })
}

/// Uniform unordered pair of distinct nonadjacent vertices.
pub(crate) fn random_non_edge(g: &Graph, rng: &mut impl Rng) -> Option<VertexPair> {
    let vs: Vec<Vertex> = g.vertices().collect();
    if vs.len() < 2 || g.is_complete() {
        return None;
    }
    // rejection sampling is uniform over unordered pairs; fall back to a
    // full scan for dense graphs
    for _ in 0..64 {
        let (a, b) = (vs[rng.gen_range(0..vs.len())], vs[rng.gen_range(0..vs.len())]);
        if a != b && !g.has_edge(a, b) {
            return Some(VertexPair { a: a.min(b), b: a.max(b) });
        }
    }
    let non = g.non_edges();
    Some(non[rng.gen_range(0..non.len())])
}
