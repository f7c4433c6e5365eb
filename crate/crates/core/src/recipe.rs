//! Replayable construction scripts.
//!
//! A recipe is a JSON object with a `steps` array. Each step builds one graph,
//! either from scratch or from graphs made by earlier steps (referenced by
//! step index). The result of the recipe is the graph of the last step.
//!
//! ```json
//! {"steps": [
//!   {"op": "complete", "k": 3},
//!   {"op": "hajos_merge", "first": 0, "second": 0, "edge1": [0, 1], "edge2": [0, 1]}
//! ]}
//! ```
//!
//! Vertices are given by identifier or by name (`"X"`, `"3A"`); identifiers
//! are those of the referenced step's graph, which are not compacted.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::constructions::{
    build_fig4_graph, build_gn, build_gn_prime, dhgo_compose, hajos_merge, ore_merge, vertex_identify, vertex_split,
    MergeSpec, OreSpec, Orientation, SplitSpec,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexPair};
use crate::io::{from_graph6, GraphJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexRef {
    Id(u32),
    Name(String),
}

impl VertexRef {
    fn resolve(&self, g: &Graph) -> Result<Vertex> {
        match self {
            VertexRef::Id(i) => {
                let v = Vertex(*i);
                if g.has_vertex(v) {
                    Ok(v)
                } else {
                    Err(Error::UnknownVertex(v))
                }
            }
            VertexRef::Name(name) => g.vertex_named(name).ok_or_else(|| Error::spec(format!("no vertex named {name:?}"))),
        }
    }
}

fn resolve_pair(g: &Graph, p: &[VertexRef; 2]) -> Result<VertexPair> {
    VertexPair::new(p[0].resolve(g)?, p[1].resolve(g)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    Complete { k: usize },
    Cycle { n: usize },
    Path { n: usize },
    Graph { graph: GraphJson },
    Graph6 { code: String },
    Gn { n: usize },
    GnPrime { n: usize },
    Fig4,
    HajosMerge {
        first: usize,
        second: usize,
        edge1: [VertexRef; 2],
        edge2: [VertexRef; 2],
        #[serde(default)]
        orientation: Orientation,
    },
    Identify { source: usize, pairs: Vec<[VertexRef; 2]> },
    OreMerge {
        first: usize,
        second: usize,
        edge1: [VertexRef; 2],
        edge2: [VertexRef; 2],
        #[serde(default)]
        orientation: Orientation,
        #[serde(default)]
        mu: Vec<[VertexRef; 2]>,
    },
    Split { source: usize, vertex: VertexRef, side: Vec<VertexRef> },
    Dhgo { first: usize, x1: VertexRef, side: Vec<VertexRef>, second: usize, edge2: [VertexRef; 2] },
}

impl Step {
    pub fn name(&self) -> &'static str {
        match self {
            Step::Complete { .. } => "complete",
            Step::Cycle { .. } => "cycle",
            Step::Path { .. } => "path",
            Step::Graph { .. } => "graph",
            Step::Graph6 { .. } => "graph6",
            Step::Gn { .. } => "gn",
            Step::GnPrime { .. } => "gn_prime",
            Step::Fig4 => "fig4",
            Step::HajosMerge { .. } => "hajos_merge",
            Step::Identify { .. } => "identify",
            Step::OreMerge { .. } => "ore_merge",
            Step::Split { .. } => "split",
            Step::Dhgo { .. } => "dhgo",
        }
    }

    fn run(&self, done: &[Graph]) -> Result<Graph> {
        let get = |i: usize| {
            done.get(i).ok_or_else(|| Error::spec(format!("step {i} is not an earlier step (only {} so far)", done.len())))
        };
        let set = |g: &Graph, vs: &[VertexRef]| vs.iter().map(|v| v.resolve(g)).collect::<Result<BTreeSet<_>>>();
        Ok(match self {
            Step::Complete { k } => Graph::complete(*k),
            Step::Cycle { n } if *n < 3 => return Err(Error::spec("a cycle needs n >= 3")),
            Step::Cycle { n } => Graph::cycle(*n),
            Step::Path { n } => Graph::path(*n),
            Step::Graph { graph } => graph.to_graph()?,
            Step::Graph6 { code } => from_graph6(code)?,
            Step::Gn { n } => build_gn(*n)?,
            Step::GnPrime { n } => build_gn_prime(*n)?,
            Step::Fig4 => build_fig4_graph().0,
            Step::HajosMerge { first, second, edge1, edge2, orientation } => {
                let (g1, g2) = (get(*first)?, get(*second)?);
                let spec = MergeSpec { edge1: resolve_pair(g1, edge1)?, edge2: resolve_pair(g2, edge2)?, orientation: *orientation };
                hajos_merge(g1, g2, &spec)?
            }
            Step::Identify { source, pairs } => {
                let g = get(*source)?;
                let pairs = pairs.iter().map(|p| resolve_pair(g, p)).collect::<Result<Vec<_>>>()?;
                vertex_identify(g, &pairs)?
            }
            Step::OreMerge { first, second, edge1, edge2, orientation, mu } => {
                let (g1, g2) = (get(*first)?, get(*second)?);
                let merge = MergeSpec { edge1: resolve_pair(g1, edge1)?, edge2: resolve_pair(g2, edge2)?, orientation: *orientation };
                let mu = mu.iter().map(|[a, b]| Ok((a.resolve(g1)?, b.resolve(g2)?))).collect::<Result<Vec<_>>>()?;
                ore_merge(g1, g2, &OreSpec { merge, mu })?
            }
            Step::Split { source, vertex, side } => {
                let g = get(*source)?;
                vertex_split(g, &SplitSpec { vertex: vertex.resolve(g)?, side: set(g, side)? })?.graph
            }
            Step::Dhgo { first, x1, side, second, edge2 } => {
                let (g1, g2) = (get(*first)?, get(*second)?);
                dhgo_compose(g1, x1.resolve(g1)?, &set(g1, side)?, g2, resolve_pair(g2, edge2)?)?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Recipe {
    pub steps: Vec<Step>,
}

impl Recipe {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("recipe: {e}")))
    }

    /// Runs every step and returns all intermediate graphs.
    pub fn run_all(&self) -> Result<Vec<Graph>> {
        if self.steps.is_empty() {
            return Err(Error::spec("the recipe has no steps"));
        }
        let mut done = Vec::with_capacity(self.steps.len());
        for (i, step) in self.steps.iter().enumerate() {
            let g = step.run(&done).map_err(|e| Error::Recipe { step: i, op: step.name(), source: Box::new(e) })?;
            done.push(g);
        }
        Ok(done)
    }

    /// The graph of the last step.
    pub fn run(&self) -> Result<Graph> {
        Ok(self.run_all()?.pop().expect("recipe has steps"))
    }
}
