//! Hajós-type graph constructions and the homology of neighbourhood
//! complexes.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`], [`coloring`], [`canon`], [`io`]: the graph type, structural
//!   queries, exact chromatic numbers, canonical forms and graph6/JSON I/O.
//! - [`constructions`]: Hajós and Ore merges, vertex identification,
//!   Urquhart composition, vertex splits, DHGO composition and the `G_n`
//!   family.
//! - [`complex`]: neighbourhood complexes, face enumeration and reduced Betti
//!   numbers over GF(2) or the rationals.
//! - [`morse`]: acyclic matchings on face posets and the explicit matchings
//!   for `N(G_n)` and `N(G_n')`.
//! - [`generators`]: the CRA and URA samplers and `G(n, p)`.
//! - [`recipe`], [`experiment`], [`verify`]: replayable construction recipes,
//!   experiment summaries and property suites used by the command line tool.

pub mod canon;
pub mod coloring;
pub mod complex;
pub mod constructions;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod morse;
pub mod recipe;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Distance, Graph, Vertex, VertexPair};
