//! Maximum external domination in graphs, external representation in
//! approval elections and OPT-EXT(0,1) object allocation.
//!
//! `ext(A)` counts the vertices within `k` hops of the dominator set `A`
//! that are not themselves in `A`. The crate provides the greedy and
//! two-branch approximation algorithms, the tree decomposition and auxiliary
//! graph behind the latter, committee rules for elections, exhaustive
//! oracles, and a certification harness that checks approximation ratios
//! against the oracles.

pub mod bounds;
pub mod decomposition;
pub mod domination;
pub mod elections;
pub mod error;
pub mod generators;
pub mod graph;
pub mod matching;
pub mod optext;
pub mod oracle;

pub use bounds::BoundName;
pub use decomposition::{algorithm2, algorithm2_detailed, build_auxiliary_graph, decompose_tree};
pub use domination::{dom_count, ext_count, greedy_dominators, DominationSolution, TieBreak};
pub use elections::{ElectionInstance, Setting};
pub use error::{Error, Result};
pub use graph::{DirectedGraph, RootedTree, UndirectedGraph};
pub use optext::{reduce_and_solve, OptExtInstance};
