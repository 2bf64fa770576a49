//! Exact tools for defective correspondence coloring: covers, a
//! defect-capped solver, gadget constructions, the twisted/wedged
//! classification and a constructive outerplanar colorer.

pub mod classify;
pub mod cover;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod outerplanar;
pub mod random;
pub mod solver;

pub use cover::{Color, Coloring, Cover, CoverError};
pub use graph::{Graph, GraphError, VertexId};
pub use solver::{Certificate, DefectConstraint, SolverError};
