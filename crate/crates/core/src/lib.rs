//! One-in-Two Matching: instances, exact solvers, the SAT front end, clause
//! gadgets, truth-table classification and the 3-dimensional matching
//! reduction.

pub mod classify;
pub mod error;
pub mod factor;
pub mod fixtures;
pub mod gadgets;
pub mod instance;
pub mod satfront;
pub mod solver;
pub mod table;
pub mod tdm;

pub use error::{Error, Result};
pub use factor::{build_factor_graph, ClauseKind, FactorGraph};
pub use gadgets::GadgetMatrix;
pub use instance::{
    minor_of, validate_solution, OitmInstance, OitmSolution, ValidationReport, Violation,
};
pub use table::TruthTable;
