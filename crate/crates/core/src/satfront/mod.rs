//! SAT front end: DIMACS input, the One-in-Two encoding and decoding.

mod dimacs;
mod encode;

pub use dimacs::{parse_dimacs, Cnf};
pub use encode::{decode, encode, stats, EdgeBlocks, IndexMap, SizeStats};
