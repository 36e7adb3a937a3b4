//! Exact solvers and verification oracles.

mod assignment;
mod matching;
mod one_in_four;
mod one_in_two;

pub use assignment::{min_cost_assignment, Assignment};
pub use matching::{max_matching, BipartiteGraph, Matching};
pub use one_in_four::{one_in_four_bruteforce, one_in_four_collapse, one_in_four_optimum};
pub use one_in_two::{
    brute_force_one_in_two, solve_one_in_two, solve_one_in_two_with, OneInTwoOutcome, SolverConfig,
};

pub(crate) use one_in_two::permutations;
