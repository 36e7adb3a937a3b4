//! Small reference instances used by tests, examples and the demo.

use crate::instance::{block_of, OitmInstance};

/// Optimal cost of [`one_in_two_example`].
pub const ONE_IN_TWO_EXAMPLE_OPTIMUM: i64 = 5;

/// 6x6 assignment cost matrix.
pub const ASSIGNMENT_EXAMPLE: [[i64; 6]; 6] = [
    [3, 7, 2, 4, 1, 1],
    [1, 6, 1, 7, 8, 2],
    [3, 3, 2, 5, 6, 3],
    [4, 2, 8, 6, 2, 5],
    [5, 5, 1, 6, 3, 4],
    [4, 9, 8, 1, 4, 3],
];

/// Budget attached to [`ASSIGNMENT_EXAMPLE`].
pub const ASSIGNMENT_EXAMPLE_BUDGET: i64 = 15;

/// The permutation shown alongside [`ASSIGNMENT_EXAMPLE`] (1-based), cost 13.
pub const ASSIGNMENT_EXAMPLE_SHOWN: [usize; 6] = [3, 1, 2, 5, 6, 4];

/// Optimal cost of [`ASSIGNMENT_EXAMPLE`].
pub const ASSIGNMENT_EXAMPLE_OPTIMUM: i64 = 9;

/// The 6x6 weighted One-in-Two example with budget 10.
pub fn one_in_two_example() -> OitmInstance {
    let rows: [[i64; 6]; 6] = [
        [0, 0, 2, 4, 1, 1],
        [0, 0, 1, 7, 8, 2],
        [3, 3, 0, 0, 6, 3],
        [4, 2, 0, 0, 2, 5],
        [5, 5, 1, 6, 0, 0],
        [4, 9, 8, 1, 0, 0],
    ];
    let mut inst = OitmInstance::weighted(3, 10).expect("three blocks");
    for (i, row) in rows.iter().enumerate() {
        for (j, &w) in row.iter().enumerate() {
            if block_of(i + 1) != block_of(j + 1) {
                inst.insert_weighted(i + 1, j + 1, w)
                    .expect("off-block entry");
            }
        }
    }
    inst
}
