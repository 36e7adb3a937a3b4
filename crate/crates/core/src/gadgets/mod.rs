//! Clause gadgets: matrix encodings whose minors realize truth tables.

mod dictionary;
mod families;
mod matrix;

pub use dictionary::{annotation_of, apply_gauge_to_matrix, DictEntry, Dictionary};
pub use families::{binary_distinct, binary_threshold, nae_clause, range_t, sat_clause, two_false};
pub use matrix::{
    embed_gadget, negate_literal, single_clause_instance, truth_table_of, GadgetMatrix,
    MAX_TABLE_ARITY,
};
