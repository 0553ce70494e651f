//! Closed-form and numeric monodromy, and their comparison.

mod closed;
mod compare;
mod transport;

pub use closed::{
    closed_form_monodromy, closed_form_monodromy_variant, expected_determinants, group_identities, IdentityReport,
    MonodromyTuple, TupleVariant,
};
pub use compare::{compare_monodromy, ComparisonReport};
pub use transport::{
    check_path, min_gap, nearest_gap, numeric_monodromy, numeric_monodromy_with, transport, Encircled, LoopPath, Piece,
    Tolerances, TransportStats, SAFETY_FRACTION,
};
