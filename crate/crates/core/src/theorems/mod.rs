//! Verification suites: cohomology tables and the structural lemmas.

pub mod les;
pub mod structural;
pub mod tables;

pub use les::{fixed_subrep, les_check, LesResult};
pub use structural::{
    convolve, default_kunneth_cases, default_les_cases, default_split_cases, geometric_check, kunneth_check,
    split_additivity_check,
};
pub use tables::{
    compare_dims, default_reflection_groups, reflection_expected, trivial_expected, verify_reflection_table,
    verify_trivial_table, TableComparison, Verdict,
};
