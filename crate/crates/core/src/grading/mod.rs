//! Structure of ℤ⁺-graded algebras with a Virasoro element in grade zero.

mod profile;
mod scan;

pub use profile::{
    check_b_linear, profile_from_table, profile_of, read_affine, split_i0_i1, DegChoice, GradedProfile, GradedTable,
};
pub use scan::{rational_grid, scan_a1, scan_a1_with, scan_grid, ScanOptions, ScanResult};
