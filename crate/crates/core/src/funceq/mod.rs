//! Intertwiner functional equations solved by exact coefficient matching.

mod solver;
mod table;

pub use solver::{
    bcsx_variant_solver, degree_offset, solve_homogeneous, solve_intertwiner, solve_linear, unknown_monomials,
    BcsxInstance, DegreeOffset, FuncEqInstance, SolutionBasis,
};
pub use table::{
    solution_table, verify_solution_table, CaseKind, FreeParams, RowResult, TableRow, TableSamples, TableVerification,
};
