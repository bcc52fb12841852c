//! Lie conformal algebras as polynomial structure tables.

mod algebra;
pub mod builtins;
mod checks;

pub use algebra::{AlgebraBuilder, AlgebraElement, ConformalAlgebra, GenVec, Grading};
pub use builtins::{block, current, map_virasoro, vir_semidirect_current, virasoro, CommAlgebra, LieTable};
pub use checks::{check_algebra, check_jacobi, check_skew, jacobi_defect, skew_image};
