//! Annihilation Lie algebras and the weight theory of `L_(1)`.

mod algebra;
mod weights;

pub use algebra::{check_annih_lie, AnnihAlgebra, Combination, Symbol};
pub use weights::{
    check_correspondence, expected_rank_one_vector, module_action_n, proportional, reconstruct_action, weight_spaces,
    WeightReport, WeightSpaces,
};
