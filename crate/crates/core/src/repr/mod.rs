//! Conformal modules: axiom checks, rank one constructors, kernels and torsion.

mod module;
mod rank_one;
mod snf;

pub use module::{check_module, module_defect, ActionMatrix, ConformalModule, ModuleElement};
pub use rank_one::{
    action_kernel, find_submodule, rank_one_theorem_module, rank_one_vir, read_a1, ActionKernel, RankOneVir,
    TheoremCase,
};
pub use snf::{
    divisibility_chain_holds, is_diagonal, is_unimodular, smith_normal_form, torsion_split, PolyMatrix, SmithForm,
    TorsionSplit,
};
