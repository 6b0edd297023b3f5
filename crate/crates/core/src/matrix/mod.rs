//! Matrices over `Z/p^r`, the groups `SL_n(Z/p^r)` and their congruence
//! subgroups, the element `beta` and its centralizer, and the Cartan
//! decomposition over the `p`-adic integers.

mod beta;
mod cartan;
mod congruence;
mod group;
mod matmod;

pub use beta::{
    build_beta, centralizer_beta, companion, integer_charpoly, shintani_conditions, tame_ring_at, BetaMatrix,
    BETA_SEARCH_BOUND,
};
pub use cartan::{cartan_decompose, is_integral, valuation, Cartan, RatMatrix};
pub use congruence::{congruence_exp, congruence_exp_odd, congruence_log, level_split};
pub use group::{
    group_order, sl_enumerate, sl_generators, Classes, FiniteMatrixGroup, DEFAULT_BUDGET,
};
pub use matmod::{fp, poly_at_matrix, MatMod};
