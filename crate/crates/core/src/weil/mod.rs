//! The Galois side: the metacyclic `Gal(K/F)`, the unramified relative Weil
//! group with its induced projective representation, the centralizer
//! `A_phi`, and the inertia-fixed part of the adjoint representation.

mod centralizer;
mod inertia;
mod level;
mod metacyclic;
mod unramified;

pub use centralizer::{centralizer_in_pgl, CentralizerCount};
pub use inertia::{det_one_minus, inertia_fixed_space, InertiaFixedSpace};
pub use level::{level_structure_check, psi_on_units, theta_from_beta, LevelBand, UnitCharacter};
pub use metacyclic::{Abelianization, MetacyclicGroup};
pub use unramified::{projective_ratio, BaseCharacter, CMatrix, UnramifiedWeilModel, WeilElement, WeilTheta};
