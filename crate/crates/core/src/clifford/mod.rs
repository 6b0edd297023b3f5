//! The representation `delta` of `SL_n(O/p^r)` attached to `beta`: the
//! character `psi_beta`, its isotropy group, the extensions `theta`, the
//! representation `sigma_{beta,theta}` at even and odd level, and the
//! induced character.

mod heisenberg;
mod induce;
mod psi;
mod sigma;
mod theta;

pub use heisenberg::{HeisenbergData, Monomial, Polarization};
pub use induce::{dim_delta_formula, dim_delta_value, induce_delta, DeltaCharacter};
pub use psi::{
    is_congruent_to_one, isotropy_group, reduced_code, trace_zero_basis, trace_zero_lift,
    verify_isotropy, verify_product_decomposition, PsiBeta,
};
pub use sigma::{CMatrix, CharValue, SigmaRep};
pub use theta::{centralizer_kernel, theta_agrees, theta_extensions, ThetaChar};

use crate::error::Result;
use crate::matrix::{build_beta, centralizer_beta, sl_enumerate, BetaMatrix, FiniteMatrixGroup};
use crate::params::TameParams;
use crate::residue::AbelianStructure;

/// Everything needed to build `delta` at a concrete instance.
#[derive(Clone, Debug)]
pub struct CliffordInstance {
    pub params: TameParams,
    pub beta: BetaMatrix,
    pub psi: PsiBeta,
    pub group: FiniteMatrixGroup,
    pub centralizer: FiniteMatrixGroup,
    pub structure: AbelianStructure,
    pub isotropy: FiniteMatrixGroup,
}

impl CliffordInstance {
    pub fn new(params: &TameParams, budget: usize) -> Result<Self> {
        let beta = build_beta(params)?;
        let group = sl_enumerate(params.n, beta.p, params.r, budget)?;
        let (centralizer, structure) = centralizer_beta(&beta);
        let psi = PsiBeta::new(&beta);
        let isotropy = isotropy_group(&psi, &group);
        Ok(CliffordInstance { params: params.clone(), beta, psi, group, centralizer, structure, isotropy })
    }

    pub fn thetas(&self) -> Vec<ThetaChar> {
        theta_extensions(&self.psi, &self.centralizer, &self.structure)
    }

    pub fn sigma(&self, theta: &ThetaChar, polarization: Polarization) -> Result<SigmaRep> {
        if self.params.r.is_multiple_of(2) {
            SigmaRep::even(&self.psi, &self.centralizer, &self.structure, theta)
        } else {
            SigmaRep::odd(&self.psi, &self.centralizer, &self.structure, theta, polarization)
        }
    }

    pub fn delta(&self, theta: &ThetaChar) -> Result<DeltaCharacter> {
        let sigma = self.sigma(theta, Polarization::Standard)?;
        induce_delta(&sigma, &self.group, &self.isotropy)
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.isotropy.order()
    }
}
