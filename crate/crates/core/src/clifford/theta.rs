use serde::Serialize;

use super::psi::{is_congruent_to_one, PsiBeta};
use crate::exact::Phase;
use crate::matrix::{FiniteMatrixGroup, MatMod};
use crate::residue::AbelianStructure;

/// A character of the abelian group `G_beta(O/p^r)`, given by exponents
/// against the invariant-factor generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaChar {
    pub exponents: Vec<u64>,
    /// Agrees with `psi_beta` on `G_beta(O/p^r) ∩ G(p^l/p^r)` (checked elementwise).
    pub agrees: bool,
}

impl ThetaChar {
    pub fn value(&self, structure: &AbelianStructure, g: &MatMod) -> Option<Phase> {
        structure.coords(g.encode()).map(|c| structure.char_value_at(&self.exponents, c))
    }

    pub fn trivial(structure: &AbelianStructure) -> Self {
        ThetaChar { exponents: vec![0; structure.factors.len()], agrees: false }
    }
}

/// `G_beta(O/p^r) ∩ G(p^k/p^r)`.
pub fn centralizer_kernel(centralizer: &FiniteMatrixGroup, pk: u64) -> Vec<MatMod> {
    centralizer.iter().filter(|g| is_congruent_to_one(g, pk)).collect()
}

/// All characters of `G_beta(O/p^r)` extending `psi_beta` from the
/// intersection with `G(p^l/p^r)`.
pub fn theta_extensions(
    psi: &PsiBeta,
    centralizer: &FiniteMatrixGroup,
    structure: &AbelianStructure,
) -> Vec<ThetaChar> {
    let meet = centralizer_kernel(centralizer, psi.p.pow(psi.l));
    let targets: Vec<(Vec<u64>, Phase)> = meet
        .iter()
        .map(|k| {
            let c = structure.coords(k.encode()).expect("element of the centralizer").to_vec();
            (c, psi.value(k).expect("kernel element"))
        })
        .collect();
    structure
        .characters()
        .into_iter()
        .filter(|chi| targets.iter().all(|(c, v)| structure.char_value_at(chi, c) == *v))
        .map(|exponents| ThetaChar { exponents, agrees: true })
        .collect()
}

/// Elementwise check of the compatibility flag.
pub fn theta_agrees(
    theta: &ThetaChar,
    psi: &PsiBeta,
    centralizer: &FiniteMatrixGroup,
    structure: &AbelianStructure,
) -> bool {
    centralizer_kernel(centralizer, psi.p.pow(psi.l))
        .iter()
        .all(|k| theta.value(structure, k) == psi.value(k))
}
