//! Residue rings `Z/p^r`, Galois rings and tamely ramified extensions of
//! them, with Galois action, norm, trace and unit-group structure.

mod abelian;
mod base;
mod galois;
mod tame;
pub mod zmod;

pub use abelian::AbelianStructure;
pub use base::{BaseRing, ResidueRing};
pub use galois::{galois_modulus, GaloisRing};
pub use tame::TameRing;

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Invariant-factor decomposition of the unit group, by enumeration.
pub fn unit_group<R: ResidueRing>(ring: &R) -> AbelianStructure {
    let units = ring.unit_codes();
    let one = ring.encode(&ring.one());
    AbelianStructure::from_elements(&units, one, |a, b| {
        ring.encode(&ring.mul(&ring.decode(a), &ring.decode(b)))
    })
}

/// Norm and trace down to `Z/p^r`.
pub fn norm_trace(ring: &TameRing, x: &[u64]) -> Result<(u64, u64)> {
    Ok((ring.norm(x)?, ring.trace(x)?))
}

/// The set of norms of units, as residues mod `p^r`.
pub fn norm_image(ring: &TameRing) -> Result<HashSet<u64>> {
    ring.action_check()?;
    let units = ring.unit_codes();
    let image: HashSet<u64> = units
        .par_iter()
        .map(|&c| ring.norm(&ring.decode(c)).expect("action checked"))
        .collect();
    Ok(image)
}

/// `(O_F^x : N(O_K^x))`, computed as the index of the norm image in `(Z/p^r)^x`.
pub fn norm_index(ring: &TameRing) -> Result<u64> {
    let image = norm_image(ring)?;
    let units = ring.galois_ring().base().unit_count();
    if !units.is_multiple_of(image.len() as u64) {
        return Err(Error::IllDefined("norm image is not a subgroup".into()));
    }
    Ok(units / image.len() as u64)
}

pub fn teichmuller(gr: &GaloisRing, x: &[u64]) -> Result<Vec<u64>> {
    gr.teichmuller(x)
}

impl TameRing {
    fn action_check(&self) -> Result<()> {
        if self.has_action() {
            Ok(())
        } else {
            Err(Error::NotGalois(format!(
                "e = {} does not divide p^f - 1",
                self.e()
            )))
        }
    }
}
