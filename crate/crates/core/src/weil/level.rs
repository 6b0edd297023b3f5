use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Phase;
use crate::matrix::BetaMatrix;
use crate::residue::{unit_group, AbelianStructure, ResidueRing, TameRing};

/// A character of the unit group of a tame ring.
#[derive(Clone, Debug)]
pub struct UnitCharacter {
    pub structure: AbelianStructure,
    pub exponents: Vec<u64>,
}

impl UnitCharacter {
    pub fn value_code(&self, code: u64) -> Phase {
        self.structure.char_value(&self.exponents, code)
    }

    pub fn value<R: ResidueRing>(&self, ring: &R, x: &[u64]) -> Phase {
        self.value_code(ring.encode(x))
    }

    pub fn order(&self) -> u64 {
        character_order(&self.structure, &self.exponents)
    }
}

fn character_order(s: &AbelianStructure, chi: &[u64]) -> u64 {
    s.factors.iter().zip(chi).fold(1, |acc, (&d, &c)| acc.lcm(&(d / d.gcd(&c))))
}

/// `psi_beta` transported to `1 + p^l O_K`: `1 + p^l x -> tau(tr(x beta) / p^l')`.
pub fn psi_on_units(beta: &BetaMatrix, u: &[u64]) -> Option<Phase> {
    let ring = &beta.ring;
    let params = beta.params();
    let (l, lp) = (params.l(), params.l_prime());
    let pl = beta.p.pow(l);
    let pk = beta.p.pow(lp);
    let d = ring.sub(u, &ring.one());
    if d.iter().any(|&c| c % pl != 0) {
        return None;
    }
    let x: Vec<u64> = d.iter().map(|&c| c / pl).collect();
    let t = beta.to_matrix(&ring.mul(&x, &beta.element)).trace() % pk;
    Some(Phase::new(t as i64, pk))
}

/// A character of `(O_K/p_K^{er})^x` agreeing with `psi_beta` on `1 + p^l O_K`;
/// among all such, one of least order.
pub fn theta_from_beta(beta: &BetaMatrix) -> Result<UnitCharacter> {
    let ring = &beta.ring;
    let structure = unit_group(ring);
    let targets: Vec<(Vec<u64>, Phase)> = ring
        .unit_codes()
        .into_iter()
        .filter_map(|c| {
            psi_on_units(beta, &ring.decode(c)).map(|v| (structure.coords(c).expect("unit").to_vec(), v))
        })
        .collect();
    let best = structure
        .characters()
        .into_par_iter()
        .filter(|chi| targets.iter().all(|(c, v)| structure.char_value_at(chi, c) == *v))
        .min_by_key(|chi| (character_order(&structure, chi), chi.clone()))
        .ok_or_else(|| Error::IllDefined("psi_beta does not extend to the unit group".into()))?;
    Ok(UnitCharacter { structure, exponents: best })
}

/// Stabilizer of `theta` on `1 + p_K^{er-k}` inside `Gal(K/F)`, with the
/// subgroup predicted by the ramification filtration.
#[derive(Clone, Debug, Serialize)]
pub struct LevelBand {
    pub k: u32,
    pub stabilizer: Vec<(usize, usize)>,
    pub expected: Vec<(usize, usize)>,
    pub matches: bool,
}

pub fn level_structure_check(ring: &TameRing, theta: &UnitCharacter) -> Result<Vec<LevelBand>> {
    if !ring.has_action() {
        return Err(Error::NotGalois(format!("e = {} does not divide p^f - 1", ring.e())));
    }
    let (e, f) = (ring.e(), ring.f());
    let er = e as u32 * ring.level();
    let units: Vec<Vec<u64>> = ring.unit_codes().into_iter().map(|c| ring.decode(c)).collect();
    let galois: Vec<(usize, usize)> = (0..e).flat_map(|i| (0..f).map(move |j| (i, j))).collect();
    let top = (e as u32 + 1).min(er - 1);
    (0..=top)
        .map(|k| {
            let band: Vec<&Vec<u64>> = units
                .iter()
                .filter(|u| ring.valuation(&ring.sub(u, &ring.one())) >= er - k)
                .collect();
            let mut stabilizer = Vec::new();
            for &(i, j) in &galois {
                let mut fixed = true;
                for u in &band {
                    if theta.value(ring, &ring.act(i, j, u)?) != theta.value(ring, u) {
                        fixed = false;
                        break;
                    }
                }
                if fixed {
                    stabilizer.push((i, j));
                }
            }
            let expected: Vec<(usize, usize)> = match (k as usize).cmp(&e) {
                std::cmp::Ordering::Less => galois.clone(),
                std::cmp::Ordering::Equal => (0..e).map(|i| (i, 0)).collect(),
                std::cmp::Ordering::Greater => vec![(0, 0)],
            };
            Ok(LevelBand { k, matches: stabilizer == expected, stabilizer, expected })
        })
        .collect()
}
