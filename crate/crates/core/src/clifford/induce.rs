use std::collections::HashMap;

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::sigma::{CharValue, SigmaRep};
use crate::error::{Error, Result};
use crate::exact::{Cyclotomic, Phase, Rational, RationalFunction, RootSum};
use crate::matrix::{FiniteMatrixGroup, MatMod};
use crate::params::TameParams;

/// The character of `delta = Ind sigma`, on the conjugacy classes of the full group.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaCharacter {
    pub dim: u64,
    pub index: u64,
    pub sigma_dim: u64,
    /// `<chi_delta, chi_delta>`.
    pub norm: Rational,
    pub irreducible: bool,
    /// Multiplicity of `psi_beta` in the restriction to `G(p^l/p^r)`.
    pub multiplicity: Rational,
    /// The same multiplicity is found for the sampled conjugates `g * psi_beta`.
    pub orbit_consistent: bool,
    #[serde(skip)]
    pub class_values: Vec<Cyclotomic>,
}

/// Induces `sigma` from the isotropy group `iso` to `g` using class sums:
/// `chi(K) = |G| / (|K| |J|) * sum_{w in K ∩ J} chi_sigma(w)`.
pub fn induce_delta(sigma: &SigmaRep, g: &FiniteMatrixGroup, iso: &FiniteMatrixGroup) -> Result<DeltaCharacter> {
    let classes = g.classes();
    let (n, m) = (g.n(), g.modulus());
    let values: Vec<(usize, CharValue)> = iso
        .codes()
        .par_iter()
        .map(|&c| {
            let z = MatMod::decode(n, m, c);
            let k = classes.class_of(c).expect("isotropy inside the group");
            sigma.trace(&z).map(|v| (k, v))
        })
        .collect::<Result<_>>()?;
    let order = values.iter().fold(1u64, |acc, (_, v)| match v {
        CharValue::Root(ph) => acc.lcm(&ph.den()),
        CharValue::Value(_) => acc,
    });
    let mut roots: HashMap<usize, RootSum> = HashMap::new();
    let mut general: HashMap<usize, Cyclotomic> = HashMap::new();
    for (k, v) in values {
        match v {
            CharValue::Root(ph) => roots.entry(k).or_insert_with(|| RootSum::new(order)).add_phase(ph, 1),
            CharValue::Value(c) => {
                let e = general.entry(k).or_insert_with(Cyclotomic::zero);
                *e = &*e + &c;
            }
        }
    }
    let (go, jo) = (g.order() as i64, iso.order() as i64);
    let mut class_values = vec![Cyclotomic::zero(); classes.count()];
    for (k, cv) in class_values.iter_mut().enumerate() {
        let mut s = general.remove(&k).unwrap_or_else(Cyclotomic::zero);
        if let Some(r) = roots.get(&k) {
            s = &s + &r.to_cyclotomic();
        }
        *cv = s.scale(&Rational::new(go.into(), (classes.sizes[k] as i64 * jo).into()));
    }
    let mut norm_sum = Cyclotomic::zero();
    for (k, v) in class_values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let sq = (v * &v.conj()).scale(&Rational::from_integer((classes.sizes[k] as i64).into()));
        norm_sum = &norm_sum + &sq;
    }
    let norm = norm_sum.to_rational().ok_or_else(|| Error::NonIntegral("<chi, chi>".into()))?
        / Rational::from_integer(go.into());
    let id_class = classes.class_of(MatMod::identity(n, m).encode()).expect("identity");
    let dim = class_values[id_class]
        .to_rational()
        .filter(|d| d.is_integer())
        .and_then(|d| d.to_integer().to_u64())
        .ok_or_else(|| Error::NonIntegral(format!("dim = {}", class_values[id_class])))?;

    let psi = &sigma.psi;
    let kernel = psi.kernel_elements();
    let restriction = |conj: Option<(&MatMod, &MatMod)>| -> Result<Rational> {
        let mut counts: HashMap<(usize, Phase), i64> = HashMap::new();
        for h in &kernel {
            let v = match conj {
                None => psi.value(h),
                Some((x, xi)) => psi.conjugate_value(x, xi, h),
            }
            .expect("kernel element");
            let k = classes.class_of(h.encode()).expect("kernel inside the group");
            *counts.entry((k, v)).or_default() += 1;
        }
        let mut acc = Cyclotomic::zero();
        for ((k, v), c) in counts {
            let term = class_values[k].mul_phase(-v).scale(&Rational::from_integer(c.into()));
            acc = &acc + &term;
        }
        acc.to_rational()
            .map(|r| r / Rational::from_integer((kernel.len() as i64).into()))
            .ok_or_else(|| Error::NonIntegral("multiplicity".into()))
    };
    let multiplicity = restriction(None)?;
    let mut orbit_consistent = true;
    let mut seen_cosets = 0;
    for x in g.iter() {
        if seen_cosets >= 3 {
            break;
        }
        if iso.contains(&x) {
            continue;
        }
        seen_cosets += 1;
        let xi = x.inverse(g.p()).ok_or(Error::Singular)?;
        orbit_consistent &= restriction(Some((&x, &xi)))? == multiplicity;
    }
    let index = (g.order() / iso.order()) as u64;
    Ok(DeltaCharacter {
        dim,
        index,
        sigma_dim: sigma.dim as u64,
        irreducible: norm == Rational::from_integer(1.into()),
        norm,
        multiplicity,
        orbit_consistent,
        class_values,
    })
}

/// `dim delta = q^(r n(n-1)/2) / normidx * prod_{k=1}^n (1 - q^-k) / (1 - q^-f)`.
pub fn dim_delta_formula(params: &TameParams, normidx: u64) -> Result<RationalFunction> {
    let n = params.n as i64;
    let mut out = RationalFunction::var_pow(params.r as i64 * n * (n - 1) / 2);
    out = &out * &RationalFunction::constant(Rational::new(1.into(), (normidx as i64).into()));
    for k in 1..=n {
        out = &out * &RationalFunction::one_minus_inv_pow(k);
    }
    out.checked_div(&RationalFunction::one_minus_inv_pow(params.f as i64))
}

/// The formula evaluated at the concrete prime, required to be a positive integer.
pub fn dim_delta_value(params: &TameParams, normidx: u64) -> Result<u64> {
    let p = params.prime()?;
    let v = dim_delta_formula(params, normidx)?.eval_int(p as i64)?;
    v.is_integer()
        .then(|| v.to_integer().to_u64())
        .flatten()
        .ok_or_else(|| Error::NonIntegral(format!("dim delta = {v}")))
}
