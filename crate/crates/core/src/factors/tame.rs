use serde::Serialize;

use super::conductor::{artin_conductor, ConductorBreakdown};
use crate::error::{Error, Result};
use crate::exact::{Poly, Rational, RationalFunction};
use crate::params::TameParams;
use crate::weil::{det_one_minus, inertia_fixed_space, MetacyclicGroup};

/// Adjoint factors of the tame parameter `phi = Ind theta`.
#[derive(Clone, Debug, Serialize)]
pub struct TameFactors {
    pub frobenius: Vec<Vec<i64>>,
    /// `det(1 - Q Ad(Fr))` on the inertia-fixed space, coefficients in `Q = q^{-s}`.
    pub l_inverse: Vec<Rational>,
    #[serde(serialize_with = "super::ser_rf")]
    pub l_at_0: RationalFunction,
    #[serde(serialize_with = "super::ser_rf")]
    pub l_at_1: RationalFunction,
    pub conductor: ConductorBreakdown,
    /// `|eps(phi, Ad, 0)| = q^{a/2}`.
    pub eps_exponent: i64,
    #[serde(serialize_with = "super::ser_rf")]
    pub gamma_abs: RationalFunction,
}

/// `P(q^{-s})` for `s` in `{0, 1}`.
fn at_s(p: &Poly, s: i64) -> RationalFunction {
    RationalFunction::from_poly(p.clone()).compose(&RationalFunction::var_pow(-s))
}

pub fn tame_parameter_factors(params: &TameParams) -> Result<TameFactors> {
    let group = MetacyclicGroup::from_params(params)?;
    let fixed = inertia_fixed_space(&group);
    let l_inv = det_one_minus(&fixed.frobenius);
    let l_at_0 = at_s(&l_inv, 0).inv()?;
    let l_at_1 = at_s(&l_inv, 1).inv()?;
    let conductor = artin_conductor(params, None)?;
    let twice = &conductor.total;
    if !twice.is_integer() || twice.to_integer() % 2u8 != 0u8.into() {
        return Err(Error::NonIntegral(format!("a/2 = {}/2", conductor.total)));
    }
    let eps_exponent = i64::try_from(twice.to_integer() / 2).map_err(|_| Error::NonIntegral("conductor".into()))?;
    let gamma_abs = &(&RationalFunction::var_pow(eps_exponent) * &l_at_1) / &l_at_0;
    Ok(TameFactors {
        frobenius: fixed.frobenius,
        l_inverse: l_inv.coeffs().to_vec(),
        l_at_0,
        l_at_1,
        conductor,
        eps_exponent,
        gamma_abs,
    })
}
