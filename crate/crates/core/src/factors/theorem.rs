use rayon::prelude::*;
use serde::Serialize;

use super::principal::principal_parameter_factors;
use super::tame::tame_parameter_factors;
use crate::clifford::dim_delta_formula;
use crate::error::Result;
use crate::exact::{rf_equal, Rational, RationalFunction};
use crate::params::TameParams;
use crate::weil::MetacyclicGroup;

/// The formal degree with respect to the Euler-Poincaré measure, by the
/// closed form and through `dim delta`.
#[derive(Clone, Debug, Serialize)]
pub struct FormalDegree {
    #[serde(serialize_with = "super::ser_rf")]
    pub closed_form: RationalFunction,
    #[serde(serialize_with = "super::ser_rf")]
    pub via_dim_delta: RationalFunction,
    pub consistent: bool,
    /// `r >= 2e`; the closed form is only claimed under it.
    pub hypothesis: bool,
}

/// `q^{(r-1)n(n-1)/2} / normidx * (1 - q^{-n}) / (1 - q^{-f})`.
pub fn formal_degree(params: &TameParams, normidx: u64) -> Result<FormalDegree> {
    let n = params.n as i64;
    let c = RationalFunction::constant(Rational::new(1.into(), (normidx as i64).into()));
    let closed_form = &(&(&RationalFunction::var_pow((params.r as i64 - 1) * n * (n - 1) / 2) * &c)
        * &RationalFunction::one_minus_inv_pow(n))
        / &RationalFunction::one_minus_inv_pow(params.f as i64);
    // the Euler-Poincaré constant of SL_n(O)
    let ep = (1..n).fold(RationalFunction::var_pow(n * (n - 1) / 2), |acc, k| &acc * &RationalFunction::one_minus_inv_pow(k));
    let via_dim_delta = dim_delta_formula(params, normidx)?.checked_div(&ep)?;
    Ok(FormalDegree {
        consistent: rf_equal(&closed_form, &via_dim_delta),
        closed_form,
        via_dim_delta,
        hypothesis: params.supercuspidal_hypothesis(),
    })
}

/// `(1/|A_phi|) |gamma(phi) / gamma(phi_0)|` against the formal degree.
#[derive(Clone, Debug, Serialize)]
pub struct HiiCheck {
    pub holds: bool,
    pub a_phi: u64,
    #[serde(serialize_with = "super::ser_rf")]
    pub gamma_phi: RationalFunction,
    #[serde(serialize_with = "super::ser_rf")]
    pub gamma_phi0: RationalFunction,
    #[serde(serialize_with = "super::ser_rf")]
    pub lhs: RationalFunction,
    #[serde(serialize_with = "super::ser_rf")]
    pub rhs: RationalFunction,
    /// The closed form `q^{rn(n-1)/2} f (1 - q^{-n}) / (1 - q^{-f})` sometimes quoted
    /// for `|gamma(phi)|` agrees with the assembled value.
    pub quoted_gamma_agrees: bool,
}

pub fn verify_hii(params: &TameParams, normidx: u64) -> Result<HiiCheck> {
    let a_phi = MetacyclicGroup::from_params(params)?.a_theta_count() as u64;
    let principal = principal_parameter_factors(params.n)?;
    let tame = tame_parameter_factors(params)?;
    let inv_a = RationalFunction::constant(Rational::new(1.into(), (a_phi as i64).into()));
    let lhs = &(&tame.gamma_abs / &principal.gamma_abs) * &inv_a;
    let rhs = formal_degree(params, normidx)?.closed_form;
    let (n, f) = (params.n as i64, params.f as i64);
    let quoted = &(&(&RationalFunction::var_pow(params.r as i64 * n * (n - 1) / 2) * &RationalFunction::from_int(f))
        * &RationalFunction::one_minus_inv_pow(n))
        / &RationalFunction::one_minus_inv_pow(f);
    Ok(HiiCheck {
        holds: rf_equal(&lhs, &rhs),
        a_phi,
        quoted_gamma_agrees: rf_equal(&quoted, &tame.gamma_abs),
        gamma_phi: tame.gamma_abs,
        gamma_phi0: principal.gamma_abs,
        lhs,
        rhs,
    })
}

/// One sweep cell at symbolic `q`.
#[derive(Clone, Debug, Serialize)]
pub struct SweepCell {
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub r: u32,
    pub m: u64,
    pub c: u64,
    pub normidx: u64,
    pub hii: bool,
    pub formal_degree_consistent: bool,
}

/// All `(e, f)` with `ef = n`, `2 <= n <= n_max`, every consistent `(m, c)`,
/// and `2e <= r <= 2e + r_extra`; `normidx` from the abelianization.
/// Every symbolic instance with `2 <= n <= n_max`, admissible `(m, c)` and `2e <= r <= 2e + r_extra`.
pub fn sweep_instances(n_max: usize, r_extra: u32) -> Vec<TameParams> {
    let mut jobs = Vec::new();
    for n in 2..=n_max {
        for e in (1..=n).filter(|e| n % e == 0) {
            let f = n / e;
            for (m, c) in TameParams::admissible_relations(e, f) {
                for r in 2 * e as u32..=2 * e as u32 + r_extra {
                    jobs.push(TameParams::symbolic(e, f, r, m, c));
                }
            }
        }
    }
    jobs
}

pub fn sweep(n_max: usize, r_extra: u32) -> Result<Vec<SweepCell>> {
    sweep_instances(n_max, r_extra)
        .par_iter()
        .map(|params| {
            let normidx = MetacyclicGroup::from_params(params)?.abelianization().normidx as u64;
            let hii = verify_hii(params, normidx)?;
            let fd = formal_degree(params, normidx)?;
            Ok(SweepCell {
                n: params.n,
                e: params.e,
                f: params.f,
                r: params.r,
                m: params.m,
                c: params.c,
                normidx,
                hii: hii.holds,
                formal_degree_consistent: fd.consistent,
            })
        })
        .collect()
}
