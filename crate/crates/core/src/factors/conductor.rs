use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Rational, RationalFunction};
use crate::params::TameParams;
use crate::weil::{inertia_fixed_space, MetacyclicGroup};

/// A run of lower-numbering indices `t` with the same `dim g^{D_t}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConductorBand {
    pub t_range: String,
    pub d_t: String,
    pub dim_fixed: usize,
    /// `sum_t (D_0 : D_t)^{-1}` over the band.
    pub weight: Rational,
    pub contribution: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConductorBreakdown {
    pub q: Option<u64>,
    pub bands: Vec<ConductorBand>,
    pub total: Rational,
}

/// `|S|` for the stabilizer of `theta` on `1 + p_K^k`, `1 <= k <= er`:
/// all of `Gal(K/F)` above `e(r-1)`, the inertia group at `e(r-1)`, trivial below.
fn stabilizer_order(params: &TameParams, k: u32) -> usize {
    let top = params.e as u32 * (params.r - 1);
    match k.cmp(&top) {
        std::cmp::Ordering::Greater => params.n,
        std::cmp::Ordering::Equal => params.e,
        std::cmp::Ordering::Less => 1,
    }
}

/// Band weight `#{t in band k} / (D_0 : D_t)` with
/// `|D_0| = e q^{nr}(1 - q^{-f})`, `|D_t| = q^{nr - fk}` on `q^{f(k-1)} - 1 < t <= q^{fk} - 1`.
fn band_weight(params: &TameParams, k: u32, q: Option<u64>) -> Result<Rational> {
    let (n, e, f, r) = (params.n as i64, params.e as i64, params.f as i64, params.r as i64);
    let k = k as i64;
    match q {
        Some(q) => {
            let qb = BigInt::from(q);
            let pw = |x: i64| qb.pow(x as u32);
            let d0 = BigInt::from(e) * (pw(n * r) - pw(n * r - f));
            let dt = pw(n * r - f * k);
            let count = pw(f * k) - pw(f * (k - 1));
            Ok(Rational::new(count * dt, d0))
        }
        None => {
            let v = RationalFunction::var_pow;
            let d0 = &RationalFunction::from_int(e) * &RationalFunction::one_minus_inv_pow(f);
            let dt = v(-f * k);
            let count = &v(f * k) - &v(f * (k - 1));
            let w = &(&count * &dt) / &d0;
            w.as_constant().ok_or_else(|| Error::IllDefined(format!("band weight {w} depends on q")))
        }
    }
}

/// `a(Ad o phi) = sum_t (D_0 : D_t)^{-1} dim(g / g^{D_t})`, band by band.
pub fn artin_conductor(params: &TameParams, q: Option<u64>) -> Result<ConductorBreakdown> {
    if params.n != params.e * params.f || params.r < 2 {
        return Err(Error::InvalidParams(format!("inconsistent parameters {}", params.label())));
    }
    if let Some(q) = q {
        if q < 2 {
            return Err(Error::InvalidParams(format!("q = {q}")));
        }
    }
    let (n, e, f, r) = (params.n, params.e, params.f, params.r);
    let dim_g = n * n - 1;
    // the inertia-fixed dimension only sees tau0, so any consistent relations will do
    let group = MetacyclicGroup::from_params(params).or_else(|_| MetacyclicGroup::new(e, f, 1, 0))?;
    let fixed0 = inertia_fixed_space(&group).dim;
    let mut bands = vec![ConductorBand {
        t_range: "t = 0".into(),
        d_t: format!("{e}*q^{}*(1 - q^-{f})", n as u32 * r),
        dim_fixed: fixed0,
        weight: Rational::one(),
        contribution: Rational::from_integer((dim_g - fixed0).into()),
    }];
    let er = e as u32 * r;
    let mut k = 1;
    while k <= er {
        let dim_fixed = n * stabilizer_order(params, k) - 1;
        let start = k;
        let mut weight = Rational::zero();
        while k <= er && n * stabilizer_order(params, k) - 1 == dim_fixed {
            weight += band_weight(params, k, q)?;
            k += 1;
        }
        let end = k - 1;
        let contribution = &weight * Rational::from_integer((dim_g - dim_fixed).into());
        bands.push(ConductorBand {
            t_range: format!("q^{} - 1 < t <= q^{} - 1", f as u32 * (start - 1), f as u32 * end),
            d_t: format!("q^({} - {f}k), k = {start}..{end}", n as u32 * r),
            dim_fixed,
            weight,
            contribution,
        });
    }
    let total = bands.iter().map(|b| b.contribution.clone()).sum();
    Ok(ConductorBreakdown { q, bands, total })
}
