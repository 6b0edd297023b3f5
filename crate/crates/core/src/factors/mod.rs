//! Adjoint `L`, `epsilon` and `gamma` factors of the principal and tame
//! parameters, the Artin conductor, the formal degree, and the check of
//! `(1/|A_phi|) |gamma(phi)/gamma(phi_0)| = d(pi)`.

mod conductor;
mod principal;
mod tame;
mod theorem;

pub use conductor::{artin_conductor, ConductorBand, ConductorBreakdown};
pub use principal::{principal_parameter_factors, PrincipalFactors};
pub use tame::{tame_parameter_factors, TameFactors};
pub use theorem::{formal_degree, sweep, sweep_instances, verify_hii, FormalDegree, HiiCheck, SweepCell};

use crate::exact::RationalFunction;

fn ser_rf<S: serde::Serializer>(x: &RationalFunction, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}
