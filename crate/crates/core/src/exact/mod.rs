//! Exact arithmetic: rationals, polynomials and rational functions in one
//! formal variable, cyclotomic numbers and roots of unity.

mod cyclotomic;
pub mod linalg;
mod phase;
mod poly;
mod ratfunc;

pub use cyclotomic::{cyclotomic_poly, totient, Cyclotomic, RootSum};
pub use phase::Phase;
pub use poly::Poly;
pub use ratfunc::RationalFunction;

/// Arbitrary-precision rational; always stored in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `rf_equal`: identity test between two rational functions.
pub fn rf_equal(a: &RationalFunction, b: &RationalFunction) -> bool {
    a.equals(b)
}

/// `rf_eval`: exact evaluation, failing at a pole.
pub fn rf_eval(a: &RationalFunction, q0: &Rational) -> crate::Result<Rational> {
    a.eval(q0)
}

/// Operations exposed by `cyclo_arith`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Mul,
    Inv,
    Conj,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycloResult {
    Value(Cyclotomic),
    Bool(bool),
}

/// `cyclo_arith`: one field operation; unary operations ignore `y`.
pub fn cyclo_arith(x: &Cyclotomic, y: &Cyclotomic, op: CycloOp) -> crate::Result<CycloResult> {
    Ok(match op {
        CycloOp::Add => CycloResult::Value(x + y),
        CycloOp::Mul => CycloResult::Value(x * y),
        CycloOp::Inv => CycloResult::Value(x.inv()?),
        CycloOp::Conj => CycloResult::Value(x.conj()),
        CycloOp::Eq => CycloResult::Bool(x == y),
    })
}
