use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use super::{Phase, Poly, Rational};
use crate::error::{Error, Result};

static CYCLOTOMIC_POLYS: Lazy<Mutex<HashMap<u64, Arc<Poly>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The `m`-th cyclotomic polynomial, memoized.
pub fn cyclotomic_poly(m: u64) -> Arc<Poly> {
    assert!(m >= 1);
    if let Some(p) = CYCLOTOMIC_POLYS.lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 = prod_{d | m} Phi_d
    let mut p = &Poly::monomial(Rational::one(), m as usize) - &Poly::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = p.div_rem(&cyclotomic_poly(d)).0;
        }
    }
    let p = Arc::new(p);
    CYCLOTOMIC_POLYS.lock().unwrap().insert(m, p.clone());
    p
}

pub fn totient(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            out -= out / d;
        }
        d += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Element of the cyclotomic field `Q(zeta_m)`, stored as coordinates in the
/// power basis `1, zeta, ..., zeta^(phi(m)-1)` (reduced modulo `Phi_m`).
///
/// Elements of different orders are compared and combined in the field of
/// the least common multiple order.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    coords: Vec<Rational>,
}

impl Cyclotomic {
    fn from_poly(order: u64, p: &Poly) -> Self {
        let phi = cyclotomic_poly(order);
        let r = if p.degree().is_some_and(|d| d >= phi.degree().unwrap()) {
            p.div_rem(&phi).1
        } else {
            p.clone()
        };
        let n = totient(order) as usize;
        let coords = (0..n).map(|k| r.coeff(k)).collect();
        Cyclotomic { order, coords }
    }

    fn to_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn from_rational(c: Rational) -> Self {
        Cyclotomic { order: 1, coords: vec![c] }
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(Rational::from_integer(c.into()))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(m: u64, k: i64) -> Self {
        let e = k.rem_euclid(m as i64) as usize;
        Self::from_poly(m, &Poly::monomial(Rational::one(), e))
    }

    pub fn from_phase(p: Phase) -> Self {
        Self::root_of_unity(p.den(), p.num() as i64)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Re-expresses this element in `Q(zeta_target)`; `order` must divide `target`.
    pub fn lift(&self, target: u64) -> Self {
        assert!(target.is_multiple_of(self.order), "cannot lift order {} to {}", self.order, target);
        if target == self.order {
            return self.clone();
        }
        let step = (target / self.order) as usize;
        let mut c = vec![Rational::zero(); step * self.coords.len().max(1)];
        for (k, a) in self.coords.iter().enumerate() {
            c[k * step] = a.clone();
        }
        Self::from_poly(target, &Poly::new(c))
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let m = self.order.lcm(&other.order);
        (self.lift(m), other.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coords[0].clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Cyclotomic { order: self.order, coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Complex conjugation, `zeta -> zeta^(-1)`.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        let mut c = vec![Rational::zero(); m];
        for (k, a) in self.coords.iter().enumerate() {
            c[(m - k) % m] += a;
        }
        Self::from_poly(self.order, &Poly::new(c))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(Self::from_rational(r.recip()).lift(self.order));
        }
        let phi = cyclotomic_poly(self.order);
        let (g, s, _) = Poly::xgcd(&self.to_poly(), &phi);
        debug_assert_eq!(g, Poly::one());
        Ok(Self::from_poly(self.order, &s))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one().lift(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Multiplication by a root of unity.
    pub fn mul_phase(&self, p: Phase) -> Self {
        if p.is_zero() {
            return self.clone();
        }
        self * &Self::from_phase(p)
    }
}

impl Cyclotomic {
    /// `Some(k/m)` when this element equals `zeta_m^k` for some root of unity
    /// of the field (the roots of unity of `Q(zeta_N)` have order dividing `lcm(2, N)`).
    pub fn as_root_of_unity(&self) -> Option<Phase> {
        let m = self.order.lcm(&2);
        (0..m as i64).map(|k| Phase::new(k, m)).find(|&ph| *self == Self::from_phase(ph))
    }

    /// A square root of a rational number, built from quadratic Gauss sums.
    pub fn sqrt_rational(c: &Rational) -> Option<Self> {
        if c.is_zero() {
            return Some(Self::zero());
        }
        let neg = c < &Rational::zero();
        let a = c.numer().magnitude() * c.denom().magnitude();
        let (square, free) = split_square(a)?;
        let mut root = Self::from_rational(Rational::new(square.into(), c.denom().clone()));
        for q in free {
            root = &root * &sqrt_prime(q);
        }
        if neg {
            root = &root * &Self::root_of_unity(4, 1);
        }
        Some(root)
    }
}

/// `a = s^2 * prod(primes)`; `None` if a prime factor is too large to handle.
fn split_square(mut a: num_bigint::BigUint) -> Option<(num_bigint::BigUint, Vec<u64>)> {
    let mut square = num_bigint::BigUint::one();
    let mut free = Vec::new();
    let mut d = 2u64;
    while a > num_bigint::BigUint::one() {
        if d > 1 << 20 {
            return None;
        }
        let mut k = 0;
        while (&a % d).is_zero() {
            a /= d;
            k += 1;
        }
        square *= num_bigint::BigUint::from(d).pow(k / 2);
        if k % 2 == 1 {
            free.push(d);
        }
        d += 1;
    }
    Some((square, free))
}

/// `sqrt(q)` for a prime `q`: `sqrt(2) = zeta_8 + zeta_8^-1`, otherwise the
/// Gauss sum `g` with `g^2 = (-1)^((q-1)/2) q`, corrected by `-i` when `q = 3 mod 4`.
fn sqrt_prime(q: u64) -> Cyclotomic {
    if q == 2 {
        return &Cyclotomic::root_of_unity(8, 1) + &Cyclotomic::root_of_unity(8, -1);
    }
    let mut g = Cyclotomic::zero().lift(q);
    for x in 1..q {
        let mut e = 1u64;
        for _ in 0..(q - 1) / 2 {
            e = e * x % q;
        }
        let term = Cyclotomic::root_of_unity(q, x as i64);
        g = if e == 1 { &g + &term } else { &g - &term };
    }
    if q % 4 == 3 {
        g = &g * &Cyclotomic::root_of_unity(4, 3);
    }
    g
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coords == other.coords;
        }
        let (a, b) = self.align(other);
        a.coords == b.coords
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let var = format!("z{}", self.order);
        f.write_str(&self.to_poly().display_in(&var))
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let (a, b) = self.align(rhs);
        Cyclotomic {
            order: a.order,
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            return rhs.scale(&self.coords[0]);
        }
        if rhs.order == 1 {
            return self.scale(&rhs.coords[0]);
        }
        let (a, b) = self.align(rhs);
        Cyclotomic::from_poly(a.order, &(&a.to_poly() * &b.to_poly()))
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coords: self.coords.iter().map(|c| -c).collect() }
    }
}

/// Integer combination of `m`-th roots of unity, kept in `Z[x]/(x^m - 1)`
/// until the final reduction. Sums of many character values are
/// accumulated here.
#[derive(Clone, Debug)]
pub struct RootSum {
    order: u64,
    coeffs: Vec<i64>,
}

impl RootSum {
    pub fn new(order: u64) -> Self {
        RootSum { order, coeffs: vec![0; order as usize] }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Adds `c * zeta^k` where `zeta^k` is given as a phase whose denominator divides the order.
    pub fn add_phase(&mut self, p: Phase, c: i64) {
        let k = p.index_in(self.order);
        self.coeffs[k as usize] += c;
    }

    pub fn add_assign(&mut self, other: &RootSum) {
        assert_eq!(self.order, other.order);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let p = Poly::new(self.coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect());
        Cyclotomic::from_poly(self.order, &p)
    }
}
