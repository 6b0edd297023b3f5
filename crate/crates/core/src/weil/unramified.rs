use serde::Serialize;

use super::level::UnitCharacter;
use crate::error::{Error, Result};
use crate::exact::{linalg, Cyclotomic, Phase};
use crate::params::TameParams;
use crate::residue::{AbelianStructure, ResidueRing, TameRing};

pub type CMatrix = linalg::Matrix<Cyclotomic>;

/// A character of `K^x` for the unramified model: a unit character and the
/// value at the uniformizer `varpi = p`.
#[derive(Clone, Debug)]
pub struct WeilTheta {
    pub unit: UnitCharacter,
    pub varpi: Phase,
}

/// A character of `F^x`: exponents on `(Z/p^r)^x` and the value at `p`.
#[derive(Clone, Debug)]
pub struct BaseCharacter {
    pub structure: AbelianStructure,
    pub exponents: Vec<u64>,
    pub varpi: Phase,
}

/// `(sigma0^j, varpi^k u)` in the relative Weil group `W_{K/F}` of the
/// unramified extension of degree `f`, with `u` a unit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeilElement {
    pub j: usize,
    pub k: i64,
    pub u: u64,
}

/// Finite model of `W_{K/F}` for `e = 1`: `Gal(K/F) = <sigma0>` cyclic of
/// order `f`, `K^x = varpi^Z x (O_K/p^r)^x`, and the cocycle
/// `alpha(sigma0^i, sigma0^j) = varpi^[i + j >= f]`.
#[derive(Clone, Debug)]
pub struct UnramifiedWeilModel {
    pub p: u64,
    pub f: usize,
    pub r: u32,
    ring: TameRing,
}

impl UnramifiedWeilModel {
    pub fn new(p: u64, f: usize, r: u32) -> Result<Self> {
        let ring = TameRing::new(p, r, 1, f, -1, 0)?;
        Ok(UnramifiedWeilModel { p, f, r, ring })
    }

    pub fn from_params(params: &TameParams) -> Result<Self> {
        if params.e != 1 {
            return Err(Error::Unsupported("the explicit Weil model needs e = 1".into()));
        }
        Self::new(params.prime()?, params.f, params.r)
    }

    pub fn ring(&self) -> &TameRing {
        &self.ring
    }

    /// Exponent of `varpi` in `alpha(sigma0^i, sigma0^j)`.
    pub fn cocycle(&self, i: usize, j: usize) -> i64 {
        i64::from(i % self.f + j % self.f >= self.f)
    }

    /// `alpha(s,t)^u alpha(st,u) = alpha(t,u) alpha(s,tu)` on all triples;
    /// the values lie in `F^x` so the Galois twist is trivial.
    pub fn cocycle_identity_holds(&self) -> bool {
        let f = self.f;
        (0..f).all(|s| {
            (0..f).all(|t| {
                (0..f).all(|u| {
                    self.cocycle(s, t) + self.cocycle((s + t) % f, u) == self.cocycle(t, u) + self.cocycle(s, (t + u) % f)
                })
            })
        })
    }

    /// Exponent of `varpi` in `gamma(sigma0^i) = prod_s alpha(sigma0^i, s)`.
    pub fn gamma(&self, i: usize) -> i64 {
        (0..self.f).map(|j| self.cocycle(i, j)).sum()
    }

    /// `N(alpha(s,t)) = gamma(s) gamma(st)^-1 gamma(t)` on all pairs.
    pub fn norm_identity_holds(&self) -> bool {
        let f = self.f;
        (0..f).all(|s| (0..f).all(|t| f as i64 * self.cocycle(s, t) == self.gamma(s) - self.gamma((s + t) % f) + self.gamma(t)))
    }

    pub fn sigma0(&self) -> WeilElement {
        WeilElement { j: 1 % self.f, k: 0, u: self.ring.encode(&self.ring.one()) }
    }

    pub fn varpi(&self) -> WeilElement {
        WeilElement { j: 0, k: 1, u: self.ring.encode(&self.ring.one()) }
    }

    pub fn unit(&self, code: u64) -> WeilElement {
        WeilElement { j: 0, k: 0, u: code }
    }

    fn frob(&self, code: u64, j: usize) -> u64 {
        let x = self.ring.decode(code);
        self.ring.encode(&self.ring.act(0, j, &x).expect("unramified action"))
    }

    /// `(s, x)(t, y) = (st, x^t y alpha(s, t))`.
    pub fn mul(&self, a: &WeilElement, b: &WeilElement) -> WeilElement {
        let u = self.ring.mul(&self.ring.decode(self.frob(a.u, b.j)), &self.ring.decode(b.u));
        WeilElement { j: (a.j + b.j) % self.f, k: a.k + b.k + self.cocycle(a.j, b.j), u: self.ring.encode(&u) }
    }

    fn theta_on(&self, theta: &WeilTheta, k: i64, u: u64) -> Phase {
        theta.varpi.times(k) + theta.unit.value_code(u)
    }

    /// `Ind theta` on functions on `Gal(K/F)`, basis `psi_{sigma0^i}`:
    /// `sigma0^j psi_s = theta(alpha(sigma0^j, s)) psi_{sigma0^j s}` and
    /// `x psi_s = theta(x^s) psi_s`.
    pub fn theta_matrix(&self, theta: &WeilTheta, g: &WeilElement) -> CMatrix {
        let f = self.f;
        let mut m = vec![vec![Cyclotomic::zero(); f]; f];
        for i in 0..f {
            let diag = self.theta_on(theta, g.k, self.frob(g.u, i));
            let a = theta.varpi.times(self.cocycle(g.j, i));
            m[(i + g.j) % f][i] = Cyclotomic::from_phase(a + diag);
        }
        m
    }

    /// `theta o s != theta` on units for every `s != 1`.
    pub fn is_generic(&self, theta: &WeilTheta) -> bool {
        let gens = &theta.unit.structure.generators;
        (1..self.f).all(|j| gens.iter().any(|&g| theta.unit.value_code(self.frob(g, j)) != theta.unit.value_code(g)))
    }

    /// `sigma0`, the unit-group generators and `varpi`.
    pub fn generators(&self, theta: &WeilTheta) -> Vec<WeilElement> {
        let mut gens = vec![self.sigma0()];
        gens.extend(theta.unit.structure.generators.iter().map(|&c| self.unit(c)));
        gens.push(self.varpi());
        gens
    }

    pub fn build_theta_matrices(&self, theta: &WeilTheta) -> Result<Vec<(WeilElement, CMatrix)>> {
        if !self.is_generic(theta) {
            return Err(Error::NotGeneric("theta is fixed by a nontrivial Galois element".into()));
        }
        Ok(self.generators(theta).into_iter().map(|g| (g, self.theta_matrix(theta, &g))).collect())
    }

    /// `theta' = theta * (chi o N)`.
    pub fn twist(&self, theta: &WeilTheta, chi: &BaseCharacter) -> Result<WeilTheta> {
        let s = &theta.unit.structure;
        let base = self.ring.galois_ring().base();
        let mut exponents = Vec::with_capacity(s.factors.len());
        for (&g, &d) in s.generators.iter().zip(&s.factors) {
            let n = self.ring.norm(&self.ring.decode(g))?;
            let v = theta.unit.value_code(g) + chi.structure.char_value(&chi.exponents, base.encode(&base.scalar(n as i64)));
            // a character sends the k-th generator to exp(2 pi i c_k / d_k)
            exponents.push(v.index_in(d));
        }
        let unit = UnitCharacter { structure: s.clone(), exponents };
        Ok(WeilTheta { unit, varpi: theta.varpi + chi.varpi.times(self.f as i64) })
    }

    /// The diagonal `T psi'_s = chi(gamma(s)) psi_s` intertwining the two
    /// induced representations up to scalars.
    pub fn twist_intertwiner(&self, chi: &BaseCharacter) -> CMatrix {
        let f = self.f;
        let mut t = vec![vec![Cyclotomic::zero(); f]; f];
        for (i, row) in t.iter_mut().enumerate() {
            row[i] = Cyclotomic::from_phase(chi.varpi.times(self.gamma(i)));
        }
        t
    }

    /// `Norm` of a unit code down to `(Z/p^r)^x`, as a code of the base ring.
    pub fn norm_code(&self, code: u64) -> Result<u64> {
        let base = self.ring.galois_ring().base();
        let n = self.ring.norm(&self.ring.decode(code))?;
        Ok(base.encode(&base.scalar(n as i64)))
    }
}

/// `Some(c)` with `a = c b`, `c` nonzero.
pub fn projective_ratio(a: &CMatrix, b: &CMatrix) -> Option<Cyclotomic> {
    let mut ratio: Option<Cyclotomic> = None;
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            match (x.is_zero(), y.is_zero()) {
                (true, true) => {}
                (false, false) => {
                    let c = x * &y.inv().ok()?;
                    match &ratio {
                        None => ratio = Some(c),
                        Some(r) if *r == c => {}
                        Some(_) => return None,
                    }
                }
                _ => return None,
            }
        }
    }
    ratio
}
