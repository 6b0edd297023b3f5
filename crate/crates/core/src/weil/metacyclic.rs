use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::TameParams;
use crate::residue::zmod::pow_mod;

/// `Gal(K/F) = <tau0, sigma0>` with `tau0^e = 1`, `sigma0 tau0 sigma0^-1 = tau0^m`
/// and `sigma0^f = tau0^c`. The element `(i, j)` is `tau0^i sigma0^j`.
#[derive(Clone, Debug, Serialize)]
pub struct MetacyclicGroup {
    pub e: usize,
    pub f: usize,
    pub m: u64,
    pub c: u64,
    #[serde(skip)]
    table: Vec<Vec<usize>>,
}

/// Orders attached to the abelianization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub commutator_order: usize,
    pub order: usize,
    /// `|G^ab| / f`, the ramification index of the maximal abelian subextension.
    pub normidx: usize,
}

impl MetacyclicGroup {
    pub fn new(e: usize, f: usize, m: u64, c: u64) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::InvalidParams("e and f must be positive".into()));
        }
        if !TameParams::relations_valid(e, f, m, c) {
            return Err(Error::InvalidParams(format!("relations m = {m}, c = {c} are inconsistent for e = {e}, f = {f}")));
        }
        let (m, c) = if e == 1 { (0, 0) } else { (m % e as u64, c % e as u64) };
        let mut g = MetacyclicGroup { e, f, m, c, table: Vec::new() };
        let n = e * f;
        g.table = (0..n).map(|a| (0..n).map(|b| g.mul_raw(a, b)).collect()).collect();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if g.mul(g.mul(a, b), d) != g.mul(a, g.mul(b, d)) {
                        return Err(Error::IllDefined("metacyclic multiplication is not associative".into()));
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn from_params(params: &TameParams) -> Result<Self> {
        Self::new(params.e, params.f, params.m, params.c)
    }

    pub fn order(&self) -> usize {
        self.e * self.f
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.f + j
    }

    pub fn coords(&self, a: usize) -> (usize, usize) {
        (a / self.f, a % self.f)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn tau0(&self) -> usize {
        self.index(1 % self.e, 0)
    }

    pub fn sigma0(&self) -> usize {
        if self.f == 1 {
            self.index(self.c as usize, 0)
        } else {
            self.index(0, 1)
        }
    }

    fn mul_raw(&self, a: usize, b: usize) -> usize {
        let ((i1, j1), (i2, j2)) = (self.coords(a), self.coords(b));
        let e = self.e as u64;
        let twist = pow_mod(self.m, j1 as u64, e.max(2)) % e;
        let carry = if j1 + j2 >= self.f { self.c } else { 0 };
        let i = (i1 as u64 + twist * i2 as u64 + carry) % e;
        self.index(i as usize, (j1 + j2) % self.f)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity(), |acc, _| self.mul(acc, a))
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.mul(a, b) == 0).expect("finite group")
    }

    /// The defining relations, checked on the generators.
    pub fn relations_hold(&self) -> bool {
        let (t, s) = (self.tau0(), self.sigma0());
        let si = self.inverse(s);
        self.pow(t, self.e) == 0
            && self.mul(self.mul(s, t), si) == self.pow(t, self.m as usize)
            && self.pow(s, self.f) == self.pow(t, self.c as usize)
    }

    /// The commutator subgroup, by closure of all commutators.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut set: HashSet<usize> = HashSet::from([0]);
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                let ba = self.mul(b, a);
                set.insert(self.mul(ab, self.inverse(ba)));
            }
        }
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let current: Vec<usize> = set.iter().copied().collect();
            for y in current {
                let z = self.mul(x, y);
                if set.insert(z) {
                    frontier.push(z);
                }
            }
        }
        let mut out: Vec<usize> = set.into_iter().collect();
        out.sort_unstable();
        out
    }

    pub fn abelianization(&self) -> Abelianization {
        let commutator_order = self.commutator_subgroup().len();
        let order = self.order() / commutator_order;
        Abelianization { commutator_order, order, normidx: order / self.f }
    }

    /// Number of characters of `W_{K/F}` trivial on `K^x`, i.e. of `Gal(K/F)`.
    pub fn a_theta_count(&self) -> usize {
        self.abelianization().order
    }
}
