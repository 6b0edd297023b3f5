use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::zmod::{is_prime, pow_mod};

/// Instance descriptor: residue characteristic (or symbolic `q`), the
/// degrees `n = e f`, the level `r`, the metacyclic relations
/// `sigma tau sigma^-1 = tau^m`, `sigma^f = tau^c`, and the unit `w`
/// selecting the uniformizer `y^e = p w`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameParams {
    /// `None` for symbolic `q`.
    pub p: Option<u64>,
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub r: u32,
    pub m: u64,
    pub c: u64,
    pub w: i64,
}

pub const DEFAULT_W: i64 = -1;

impl TameParams {
    /// Concrete instance with the default relations `m = p mod e`, `c = 0`.
    pub fn new(p: u64, e: usize, f: usize, r: u32) -> Self {
        let m = if e == 1 { 0 } else { p % e as u64 };
        TameParams { p: Some(p), n: e * f, e, f, r, m, c: 0, w: DEFAULT_W }
    }

    /// Symbolic-`q` instance with relations `m`, `c`.
    pub fn symbolic(e: usize, f: usize, r: u32, m: u64, c: u64) -> Self {
        TameParams { p: None, n: e * f, e, f, r, m, c, w: DEFAULT_W }
    }

    pub fn with_relations(mut self, m: u64, c: u64) -> Self {
        self.m = m;
        self.c = c;
        self
    }

    pub fn with_w(mut self, w: i64) -> Self {
        self.w = w;
        self
    }

    pub fn prime(&self) -> Result<u64> {
        self.p.ok_or_else(|| Error::InvalidParams("a concrete prime p is required".into()))
    }

    pub fn l(&self) -> u32 {
        self.r - self.l_prime()
    }

    pub fn l_prime(&self) -> u32 {
        self.r / 2
    }

    /// Consistency of the metacyclic relations alone.
    pub fn relations_valid(e: usize, f: usize, m: u64, c: u64) -> bool {
        let e = e as u64;
        if e == 1 {
            return true;
        }
        m.gcd(&e) == 1 && pow_mod(m, f as u64, e) == 1 % e && (c * (m + e - 1)).is_multiple_of(e)
    }

    /// All admissible `(m, c)` with `0 <= m, c < e` (`(0, 0)` when `e = 1`).
    pub fn admissible_relations(e: usize, f: usize) -> Vec<(u64, u64)> {
        if e == 1 {
            return vec![(0, 0)];
        }
        let mut out = Vec::new();
        for m in 1..e as u64 {
            for c in 0..e as u64 {
                if Self::relations_valid(e, f, m, c) {
                    out.push((m, c));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.e == 0 || self.f == 0 || self.n != self.e * self.f {
            return bad(format!("n = {} must equal e*f = {}*{}", self.n, self.e, self.f));
        }
        if self.r < 2 {
            return bad(format!("level r = {} must be at least 2", self.r));
        }
        if !Self::relations_valid(self.e, self.f, self.m, self.c) {
            return bad(format!(
                "relations m = {}, c = {} are inconsistent for e = {}, f = {}",
                self.m, self.c, self.e, self.f
            ));
        }
        if let Some(p) = self.p {
            if p < 3 || !is_prime(p) {
                return bad(format!("p = {p} must be an odd prime"));
            }
            if (self.n as u64).is_multiple_of(p) {
                return bad(format!("p = {p} divides n = {}", self.n));
            }
            if self.w.rem_euclid(p as i64) == 0 {
                return bad(format!("w = {} must be a unit mod p", self.w));
            }
        }
        Ok(())
    }

    /// `e | p^f - 1`, i.e. the tame extension can be Galois.
    pub fn is_galois(&self) -> bool {
        match self.p {
            Some(p) => (p.pow(self.f as u32) - 1) % self.e as u64 == 0,
            None => true,
        }
    }

    /// `m` agrees with the Frobenius action `p mod e` realized by the rings.
    pub fn matches_ring_action(&self) -> bool {
        match self.p {
            Some(p) => self.e == 1 || self.m == p % self.e as u64,
            None => true,
        }
    }

    /// The hypothesis `r >= 2e` of the supercuspidality and formal-degree statements.
    pub fn supercuspidal_hypothesis(&self) -> bool {
        self.r as usize >= 2 * self.e
    }

    /// Exponent `c'` with `sigma0(y) = zeta^c' y` realizing `sigma0^f = tau0^c`,
    /// i.e. `c' (1 + p + ... + p^(f-1)) = c mod e`.
    pub fn c_prime(&self) -> Option<u64> {
        let p = self.p?;
        let e = self.e as u64;
        let s = (0..self.f).fold(0, |acc, k| (acc + pow_mod(p, k as u64, e)) % e);
        (0..e).find(|&cp| (cp * s) % e == self.c % e)
    }

    pub fn label(&self) -> String {
        let q = self.p.map_or("q".to_string(), |p| p.to_string());
        format!("p={q} n={} e={} f={} r={} m={} c={}", self.n, self.e, self.f, self.r, self.m, self.c)
    }
}
