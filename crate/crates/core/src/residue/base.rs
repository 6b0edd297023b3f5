use super::zmod::{inv_mod, mul_mod};
use crate::error::{Error, Result};

/// A finite ring that is free of rank `rank()` over `Z/p^r`, with elements
/// stored as coordinate vectors.
pub trait ResidueRing: Sync {
    fn p(&self) -> u64;
    /// The exponent `r` of the coefficient ring `Z/p^r`.
    fn level(&self) -> u32;
    fn rank(&self) -> usize;
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64>;
    fn is_unit(&self, a: &[u64]) -> bool;
    /// Number of units.
    fn unit_count(&self) -> u64;

    fn modulus(&self) -> u64 {
        self.p().pow(self.level())
    }

    fn size(&self) -> u64 {
        self.modulus().pow(self.rank() as u32)
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    fn one(&self) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = 1 % self.modulus();
        v
    }

    fn scalar(&self, c: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c.rem_euclid(self.modulus() as i64) as u64;
        v
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        a.iter().zip(b).map(|(x, y)| (x + y) % m).collect()
    }

    fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        a.iter().zip(b).map(|(x, y)| (x + m - y) % m).collect()
    }

    fn neg(&self, a: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        a.iter().map(|x| (m - x) % m).collect()
    }

    fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        let m = self.modulus();
        a.iter().map(|&x| mul_mod(x, c, m)).collect()
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        if !self.is_unit(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.unit_count() - 1))
    }

    fn encode(&self, a: &[u64]) -> u64 {
        let m = self.modulus();
        a.iter().rev().fold(0, |acc, &c| acc * m + c)
    }

    fn decode(&self, mut code: u64) -> Vec<u64> {
        let m = self.modulus();
        (0..self.rank())
            .map(|_| {
                let c = code % m;
                code /= m;
                c
            })
            .collect()
    }

    /// Codes of all units, in increasing order.
    fn unit_codes(&self) -> Vec<u64> {
        (0..self.size()).filter(|&c| self.is_unit(&self.decode(c))).collect()
    }
}

/// `Z/p^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseRing {
    p: u64,
    r: u32,
    pr: u64,
}

impl BaseRing {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !super::zmod::is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} must be an odd prime")));
        }
        if r == 0 {
            return Err(Error::InvalidParams("level r must be at least 1".into()));
        }
        let pr = p.checked_pow(r).filter(|&m| m < 1 << 31).ok_or_else(|| {
            Error::InvalidParams(format!("p^r = {p}^{r} is too large"))
        })?;
        Ok(BaseRing { p, r, pr })
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.pr as i64) as u64
    }

    pub fn inv_scalar(&self, x: u64) -> Option<u64> {
        inv_mod(x, self.pr)
    }
}

impl ResidueRing for BaseRing {
    fn p(&self) -> u64 {
        self.p
    }
    fn level(&self) -> u32 {
        self.r
    }
    fn rank(&self) -> usize {
        1
    }
    fn modulus(&self) -> u64 {
        self.pr
    }
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        vec![mul_mod(a[0], b[0], self.pr)]
    }
    fn is_unit(&self, a: &[u64]) -> bool {
        !a[0].is_multiple_of(self.p)
    }
    fn unit_count(&self) -> u64 {
        self.pr - self.pr / self.p
    }
    fn inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        inv_mod(a[0], self.pr).map(|x| vec![x]).ok_or(Error::DivisionByZero)
    }
}
