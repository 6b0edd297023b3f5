use super::base::ResidueRing;
use super::galois::GaloisRing;
use super::zmod::mul_mod;
use crate::error::{Error, Result};

/// Galois data of a tame ring: `tau0: y -> zeta*y` and `sigma0 = Frob` on
/// the Galois ring with `y -> zeta^c' * y`.
#[derive(Clone, Debug)]
struct GaloisAction {
    zeta_pows: Vec<Vec<u64>>,
    c_prime: u64,
}

/// `O_K/p_K^{er}` modeled as `GR[y]/(y^e - p*w)` with `w` a unit of `Z/p^r`.
///
/// Coordinates are indexed `i*f + j` for the coefficient of `t^j y^i`.
#[derive(Clone, Debug)]
pub struct TameRing {
    gr: GaloisRing,
    e: usize,
    w: u64,
    pw: u64,
    action: Option<GaloisAction>,
}

impl TameRing {
    /// A tame ring with the Galois action enabled; requires `e | p^f - 1`.
    pub fn new(p: u64, r: u32, e: usize, f: usize, w: i64, c_prime: u64) -> Result<Self> {
        let mut ring = Self::without_action(p, r, e, f, w)?;
        let zeta = ring.gr.root_of_unity(e as u64)?;
        let mut zeta_pows = vec![ring.gr.one()];
        for k in 1..e {
            zeta_pows.push(ring.gr.mul(&zeta_pows[k - 1], &zeta));
        }
        ring.action = Some(GaloisAction { zeta_pows, c_prime: c_prime % e as u64 });
        Ok(ring)
    }

    pub fn without_action(p: u64, r: u32, e: usize, f: usize, w: i64) -> Result<Self> {
        if e == 0 || (e as u64).is_multiple_of(p) {
            return Err(Error::InvalidParams(format!("ramification index e = {e} must be prime to p")));
        }
        let gr = GaloisRing::new(p, r, f)?;
        let m = gr.modulus();
        let w = w.rem_euclid(m as i64) as u64;
        if w.is_multiple_of(p) {
            return Err(Error::InvalidParams(format!("w = {w} must be a unit")));
        }
        let pw = mul_mod(p, w, m);
        Ok(TameRing { gr, e, w, pw, action: None })
    }

    pub fn galois_ring(&self) -> &GaloisRing {
        &self.gr
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn f(&self) -> usize {
        self.gr.f()
    }

    pub fn n(&self) -> usize {
        self.e * self.gr.f()
    }

    pub fn w(&self) -> u64 {
        self.w
    }

    pub fn c_prime(&self) -> Option<u64> {
        self.action.as_ref().map(|a| a.c_prime)
    }

    pub fn has_action(&self) -> bool {
        self.action.is_some()
    }

    /// Coefficient of `y^i` as a Galois-ring element.
    pub fn block<'a>(&self, a: &'a [u64], i: usize) -> &'a [u64] {
        let f = self.f();
        &a[i * f..(i + 1) * f]
    }

    pub fn from_blocks(&self, blocks: &[Vec<u64>]) -> Vec<u64> {
        let mut v = self.zero();
        let f = self.f();
        for (i, b) in blocks.iter().enumerate() {
            v[i * f..(i + 1) * f].copy_from_slice(b);
        }
        v
    }

    pub fn from_gr(&self, a: &[u64]) -> Vec<u64> {
        let mut v = self.zero();
        v[..self.f()].copy_from_slice(a);
        v
    }

    pub fn y(&self) -> Vec<u64> {
        if self.e == 1 {
            return self.scalar(self.p() as i64);
        }
        let mut v = self.zero();
        v[self.f()] = 1;
        v
    }

    /// `t`, the generator of the Galois ring.
    pub fn t(&self) -> Vec<u64> {
        self.from_gr(&self.gr.t())
    }

    /// `y`-adic valuation, capped at `e*r`.
    pub fn valuation(&self, a: &[u64]) -> u32 {
        let p = self.p();
        let r = self.level();
        (0..self.e)
            .map(|i| {
                let v = self.block(a, i).iter().map(|&c| super::zmod::val_p(c, p, r)).min().unwrap();
                if v >= r {
                    self.e as u32 * r
                } else {
                    self.e as u32 * v + i as u32
                }
            })
            .min()
            .unwrap()
    }

    fn action(&self) -> Result<&GaloisAction> {
        self.action.as_ref().ok_or_else(|| {
            Error::NotGalois(format!(
                "e = {} does not divide p^f - 1 = {}",
                self.e,
                self.gr.residue_size() - 1
            ))
        })
    }

    /// `tau0^i sigma0^j (a)`.
    pub fn act(&self, i: usize, j: usize, a: &[u64]) -> Result<Vec<u64>> {
        let act = self.action()?;
        let e = self.e as u64;
        let p = self.p();
        // sigma0^j(y) = zeta^(c' (1 + p + ... + p^(j-1))) y
        let s_j = (0..j).fold(0u64, |acc, s| (acc + super::zmod::pow_mod(p, s as u64, e)) % e);
        let shift = (i as u64 + act.c_prime * s_j) % e;
        let blocks: Vec<Vec<u64>> = (0..self.e)
            .map(|k| {
                let fb = self.gr.frobenius_pow(self.block(a, k), j);
                let z = &act.zeta_pows[((k as u64 * shift) % e) as usize];
                self.gr.mul(&fb, z)
            })
            .collect();
        Ok(self.from_blocks(&blocks))
    }

    /// All `n` Galois conjugates, ordered by `(i, j)` with `i < e`, `j < f`.
    pub fn conjugates(&self, a: &[u64]) -> Result<Vec<Vec<u64>>> {
        let mut out = Vec::with_capacity(self.n());
        for i in 0..self.e {
            for j in 0..self.f() {
                out.push(self.act(i, j, a)?);
            }
        }
        Ok(out)
    }

    fn to_base(&self, a: &[u64], what: &str) -> u64 {
        assert!(
            a.iter().skip(1).all(|&c| c == 0),
            "{what} is not in the base ring: {a:?}"
        );
        a[0]
    }

    pub fn norm(&self, a: &[u64]) -> Result<u64> {
        let prod = self
            .conjugates(a)?
            .iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x));
        Ok(self.to_base(&prod, "norm"))
    }

    pub fn trace(&self, a: &[u64]) -> Result<u64> {
        let sum = self
            .conjugates(a)?
            .iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x));
        Ok(self.to_base(&sum, "trace"))
    }
}

impl ResidueRing for TameRing {
    fn p(&self) -> u64 {
        self.gr.p()
    }
    fn level(&self) -> u32 {
        self.gr.level()
    }
    fn rank(&self) -> usize {
        self.n()
    }
    fn modulus(&self) -> u64 {
        self.gr.modulus()
    }
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (e, f) = (self.e, self.f());
        if e == 1 {
            return self.gr.mul(a, b);
        }
        let mut out = vec![vec![0u64; f]; e];
        for i in 0..e {
            let ai = self.block(a, i);
            if ai.iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..e {
                let bj = self.block(b, j);
                if bj.iter().all(|&c| c == 0) {
                    continue;
                }
                let mut prod = self.gr.mul(ai, bj);
                let mut k = i + j;
                if k >= e {
                    k -= e;
                    prod = self.gr.scale(&prod, self.pw);
                }
                out[k] = self.gr.add(&out[k], &prod);
            }
        }
        self.from_blocks(&out)
    }
    fn is_unit(&self, a: &[u64]) -> bool {
        self.gr.is_unit(self.block(a, 0))
    }
    fn unit_count(&self) -> u64 {
        let q = self.gr.residue_size();
        self.size() / q * (q - 1)
    }
}
