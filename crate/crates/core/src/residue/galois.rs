use super::base::{BaseRing, ResidueRing};
use super::zmod::{self, mul_mod};
use crate::error::{Error, Result};

/// The Galois ring `GR(p^r, f) = (Z/p^r)[t]/(g(t))` with `g` monic of
/// degree `f` and irreducible modulo `p`.
#[derive(Clone, Debug)]
pub struct GaloisRing {
    base: BaseRing,
    f: usize,
    modulus_poly: Vec<u64>,
    /// Column `k` holds the coordinates of `Frob(t^k)`.
    frob: Vec<Vec<u64>>,
}

/// The defining polynomial used for residue degree `f`, as an integer
/// polynomial: `t` when `f = 1`, otherwise the first `t^f - d`
/// (`d = 1, 2, ...`) irreducible mod `p`, otherwise the lexicographically
/// first monic polynomial irreducible mod `p`.
pub fn galois_modulus(p: u64, f: usize) -> Vec<i64> {
    if f == 1 {
        return vec![0, 1];
    }
    for d in 1..p {
        let mut g = vec![0; f + 1];
        g[0] = p - d;
        g[f] = 1;
        if zmod::fp_is_irreducible(&g, p) {
            let mut out = vec![0i64; f + 1];
            out[0] = -(d as i64);
            out[f] = 1;
            return out;
        }
    }
    zmod::monic_polys(f, p)
        .find(|g| zmod::fp_is_irreducible(g, p))
        .expect("irreducible polynomials exist in every degree")
        .into_iter()
        .map(|c| c as i64)
        .collect()
}

impl GaloisRing {
    pub fn new(p: u64, r: u32, f: usize) -> Result<Self> {
        if f == 0 {
            return Err(Error::InvalidParams("inertia degree f must be at least 1".into()));
        }
        let base = BaseRing::new(p, r)?;
        let m = base.modulus();
        let modulus_poly = galois_modulus(p, f).iter().map(|&c| zmod::reduce(c, m)).collect();
        let mut gr = GaloisRing { base, f, modulus_poly, frob: Vec::new() };
        gr.frob = gr.frobenius_columns();
        Ok(gr)
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus_poly
    }

    /// Residue field size `p^f`.
    pub fn residue_size(&self) -> u64 {
        self.base.p().pow(self.f as u32)
    }

    pub fn t(&self) -> Vec<u64> {
        if self.f == 1 {
            self.zero()
        } else {
            let mut v = self.zero();
            v[1] = 1;
            v
        }
    }

    pub fn from_base(&self, c: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c % self.modulus();
        v
    }

    /// Evaluates a polynomial with `Z/p^r` coefficients at a ring element.
    pub fn eval_poly(&self, poly: &[u64], x: &[u64]) -> Vec<u64> {
        poly.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, x), &self.from_base(c))
        })
    }

    /// Image of `t` under Frobenius: the root of `g` congruent to `t^p`,
    /// found by Newton iteration.
    fn frobenius_columns(&self) -> Vec<Vec<u64>> {
        let f = self.f;
        if f == 1 {
            return vec![vec![1]];
        }
        let m = self.modulus();
        let g = &self.modulus_poly;
        let dg: Vec<u64> =
            g.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64, m)).collect();
        let mut x = self.pow(&self.t(), self.base.p());
        for _ in 0..=self.level() {
            let num = self.eval_poly(g, &x);
            let den = self.eval_poly(&dg, &x);
            let step = self.mul(&num, &self.inv(&den).expect("g is separable mod p"));
            x = self.sub(&x, &step);
        }
        debug_assert!(self.eval_poly(g, &x).iter().all(|&c| c == 0));
        let mut cols = Vec::with_capacity(f);
        let mut pw = self.one();
        for _ in 0..f {
            cols.push(pw.clone());
            pw = self.mul(&pw, &x);
        }
        cols
    }

    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        if self.f == 1 {
            return a.to_vec();
        }
        let m = self.modulus();
        let mut out = self.zero();
        for (k, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &v) in out.iter_mut().zip(&self.frob[k]) {
                *o = (*o + mul_mod(c, v, m)) % m;
            }
        }
        out
    }

    pub fn frobenius_pow(&self, a: &[u64], k: usize) -> Vec<u64> {
        let mut x = a.to_vec();
        for _ in 0..k % self.f {
            x = self.frobenius(&x);
        }
        x
    }

    /// True iff `a` lies in the image of `Z/p^r`.
    pub fn is_base(&self, a: &[u64]) -> bool {
        a.iter().skip(1).all(|&c| c == 0)
    }

    /// Teichmuller representative: the root of unity of order dividing
    /// `p^f - 1` congruent to `a` modulo `p`.
    pub fn teichmuller(&self, a: &[u64]) -> Result<Vec<u64>> {
        if !self.is_unit(a) {
            return Err(Error::DivisionByZero);
        }
        let q = self.residue_size();
        let mut x = a.to_vec();
        loop {
            let y = self.pow(&x, q);
            if y == x {
                return Ok(x);
            }
            x = y;
        }
    }

    /// Multiplicative order of a unit.
    pub fn unit_order(&self, a: &[u64]) -> u64 {
        let mut ord = self.unit_count();
        for l in zmod::prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == self.one() {
                ord /= l;
            }
        }
        ord
    }

    /// Teichmuller lift of the first generator of the residue field's
    /// multiplicative group (coefficients scanned in code order).
    pub fn teichmuller_generator(&self) -> Vec<u64> {
        let p = self.base.p();
        let q1 = self.residue_size() - 1;
        for code in 1..self.residue_size() {
            let mut c = code;
            let a: Vec<u64> = (0..self.f)
                .map(|_| {
                    let d = c % p;
                    c /= p;
                    d
                })
                .collect();
            let t = self.teichmuller(&a).expect("nonzero residue");
            if zmod::prime_factors(q1).iter().all(|&l| self.pow(&t, q1 / l) != self.one()) {
                return t;
            }
        }
        unreachable!("the residue field has a primitive root")
    }

    /// A primitive `e`-th root of unity, `teich(g)^((p^f - 1)/e)`.
    pub fn root_of_unity(&self, e: u64) -> Result<Vec<u64>> {
        let q1 = self.residue_size() - 1;
        if !q1.is_multiple_of(e) {
            return Err(Error::NotGalois(format!(
                "e = {e} does not divide p^f - 1 = {q1}"
            )));
        }
        Ok(self.pow(&self.teichmuller_generator(), q1 / e))
    }

    /// The same element viewed at a lower level `l <= r`.
    pub fn reduce_to(&self, a: &[u64], lower: &GaloisRing) -> Vec<u64> {
        let m = lower.modulus();
        a.iter().map(|&c| c % m).collect()
    }
}

impl ResidueRing for GaloisRing {
    fn p(&self) -> u64 {
        self.base.p()
    }
    fn level(&self) -> u32 {
        self.base.level()
    }
    fn rank(&self) -> usize {
        self.f
    }
    fn modulus(&self) -> u64 {
        self.base.modulus()
    }
    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = self.modulus();
        if self.f == 1 {
            return vec![mul_mod(a[0], b[0], m)];
        }
        let prod = zmod::poly_mul(a, b, m);
        let mut r = zmod::poly_rem_monic(&prod, &self.modulus_poly, m);
        r.resize(self.f, 0);
        r
    }
    fn is_unit(&self, a: &[u64]) -> bool {
        let p = self.p();
        a.iter().any(|&c| c % p != 0)
    }
    fn unit_count(&self) -> u64 {
        let q = self.residue_size();
        self.size() / q * (q - 1)
    }
}
