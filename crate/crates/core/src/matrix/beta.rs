use super::{group::FiniteMatrixGroup, MatMod};
use crate::error::{Error, Result};
use crate::exact::{linalg, Rational};
use crate::params::TameParams;
use crate::residue::zmod::{self, symmetric};
use crate::residue::{AbelianStructure, ResidueRing, TameRing};

/// Largest coefficient L1 norm tried when searching for `beta`.
pub const BETA_SEARCH_BOUND: i64 = 4;

/// A trace-zero companion matrix generating the ring of integers of the
/// tame extension, together with the ring isomorphism `beta -> b`.
#[derive(Clone, Debug)]
pub struct BetaMatrix {
    pub p: u64,
    pub r: u32,
    pub n: usize,
    /// Monic characteristic polynomial over the integers, lowest degree first.
    pub charpoly: Vec<i64>,
    /// Companion matrix of `charpoly` reduced mod `p^r`.
    pub beta: MatMod,
    /// The tame ring at level `r` and the element `b` with the same charpoly.
    pub ring: TameRing,
    pub element: Vec<u64>,
    /// Integer coordinates of `b` (level independent).
    pub element_int: Vec<i64>,
    /// Maps ring coordinates to coefficients in the basis `1, b, ..., b^(n-1)`.
    to_power_basis: MatMod,
    params: TameParams,
}

/// Companion matrix: ones on the subdiagonal, last column `-a_0..-a_(n-1)`.
pub fn companion(charpoly: &[i64], m: u64) -> MatMod {
    let n = charpoly.len() - 1;
    let mut c = MatMod::zero(n, m);
    for i in 1..n {
        c.set(i, i - 1, 1);
    }
    for (i, &a) in charpoly[..n].iter().enumerate() {
        c.set(i, n - 1, -a);
    }
    c
}

/// Characteristic polynomial of an integer matrix (Faddeev-LeVerrier over Q).
pub fn integer_charpoly(a: &[Vec<i64>]) -> Vec<i64> {
    let n = a.len();
    let q: linalg::Matrix<Rational> = a
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let mut coeffs = vec![Rational::from_integer(0.into()); n + 1];
    coeffs[n] = Rational::from_integer(1.into());
    let mut mk: linalg::Matrix<Rational> = linalg::identity(n);
    for k in 1..=n {
        let amk = linalg::mat_mul(&q, &mk);
        let tr: Rational = (0..n).map(|i| amk[i][i].clone()).sum();
        let ck = -tr / Rational::from_integer((k as i64).into());
        coeffs[n - k] = ck.clone();
        mk = amk;
        for i in 0..n {
            mk[i][i] += ck.clone();
        }
    }
    coeffs
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "integer matrix has integral charpoly");
            i64::try_from(c.to_integer()).expect("small coefficient")
        })
        .collect()
}

/// Integer multiplication matrix of `x` on a tame ring whose level is large
/// enough for symmetric lifts to be exact.
fn multiplication_matrix(ring: &TameRing, x: &[u64]) -> Vec<Vec<i64>> {
    let n = ring.rank();
    let m = ring.modulus();
    let cols: Vec<Vec<u64>> = (0..n)
        .map(|k| {
            let mut ek = ring.zero();
            ek[k] = 1;
            ring.mul(x, &ek)
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| symmetric(cols[j][i], m)).collect()).collect()
}

/// Candidate coordinate vectors with L1 norm `s`, in lexicographic order.
fn vectors_of_norm(n: usize, s: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in -left..=left {
            cur.push(v);
            rec(n, left - v.abs(), cur, out);
            cur.pop();
        }
    }
    rec(n, s, &mut cur, &mut out);
    out
}

/// Checks the three properties of the characteristic polynomial: reduction
/// mod `p` is `p(t)^e` with `p(t)` irreducible of degree `f`, and the
/// reduction mod `p^2` is irreducible.
pub fn shintani_conditions(charpoly: &[i64], p: u64, e: usize, f: usize) -> bool {
    let modp: Vec<u64> = charpoly.iter().map(|&c| zmod::reduce(c, p)).collect();
    let Some(root) = zmod::fp_eth_root(&modp, e as u32, p) else {
        return false;
    };
    if root.len() != f + 1 || !zmod::fp_is_irreducible(&root, p) {
        return false;
    }
    let p2 = p * p;
    let modp2: Vec<u64> = charpoly.iter().map(|&c| zmod::reduce(c, p2)).collect();
    zmod::is_irreducible_monic_over(&modp2, p2)
}

fn working_level(p: u64) -> u32 {
    let mut r = 1;
    while p.pow(r) < 100_000 {
        r += 1;
    }
    r
}

/// The tame ring of the instance at level `r`, with the Galois action when `e | p^f - 1`.
pub fn tame_ring_at(params: &TameParams, p: u64, r: u32) -> Result<TameRing> {
    if params.is_galois() {
        let cp = params.c_prime().unwrap_or(0);
        TameRing::new(p, r, params.e, params.f, params.w, cp)
    } else {
        TameRing::without_action(p, r, params.e, params.f, params.w)
    }
}

/// Searches the tame ring for an element `b` of trace zero (an element of
/// small coefficients shifted by `Tr/n` when that is integral) whose
/// characteristic polynomial satisfies the three conditions and whose powers
/// form a basis; `beta` is the companion matrix of that polynomial.
pub fn build_beta(params: &TameParams) -> Result<BetaMatrix> {
    params.validate()?;
    let p = params.prime()?;
    let n = params.n;
    let wl = working_level(p);
    let work = TameRing::without_action(p, wl, params.e, params.f, params.w)?;
    let m = work.modulus();
    for s in 1..=BETA_SEARCH_BOUND {
        for v in vectors_of_norm(n, s) {
            let x: Vec<u64> = v.iter().map(|&c| zmod::reduce(c, m)).collect();
            let mx = multiplication_matrix(&work, &x);
            let tr: i64 = (0..n).map(|i| mx[i][i]).sum();
            if tr % n as i64 != 0 {
                continue;
            }
            let mut b = v.clone();
            b[0] -= tr / n as i64;
            let bx: Vec<u64> = b.iter().map(|&c| zmod::reduce(c, m)).collect();
            let chi = integer_charpoly(&multiplication_matrix(&work, &bx));
            if chi[n - 1] != 0 || !shintani_conditions(&chi, p, params.e, params.f) {
                continue;
            }
            let beta = BetaMatrix::from_parts(params, p, params.r, chi, b)?;
            return Ok(beta);
        }
    }
    Err(Error::BetaSearchFailed { bound: BETA_SEARCH_BOUND })
}

impl BetaMatrix {
    fn from_parts(params: &TameParams, p: u64, r: u32, charpoly: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        let ring = tame_ring_at(params, p, r)?;
        let m = ring.modulus();
        let n = params.n;
        let element: Vec<u64> = b.iter().map(|&c| zmod::reduce(c, m)).collect();
        // columns: coordinates of b^k
        let mut powers = MatMod::zero(n, m);
        let mut pw = ring.one();
        for k in 0..n {
            for (i, &c) in pw.iter().enumerate() {
                powers.set(i, k, c as i64);
            }
            pw = ring.mul(&pw, &element);
        }
        let to_power_basis = powers.inverse(p).ok_or_else(|| {
            Error::IllDefined("powers of b do not form a basis of the ring".into())
        })?;
        Ok(BetaMatrix {
            p,
            r,
            n,
            beta: companion(&charpoly, m),
            charpoly,
            ring,
            element,
            element_int: b,
            to_power_basis,
            params: params.clone(),
        })
    }

    /// The same `beta` and ring at another level.
    pub fn at_level(&self, r: u32) -> Result<BetaMatrix> {
        Self::from_parts(&self.params, self.p, r, self.charpoly.clone(), self.element_int.clone())
    }

    pub fn params(&self) -> &TameParams {
        &self.params
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    /// Integer lift of `beta`.
    pub fn beta_int(&self) -> Vec<Vec<i64>> {
        let n = self.n;
        let mut c = vec![vec![0i64; n]; n];
        for i in 1..n {
            c[i][i - 1] = 1;
        }
        for i in 0..n {
            c[i][n - 1] = -self.charpoly[i];
        }
        c
    }

    /// Ring element -> matrix `sum c_k beta^k` where `x = sum c_k b^k`.
    pub fn to_matrix(&self, x: &[u64]) -> MatMod {
        let coeffs = self.to_power_basis.apply(x);
        super::matmod::poly_at_matrix(&coeffs, &self.beta)
    }

    /// Matrix in `Z/p^r[beta]` -> ring element; the first column of
    /// `P(beta)` holds the coefficients of `P`.
    pub fn from_matrix(&self, g: &MatMod) -> Vec<u64> {
        let coeffs = g.column(0);
        let mut acc = self.ring.zero();
        for &c in coeffs.iter().rev() {
            acc = self.ring.add(&self.ring.mul(&acc, &self.element), &self.ring.scalar(c as i64));
        }
        acc
    }

    pub fn commutes(&self, g: &MatMod) -> bool {
        g.mul(&self.beta) == self.beta.mul(g)
    }

    /// Norm of a ring element via the Galois action when present, otherwise
    /// as the determinant of its multiplication matrix.
    pub fn norm(&self, x: &[u64]) -> u64 {
        match self.ring.norm(x) {
            Ok(v) => v,
            Err(_) => self.to_matrix(x).det(),
        }
    }
}

/// The centralizer of `beta` in `SL_n(Z/p^r)`, realized as the image of the
/// norm-one units of the tame ring, with its abelian structure.
pub fn centralizer_beta(beta: &BetaMatrix) -> (FiniteMatrixGroup, AbelianStructure) {
    let ring = &beta.ring;
    let units = ring.unit_codes();
    let codes: Vec<u64> = units
        .iter()
        .filter_map(|&c| {
            let x = ring.decode(c);
            (beta.norm(&x) == 1).then(|| beta.to_matrix(&x).encode())
        })
        .collect();
    let (n, m) = (beta.n, beta.modulus());
    let id = MatMod::identity(n, m).encode();
    let ab = AbelianStructure::from_elements(&codes, id, |a, b| {
        MatMod::decode(n, m, a).mul(&MatMod::decode(n, m, b)).encode()
    });
    let g = FiniteMatrixGroup::from_elements(n, beta.p, beta.r, codes);
    (g, ab)
}
