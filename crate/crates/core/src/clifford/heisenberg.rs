use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{linalg, Cyclotomic, Phase};
use crate::matrix::{fp, BetaMatrix, MatMod};

use super::psi::trace_zero_basis;

/// Which greedy order builds the polarization; the two choices give
/// different Lagrangian splittings of the same symplectic space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
pub enum Polarization {
    #[default]
    Standard,
    Reversed,
}

/// A monomial matrix `M[a][perm[a]] = zeta^phase[a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub phase: Vec<Phase>,
}

impl Monomial {
    pub fn identity(d: usize) -> Self {
        Monomial { perm: (0..d).collect(), phase: vec![Phase::zero(); d] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let perm = self.perm.iter().map(|&c| other.perm[c]).collect();
        let phase = self.perm.iter().enumerate().map(|(a, &c)| self.phase[a] + other.phase[c]).collect();
        Monomial { perm, phase }
    }

    pub fn scale(&self, s: Phase) -> Monomial {
        Monomial { perm: self.perm.clone(), phase: self.phase.iter().map(|&x| x + s).collect() }
    }

    /// `Some(s)` when this is the scalar `zeta^s`.
    pub fn as_scalar(&self) -> Option<Phase> {
        let s = *self.phase.first()?;
        let id = self.perm.iter().enumerate().all(|(a, &c)| a == c);
        (id && self.phase.iter().all(|&x| x == s)).then_some(s)
    }

    pub fn to_dense(&self) -> linalg::Matrix<Cyclotomic> {
        let d = self.dim();
        let mut m = vec![vec![Cyclotomic::zero(); d]; d];
        for a in 0..d {
            m[a][self.perm[a]] = Cyclotomic::from_phase(self.phase[a]);
        }
        m
    }
}

/// The symplectic space `V_beta = g(F)/g_beta(F)` with form
/// `<X, Y> = tr(beta [X, Y]) mod p`, a polarization `W + W'`, and the
/// Schrödinger model on functions on `W'`.
#[derive(Clone, Debug)]
pub struct HeisenbergData {
    pub p: u64,
    pub n: usize,
    /// Half the dimension of `V_beta`; the model has dimension `p^k`.
    pub k: usize,
    beta_bar: MatMod,
    /// Trace-zero polynomials `beta^j - tr(beta^j)/n`, `j = 1..n-1`, mod `p`.
    pub gbeta_basis: Vec<Vec<u64>>,
    /// Complement of `g_beta(F)` in `g(F)` spanned by elementary trace-zero matrices.
    pub complement: Vec<Vec<u64>>,
    /// Coordinates in `[1, g_beta basis, complement]`.
    decomp_inv: Vec<Vec<u64>>,
    /// Symplectic basis `e_1..e_k, f_1..f_k` in complement coordinates (columns).
    sympl: Vec<Vec<u64>>,
    sympl_inv: Vec<Vec<u64>>,
}

fn flatten(x: &MatMod) -> Vec<u64> {
    x.entries().to_vec()
}

impl HeisenbergData {
    pub fn new(beta: &BetaMatrix, polarization: Polarization) -> Result<Self> {
        let (p, n) = (beta.p, beta.n);
        let bb = beta.beta.reduce_mod(p);
        let ninv = crate::residue::zmod::inv_mod(n as u64 % p, p).expect("p does not divide n");
        let mut gbeta_basis = Vec::new();
        let mut pw = bb.clone();
        for _ in 1..n {
            let t = pw.trace() * ninv % p;
            gbeta_basis.push(flatten(&pw.sub(&MatMod::identity(n, p).scale(t as i64))));
            pw = pw.mul(&bb);
        }
        if fp::rank(&gbeta_basis, p) != n - 1 {
            return Err(Error::InvalidParams("beta is not regular mod p".into()));
        }
        let mut candidates: Vec<Vec<u64>> = trace_zero_basis(n, p).iter().map(flatten).collect();
        if polarization == Polarization::Reversed {
            candidates.reverse();
        }
        let mut spanned = gbeta_basis.clone();
        let mut complement = Vec::new();
        for c in candidates {
            spanned.push(c.clone());
            if fp::rank(&spanned, p) == spanned.len() {
                complement.push(c);
            } else {
                spanned.pop();
            }
        }
        let dim_v = complement.len();
        debug_assert_eq!(dim_v, n * (n - 1));
        let mut cols = vec![flatten(&MatMod::identity(n, p))];
        cols.extend(gbeta_basis.iter().cloned());
        cols.extend(complement.iter().cloned());
        let nn = n * n;
        let rows: Vec<Vec<u64>> = (0..nn).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        let decomp_inv = fp::inverse(&rows, p).ok_or(Error::Singular)?;

        let mut h = HeisenbergData {
            p,
            n,
            k: dim_v / 2,
            beta_bar: bb,
            gbeta_basis,
            complement,
            decomp_inv,
            sympl: Vec::new(),
            sympl_inv: Vec::new(),
        };
        let gram: Vec<Vec<u64>> = (0..dim_v)
            .map(|i| (0..dim_v).map(|j| h.form(&h.complement[i], &h.complement[j])).collect())
            .collect();
        let (es, fs) = symplectic_basis(&gram, p, polarization)?;
        let basis: Vec<Vec<u64>> = es.into_iter().chain(fs).collect();
        let rows: Vec<Vec<u64>> = (0..dim_v).map(|i| basis.iter().map(|c| c[i]).collect()).collect();
        h.sympl_inv = fp::inverse(&rows, p).ok_or(Error::Singular)?;
        h.sympl = rows;
        Ok(h)
    }

    pub fn dim_v(&self) -> usize {
        2 * self.k
    }

    pub fn model_dim(&self) -> usize {
        (self.p as usize).pow(self.k as u32)
    }

    fn as_matrix(&self, x: &[u64]) -> MatMod {
        MatMod::from_flat(self.n, self.p, x.to_vec())
    }

    /// `tr(beta [X, Y]) mod p` on flattened matrices.
    pub fn form(&self, x: &[u64], y: &[u64]) -> u64 {
        let (x, y) = (self.as_matrix(x), self.as_matrix(y));
        self.beta_bar.mul(&x.mul(&y).sub(&y.mul(&x))).trace()
    }

    /// Splits a trace-zero `T mod p` as `[v] + Y` with `v` in symplectic
    /// coordinates and `Y` in the `g_beta` basis.
    pub fn decompose(&self, t: &MatMod) -> (Vec<u64>, Vec<u64>) {
        let c = fp::mat_vec(&self.decomp_inv, t.entries(), self.p);
        debug_assert_eq!(c[0], 0, "trace-zero input");
        let y = c[1..self.n].to_vec();
        let v = fp::mat_vec(&self.sympl_inv, &c[self.n..], self.p);
        (v, y)
    }

    /// The linear section `V_beta -> g(F)`.
    pub fn section(&self, v: &[u64]) -> MatMod {
        let c = fp::mat_vec(&self.sympl, v, self.p);
        let mut x = vec![0u64; self.n * self.n];
        for (ci, b) in c.iter().zip(&self.complement) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi = (*xi + ci * bi) % self.p;
            }
        }
        self.as_matrix(&x)
    }

    /// The form in symplectic coordinates.
    pub fn pairing(&self, u: &[u64], v: &[u64]) -> u64 {
        let (p, k) = (self.p, self.k);
        (0..k).fold(0, |acc, i| (acc + u[i] * v[k + i] + (p - u[k + i]) * v[i]) % p)
    }

    /// `(pi(u) f)(w) = tau(1/2 <u-, u+> + <w, u+>) f(w + u-)` with `u-` the
    /// `W'` (first `k`) coordinates and `u+` the `W` coordinates.
    pub fn schrodinger(&self, u: &[u64]) -> Monomial {
        let (p, k) = (self.p, self.k);
        let half = p.div_ceil(2);
        let (x, y) = (&u[..k], &u[k..]);
        let xy = x.iter().zip(y).fold(0, |a, (xi, yi)| (a + xi * yi) % p);
        let d = self.model_dim();
        let mut perm = Vec::with_capacity(d);
        let mut phase = Vec::with_capacity(d);
        for idx in 0..d {
            let a = digits(idx, p, k);
            let ay = a.iter().zip(y).fold(0, |s, (ai, yi)| (s + ai * yi) % p);
            let target: Vec<u64> = a.iter().zip(x).map(|(ai, xi)| (ai + xi) % p).collect();
            perm.push(undigits(&target, p));
            phase.push(Phase::new(((half * xy + ay) % p) as i64, p));
        }
        Monomial { perm, phase }
    }

    pub fn is_nondegenerate(&self) -> bool {
        let m = self.dim_v();
        let gram: Vec<Vec<u64>> = (0..m)
            .map(|i| (0..m).map(|j| self.form(&self.complement[i], &self.complement[j])).collect())
            .collect();
        fp::rank(&gram, self.p) == m
    }

    pub fn is_alternating(&self) -> bool {
        self.complement.iter().all(|c| self.form(c, c) == 0)
            && self.gbeta_basis.iter().all(|b| self.complement.iter().all(|c| self.form(b, c) == 0))
    }
}

fn digits(mut idx: usize, p: u64, k: usize) -> Vec<u64> {
    (0..k)
        .map(|_| {
            let d = idx as u64 % p;
            idx /= p as usize;
            d
        })
        .collect()
}

fn undigits(a: &[u64], p: u64) -> usize {
    a.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

/// Greedy symplectic basis from a nondegenerate alternating Gram matrix.
fn symplectic_basis(
    gram: &[Vec<u64>],
    p: u64,
    polarization: Polarization,
) -> Result<(Vec<Vec<u64>>, Vec<Vec<u64>>)> {
    let m = gram.len();
    let form = |u: &[u64], v: &[u64]| {
        let mut s = 0;
        for i in 0..m {
            if u[i] == 0 {
                continue;
            }
            for j in 0..m {
                s = (s + u[i] * gram[i][j] % p * v[j]) % p;
            }
        }
        s
    };
    let mut rest: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut e = vec![0; m];
            e[i] = 1;
            e
        })
        .collect();
    if polarization == Polarization::Reversed {
        rest.reverse();
    }
    let (mut es, mut fs) = (Vec::new(), Vec::new());
    while let Some(pos) = rest.iter().position(|v| v.iter().any(|&x| x != 0)) {
        let e = rest.remove(pos);
        let j = rest
            .iter()
            .position(|w| form(&e, w) != 0)
            .ok_or_else(|| Error::Intertwiner("symplectic form is degenerate".into()))?;
        let w = rest.remove(j);
        let s = crate::residue::zmod::inv_mod(form(&e, &w), p).expect("nonzero mod p");
        let f: Vec<u64> = w.iter().map(|x| x * s % p).collect();
        for u in rest.iter_mut() {
            let (uf, ue) = (form(u, &f), form(u, &e));
            for i in 0..m {
                u[i] = (u[i] + (p - uf) * e[i] + ue * f[i]) % p;
            }
        }
        es.push(e);
        fs.push(f);
    }
    if 2 * es.len() != m {
        return Err(Error::Intertwiner("symplectic form is degenerate".into()));
    }
    Ok((es, fs))
}
