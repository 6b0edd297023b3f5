use std::collections::HashSet;

use crate::exact::Phase;
use crate::matrix::{congruence_exp, congruence_log, level_split, BetaMatrix, FiniteMatrixGroup, MatMod};
use crate::residue::zmod::inv_mod;

/// The character `psi_beta(1 + p^l X) = tau(p^-l' tr(X beta))` of the
/// congruence subgroup `G(p^l/p^r)`, with `tau(p^-k x) = zeta_{p^k}^x`.
#[derive(Clone, Debug)]
pub struct PsiBeta {
    pub beta: BetaMatrix,
    pub p: u64,
    pub r: u32,
    pub l: u32,
    pub lp: u32,
}

/// True iff `g = 1 mod p^k` (entrywise).
pub fn is_congruent_to_one(g: &MatMod, pk: u64) -> bool {
    let n = g.n();
    (0..n).all(|i| (0..n).all(|j| (g.get(i, j) + pk - u64::from(i == j)).is_multiple_of(pk)))
}

/// Trace-zero lift mod `p^r` of a matrix given mod `p` (or any modulus
/// dividing `p^r`): entries lifted, then the trace removed along the identity.
pub fn trace_zero_lift(x: &MatMod, m: u64) -> MatMod {
    let n = x.n();
    let y = x.with_modulus(m);
    let t = y.trace();
    let ninv = inv_mod(n as u64 % m, m).expect("p does not divide n");
    let shift = (t as u128 * ninv as u128 % m as u128) as i64;
    y.sub(&MatMod::identity(n, m).scale(shift))
}

impl PsiBeta {
    pub fn new(beta: &BetaMatrix) -> Self {
        let (l, lp) = level_split(beta.r);
        PsiBeta { beta: beta.clone(), p: beta.p, r: beta.r, l, lp }
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.r)
    }

    /// `tr(X beta) mod p^k` for `X` given mod `p^k`.
    pub fn trace_pairing(&self, x: &MatMod) -> u64 {
        let m = x.modulus();
        x.mul(&self.beta.beta.reduce_mod(m)).trace()
    }

    /// `psi_beta(h)`, or `None` when `h` is not in `G(p^l/p^r)`.
    pub fn value(&self, h: &MatMod) -> Option<Phase> {
        let x = congruence_log(h, self.p, self.l, self.r).ok()?;
        let pk = self.p.pow(self.lp);
        Some(Phase::new(self.trace_pairing(&x) as i64, pk))
    }

    /// `(g * psi_beta)(h) = psi_beta(g^-1 h g)`.
    pub fn conjugate_value(&self, g: &MatMod, g_inv: &MatMod, h: &MatMod) -> Option<Phase> {
        self.value(&g_inv.mul(h).mul(g))
    }

    /// Generators `1 + p^l E` of `G(p^l/p^r)` for a basis `E` of the trace-zero matrices.
    pub fn kernel_generators(&self) -> Vec<MatMod> {
        let n = self.beta.n;
        let pk = self.p.pow(self.lp);
        trace_zero_basis(n, pk)
            .iter()
            .map(|x| congruence_exp(x, self.p, self.l, self.r).expect("levels are consistent"))
            .collect()
    }

    /// All elements of `G(p^l/p^r)` as images of the trace-zero matrices mod `p^l'`.
    pub fn kernel_elements(&self) -> Vec<MatMod> {
        let n = self.beta.n;
        let pk = self.p.pow(self.lp);
        let dim = n * n - 1;
        let basis = trace_zero_basis(n, pk);
        let count = (pk as usize).pow(dim as u32);
        (0..count)
            .map(|mut c| {
                let mut x = MatMod::zero(n, pk);
                for b in &basis {
                    x = x.add(&b.scale((c % pk as usize) as i64));
                    c /= pk as usize;
                }
                congruence_exp(&x, self.p, self.l, self.r).expect("levels are consistent")
            })
            .collect()
    }

    /// `Ad(g) beta = beta mod p^l'`.
    pub fn fixes(&self, g: &MatMod) -> bool {
        let pk = self.p.pow(self.lp);
        let b = &self.beta.beta;
        g.mul(b).reduce_mod(pk) == b.mul(g).reduce_mod(pk)
    }
}

/// `E_ij` (`i != j`) and `E_ii - E_nn`.
pub fn trace_zero_basis(n: usize, m: u64) -> Vec<MatMod> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut e = MatMod::zero(n, m);
                e.set(i, j, 1);
                out.push(e);
            }
        }
    }
    for i in 0..n - 1 {
        let mut e = MatMod::zero(n, m);
        e.set(i, i, 1);
        e.set(n - 1, n - 1, -1);
        out.push(e);
    }
    out
}

/// The isotropy subgroup `{g : Ad(g) beta = beta mod p^l'}` of `psi_beta`.
pub fn isotropy_group(psi: &PsiBeta, g: &FiniteMatrixGroup) -> FiniteMatrixGroup {
    g.filter(|x| psi.fixes(x))
}

/// Checks `{g : g * psi = psi}` (tested on generators of the kernel) against
/// the `Ad`-description.
pub fn verify_isotropy(psi: &PsiBeta, g: &FiniteMatrixGroup, iso: &FiniteMatrixGroup) -> bool {
    let gens = psi.kernel_generators();
    let base: Vec<Phase> = gens.iter().map(|h| psi.value(h).expect("kernel element")).collect();
    let p = psi.p;
    let by_action = g.filter(|x| {
        let xi = x.inverse(p).expect("invertible");
        gens.iter().zip(&base).all(|(h, v)| psi.conjugate_value(x, &xi, h) == Some(*v))
    });
    by_action.order() == iso.order() && by_action.iter().all(|x| iso.contains(&x))
}

/// Checks `isotropy = G_beta * G(p^l'/p^r)` by two-sided containment.
pub fn verify_product_decomposition(
    psi: &PsiBeta,
    g: &FiniteMatrixGroup,
    iso: &FiniteMatrixGroup,
    centralizer: &FiniteMatrixGroup,
) -> bool {
    let pk = psi.p.pow(psi.lp);
    let h = g.filter(|x| is_congruent_to_one(x, pk));
    let mut prod: HashSet<u64> = HashSet::new();
    for a in centralizer.iter() {
        for b in h.iter() {
            prod.insert(a.mul(&b).encode());
        }
    }
    prod.len() == iso.order() && iso.codes().iter().all(|c| prod.contains(c))
}

/// Reduction of a matrix to a code mod `p^k` (used to index cosets of `G(p^k/p^r)`).
pub fn reduced_code(g: &MatMod, pk: u64) -> u64 {
    g.reduce_mod(pk).encode()
}

