use std::collections::HashMap;

use super::heisenberg::{HeisenbergData, Monomial, Polarization};
use super::psi::{is_congruent_to_one, reduced_code, trace_zero_lift, PsiBeta};
use super::theta::{centralizer_kernel, ThetaChar};
use crate::error::{Error, Result};
use crate::exact::{linalg, Cyclotomic, Phase, Rational};
use crate::matrix::{congruence_exp_odd, FiniteMatrixGroup, MatMod};
use crate::residue::zmod::inv_mod;
use crate::residue::AbelianStructure;

pub type CMatrix = linalg::Matrix<Cyclotomic>;

/// A character value: a single root of unity, or a general cyclotomic number.
#[derive(Clone, Debug, PartialEq)]
pub enum CharValue {
    Root(Phase),
    Value(Cyclotomic),
}

impl CharValue {
    pub fn to_cyclotomic(&self) -> Cyclotomic {
        match self {
            CharValue::Root(ph) => Cyclotomic::from_phase(*ph),
            CharValue::Value(c) => c.clone(),
        }
    }
}

/// Coset data for `G_beta / (G_beta ∩ G(p^l'/p^r))`: a canonical lift in
/// `G_beta(O/p^r)` and, at odd level, the intertwiner `U`.
#[derive(Clone, Debug)]
struct Lift {
    g: MatMod,
    u: Option<CMatrix>,
}

/// The representation `sigma_{beta,theta}` of the isotropy group of `psi_beta`.
#[derive(Clone, Debug)]
pub struct SigmaRep {
    pub psi: PsiBeta,
    pub theta: ThetaChar,
    pub dim: usize,
    structure: AbelianStructure,
    lifts: HashMap<u64, Lift>,
    /// Invariant factors of `G_beta / (G_beta ∩ G(p^l'/p^r))`.
    pub quotient_factors: Vec<u64>,
    pub heisenberg: Option<HeisenbergData>,
    /// `rho` on the `g_beta(F)` basis.
    rho: Vec<Phase>,
    /// Every generator intertwiner could be scaled to determinant one.
    pub det_normalized: bool,
}

fn cmat_scale(a: &CMatrix, c: &Cyclotomic) -> CMatrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

fn cmat_scalar(a: &CMatrix) -> Option<Cyclotomic> {
    let d = a.len();
    let s = a[0][0].clone();
    for i in 0..d {
        for j in 0..d {
            let ok = if i == j { a[i][j] == s } else { a[i][j].is_zero() };
            if !ok {
                return None;
            }
        }
    }
    Some(s)
}

fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    let num = x.numer().nth_root(k);
    let den = x.denom().nth_root(k);
    let r = Rational::new(num, den);
    (num_traits::pow(r.clone(), k as usize) == *x).then_some(r)
}

/// Quotient structure and canonical lifts `prod g_j^{a_j}`.
fn build_quotient(
    psi: &PsiBeta,
    centralizer: &FiniteMatrixGroup,
) -> (AbelianStructure, Vec<MatMod>, HashMap<u64, (MatMod, Vec<u64>)>) {
    let pk = psi.p.pow(psi.lp);
    let n = psi.beta.n;
    let mut first: HashMap<u64, MatMod> = HashMap::new();
    for g in centralizer.iter() {
        first.entry(reduced_code(&g, pk)).or_insert(g);
    }
    let codes: Vec<u64> = first.keys().copied().collect();
    let id = MatMod::identity(n, pk).encode();
    let quotient = AbelianStructure::from_elements(&codes, id, |a, b| {
        MatMod::decode(n, pk, a).mul(&MatMod::decode(n, pk, b)).encode()
    });
    let gens: Vec<MatMod> = quotient.generators.iter().map(|c| first[c].clone()).collect();
    let m = psi.modulus();
    let mut lifts = HashMap::new();
    for code in quotient.elements() {
        let a = quotient.coords(code).expect("element").to_vec();
        let mut g = MatMod::identity(n, m);
        for (gj, &aj) in gens.iter().zip(&a) {
            g = g.mul(&gj.pow(aj));
        }
        debug_assert_eq!(reduced_code(&g, pk), code);
        lifts.insert(code, (g, a));
    }
    (quotient, gens, lifts)
}

impl SigmaRep {
    /// `sigma(g h) = theta(g) psi_beta(h)` for even `r`.
    pub fn even(
        psi: &PsiBeta,
        centralizer: &FiniteMatrixGroup,
        structure: &AbelianStructure,
        theta: &ThetaChar,
    ) -> Result<SigmaRep> {
        if !psi.r.is_multiple_of(2) {
            return Err(Error::LevelMismatch(format!("even construction needs even r, got {}", psi.r)));
        }
        check_theta(psi, centralizer, structure, theta)?;
        let (quotient, _, lifts) = build_quotient(psi, centralizer);
        Ok(SigmaRep {
            psi: psi.clone(),
            theta: theta.clone(),
            dim: 1,
            structure: structure.clone(),
            lifts: lifts.into_iter().map(|(c, (g, _))| (c, Lift { g, u: None })).collect(),
            quotient_factors: quotient.factors.clone(),
            heisenberg: None,
            rho: Vec::new(),
            det_normalized: true,
        })
    }

    /// `sigma(g h) = theta(g) U(g) pi_{beta,theta}(h)` for odd `r = 2l - 1`,
    /// realized on functions on `W'`.
    pub fn odd(
        psi: &PsiBeta,
        centralizer: &FiniteMatrixGroup,
        structure: &AbelianStructure,
        theta: &ThetaChar,
        polarization: Polarization,
    ) -> Result<SigmaRep> {
        if psi.r % 2 != 1 || psi.r < 3 {
            return Err(Error::LevelMismatch(format!("odd construction needs odd r > 1, got {}", psi.r)));
        }
        check_theta(psi, centralizer, structure, theta)?;
        let heis = HeisenbergData::new(&psi.beta, polarization)?;
        let (quotient, gens, lifts) = build_quotient(psi, centralizer);
        let mut sigma = SigmaRep {
            psi: psi.clone(),
            theta: theta.clone(),
            dim: heis.model_dim(),
            structure: structure.clone(),
            lifts: HashMap::new(),
            quotient_factors: quotient.factors.clone(),
            heisenberg: Some(heis),
            rho: Vec::new(),
            det_normalized: true,
        };
        sigma.rho = sigma.rho_basis()?;
        // pi_{beta,theta} must be theta on G_beta ∩ G(p^(l-1)/p^r)
        for k in centralizer_kernel(centralizer, psi.p.pow(psi.lp)) {
            let th = theta.value(structure, &k).expect("centralizer element");
            if sigma.pi_theta(&k)?.as_scalar() != Some(th) {
                return Err(Error::IllDefined("pi_{beta,theta} is not theta on the centralizer kernel".into()));
            }
        }
        let mut us = Vec::with_capacity(gens.len());
        for (g, &order) in gens.iter().zip(&quotient.factors) {
            let (u, det_ok) = sigma.intertwiner(g, order)?;
            sigma.det_normalized &= det_ok;
            us.push(u);
        }
        for i in 0..us.len() {
            for j in 0..i {
                if linalg::mat_mul(&us[i], &us[j]) != linalg::mat_mul(&us[j], &us[i]) {
                    return Err(Error::Intertwiner("intertwiners of commuting elements do not commute".into()));
                }
            }
        }
        let d = sigma.dim;
        for (code, (g, a)) in lifts {
            let mut u: CMatrix = linalg::identity(d);
            for (uj, &aj) in us.iter().zip(&a) {
                u = linalg::mat_mul(&u, &linalg::mat_pow(uj, aj));
            }
            sigma.lifts.insert(code, Lift { g, u: Some(u) });
        }
        Ok(sigma)
    }

    pub fn is_odd(&self) -> bool {
        self.heisenberg.is_some()
    }

    fn heis(&self) -> &HeisenbergData {
        self.heisenberg.as_ref().expect("odd level")
    }

    /// `rho` on the basis `beta^j - tr(beta^j)/n` of `g_beta(F)`:
    /// `rho(Y) = tau(-p^-l tr(X beta)) theta(1 + p^(l-1) X + 2^-1 p^(2l-2) X^2)`.
    fn rho_basis(&self) -> Result<Vec<Phase>> {
        let psi = &self.psi;
        let (p, n, m) = (psi.p, psi.beta.n, psi.modulus());
        let pl = p.pow(psi.l);
        let beta = &psi.beta.beta;
        let mut out = Vec::new();
        let mut pw = beta.clone();
        for _ in 1..n {
            let x = trace_zero_lift(&pw, m);
            let tr = x.mul(beta).trace() % pl;
            let g = congruence_exp_odd(&x, p, psi.l, psi.r)?;
            let th = self
                .theta
                .value(&self.structure, &g)
                .ok_or_else(|| Error::IllDefined("exp of a g_beta element left the centralizer".into()))?;
            out.push(Phase::new(-(tr as i64), pl) + th);
            pw = pw.mul(beta);
        }
        Ok(out)
    }

    pub fn rho(&self, y: &[u64]) -> Phase {
        y.iter().zip(&self.rho).fold(Phase::zero(), |acc, (&c, &r)| acc + r.times(c as i64))
    }

    /// `pi_{beta,theta}(h)` for `h = 1 + p^(l-1) T` in `G(p^(l-1)/p^r)`:
    /// `tau(p^-l tr(T beta) - 2^-1 p^-1 tr(T^2 beta)) rho(Y) pi_beta(v, 1)`.
    pub fn pi_theta(&self, h: &MatMod) -> Result<Monomial> {
        let psi = &self.psi;
        let heis = self.heis();
        let (p, n, m) = (psi.p, psi.beta.n, psi.modulus());
        let lm1 = p.pow(psi.l - 1);
        let pl = p.pow(psi.l);
        if !is_congruent_to_one(h, lm1) {
            return Err(Error::LevelMismatch("element is not in G(p^(l-1)/p^r)".into()));
        }
        let d = h.sub(&MatMod::identity(n, m));
        let t = MatMod::from_flat(n, pl, d.entries().iter().map(|v| v / lm1 % pl).collect());
        let bl = psi.beta.beta.reduce_mod(pl);
        let tr1 = t.mul(&bl).trace();
        let tp = t.reduce_mod(p);
        let tr2 = tp.mul(&tp).mul(&bl.reduce_mod(p)).trace();
        let half = inv_mod(2, pl).expect("p odd");
        let x = (tr1 + pl - (half * lm1 % pl) * tr2 % pl) % pl;
        let (v, y) = heis.decompose(&tp);
        let base = Phase::new(x as i64, pl) + self.rho(&y);
        Ok(heis.schrodinger(&v).scale(base))
    }

    /// Solves `U pi(g^-1 h g) = pi(h) U` on the Heisenberg generators and
    /// normalizes `U^order = 1`, `det U = 1` when possible.
    fn intertwiner(&self, g: &MatMod, order: u64) -> Result<(CMatrix, bool)> {
        let psi = &self.psi;
        let heis = self.heis();
        let (p, m) = (psi.p, psi.modulus());
        let g_inv = g.inverse(p).ok_or(Error::Singular)?;
        let d = self.dim;
        let mut rows: Vec<Vec<Cyclotomic>> = Vec::new();
        for s in 0..heis.dim_v() {
            let mut e = vec![0u64; heis.dim_v()];
            e[s] = 1;
            let x = trace_zero_lift(&heis.section(&e), m);
            let h = congruence_exp_odd(&x, p, psi.l, psi.r)?;
            let a = self.pi_theta(&g_inv.mul(&h).mul(g))?;
            let b = self.pi_theta(&h)?;
            let mut a_inv = vec![0usize; d];
            for (c, &t) in a.perm.iter().enumerate() {
                a_inv[t] = c;
            }
            for r in 0..d {
                for col in 0..d {
                    let mut row = vec![Cyclotomic::zero(); d * d];
                    let c = a_inv[col];
                    row[r * d + c] = &row[r * d + c] + &Cyclotomic::from_phase(a.phase[c]);
                    let idx = b.perm[r] * d + col;
                    row[idx] = &row[idx] - &Cyclotomic::from_phase(b.phase[r]);
                    rows.push(row);
                }
            }
        }
        let null = linalg::nullspace(&rows, d * d);
        if null.len() != 1 {
            return Err(Error::Intertwiner(format!("solution space has dimension {}", null.len())));
        }
        let v = &null[0];
        let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero").inv()?;
        let u0: CMatrix = (0..d).map(|i| (0..d).map(|j| &v[i * d + j] * &lead).collect()).collect();
        // U0^order = lambda, find c with c^order lambda = 1
        let lambda = cmat_scalar(&linalg::mat_pow(&u0, order))
            .ok_or_else(|| Error::Intertwiner("U^order is not scalar".into()))?;
        let nu = (&lambda * &lambda.conj())
            .to_rational()
            .ok_or_else(|| Error::Intertwiner("|lambda|^2 is not rational".into()))?;
        let t = rational_root(&nu, order as u32)
            .ok_or_else(|| Error::Intertwiner("no rational root of |lambda|^2".into()))?;
        let kappa = Cyclotomic::sqrt_rational(&t)
            .ok_or_else(|| Error::Intertwiner("square root unavailable".into()))?
            .inv()?;
        let mu = &lambda * &kappa.pow(order as i64)?;
        let ph = mu
            .as_root_of_unity()
            .ok_or_else(|| Error::Intertwiner("normalized lambda is not a root of unity".into()))?;
        let c0 = kappa.mul_phase(Phase::new(-(ph.num() as i64), ph.den() * order));
        let det0 = &linalg::determinant(&u0) * &c0.pow(d as i64)?;
        let mut chosen = None;
        for j in 0..order {
            let shift = Phase::new(j as i64, order);
            if det0.mul_phase(shift.times(d as i64)) == Cyclotomic::one() {
                chosen = Some(shift);
                break;
            }
        }
        let c = c0.mul_phase(chosen.unwrap_or(Phase::zero()));
        let u = cmat_scale(&u0, &c);
        debug_assert!(linalg::mat_pow(&u, order) == linalg::identity(d));
        Ok((u, chosen.is_some()))
    }

    fn split(&self, z: &MatMod) -> Result<(&Lift, MatMod)> {
        let pk = self.psi.p.pow(self.psi.lp);
        let lift = self
            .lifts
            .get(&reduced_code(z, pk))
            .ok_or_else(|| Error::IllDefined("element is outside the isotropy group".into()))?;
        let h = lift.g.inverse(self.psi.p).ok_or(Error::Singular)?.mul(z);
        Ok((lift, h))
    }

    fn theta_at(&self, g: &MatMod) -> Phase {
        self.theta.value(&self.structure, g).expect("centralizer element")
    }

    /// The full matrix `sigma(z)`.
    pub fn matrix(&self, z: &MatMod) -> Result<CMatrix> {
        let (lift, h) = self.split(z)?;
        let th = self.theta_at(&lift.g);
        match &lift.u {
            None => {
                let v = self.psi.value(&h).ok_or_else(|| Error::IllDefined("bad split".into()))?;
                Ok(vec![vec![Cyclotomic::from_phase(th + v)]])
            }
            Some(u) => {
                let pi = self.pi_theta(&h)?.to_dense();
                Ok(cmat_scale(&linalg::mat_mul(u, &pi), &Cyclotomic::from_phase(th)))
            }
        }
    }

    /// `tr sigma(z)`.
    pub fn trace(&self, z: &MatMod) -> Result<CharValue> {
        let (lift, h) = self.split(z)?;
        let th = self.theta_at(&lift.g);
        match &lift.u {
            None => {
                let v = self.psi.value(&h).ok_or_else(|| Error::IllDefined("bad split".into()))?;
                Ok(CharValue::Root(th + v))
            }
            Some(u) => {
                let pi = self.pi_theta(&h)?;
                let mut acc = Cyclotomic::zero();
                for (c, &t) in pi.perm.iter().enumerate() {
                    if !u[t][c].is_zero() {
                        acc = &acc + &u[t][c].mul_phase(pi.phase[c]);
                    }
                }
                Ok(CharValue::Value(acc.mul_phase(th)))
            }
        }
    }
}

fn check_theta(
    psi: &PsiBeta,
    centralizer: &FiniteMatrixGroup,
    structure: &AbelianStructure,
    theta: &ThetaChar,
) -> Result<()> {
    if super::theta::theta_agrees(theta, psi, centralizer, structure) {
        Ok(())
    } else {
        Err(Error::IllDefined("theta does not restrict to psi_beta".into()))
    }
}

