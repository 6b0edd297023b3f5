use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::MatMod;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// `|SL_n(Z/p^r)| = p^((n^2-1)(r-1)) * |SL_n(F_p)|`.
pub fn group_order(n: usize, p: u64, r: u32) -> BigUint {
    let p = BigUint::from(p);
    let n32 = n as u32;
    let mut order = p.pow((n32 * n32 - 1) * (r - 1)) * p.pow(n32 * (n32 - 1) / 2);
    for k in 2..=n32 {
        order *= p.pow(k) - 1u32;
    }
    order
}

/// A finite group of `n x n` matrices over `Z/p^r`, fully enumerated.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    n: usize,
    p: u64,
    r: u32,
    elements: Vec<u64>,
    index: HashMap<u64, u32>,
    gens: Option<Vec<MatMod>>,
    classes: OnceLock<Classes>,
}

/// Conjugacy classes: representatives, sizes, and the class of every element.
#[derive(Clone, Debug, Default)]
pub struct Classes {
    pub reps: Vec<u64>,
    pub sizes: Vec<usize>,
    pub of: HashMap<u64, u32>,
}

impl Classes {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn class_of(&self, code: u64) -> Option<usize> {
        self.of.get(&code).map(|&c| c as usize)
    }
}

impl FiniteMatrixGroup {
    /// Closure of a generating set under multiplication.
    pub fn generate(n: usize, p: u64, r: u32, gens: &[MatMod], budget: usize) -> Result<Self> {
        let m = p.pow(r);
        check_encodable(n, m)?;
        let id = MatMod::identity(n, m).encode();
        let gens: Vec<MatMod> = gens.to_vec();
        let mut seen: HashSet<u64> = HashSet::from([id]);
        let mut elements = vec![id];
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let next: Vec<u64> = frontier
                .par_iter()
                .flat_map_iter(|&c| {
                    let x = MatMod::decode(n, m, c);
                    gens.iter().map(move |g| x.mul(g).encode()).collect::<Vec<_>>()
                })
                .collect();
            frontier = Vec::new();
            for c in next {
                if seen.insert(c) {
                    elements.push(c);
                    frontier.push(c);
                    if elements.len() > budget {
                        return Err(Error::BudgetExceeded { budget, needed: elements.len() as u128 });
                    }
                }
            }
        }
        let mut g = Self::from_elements(n, p, r, elements);
        g.gens = Some(gens);
        Ok(g)
    }

    pub fn from_elements(n: usize, p: u64, r: u32, elements: Vec<u64>) -> Self {
        let index = elements.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        FiniteMatrixGroup { n, p, r, elements, index, gens: None, classes: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.r)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn codes(&self) -> &[u64] {
        &self.elements
    }

    pub fn contains(&self, g: &MatMod) -> bool {
        self.index.contains_key(&g.encode())
    }

    pub fn contains_code(&self, c: u64) -> bool {
        self.index.contains_key(&c)
    }

    pub fn element(&self, i: usize) -> MatMod {
        MatMod::decode(self.n, self.modulus(), self.elements[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = MatMod> + '_ {
        let (n, m) = (self.n, self.modulus());
        self.elements.iter().map(move |&c| MatMod::decode(n, m, c))
    }

    /// Subgroup of elements satisfying a predicate (the caller guarantees closure).
    pub fn filter<F: Fn(&MatMod) -> bool + Sync>(&self, pred: F) -> Self {
        let (n, m) = (self.n, self.modulus());
        let elems: Vec<u64> = self
            .elements
            .par_iter()
            .copied()
            .filter(|&c| pred(&MatMod::decode(n, m, c)))
            .collect();
        Self::from_elements(self.n, self.p, self.r, elems)
    }

    pub fn generators(&self) -> Option<&[MatMod]> {
        self.gens.as_deref()
    }

    /// Conjugacy classes, computed once on demand as orbits under
    /// conjugation by the generators (or by all elements when none are known).
    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let (n, m, p) = (self.n, self.modulus(), self.p);
            let conj: Vec<(MatMod, MatMod)> = match &self.gens {
                Some(gens) => gens.iter().map(|g| (g.clone(), g.inverse(p).expect("invertible"))).collect(),
                None => self.iter().map(|g| (g.inverse(p).expect("invertible"), g)).collect(),
            };
            let mut cl = Classes::default();
            for &c in &self.elements {
                if cl.of.contains_key(&c) {
                    continue;
                }
                let id = cl.reps.len() as u32;
                cl.of.insert(c, id);
                let mut stack = vec![c];
                let mut size = 1;
                while let Some(y) = stack.pop() {
                    let y = MatMod::decode(n, m, y);
                    for (g, gi) in &conj {
                        let z = y.conj_by(g, gi).encode();
                        if let std::collections::hash_map::Entry::Vacant(e) = cl.of.entry(z) {
                            e.insert(id);
                            stack.push(z);
                            size += 1;
                        }
                    }
                }
                cl.reps.push(c);
                cl.sizes.push(size);
            }
            cl
        })
    }
}

fn check_encodable(n: usize, m: u64) -> Result<()> {
    let bits = (n * n) as f64 * (m as f64).log2();
    if bits >= 63.0 {
        return Err(Error::InvalidParams(format!(
            "{n}x{n} matrices mod {m} are too large to enumerate"
        )));
    }
    Ok(())
}

/// Elementary generators `1 + E_ij`, `i != j`, of `SL_n(Z/p^r)`.
pub fn sl_generators(n: usize, m: u64) -> Vec<MatMod> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(MatMod::elementary(n, m, i, j, 1));
            }
        }
    }
    gens
}

/// Enumerates `SL_n(Z/p^r)` by closure from elementary matrices.
pub fn sl_enumerate(n: usize, p: u64, r: u32, budget: usize) -> Result<FiniteMatrixGroup> {
    let expected = group_order(n, p, r);
    if expected > BigUint::from(budget) {
        let needed = expected.try_into().unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { budget, needed });
    }
    let g = FiniteMatrixGroup::generate(n, p, r, &sl_generators(n, p.pow(r)), budget)?;
    debug_assert_eq!(BigUint::from(g.order()), expected);
    Ok(g)
}
