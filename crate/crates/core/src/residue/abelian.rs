use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::zmod::prime_factors;
use crate::exact::Phase;

/// Invariant-factor decomposition of a finite abelian group whose elements
/// are encoded as `u64`, together with coordinates of every element.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AbelianStructure {
    /// `d_1 | d_2 | ... | d_k`, all greater than one.
    pub factors: Vec<u64>,
    pub generators: Vec<u64>,
    #[serde(skip)]
    coords: HashMap<u64, Vec<u64>>,
}

fn pow_by<F: Fn(u64, u64) -> u64>(mul: &F, identity: u64, x: u64, mut e: u64) -> u64 {
    let mut acc = identity;
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(base, base);
        }
    }
    acc
}

impl AbelianStructure {
    /// Builds the decomposition from the full element list.
    pub fn from_elements<F>(elems: &[u64], identity: u64, mul: F) -> Self
    where
        F: Fn(u64, u64) -> u64 + Sync,
    {
        let order = elems.len() as u64;
        let primes = prime_factors(order);
        let element_order = |x: u64| {
            let mut ord = order;
            for &l in &primes {
                while ord.is_multiple_of(l) && pow_by(&mul, identity, x, ord / l) == identity {
                    ord /= l;
                }
            }
            ord
        };
        let orders: Vec<u64> = elems.iter().map(|&x| element_order(x)).collect();

        // Per prime: a basis of the Sylow subgroup, as (generator, order).
        let mut per_prime: Vec<Vec<(u64, u64)>> = Vec::new();
        for &l in &primes {
            let sylow: Vec<u64> = elems
                .iter()
                .zip(&orders)
                .filter(|(_, &o)| {
                    let mut o = o;
                    while o % l == 0 {
                        o /= l;
                    }
                    o == 1
                })
                .map(|(&x, _)| x)
                .collect();
            per_prime.push(Self::sylow_basis(&sylow, identity, l, &mul));
        }

        // Combine the k-th largest cyclic factors across primes.
        let rank = per_prime.iter().map(|b| b.len()).max().unwrap_or(0);
        let mut factors = Vec::with_capacity(rank);
        let mut generators = Vec::with_capacity(rank);
        for k in 0..rank {
            let mut d = 1;
            let mut g = identity;
            for basis in &per_prime {
                if let Some(&(h, o)) = basis.get(k) {
                    d *= o;
                    g = mul(g, h);
                }
            }
            factors.push(d);
            generators.push(g);
        }
        factors.reverse();
        generators.reverse();

        let coords = Self::coordinates(&factors, &generators, identity, &mul);
        assert_eq!(coords.len() as u64, order, "generators do not span the group");
        AbelianStructure { factors, generators, coords }
    }

    /// Greedy basis of an abelian `l`-group, sorted by decreasing order.
    fn sylow_basis<F: Fn(u64, u64) -> u64>(
        sylow: &[u64],
        identity: u64,
        l: u64,
        mul: &F,
    ) -> Vec<(u64, u64)> {
        let mut basis = Vec::new();
        let mut span: Vec<u64> = vec![identity];
        let mut span_set: HashSet<u64> = span.iter().copied().collect();
        while span.len() < sylow.len() {
            // Element of maximal order modulo the current span.
            let (mut best, mut best_exp, mut best_pow) = (identity, 0, 1);
            for &x in sylow {
                let (mut a, mut pw, mut y) = (0, 1u64, x);
                while !span_set.contains(&y) {
                    y = pow_by(mul, identity, y, l);
                    a += 1;
                    pw *= l;
                }
                if a > best_exp {
                    (best, best_exp, best_pow) = (x, a, pw);
                }
            }
            let target = pow_by(mul, identity, best, best_pow);
            let s = *span
                .iter()
                .find(|&&s| pow_by(mul, identity, s, best_pow) == target)
                .expect("pure complement exists");
            // h = best * s^{-1} has order exactly best_pow
            let s_inv = pow_by(mul, identity, s, sylow.len() as u64 - 1);
            let h = mul(best, s_inv);
            let mut new_span = Vec::with_capacity(span.len() * best_pow as usize);
            let mut hk = identity;
            for _ in 0..best_pow {
                for &s in &span {
                    new_span.push(mul(s, hk));
                }
                hk = mul(hk, h);
            }
            span_set = new_span.iter().copied().collect();
            span = new_span;
            basis.push((h, best_pow));
        }
        basis
    }

    fn coordinates<F: Fn(u64, u64) -> u64>(
        factors: &[u64],
        generators: &[u64],
        identity: u64,
        mul: &F,
    ) -> HashMap<u64, Vec<u64>> {
        let mut coords = HashMap::new();
        coords.insert(identity, vec![0; factors.len()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            let cx = coords[&x].clone();
            for (i, &g) in generators.iter().enumerate() {
                let y = mul(x, g);
                if let std::collections::hash_map::Entry::Vacant(v) = coords.entry(y) {
                    let mut cy = cx.clone();
                    cy[i] = (cy[i] + 1) % factors[i];
                    v.insert(cy);
                    queue.push_back(y);
                }
            }
        }
        coords
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Exponent of the group (largest invariant factor).
    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn coords(&self, x: u64) -> Option<&[u64]> {
        self.coords.get(&x).map(|v| v.as_slice())
    }

    pub fn contains(&self, x: u64) -> bool {
        self.coords.contains_key(&x)
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        self.coords.keys().copied()
    }

    /// All characters, as exponent vectors `c` with
    /// `chi(x) = exp(2 pi i sum c_k x_k / d_k)`.
    pub fn characters(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..d).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn char_value(&self, chi: &[u64], x: u64) -> Phase {
        let c = self.coords(x).expect("element of the group");
        self.char_value_at(chi, c)
    }

    pub fn char_value_at(&self, chi: &[u64], coords: &[u64]) -> Phase {
        let d = self.exponent();
        let mut num = 0u64;
        for ((&ck, &xk), &dk) in chi.iter().zip(coords).zip(&self.factors) {
            num = (num + ck * xk % dk * (d / dk)) % d;
        }
        Phase::new(num as i64, d)
    }
}
