use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{linalg, Rational};

pub type RatMatrix = linalg::Matrix<Rational>;

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    assert!(!x.is_zero());
    let p = BigInt::from(p);
    let count = |mut a: BigInt| {
        let mut v = 0;
        while (&a % &p).is_zero() {
            a /= &p;
            v += 1;
        }
        v
    };
    count(x.numer().abs()) - count(x.denom().clone())
}

/// True iff every entry is `p`-integral.
pub fn is_integral(a: &RatMatrix, p: u64) -> bool {
    a.iter().flatten().all(|x| x.is_zero() || valuation(x, p) >= 0)
}

/// `g = k1 * diag(p^m_1, ..., p^m_n) * k2` with `k1`, `k2` `p`-integral of
/// determinant one, `m` weakly decreasing with zero sum.
#[derive(Clone, Debug)]
pub struct Cartan {
    pub k1: RatMatrix,
    pub m: Vec<i64>,
    pub k2: RatMatrix,
}

impl Cartan {
    pub fn diagonal(&self, p: u64) -> RatMatrix {
        let n = self.m.len();
        let mut d: RatMatrix = linalg::identity(n);
        for (i, &mi) in self.m.iter().enumerate() {
            d[i][i] = pow_p(p, mi);
        }
        d
    }

    pub fn product(&self, p: u64) -> RatMatrix {
        linalg::mat_mul(&linalg::mat_mul(&self.k1, &self.diagonal(p)), &self.k2)
    }
}

fn pow_p(p: u64, k: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(p).pow(k.unsigned_abs() as u32));
    if k >= 0 {
        base
    } else {
        base.recip()
    }
}

/// `p`-adic Smith normal form by valuation-pivoted elimination (pivot =
/// entry of minimal valuation, smallest row then column on ties).
pub fn cartan_decompose(g: &RatMatrix, p: u64) -> Result<Cartan> {
    let n = g.len();
    if linalg::determinant(g) != Rational::one() {
        return Err(Error::InvalidParams("Cartan decomposition needs det g = 1".into()));
    }
    let mut a = g.clone();
    // a = left * g * right throughout
    let mut left: RatMatrix = linalg::identity(n);
    let mut right: RatMatrix = linalg::identity(n);
    for k in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in k..n {
            for j in k..n {
                if a[i][j].is_zero() {
                    continue;
                }
                let v = valuation(&a[i][j], p);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let (_, pi, pj) = best.ok_or(Error::Singular)?;
        a.swap(k, pi);
        left.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        for row in right.iter_mut() {
            row.swap(k, pj);
        }
        let piv = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &piv;
            for j in 0..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
                let t = &f * &left[k][j];
                left[i][j] -= t;
            }
        }
        for j in k + 1..n {
            if a[k][j].is_zero() {
                continue;
            }
            let f = &a[k][j] / &piv;
            for i in 0..n {
                let t = &f * &a[i][k];
                a[i][j] -= t;
                let t = &f * &right[i][k];
                right[i][j] -= t;
            }
        }
    }
    // a = diag(u_i p^v_i) with v increasing; reorder to decreasing.
    let order: Vec<usize> = (0..n).rev().collect();
    let m: Vec<i64> = order.iter().map(|&i| valuation(&a[i][i], p)).collect();
    let units: Vec<Rational> =
        order.iter().zip(&m).map(|(&i, &mi)| &a[i][i] / pow_p(p, mi)).collect();
    // g = left^-1 a right^-1 = (left^-1 P^T U) D (P right^-1)
    let left_inv = linalg::inverse(&left).ok_or(Error::Singular)?;
    let right_inv = linalg::inverse(&right).ok_or(Error::Singular)?;
    let mut perm: RatMatrix = vec![vec![Rational::zero(); n]; n];
    for (new, &old) in order.iter().enumerate() {
        perm[new][old] = Rational::one();
    }
    let perm_t: RatMatrix = (0..n).map(|i| (0..n).map(|j| perm[j][i].clone()).collect()).collect();
    let mut u: RatMatrix = linalg::identity(n);
    for (i, x) in units.into_iter().enumerate() {
        u[i][i] = x;
    }
    let mut k1 = linalg::mat_mul(&linalg::mat_mul(&left_inv, &perm_t), &u);
    let mut k2 = linalg::mat_mul(&perm, &right_inv);
    // Move det k1 into k2 through the first column/row.
    let d1 = linalg::determinant(&k1);
    for row in k1.iter_mut() {
        row[0] = &row[0] / &d1;
    }
    for x in k2[0].iter_mut() {
        *x = &*x * &d1;
    }
    debug_assert!(m.windows(2).all(|w| w[0] >= w[1]));
    let out = Cartan { k1, m, k2 };
    debug_assert_eq!(out.product(p), *g);
    Ok(out)
}
