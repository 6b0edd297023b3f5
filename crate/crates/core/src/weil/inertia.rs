use serde::Serialize;

use super::metacyclic::MetacyclicGroup;
use crate::exact::{linalg, Poly, Rational};
use crate::matrix::integer_charpoly;

/// The `Ad(I_F)`-fixed part of `sl_n` for an induced parameter, and the
/// Frobenius action on it.
#[derive(Clone, Debug, Serialize)]
pub struct InertiaFixedSpace {
    pub dim: usize,
    /// Diagonals of the basis `X_1..X_{f-1}`: `1_e` in block `k-1`, `-1_e` in block `k`.
    pub basis: Vec<Vec<i64>>,
    /// Matrix of `Ad(Fr)` on the basis, columns holding images.
    pub frobenius: Vec<Vec<i64>>,
}

/// Basis position of `psi_{tau0^i sigma0^j}`: blocks indexed by `j`.
fn position(g: &MetacyclicGroup, a: usize) -> usize {
    let (i, j) = g.coords(a);
    j * g.e + i
}

/// Permutation of basis positions induced by left multiplication with `x`.
fn permutation(g: &MetacyclicGroup, x: usize) -> Vec<usize> {
    let mut perm = vec![0; g.order()];
    for a in 0..g.order() {
        perm[position(g, a)] = position(g, g.mul(x, a));
    }
    perm
}

/// For generic `theta` the centralizer of `Theta(O_K^x)` in `sl_n` is the
/// trace-zero diagonal; `Theta(tau0)` and `Theta(sigma0)` are monomial, so
/// they act on it by permuting the diagonal entries.
pub fn inertia_fixed_space(g: &MetacyclicGroup) -> InertiaFixedSpace {
    let (n, e, f) = (g.order(), g.e, g.f);
    let tau = permutation(g, g.tau0());
    // fixed diagonals: D[tau(x)] = D[x] and sum D = 0
    let mut eqs: linalg::Matrix<Rational> = Vec::new();
    for x in 0..n {
        let mut row = vec![Rational::from_integer(0.into()); n];
        row[tau[x]] += Rational::from_integer(1.into());
        row[x] -= Rational::from_integer(1.into());
        eqs.push(row);
    }
    eqs.push(vec![Rational::from_integer(1.into()); n]);
    let dim = linalg::nullspace(&eqs, n).len();

    let basis: Vec<Vec<i64>> = (1..f)
        .map(|k| {
            let mut d = vec![0i64; n];
            d[(k - 1) * e..k * e].iter_mut().for_each(|x| *x = 1);
            d[k * e..(k + 1) * e].iter_mut().for_each(|x| *x = -1);
            d
        })
        .collect();
    debug_assert!(basis.iter().all(|d| (0..n).all(|x| d[tau[x]] == d[x])));

    // Fr acts through sigma0^-1: entry at x moves to position fr(x)
    let fr = permutation(g, g.inverse(g.sigma0()));
    let mut frobenius = vec![vec![0i64; f.saturating_sub(1)]; f.saturating_sub(1)];
    for (k, d) in basis.iter().enumerate() {
        let mut image = vec![0i64; n];
        for x in 0..n {
            image[fr[x]] = d[x];
        }
        for (c, v) in block_coords(&image, e, f).into_iter().enumerate() {
            frobenius[c][k] = v;
        }
    }
    InertiaFixedSpace { dim, basis, frobenius }
}

/// Coordinates of a block-scalar trace-zero diagonal in the basis `X_k`:
/// the coefficient of `X_k` is the running sum of the first `k` block values.
fn block_coords(d: &[i64], e: usize, f: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(f - 1);
    let mut acc = 0;
    for k in 0..f - 1 {
        acc += d[k * e];
        out.push(acc);
    }
    out
}

/// `det(1 - Q M)` as a polynomial in `Q`.
pub fn det_one_minus(m: &[Vec<i64>]) -> Poly {
    let chi = integer_charpoly(m);
    // det(1 - QM) = Q^d chi(1/Q)
    Poly::from_i64(&chi.iter().rev().copied().collect::<Vec<_>>())
}
