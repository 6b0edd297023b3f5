use std::fmt;

use crate::exact::{linalg, Rational};
use crate::residue::zmod::{inv_mod, mul_mod, reduce, symmetric};

/// An `n x n` matrix over `Z/m`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatMod {
    n: usize,
    m: u64,
    a: Vec<u64>,
}

impl fmt::Debug for MatMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "] mod {}", self.m)
    }
}

impl MatMod {
    pub fn zero(n: usize, m: u64) -> Self {
        MatMod { n, m, a: vec![0; n * n] }
    }

    pub fn identity(n: usize, m: u64) -> Self {
        let mut z = Self::zero(n, m);
        for i in 0..n {
            z.a[i * n + i] = 1 % m;
        }
        z
    }

    pub fn from_rows(rows: &[Vec<i64>], m: u64) -> Self {
        let n = rows.len();
        let a = rows.iter().flat_map(|r| r.iter().map(|&x| reduce(x, m))).collect();
        MatMod { n, m, a }
    }

    pub fn from_flat(n: usize, m: u64, a: Vec<u64>) -> Self {
        debug_assert_eq!(a.len(), n * n);
        MatMod { n, m, a: a.into_iter().map(|x| x % m).collect() }
    }

    /// Elementary matrix `1 + c E_ij`.
    pub fn elementary(n: usize, m: u64, i: usize, j: usize, c: i64) -> Self {
        let mut e = Self::identity(n, m);
        e.a[i * n + j] = (e.a[i * n + j] + reduce(c, m)) % m;
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn entries(&self) -> &[u64] {
        &self.a
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.n + j] = reduce(v, self.m);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.a[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Symmetric integer lift of every entry.
    pub fn lift(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).iter().map(|&x| symmetric(x, self.m)).collect()).collect()
    }

    pub fn mul(&self, b: &MatMod) -> MatMod {
        let n = self.n;
        let m = self.m;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = (out[i * n + j] + x * b.a[k * n + j]) % m;
                }
            }
        }
        MatMod { n, m, a: out }
    }

    pub fn add(&self, b: &MatMod) -> MatMod {
        MatMod { n: self.n, m: self.m, a: self.a.iter().zip(&b.a).map(|(x, y)| (x + y) % self.m).collect() }
    }

    pub fn sub(&self, b: &MatMod) -> MatMod {
        MatMod {
            n: self.n,
            m: self.m,
            a: self.a.iter().zip(&b.a).map(|(x, y)| (x + self.m - y) % self.m).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> MatMod {
        let c = reduce(c, self.m);
        MatMod { n: self.n, m: self.m, a: self.a.iter().map(|&x| mul_mod(x, c, self.m)).collect() }
    }

    pub fn pow(&self, mut e: u64) -> MatMod {
        let mut acc = Self::identity(self.n, self.m);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> u64 {
        (0..self.n).fold(0, |acc, i| (acc + self.get(i, i)) % self.m)
    }

    pub fn transpose(&self) -> MatMod {
        let n = self.n;
        let mut out = Self::zero(n, self.m);
        for i in 0..n {
            for j in 0..n {
                out.a[j * n + i] = self.a[i * n + j];
            }
        }
        out
    }

    /// Same matrix with entries reduced modulo a divisor `m2` of `m`.
    pub fn reduce_mod(&self, m2: u64) -> MatMod {
        debug_assert_eq!(self.m % m2, 0);
        MatMod { n: self.n, m: m2, a: self.a.iter().map(|x| x % m2).collect() }
    }

    /// Same integer lift read modulo another modulus.
    pub fn with_modulus(&self, m2: u64) -> MatMod {
        let lifted = self.lift();
        MatMod::from_rows(&lifted, m2)
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.m)
    }

    /// Determinant, via exact rational elimination on the integer lift.
    pub fn det(&self) -> u64 {
        let q: linalg::Matrix<Rational> = self
            .lift()
            .into_iter()
            .map(|r| r.into_iter().map(|x| Rational::from_integer(x.into())).collect())
            .collect();
        let d = linalg::determinant(&q);
        let d = d.to_integer() % num_bigint::BigInt::from(self.m);
        let d: i64 = d.try_into().expect("small residue");
        reduce(d, self.m)
    }

    /// Inverse over the local ring `Z/p^r`: pivots are chosen among units.
    pub fn inverse(&self, p: u64) -> Option<MatMod> {
        let n = self.n;
        let m = self.m;
        let mut a = self.a.clone();
        let mut inv = Self::identity(n, m).a;
        for c in 0..n {
            let piv = (c..n).find(|&i| !a[i * n + c].is_multiple_of(p))?;
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                    inv.swap(piv * n + j, c * n + j);
                }
            }
            let u = inv_mod(a[c * n + c], m)?;
            for j in 0..n {
                a[c * n + j] = mul_mod(a[c * n + j], u, m);
                inv[c * n + j] = mul_mod(inv[c * n + j], u, m);
            }
            for i in 0..n {
                if i == c || a[i * n + c] == 0 {
                    continue;
                }
                let f = a[i * n + c];
                for j in 0..n {
                    a[i * n + j] = (a[i * n + j] + m - mul_mod(f, a[c * n + j], m)) % m;
                    inv[i * n + j] = (inv[i * n + j] + m - mul_mod(f, inv[c * n + j], m)) % m;
                }
            }
        }
        Some(MatMod { n, m, a: inv })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (x, y)| (acc + x * y) % self.m))
            .collect()
    }

    /// Base-`m` code of the entries; requires `m^(n^2) < 2^64`.
    pub fn encode(&self) -> u64 {
        self.a.iter().rev().fold(0u64, |acc, &x| acc * self.m + x)
    }

    pub fn decode(n: usize, m: u64, mut code: u64) -> MatMod {
        let a = (0..n * n)
            .map(|_| {
                let x = code % m;
                code /= m;
                x
            })
            .collect();
        MatMod { n, m, a }
    }

    /// Commutator-free conjugation `g x g^{-1}` given `g^{-1}`.
    pub fn conj_by(&self, g: &MatMod, g_inv: &MatMod) -> MatMod {
        g.mul(self).mul(g_inv)
    }
}

/// Integer-polynomial evaluation at a matrix, `sum c_k X^k`.
pub fn poly_at_matrix(coeffs: &[u64], x: &MatMod) -> MatMod {
    let mut acc = MatMod::zero(x.n(), x.modulus());
    for &c in coeffs.iter().rev() {
        acc = acc.mul(x).add(&MatMod::identity(x.n(), x.modulus()).scale(c as i64));
    }
    acc
}

/// Linear algebra over `F_p` on row-major dense matrices.
pub mod fp {
    use crate::residue::zmod::{inv_mod, mul_mod};

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..nc {
            if r == nr {
                break;
            }
            let Some(piv) = (r..nr).find(|&i| !rows[i][c].is_multiple_of(p)) else {
                continue;
            };
            rows.swap(r, piv);
            let u = inv_mod(rows[r][c], p).unwrap();
            for x in rows[r].iter_mut() {
                *x = mul_mod(*x, u, p);
            }
            for i in 0..nr {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..nc {
                        let t = mul_mod(f, rows[r][j], p);
                        rows[i][j] = (rows[i][j] + p - t) % p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
        let mut m = rows.to_vec();
        rref(&mut m, p).len()
    }

    /// Inverse of a square matrix over `F_p`.
    pub fn inverse(a: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
        let n = a.len();
        let mut aug: Vec<Vec<u64>> = a
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<u64> = r.iter().map(|x| x % p).collect();
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        let piv = rref(&mut aug, p);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
    }

    pub fn mat_vec(a: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
        a.iter().map(|r| r.iter().zip(v).fold(0, |acc, (x, y)| (acc + x * y) % p)).collect()
    }

    /// Basis of the null space `{x : a x = 0}`.
    pub fn nullspace(a: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
        let mut m = a.to_vec();
        let pivots = rref(&mut m, p);
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|fc| {
                let mut v = vec![0; cols];
                v[fc] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - m[row][fc]) % p;
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let a = MatMod::from_rows(&[vec![2, 1], vec![7, 4]], 9);
        assert_eq!(a.det(), 1);
        let inv = a.inverse(3).unwrap();
        assert!(a.mul(&inv).is_identity());
        let s = MatMod::from_rows(&[vec![3, 0], vec![0, 3]], 9);
        assert!(s.inverse(3).is_none());
    }

    #[test]
    fn codes_round_trip() {
        let a = MatMod::from_rows(&[vec![4, 0], vec![0, 7]], 9);
        assert_eq!(MatMod::decode(2, 9, a.encode()), a);
    }
}
