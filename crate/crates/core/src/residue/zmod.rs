//! Integer and polynomial arithmetic modulo `m`.
//!
//! Polynomials are coefficient vectors, lowest degree first. All moduli
//! here are below `2^32`, so products of residues fit in a `u64`.

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m as i128) as u64)
}

pub fn reduce(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// Symmetric representative in `(-m/2, m/2]`.
pub fn symmetric(x: u64, m: u64) -> i64 {
    let x = x % m;
    if x > m / 2 {
        x as i64 - m as i64
    } else {
        x as i64
    }
}

/// `p`-adic valuation of `x` modulo `p^r`, with `v(0) = r`.
pub fn val_p(x: u64, p: u64, r: u32) -> u32 {
    if x == 0 {
        return r;
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(p) && v < r {
        x /= p;
        v += 1;
    }
    v
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![n]
}

pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn poly_mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, m)) % m;
        }
    }
    trim(out)
}

pub fn poly_sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + m - b.get(k).copied().unwrap_or(0) % m) % m)
            .collect(),
    )
}

/// Remainder of `a` modulo a monic `g`.
pub fn poly_rem_monic(a: &[u64], g: &[u64], m: u64) -> Vec<u64> {
    poly_divrem_monic(a, g, m).1
}

pub fn poly_divrem_monic(a: &[u64], g: &[u64], m: u64) -> (Vec<u64>, Vec<u64>) {
    let d = g.len() - 1;
    debug_assert_eq!(g[d] % m, 1 % m);
    let mut r = a.to_vec();
    if r.len() <= d {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - d];
    for k in (d..r.len()).rev() {
        let c = r[k];
        if c == 0 {
            continue;
        }
        q[k - d] = c;
        for (j, &gj) in g.iter().enumerate() {
            let t = mul_mod(c, gj, m);
            r[k - d + j] = (r[k - d + j] + m - t) % m;
        }
    }
    r.truncate(d);
    (trim(q), trim(r))
}

pub fn poly_eval(a: &[u64], x: u64, m: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, m) + c) % m)
}

/// Makes a polynomial over the field `F_p` monic.
fn fp_monic(a: Vec<u64>, p: u64) -> Vec<u64> {
    let a = trim(a);
    match a.last() {
        None => a,
        Some(&lc) => {
            let inv = inv_mod(lc, p).expect("nonzero leading coefficient");
            a.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = fp_monic(a.to_vec(), p);
    let mut b = fp_monic(b.to_vec(), p);
    while !b.is_empty() {
        let r = fp_monic(poly_rem_monic(&a, &b, p), p);
        a = b;
        b = r;
    }
    a
}

fn fp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64 % p, p)).collect())
}

/// `x^(p^k) mod g` over `F_p`.
fn frobenius_power_of_x(g: &[u64], p: u64, k: u32) -> Vec<u64> {
    let mut x = poly_rem_monic(&[0, 1], g, p);
    for _ in 0..k {
        let mut acc = vec![1];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_rem_monic(&poly_mul(&acc, &base, p), g, p);
            }
            base = poly_rem_monic(&poly_mul(&base, &base, p), g, p);
            e >>= 1;
        }
        x = acc;
    }
    x
}

/// Irreducibility of a polynomial over `F_p` (coefficients reduced mod `p`).
pub fn fp_is_irreducible(a: &[u64], p: u64) -> bool {
    let g = fp_monic(a.iter().map(|&c| c % p).collect(), p);
    let d = match g.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    if d == 1 {
        return true;
    }
    for k in 1..=d / 2 {
        let xk = frobenius_power_of_x(&g, p, k as u32);
        let h = poly_sub(&xk, &[0, 1], p);
        if fp_gcd(&g, &h, p).len() > 1 {
            return false;
        }
    }
    true
}

/// If `a = r^e` over `F_p` with `r` monic, returns `r`. Requires `p ∤ e`.
pub fn fp_eth_root(a: &[u64], e: u32, p: u64) -> Option<Vec<u64>> {
    let a = fp_monic(a.iter().map(|&c| c % p).collect(), p);
    if a.len() <= 1 {
        return None;
    }
    // Square-free kernel a / gcd(a, a'); valid because p does not divide e.
    let g = fp_gcd(&a, &fp_derivative(&a, p), p);
    let rad = poly_divrem_monic(&a, &g, p).0;
    let mut pow = vec![1];
    for _ in 0..e {
        pow = poly_mul(&pow, &rad, p);
    }
    (pow == a).then_some(rad)
}

/// Monic polynomials of degree `d` over `Z/m`, lexicographic in the
/// coefficients from the constant term up.
pub fn monic_polys(d: usize, m: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = m.pow(d as u32);
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(code % m);
            code /= m;
        }
        v.push(1 % m);
        v
    })
}

/// True iff the monic `a` admits no factorization into monic factors of
/// positive degree over `Z/m` (exhaustive factor search).
pub fn is_irreducible_monic_over(a: &[u64], m: u64) -> bool {
    let n = a.len() - 1;
    (1..=n / 2).all(|d| monic_polys(d, m).all(|g| !poly_rem_monic(a, &g, m).is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 9), Some(5));
        assert_eq!(inv_mod(3, 9), None);
    }

    #[test]
    fn irreducibility_over_fp() {
        assert!(fp_is_irreducible(&[1, 0, 1], 3));
        assert!(!fp_is_irreducible(&[1, 0, 1], 5));
        assert!(fp_is_irreducible(&[1, 2, 0, 1], 3));
        assert!(!fp_is_irreducible(&[0, 0, 1], 3));
    }

    #[test]
    fn eth_roots() {
        // (t^2 + 1)^2 over F_3
        let a = poly_mul(&[1, 0, 1], &[1, 0, 1], 3);
        assert_eq!(fp_eth_root(&a, 2, 3), Some(vec![1, 0, 1]));
        assert_eq!(fp_eth_root(&[0, 0, 1], 2, 3), Some(vec![0, 1]));
        assert_eq!(fp_eth_root(&[2, 0, 1], 2, 3), None);
    }

    #[test]
    fn irreducible_mod_p_squared() {
        // t^2 + 3 has no root mod 9; t^2 - 9 = t^2 does.
        assert!(is_irreducible_monic_over(&[3, 0, 1], 9));
        assert!(!is_irreducible_monic_over(&[0, 0, 1], 9));
    }
}
