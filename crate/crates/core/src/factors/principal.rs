use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{linalg, Rational, RationalFunction};

/// Adjoint factors of the principal parameter `phi_0 = Sym^{n-1}`.
#[derive(Clone, Debug, Serialize)]
pub struct PrincipalFactors {
    pub n: usize,
    /// `dim ker ad(N_0)` on `sl_n`.
    pub kernel_dim: usize,
    /// `Ad(rho_0(Fr)) N_0^k = q^{w_k} N_0^k`, listed for `k = 1..n-1`.
    pub frobenius_weights: Vec<i64>,
    #[serde(serialize_with = "super::ser_rf")]
    pub l_at_0: RationalFunction,
    #[serde(serialize_with = "super::ser_rf")]
    pub l_at_1: RationalFunction,
    /// `|eps(phi_0, Ad, 0)| = q^eps_exponent`.
    pub eps_exponent: i64,
    #[serde(serialize_with = "super::ser_rf")]
    pub gamma_abs: RationalFunction,
}

fn q_pow(k: i64) -> RationalFunction {
    RationalFunction::var_pow(k)
}

/// `N_0` (superdiagonal ones) and its powers.
fn n0_power(n: usize, k: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for a in 0..n.saturating_sub(k) {
        m[a][a + k] = Rational::from_integer(1.into());
    }
    m
}

pub fn principal_parameter_factors(n: usize) -> Result<PrincipalFactors> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("n = {n} must be at least 2")));
    }
    let one = Rational::from_integer(1.into());
    let n0 = n0_power(n, 1);
    // [N_0, X] = 0 and tr X = 0, unknowns X[c][d] at c*n + d
    let mut rows: linalg::Matrix<Rational> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut row = vec![Rational::zero(); n * n];
            for c in 0..n {
                row[c * n + b] += n0[a][c].clone();
                row[a * n + c] -= n0[c][b].clone();
            }
            rows.push(row);
        }
    }
    let mut tr = vec![Rational::zero(); n * n];
    for a in 0..n {
        tr[a * n + a] = one.clone();
    }
    rows.push(tr);
    let kernel = linalg::nullspace(&rows, n * n);
    let kernel_dim = kernel.len();

    // the powers N_0^k lie in the kernel and span it
    let powers: Vec<Vec<Rational>> = (1..n).map(|k| n0_power(n, k).concat()).collect();
    let in_kernel = powers.iter().all(|v| rows.iter().all(|r| r.iter().zip(v).map(|(x, y)| x * y).sum::<Rational>().is_zero()));
    if !in_kernel || linalg::rank(&powers) != kernel_dim || kernel_dim != n - 1 {
        return Err(Error::IllDefined("ker ad(N_0) is not spanned by the powers of N_0".into()));
    }

    // rho_0(Fr) = diag(q^{-(n-1)/2}, ..., q^{(n-1)/2}); Ad acts on E_ab by q^{(2a - 2b)/2}
    let weight = |a: usize, b: usize| (2 * a as i64 - (n as i64 - 1)) - (2 * b as i64 - (n as i64 - 1));
    let mut frobenius_weights = Vec::new();
    for k in 1..n {
        let w: Vec<i64> = (0..n - k).map(|a| weight(a, a + k)).collect();
        if w.iter().any(|&x| x != w[0]) || w[0] % 2 != 0 {
            return Err(Error::IllDefined("N_0^k is not a Frobenius eigenvector".into()));
        }
        frobenius_weights.push(w[0] / 2);
    }

    let l_inv_at = |s: i64| {
        frobenius_weights
            .iter()
            .fold(RationalFunction::one(), |acc, &w| &acc * &(&RationalFunction::one() - &q_pow(w - s)))
    };
    let l_at_0 = l_inv_at(0).inv()?;
    let l_at_1 = l_inv_at(1).inv()?;
    // eps_0 is trivial (rho_0 unramified); |det(-Fr | g / g_N)| = q^(sum over g - sum over g_N)
    let all: i64 = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).map(|(a, b)| weight(a, b)).sum::<i64>() / 2;
    let eps_exponent = all - frobenius_weights.iter().sum::<i64>();
    let gamma_abs = &(&q_pow(eps_exponent) * &l_at_1) / &l_at_0;
    Ok(PrincipalFactors { n, kernel_dim, frobenius_weights, l_at_0, l_at_1, eps_exponent, gamma_abs })
}
