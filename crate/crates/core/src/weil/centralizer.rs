use rayon::prelude::*;
use serde::Serialize;

use super::unramified::CMatrix;
use crate::error::{Error, Result};
use crate::exact::{linalg, Cyclotomic, Phase};

/// `|A_phi|` and the characters `lambda` (values on the non-scalar
/// generators) that carry a nonzero intertwiner.
#[derive(Clone, Debug, Serialize)]
pub struct CentralizerCount {
    pub count: usize,
    pub characters: Vec<Vec<Phase>>,
}

fn is_scalar(m: &CMatrix) -> bool {
    let d = &m[0][0];
    m.iter().enumerate().all(|(a, row)| row.iter().enumerate().all(|(b, x)| if a == b { x == d } else { x.is_zero() }))
}

/// Solutions `T` of `g T = lambda(g) T g` for all generators.
fn solve(gens: &[&CMatrix], lambda: &[Phase]) -> Vec<Vec<Cyclotomic>> {
    let n = gens[0].len();
    let mut rows: linalg::Matrix<Cyclotomic> = Vec::new();
    for (g, &l) in gens.iter().zip(lambda) {
        let lam = Cyclotomic::from_phase(l);
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![Cyclotomic::zero(); n * n];
                for c in 0..n {
                    // (gT)[a][b] = sum_c g[a][c] T[c][b]
                    row[c * n + b] = &row[c * n + b] + &g[a][c];
                    // (Tg)[a][b] = sum_c T[a][c] g[c][b]
                    row[a * n + c] = &row[a * n + c] - &(&lam * &g[c][b]);
                }
                rows.push(row);
            }
        }
    }
    linalg::nullspace(&rows, n * n)
}

/// Counts the projective classes `T` with `g T = lambda(g) T g` for a
/// character `lambda`. Taking determinants gives `lambda(g)^n = 1`, so each
/// non-scalar generator has `n` candidate values; scalar generators force
/// `lambda(g) = 1`.
pub fn centralizer_in_pgl(gens: &[CMatrix]) -> Result<CentralizerCount> {
    let n = gens.first().map(|g| g.len()).ok_or_else(|| Error::InvalidParams("no generators".into()))?;
    let active: Vec<&CMatrix> = gens.iter().filter(|g| !is_scalar(g)).collect();
    if active.is_empty() {
        return Err(Error::UnboundedCentralizer("all generators are scalar".into()));
    }
    let k = active.len() as u32;
    let total = (n as u64).pow(k);
    let found: Vec<Vec<Phase>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let lambda: Vec<Phase> = (0..k)
                .map(|_| {
                    let v = idx % n as u64;
                    idx /= n as u64;
                    Phase::new(v as i64, n as u64)
                })
                .collect();
            let sols = solve(&active, &lambda);
            match sols.len() {
                0 => Ok(None),
                1 => {
                    let t: CMatrix = (0..n).map(|a| sols[0][a * n..(a + 1) * n].to_vec()).collect();
                    Ok((!linalg::determinant(&t).is_zero()).then_some(lambda))
                }
                d => Err(Error::UnboundedCentralizer(format!("intertwiner space of dimension {d}"))),
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(CentralizerCount { count: found.len(), characters: found })
}
