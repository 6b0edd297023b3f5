use super::MatMod;
use crate::error::{Error, Result};
use crate::residue::zmod::inv_mod;

/// `(l, l')` with `r = l + l'` and `l' = floor(r/2)`.
pub fn level_split(r: u32) -> (u32, u32) {
    (r - r / 2, r / 2)
}

/// `X mod p^l' -> 1 + p^l X mod p^r`, the isomorphism from trace-zero
/// matrices onto the congruence subgroup `G(p^l/p^r)`.
pub fn congruence_exp(x: &MatMod, p: u64, l: u32, r: u32) -> Result<MatMod> {
    let lp = r.checked_sub(l).filter(|&lp| lp > 0 && lp <= l).ok_or_else(|| {
        Error::LevelMismatch(format!("need r = l + l' with 0 < l' <= l, got r = {r}, l = {l}"))
    })?;
    if x.modulus() != p.pow(lp) {
        return Err(Error::LevelMismatch(format!(
            "X must be given mod p^{lp}, found modulus {}",
            x.modulus()
        )));
    }
    if x.trace() != 0 {
        return Err(Error::LevelMismatch("X must have trace zero".into()));
    }
    let m = p.pow(r);
    let n = x.n();
    Ok(MatMod::identity(n, m).add(&x.with_modulus(m).scale(p.pow(l) as i64)))
}

/// Inverse of [`congruence_exp`]: `h = 1 + p^l X -> X mod p^l'`.
pub fn congruence_log(h: &MatMod, p: u64, l: u32, r: u32) -> Result<MatMod> {
    let m = p.pow(r);
    let lp = r - l;
    let d = h.sub(&MatMod::identity(h.n(), m));
    let pl = p.pow(l);
    if d.entries().iter().any(|&v| v % pl != 0) {
        return Err(Error::LevelMismatch("element is not in G(p^l/p^r)".into()));
    }
    let a = d.entries().iter().map(|&v| v / pl).collect();
    Ok(MatMod::from_flat(h.n(), p.pow(lp), a))
}

/// `X -> 1 + p^(l-1) X + 2^-1 p^(2l-2) X^2 mod p^r` for odd `r = 2l - 1`;
/// `X` is given mod `p^r` (only `X mod p^l` matters).
pub fn congruence_exp_odd(x: &MatMod, p: u64, l: u32, r: u32) -> Result<MatMod> {
    if r + 1 != 2 * l || r < 3 {
        return Err(Error::LevelMismatch(format!("need odd r = 2l - 1 > 1, got r = {r}, l = {l}")));
    }
    let m = p.pow(r);
    let x = x.with_modulus(m);
    let half = inv_mod(2, m).expect("p is odd") as i64;
    let q = p.pow(l - 1) as i64;
    let q2 = (p.pow(2 * l - 2) % m) as i64;
    let sq = x.mul(&x).scale(half).scale(q2);
    Ok(MatMod::identity(x.n(), m).add(&x.scale(q)).add(&sq))
}
