use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A root of unity `exp(2 pi i num/den)` stored as the fraction `num/den` in `[0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0);
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        Phase { num: n / g, den: den / g }
    }

    pub fn zero() -> Self {
        Phase { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Exponent `k` with `self = zeta_m^k`; `den` must divide `m`.
    pub fn index_in(&self, m: u64) -> u64 {
        assert!(m.is_multiple_of(self.den), "phase 1/{} does not live in order {}", self.den, m);
        self.num * (m / self.den)
    }

    pub fn times(&self, k: i64) -> Self {
        let n = (self.num as i128 * k as i128).rem_euclid(self.den as i128) as i64;
        Phase::new(n, self.den)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = self.den.lcm(&rhs.den);
        let n = (self.num * (l / self.den) + rhs.num * (l / rhs.den)) % l;
        Phase::new(n as i64, l)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-(self.num as i64), self.den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({}/{})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_one() {
        let a = Phase::new(1, 3);
        let b = Phase::new(5, 6);
        assert_eq!(a + b, Phase::new(1, 6));
        assert_eq!(a - a, Phase::zero());
        assert_eq!(Phase::new(-1, 4), Phase::new(3, 4));
        assert_eq!(a.times(3), Phase::zero());
    }
}
