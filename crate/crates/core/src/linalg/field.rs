use std::fmt;

use crate::error::{Error, Result};

/// The prime field F_p, for primes below 256.
///
/// Residues are stored as bytes; products of two residues are reduced with a
/// precomputed Barrett constant instead of a hardware division.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    barrett: u64,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..256).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField {
            p,
            barrett: (1u64 << 32) / p as u64,
        })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_two(self) -> bool {
        self.p == 2
    }

    #[inline]
    pub fn reduce(self, x: u32) -> u8 {
        let q = ((x as u64 * self.barrett) >> 32) as u32;
        let mut r = x - q * self.p;
        if r >= self.p {
            r -= self.p;
        }
        r as u8
    }

    pub fn from_i64(self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }

    /// Checked conversion: the value must already be a residue.
    pub fn residue(self, x: u32) -> Result<u8> {
        if x < self.p {
            Ok(x as u8)
        } else {
            Err(Error::ResidueOutOfRange {
                value: x,
                p: self.p,
            })
        }
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        let s = a as u32 + b as u32;
        if s >= self.p {
            (s - self.p) as u8
        } else {
            s as u8
        }
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            (self.p - a as u32) as u8
        }
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        self.reduce(a as u32 * b as u32)
    }

    pub fn pow(self, mut base: u8, mut exp: u32) -> u8 {
        let mut acc = 1u8 % self.p as u8;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: u8) -> Option<u8> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }

    /// `(-1)^k` as a residue.
    pub fn sign(self, k: usize) -> u8 {
        if k.is_multiple_of(2) {
            1
        } else {
            self.neg(1)
        }
    }
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_out_of_range() {
        for bad in [0, 1, 4, 9, 15, 255, 256, 257] {
            assert!(PrimeField::new(bad).is_err(), "{bad}");
        }
        for good in [2, 3, 5, 7, 11, 251] {
            assert_eq!(PrimeField::new(good).unwrap().p(), good);
        }
    }

    #[test]
    fn barrett_matches_remainder() {
        for p in [2u32, 3, 5, 7, 13, 101, 251] {
            let f = PrimeField::new(p).unwrap();
            for x in (0..70_000u32).step_by(7).chain([u16::MAX as u32, 250 * 250]) {
                assert_eq!(f.reduce(x) as u32, x % p);
            }
        }
    }

    #[test]
    fn inverses() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7u8 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.sign(3), 6);
        let two = PrimeField::new(2).unwrap();
        assert_eq!(two.sign(1), 1);
    }
}
