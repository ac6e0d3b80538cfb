//! Arithmetic backends shared by every evaluator.
//!
//! Evaluators are written once against [`Domain`]. [`Exact`] computes with
//! rationals and reduces only at the very end; [`ModPk`] works in `Z/p^eZ`
//! throughout and refuses any division by a multiple of `p`.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, bigint_mod, inv_mod, mul_mod, Rational, ResiduePK};

#[allow(clippy::wrong_self_convention)]
pub trait Domain: Clone + Debug {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// Image of an exact rational; fails if the denominator is not a unit.
    fn lift(&self, q: &Rational) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn div_int(&self, a: &Self::Elem, n: i64) -> Result<Self::Elem>;
    /// Residue modulo `p^e`; `e` may not exceed the working precision.
    fn residue(&self, a: &Self::Elem, p: u64, e: u32) -> Result<ResiduePK>;
    fn is_exact(&self) -> bool;

    fn mul_int(&self, a: &Self::Elem, n: i64) -> Self::Elem {
        self.mul(a, &self.from_int(n))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }
}

/// Exact rational arithmetic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Exact;

impl Domain for Exact {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_int(&self, n: i64) -> Rational {
        exact::int(n)
    }
    fn from_bigint(&self, n: &BigInt) -> Rational {
        Rational::from_integer(n.clone())
    }
    fn lift(&self, q: &Rational) -> Result<Rational> {
        Ok(q.clone())
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn div_int(&self, a: &Rational, n: i64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(a / exact::int(n))
    }
    fn residue(&self, a: &Rational, p: u64, e: u32) -> Result<ResiduePK> {
        exact::reduce_mod_pk(a, p, e)
    }
    fn is_exact(&self) -> bool {
        true
    }
}

/// Arithmetic in `Z/p^eZ` with `p^e < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModPk {
    p: u64,
    e: u32,
    m: u64,
}

impl ModPk {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !exact::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = exact::checked_pow(p, e)?;
        Ok(ModPk { p, e, m })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    fn reduce_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.m as i128) as u64
    }
}

impl Domain for ModPk {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn from_int(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        bigint_mod(n, self.m)
    }
    fn lift(&self, q: &Rational) -> Result<u64> {
        let den = bigint_mod(q.denom(), self.m);
        if den.is_multiple_of(self.p) {
            return Err(Error::NonUnitDenominator { p: self.p });
        }
        let inv = inv_mod(den, self.m).expect("unit");
        Ok(mul_mod(bigint_mod(q.numer(), self.m), inv, self.m))
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        // operands are reduced and m < 2^63, so the sum cannot overflow
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.m - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.m)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.m - *a % self.m) % self.m
    }
    fn div_int(&self, a: &u64, n: i64) -> Result<u64> {
        if n == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = self.reduce_i64(n);
        if d.is_multiple_of(self.p) {
            return Err(Error::NonUnitDenominator { p: self.p });
        }
        Ok(mul_mod(*a, inv_mod(d, self.m).expect("unit"), self.m))
    }
    fn residue(&self, a: &u64, p: u64, e: u32) -> Result<ResiduePK> {
        if p != self.p || e > self.e || e == 0 {
            return Err(Error::ModulusMismatch {
                left_p: self.p,
                left_e: self.e,
                right_p: p,
                right_e: e,
            });
        }
        Ok(ResiduePK::from_parts(p, e, a % p.pow(e)))
    }
    fn is_exact(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn modpk_lift_matches_reduction() {
        let d = ModPk::new(5, 2).unwrap();
        assert_eq!(d.lift(&rat(3, 8)).unwrap(), 16);
        assert!(d.lift(&rat(1, 10)).is_err());
        assert_eq!(d.neg(&0), 0);
        assert_eq!(d.sub(&3, &5), 23);
        assert_eq!(d.div_int(&3, 8).unwrap(), 16);
        assert!(d.div_int(&3, 15).is_err());
    }

    #[test]
    fn residue_truncates_precision() {
        let d = ModPk::new(7, 3).unwrap();
        let r = d.residue(&300, 7, 2).unwrap();
        assert_eq!(r.value(), 300 % 49);
        assert!(d.residue(&1, 7, 4).is_err());
    }
}
