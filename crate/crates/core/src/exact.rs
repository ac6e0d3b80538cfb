//! Exact rationals, residues modulo prime powers, Legendre symbols and primes.
//!
//! A p-adic integer is carried as a fully reduced [`Rational`] whose denominator
//! is prime to `p`; every congruence modulo `p^e` only sees its image in
//! `Z/p^eZ`, which is what [`reduce_mod_pk`] computes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored with positive denominator and
/// coprime numerator/denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `num/den`; panics on a zero denominator, use [`parse_rational`] for input.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `a`, `-a`, or `a/b`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(String::from(text));
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Renders as `num/den` (the denominator is always printed).
pub fn fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn checked_pow(p: u64, e: u32) -> Result<u64> {
    if e == 0 {
        return Err(Error::ZeroExponent);
    }
    match p.checked_pow(e) {
        Some(m) if m < (1u64 << 63) => Ok(m),
        _ => Err(Error::ModulusTooLarge { p, e }),
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    if m <= u32::MAX as u64 && a < m && b < m {
        return a * b % m;
    }
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Extended Euclid on signed 128-bit values: returns `(g, s, t)` with `a*s + b*t = g`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(m as i128) as u64)
}

pub fn bigint_mod(n: &BigInt, m: u64) -> u64 {
    n.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("remainder is below the modulus")
}

/// An element of `Z/p^eZ` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResiduePK {
    p: u64,
    e: u32,
    value: u64,
}

impl ResiduePK {
    pub fn new(p: u64, e: u32, value: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = checked_pow(p, e)?;
        Ok(ResiduePK {
            p,
            e,
            value: value % m,
        })
    }

    pub(crate) fn from_parts(p: u64, e: u32, value: u64) -> Self {
        ResiduePK { p, e, value }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.e)
    }

    fn same_ring(&self, other: &Self) -> Result<u64> {
        if self.p != other.p || self.e != other.e {
            return Err(Error::ModulusMismatch {
                left_p: self.p,
                left_e: self.e,
                right_p: other.p,
                right_e: other.e,
            });
        }
        Ok(self.modulus())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let m = self.same_ring(other)?;
        let v = ((self.value as u128 + other.value as u128) % m as u128) as u64;
        Ok(ResiduePK { value: v, ..*self })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let m = self.same_ring(other)?;
        Ok(ResiduePK {
            value: mul_mod(self.value, other.value, m),
            ..*self
        })
    }

    /// Image in `Z/p^fZ` for `1 <= f <= e`.
    pub fn truncate(&self, f: u32) -> Self {
        debug_assert!(f >= 1 && f <= self.e);
        let m = self.p.pow(f);
        ResiduePK {
            p: self.p,
            e: f,
            value: self.value % m,
        }
    }
}

impl fmt::Display for ResiduePK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {}^{})", self.value, self.p, self.e)
    }
}

/// The unique `r` in `[0, p^e)` with `den * r = num (mod p^e)`.
pub fn reduce_mod_pk(q: &Rational, p: u64, e: u32) -> Result<ResiduePK> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let m = checked_pow(p, e)?;
    let den = bigint_mod(q.denom(), m);
    if den.is_multiple_of(p) {
        return Err(Error::NonUnitDenominator { p });
    }
    let num = bigint_mod(q.numer(), m);
    let inv = inv_mod(den, m).expect("unit denominator is invertible");
    Ok(ResiduePK::from_parts(p, e, mul_mod(num, inv, m)))
}

/// Legendre symbol `(a/p)` for an odd prime `p`, via Euler's criterion.
pub fn legendre(a: i64, p: u64) -> i64 {
    debug_assert!(p % 2 == 1 && is_prime(p));
    let a = (a as i128).rem_euclid(p as i128) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// `<x>_p`: the least nonnegative integer congruent to `x` modulo `p`.
pub fn least_residue(x: &Rational, p: u64) -> Result<u64> {
    Ok(reduce_mod_pk(x, p, 1)?.value())
}

/// True when the reduced denominator of `q` is prime to `p`.
pub fn is_p_integral(q: &Rational, p: u64) -> bool {
    bigint_mod(q.denom(), p) != 0
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality: trial division below 10^6, Miller-Rabin with a
/// witness set that is exact for all 64-bit inputs above.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    if n < TRIAL_LIMIT {
        let mut d = 3u64;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        return true;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in MR_WITNESSES.iter() {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Side condition on the prime attached to a statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeConstraint {
    AtLeast3,
    Above3,
    Above5,
}

impl PrimeConstraint {
    pub fn admits(self, p: u64) -> bool {
        match self {
            PrimeConstraint::AtLeast3 => p >= 3,
            PrimeConstraint::Above3 => p > 3,
            PrimeConstraint::Above5 => p > 5,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PrimeConstraint::AtLeast3 => "p>=3",
            PrimeConstraint::Above3 => "p>3",
            PrimeConstraint::Above5 => "p>5",
        }
    }
}

/// Inclusive range of candidate primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeRange {
    lo: u64,
    hi: u64,
    constraint: PrimeConstraint,
}

impl PrimeRange {
    pub fn new(lo: u64, hi: u64, constraint: PrimeConstraint) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        Ok(PrimeRange { lo, hi, constraint })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn constraint(&self) -> PrimeConstraint {
        self.constraint
    }
}

pub fn primes_in(range: &PrimeRange) -> Vec<u64> {
    (range.lo..=range.hi)
        .filter(|&n| range.constraint.admits(n) && is_prime(n))
        .collect()
}

/// `(-1)^n` as a small integer.
pub fn sign(n: u64) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Numerator of an integral rational; `None` otherwise.
pub fn as_integer(q: &Rational) -> Option<&BigInt> {
    if q.denom().is_one() {
        Some(q.numer())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod_pk(&int(0), 5, 2).unwrap().value(), 0);
        let r = reduce_mod_pk(&rat(3, 8), 5, 2).unwrap();
        assert_eq!(r.value(), 16);
        assert_eq!((8 * 16) % 25, 3);
        assert_eq!(
            reduce_mod_pk(&rat(1, 5), 5, 2),
            Err(Error::NonUnitDenominator { p: 5 })
        );
    }

    #[test]
    fn reduce_negative_and_unreduced_input() {
        // 10/15 is stored as 2/3
        let a = reduce_mod_pk(&rat(10, 15), 5, 3).unwrap();
        let b = reduce_mod_pk(&rat(2, 3), 5, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(reduce_mod_pk(&int(-1), 7, 2).unwrap().value(), 48);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(0, 7), 0);
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(-1, 7), -1);
        assert_eq!(legendre(14, 7), 0);
        assert_eq!(legendre(3, 5), -1);
    }

    #[test]
    fn least_residue_examples() {
        assert_eq!(least_residue(&int(4), 7).unwrap(), 4);
        assert_eq!(least_residue(&rat(-1, 2), 7).unwrap(), 3);
        assert_eq!(least_residue(&rat(-1, 3), 7).unwrap(), 2);
        assert!(least_residue(&rat(1, 7), 7).is_err());
    }

    #[test]
    fn primes_examples() {
        let r = PrimeRange::new(3, 12, PrimeConstraint::AtLeast3).unwrap();
        assert_eq!(primes_in(&r), [3, 5, 7, 11]);
        let r = PrimeRange::new(4, 4, PrimeConstraint::Above3).unwrap();
        assert!(primes_in(&r).is_empty());
        let r = PrimeRange::new(5, 13, PrimeConstraint::Above3).unwrap();
        assert_eq!(primes_in(&r), [5, 7, 11, 13]);
        assert!(PrimeRange::new(50, 3, PrimeConstraint::AtLeast3).is_err());
    }

    #[test]
    fn primality_above_trial_limit() {
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001)); // 101 * 9901
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fraction_string(&rat(4, -6)), "-2/3");
        assert_eq!(fraction_string(&int(5)), "5/1");
    }

    #[test]
    fn residue_ring_checks() {
        let a = ResiduePK::new(5, 2, 7).unwrap();
        let b = ResiduePK::new(5, 2, 20).unwrap();
        assert_eq!(a.add(&b).unwrap().value(), 2);
        assert_eq!(a.mul(&b).unwrap().value(), 15);
        let c = ResiduePK::new(5, 3, 7).unwrap();
        assert!(a.add(&c).is_err());
        assert!(ResiduePK::new(6, 1, 0).is_err());
        assert_eq!(c.truncate(1).value(), 2);
    }

    #[test]
    fn oversized_modulus_rejected() {
        assert!(matches!(
            checked_pow(1_000_003, 4),
            Err(Error::ModulusTooLarge { .. })
        ));
    }
}
