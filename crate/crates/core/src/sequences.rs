//! Exact evaluation of the polynomial and number sequences used by the catalog.
//!
//! `D_n(x,y) = sum_k C(n,k) C(x,k) y^k`, `S_n(x,y) = sum_k C(n,k) C(x,k) C(-1-x,k) y^k`,
//! with the specialisations `d_n(x) = D_n(x,2)`, `s_n(x) = S_n(x,-1)` and
//! `t_n(x) = S_n(x,-2)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::domain::{Domain, Exact};
use crate::error::Result;
use crate::exact::{self, Rational};

/// A sequence of polynomials in `x`, indexed by `n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeqFamily {
    /// `D_n(x, y)`
    D(Rational),
    /// `S_n(x, y)`
    S(Rational),
    /// `d_n(x) = D_n(x, 2)`
    LowerD,
    /// `s_n(x) = S_n(x, -1)`
    LowerS,
    /// `t_n(x) = S_n(x, -2)`
    LowerT,
}

impl SeqFamily {
    /// Reduces to the two base shapes: `(is_s_form, y)`.
    fn base(&self) -> (bool, Rational) {
        match self {
            SeqFamily::D(y) => (false, y.clone()),
            SeqFamily::S(y) => (true, y.clone()),
            SeqFamily::LowerD => (false, exact::int(2)),
            SeqFamily::LowerS => (true, exact::int(-1)),
            SeqFamily::LowerT => (true, exact::int(-2)),
        }
    }
}

/// Integer sequences indexed by `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntSeq {
    /// `C(2k, k)`
    CentralBinom,
    /// `C(2k, k) / (k + 1)`
    Catalan,
    /// `C(3k, k)`
    Binom3k,
    /// `C(4k, 2k)`
    Binom4k,
    /// `C(6k, 3k)`
    Binom6k,
}

impl IntSeq {
    pub fn value(self, k: u64) -> BigInt {
        match self {
            IntSeq::CentralBinom => binom_nat(2 * k, k),
            IntSeq::Catalan => binom_nat(2 * k, k) / BigInt::from(k + 1),
            IntSeq::Binom3k => binom_nat(3 * k, k),
            IntSeq::Binom4k => binom_nat(4 * k, 2 * k),
            IntSeq::Binom6k => binom_nat(6 * k, 3 * k),
        }
    }
}

/// `small_seq` kinds exposed on the public surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallSeq {
    Catalan,
    CentralBinom,
}

pub fn small_seq(kind: SmallSeq, n: u64) -> BigInt {
    match kind {
        SmallSeq::Catalan => IntSeq::Catalan.value(n),
        SmallSeq::CentralBinom => IntSeq::CentralBinom.value(n),
    }
}

/// Binomial coefficient of nonnegative integers.
pub fn binom_nat(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient `x(x-1)...(x-k+1)/k!`.
pub fn binom(x: &Rational, k: u64) -> Rational {
    binom_in(&Exact, x, k).expect("exact division by a positive integer")
}

/// `C(x, k)` in an arbitrary domain; in `Z/p^eZ` this needs `k < p`.
pub fn binom_in<D: Domain>(dom: &D, x: &D::Elem, k: u64) -> Result<D::Elem> {
    let mut acc = dom.one();
    for i in 0..k {
        let factor = dom.sub(x, &dom.from_int(i as i64));
        acc = dom.div_int(&dom.mul(&acc, &factor), i as i64 + 1)?;
    }
    Ok(acc)
}

/// `[C(x,0), ..., C(x,len-1)]`.
pub fn binom_row_in<D: Domain>(dom: &D, x: &D::Elem, len: usize) -> Result<Vec<D::Elem>> {
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return Ok(out);
    }
    let mut cur = dom.one();
    out.push(cur.clone());
    for k in 1..len {
        let factor = dom.sub(x, &dom.from_int(k as i64 - 1));
        cur = dom.div_int(&dom.mul(&cur, &factor), k as i64)?;
        out.push(cur.clone());
    }
    Ok(out)
}

/// `b_n = sum_{k<=n} C(n,k) w_k` for every `n < w.len()`.
pub fn binomial_transform_in<D: Domain>(dom: &D, weights: &[D::Elem]) -> Vec<D::Elem> {
    // repeated forward sums: after n passes, row[0] = sum_k C(n,k) w_k
    let mut row = weights.to_vec();
    let mut out = Vec::with_capacity(weights.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        for k in 0..row.len() - 1 {
            row[k] = dom.add(&row[k], &row[k + 1]);
        }
        row.pop();
    }
    out
}

/// The dual transform `a*_n = sum_k C(n,k) (-1)^k a_k`, in any domain.
pub fn dual_in<D: Domain>(dom: &D, a: &[D::Elem]) -> Vec<D::Elem> {
    let signed: Vec<D::Elem> = a
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v.clone() } else { dom.neg(v) })
        .collect();
    binomial_transform_in(dom, &signed)
}

pub fn dual(a: &[Rational]) -> Vec<Rational> {
    dual_in(&Exact, a)
}

/// Weights `w_k` whose binomial transform is the family.
fn family_weights_in<D: Domain>(
    dom: &D,
    family: &SeqFamily,
    x: &Rational,
    len: usize,
) -> Result<Vec<D::Elem>> {
    let (s_form, y) = family.base();
    let y = dom.lift(&y)?;
    let bx = binom_row_in(dom, &dom.lift(x)?, len)?;
    let bm = if s_form {
        Some(binom_row_in(dom, &dom.lift(&(-exact::int(1) - x))?, len)?)
    } else {
        None
    };
    let mut ypow = dom.one();
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        let mut w = dom.mul(&bx[k], &ypow);
        if let Some(bm) = &bm {
            w = dom.mul(&w, &bm[k]);
        }
        out.push(w);
        ypow = dom.mul(&ypow, &y);
    }
    Ok(out)
}

/// First `len` members of a family at `x`, computed in `dom`.
pub fn seq_table_in<D: Domain>(
    dom: &D,
    family: &SeqFamily,
    x: &Rational,
    len: usize,
) -> Result<Vec<D::Elem>> {
    let w = family_weights_in(dom, family, x, len)?;
    Ok(binomial_transform_in(dom, &w))
}

/// The defining finite sum, evaluated exactly.
pub fn seq_eval(family: &SeqFamily, n: u64, x: &Rational) -> Rational {
    let (s_form, y) = family.base();
    let mx = -exact::int(1) - x;
    let mut acc = Rational::zero();
    let mut ypow = Rational::one();
    for k in 0..=n {
        let mut term = Rational::from_integer(binom_nat(n, k)) * binom(x, k) * &ypow;
        if s_form {
            term *= binom(&mx, k);
        }
        acc += term;
        ypow *= &y;
    }
    acc
}

/// Euler numbers `E_0..E_{n}` from `sum_{2|k} C(n,k) E_{n-k} = 0`.
fn euler_table(len: usize) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            e.push(BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        let mut c = BigInt::one(); // C(n, k)
        for k in 1..=n {
            c = c * BigInt::from(n - k + 1) / BigInt::from(k);
            if k % 2 == 0 {
                acc += &c * &e[n - k];
            }
        }
        e.push(-acc);
    }
    e
}

/// Bernoulli numbers from `sum_{k<=n} C(n+1,k) B_k = 0` (n >= 1), `B_0 = 1`.
fn bernoulli_table(len: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(len);
    for n in 0..len {
        if n == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        let mut c = BigInt::one(); // C(n+1, k)
        for (k, bk) in b.iter().enumerate() {
            if k > 0 {
                c = c * BigInt::from(n + 2 - k) / BigInt::from(k);
            }
            acc += Rational::from_integer(c.clone()) * bk;
        }
        b.push(-acc / exact::int(n as i64 + 1));
    }
    b
}

pub fn euler_number(n: u64) -> BigInt {
    euler_table(n as usize + 1).pop().expect("nonempty")
}

/// `B_n`, or the Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli(n: u64, x: Option<&Rational>) -> Rational {
    let b = bernoulli_table(n as usize + 1);
    match x {
        None => b[n as usize].clone(),
        Some(x) => bernoulli_poly(&b, n, x),
    }
}

fn bernoulli_poly(b: &[Rational], n: u64, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=n {
        let coeff = Rational::from_integer(binom_nat(n, k)) * &b[k as usize];
        acc += coeff * num_traits::pow::pow(x.clone(), (n - k) as usize);
    }
    acc
}

/// `H_n^(order) = sum_{0<k<=n} 1/k^order`.
pub fn harmonic(n: u64, order: u32) -> Rational {
    let mut acc = Rational::zero();
    for k in 1..=n {
        acc += Rational::new(BigInt::one(), BigInt::from(k).pow(order));
    }
    acc
}

/// Memo tables for one verification run.
///
/// Entries are pure functions of their keys and are extended in place; a
/// cache must stay inside one execution context (clone it per worker).
#[derive(Debug, Clone, Default)]
pub struct SeqCache {
    euler: Vec<BigInt>,
    bernoulli: Vec<Rational>,
    harmonic: [Vec<Rational>; 2],
    ints: BTreeMap<IntSeq, Vec<BigInt>>,
    tables: BTreeMap<(SeqFamily, Rational), Vec<Rational>>,
    binoms: BTreeMap<Rational, Vec<Rational>>,
}

/// Flat snapshot of the p-independent scalar tables, for persistence.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CacheSnapshot {
    pub euler: Vec<BigInt>,
    pub bernoulli: Vec<Rational>,
    pub harmonic1: Vec<Rational>,
    pub harmonic2: Vec<Rational>,
    pub ints: Vec<(IntSeq, Vec<BigInt>)>,
}

impl SeqCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn euler(&mut self, n: u64) -> &BigInt {
        let n = n as usize;
        if self.euler.len() <= n {
            self.euler = euler_table((n + 1).max(2 * self.euler.len()));
        }
        &self.euler[n]
    }

    pub fn bernoulli(&mut self, n: u64) -> &Rational {
        let n = n as usize;
        if self.bernoulli.len() <= n {
            self.bernoulli = bernoulli_table((n + 1).max(2 * self.bernoulli.len()));
        }
        &self.bernoulli[n]
    }

    pub fn bernoulli_poly(&mut self, n: u64, x: &Rational) -> Rational {
        self.bernoulli(n);
        bernoulli_poly(&self.bernoulli, n, x)
    }

    /// `H_n` (order 1) or `H_n^(2)` (order 2).
    pub fn harmonic(&mut self, n: u64, order: u32) -> &Rational {
        assert!(order == 1 || order == 2, "harmonic order must be 1 or 2");
        let t = &mut self.harmonic[order as usize - 1];
        if t.is_empty() {
            t.push(Rational::zero());
        }
        while t.len() <= n as usize {
            let k = t.len() as u64;
            let next =
                t[t.len() - 1].clone() + Rational::new(BigInt::one(), BigInt::from(k).pow(order));
            t.push(next);
        }
        &t[n as usize]
    }

    pub fn int_seq(&mut self, seq: IntSeq, n: u64) -> &BigInt {
        let t = self.ints.entry(seq).or_default();
        while t.len() <= n as usize {
            let k = t.len() as u64;
            t.push(seq.value(k));
        }
        &t[n as usize]
    }

    /// Prefix `[C(x,0), ..., C(x,len-1)]`.
    pub fn binom_row(&mut self, x: &Rational, len: usize) -> &[Rational] {
        let row = self.binoms.entry(x.clone()).or_default();
        if row.is_empty() {
            row.push(Rational::one());
        }
        while row.len() < len {
            let k = row.len() as i64;
            let next = &row[row.len() - 1] * (x - exact::int(k - 1)) / exact::int(k);
            row.push(next);
        }
        &row[..len]
    }

    /// Prefix of a family at `x`, extended incrementally.
    pub fn table(&mut self, family: &SeqFamily, x: &Rational, len: usize) -> &[Rational] {
        let key = (family.clone(), x.clone());
        let have = self.tables.get(&key).map_or(0, Vec::len);
        if have < len {
            let (s_form, y) = family.base();
            let mx = -exact::int(1) - x;
            let bx = self.binom_row(x, len).to_vec();
            let bm = if s_form {
                Some(self.binom_row(&mx, len).to_vec())
            } else {
                None
            };
            let mut weights = Vec::with_capacity(len);
            let mut ypow = Rational::one();
            for k in 0..len {
                let mut w = &bx[k] * &ypow;
                if let Some(bm) = &bm {
                    w *= &bm[k];
                }
                weights.push(w);
                ypow *= &y;
            }
            let entry = self.tables.entry(key.clone()).or_default();
            for n in have..len {
                // sum_k C(n,k) w_k with C(n,k) built multiplicatively
                let mut acc = Rational::zero();
                let mut c = BigInt::one();
                for (k, w) in weights.iter().enumerate().take(n + 1) {
                    if k > 0 {
                        c = c * BigInt::from(n + 1 - k) / BigInt::from(k);
                    }
                    acc += Rational::from_integer(c.clone()) * w;
                }
                entry.push(acc);
            }
        }
        &self.tables[&key][..len]
    }

    /// Absorbs the scalar tables of a worker's cache; the longer prefix wins.
    pub fn merge(&mut self, other: SeqCache) {
        fn longer<T>(a: &mut Vec<T>, b: Vec<T>) {
            if b.len() > a.len() {
                *a = b;
            }
        }
        longer(&mut self.euler, other.euler);
        longer(&mut self.bernoulli, other.bernoulli);
        let [h1, h2] = other.harmonic;
        longer(&mut self.harmonic[0], h1);
        longer(&mut self.harmonic[1], h2);
        for (k, v) in other.ints {
            longer(self.ints.entry(k).or_default(), v);
        }
    }

    pub fn snapshot(&self) -> CacheSnapshot {
        CacheSnapshot {
            euler: self.euler.clone(),
            bernoulli: self.bernoulli.clone(),
            harmonic1: self.harmonic[0].clone(),
            harmonic2: self.harmonic[1].clone(),
            ints: self.ints.iter().map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    pub fn restore(snapshot: CacheSnapshot) -> Self {
        SeqCache {
            euler: snapshot.euler,
            bernoulli: snapshot.bernoulli,
            harmonic: [snapshot.harmonic1, snapshot.harmonic2],
            ints: snapshot.ints.into_iter().collect(),
            ..Self::default()
        }
    }
}

/// `[E_0, ..., E_{len-1}]`, exposed for persistence checks.
pub fn euler_numbers(len: usize) -> Vec<BigInt> {
    euler_table(len)
}

/// Residual of the Euler recurrence at `n >= 1` (exactly zero when correct).
pub fn euler_residual(e: &[BigInt], n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for k in (0..=n).step_by(2) {
        acc += binom_nat(n as u64, k as u64) * &e[n - k];
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::ModPk;
    use crate::exact::{int, rat, reduce_mod_pk};

    fn naive_dual(a: &[Rational]) -> Vec<Rational> {
        (0..a.len())
            .map(|n| {
                let mut acc = Rational::zero();
                for (k, ak) in a.iter().enumerate().take(n + 1) {
                    let c = Rational::from_integer(binom_nat(n as u64, k as u64));
                    let s = if k % 2 == 0 { int(1) } else { int(-1) };
                    acc += c * s * ak;
                }
                acc
            })
            .collect()
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom(&int(5), 2), int(10));
        assert_eq!(binom(&rat(-1, 2), 2), rat(3, 8));
        assert_eq!(binom(&int(3), 5), int(0));
        assert_eq!(binom(&rat(7, 3), 0), int(1));
        assert_eq!(binom(&int(-3), 2), int(6));
        assert_eq!(binom(&int(4), 2), rat(3, 8) * int(16));
    }

    #[test]
    fn seq_eval_examples() {
        assert_eq!(seq_eval(&SeqFamily::LowerD, 2, &int(2)), int(13));
        assert_eq!(seq_eval(&SeqFamily::LowerD, 3, &rat(-1, 2)), int(0));
        assert_eq!(seq_eval(&SeqFamily::LowerS, 1, &int(1)), int(3));
        assert_eq!(
            seq_eval(&SeqFamily::LowerS, 4, &rat(-5, 3)),
            seq_eval(&SeqFamily::LowerS, 4, &rat(2, 3))
        );
        // d(x) = D(x, 2), t(x) = S(x, -2)
        let x = rat(3, 7);
        assert_eq!(
            seq_eval(&SeqFamily::LowerD, 5, &x),
            seq_eval(&SeqFamily::D(int(2)), 5, &x)
        );
        assert_eq!(
            seq_eval(&SeqFamily::LowerT, 5, &x),
            seq_eval(&SeqFamily::S(int(-2)), 5, &x)
        );
    }

    #[test]
    fn delannoy_numbers_count_lattice_paths() {
        // central Delannoy numbers 1, 3, 13, 63, 321
        let central: Vec<Rational> = (0..5)
            .map(|n| seq_eval(&SeqFamily::LowerD, n, &int(n as i64)))
            .collect();
        assert_eq!(central, [1, 3, 13, 63, 321].map(int));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(
            dual(&[int(1), int(1), int(1), int(1)]),
            [1, 0, 0, 0].map(int)
        );
        let a: Vec<Rational> = (0..4)
            .map(|k| binom(&int(4), k) * int(if k % 2 == 0 { 1 } else { -1 }))
            .collect();
        assert_eq!(dual(&a), [1, 5, 15, 35].map(int));
        assert_eq!(naive_dual(&a), dual(&a));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(0), BigInt::from(1));
        assert_eq!(euler_number(1), BigInt::from(0));
        assert_eq!(euler_number(2), BigInt::from(-1));
        assert_eq!(euler_number(4), BigInt::from(5));
        assert_eq!(euler_number(6), BigInt::from(-61));
        let e = euler_numbers(61);
        for n in 1..=60 {
            assert!(euler_residual(&e, n).is_zero(), "n = {n}");
            if n % 2 == 1 {
                assert!(e[n].is_zero());
            }
        }
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0, None), int(1));
        assert_eq!(bernoulli(1, None), rat(-1, 2));
        assert_eq!(bernoulli(2, None), rat(1, 6));
        assert_eq!(bernoulli(2, Some(&rat(1, 3))), rat(-1, 18));
        assert_eq!(bernoulli(10, None).denom(), &BigInt::from(66));
        assert_eq!(bernoulli(10, None), rat(5, 66));
        assert_eq!(bernoulli(3, None), int(0));
    }

    #[test]
    fn harmonic_examples() {
        assert_eq!(harmonic(0, 1), int(0));
        assert_eq!(harmonic(3, 1), rat(11, 6));
        assert_eq!(harmonic(6, 1), rat(49, 20));
        assert_eq!(reduce_mod_pk(&harmonic(6, 1), 7, 2).unwrap().value(), 0);
        assert_eq!(harmonic(2, 2), rat(5, 4));
        let mut c = SeqCache::new();
        assert_eq!(c.harmonic(6, 1), &rat(49, 20));
        assert_eq!(c.harmonic(2, 2), &rat(5, 4));
    }

    #[test]
    fn small_seq_examples() {
        assert_eq!(small_seq(SmallSeq::Catalan, 0), BigInt::from(1));
        assert_eq!(small_seq(SmallSeq::Catalan, 4), BigInt::from(14));
        assert_eq!(small_seq(SmallSeq::CentralBinom, 3), BigInt::from(20));
        for k in 0..30u64 {
            let alt = binom_nat(2 * k, k) - binom_nat(2 * k, k + 1);
            assert_eq!(small_seq(SmallSeq::Catalan, k), alt);
        }
    }

    #[test]
    fn negative_half_binomials_give_central_binomials() {
        for n in 0..=20u64 {
            let lhs = binom(&rat(-1, 2), n) * num_traits::pow::pow(int(-4), n as usize);
            assert_eq!(lhs, Rational::from_integer(binom_nat(2 * n, n)));
        }
    }

    #[test]
    fn d_at_negative_half() {
        for m in 0..=10u64 {
            let even = seq_eval(&SeqFamily::LowerD, 2 * m, &rat(-1, 2));
            let expect = Rational::new(binom_nat(2 * m, m), BigInt::from(4).pow(m as u32));
            assert_eq!(even, expect);
            assert!(seq_eval(&SeqFamily::LowerD, 2 * m + 1, &rat(-1, 2)).is_zero());
        }
    }

    #[test]
    fn cache_cold_and_warm_agree() {
        let mut cache = SeqCache::new();
        let x = rat(-1, 3);
        let warm_short = cache.table(&SeqFamily::LowerS, &x, 5).to_vec();
        let warm_long = cache.table(&SeqFamily::LowerS, &x, 12).to_vec();
        assert_eq!(&warm_long[..5], &warm_short[..]);
        for (n, v) in warm_long.iter().enumerate() {
            assert_eq!(v, &seq_eval(&SeqFamily::LowerS, n as u64, &x));
        }
        let fresh = seq_table_in(&Exact, &SeqFamily::LowerS, &x, 12).unwrap();
        assert_eq!(fresh, warm_long);
        assert_eq!(cache.euler(10), &euler_number(10));
        assert_eq!(cache.bernoulli(12), &bernoulli(12, None));
        assert_eq!(cache.int_seq(IntSeq::Binom6k, 3), &binom_nat(18, 9));
        let snap = cache.snapshot();
        let restored = SeqCache::restore(snap.clone());
        assert_eq!(restored.snapshot(), snap);
    }

    #[test]
    fn modular_binomials_agree_with_exact() {
        let dom = ModPk::new(7, 3).unwrap();
        for x in [rat(-1, 2), rat(2, 5), int(-4), rat(13, 3)] {
            let xe = dom.lift(&x).unwrap();
            for k in 0..7 {
                let fast = binom_in(&dom, &xe, k).unwrap();
                let slow = reduce_mod_pk(&binom(&x, k), 7, 3).unwrap().value();
                assert_eq!(fast, slow);
            }
            // k! is not a unit once k >= p
            assert!(binom_in(&dom, &xe, 7).is_err());
            let table = seq_table_in(&dom, &SeqFamily::LowerD, &x, 7).unwrap();
            for (n, v) in table.iter().enumerate() {
                let e = seq_eval(&SeqFamily::LowerD, n as u64, &x);
                assert_eq!(*v, reduce_mod_pk(&e, 7, 3).unwrap().value());
            }
        }
    }
}
