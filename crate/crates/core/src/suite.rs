//! Verification of catalog statements at one prime and one parameter
//! assignment, and the sweep over prime ranges.
//!
//! Each statement carries two instantiations of the same evaluator: one over
//! [`Exact`] and one over [`ModPk`] at the sweep's working precision. The
//! modular path is the default; a non-unit denominator there falls back to the
//! exact path.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::domain::{Domain, Exact, ModPk};
use crate::error::{Error, Result};
use crate::exact::{
    self, checked_pow, fraction_string, int, is_p_integral, least_residue, primes_in,
    PrimeConstraint, PrimeRange, Rational, ResiduePK,
};
use crate::sequences::{
    binom_nat, binom_row_in, binomial_transform_in, dual_in, seq_table_in, IntSeq, SeqCache,
    SeqFamily,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Theorem,
    Lemma,
    Corollary,
    Remark,
    Conjecture,
}

impl Kind {
    pub const ALL: [Kind; 5] = [
        Kind::Theorem,
        Kind::Lemma,
        Kind::Corollary,
        Kind::Remark,
        Kind::Conjecture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Theorem => "theorem",
            Kind::Lemma => "lemma",
            Kind::Corollary => "corollary",
            Kind::Remark => "remark",
            Kind::Conjecture => "conjecture",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        Kind::ALL.into_iter().find(|k| k.as_str() == s)
    }

    /// Failures of proven kinds are bugs; conjecture failures are findings.
    pub fn is_proven(self) -> bool {
        self != Kind::Conjecture
    }
}

/// A rational constant usable in `const` position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Q(pub i64, pub i64);

impl Q {
    pub fn value(self) -> Rational {
        exact::rat(self.0, self.1)
    }
}

/// Which value of `x` a source is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Xr {
    /// The record's `x`.
    P,
    /// `-1 - x`.
    Neg,
    Q(Q),
}

/// The `y` argument of `D_n(x, y)` or `S_n(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Yr {
    P,
    /// `y / (y - 1)`.
    Ratio,
    Q(Q),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fm {
    D(Yr),
    S(Yr),
    Ld,
    Ls,
    Lt,
}

/// Integer numerators of coefficient sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Num {
    One,
    /// `C(2k,k)`
    Central,
    /// `C(2k,k)^2`
    Central2,
    /// `C(2k,k) C_k`
    CentralCat,
    /// `C_k`
    Cat,
    /// `C(2k,k) C(3k,k)`
    C2C3,
    /// `C(4k,2k) C(2k,k)`
    C2C4,
    /// `C(6k,3k) C(3k,k)`
    C3C6,
    /// `C(3k,k) C_k`
    C3Cat,
    /// `C(4k,2k) C_k`
    C4Cat,
    /// `C(6k,3k) C(3k,k) / (k+1)`
    C3C6Succ,
    /// `C(q, k)` for a rational `q`
    Binom(Q),
}

/// `c_k = num_k / m^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coef(pub Num, pub Q);

impl Coef {
    /// The numerator `num_k`.
    pub fn numerator(self, cache: &mut SeqCache, k: u64) -> Rational {
        let mut int_seq = |s: IntSeq| Rational::from_integer(cache.int_seq(s, k).clone());
        match self.0 {
            Num::One => Rational::one(),
            Num::Central => int_seq(IntSeq::CentralBinom),
            Num::Central2 => {
                let c = int_seq(IntSeq::CentralBinom);
                &c * &c
            }
            Num::CentralCat => int_seq(IntSeq::CentralBinom) * int_seq(IntSeq::Catalan),
            Num::Cat => int_seq(IntSeq::Catalan),
            Num::C2C3 => int_seq(IntSeq::CentralBinom) * int_seq(IntSeq::Binom3k),
            Num::C2C4 => int_seq(IntSeq::CentralBinom) * int_seq(IntSeq::Binom4k),
            Num::C3C6 => int_seq(IntSeq::Binom3k) * int_seq(IntSeq::Binom6k),
            Num::C3Cat => int_seq(IntSeq::Binom3k) * int_seq(IntSeq::Catalan),
            Num::C4Cat => int_seq(IntSeq::Binom4k) * int_seq(IntSeq::Catalan),
            Num::C3C6Succ => {
                int_seq(IntSeq::Binom3k) * int_seq(IntSeq::Binom6k) / int(k as i64 + 1)
            }
            Num::Binom(q) => crate::sequences::binom(&q.value(), k),
        }
    }

    pub fn value(self, cache: &mut SeqCache, k: u64) -> Rational {
        self.numerator(cache, k) / num_traits::pow::pow(self.1.value(), k as usize)
    }
}

/// A length-`p` sequence entering a weighted sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Src {
    One,
    Fam(Fm, Xr),
    /// `C(x,k) C(-1-x,k)`
    Pair(Xr),
    /// `F_n = sum_k C(n,k) c_k`
    Trans(Coef),
    /// The record's test sequence `a_k`.
    A,
    /// Its dual `a*_k`.
    ADual,
    /// `F_n = sum_k C(n,k) num_k / m^k` with the record's `m`.
    TransM(Num),
}

/// Geometric factor `base^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    One,
    OneMinusY,
    Q(Q),
    InvM,
    InvFourMinusM,
}

/// `sum_{k<p} (+-1)^k (a k + b) c_k base^k s1_k s2_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sum {
    pub alt: bool,
    pub lin: (i64, i64),
    pub coef: Option<Coef>,
    pub base: Base,
    pub s1: Src,
    pub s2: Src,
}

impl Sum {
    pub const fn of(s1: Src, s2: Src) -> Sum {
        Sum {
            alt: false,
            lin: (0, 1),
            coef: None,
            base: Base::One,
            s1,
            s2,
        }
    }

    pub const fn sq(s: Src) -> Sum {
        Sum::of(s, s)
    }

    pub const fn alt(mut self) -> Sum {
        self.alt = true;
        self
    }

    pub const fn lin(mut self, a: i64, b: i64) -> Sum {
        self.lin = (a, b);
        self
    }

    pub const fn coef(mut self, c: Coef) -> Sum {
        self.coef = Some(c);
        self
    }

    pub const fn base(mut self, b: Base) -> Sum {
        self.base = b;
        self
    }
}

/// Test sequences for statements quantified over all `p`-adic sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ASeq {
    /// `a_k = (-1)^k C(m, k)`
    Binom(u64),
    /// Seeded pseudo-random integers in `[-9, 9]`.
    Random(u64),
}

impl ASeq {
    pub fn values(self, len: usize) -> Vec<Rational> {
        match self {
            ASeq::Binom(m) => (0..len as u64)
                .map(|k| {
                    let c = Rational::from_integer(binom_nat(m, k));
                    if k % 2 == 0 {
                        c
                    } else {
                        -c
                    }
                })
                .collect(),
            ASeq::Random(seed) => {
                let mut state = seed;
                (0..len)
                    .map(|_| int((splitmix64(&mut state) % 19) as i64 - 9))
                    .collect()
            }
        }
    }

    pub fn label(self) -> String {
        match self {
            ASeq::Binom(m) => format!("(-1)^k*C({m},k)"),
            ASeq::Random(seed) => format!("random(seed={seed})"),
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One parameter assignment.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Params {
    pub x: Option<Rational>,
    pub y: Option<Rational>,
    pub m: Option<i64>,
    pub a: Option<ASeq>,
    pub i: Option<u64>,
}

impl Params {
    pub fn x(&self) -> &Rational {
        self.x.as_ref().expect("statement takes x")
    }

    pub fn y(&self) -> &Rational {
        self.y.as_ref().expect("statement takes y")
    }

    pub fn m(&self) -> i64 {
        self.m.expect("statement takes m")
    }

    pub fn i(&self) -> u64 {
        self.i.expect("statement takes i")
    }

    fn describe(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if let Some(y) = &self.y {
            out.push((String::from("y"), fraction_string(y)));
        }
        if let Some(m) = self.m {
            out.push((String::from("m"), m.to_string()));
        }
        if let Some(a) = self.a {
            out.push((String::from("a"), a.label()));
        }
        if let Some(i) = self.i {
            out.push((String::from("i"), i.to_string()));
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamDomain {
    None,
    /// `x` over the sampling policy.
    X,
    /// `x` in `{0, ..., p-1}`.
    Residues,
    XY,
    M,
    A,
    MA,
    XA,
    /// Index `i` in `0..=p-1-lag`.
    Idx(u64),
}

impl ParamDomain {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamDomain::None => "none",
            ParamDomain::X => "x: residues 0..p-1 and rational panel",
            ParamDomain::Residues => "x in {0,...,p-1}",
            ParamDomain::XY => "x: residues and panel; y: y panel",
            ParamDomain::M => "m: integer panel",
            ParamDomain::A => "a: test sequences",
            ParamDomain::MA => "m: integer panel; a: test sequences",
            ParamDomain::XA => "x: residues and panel; a: test sequences",
            ParamDomain::Idx(0) => "index pairs (i,j), i,j in {0,...,p-1}",
            ParamDomain::Idx(_) => "index pairs (i,j) with i+j=p-2",
        }
    }
}

/// Side conditions checked before evaluation; violations become skips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideCondition {
    None,
    YUnit,
    YNotZeroOne,
    /// `x` not congruent to `-1/2` modulo `p`.
    XNotNegHalfModP,
    /// `x` different from `-1/2` as a rational.
    XNotNegHalf,
    MUnit,
    /// `p` does not divide `m(m-4)`.
    MM4Unit,
}

impl SideCondition {
    pub fn holds(self, a: &Params, p: u64) -> bool {
        let unit = |q: &Rational| exact::reduce_mod_pk(q, p, 1).is_ok_and(|r| r.value() != 0);
        match self {
            SideCondition::None => true,
            SideCondition::YUnit => unit(a.y()),
            SideCondition::YNotZeroOne => unit(a.y()) && unit(&(a.y() - int(1))),
            SideCondition::XNotNegHalfModP => unit(&(int(2) * a.x() + int(1))),
            SideCondition::XNotNegHalf => *a.x() != exact::rat(-1, 2),
            SideCondition::MUnit => a.m().rem_euclid(p as i64) != 0,
            SideCondition::MM4Unit => {
                a.m().rem_euclid(p as i64) != 0 && (a.m() - 4).rem_euclid(p as i64) != 0
            }
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SideCondition::None => "",
            SideCondition::YUnit => "y != 0 (mod p)",
            SideCondition::YNotZeroOne => "y != 0, 1 (mod p)",
            SideCondition::XNotNegHalfModP => "x != -1/2 (mod p)",
            SideCondition::XNotNegHalf => "x != -1/2",
            SideCondition::MUnit => "p does not divide m",
            SideCondition::MM4Unit => "p does not divide m(m-4)",
        }
    }
}

/// Both sides of one check, in the evaluation domain.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome<E> {
    pub e: u32,
    pub lhs: E,
    pub rhs: E,
    pub extra: Vec<(String, String)>,
}

impl<E> Outcome<E> {
    pub fn new(e: u32, lhs: E, rhs: E) -> Self {
        Outcome {
            e,
            lhs,
            rhs,
            extra: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: String) -> Self {
        self.extra.push((String::from(key), value));
        self
    }
}

pub type Eval<D> =
    Box<dyn Fn(&mut Ctx<D>, &Params) -> Result<Option<Outcome<<D as Domain>::Elem>>> + Send + Sync>;

/// A catalog entry.
pub struct Statement {
    pub id: &'static str,
    pub kind: Kind,
    pub paper_ref: &'static str,
    /// ASCII rendering of the congruence.
    pub quote: &'static str,
    pub constraint: PrimeConstraint,
    /// Largest modulus exponent over all branches.
    pub e_max: u32,
    pub params: ParamDomain,
    pub side: SideCondition,
    /// Default upper bound on `p` (Euler/Bernoulli indices near `p`).
    pub prime_cap: Option<u64>,
    pub note: &'static str,
    pub(crate) exact: Eval<Exact>,
    pub(crate) modular: Eval<ModPk>,
}

impl core::fmt::Debug for Statement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Statement")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("e_max", &self.e_max)
            .finish()
    }
}

impl Statement {
    pub fn admits(&self, p: u64) -> bool {
        self.constraint.admits(p)
    }

    pub fn eval_exact(
        &self,
        ctx: &mut Ctx<Exact>,
        a: &Params,
    ) -> Result<Option<Outcome<Rational>>> {
        (self.exact)(ctx, a)
    }

    pub fn eval_modular(&self, ctx: &mut Ctx<ModPk>, a: &Params) -> Result<Option<Outcome<u64>>> {
        (self.modular)(ctx, a)
    }
}

/// Evaluation context for one prime: domain, memo tables and scalar cache.
pub struct Ctx<D: Domain> {
    pub dom: D,
    pub p: u64,
    pub cache: SeqCache,
    /// Comparison exponent cap set by a modulus override.
    pub e_limit: u32,
    memo: BTreeMap<String, Vec<D::Elem>>,
}

impl<D: Domain> Ctx<D> {
    pub fn new(dom: D, p: u64, cache: SeqCache) -> Self {
        Ctx {
            dom,
            p,
            cache,
            e_limit: u32::MAX,
            memo: BTreeMap::new(),
        }
    }

    pub fn into_cache(self) -> SeqCache {
        self.cache
    }

    pub fn lift(&self, q: &Rational) -> Result<D::Elem> {
        self.dom.lift(q)
    }

    pub fn int(&self, n: i64) -> D::Elem {
        self.dom.from_int(n)
    }

    pub fn pq(&self) -> Rational {
        int(self.p as i64)
    }

    pub(crate) fn memo<F>(&mut self, key: String, f: F) -> Result<Vec<D::Elem>>
    where
        F: FnOnce(&mut Self) -> Result<Vec<D::Elem>>,
    {
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = f(self)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    fn resolve_x(&self, a: &Params, xr: Xr) -> Rational {
        match xr {
            Xr::P => a.x().clone(),
            Xr::Neg => -int(1) - a.x(),
            Xr::Q(q) => q.value(),
        }
    }

    fn resolve_y(&self, a: &Params, yr: Yr) -> Rational {
        match yr {
            Yr::P => a.y().clone(),
            Yr::Ratio => a.y() / (a.y() - int(1)),
            Yr::Q(q) => q.value(),
        }
    }

    /// First `p` members of a family.
    pub fn table(&mut self, fam: &SeqFamily, x: &Rational) -> Result<Vec<D::Elem>> {
        let len = self.p as usize;
        self.memo(format!("fam|{fam:?}|{x}"), |c| {
            seq_table_in(&c.dom, fam, x, len)
        })
    }

    /// `[C(x,k) C(-1-x,k)]_{k<p}`.
    pub fn pairs(&mut self, x: &Rational) -> Result<Vec<D::Elem>> {
        let len = self.p as usize;
        self.memo(format!("pair|{x}"), |c| {
            let bx = binom_row_in(&c.dom, &c.lift(x)?, len)?;
            let bm = binom_row_in(&c.dom, &c.lift(&(-int(1) - x))?, len)?;
            Ok(bx.iter().zip(&bm).map(|(u, v)| c.dom.mul(u, v)).collect())
        })
    }

    /// `[c_k]_{k<p}`: lifted numerators times powers of `1/m`.
    pub fn coef(&mut self, cf: Coef) -> Result<Vec<D::Elem>> {
        let len = self.p;
        self.memo(format!("coef|{cf:?}"), |c| {
            if let (Num::Binom(q), Q(1, 1)) = (cf.0, cf.1) {
                let x = c.lift(&q.value())?;
                return binom_row_in(&c.dom, &x, len as usize);
            }
            let inv = c.lift(&(Rational::one() / cf.1.value()))?;
            let mut pw = c.dom.one();
            let mut out = Vec::with_capacity(len as usize);
            for k in 0..len {
                let v = cf.numerator(&mut c.cache, k);
                out.push(c.dom.mul(&c.lift(&v)?, &pw));
                pw = c.dom.mul(&pw, &inv);
            }
            Ok(out)
        })
    }

    /// A row of exact numbers `[f(k)]_{k<len}`, lifted.
    pub fn lifted_row(
        &mut self,
        key: &str,
        len: u64,
        f: impl Fn(&mut SeqCache, u64) -> Rational,
    ) -> Result<Vec<D::Elem>> {
        self.memo(format!("row|{key}"), |c| {
            (0..len)
                .map(|k| {
                    let v = f(&mut c.cache, k);
                    c.lift(&v)
                })
                .collect()
        })
    }

    pub fn src(&mut self, a: &Params, s: Src) -> Result<Vec<D::Elem>> {
        let len = self.p as usize;
        match s {
            Src::One => Ok(vec![self.dom.one(); len]),
            Src::Fam(fm, xr) => {
                let x = self.resolve_x(a, xr);
                let fam = match fm {
                    Fm::D(yr) => SeqFamily::D(self.resolve_y(a, yr)),
                    Fm::S(yr) => SeqFamily::S(self.resolve_y(a, yr)),
                    Fm::Ld => SeqFamily::LowerD,
                    Fm::Ls => SeqFamily::LowerS,
                    Fm::Lt => SeqFamily::LowerT,
                };
                self.table(&fam, &x)
            }
            Src::Pair(xr) => {
                let x = self.resolve_x(a, xr);
                self.pairs(&x)
            }
            Src::Trans(cf) => {
                let w = self.coef(cf)?;
                self.memo(format!("trans|{cf:?}"), |c| {
                    Ok(binomial_transform_in(&c.dom, &w))
                })
            }
            Src::A => {
                let seq = a.a.expect("statement takes a");
                self.memo(format!("a|{seq:?}"), |c| {
                    seq.values(len).iter().map(|v| c.lift(v)).collect()
                })
            }
            Src::TransM(num) => {
                let m = a.m();
                if m == 0 {
                    return Err(Error::DivisionByZero);
                }
                self.src(a, Src::Trans(Coef(num, Q(m, 1))))
            }
            Src::ADual => {
                let base = self.src(a, Src::A)?;
                let seq = a.a.expect("statement takes a");
                self.memo(format!("adual|{seq:?}"), |c| Ok(dual_in(&c.dom, &base)))
            }
        }
    }

    fn base_value(&self, a: &Params, b: Base) -> Result<Rational> {
        Ok(match b {
            Base::One => int(1),
            Base::OneMinusY => int(1) - a.y(),
            Base::Q(q) => q.value(),
            Base::InvM => exact::rat(1, a.m()),
            Base::InvFourMinusM => {
                if a.m() == 4 {
                    return Err(Error::DivisionByZero);
                }
                exact::rat(1, 4 - a.m())
            }
        })
    }

    /// Evaluates a weighted sum over `k < p`.
    pub fn sum(&mut self, a: &Params, s: Sum) -> Result<D::Elem> {
        let t1 = self.src(a, s.s1)?;
        let t2 = self.src(a, s.s2)?;
        let coef = match s.coef {
            Some(cf) => Some(self.coef(cf)?),
            None => None,
        };
        let base = self.lift(&self.base_value(a, s.base)?)?;
        let dom = &self.dom;
        let mut bp = dom.one();
        let mut acc = dom.zero();
        for k in 0..self.p as usize {
            let mut t = dom.mul(&t1[k], &t2[k]);
            if let Some(cf) = &coef {
                t = dom.mul(&t, &cf[k]);
            }
            let mut lin = s.lin.0 * k as i64 + s.lin.1;
            if s.alt && k % 2 == 1 {
                lin = -lin;
            }
            if lin != 1 {
                t = dom.mul_int(&t, lin);
            }
            if s.base != Base::One {
                t = dom.mul(&t, &bp);
                bp = dom.mul(&bp, &base);
            }
            acc = dom.add(&acc, &t);
        }
        Ok(acc)
    }

    /// `<x>_p` for the record's `x`.
    pub fn r(&self, a: &Params) -> Result<u64> {
        least_residue(a.x(), self.p)
    }

    /// `(-1)^{<x>_p}`.
    pub fn sgn(&self, a: &Params) -> Result<i64> {
        Ok(if self.r(a)? % 2 == 0 { 1 } else { -1 })
    }

    pub fn out(&self, e: u32, lhs: D::Elem, rhs: &Rational) -> Result<Option<Outcome<D::Elem>>> {
        Ok(Some(Outcome::new(e, lhs, self.lift(rhs)?)))
    }
}

/// Sampling policy for `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum XPolicy {
    /// Residues `0..p-1` followed by the rational panel.
    Full,
    Residues,
    Panel,
    Custom(Vec<Rational>),
}

/// Parameter panels and run options.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub x_policy: XPolicy,
    pub x_panel: Vec<Rational>,
    pub y_panel: Vec<Rational>,
    pub m_panel: Vec<i64>,
    pub a_panel: Vec<ASeq>,
    /// Force the exact path.
    pub exact: bool,
    /// Ignore per-statement prime caps.
    pub ignore_caps: bool,
    /// Per-statement exponent overrides, `(id, e)`; clamped to `e_max`.
    pub modulus_overrides: Vec<(String, u32)>,
    /// Shifts the right side residue of one statement by one (fault injection).
    pub fault: Option<String>,
    /// Microsecond clock for timing fields.
    pub clock: Option<fn() -> u64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            x_policy: XPolicy::Full,
            x_panel: default_x_panel(),
            y_panel: [Q(2, 1), Q(3, 1), Q(-1, 1), Q(-2, 1), Q(1, 2), Q(-4, 3)]
                .map(Q::value)
                .to_vec(),
            m_panel: vec![1, -1, 2, 3, 4, -4, 5, 7],
            a_panel: vec![
                ASeq::Binom(0),
                ASeq::Binom(1),
                ASeq::Binom(3),
                ASeq::Binom(6),
                ASeq::Random(1),
                ASeq::Random(2),
            ],
            exact: false,
            ignore_caps: false,
            modulus_overrides: Vec::new(),
            fault: None,
            clock: None,
        }
    }
}

pub fn default_x_panel() -> Vec<Rational> {
    [
        Q(-1, 2),
        Q(-1, 3),
        Q(-2, 3),
        Q(-1, 4),
        Q(-3, 4),
        Q(-1, 6),
        Q(-5, 6),
        Q(1, 3),
        Q(2, 5),
    ]
    .map(Q::value)
    .to_vec()
}

impl SuiteConfig {
    fn xs(&self, p: u64) -> Vec<Rational> {
        let residues = || (0..p as i64).map(int).collect::<Vec<_>>();
        let mut xs = match &self.x_policy {
            XPolicy::Full => {
                let mut v = residues();
                v.extend(self.x_panel.iter().cloned());
                v
            }
            XPolicy::Residues => residues(),
            XPolicy::Panel => self.x_panel.clone(),
            XPolicy::Custom(v) => v.clone(),
        };
        xs.retain(|x| is_p_integral(x, p));
        xs
    }

    fn residue_xs(&self, p: u64) -> Vec<Rational> {
        match &self.x_policy {
            XPolicy::Custom(v) => v
                .iter()
                .filter(|x| {
                    x.is_integer()
                        && !x.numer().sign().eq(&num_bigint::Sign::Minus)
                        && x.numer() < &BigInt::from(p)
                })
                .cloned()
                .collect(),
            _ => (0..p as i64).map(int).collect(),
        }
    }

    /// Admissible parameter assignments for `stmt` at `p`, in a fixed order.
    pub fn params_for(&self, stmt: &Statement, p: u64) -> Vec<Params> {
        let with_x = |x: Rational| Params {
            x: Some(x),
            ..Params::default()
        };
        match stmt.params {
            ParamDomain::None => vec![Params::default()],
            ParamDomain::X => self.xs(p).into_iter().map(with_x).collect(),
            ParamDomain::Residues => self.residue_xs(p).into_iter().map(with_x).collect(),
            ParamDomain::XY => {
                let mut out = Vec::new();
                for x in self.xs(p) {
                    for y in self.y_panel.iter().filter(|y| is_p_integral(y, p)) {
                        out.push(Params {
                            x: Some(x.clone()),
                            y: Some(y.clone()),
                            ..Params::default()
                        });
                    }
                }
                out
            }
            ParamDomain::M => self
                .m_panel
                .iter()
                .map(|&m| Params {
                    m: Some(m),
                    ..Params::default()
                })
                .collect(),
            ParamDomain::A => self
                .a_panel
                .iter()
                .map(|&a| Params {
                    a: Some(a),
                    ..Params::default()
                })
                .collect(),
            ParamDomain::MA => {
                let mut out = Vec::new();
                for &m in &self.m_panel {
                    for &a in &self.a_panel {
                        out.push(Params {
                            m: Some(m),
                            a: Some(a),
                            ..Params::default()
                        });
                    }
                }
                out
            }
            ParamDomain::XA => {
                let mut out = Vec::new();
                for x in self.xs(p) {
                    for &a in &self.a_panel {
                        out.push(Params {
                            x: Some(x.clone()),
                            a: Some(a),
                            ..Params::default()
                        });
                    }
                }
                out
            }
            ParamDomain::Idx(lag) => (0..p.saturating_sub(lag))
                .map(|i| Params {
                    i: Some(i),
                    ..Params::default()
                })
                .collect(),
        }
    }

    fn limit_for(&self, stmt: &Statement) -> u32 {
        match self.modulus_overrides.iter().find(|(id, _)| id == stmt.id) {
            Some((_, o)) => (*o).max(1),
            None => u32::MAX,
        }
    }

    fn exponent_for(&self, stmt: &Statement, e: u32) -> u32 {
        match self.modulus_overrides.iter().find(|(id, _)| id == stmt.id) {
            Some((_, o)) => (*o).clamp(1, e),
            None => e,
        }
    }
}

/// One verification outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub stmt: String,
    pub kind: Kind,
    pub p: u64,
    pub e: u32,
    pub x: Option<String>,
    pub extra: Vec<(String, String)>,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub pass: bool,
    pub skip: bool,
    pub error: Option<String>,
    pub us: u64,
    /// `(catalog index, p, parameter ordinal)`.
    pub order: (usize, u64, usize),
}

impl CheckRecord {
    /// A failure that should fail the run (proven kinds only).
    pub fn is_hard_failure(&self) -> bool {
        !self.skip && !self.pass && self.kind.is_proven()
    }
}

/// Largest exponent `<= 4` with `p^e < 2^63`.
fn working_precision(p: u64) -> u32 {
    (1..=4)
        .rev()
        .find(|&e| checked_pow(p, e).is_ok())
        .unwrap_or(1)
}

/// Runs statements at one prime, sharing memo tables between them.
pub struct PrimeRunner<'a> {
    p: u64,
    cfg: &'a SuiteConfig,
    modular: Option<Ctx<ModPk>>,
    exact: Option<Ctx<Exact>>,
    cache: Option<SeqCache>,
}

impl<'a> PrimeRunner<'a> {
    pub fn new(p: u64, cfg: &'a SuiteConfig, cache: SeqCache) -> Result<Self> {
        if !exact::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeRunner {
            p,
            cfg,
            modular: None,
            exact: None,
            cache: Some(cache),
        })
    }

    fn take_cache(&mut self) -> SeqCache {
        if let Some(c) = self.cache.take() {
            return c;
        }
        let mut merged = SeqCache::new();
        if let Some(ctx) = self.modular.take() {
            merged.merge(ctx.into_cache());
        }
        if let Some(ctx) = self.exact.take() {
            merged.merge(ctx.into_cache());
        }
        merged
    }

    fn modular_ctx(&mut self) -> Result<&mut Ctx<ModPk>> {
        if self.modular.is_none() {
            let dom = ModPk::new(self.p, working_precision(self.p))?;
            let cache = self.take_cache_for_new();
            self.modular = Some(Ctx::new(dom, self.p, cache));
        }
        Ok(self.modular.as_mut().expect("just built"))
    }

    fn exact_ctx(&mut self) -> &mut Ctx<Exact> {
        if self.exact.is_none() {
            let cache = self.take_cache_for_new();
            self.exact = Some(Ctx::new(Exact, self.p, cache));
        }
        self.exact.as_mut().expect("just built")
    }

    fn take_cache_for_new(&mut self) -> SeqCache {
        match self.cache.take() {
            Some(c) => c,
            None => {
                // share the scalar tables already computed by the other context
                let other = self
                    .modular
                    .as_ref()
                    .map(|c| c.cache.clone())
                    .or_else(|| self.exact.as_ref().map(|c| c.cache.clone()));
                other.unwrap_or_default()
            }
        }
    }

    pub fn finish(mut self) -> SeqCache {
        self.take_cache()
    }

    fn reduce_exact(&self, q: &Rational, e: u32) -> Result<ResiduePK> {
        exact::reduce_mod_pk(q, self.p, e)
    }

    /// Evaluates one statement, returning `(e, lhs, rhs, extra)` residues.
    #[allow(clippy::type_complexity)]
    fn evaluate(
        &mut self,
        stmt: &Statement,
        a: &Params,
    ) -> Result<Option<(u32, u64, u64, Vec<(String, String)>)>> {
        let p = self.p;
        let limit = self.cfg.limit_for(stmt);
        if !self.cfg.exact {
            let ctx = self.modular_ctx()?;
            ctx.e_limit = limit;
            if stmt.e_max <= ctx.dom.e() {
                match stmt.eval_modular(ctx, a) {
                    Ok(None) => return Ok(None),
                    Ok(Some(o)) => {
                        let e = self.cfg.exponent_for(stmt, o.e);
                        let ctx = self.modular.as_ref().expect("built");
                        let l = ctx.dom.residue(&o.lhs, p, e)?.value();
                        let r = ctx.dom.residue(&o.rhs, p, e)?.value();
                        return Ok(Some((e, l, r, o.extra)));
                    }
                    Err(Error::NonUnitDenominator { .. }) => {}
                    Err(err) => return Err(err),
                }
            }
        }
        let ctx = self.exact_ctx();
        ctx.e_limit = limit;
        match stmt.eval_exact(ctx, a)? {
            None => Ok(None),
            Some(o) => {
                let e = self.cfg.exponent_for(stmt, o.e);
                let l = self.reduce_exact(&o.lhs, e)?.value();
                let r = self.reduce_exact(&o.rhs, e)?.value();
                Ok(Some((e, l, r, o.extra)))
            }
        }
    }

    /// Verifies `stmt` at this prime with one parameter assignment.
    pub fn check(&mut self, stmt: &Statement, a: &Params) -> CheckRecord {
        let start = self.cfg.clock.map(|c| c());
        let mut rec = CheckRecord {
            stmt: String::from(stmt.id),
            kind: stmt.kind,
            p: self.p,
            e: stmt.e_max,
            x: a.x.as_ref().map(fraction_string),
            extra: a.describe(),
            lhs: None,
            rhs: None,
            pass: false,
            skip: false,
            error: None,
            us: 0,
            order: (0, self.p, 0),
        };
        if !stmt.admits(self.p) {
            rec.skip = true;
            rec.extra
                .push((String::from("skip"), String::from(stmt.constraint.as_str())));
        } else if !stmt.side.holds(a, self.p) {
            rec.skip = true;
            rec.extra
                .push((String::from("skip"), String::from(stmt.side.as_str())));
        } else {
            match self.evaluate(stmt, a) {
                Ok(None) => {
                    rec.skip = true;
                    rec.extra
                        .push((String::from("skip"), String::from("no branch applies")));
                }
                Ok(Some((e, l, mut r, extra))) => {
                    if self.cfg.fault.as_deref() == Some(stmt.id) {
                        let m = self.p.pow(e);
                        r = (r + 1) % m;
                    }
                    rec.e = e;
                    rec.lhs = Some(l);
                    rec.rhs = Some(r);
                    rec.pass = l == r;
                    rec.extra.extend(extra);
                }
                Err(err) => rec.error = Some(err.to_string()),
            }
        }
        if let (Some(clock), Some(t0)) = (self.cfg.clock, start) {
            rec.us = clock().saturating_sub(t0);
        }
        rec
    }
}

/// Verifies one statement at one prime with one parameter assignment.
pub fn verify_statement(
    catalog: &[Statement],
    id: &str,
    p: u64,
    params: &Params,
    cfg: &SuiteConfig,
) -> Result<CheckRecord> {
    let (idx, stmt) = catalog
        .iter()
        .enumerate()
        .find(|(_, s)| s.id == id)
        .ok_or_else(|| Error::UnknownStatement(String::from(id)))?;
    let mut runner = PrimeRunner::new(p, cfg, SeqCache::new())?;
    let mut rec = runner.check(stmt, params);
    rec.order.0 = idx;
    Ok(rec)
}

/// `*` wildcard match.
fn glob(pattern: &[u8], text: &[u8]) -> bool {
    match (pattern.first(), text.first()) {
        (None, None) => true,
        (Some(b'*'), _) => {
            glob(&pattern[1..], text) || (!text.is_empty() && glob(pattern, &text[1..]))
        }
        (Some(a), Some(b)) if a == b => glob(&pattern[1..], &text[1..]),
        _ => false,
    }
}

/// Statement selection by kind and id pattern.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Filter {
    pub kinds: Vec<Kind>,
    /// Exact id, `*` glob, or a group prefix (`conj6.11` selects `conj6.11/...`).
    pub ids: Vec<String>,
}

impl Filter {
    pub fn id_matches(pattern: &str, id: &str) -> bool {
        pattern == id
            || (pattern.contains('*') && glob(pattern.as_bytes(), id.as_bytes()))
            || id
                .strip_prefix(pattern)
                .is_some_and(|rest| rest.starts_with('/'))
    }

    pub fn matches(&self, stmt: &Statement) -> bool {
        (self.kinds.is_empty() || self.kinds.contains(&stmt.kind))
            && (self.ids.is_empty() || self.ids.iter().any(|p| Filter::id_matches(p, stmt.id)))
    }
}

/// Work units: each prime with the catalog indices to check there.
pub fn plan(
    catalog: &[Statement],
    filter: &Filter,
    range: &PrimeRange,
    cfg: &SuiteConfig,
) -> Vec<(u64, Vec<usize>)> {
    let selected: Vec<usize> = catalog
        .iter()
        .enumerate()
        .filter(|(_, s)| filter.matches(s))
        .map(|(i, _)| i)
        .collect();
    primes_in(range)
        .into_iter()
        .map(|p| {
            let idxs = selected
                .iter()
                .copied()
                .filter(|&i| {
                    let s = &catalog[i];
                    s.admits(p) && (cfg.ignore_caps || s.prime_cap.is_none_or(|cap| p <= cap))
                })
                .collect::<Vec<_>>();
            (p, idxs)
        })
        .filter(|(_, idxs)| !idxs.is_empty())
        .collect()
}

/// Checks the given statements at one prime; records come back in order.
pub fn run_prime(
    catalog: &[Statement],
    idxs: &[usize],
    p: u64,
    cfg: &SuiteConfig,
    cache: SeqCache,
) -> Result<(Vec<CheckRecord>, SeqCache)> {
    let mut runner = PrimeRunner::new(p, cfg, cache)?;
    let mut out = Vec::new();
    for &i in idxs {
        let stmt = &catalog[i];
        for (ordinal, a) in cfg.params_for(stmt, p).iter().enumerate() {
            let mut rec = runner.check(stmt, a);
            rec.order = (i, p, ordinal);
            out.push(rec);
        }
    }
    Ok((out, runner.finish()))
}

/// Per-statement tallies.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tally {
    pub id: String,
    pub kind: Option<Kind>,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub error: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub tallies: Vec<Tally>,
    /// Set by any failure or error of a non-conjecture statement.
    pub failed: bool,
}

pub fn summarize(catalog: &[Statement], records: &[CheckRecord]) -> Summary {
    let mut by: BTreeMap<usize, Tally> = BTreeMap::new();
    let mut failed = false;
    for r in records {
        let t = by.entry(r.order.0).or_insert_with(|| Tally {
            id: String::from(catalog[r.order.0].id),
            kind: Some(catalog[r.order.0].kind),
            ..Tally::default()
        });
        if r.skip {
            t.skip += 1;
        } else if r.error.is_some() {
            t.error += 1;
        } else if r.pass {
            t.pass += 1;
        } else {
            t.fail += 1;
        }
        failed |= r.is_hard_failure();
    }
    Summary {
        tallies: by.into_values().collect(),
        failed,
    }
}

/// Sequential sweep; records sorted by `(catalog index, p, ordinal)`.
pub fn run_suite(
    catalog: &[Statement],
    filter: &Filter,
    range: &PrimeRange,
    cfg: &SuiteConfig,
    cache: &mut SeqCache,
) -> Result<(Summary, Vec<CheckRecord>)> {
    let mut records = Vec::new();
    for (p, idxs) in plan(catalog, filter, range, cfg) {
        let (recs, worker) = run_prime(catalog, &idxs, p, cfg, core::mem::take(cache))?;
        *cache = worker;
        records.extend(recs);
    }
    records.sort_by_key(|r| r.order);
    let summary = summarize(catalog, &records);
    Ok((summary, records))
}
