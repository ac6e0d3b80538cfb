//! The statement catalog and the quadratic-form helpers its branches need.

// Evaluator bodies are instantiated for both element types, so clones that
// are redundant for `u64` are needed for `Rational`; the per-family tables
// are plain tuples.
#![allow(clippy::clone_on_copy, clippy::type_complexity)]

use alloc::boxed::Box;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Roots;
use num_traits::Zero;

use crate::domain::{Domain, Exact, ModPk};
use crate::error::Result;
use crate::exact::{int, legendre, rat, sign, PrimeConstraint, Rational};
use crate::sequences::binom_nat;
use crate::suite::{
    Base, Coef, Ctx, Eval, Fm, Kind, Num, Outcome, ParamDomain, Params, SideCondition, Src,
    Statement, Sum, Xr, Yr, Q,
};

use Kind::{Conjecture, Corollary, Lemma, Remark, Theorem};
use PrimeConstraint::{Above3, Above5, AtLeast3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    /// `x^2 + 6y^2`
    X2Plus6Y2,
    /// `2x^2 + 3y^2`
    TwoX2Plus3Y2,
    /// `x^2 + 3y^2`
    X2Plus3Y2,
}

impl Form {
    fn coefficients(self) -> (u64, u64) {
        match self {
            Form::X2Plus6Y2 => (1, 6),
            Form::TwoX2Plus3Y2 => (2, 3),
            Form::X2Plus3Y2 => (1, 3),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Form::X2Plus6Y2 => "x^2+6y^2",
            Form::TwoX2Plus3Y2 => "2x^2+3y^2",
            Form::X2Plus3Y2 => "x^2+3y^2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormRepresentation {
    pub p: u64,
    pub form: Form,
    pub x: i64,
    pub y: i64,
}

impl FormRepresentation {
    pub fn normalization(&self) -> &'static str {
        match self.form {
            Form::X2Plus3Y2 => "x = 1 (mod 3), y >= 0",
            _ => "x >= 0, y >= 0",
        }
    }
}

/// Finds `p = a x^2 + b y^2` by searching `y` upward from 0.
pub fn represent_form(p: u64, form: Form) -> Option<FormRepresentation> {
    let (a, b) = form.coefficients();
    let mut y: u64 = 0;
    while b * y * y <= p {
        let rest = p - b * y * y;
        if rest.is_multiple_of(a) {
            let sq = rest / a;
            let x = sq.sqrt();
            if x * x == sq {
                let mut x = x as i64;
                if form == Form::X2Plus3Y2 {
                    if x % 3 == 0 {
                        y += 1;
                        continue;
                    }
                    if x % 3 != 1 {
                        x = -x;
                    }
                }
                return Some(FormRepresentation {
                    p,
                    form,
                    x,
                    y: y as i64,
                });
            }
        }
        y += 1;
    }
    None
}

macro_rules! ev {
    (|$c:ident, $a:ident| $body:expr) => {
        (
            Box::new(
                move |$c: &mut Ctx<Exact>, $a: &Params| -> Result<Option<Outcome<Rational>>> {
                    $body
                },
            ) as Eval<Exact>,
            Box::new(
                move |$c: &mut Ctx<ModPk>, $a: &Params| -> Result<Option<Outcome<u64>>> { $body },
            ) as Eval<ModPk>,
        )
    };
}

type Evals = (Eval<Exact>, Eval<ModPk>);

#[allow(clippy::too_many_arguments)]
fn entry(
    id: &'static str,
    kind: Kind,
    paper_ref: &'static str,
    quote: &'static str,
    constraint: PrimeConstraint,
    e_max: u32,
    params: ParamDomain,
    evals: Evals,
) -> Statement {
    Statement {
        id,
        kind,
        paper_ref,
        quote,
        constraint,
        e_max,
        params,
        side: SideCondition::None,
        prime_cap: None,
        note: "",
        exact: evals.0,
        modular: evals.1,
    }
}

impl Statement {
    fn side(mut self, side: SideCondition) -> Self {
        self.side = side;
        self
    }

    fn cap(mut self, cap: u64) -> Self {
        self.prime_cap = Some(cap);
        self
    }

    fn note(mut self, note: &'static str) -> Self {
        self.note = note;
        self
    }
}

const fn q(n: i64, d: i64) -> Xr {
    Xr::Q(Q(n, d))
}

const fn d(x: Xr) -> Src {
    Src::Fam(Fm::Ld, x)
}

const fn s(x: Xr) -> Src {
    Src::Fam(Fm::Ls, x)
}

const fn t(x: Xr) -> Src {
    Src::Fam(Fm::Lt, x)
}

const fn cf(num: Num, m: i64) -> Coef {
    Coef(num, Q(m, 1))
}

fn leg(a: i64, p: u64) -> Rational {
    int(legendre(a, p))
}

/// `(p/3)`
fn p3(p: u64) -> Rational {
    int(legendre(p as i64, 3))
}

fn pr(p: u64) -> Rational {
    int(p as i64)
}

fn sgn(r: u64) -> Rational {
    int(sign(r))
}

/// `(p + 2(x - r)) / (2x + 1)`
fn shifted_ratio(p: u64, x: &Rational, r: u64) -> Rational {
    (pr(p) + int(2) * (x - int(r as i64))) / (int(2) * x + int(1))
}

fn sum_eq<D: Domain>(
    c: &mut Ctx<D>,
    a: &Params,
    sum: Sum,
    e: u32,
    rhs: &Rational,
) -> Result<Option<Outcome<D::Elem>>> {
    let lhs = c.sum(a, sum)?;
    c.out(e, lhs, rhs)
}

/// Reports the first pair that differs modulo `p^e`, or the last pair.
fn fold<D: Domain>(
    c: &Ctx<D>,
    e: u32,
    key: &str,
    mut items: Vec<(D::Elem, D::Elem)>,
) -> Result<Option<Outcome<D::Elem>>> {
    let cmp = e.min(c.e_limit);
    let mut pick = items.len() - 1;
    for (i, (l, r)) in items.iter().enumerate() {
        if c.dom.residue(l, c.p, cmp)? != c.dom.residue(r, c.p, cmp)? {
            pick = i;
            break;
        }
    }
    let (l, r) = items.swap_remove(pick);
    Ok(Some(Outcome::new(e, l, r).with(key, pick.to_string())))
}

fn with_form<E>(o: Option<Outcome<E>>, rep: &FormRepresentation) -> Option<Outcome<E>> {
    o.map(|o| {
        o.with("form", rep.form.as_str().to_string())
            .with("form_x", rep.x.to_string())
            .with("form_y", rep.y.to_string())
    })
}

/// Branch by `p mod 24`: `x^2+6y^2`, `2x^2+3y^2`, or none when `(-6/p) = -1`.
fn form24(p: u64) -> Option<FormRepresentation> {
    match p % 24 {
        1 | 7 => represent_form(p, Form::X2Plus6Y2),
        5 | 11 => represent_form(p, Form::TwoX2Plus3Y2),
        _ => None,
    }
}

/// `x^2+3y^2` with `x = 1 (mod 3)` when `p = 1 (mod 3)`.
fn form3(p: u64) -> Option<FormRepresentation> {
    if p % 3 == 1 {
        represent_form(p, Form::X2Plus3Y2)
    } else {
        None
    }
}

/// `[C(k+j, j)]` for `k, j < p`, flattened by rows of `k`.
fn pascal_grid<D: Domain>(c: &mut Ctx<D>) -> Result<Vec<D::Elem>> {
    let n = c.p as usize;
    c.memo("grid".to_string(), |c| {
        let mut g = vec![c.dom.one(); n * n];
        for k in 1..n {
            for j in 1..n {
                g[k * n + j] = c.dom.add(&g[(k - 1) * n + j], &g[k * n + j - 1]);
            }
        }
        Ok(g)
    })
}

/// `g_k = sum_{j<p} C(x,j) C(-1-x,j) C(k+j,j)` for `k < p`.
fn g_row<D: Domain>(c: &mut Ctx<D>, x: &Rational) -> Result<Vec<D::Elem>> {
    let n = c.p as usize;
    let key = format!("g|{x}");
    c.memo(key, |c| {
        let pairs = c.pairs(x)?;
        let grid = pascal_grid(c)?;
        Ok((0..n)
            .map(|k| {
                let mut acc = c.dom.zero();
                for (j, pj) in pairs.iter().enumerate() {
                    acc = c.dom.add(&acc, &c.dom.mul(pj, &grid[k * n + j]));
                }
                acc
            })
            .collect())
    })
}

/// `[p/(n+1)]` for `n < 2p - 1`; the entry at `n = p - 1` is exactly 1.
fn p_over<D: Domain>(c: &mut Ctx<D>) -> Result<Vec<D::Elem>> {
    let p = c.p;
    c.lifted_row("p/(n+1)", 2 * p - 1, move |_, n| {
        rat(p as i64, n as i64 + 1)
    })
}

/// `sum_k C(x,k) C(-1-x,k) p/(2k+1)`
fn pair_p_over<D: Domain>(c: &mut Ctx<D>, x: &Rational) -> Result<D::Elem> {
    let pairs = c.pairs(x)?;
    let w = p_over(c)?;
    let mut acc = c.dom.zero();
    for (k, v) in pairs.iter().enumerate() {
        acc = c.dom.add(&acc, &c.dom.mul(v, &w[2 * k]));
    }
    Ok(acc)
}

fn half_central_sum<D: Domain>(c: &mut Ctx<D>) -> Result<D::Elem> {
    let w = c.coef(cf(Num::Central2, 16))?;
    let half = (c.p as usize).div_ceil(2);
    let mut acc = c.dom.zero();
    for v in &w[..half] {
        acc = c.dom.add(&acc, v);
    }
    Ok(acc)
}

/// The rows `C(p-1,i)`, `C(-p-1,j)`, `H_i`, `H^(2)_i` for `i < p`.
fn index_rows<D: Domain>(c: &mut Ctx<D>) -> Result<[Vec<D::Elem>; 4]> {
    let p = c.p;
    let a = c.lifted_row("C(p-1,i)", p, move |_, i| {
        Rational::from_integer(binom_nat(p - 1, i))
    })?;
    let b = c.lifted_row("C(-p-1,j)", p, move |_, j| {
        sgn(j) * Rational::from_integer(binom_nat(p + j, j))
    })?;
    let h1 = c.lifted_row("H", p, |cache, i| cache.harmonic(i, 1).clone())?;
    let h2 = c.lifted_row("H2", p, |cache, i| cache.harmonic(i, 2).clone())?;
    Ok([a, b, h1, h2])
}

fn catalog_theorems(out: &mut Vec<Statement>) {
    let dk = Sum::of(
        Src::Fam(Fm::D(Yr::P), Xr::P),
        Src::Fam(Fm::D(Yr::P), Xr::Neg),
    );
    out.push(
        entry(
            "thm1.1/eq1.8",
            Theorem,
            "Theorem 1.1(i), Eq. (1.8)",
            "sum_{k<p} D_k(x,y) D_k(-1-x,y) = (-1)^<x>_p (mod p)",
            AtLeast3,
            1,
            ParamDomain::XY,
            ev!(|c, a| {
                let rhs = sgn(c.r(a)?);
                sum_eq(c, a, dk, 1, &rhs)
            }),
        )
        .side(SideCondition::YUnit),
    );
    let ratio = Sum::of(
        Src::Fam(Fm::D(Yr::P), Xr::P),
        Src::Fam(Fm::D(Yr::Ratio), Xr::P),
    )
    .base(Base::OneMinusY);
    out.push(
        entry(
            "thm1.1/eq1.9",
            Theorem,
            "Theorem 1.1(i), Eq. (1.9)",
            "sum_{k<p} (1-y)^k D_k(x,y) D_k(x,y/(y-1)) = (-1)^<x>_p (mod p)",
            AtLeast3,
            1,
            ParamDomain::XY,
            ev!(|c, a| {
                let rhs = sgn(c.r(a)?);
                sum_eq(c, a, ratio, 1, &rhs)
            }),
        )
        .side(SideCondition::YNotZeroOne),
    );
    out.push(
        entry(
            "thm1.1/eq1.10",
            Theorem,
            "Theorem 1.1(ii), Eq. (1.10)",
            "sum_{k<p} S_k(x,y)^2 = (-1/p) if x = -1/2, else 0 (mod p)",
            AtLeast3,
            1,
            ParamDomain::XY,
            ev!(|c, a| {
                let p = c.p;
                let rhs = if c.r(a)? == (p - 1) / 2 {
                    leg(-1, p)
                } else {
                    Rational::zero()
                };
                sum_eq(c, a, Sum::sq(Src::Fam(Fm::S(Yr::P), Xr::P)), 1, &rhs)
            }),
        )
        .side(SideCondition::YUnit),
    );

    out.push(entry(
        "thm1.2/eq1.11",
        Theorem,
        "Theorem 1.2, Eq. (1.11)",
        "sum_{k<p} (-1)^k d_k(x)^2 = sum_{k<p} d_k(x) d_k(-1-x) = (-1)^<x>_p (mod p^2)",
        AtLeast3,
        2,
        ParamDomain::X,
        ev!(|c, a| {
            let rhs = c.lift(&sgn(c.r(a)?))?;
            let l1 = c.sum(a, Sum::sq(d(Xr::P)).alt())?;
            let l2 = c.sum(a, Sum::of(d(Xr::P), d(Xr::Neg)))?;
            fold(c, 2, "variant", vec![(l1, rhs.clone()), (l2, rhs)])
        }),
    ));
    out.push(entry(
        "thm1.2/eq1.12",
        Theorem,
        "Theorem 1.2, Eq. (1.12)",
        "sum_{k<p} d_k(x)^2 = (-1/p) if x = -1/2 (mod p), else (-1)^<x>_p (p+2x-2<x>_p)/(2x+1) (mod p^2)",
        AtLeast3,
        2,
        ParamDomain::X,
        ev!(|c, a| {
            let (p, r) = (c.p, c.r(a)?);
            let rhs = if r == (p - 1) / 2 {
                leg(-1, p)
            } else {
                sgn(r) * shifted_ratio(p, a.x(), r)
            };
            let rhs = c.lift(&rhs)?;
            let l1 = c.sum(a, Sum::sq(d(Xr::P)))?;
            let l2 = c.sum(a, Sum::of(d(Xr::P), d(Xr::Neg)).alt())?;
            fold(c, 2, "variant", vec![(l1, rhs.clone()), (l2, rhs)])
        }),
    ));
    out.push(entry(
        "thm1.2/eq1.13",
        Theorem,
        "Theorem 1.2, Eq. (1.13)",
        "sum_{k<p} (2k+1) d_k(x)^2 = -x if x = 0, x+1 if x = -1, else 0 (mod p^2)",
        AtLeast3,
        2,
        ParamDomain::X,
        ev!(|c, a| {
            let (p, r) = (c.p, c.r(a)?);
            let rhs = if r == 0 {
                -a.x().clone()
            } else if r == p - 1 {
                a.x() + int(1)
            } else {
                Rational::zero()
            };
            let branch = match r {
                0 => "x=0",
                _ if r == p - 1 => "x=-1",
                _ => "generic",
            };
            Ok(sum_eq(c, a, Sum::sq(d(Xr::P)).lin(2, 1), 2, &rhs)?
                .map(|o| o.with("branch", branch.to_string())))
        }),
    ));

    out.push(entry(
        "rem1.1a/eq1.14",
        Remark,
        "Remark 1.1(a), Eq. (1.14)",
        "sum_{k<p} (-1)^k (2k+1) d_k(x)^2 = (-1)^<x>_p (2x+1)(p+2(x-<x>_p)) (mod p^2)",
        AtLeast3,
        2,
        ParamDomain::X,
        ev!(|c, a| {
            let (p, r) = (c.p, c.r(a)?);
            let x = a.x();
            let rhs = sgn(r) * (int(2) * x + int(1)) * (pr(p) + int(2) * (x - int(r as i64)));
            sum_eq(c, a, Sum::sq(d(Xr::P)).lin(2, 1).alt(), 2, &rhs)
        }),
    ));
    out.push(entry(
        "rem1.1a/int",
        Remark,
        "Remark 1.1(a), second display",
        "sum_{k<p} (-1)^k (2k+1) d_k(x)^2 = (-1)^x (2x+1) p (mod p^3), x in {0,...,p-1}",
        AtLeast3,
        3,
        ParamDomain::Residues,
        ev!(|c, a| {
            let x = a.x();
            let r = c.r(a)?;
            let rhs = sgn(r) * (int(2) * x + int(1)) * pr(c.p);
            sum_eq(c, a, Sum::sq(d(Xr::P)).lin(2, 1).alt(), 3, &rhs)
        }),
    ));
    for (id, alt, quote) in [
        (
            "rem1.1b/plus",
            false,
            "sum_{n<p} d_n(-1/2)^2 = sum_{m<=(p-1)/2} C(2m,m)^2/16^m = (-1/p) + p^2 E_{p-3} (mod p^3)",
        ),
        (
            "rem1.1b/minus",
            true,
            "sum_{n<p} (-1)^n d_n(-1/2)^2 = sum_{m<=(p-1)/2} C(2m,m)^2/16^m = (-1/p) + p^2 E_{p-3} (mod p^3)",
        ),
    ] {
        let mut sum = Sum::sq(d(q(-1, 2)));
        if alt {
            sum = sum.alt();
        }
        out.push(
            entry(
                id,
                Remark,
                "Remark 1.1(b)",
                quote,
                Above3,
                3,
                ParamDomain::None,
                ev!(|c, a| {
                    let p = c.p;
                    let e = Rational::from_integer(c.cache.euler(p - 3).clone());
                    let rhs = c.lift(&(leg(-1, p) + pr(p) * pr(p) * e))?;
                    let l1 = c.sum(a, sum)?;
                    let l2 = half_central_sum(c)?;
                    fold(c, 3, "variant", vec![(l1, rhs.clone()), (l2, rhs)])
                }),
            )
            .cap(100),
        );
    }

    type Rhs = fn(u64) -> Rational;
    let cor: [(&'static str, PrimeConstraint, Xr, bool, &'static str, Rhs); 6] = [
        (
            "cor1.1/a",
            AtLeast3,
            q(-1, 4),
            true,
            "sum_{k<p} (-1)^k d_k(-1/4)^2 = (-2/p) (mod p^2)",
            |p| leg(-2, p),
        ),
        (
            "cor1.1/b",
            AtLeast3,
            q(-1, 4),
            false,
            "sum_{k<p} d_k(-1/4)^2 = p (2/p) (mod p^2)",
            |p| pr(p) * leg(2, p),
        ),
        (
            "cor1.1/c",
            Above3,
            q(-1, 3),
            true,
            "sum_{k<p} (-1)^k d_k(-1/3)^2 = (p/3) (mod p^2)",
            p3,
        ),
        (
            "cor1.1/d",
            Above3,
            q(-1, 3),
            false,
            "sum_{k<p} d_k(-1/3)^2 = p (mod p^2)",
            pr,
        ),
        (
            "cor1.1/e",
            Above3,
            q(-1, 6),
            true,
            "sum_{k<p} (-1)^k d_k(-1/6)^2 = (-1/p) (mod p^2)",
            |p| leg(-1, p),
        ),
        (
            "cor1.1/f",
            Above3,
            q(-1, 6),
            false,
            "sum_{k<p} d_k(-1/6)^2 = p (3/p) (mod p^2)",
            |p| pr(p) * leg(3, p),
        ),
    ];
    for (id, pc, x, alt, quote, rhs) in cor {
        let mut sum = Sum::sq(d(x));
        if alt {
            sum = sum.alt();
        }
        out.push(entry(
            id,
            Corollary,
            "Corollary 1.1",
            quote,
            pc,
            2,
            ParamDomain::None,
            ev!(|c, a| sum_eq(c, a, sum, 2, &rhs(c.p))),
        ));
    }

    out.push(
        entry(
            "thm1.4/eq1.20",
            Theorem,
            "Theorem 1.4, Eq. (1.20)",
            "sum_{k<p} s_k(x)^2 = (-1)^<x>_p (p+2(x-<x>_p))/(2x+1) (mod p^2), x != -1/2 (mod p)",
            Above3,
            2,
            ParamDomain::X,
            ev!(|c, a| {
                let (p, r) = (c.p, c.r(a)?);
                let rhs = sgn(r) * shifted_ratio(p, a.x(), r);
                sum_eq(c, a, Sum::sq(s(Xr::P)), 2, &rhs)
            }),
        )
        .side(SideCondition::XNotNegHalfModP),
    );
    out.push(entry(
        "thm1.4/eq1.21",
        Theorem,
        "Theorem 1.4, Eq. (1.21)",
        "sum_{k<p} s_k(x)^2 = (-1)^x p/(2x+1) (mod p^3), x in {0,...,p-1}",
        Above3,
        3,
        ParamDomain::Residues,
        ev!(|c, a| {
            let r = c.r(a)?;
            // at x = (p-1)/2 the quotient is exactly 1
            let rhs = sgn(r) * pr(c.p) / (int(2) * a.x() + int(1));
            sum_eq(c, a, Sum::sq(s(Xr::P)), 3, &rhs)
        }),
    ));
    out.push(entry(
        "thm1.4/eq1.22",
        Theorem,
        "Theorem 1.4, Eq. (1.22)",
        "sum_{k<p} (2k+1) s_k(x)^2 = 0 (mod p^2)",
        Above3,
        2,
        ParamDomain::X,
        ev!(|c, a| sum_eq(c, a, Sum::sq(s(Xr::P)).lin(2, 1), 2, &Rational::zero())),
    ));

    out.push(
        entry(
            "sec1/su15",
            Theorem,
            "Section 1, dual-sequence congruence cited from earlier work",
            "sum_{k<p} C(2k,k) a*_k/(4-m)^k = (m(m-4)/p) sum_{k<p} C(2k,k) a_k/m^k (mod p)",
            AtLeast3,
            1,
            ParamDomain::MA,
            ev!(|c, a| {
                let m = a.m();
                let lhs = c.sum(
                    a,
                    Sum::of(Src::ADual, Src::One)
                        .coef(cf(Num::Central, 1))
                        .base(Base::InvFourMinusM),
                )?;
                let rhs = c.sum(
                    a,
                    Sum::of(Src::A, Src::One)
                        .coef(cf(Num::Central, 1))
                        .base(Base::InvM),
                )?;
                let rhs = c.dom.mul_int(&rhs, legendre(m * (m - 4), c.p));
                Ok(Some(Outcome::new(1, lhs, rhs)))
            }),
        )
        .side(SideCondition::MM4Unit)
        .note("checked on the dual pairs a_k = (-1)^k C(m,k) and two seeded integer sequences"),
    );
    out.push(entry(
        "sec1/Dk1",
        Theorem,
        "Section 1, consequence of the Chu-Vandermonde identity",
        "sum_{k<p} D_k(x,1) D_k(-1-x,1) = sum_{k<p} C(x,k) C(-1-x,k) = (-1)^<x>_p (mod p^2)",
        Above3,
        2,
        ParamDomain::X,
        ev!(|c, a| {
            let rhs = c.lift(&sgn(c.r(a)?))?;
            let one = Yr::Q(Q(1, 1));
            let l1 = c.sum(
                a,
                Sum::of(Src::Fam(Fm::D(one), Xr::P), Src::Fam(Fm::D(one), Xr::Neg)),
            )?;
            let l2 = c.sum(a, Sum::of(Src::Pair(Xr::P), Src::One))?;
            fold(c, 2, "variant", vec![(l1, rhs.clone()), (l2, rhs)])
        }),
    ));
}

fn catalog_lemmas(out: &mut Vec<Statement>) {
    let m_domain = |id, num, quote, pc, e: u32, rhs: fn(u64) -> Rational| {
        entry(
            id,
            Remark,
            "Remark 2.2",
            quote,
            pc,
            e,
            ParamDomain::M,
            ev!(|c, a| sum_eq(c, a, Sum::sq(Src::TransM(num)), e, &rhs(c.p))),
        )
        .side(SideCondition::MUnit)
    };
    out.push(m_domain(
        "rem2.2/eq2.3",
        Num::Central,
        "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k)/m^k)^2 = (-1/p) (mod p)",
        AtLeast3,
        1,
        |p| leg(-1, p),
    ));
    out.push(m_domain(
        "rem2.2/eq2.4",
        Num::Central2,
        "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k)^2/m^k)^2 = (-1/p) (mod p)",
        AtLeast3,
        1,
        |p| leg(-1, p),
    ));
    out.push(m_domain(
        "rem2.2/eq2.5a",
        Num::C2C3,
        "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k) C(3k,k)/m^k)^2 = 0 (mod p)",
        Above3,
        1,
        |_| Rational::zero(),
    ));
    out.push(m_domain(
        "rem2.2/eq2.5b",
        Num::C2C4,
        "sum_{n<p} (sum_{k<=n} C(n,k) C(4k,2k) C(2k,k)/m^k)^2 = 0 (mod p)",
        Above3,
        1,
        |_| Rational::zero(),
    ));
    out.push(m_domain(
        "rem2.2/eq2.5c",
        Num::C3C6,
        "sum_{n<p} (sum_{k<=n} C(n,k) C(6k,3k) C(3k,k)/m^k)^2 = 0 (mod p)",
        Above3,
        1,
        |_| Rational::zero(),
    ));

    out.push(entry(
        "lem2.3/eq2.9",
        Lemma,
        "Lemma 2.3(ii), Eq. (2.9)",
        "(i-j) C(p-1,i) C(-p-1,j) = j-i-2p (mod p^2), i+j = p-2",
        AtLeast3,
        2,
        ParamDomain::Idx(1),
        ev!(|c, a| {
            let p = c.p;
            let i = a.i();
            let j = p - 2 - i;
            let lhs = int(i as i64 - j as i64)
                * Rational::from_integer(binom_nat(p - 1, i))
                * sgn(j)
                * Rational::from_integer(binom_nat(p + j, j));
            let rhs = int(j as i64 - i as i64 - 2 * p as i64);
            let lhs = c.lift(&lhs)?;
            Ok(c.out(2, lhs, &rhs)?.map(|o| o.with("j", j.to_string())))
        }),
    ));

    let trio: [(&'static str, Num, i64, i64, &'static str); 3] = [
        ("sec4/27", Num::C2C3, 27, 0, "sum_{k<p} C(3k,k)C(2k,k)/27^k a_k = (p/3) sum_{k<p} C(3k,k)C(2k,k)/27^k a*_k (mod p^2)"),
        ("sec4/64", Num::C2C4, 64, -2, "sum_{k<p} C(4k,2k)C(2k,k)/64^k a_k = (-2/p) sum_{k<p} C(4k,2k)C(2k,k)/64^k a*_k (mod p^2)"),
        ("sec4/432", Num::C3C6, 432, -1, "sum_{k<p} C(6k,3k)C(3k,k)/432^k a_k = (-1/p) sum_{k<p} C(6k,3k)C(3k,k)/432^k a*_k (mod p^2)"),
    ];
    for (id, num, m, symbol, quote) in trio {
        let coef = cf(num, m);
        out.push(
            entry(
                id,
                Theorem,
                "Section 4, dual-sequence congruences cited from earlier work",
                quote,
                Above3,
                2,
                ParamDomain::A,
                ev!(|c, a| {
                    let p = c.p;
                    let l = if symbol == 0 {
                        legendre(p as i64, 3)
                    } else {
                        legendre(symbol, p)
                    };
                    let lhs = c.sum(a, Sum::of(Src::A, Src::One).coef(coef))?;
                    let rhs = c.sum(a, Sum::of(Src::ADual, Src::One).coef(coef))?;
                    let rhs = c.dom.mul_int(&rhs, l);
                    Ok(Some(Outcome::new(2, lhs, rhs)))
                }),
            )
            .note("checked on the dual pairs a_k = (-1)^k C(m,k) and two seeded integer sequences"),
        );
    }
    out.push(
        entry(
            "sec4/eq4.1",
            Theorem,
            "Section 4, Eq. (4.1)",
            "sum_{k<p} C(x,k) C(-1-x,k) a_k = (-1)^<x>_p sum_{k<p} C(x,k) C(-1-x,k) a*_k (mod p^2)",
            Above3,
            2,
            ParamDomain::XA,
            ev!(|c, a| {
                let r = c.r(a)?;
                let lhs = c.sum(a, Sum::of(Src::Pair(Xr::P), Src::A))?;
                let rhs = c.sum(a, Sum::of(Src::Pair(Xr::P), Src::ADual))?;
                let rhs = c.dom.mul_int(&rhs, sign(r));
                Ok(Some(Outcome::new(2, lhs, rhs)))
            }),
        )
        .note("checked on the dual pairs a_k = (-1)^k C(m,k) and two seeded integer sequences"),
    );
    out.push(
        entry(
            "lem4.1/eq4.2",
            Lemma,
            "Lemma 4.1, Eq. (4.2)",
            "s_k(x) = (-1)^<x>_p sum_{j<p} C(x,j) C(-1-x,j) C(k+j,j) (mod p^2), k in {0,...,p-1}",
            AtLeast3,
            2,
            ParamDomain::X,
            ev!(|c, a| {
                let r = c.r(a)?;
                let sk = c.src(a, s(Xr::P))?;
                let g = g_row(c, a.x())?;
                let items = sk
                    .into_iter()
                    .zip(g)
                    .map(|(l, r_)| (l, c.dom.mul_int(&r_, sign(r))))
                    .collect();
                fold(c, 2, "k", items)
            }),
        )
        .note("one record per (p, x); the reported k is the first disagreement, or p-1"),
    );
    out.push(
        entry(
            "lem4.3/eq4.5a",
            Lemma,
            "Lemma 4.3, Eq. (4.5)",
            "p/(i+j+1) C(p-1,i) C(-p-1,j) = (-1)^(i+j)/(i+j+1) (p - p^2 (H_i - H_j)) (mod p^3), i+j != p-1",
            Above3,
            3,
            ParamDomain::Idx(0),
            ev!(|c, a| {
                let p = c.p as usize;
                let i = a.i() as usize;
                let w = p_over(c)?;
                let alt = c.lifted_row("(-1)^n/(n+1)", 2 * c.p - 1, move |_, n| {
                    if n as usize == p - 1 {
                        Rational::zero()
                    } else {
                        rat(sign(n), n as i64 + 1)
                    }
                })?;
                let [ai, bj, h1, _] = index_rows(c)?;
                let pe = c.int(p as i64);
                let p2 = c.dom.mul(&pe, &pe);
                let items = (0..p)
                    .filter(|&j| i + j != p - 1)
                    .map(|j| {
                        let lhs = c.dom.mul(&w[i + j], &c.dom.mul(&ai[i], &bj[j]));
                        let dh = c.dom.sub(&h1[i], &h1[j]);
                        let inner = c.dom.sub(&pe, &c.dom.mul(&p2, &dh));
                        (lhs, c.dom.mul(&alt[i + j], &inner))
                    })
                    .collect();
                fold(c, 3, "j", items)
            }),
        )
        .note("one record per i; the reported j is the first disagreement"),
    );
    out.push(entry(
        "lem4.3/eq4.5b",
        Lemma,
        "Lemma 4.3, Eq. (4.5)",
        "p/(i+j+1) C(p-1,i) C(-p-1,j) = 1 + p^2 H^(2)_i = 1 - p^2 H^(2)_j (mod p^3), i+j = p-1",
        Above3,
        3,
        ParamDomain::Idx(0),
        ev!(|c, a| {
            let p = c.p as usize;
            let i = a.i() as usize;
            let j = p - 1 - i;
            let [ai, bj, _, h2] = index_rows(c)?;
            let pe = c.int(p as i64);
            let p2 = c.dom.mul(&pe, &pe);
            let lhs = c.dom.mul(&ai[i], &bj[j]);
            let one = c.dom.one();
            let r1 = c.dom.add(&one, &c.dom.mul(&p2, &h2[i]));
            let r2 = c.dom.sub(&one, &c.dom.mul(&p2, &h2[j]));
            fold(c, 3, "variant", vec![(lhs.clone(), r1), (lhs, r2)])
        }),
    ));
    out.push(entry(
        "lem4.5/eq4.7",
        Lemma,
        "Lemma 4.5, Eq. (4.7)",
        "sum_{i,j<p} C(x,i)C(-1-x,i) C(x,j)C(-1-x,j) p/(i+j+1) = sum_{k<p} C(x,k)C(-1-x,k) p/(2k+1) (mod p^3)",
        AtLeast3,
        3,
        ParamDomain::X,
        ev!(|c, a| {
            let pairs = c.pairs(a.x())?;
            let w = p_over(c)?;
            let mut lhs = c.dom.zero();
            for (i, u) in pairs.iter().enumerate() {
                let mut row = c.dom.zero();
                for (j, v) in pairs.iter().enumerate() {
                    row = c.dom.add(&row, &c.dom.mul(v, &w[i + j]));
                }
                lhs = c.dom.add(&lhs, &c.dom.mul(u, &row));
            }
            let rhs = pair_p_over(c, a.x())?;
            Ok(Some(Outcome::new(3, lhs, rhs)))
        }),
    ));
    out.push(entry(
        "thm5.1/eq5.1",
        Theorem,
        "Theorem 5.1, Eq. (5.1)",
        "sum_{k<p} s_k(x) sum_{j<p} C(x,j)C(-1-x,j)C(k+j,j) = sum_{k<p} C(x,k)C(-1-x,k) p/(2k+1) (mod p^3)",
        Above3,
        3,
        ParamDomain::X,
        ev!(|c, a| {
            let sk = c.src(a, s(Xr::P))?;
            let g = g_row(c, a.x())?;
            let mut lhs = c.dom.zero();
            for (u, v) in sk.iter().zip(&g) {
                lhs = c.dom.add(&lhs, &c.dom.mul(u, v));
            }
            let rhs = pair_p_over(c, a.x())?;
            Ok(Some(Outcome::new(3, lhs, rhs)))
        }),
    ));
    out.push(
        entry(
            "sec5/eq5.2",
            Theorem,
            "Section 5, Eq. (5.2), cited from earlier work",
            "sum_{k<p} C(x,k) C(-1-x,k) p/(2k+1) = (p+2(x-<x>_p))/(2x+1) (mod p^3), x != -1/2 (mod p)",
            Above3,
            3,
            ParamDomain::X,
            ev!(|c, a| {
                let (p, r) = (c.p, c.r(a)?);
                let lhs = pair_p_over(c, a.x())?;
                c.out(3, lhs, &shifted_ratio(p, a.x(), r))
            }),
        )
        .side(SideCondition::XNotNegHalfModP),
    );
    out.push(entry(
        "wolstenholme/H",
        Theorem,
        "Section 4, Wolstenholme's congruences",
        "H_{p-1} = 0 (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, _a| {
            let h = c.cache.harmonic(c.p - 1, 1).clone();
            let lhs = c.lift(&h)?;
            c.out(2, lhs, &Rational::zero())
        }),
    ));
    out.push(entry(
        "wolstenholme/H2",
        Theorem,
        "Section 4, Wolstenholme's congruences",
        "H^(2)_{p-1} = 0 (mod p)",
        Above3,
        1,
        ParamDomain::None,
        ev!(|c, _a| {
            let h = c.cache.harmonic(c.p - 1, 2).clone();
            let lhs = c.lift(&h)?;
            c.out(1, lhs, &Rational::zero())
        }),
    ));
}

/// `4x^2 - 2p` or `8x^2 - 2p` by the `p mod 24` branch, else `0`.
fn form24_value(rep: &Option<FormRepresentation>, p: u64) -> Rational {
    match rep {
        Some(r) => {
            let k = if r.form == Form::X2Plus6Y2 { 4 } else { 8 };
            int(k * r.x * r.x - 2 * p as i64)
        }
        None => Rational::zero(),
    }
}

fn catalog_conjectures(out: &mut Vec<Statement>) {
    let c_ = |n: Num, m: i64| cf(n, m);
    let central4 = c_(Num::Central, 4);

    out.push(entry(
        "conj6.2/a",
        Conjecture,
        "Conjecture 6.2",
        "sum_{k<p} C(2k,k)/4^k d_k(-1/6)^2 = (p/3)(p/3)(4(-2/p)-1) (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let rhs = pr(p) / int(3) * p3(p) * (int(4) * leg(-2, p) - int(1));
            sum_eq(c, a, Sum::sq(d(q(-1, 6))).coef(central4), 2, &rhs)
        }),
    ));
    out.push(entry(
        "conj6.2/b",
        Conjecture,
        "Conjecture 6.2",
        "sum_{k<p} C(2k,k)/4^k d_k(-1/3)^2 = 4x^2-2p (p=x^2+6y^2), 8x^2-2p (p=2x^2+3y^2), 0 if (-6/p)=-1 (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let rep = form24(p);
            let rhs = form24_value(&rep, p);
            let o = sum_eq(c, a, Sum::sq(d(q(-1, 3))).coef(central4), 2, &rhs)?;
            Ok(match rep {
                Some(r) => with_form(o, &r),
                None => o,
            })
        }),
    ));
    out.push(entry(
        "conj6.2/c",
        Conjecture,
        "Conjecture 6.2",
        "sum_{k<p} (8k+3) C(2k,k)/4^k d_k(-1/3)^2 = 0 (mod p^2), p>5, (-6/p)=1",
        Above5,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            if legendre(-6, c.p) != 1 {
                return Ok(None);
            }
            sum_eq(
                c,
                a,
                Sum::sq(d(q(-1, 3))).coef(central4).lin(8, 3),
                2,
                &Rational::zero(),
            )
        }),
    ));

    let half = c_(Num::Binom(Q(-1, 2)), 1);
    out.push(entry(
        "conj6.3/a",
        Conjecture,
        "Conjecture 6.3",
        "sum_{k<p} C(-1/2,k) d_k(-1/3) d_k(-1/6) = (-1/p)(4x^2-2p) (p=x^2+6y^2), (-1/p)(2p-8x^2) (p=2x^2+3y^2), 0 if (-6/p)=-1 (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let rep = form24(p);
            let mut rhs = leg(-1, p) * form24_value(&rep, p);
            if matches!(rep, Some(r) if r.form == Form::TwoX2Plus3Y2) {
                rhs = -rhs;
            }
            let o = sum_eq(c, a, Sum::of(d(q(-1, 3)), d(q(-1, 6))).coef(half), 2, &rhs)?;
            Ok(match rep {
                Some(r) => with_form(o, &r),
                None => o,
            })
        }),
    ));
    out.push(entry(
        "conj6.3/b",
        Conjecture,
        "Conjecture 6.3",
        "sum_{k<p} (64k+23) C(-1/2,k) d_k(-1/3) d_k(-1/6) = 4p(-1/p) (mod p^2), (-6/p)=1",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            if legendre(-6, p) != 1 {
                return Ok(None);
            }
            let rhs = int(4) * pr(p) * leg(-1, p);
            sum_eq(
                c,
                a,
                Sum::of(d(q(-1, 3)), d(q(-1, 6))).coef(half).lin(64, 23),
                2,
                &rhs,
            )
        }),
    ));

    let third = c_(Num::Binom(Q(-1, 3)), 1);
    out.push(entry(
        "conj6.4/a",
        Conjecture,
        "Conjecture 6.4",
        "sum_{k<p} C(-1/3,k) d_k(-1/3) = 2x - p/(2x) (mod p^2) if p=x^2+3y^2 with 3|x-1; 0 (mod p^3) if p=2 (mod 3)",
        Above3,
        3,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let sum = Sum::of(d(q(-1, 3)), Src::One).coef(third);
            match form3(p) {
                Some(rep) => {
                    let x = int(rep.x);
                    let rhs = int(2) * &x - pr(p) / (int(2) * &x);
                    Ok(with_form(sum_eq(c, a, sum, 2, &rhs)?, &rep))
                }
                None => sum_eq(c, a, sum, 3, &Rational::zero()),
            }
        }),
    ));
    out.push(entry(
        "conj6.4/b",
        Conjecture,
        "Conjecture 6.4",
        "sum_{k<p} (4k+1) C(-1/3,k) d_k(-1/3) = (p/6)(3(p/3)-1) (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let rhs = pr(p) / int(6) * (int(3) * p3(p) - int(1));
            sum_eq(
                c,
                a,
                Sum::of(d(q(-1, 3)), Src::One).coef(third).lin(4, 1),
                2,
                &rhs,
            )
        }),
    ));

    out.push(
        entry(
            "conj6.5/a",
            Conjecture,
            "Conjecture 6.5",
            "sum_{k<p} C(-2/3,k) d_k(-2/3) = p (mod p^2) if p=1 (mod 3); -(1/3) C((p+1)/2,(p+1)/6) (mod p) if p=2 (mod 3)",
            Above3,
            2,
            ParamDomain::None,
            ev!(|c, a| {
                let p = c.p;
                let sum = Sum::of(d(q(-2, 3)), Src::One).coef(c_(Num::Binom(Q(-2, 3)), 1));
                if p % 3 == 1 {
                    sum_eq(c, a, sum, 2, &pr(p))
                } else {
                    let b = Rational::from_integer(binom_nat(p.div_ceil(2), (p + 1) / 6));
                    sum_eq(c, a, sum, 1, &(-b / int(3)))
                }
            }),
        )
        .note("for p = 2 (mod 3) the prime is 5 (mod 6), so (p+1)/6 is an integer"),
    );
    out.push(entry(
        "conj6.5/b",
        Conjecture,
        "Conjecture 6.5",
        "sum_{k<p} C(-1/6,k) d_k(-1/6) = (-2/p) 2x (mod p) if p=x^2+3y^2 with 3|x-1; 0 (mod p) if p=2 (mod 3)",
        Above3,
        1,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let sum = Sum::of(d(q(-1, 6)), Src::One).coef(c_(Num::Binom(Q(-1, 6)), 1));
            match form3(p) {
                Some(rep) => {
                    let rhs = leg(-2, p) * int(2 * rep.x);
                    Ok(with_form(sum_eq(c, a, sum, 1, &rhs)?, &rep))
                }
                None => sum_eq(c, a, sum, 1, &Rational::zero()),
            }
        }),
    ));

    let quarter = c_(Num::Binom(Q(-1, 4)), 1);
    let six: [(&'static str, Sum, fn(u64) -> bool, &'static str); 4] = [
        (
            "conj6.6/a",
            Sum::of(d(q(-1, 4)), Src::One).coef(quarter),
            |p| p % 4 == 3,
            "sum_{k<p} C(-1/4,k) d_k(-1/4) = 0 (mod p), p = 3 (mod 4)",
        ),
        (
            "conj6.6/b",
            Sum::sq(d(q(-1, 4))).coef(central4),
            |p| p % 4 == 3,
            "sum_{k<p} C(2k,k)/4^k d_k(-1/4)^2 = 0 (mod p), p = 3 (mod 4)",
        ),
        (
            "conj6.6/c",
            Sum::sq(d(q(-1, 4))).coef(c_(Num::Central, -8)),
            |p| p % 4 == 3,
            "sum_{k<p} C(2k,k)/(-8)^k d_k(-1/4)^2 = 0 (mod p), p = 3 (mod 4)",
        ),
        (
            "conj6.6/d",
            Sum::sq(d(q(-1, 4))).coef(c_(Num::Central, 32)),
            |p| p % 8 == 5 || p % 8 == 7,
            "sum_{k<p} C(2k,k)/32^k d_k(-1/4)^2 = 0 (mod p), p = 5,7 (mod 8)",
        ),
    ];
    for (id, sum, applies, quote) in six {
        out.push(entry(
            id,
            Conjecture,
            "Conjecture 6.6",
            quote,
            AtLeast3,
            1,
            ParamDomain::None,
            ev!(|c, a| {
                if !applies(c.p) {
                    return Ok(None);
                }
                sum_eq(c, a, sum, 1, &Rational::zero())
            }),
        ));
    }

    let f2 = Src::Trans(c_(Num::Central, 2));
    let g6 = Src::Trans(c_(Num::Central, -6));
    let seven: [(&'static str, &'static str, Sum, u32, fn(u64) -> Rational, &'static str); 7] = [
        ("conj6.7/a", "Conjecture 6.7(i)", Sum::sq(f2), 2, |p| leg(-1, p),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k)/2^k)^2 = (-1/p) (mod p^2)"),
        ("conj6.7/b", "Conjecture 6.7(i)", Sum::sq(g6), 2, |p| leg(-1, p),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k)/(-6)^k)^2 = (-1/p) (mod p^2)"),
        ("conj6.7/c", "Conjecture 6.7(i)", Sum::sq(f2).lin(1, 0), 2,
            |p| rat(3, 4) * leg(3, p) * pr(p) - leg(-1, p),
            "sum_{n<p} n (sum_{k<=n} C(n,k) C(2k,k)/2^k)^2 = (3/4)(3/p) p - (-1/p) (mod p^2)"),
        ("conj6.7/d", "Conjecture 6.7(i)", Sum::sq(g6).lin(1, 0), 2,
            |p| -pr(p) / int(4) * leg(3, p),
            "sum_{n<p} n (sum_{k<=n} C(n,k) C(2k,k)/(-6)^k)^2 = -(p/4)(3/p) (mod p^2)"),
        ("conj6.7/e", "Conjecture 6.7(ii)", Sum::of(f2, g6), 1, |p| leg(3, p),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k)/2^k)(sum_{k<=n} C(n,k) C(2k,k)/(-6)^k) = (3/p) (mod p)"),
        ("conj6.7/f", "Conjecture 6.7(ii)", Sum::sq(Src::Trans(cf(Num::Cat, 2))), 1,
            |p| int(4) * leg(-1, p) - int(6) * leg(3, p) + int(3),
            "sum_{n<p} (sum_{k<=n} C(n,k) C_k/2^k)^2 = 4(-1/p) - 6(3/p) + 3 (mod p)"),
        ("conj6.7/g", "Conjecture 6.7(ii)", Sum::sq(Src::Trans(cf(Num::Cat, -6))), 1,
            |p| int(4) * leg(-1, p) + int(2) * leg(3, p) - int(5),
            "sum_{n<p} (sum_{k<=n} C(n,k) C_k/(-6)^k)^2 = 4(-1/p) + 2(3/p) - 5 (mod p)"),
    ];
    for (id, paper_ref, sum, e, rhs, quote) in seven {
        out.push(entry(
            id,
            Conjecture,
            paper_ref,
            quote,
            Above3,
            e,
            ParamDomain::None,
            ev!(|c, a| sum_eq(c, a, sum, e, &rhs(c.p))),
        ));
    }

    out.push(entry(
        "rem6.2/obs",
        Remark,
        "Remark 6.2",
        "sum_{k<p} D_k(x,-2) D_k(-1-x,-2)/9^k = (-1)^<x>_p (mod p)",
        Above3,
        1,
        ParamDomain::X,
        ev!(|c, a| {
            let m2 = Yr::Q(Q(-2, 1));
            let sum = Sum::of(Src::Fam(Fm::D(m2), Xr::P), Src::Fam(Fm::D(m2), Xr::Neg))
                .base(Base::Q(Q(1, 9)));
            let rhs = sgn(c.r(a)?);
            sum_eq(c, a, sum, 1, &rhs)
        }),
    ));

    out.push(entry(
        "conj6.8/a",
        Conjecture,
        "Conjecture 6.8",
        "sum_{n<p} C(2n,n)/4^n (sum_{k<=n} C(n,k) C(2k,k)/2^k)^2 = 4x^2-2p (p=x^2+6y^2), 2p-8x^2 (p=2x^2+3y^2), 0 if (-6/p)=-1 (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let rep = form24(p);
            let mut rhs = form24_value(&rep, p);
            if matches!(rep, Some(r) if r.form == Form::TwoX2Plus3Y2) {
                rhs = -rhs;
            }
            let o = sum_eq(c, a, Sum::sq(f2).coef(central4), 2, &rhs)?;
            Ok(match rep {
                Some(r) => with_form(o, &r),
                None => o,
            })
        }),
    ));
    out.push(entry(
        "conj6.8/b",
        Conjecture,
        "Conjecture 6.8",
        "sum_{n<p} (48n+25) C(2n,n)/4^n (sum_{k<=n} C(n,k) C(2k,k)/2^k)^2 = 8p(p/3) (mod p^2), (-6/p)=1",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            if legendre(-6, p) != 1 {
                return Ok(None);
            }
            let rhs = int(8) * pr(p) * p3(p);
            sum_eq(c, a, Sum::sq(f2).coef(central4).lin(48, 25), 2, &rhs)
        }),
    ));

    let one = Src::One;
    out.push(entry(
        "conj6.9/a",
        Conjecture,
        "Conjecture 6.9",
        "sum_{n<p} C(2n,n)^2/(-2)^n sum_{k<=n} C(n,k) C(2k,k)/2^k = 4x^2-2p (p=x^2+3y^2), 0 if p=2 (mod 3) (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let sum = Sum::of(f2, one).coef(c_(Num::Central2, -2));
            match form3(p) {
                Some(rep) => {
                    let rhs = int(4 * rep.x * rep.x - 2 * p as i64);
                    Ok(with_form(sum_eq(c, a, sum, 2, &rhs)?, &rep))
                }
                None => sum_eq(c, a, sum, 2, &Rational::zero()),
            }
        }),
    ));
    out.push(entry(
        "conj6.9/b",
        Conjecture,
        "Conjecture 6.9",
        "sum_{n<p} (5n+2) C(2n,n)^2/(-2)^n sum_{k<=n} C(n,k) C(2k,k)/2^k = (2p/3)(1+2(-1/p)) (mod p^2)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            let rhs = int(2) * pr(p) / int(3) * (int(1) + int(2) * leg(-1, p));
            sum_eq(c, a, Sum::of(f2, one).coef(c_(Num::Central2, -2)).lin(5, 2), 2, &rhs)
        }),
    ));
    out.push(
        entry(
            "conj6.9/c",
            Conjecture,
            "Conjecture 6.9",
            "sum_{n<p} C(2n,n)^2/64^n sum_{k<=n} C(n,k) C(2k,k)/2^k = 0 (mod p^2) if p=3 (mod 4); 0 (mod p) if p=5 (mod 12)",
            Above3,
            2,
            ParamDomain::None,
            ev!(|c, a| {
                let p = c.p;
                let e = if p % 4 == 3 {
                    2
                } else if p % 12 == 5 {
                    1
                } else {
                    return Ok(None);
                };
                sum_eq(c, a, Sum::of(f2, one).coef(c_(Num::Central2, 64)), e, &Rational::zero())
            }),
        )
        .note("the exponent follows the residue class of p"),
    );
    out.push(entry(
        "conj6.9/d",
        Conjecture,
        "Conjecture 6.9",
        "sum_{n<p} C(4n,2n)C(2n,n)/256^n sum_{k<=n} C(n,k) C(2k,k)/2^k = 0 (mod p^2), p = 5,7 (mod 8)",
        Above3,
        2,
        ParamDomain::None,
        ev!(|c, a| {
            let p = c.p;
            if p % 8 != 5 && p % 8 != 7 {
                return Ok(None);
            }
            sum_eq(c, a, Sum::of(f2, one).coef(c_(Num::C2C4, 256)), 2, &Rational::zero())
        }),
    ));

    out.push(
        entry(
            "conj6.10",
            Conjecture,
            "Conjecture 6.10",
            "sum_{k<p} s_k(x)^2 = (-1)^<x>_p (p+2(x-<x>_p))/(2x+1) (mod p^3), x != -1/2",
            Above3,
            3,
            ParamDomain::X,
            ev!(|c, a| {
                let (p, r) = (c.p, c.r(a)?);
                // for x = -1/2 (mod p) the quotient cancels to 1
                let rhs = sgn(r) * shifted_ratio(p, a.x(), r);
                sum_eq(c, a, Sum::sq(s(Xr::P)), 3, &rhs)
            }),
        )
        .side(SideCondition::XNotNegHalf),
    );

    type Rhs11 = fn(&mut crate::sequences::SeqCache, u64) -> Rational;
    let eleven: [(
        &'static str,
        PrimeConstraint,
        Xr,
        bool,
        Option<u64>,
        Rhs11,
        &'static str,
    ); 8] = [
        (
            "conj6.11/a",
            AtLeast3,
            q(-1, 2),
            false,
            Some(100),
            |cache, p| leg(-1, p) * (int(1) - int(7) * pr(p).pow(3) * cache.bernoulli(p - 3)),
            "sum_{k<p} s_k(-1/2)^2 = (-1/p)(1 - 7p^3 B_{p-3}) (mod p^4)",
        ),
        (
            "conj6.11/b",
            AtLeast3,
            q(-1, 2),
            true,
            None,
            |_, p| rat(3, 4) * leg(-1, p) * pr(p).pow(2),
            "sum_{k<p} (2k+1) s_k(-1/2)^2 = (3/4)(-1/p) p^2 (mod p^4)",
        ),
        (
            "conj6.11/c",
            Above3,
            q(-1, 4),
            false,
            Some(100),
            |cache, p| {
                let e = Rational::from_integer(cache.euler(p - 3).clone());
                leg(2, p) * pr(p) - int(26) * leg(-2, p) * pr(p).pow(3) * e
            },
            "sum_{k<p} s_k(-1/4)^2 = (2/p) p - 26(-2/p) p^3 E_{p-3} (mod p^4), p != 3",
        ),
        (
            "conj6.11/d",
            AtLeast3,
            q(-1, 4),
            true,
            None,
            |_, p| rat(13, 16) * leg(-2, p) * pr(p).pow(2),
            "sum_{k<p} (2k+1) s_k(-1/4)^2 = (13/16)(-2/p) p^2 (mod p^4)",
        ),
        (
            "conj6.11/e",
            Above3,
            q(-1, 3),
            false,
            Some(100),
            |cache, p| {
                pr(p) - rat(14, 3) * p3(p) * pr(p).pow(3) * cache.bernoulli_poly(p - 2, &rat(1, 3))
            },
            "sum_{k<p} s_k(-1/3)^2 = p - (14/3)(p/3) p^3 B_{p-2}(1/3) (mod p^4)",
        ),
        (
            "conj6.11/f",
            Above3,
            q(-1, 3),
            true,
            None,
            |_, p| rat(7, 9) * p3(p) * pr(p).pow(2),
            "sum_{k<p} (2k+1) s_k(-1/3)^2 = (7/9)(p/3) p^2 (mod p^4)",
        ),
        (
            "conj6.11/g",
            Above3,
            q(-1, 6),
            false,
            Some(100),
            |cache, p| {
                leg(3, p) * pr(p)
                    - rat(155, 12)
                        * leg(-1, p)
                        * pr(p).pow(3)
                        * cache.bernoulli_poly(p - 2, &rat(1, 3))
            },
            "sum_{k<p} s_k(-1/6)^2 = (3/p) p - (155/12)(-1/p) p^3 B_{p-2}(1/3) (mod p^4)",
        ),
        (
            "conj6.11/h",
            Above3,
            q(-1, 6),
            true,
            None,
            |_, p| rat(31, 36) * leg(-1, p) * pr(p).pow(2),
            "sum_{k<p} (2k+1) s_k(-1/6)^2 = (31/36)(-1/p) p^2 (mod p^4)",
        ),
    ];
    for (id, pc, x, weighted, cap, rhs, quote) in eleven {
        let sum = if weighted {
            Sum::sq(s(x)).lin(2, 1)
        } else {
            Sum::sq(s(x))
        };
        let st = entry(
            id,
            Conjecture,
            "Conjecture 6.11",
            quote,
            pc,
            4,
            ParamDomain::None,
            ev!(|c, a| {
                let r = rhs(&mut c.cache, c.p);
                sum_eq(c, a, sum, 4, &r)
            }),
        );
        out.push(match cap {
            Some(cap) => st.cap(cap),
            None => st,
        });
    }

    let thirteen: [(&'static str, PrimeConstraint, Coef, bool, u32, fn(u64) -> Rational, &'static str); 8] = [
        ("conj6.13/a", AtLeast3, c_(Num::CentralCat, -16), false, 3,
            |p| int(4) * leg(-1, p) + int(3) * pr(p).pow(2) * (int(3) - int(4) * leg(-1, p)),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k) C_k/(-16)^k)^2 = 4(-1/p) + 3p^2(3 - 4(-1/p)) (mod p^3)"),
        ("conj6.13/b", AtLeast3, c_(Num::CentralCat, -16), true, 4,
            |p| rat(3, 2) * leg(-1, p) * pr(p).pow(2) + int(3) * pr(p).pow(3) * (int(3) - int(4) * leg(-1, p)),
            "sum_{n<p} (n+1)(sum_{k<=n} C(n,k) C(2k,k) C_k/(-16)^k)^2 = (3/2)(-1/p) p^2 + 3p^3(3 - 4(-1/p)) (mod p^4)"),
        ("conj6.13/c", Above3, c_(Num::C3Cat, -27), false, 3,
            |p| rat(9, 2) * pr(p) + rat(7, 4) * pr(p).pow(2) * (int(7) - int(9) * p3(p)),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(3k,k) C_k/(-27)^k)^2 = (9/2) p + (7/4) p^2 (7 - 9(p/3)) (mod p^3)"),
        ("conj6.13/d", Above3, c_(Num::C3Cat, -27), true, 4,
            |p| rat(7, 4) * p3(p) * pr(p).pow(2) + rat(7, 4) * pr(p).pow(3) * (int(7) - int(9) * p3(p)),
            "sum_{n<p} (n+1)(sum_{k<=n} C(n,k) C(3k,k) C_k/(-27)^k)^2 = (7/4)(p/3) p^2 + (7/4) p^3 (7 - 9(p/3)) (mod p^4)"),
        ("conj6.13/e", Above3, c_(Num::C4Cat, -64), false, 3,
            |p| rat(16, 3) * leg(2, p) * pr(p) + rat(13, 9) * pr(p).pow(2) * (int(13) - int(16) * leg(-2, p)),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(4k,2k) C_k/(-64)^k)^2 = (16/3)(2/p) p + (13/9) p^2 (13 - 16(-2/p)) (mod p^3)"),
        ("conj6.13/f", Above3, c_(Num::C4Cat, -64), true, 4,
            |p| rat(13, 6) * leg(-2, p) * pr(p).pow(2) + rat(13, 9) * pr(p).pow(3) * (int(13) - int(16) * leg(-2, p)),
            "sum_{n<p} (n+1)(sum_{k<=n} C(n,k) C(4k,2k) C_k/(-64)^k)^2 = (13/6)(-2/p) p^2 + (13/9) p^3 (13 - 16(-2/p)) (mod p^4)"),
        ("conj6.13/g", Above5, c_(Num::C3C6Succ, -432), false, 3,
            |p| rat(36, 5) * leg(3, p) * pr(p) + rat(31, 25) * pr(p).pow(2) * (int(31) - int(36) * leg(-1, p)),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(6k,3k) C(3k,k)/((k+1)(-432)^k))^2 = (36/5)(3/p) p + (31/25) p^2 (31 - 36(-1/p)) (mod p^3)"),
        ("conj6.13/h", Above5, c_(Num::C3C6Succ, -432), true, 4,
            |p| rat(31, 10) * leg(-1, p) * pr(p).pow(2) + rat(31, 25) * pr(p).pow(3) * (int(31) - int(36) * leg(-1, p)),
            "sum_{n<p} (n+1)(sum_{k<=n} C(n,k) C(6k,3k) C(3k,k)/((k+1)(-432)^k))^2 = (31/10)(-1/p) p^2 + (31/25) p^3 (31 - 36(-1/p)) (mod p^4)"),
    ];
    for (id, pc, coef, weighted, e, rhs, quote) in thirteen {
        let mut sum = Sum::sq(Src::Trans(coef));
        if weighted {
            sum = sum.lin(1, 1);
        }
        out.push(entry(
            id,
            Conjecture,
            "Conjecture 6.13",
            quote,
            pc,
            e,
            ParamDomain::None,
            ev!(|c, a| sum_eq(c, a, sum, e, &rhs(c.p))),
        ));
    }

    out.push(entry(
        "conj6.14i",
        Conjecture,
        "Conjecture 6.14(i)",
        "sum_{k<p} t_k(x)^2 = (-1/p) if 2x = -1 (mod p), else (-1)^<x>_p (p+2x-2<x>_p)/(2x+1) (mod p^2)",
        AtLeast3,
        2,
        ParamDomain::X,
        ev!(|c, a| {
            let (p, r) = (c.p, c.r(a)?);
            let rhs = if r == (p - 1) / 2 {
                leg(-1, p)
            } else {
                sgn(r) * shifted_ratio(p, a.x(), r)
            };
            sum_eq(c, a, Sum::sq(t(Xr::P)), 2, &rhs)
        }),
    ));
    let fourteen: [(
        &'static str,
        PrimeConstraint,
        Xr,
        (i64, i64),
        i64,
        &'static str,
    ); 4] = [
        (
            "conj6.14iii/a",
            AtLeast3,
            q(-1, 2),
            (8, 5),
            2,
            "sum_{k<p} (8k+5) t_k(-1/2)^2 = 2p (mod p^2)",
        ),
        (
            "conj6.14iii/b",
            AtLeast3,
            q(-1, 4),
            (32, 21),
            8,
            "sum_{k<p} (32k+21) t_k(-1/4)^2 = 8p (mod p^2)",
        ),
        (
            "conj6.14iii/c",
            Above3,
            q(-1, 3),
            (18, 7),
            0,
            "sum_{k<p} (18k+7) t_k(-1/3)^2 = 0 (mod p^2)",
        ),
        (
            "conj6.14iii/d",
            Above3,
            q(-1, 6),
            (72, 49),
            18,
            "sum_{k<p} (72k+49) t_k(-1/6)^2 = 18p (mod p^2)",
        ),
    ];
    for (id, pc, x, (u, v), k, quote) in fourteen {
        out.push(entry(
            id,
            Conjecture,
            "Conjecture 6.14(iii)",
            quote,
            pc,
            2,
            ParamDomain::None,
            ev!(|c, a| sum_eq(c, a, Sum::sq(t(x)).lin(u, v), 2, &(int(k) * pr(c.p)))),
        ));
    }

    let rem65: [(
        &'static str,
        PrimeConstraint,
        Coef,
        fn(u64) -> Rational,
        &'static str,
    ); 4] = [
        (
            "rem6.5/a",
            AtLeast3,
            c_(Num::Central2, -8),
            |p| leg(-1, p),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k)^2/(-8)^k)^2 = (-1/p) (mod p^2)",
        ),
        (
            "rem6.5/b",
            AtLeast3,
            c_(Num::C2C4, -32),
            |p| leg(2, p) * pr(p),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(2k,k) C(4k,2k)/(-32)^k)^2 = (2/p) p (mod p^2)",
        ),
        (
            "rem6.5/c",
            Above3,
            Coef(Num::C2C3, Q(-27, 2)),
            pr,
            "sum_{n<p} (sum_{k<=n} C(n,k) 2^k C(2k,k) C(3k,k)/(-27)^k)^2 = p (mod p^2), p != 3",
        ),
        (
            "rem6.5/d",
            Above3,
            c_(Num::C3C6, -216),
            |p| leg(3, p) * pr(p),
            "sum_{n<p} (sum_{k<=n} C(n,k) C(3k,k) C(6k,3k)/(-216)^k)^2 = (3/p) p (mod p^2), p != 3",
        ),
    ];
    for (id, pc, coef, rhs, quote) in rem65 {
        out.push(
            entry(
                id,
                Remark,
                "Remark 6.5",
                quote,
                pc,
                2,
                ParamDomain::None,
                ev!(|c, a| sum_eq(c, a, Sum::sq(Src::Trans(coef)), 2, &rhs(c.p))),
            )
            .note("specializations of the t_k(x) conjecture at x = -1/2, -1/4, -1/3, -1/6"),
        );
    }
}

/// Every catalog statement, sorted by id.
pub fn catalog() -> Vec<Statement> {
    let mut out = Vec::new();
    catalog_theorems(&mut out);
    catalog_lemmas(&mut out);
    catalog_conjectures(&mut out);
    out.sort_by(|a, b| a.id.cmp(b.id));
    out
}

/// Ids of the catalog, in catalog order.
pub fn catalog_ids() -> Vec<&'static str> {
    catalog().iter().map(|s| s.id).collect()
}
