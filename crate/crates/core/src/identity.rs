//! Certified polynomial identities and integer-valuedness certificates.
//!
//! An identity whose two sides are polynomials of degree at most `D_v` in each
//! free variable `v` holds identically once it holds on the product grid
//! `{0..D_v}^vars`. Integer-valuedness is certified through the coefficients
//! of the binomial basis `C(x - t, j)`.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat, Rational};
use crate::sequences::{binom, binom_nat, seq_eval, SeqFamily};

type SideFn = Box<dyn Fn(&[i64], &[Rational]) -> Result<Rational> + Send + Sync>;
type TupleFn = Box<dyn Fn(u64) -> Vec<Vec<i64>> + Send + Sync>;
type DegreeFn = Box<dyn Fn(&[i64]) -> Vec<usize> + Send + Sync>;

/// An identity over Q in integer parameters and free variables.
pub struct IdentityStatement {
    pub id: &'static str,
    pub reference: &'static str,
    /// Justification of the declared degree bound.
    pub degree_note: &'static str,
    pub params: &'static [&'static str],
    pub vars: &'static [&'static str],
    tuples: TupleFn,
    degrees: DegreeFn,
    lhs: SideFn,
    rhs: SideFn,
    /// Grid translation used when an evaluator hits a pole.
    pub pole_offset: i64,
}

impl core::fmt::Debug for IdentityStatement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("IdentityStatement")
            .field("id", &self.id)
            .field("params", &self.params)
            .field("vars", &self.vars)
            .finish()
    }
}

impl IdentityStatement {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: &'static str,
        reference: &'static str,
        degree_note: &'static str,
        params: &'static [&'static str],
        vars: &'static [&'static str],
        tuples: impl Fn(u64) -> Vec<Vec<i64>> + Send + Sync + 'static,
        degrees: impl Fn(&[i64]) -> Vec<usize> + Send + Sync + 'static,
        lhs: impl Fn(&[i64], &[Rational]) -> Result<Rational> + Send + Sync + 'static,
        rhs: impl Fn(&[i64], &[Rational]) -> Result<Rational> + Send + Sync + 'static,
    ) -> Self {
        IdentityStatement {
            id,
            reference,
            degree_note,
            params,
            vars,
            tuples: Box::new(tuples),
            degrees: Box::new(degrees),
            lhs: Box::new(lhs),
            rhs: Box::new(rhs),
            pole_offset: 0,
        }
    }

    pub fn with_pole_offset(mut self, offset: i64) -> Self {
        self.pole_offset = offset;
        self
    }

    pub fn tuples(&self, param_max: u64) -> Vec<Vec<i64>> {
        (self.tuples)(param_max)
    }

    pub fn degrees(&self, params: &[i64]) -> Vec<usize> {
        (self.degrees)(params)
    }

    pub fn eval_lhs(&self, params: &[i64], point: &[Rational]) -> Result<Rational> {
        (self.lhs)(params, point)
    }

    pub fn eval_rhs(&self, params: &[i64], point: &[Rational]) -> Result<Rational> {
        (self.rhs)(params, point)
    }

    /// Same statement with `coeff * prod v_i^{exps_i}` added to the right side.
    /// The monomial must respect the degree bounds for the mutation to be
    /// detectable, which the caller chooses.
    pub fn mutated(self, coeff: Rational, exps: Vec<u32>) -> Self {
        let rhs = self.rhs;
        let bump = move |params: &[i64], point: &[Rational]| -> Result<Rational> {
            let mut term = coeff.clone();
            for (v, e) in point.iter().zip(&exps) {
                term *= num_traits::pow::pow(v.clone(), *e as usize);
            }
            Ok(rhs(params, point)? + term)
        };
        IdentityStatement {
            rhs: Box::new(bump),
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub params: Vec<i64>,
    pub point: Vec<Rational>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub id: String,
    pub pass: bool,
    pub tuples_checked: usize,
    pub points_checked: usize,
    pub counterexample: Option<Counterexample>,
}

/// Checks `lhs == rhs` on `{offset..offset+D_v}` for every variable.
fn certify_grid(
    stmt: &IdentityStatement,
    params: &[i64],
    offset: i64,
) -> Result<core::result::Result<usize, Counterexample>> {
    let degrees = stmt.degrees(params);
    debug_assert_eq!(degrees.len(), stmt.vars.len());
    let mut idx = vec![0usize; degrees.len()];
    let mut points = 0usize;
    loop {
        let point: Vec<Rational> = idx.iter().map(|&i| int(i as i64 + offset)).collect();
        let l = stmt.eval_lhs(params, &point)?;
        let r = stmt.eval_rhs(params, &point)?;
        points += 1;
        if l != r {
            return Ok(Err(Counterexample {
                params: params.to_vec(),
                point,
                lhs: l,
                rhs: r,
            }));
        }
        // odometer over the grid
        let mut v = 0;
        loop {
            if v == idx.len() {
                return Ok(Ok(points));
            }
            idx[v] += 1;
            if idx[v] <= degrees[v] {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Certifies the identity for every parameter tuple up to `param_max`.
pub fn verify_identity(stmt: &IdentityStatement, param_max: u64) -> Result<IdentityReport> {
    let mut report = IdentityReport {
        id: String::from(stmt.id),
        pass: true,
        tuples_checked: 0,
        points_checked: 0,
        counterexample: None,
    };
    for params in stmt.tuples(param_max) {
        let outcome = match certify_grid(stmt, &params, 0) {
            Err(Error::DivisionByZero) if stmt.pole_offset != 0 => {
                certify_grid(stmt, &params, stmt.pole_offset)
            }
            other => other,
        };
        let outcome = outcome.map_err(|e| match e {
            Error::DivisionByZero => Error::PoleOnGrid(format!("{} at {:?}", stmt.id, params)),
            e => e,
        })?;
        report.tuples_checked += 1;
        match outcome {
            Ok(points) => report.points_checked += points,
            Err(cx) => {
                report.pass = false;
                report.counterexample = Some(cx);
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Exact division that reports a zero divisor instead of panicking.
pub fn qdiv(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

fn pm(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn b(x: &Rational, k: i64) -> Rational {
    if k < 0 {
        Rational::zero()
    } else {
        binom(x, k as u64)
    }
}

fn bi(n: i64, k: i64) -> Rational {
    b(&int(n), k)
}

fn one() -> Rational {
    int(1)
}

fn range_tuples(lo: i64, max: u64) -> Vec<Vec<i64>> {
    (lo..=max as i64).map(|n| vec![n]).collect()
}

fn pair_tuples(max: u64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in 0..=max as i64 {
        for c in 0..=max as i64 {
            out.push(vec![a, c]);
        }
    }
    out
}

/// `C(x,k) C(-1-x,k)`
fn a_k(x: &Rational, k: i64) -> Rational {
    b(x, k) * b(&(-one() - x), k)
}

/// `C(x,k) C(x+k,k)`
fn ax_k(x: &Rational, k: i64) -> Rational {
    b(x, k) * b(&(x + int(k)), k)
}

fn s_poly(k: i64, x: &Rational) -> Rational {
    seq_eval(&SeqFamily::LowerS, k as u64, x)
}

/// Both sides of the two-variable product identity `u_n`.
fn u_lhs(n: i64, x: &Rational) -> Rational {
    (0..=n).map(|i| ax_k(x, i) * ax_k(x, n - i)).sum()
}

fn u_rhs(n: i64, x: &Rational) -> Rational {
    (0..=n)
        .map(|k| {
            ax_k(x, k) * Rational::from_integer(binom_nat(2 * k as u64, k as u64)) * bi(k, n - k)
        })
        .sum()
}

/// Every identity in the lab, in id order.
pub fn identity_catalog() -> Vec<IdentityStatement> {
    let mut v = vec![
        IdentityStatement::new(
            "eq1.15",
            "Theorem 1.3 (1.15)",
            "LHS and RHS have degree <= n in x, <= n+m in y, <= n in z",
            &["m", "n"],
            &["x", "y", "z"],
            pair_tuples,
            |p| {
                let (m, n) = (p[0] as usize, p[1] as usize);
                vec![n, n + m, n]
            },
            |p, v| {
                let (m, n) = (p[0], p[1]);
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                let s: Rational = (0..=n)
                    .map(|k| pm(k) * b(x, k) * b(y, k + m) * b(z, n - k))
                    .sum();
                Ok(pm(m + n) * s)
            },
            |p, v| {
                let (m, n) = (p[0], p[1]);
                let (x, y, z) = (&v[0], &v[1], &v[2]);
                Ok((0..=n)
                    .map(|k| {
                        pm(k)
                            * b(x, k)
                            * b(&(int(m - 1) - y), k + m)
                            * b(&(int(n) - x - z - one()), n - k)
                    })
                    .sum())
            },
        ),
        IdentityStatement::new(
            "eq1.16",
            "Theorem 1.3 (1.16), y = -1-x",
            "each term has degree <= 2k + (n-k) <= 2n in x",
            &["n", "d"],
            &["x"],
            pair_tuples,
            |p| vec![2 * p[0] as usize],
            |p, v| {
                let (n, d) = (p[0], p[1]);
                let x = &v[0];
                let y = -one() - x;
                Ok((0..=n)
                    .map(|k| pm(k) * bi(n + d, k + d) * b(x, k) * b(&y, k))
                    .sum())
            },
            |p, v| {
                let (n, d) = (p[0], p[1]);
                let x = &v[0];
                let y = -one() - x;
                let s: Rational = (0..=n)
                    .map(|k| pm(k) * b(x, k) * b(x, k) * b(&(&y - int(d)), n - k))
                    .sum();
                Ok(pm(n) * s)
            },
        ),
        IdentityStatement::new(
            "eq1.17",
            "Theorem 1.3 (1.17), y = -1-x",
            "each term has degree <= 2k + (n-k) <= 2n in x and <= n in z",
            &["n"],
            &["x", "z"],
            |max| range_tuples(0, max),
            |p| {
                let n = p[0] as usize;
                vec![2 * n, n]
            },
            |p, v| {
                let n = p[0];
                let (x, z) = (&v[0], &v[1]);
                let y = -one() - x;
                Ok((0..=n)
                    .map(|k| pm(k) * b(x, k) * b(x, k) * b(&(&y + z), n - k))
                    .sum())
            },
            |p, v| {
                let n = p[0];
                let (x, z) = (&v[0], &v[1]);
                let y = -one() - x;
                Ok((0..=n)
                    .map(|k| pm(k) * b(&y, k) * b(&y, k) * b(&(x + z), n - k))
                    .sum())
            },
        ),
        IdentityStatement::new(
            "eq1.18",
            "Corollary 1.2 (1.18)",
            "integer parameters only; m >= 1, n, x in [0, m), d >= 0",
            &["m", "n", "x", "d"],
            &[],
            |max| {
                let mut out = Vec::new();
                for m in 1..=max.max(1) as i64 {
                    for n in 0..m {
                        for x in 0..m {
                            for d in 0..=max as i64 {
                                out.push(vec![m, n, x, d]);
                            }
                        }
                    }
                }
                out
            },
            |_| vec![],
            |p, _| {
                let (n, x, d) = (p[1], p[2], p[3]);
                let x = int(x);
                Ok((0..=n).map(|k| bi(n + d, k + d) * ax_k(&x, k)).sum())
            },
            |p, _| {
                let (m, n, xi, d) = (p[0], p[1], p[2], p[3]);
                let x = int(xi);
                let s: Rational = (0..m).map(|k| a_k(&x, k) * bi(n + k + d, k + d)).sum();
                Ok(pm(xi) * s)
            },
        ),
        IdentityStatement::new(
            "eq1.19",
            "Corollary 1.2 (1.19)",
            "integer parameters only; m >= 1, n, x in [0, m)",
            &["m", "n", "x"],
            &[],
            |max| {
                let mut out = Vec::new();
                for m in 1..=max.max(1) as i64 {
                    for n in 0..m {
                        for x in 0..m {
                            out.push(vec![m, n, x]);
                        }
                    }
                }
                out
            },
            |_| vec![],
            |p, _| Ok(s_poly(p[1], &int(p[2]))),
            |p, _| {
                let (m, n, xi) = (p[0], p[1], p[2]);
                let x = int(xi);
                let s: Rational = (0..m).map(|k| a_k(&x, k) * bi(n + k, k)).sum();
                Ok(pm(xi) * s)
            },
        ),
        IdentityStatement::new(
            "eq1.2",
            "Chu-Vandermonde (1.2)",
            "degree <= n in x and in y",
            &["n"],
            &["x", "y"],
            |max| range_tuples(0, max),
            |p| vec![p[0] as usize; 2],
            |p, v| {
                let n = p[0];
                Ok((0..=n).map(|k| b(&v[0], k) * b(&v[1], n - k)).sum())
            },
            |p, v| Ok(b(&(&v[0] + &v[1]), p[0])),
        ),
        IdentityStatement::new(
            "eq1.6",
            "Definition 1.1 (1.6), s_n two forms",
            "degree <= 2n in x",
            &["n"],
            &["x"],
            |max| range_tuples(0, max),
            |p| vec![2 * p[0] as usize],
            |p, v| Ok(seq_eval(&SeqFamily::S(int(-1)), p[0] as u64, &v[0])),
            |p, v| {
                let n = p[0];
                Ok((0..=n).map(|k| bi(n, k) * ax_k(&v[0], k)).sum())
            },
        ),
        IdentityStatement::new(
            "eq1.7",
            "(1.7) d_n(x) = (-1)^n d_n(-1-x)",
            "degree <= n in x",
            &["n"],
            &["x"],
            |max| range_tuples(0, max),
            |p| vec![p[0] as usize],
            |p, v| Ok(seq_eval(&SeqFamily::LowerD, p[0] as u64, &v[0])),
            |p, v| Ok(pm(p[0]) * seq_eval(&SeqFamily::LowerD, p[0] as u64, &(-one() - &v[0]))),
        ),
        IdentityStatement::new(
            "eq2.1",
            "Lemma 2.1 (2.1)",
            "degree <= n in x and in y",
            &["n"],
            &["x", "y"],
            |max| range_tuples(0, max),
            |p| vec![p[0] as usize; 2],
            |p, v| Ok(seq_eval(&SeqFamily::D(v[1].clone()), p[0] as u64, &v[0])),
            |p, v| {
                let n = p[0];
                let (x, y) = (&v[0], &v[1]);
                Ok((0..=n)
                    .map(|k| {
                        bi(n, k)
                            * b(&(x + int(k)), k)
                            * num_traits::pow::pow(y.clone(), k as usize)
                            * num_traits::pow::pow(one() - y, (n - k) as usize)
                    })
                    .sum())
            },
        ),
        IdentityStatement::new(
            "eq2.6",
            "Lemma 2.2 (2.6)",
            "integer parameters only; n >= 1, i, j in [0, n)",
            &["n", "i", "j"],
            &[],
            index_pair_tuples,
            |_| vec![],
            |p, _| {
                let (n, i, j) = (p[0], p[1], p[2]);
                Ok((0..n).map(|k| bi(k, i) * bi(k + j, j)).sum())
            },
            |p, _| {
                let (n, i, j) = (p[0], p[1], p[2]);
                let num = pm(j) * int(n) * bi(n - 1, i) * bi(-n - 1, j);
                qdiv(&num, &int(i + j + 1))
            },
        ),
        IdentityStatement::new(
            "eq2.7",
            "Lemma 2.2 (2.7)",
            "integer parameters only; n >= 1, i, j in [0, n)",
            &["n", "i", "j"],
            &[],
            index_pair_tuples,
            |_| vec![],
            |p, _| {
                let (n, i, j) = (p[0], p[1], p[2]);
                Ok((0..n)
                    .map(|k| int(2 * k + 1) * bi(k, i) * bi(k + j, j))
                    .sum())
            },
            |p, _| {
                let (n, i, j) = (p[0], p[1], p[2]);
                let f1 = qdiv(&int(2 * n), &int(i + j + 2))?;
                let f2 = qdiv(&int(i - j), &int((i + j + 1) * (i + j + 2)))?;
                Ok(pm(j) * bi(n - 1, i) * bi(-n - 1, j) * int(n) * (f1 + f2))
            },
        ),
        IdentityStatement::new(
            "eq2.8",
            "Lemma 2.3(i) (2.8)",
            "degree <= n in x and in y",
            &["n"],
            &["x", "y"],
            |max| range_tuples(1, max),
            |p| vec![p[0] as usize; 2],
            |p, v| {
                let n = p[0];
                Ok((0..=n)
                    .map(|i| int(2 * i - n) * b(&v[0], i) * b(&v[1], n - i))
                    .sum())
            },
            |p, v| Ok((&v[0] - &v[1]) * b(&(&v[0] + &v[1] - one()), p[0] - 1)),
        ),
        IdentityStatement::new(
            "eq4.3",
            "Lemma 4.2 (4.3)",
            "each side has degree <= 4(n-1) in x",
            &["n"],
            &["x"],
            |max| range_tuples(1, max),
            |p| vec![4 * (p[0] as usize - 1)],
            |p, v| Ok(sk_pair_lhs(p[0], &v[0], false)),
            |p, v| sk_pair_rhs(p[0], &v[0], false),
        ),
        IdentityStatement::new(
            "eq4.4",
            "Lemma 4.2 (4.4)",
            "each side has degree <= 4(n-1) in x",
            &["n"],
            &["x"],
            |max| range_tuples(1, max),
            |p| vec![4 * (p[0] as usize - 1)],
            |p, v| Ok(sk_pair_lhs(p[0], &v[0], true)),
            |p, v| sk_pair_rhs(p[0], &v[0], true),
        ),
        IdentityStatement::new(
            "eq4.6",
            "Lemma 4.4 (4.6)",
            "each side has degree <= 2n in x",
            &["n"],
            &["x"],
            |max| range_tuples(0, max),
            |p| vec![2 * p[0] as usize],
            |p, v| Ok(u_lhs(p[0], &v[0])),
            |p, v| Ok(u_rhs(p[0], &v[0])),
        ),
        IdentityStatement::new(
            "rem1.1b/dneg",
            "Remark 1.1(b), d_n(-1/2)",
            "no free variables",
            &["n"],
            &[],
            |max| range_tuples(0, max),
            |_| vec![],
            |p, _| Ok(seq_eval(&SeqFamily::LowerD, p[0] as u64, &rat(-1, 2))),
            |p, _| {
                let n = p[0];
                if n % 2 == 1 {
                    return Ok(Rational::zero());
                }
                let m = (n / 2) as u64;
                Ok(Rational::new(
                    binom_nat(2 * m, m),
                    BigInt::from(4).pow(m as u32),
                ))
            },
        ),
        IdentityStatement::new(
            "rem6.2/ljunggren",
            "Remark 6.2, (2.1) at x = -1/2, y = -2",
            "no free variables",
            &["n"],
            &[],
            |max| range_tuples(0, max),
            |_| vec![],
            |p, _| Ok(central_transform(p[0], &int(2), &int(1))),
            |p, _| {
                let n = p[0];
                Ok(num_traits::pow::pow(int(3), n as usize)
                    * central_transform(n, &int(-6), &int(1)))
            },
        ),
        IdentityStatement::new(
            "sec1/Dn1",
            "D_n(x,1) = (-1)^n C(-1-x, n)",
            "degree <= n in x",
            &["n"],
            &["x"],
            |max| range_tuples(0, max),
            |p| vec![p[0] as usize],
            |p, v| Ok(seq_eval(&SeqFamily::D(int(1)), p[0] as u64, &v[0])),
            |p, v| Ok(pm(p[0]) * b(&(-one() - &v[0]), p[0])),
        ),
    ];
    v.sort_by(|a, b| a.id.cmp(b.id));
    v
}

fn index_pair_tuples(max: u64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for n in 1..=max.max(1) as i64 {
        for i in 0..n {
            for j in 0..n {
                out.push(vec![n, i, j]);
            }
        }
    }
    out
}

/// `sum_{k<n} [(2k+1)] s_k(x) sum_{j<n} C(x,j)C(-1-x,j)C(k+j,j)`, with the
/// `(2k+1)/n` weighting when `weighted`.
fn sk_pair_lhs(n: i64, x: &Rational, weighted: bool) -> Rational {
    let a: Vec<Rational> = (0..n).map(|j| a_k(x, j)).collect();
    let mut acc = Rational::zero();
    for k in 0..n {
        let inner: Rational = (0..n).map(|j| &a[j as usize] * bi(k + j, j)).sum();
        let mut term = s_poly(k, x) * inner;
        if weighted {
            term *= int(2 * k + 1);
        }
        acc += term;
    }
    if weighted {
        acc / int(n)
    } else {
        acc
    }
}

fn sk_pair_rhs(n: i64, x: &Rational, weighted: bool) -> Result<Rational> {
    let ax: Vec<Rational> = (0..n).map(|i| ax_k(x, i)).collect();
    let mut acc = Rational::zero();
    for i in 0..n {
        for j in 0..n {
            let base = &ax[i as usize] * &ax[j as usize] * bi(n - 1, i) * bi(-n - 1, j);
            let w = if weighted {
                qdiv(&int(2 * n), &int(i + j + 2))?
                    + qdiv(&int(i - j), &int((i + j + 1) * (i + j + 2)))?
            } else {
                qdiv(&int(n), &int(i + j + 1))?
            };
            acc += base * w;
        }
    }
    Ok(acc)
}

/// `sum_k C(n,k) C(2k,k) / m^k`, scaled by `scale` (kept for reuse).
fn central_transform(n: i64, m: &Rational, scale: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=n {
        let c = Rational::from_integer(binom_nat(2 * k as u64, k as u64));
        acc += bi(n, k) * c / num_traits::pow::pow(m.clone(), k as usize);
    }
    acc * scale
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceReport {
    pub n_max: u64,
    pub pass: bool,
    pub base_cases: bool,
    pub failures: Vec<String>,
}

/// Residual of the three-term recurrence for `u` at index `n` and point `x`.
fn u_residual(u: &dyn Fn(i64, &Rational) -> Rational, n: i64, x: &Rational) -> Rational {
    let nn = int(n);
    let c0 = int(n + 1) * (&nn - int(2) * x) * (&nn + int(2) * x + int(2));
    let c1 = int(2 * n + 3) * (int(n * n + 3 * n + 2) - int(2) * x * x - int(2) * x);
    let c2 = num_traits::pow::pow(int(n + 2), 3);
    c0 * u(n, x) + c1 * u(n + 1, x) + c2 * u(n + 2, x)
}

/// Checks that both sides of the `u_n` identity satisfy the recurrence as
/// polynomials in `x` (grid of `2n+6` points' degree bound) and share the
/// initial values `u_0 = 1`, `u_1 = 2x(x+1)`.
pub fn verify_u_recurrence(n_max: u64) -> RecurrenceReport {
    let mut failures = Vec::new();
    type Side<'a> = (&'a str, &'a dyn Fn(i64, &Rational) -> Rational);
    let sides: [Side; 2] = [("lhs", &u_lhs), ("rhs", &u_rhs)];
    let mut base_ok = true;
    for (name, u) in sides.iter() {
        for x in 0..=2i64 {
            let x = int(x);
            if u(0, &x) != one() || u(1, &x) != int(2) * &x * (&x + one()) {
                base_ok = false;
                failures.push(format!("{name}: initial values at x = {x}"));
            }
        }
        for n in 0..=n_max as i64 {
            for x in 0..=(2 * n + 6) {
                let r = u_residual(*u, n, &int(x));
                if !r.is_zero() {
                    failures.push(format!("{name}: residual at n = {n}, x = {x} is {r}"));
                    break;
                }
            }
        }
    }
    RecurrenceReport {
        n_max,
        pass: failures.is_empty(),
        base_cases: base_ok,
        failures,
    }
}

/// Coefficients `c_j = (Delta^j P)(t)` of `P(x) = sum_j c_j C(x - t, j)`,
/// given `P(t), ..., P(t+d)`.
pub fn binomial_basis(values: &[Rational]) -> Vec<Rational> {
    let mut diffs = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    for _ in 0..values.len() {
        out.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// Evaluates `sum_j c_j C(x - t, j)`.
pub fn eval_binomial_basis(coeffs: &[Rational], t: i64, x: &Rational) -> Rational {
    let shifted = x - int(t);
    coeffs
        .iter()
        .enumerate()
        .map(|(j, c)| c * binom(&shifted, j as u64))
        .sum()
}

type OracleFn = Box<dyn Fn(&Rational) -> Rational + Send + Sync>;

/// A polynomial (given by its values) claimed to be integer-valued.
pub struct IntValuedClaim {
    pub id: &'static str,
    pub reference: &'static str,
    /// Parameter assignment, e.g. `n=3,m=1`.
    pub label: String,
    pub degree: usize,
    /// Also require every value on `[-20, 20]` to be `1 mod 4`.
    pub one_mod_four: bool,
    oracle: OracleFn,
}

impl core::fmt::Debug for IntValuedClaim {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("IntValuedClaim")
            .field("id", &self.id)
            .field("label", &self.label)
            .field("degree", &self.degree)
            .finish()
    }
}

impl IntValuedClaim {
    pub fn new(
        id: &'static str,
        reference: &'static str,
        label: String,
        degree: usize,
        oracle: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
    ) -> Self {
        IntValuedClaim {
            id,
            reference,
            label,
            degree,
            one_mod_four: false,
            oracle: Box::new(oracle),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        (self.oracle)(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntValuedReport {
    pub id: String,
    pub label: String,
    pub pass: bool,
    pub coefficients: Vec<Rational>,
    pub detail: Option<String>,
}

pub fn check_int_valued(claim: &IntValuedClaim) -> Result<IntValuedReport> {
    let d = claim.degree;
    let values: Vec<Rational> = (0..=d as i64).map(|x| claim.eval(&int(x))).collect();
    let coefficients = binomial_basis(&values);
    // one extra point guards against an understated degree
    let probe = int(d as i64 + 1);
    if eval_binomial_basis(&coefficients, 0, &probe) != claim.eval(&probe) {
        return Err(Error::NonPolynomial { degree: d });
    }
    let mut detail = None;
    let mut pass = coefficients.iter().all(|c| c.is_integer());
    if !pass {
        detail = Some(String::from("non-integral binomial-basis coefficient"));
    }
    if pass && claim.one_mod_four {
        for x in -20..=20i64 {
            let v = eval_binomial_basis(&coefficients, 0, &int(x));
            let r = v.numer().mod_floor(&BigInt::from(4));
            if !v.is_integer() || !r.is_one() {
                pass = false;
                detail = Some(format!("value at x = {x} is {v}, not 1 mod 4"));
                break;
            }
        }
    }
    Ok(IntValuedReport {
        id: String::from(claim.id),
        label: claim.label.clone(),
        pass,
        coefficients,
        detail,
    })
}

/// Parameter limits for generating integer-valuedness claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntValuedLimits {
    pub n_max: u64,
    pub l_max: u64,
    pub m_max: u64,
    /// Upper end for the single-number integrality family (`n >= 2`).
    pub n_max_scalar: u64,
}

impl Default for IntValuedLimits {
    fn default() -> Self {
        IntValuedLimits {
            n_max: 12,
            l_max: 2,
            m_max: 2,
            n_max_scalar: 40,
        }
    }
}

fn d_table(x: &Rational, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|k| seq_eval(&SeqFamily::LowerD, k as u64, x))
        .collect()
}

fn s_table(x: &Rational, len: usize) -> Vec<Rational> {
    (0..len).map(|k| s_poly(k as i64, x)).collect()
}

fn t_table(x: &Rational, len: usize) -> Vec<Rational> {
    (0..len)
        .map(|k| seq_eval(&SeqFamily::LowerT, k as u64, x))
        .collect()
}

fn qpow(q: &Rational, e: u64) -> Rational {
    num_traits::pow::pow(q.clone(), e as usize)
}

/// Integer-valuedness claims for the conjectural polynomial families.
/// `n_max` for the `s_k` families is capped at 10.
pub fn int_valued_claims(limits: IntValuedLimits) -> Vec<IntValuedClaim> {
    let mut out = Vec::new();
    let n_max = limits.n_max as i64;
    let n_max_s = n_max.min(10);
    for n in 1..=n_max {
        out.push(IntValuedClaim::new(
            "conj6.1i",
            "Conjecture 6.1(i)",
            format!("n={n}"),
            2 * n as usize,
            move |x| {
                let d = d_table(x, n as usize);
                let s: Rational = (0..n)
                    .map(|k| int(2 * k + 1) * &d[k as usize] * &d[k as usize])
                    .sum();
                x * (x + one()) * s / int(2 * n * n)
            },
        ));
    }
    for eps in [1i64, -1] {
        for l in 1..=limits.l_max as i64 {
            for m in 1..=limits.m_max as i64 {
                for n in 1..=n_max {
                    out.push(IntValuedClaim::new(
                        "conj6.1ii",
                        "Conjecture 6.1(ii)",
                        format!("eps={eps},l={l},m={m},n={n}"),
                        (2 * m * (n - 1)) as usize,
                        move |x| {
                            let d = d_table(x, n as usize);
                            let s: Rational = (0..n)
                                .map(|k| {
                                    qpow(&int(eps), k as u64)
                                        * qpow(&int(2 * k + 1), (2 * l - 1) as u64)
                                        * qpow(&d[k as usize], (2 * m) as u64)
                                })
                                .sum();
                            s / int(n)
                        },
                    ));
                }
            }
        }
    }
    for n in 2..=limits.n_max_scalar as i64 {
        out.push(IntValuedClaim::new(
            "conj6.4c",
            "Conjecture 6.4, 3^(3n-4)/n sum",
            format!("n={n}"),
            0,
            move |_| {
                let x = rat(-1, 3);
                let d = d_table(&x, n as usize);
                let s: Rational = (0..n)
                    .map(|k| int(4 * k + 1) * b(&x, k) * &d[k as usize])
                    .sum();
                qpow(&int(3), (3 * n - 4) as u64) * s / int(n)
            },
        ));
    }
    s_family_claims(&mut out, n_max_s, limits);
    for n in 1..=n_max {
        let mut c = IntValuedClaim::new(
            "conj6.14ii",
            "Conjecture 6.14(ii)",
            format!("n={n}"),
            4 * (n as usize - 1),
            move |x| {
                let t = t_table(x, n as usize);
                let s: Rational = (0..n)
                    .map(|k| int(8 * k + 5) * &t[k as usize] * &t[k as usize])
                    .sum();
                s / int(n)
            },
        );
        c.one_mod_four = true;
        out.push(c);
    }
    out
}

fn s_family_claims(out: &mut Vec<IntValuedClaim>, n_max: i64, limits: IntValuedLimits) {
    let r = "Conjecture 6.12";
    for eps in [1i64, -1] {
        for l in 1..=limits.l_max as i64 {
            for m in 1..=limits.m_max as i64 {
                for n in 1..=n_max {
                    out.push(IntValuedClaim::new(
                        "conj6.12a",
                        r,
                        format!("eps={eps},l={l},m={m},n={n}"),
                        (4 * m * (n - 1)) as usize,
                        move |x| {
                            let s = s_table(x, n as usize);
                            let acc: Rational = (0..n)
                                .map(|k| {
                                    qpow(&int(eps), k as u64)
                                        * qpow(&int(2 * k + 1), (2 * l - 1) as u64)
                                        * qpow(&s[k as usize], (2 * m) as u64)
                                })
                                .sum();
                            acc / int(n)
                        },
                    ));
                }
            }
        }
        for m in 1..=limits.m_max as i64 {
            for n in 1..=n_max {
                out.push(IntValuedClaim::new(
                    "conj6.12b",
                    r,
                    format!("eps={eps},m={m},n={n}"),
                    (4 * (n - 1)) as usize,
                    move |x| {
                        let acc: Rational = (0..n)
                            .map(|k| {
                                let inner: Rational = (0..=k)
                                    .map(|j| {
                                        bi(k, j)
                                            * ax_k(x, j)
                                            * qpow(&int(eps), j as u64)
                                            * qpow(&int(2 * j + 1), m as u64)
                                    })
                                    .sum();
                                &inner * &inner
                            })
                            .sum();
                        acc / int(n)
                    },
                ));
            }
        }
    }
    for n in 1..=n_max {
        let deg = (4 * (n - 1)) as usize;
        out.push(IntValuedClaim::new(
            "conj6.12c",
            r,
            format!("n={n}"),
            deg,
            move |x| {
                let s = s_table(x, n as usize);
                let acc: Rational = (0..n)
                    .map(|k| int(2 * k + 1) * &s[k as usize] * &s[k as usize])
                    .sum();
                acc / int(n * n)
            },
        ));
        out.push(IntValuedClaim::new(
            "conj6.12d",
            r,
            format!("n={n}"),
            deg,
            move |x| {
                let s = s_table(x, n as usize);
                let acc: Rational = (0..n)
                    .map(|k| qpow(&int(2 * k + 1), 3) * &s[k as usize] * &s[k as usize])
                    .sum();
                int(3) * acc / int(n * n)
            },
        ));
        out.push(IntValuedClaim::new(
            "conj6.12e",
            r,
            format!("n={n}"),
            deg,
            move |x| {
                let s = s_table(x, n as usize);
                let inner = dual_inner(x, n);
                let acc: Rational = (0..n)
                    .map(|k| int(2 * k + 1) * &s[k as usize] * &inner[k as usize])
                    .sum();
                acc / int(n * n)
            },
        ));
        out.push(IntValuedClaim::new(
            "conj6.12f",
            r,
            format!("n={n}"),
            deg,
            move |x| {
                let inner = dual_inner(x, n);
                let acc: Rational = (0..n)
                    .map(|k| int(2 * k + 1) * &inner[k as usize] * &inner[k as usize])
                    .sum();
                acc / int(n * n)
            },
        ));
        for m in 1..=limits.m_max as i64 {
            let deg = (4 * m * (n - 1)) as usize;
            out.push(IntValuedClaim::new(
                "conj6.12g",
                r,
                format!("m={m},n={n}"),
                deg,
                move |x| {
                    let acc: Rational = (0..n)
                        .map(|k| {
                            let inner: Rational = (0..=k)
                                .map(|j| bi(k, j) * a_k(x, j) * pm(j) / int(j + 1))
                                .sum();
                            int(k + 1) * qpow(&inner, (2 * m) as u64)
                        })
                        .sum();
                    int(2) * acc / int(n * (n + 1))
                },
            ));
            out.push(IntValuedClaim::new(
                "conj6.12h",
                r,
                format!("m={m},n={n}"),
                deg,
                move |x| {
                    let acc: Rational = (0..n)
                        .map(|k| {
                            let inner: Rational =
                                (0..n).map(|j| a_k(x, j) * bi(k + j + 1, j + 1)).sum();
                            int(k + 1) * qpow(&inner, (2 * m) as u64)
                        })
                        .sum();
                    int(2) * acc / int(n * (n + 1))
                },
            ));
        }
    }
}

/// `sum_{j<n} C(x,j) C(-1-x,j) C(k+j,j)` for each `k < n`.
fn dual_inner(x: &Rational, n: i64) -> Vec<Rational> {
    let a: Vec<Rational> = (0..n).map(|j| a_k(x, j)).collect();
    (0..n)
        .map(|k| (0..n).map(|j| &a[j as usize] * bi(k + j, j)).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(id: &str) -> IdentityStatement {
        identity_catalog().into_iter().find(|s| s.id == id).unwrap()
    }

    #[test]
    fn grid_shape_at_n2() {
        let s = find("eq1.17");
        let r = verify_identity(&s, 2).unwrap();
        assert!(r.pass);
        // n = 2 grid is 5 x 3
        assert_eq!(s.degrees(&[2]), vec![4, 2]);
        assert_eq!(r.tuples_checked, 3);
    }

    #[test]
    fn empty_sum_at_n0() {
        let s = find("eq1.16");
        for d in 0..4 {
            for x in [int(0), rat(3, 2), int(-5)] {
                assert_eq!(
                    s.eval_lhs(&[0, d], core::slice::from_ref(&x)).unwrap(),
                    int(1)
                );
                assert_eq!(s.eval_rhs(&[0, d], &[x]).unwrap(), int(1));
            }
        }
    }

    #[test]
    fn first_case_is_x_minus_y() {
        let s = find("eq2.8");
        let (x, y) = (rat(7, 3), rat(-2, 5));
        let expect = &x - &y;
        assert_eq!(s.eval_lhs(&[1], &[x.clone(), y.clone()]).unwrap(), expect);
        assert_eq!(s.eval_rhs(&[1], &[x, y]).unwrap(), expect);
    }

    #[test]
    fn s_value_against_brute_force() {
        let s = find("eq1.19");
        // s_3(2) = 1 + 3*2*3 + 3*1*6 = 37
        assert_eq!(s.eval_lhs(&[5, 3, 2], &[]).unwrap(), int(37));
        // brute force of the right side
        let x = int(2);
        let mut rhs = Rational::zero();
        for k in 0..5 {
            rhs += binom(&x, k) * binom(&int(-3), k) * binom(&int(3 + k as i64), k);
        }
        assert_eq!(rhs, int(37));
        assert_eq!(s.eval_rhs(&[5, 3, 2], &[]).unwrap(), int(37));
    }

    #[test]
    fn u_base_values() {
        let x = rat(5, 7);
        assert_eq!(u_lhs(0, &x), int(1));
        assert_eq!(u_rhs(0, &x), int(1));
        let u1 = int(2) * &x * (&x + one());
        assert_eq!(u_lhs(1, &x), u1);
        assert_eq!(u_rhs(1, &x), u1);
        let r = verify_u_recurrence(5);
        assert!(r.pass, "{:?}", r.failures);
        assert!(r.base_cases);
    }

    #[test]
    fn binomial_basis_examples() {
        let tri: Vec<Rational> = (0..3).map(|x| int(x * (x - 1) / 2)).collect();
        assert_eq!(binomial_basis(&tri), [0, 0, 1].map(int));
        assert_eq!(
            binomial_basis(&[int(0), rat(1, 2)]),
            vec![int(0), rat(1, 2)]
        );
        assert_eq!(
            binomial_basis(&[int(0), int(1), int(4)]),
            [0, 1, 2].map(int)
        );
    }

    #[test]
    fn int_valued_examples() {
        let claims = int_valued_claims(IntValuedLimits {
            n_max: 2,
            l_max: 1,
            m_max: 1,
            n_max_scalar: 2,
        });
        let c61 = claims
            .iter()
            .find(|c| c.id == "conj6.1i" && c.label == "n=2")
            .unwrap();
        // (2/8)(d_0(1)^2 + 3 d_1(1)^2) = 7
        assert_eq!(c61.eval(&int(1)), int(7));
        let c61n1 = claims
            .iter()
            .find(|c| c.id == "conj6.1i" && c.label == "n=1")
            .unwrap();
        let r = check_int_valued(c61n1).unwrap();
        assert!(r.pass);
        // x(x+1)/2 = C(x+1, 2) = C(x,1) + C(x,2)
        assert_eq!(r.coefficients, [0, 1, 1].map(int));
        let t = claims
            .iter()
            .find(|c| c.id == "conj6.14ii" && c.label == "n=1")
            .unwrap();
        assert_eq!(t.eval(&rat(-3, 2)), int(5));
        assert!(check_int_valued(t).unwrap().pass);
    }

    #[test]
    fn understated_degree_is_rejected() {
        let c = IntValuedClaim::new("test", "", String::from("x^3"), 2, |x| x * x * x);
        assert_eq!(
            check_int_valued(&c),
            Err(Error::NonPolynomial { degree: 2 })
        );
        let half = IntValuedClaim::new("test", "", String::from("x/2"), 1, |x| x / int(2));
        let r = check_int_valued(&half).unwrap();
        assert!(!r.pass);
        assert_eq!(r.coefficients, vec![int(0), rat(1, 2)]);
    }

    #[test]
    fn mutation_is_rejected() {
        let s = find("eq1.17").mutated(rat(1, 1000), vec![1, 0, 1]);
        let r = verify_identity(&s, 3).unwrap();
        assert!(!r.pass);
        assert!(r.counterexample.is_some());
    }

    #[test]
    fn pole_on_grid_reported() {
        let s = IdentityStatement::new(
            "pole",
            "",
            "",
            &["n"],
            &["x"],
            |_| vec![vec![0]],
            |_| vec![1],
            |_, v| qdiv(&one(), &v[0]),
            |_, v| qdiv(&one(), &v[0]),
        );
        assert!(matches!(verify_identity(&s, 0), Err(Error::PoleOnGrid(_))));
        let shifted = s.with_pole_offset(1);
        assert!(verify_identity(&shifted, 0).unwrap().pass);
    }
}
