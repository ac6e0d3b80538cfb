use congruence_core::exact::{int, is_p_integral, least_residue, legendre, rat, reduce_mod_pk};
use congruence_core::identity::{binomial_basis, eval_binomial_basis};
use congruence_core::sequences::{
    binom, binom_nat, dual, euler_number, seq_eval, seq_table_in, IntSeq, SeqCache, SeqFamily,
};
use congruence_core::{Domain, ModPk, Rational};
use proptest::prelude::*;

const PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 101, 1009];

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..40).prop_map(|(n, d)| rat(n, d))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..12, 1i64..7).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #[test]
    fn reduction_is_a_ring_morphism(a in rational(), b in rational(), pi in 0usize..8, e in 1u32..4) {
        let p = PRIMES[pi];
        prop_assume!(is_p_integral(&a, p) && is_p_integral(&b, p));
        let ra = reduce_mod_pk(&a, p, e).unwrap();
        let rb = reduce_mod_pk(&b, p, e).unwrap();
        prop_assert_eq!(reduce_mod_pk(&(&a + &b), p, e).unwrap(), ra.add(&rb).unwrap());
        prop_assert_eq!(reduce_mod_pk(&(&a * &b), p, e).unwrap(), ra.mul(&rb).unwrap());
        // equal fractions written differently
        let f = (p + 1) as i64;
        let scaled = Rational::new_raw(a.numer() * f, a.denom() * f);
        prop_assert_eq!(reduce_mod_pk(&scaled, p, e).unwrap(), ra);
    }

    #[test]
    fn legendre_is_multiplicative(a in -500i64..500, b in -500i64..500, pi in 0usize..8) {
        let p = PRIMES[pi];
        prop_assert_eq!(legendre(a, p) * legendre(b, p), legendre(a * b, p));
    }

    #[test]
    fn least_residue_is_first_digit(x in rational(), pi in 0usize..8) {
        let p = PRIMES[pi];
        prop_assume!(is_p_integral(&x, p));
        prop_assert_eq!(least_residue(&x, p).unwrap(), reduce_mod_pk(&x, p, 1).unwrap().value());
    }

    #[test]
    fn chu_vandermonde(x in small_rational(), y in small_rational(), n in 0u64..9) {
        let lhs: Rational = (0..=n).map(|k| binom(&x, k) * binom(&y, n - k)).sum();
        prop_assert_eq!(lhs, binom(&(&x + &y), n));
    }

    #[test]
    fn delannoy_at_y_one(x in small_rational(), n in 0u64..9) {
        let v = seq_eval(&SeqFamily::D(int(1)), n, &x);
        prop_assert_eq!(v, binom(&(&x + int(n as i64)), n));
    }

    #[test]
    fn lower_d_reflection(x in small_rational(), n in 0u64..9) {
        let a = seq_eval(&SeqFamily::LowerD, n, &x);
        let b = seq_eval(&SeqFamily::LowerD, n, &(-int(1) - &x));
        let sign = if n % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(a, sign * b);
    }

    #[test]
    fn lower_s_forms(x in small_rational(), n in 0u64..9) {
        let a = seq_eval(&SeqFamily::LowerS, n, &x);
        let alt: Rational = (0..=n)
            .map(|k| Rational::from_integer(binom_nat(n, k))
                * binom(&x, k)
                * binom(&(&x + int(k as i64)), k))
            .sum();
        prop_assert_eq!(&a, &alt);
        prop_assert_eq!(a, seq_eval(&SeqFamily::LowerS, n, &(-int(1) - &x)));
    }

    #[test]
    fn table_matches_definition(x in small_rational(), pi in 0usize..5, which in 0usize..4) {
        let p = PRIMES[pi];
        prop_assume!(is_p_integral(&x, p));
        let fam = [SeqFamily::LowerD, SeqFamily::LowerS, SeqFamily::LowerT, SeqFamily::D(rat(1, 2))][which].clone();
        let dom = ModPk::new(p, 3).unwrap();
        let table = seq_table_in(&dom, &fam, &x, p as usize).unwrap();
        for (n, v) in table.iter().enumerate() {
            let exact = seq_eval(&fam, n as u64, &x);
            prop_assert_eq!(*v, dom.lift(&exact).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn dual_is_an_involution(a in prop::collection::vec(rational(), 8)) {
        prop_assert_eq!(dual(&dual(&a)), a);
    }

    #[test]
    fn s_and_d_symmetry(x in small_rational(), n in 0u64..8) {
        let mx = -int(1) - &x;
        prop_assert_eq!(seq_eval(&SeqFamily::LowerS, n, &x), seq_eval(&SeqFamily::LowerS, n, &mx));
        let t = seq_eval(&SeqFamily::LowerT, n, &x);
        prop_assert_eq!(t, seq_eval(&SeqFamily::LowerT, n, &mx));
    }

    #[test]
    fn binomial_basis_round_trip(vals in prop::collection::vec(-50i64..50, 1..11), t in -3i64..3) {
        let values: Vec<Rational> = vals.iter().map(|&v| int(v)).collect();
        let coeffs = binomial_basis(&values);
        for (i, v) in values.iter().enumerate() {
            prop_assert_eq!(&eval_binomial_basis(&coeffs, t, &int(t + i as i64)), v);
        }
    }
}

#[test]
fn dual_examples() {
    let ones = vec![int(1); 4];
    assert_eq!(dual(&ones), vec![int(1), int(0), int(0), int(0)]);
    let a: Vec<Rational> = (0..4u64)
        .map(|k| {
            if k % 2 == 0 {
                binom(&int(4), k)
            } else {
                -binom(&int(4), k)
            }
        })
        .collect();
    assert_eq!(dual(&a), vec![int(1), int(5), int(15), int(35)]);
}

#[test]
fn cache_matches_cold_values() {
    let mut warm = SeqCache::new();
    for n in [3u64, 10, 7, 20] {
        warm.euler(n);
        warm.bernoulli(n);
        warm.harmonic(n, 2);
        warm.int_seq(IntSeq::Binom6k, n);
    }
    let mut cold = SeqCache::new();
    for n in 0..20u64 {
        assert_eq!(warm.euler(n).clone(), cold.euler(n).clone());
        assert_eq!(
            warm.bernoulli(n).clone(),
            congruence_core::sequences::bernoulli(n, None)
        );
        assert_eq!(
            warm.harmonic(n, 1).clone(),
            congruence_core::sequences::harmonic(n, 1)
        );
        assert_eq!(
            warm.int_seq(IntSeq::Binom6k, n).clone(),
            IntSeq::Binom6k.value(n)
        );
    }
    let restored = SeqCache::restore(warm.snapshot());
    assert_eq!(restored.snapshot(), warm.snapshot());
    let mut merged = SeqCache::new();
    merged.merge(warm.clone());
    assert_eq!(merged.snapshot(), warm.snapshot());
}

#[test]
fn euler_numbers() {
    let want = [1i64, 0, -1, 0, 5, 0, -61, 0, 1385];
    for (n, w) in want.iter().enumerate() {
        assert_eq!(euler_number(n as u64), (*w).into());
    }
}
