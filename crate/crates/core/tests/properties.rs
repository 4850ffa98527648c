use isorec::arith::{PrimeField, Ring};
use isorec::fp_algebra::{self, FactorizationJson, PolyFp, PolyZ};
use isorec::isobaric::{gfp, glp, IsobaricPolynomial};
use isorec::recurrence::{self, RecurrenceWindow};
use isorec::semilocal::{self, QuotientRing};
use isorec::CorePolynomial;
use num_bigint::BigInt;
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(SMALL_PRIMES.to_vec())
}

fn core_with_unit_last(k_max: usize) -> impl Strategy<Value = Vec<i64>> {
    (1..=k_max).prop_flat_map(|k| {
        (
            prop::collection::vec(-3i64..=3, k - 1),
            prop::sample::select(vec![1i64, -1]),
        )
            .prop_map(|(mut t, last)| {
                t.push(last);
                t
            })
    })
}

fn nonzero_last(k_max: usize, bound: i64) -> impl Strategy<Value = Vec<i64>> {
    (1..=k_max).prop_flat_map(move |k| {
        prop::collection::vec(-bound..=bound, k).prop_filter("t_k != 0", |t| *t.last().unwrap() != 0)
    })
}

fn monic(max_deg: usize) -> impl Strategy<Value = PolyZ> {
    (1..=max_deg).prop_flat_map(|d| {
        prop::collection::vec(-4i64..=4, d).prop_map(|mut c| {
            c.push(1);
            PolyZ::from_i64(&c)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_multiplies_back(p in prime(), coeffs in prop::collection::vec(0u64..13, 1..7), seed in any::<u64>()) {
        let field = PrimeField::new(p).unwrap();
        let mut c = coeffs;
        c.push(1);
        let f = PolyFp::new(field, c.iter().map(|x| x % p).collect());
        let fact = fp_algebra::factor_mod_p_seeded(&f, seed);
        prop_assert_eq!(fact.product(), f.clone());
        for factor in fact.factors() {
            prop_assert!(factor.multiplicity >= 1);
            prop_assert!(fp_algebra::is_irreducible(&factor.poly));
        }
        prop_assert_eq!(fact, fp_algebra::factor_mod_p_seeded(&f, seed.wrapping_add(1)));
    }

    #[test]
    fn resultant_is_multiplicative(f in monic(3), g in monic(3), h in monic(3)) {
        let lhs = fp_algebra::resultant(&f.mul(&g), &h);
        let rhs = fp_algebra::resultant(&f, &h) * fp_algebra::resultant(&g, &h);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn discriminant_detects_repeated_factors(t in nonzero_last(4, 3), p in prime()) {
        let core = CorePolynomial::new(t).unwrap();
        let disc = fp_algebra::discriminant(&core);
        let squarefree = fp_algebra::factor_core(&core, p).unwrap().is_squarefree();
        prop_assert_eq!(disc % BigInt::from(p) != BigInt::from(0), squarefree);
    }

    #[test]
    fn period_algorithms_agree(t in nonzero_last(4, 3), p in prime()) {
        prop_assume!(t.last().unwrap() % p as i64 != 0);
        let core = CorePolynomial::new(t).unwrap();
        let brute = recurrence::period_mod_p_bruteforce(&core, p).unwrap();
        let order = recurrence::period_mod_p_matrix_order(&core, p).unwrap();
        prop_assert!(brute.is_pure());
        prop_assert_eq!(brute.period(), Some(order));
    }

    #[test]
    fn retreat_undoes_advance(t in core_with_unit_last(4), steps in 1usize..30) {
        let core = CorePolynomial::new(t).unwrap();
        let mut w = RecurrenceWindow::gfp_seed(&core, None).unwrap();
        let start = w.state().to_vec();
        for _ in 0..steps {
            w.advance();
        }
        for _ in 0..steps {
            w.retreat().unwrap();
        }
        prop_assert_eq!(w.state(), &start[..]);
    }

    #[test]
    fn standard_matrix_is_multiplicative(
        t in nonzero_last(3, 3),
        p in prime(),
        a in prop::collection::vec(-6i64..6, 3),
        b in prop::collection::vec(-6i64..6, 3),
    ) {
        let core = CorePolynomial::new(t).unwrap();
        let ring = QuotientRing::new(&core, p).unwrap();
        let k = ring.k();
        let x = ring.element(&a[..k]).unwrap();
        let y = ring.element(&b[..k]).unwrap();
        let field = ring.field();
        let lhs = ring.standard_matrix(&ring.mul(&x, &y));
        let rhs = ring.standard_matrix(&x).mul(&field, &ring.standard_matrix(&y));
        prop_assert_eq!(lhs, rhs);
        let tr = ring.trace(&ring.add(&x, &y));
        prop_assert_eq!(tr, field.add(&ring.trace(&x), &ring.trace(&y)));
        prop_assert_eq!(ring.norm(&ring.mul(&x, &y)), field.mul(&ring.norm(&x), &ring.norm(&y)));
    }

    #[test]
    fn primitive_idempotents_are_orthogonal(t in nonzero_last(4, 3), p in prime()) {
        let core = CorePolynomial::new(t).unwrap();
        let ring = QuotientRing::new(&core, p).unwrap();
        let ids = semilocal::primitive_idempotents(&core, p).unwrap();
        let structure = semilocal::decompose(&core, p).unwrap();
        prop_assert_eq!(ids.len(), structure.s());
        let mut sum = ring.zero();
        let mut rank = 0;
        for (i, e) in ids.iter().enumerate() {
            prop_assert_eq!(&ring.mul(e, e), e);
            for f in &ids[i + 1..] {
                prop_assert!(ring.mul(e, f).is_zero());
            }
            sum = ring.add(&sum, e);
            rank += ring.rank(e);
        }
        prop_assert_eq!(sum, ring.one());
        prop_assert_eq!(rank, core.k());
    }

    #[test]
    fn lucas_and_fibonacci_evaluate_to_the_sequences(t in nonzero_last(4, 3), n in 0u64..9) {
        let core = CorePolynomial::new(t.clone()).unwrap();
        let k = core.k();
        let f = recurrence::generate(&core, n as i64, n as i64, None).unwrap();
        prop_assert_eq!(&f[0], &gfp(k, n).evaluate(&t));
        let a = core.companion_in(&isorec::arith::Integers);
        let trace = a.pow(&isorec::arith::Integers, n).trace(&isorec::arith::Integers);
        prop_assert_eq!(trace, glp(k, n).evaluate(&t));
    }

    #[test]
    fn json_round_trips(t in nonzero_last(4, 3), p in prime(), n in 0u64..7) {
        let core = CorePolynomial::new(t).unwrap();
        let text = serde_json::to_string(&core).unwrap();
        prop_assert_eq!(&serde_json::from_str::<CorePolynomial>(&text).unwrap(), &core);
        prop_assert_eq!(&core.to_string().parse::<CorePolynomial>().unwrap(), &core);

        let poly = glp(core.k(), n);
        let text = serde_json::to_string(&poly).unwrap();
        prop_assert_eq!(serde_json::from_str::<IsobaricPolynomial>(&text).unwrap(), poly);

        let fact = fp_algebra::factor_core(&core, p).unwrap();
        let wire: FactorizationJson = serde_json::from_value(fact.to_json()).unwrap();
        let field = PrimeField::new(p).unwrap();
        let mut product = PolyFp::constant(field, 1);
        for f in &wire.factors {
            for _ in 0..f.e {
                product = product.mul(&PolyFp::new(field, f.coeffs.clone()));
            }
        }
        prop_assert_eq!(product, fp_algebra::core_to_poly(&core).reduce(&field));
    }
}
