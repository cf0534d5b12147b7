mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use uqslcat::algebra::{AlgElem, Uq};
use uqslcat::category::{decompose, hom_dim, DecompReport};
use uqslcat::cyclotomic::{euler_phi, CycNum};
use uqslcat::kronecker::{classify, QuiverRep};
use uqslcat::label::Indecomposable;
use uqslcat::modules::{irreducible, QMod, Sign};
use uqslcat::rational::Rat;

fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    let deg = euler_phi(order);
    prop::collection::vec((-6i64..=6, 1i64..=4), deg)
        .prop_map(move |cs| CycNum::from_coeffs(order, cs.into_iter().map(|(n, d)| Rat::new(n, d)).collect()))
}

fn elem(p: u32) -> impl Strategy<Value = AlgElem> {
    let alg = Uq::restricted(p);
    prop::collection::vec((0..alg.dim(), -3i64..=3), 1..5).prop_map(move |ts| {
        let mut x = AlgElem::zero(alg);
        for (i, c) in ts {
            x.add_term([alg.mono(i)], &CycNum::from_int(alg.order, c));
        }
        x
    })
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in cyc(6), b in cyc(6), c in cyc(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_ring_map(a in cyc(10), b in cyc(10), k in prop::sample::select(vec![1i64, 3, 7, 9])) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
    }

    #[test]
    fn cyclotomic_json_round_trip(a in cyc(8)) {
        let s = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(CycNum::from_json(&s).unwrap(), a);
    }

    #[test]
    fn embedding_is_a_ring_map(a in cyc(4), b in cyc(4)) {
        let up = |x: &CycNum| x.embed(8).unwrap();
        prop_assert_eq!(up(&(&a * &b)), &up(&a) * &up(&b));
    }

    #[test]
    fn coproduct_is_multiplicative(x in elem(2), y in elem(2)) {
        prop_assert_eq!(x.mul(&y).coproduct(), x.coproduct().mul(&y.coproduct()));
        prop_assert_eq!(x.mul(&y).antipode(), y.antipode().mul(&x.antipode()));
        prop_assert_eq!(x.mul(&y).counit(), &x.counit() * &y.counit());
    }

    #[test]
    fn algebra_json_round_trip(x in elem(3)) {
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(AlgElem::from_json(&s).unwrap(), x);
    }

    #[test]
    fn tensor_and_dual_are_modules(a in sign(), b in sign(), s in 1u32..=3, t in 1u32..=3) {
        let x = irreducible(3, a, s).unwrap();
        let y = irreducible(3, b, t).unwrap();
        prop_assert!(x.tensor(&y).verify().is_ok());
        prop_assert!(x.dual().verify().is_ok());
        let m = QMod::from_json(&serde_json::to_string(&x.tensor(&y)).unwrap()).unwrap();
        prop_assert_eq!(m.dim(), (s * t) as usize);
    }

    #[test]
    fn schur_lemma(a in sign(), b in sign(), s in 1u32..=3, t in 1u32..=3) {
        let d = hom_dim(&irreducible(3, a, s).unwrap(), &irreducible(3, b, t).unwrap()).unwrap();
        prop_assert_eq!(d, usize::from((a, s) == (b, t)));
    }

    #[test]
    fn label_round_trip(seed in any::<u64>(), p in 2u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_indecomposable(p, &mut rng);
        prop_assert_eq!(Indecomposable::parse(&k.to_string(), p).unwrap(), k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn decomposition_recovers_summands(seed in any::<u64>(), p in 2u32..=3, k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts: Vec<Indecomposable> = (0..k).map(|_| common::random_indecomposable(p, &mut rng)).collect();
        let m = common::scrambled_sum(p, &parts, &mut rng);
        let d = decompose(&m).unwrap();
        prop_assert!(d.verify(&m).unwrap());
        prop_assert_eq!(common::sorted(d.expanded()), common::sorted(parts));
        let report = d.report();
        let back = DecompReport::from_json(&report.to_json(), p).unwrap();
        prop_assert_eq!(back.summands(p).unwrap(), d.summands);
    }

    #[test]
    fn kronecker_classes_are_basis_independent(seed in any::<u64>(), d0 in 0usize..=3, d1 in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = common::random_matrix(6, d1, d0, &[-1, 0, 1], &mut rng);
        let rb = common::random_matrix(6, d1, d0, &[-1, 0, 2], &mut rng);
        let rep = QuiverRep::new(r, rb).unwrap();
        let Ok(d) = classify(&rep) else { return Ok(()) };
        prop_assert!(rep.is_morphism(&d.canonical(6), &d.t0, &d.t1));
        let g0 = common::random_weight_basis(&QMod::new(3, vec![0; d0], zero(d0), zero(d0)), &mut rng);
        let g1 = common::random_weight_basis(&QMod::new(3, vec![0; d1], zero(d1), zero(d1)), &mut rng);
        let moved = rep.transform(&g0, &g1).unwrap();
        prop_assert_eq!(classify(&moved).unwrap().summands, d.summands);
    }
}

fn zero(n: usize) -> uqslcat::linalg::Matrix {
    uqslcat::linalg::Matrix::zeros(6, n, n)
}
