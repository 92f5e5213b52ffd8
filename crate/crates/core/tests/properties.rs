//! Algebraic laws on random inputs. Each case draws a seed and builds its data from the shared generators.

mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use wittrep::cocycle::{gf_cocycle, pullback_table};
use wittrep::diffop::DiffOp;
use wittrep::group::{act_on_triple, conjugate_rep, SemilinearElem};
use wittrep::laurent::LaurentTrunc;
use wittrep::lie::{vir_cocycle, Algebra};
use wittrep::lpoly::LaurentPoly;
use wittrep::par::Strategy;
use wittrep::parse::{parse_op, render_op, VarName};
use wittrep::ratfunc::RatFunc;
use wittrep::reps::{
    build, build_with_algebra, casimir_value, chevalley_transport, classify, verify_brackets, Family,
};
use wittrep::scalar::Scalar;
use wittrep::weyl::{apply_weyl_auto, fourier_transport, WeylAuto, WeylKind};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn poly_op(r: &mut rand_chacha::ChaCha8Rng, order: usize) -> DiffOp<LaurentPoly> {
    DiffOp::from_coeffs((0..=order).map(|_| lpoly(r, 0, 2)).collect())
}

fn laurent_op(r: &mut rand_chacha::ChaCha8Rng, order: usize) -> DiffOp<LaurentPoly> {
    DiffOp::from_coeffs((0..=order).map(|_| lpoly(r, -2, 2)).collect())
}

fn series_unit(r: &mut rand_chacha::ChaCha8Rng, prec: i64) -> LaurentTrunc {
    let f = LaurentPoly::from_terms([(0, Scalar::from_int(nonzero_int(r))), (1, small_rational(r)), (2, small_rational(r))]);
    LaurentTrunc::from_terms(0, (0..3).map(|e| f.coeff(e)).collect(), prec)
}

fn series_subst(r: &mut rand_chacha::ChaCha8Rng, prec: i64) -> LaurentTrunc {
    let lead = Scalar::from_int(nonzero_int(r));
    LaurentTrunc::from_terms(1, vec![lead, small_rational(r), small_rational(r)], prec)
}

fn series_eq(a: &LaurentTrunc, b: &LaurentTrunc) -> bool {
    a.sub(b).is_zero_checked().expect("enough precision to decide")
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn first_order_family_satisfies_witt_brackets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = ratfunc_triple(&mut r, Family::R1, formal_c());
        let rep = build(Family::R1, &t, 3).unwrap();
        prop_assert!(verify_brackets(&rep, 3, Strategy::default()).all_pass());
    }

    #[test]
    fn half_line_family_satisfies_brackets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = small_rational(&mut r);
        let t = lpoly_triple(&mut r, Family::R0, c);
        let rep = build(Family::R0, &t, 4).unwrap();
        prop_assert!(verify_brackets(&rep, 4, Strategy::default()).all_pass());
    }

    #[test]
    fn strategies_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = lpoly_triple(&mut r, Family::R1, formal_c());
        let mut rep = build(Family::R1, &t, 3).unwrap();
        // corrupt one image so that failures are compared as well
        let k = r.gen_range(-3..=3);
        let bump = rep.images[&k].add(&DiffOp::mult(LaurentPoly::monomial(Scalar::one(), 1)));
        rep.images.insert(k, bump);
        let a = verify_brackets(&rep, 3, Strategy::Sequential);
        let b = verify_brackets(&rep, 3, Strategy::Parallel);
        let key = |rep: &wittrep::reps::BracketReport<LaurentPoly>| {
            rep.pairs.iter().map(|p| (p.i, p.j, p.status.clone(), p.residual.clone())).collect::<Vec<_>>()
        };
        prop_assert_eq!(key(&a), key(&b));
    }

    #[test]
    fn casimir_is_square_of_2c_plus_1(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = small_rational(&mut r);
        let family = [Family::S0, Family::S1, Family::S2][r.gen_range(0..3)];
        let t = ratfunc_triple(&mut r, family, c.clone());
        let rep = build(family, &t, 1).unwrap();
        let s = &(&c * &Scalar::from_int(2)) + &Scalar::one();
        prop_assert_eq!(casimir_value(&rep).unwrap(), &s * &s);
    }

    #[test]
    fn classification_recovers_s1_triple(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = ratfunc_triple(&mut r, Family::S1, formal_c());
        let rep = build(Family::S1, &t, 1).unwrap();
        let cl = classify(&rep).unwrap();
        prop_assert_eq!(cl.family, Family::S1);
        prop_assert_eq!(&cl.h, &t.h);
        prop_assert_eq!(&cl.b, &t.b);
        prop_assert_eq!(cl.c, Some(t.c.clone()));
    }

    #[test]
    fn chevalley_transport_preserves_brackets(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = lpoly_triple(&mut r, Family::R0, formal_c());
        let rep = build(Family::R0, &t, 3).unwrap();
        let moved = chevalley_transport(&rep, Algebra::WittNeg);
        prop_assert!(verify_brackets(&moved, 3, Strategy::default()).all_pass());
        prop_assert_eq!(chevalley_transport(&moved, Algebra::WittPos), rep);
    }

    #[test]
    fn semilinear_action_is_a_left_action(seed in any::<u64>()) {
        let mut r = rng(seed);
        let prec = 10;
        let g1 = SemilinearElem::new(series_subst(&mut r, prec), series_unit(&mut r, prec)).unwrap();
        let g2 = SemilinearElem::new(series_subst(&mut r, prec), series_unit(&mut r, prec)).unwrap();
        let f = series_unit(&mut r, prec);
        let lhs = g1.mul(&g2).unwrap().apply(&f).unwrap();
        let rhs = g1.apply(&g2.apply(&f).unwrap()).unwrap();
        prop_assert!(series_eq(&lhs, &rhs));
        let back = g1.inverse().unwrap().apply(&g1.apply(&f).unwrap()).unwrap();
        prop_assert!(series_eq(&back, &f));
    }

    #[test]
    fn conjugation_matches_action_on_triples(seed in any::<u64>()) {
        let mut r = rng(seed);
        let prec = 12;
        let h = LaurentTrunc::from_terms(1, vec![Scalar::one(), small_rational(&mut r)], prec);
        let b = LaurentTrunc::from_terms(0, vec![formal_c(), small_rational(&mut r)], prec);
        let t = wittrep::reps::Triple::new(h, b, formal_c());
        let g = SemilinearElem::new(series_subst(&mut r, prec), series_unit(&mut r, prec)).unwrap();
        let rep = build(Family::S1, &t, 1).unwrap();
        let lhs = conjugate_rep(&g, &rep).unwrap();
        let rhs = build(Family::S1, &act_on_triple(&g, &t).unwrap(), 1).unwrap();
        for i in -1..=1 {
            prop_assert!(lhs.image(i).unwrap().equals_checked(rhs.image(i).unwrap()).unwrap());
        }
    }

    #[test]
    fn fourier_transport_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (poly_op(&mut r, 2), poly_op(&mut r, 2));
        let lhs = fourier_transport(&p.compose(&q)).unwrap();
        let rhs = fourier_transport(&p).unwrap().compose(&fourier_transport(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weyl_automorphisms_are_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kind = if r.gen_bool(0.5) { WeylKind::Phi } else { WeylKind::PhiPrime };
        let w = WeylAuto { kind, n: r.gen_range(0..=2), alpha: small_rational(&mut r) };
        let (p, q) = (poly_op(&mut r, 2), poly_op(&mut r, 2));
        let lhs = apply_weyl_auto(&w, &p.compose(&q)).unwrap();
        let rhs = apply_weyl_auto(&w, &p).unwrap().compose(&apply_weyl_auto(&w, &q).unwrap());
        prop_assert_eq!(lhs, rhs);
        let inverse = WeylAuto { alpha: -&w.alpha, ..w.clone() };
        prop_assert_eq!(apply_weyl_auto(&inverse, &apply_weyl_auto(&w, &p).unwrap()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn gf_cocycle_is_antisymmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (laurent_op(&mut r, 2), laurent_op(&mut r, 2));
        let a = gf_cocycle(&p, &q).unwrap();
        let b = gf_cocycle(&q, &p).unwrap();
        prop_assert!((&a + &b).is_zero());
    }

    #[test]
    fn gf_cocycle_satisfies_the_cocycle_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q, s) = (laurent_op(&mut r, 1), laurent_op(&mut r, 1), laurent_op(&mut r, 1));
        let sum = &(&gf_cocycle(&p.bracket(&q), &s).unwrap() + &gf_cocycle(&q.bracket(&s), &p).unwrap())
            + &gf_cocycle(&s.bracket(&p), &q).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn virasoro_cocycle_identity(i in -8i64..=8, j in -8i64..=8) {
        let k = -i - j;
        prop_assume!(k.abs() <= 8);
        let term = |a: i64, b: i64, c: i64| &Scalar::from_int(a - b) * &vir_cocycle(a + b, c);
        let sum = &(&term(i, j, k) + &term(j, k, i)) + &term(k, i, j);
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn render_then_parse_is_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut p = laurent_op(&mut r, 3);
        if r.gen_bool(0.5) {
            p = p.scale(&formal_c());
        }
        let text = render_op(&p, VarName::Z);
        prop_assert_eq!(parse_op::<LaurentPoly>(&text).unwrap(), p.clone());
        let as_ratfunc: DiffOp<RatFunc> = parse_op(&text).unwrap();
        prop_assert_eq!(render_op(&as_ratfunc, VarName::Z), text);
    }

    #[test]
    fn rational_coefficients_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = DiffOp::from_coeffs(vec![ratfunc(&mut r, 2), ratfunc(&mut r, 2)]);
        let text = render_op(&p, VarName::Z);
        prop_assert_eq!(parse_op::<RatFunc>(&text).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn pullback_table_is_antisymmetric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = small_rational(&mut r);
        let t = lpoly_triple(&mut r, Family::R1, c);
        let rep = build_with_algebra(Family::R1, Algebra::Witt, &t, 3).unwrap();
        prop_assert!(pullback_table(&rep, 3).unwrap().is_antisymmetric());
    }
}
