//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A clause listed with a `gap` note is a statement the library computes to be false. It is
//! still evaluated as stated, reported as FAIL, and the run errors if it ever starts to pass.

mod common;

use common::*;
use rand::Rng;
use std::process::ExitCode;
use std::time::Instant;
use wittrep::cocycle::{central_charge_zero_check, pullback_coefficient};
use wittrep::coeff::Coeff;
use wittrep::diffop::DiffOp;
use wittrep::env::{env_image, kernel_check, surjectivity_witness, WitnessTarget};
use wittrep::error::Error;
use wittrep::group::{
    classify_witt_over_powerseries, conjugate_rep, normal_form_s0, normal_form_s1, witt_line_obstructions,
    NormalFormS0, WittLineForm,
};
use wittrep::laurent::LaurentTrunc;
use wittrep::lie::Algebra;
use wittrep::lpoly::LaurentPoly;
use wittrep::par::Strategy;
use wittrep::ratfunc::RatFunc;
use wittrep::reps::{
    build, casimir_value, centralizer_check, classify, companion_extension, expected_order, expected_symbol,
    verify_brackets, Family, Representation, Triple,
};
use wittrep::scalar::Scalar;
use wittrep::weyl::{apply_weyl_auto, build_hat_rep, fourier_transport, WeylAuto, WeylKind};

type Outcome = Result<(), String>;

struct Clause {
    name: String,
    outcome: Outcome,
    gap: Option<&'static str>,
}

#[derive(Default)]
struct Criterion {
    clauses: Vec<Clause>,
}

impl Criterion {
    fn check(&mut self, name: impl Into<String>, outcome: Outcome) {
        self.clauses.push(Clause { name: name.into(), outcome, gap: None });
    }

    fn check_gap(&mut self, name: impl Into<String>, outcome: Outcome, gap: &'static str) {
        self.clauses.push(Clause { name: name.into(), outcome, gap: Some(gap) });
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn sc(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn frac(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

fn z<C: Coeff>() -> C {
    C::var()
}

fn zp<C: Coeff>(k: i64) -> C {
    C::z_pow(k).expect("z^k")
}

// 1 ----------------------------------------------------------------------------------------

fn sweep<C: Coeff>(rep: &Representation<C>, label: &str) -> Outcome {
    let report = verify_brackets(rep, 6, Strategy::Parallel);
    let first = report.failures().next().map(|p| format!("{label}: [L_{}, L_{}] {:?}", p.i, p.j, p.status));
    first.map_or(Ok(()), Err)
}

fn bracket_suite(cr: &mut Criterion) {
    const N: usize = 50;
    let c = formal_c();
    let mut r = rng(1);
    let mut run = |name: &str, f: &mut dyn FnMut(&mut rand_chacha::ChaCha8Rng) -> Outcome| {
        let start = Instant::now();
        let out = (0..N).try_for_each(|k| f(&mut r).map_err(|e| format!("triple {k}: {e}")));
        cr.check(format!("{name} x{N} ({:.1}s)", start.elapsed().as_secs_f64()), out);
    };
    run("S1/R1 over C(z)", &mut |r| {
        let t = ratfunc_triple(r, Family::R1, c.clone());
        sweep(&build(Family::R1, &t, 6).map_err(err)?, "R1")?;
        sweep(&build(Family::S1, &t, 1).map_err(err)?, "S1")
    });
    run("S1/R1 over C((z))", &mut |r| {
        let t = series_triple(r, Family::R1, c.clone());
        sweep(&build(Family::R1, &t, 6).map_err(err)?, "R1")?;
        sweep(&build(Family::S1, &t, 1).map_err(err)?, "S1")
    });
    run("S1/R1 over C[z,1/z]", &mut |r| {
        let t = lpoly_triple(r, Family::R1, c.clone());
        sweep(&build(Family::R1, &t, 6).map_err(err)?, "R1")?;
        sweep(&build(Family::S1, &t, 1).map_err(err)?, "S1")
    });
    run("R0 over C(z)", &mut |r| {
        let t = ratfunc_triple(r, Family::R0, c.clone());
        sweep(&build(Family::R0, &t, 6).map_err(err)?, "R0")
    });
    run("R2 over C(z)", &mut |r| {
        let t = ratfunc_triple(r, Family::R2, c.clone());
        sweep(&build(Family::R2, &t, 6).map_err(err)?, "R2")
    });
}

// 2 ----------------------------------------------------------------------------------------

fn casimir(cr: &mut Criterion) {
    let c = formal_c();
    let two_c1 = &(&sc(2) * &c) + &Scalar::one();
    let expect = &two_c1 * &two_c1;
    let mut r = rng(2);
    let mut out = Ok(());
    for fam in [Family::S0, Family::S1, Family::S2, Family::R0, Family::R1, Family::R2] {
        for _ in 0..5 {
            let t = ratfunc_triple(&mut r, fam, c.clone());
            let step = build(fam, &t, 1).and_then(|rep| casimir_value(&rep)).map_err(err).and_then(|v| {
                ensure(v == expect, || format!("{fam} over C(z): casimir {v}"))
            });
            if step.is_err() {
                out = step;
            }
        }
    }
    cr.check("(2c+1)^2 for the six families over C(z)", out);
    let mut out = Ok(());
    for _ in 0..5 {
        let t = series_triple(&mut r, Family::S1, c.clone());
        let step = build(Family::S1, &t, 1).and_then(|rep| casimir_value(&rep)).map_err(err);
        out = out.and(step.and_then(|v| ensure(v == expect, || format!("C((z)): casimir {v}"))));
        let t = lpoly_triple(&mut r, Family::R0, c.clone());
        let step = build(Family::R0, &t, 1).and_then(|rep| casimir_value(&rep)).map_err(err);
        out = out.and(step.and_then(|v| ensure(v == expect, || format!("C[z,1/z]: casimir {v}"))));
    }
    cr.check("(2c+1)^2 over C((z)) and C[z,1/z]", out);
}

// 3 ----------------------------------------------------------------------------------------

fn orders_symbols_of<C: Coeff>(fam: Family, t: &Triple<C>) -> Outcome {
    let rep = build(fam, t, 6).map_err(err)?;
    for (&i, p) in &rep.images {
        let n = expected_order(fam, i);
        ensure(p.order() == Some(n as usize), || format!("{fam} L_{i}: order {:?}, expected {n}", p.order()))?;
        let sym = expected_symbol(fam, &t.h, i).map_err(err)?;
        let diff = p.symbol().expect("non-zero").sub(&sym);
        ensure(diff.is_zero_checked().map_err(err)?, || format!("{fam} L_{i}: symbol mismatch"))?;
    }
    Ok(())
}

fn orders_symbols(cr: &mut Criterion) {
    let c = formal_c();
    let mut r = rng(3);
    let mut out = Ok(());
    for fam in [Family::S0, Family::S1, Family::S2, Family::R0, Family::R1, Family::R2] {
        for _ in 0..5 {
            out = out.and_then(|_| orders_symbols_of(fam, &ratfunc_triple(&mut r, fam, c.clone())));
        }
    }
    cr.check("order sequences and a_i = h^(i+n_i)(-h')^(-n_i) over C(z)", out);
    let mut out = Ok(());
    for _ in 0..5 {
        out = out.and_then(|_| orders_symbols_of(Family::R1, &series_triple(&mut r, Family::R1, c.clone())));
        out = out.and_then(|_| orders_symbols_of(Family::R0, &lpoly_triple(&mut r, Family::R0, c.clone())));
    }
    cr.check("same over C((z)) and C[z,1/z]", out);
}

// 4 ----------------------------------------------------------------------------------------

fn roundtrip_of<C: Coeff>(fam: Family, t: &Triple<C>) -> Outcome {
    let rep = build(fam, t, 2).map_err(err)?;
    let cl = classify(&rep).map_err(err)?;
    ensure(cl.family == fam, || format!("family {} for {fam}", cl.family))?;
    ensure(cl.h.sub(&t.h).is_zero_checked().map_err(err)?, || format!("{fam}: h differs"))?;
    ensure(cl.b.sub(&t.b).is_zero_checked().map_err(err)?, || format!("{fam}: b differs"))?;
    let other = &(-&t.c) - &Scalar::one();
    let mut want = vec![t.c.clone(), other];
    want.dedup();
    let mut got = cl.c_candidates.clone();
    got.sort_by_key(|s| s.to_string());
    want.sort_by_key(|s| s.to_string());
    ensure(got == want, || format!("{fam}: candidates {:?}", cl.c_candidates.iter().map(|s| s.to_string()).collect::<Vec<_>>()))?;
    if fam.sl2_shape() == Family::S1 {
        ensure(cl.c.as_ref() == Some(&t.c), || format!("{fam}: exact c not recovered"))?;
    }
    if fam.needs_lambda() {
        ensure(cl.lambda == t.lambda, || format!("{fam}: lambda not recovered"))?;
    }
    Ok(())
}

fn classification_roundtrip(cr: &mut Criterion) {
    let c = formal_c();
    let mut r = rng(4);
    for fam in [Family::S0, Family::S1, Family::S2, Family::R0, Family::R1, Family::R2] {
        let out = (0..50).try_for_each(|k| {
            roundtrip_of(fam, &ratfunc_triple(&mut r, fam, c.clone())).map_err(|e| format!("triple {k}: {e}"))
        });
        cr.check(format!("{fam} over C(z) x50"), out);
    }
    let out = (0..50).try_for_each(|_| roundtrip_of(Family::R1, &series_triple(&mut r, Family::R1, c.clone())));
    cr.check("R1 over C((z)) x50", out);
    let out = (0..50).try_for_each(|_| roundtrip_of(Family::R0, &lpoly_triple(&mut r, Family::R0, c.clone())));
    cr.check("R0 over C[z,1/z] x50", out);
}

// 5 ----------------------------------------------------------------------------------------

fn s1_input(r: &mut rand_chacha::ChaCha8Rng) -> Triple<LaurentTrunc> {
    let mut h = vec![Scalar::zero(), sc(nonzero_int(r))];
    h.extend((0..3).map(|_| sc(small_int(r))));
    let c = if r.gen_bool(0.5) { formal_c() } else { small_rational(r) };
    // rho(L_-1) = -(1/h')d + (b - c)/h preserves C[[z]] only when b(0) = c
    let mut b = vec![c.clone()];
    b.extend((0..3).map(|_| sc(small_int(r))));
    Triple::new(LaurentTrunc::from_terms(0, h, SERIES_PREC), LaurentTrunc::from_terms(0, b, SERIES_PREC), c)
}

fn normal_forms(cr: &mut Criterion) {
    let mut r = rng(5);
    let out = (0..20).try_for_each(|k| -> Outcome {
        let t = s1_input(&mut r);
        let rep = build(Family::S1, &t, 1).map_err(err)?;
        let nf = normal_form_s1(&rep).map_err(|e| format!("input {k}: {e}"))?;
        let canon = nf.canonical_triple();
        ensure(canon.h == z() && canon.b == LaurentTrunc::constant(t.c.clone()) && canon.c == t.c, || {
            format!("input {k}: canonical triple is not (z, c, c)")
        })?;
        // re-conjugate the input into the canonical images
        let canon_rep = build(Family::S1, &canon, 1).map_err(err)?;
        let shifted = wittrep::group::shift_rep(&rep, &nf.shift).map_err(err)?;
        let image = conjugate_rep(&nf.element, &shifted).map_err(err)?;
        for i in -1..=1 {
            let diff = image.image(i).map_err(err)?.sub(canon_rep.image(i).map_err(err)?);
            ensure(diff.is_zero_checked().map_err(err)?, || format!("input {k}: L_{i} not canonical"))?;
            let prec = diff.coeffs().iter().map(|f| f.prec()).min().unwrap_or(i64::MAX);
            ensure(prec >= SERIES_PREC - 2, || format!("input {k}: L_{i} checked only to z^{prec}"))?;
        }
        Ok(())
    });
    cr.check("normal_form_s1 on 20 inputs with nu(h) = 1", out);

    let c = formal_c();
    let ser = |f: RatFunc| series_of(&f);
    let case1 = Triple::new(ser(RatFunc::z_pow(-2)), LaurentTrunc::constant(frac(1, 4)), frac(-1, 4));
    let out = build(Family::S0, &case1, 1).and_then(|rep| normal_form_s0(&rep)).map_err(err).and_then(|nf| {
        ensure(nf == NormalFormS0::Case1, || format!("{nf:?}"))
    });
    cr.check("S0 case nu(h) = -2: (z^-2, 1/4, -1/4)", out);

    let kappa = &c * &(&c + &Scalar::one());
    let mut out = Ok(());
    for b in [-&c, &c + &Scalar::one()] {
        let t = Triple::new(ser(RatFunc::z_pow(-1)), LaurentTrunc::constant(b.clone()), c.clone());
        out = out.and(build(Family::S0, &t, 1).and_then(|rep| normal_form_s0(&rep)).map_err(err).and_then(|nf| {
            ensure(nf == NormalFormS0::Case2 { b: b.clone(), kappa: kappa.clone() }, || format!("{nf:?}"))
        }));
    }
    cr.check("S0 case nu(h) = -1: (z^-1, b, c), b in {-c, c+1}", out);

    let a = sc(2);
    let h = RatFunc::new(wittrep::upoly::UPoly::one(), wittrep::upoly::UPoly::from_coeffs(vec![a.clone(), Scalar::one()]))
        .expect("1/(a+z)");
    let t = Triple::new(ser(h), LaurentTrunc::zero(), c.clone());
    let out = build(Family::S0, &t, 1).and_then(|rep| normal_form_s0(&rep)).map_err(err).and_then(|nf| match nf {
        NormalFormS0::Case3 { a: got, kappa: k, c_candidates } => {
            ensure(got == a && k == kappa && c_candidates.contains(&c), || "Case3 data differ".into())
        }
        other => Err(format!("{other:?}")),
    });
    cr.check("S0 case nu(h) = 0: ((a+z)^-1, 0, c)", out);
}

// 6 ----------------------------------------------------------------------------------------

fn witt_rep(h: LaurentTrunc, b: Scalar, c: Scalar, lambda: Scalar) -> Result<Representation<LaurentTrunc>, Error> {
    build(Family::R0, &Triple::new(h, LaurentTrunc::constant(b), c).with_lambda(lambda), 6)
}

fn witt_line(cr: &mut Criterion) {
    let c = formal_c();
    let one = Scalar::one();
    let zinv = zp::<LaurentTrunc>(-1);
    let a = sc(3);
    let regular = LaurentTrunc::from_ratfunc(
        &RatFunc::new(wittrep::upoly::UPoly::one(), wittrep::upoly::UPoly::from_coeffs(vec![a.clone(), one.clone()]))
            .expect("1/(z+a)"),
        SERIES_PREC,
    )
    .expect("unit");
    let cases: Vec<(&str, LaurentTrunc, Scalar, Scalar, Scalar)> = vec![
        ("(z^-1, 1, 0), lambda = -1", zinv.clone(), one.clone(), Scalar::zero(), sc(-1)),
        ("(z^-1, 1/2, -1/2), lambda = -1/2", zinv.clone(), frac(1, 2), frac(-1, 2), frac(-1, 2)),
        ("(z^-1, 0, 0), lambda = 0", zinv.clone(), Scalar::zero(), Scalar::zero(), Scalar::zero()),
        ("(z^-1, c+1, c), lambda = c", zinv.clone(), &c + &one, c.clone(), c.clone()),
        ("(z^-1, -c, c), lambda = -c-1", zinv.clone(), -&c, c.clone(), &(-&c) - &one),
        ("((z+a)^-1, 0, c), lambda = c", regular.clone(), Scalar::zero(), c.clone(), c.clone()),
        ("((z+a)^-1, 0, c), lambda = -c-1", regular.clone(), Scalar::zero(), c.clone(), &(-&c) - &one),
    ];
    for (name, h, b, cc, lam) in cases {
        let out = witt_rep(h.clone(), b.clone(), cc.clone(), lam.clone()).map_err(err).and_then(|rep| {
            match classify_witt_over_powerseries(&rep).map_err(err)? {
                // at c(c+1) = 0 both branches give the same images, so compare images
                WittLineForm::R0Pole { lambda, .. } | WittLineForm::R0Regular { lambda, .. } => {
                    let same = lambda == lam || witt_rep(h, b, cc, lambda.clone()).map_err(err)? == rep;
                    ensure(same, || format!("lambda {lambda}"))
                }
                other => Err(format!("{other:?}")),
            }
        });
        cr.check(format!("accepts {name}"), out);
    }
    let r1 = Triple::new(LaurentTrunc::constant(a.clone()).add(&z()), LaurentTrunc::zero(), c.clone());
    let out = build(Family::R1, &r1, 6)
        .map(|rep| rep.restrict(Algebra::WittPos, |i| i >= -1))
        .and_then(|rep| classify_witt_over_powerseries(&rep))
        .map_err(err)
        .and_then(|f| ensure(f == WittLineForm::R1 { a: a.clone(), c: c.clone() }, || format!("{f:?}")));
    cr.check("accepts R1 (a+z, 0, c)", out);

    let mut out = Ok(());
    for lam in [frac(-1, 4), frac(-3, 4)] {
        let step = witt_rep(zp(-2), frac(1, 4), frac(-1, 4), lam.clone()).map_err(err).and_then(|rep| {
            match classify_witt_over_powerseries(&rep) {
                Err(Error::NoCanonicalForm(m)) => {
                    ensure(m.contains("rho(L_2)") && m.contains("(1/8)*z^-1*d^3"), || format!("message: {m}"))
                }
                other => Err(format!("lambda = {lam}: {other:?}")),
            }
        });
        out = out.and(step);
    }
    cr.check("rejects (z^-2, 1/4, -1/4) at the (1/8)z^-1 d^3 term", out);

    let out = witt_rep(zinv.clone(), -&c, c.clone(), c.clone()).map_err(err).and_then(|rep| {
        ensure(matches!(classify_witt_over_powerseries(&rep), Err(Error::NoCanonicalForm(_))), || {
            "(z^-1, -c, c) with lambda = c accepted for generic c".into()
        })
    });
    cr.check("rejects (z^-1, -c, c), lambda = c, generic c", out);

    let b = Scalar::param("b");
    let two_c3 = &(&(&sc(2) * &(&c * &c)) + &(&sc(3) * &c)) + &one;
    let poly = &(&sc(2) * &c) * &two_c3;
    let mut out = Ok(());
    let mut obs = |bb: Scalar, lam: Scalar, want: Scalar, label: &str| {
        out = out.clone().and(witt_line_obstructions(&bb, &lam).map_err(err).and_then(|(aa, _)| {
            ensure(aa == want, || format!("A{label} = {aa}"))
        }));
    };
    obs(-&c, c.clone(), poly.clone(), "(-c,c)");
    obs(-&c, &(-&c) - &one, Scalar::zero(), "(-c,-c-1)");
    obs(&c + &one, c.clone(), Scalar::zero(), "(c+1,c)");
    obs(&c + &one, &(-&c) - &one, -&poly, "(c+1,-c-1)");
    let lam = Scalar::param("lambda");
    let want_b = &sc(3) * &(&(&(&b * &b) - &b) - &(&(&lam * &lam) + &lam));
    out = out.and(witt_line_obstructions(&b, &lam).map_err(err).and_then(|(_, bb)| {
        ensure(bb == want_b, || format!("B = {bb}"))
    }));
    cr.check("obstruction polynomials A and B", out);
}

// 7 ----------------------------------------------------------------------------------------

fn enveloping(cr: &mut Criterion) {
    let c = formal_c();
    let mut r = rng(7);
    let mut out = Ok(());
    for fam in [Family::S0, Family::S1, Family::S2, Family::R0, Family::R1, Family::R2] {
        for _ in 0..3 {
            let t = ratfunc_triple(&mut r, fam, c.clone());
            out = out.and(build(fam, &t, 1).and_then(|rep| kernel_check(&rep, &c)).map_err(err).and_then(|ok| {
                ensure(ok, || format!("{fam}: C - (2c+1)^2 does not vanish"))
            }));
        }
    }
    cr.check("kernel_check for every family", out);

    let zl: LaurentPoly = z();
    let mut out = Ok(());
    for _ in 0..3 {
        // b ∈ C[z] with b(0) = c
        let tail = lpoly(&mut r, 1, 3);
        let t = Triple::new(zl.clone(), LaurentPoly::constant(c.clone()).add(&tail), c.clone());
        let rep = build(Family::R1, &t, 12).map_err(err);
        out = out.and(rep.and_then(|rep| {
            let pos = rep.restrict(Algebra::WittPos, |i| i >= -1);
            for k in 0..=8 {
                let w = surjectivity_witness(&pos, &t, WitnessTarget::ZPow(k)).map_err(err)?;
                let img = env_image(&w, &pos).map_err(err)?;
                ensure(img == DiffOp::mult(zp(k)), || format!("z^{k} witness expands to {img}"))?;
                ensure(w.terms().all(|(word, _)| word.iter().all(|&i| i >= -1)), || "word outside Witt_>".into())?;
            }
            let w = surjectivity_witness(&pos, &t, WitnessTarget::D).map_err(err)?;
            let img = env_image(&w, &pos).map_err(err)?;
            ensure(img == DiffOp::d(), || format!("d witness expands to {img}"))
        }));
    }
    cr.check("witnesses for z^k (k <= 8) and d", out);

    let mut out = Ok(());
    for cv in [sc(-2), sc(-1), frac(-1, 2), Scalar::zero(), frac(1, 3), sc(1), Scalar::i()] {
        let t = Triple::new(zl.clone(), LaurentPoly::constant(cv.clone()).add(&zl), cv.clone());
        let expect_one = cv.is_zero() || cv == sc(-1);
        let step = build(Family::R1, &t, 6).map_err(err).and_then(|rep| {
            for target in [WitnessTarget::ZPow(2), WitnessTarget::ZPow(5), WitnessTarget::D] {
                let got = surjectivity_witness(&rep, &t, target);
                let fired = matches!(got, Err(Error::CasimirOne));
                ensure(fired == expect_one, || format!("c = {cv}, {target:?}: {got:?}"))?;
                if !expect_one {
                    got.map_err(err)?;
                }
            }
            Ok(())
        });
        out = out.and(step);
    }
    cr.check("CasimirOne exactly at c in {0, -1}", out);
}

// 8 ----------------------------------------------------------------------------------------

fn cocycle(cr: &mut Criterion) {
    let c = formal_c();
    let mut r = rng(8);
    let mut casimir = Ok(());
    let mut printed = Ok(());
    let mut central = Ok(());
    for e in [1, -1] {
        for _ in 0..3 {
            let b = lpoly(&mut r, -2, 2);
            let t = Triple::new(LaurentPoly::monomial(Scalar::one(), e), b, c.clone());
            let rep = match build(Family::R1, &t, 4) {
                Ok(rep) => rep,
                Err(x) => {
                    casimir = Err(err(x));
                    continue;
                }
            };
            match pullback_coefficient(&rep, &t) {
                Ok(rep_) => {
                    casimir = casimir.and(ensure(rep_.coefficient == rep_.casimir_form, || {
                        format!("h = z^{e}: coefficient {}", rep_.coefficient)
                    }));
                    printed = printed.and(ensure(rep_.coefficient == rep_.printed_form, || {
                        format!("h = z^{e}: coefficient {} vs -2(1-6c+6c^2)v(h) = {}", rep_.coefficient, rep_.printed_form)
                    }));
                }
                Err(x) => casimir = Err(err(x)),
            }
            central = central.and(central_charge_zero_check(&rep).map_err(err).and_then(|ok| {
                ensure(ok, || format!("h = z^{e}: [rho(L_2), rho(L_-2)] - 4 rho(L_0) != 0"))
            }));
        }
    }
    cr.check("coefficient = (1-3(2c+1)^2)v(h) for h = z, 1/z", casimir);
    cr.check_gap(
        "coefficient = -2(1-6c+6c^2)v(h) for h = z, 1/z",
        printed,
        "the expansion gives -2(1+6c+6c^2)v(h); the printed form is its image under c -> -c",
    );
    let one = Scalar::one();
    let six = sc(6);
    let p1 = &sc(-2) * &(&(&one - &(&six * &c)) + &(&six * &(&c * &c)));
    let two_c1 = &(&sc(2) * &c) + &one;
    let p2 = &one - &(&sc(3) * &(&two_c1 * &two_c1));
    cr.check_gap(
        "-2(1-6c+6c^2) and 1-3(2c+1)^2 agree as polynomials",
        ensure(p1 == p2, || format!("{p1} != {p2}")),
        "they differ by 24c; only the second matches the computed pullback",
    );
    cr.check("central_charge_zero_check for R1", central);
}

// 9 ----------------------------------------------------------------------------------------

fn lp(terms: &[(i64, Scalar)]) -> LaurentPoly {
    LaurentPoly::from_terms(terms.iter().cloned())
}

fn weyl(cr: &mut Criterion) {
    let c = formal_c();
    let m1 = sc(-1);
    let table = [
        (DiffOp::term(lp(&[(0, m1.clone())]), 1), DiffOp::mult(zp(-1))),
        (
            DiffOp::from_coeffs(vec![lp(&[(0, -&c)]), lp(&[(1, m1.clone())])]),
            DiffOp::from_coeffs(vec![lp(&[(0, &Scalar::one() - &c)]), lp(&[(1, m1.clone())])]),
        ),
        (
            DiffOp::from_coeffs(vec![lp(&[(1, &sc(-2) * &c)]), lp(&[(2, m1.clone())])]),
            DiffOp::from_coeffs(vec![LaurentPoly::zero(), lp(&[(2, &sc(2) * &c)]), lp(&[(3, Scalar::one())])]),
        ),
    ];
    let out = table.iter().try_for_each(|(src, want)| {
        let got = fourier_transport(src).map_err(err)?;
        ensure(&got == want, || format!("{src} -> {got}, expected {want}"))
    });
    cr.check("transport table", out);

    let mut r = rng(9);
    let mut sweep_out = Ok(());
    let mut order_out = Ok(());
    let mut const_out = Ok(());
    for deg in 0..=2i64 {
        for _ in 0..3 {
            let mut b = LaurentPoly::constant(c.clone());
            for e in 1..=deg {
                let k = if e == deg { nonzero_int(&mut r) } else { small_int(&mut r) };
                b = b.add(&LaurentPoly::monomial(sc(k), e));
            }
            let rep = match build_hat_rep(&b, &c, -1, 4) {
                Ok(rep) => rep,
                Err(x) => {
                    sweep_out = Err(err(x));
                    continue;
                }
            };
            let rep_all = verify_brackets(&rep, 4, Strategy::Parallel);
            sweep_out = sweep_out.and(ensure(rep_all.all_pass(), || format!("deg b = {deg}: bracket failure")));
            for i in -1..=4i64 {
                let n = rep.images[&i].order().map(|n| n as i64);
                if deg >= 1 {
                    order_out = order_out.and(ensure(n == Some(deg + i), || format!("deg b = {deg}, L_{i}: order {n:?}")));
                } else {
                    const_out = const_out.and(ensure(n == Some(i + 1), || format!("b = c, L_{i}: order {n:?}")));
                }
            }
        }
    }
    cr.check("hat rep bracket sweep on [-1,4], deg b <= 2, b(0) = c", sweep_out);
    cr.check("order of hat rho(L_i) = deg b + i for deg b in {1,2}", order_out);
    cr.check("constant b: order of hat rho(L_i) = i + 1", const_out);

    let d = Scalar::param("d");
    let beta = &(&Scalar::one() - &d) / &sc(2);
    let t = Triple::new(zp::<LaurentPoly>(-1), LaurentPoly::constant(beta.clone()), -&beta);
    let one = Scalar::one();
    let want = [
        DiffOp::from_coeffs(vec![lp(&[(1, one.clone())]), lp(&[(0, m1.clone())])]),
        DiffOp::from_coeffs(vec![lp(&[(0, beta.clone())]), lp(&[(1, one.clone())]), lp(&[(0, m1.clone())])]),
        DiffOp::from_coeffs(vec![LaurentPoly::zero(), lp(&[(0, &one - &d)]), lp(&[(1, one.clone())]), lp(&[(0, m1)])]),
    ];
    let w = WeylAuto { kind: WeylKind::PhiPrime, n: 1, alpha: sc(-1) };
    let out = build(Family::S0, &t, 1).map_err(err).and_then(|rep| {
        (-1..=1).zip(want.iter()).try_for_each(|(i, e)| {
            let got = apply_weyl_auto(&w, &rep.images[&i]).map_err(err)?;
            ensure(&got == e, || format!("L_{i}: {got}"))
        })
    });
    cr.check("Phi'_{1,-1} example", out);
}

// 10 ---------------------------------------------------------------------------------------

fn centralizer(cr: &mut Criterion) {
    let mut r = rng(10);
    let zl: LaurentPoly = z();
    let out = (0..10).try_for_each(|k| -> Outcome {
        let c = small_rational(&mut r);
        let (fam, t) = if k % 2 == 0 {
            let b = LaurentPoly::constant(c.clone()).add(&lpoly(&mut r, 1, 2));
            (Family::S1, Triple::new(zl.clone(), b, c))
        } else {
            let b = if r.gen_bool(0.5) { -&c } else { &c + &Scalar::one() };
            (Family::S0, Triple::new(zp(-1), LaurentPoly::constant(b), c))
        };
        let rep = build(fam, &t, 1).map_err(err)?;
        let basis = centralizer_check(&rep, 3, 6).map_err(err)?;
        ensure(basis.len() == 1 && basis[0].as_scalar().is_some(), || {
            format!("{fam} triple {k}: centralizer {:?}", basis.iter().map(|b| b.to_string()).collect::<Vec<_>>())
        })
    });
    cr.check("centralizer = constants for 10 families", out);
}

// 11 ---------------------------------------------------------------------------------------

fn companion(cr: &mut Criterion) {
    let c = formal_c();
    let mut r = rng(11);
    let mut generic = Ok(());
    let mut double = Ok(());
    for k in 0..10 {
        let t = ratfunc_triple(&mut r, Family::R0, c.clone());
        let step = build(Family::R0, &t, 2).and_then(|rep| companion_extension(&rep, &t.h, 6)).map_err(err);
        generic = generic.and(step.and_then(|res| {
            ensure(res.roots.len() == 2 && res.roots[0].is_zero() && !res.double_root, || {
                format!("triple {k}: roots {:?}", res.roots.iter().map(|s| s.to_string()).collect::<Vec<_>>())
            })?;
            ensure(res.verified.iter().all(|v| *v), || format!("triple {k}: rebuilt extension fails the sweep"))
        }));
        let half = frac(-1, 2);
        let th = Triple { c: half.clone(), lambda: Some(half), ..t.clone() };
        let step = build(Family::R0, &th, 2).and_then(|rep| companion_extension(&rep, &th.h, 6)).map_err(err);
        double = double.and(step.and_then(|res| {
            ensure(res.double_root && res.roots == vec![Scalar::zero()], || format!("triple {k}: no double root"))
        }));
    }
    cr.check("alpha = 0 plus one further root, rebuilt extension verified to index 6", generic);
    cr.check("double root at c = -1/2", double);
}

// 12 ---------------------------------------------------------------------------------------

fn intermediate(cr: &mut Criterion) {
    let alpha = Scalar::param("alpha");
    let beta = Scalar::param("beta");
    let t = Triple::new(z::<LaurentPoly>(), LaurentPoly::constant(beta.clone()), alpha.clone());
    let out = build(Family::R1, &t, 4).map_err(err).and_then(|rep| {
        for i in -4..=4i64 {
            for n in -4..=4i64 {
                let got = rep.images[&i].apply(&zp(n));
                let coef = &(&(&alpha * &sc(i)) + &beta) - &sc(n);
                let want = LaurentPoly::monomial(coef, n + i);
                ensure(got == want, || format!("L_{i} z^{n} -> {got}"))?;
            }
        }
        Ok(())
    });
    cr.check("rho(L_i) z^n = (alpha i + beta - n) z^(n+i), i, n in [-4,4]", out);
}

type CriterionFn = fn(&mut Criterion);

fn main() -> ExitCode {
    let criteria: [(&str, CriterionFn); 12] = [
        ("bracket suite", bracket_suite),
        ("Casimir value", casimir),
        ("orders and symbols", orders_symbols),
        ("classification round-trip", classification_roundtrip),
        ("normal forms over C[[z]]", normal_forms),
        ("Witt_> over C[[z]]", witt_line),
        ("enveloping algebra", enveloping),
        ("cocycle pullback", cocycle),
        ("Weyl algebra and transport", weyl),
        ("centralizer", centralizer),
        ("companion extension", companion),
        ("intermediate series", intermediate),
    ];
    // ACCEPTANCE_ONLY=1,5 runs a subset
    let only: Option<Vec<usize>> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|v| v.split(',').filter_map(|s| s.trim().parse().ok()).collect());
    let mut broken = false;
    let total = Instant::now();
    for (n, (name, run)) in criteria.iter().enumerate() {
        if only.as_ref().is_some_and(|o| !o.contains(&(n + 1))) {
            continue;
        }
        let mut cr = Criterion::default();
        let start = Instant::now();
        run(&mut cr);
        let pass = cr.clauses.iter().all(|c| c.outcome.is_ok());
        println!(
            "{} {:>2}. {name} ({:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            n + 1,
            start.elapsed().as_secs_f64()
        );
        for cl in &cr.clauses {
            match (&cl.outcome, cl.gap) {
                (Ok(()), None) => println!("       ok    {}", cl.name),
                (Err(e), None) => {
                    broken = true;
                    println!("       FAIL  {}: {e}", cl.name);
                }
                (Err(e), Some(why)) => println!("       FAIL  {}: {e}\n             known gap: {why}", cl.name),
                (Ok(()), Some(why)) => {
                    broken = true;
                    println!("       PASS  {} (recorded as a gap: {why}; update the record)", cl.name);
                }
            }
        }
    }
    println!("total {:.1}s", total.elapsed().as_secs_f64());
    if broken {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
