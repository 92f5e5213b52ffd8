//! `wittrep`: JSON front end for building, checking and classifying representations.
//!
//! Exit codes: 0 ok, 1 a mathematical check failed, 2 bad input or violated precondition.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;
use wittrep::cocycle::{central_charge_zero_check, pullback_coefficient};
use wittrep::coeff::{Coeff, Ring};
use wittrep::diffop::DiffOp;
use wittrep::env::{casimir_element, kernel_check, surjectivity_witness, surjectivity_witness_r0, WitnessTarget};
use wittrep::error::Error;
use wittrep::group::{
    act_on_triple, classify_witt_over_powerseries, conjugate_rep, normal_form_s0, normal_form_s1, NormalFormS0,
    SemilinearElem, WittLineForm,
};
use wittrep::laurent::LaurentTrunc;
use wittrep::lie::Algebra;
use wittrep::lpoly::LaurentPoly;
use wittrep::par::Strategy;
use wittrep::parse::{render_coeff, render_op, Session, VarName};
use wittrep::ratfunc::RatFunc;
use wittrep::reps::{
    build_with_algebra, casimir_value, classify, verify_brackets, Classification, Family, PairStatus, Representation,
    Triple,
};
use wittrep::scalar::Scalar;
use wittrep::weyl::{apply_weyl_auto, build_hat_rep, classify_hat, fourier_transport, WeylAuto, WeylKind};

type Result<T> = std::result::Result<T, Error>;

#[derive(Parser, Debug)]
#[command(name = "wittrep", version, about = "Differential-operator representations of sl2 and the Witt algebras")]
struct Cli {
    /// Absolute precision for truncated series.
    #[arg(long, global = true, default_value_t = 24)]
    prec: i64,
    /// Maximum number of distinct formal parameters.
    #[arg(long, global = true, default_value_t = 8)]
    max_params: usize,
    /// Batch input for classification, one representation per line as "i: EXPR; j: EXPR".
    #[arg(long, global = true)]
    file: Option<String>,
    /// Run bracket sweeps sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    /// Compact single-line JSON.
    #[arg(long, global = true)]
    compact: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Representation workflows.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Kernel check and surjectivity witnesses in the enveloping algebra.
    Env(EnvArgs),
    /// Pullback of the Gelfand-Fuchs cocycle.
    Cocycle(CocycleArgs),
    /// Weyl-algebra automorphisms and the transported families.
    #[command(subcommand)]
    Weyl(WeylCmd),
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    Build(SourceArgs),
    Verify(SourceArgs),
    Classify(SourceArgs),
    Casimir(SourceArgs),
    /// Conjugates by (phi, s); works over C((z)).
    Conjugate(ConjugateArgs),
    /// Canonical form over C[[z]].
    Normalize(SourceArgs),
}

#[derive(Subcommand, Debug)]
enum WeylCmd {
    /// Applies z -> -q^2 dq, d -> -1/q.
    Transport {
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Applies Phi (d -> d + alpha z^n) or PhiPrime (z -> z + alpha d^n).
    Auto {
        #[arg(long, value_enum)]
        kind: AutoKind,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        op: String,
    },
    /// Transported first-order family with h = z.
    Hat {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0..3")]
        range: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum AutoKind {
    Phi,
    PhiPrime,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq)]
enum RingArg {
    #[default]
    Ratfunc,
    Series,
    Laurent,
}

impl RingArg {
    fn name(self) -> &'static str {
        match self {
            RingArg::Ratfunc => "ratfunc",
            RingArg::Series => "series",
            RingArg::Laurent => "laurent",
        }
    }
}

/// A representation given by a triple, by explicit images, or by a triple with overridden images.
#[derive(Args, Debug, Clone, Default)]
struct SourceArgs {
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Index window "lo..hi", intersected with the algebra's support.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    ring: RingArg,
    /// Explicit image "i=EXPR"; repeatable; overrides the built image.
    #[arg(long = "image", allow_hyphen_values = true)]
    images: Vec<String>,
    /// sl2, witt>, witt<, witt; inferred from the indices when absent.
    #[arg(long)]
    algebra: Option<String>,
}

#[derive(Args, Debug)]
struct ConjugateArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Substitution phi, with valuation 1.
    #[arg(long, allow_hyphen_values = true)]
    phi: String,
    /// Unit s of C[[z]].
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    s: String,
}

#[derive(Args, Debug)]
struct EnvArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Powers z^k to produce, as "lo..hi".
    #[arg(long, allow_hyphen_values = true, default_value = "0..4")]
    powers: String,
    /// Also produce the derivation d.
    #[arg(long)]
    derivation: bool,
}

#[derive(Args, Debug)]
struct CocycleArgs {
    #[arg(long, allow_hyphen_values = true)]
    h: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, value_enum, default_value_t = RingArg::Laurent)]
    ring: RingArg,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Status {
    Ok,
    Fail,
}

struct Outcome {
    status: Status,
    payload: Value,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { status: Status::Ok, payload }
    }

    fn check(pass: bool, payload: Value) -> Self {
        Outcome { status: if pass { Status::Ok } else { Status::Fail }, payload }
    }
}

struct Ctx {
    session: Session,
    prec: i64,
    strategy: Strategy,
    file: Option<String>,
}

macro_rules! by_ring {
    ($ring:expr, $f:ident ( $($a:expr),* )) => {
        match $ring {
            RingArg::Ratfunc => $f::<RatFunc>($($a),*),
            RingArg::Series => $f::<LaurentTrunc>($($a),*),
            RingArg::Laurent => $f::<LaurentPoly>($($a),*),
        }
    };
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn parse_range(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse { pos: 0, msg: format!("expected a range lo..hi, found {text:?}") };
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = a.trim().parse().map_err(|_| bad())?;
    let hi: i64 = b.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

impl Ctx {
    /// Series inputs are known modulo z^prec; adding O(z^prec) caps a finer tail and is a no-op otherwise.
    fn truncate<C: Coeff>(&self, x: C) -> Result<C> {
        if C::RING == Ring::LaurentSeries {
            Ok(x.add(&C::big_o(self.prec)?))
        } else {
            Ok(x)
        }
    }

    /// Exact inputs go through C(z) so that --prec governs expansions; O-terms parse directly.
    fn coeff<C: Coeff>(&mut self, text: &str) -> Result<C> {
        let x = if text.contains("O(") {
            self.session.parse_coeff::<C>(text)?
        } else {
            let f: RatFunc = self.session.parse_coeff(text)?;
            C::from_ratfunc(&f, self.prec)?
        };
        self.truncate(x)
    }

    fn op<C: Coeff>(&mut self, text: &str) -> Result<DiffOp<C>> {
        if text.contains("O(") {
            return self.session.parse_op::<C>(text);
        }
        let p: DiffOp<RatFunc> = self.session.parse_op(text)?;
        let coeffs = p
            .coeffs()
            .iter()
            .map(|f| self.truncate(C::from_ratfunc(f, self.prec)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(DiffOp::from_coeffs(coeffs))
    }

    fn scalar(&mut self, text: &str) -> Result<Scalar> {
        self.session.parse_scalar(text)
    }
}

fn family_of(a: &SourceArgs) -> Result<Option<Family>> {
    a.family
        .as_deref()
        .map(|f| Family::from_name(f).ok_or_else(|| precondition(format!("unknown family {f:?}; expected S0, S1, S2, R0, R1 or R2"))))
        .transpose()
}

fn triple_of<C: Coeff>(ctx: &mut Ctx, a: &SourceArgs, family: Family) -> Result<Triple<C>> {
    let need = |v: &Option<String>, flag: &str| {
        v.clone().ok_or_else(|| precondition(format!("--{flag} is required with --family")))
    };
    let h = ctx.coeff(&need(&a.h, "h")?)?;
    let b = ctx.coeff(&need(&a.b, "b")?)?;
    let c = ctx.scalar(&need(&a.c, "c")?)?;
    let mut t = Triple::new(h, b, c);
    match (&a.lambda, family.needs_lambda()) {
        (Some(l), true) => {
            t = t.with_lambda(ctx.scalar(l)?);
            t.check_branch()?;
        }
        (None, true) => return Err(precondition(format!("family {family} needs --lambda (c or -c-1)"))),
        (Some(_), false) => return Err(precondition(format!("family {family} takes no --lambda"))),
        (None, false) => {}
    }
    Ok(t)
}

fn infer_algebra(indices: &[i64]) -> Algebra {
    let lo = indices.iter().copied().min().unwrap_or(0);
    let hi = indices.iter().copied().max().unwrap_or(0);
    match (lo >= -1, hi <= 1) {
        (true, true) => Algebra::Sl2,
        (true, false) => Algebra::WittPos,
        (false, true) => Algebra::WittNeg,
        (false, false) => Algebra::Witt,
    }
}

fn parse_images<C: Coeff>(ctx: &mut Ctx, specs: &[String]) -> Result<BTreeMap<i64, DiffOp<C>>> {
    let mut out = BTreeMap::new();
    for spec in specs {
        let (i, expr) = spec
            .split_once('=')
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected i=EXPR, found {spec:?}") })?;
        let i: i64 = i.trim().parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad index in {spec:?}") })?;
        out.insert(i, ctx.op(expr)?);
    }
    Ok(out)
}

struct Source<C: Coeff> {
    rep: Representation<C>,
    family: Option<Family>,
    triple: Option<Triple<C>>,
}

fn source<C: Coeff>(ctx: &mut Ctx, a: &SourceArgs, default_range: (i64, i64)) -> Result<Source<C>> {
    let family = family_of(a)?;
    let overrides = parse_images::<C>(ctx, &a.images)?;
    let explicit_algebra = a
        .algebra
        .as_deref()
        .map(|s| Algebra::from_name(s).ok_or_else(|| precondition(format!("unknown algebra {s:?}"))))
        .transpose()?;
    let Some(family) = family else {
        if overrides.is_empty() {
            return Err(precondition("give --family with --h --b --c, or at least one --image"));
        }
        let idx: Vec<i64> = overrides.keys().copied().collect();
        let algebra = explicit_algebra.unwrap_or_else(|| infer_algebra(&idx));
        let rep = Representation::from_images(algebra, overrides)?;
        return Ok(Source { rep, family: None, triple: None });
    };
    let t = triple_of::<C>(ctx, a, family)?;
    let (lo, hi) = a.range.as_deref().map(parse_range).transpose()?.unwrap_or(default_range);
    let algebra = explicit_algebra.unwrap_or_else(|| family.default_algebra());
    let max = lo.abs().max(hi.abs());
    let built = build_with_algebra(family, algebra, &t, max)?;
    let mut rep = built.restrict(algebra, |i| (lo..=hi).contains(&i));
    for (i, p) in overrides {
        algebra.check(i)?;
        rep.images.insert(i, p);
    }
    Ok(Source { rep, family: Some(family), triple: Some(t) })
}

fn images_json<C: Coeff>(rep: &Representation<C>, var: VarName) -> Value {
    let list: Vec<Value> = rep
        .images
        .iter()
        .map(|(i, p)| {
            let order = p.order();
            let symbol = order.map(|n| render_coeff(&p.coeff(n), var));
            json!({ "i": i, "op": render_op(p, var), "order": order, "symbol": symbol })
        })
        .collect();
    Value::Array(list)
}

fn triple_json<C: Coeff>(t: &Triple<C>) -> Value {
    json!({
        "h": render_coeff(&t.h, VarName::Z),
        "b": render_coeff(&t.b, VarName::Z),
        "c": t.c.to_string(),
        "lambda": t.lambda.as_ref().map(Scalar::to_string),
    })
}

fn rep_build<C: Coeff>(ctx: &mut Ctx, a: &SourceArgs) -> Result<Outcome> {
    if a.family.is_none() {
        return Err(precondition("rep build needs --family"));
    }
    let src = source::<C>(ctx, a, (-1, 1))?;
    let t = src.triple.as_ref().expect("family implies triple");
    Ok(Outcome::ok(json!({
        "family": src.family.map(|f| f.to_string()),
        "algebra": src.rep.algebra.to_string(),
        "ring": a.ring.name(),
        "triple": triple_json(t),
        "images": images_json(&src.rep, VarName::Z),
    })))
}

fn rep_verify<C: Coeff>(ctx: &mut Ctx, a: &SourceArgs) -> Result<Outcome> {
    let src = source::<C>(ctx, a, (-1, 1))?;
    let max = src.rep.indices().iter().map(|i| i.abs()).max().unwrap_or(0);
    let report = verify_brackets(&src.rep, max, ctx.strategy);
    let mut pairs: Vec<Value> = report
        .pairs
        .iter()
        .map(|p| {
            let mut m = Map::new();
            m.insert("i".into(), json!(p.i));
            m.insert("j".into(), json!(p.j));
            m.insert("status".into(), json!(p.status));
            if p.status != PairStatus::Pass {
                m.insert("residual".into(), json!(render_op(&p.residual, VarName::Z)));
            }
            Value::Object(m)
        })
        .collect();
    pairs.sort_by_key(|v| (v["i"].as_i64(), v["j"].as_i64()));
    let failures = report.failures().count();
    Ok(Outcome::check(
        report.all_pass(),
        json!({
            "algebra": src.rep.algebra.to_string(),
            "indices": src.rep.indices(),
            "checked": report.pairs.len(),
            "failures": failures,
            "pairs": pairs,
        }),
    ))
}

fn classification_json<C: Coeff>(cl: &Classification<C>) -> Value {
    json!({
        "family": cl.family.to_string(),
        "h": render_coeff(&cl.h, VarName::Z),
        "b": render_coeff(&cl.b, VarName::Z),
        "c": cl.c.as_ref().map(Scalar::to_string),
        "c_candidates": cl.c_candidates.iter().map(Scalar::to_string).collect::<Vec<_>>(),
        "kappa": cl.kappa.to_string(),
        "semi_level": cl.semi_level.as_ref().map(Scalar::to_string),
        "lambda": cl.lambda.as_ref().map(Scalar::to_string),
        "orders": cl.orders.iter().map(|(i, n)| (i.to_string(), json!(n))).collect::<Map<_, _>>(),
        "diagnostics": cl.diagnostics,
    })
}

/// Errors that mean "the input is not of the claimed kind" rather than "the input is malformed".
fn is_check_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::OrderViolation(_)
            | Error::SymbolRelationFailure(_)
            | Error::NoCanonicalForm(_)
            | Error::ConstraintViolated(_)
            | Error::NotProportional(_)
            | Error::NonScalarCasimir
            | Error::RootNotInField(_)
    )
}

fn error_json(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("kind".into(), json!(e.kind()));
    m.insert("message".into(), json!(e.to_string()));
    if let Error::Parse { pos, .. } = e {
        m.insert("pos".into(), json!(pos));
    }
    Value::Object(m)
}

fn rep_classify<C: Coeff>(ctx: &mut Ctx, a: &SourceArgs) -> Result<Outcome> {
    if let Some(path) = ctx.file.clone() {
        return classify_batch::<C>(ctx, &path, a);
    }
    let src = source::<C>(ctx, a, (-1, 1))?;
    match classify(&src.rep) {
        Ok(cl) => Ok(Outcome::ok(classification_json(&cl))),
        Err(e) if is_check_failure(&e) => Ok(Outcome::check(false, json!({ "rejected": error_json(&e) }))),
        Err(e) => Err(e),
    }
}

fn parse_line_images(line: &str) -> Vec<String> {
    line.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s.split_once(':') {
            Some((i, e)) => format!("{}={}", i.trim(), e.trim()),
            None => s.to_string(),
        })
        .collect()
}

fn classify_batch<C: Coeff>(ctx: &mut Ctx, path: &str, a: &SourceArgs) -> Result<Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| precondition(format!("cannot read {path}: {e}")))?;
    let mut results = Vec::new();
    let mut all_ok = true;
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let args = SourceArgs { images: parse_line_images(line), algebra: a.algebra.clone(), ..SourceArgs::default() };
        let res = source::<C>(ctx, &args, (-1, 1)).and_then(|s| classify(&s.rep));
        let entry = match res {
            Ok(cl) => json!({ "line": n + 1, "status": "ok", "classification": classification_json(&cl) }),
            Err(e) => {
                all_ok = false;
                let status = if is_check_failure(&e) { "fail" } else { "error" };
                json!({ "line": n + 1, "status": status, "error": error_json(&e) })
            }
        };
        results.push(entry);
    }
    Ok(Outcome::check(all_ok, json!({ "file": path, "results": results })))
}

fn rep_casimir<C: Coeff>(ctx: &mut Ctx, a: &SourceArgs) -> Result<Outcome> {
    let src = source::<C>(ctx, a, (-1, 1))?;
    let value = casimir_value(&src.rep)?;
    let c = match &src.triple {
        Some(t) => Some(t.c.clone()),
        None => classify(&src.rep).ok().and_then(|cl| cl.triple()).map(|t| t.c),
    };
    let two_c1 = c.as_ref().map(|c| &(c * &Scalar::from_int(2)) + &Scalar::one());
    let matches = two_c1.as_ref().map(|s| (s * s) == value);
    let casimir = match (&two_c1, matches) {
        (Some(s), Some(true)) if s.as_gauss().is_none() => format!("({s})^2"),
        _ => value.to_string(),
    };
    Ok(Outcome::ok(json!({
        "casimir": casimir,
        "expanded": value.to_string(),
        "equals_square_of_2c_plus_1": matches,
    })))
}

fn rep_conjugate(ctx: &mut Ctx, a: &ConjugateArgs) -> Result<Outcome> {
    if a.source.ring != RingArg::Series && a.source.ring != RingArg::default() {
        return Err(precondition("conjugation acts over C((z)); use --ring series"));
    }
    let src = source::<LaurentTrunc>(ctx, &a.source, (-1, 1))?;
    let phi: LaurentTrunc = ctx.coeff(&a.phi)?;
    let s: LaurentTrunc = ctx.coeff(&a.s)?;
    let g = SemilinearElem::new(phi.clone(), s.clone())?;
    let out = conjugate_rep(&g, &src.rep)?;
    let mut payload = json!({
        "element": { "phi": render_coeff(&phi, VarName::Z), "s": render_coeff(&s, VarName::Z) },
        "images": images_json(&out, VarName::Z),
    });
    let mut pass = true;
    if let (Some(family), Some(t)) = (src.family, &src.triple) {
        let moved = act_on_triple(&g, t)?;
        let max = out.indices().iter().map(|i| i.abs()).max().unwrap_or(0);
        let rebuilt = build_with_algebra(family, out.algebra, &moved, max)?;
        for (i, p) in &out.images {
            if let Some(q) = rebuilt.images.get(i) {
                pass &= p.equals_checked(q)?;
            }
        }
        payload["triple"] = triple_json(&moved);
        payload["matches_transformed_triple"] = json!(pass);
    }
    Ok(Outcome::check(pass, payload))
}

fn rep_normalize(ctx: &mut Ctx, a: &SourceArgs) -> Result<Outcome> {
    if a.ring == RingArg::Laurent {
        return Err(precondition("normal forms live over C[[z]]; use --ring series"));
    }
    let mut src = source::<LaurentTrunc>(ctx, a, (-1, 2))?;
    if src.rep.algebra == Algebra::Witt {
        src.rep = src.rep.restrict(Algebra::WittPos, |i| i >= -1);
    }
    let result = if src.rep.algebra == Algebra::WittPos && src.rep.images.contains_key(&2) {
        classify_witt_over_powerseries(&src.rep).map(|form| match form {
            WittLineForm::R1 { a, c } => json!({ "form": "R1", "a": a.to_string(), "c": c.to_string() }),
            WittLineForm::R0Pole { b0, lambda, kappa } => json!({
                "form": "R0_pole", "b0": b0.to_string(), "lambda": lambda.to_string(), "kappa": kappa.to_string()
            }),
            WittLineForm::R0Regular { a, lambda, kappa } => json!({
                "form": "R0_regular", "a": a.to_string(), "lambda": lambda.to_string(), "kappa": kappa.to_string()
            }),
        })
    } else {
        let family = classify(&src.rep.restrict_sl2()?)?.family;
        match family {
            Family::S1 => normal_form_s1(&src.rep).map(|nf| {
                json!({
                    "form": "S1",
                    "chevalley": nf.theta,
                    "shift": nf.shift.to_string(),
                    "element": {
                        "phi": render_coeff(&nf.element.phi, VarName::Z),
                        "s": render_coeff(&nf.element.s, VarName::Z),
                    },
                    "c": nf.c.to_string(),
                    "canonical": triple_json(&nf.canonical_triple()),
                })
            }),
            Family::S0 => normal_form_s0(&src.rep).map(|nf| match nf {
                NormalFormS0::Case1 => json!({ "form": "S0", "case": 1, "h": "z^-2", "b": "1/4", "c": "-1/4" }),
                NormalFormS0::Case2 { b, kappa } => {
                    json!({ "form": "S0", "case": 2, "h": "z^-1", "b": b.to_string(), "kappa": kappa.to_string() })
                }
                NormalFormS0::Case3 { a, kappa, c_candidates } => json!({
                    "form": "S0", "case": 3, "a": a.to_string(), "kappa": kappa.to_string(),
                    "c_candidates": c_candidates.iter().map(Scalar::to_string).collect::<Vec<_>>(),
                }),
            }),
            other => Err(Error::NoCanonicalForm(format!("no normal form over C[[z]] implemented for {other}"))),
        }
    };
    match result {
        Ok(v) => Ok(Outcome::ok(v)),
        Err(e) if is_check_failure(&e) => Ok(Outcome::check(false, json!({ "rejected": error_json(&e) }))),
        Err(e) => Err(e),
    }
}

fn env_cmd<C: Coeff>(ctx: &mut Ctx, a: &EnvArgs) -> Result<Outcome> {
    let (lo, hi) = parse_range(&a.powers)?;
    let mut args = a.source.clone();
    if args.family.is_none() {
        args.family = Some("R1".into());
    }
    let family = family_of(&args)?.expect("set above");
    if args.range.is_none() {
        let reach = lo.abs().max(hi.abs()) + 2;
        args.range = Some(if family == Family::R0 { format!("-1..{reach}") } else { format!("-{reach}..{reach}") });
    }
    let src = source::<C>(ctx, &args, (-1, 1))?;
    let t = src.triple.expect("family implies triple");
    let kernel = kernel_check(&src.rep, &t.c)?;
    let mut witnesses = Vec::new();
    for k in lo..=hi {
        let w = if family == Family::R0 {
            surjectivity_witness_r0(&src.rep, &t, k)?
        } else {
            surjectivity_witness(&src.rep, &t, WitnessTarget::ZPow(k))?
        };
        witnesses.push(json!({ "target": format!("z^{k}"), "element": w.to_string() }));
    }
    if a.derivation {
        let w = surjectivity_witness(&src.rep, &t, WitnessTarget::D)?;
        witnesses.push(json!({ "target": "d", "element": w.to_string() }));
    }
    Ok(Outcome::check(
        kernel,
        json!({
            "family": family.to_string(),
            "casimir_element": casimir_element().to_string(),
            "kernel_contains_casimir_shift": kernel,
            "witnesses": witnesses,
        }),
    ))
}

fn cocycle_cmd<C: Coeff>(ctx: &mut Ctx, a: &CocycleArgs) -> Result<Outcome> {
    let args = SourceArgs {
        family: Some("R1".into()),
        h: Some(a.h.clone()),
        b: Some(a.b.clone()),
        c: Some(a.c.clone()),
        range: Some("-4..4".into()),
        ring: a.ring,
        ..SourceArgs::default()
    };
    let src = source::<C>(ctx, &args, (-4, 4))?;
    let t = src.triple.expect("family implies triple");
    let r = pullback_coefficient(&src.rep, &t)?;
    let central = central_charge_zero_check(&src.rep)?;
    let table: Vec<Value> = r
        .table
        .values
        .iter()
        .filter(|((i, j), v)| i < j && !v.is_zero())
        .map(|((i, j), v)| json!({ "i": i, "j": j, "value": v.to_string() }))
        .collect();
    Ok(Outcome::check(
        central,
        json!({
            "coefficient": r.coefficient.to_string(),
            "casimir_form": r.casimir_form.to_string(),
            "printed_form": r.printed_form.to_string(),
            "coboundary": r.coboundary.to_string(),
            "valuation": r.valuation,
            "central_charge_zero": central,
            "table": table,
        }),
    ))
}

fn weyl_cmd(ctx: &mut Ctx, w: &WeylCmd) -> Result<Outcome> {
    match w {
        WeylCmd::Transport { op } => {
            let p: DiffOp<LaurentPoly> = ctx.session.parse_op(op)?;
            let out = fourier_transport(&p)?;
            Ok(Outcome::ok(json!({ "input": render_op(&p, VarName::Z), "output": render_op(&out, VarName::Q) })))
        }
        WeylCmd::Auto { kind, n, alpha, op } => {
            let kind = match kind {
                AutoKind::Phi => WeylKind::Phi,
                AutoKind::PhiPrime => WeylKind::PhiPrime,
            };
            let alpha = ctx.scalar(alpha)?;
            let p: DiffOp<LaurentPoly> = ctx.session.parse_op(op)?;
            let auto = WeylAuto { kind, n: *n, alpha };
            let out = apply_weyl_auto(&auto, &p)?;
            Ok(Outcome::ok(json!({ "input": render_op(&p, VarName::Z), "output": render_op(&out, VarName::Z) })))
        }
        WeylCmd::Hat { b, c, range } => {
            let (lo, hi) = parse_range(range)?;
            let b: LaurentPoly = ctx.coeff(b)?;
            let c = ctx.scalar(c)?;
            let rep = build_hat_rep(&b, &c, lo, hi)?;
            let max = lo.abs().max(hi.abs());
            let report = verify_brackets(&rep, max, ctx.strategy);
            let classification = if rep.images.contains_key(&0) {
                match classify_hat(&rep) {
                    Ok(cl) => json!(classification_json(&cl)),
                    Err(e) => json!({ "unavailable": error_json(&e) }),
                }
            } else {
                Value::Null
            };
            Ok(Outcome::check(
                report.all_pass(),
                json!({
                    "images": images_json(&rep, VarName::Q),
                    "brackets_pass": report.all_pass(),
                    "classification": classification,
                }),
            ))
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let mut ctx = Ctx {
        session: Session::new(cli.max_params),
        prec: cli.prec,
        strategy: if cli.sequential { Strategy::Sequential } else { Strategy::Parallel },
        file: cli.file.clone(),
    };
    if cli.prec < 1 {
        return Err(precondition("--prec must be positive"));
    }
    match &cli.command {
        Command::Rep(cmd) => match cmd {
            RepCmd::Build(a) => by_ring!(a.ring, rep_build(&mut ctx, a)),
            RepCmd::Verify(a) => by_ring!(a.ring, rep_verify(&mut ctx, a)),
            RepCmd::Classify(a) => by_ring!(a.ring, rep_classify(&mut ctx, a)),
            RepCmd::Casimir(a) => by_ring!(a.ring, rep_casimir(&mut ctx, a)),
            RepCmd::Conjugate(a) => rep_conjugate(&mut ctx, a),
            RepCmd::Normalize(a) => rep_normalize(&mut ctx, a),
        },
        Command::Env(a) => by_ring!(a.source.ring, env_cmd(&mut ctx, a)),
        Command::Cocycle(a) => by_ring!(a.ring, cocycle_cmd(&mut ctx, a)),
        Command::Weyl(w) => weyl_cmd(&mut ctx, w),
    }
}

fn emit(report: &Value, compact: bool) {
    let text = if compact { serde_json::to_string(report) } else { serde_json::to_string_pretty(report) };
    println!("{}", text.expect("JSON values always serialize"));
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let echo: Vec<&str> = argv.iter().skip(1).map(String::as_str).collect();
    let compact = echo.contains(&"--compact");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            emit(
                &json!({
                    "command": echo,
                    "status": "error",
                    "payload": { "error": { "kind": "usage", "message": first } },
                    "timing": { "elapsed_ms": 0.0 },
                }),
                compact,
            );
            return ExitCode::from(2);
        }
    };

    std::panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(&cli)));
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let (status, payload, code) = match result {
        Ok(Ok(out)) => match out.status {
            Status::Ok => ("ok", out.payload, 0),
            Status::Fail => ("fail", out.payload, 1),
        },
        Ok(Err(e)) => ("error", json!({ "error": error_json(&e) }), 2),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal error".into());
            ("error", json!({ "error": { "kind": "internal", "message": msg } }), 2)
        }
    };
    emit(
        &json!({
            "command": echo,
            "status": status,
            "payload": payload,
            "timing": { "elapsed_ms": (elapsed * 1000.0).round() / 1000.0 },
        }),
        cli.compact,
    );
    ExitCode::from(code)
}
