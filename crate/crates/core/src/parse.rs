//! Text front end for scalars, coefficients and operators, and the canonical renderer.
//!
//! Grammar:
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor (("*"|"/")? factor)*
//! factor := "-" factor | atom ("^" sint)?
//! atom   := num | "i" | param | "z" | "q" | "d" | "dq" | "O(" var ["^" sint] ")" | "(" expr ")"
//! ```
//! Products compose left to right, so `d*z` reads as z∂ + 1.

use crate::coeff::Coeff;
use crate::diffop::DiffOp;
use crate::error::{Error, Result};
use crate::laurent::LaurentTrunc;
use crate::lpoly::LaurentPoly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use std::collections::BTreeSet;
use std::fmt;

/// Default bound on distinct parameter names per session.
pub const DEFAULT_PARAM_CAP: usize = 8;

const RESERVED: [&str; 6] = ["z", "q", "d", "dq", "i", "O"];

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let ch = bytes[k] as char;
        if ch.is_ascii_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            let n: BigInt = text[start..k].parse().expect("digits");
            out.push(Token { tok: Tok::Num(n), pos: start });
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = k;
            while k < bytes.len() && (bytes[k].is_ascii_alphanumeric() || bytes[k] == b'_') {
                k += 1;
            }
            out.push(Token { tok: Tok::Ident(text[start..k].to_string()), pos: start });
        } else if "+-*/^()".contains(ch) {
            out.push(Token { tok: Tok::Sym(ch), pos: k });
            k += 1;
        } else if ch == '\u{2212}' {
            // typographic minus
            out.push(Token { tok: Tok::Sym('-'), pos: k });
            k += ch.len_utf8();
        } else {
            let c = text[k..].chars().next().unwrap();
            return Err(Error::Parse { pos: k, msg: format!("unexpected character {c:?}") });
        }
    }
    out.push(Token { tok: Tok::End, pos: text.len() });
    Ok(out)
}

/// The variable spelling: z with d, or q with dq.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum VarName {
    #[default]
    Z,
    Q,
}

impl VarName {
    pub fn var(&self) -> &'static str {
        match self {
            VarName::Z => "z",
            VarName::Q => "q",
        }
    }

    pub fn d(&self) -> &'static str {
        match self {
            VarName::Z => "d",
            VarName::Q => "dq",
        }
    }
}

/// Parameter bookkeeping shared across parses.
#[derive(Clone, Debug)]
pub struct Session {
    cap: usize,
    params: BTreeSet<String>,
}

impl Default for Session {
    fn default() -> Self {
        Session::new(DEFAULT_PARAM_CAP)
    }
}

impl Session {
    pub fn new(cap: usize) -> Self {
        Session { cap, params: BTreeSet::new() }
    }

    pub fn params(&self) -> impl Iterator<Item = &str> {
        self.params.iter().map(String::as_str)
    }

    pub fn parse_op<C: Coeff>(&mut self, text: &str) -> Result<DiffOp<C>> {
        Ok(self.parse_op_named(text)?.0)
    }

    /// Also reports which variable spelling the text used.
    pub fn parse_op_named<C: Coeff>(&mut self, text: &str) -> Result<(DiffOp<C>, VarName)> {
        let toks = tokenize(text)?;
        let mut p = Parser { toks, at: 0, session: self, var: None };
        let v = p.expr()?;
        if p.peek() != &Tok::End {
            return Err(p.expected(&["+", "-", "*", "/", "an operand", "end of input"]));
        }
        let var = p.var.unwrap_or_default();
        Ok((v, var))
    }

    pub fn parse_coeff<C: Coeff>(&mut self, text: &str) -> Result<C> {
        let op: DiffOp<C> = self.parse_op(text)?;
        match op.order() {
            None => Ok(C::zero()),
            Some(0) => Ok(op.coeff(0)),
            Some(_) => Err(Error::Parse { pos: 0, msg: "expected a function, found an operator".into() }),
        }
    }

    pub fn parse_scalar(&mut self, text: &str) -> Result<Scalar> {
        let f: RatFunc = self.parse_coeff(text)?;
        f.as_scalar().ok_or_else(|| Error::Parse { pos: 0, msg: "expected a constant".into() })
    }
}

pub fn parse_op<C: Coeff>(text: &str) -> Result<DiffOp<C>> {
    Session::default().parse_op(text)
}

pub fn parse_coeff<C: Coeff>(text: &str) -> Result<C> {
    Session::default().parse_coeff(text)
}

pub fn parse_scalar(text: &str) -> Result<Scalar> {
    Session::default().parse_scalar(text)
}

struct Parser<'s> {
    toks: Vec<Token>,
    at: usize,
    session: &'s mut Session,
    var: Option<VarName>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expected(&self, what: &[&str]) -> Error {
        let found = match self.peek() {
            Tok::Num(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Sym(c) => c.to_string(),
            Tok::End => "end of input".into(),
        };
        Error::Parse { pos: self.pos(), msg: format!("expected one of {{{}}}, found {found}", what.join(", ")) }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn use_var(&mut self, v: VarName) -> Result<()> {
        match self.var {
            Some(prev) if prev != v => Err(Error::Parse { pos: self.pos(), msg: "mixed variables z and q".into() }),
            _ => {
                self.var = Some(v);
                Ok(())
            }
        }
    }

    fn expr<C: Coeff>(&mut self) -> Result<DiffOp<C>> {
        let mut acc = if self.eat('-') {
            self.term::<C>()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::Sym('('))
    }

    fn term<C: Coeff>(&mut self) -> Result<DiffOp<C>> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = acc.compose(&self.factor()?);
            } else if self.peek() == &Tok::Sym('/') {
                self.bump();
                let den = self.factor::<C>()?;
                let inv = function_part(&den)?.inv()?;
                acc = acc.compose(&DiffOp::mult(inv));
            } else if self.starts_factor() {
                acc = acc.compose(&self.factor()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<C: Coeff>(&mut self) -> Result<DiffOp<C>> {
        if self.eat('-') {
            return Ok(self.factor::<C>()?.neg());
        }
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let e = self.sint()?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else {
            Ok(DiffOp::mult(function_part(&base)?.powi(e)?))
        }
    }

    fn sint(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = match self.peek().clone() {
            Tok::Num(n) => {
                self.bump();
                i64::try_from(n).map_err(|_| Error::Parse { pos: self.pos(), msg: "exponent too large".into() })?
            }
            _ => return Err(self.expected(&["an integer exponent"])),
        };
        if paren && !self.eat(')') {
            return Err(self.expected(&[")"]));
        }
        Ok(if neg { -n } else { n })
    }

    fn atom<C: Coeff>(&mut self) -> Result<DiffOp<C>> {
        if !self.starts_factor() {
            return Err(self.expected(&["number", "i", "parameter", "z", "q", "d", "dq", "O(", "("]));
        }
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(DiffOp::scalar(Scalar::from_rational(n.into()))),
            Tok::Sym('(') => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.expected(&[")"]));
                }
                Ok(v)
            }
            Tok::Ident(name) => match name.as_str() {
                "i" => Ok(DiffOp::scalar(Scalar::i())),
                "z" | "q" => {
                    self.use_var(if name == "z" { VarName::Z } else { VarName::Q })?;
                    Ok(DiffOp::mult(C::var()))
                }
                "d" | "dq" => {
                    self.use_var(if name == "d" { VarName::Z } else { VarName::Q })?;
                    Ok(DiffOp::d())
                }
                "O" => self.big_o(),
                _ => {
                    if !self.session.params.contains(&name) {
                        if self.session.params.len() >= self.session.cap {
                            return Err(Error::TooManyParameters(self.session.cap));
                        }
                        if crate::scalar::Param::try_new(&name).is_none() {
                            return Err(Error::Parse { pos, msg: format!("parameter name {name:?} is too long") });
                        }
                        self.session.params.insert(name.clone());
                    }
                    Ok(DiffOp::scalar(Scalar::param(&name)))
                }
            },
            _ => unreachable!("checked by starts_factor"),
        }
    }

    fn big_o<C: Coeff>(&mut self) -> Result<DiffOp<C>> {
        if !self.eat('(') {
            return Err(self.expected(&["("]));
        }
        let k = match self.peek().clone() {
            Tok::Num(n) if n == BigInt::from(1) => {
                self.bump();
                0
            }
            Tok::Ident(v) if v == "z" || v == "q" => {
                self.use_var(if v == "z" { VarName::Z } else { VarName::Q })?;
                self.bump();
                if self.eat('^') {
                    self.sint()?
                } else {
                    1
                }
            }
            _ => return Err(self.expected(&["z", "q", "1"])),
        };
        if !self.eat(')') {
            return Err(self.expected(&[")"]));
        }
        Ok(DiffOp::unnormalized(vec![C::big_o(k)?]))
    }
}

/// The coefficient of an operator of order 0, or NonCommutativeDivision.
fn function_part<C: Coeff>(op: &DiffOp<C>) -> Result<C> {
    match op.order() {
        None => Err(Error::DivisionByZero),
        Some(0) => Ok(op.coeff(0)),
        Some(_) => Err(Error::NonCommutativeDivision),
    }
}

/// How a coefficient is written out.
pub enum CoeffText {
    /// Σ s z^e, optionally + O(z^prec).
    Terms(Vec<(i64, Scalar)>, Option<i64>),
    /// num/den with both already rendered.
    Fraction(String, String),
}

fn upoly_terms(p: &crate::upoly::UPoly) -> Vec<(i64, Scalar)> {
    p.coeffs().iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, s)| (k as i64, s.clone())).collect()
}

pub(crate) fn ratfunc_text(f: &RatFunc, var: VarName) -> CoeffText {
    if let Ok(lp) = LaurentPoly::from_ratfunc(f) {
        return CoeffText::Terms(lp.terms().iter().map(|(e, s)| (*e, s.clone())).collect(), None);
    }
    let num = join_terms(&upoly_terms(f.numer()), 0, var, None);
    let den = join_terms(&upoly_terms(f.denom()), 0, var, None);
    CoeffText::Fraction(num, den)
}

pub(crate) fn lpoly_text(p: &LaurentPoly) -> CoeffText {
    CoeffText::Terms(p.terms().iter().map(|(e, s)| (*e, s.clone())).collect(), None)
}

pub(crate) fn series_text(f: &LaurentTrunc) -> CoeffText {
    let terms = f.terms().map(|(e, s)| (e, s.clone())).collect();
    CoeffText::Terms(terms, (!f.is_exact()).then(|| f.prec()))
}

/// Wraps text in parentheses unless it is a single product or an already-grouped expression.
fn group(s: &str) -> String {
    let body = s.strip_prefix('-').unwrap_or(s);
    if !body.contains(' ') {
        return s.to_string();
    }
    if s.starts_with('(') && s.ends_with(')') {
        let mut depth = 0i32;
        let closes_at_end = s.char_indices().all(|(k, ch)| {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            depth > 0 || k == s.len() - 1
        });
        if closes_at_end {
            return s.to_string();
        }
    }
    format!("({s})")
}

fn monomial(s: &Scalar, e: i64, j: usize, var: VarName) -> String {
    let mut parts: Vec<String> = Vec::new();
    if e == 1 {
        parts.push(var.var().to_string());
    } else if e != 0 {
        parts.push(format!("{}^{e}", var.var()));
    }
    if j == 1 {
        parts.push(var.d().to_string());
    } else if j > 1 {
        parts.push(format!("{}^{j}", var.d()));
    }
    let coef = s.to_string();
    if parts.is_empty() {
        return group(&coef);
    }
    let tail = parts.join("*");
    if s.is_one() {
        tail
    } else if (-s).is_one() {
        format!("-{tail}")
    } else {
        format!("{}*{tail}", group(&coef))
    }
}

fn join(pieces: &[String]) -> String {
    let mut out = String::new();
    for (k, p) in pieces.iter().enumerate() {
        if k == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn join_terms(terms: &[(i64, Scalar)], j: usize, var: VarName, prec: Option<i64>) -> String {
    let mut sorted: Vec<&(i64, Scalar)> = terms.iter().collect();
    sorted.sort_by_key(|t| std::cmp::Reverse(t.0));
    let mut pieces: Vec<String> = sorted.iter().map(|(e, s)| monomial(s, *e, j, var)).collect();
    if let Some(p) = prec {
        pieces.push(big_o_text(p, var));
    }
    join(&pieces)
}

fn big_o_text(p: i64, var: VarName) -> String {
    match p {
        0 => "O(1)".into(),
        1 => format!("O({})", var.var()),
        _ => format!("O({}^{p})", var.var()),
    }
}

/// Canonical text: ∂-degree descending, then z-degree descending.
pub fn render_op<C: Coeff>(op: &DiffOp<C>, var: VarName) -> String {
    let mut pieces = Vec::new();
    for (j, xi) in op.coeffs().iter().enumerate().rev() {
        match xi.coeff_text(var) {
            CoeffText::Terms(t, None) => {
                let mut sorted = t.clone();
                sorted.sort_by_key(|t| std::cmp::Reverse(t.0));
                pieces.extend(sorted.iter().map(|(e, s)| monomial(s, *e, j, var)));
            }
            CoeffText::Terms(t, Some(p)) => {
                let body = join_terms(&t, 0, var, Some(p));
                pieces.push(match j {
                    0 => body,
                    1 => format!("({body})*{}", var.d()),
                    _ => format!("({body})*{}^{j}", var.d()),
                });
            }
            CoeffText::Fraction(n, d) => {
                let f = format!("({n})/({d})");
                pieces.push(match j {
                    0 => f,
                    1 => format!("{f}*{}", var.d()),
                    _ => format!("{f}*{}^{j}", var.d()),
                });
            }
        }
    }
    join(&pieces)
}

pub fn render_coeff<C: Coeff>(c: &C, var: VarName) -> String {
    render_op(&DiffOp::mult(c.clone()), var)
}

impl<C: Coeff> fmt::Display for DiffOp<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_op(self, VarName::Z))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_coeff(self, VarName::Z))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_coeff(self, VarName::Z))
    }
}

impl fmt::Display for LaurentTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_coeff(self, VarName::Z))
    }
}

/// Names that cannot be parameters.
pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(text: &str) -> DiffOp<RatFunc> {
        parse_op(text).unwrap()
    }

    #[test]
    fn literal_operator() {
        let op = rt("-z^2*d + 2*c*z");
        let c = Scalar::param("c");
        let expect = DiffOp::from_coeffs(vec![
            RatFunc::z().scale(&(&c * &Scalar::from_int(2))),
            RatFunc::z_pow(2).scale(&Scalar::from_int(-1)),
        ]);
        assert_eq!(op, expect);
        assert_eq!(op.to_string(), "-z^2*d + 2*c*z");
    }

    #[test]
    fn composition_is_normal_ordered() {
        assert_eq!(rt("d*z").to_string(), "z*d + 1");
        assert_eq!(rt("(1/4)*d^2").to_string(), "1/4*d^2");
    }

    #[test]
    fn division_by_operator_rejected() {
        assert_eq!(parse_op::<RatFunc>("z/d").unwrap_err(), Error::NonCommutativeDivision);
        assert_eq!(parse_op::<RatFunc>("d^-1").unwrap_err(), Error::NonCommutativeDivision);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_op::<RatFunc>("z + * 2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_op::<RatFunc>("z $"), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn parameter_cap() {
        let mut s = Session::new(2);
        s.parse_op::<RatFunc>("a + b").unwrap();
        assert_eq!(s.parse_op::<RatFunc>("c").unwrap_err(), Error::TooManyParameters(2));
    }

    #[test]
    fn series_tail_roundtrip() {
        let s: DiffOp<LaurentTrunc> = parse_op("(1 + z + O(z^4))*d + z^-1").unwrap();
        let text = s.to_string();
        assert_eq!(text, "(z + 1 + O(z^4))*d + z^-1");
        let back: DiffOp<LaurentTrunc> = parse_op(&text).unwrap();
        assert_eq!(back.coeff(1).prec(), 4);
        assert_eq!(back, s);
    }

    #[test]
    fn canonical_text_roundtrips() {
        let corpus = [
            "0",
            "1",
            "-1",
            "i",
            "-i",
            "1/2",
            "c",
            "-c",
            "c^2 + 1",
            "z",
            "z^-1",
            "d",
            "-d",
            "z*d",
            "-z^2*d + 2*c*z",
            "z^3*d^2 - 1/3*z",
            "d^3 + z^-2*d",
            "(1 + i)*z",
            "(c + 1)*z^2*d",
            "c/(c + 1)",
            "z*d - c",
            "(1/z + 2)*d",
            "d*z*d",
            "(z + 1)^3",
            "-(z - c)*d^2",
            "z^5 - z^-5",
            "a*b*z + a - b",
            "(2*c + 1)*d + 1/2*z^-1",
            "i*c*z^2*d",
            "1/(z + 1)*d",
        ];
        let mut s = Session::default();
        for text in corpus {
            let op: DiffOp<RatFunc> = s.parse_op(text).unwrap_or_else(|e| panic!("{text}: {e}"));
            let canon = op.to_string();
            let back: DiffOp<RatFunc> = s.parse_op(&canon).unwrap_or_else(|e| panic!("{canon}: {e}"));
            assert_eq!(back, op, "{text} -> {canon}");
            assert_eq!(back.to_string(), canon);
        }
    }

    #[test]
    fn mixed_variables_rejected() {
        assert!(matches!(parse_op::<RatFunc>("z*dq"), Err(Error::Parse { .. })));
        let mut s = Session::default();
        let (_, v) = s.parse_op_named::<LaurentPoly>("q^2*dq").unwrap();
        assert_eq!(v, VarName::Q);
    }

    #[test]
    fn o_terms_need_series() {
        assert!(matches!(parse_op::<RatFunc>("1 + O(z)"), Err(Error::NotInRing(_))));
    }

    #[test]
    fn zero_renders_as_zero() {
        assert_eq!(DiffOp::<RatFunc>::zero().to_string(), "0");
    }
}
