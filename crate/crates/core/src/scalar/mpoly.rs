use super::gauss::GaussRat;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;

/// Formal parameter name, stored inline so it is `Copy`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param {
    bytes: [u8; 15],
    len: u8,
}

impl Param {
    pub const MAX_LEN: usize = 15;

    /// Panics on names longer than `MAX_LEN` bytes; the parser checks first.
    pub fn new(name: &str) -> Self {
        Self::try_new(name).unwrap_or_else(|| panic!("parameter name too long: {name}"))
    }

    pub fn try_new(name: &str) -> Option<Self> {
        let b = name.as_bytes();
        if b.is_empty() || b.len() > Self::MAX_LEN {
            return None;
        }
        let mut bytes = [0u8; 15];
        bytes[..b.len()].copy_from_slice(b);
        Some(Param { bytes, len: b.len() as u8 })
    }

    pub fn name(&self) -> &str {
        std::str::from_utf8(&self.bytes[..self.len as usize]).expect("ascii name")
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl Serialize for Param {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Param {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Param::try_new(&s).ok_or_else(|| serde::de::Error::custom("invalid parameter name"))
    }
}

/// Power product of parameters, sorted by parameter, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(pub SmallVec<[(Param, u32); 2]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(p: Param) -> Self {
        let mut v = SmallVec::new();
        v.push((p, 1));
        Mono(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.0.iter().find(|(q, _)| *q == p).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut out = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < o.0.len() {
            if j == o.0.len() || (i < self.0.len() && self.0[i].0 < o.0[j].0) {
                out.push(self.0[i]);
                i += 1;
            } else if i == self.0.len() || o.0[j].0 < self.0[i].0 {
                out.push(o.0[j]);
                j += 1;
            } else {
                out.push((self.0[i].0, self.0[i].1 + o.0[j].1));
                i += 1;
                j += 1;
            }
        }
        Mono(out)
    }

    /// `self / o` when `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out: SmallVec<[(Param, u32); 2]> = SmallVec::new();
        let mut j = 0;
        for &(p, e) in self.0.iter() {
            if j < o.0.len() && o.0[j].0 < p {
                return None;
            }
            if j < o.0.len() && o.0[j].0 == p {
                let f = o.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((p, e - f)),
                }
            } else {
                out.push((p, e));
            }
        }
        (j == o.0.len()).then_some(Mono(out))
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.0.iter().map(|(p, _)| *p)
    }
}

/// Lexicographic order with parameters ranked by name.
impl Ord for Mono {
    fn cmp(&self, o: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), o.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(p, e)), Some(&(q, f))) => {
                    if p < q {
                        return Ordering::Greater;
                    }
                    if q < p {
                        return Ordering::Less;
                    }
                    if e != f {
                        return e.cmp(&f);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial over Q(i) in formal parameters; terms sorted descending.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MPoly {
    terms: Vec<(Mono, GaussRat)>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn constant(c: GaussRat) -> Self {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn one() -> Self {
        MPoly::constant(GaussRat::one())
    }

    pub fn var(p: Param) -> Self {
        MPoly { terms: vec![(Mono::var(p), GaussRat::one())] }
    }

    pub fn from_terms(mut raw: Vec<(Mono, GaussRat)>) -> Self {
        raw.sort_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Mono, GaussRat)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Mono, GaussRat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.as_slice() {
            [] => Some(GaussRat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<&(Mono, GaussRat)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, p: Param) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree_in(p)).max().unwrap_or(0)
    }

    pub fn params(&self) -> Vec<Param> {
        let mut v: Vec<Param> = self.terms.iter().flat_map(|(m, _)| m.params()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            match self.terms[i].0.cmp(&o.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &o.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&o.terms[j..]);
        MPoly { terms: out }
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &GaussRat) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul_term(&self, mono: &Mono, k: &GaussRat) -> MPoly {
        if k.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * k)).collect() }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        if self.is_zero() || o.is_zero() {
            return MPoly::zero();
        }
        if let Some(k) = o.as_constant() {
            return self.scale(&k);
        }
        if let Some(k) = self.as_constant() {
            return o.scale(&k);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                raw.push((m1.mul(m2), c1 * c2));
            }
        }
        MPoly::from_terms(raw)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact quotient, or None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        if let Some(k) = d.as_constant() {
            return Some(self.scale(&k.inv()?));
        }
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((rm, rc)) = rem.leading().cloned() {
            let qm = rm.div(dm)?;
            let qc = &rc * &dc_inv;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.push((qm, qc));
        }
        Some(MPoly::from_terms(quot))
    }

    /// Substitute a polynomial for a parameter.
    pub fn substitute(&self, p: Param, val: &MPoly) -> MPoly {
        let mut acc = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(p);
            let rest = Mono(m.0.iter().copied().filter(|(q, _)| *q != p).collect());
            let term = MPoly { terms: vec![(rest, c.clone())] }.mul(&val.pow(e));
            acc = acc.add(&term);
        }
        acc
    }

    /// Dense coefficients in `p`, valid when `p` is the only parameter.
    pub fn to_dense(&self, p: Param) -> Option<Vec<GaussRat>> {
        let deg = self.degree_in(p) as usize;
        let mut v = vec![GaussRat::zero(); deg + 1];
        for (m, c) in &self.terms {
            if m.0.iter().any(|(q, _)| *q != p) {
                return None;
            }
            v[m.degree_in(p) as usize] = c.clone();
        }
        Some(v)
    }

    pub fn from_dense(p: Param, v: &[GaussRat]) -> MPoly {
        let raw = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let m = if k == 0 {
                    Mono::one()
                } else {
                    let mut s = SmallVec::new();
                    s.push((p, k as u32));
                    Mono(s)
                };
                (m, c.clone())
            })
            .collect();
        MPoly::from_terms(raw)
    }

    /// Exact square root when `self` is a perfect square.
    pub fn sqrt(&self) -> Option<MPoly> {
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let (lm, lc) = self.leading()?;
        let half = Mono(
            lm.0.iter()
                .map(|&(p, e)| if e % 2 == 0 { Some((p, e / 2)) } else { None })
                .collect::<Option<_>>()?,
        );
        let mut root = MPoly { terms: vec![(half.clone(), lc.sqrt()?)] };
        let two_lead = &root.terms[0].1 + &root.terms[0].1;
        let inv_two_lead = two_lead.inv()?;
        let bound = self.total_degree() / 2;
        loop {
            let rem = self.sub(&root.mul(&root));
            let Some((rm, rc)) = rem.leading() else { return Some(root) };
            let tm = rm.div(&half)?;
            if tm.degree() > bound || tm >= half {
                return None;
            }
            let t = MPoly { terms: vec![(tm, rc * &inv_two_lead)] };
            root = root.add(&t);
        }
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = signed_parts(c);
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{mag}*{m}"));
            }
        }
        write!(f, "{out}")
    }
}

/// Split a coefficient into a display sign and magnitude.
pub fn signed_parts(c: &GaussRat) -> (bool, GaussRat) {
    use num_traits::{Signed, Zero};
    let neg = if c.re.is_zero() { c.im.is_negative() } else { c.re.is_negative() && c.im.is_zero() };
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c() -> MPoly {
        MPoly::var(Param::new("c"))
    }

    #[test]
    fn exact_division() {
        let p = c().mul(&c()).sub(&MPoly::one());
        let q = c().add(&MPoly::one());
        assert_eq!(p.div_exact(&q), Some(c().sub(&MPoly::one())));
        assert_eq!(q.div_exact(&p), None);
    }

    #[test]
    fn square_root_of_square() {
        let t = c().scale(&GaussRat::from_int(2)).add(&MPoly::one());
        assert_eq!(t.mul(&t).sqrt(), Some(t.clone()));
        assert_eq!(t.sqrt(), None);
    }

    #[test]
    fn lex_order() {
        let b = Param::new("b");
        let cc = Param::new("c");
        assert!(Mono::var(b) > Mono::var(cc).mul(&Mono::var(cc)));
    }
}
