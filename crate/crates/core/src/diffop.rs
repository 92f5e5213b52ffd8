//! Differential operators Σ ξ_j ∂^j in normal form (coefficients to the left).

use crate::coeff::Coeff;
use crate::error::Result;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp<C: Coeff> {
    /// `coeffs[j]` multiplies ∂^j; the last entry is nonzero.
    coeffs: Vec<C>,
}

impl<C: Coeff> Default for DiffOp<C> {
    fn default() -> Self {
        DiffOp::zero()
    }
}

fn binomial_row(n: usize) -> Vec<Scalar> {
    let mut row = vec![1i64; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n - k + 1) as i64 / k as i64;
    }
    row.into_iter().map(Scalar::from_int).collect()
}

impl<C: Coeff> DiffOp<C> {
    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DiffOp::mult(C::one())
    }

    pub fn scalar(s: Scalar) -> Self {
        DiffOp::mult(C::from_scalar(s))
    }

    /// Multiplication operator.
    pub fn mult(c: C) -> Self {
        DiffOp::from_coeffs(vec![c])
    }

    /// ∂
    pub fn d() -> Self {
        DiffOp::from_coeffs(vec![C::zero(), C::one()])
    }

    /// c ∂^j
    pub fn term(c: C, j: usize) -> Self {
        let mut v = vec![C::zero(); j + 1];
        v[j] = c;
        DiffOp::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    /// Keeps coefficients that are zero only up to a precision bound, so they still cap sums.
    pub(crate) fn unnormalized(coeffs: Vec<C>) -> Self {
        DiffOp { coeffs }
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of ∂^j.
    pub fn coeff(&self, j: usize) -> C {
        self.coeffs.get(j).cloned().unwrap_or_else(C::zero)
    }

    /// None for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient.
    pub fn symbol(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Zero test that surfaces precision failures of truncated coefficients.
    pub fn is_zero_checked(&self) -> Result<bool> {
        Ok(self.coeffs.is_empty())
    }

    /// Coefficientwise zero test of `self - o`, honouring precision.
    pub fn equals_checked(&self, o: &Self) -> Result<bool> {
        let n = self.coeffs.len().max(o.coeffs.len());
        for j in 0..n {
            if !self.coeff(j).sub(&o.coeff(j)).is_zero_checked()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for j in 0..n {
            v.push(match (self.coeffs.get(j), o.coeffs.get(j)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        DiffOp::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        DiffOp { coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return DiffOp::zero();
        }
        DiffOp::from_coeffs(self.coeffs.iter().map(|c| c.scale(s)).collect())
    }

    /// f ∘ P
    pub fn left_mul(&self, f: &C) -> Self {
        DiffOp::from_coeffs(self.coeffs.iter().map(|c| f.mul(c)).collect())
    }

    /// P ∘ Q by the Leibniz rule ∂^j ∘ g = Σ_k C(j,k) g^{(k)} ∂^{j-k}.
    pub fn compose(&self, o: &Self) -> Self {
        let (Some(p), Some(q)) = (self.order(), o.order()) else {
            return DiffOp::zero();
        };
        // derivs[l][k] = η_l^{(k)}
        let derivs: Vec<Vec<C>> = o
            .coeffs
            .iter()
            .map(|eta| {
                let mut row = Vec::with_capacity(p + 1);
                row.push(eta.clone());
                for k in 1..=p {
                    let next = if row[k - 1].is_zero() { C::zero() } else { row[k - 1].derive() };
                    row.push(next);
                }
                row
            })
            .collect();
        let mut out: Vec<C> = vec![C::zero(); p + q + 1];
        for (j, xi) in self.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let binom = binomial_row(j);
            for (l, row) in derivs.iter().enumerate() {
                for k in 0..=j {
                    let g = &row[k];
                    if g.is_zero() {
                        continue;
                    }
                    let mut t = xi.mul(g);
                    if !binom[k].is_one() {
                        t = t.scale(&binom[k]);
                    }
                    let idx = j + l - k;
                    out[idx] = out[idx].add(&t);
                }
            }
        }
        DiffOp::from_coeffs(out)
    }

    pub fn bracket(&self, o: &Self) -> Self {
        self.compose(o).sub(&o.compose(self))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = DiffOp::one();
        for _ in 0..n {
            acc = acc.compose(self);
        }
        acc
    }

    /// P(f) = Σ ξ_j f^{(j)}.
    pub fn apply(&self, f: &C) -> C {
        let mut acc = C::zero();
        let mut fd = f.clone();
        for (j, xi) in self.coeffs.iter().enumerate() {
            if j > 0 {
                fd = fd.derive();
            }
            if !xi.is_zero() {
                acc = acc.add(&xi.mul(&fd));
            }
        }
        acc
    }

    /// p(L) for p given by scalar coefficients, lowest degree first (Horner).
    pub fn poly_in(l: &Self, p: &[Scalar]) -> Self {
        let mut acc = DiffOp::zero();
        for a in p.iter().rev() {
            acc = acc.compose(l);
            if !a.is_zero() {
                acc = acc.add(&DiffOp::scalar(a.clone()));
            }
        }
        acc
    }

    /// Operator with every coefficient converted or transformed.
    pub fn try_map<D: Coeff>(&self, f: impl Fn(&C) -> Result<D>) -> Result<DiffOp<D>> {
        Ok(DiffOp::from_coeffs(self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    pub fn map_scalars(&self, f: &dyn Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        self.try_map(|c| c.map_scalars(f))
    }

    /// Scalar value of an order-0 operator with constant coefficient.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.coeffs.len() {
            0 => Some(Scalar::zero()),
            1 => self.coeffs[0].as_scalar(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lpoly::LaurentPoly;
    use crate::ratfunc::RatFunc;

    type Op = DiffOp<RatFunc>;

    fn zk(k: i64) -> RatFunc {
        RatFunc::z_pow(k)
    }

    #[test]
    fn leibniz_product() {
        // (z^2 ∂)(z ∂^2): oracle by applying both sides to z^k.
        let a = Op::term(zk(2), 1);
        let b = Op::term(zk(1), 2);
        let ab = a.compose(&b);
        for k in 0..6 {
            let f = zk(k);
            assert_eq!(ab.apply(&f), a.apply(&b.apply(&f)));
        }
        let expect = Op::term(zk(3), 3).add(&Op::term(zk(2), 2));
        assert_eq!(ab, expect);
    }

    #[test]
    fn euler_operator_eigenvalues() {
        let e = Op::term(zk(1), 1);
        for n in -3..4 {
            let br = e.bracket(&Op::mult(zk(n)));
            assert_eq!(br, Op::mult(zk(n).scale(&Scalar::from_int(n))));
        }
    }

    #[test]
    fn intermediate_series_action() {
        let alpha = Scalar::param("alpha");
        let beta = Scalar::param("beta");
        for i in -2..3i64 {
            let op: DiffOp<LaurentPoly> = DiffOp::term(LaurentPoly::monomial(Scalar::from_int(-1), i + 1), 1)
                .add(&DiffOp::mult(LaurentPoly::monomial(&(&alpha * &Scalar::from_int(i)) + &beta, i)));
            for n in -2..3i64 {
                let got = op.apply(&LaurentPoly::monomial(Scalar::one(), n));
                let k = &(&(&alpha * &Scalar::from_int(i)) + &beta) - &Scalar::from_int(n);
                assert_eq!(got, LaurentPoly::monomial(k, n + i));
            }
        }
    }

    #[test]
    fn poly_in_cubic() {
        let lam = Scalar::param("lam");
        let two = Scalar::from_int(2);
        let three = Scalar::from_int(3);
        let x = Op::term(zk(1), 1);
        // (X + 2λ)(X − λ − 2)(X − λ − 1), expanded
        let p = vec![
            &(&(&two * &(&lam * &(&lam * &lam))) + &(&Scalar::from_int(6) * &(&lam * &lam))) + &(&Scalar::from_int(4) * &lam),
            &(&two - &(&three * &lam)) - &(&three * &(&lam * &lam)),
            Scalar::from_int(-3),
            Scalar::one(),
        ];
        let direct = x
            .add(&Op::scalar(&two * &lam))
            .compose(&x.sub(&Op::scalar(&lam + &two)))
            .compose(&x.sub(&Op::scalar(&lam + &Scalar::one())));
        assert_eq!(Op::poly_in(&x, &p), direct);
    }
}
