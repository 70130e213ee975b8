//! Dense univariate polynomials over an [`ExtField`].

use crate::error::{Error, Result};
use crate::field::{ExtField, Fe};

/// Little-endian coefficients with no trailing zeros; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly(pub Vec<Fe>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(k: &ExtField, c: Fe) -> Self {
        Poly(vec![c]).trimmed(k)
    }

    pub fn one(k: &ExtField) -> Self {
        Poly(vec![k.one()])
    }

    /// `x - a`
    pub fn linear_root(k: &ExtField, a: &Fe) -> Self {
        Poly(vec![k.neg(a), k.one()])
    }

    pub fn from_coeffs(k: &ExtField, coeffs: Vec<Fe>) -> Self {
        Poly(coeffs).trimmed(k)
    }

    fn trimmed(mut self, k: &ExtField) -> Self {
        while self.0.last().is_some_and(|c| k.is_zero(c)) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn coeff(&self, k: &ExtField, i: usize) -> Fe {
        self.0.get(i).cloned().unwrap_or_else(|| k.zero())
    }

    pub fn lead(&self) -> Option<&Fe> {
        self.0.last()
    }

    pub fn is_monic(&self, k: &ExtField) -> bool {
        self.lead().is_some_and(|c| k.is_one(c))
    }

    pub fn add(&self, k: &ExtField, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| k.add(&self.coeff(k, i), &other.coeff(k, i))).collect()).trimmed(k)
    }

    pub fn sub(&self, k: &ExtField, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly((0..n).map(|i| k.sub(&self.coeff(k, i), &other.coeff(k, i))).collect()).trimmed(k)
    }

    pub fn neg(&self, k: &ExtField) -> Poly {
        Poly(self.0.iter().map(|c| k.neg(c)).collect())
    }

    pub fn scale(&self, k: &ExtField, c: &Fe) -> Poly {
        Poly(self.0.iter().map(|x| k.mul(x, c)).collect()).trimmed(k)
    }

    pub fn mul(&self, k: &ExtField, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![k.zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Poly(out).trimmed(k)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divrem(&self, k: &ExtField, d: &Poly) -> Result<(Poly, Poly)> {
        let lead = d.lead().ok_or(Error::DivisionByZero)?;
        let lead_inv = k.inv(lead)?;
        let dd = d.0.len() - 1;
        let mut r = self.0.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &lead_inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.0.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, dj));
            }
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Poly(q).trimmed(k), Poly(r).trimmed(k)))
    }

    pub fn rem(&self, k: &ExtField, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(k, d)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, k: &ExtField, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(k, d)?;
        if !r.is_zero() {
            return Err(Error::InternalInconsistency("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, k: &ExtField) -> Result<Poly> {
        let lead = self.lead().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(k, &k.inv(lead)?))
    }

    /// `(g, s, t)` with `g = s a + t b` monic (or zero when both inputs are zero).
    pub fn xgcd(k: &ExtField, a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly)> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(k), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(k, &r1)?;
            let s = s0.sub(k, &q.mul(k, &s1));
            let t = t0.sub(k, &q.mul(k, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.lead() {
            None => Ok((r0, s0, t0)),
            Some(lead) => {
                let inv = k.inv(lead)?;
                Ok((r0.scale(k, &inv), s0.scale(k, &inv), t0.scale(k, &inv)))
            }
        }
    }

    pub fn gcd(k: &ExtField, a: &Poly, b: &Poly) -> Result<Poly> {
        Ok(Self::xgcd(k, a, b)?.0)
    }

    pub fn eval(&self, k: &ExtField, x: &Fe) -> Fe {
        self.0.iter().rev().fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    pub fn derivative(&self, k: &ExtField) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.scale(c, i as u64))
                .collect(),
        )
        .trimmed(k)
    }

    /// Coefficient-wise Frobenius `x -> x^(q^m)`.
    pub fn frobenius(&self, k: &ExtField, m: usize) -> Poly {
        Poly(self.0.iter().map(|c| k.frobenius_power(c, m)).collect())
    }

    /// Product of `self` over the roots of the monic `u` (with multiplicity),
    /// i.e. the resultant `Res(u, self)` for `deg u <= 2`.
    pub fn norm_over(&self, k: &ExtField, u: &Poly) -> Result<Fe> {
        match u.degree() {
            0 => Ok(k.one()),
            1 => {
                let root = k.neg(&u.0[0]);
                Ok(self.eval(k, &root))
            }
            2 => {
                let r = self.rem(k, u)?;
                let c0 = r.coeff(k, 0);
                let c1 = r.coeff(k, 1);
                let (a0, a1) = (&u.0[0], &u.0[1]);
                // (c1 r1 + c0)(c1 r2 + c0) = c1^2 a0 - c0 c1 a1 + c0^2
                let t = k.sub(&k.mul(&k.square(&c1), a0), &k.mul(&k.mul(&c0, &c1), a1));
                Ok(k.add(&t, &k.square(&c0)))
            }
            _ => Err(Error::BadInput("norm_over supports deg u <= 2".into())),
        }
    }
}
