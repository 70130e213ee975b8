//! Prime fields `F_p` and extension fields `F_{p^d} = F_p[X]/(m(X))`.
//!
//! Elements are bare coefficient vectors ([`Fe`]); every operation goes
//! through the owning [`ExtField`], which carries the modulus, the Frobenius
//! matrix and the subfield bases. Fields are cheap to clone (shared `Arc`).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::arith::{divisors, is_prime, mod_inv, prime_factors};
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 64;

type Coeffs = SmallVec<[u32; 16]>;

/// An element of some `F_{p^d}`: `d` little-endian residues in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fe(Coeffs);

impl Fe {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.0.iter().map(|&c| c as u64).collect()
    }

    /// The residue in the constant position; meaningful for prime-field elements.
    pub fn constant(&self) -> u64 {
        self.0[0] as u64
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Canonical order: compare as base-p integers (highest coefficient first).
impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The prime field `F_p`, `p` an odd prime below `2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::BadInput(format!("p = {p} exceeds 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

struct Inner {
    p: u64,
    degree: usize,
    /// Low coefficients of the monic modulus: `X^d + sum m_i X^i`.
    modulus: Vec<u64>,
    /// `frob[i] = X^(i p) mod m`; the Frobenius map is linear in these rows.
    frob: Vec<Fe>,
    order: BigUint,
    /// `order - 1 = 2^s * t`, `t` odd.
    two_adic_s: u32,
    two_adic_t: BigUint,
    non_residue: Fe,
    /// For each `m | d`: powers `g^0..g^(m-1)` of an element generating `F_{p^m}`.
    subfields: Vec<(usize, Vec<Fe>)>,
}

/// The finite field `F_{p^d}`.
#[derive(Clone)]
pub struct ExtField(Arc<Inner>);

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.0.p, self.0.degree, self.0.modulus)
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// Builds `F_{p^d}` with the lowest monic irreducible modulus, ordering
    /// candidates by their low coefficients read as a base-p number
    /// (constant term least significant).
    pub fn new(p: u64, degree: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if degree == 0 {
            return Err(Error::BadInput("extension degree must be at least 1".into()));
        }
        if degree > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(degree));
        }
        let mut digits = vec![0u64; degree];
        loop {
            if fp_poly::is_irreducible_monic(&digits, base.p) {
                return Self::with_modulus(base, digits);
            }
            // next candidate in base-p counting order
            let mut i = 0;
            loop {
                if i == degree {
                    return Err(Error::InternalInconsistency(
                        "no irreducible polynomial found".into(),
                    ));
                }
                digits[i] += 1;
                if digits[i] == base.p {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }

    /// Builds a field from explicit low modulus coefficients, checking irreducibility.
    pub fn from_modulus(p: u64, low_coeffs: &[u64]) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if low_coeffs.is_empty() || low_coeffs.len() > MAX_DEGREE {
            return Err(Error::DegreeTooLarge(low_coeffs.len()));
        }
        let low: Vec<u64> = low_coeffs.iter().map(|c| c % p).collect();
        if !fp_poly::is_irreducible_monic(&low, p) {
            return Err(Error::BadInput("modulus is reducible".into()));
        }
        Self::with_modulus(base, low)
    }

    fn with_modulus(base: PrimeField, modulus: Vec<u64>) -> Result<Self> {
        let p = base.p;
        let degree = modulus.len();
        let order = BigUint::from(p).pow(degree as u32);
        let mut t = &order - 1u32;
        let mut s = 0;
        while (&t % 2u32).is_zero() {
            t >>= 1;
            s += 1;
        }
        let placeholder = Fe(SmallVec::from_elem(0, degree));
        let mut field = ExtField(Arc::new(Inner {
            p,
            degree,
            modulus,
            frob: Vec::new(),
            order,
            two_adic_s: s,
            two_adic_t: t,
            non_residue: placeholder,
            subfields: Vec::new(),
        }));

        let x = field.generator();
        let xp = field.pow_u64(&x, p);
        let mut frob = Vec::with_capacity(degree);
        let mut acc = field.one();
        for _ in 0..degree {
            frob.push(acc.clone());
            acc = field.mul(&acc, &xp);
        }
        Arc::get_mut(&mut field.0).expect("unique").frob = frob;

        let half = (&field.0.order - 1u32) >> 1;
        let minus_one = field.neg(&field.one());
        let non_residue = field
            .iter_all()
            .find(|z| !field.is_zero(z) && field.pow(z, &half) == minus_one)
            .ok_or_else(|| Error::InternalInconsistency("no quadratic non-residue".into()))?;
        Arc::get_mut(&mut field.0).expect("unique").non_residue = non_residue;

        let mut subfields = Vec::new();
        for m in divisors(degree) {
            let g = field.subfield_generator(m);
            let mut powers = Vec::with_capacity(m);
            let mut acc = field.one();
            for _ in 0..m {
                powers.push(acc.clone());
                acc = field.mul(&acc, &g);
            }
            subfields.push((m, powers));
        }
        Arc::get_mut(&mut field.0).expect("unique").subfields = subfields;
        Ok(field)
    }

    fn subfield_generator(&self, m: usize) -> Fe {
        let d = self.degree();
        if m == d {
            return self.generator();
        }
        if m == 1 {
            return self.one();
        }
        // Traces of seeded random elements until one has degree m.
        let proper: Vec<usize> = prime_factors(m as u64).into_iter().map(|r| m / r as usize).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
        loop {
            let candidate = self.random(&mut rng);
            let mut g = self.zero();
            let mut conj = candidate.clone();
            for _ in 0..d / m {
                g = self.add(&g, &conj);
                conj = self.frobenius_power(&conj, m);
            }
            if proper.iter().all(|&e| self.frobenius_power(&g, e) != g) {
                return g;
            }
        }
    }

    pub fn base(&self) -> PrimeField {
        PrimeField { p: self.0.p }
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Low coefficients of the monic modulus.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    pub fn zero(&self) -> Fe {
        Fe(SmallVec::from_elem(0, self.degree()))
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, c: u64) -> Fe {
        let mut v = self.zero();
        v.0[0] = (c % self.p()) as u32;
        v
    }

    pub fn from_i64(&self, c: i64) -> Fe {
        self.from_u64(c.rem_euclid(self.p() as i64) as u64)
    }

    /// The class of `X`.
    pub fn generator(&self) -> Fe {
        if self.degree() == 1 {
            // X ≡ -m_0 in F_p[X]/(X + m_0)
            return self.from_u64(self.p() - self.0.modulus[0] % self.p());
        }
        let mut v = self.zero();
        v.0[1] = 1;
        v
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() != self.degree() {
            return Err(Error::BadElement(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::BadElement(format!("coefficient {c} not reduced mod {}", self.p())));
        }
        Ok(Fe(coeffs.iter().map(|&c| c as u32).collect()))
    }

    pub fn is_zero(&self, a: &Fe) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &Fe) -> bool {
        a.0[0] == 1 && a.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p() as u32;
        Fe(a.0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect())
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p() as u32;
        Fe(a.0
            .iter()
            .zip(&b.0)
            .map(|(&x, &y)| if x >= y { x - y } else { x + p - y })
            .collect())
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.p() as u32;
        Fe(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    pub fn scale(&self, a: &Fe, c: u64) -> Fe {
        let p = self.p();
        let c = c % p;
        Fe(a.0.iter().map(|&x| (x as u64 * c % p) as u32).collect())
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let d = self.degree();
        let p = self.p();
        if d == 1 {
            return Fe(SmallVec::from_elem((a.0[0] as u64 * b.0[0] as u64 % p) as u32, 1));
        }
        let mut prod: SmallVec<[u128; 32]> = SmallVec::from_elem(0, 2 * d - 1);
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] += x as u128 * y as u128;
            }
        }
        let mut red: SmallVec<[u64; 32]> = prod.iter().map(|&c| (c % p as u128) as u64).collect();
        let modulus = &self.0.modulus;
        for k in (d..2 * d - 1).rev() {
            let c = red[k];
            if c == 0 {
                continue;
            }
            for (i, &m) in modulus.iter().enumerate() {
                // X^d = -sum m_i X^i
                red[k - d + i] = (red[k - d + i] + (p - m) * c) % p;
            }
        }
        Fe(red[..d].iter().map(|&c| c as u32).collect())
    }

    pub fn square(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Fe, e: &BigUint) -> Fe {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &Fe, e: u64) -> Fe {
        self.pow(a, &BigUint::from(e))
    }

    pub fn inv(&self, a: &Fe) -> Result<Fe> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let p = self.p();
        let mut m: Vec<u64> = self.0.modulus.clone();
        m.push(1);
        let av: Vec<u64> = fp_poly::trim(a.to_vec());
        let s = fp_poly::inverse_mod(&av, &m, p).ok_or(Error::DivisionByZero)?;
        let mut out = self.zero();
        for (i, c) in s.into_iter().enumerate() {
            out.0[i] = c as u32;
        }
        Ok(out)
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Result<Fe> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^p` (one application of the q-power Frobenius, q = p).
    pub fn frobenius(&self, a: &Fe) -> Fe {
        let p = self.p();
        let mut acc: SmallVec<[u64; 16]> = SmallVec::from_elem(0, self.degree());
        for (row, &c) in self.0.frob.iter().zip(a.0.iter()) {
            if c == 0 {
                continue;
            }
            for (slot, &r) in acc.iter_mut().zip(row.0.iter()) {
                *slot = (*slot + c as u64 * r as u64) % p;
            }
        }
        Fe(acc.iter().map(|&c| c as u32).collect())
    }

    /// `a^(q^m)`.
    pub fn frobenius_power(&self, a: &Fe, m: usize) -> Fe {
        let mut out = a.clone();
        for _ in 0..m % self.degree() {
            out = self.frobenius(&out);
        }
        out
    }

    /// Whether `a` lies in the subfield `F_{q^m}`, i.e. `a^(q^m) = a`.
    pub fn is_in_subfield(&self, a: &Fe, m: usize) -> Result<bool> {
        if m == 0 || self.degree() % m != 0 {
            return Err(Error::NotADivisor { sub: m, degree: self.degree() });
        }
        Ok(self.frobenius_power(a, m) == *a)
    }

    pub fn is_square(&self, a: &Fe) -> bool {
        if self.is_zero(a) {
            return true;
        }
        let half = (self.order() - 1u32) >> 1;
        self.is_one(&self.pow(a, &half))
    }

    /// Square root by Tonelli–Shanks; returns the smaller of `±y` in the
    /// canonical order, or `None` for non-squares.
    pub fn sqrt(&self, a: &Fe) -> Option<Fe> {
        let y = tonelli_shanks(self, a)?;
        let minus = self.neg(&y);
        Some(std::cmp::min(y, minus))
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        let p = self.p() as u32;
        Fe((0..self.degree()).map(|_| rng.gen_range(0..p)).collect())
    }

    fn subfield_basis(&self, m: usize) -> Result<&[Fe]> {
        self.0
            .subfields
            .iter()
            .find(|(k, _)| *k == m)
            .map(|(_, b)| b.as_slice())
            .ok_or(Error::NotADivisor { sub: m, degree: self.degree() })
    }

    /// Uniformly random element of the subfield `F_{q^m}`.
    pub fn random_in_subfield<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Result<Fe> {
        let basis = self.subfield_basis(m)?;
        let p = self.p();
        let mut acc = self.zero();
        for b in basis {
            let c = rng.gen_range(0..p);
            acc = self.add(&acc, &self.scale(b, c));
        }
        Ok(acc)
    }

    /// All `q^m` elements of the subfield `F_{q^m}`, in a fixed order.
    pub fn subfield_elements(&self, m: usize) -> Result<Vec<Fe>> {
        Ok(self.subfield_iter(m)?.collect())
    }

    /// Lazy form of [`ExtField::subfield_elements`] (same order).
    pub fn subfield_iter(&self, m: usize) -> Result<impl Iterator<Item = Fe> + '_> {
        let basis = self.subfield_basis(m)?;
        let p = self.p();
        let mut digits: Option<Vec<u64>> = Some(vec![0; m]);
        Ok(std::iter::from_fn(move || {
            let cur = digits.clone()?;
            let mut acc = self.zero();
            for (b, &c) in basis.iter().zip(&cur) {
                if c != 0 {
                    acc = self.add(&acc, &self.scale(b, c));
                }
            }
            let mut next = cur;
            let mut i = 0;
            digits = loop {
                if i == m {
                    break None;
                }
                next[i] += 1;
                if next[i] == p {
                    next[i] = 0;
                    i += 1;
                } else {
                    break Some(next);
                }
            };
            Some(acc)
        }))
    }

    /// Every element in base-p counting order of the coefficient vector.
    pub fn iter_all(&self) -> impl Iterator<Item = Fe> + '_ {
        let d = self.degree();
        let p = self.p() as u32;
        let mut cur: Option<Coeffs> = Some(SmallVec::from_elem(0, d));
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut i = 0;
            loop {
                if i == d {
                    cur = None;
                    break;
                }
                next[i] += 1;
                if next[i] == p {
                    next[i] = 0;
                    i += 1;
                } else {
                    cur = Some(next);
                    break;
                }
            }
            Some(Fe(out))
        })
    }
}

/// Minimal field interface needed by the generic square-root routine.
pub(crate) trait SqrtDomain {
    type E: Clone + PartialEq;
    fn one_el(&self) -> Self::E;
    fn zero_el(&self) -> Self::E;
    fn mul_el(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn pow_el(&self, a: &Self::E, e: &BigUint) -> Self::E;
    /// `(s, t)` with `|K^x| = 2^s t`, `t` odd.
    fn two_adic(&self) -> (u32, BigUint);
    fn non_residue_el(&self) -> Self::E;
}

impl SqrtDomain for ExtField {
    type E = Fe;
    fn one_el(&self) -> Fe {
        self.one()
    }
    fn zero_el(&self) -> Fe {
        self.zero()
    }
    fn mul_el(&self, a: &Fe, b: &Fe) -> Fe {
        self.mul(a, b)
    }
    fn pow_el(&self, a: &Fe, e: &BigUint) -> Fe {
        self.pow(a, e)
    }
    fn two_adic(&self) -> (u32, BigUint) {
        (self.0.two_adic_s, self.0.two_adic_t.clone())
    }
    fn non_residue_el(&self) -> Fe {
        self.0.non_residue.clone()
    }
}

pub(crate) fn tonelli_shanks<D: SqrtDomain>(dom: &D, a: &D::E) -> Option<D::E> {
    let zero = dom.zero_el();
    if *a == zero {
        return Some(zero);
    }
    let one = dom.one_el();
    let (s, t) = dom.two_adic();
    let mut c = dom.pow_el(a, &t);
    // Euler's criterion: a^((Q-1)/2) = c^(2^(s-1))
    let mut probe = c.clone();
    for _ in 0..s.saturating_sub(1) {
        probe = dom.mul_el(&probe, &probe);
    }
    if probe != one {
        return None;
    }
    let mut z = dom.pow_el(&dom.non_residue_el(), &t);
    let mut r = dom.pow_el(a, &((&t + 1u32) >> 1));
    let mut m = s;
    while c != one {
        let mut i = 0;
        let mut sq = c.clone();
        while sq != one {
            sq = dom.mul_el(&sq, &sq);
            i += 1;
        }
        let mut b = z.clone();
        for _ in 0..(m - i - 1) {
            b = dom.mul_el(&b, &b);
        }
        r = dom.mul_el(&r, &b);
        z = dom.mul_el(&b, &b);
        c = dom.mul_el(&c, &z);
        m = i;
    }
    Some(r)
}

/// Dense polynomials over `F_p` as little-endian `u64` vectors.
pub(crate) mod fp_poly {
    use super::*;

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y % p) % p;
            }
        }
        trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = trim(a.to_vec());
        let b = trim(b.to_vec());
        let db = b.len() - 1;
        let lead_inv = mod_inv(b[db], p);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db && !r.is_empty() {
            let k = r.len() - 1 - db;
            let c = r[r.len() - 1] * lead_inv % p;
            q[k] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * bi % p) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let inv = mod_inv(lead, p);
            a.iter_mut().for_each(|c| *c = *c * inv % p);
        }
        a
    }

    /// `s` with `s a ≡ 1 (mod m)`, if `gcd(a, m) = 1`.
    pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (mut r0, mut r1) = (trim(m.to_vec()), rem(a, m, p));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s = sub(&s0, &mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let inv = mod_inv(r0[0], p);
        Some(trim(s0.iter().map(|c| c * inv % p).collect()))
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        rem(&mul(a, b, p), m, p)
    }

    fn pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = rem(&[1], m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin's test for the monic polynomial `X^d + sum low[i] X^i`.
    pub fn is_irreducible_monic(low: &[u64], p: u64) -> bool {
        let d = low.len();
        let mut m: Vec<u64> = low.to_vec();
        m.push(1);
        let x = rem(&[0, 1], &m, p);
        // powers[i] = X^(p^i) mod m
        let mut powers = vec![x.clone()];
        for i in 0..d {
            let next = pow_mod(&powers[i], p, &m, p);
            powers.push(next);
        }
        if powers[d] != x {
            return false;
        }
        prime_factors(d as u64).into_iter().all(|r| {
            let h = sub(&powers[d / r as usize], &x, p);
            gcd(&h, &m, p).len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_one_field() {
        let f = ExtField::new(7, 1).unwrap();
        assert_eq!(f.modulus(), &[0]);
        assert_eq!(f.order(), &BigUint::from(7u32));
    }

    #[test]
    fn degree_two_modulus_has_no_root() {
        let f = ExtField::new(7, 2).unwrap();
        let m = f.modulus();
        for x in 0..7u64 {
            assert_ne!((x * x + m[1] * x + m[0]) % 7, 0);
        }
        assert_eq!(f.order(), &BigUint::from(49u32));
        // -1 is a non-residue mod 7, so X^2 + 1 is the first irreducible candidate
        assert_eq!(m, &[1, 0]);
    }

    #[test]
    fn constructor_errors() {
        assert_eq!(ExtField::new(4, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(ExtField::new(2, 2).unwrap_err(), Error::EvenCharacteristic);
        assert_eq!(ExtField::new(7, 65).unwrap_err(), Error::DegreeTooLarge(65));
    }

    #[test]
    fn inverses() {
        let f = ExtField::new(7, 1).unwrap();
        assert_eq!(f.inv(&f.one()).unwrap(), f.one());
        assert_eq!(f.inv(&f.from_u64(3)).unwrap(), f.from_u64(5));
        assert_eq!(f.inv(&f.zero()).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn square_roots_in_f7() {
        let f = ExtField::new(7, 1).unwrap();
        assert_eq!(f.sqrt(&f.zero()), Some(f.zero()));
        assert_eq!(f.sqrt(&f.one()), Some(f.one()));
        assert_eq!(f.sqrt(&f.from_u64(2)), Some(f.from_u64(3)));
        assert_eq!(f.sqrt(&f.from_u64(3)), None);
    }

    #[test]
    fn square_roots_in_extensions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, d) in [(3, 4), (5, 3), (7, 2), (13, 2), (17, 4)] {
            let f = ExtField::new(p, d).unwrap();
            for _ in 0..50 {
                let x = f.random(&mut rng);
                let sq = f.square(&x);
                let y = f.sqrt(&sq).unwrap();
                assert_eq!(f.square(&y), sq);
                assert!(y <= f.neg(&y));
            }
            // exactly half the nonzero elements are squares
            if f.order() < &BigUint::from(5000u32) {
                let squares = f.iter_all().filter(|x| !f.is_zero(x) && f.sqrt(x).is_some()).count();
                let total = f.iter_all().count() - 1;
                assert_eq!(squares * 2, total);
            }
        }
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, d) in [(3, 5), (7, 2), (31, 3), (101, 1)] {
            let f = ExtField::new(p, d).unwrap();
            for _ in 0..1000 {
                let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                if !f.is_zero(&a) {
                    assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism_of_order_d() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = ExtField::new(5, 4).unwrap();
        for _ in 0..100 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.frobenius(&a), f.pow_u64(&a, 5));
            assert_eq!(f.frobenius(&f.add(&a, &b)), f.add(&f.frobenius(&a), &f.frobenius(&b)));
            assert_eq!(f.frobenius(&f.mul(&a, &b)), f.mul(&f.frobenius(&a), &f.frobenius(&b)));
            assert_eq!(f.frobenius_power(&a, 4), a);
            assert_eq!(f.frobenius_power(&a, 0), a);
        }
        let c = f.from_u64(3);
        assert_eq!(f.frobenius_power(&c, 3), c);
    }

    #[test]
    fn subfield_membership() {
        let f = ExtField::new(3, 4).unwrap();
        let x = f.generator();
        assert!(f.is_in_subfield(&x, 4).unwrap());
        assert!(!f.is_in_subfield(&x, 2).unwrap());
        assert!(f.is_in_subfield(&f.from_u64(2), 1).unwrap());
        assert_eq!(f.is_in_subfield(&x, 3).unwrap_err(), Error::NotADivisor { sub: 3, degree: 4 });
    }

    #[test]
    fn fixed_point_counts_match_subfield_orders() {
        for (p, d) in [(3usize, 6usize), (5, 4), (7, 3), (2 + 1, 4)] {
            let f = ExtField::new(p as u64, d).unwrap();
            let all: Vec<Fe> = f.iter_all().collect();
            for m in divisors(d) {
                let fixed = all.iter().filter(|x| f.is_in_subfield(x, m).unwrap()).count();
                assert_eq!(fixed, p.pow(m as u32));
                let listed = f.subfield_elements(m).unwrap();
                let uniq: std::collections::HashSet<_> = listed.iter().cloned().collect();
                assert_eq!(uniq.len(), fixed);
                assert!(listed.iter().all(|x| f.is_in_subfield(x, m).unwrap()));
            }
        }
    }

    #[test]
    fn random_subfield_elements_stay_in_subfield() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = ExtField::new(7, 6).unwrap();
        for m in [1, 2, 3, 6] {
            for _ in 0..20 {
                let x = f.random_in_subfield(m, &mut rng).unwrap();
                assert!(f.is_in_subfield(&x, m).unwrap());
            }
        }
    }
}
