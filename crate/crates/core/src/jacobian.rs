//! Genus-two curves `y^2 = f(x)` (deg f = 5, monic) and their Jacobians in
//! Mumford representation, with Cantor's composition and reduction.

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{fp_poly, tonelli_shanks, ExtField, Fe, SqrtDomain};
use crate::poly::Poly;

/// Attempt budget for the random divisor sampler.
pub const SAMPLER_ATTEMPTS: usize = 10_000;

/// A genus-two curve `y^2 = f(x)` over the prime field `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Curve {
    q: u64,
    /// Little-endian, `f[5] = 1`.
    f: [u64; 6],
}

impl Curve {
    /// Validates `q` and the coefficients of `f` (little-endian, reduced mod q).
    pub fn new(q: u64, coeffs: &[i64]) -> Result<Self> {
        let base = crate::field::PrimeField::new(q)?;
        let reduced: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(base.p() as i64) as u64).collect();
        let trimmed = fp_poly::trim(reduced);
        if trimmed.len() != 6 || trimmed[5] != 1 {
            return Err(Error::BadDegree);
        }
        let deriv: Vec<u64> = trimmed.iter().enumerate().skip(1).map(|(i, &c)| c * i as u64 % q).collect();
        if fp_poly::gcd(&trimmed, &deriv, q).len() != 1 {
            return Err(Error::Singular);
        }
        let mut f = [0u64; 6];
        f.copy_from_slice(&trimmed);
        Ok(Curve { q, f })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn f(&self) -> &[u64; 6] {
        &self.f
    }

    /// `f` lifted into the polynomial ring over `k`.
    pub fn f_poly(&self, k: &ExtField) -> Poly {
        Poly::from_coeffs(k, self.f.iter().map(|&c| k.from_u64(c)).collect())
    }
}

/// A reduced divisor class `(u, v)`: `u` monic, `deg v < deg u <= 2`, `u | v^2 - f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MumfordDivisor {
    pub u: Poly,
    pub v: Poly,
}

impl MumfordDivisor {
    pub fn weight(&self) -> usize {
        self.u.degree().max(0) as usize
    }

    pub fn is_identity(&self) -> bool {
        self.u.degree() == 0
    }
}

/// The function `d(x) * prod (y - v_i(x)) / w_i(x)` whose divisor is
/// `A + B - (A+B)` for the reduced divisors combined by one Cantor step.
#[derive(Clone, Debug, Default)]
pub struct ChordFunction {
    pub gcd: Option<Poly>,
    /// `(v, w)` pairs from each reduction step.
    pub reductions: Vec<(Poly, Poly)>,
}

impl ChordFunction {
    /// Value of the function over the points of the effective divisor `e`,
    /// returned as `(numerator, denominator)`. Fails with
    /// [`Error::SharedSupport`] if any factor vanishes there.
    pub fn eval_effective(&self, k: &ExtField, e: &MumfordDivisor) -> Result<(Fe, Fe)> {
        let mut num = k.one();
        let mut den = k.one();
        let nonzero = |x: Fe| if k.is_zero(&x) { Err(Error::SharedSupport) } else { Ok(x) };
        if let Some(d) = &self.gcd {
            num = k.mul(&num, &nonzero(d.norm_over(k, &e.u)?)?);
        }
        for (v, w) in &self.reductions {
            let line = e.v.sub(k, v);
            num = k.mul(&num, &nonzero(line.norm_over(k, &e.u)?)?);
            den = k.mul(&den, &nonzero(w.norm_over(k, &e.u)?)?);
        }
        Ok((num, den))
    }
}

/// The Jacobian of a curve with all coordinates in one ambient field `F_{q^N}`.
#[derive(Clone, Debug)]
pub struct Jacobian {
    curve: Curve,
    field: ExtField,
    f: Poly,
}

impl Jacobian {
    pub fn new(curve: Curve, field: ExtField) -> Result<Self> {
        if field.p() != curve.q() {
            return Err(Error::BadInput(format!(
                "field characteristic {} differs from curve field {}",
                field.p(),
                curve.q()
            )));
        }
        let f = curve.f_poly(&field);
        Ok(Jacobian { curve, field, f })
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn ambient_degree(&self) -> usize {
        self.field.degree()
    }

    pub fn identity(&self) -> MumfordDivisor {
        MumfordDivisor { u: Poly::one(&self.field), v: Poly::zero() }
    }

    /// The weight-one divisor of the affine point `(x, y)`; checks the point is on the curve.
    pub fn point(&self, x: &Fe, y: &Fe) -> Result<MumfordDivisor> {
        let k = &self.field;
        if k.square(y) != self.f.eval(k, x) {
            return Err(Error::BadInput("point is not on the curve".into()));
        }
        Ok(MumfordDivisor { u: Poly::linear_root(k, x), v: Poly::constant(k, y.clone()) })
    }

    /// Checks every Mumford invariant.
    pub fn is_valid(&self, d: &MumfordDivisor) -> bool {
        let k = &self.field;
        if !d.u.is_monic(k) || d.u.degree() > 2 || d.v.degree() >= d.u.degree() {
            return false;
        }
        let r = d.v.mul(k, &d.v).sub(k, &self.f);
        matches!(r.rem(k, &d.u), Ok(rem) if rem.is_zero())
    }

    /// Builds a divisor from explicit polynomials, validating the invariants.
    pub fn divisor(&self, u: Poly, v: Poly) -> Result<MumfordDivisor> {
        let d = MumfordDivisor { u, v };
        if !self.is_valid(&d) {
            return Err(Error::BadInput("polynomials violate the Mumford invariants".into()));
        }
        Ok(d)
    }

    pub fn neg(&self, d: &MumfordDivisor) -> MumfordDivisor {
        MumfordDivisor { u: d.u.clone(), v: d.v.neg(&self.field) }
    }

    pub fn add(&self, a: &MumfordDivisor, b: &MumfordDivisor) -> MumfordDivisor {
        self.add_with_function(a, b).0
    }

    pub fn sub(&self, a: &MumfordDivisor, b: &MumfordDivisor) -> MumfordDivisor {
        self.add(a, &self.neg(b))
    }

    /// Cantor composition and reduction, also returning the function that
    /// accounts for the difference between the formal sum and its reduction.
    pub fn add_with_function(
        &self,
        a: &MumfordDivisor,
        b: &MumfordDivisor,
    ) -> (MumfordDivisor, ChordFunction) {
        self.cantor(a, b).expect("Cantor arithmetic on valid divisors cannot fail")
    }

    fn cantor(&self, a: &MumfordDivisor, b: &MumfordDivisor) -> Result<(MumfordDivisor, ChordFunction)> {
        let k = &self.field;
        let mut func = ChordFunction::default();

        // composition
        let (d0, e1, e2) = Poly::xgcd(k, &a.u, &b.u)?;
        let vsum = a.v.add(k, &b.v);
        let (d, c1, c2) = Poly::xgcd(k, &d0, &vsum)?;
        let s1 = c1.mul(k, &e1);
        let s2 = c1.mul(k, &e2);
        let s3 = c2;
        let mut u = a.u.mul(k, &b.u).div_exact(k, &d.mul(k, &d))?;
        let numer = s1
            .mul(k, &a.u)
            .mul(k, &b.v)
            .add(k, &s2.mul(k, &b.u).mul(k, &a.v))
            .add(k, &s3.mul(k, &a.v.mul(k, &b.v).add(k, &self.f)));
        let mut v = numer.div_exact(k, &d)?.rem(k, &u)?;
        if d.degree() > 0 {
            func.gcd = Some(d);
        }

        // reduction
        while u.degree() > 2 {
            let w = self.f.sub(k, &v.mul(k, &v)).div_exact(k, &u)?.monic(k)?;
            let v_next = v.neg(k).rem(k, &w)?;
            func.reductions.push((v, w.clone()));
            u = w;
            v = v_next;
        }
        Ok((MumfordDivisor { u, v }, func))
    }

    pub fn double(&self, d: &MumfordDivisor) -> MumfordDivisor {
        self.add(d, d)
    }

    /// `n * d` by double-and-add.
    pub fn scalar_mul(&self, n: i128, d: &MumfordDivisor) -> MumfordDivisor {
        let base = if n < 0 { self.neg(d) } else { d.clone() };
        let n = n.unsigned_abs();
        let mut acc = self.identity();
        for i in (0..128 - n.leading_zeros()).rev() {
            acc = self.double(&acc);
            if (n >> i) & 1 == 1 {
                acc = self.add(&acc, &base);
            }
        }
        acc
    }

    pub fn scalar_mul_big(&self, n: &BigUint, d: &MumfordDivisor) -> MumfordDivisor {
        let mut acc = self.identity();
        for i in (0..n.bits()).rev() {
            acc = self.double(&acc);
            if n.bit(i) {
                acc = self.add(&acc, d);
            }
        }
        acc
    }

    /// Applies `x -> x^(q^m)` to every coefficient.
    pub fn frobenius(&self, d: &MumfordDivisor, m: usize) -> MumfordDivisor {
        let k = &self.field;
        MumfordDivisor { u: d.u.frobenius(k, m), v: d.v.frobenius(k, m) }
    }

    /// Whether `d` is fixed by the `q^m`-power Frobenius.
    pub fn is_rational_over(&self, d: &MumfordDivisor, m: usize) -> Result<bool> {
        let n = self.ambient_degree();
        if m == 0 || n % m != 0 {
            return Err(Error::NotADivisor { sub: m, degree: n });
        }
        Ok(self.frobenius(d, m) == *d)
    }

    /// The smallest `m | N` with `d` rational over `F_{q^m}`.
    pub fn field_level(&self, d: &MumfordDivisor) -> usize {
        crate::arith::divisors(self.ambient_degree())
            .into_iter()
            .find(|&m| self.frobenius(d, m) == *d)
            .unwrap_or(self.ambient_degree())
    }

    /// Square root of `z` inside the subfield `F_{q^m}`, if one exists there.
    fn sqrt_in_subfield(&self, z: &Fe, m: usize) -> Option<Fe> {
        let k = &self.field;
        let y = k.sqrt(z)?;
        if k.frobenius_power(&y, m) == y {
            Some(y)
        } else {
            None
        }
    }

    /// All `v` (deg <= 1, coefficients in `F_{q^m}`) with `u | v^2 - f`, for
    /// a monic quadratic `u` over `F_{q^m}`.
    pub fn weight_two_solutions(&self, u: &Poly, m: usize) -> Result<Vec<Poly>> {
        let k = &self.field;
        if u.degree() != 2 || !u.is_monic(k) {
            return Err(Error::BadInput("expected a monic quadratic".into()));
        }
        let (a0, a1) = (u.coeff(k, 0), u.coeff(k, 1));
        let two_inv = k.inv(&k.from_u64(2))?;
        let disc = k.sub(&k.square(&a1), &k.scale(&a0, 4));
        let mut out = Vec::new();
        if k.is_zero(&disc) {
            let a = k.neg(&k.mul(&a1, &two_inv));
            let fa = self.f.eval(k, &a);
            if k.is_zero(&fa) {
                return Ok(out);
            }
            if let Some(b) = self.sqrt_in_subfield(&fa, m) {
                for b in [b.clone(), k.neg(&b)] {
                    let slope = k.div(&self.f.derivative(k).eval(k, &a), &k.scale(&b, 2))?;
                    let v = Poly::from_coeffs(k, vec![k.sub(&b, &k.mul(&slope, &a)), slope]);
                    out.push(v);
                }
            }
        } else if let Some(delta) = self.sqrt_in_subfield(&disc, m) {
            let r1 = k.mul(&k.sub(&delta, &a1), &two_inv);
            let r2 = k.mul(&k.sub(&k.neg(&delta), &a1), &two_inv);
            let ys = |r: &Fe| -> Vec<Fe> {
                let fr = self.f.eval(k, r);
                if k.is_zero(&fr) {
                    return vec![k.zero()];
                }
                match self.sqrt_in_subfield(&fr, m) {
                    Some(y) => vec![y.clone(), k.neg(&y)],
                    None => Vec::new(),
                }
            };
            let inv_dx = k.inv(&k.sub(&r2, &r1))?;
            for y1 in ys(&r1) {
                for y2 in ys(&r2) {
                    let slope = k.mul(&k.sub(&y2, &y1), &inv_dx);
                    let v = Poly::from_coeffs(k, vec![k.sub(&y1, &k.mul(&slope, &r1)), slope]);
                    out.push(v);
                }
            }
        } else {
            let target = self.f.rem(k, u)?;
            let quad = QuadraticField::new(k, &a0, &a1, m)?;
            let t = (target.coeff(k, 0), target.coeff(k, 1));
            if let Some(w) = tonelli_shanks(&quad, &t) {
                let v = Poly::from_coeffs(k, vec![w.0.clone(), w.1.clone()]);
                if v.is_zero() {
                    out.push(v);
                } else {
                    out.push(v.neg(k));
                    out.push(v);
                }
            }
        }
        Ok(out)
    }

    /// A random reduced divisor of weight two, rational over `F_{q^m}`: `u`
    /// uniform among monic quadratics admitting a solution, then `v` uniform
    /// among the solutions.
    pub fn random_weight_two<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Result<MumfordDivisor> {
        let k = &self.field;
        for _ in 0..SAMPLER_ATTEMPTS {
            let a0 = k.random_in_subfield(m, rng)?;
            let a1 = k.random_in_subfield(m, rng)?;
            let u = Poly::from_coeffs(k, vec![a0, a1, k.one()]);
            let sols = self.weight_two_solutions(&u, m)?;
            if sols.is_empty() {
                continue;
            }
            let v = sols[rng.gen_range(0..sols.len())].clone();
            return Ok(MumfordDivisor { u, v });
        }
        Err(Error::RngExhausted)
    }

    /// A random divisor class rational over `F_{q^m}`, formed as the reduced
    /// sum of two independent random weight-two divisors. Every class of
    /// `J(F_{q^m})` has positive probability.
    pub fn random_divisor<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Result<MumfordDivisor> {
        let a = self.random_weight_two(m, rng)?;
        let b = self.random_weight_two(m, rng)?;
        Ok(self.add(&a, &b))
    }

    /// A uniformly random affine point with both coordinates in `F_{q^m}`.
    pub fn random_point<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Result<(Fe, Fe)> {
        let k = &self.field;
        for _ in 0..SAMPLER_ATTEMPTS {
            let x = k.random_in_subfield(m, rng)?;
            let fx = self.f.eval(k, &x);
            if let Some(y) = self.sqrt_in_subfield(&fx, m) {
                let y = if rng.gen::<bool>() { k.neg(&y) } else { y };
                return Ok((x, y));
            }
        }
        Err(Error::RngExhausted)
    }
}

/// `F_{q^m}[x]/(x^2 + a1 x + a0)` for an irreducible quadratic; elements are
/// pairs `(c0, c1)` meaning `c0 + c1 x`.
struct QuadraticField<'a> {
    k: &'a ExtField,
    a0: Fe,
    a1: Fe,
    s: u32,
    t: BigUint,
    non_residue: (Fe, Fe),
}

impl<'a> QuadraticField<'a> {
    fn new(k: &'a ExtField, a0: &Fe, a1: &Fe, m: usize) -> Result<Self> {
        let q = BigUint::from(k.p()).pow(m as u32);
        let mut t = &q * &q - 1u32;
        let mut s = 0;
        while !t.bit(0) {
            t >>= 1;
            s += 1;
        }
        let mut field = QuadraticField {
            k,
            a0: a0.clone(),
            a1: a1.clone(),
            s,
            t,
            non_residue: (k.zero(), k.zero()),
        };
        let half = (&q * &q - 1u32) >> 1;
        let minus_one = (k.neg(&k.one()), k.zero());
        let nr = k
            .subfield_iter(m)?
            .map(|c| (c, k.one()))
            .find(|z| field.pow_el(z, &half) == minus_one)
            .ok_or_else(|| Error::InternalInconsistency("no non-residue in quadratic field".into()))?;
        field.non_residue = nr;
        Ok(field)
    }
}

impl SqrtDomain for QuadraticField<'_> {
    type E = (Fe, Fe);

    fn one_el(&self) -> (Fe, Fe) {
        (self.k.one(), self.k.zero())
    }

    fn zero_el(&self) -> (Fe, Fe) {
        (self.k.zero(), self.k.zero())
    }

    fn mul_el(&self, a: &(Fe, Fe), b: &(Fe, Fe)) -> (Fe, Fe) {
        let k = self.k;
        let c0 = k.mul(&a.0, &b.0);
        let c1 = k.add(&k.mul(&a.0, &b.1), &k.mul(&a.1, &b.0));
        let c2 = k.mul(&a.1, &b.1);
        // x^2 = -a1 x - a0
        (k.sub(&c0, &k.mul(&c2, &self.a0)), k.sub(&c1, &k.mul(&c2, &self.a1)))
    }

    fn pow_el(&self, a: &(Fe, Fe), e: &BigUint) -> (Fe, Fe) {
        let mut acc = self.one_el();
        for i in (0..e.bits()).rev() {
            acc = self.mul_el(&acc, &acc);
            if e.bit(i) {
                acc = self.mul_el(&acc, a);
            }
        }
        acc
    }

    fn two_adic(&self) -> (u32, BigUint) {
        (self.s, self.t.clone())
    }

    fn non_residue_el(&self) -> (Fe, Fe) {
        self.non_residue.clone()
    }
}
