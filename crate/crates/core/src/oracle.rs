//! Exhaustive enumeration of tiny Jacobians, used as ground truth.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::jacobian::{Jacobian, MumfordDivisor};
use crate::poly::Poly;

/// Largest subfield enumerated.
pub const FIELD_BOUND: u64 = 1_000;

/// Largest Jacobian enumerated.
pub const ORDER_BOUND: usize = 100_000;

/// Every reduced divisor rational over `F_{q^m}`, as elements of the
/// Jacobian's ambient field.
#[derive(Clone, Debug)]
pub struct EnumeratedJacobian {
    pub level: usize,
    pub divisors: Vec<MumfordDivisor>,
}

impl EnumeratedJacobian {
    pub fn order(&self) -> usize {
        self.divisors.len()
    }
}

/// Lists `O`, all `(x - a, b)` and all `(x^2 + a1 x + a0, v1 x + v0)` over
/// `F_{q^m}` by direct search over the coefficients.
pub fn enumerate_jacobian(jac: &Jacobian, m: usize) -> Result<EnumeratedJacobian> {
    let k = jac.field();
    let q = jac.curve().q();
    let size = q.checked_pow(m as u32).filter(|&s| s <= FIELD_BOUND).ok_or_else(|| {
        Error::TooLarge(format!("F_(q^m) with q = {q}, m = {m} exceeds {FIELD_BOUND} elements"))
    })?;
    let elements = k.subfield_elements(m)?;
    debug_assert_eq!(elements.len() as u64, size);
    let f = jac.curve().f_poly(k);

    let mut roots: HashMap<Fe, Vec<Fe>> = HashMap::new();
    for y in &elements {
        roots.entry(k.square(y)).or_default().push(y.clone());
    }
    let no_roots = Vec::new();
    let sqrt_all = |z: &Fe| roots.get(z).unwrap_or(&no_roots);

    let mut divisors = vec![jac.identity()];
    let push = |divisors: &mut Vec<MumfordDivisor>, d: MumfordDivisor| -> Result<()> {
        divisors.push(d);
        if divisors.len() > ORDER_BOUND {
            return Err(Error::TooLarge(format!("more than {ORDER_BOUND} divisors")));
        }
        Ok(())
    };

    for a in &elements {
        for b in sqrt_all(&f.eval(k, a)) {
            let d = MumfordDivisor { u: Poly::linear_root(k, a), v: Poly::constant(k, b.clone()) };
            push(&mut divisors, d)?;
        }
    }

    // per v1 != 0: (v1, v1^2, 1/(2 v1), v1/2)
    let half = k.inv(&k.from_u64(2))?;
    let slopes: Vec<(Fe, Fe, Fe, Fe)> = elements
        .iter()
        .filter(|v1| !k.is_zero(v1))
        .map(|v1| Ok((v1.clone(), k.square(v1), k.mul(&k.inv(v1)?, &half), k.mul(v1, &half))))
        .collect::<Result<_>>()?;
    for a0 in &elements {
        for a1 in &elements {
            let u = Poly::from_coeffs(k, vec![a0.clone(), a1.clone(), k.one()]);
            let r = f.rem(k, &u)?;
            let (f0, f1) = (r.coeff(k, 0), r.coeff(k, 1));
            // v = v1 x + v0 with v^2 = f mod u:
            //   2 v0 v1 - v1^2 a1 = f1,  v0^2 - v1^2 a0 = f0
            if k.is_zero(&f1) {
                for v0 in sqrt_all(&f0) {
                    push(&mut divisors, MumfordDivisor { u: u.clone(), v: Poly::constant(k, v0.clone()) })?;
                }
            }
            for (v1, v1sq, inv_two_v1, half_v1) in &slopes {
                let v0 = k.add(&k.mul(&f1, inv_two_v1), &k.mul(a1, half_v1));
                if k.sub(&k.square(&v0), &k.mul(v1sq, a0)) == f0 {
                    let v = Poly::from_coeffs(k, vec![v0, v1.clone()]);
                    push(&mut divisors, MumfordDivisor { u: u.clone(), v })?;
                }
            }
        }
    }
    Ok(EnumeratedJacobian { level: m, divisors })
}

/// All enumerated divisors killed by `ell`.
pub fn brute_torsion(jac: &Jacobian, ell: u64, m: usize) -> Result<Vec<MumfordDivisor>> {
    Ok(torsion_of(jac, ell, &enumerate_jacobian(jac, m)?))
}

/// The `ell`-torsion of an existing enumeration.
pub fn torsion_of(jac: &Jacobian, ell: u64, all: &EnumeratedJacobian) -> Vec<MumfordDivisor> {
    all.divisors
        .iter()
        .cloned()
        .filter(|d| jac.scalar_mul(ell as i128, d).is_identity())
        .collect()
}

/// Whether the `ell^4` combinations of `points` are exactly `torsion` as a set.
pub fn oracle_span(jac: &Jacobian, ell: u64, points: &[MumfordDivisor; 4], torsion: &[MumfordDivisor]) -> bool {
    let target: HashSet<&MumfordDivisor> = torsion.iter().collect();
    let mut span: HashSet<MumfordDivisor> = HashSet::new();
    span.insert(jac.identity());
    for p in points {
        let mut next = HashSet::with_capacity(span.len() * ell as usize);
        for s in &span {
            let mut acc = s.clone();
            for _ in 0..ell {
                next.insert(acc.clone());
                acc = jac.add(&acc, p);
            }
        }
        span = next;
    }
    span.len() == target.len() && span.iter().all(|d| target.contains(d))
}

/// `log_l` of the size of an elementary abelian `l`-group, if it is one.
pub fn rank_of(size: usize, ell: u64) -> Option<u32> {
    let mut n = size as u64;
    let mut r = 0;
    while n % ell == 0 {
        n /= ell;
        r += 1;
    }
    (n == 1).then_some(r)
}
