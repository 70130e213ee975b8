//! Point counting, Weil polynomials of Frobenius powers, Frobenius
//! eigenvalues modulo `l`, and curve classification.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, lcm, mod_inv, mod_pow, multiplicative_order, reduce_i128, sqrt_mod};
use crate::error::{Error, Result};
use crate::field::ExtField;
use crate::jacobian::Curve;

/// Largest field for which points are counted by enumeration.
pub const COUNT_BOUND: u64 = 10_000_000;

/// Largest embedding degree for which `omega^k` can be an integer.
pub const MAX_INTEGRAL_K: u64 = 12;

/// `P_m(X) = X^4 + s X^3 + t X^2 + s q^m X + q^(2m)`, the characteristic
/// polynomial of the `q^m`-power Frobenius.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilPolynomial {
    pub q: u64,
    pub level: u32,
    pub s: i128,
    pub t: i128,
}

impl WeilPolynomial {
    /// `q^m`
    pub fn q_level(&self) -> i128 {
        (self.q as i128).pow(self.level)
    }

    /// Coefficients from `X^0` up to `X^4`.
    pub fn coeffs(&self) -> [i128; 5] {
        let qm = self.q_level();
        [qm * qm, self.s * qm, self.t, self.s, 1]
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.coeffs().iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    /// `P_m(1)`, the number of `F_{q^m}`-rational points on the Jacobian.
    pub fn at_one(&self) -> i128 {
        self.coeffs().iter().sum()
    }

    /// `2 sigma = s`
    pub fn two_sigma(&self) -> i128 {
        self.s
    }

    /// `4 tau = 8 q^m + s^2 - 4 t`
    pub fn four_tau(&self) -> i128 {
        8 * self.q_level() + self.s * self.s - 4 * self.t
    }

    /// `|s| <= 4 sqrt(q^m)` and `|t| <= 6 q^m`.
    pub fn satisfies_weil_bounds(&self) -> bool {
        let qm = self.q_level();
        self.s * self.s <= 16 * qm && self.t.abs() <= 6 * qm
    }

    /// Coefficients reduced modulo `ell`, from `X^0` up.
    pub fn coeffs_mod(&self, ell: u64) -> [u64; 5] {
        self.coeffs().map(|c| reduce_i128(c, ell))
    }
}

/// `#C(F_{q^m})` for the one-point-at-infinity model, by enumeration of `x`.
pub fn count_curve_points(curve: &Curve, m: u32) -> Result<u64> {
    let q = curve.q();
    let size = q.checked_pow(m).filter(|&s| s <= COUNT_BOUND).ok_or_else(|| {
        Error::TooLarge(format!("q^m = {q}^{m} exceeds the counting bound {COUNT_BOUND}"))
    })?;
    let k = ExtField::new(q, m as usize)?;
    let f = curve.f_poly(&k);
    let mut total = 1u64; // the point at infinity
    for x in k.iter_all() {
        let fx = f.eval(&k, &x);
        total += if k.is_zero(&fx) {
            1
        } else if k.is_square(&fx) {
            2
        } else {
            0
        };
    }
    debug_assert_eq!(k.iter_all().count() as u64, size);
    Ok(total)
}

/// The level-one Weil polynomial from the point counts over `F_q` and `F_{q^2}`.
pub fn weil_polynomial(curve: &Curve) -> Result<WeilPolynomial> {
    let q = curve.q() as i128;
    let n1 = count_curve_points(curve, 1)? as i128;
    let n2 = count_curve_points(curve, 2)? as i128;
    let s = n1 - q - 1;
    let twice_t = n2 - q * q - 1 + s * s;
    if twice_t % 2 != 0 {
        return Err(Error::InternalInconsistency(format!(
            "N2 - q^2 - 1 + s^2 = {twice_t} is odd"
        )));
    }
    Ok(WeilPolynomial { q: curve.q(), level: 1, s, t: twice_t / 2 })
}

/// `P_{mk}` from `P_m`: the characteristic polynomial of `A^k`, `A` the
/// integer companion matrix of `P_m`, by Faddeev–LeVerrier.
pub fn char_poly_power(p: &WeilPolynomial, k: u32) -> Result<WeilPolynomial> {
    if k == 0 {
        return Err(Error::BadInput("exponent must be at least 1".into()));
    }
    let level = p.level.checked_mul(k).ok_or_else(|| Error::Overflow("level".into()))?;
    let bits = 2.0 * level as f64 * (p.q as f64).log2();
    if bits >= 120.0 {
        return Err(Error::Overflow(format!("q^(2k) = {}^{} exceeds 2^120", p.q, 2 * level)));
    }
    let c = p.coeffs();
    let mut a = vec![vec![BigInt::zero(); 4]; 4];
    for i in 1..4 {
        a[i][i - 1] = BigInt::from(1);
    }
    for i in 0..4 {
        a[i][3] = BigInt::from(-c[i]);
    }
    let b = mat_pow(&a, k);

    // Faddeev–LeVerrier: M_j = B M_{j-1} + c_{n-j+1} I, c_{n-j} = -tr(B M_j) / j
    let n = 4;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m_prev = vec![vec![BigInt::zero(); n]; n];
    for j in 1..=n {
        let mut m_j = mat_mul(&b, &m_prev);
        for (i, row) in m_j.iter_mut().enumerate() {
            row[i] += &coeffs[n - j + 1];
        }
        let bm = mat_mul(&b, &m_j);
        let trace: BigInt = (0..n).map(|i| bm[i][i].clone()).sum();
        let (quot, rem) = (-&trace / BigInt::from(j), -&trace % BigInt::from(j));
        if !rem.is_zero() {
            return Err(Error::InternalInconsistency("non-integral Faddeev-LeVerrier step".into()));
        }
        coeffs[n - j] = quot;
        m_prev = m_j;
    }
    let to_i128 = |x: &BigInt| x.to_i128().ok_or_else(|| Error::Overflow("coefficient".into()));
    let out = WeilPolynomial { q: p.q, level, s: to_i128(&coeffs[3])?, t: to_i128(&coeffs[2])? };
    let expect = out.coeffs();
    if to_i128(&coeffs[1])? != expect[1] || to_i128(&coeffs[0])? != expect[0] {
        return Err(Error::InternalInconsistency(
            "power characteristic polynomial lost the functional equation".into(),
        ));
    }
    Ok(out)
}

type Mat = Vec<Vec<BigInt>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
        .collect()
}

fn mat_pow(a: &Mat, mut e: u32) -> Mat {
    let n = a.len();
    let mut acc: Mat = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        base = mat_mul(&base, &base);
        e >>= 1;
    }
    acc
}

fn require_odd_prime(ell: u64) -> Result<()> {
    if ell < 3 || !is_prime(ell) {
        return Err(Error::BadInput(format!("l = {ell} is not an odd prime")));
    }
    Ok(())
}

/// The multiplicative order of `q` modulo `ell`.
pub fn embedding_degree(ell: u64, q: u64) -> Result<u64> {
    require_odd_prime(ell)?;
    multiplicative_order(q, ell).ok_or_else(|| Error::BadInput(format!("{ell} divides q = {q}")))
}

/// Frobenius eigenvalues modulo `ell`, ordered `[1, q, alpha, q/alpha]`
/// with `alpha` the smaller root of the residual quadratic.
pub fn frobenius_eigenvalues_mod_ell(p: &WeilPolynomial, ell: u64) -> Result<[u64; 4]> {
    require_odd_prime(ell)?;
    let qm = reduce_i128(p.q_level(), ell);
    if qm == 0 || qm == 1 {
        return Err(Error::PreconditionFailed(format!("l = {ell} divides q^m (q^m - 1)")));
    }
    if p.at_one().rem_euclid(ell as i128) != 0 {
        return Err(Error::NotDivisible { ell, order: p.at_one() });
    }
    let quad = residual_quadratic(p, ell);
    let (b, c) = (quad[1], quad[0]);
    let disc = (b * b % ell + ell - 4 * c % ell) % ell;
    let r = sqrt_mod(disc, ell).ok_or(Error::DoesNotSplit(ell))?;
    let half = mod_inv(2, ell);
    let root1 = (ell - b + r) % ell * half % ell;
    let root2 = (2 * ell - b - r) % ell * half % ell;
    let (alpha, beta) = (root1.min(root2), root1.max(root2));
    Ok([1, qm, alpha, beta])
}

/// `P mod ell` divided by `(X - 1)(X - q^m)`: `[c, b, 1]` for `X^2 + bX + c`.
fn residual_quadratic(p: &WeilPolynomial, ell: u64) -> [u64; 3] {
    let qm = reduce_i128(p.q_level(), ell);
    let mut poly = p.coeffs_mod(ell).to_vec();
    for root in [1, qm] {
        // synthetic division by (X - root)
        let mut out = vec![0u64; poly.len() - 1];
        let mut carry = 0u64;
        for i in (1..poly.len()).rev() {
            carry = (poly[i] + carry * root) % ell;
            out[i - 1] = carry;
        }
        poly = out;
    }
    [poly[0], poly[1], poly[2]]
}

/// `lcm` of the multiplicative orders of the eigenvalues: the degree `N`
/// with `J[l] ⊆ J(F_{q^N})` when Frobenius is diagonalizable.
pub fn full_torsion_degree(eigenvalues: &[u64; 4], ell: u64) -> Result<u64> {
    eigenvalues.iter().try_fold(1u64, |acc, &lambda| {
        let order = multiplicative_order(lambda, ell).ok_or(Error::ZeroEigenvalue)?;
        Ok(lcm(acc, order))
    })
}

/// Roots in `F_ell` of `P mod ell` with multiplicity, found by trial
/// division. `Some` iff the polynomial splits into linear factors.
pub fn split_roots_mod_ell(p: &WeilPolynomial, ell: u64) -> Option<Vec<u64>> {
    let mut poly = p.coeffs_mod(ell).to_vec();
    let mut roots = Vec::new();
    let mut r = 0u64;
    while poly.len() > 1 && r < ell {
        let value = poly.iter().rev().fold(0u64, |acc, &c| (acc * r + c) % ell);
        if value == 0 {
            let mut out = vec![0u64; poly.len() - 1];
            let mut carry = 0u64;
            for i in (1..poly.len()).rev() {
                carry = (poly[i] + carry * r) % ell;
                out[i - 1] = carry;
            }
            poly = out;
            roots.push(r);
        } else {
            r += 1;
        }
    }
    (roots.len() == 4).then_some(roots)
}

/// Why a curve was placed in or out of the class `C(l, q, k, tau_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Some eigenvalue has `alpha^k != 1`: in class, `l` does not divide `4 tau_k`.
    InClass,
    /// All `alpha^k = 1` and `k <= 12`: in class, `l` divides `4 tau_k`.
    InClassDividing,
    /// All `alpha^k = 1` and `k > 12`.
    LargeEmbeddingDegree,
    /// `P mod l` has an irreducible quadratic factor.
    NonSplit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub q: u64,
    pub ell: u64,
    pub k: u64,
    pub in_class: bool,
    pub ell_divides_4tau: bool,
    pub verdict: Verdict,
    /// `[1, q, alpha, q/alpha]` mod `l`; absent when `P` does not split.
    pub eigenvalues: Option<[u64; 4]>,
    pub full_torsion_degree: Option<u64>,
    pub weil: WeilPolynomial,
}

/// Checks the standing hypotheses on `(q, l)`: `l` an odd prime dividing
/// `P(1)` and neither `q` nor `q - 1`.
pub fn check_preamble(p: &WeilPolynomial, ell: u64) -> Result<()> {
    if ell < 3 || !is_prime(ell) {
        return Err(Error::PreconditionFailed(format!("l = {ell} is not an odd prime")));
    }
    if p.q % ell == 0 {
        return Err(Error::PreconditionFailed(format!("l = {ell} divides q = {}", p.q)));
    }
    if (p.q - 1) % ell == 0 {
        return Err(Error::PreconditionFailed(format!("l = {ell} divides q - 1 = {}", p.q - 1)));
    }
    if p.at_one().rem_euclid(ell as i128) != 0 {
        return Err(Error::PreconditionFailed(format!(
            "l = {ell} does not divide P(1) = {}",
            p.at_one()
        )));
    }
    Ok(())
}

/// Decides membership in `C(l, q, k, tau_k)` and whether `l | 4 tau_k` from
/// the factorization of the Weil polynomial modulo `l`.
pub fn classify_curve(curve: &Curve, ell: u64) -> Result<ClassificationResult> {
    classify_weil(&weil_polynomial(curve)?, ell)
}

pub fn classify_weil(weil: &WeilPolynomial, ell: u64) -> Result<ClassificationResult> {
    check_preamble(weil, ell)?;
    let q = weil.q;
    let k = embedding_degree(ell, q)?;
    let mut result = ClassificationResult {
        q,
        ell,
        k,
        in_class: false,
        ell_divides_4tau: false,
        verdict: Verdict::NonSplit,
        eigenvalues: None,
        full_torsion_degree: None,
        weil: *weil,
    };
    match frobenius_eigenvalues_mod_ell(weil, ell) {
        Ok(eig) => {
            let all_trivial = eig.iter().all(|&a| mod_pow(a, k, ell) == 1);
            result.ell_divides_4tau = all_trivial;
            result.eigenvalues = Some(eig);
            result.full_torsion_degree = Some(full_torsion_degree(&eig, ell)?);
            result.verdict = if !all_trivial {
                Verdict::InClass
            } else if k > MAX_INTEGRAL_K {
                Verdict::LargeEmbeddingDegree
            } else {
                Verdict::InClassDividing
            };
            result.in_class = result.verdict != Verdict::LargeEmbeddingDegree;
        }
        Err(Error::DoesNotSplit(_)) => {
            // alpha lives in F_{l^2}; l | 4 tau_k iff alpha^k = 1 there.
            let quad = residual_quadratic(weil, ell);
            let f2 = ExtField::new(ell, 2)?;
            let b = f2.from_u64(quad[1]);
            let disc = f2.sub(&f2.square(&b), &f2.from_u64(4 * quad[0] % ell));
            let root = f2
                .sqrt(&disc)
                .ok_or_else(|| Error::InternalInconsistency("F_(l^2) is quadratically closed over F_l".into()))?;
            let alpha = f2.div(&f2.sub(&root, &b), &f2.from_u64(2))?;
            result.ell_divides_4tau = f2.is_one(&f2.pow_u64(&alpha, k));
        }
        Err(e) => return Err(e),
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(q: u64, f: &[i64]) -> Curve {
        Curve::new(q, f).unwrap()
    }

    #[test]
    fn point_count_matches_explicit_y_loop() {
        let c = curve(7, &[1, 0, 0, 0, 0, 1]);
        let mut brute = 1u64;
        for x in 0..7u64 {
            let fx = (x.pow(5) + 1) % 7;
            brute += (0..7u64).filter(|y| y * y % 7 == fx).count() as u64;
        }
        assert_eq!(count_curve_points(&c, 1).unwrap(), brute);
    }

    #[test]
    fn point_counts_respect_weil_bound() {
        let curves: Vec<Curve> = [(3u64, [1i64, 1, 0, 0, 0, 1]), (3, [2, 0, 1, 0, 0, 1]), (5, [2, 0, 1, 0, 0, 1]), (7, [1, 0, 0, 0, 0, 1])]
            .iter()
            .filter_map(|(q, f)| Curve::new(*q, f).ok())
            .collect();
        assert!(curves.len() >= 3);
        for c in curves {
            let q = c.q();
            for m in 1..=3u32 {
                let n = count_curve_points(&c, m).unwrap() as f64;
                let qm = (q as f64).powi(m as i32);
                assert!(n >= 1.0);
                assert!((n - qm - 1.0).abs() <= 4.0 * qm.sqrt());
            }
        }
    }

    #[test]
    fn weil_polynomial_predicts_higher_counts() {
        // N_3 = q^3 + 1 - p_3 with p_3 the third power sum of the roots.
        let c = curve(5, &[2, 0, 1, 0, 3, 1]);
        let p = weil_polynomial(&c).unwrap();
        assert!(p.satisfies_weil_bounds());
        let p3 = char_poly_power(&p, 3).unwrap();
        let n3 = count_curve_points(&c, 3).unwrap() as i128;
        assert_eq!(n3, 125 + 1 + p3.s);
    }

    #[test]
    fn roots_have_absolute_value_sqrt_q() {
        let c = curve(11, &[3, 1, 0, 4, 0, 1]);
        let p = weil_polynomial(&c).unwrap();
        // Durand–Kerner on the quartic
        let coeffs: Vec<f64> = p.coeffs().iter().map(|&x| x as f64).collect();
        let eval = |z: (f64, f64)| {
            coeffs.iter().rev().fold((0.0, 0.0), |acc: (f64, f64), &c| {
                (acc.0 * z.0 - acc.1 * z.1 + c, acc.0 * z.1 + acc.1 * z.0)
            })
        };
        let mut roots: Vec<(f64, f64)> = (0..4).map(|i| {
            let a = 0.4 + i as f64 * 1.3;
            (3.0 * a.cos(), 3.0 * a.sin())
        }).collect();
        for _ in 0..500 {
            for i in 0..4 {
                let mut den = (1.0, 0.0);
                for j in 0..4 {
                    if i != j {
                        let d = (roots[i].0 - roots[j].0, roots[i].1 - roots[j].1);
                        den = (den.0 * d.0 - den.1 * d.1, den.0 * d.1 + den.1 * d.0);
                    }
                }
                let num = eval(roots[i]);
                let norm = den.0 * den.0 + den.1 * den.1;
                let step = ((num.0 * den.0 + num.1 * den.1) / norm, (num.1 * den.0 - num.0 * den.1) / norm);
                roots[i] = (roots[i].0 - step.0, roots[i].1 - step.1);
            }
        }
        for r in roots {
            assert!(((r.0 * r.0 + r.1 * r.1).sqrt() - 11f64.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn char_poly_power_identity_and_errors() {
        let p = WeilPolynomial { q: 7, level: 1, s: 2, t: 5 };
        assert_eq!(char_poly_power(&p, 1).unwrap(), p);
        assert!(char_poly_power(&p, 0).is_err());
        assert!(matches!(char_poly_power(&p, 30), Err(Error::Overflow(_))));
    }

    #[test]
    fn embedding_degrees() {
        assert_eq!(embedding_degree(7, 2).unwrap(), 3);
        assert_eq!(embedding_degree(5, 11).unwrap(), 1);
        assert!(embedding_degree(7, 14).is_err());
        for ell in [3u64, 5, 7, 11, 13] {
            for q in [3u64, 5, 7, 17, 31] {
                if q % ell != 0 {
                    assert_eq!((ell - 1) % embedding_degree(ell, q).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn full_torsion_degree_cases() {
        assert_eq!(full_torsion_degree(&[1, 1, 1, 1], 7).unwrap(), 1);
        assert_eq!(full_torsion_degree(&[1, 6, 2, 4], 7).unwrap(), 6);
        assert_eq!(full_torsion_degree(&[1, 0, 2, 4], 7).unwrap_err(), Error::ZeroEigenvalue);
    }

    #[test]
    fn split_detection_by_trial_division() {
        // X^4 + 1 has no roots mod 5 and splits mod 17
        let p = WeilPolynomial { q: 1, level: 1, s: 0, t: 0 };
        assert!(split_roots_mod_ell(&p, 5).is_none());
        let mut roots = split_roots_mod_ell(&p, 17).unwrap();
        roots.sort();
        assert_eq!(roots, vec![2, 8, 9, 15]);
    }
}
