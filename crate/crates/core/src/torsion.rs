//! Sampling in `J[l]`, the generator-finding algorithms for both branches of
//! the classification, and the Frobenius / pairing matrix checks.

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{mod_inv, split_power};
use crate::error::{Error, Result};
use crate::field::ExtField;
use crate::jacobian::{Curve, Jacobian, MumfordDivisor};
use crate::pairing::PairingContext;
use crate::zeta::{char_poly_power, classify_weil, weil_polynomial, ClassificationResult, WeilPolynomial};

/// Retry cap for the torsion samplers.
pub const SAMPLE_RETRIES: usize = 1_000;

/// Consecutive annihilated projections after which the rational
/// `l`-torsion is declared non-cyclic.
pub const ANNIHILATION_LIMIT: usize = 20;

/// Smallest ambient field order; keeps chance collisions in the pairing rare.
pub const MIN_AMBIENT_ORDER: f64 = 4096.0;

/// Sylow samples drawn by [`TorsionContext::frobenius_is_diagonalizable`].
pub const DIAGONALIZABILITY_SAMPLES: usize = 16;

pub type Matrix4 = [[u64; 4]; 4];

/// Which side of the `l | 4 tau_k` dichotomy a curve falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `l` does not divide `4 tau_k`.
    NotDividing,
    /// `l` divides `4 tau_k`.
    Dividing,
    /// Not in the class; no generator search applies.
    OutOfClass,
}

/// A point of `J[l]` with the smallest level it is rational over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPoint {
    pub divisor: MumfordDivisor,
    pub field_level: usize,
}

/// Four generators of `J[l]` in a Frobenius eigenbasis, with the raw output
/// of the sampling algorithm and the verification matrices.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub points: [MumfordDivisor; 4],
    pub raw: [MumfordDivisor; 4],
    pub frobenius_matrix: Matrix4,
    pub pairing_exponents: Matrix4,
    pub pfaffian: u64,
    /// Which branch produced `raw`.
    pub branch: Branch,
}

/// Outcome of the Pfaffian test on four points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEvidence {
    pub pairing_exponents: Matrix4,
    pub pfaffian: u64,
    pub is_basis: bool,
}

/// Smallest multiple `A` of `n` with `q^A >= MIN_AMBIENT_ORDER`.
pub fn ambient_degree(q: u64, n: usize) -> Result<usize> {
    let mut a = n;
    while (q as f64).powi(a as i32) < MIN_AMBIENT_ORDER {
        a += n;
    }
    if a > crate::field::MAX_DEGREE {
        return Err(Error::TooLarge(format!(
            "ambient degree {a} for full torsion degree {n} exceeds {}",
            crate::field::MAX_DEGREE
        )));
    }
    Ok(a)
}

/// Curve, prime and classification data shared by every torsion operation.
#[derive(Clone, Debug)]
pub struct TorsionContext {
    class: ClassificationResult,
    eigenvalues: [u64; 4],
    full_degree: usize,
    pairing: PairingContext,
}

impl TorsionContext {
    /// Classifies `(curve, ell)` and builds the ambient field from the
    /// default policy.
    pub fn new(curve: &Curve, ell: u64) -> Result<Self> {
        let weil = weil_polynomial(curve)?;
        let class = classify_weil(&weil, ell)?;
        let n = class.full_torsion_degree.ok_or_else(|| not_in_class(&class))? as usize;
        Self::with_ambient(curve, class, ambient_degree(curve.q(), n)?)
    }

    /// As [`TorsionContext::new`] with an explicit ambient degree, which must
    /// be a multiple of the full torsion degree.
    pub fn with_ambient(curve: &Curve, class: ClassificationResult, ambient: usize) -> Result<Self> {
        if !class.in_class {
            return Err(not_in_class(&class));
        }
        let eigenvalues = class.eigenvalues.ok_or_else(|| not_in_class(&class))?;
        let full_degree = class.full_torsion_degree.ok_or_else(|| not_in_class(&class))? as usize;
        if ambient % full_degree != 0 {
            return Err(Error::NotADivisor { sub: full_degree, degree: ambient });
        }
        let field = ExtField::new(curve.q(), ambient)?;
        let jac = Jacobian::new(curve.clone(), field)?;
        let pairing = PairingContext::new(jac, class.ell)?;
        Ok(TorsionContext { class, eigenvalues, full_degree, pairing })
    }

    pub fn classification(&self) -> &ClassificationResult {
        &self.class
    }

    pub fn weil(&self) -> &WeilPolynomial {
        &self.class.weil
    }

    pub fn ell(&self) -> u64 {
        self.class.ell
    }

    pub fn q(&self) -> u64 {
        self.class.q
    }

    pub fn k(&self) -> usize {
        self.class.k as usize
    }

    pub fn eigenvalues(&self) -> [u64; 4] {
        self.eigenvalues
    }

    pub fn full_degree(&self) -> usize {
        self.full_degree
    }

    pub fn jacobian(&self) -> &Jacobian {
        self.pairing.jacobian()
    }

    pub fn pairing(&self) -> &PairingContext {
        &self.pairing
    }

    /// `|J(F_{q^m})| = P_m(1)`.
    pub fn group_order(&self, m: usize) -> Result<u128> {
        let pm = char_poly_power(self.weil(), m as u32)?;
        u128::try_from(pm.at_one()).map_err(|_| Error::InternalInconsistency("negative group order".into()))
    }

    /// A point of order exactly `l` rational over `F_{q^m}`: a random
    /// rational class times the prime-to-`l` cofactor, then descended.
    pub fn sample_torsion<R: Rng + ?Sized>(&self, m: usize, rng: &mut R) -> Result<TorsionPoint> {
        let jac = self.jacobian();
        let ell = self.ell();
        let (e, cofactor) = split_power(self.group_order(m)?, ell);
        if e == 0 {
            return Err(Error::PreconditionFailed(format!("l = {ell} does not divide P_{m}(1)")));
        }
        let cofactor = BigUint::from(cofactor);
        for _ in 0..SAMPLE_RETRIES {
            let d = jac.random_divisor(m, rng)?;
            let mut z = jac.scalar_mul_big(&cofactor, &d);
            if z.is_identity() {
                continue;
            }
            for _ in 0..e {
                let next = jac.scalar_mul(ell as i128, &z);
                if next.is_identity() {
                    let field_level = jac.field_level(&z);
                    return Ok(TorsionPoint { divisor: z, field_level });
                }
                z = next;
            }
            return Err(Error::InternalInconsistency("l-part of the group order is wrong".into()));
        }
        Err(Error::RetriesExhausted(format!("no point of order {ell} over level {m}")))
    }

    /// Whether `phi` acts diagonally on `J[l]`. Distinct eigenvalues settle
    /// it; with `alpha = q/alpha` the `l`-Sylow of `J(F_{q^N})` is sampled
    /// and any element of order `l^2` rules it out.
    pub fn frobenius_is_diagonalizable<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<bool> {
        let eig = self.eigenvalues;
        let mut sorted = eig;
        sorted.sort_unstable();
        if sorted.windows(2).all(|w| w[0] != w[1]) {
            return Ok(true);
        }
        let jac = self.jacobian();
        let ell = self.ell();
        let (_, cofactor) = split_power(self.group_order(self.full_degree)?, ell);
        let cofactor = BigUint::from(cofactor);
        for _ in 0..DIAGONALIZABILITY_SAMPLES {
            let d = jac.random_divisor(self.full_degree, rng)?;
            let z = jac.scalar_mul_big(&cofactor, &d);
            if !jac.scalar_mul(ell as i128, &z).is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A point of `J(F_{q^m})[l]` not rational over `F_{q^exclude}`.
    pub fn sample_outside<R: Rng + ?Sized>(
        &self,
        m: usize,
        exclude: usize,
        rng: &mut R,
    ) -> Result<TorsionPoint> {
        for _ in 0..SAMPLE_RETRIES {
            let x = self.sample_torsion(m, rng)?;
            if !self.jacobian().is_rational_over(&x.divisor, exclude)? {
                return Ok(x);
            }
        }
        Err(Error::RetriesExhausted(format!(
            "every sampled point of level {m} was rational over level {exclude}"
        )))
    }

    fn phi(&self, d: &MumfordDivisor) -> MumfordDivisor {
        self.jacobian().frobenius(d, 1)
    }

    /// `c_0 x + c_1 phi(x) + ... ` for coefficients mod `l`.
    pub fn apply_phi_poly(&self, coeffs: &[u64], x: &MumfordDivisor) -> MumfordDivisor {
        let jac = self.jacobian();
        let mut acc = jac.identity();
        for &c in coeffs.iter().rev() {
            acc = self.phi(&acc);
            acc = jac.add(&acc, &jac.scalar_mul(c as i128, x));
        }
        acc
    }

    fn pair<R: Rng + ?Sized>(&self, a: &MumfordDivisor, b: &MumfordDivisor, rng: &mut R) -> Result<u64> {
        self.pairing.pairing_exponent(a, b, rng)
    }

    /// The branch with `l` not dividing `4 tau_k`.
    pub fn generators_not_dividing<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<GeneratorSet> {
        if self.class.ell_divides_4tau {
            return Err(Error::PreconditionFailed("l divides 4 tau_k: use the other branch".into()));
        }
        if !self.frobenius_is_diagonalizable(rng)? {
            return Err(Error::NotDiagonalizable);
        }
        let jac = self.jacobian();
        let (k, big_n) = (self.k(), self.full_degree);
        let x1 = self.sample_torsion(1, rng)?.divisor;
        let x2p = self.sample_outside(k, 1, rng)?.divisor;
        let x2 = jac.sub(&x2p, &self.phi(&x2p));
        let x3p = self.sample_outside(big_n, k, rng)?.divisor;
        let x3 = jac.sub(&x3p, &jac.frobenius(&x3p, k));
        if x3.is_identity() {
            return Err(Error::InternalInconsistency("phi^k has eigenvalue 1 off the level-k torsion".into()));
        }
        let phi_x3 = self.phi(&x3);
        let raw = if self.pair(&x3, &phi_x3, rng)? != 0 {
            [x1, x2, x3, phi_x3]
        } else {
            let mut found = None;
            for _ in 0..n {
                let x4 = self.sample_outside(big_n, k, rng)?.divisor;
                if self.pair(&x3, &x4, rng)? != 0 {
                    found = Some(x4);
                    break;
                }
            }
            let x4 = found.ok_or(Error::Failure)?;
            [x1, x2, x3, x4]
        };
        self.finish(raw, Branch::NotDividing, rng)
    }

    /// The branch with `l | 4 tau_k`.
    pub fn generators_dividing<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<GeneratorSet> {
        if !self.class.ell_divides_4tau {
            return Err(Error::PreconditionFailed("l does not divide 4 tau_k: use the other branch".into()));
        }
        if !self.frobenius_is_diagonalizable(rng)? {
            return Err(Error::NotDiagonalizable);
        }
        let q = self.q() % self.ell();
        let ell = self.ell();
        // (q - phi)(1 - phi) = q - (q + 1) phi + phi^2
        let projector = [q, (2 * ell - q - 1) % ell, 1];
        let big_n = self.full_degree;
        let x1 = self.sample_torsion(1, rng)?.divisor;

        let mut annihilated = 0;
        let mut project = |rng: &mut R| -> Result<MumfordDivisor> {
            loop {
                let y = self.sample_torsion(big_n, rng)?.divisor;
                let x = self.apply_phi_poly(&projector, &y);
                if !x.is_identity() {
                    annihilated = 0;
                    return Ok(x);
                }
                annihilated += 1;
                if annihilated >= ANNIHILATION_LIMIT {
                    return Err(Error::NonCyclicRational(annihilated));
                }
            }
        };
        let mut plane = None;
        for _ in 0..n {
            let x3 = project(rng)?;
            let x4 = project(rng)?;
            if self.pair(&x3, &x4, rng)? != 0 {
                plane = Some((x3, x4));
                break;
            }
        }
        let (x3, x4) = plane.ok_or(Error::Failure)?;

        let mut second = None;
        for _ in 0..n {
            let x2 = self.sample_torsion(big_n, rng)?.divisor;
            if self.pair(&x1, &x2, rng)? != 0 {
                second = Some(x2);
                break;
            }
        }
        let x2 = second.ok_or(Error::Failure)?;
        self.finish([x1, x2, x3, x4], Branch::Dividing, rng)
    }

    /// Dispatches on whether `l | 4 tau_k`.
    pub fn find_generators<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<GeneratorSet> {
        if self.class.ell_divides_4tau {
            self.generators_dividing(n, rng)
        } else {
            self.generators_not_dividing(n, rng)
        }
    }

    fn finish<R: Rng + ?Sized>(&self, raw: [MumfordDivisor; 4], branch: Branch, rng: &mut R) -> Result<GeneratorSet> {
        let raw_evidence = self.verify_basis(&raw, rng)?;
        if !raw_evidence.is_basis {
            return Err(Error::InternalInconsistency("algorithm output is not a basis".into()));
        }
        let points = self.eigenbasis(&raw, rng)?;
        let evidence = self.verify_basis(&points, rng)?;
        let frobenius_matrix = self.frobenius_matrix(&points, &evidence.pairing_exponents, rng)?;
        let set = GeneratorSet {
            points,
            raw,
            frobenius_matrix,
            pairing_exponents: evidence.pairing_exponents,
            pfaffian: evidence.pfaffian,
            branch,
        };
        self.check_generator_set(&set)?;
        Ok(set)
    }

    /// Rewrites a basis of `J[l]` as Frobenius eigenvectors ordered like
    /// `[1, q, alpha, q/alpha]`. When `alpha = q/alpha` the last two are
    /// chosen to pair nontrivially.
    pub fn eigenbasis<R: Rng + ?Sized>(&self, raw: &[MumfordDivisor; 4], rng: &mut R) -> Result<[MumfordDivisor; 4]> {
        let ell = self.ell();
        let eig = self.eigenvalues;
        if eig[2..].iter().any(|&a| a == eig[0] || a == eig[1]) {
            return Err(Error::NonCyclicRational(0));
        }
        let mut distinct = eig.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let projector = |lambda: u64| -> Vec<u64> {
            let mut poly = vec![1u64];
            for &mu in distinct.iter().filter(|&&mu| mu != lambda) {
                // multiply by (X - mu)
                let mut next = vec![0u64; poly.len() + 1];
                for (i, &c) in poly.iter().enumerate() {
                    next[i + 1] = (next[i + 1] + c) % ell;
                    next[i] = (next[i] + (ell - mu) * c) % ell;
                }
                poly = next;
            }
            poly
        };
        let first_image = |lambda: u64| -> Result<MumfordDivisor> {
            let proj = projector(lambda);
            raw.iter()
                .map(|x| self.apply_phi_poly(&proj, x))
                .find(|y| !y.is_identity())
                .ok_or(Error::NotABasis)
        };
        let e1 = first_image(eig[0])?;
        let e2 = first_image(eig[1])?;
        let (e3, e4) = if eig[2] != eig[3] {
            (first_image(eig[2])?, first_image(eig[3])?)
        } else {
            let proj = projector(eig[2]);
            let images: Vec<_> = raw.iter().map(|x| self.apply_phi_poly(&proj, x)).collect();
            let mut pair = None;
            'search: for i in 0..4 {
                for j in i + 1..4 {
                    if self.pair(&images[i], &images[j], rng)? != 0 {
                        pair = Some((images[i].clone(), images[j].clone()));
                        break 'search;
                    }
                }
            }
            pair.ok_or(Error::NotABasis)?
        };
        Ok([e1, e2, e3, e4])
    }

    /// `a_ij = dlog e(x_i, x_j)`.
    pub fn pairing_matrix<R: Rng + ?Sized>(&self, basis: &[MumfordDivisor; 4], rng: &mut R) -> Result<Matrix4> {
        let ell = self.ell();
        let mut e = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in i + 1..4 {
                let a = self.pair(&basis[i], &basis[j], rng)?;
                e[i][j] = a;
                e[j][i] = (ell - a) % ell;
            }
        }
        Ok(e)
    }

    /// Pfaffian test: four points of order dividing `l` generate `J[l]` iff
    /// `a12 a34 - a13 a24 + a14 a23` is a unit.
    pub fn verify_basis<R: Rng + ?Sized>(&self, points: &[MumfordDivisor; 4], rng: &mut R) -> Result<BasisEvidence> {
        let e = self.pairing_matrix(points, rng)?;
        let pfaffian = pfaffian(&e, self.ell());
        Ok(BasisEvidence { pairing_exponents: e, pfaffian, is_basis: pfaffian != 0 })
    }

    /// Coordinates of `y` in a basis with pairing matrix `e`. Uses the
    /// scaled closed form when `e` has the block shape, otherwise solves
    /// `E^T a = (dlog e(y, x_j))_j`. The reconstruction is checked.
    pub fn coordinates_in_basis<R: Rng + ?Sized>(
        &self,
        y: &MumfordDivisor,
        basis: &[MumfordDivisor; 4],
        e: &Matrix4,
        rng: &mut R,
    ) -> Result<[u64; 4]> {
        let ell = self.ell();
        if pfaffian(e, ell) == 0 {
            return Err(Error::NotABasis);
        }
        let mut c = [0u64; 4];
        for (j, x) in basis.iter().enumerate() {
            c[j] = self.pair(y, x, rng)?;
        }
        let coords = if has_block_pattern(e) {
            let (a_inv, b_inv) = (mod_inv(e[0][1], ell), mod_inv(e[2][3], ell));
            [
                c[1] * a_inv % ell,
                (ell - c[0]) % ell * a_inv % ell,
                c[3] * b_inv % ell,
                (ell - c[2]) % ell * b_inv % ell,
            ]
        } else {
            let mut et = [[0u64; 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    et[i][j] = e[j][i];
                }
            }
            solve_mod(et, c, ell).ok_or(Error::NotABasis)?
        };
        let jac = self.jacobian();
        let rebuilt = basis
            .iter()
            .zip(coords)
            .fold(jac.identity(), |acc, (x, a)| jac.add(&acc, &jac.scalar_mul(a as i128, x)));
        if rebuilt != *y {
            return Err(Error::ReconstructionMismatch);
        }
        Ok(coords)
    }

    /// Column `j` holds the coordinates of `phi(x_j)`.
    pub fn frobenius_matrix<R: Rng + ?Sized>(
        &self,
        basis: &[MumfordDivisor; 4],
        e: &Matrix4,
        rng: &mut R,
    ) -> Result<Matrix4> {
        let mut m = [[0u64; 4]; 4];
        for (j, x) in basis.iter().enumerate() {
            let col = self.coordinates_in_basis(&self.phi(x), basis, e, rng)?;
            for i in 0..4 {
                m[i][j] = col[i];
            }
        }
        Ok(m)
    }

    /// The postconditions every emitted set must meet: diagonal Frobenius
    /// matrix with the eigenvalues on the diagonal, block-shaped pairing
    /// matrix with unit entries, `q E = M^T E M`, unit Pfaffian.
    pub fn check_generator_set(&self, set: &GeneratorSet) -> Result<()> {
        let ell = self.ell();
        let m = &set.frobenius_matrix;
        let e = &set.pairing_exponents;
        let fail = |what: &str| Err(Error::InternalInconsistency(format!("generator set: {what}")));
        if !is_diagonal(m) {
            return fail("Frobenius matrix is not diagonal");
        }
        let mut diag: Vec<u64> = (0..4).map(|i| m[i][i]).collect();
        let mut eig = self.eigenvalues.to_vec();
        diag.sort_unstable();
        eig.sort_unstable();
        if diag != eig {
            return fail("diagonal differs from the eigenvalues");
        }
        if !has_block_pattern(e) {
            return fail("pairing matrix lacks the block shape");
        }
        if !galois_identity_holds(m, e, self.q(), ell) {
            return fail("q E != M^T E M");
        }
        if set.pfaffian == 0 {
            return fail("zero Pfaffian");
        }
        Ok(())
    }
}

fn not_in_class(class: &ClassificationResult) -> Error {
    Error::PreconditionFailed(format!("curve is not in the class for l = {}: {:?}", class.ell, class.verdict))
}

/// `a12 a34 - a13 a24 + a14 a23 mod l`
pub fn pfaffian(e: &Matrix4, ell: u64) -> u64 {
    let t = |i: usize, j: usize, k: usize, l: usize| e[i][j] * e[k][l] % ell;
    (t(0, 1, 2, 3) + ell - t(0, 2, 1, 3) + t(0, 3, 1, 2)) % ell
}

pub fn is_diagonal(m: &Matrix4) -> bool {
    (0..4).all(|i| (0..4).all(|j| i == j || m[i][j] == 0))
}

/// Nonzero only at `(1,2), (2,1), (3,4), (4,3)`, with those entries units.
pub fn has_block_pattern(e: &Matrix4) -> bool {
    let allowed = |i: usize, j: usize| matches!((i, j), (0, 1) | (1, 0) | (2, 3) | (3, 2));
    (0..4).all(|i| (0..4).all(|j| allowed(i, j) != (e[i][j] == 0)))
}

/// `q E = M^T E M (mod l)`
pub fn galois_identity_holds(m: &Matrix4, e: &Matrix4, q: u64, ell: u64) -> bool {
    let mul = |a: &Matrix4, b: &Matrix4| {
        let mut c = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = (0..4).map(|l| a[i][l] * b[l][j] % ell).sum::<u64>() % ell;
            }
        }
        c
    };
    let mut mt = [[0u64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            mt[i][j] = m[j][i];
        }
    }
    let rhs = mul(&mul(&mt, e), m);
    (0..4).all(|i| (0..4).all(|j| q % ell * e[i][j] % ell == rhs[i][j]))
}

/// `det(X I - M) mod l`, little-endian.
pub fn char_poly_mod(m: &Matrix4, ell: u64) -> [u64; 5] {
    fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 1 {
            return vec![(vec![0], true)];
        }
        let mut out = Vec::new();
        for (p, even) in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                let swaps = n - 1 - pos;
                out.push((q, even == (swaps % 2 == 0)));
            }
        }
        out
    }
    let mut total = [0u64; 5];
    for (perm, even) in permutations(4) {
        let mut term = vec![1u64];
        for (i, &j) in perm.iter().enumerate() {
            // entry (X I - M)_{ij}
            let entry = if i == j { vec![(ell - m[i][j] % ell) % ell, 1] } else { vec![(ell - m[i][j] % ell) % ell] };
            let mut next = vec![0u64; term.len() + entry.len() - 1];
            for (a, &x) in term.iter().enumerate() {
                for (b, &y) in entry.iter().enumerate() {
                    next[a + b] = (next[a + b] + x * y) % ell;
                }
            }
            term = next;
        }
        for (d, &c) in term.iter().enumerate() {
            total[d] = if even { (total[d] + c) % ell } else { (total[d] + ell - c) % ell };
        }
    }
    total
}

/// Solves `A x = b` over `F_ell`, if `A` is invertible.
fn solve_mod(mut a: Matrix4, mut b: [u64; 4], ell: u64) -> Option<[u64; 4]> {
    for col in 0..4 {
        let pivot = (col..4).find(|&r| a[r][col] % ell != 0)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = mod_inv(a[col][col], ell);
        for j in 0..4 {
            a[col][j] = a[col][j] * inv % ell;
        }
        b[col] = b[col] * inv % ell;
        for r in 0..4 {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..4 {
                    a[r][j] = (a[r][j] + ell - f * a[col][j] % ell) % ell;
                }
                b[r] = (b[r] + ell - f * b[col] % ell) % ell;
            }
        }
    }
    Some(b)
}
