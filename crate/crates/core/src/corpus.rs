//! The checked-in list of test curves and the sweep that produced it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mod_pow, prime_factors, split_power};
use crate::error::{Error, Result};
use crate::jacobian::Curve;
pub use crate::torsion::Branch;
use crate::torsion::{ambient_degree, TorsionContext};
use crate::zeta::{char_poly_power, classify_weil, weil_polynomial, Verdict, WeilPolynomial};

/// Largest `q^N` for which an entry is marked enumerable.
pub const ORACLE_FIELD_BOUND: u64 = 350;

/// Largest group order handled by the enumeration oracle.
pub const ORACLE_ORDER_BOUND: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub q: u64,
    pub f: [i64; 6],
    pub ell: u64,
    pub branch: Branch,
    pub verdict: Verdict,
    pub k: u64,
    /// Full torsion degree; absent out of class.
    pub n: Option<u64>,
    pub order: i128,
    /// Whether the enumeration oracle can run at the full torsion level.
    pub enumerable: bool,
}

impl CorpusEntry {
    pub fn curve(&self) -> Result<Curve> {
        Curve::new(self.q, &self.f)
    }
}

/// The corpus shipped with the crate.
pub fn builtin() -> Vec<CorpusEntry> {
    serde_json::from_str(include_str!("../data/corpus.json")).expect("bundled corpus parses")
}

/// Whether the `l`-primary part of `J(F_{q^m})` is elementary, given the
/// Frobenius eigenvalues: `v_l(P_m(1))` equals the number of eigenvalues
/// with `lambda^m = 1`.
pub fn sylow_is_elementary(weil: &WeilPolynomial, ell: u64, eigenvalues: &[u64; 4], m: u32) -> Result<bool> {
    let order = char_poly_power(weil, m)?.at_one();
    let (e, _) = split_power(order as u128, ell);
    let rank = eigenvalues.iter().filter(|&&l| mod_pow(l, m as u64, ell) == 1).count() as u32;
    Ok(e == rank)
}

/// Classifies every admissible `(curve, l)` pair for one curve. Pairs that
/// the generator algorithms cannot serve (non-cyclic rational torsion,
/// non-elementary `l`-parts at the sampling levels, non-diagonal Frobenius,
/// oversized fields) are dropped unless out of class.
pub fn candidates(curve: &Curve) -> Result<Vec<CorpusEntry>> {
    let q = curve.q();
    let weil = weil_polynomial(curve)?;
    let order = weil.at_one();
    let mut out = Vec::new();
    for ell in prime_factors(order as u64) {
        if ell == 2 || q % ell == 0 || (q - 1) % ell == 0 || !is_prime(ell) {
            continue;
        }
        let class = classify_weil(&weil, ell)?;
        let f = curve.f().map(|c| c as i64);
        let mut entry = CorpusEntry {
            q,
            f,
            ell,
            branch: Branch::OutOfClass,
            verdict: class.verdict,
            k: class.k,
            n: class.full_torsion_degree,
            order,
            enumerable: false,
        };
        if !class.in_class {
            out.push(entry);
            continue;
        }
        let eig = class.eigenvalues.expect("in-class curves split");
        let n = class.full_torsion_degree.expect("in-class curves split");
        if eig[2..].iter().any(|&a| a == eig[0] || a == eig[1]) {
            continue;
        }
        if ambient_degree(q, n as usize).is_err() || (q as f64).powi(2 * n as i32) >= 2f64.powi(100) {
            continue;
        }
        let mut elementary = true;
        for m in [1, class.k as u32, n as u32] {
            elementary &= sylow_is_elementary(&weil, ell, &eig, m)?;
        }
        if !elementary {
            continue;
        }
        let ctx = TorsionContext::new(curve, ell)?;
        if !ctx.frobenius_is_diagonalizable(&mut ChaCha8Rng::seed_from_u64(0))? {
            continue;
        }
        entry.branch = if class.ell_divides_4tau { Branch::Dividing } else { Branch::NotDividing };
        let field = q.checked_pow(n as u32);
        let full_order = char_poly_power(&weil, n as u32)?.at_one() as u128;
        entry.enumerable = field.is_some_and(|s| s <= ORACLE_FIELD_BOUND) && full_order <= ORACLE_ORDER_BOUND;
        out.push(entry);
    }
    Ok(out)
}

/// Random monic squarefree quintics over each `F_q`, `per_q` of them,
/// classified against every admissible `l`.
pub fn sweep(qs: &[u64], per_q: usize, seed: u64) -> Result<Vec<CorpusEntry>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for &q in qs {
        if !is_prime(q) || q == 2 {
            return Err(Error::BadInput(format!("q = {q} is not an odd prime")));
        }
        let mut tried = 0;
        while tried < per_q {
            let mut f = [0i64; 6];
            f[5] = 1;
            for c in f.iter_mut().take(5) {
                *c = rng.gen_range(0..q as i64);
            }
            let Ok(curve) = Curve::new(q, &f) else { continue };
            tried += 1;
            out.extend(candidates(&curve)?);
        }
    }
    Ok(out)
}

/// Largest full torsion degree kept by [`select`].
pub const SELECT_MAX_DEGREE: u64 = 12;

/// A compact, deterministic subset of sweep output: one in-class entry per
/// `(branch, q, l)` (up to three when enumerable) with `N <= 12`, and up to
/// three out-of-class entries per verdict.
pub fn select(entries: &[CorpusEntry]) -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    let mut sorted = entries.to_vec();
    sorted.sort_by_key(|e| (e.q, e.ell, e.f));
    sorted.dedup();
    for e in &sorted {
        let same = |o: &&CorpusEntry| match e.branch {
            Branch::OutOfClass => o.branch == Branch::OutOfClass && o.verdict == e.verdict,
            _ => o.branch == e.branch && o.q == e.q && o.ell == e.ell,
        };
        let count = out.iter().filter(same).count();
        let keep = match e.branch {
            Branch::OutOfClass => count < 3,
            _ if e.n.is_some_and(|n| n > SELECT_MAX_DEGREE) => false,
            _ if e.enumerable => count < 3,
            _ => count < 1,
        };
        if keep {
            out.push(e.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_covers_both_branches_and_out_of_class() {
        let corpus = builtin();
        for branch in [Branch::NotDividing, Branch::Dividing, Branch::OutOfClass] {
            assert!(corpus.iter().any(|e| e.branch == branch), "{branch:?} missing");
        }
        assert!(corpus.iter().all(|e| (3..=31).contains(&e.q)));
        assert!(corpus.iter().filter(|e| e.enumerable).count() >= 2);
    }

    #[test]
    fn builtin_entries_reclassify_identically() {
        for e in builtin() {
            let fresh = candidates(&e.curve().unwrap()).unwrap();
            assert!(fresh.contains(&e), "{e:?}");
        }
    }
}
