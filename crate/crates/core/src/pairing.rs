//! The Weil pairing on `J[l]` through Miller's algorithm on Mumford
//! divisors, and discrete logarithms in `mu_l`.

use std::collections::HashMap;

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Fe;
use crate::jacobian::{Jacobian, MumfordDivisor};

/// Random translations tried before a pairing gives up.
pub const PAIRING_RETRIES: usize = 32;

/// Everything needed to pair points of `J[l]` inside one ambient field.
#[derive(Clone, Debug)]
pub struct PairingContext {
    jac: Jacobian,
    ell: u64,
    zeta: Fe,
    baby: HashMap<Fe, u64>,
    giant: Fe,
    stride: u64,
}

impl PairingContext {
    /// Fixes `zeta` as the first primitive `l`-th root of unity met in the
    /// field's enumeration order (images `g^((Q-1)/l)` of successive `g`).
    pub fn new(jac: Jacobian, ell: u64) -> Result<Self> {
        let k = jac.field().clone();
        let order_minus_one = k.order() - 1u32;
        if !(&order_minus_one % ell).is_zero() {
            return Err(Error::PreconditionFailed(format!(
                "l = {ell} does not divide q^N - 1 for the ambient degree N = {}",
                k.degree()
            )));
        }
        let cofactor = &order_minus_one / ell;
        let zeta = k
            .iter_all()
            .filter(|g| !k.is_zero(g))
            .map(|g| k.pow(&g, &cofactor))
            .find(|z| !k.is_one(z))
            .ok_or_else(|| Error::InternalInconsistency("no primitive root of unity".into()))?;

        let stride = (ell as f64).sqrt().ceil() as u64;
        let mut baby = HashMap::with_capacity(stride as usize);
        let mut acc = k.one();
        for j in 0..stride {
            baby.entry(acc.clone()).or_insert(j);
            acc = k.mul(&acc, &zeta);
        }
        let giant = k.inv(&acc)?;
        Ok(PairingContext { jac, ell, zeta, baby, giant, stride })
    }

    pub fn jacobian(&self) -> &Jacobian {
        &self.jac
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn zeta(&self) -> &Fe {
        &self.zeta
    }

    fn is_torsion(&self, d: &MumfordDivisor) -> bool {
        self.jac.scalar_mul(self.ell as i128, d).is_identity()
    }

    /// `f_{n,D}(E)` for an effective divisor `E`, where
    /// `div f_{n,D} = n D - (nD) - (weight terms at infinity)`.
    pub fn miller_eval(&self, n: u64, d: &MumfordDivisor, e: &MumfordDivisor) -> Result<Fe> {
        if n == self.ell && !self.is_torsion(d) {
            return Err(Error::NotTorsion);
        }
        let (values, _) = self.miller_values(n, d, std::slice::from_ref(e))?;
        Ok(values.into_iter().next().expect("one target"))
    }

    /// Runs one Miller loop for `f_{n,D}` and evaluates it at every target.
    /// Also returns `nD`.
    fn miller_values(
        &self,
        n: u64,
        d: &MumfordDivisor,
        targets: &[MumfordDivisor],
    ) -> Result<(Vec<Fe>, MumfordDivisor)> {
        let k = self.jac.field();
        if n == 0 {
            return Err(Error::BadInput("Miller loop needs n >= 1".into()));
        }
        let mut num: Vec<Fe> = vec![k.one(); targets.len()];
        let mut den: Vec<Fe> = vec![k.one(); targets.len()];
        let mut acc = d.clone();
        let absorb = |num: &mut Vec<Fe>, den: &mut Vec<Fe>, h: &crate::jacobian::ChordFunction| -> Result<()> {
            for (i, e) in targets.iter().enumerate() {
                let (a, b) = h.eval_effective(k, e)?;
                num[i] = k.mul(&num[i], &a);
                den[i] = k.mul(&den[i], &b);
            }
            Ok(())
        };
        for bit in (0..63 - n.leading_zeros()).rev() {
            let (doubled, h) = self.jac.add_with_function(&acc, &acc);
            for i in 0..targets.len() {
                num[i] = k.square(&num[i]);
                den[i] = k.square(&den[i]);
            }
            absorb(&mut num, &mut den, &h)?;
            acc = doubled;
            if (n >> bit) & 1 == 1 {
                let (sum, h) = self.jac.add_with_function(&acc, d);
                absorb(&mut num, &mut den, &h)?;
                acc = sum;
            }
        }
        let values = num
            .iter()
            .zip(&den)
            .map(|(a, b)| k.div(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok((values, acc))
    }

    /// `e(D1, D2)` using the representatives `(D1 + S) - S` and `(D2 + T) - T`
    /// for fresh random `S`, `T`.
    pub fn weil_pairing<R: Rng + ?Sized>(
        &self,
        d1: &MumfordDivisor,
        d2: &MumfordDivisor,
        rng: &mut R,
    ) -> Result<Fe> {
        if !self.is_torsion(d1) || !self.is_torsion(d2) {
            return Err(Error::NotTorsion);
        }
        let k = self.jac.field();
        if d1.is_identity() || d2.is_identity() {
            return Ok(k.one());
        }
        for _ in 0..PAIRING_RETRIES {
            match self.weil_attempt(d1, d2, rng) {
                Err(Error::SharedSupport) => continue,
                other => return other,
            }
        }
        Err(Error::RetriesExhausted(format!("{PAIRING_RETRIES} pairing translations hit shared support")))
    }

    fn weil_attempt<R: Rng + ?Sized>(
        &self,
        d1: &MumfordDivisor,
        d2: &MumfordDivisor,
        rng: &mut R,
    ) -> Result<Fe> {
        let k = self.jac.field();
        let n = self.jac.ambient_degree();
        let s = self.jac.random_divisor(n, rng)?;
        let t = self.jac.random_divisor(n, rng)?;
        let p1 = self.jac.add(d1, &s);
        let p2 = self.jac.add(d2, &t);
        if p1.weight() != s.weight() || p2.weight() != t.weight() {
            return Err(Error::SharedSupport);
        }
        let right = [p2.clone(), t.clone()];
        let left = [p1.clone(), s.clone()];
        let ratio = |v: Vec<Fe>| k.div(&v[0], &v[1]);
        let f_p1 = ratio(self.miller_values(self.ell, &p1, &right)?.0)?;
        let f_s = ratio(self.miller_values(self.ell, &s, &right)?.0)?;
        let f_p2 = ratio(self.miller_values(self.ell, &p2, &left)?.0)?;
        let f_t = ratio(self.miller_values(self.ell, &t, &left)?.0)?;
        let numer = k.div(&f_p1, &f_s)?;
        let denom = k.div(&f_p2, &f_t)?;
        let e = k.div(&numer, &denom)?;
        if !k.is_one(&k.pow_u64(&e, self.ell)) {
            return Err(Error::InternalInconsistency("pairing value outside mu_l".into()));
        }
        Ok(e)
    }

    /// The `a in [0, l)` with `zeta^a = z`, by baby-step giant-step.
    pub fn dlog_mu(&self, z: &Fe) -> Result<u64> {
        let k = self.jac.field();
        if !k.is_one(&k.pow_u64(z, self.ell)) {
            return Err(Error::NotInMu);
        }
        let mut gamma = z.clone();
        for i in 0..=self.stride {
            if let Some(j) = self.baby.get(&gamma) {
                return Ok((i * self.stride + j) % self.ell);
            }
            gamma = k.mul(&gamma, &self.giant);
        }
        Err(Error::InternalInconsistency("discrete logarithm not found".into()))
    }

    /// `dlog e(D1, D2)`.
    pub fn pairing_exponent<R: Rng + ?Sized>(
        &self,
        d1: &MumfordDivisor,
        d2: &MumfordDivisor,
        rng: &mut R,
    ) -> Result<u64> {
        self.dlog_mu(&self.weil_pairing(d1, d2, rng)?)
    }

    /// `zeta^a`
    pub fn zeta_pow(&self, a: u64) -> Fe {
        self.jac.field().pow_u64(&self.zeta, a % self.ell)
    }
}
