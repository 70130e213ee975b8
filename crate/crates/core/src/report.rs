//! JSON input and output: curve files, divisors, classification and
//! generator-set reports. All integers are exact; field elements are
//! little-endian coefficient arrays over `F_q`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::jacobian::{Curve, Jacobian, MumfordDivisor};
use crate::poly::Poly;
use crate::torsion::{char_poly_mod, is_diagonal, Branch, GeneratorSet, Matrix4, TorsionContext};
use crate::zeta::{char_poly_power, weil_polynomial, ClassificationResult, WeilPolynomial};

pub const TOOL: &str = "g2gen";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const SCHEMA_VERSION: u32 = 1;

/// `{"q": 7, "f": [1, 0, 0, 0, 0, 1]}` with `f` little-endian and `f[5] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub q: u64,
    pub f: Vec<i64>,
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn curve(&self) -> Result<Curve> {
        if self.f.len() != 6 {
            return Err(Error::BadDegree);
        }
        Curve::new(self.q, &self.f)
    }

    pub fn from_curve(curve: &Curve) -> Self {
        CurveFile { q: curve.q(), f: curve.f().iter().map(|&c| c as i64).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorJson {
    pub u: Vec<Vec<u64>>,
    pub v: Vec<Vec<u64>>,
    pub ambient_degree: usize,
}

impl DivisorJson {
    pub fn from_divisor(d: &MumfordDivisor, ambient_degree: usize) -> Self {
        let coeffs = |p: &Poly| p.0.iter().map(|c| c.to_vec()).collect();
        DivisorJson { u: coeffs(&d.u), v: coeffs(&d.v), ambient_degree }
    }

    pub fn to_divisor(&self, jac: &Jacobian) -> Result<MumfordDivisor> {
        let k = jac.field();
        if self.ambient_degree != k.degree() {
            return Err(Error::Parse(format!(
                "divisor lives in degree {} but the ambient field has degree {}",
                self.ambient_degree,
                k.degree()
            )));
        }
        let poly = |cs: &[Vec<u64>]| -> Result<Poly> {
            let coeffs = cs.iter().map(|c| k.from_coeffs(c)).collect::<Result<Vec<_>>>()?;
            Ok(Poly::from_coeffs(k, coeffs))
        };
        let d = MumfordDivisor { u: poly(&self.u)?, v: poly(&self.v)? };
        if !jac.is_valid(&d) {
            return Err(Error::Parse("divisor violates the Mumford invariants".into()));
        }
        Ok(d)
    }
}

/// Common envelope of every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report<T> {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub command: String,
    pub input_sha256: String,
    pub seed: Option<u64>,
    pub result: T,
}

impl<T> Report<T> {
    pub fn new(command: &str, input: &[u8], seed: Option<u64>, result: T) -> Self {
        Report {
            tool: TOOL.into(),
            version: VERSION.into(),
            schema: SCHEMA_VERSION,
            command: command.into(),
            input_sha256: sha256_hex(input),
            seed,
            result,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllInfo {
    pub ell: u64,
    pub divides_order: bool,
    pub diagnostic: Option<String>,
    pub k: Option<u64>,
    pub eigenvalues: Option<[u64; 4]>,
    pub four_tau_k: Option<i128>,
    pub full_torsion_degree: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfoResult {
    pub curve: CurveFile,
    pub n1: i128,
    pub n2: i128,
    pub s: i128,
    pub t: i128,
    /// `P(X)` little-endian.
    pub weil_polynomial: [i128; 5],
    pub order: i128,
    pub ell: Option<EllInfo>,
}

/// Point counts, the Weil polynomial and, with `ell`, the data mod `ell`.
pub fn info(curve: &Curve, ell: Option<u64>) -> Result<InfoResult> {
    let weil = weil_polynomial(curve)?;
    let q = curve.q() as i128;
    let n1 = q + 1 + weil.s;
    let n2 = q * q + 1 + 2 * weil.t - weil.s * weil.s;
    let ell = ell.map(|ell| ell_info(&weil, ell)).transpose()?;
    Ok(InfoResult {
        curve: CurveFile::from_curve(curve),
        n1,
        n2,
        s: weil.s,
        t: weil.t,
        weil_polynomial: weil.coeffs(),
        order: weil.at_one(),
        ell,
    })
}

fn ell_info(weil: &WeilPolynomial, ell: u64) -> Result<EllInfo> {
    let mut out = EllInfo {
        ell,
        divides_order: weil.at_one().rem_euclid(ell as i128) == 0,
        diagnostic: None,
        k: None,
        eigenvalues: None,
        four_tau_k: None,
        full_torsion_degree: None,
    };
    if !out.divides_order {
        out.diagnostic = Some(format!("ell does not divide P(1) = {}", weil.at_one()));
        return Ok(out);
    }
    match crate::zeta::classify_weil(weil, ell) {
        Ok(class) => {
            out.k = Some(class.k);
            out.eigenvalues = class.eigenvalues;
            out.full_torsion_degree = class.full_torsion_degree;
            out.four_tau_k = char_poly_power(weil, class.k as u32).ok().map(|p| p.four_tau());
        }
        Err(e) => out.diagnostic = Some(e.to_string()),
    }
    Ok(out)
}

/// Human-readable one-line verdict.
pub fn summarize(class: &ClassificationResult) -> String {
    use crate::zeta::Verdict::*;
    let head = format!("q = {}, l = {}, k = {}: ", class.q, class.ell, class.k);
    head + match class.verdict {
        InClass => "in class, l does not divide 4 tau_k",
        InClassDividing => "in class, l divides 4 tau_k",
        LargeEmbeddingDegree => "not in class (all alpha^k = 1 and k > 12)",
        NonSplit => "not in class: P does not split mod l",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorReport {
    pub curve: CurveFile,
    pub ell: u64,
    pub n: usize,
    pub ambient_degree: usize,
    /// Low coefficients of the ambient modulus.
    pub modulus: Vec<u64>,
    pub branch: Branch,
    pub eigenvalues: [u64; 4],
    pub points: Vec<DivisorJson>,
    pub raw_points: Vec<DivisorJson>,
    pub frobenius_matrix: Matrix4,
    pub pairing_exponents: Matrix4,
    pub pfaffian: u64,
    pub verified: bool,
    pub classification: ClassificationResult,
}

impl GeneratorReport {
    pub fn new(ctx: &TorsionContext, set: &GeneratorSet, n: usize) -> Self {
        let jac = ctx.jacobian();
        let a = jac.ambient_degree();
        let conv = |ds: &[MumfordDivisor; 4]| ds.iter().map(|d| DivisorJson::from_divisor(d, a)).collect();
        GeneratorReport {
            curve: CurveFile::from_curve(jac.curve()),
            ell: ctx.ell(),
            n,
            ambient_degree: a,
            modulus: jac.field().modulus().to_vec(),
            branch: set.branch,
            eigenvalues: ctx.eigenvalues(),
            points: conv(&set.points),
            raw_points: conv(&set.raw),
            frobenius_matrix: set.frobenius_matrix,
            pairing_exponents: set.pairing_exponents,
            pfaffian: set.pfaffian,
            verified: true,
            classification: ctx.classification().clone(),
        }
    }
}

/// Runs the generator algorithm for `(curve, ell)` with a seeded RNG.
pub fn generators(curve: &Curve, ell: u64, n: usize, seed: u64) -> Result<GeneratorReport> {
    let ctx = TorsionContext::new(curve, ell)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let set = ctx.find_generators(n, &mut rng)?;
    Ok(GeneratorReport::new(&ctx, &set, n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyResult {
    pub is_basis: bool,
    pub pfaffian: u64,
    pub pairing_exponents: Matrix4,
    pub frobenius_matrix: Option<Matrix4>,
    pub frobenius_diagonal: bool,
    pub char_poly_matches: bool,
    pub matches_report: bool,
    pub postconditions_hold: bool,
}

/// Recomputes every check on a saved generator report.
pub fn verify(report: &GeneratorReport, seed: u64) -> Result<VerifyResult> {
    let curve = report.curve.curve()?;
    let weil = weil_polynomial(&curve)?;
    let class = crate::zeta::classify_weil(&weil, report.ell)?;
    let ctx = TorsionContext::with_ambient(&curve, class, report.ambient_degree)?;
    let jac = ctx.jacobian();
    if jac.field().modulus() != report.modulus.as_slice() {
        return Err(Error::Parse("ambient modulus differs from this build's choice".into()));
    }
    if report.points.len() != 4 {
        return Err(Error::Parse("expected four points".into()));
    }
    let mut pts = Vec::with_capacity(4);
    for p in &report.points {
        let d = p.to_divisor(jac)?;
        if !jac.scalar_mul(report.ell as i128, &d).is_identity() {
            return Err(Error::NotTorsion);
        }
        pts.push(d);
    }
    let points: [MumfordDivisor; 4] = pts.try_into().expect("four points");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let evidence = ctx.verify_basis(&points, &mut rng)?;
    let frob = if evidence.is_basis {
        Some(ctx.frobenius_matrix(&points, &evidence.pairing_exponents, &mut rng)?)
    } else {
        None
    };
    let ell = report.ell;
    let char_poly_matches = frob.is_some_and(|m| char_poly_mod(&m, ell) == weil.coeffs_mod(ell));
    let frobenius_diagonal = frob.is_some_and(|m| is_diagonal(&m));
    let matches_report = evidence.pairing_exponents == report.pairing_exponents
        && frob == Some(report.frobenius_matrix)
        && evidence.pfaffian == report.pfaffian;
    let postconditions_hold = frob.is_some_and(|m| {
        let set = GeneratorSet {
            points: points.clone(),
            raw: points.clone(),
            frobenius_matrix: m,
            pairing_exponents: evidence.pairing_exponents,
            pfaffian: evidence.pfaffian,
            branch: report.branch,
        };
        ctx.check_generator_set(&set).is_ok()
    });
    Ok(VerifyResult {
        is_basis: evidence.is_basis,
        pfaffian: evidence.pfaffian,
        pairing_exponents: evidence.pairing_exponents,
        frobenius_matrix: frob,
        frobenius_diagonal,
        char_poly_matches,
        matches_report,
        postconditions_hold,
    })
}
