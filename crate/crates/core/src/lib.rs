//! Generators of the `l`-torsion of genus-two Jacobians over small prime
//! fields: exact field and Jacobian arithmetic, Weil polynomials, the Weil
//! pairing, the generator-finding algorithms and brute-force oracles.

pub mod arith;
pub mod corpus;
pub mod error;
pub mod field;
pub mod jacobian;
pub mod oracle;
pub mod pairing;
pub mod poly;
pub mod report;
pub mod torsion;
pub mod zeta;

pub use error::{Error, Result};
pub use field::{ExtField, Fe, PrimeField};
pub use jacobian::{Curve, Jacobian, MumfordDivisor};
pub use poly::Poly;
pub use zeta::{ClassificationResult, Verdict, WeilPolynomial};
