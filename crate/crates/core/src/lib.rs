//! Affinoid birational spaces of pairs of rings, computed at desk scale.
//!
//! A pair `(B, A)` is a finitely presented `Q`-algebra `B = Q[x]/I` together
//! with the subring `A` generated by finitely many elements. On top of an
//! exact Gröbner kernel the crate provides valuations with values in `Z^r`
//! (lex), their primary specializations and retraction onto `Val(B, A)`,
//! rational domains and coverings, relative normalization, and charts of
//! relative blow ups.
//!
//! Values are additive: `nu(a) >= 0` means `a` is bounded by one in the
//! multiplicative picture, and the kernel is sent to [`valuation::Value::Zero`],
//! the greatest value.

pub mod blowup;
pub mod cli;
pub mod domains;
pub mod error;
pub mod fuzzing;
pub mod groebner;
pub mod json;
pub mod linalg;
pub mod pairs;
pub mod poly;
pub mod ring;
pub mod valuation;

pub use error::{Error, Result};
pub use groebner::{buchberger, is_unit_ideal, GroebnerBasis, MonomialOrder};
pub use poly::{Monomial, Polynomial, Rational, VarContext};
