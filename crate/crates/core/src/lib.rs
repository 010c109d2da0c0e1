//! Exact computations for free plane curves: Saito certificates, eigenschemes
//! of derivations, pencils of curves and local Milnor/Tjurina numbers.
//!
//! All arithmetic is exact over ℚ, ℚ(i) or a prime field GF(p).

pub mod scalar;
pub mod poly;
pub mod text;
pub mod linalg;
pub mod gradedlin;
pub mod upoly;
pub mod derivation;
pub mod eigenscheme;
pub mod singular;
pub mod pencil;
pub mod fixtures;

pub use poly::{Monomial, Poly, PolyError, PolyMatrix, Var};
pub use scalar::{FieldId, Scalar, ScalarError};
pub use text::{format_poly, parse_poly, ParseError};
