//! Exact arithmetic for the Virasoro algebra, the loop-Virasoro algebra, the
//! Block algebras `B(q)` and their rank-one free modules `Ω`.
//!
//! Everything is generic over an exact [`Field`]; the aliases below fix the
//! scalar to the Gaussian rationals, which is what the CLI and the tests use.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod field;
pub mod grid;
pub mod linalg;
pub mod module;
pub mod multipoly;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod table;

pub use algebra::{AlgebraElement, AlgebraKind, BasisSymbol, IndexBox};
pub use error::{
    AlgebraError, Error, LinalgError, ModuleError, ParseError, ParseErrorKind, PolyError,
    ProbeError, ScalarError,
};
pub use field::Field;
pub use module::{ActionTable, LoopParams, ModuleSpec, ModuleVector};
pub use multipoly::MultiPolynomial;
pub use poly::Polynomial;
pub use scalar::GaussianRational;

pub type Scalar = GaussianRational;
pub type Poly = Polynomial<Scalar>;
pub type MultiPoly = MultiPolynomial<Scalar>;
pub type Kind = AlgebraKind<Scalar>;
pub type Element = AlgebraElement<Scalar>;
pub type Spec = ModuleSpec<Scalar>;
pub type Table = ActionTable<Scalar>;
