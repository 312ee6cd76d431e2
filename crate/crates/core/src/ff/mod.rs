//! Finite fields F_{p^k}, their elements, and polynomial arithmetic over them.

mod bipoly;
mod embed;
mod field;
mod linalg;
mod poly;
pub mod prime;
mod quad;
mod roots;
mod sqrt;

pub use bipoly::BiPoly;
pub use embed::FieldEmbedding;
pub use field::{geometric_ratio, ArithOp, FieldCtx, FieldElement, Raw};
pub use linalg::FpMatrix;
pub use poly::UniPoly;
pub use quad::QuadExtCtx;
pub use roots::{nth_roots, roots_in_field, roots_with_multiplicity, DEFAULT_ROOT_SEED};
pub use sqrt::QuadCharTable;

/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: usize = 36;

/// Largest supported characteristic (coefficients are stored as `u16`).
pub const MAX_PRIME: u64 = 65535;
