//! Exact rational arithmetic: scalars, polynomials, matrices and subspaces.

mod mat;
mod poly;
mod rat;
mod subspace;

pub use mat::{Mat, MatError};
pub use poly::{Bound, Poly, PolyError, RootSignature, MAX_DEGREE};
pub use rat::{ParseRatError, Rat};
pub use subspace::Subspace;
