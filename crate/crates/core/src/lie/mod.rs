//! The Lie algebra sl_n: coordinates, elements, subspaces and the Weyl group.

mod algebra;
mod element;
mod subspace;
mod symbolic;
mod weyl;

pub use algebra::LieAlgebraA;
pub use element::{krylov_rank, GElement, JordanData};
pub use subspace::Subspace;
pub use symbolic::{poly_det, SymMatrix};
pub use weyl::{weyl_group, weyl_stabilizer, WeylElement};
