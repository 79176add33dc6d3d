//! Exact tools for checking the oriented-matroid form of Ky Fan's parity
//! theorem on small triangulated free Z2-manifolds.

pub mod complexes;
pub mod om;
pub mod signsets;
pub mod verifier;
pub mod z2homology;
mod util;

pub use util::binomial;
