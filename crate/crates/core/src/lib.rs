//! Exact computations with the Dirac operator of the Lie superalgebra
//! `gl(m|n)`: the Weyl algebra of the odd part, the oscillator
//! realisation of `g0`, PBW straightening in `U(g) ⊗ W(g1)`, finite
//! dimensional modules and their Dirac and `g±` (co)homology.

pub mod algebra;
pub mod cohomology;
pub mod dirac;
pub mod error;
pub mod linalg;
pub mod pbw;
pub mod rep;
pub mod scalar;
pub mod weyl;

pub use algebra::{AlgebraContext, MatrixUnit, Parity, Sector, SuperElement, Weight, E};
pub use error::{Error, Result};
pub use linalg::{RationalMatrix, Subspace};
pub use scalar::Q;
