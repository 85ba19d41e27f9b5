//! Exact construction of the extended Freudenthal magic square over GF(3).
//!
//! The crate builds the split symmetric composition (super)algebras in
//! characteristic 3, their triality Lie superalgebras, and the Lie
//! superalgebra g(S,S') attached to every unordered pair, then verifies the
//! structural facts mechanically: dimensions, super-Jacobi, lattice gradings,
//! root data and Cartan matrices, contragredient presentation certificates,
//! graded simplicity, and the module structure of the odd part.

pub mod composition;
pub mod epsilon;
pub mod export;
pub mod gf3;
pub mod golden;
pub mod linalg;
pub mod magic;
pub mod modules;
pub mod roots;
pub mod verify;
pub mod triality;

pub use gf3::{F3, Parity};
pub use linalg::Mat;
pub use magic::{AlgName, LieSuperalgebra};
