//! Exact computations with elementary quiver algebras: path-algebra
//! quotients, trivially twisted tensor products, the 2x2 matrix algebra
//! `Lambda(A, B)`, minimal projective resolutions, stratifying-ideal checks
//! and generated quiver presentations.

pub mod cancel;
pub mod error;
pub mod field;
pub mod linalg;
pub mod presentation;
pub mod algebra;
pub mod path_algebra;
pub mod lambda;
pub mod lambda_quiver;
pub mod modules;
pub mod twisted;
pub mod report;
