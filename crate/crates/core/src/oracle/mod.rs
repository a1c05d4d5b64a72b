//! Independent ground truth from exact linear algebra.

pub mod linalg;
pub mod module;
pub mod sparse;

pub use linalg::{bareiss_rank, left_nullspace, rref_rows, Matrix, PivotOrder, Span, Q};
pub use module::{
    default_cutoff, oracle_pdim, projective_cover_kernel, rep_of, top_of, Oracle, OracleError, OracleLevel, OraclePdim,
    OracleResolution, PathTable, PieceKey, Psi0Block, Representation,
};
pub use sparse::SVec;
