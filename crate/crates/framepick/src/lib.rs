//! Certified selection of a well-conditioned 2x2 row submatrix from an
//! n x 2 matrix with orthonormal columns.
//!
//! Every such frame contains a pair of rows whose 2x2 submatrix has smallest
//! singular value at least 1/sqrt(n) — equivalently, whose inverse has
//! spectral norm at most sqrt(n). This crate turns the inductive argument
//! behind that fact into a deterministic algorithm:
//!
//! * [`selection::select_pair`] finds such a pair and emits a [`Certificate`]
//!   of the reduction path it took, replayable and independently checkable;
//! * [`proofaudit`] rebuilds the spectral objects the argument relies on
//!   (the w vectors, centered norms z, and matrices G and M) and numerically
//!   audits each identity;
//! * [`oracle`] provides brute-force ground truth over all row pairs;
//! * [`generators`] builds reproducible inputs, including the extremal
//!   family on which the bound is attained exactly;
//! * [`io`] defines the frame file format and the JSON report schema.

pub mod error;
pub mod frames;
pub mod generators;
pub mod io;
pub mod kernels;
pub mod oracle;
pub mod proofaudit;
pub mod selection;

pub use error::{Error, Result};
pub use frames::{tol_ortho, OrthoResiduals, OrthonormalFrame, RowPair};
pub use generators::{random_frame, small_row_frame, tightness_frame, Seed};
pub use kernels::{
    givens_zeroing_second, sigma2_submultiplicative_check, singular_values_2x2, Mat2, Rotation2,
    SingularPair,
};
pub use oracle::{best_pair_bruteforce, PairTable, DEFAULT_ORACLE_CAP};
pub use proofaudit::{
    audit_invariants, build_tensors, case_b_existence_check, gram_certificate, spectral_summary,
    AuditReport, GramCertificate, ProofTensors, SpectralSummary,
};
pub use selection::{
    case_a_reduce, case_b_pair, select_pair, sigma_bound, verify_selection, CaseAStep,
    Certificate, Selection, Terminal,
};
