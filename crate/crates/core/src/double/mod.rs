//! Quasi-matched pairs, quasi-bicrossed products, quantum doubles and their
//! canonical R-matrices.

mod bicrossed;
mod matched;
mod quantum;
mod rmatrix;

pub(crate) use bicrossed::collect_failing;
pub use bicrossed::{build_quasi_bicrossed, check_bicrossed_structure, Construction, Provenance, QuasiBicrossedProduct};
pub use matched::{check_action_closures, check_quasi_matched, derive_actions, QuasiMatchedPair};
pub use quantum::{check_closed_form, quantum_double, DoubleKernel, DoubleOptions, DEFAULT_MAX_TERMS, MATERIALIZE_LIMIT};
pub use rmatrix::{
    check_inverse, check_qybe, check_quasi_braided, check_quasi_cocommutative, check_regular, r_bar, r_matrix, QuasiRMatrix,
};
