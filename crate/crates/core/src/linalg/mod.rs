//! Complex Hermitian matrix algebra.
//!
//! Everything downstream works with dense complex matrices at desk scale
//! (block dimensions in the single digits). [`CMat`] is the raw dense type;
//! [`HermMatrix`] and [`DensityMatrix`] are validated wrappers.
//! Superoperators are stored through their Choi matrices ([`SuperOperator`])
//! and general linear maps between Hermitian spaces through their action on
//! an orthonormal basis ([`LinMap`]).
//!
//! Tensor index convention: the first factor is the outer (slow) index, so a
//! matrix on `A ⊗ B` has row index `p * dim_b + q` for `p` over `A` and `q`
//! over `B`. The Choi matrix of a map `L(A) → L(B)` lives on `B ⊗ A` (output
//! space outer).

mod basis;
mod cmat;
mod eig;
mod herm;
mod linmap;
mod rand_mat;
mod superop;

pub use basis::{herm_basis, traceless_directions};
pub use cmat::{cmat_from_nested, cmat_to_nested, kron, CMat};
pub use eig::{chol, eig_herm, exp_herm, forward_solve, spectral_map, tri_congruence, EigDecomposition};
pub use herm::{inner, partial_trace_adjoint, partial_trace_first, partial_trace_second, real_embed, DensityMatrix, HermMatrix};
pub use linmap::LinMap;
pub use rand_mat::{random_density, random_herm, random_psd, random_unit_vector};
pub use superop::SuperOperator;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex<f64>;

/// Validation tolerances shared by the constructors in this module.
///
/// The defaults are absolute tolerances of `1e-9` on entry symmetry,
/// eigenvalue nonnegativity, and the unit trace.
#[derive(Debug, Clone, Copy)]
pub struct NumericContext {
    /// Max allowed deviation `|m[j][k] - conj(m[k][j])|` for Hermitian inputs.
    pub herm_tol: f64,
    /// Min allowed eigenvalue for positive semidefinite inputs.
    pub psd_tol: f64,
    /// Max allowed deviation of `tr(X)` from one for density matrices.
    pub trace_tol: f64,
}

impl Default for NumericContext {
    fn default() -> Self {
        NumericContext {
            herm_tol: 1e-9,
            psd_tol: 1e-9,
            trace_tol: 1e-9,
        }
    }
}

/// Errors produced by the linear algebra layer.
#[derive(Debug, Clone, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not Hermitian: max entry asymmetry {max_dev:.3e} exceeds tolerance {tol:.1e}")]
    NotHermitian { max_dev: f64, tol: f64 },
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eig:.3e}")]
    NotPsd { min_eig: f64 },
    #[error("trace must equal one: got {trace}")]
    TraceNotOne { trace: f64 },
    #[error("eigendecomposition did not converge")]
    EigDidNotConverge,
    #[error("Cholesky factorization failed: matrix not positive definite (pivot {pivot:.3e} at index {index})")]
    NotPositiveDefinite { pivot: f64, index: usize },
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
}
