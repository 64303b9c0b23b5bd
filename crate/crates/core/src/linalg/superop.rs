//! Superoperators stored through their Choi representation.

use super::cmat::{kron, CMat};
use super::eig::eig_herm;
use super::herm::HermMatrix;
use super::linmap::LinMap;
use super::LinalgError;

/// A linear map `Φ : L(A) → L(B)` between operator spaces, stored via its
/// Choi matrix `J(Φ) = Σ_ij Φ(E_ij) ⊗ E_ij` on `B ⊗ A` (output space outer).
///
/// The Choi matrix is Hermitian iff the map is Hermitian-preserving, which
/// the [`HermMatrix`] field enforces at construction. The Choi matrix is PSD
/// iff the map is completely positive; that is queryable, not enforced.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperOperator {
    dim_in: usize,
    dim_out: usize,
    choi: HermMatrix,
}

impl SuperOperator {
    pub fn new(dim_in: usize, dim_out: usize, choi: HermMatrix) -> Result<Self, LinalgError> {
        if choi.dim() != dim_in * dim_out {
            return Err(LinalgError::DimensionMismatch(format!(
                "Choi matrix must be {}x{} for a map from dim {} to dim {}, got {}x{}",
                dim_in * dim_out,
                dim_in * dim_out,
                dim_in,
                dim_out,
                choi.dim(),
                choi.dim()
            )));
        }
        Ok(SuperOperator { dim_in, dim_out, choi })
    }

    /// The identity map on `L(C^dim)`, with Choi matrix `Σ_ij E_ij ⊗ E_ij`.
    pub fn identity(dim: usize) -> Self {
        let mut choi = CMat::zeros(dim * dim, dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = CMat::unit(dim, i, j);
                let term = kron(&e, &e);
                choi = choi.add(&term);
            }
        }
        SuperOperator {
            dim_in: dim,
            dim_out: dim,
            choi: HermMatrix::from_herm_part(choi),
        }
    }

    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        SuperOperator { dim_in, dim_out, choi: HermMatrix::zero(dim_in * dim_out) }
    }

    /// Assemble the Choi matrix from the action of a general linear map on
    /// the matrix units: `J(Φ) = Σ_ij Φ(E_ij) ⊗ E_ij`.
    pub fn from_action(dim_in: usize, dim_out: usize, mut action: impl FnMut(&CMat) -> CMat) -> Result<Self, LinalgError> {
        let mut choi = CMat::zeros(dim_in * dim_out, dim_in * dim_out);
        for i in 0..dim_in {
            for j in 0..dim_in {
                let e = CMat::unit(dim_in, i, j);
                let img = action(&e);
                assert_eq!(img.rows(), dim_out, "action output dimension mismatch");
                choi = choi.add(&kron(&img, &e));
            }
        }
        let choi = HermMatrix::new(choi)?;
        SuperOperator::new(dim_in, dim_out, choi)
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn choi(&self) -> &HermMatrix {
        &self.choi
    }

    /// A map is completely positive iff its Choi matrix is PSD.
    pub fn is_completely_positive(&self, tol: f64) -> bool {
        match eig_herm(&self.choi) {
            Ok(eig) => eig.lambda_min() >= -tol,
            Err(_) => false,
        }
    }

    /// Apply the map to a Hermitian matrix by recovering the action from the
    /// Choi representation: `Φ(a) = tr_A( J(Φ) (I_B ⊗ aᵀ) )`, where the
    /// partial trace is over the input space (the second tensor factor).
    pub fn apply(&self, a: &HermMatrix) -> Result<HermMatrix, LinalgError> {
        if a.dim() != self.dim_in {
            return Err(LinalgError::DimensionMismatch(format!(
                "superoperator input must be {}x{}, got {}x{}",
                self.dim_in,
                self.dim_in,
                a.dim(),
                a.dim()
            )));
        }
        let out = self.apply_cmat(a.mat());
        Ok(HermMatrix::from_herm_part(out))
    }

    /// Action on a general (possibly non-Hermitian) matrix.
    pub fn apply_cmat(&self, a: &CMat) -> CMat {
        let rhs = kron(&CMat::identity(self.dim_out), &a.transpose());
        self.choi.mat().matmul(&rhs).trace_second(self.dim_out, self.dim_in)
    }

    /// Representation of the map over the orthonormal Hermitian bases of its
    /// input and output spaces.
    pub fn to_linmap(&self) -> LinMap {
        LinMap::from_action(self.dim_in, self.dim_out, |b| {
            self.apply(b).expect("basis element has the input dimension")
        })
    }

    /// Apply the adjoint map `Φ†`, the unique map with
    /// `⟨Φ†(y), x⟩ = ⟨y, Φ(x)⟩` for all Hermitian `x`, `y`.
    ///
    /// Implemented through the real matrix representation of the map over
    /// [`super::herm_basis`].
    pub fn adjoint_apply(&self, y: &HermMatrix) -> Result<HermMatrix, LinalgError> {
        if y.dim() != self.dim_out {
            return Err(LinalgError::DimensionMismatch(format!(
                "adjoint input must be {}x{}, got {}x{}",
                self.dim_out,
                self.dim_out,
                y.dim(),
                y.dim()
            )));
        }
        Ok(self.to_linmap().adjoint().apply(y))
    }

    /// Rebuild the Choi matrix from the map's action on the matrix units.
    /// Equals `choi()` up to rounding; used as a round-trip check.
    pub fn choi_from_action(&self) -> HermMatrix {
        let mut out = CMat::zeros(self.choi.dim(), self.choi.dim());
        for i in 0..self.dim_in {
            for j in 0..self.dim_in {
                let e = CMat::unit(self.dim_in, i, j);
                out = out.add(&kron(&self.apply_cmat(&e), &e));
            }
        }
        HermMatrix::from_herm_part(out)
    }
}
