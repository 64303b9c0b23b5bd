//! Hermitian matrices, density matrices, and the operations tied to them.

use super::cmat::{kron, CMat};
use super::eig::eig_herm;
use super::{C64, LinalgError, NumericContext};

/// A validated Hermitian matrix.
///
/// Construction checks entry symmetry against [`NumericContext::herm_tol`]
/// and then stores the exact Hermitian part `(M + M†)/2`, so downstream
/// algebra never accumulates asymmetry.
#[derive(Clone, PartialEq)]
pub struct HermMatrix {
    mat: CMat,
}

impl HermMatrix {
    pub fn new(mat: CMat) -> Result<Self, LinalgError> {
        Self::with_context(mat, &NumericContext::default())
    }

    pub fn with_context(mat: CMat, ctx: &NumericContext) -> Result<Self, LinalgError> {
        if !mat.is_square() {
            return Err(LinalgError::DimensionMismatch(format!(
                "Hermitian matrix must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let dev = mat.max_herm_deviation();
        if dev > ctx.herm_tol {
            return Err(LinalgError::NotHermitian { max_dev: dev, tol: ctx.herm_tol });
        }
        Ok(HermMatrix { mat: mat.herm_part() })
    }

    /// Wrap a matrix that is Hermitian by construction, taking its Hermitian
    /// part unconditionally. For internal use on structurally Hermitian
    /// products whose rounding asymmetry may be large in absolute terms when
    /// badly conditioned; the public gate with validation is [`Self::new`].
    pub(crate) fn from_herm_part(mat: CMat) -> Self {
        HermMatrix { mat: mat.herm_part() }
    }

    pub fn zero(dim: usize) -> Self {
        HermMatrix { mat: CMat::zeros(dim, dim) }
    }

    pub fn identity(dim: usize) -> Self {
        HermMatrix { mat: CMat::identity(dim) }
    }

    pub fn scaled_identity(dim: usize, s: f64) -> Self {
        HermMatrix { mat: CMat::identity(dim).scale_re(s) }
    }

    pub fn diag(entries: &[f64]) -> Self {
        HermMatrix { mat: CMat::diag(entries) }
    }

    /// Build from rows of real entries; the result must be symmetric.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mat = CMat::from_fn(n, n, |i, j| C64::new(rows[i][j], 0.0));
        HermMatrix::new(mat)
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn into_mat(self) -> CMat {
        self.mat
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn add(&self, other: &HermMatrix) -> HermMatrix {
        HermMatrix { mat: self.mat.add(&other.mat) }
    }

    pub fn sub(&self, other: &HermMatrix) -> HermMatrix {
        HermMatrix { mat: self.mat.sub(&other.mat) }
    }

    /// Scaling by a real keeps the matrix Hermitian.
    pub fn scale(&self, s: f64) -> HermMatrix {
        HermMatrix { mat: self.mat.scale_re(s) }
    }

    /// `self + s · I`.
    pub fn shift(&self, s: f64) -> HermMatrix {
        let mut mat = self.mat.clone();
        for i in 0..mat.rows() {
            mat[(i, i)] += C64::new(s, 0.0);
        }
        HermMatrix { mat }
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    pub fn norm_fro(&self) -> f64 {
        self.mat.norm_fro()
    }

    pub fn max_abs_diff(&self, other: &HermMatrix) -> f64 {
        self.mat.max_abs_diff(&other.mat)
    }
}

impl std::fmt::Debug for HermMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Herm{:?}", self.mat)
    }
}

/// A player strategy: Hermitian, positive semidefinite, trace one.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    herm: HermMatrix,
}

impl DensityMatrix {
    pub fn new(herm: HermMatrix) -> Result<Self, LinalgError> {
        Self::with_context(herm, &NumericContext::default())
    }

    pub fn with_context(herm: HermMatrix, ctx: &NumericContext) -> Result<Self, LinalgError> {
        let eig = eig_herm(&herm)?;
        let min_eig = eig.values.last().copied().unwrap_or(0.0);
        if min_eig < -ctx.psd_tol {
            return Err(LinalgError::NotPsd { min_eig });
        }
        let trace = herm.trace();
        if (trace - 1.0).abs() > ctx.trace_tol {
            return Err(LinalgError::TraceNotOne { trace });
        }
        Ok(DensityMatrix { herm })
    }

    /// The maximally mixed state `I / dim`.
    pub fn uniform(dim: usize) -> Self {
        DensityMatrix { herm: HermMatrix::scaled_identity(dim, 1.0 / dim as f64) }
    }

    /// The pure state `v v† / ‖v‖²`.
    pub fn pure(v: &[C64]) -> Result<Self, LinalgError> {
        let norm_sq: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(LinalgError::InvalidDimension("zero vector has no pure state".into()));
        }
        let mat = CMat::outer(v, v).scale_re(1.0 / norm_sq);
        Ok(DensityMatrix { herm: HermMatrix::from_herm_part(mat) })
    }

    /// Project a Hermitian matrix to the density set: clip negative
    /// eigenvalues at zero and renormalize the trace.
    pub fn project(herm: &HermMatrix) -> Result<Self, LinalgError> {
        let eig = eig_herm(herm)?;
        let clipped: Vec<f64> = eig.values.iter().map(|&v| v.max(0.0)).collect();
        let total: f64 = clipped.iter().sum();
        if total <= 1e-14 {
            return Err(LinalgError::NotPsd { min_eig: eig.values.last().copied().unwrap_or(0.0) });
        }
        let mut mat = CMat::zeros(herm.dim(), herm.dim());
        for (k, &v) in clipped.iter().enumerate() {
            if v == 0.0 {
                continue;
            }
            let col: Vec<C64> = (0..herm.dim()).map(|r| eig.vectors[(r, k)]).collect();
            mat = mat.add(&CMat::outer(&col, &col).scale_re(v / total));
        }
        Ok(DensityMatrix { herm: HermMatrix::from_herm_part(mat) })
    }

    pub fn dim(&self) -> usize {
        self.herm.dim()
    }

    pub fn as_herm(&self) -> &HermMatrix {
        &self.herm
    }

    pub fn mat(&self) -> &CMat {
        self.herm.mat()
    }
}

/// Frobenius inner product `tr(A† B)` of two Hermitian matrices.
///
/// For Hermitian inputs the value is real up to rounding; the imaginary part
/// is dropped.
pub fn inner(a: &HermMatrix, b: &HermMatrix) -> Result<f64, LinalgError> {
    if a.dim() != b.dim() {
        return Err(LinalgError::DimensionMismatch(format!(
            "inner product of {}x{} and {}x{}",
            a.dim(),
            a.dim(),
            b.dim(),
            b.dim()
        )));
    }
    Ok(a.mat().inner(b.mat()).re)
}

/// Partial trace over the first factor: maps a Hermitian matrix on `A ⊗ B`
/// to one on `B`, sending `A ⊗ B ↦ tr(A) B` on product inputs.
pub fn partial_trace_first(m: &HermMatrix, dim_a: usize, dim_b: usize) -> Result<HermMatrix, LinalgError> {
    if m.dim() != dim_a * dim_b {
        return Err(LinalgError::DimensionMismatch(format!(
            "partial trace of a {}x{} matrix with declared factors {}x{}",
            m.dim(),
            m.dim(),
            dim_a,
            dim_b
        )));
    }
    Ok(HermMatrix::from_herm_part(m.mat().trace_first(dim_a, dim_b)))
}

/// Partial trace over the second factor: maps a Hermitian matrix on `A ⊗ B`
/// to one on `A`.
pub fn partial_trace_second(m: &HermMatrix, dim_a: usize, dim_b: usize) -> Result<HermMatrix, LinalgError> {
    if m.dim() != dim_a * dim_b {
        return Err(LinalgError::DimensionMismatch(format!(
            "partial trace of a {}x{} matrix with declared factors {}x{}",
            m.dim(),
            m.dim(),
            dim_a,
            dim_b
        )));
    }
    Ok(HermMatrix::from_herm_part(m.mat().trace_second(dim_a, dim_b)))
}

/// Adjoint of the first-factor partial trace: `B ↦ I_A ⊗ B`.
///
/// Satisfies `⟨partial_trace_adjoint(b), m⟩ = ⟨b, partial_trace_first(m)⟩`.
pub fn partial_trace_adjoint(b: &HermMatrix, dim_a: usize) -> HermMatrix {
    HermMatrix::from_herm_part(kron(&CMat::identity(dim_a), b.mat()))
}

/// Real symmetric embedding `[[Re(a), -Im(a)], [Im(a), Re(a)]]`.
///
/// The embedding is returned as a real-entried Hermitian matrix of dimension
/// `2·dim`. Its spectrum is the spectrum of `a` with every eigenvalue
/// doubled in multiplicity, so `a ⪰ 0` iff the embedding is, and
/// `⟨a, b⟩ = ½ ⟨embed(a), embed(b)⟩`.
pub fn real_embed(a: &HermMatrix) -> HermMatrix {
    let d = a.dim();
    let mat = CMat::from_fn(2 * d, 2 * d, |i, j| {
        let z = a.entry(i % d, j % d);
        let v = match (i / d, j / d) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            (1, 0) => z.im,
            _ => unreachable!(),
        };
        C64::new(v, 0.0)
    });
    HermMatrix::from_herm_part(mat)
}
