//! Hermitian eigendecomposition via cyclic complex Jacobi rotations, plus
//! Cholesky factorization and spectral matrix functions.

use super::cmat::CMat;
use super::herm::HermMatrix;
use super::{C64, LinalgError};

/// Result of a Hermitian eigendecomposition: `a = V diag(values) V†` with
/// `values` sorted descending and orthonormal columns in `vectors`.
#[derive(Clone, Debug)]
pub struct EigDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl EigDecomposition {
    /// Largest eigenvalue.
    pub fn lambda_max(&self) -> f64 {
        self.values[0]
    }

    /// Smallest eigenvalue.
    pub fn lambda_min(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Vec<C64> {
        (0..self.vectors.rows()).map(|r| self.vectors[(r, k)]).collect()
    }

    /// Rebuild `V diag(f(values)) V†`.
    pub fn assemble(&self, f: impl Fn(f64) -> f64) -> HermMatrix {
        let n = self.vectors.rows();
        let mut out = CMat::zeros(n, n);
        for k in 0..n {
            let fv = f(self.values[k]);
            if fv == 0.0 {
                continue;
            }
            let col = self.vector(k);
            out = out.add(&CMat::outer(&col, &col).scale_re(fv));
        }
        HermMatrix::from_herm_part(out)
    }
}

const MAX_SWEEPS: usize = 100;

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal entry with a unitary plane
/// rotation; sweeps repeat until the off-diagonal Frobenius norm is
/// negligible relative to the matrix norm. Eigenvalues are returned in
/// descending order with matching orthonormal eigenvector columns.
pub fn eig_herm(a: &HermMatrix) -> Result<EigDecomposition, LinalgError> {
    let n = a.dim();
    if n == 0 {
        return Err(LinalgError::InvalidDimension("empty matrix".into()));
    }
    let mut m = a.mat().clone();
    let mut v = CMat::identity(n);
    let scale = a.norm_fro().max(1.0);
    let threshold = 1e-14 * scale;

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        if off_diag_norm(&m) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let phase = apq / r;
                // Real Jacobi angle for the phase-rotated 2x2 block; t is the
                // small-magnitude root of t² - 2θt - 1 = 0.
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    -1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // Unitary U on the (p, q) plane: columns mix with the phase
                // folded in so that U† M U has a zero (p, q) entry.
                let upp = phase.scale(c);
                let upq = phase.scale(-s);
                let uqp = C64::new(s, 0.0);
                let uqq = C64::new(c, 0.0);

                // M <- M U (columns p, q).
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * upp + mkq * uqp;
                    m[(k, q)] = mkp * upq + mkq * uqq;
                }
                // M <- U† M (rows p, q).
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = upp.conj() * mpk + uqp.conj() * mqk;
                    m[(q, k)] = upq.conj() * mpk + uqq.conj() * mqk;
                }
                // V <- V U.
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
            }
        }
    }
    if !converged && off_diag_norm(&m) > threshold * 10.0 {
        return Err(LinalgError::EigDidNotConverge);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let vectors = CMat::from_fn(n, n, |r, k| v[(r, order[k])]);
    Ok(EigDecomposition { values, vectors })
}

fn off_diag_norm(m: &CMat) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += m[(p, q)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Apply a real function to the spectrum: `V diag(f(λ)) V†`.
pub fn spectral_map(a: &HermMatrix, f: impl Fn(f64) -> f64) -> Result<HermMatrix, LinalgError> {
    Ok(eig_herm(a)?.assemble(f))
}

/// Matrix exponential of a Hermitian matrix. Always positive definite;
/// `exp(0) = I`.
pub fn exp_herm(a: &HermMatrix) -> HermMatrix {
    eig_herm(a).expect("Hermitian Jacobi converges").assemble(f64::exp)
}

/// Cholesky factorization of a Hermitian positive definite matrix; returns
/// the lower factor `L` with `a = L L†`.
pub fn chol(a: &HermMatrix) -> Result<CMat, LinalgError> {
    let n = a.dim();
    let mut l = CMat::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a.entry(i, j);
            for k in 0..j {
                sum -= l[(i, k)] * l[(j, k)].conj();
            }
            if i == j {
                let pivot = sum.re;
                if pivot <= 0.0 || !pivot.is_finite() {
                    return Err(LinalgError::NotPositiveDefinite { pivot, index: i });
                }
                l[(i, j)] = C64::new(pivot.sqrt(), 0.0);
            } else {
                l[(i, j)] = sum / l[(j, j)].re;
            }
        }
    }
    Ok(l)
}

/// Solve `L X = B` for lower-triangular `L` (forward substitution), column
/// by column.
pub fn forward_solve(l: &CMat, b: &CMat) -> CMat {
    let n = l.rows();
    let mut x = b.clone();
    for col in 0..b.cols() {
        for i in 0..n {
            let mut sum = x[(i, col)];
            for k in 0..i {
                sum -= l[(i, k)] * x[(k, col)];
            }
            x[(i, col)] = sum / l[(i, i)].re;
        }
    }
    x
}

/// Congruence `L⁻¹ M L⁻†` for lower-triangular `L` and Hermitian `M`.
pub fn tri_congruence(l: &CMat, m: &CMat) -> CMat {
    let t = forward_solve(l, m);
    // (L⁻¹ T†)† = T L⁻†
    forward_solve(l, &t.adjoint()).adjoint()
}
