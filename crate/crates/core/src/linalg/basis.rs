//! Orthonormal basis of the real vector space of Hermitian matrices.

use super::cmat::CMat;
use super::herm::HermMatrix;
use super::C64;

/// Orthonormal basis of `Her(C^dim)` with `dim²` elements.
///
/// The first `dim` elements span the diagonal matrices: the normalized
/// identity `I/√dim` followed by `dim - 1` traceless diagonal matrices. The
/// remaining elements are the normalized symmetric and antisymmetric
/// off-diagonal pairs `(E_jk + E_kj)/√2` and `i(E_jk - E_kj)/√2`; all
/// elements after the first are traceless.
pub fn herm_basis(dim: usize) -> Vec<HermMatrix> {
    assert!(dim >= 1, "dimension must be positive");
    let mut basis = Vec::with_capacity(dim * dim);
    let norm = 1.0 / (dim as f64).sqrt();
    basis.push(HermMatrix::scaled_identity(dim, norm));
    // Traceless diagonal elements: diag(1, .., 1, -k, 0, .., 0) / sqrt(k(k+1)).
    for k in 1..dim {
        let mut entries = vec![0.0; dim];
        let scale = 1.0 / ((k * (k + 1)) as f64).sqrt();
        for e in entries.iter_mut().take(k) {
            *e = scale;
        }
        entries[k] = -(k as f64) * scale;
        basis.push(HermMatrix::diag(&entries));
    }
    let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
    for j in 0..dim {
        for k in j + 1..dim {
            let mut sym = CMat::zeros(dim, dim);
            sym[(j, k)] = C64::new(inv_sqrt2, 0.0);
            sym[(k, j)] = C64::new(inv_sqrt2, 0.0);
            basis.push(HermMatrix::from_herm_part(sym));
            let mut asym = CMat::zeros(dim, dim);
            asym[(j, k)] = C64::new(0.0, inv_sqrt2);
            asym[(k, j)] = C64::new(0.0, -inv_sqrt2);
            basis.push(HermMatrix::from_herm_part(asym));
        }
    }
    basis
}

/// Spanning set of the traceless Hermitian matrices on `C^dim`: the basis
/// elements of [`herm_basis`] with their trace component `(tr/dim)·I`
/// removed and zero elements dropped. Differences of density matrices span
/// exactly this space.
pub fn traceless_directions(dim: usize) -> Vec<HermMatrix> {
    herm_basis(dim)
        .into_iter()
        .filter_map(|b| {
            let projected = b.shift(-b.trace() / dim as f64);
            if projected.norm_fro() < 1e-12 {
                None
            } else {
                Some(projected)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::herm::inner;
    use super::*;

    #[test]
    fn dim_one_is_scalar_one() {
        let basis = herm_basis(1);
        assert_eq!(basis.len(), 1);
        assert!((basis[0].entry(0, 0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dim_two_has_three_traceless_after_projection() {
        let basis = herm_basis(2);
        assert_eq!(basis.len(), 4);
        let nonzero_traceless = basis
            .iter()
            .map(|b| b.shift(-b.trace() / 2.0))
            .filter(|m| m.norm_fro() > 1e-12)
            .count();
        assert_eq!(nonzero_traceless, 3);
    }

    #[test]
    fn first_dim_elements_are_diagonal_rest_traceless() {
        for dim in [2usize, 3, 4] {
            let basis = herm_basis(dim);
            assert_eq!(basis.len(), dim * dim);
            for (idx, b) in basis.iter().enumerate() {
                if idx < dim {
                    for i in 0..dim {
                        for j in 0..dim {
                            if i != j {
                                assert!(b.entry(i, j).norm() < 1e-15);
                            }
                        }
                    }
                }
                if idx >= 1 {
                    assert!(b.trace().abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn gram_matrix_is_identity() {
        for dim in [1usize, 2, 3, 4] {
            let basis = herm_basis(dim);
            for (p, bp) in basis.iter().enumerate() {
                for (q, bq) in basis.iter().enumerate() {
                    let g = inner(bp, bq).unwrap();
                    let want = if p == q { 1.0 } else { 0.0 };
                    assert!((g - want).abs() < 1e-12, "gram[{p}][{q}] = {g}");
                }
            }
        }
    }

    #[test]
    fn traceless_directions_span_count() {
        for dim in [2usize, 3] {
            let dirs = traceless_directions(dim);
            assert_eq!(dirs.len(), dim * dim - 1);
            for d in &dirs {
                assert!(d.trace().abs() < 1e-12);
            }
        }
    }
}
