//! Dense complex matrices, row-major.

use std::fmt;
use std::ops::{Index, IndexMut};

use super::{C64, LinalgError};

/// Dense complex matrix with row-major storage.
#[derive(Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        CMat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![C64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = CMat::zeros(dim, dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMat { rows, cols, data }
    }

    /// Diagonal matrix from real entries.
    pub fn diag(entries: &[f64]) -> Self {
        let mut m = CMat::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m[(i, i)] = C64::new(e, 0.0);
        }
        m
    }

    /// The matrix unit `E_ij = e_i e_j†`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = CMat::zeros(dim, dim);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: C64) -> CMat {
        let data = self.data.iter().map(|a| a * s).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale_re(&self, s: f64) -> CMat {
        self.scale(C64::new(s, 0.0))
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMat {
        CMat::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> CMat {
        let data = self.data.iter().map(|a| a.conj()).collect();
        CMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max deviation from Hermitian symmetry, `max |m[i][j] - conj(m[j][i])|`.
    pub fn max_herm_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// Hermitian part `(M + M†)/2`.
    pub fn herm_part(&self) -> CMat {
        assert!(self.is_square());
        CMat::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    /// Frobenius inner product `tr(A† B)`.
    pub fn inner(&self, other: &CMat) -> C64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Apply to a vector.
    pub fn matvec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// Outer product `v w†` as a matrix.
    pub fn outer(v: &[C64], w: &[C64]) -> CMat {
        CMat::from_fn(v.len(), w.len(), |i, j| v[i] * w[j].conj())
    }

    /// Swap the tensor factors of a matrix on `A ⊗ B`, producing the same
    /// operator expressed on `B ⊗ A`.
    pub fn swap_factors(&self, dim_a: usize, dim_b: usize) -> CMat {
        assert_eq!(self.rows, dim_a * dim_b);
        assert!(self.is_square());
        CMat::from_fn(self.rows, self.cols, |row, col| {
            let (q, p) = (row / dim_a, row % dim_a);
            let (s, r) = (col / dim_a, col % dim_a);
            self[(p * dim_b + q, r * dim_b + s)]
        })
    }

    /// Partial transpose on the second tensor factor of a matrix on `A ⊗ B`.
    pub fn partial_transpose_second(&self, dim_a: usize, dim_b: usize) -> CMat {
        assert_eq!(self.rows, dim_a * dim_b);
        assert!(self.is_square());
        CMat::from_fn(self.rows, self.cols, |row, col| {
            let (p, q) = (row / dim_b, row % dim_b);
            let (r, s) = (col / dim_b, col % dim_b);
            self[(p * dim_b + s, r * dim_b + q)]
        })
    }

    /// Trace out the first factor of a matrix on `A ⊗ B`, returning a matrix on `B`.
    pub fn trace_first(&self, dim_a: usize, dim_b: usize) -> CMat {
        assert_eq!(self.rows, dim_a * dim_b);
        CMat::from_fn(dim_b, dim_b, |q, s| {
            (0..dim_a).map(|p| self[(p * dim_b + q, p * dim_b + s)]).sum()
        })
    }

    /// Trace out the second factor of a matrix on `A ⊗ B`, returning a matrix on `A`.
    pub fn trace_second(&self, dim_a: usize, dim_b: usize) -> CMat {
        assert_eq!(self.rows, dim_a * dim_b);
        CMat::from_fn(dim_a, dim_a, |p, r| {
            (0..dim_b).map(|q| self[(p * dim_b + q, r * dim_b + q)]).sum()
        })
    }
}

impl Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for CMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product with the first factor as the outer (slow) index.
///
/// The entry of `a ⊗ b` at row `(p, r)`, column `(q, s)` is `a[p][q] * b[r][s]`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    CMat::from_fn(rows, cols, |i, j| {
        let (p, r) = (i / b.rows(), i % b.rows());
        let (q, s) = (j / b.cols(), j % b.cols());
        a[(p, q)] * b[(r, s)]
    })
}

/// Serialize a complex matrix as row-major nested arrays of `[re, im]` pairs.
pub fn cmat_to_nested(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Parse a complex matrix from row-major nested arrays of `[re, im]` pairs.
///
/// All rows must have the same length.
pub fn cmat_from_nested(rows: &[Vec<[f64; 2]>]) -> Result<CMat, LinalgError> {
    let nrows = rows.len();
    if nrows == 0 {
        return Err(LinalgError::InvalidDimension("empty matrix".into()));
    }
    let ncols = rows[0].len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(LinalgError::DimensionMismatch(format!(
                "row {} has {} entries, expected {}",
                i,
                r.len(),
                ncols
            )));
        }
    }
    Ok(CMat::from_fn(nrows, ncols, |i, j| {
        C64::new(rows[i][j][0], rows[i][j][1])
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn kron_identity_gives_identity() {
        let i2 = CMat::identity(2);
        let k = kron(&i2, &i2);
        assert_eq!(k, CMat::identity(4));
    }

    #[test]
    fn kron_diagonal_entrywise_products() {
        let a = CMat::diag(&[1.0, 2.0]);
        let b = CMat::diag(&[3.0, 4.0]);
        let k = kron(&a, &b);
        assert_eq!(k, CMat::diag(&[3.0, 4.0, 6.0, 8.0]));
    }

    #[test]
    fn swap_factors_on_product() {
        let a = CMat::diag(&[1.0, 2.0]);
        let b = CMat::from_fn(3, 3, |i, j| c((i * 3 + j) as f64, 1.0));
        let ab = kron(&a, &b);
        let ba = kron(&b, &a);
        assert!(ab.swap_factors(2, 3).max_abs_diff(&ba) < 1e-15);
    }

    #[test]
    fn trace_factors_on_product() {
        let a = CMat::diag(&[1.0, 2.0]);
        let b = CMat::from_fn(2, 2, |i, j| c(0.1 * (i as f64 + 1.0), j as f64));
        let ab = kron(&a, &b);
        assert!(ab.trace_first(2, 2).max_abs_diff(&b.scale_re(3.0)) < 1e-15);
        let tr_b = b.trace();
        assert!(ab.trace_second(2, 2).max_abs_diff(&a.scale(tr_b)) < 1e-15);
    }

    #[test]
    fn partial_transpose_second_on_product() {
        let a = CMat::from_fn(2, 2, |i, j| c(i as f64, j as f64 + 0.5));
        let b = CMat::from_fn(2, 2, |i, j| c(1.0 + j as f64, i as f64));
        let got = kron(&a, &b).partial_transpose_second(2, 2);
        let want = kron(&a, &b.transpose());
        assert!(got.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn nested_round_trip() {
        let m = CMat::from_fn(2, 3, |i, j| c(i as f64, j as f64 - 1.0));
        let nested = cmat_to_nested(&m);
        let back = cmat_from_nested(&nested).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn nested_rejects_ragged_rows() {
        let rows = vec![vec![[0.0, 0.0], [1.0, 0.0]], vec![[2.0, 0.0]]];
        assert!(cmat_from_nested(&rows).is_err());
    }
}
