//! Linear maps between Hermitian spaces, stored by their action on the
//! orthonormal basis from [`super::herm_basis`].

use super::basis::herm_basis;
use super::herm::{inner, HermMatrix};

/// A real-linear map `Her(C^dim_in) → Her(C^dim_out)` represented by the
/// images of the orthonormal Hermitian basis of the input space. This is the
/// `dim_out² × dim_in²` real matrix representation of the map.
#[derive(Clone, Debug)]
pub struct LinMap {
    dim_in: usize,
    dim_out: usize,
    images: Vec<HermMatrix>,
}

impl LinMap {
    /// Build from an arbitrary action on Hermitian matrices.
    pub fn from_action(dim_in: usize, dim_out: usize, mut action: impl FnMut(&HermMatrix) -> HermMatrix) -> Self {
        let images: Vec<HermMatrix> = herm_basis(dim_in)
            .iter()
            .map(|b| {
                let img = action(b);
                assert_eq!(img.dim(), dim_out, "action output dimension mismatch");
                img
            })
            .collect();
        LinMap { dim_in, dim_out, images }
    }

    /// The zero map.
    pub fn zero(dim_in: usize, dim_out: usize) -> Self {
        LinMap {
            dim_in,
            dim_out,
            images: vec![HermMatrix::zero(dim_out); dim_in * dim_in],
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn images(&self) -> &[HermMatrix] {
        &self.images
    }

    /// Apply the map by expanding the argument over the input basis.
    pub fn apply(&self, x: &HermMatrix) -> HermMatrix {
        assert_eq!(x.dim(), self.dim_in, "LinMap input dimension mismatch");
        let basis = herm_basis(self.dim_in);
        let mut out = HermMatrix::zero(self.dim_out);
        for (b, img) in basis.iter().zip(&self.images) {
            let coeff = inner(b, x).expect("dims agree");
            if coeff != 0.0 {
                out = out.add(&img.scale(coeff));
            }
        }
        out
    }

    /// The adjoint map with respect to the Frobenius inner product.
    pub fn adjoint(&self) -> LinMap {
        let in_basis = herm_basis(self.dim_in);
        let out_basis = herm_basis(self.dim_out);
        // T[q][p] = ⟨B_out[q], L(B_in[p])⟩; adjoint images are Σ_p T[q][p]·B_in[p].
        let images = out_basis
            .iter()
            .map(|bq| {
                let mut img = HermMatrix::zero(self.dim_in);
                for (p, bp) in in_basis.iter().enumerate() {
                    let t = inner(bq, &self.images[p]).expect("dims agree");
                    if t != 0.0 {
                        img = img.add(&bp.scale(t));
                    }
                }
                img
            })
            .collect();
        LinMap { dim_in: self.dim_out, dim_out: self.dim_in, images }
    }

    /// Pointwise sum of two maps with identical shapes.
    pub fn add(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.dim_in, self.dim_out), (other.dim_in, other.dim_out));
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.add(b))
            .collect();
        LinMap { dim_in: self.dim_in, dim_out: self.dim_out, images }
    }

    pub fn scale(&self, s: f64) -> LinMap {
        LinMap {
            dim_in: self.dim_in,
            dim_out: self.dim_out,
            images: self.images.iter().map(|m| m.scale(s)).collect(),
        }
    }
}
