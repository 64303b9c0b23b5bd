//! Seeded random matrices for generators and tests.

use rand::Rng;
use rand_distr::StandardNormal;

use super::cmat::CMat;
use super::herm::{DensityMatrix, HermMatrix};
use super::C64;

/// Random Hermitian matrix with Gaussian entries: real `N(0,1)` diagonal,
/// complex `N(0,1/2) + i N(0,1/2)` off-diagonal.
pub fn random_herm(dim: usize, rng: &mut impl Rng) -> HermMatrix {
    let mut m = CMat::zeros(dim, dim);
    let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
    for i in 0..dim {
        let d: f64 = rng.sample(StandardNormal);
        m[(i, i)] = C64::new(d, 0.0);
        for j in i + 1..dim {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = C64::new(re * inv_sqrt2, im * inv_sqrt2);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermMatrix::from_herm_part(m)
}

/// Random PSD matrix `G G†` for a square complex Ginibre `G`.
pub fn random_psd(dim: usize, rng: &mut impl Rng) -> HermMatrix {
    let g = CMat::from_fn(dim, dim, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im)
    });
    HermMatrix::from_herm_part(g.matmul(&g.adjoint()))
}

/// Random density matrix: a trace-normalized random PSD matrix.
pub fn random_density(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let p = random_psd(dim, rng);
    let t = p.trace();
    DensityMatrix::new(p.scale(1.0 / t)).expect("normalized PSD matrix is a density")
}

/// Random unit vector, uniform on the complex sphere.
pub fn random_unit_vector(dim: usize, rng: &mut impl Rng) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..dim)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                C64::new(re, im)
            })
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}
