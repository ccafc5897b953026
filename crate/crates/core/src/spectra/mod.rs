//! H-eigenpairs and related spectral kernels.
//!
//! An H-eigenpair `(lambda, x)` of an order-`m` tensor is a real solution of
//! `A x^{m-1} = lambda x^{[m-1]}` with `x != 0`.

mod binary_form;
mod exact_n2;
mod radius;
mod sshopm;

pub use binary_form::{binary_form_pd, binary_form_poly, binary_form_psd, FormVerdict};
pub use exact_n2::{h_eigs_exact_n2, row_polys, Continuum, ExactSpectrum};
pub use radius::{nonneg_spectral_radius, RadiusOptions, SpectralRadiusEstimate};
pub use sshopm::{sshopm, sshopm_from, Shift, SshopmOptions, SshopmResult};

pub use crate::linalg::{matrix_pd, matrix_psd, sym_matrix_eigs, Definiteness, SymEigen};
pub use crate::poly::{sturm_nonneg, sturm_real_roots, Nonnegativity};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{componentwise_pow, CubicTensor};

/// Which routine produced an eigenpair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Method {
    #[serde(rename = "exact-n2")]
    ExactN2,
    #[serde(rename = "sshopm")]
    Sshopm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ExactN2 => "exact-n2",
            Method::Sshopm => "sshopm",
        }
    }
}

/// Real eigenvalue with a real unit eigenvector and its residual
/// `|A x^{m-1} - lambda x^{[m-1]}|_inf`.
#[derive(Debug, Clone, PartialEq)]
pub struct HEigenpair {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub residual: f64,
    pub method: Method,
}

impl HEigenpair {
    /// Builds a pair from a nonzero vector: normalizes `x` to a unit vector
    /// whose first non-negligible component is positive, then computes the
    /// residual.
    pub fn new(a: &CubicTensor, lambda: f64, x: &[f64], method: Method) -> Result<Self> {
        let x = canonical_direction(x)?;
        let residual = eig_residual(a, lambda, &x)?;
        Ok(Self {
            lambda,
            x,
            residual,
            method,
        })
    }

    /// Residual tolerance `1e-8 * max(1, |lambda|, |x|^{m-1})`.
    pub fn residual_bound(&self, order: usize) -> f64 {
        let norm = self.x.iter().map(|v| v * v).sum::<f64>().sqrt();
        1e-8 * 1f64.max(self.lambda.abs()).max(norm.powi(order as i32 - 1))
    }

    pub fn is_verified(&self, order: usize) -> bool {
        self.residual <= self.residual_bound(order)
    }
}

/// Unit 2-norm copy of `x` with its first component above `1e-12` (relative)
/// made positive. H-eigenvectors are only defined up to nonzero scaling.
pub fn canonical_direction(x: &[f64]) -> Result<Vec<f64>> {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::ZeroVector);
    }
    let sign = x
        .iter()
        .find(|v| v.abs() > 1e-12 * norm)
        .map_or(1.0, |v| v.signum());
    Ok(x.iter().map(|v| sign * v / norm).collect())
}

/// `|A x^{m-1} - lambda x^{[m-1]}|_inf`.
pub fn eig_residual(a: &CubicTensor, lambda: f64, x: &[f64]) -> Result<f64> {
    if x.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    let f = a.apply(x)?;
    let p = componentwise_pow(x, a.order() - 1);
    Ok(f
        .iter()
        .zip(&p)
        .fold(0.0f64, |m, (fi, pi)| m.max((fi - lambda * pi).abs())))
}

/// Least-squares eigenvalue estimate `<F(x), x^{[m-1]}> / |x^{[m-1]}|^2`.
pub fn rayleigh_lambda(a: &CubicTensor, x: &[f64]) -> Result<f64> {
    let f = a.apply(x)?;
    let p = componentwise_pow(x, a.order() - 1);
    let den: f64 = p.iter().map(|v| v * v).sum();
    if den == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(f.iter().zip(&p).map(|(a, b)| a * b).sum::<f64>() / den)
}

/// Sorts by eigenvalue, then lexicographically by eigenvector.
pub(crate) fn sort_pairs(pairs: &mut [HEigenpair]) {
    pairs.sort_by(|a, b| {
        a.lambda.total_cmp(&b.lambda).then_with(|| {
            a.x.iter()
                .zip(&b.x)
                .map(|(p, q)| p.total_cmp(q))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_diagonal;

    #[test]
    fn residual_of_exact_pair_is_zero() {
        let d = gen_diagonal(3, &[2.0, 5.0]).unwrap();
        assert_eq!(eig_residual(&d, 2.0, &[1.0, 0.0]).unwrap(), 0.0);
        assert_eq!(eig_residual(&d, 5.0, &[0.0, 3.0]).unwrap(), 0.0);
        assert_eq!(eig_residual(&d, 2.0, &[0.0, 0.0]), Err(Error::ZeroVector));
    }

    #[test]
    fn residual_grows_continuously() {
        let d = gen_diagonal(3, &[2.0, 5.0]).unwrap();
        let mut last = 0.0;
        for k in 1..6 {
            let eps = 1e-3 * k as f64;
            let r = eig_residual(&d, 2.0, &[1.0, eps]).unwrap();
            assert!(r > last && r < 10.0 * eps);
            last = r;
        }
    }

    #[test]
    fn canonical_direction_flips_sign() {
        let x = canonical_direction(&[0.0, -3.0, 4.0]).unwrap();
        assert_eq!(x, vec![0.0, 0.6, -0.8]);
        assert!(canonical_direction(&[0.0, 0.0]).is_err());
    }
}
