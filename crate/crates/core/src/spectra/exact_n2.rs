//! Complete real H-spectrum of symmetric two-dimensional tensors.
//!
//! Every H-eigenvector is a multiple of either `(z, 1)` or `(1, 0)`. On the
//! line `x = (z, 1)` the two equations become `p_0(z) = lambda z^{m-1}` and
//! `p_1(z) = lambda`, so eigenvectors there are the real roots of
//! `g(z) = p_0(z) - p_1(z) z^{m-1}` with `lambda = p_1(z)`. The direction
//! `(1, 0)` is an eigenvector iff `a_{10..0} = 0`, with `lambda = a_{0..0}`.

use super::{rayleigh_lambda, sort_pairs, HEigenpair, Method};
use crate::error::{Error, Result};
use crate::poly::{sturm_real_roots, Poly};
use crate::tensor::{for_each_index, CubicTensor, SYMMETRY_TOL};

/// Coefficients at or below this multiple of the tensor scale are rounding
/// noise in `g`.
const COEFF_NOISE: f64 = 1e-14;

/// The eigenvalue curve when `g` vanishes identically: every `(z, 1)` is an
/// eigenvector with eigenvalue `lambda_of_z(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Continuum {
    pub lambda_of_z: Poly,
    /// Eigenvalue at `(1, 0)` when that direction is also an eigenvector.
    pub at_infinity: Option<f64>,
}

/// Result of [`h_eigs_exact_n2`]: isolated pairs, or a continuum flag.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSpectrum {
    pub pairs: Vec<HEigenpair>,
    pub continuum: Option<Continuum>,
    /// The elimination polynomial `g`.
    pub elimination: Poly,
}

impl ExactSpectrum {
    /// No H-eigenvalue at all.
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty() && self.continuum.is_none()
    }

    /// Smallest H-eigenvalue, `None` for an empty spectrum, `-inf` when a
    /// continuum is unbounded below.
    pub fn min_lambda(&self) -> Option<f64> {
        let isolated = self.pairs.iter().map(|p| p.lambda);
        let curve = self.continuum.as_ref().map(|c| {
            let tail = c.at_infinity.unwrap_or(f64::INFINITY);
            crate::poly::min_on_real(&c.lambda_of_z).map_or(f64::NEG_INFINITY, |(_, v)| v.min(tail))
        });
        isolated.chain(curve).reduce(f64::min)
    }
}

/// `p_i(z)`: component `i` of `A (z, 1)^{m-1}` as a polynomial in `z`.
pub fn row_polys(a: &CubicTensor) -> Result<[Poly; 2]> {
    if a.dim() != 2 {
        return Err(Error::InvalidParameter(format!(
            "exact enumeration needs n = 2 (got {})",
            a.dim()
        )));
    }
    let m = a.order();
    let mut coeffs = [vec![0.0; m], vec![0.0; m]];
    let block = a.entries().len() / 2;
    for (row, c) in coeffs.iter_mut().enumerate() {
        for_each_index(m - 1, 2, |pos, tail| {
            let zeros = tail.iter().filter(|&&i| i == 0).count();
            c[zeros] += a.entries()[row * block + pos];
        });
    }
    let [p0, p1] = coeffs;
    Ok([Poly::new(p0), Poly::new(p1)])
}

fn denoise(p: &Poly, noise: f64) -> Poly {
    Poly::new(
        p.coeffs()
            .iter()
            .map(|&c| if c.abs() <= noise { 0.0 } else { c })
            .collect(),
    )
}

/// Enumerates all real H-eigenpairs of a symmetric tensor with `n = 2`.
pub fn h_eigs_exact_n2(a: &CubicTensor) -> Result<ExactSpectrum> {
    if a.order() < 2 {
        return Err(Error::UnsupportedOrder {
            order: a.order(),
            reason: "eigenpairs need order >= 2",
        });
    }
    let [p0, p1] = row_polys(a)?;
    if !a.symmetric_hint() {
        if let Some((i, j)) = a.symmetry_violation(SYMMETRY_TOL * a.scale()) {
            return Err(Error::NotSymmetric(i, j));
        }
    }
    let m = a.order();
    let noise = COEFF_NOISE * a.scale();
    let g = denoise(&p0.sub(&p1.shifted(m - 1)), noise);

    let tail: Vec<usize> = std::iter::once(1).chain(std::iter::repeat_n(0, m - 1)).collect();
    let infinity_is_eigen = a.get(&tail).abs() <= noise;
    let lambda_inf = a.get(&vec![0; m]);

    if g.is_zero() {
        return Ok(ExactSpectrum {
            pairs: Vec::new(),
            continuum: Some(Continuum {
                lambda_of_z: p1,
                at_infinity: infinity_is_eigen.then_some(lambda_inf),
            }),
            elimination: g,
        });
    }

    let mut pairs = Vec::new();
    if infinity_is_eigen {
        pairs.push(HEigenpair::new(a, lambda_inf, &[1.0, 0.0], Method::ExactN2)?);
    }
    for z in sturm_real_roots(&g, None)? {
        let x = [z, 1.0];
        let lambda = rayleigh_lambda(a, &x)?;
        pairs.push(HEigenpair::new(a, lambda, &x, Method::ExactN2)?);
    }
    sort_pairs(&mut pairs);
    Ok(ExactSpectrum {
        pairs,
        continuum: None,
        elimination: g,
    })
}
