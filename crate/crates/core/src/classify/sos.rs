//! Explicit sum-of-squares decompositions of the components
//! `F_i(x) = (A x^{m-1})_i`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::FactorSet;
use crate::linalg::sym_matrix_eigs;
use crate::tensor::CubicTensor;

/// Order-3 decomposition: `F_i(x) = sum_k (forms[i][k] . x)^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct M3Sos {
    pub forms: Vec<Vec<Vec<f64>>>,
    /// `(slice, eigenvalue)` for every eigenvalue in `[-tol, 0)` set to zero.
    pub clamped: Vec<(usize, f64)>,
}

impl M3Sos {
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        self.forms
            .iter()
            .map(|fs| {
                fs.iter()
                    .map(|l| {
                        let d: f64 = l.iter().zip(x).map(|(a, b)| a * b).sum();
                        d * d
                    })
                    .sum()
            })
            .collect()
    }

    pub fn term_count(&self) -> usize {
        self.forms.iter().map(Vec::len).sum()
    }
}

/// Eigen-factorization of each slice matrix `A(i) = sum_k L_k L_k^T`.
/// Eigenvalues in `[-1e-9 |A(i)|_inf, 0)` are clamped to zero; anything lower
/// is an error.
pub fn sos_decompose_m3(a: &CubicTensor) -> Result<M3Sos> {
    if a.order() != 3 {
        return Err(Error::UnsupportedOrder {
            order: a.order(),
            reason: "explicit slice decomposition needs order 3",
        });
    }
    let mut forms = Vec::with_capacity(a.dim());
    let mut clamped = Vec::new();
    for i in 0..a.dim() {
        let s = a.slice(i)?.as_matrix()?;
        let tol = 1e-9 * s.max_abs();
        let eig = sym_matrix_eigs(&s, true)?;
        let mut fs = Vec::new();
        for (k, &lambda) in eig.values.iter().enumerate() {
            if lambda < -tol {
                return Err(Error::NotPsd {
                    slice: i,
                    eigenvalue: lambda,
                });
            }
            if lambda < 0.0 {
                clamped.push((i, lambda));
                continue;
            }
            if lambda == 0.0 {
                continue;
            }
            let r = lambda.sqrt();
            let v = eig.vector(k).expect("vectors requested");
            fs.push(v.into_iter().map(|c| r * c).collect());
        }
        forms.push(fs);
    }
    Ok(M3Sos { forms, clamped })
}

/// One square `(coeff (u . x)^exponent)^2`, with `coeff = sqrt(u_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpTerm {
    pub factor: usize,
    pub coeff: f64,
    pub exponent: usize,
}

/// Decomposition `F_i(x) = sum_l u_i ((u^(l) . x)^{(m-1)/2})^2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CpSos {
    pub factors: Vec<Vec<f64>>,
    pub terms: Vec<Vec<CpTerm>>,
}

impl CpSos {
    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let dots: Vec<f64> = self
            .factors
            .iter()
            .map(|u| u.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        self.terms
            .iter()
            .map(|ts| {
                ts.iter()
                    .map(|t| {
                        let q = t.coeff * dots[t.factor].powi(t.exponent as i32);
                        q * q
                    })
                    .sum()
            })
            .collect()
    }
}

pub fn sos_decompose_cp(f: &FactorSet) -> Result<CpSos> {
    if f.order().is_multiple_of(2) {
        return Err(Error::UnsupportedOrder {
            order: f.order(),
            reason: "factor decomposition of components needs odd order",
        });
    }
    let exponent = (f.order() - 1) / 2;
    let terms = (0..f.dim())
        .map(|i| {
            f.factors()
                .iter()
                .enumerate()
                .filter(|(_, u)| u[i] > 0.0)
                .map(|(l, u)| CpTerm {
                    factor: l,
                    coeff: u[i].sqrt(),
                    exponent,
                })
                .collect()
        })
        .collect();
    Ok(CpSos {
        factors: f.factors().to_vec(),
        terms,
    })
}
