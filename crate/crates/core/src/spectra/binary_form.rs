//! Exact definiteness of even-order binary forms.

use crate::error::{Error, Result};
use crate::poly::{sturm_real_roots, Poly};
use crate::tensor::{for_each_index, CubicTensor};

/// Verdict of a binary form test. `No` carries a unit vector and the form
/// value there.
#[derive(Debug, Clone, PartialEq)]
pub enum FormVerdict {
    Yes { min_value: f64 },
    No { witness: Vec<f64>, value: f64 },
}

impl FormVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, FormVerdict::Yes { .. })
    }
}

fn check_shape(t: &CubicTensor) -> Result<()> {
    if t.dim() != 2 {
        return Err(Error::InvalidParameter(format!(
            "binary form needs n = 2 (got {})",
            t.dim()
        )));
    }
    if t.order() % 2 == 1 {
        return Err(Error::UnsupportedOrder {
            order: t.order(),
            reason: "binary form test needs even order",
        });
    }
    Ok(())
}

/// `q(t) = T (1, t)^k`, the dehomogenized form.
pub fn binary_form_poly(t: &CubicTensor) -> Result<Poly> {
    if t.dim() != 2 {
        return Err(Error::InvalidParameter("binary form needs n = 2".into()));
    }
    let mut c = vec![0.0; t.order() + 1];
    for_each_index(t.order(), 2, |pos, idx| {
        c[idx.iter().sum::<usize>()] += t.entries()[pos];
    });
    Ok(Poly::new(c))
}

/// Minimum of the form over the unit circle and a minimizer.
///
/// With `x = (1, t) / sqrt(1 + t^2)` the form is `q(t) / (1 + t^2)^{k/2}`,
/// whose critical points are the real roots of `q'(t)(1 + t^2) - k t q(t)`.
/// The direction `(0, 1)` is checked separately.
fn circle_minimum(t: &CubicTensor) -> Result<(Vec<f64>, f64)> {
    let k = t.order();
    let q = binary_form_poly(t)?;
    let half = (k / 2) as i32;
    let value_at = |s: f64| q.eval(s) / (1.0 + s * s).powi(half);
    let one_plus_t2 = Poly::new(vec![1.0, 0.0, 1.0]);
    let critical = mul(&q.derivative(), &one_plus_t2).sub(&q.shifted(1).scaled(k as f64));
    let mut candidates = vec![0.0];
    if !critical.is_zero() {
        candidates.extend(sturm_real_roots(&critical, None)?);
    }
    let at_infinity = q.coeffs().get(k).copied().unwrap_or(0.0);
    let best = candidates
        .into_iter()
        .map(|s| {
            let r = (1.0 + s * s).sqrt();
            (vec![1.0 / r, s / r], value_at(s))
        })
        .chain(std::iter::once((vec![0.0, 1.0], at_infinity)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty candidate list");
    Ok(best)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let mut c = vec![0.0; a.coeffs().len() + b.coeffs().len() - 1];
    for (i, x) in a.coeffs().iter().enumerate() {
        for (j, y) in b.coeffs().iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    Poly::new(c)
}

/// PSD iff the form is at least `-tol` on the unit circle.
pub fn binary_form_psd(t: &CubicTensor, tol: f64) -> Result<FormVerdict> {
    check_shape(t)?;
    let (x, v) = circle_minimum(t)?;
    Ok(if v >= -tol {
        FormVerdict::Yes { min_value: v }
    } else {
        FormVerdict::No {
            value: t.form_value(&x)?,
            witness: x,
        }
    })
}

/// PD iff the form exceeds `tol` on the unit circle.
pub fn binary_form_pd(t: &CubicTensor, tol: f64) -> Result<FormVerdict> {
    check_shape(t)?;
    let (x, v) = circle_minimum(t)?;
    Ok(if v > tol {
        FormVerdict::Yes { min_value: v }
    } else {
        FormVerdict::No {
            value: t.form_value(&x)?,
            witness: x,
        }
    })
}
