//! Spectral radius of nonnegative tensors by power iteration with
//! Collatz-Wielandt bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::CubicTensor;

/// Certified bracket `lower <= rho(B) <= upper`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralRadiusEstimate {
    pub lower: f64,
    pub upper: f64,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusOptions {
    pub max_iter: usize,
    /// Relative gap `upper - lower <= rel_gap * max(1, upper)` counts as converged.
    pub rel_gap: f64,
    /// Positive perturbation added to every entry while iterating.
    pub perturbation: f64,
}

impl Default for RadiusOptions {
    fn default() -> Self {
        Self {
            max_iter: 1000,
            rel_gap: 1e-8,
            perturbation: 1e-12,
        }
    }
}

/// `min_i` and `max_i` of `(B x^{m-1})_i / x_i^{m-1}` for positive `x`.
fn ratio_bounds(b: &CubicTensor, x: &[f64]) -> Result<(f64, f64)> {
    let f = b.apply(x)?;
    let k = b.order() as i32 - 1;
    Ok(f.iter()
        .zip(x)
        .map(|(fi, xi)| fi / xi.powi(k))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        }))
}

/// Brackets `rho(B)` for entrywise nonnegative `B`.
///
/// The iteration `x <- ((B + eps E) x^{m-1})^{[1/(m-1)]}`, normalized,
/// converges for the positive perturbation. The bounds are always evaluated on
/// the unperturbed `B`, so they are valid whether or not it converges. The
/// first bounds come from `x = 1` and are the row-sum bounds.
pub fn nonneg_spectral_radius(b: &CubicTensor, opts: RadiusOptions) -> Result<SpectralRadiusEstimate> {
    if let Some((idx, v)) = b.first_negative() {
        return Err(Error::NegativeEntry {
            location: format!("{idx:?}"),
            value: v,
        });
    }
    let n = b.dim();
    let k = b.order() - 1;
    let mut x = vec![1.0; n];
    let (mut lower, mut upper) = ratio_bounds(b, &x)?;
    let done = |lo: f64, hi: f64| hi - lo <= opts.rel_gap * hi.max(1.0);
    if done(lower, upper) {
        return Ok(SpectralRadiusEstimate {
            lower,
            upper,
            converged: true,
            iterations: 0,
        });
    }
    let inv = 1.0 / k as f64;
    for it in 1..=opts.max_iter {
        let f = b.apply(&x)?;
        // (B + eps E) x^{m-1} adds eps (sum x)^{m-1} to every component.
        let bump = opts.perturbation * x.iter().sum::<f64>().powi(k as i32);
        let mut next: Vec<f64> = f.iter().map(|v| (v + bump).powf(inv)).collect();
        let norm = next.iter().fold(0.0f64, |m, v| m.max(*v));
        next.iter_mut().for_each(|v| *v /= norm);
        x = next;
        let (lo, hi) = ratio_bounds(b, &x)?;
        lower = lower.max(lo);
        upper = upper.min(hi);
        if done(lower, upper) {
            return Ok(SpectralRadiusEstimate {
                lower,
                upper,
                converged: true,
                iterations: it,
            });
        }
    }
    Ok(SpectralRadiusEstimate {
        lower,
        upper,
        converged: false,
        iterations: opts.max_iter,
    })
}
