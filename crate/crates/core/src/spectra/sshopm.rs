//! Multi-start local search for H-eigenpairs.
//!
//! Each start runs damped Newton (Levenberg-Marquardt) on
//! `A x^{m-1} - lambda x^{[m-1]} = 0`, `(|x|^2 - 1) / 2 = 0`, accepting a step
//! only when the residual decreases. The search is evidence only: a missing
//! eigenvalue is never a certificate of absence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{rayleigh_lambda, sort_pairs, HEigenpair, Method};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::tensor::{componentwise_pow, CubicTensor, SYMMETRY_TOL};

/// Initial damping of the Newton iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shift {
    /// `1 + m max|a|`.
    Auto,
    Fixed(f64),
}

impl Shift {
    pub fn value(self, a: &CubicTensor) -> f64 {
        match self {
            Shift::Auto => 1.0 + a.order() as f64 * a.max_abs(),
            Shift::Fixed(s) => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SshopmOptions {
    pub shift: Shift,
    /// Random starts; each is run from `x0` and `-x0`.
    pub starts: usize,
    pub max_iter: usize,
    /// Stop once the residual is below `tol * max(1, |lambda|)`.
    pub tol: f64,
    pub seed: u64,
}

impl Default for SshopmOptions {
    fn default() -> Self {
        Self {
            shift: Shift::Auto,
            starts: 20,
            max_iter: 500,
            tol: 1e-13,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SshopmResult {
    /// Verified pairs, one per eigenvalue cluster of width `1e-6`.
    pub pairs: Vec<HEigenpair>,
    pub runs: usize,
    /// Runs that ended without a verified pair.
    pub failures: usize,
}

const DEDUP_WIDTH: f64 = 1e-6;

/// `A x^{m-2}` as an `n x n` matrix.
fn partial_contraction(a: &CubicTensor, x: &[f64]) -> Matrix {
    let n = a.dim();
    let mut v = a.entries().to_vec();
    for _ in 0..a.order() - 2 {
        v = v.chunks_exact(n).map(|c| c.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
    }
    Matrix::from_row_major(n, v).expect("n x n contraction")
}

fn residual_vec(a: &CubicTensor, x: &[f64], lambda: f64) -> Result<Vec<f64>> {
    let f = a.apply(x)?;
    let p = componentwise_pow(x, a.order() - 1);
    let mut r: Vec<f64> = f.iter().zip(&p).map(|(f, p)| f - lambda * p).collect();
    r.push(0.5 * (x.iter().map(|v| v * v).sum::<f64>() - 1.0));
    Ok(r)
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// One damped Newton run from `x0`. Returns `None` when the run does not end
/// at a verified pair.
pub fn sshopm_from(a: &CubicTensor, x0: &[f64], opts: &SshopmOptions) -> Result<Option<HEigenpair>> {
    validate(a)?;
    if x0.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: x0.len(),
        });
    }
    let nx = norm2(x0);
    if nx == 0.0 {
        return Err(Error::ZeroVector);
    }
    let n = a.dim();
    let m = a.order();
    let mut x: Vec<f64> = x0.iter().map(|v| v / nx).collect();
    let mut lambda = rayleigh_lambda(a, &x)?;
    let mut r = residual_vec(a, &x, lambda)?;
    let mut mu = opts.shift.value(a).max(f64::MIN_POSITIVE);
    for _ in 0..opts.max_iter {
        let eq = r[..n].iter().fold(0.0f64, |s, v| s.max(v.abs()));
        if eq <= opts.tol * lambda.abs().max(1.0) * a.scale() && r[n].abs() <= 1e-14 {
            break;
        }
        // Jacobian, (n+1) x (n+1)
        let h = partial_contraction(a, &x);
        let xm2 = componentwise_pow(&x, m - 2);
        let xm1 = componentwise_pow(&x, m - 1);
        let jac = Matrix::from_fn(n + 1, |i, j| match (i < n, j < n) {
            (true, true) => {
                let d = if i == j { lambda * xm2[i] } else { 0.0 };
                (m - 1) as f64 * (h.get(i, j) - d)
            }
            (true, false) => -xm1[i],
            (false, true) => x[j],
            (false, false) => 0.0,
        });
        let jtj = Matrix::from_fn(n + 1, |i, j| {
            let s: f64 = (0..=n).map(|k| jac.get(k, i) * jac.get(k, j)).sum();
            if i == j {
                s + mu
            } else {
                s
            }
        });
        let g: Vec<f64> = (0..=n).map(|j| -(0..=n).map(|k| jac.get(k, j) * r[k]).sum::<f64>()).collect();
        let Some(step) = solve(&jtj, &g) else {
            mu *= 4.0;
            continue;
        };
        let xt: Vec<f64> = x.iter().zip(&step).map(|(a, b)| a + b).collect();
        let lt = lambda + step[n];
        let rt = residual_vec(a, &xt, lt)?;
        if norm2(&rt) < norm2(&r) {
            x = xt;
            lambda = lt;
            r = rt;
            mu /= 3.0;
        } else {
            mu *= 4.0;
            if mu > 1e20 {
                break;
            }
        }
    }
    if norm2(&x) == 0.0 || !lambda.is_finite() || x.iter().any(|v| !v.is_finite()) {
        return Ok(None);
    }
    let pair = HEigenpair::new(a, lambda, &x, Method::Sshopm)?;
    // rescoring lambda on the normalized vector keeps the pair consistent
    let lambda = rayleigh_lambda(a, &pair.x)?;
    let pair = HEigenpair::new(a, lambda, &pair.x, Method::Sshopm)?;
    Ok(pair.is_verified(m).then_some(pair))
}

fn validate(a: &CubicTensor) -> Result<()> {
    if a.order() < 3 {
        return Err(Error::UnsupportedOrder {
            order: a.order(),
            reason: "search needs order >= 3",
        });
    }
    if !a.symmetric_hint() {
        if let Some((i, j)) = a.symmetry_violation(SYMMETRY_TOL * a.scale()) {
            return Err(Error::NotSymmetric(i, j));
        }
    }
    Ok(())
}

/// Seeded multi-start search. Results are merged in a fixed order, so the
/// output depends only on `a` and `opts`.
pub fn sshopm(a: &CubicTensor, opts: &SshopmOptions) -> Result<SshopmResult> {
    validate(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut found = Vec::new();
    let mut failures = 0;
    let mut runs = 0;
    for _ in 0..opts.starts {
        let mut x0: Vec<f64> = (0..a.dim()).map(|_| StandardNormal.sample(&mut rng)).collect();
        if x0.iter().all(|v: &f64| *v == 0.0) {
            x0[0] = 1.0;
        }
        for sign in [1.0, -1.0] {
            let start: Vec<f64> = x0.iter().map(|v| sign * v).collect();
            runs += 1;
            match sshopm_from(a, &start, opts)? {
                Some(p) => found.push(p),
                None => failures += 1,
            }
        }
    }
    sort_pairs(&mut found);
    let mut pairs: Vec<HEigenpair> = Vec::new();
    for p in found {
        match pairs.last_mut() {
            Some(q) if (p.lambda - q.lambda).abs() <= DEDUP_WIDTH * q.lambda.abs().max(1.0) => {
                if p.residual < q.residual {
                    *q = p;
                }
            }
            _ => pairs.push(p),
        }
    }
    Ok(SshopmResult {
        pairs,
        runs,
        failures,
    })
}
