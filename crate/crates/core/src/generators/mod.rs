//! Structured tensor families.
//!
//! Formulas stated with 1-based indices are converted here; every generator
//! returns an exactly symmetric tensor with the symmetric hint set.

mod cp;
mod hankel;
mod hypergraph;

pub use cp::{gen_completely_positive, FactorSet};
pub use hankel::{associated_hankel_matrix, detect_hankel, gen_hankel, HankelSpec};
pub use hypergraph::{gen_hypergraph_tensors, Hypergraph, HypergraphTensors};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::tensor::CubicTensor;

/// Largest factorial argument accepted by [`gen_pascal`].
pub const PASCAL_MAX_ARG: usize = 170;

fn check_order_dim(m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "order and dimension must be >= 2 (got m={m}, n={n})"
        )));
    }
    Ok(())
}

fn all_equal(idx: &[usize]) -> bool {
    idx.windows(2).all(|w| w[0] == w[1])
}

pub fn gen_identity(m: usize, n: usize) -> Result<CubicTensor> {
    check_order_dim(m, n)?;
    gen_diagonal(m, &vec![1.0; n])
}

/// Diagonal tensor with `d_i` at `(i, .., i)`.
pub fn gen_diagonal(m: usize, d: &[f64]) -> Result<CubicTensor> {
    if m < 2 || d.is_empty() {
        return Err(Error::InvalidParameter("diagonal needs m >= 2 and n >= 1".into()));
    }
    CubicTensor::from_symmetric_fn(m, d.len(), |idx| {
        if all_equal(idx) {
            d[idx[0]]
        } else {
            0.0
        }
    })
}

/// Positive Cauchy tensor `1 / (c_{i_1} + .. + c_{i_m})`.
pub fn gen_cauchy(m: usize, c: &[f64]) -> Result<CubicTensor> {
    if m < 2 || c.is_empty() {
        return Err(Error::InvalidParameter("cauchy needs m >= 2 and n >= 1".into()));
    }
    if let Some(bad) = c.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "cauchy generating vector must be positive, found {bad}"
        )));
    }
    CubicTensor::from_symmetric_fn(m, c.len(), |idx| {
        1.0 / idx.iter().fold(0.0, |acc, &i| acc + c[i])
    })
}

/// The Cauchy generating vector of the Hilbert tensor, `c_i = i - (m-1)/m`
/// for 1-based `i`.
pub fn hilbert_cauchy_vector(m: usize, n: usize) -> Vec<f64> {
    (1..=n)
        .map(|i| i as f64 - (m as f64 - 1.0) / m as f64)
        .collect()
}

/// Hilbert tensor, `1 / (i_1 + .. + i_m + 1)` with 0-based indices.
pub fn gen_hilbert(m: usize, n: usize) -> Result<CubicTensor> {
    check_order_dim(m, n)?;
    gen_hankel(&HankelSpec::hilbert(m, n)?)
}

/// Pascal tensor `(s)! / (j_1! .. j_m!)` where `j_k` are the 0-based indices
/// and `s` their sum. Factorials are exact big integers.
pub fn gen_pascal(m: usize, n: usize) -> Result<CubicTensor> {
    check_order_dim(m, n)?;
    let max_sum = (n - 1) * m;
    if max_sum > PASCAL_MAX_ARG {
        return Err(Error::InvalidParameter(format!(
            "pascal factorial argument {max_sum} exceeds {PASCAL_MAX_ARG}"
        )));
    }
    let mut fact = vec![BigUint::one()];
    for k in 1..=max_sum {
        let next = &fact[k - 1] * BigUint::from(k);
        fact.push(next);
    }
    let mut err = None;
    let t = CubicTensor::from_symmetric_fn(m, n, |idx| {
        let s: usize = idx.iter().sum();
        let den = idx.iter().fold(BigUint::one(), |acc, &j| acc * &fact[j]);
        let q = &fact[s] / den;
        q.to_f64().unwrap_or_else(|| {
            err = Some(Error::InvalidParameter("pascal entry overflows f64".into()));
            0.0
        })
    })?;
    err.map_or(Ok(t), Err)
}

/// Lehmer tensor `min / max` of the 1-based index tuple.
pub fn gen_lehmer(m: usize, n: usize) -> Result<CubicTensor> {
    check_order_dim(m, n)?;
    CubicTensor::from_symmetric_fn(m, n, |idx| {
        (idx[0] + 1) as f64 / (idx[idx.len() - 1] + 1) as f64
    })
}

/// Order-3, dimension-2 symmetric B-tensor with no H-eigenvalue:
/// `b_000 = 10`, `b_111 = 6`, `b_001 = -sqrt 3`, `b_011 = sqrt 3` (and
/// permutations).
pub fn gen_barren_b_tensor() -> CubicTensor {
    let s3 = 3f64.sqrt();
    CubicTensor::from_symmetric_fn(3, 2, |idx| match idx.iter().sum::<usize>() {
        0 => 10.0,
        1 => -s3,
        2 => s3,
        _ => 6.0,
    })
    .expect("fixed shape")
}

/// Order-3 tensor with diagonal `c1`, entries with exactly two equal indices
/// `c2`, and `-1` where all indices differ. Requires `c1, c2 >= 0` and
/// `c1 - 3 c2 - 3 >= 0`.
pub fn gen_signed_spsd(n: usize, c1: f64, c2: f64) -> Result<CubicTensor> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    if !(c1 >= 0.0 && c2 >= 0.0 && c1 - 3.0 * c2 - 3.0 >= 0.0) || !c1.is_finite() || !c2.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "need c1, c2 >= 0 and c1 - 3 c2 - 3 >= 0 (got c1={c1}, c2={c2})"
        )));
    }
    CubicTensor::from_symmetric_fn(3, n, |idx| {
        if idx[0] == idx[2] {
            c1
        } else if idx[0] == idx[1] || idx[1] == idx[2] {
            c2
        } else {
            -1.0
        }
    })
}
