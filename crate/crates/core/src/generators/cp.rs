use crate::error::{Error, Result};
use crate::tensor::CubicTensor;

/// Nonnegative vectors `u^(1) .. u^(r)` generating `sum_l (u^(l))^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSet {
    m: usize,
    factors: Vec<Vec<f64>>,
}

impl FactorSet {
    pub fn new(m: usize, factors: Vec<Vec<f64>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter("factor order must be >= 2".into()));
        }
        let n = factors
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidParameter("factor set needs r >= 1".into()))?;
        if n == 0 {
            return Err(Error::InvalidParameter("factors must be non-empty".into()));
        }
        for (l, u) in factors.iter().enumerate() {
            if u.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: u.len(),
                });
            }
            if let Some((i, &v)) = u.iter().enumerate().find(|(_, v)| !v.is_finite() || **v < 0.0) {
                return Err(Error::NegativeEntry {
                    location: format!("factor {l}, component {i}"),
                    value: v,
                });
            }
        }
        Ok(Self { m, factors })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.factors[0].len()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[Vec<f64>] {
        &self.factors
    }
}

/// `sum_l (u^(l))^m`, accumulated in factor order.
pub fn gen_completely_positive(f: &FactorSet) -> Result<CubicTensor> {
    let mut acc = CubicTensor::zeros(f.m, f.dim())?;
    for u in &f.factors {
        acc = acc.add(&CubicTensor::rank_one_power(u, f.m)?)?;
    }
    Ok(acc.mark_symmetric())
}
