//! Dense cubic tensors.
//!
//! A [`CubicTensor`] of order `m` and dimension `n` stores all `n^m` entries in
//! row-major multi-index order (first index slowest). Indices are 0-based.
//! Every reduction runs in a fixed left-to-right order so results are
//! bit-reproducible.

use crate::error::{Error, Result};

/// Largest number of stored entries accepted by the dense layout.
pub const MAX_ENTRIES: usize = 10_000_000;

/// Default absolute tolerance used for symmetry checks.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A multi-index `(i_1, ..., i_m)` into a cubic tensor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>, order: usize, dim: usize) -> Result<Self> {
        if indices.len() != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                got: indices.len(),
            });
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        Ok(Self(indices))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    /// The index tuple sorted ascending, i.e. the representative of its orbit
    /// under index permutations.
    pub fn canonical(&self) -> MultiIndex {
        let mut v = self.0.clone();
        v.sort_unstable();
        MultiIndex(v)
    }
}

/// Advances `idx` to the next tuple in row-major order. Returns `false` after
/// the last tuple.
pub(crate) fn next_index(idx: &mut [usize], dim: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dim {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// Visits every multi-index of an `order`-tuple over `0..dim` in row-major
/// order, passing the running linear position.
pub(crate) fn for_each_index(order: usize, dim: usize, mut f: impl FnMut(usize, &[usize])) {
    let mut idx = vec![0usize; order];
    let mut pos = 0usize;
    loop {
        f(pos, &idx);
        pos += 1;
        if !next_index(&mut idx, dim) {
            break;
        }
    }
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    u32::try_from(order)
        .ok()
        .and_then(|m| dim.checked_pow(m))
        .filter(|&len| len <= MAX_ENTRIES)
        .ok_or_else(|| Error::Shape(format!("{dim}^{order} entries exceed the dense limit")))
}

/// Dense real tensor of order `m` and dimension `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicTensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
    symmetric: bool,
}

impl CubicTensor {
    /// Builds a tensor from row-major entries. The symmetric hint starts unset.
    pub fn new(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self> {
        if order < 1 || dim < 1 {
            return Err(Error::Shape(format!("order {order} and dim {dim} must be positive")));
        }
        let len = checked_len(order, dim)?;
        if entries.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                got: entries.len(),
            });
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self {
            order,
            dim,
            entries,
            symmetric: false,
        })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        let len = checked_len(order, dim)?;
        let mut t = Self::new(order, dim, vec![0.0; len])?;
        t.symmetric = true;
        Ok(t)
    }

    /// Builds a tensor by evaluating `f` at every multi-index.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let len = checked_len(order, dim)?;
        let mut entries = Vec::with_capacity(len);
        for_each_index(order, dim, |_, idx| entries.push(f(idx)));
        Self::new(order, dim, entries)
    }

    /// Like [`from_fn`](Self::from_fn) but evaluates `f` on the sorted index
    /// tuple only, so the result is exactly symmetric.
    pub fn from_symmetric_fn(
        order: usize,
        dim: usize,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Result<Self> {
        let mut sorted = vec![0usize; order];
        let mut t = Self::from_fn(order, dim, |idx| {
            sorted.copy_from_slice(idx);
            sorted.sort_unstable();
            f(&sorted)
        })?;
        t.symmetric = true;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.entries
    }

    pub fn symmetric_hint(&self) -> bool {
        self.symmetric
    }

    /// Sets the hint for tensors symmetric by construction.
    pub(crate) fn mark_symmetric(mut self) -> Self {
        self.symmetric = true;
        self
    }

    /// Sets the symmetric hint after verifying symmetry at `tol`.
    pub fn assert_symmetric(mut self, tol: f64) -> Result<Self> {
        if let Some((a, b)) = self.symmetry_violation(tol) {
            return Err(Error::NotSymmetric(a, b));
        }
        self.symmetric = true;
        Ok(self)
    }

    pub fn linear_index(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn multi_index(&self, mut pos: usize) -> Vec<usize> {
        let mut idx = vec![0; self.order];
        for k in (0..self.order).rev() {
            idx[k] = pos % self.dim;
            pos /= self.dim;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.entries[self.linear_index(idx)]
    }

    pub fn at(&self, idx: &MultiIndex) -> f64 {
        self.get(idx.as_slice())
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// `max(1, max |a|)`, the scale used for certified tolerances.
    pub fn scale(&self) -> f64 {
        self.max_abs().max(1.0)
    }

    /// First pair of index tuples whose entries differ by more than `tol`
    /// (the tuple and its sorted representative).
    pub fn symmetry_violation(&self, tol: f64) -> Option<(Vec<usize>, Vec<usize>)> {
        let mut sorted = vec![0usize; self.order];
        let mut found = None;
        for_each_index(self.order, self.dim, |pos, idx| {
            if found.is_some() {
                return;
            }
            sorted.copy_from_slice(idx);
            sorted.sort_unstable();
            let canon = self.linear_index(&sorted);
            if (self.entries[pos] - self.entries[canon]).abs() > tol {
                found = Some((idx.to_vec(), sorted.clone()));
            }
        });
        found
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.symmetry_violation(tol).is_none()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0.0)
    }

    /// First negative entry, if any.
    pub fn first_negative(&self) -> Option<(Vec<usize>, f64)> {
        self.entries
            .iter()
            .position(|&v| v < 0.0)
            .map(|pos| (self.multi_index(pos), self.entries[pos]))
    }

    /// Averages every entry over all permutations of its index tuple.
    pub fn symmetrize(&self) -> CubicTensor {
        let len = self.entries.len();
        let mut sums = vec![0.0; len];
        let mut counts = vec![0u32; len];
        let mut canon = vec![0usize; len];
        let mut sorted = vec![0usize; self.order];
        for_each_index(self.order, self.dim, |pos, idx| {
            sorted.copy_from_slice(idx);
            sorted.sort_unstable();
            let c = self.linear_index(&sorted);
            canon[pos] = c;
            sums[c] += self.entries[pos];
            counts[c] += 1;
        });
        let entries = canon
            .iter()
            .map(|&c| sums[c] / f64::from(counts[c]))
            .collect();
        CubicTensor {
            order: self.order,
            dim: self.dim,
            entries,
            symmetric: true,
        }
    }

    fn check_vector(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Contracts the trailing `times` modes with `x`.
    fn contract_tail(&self, x: &[f64], times: usize) -> Vec<f64> {
        let n = self.dim;
        let mut cur: Vec<f64> = self.entries.clone();
        for _ in 0..times {
            cur = cur
                .chunks_exact(n)
                .map(|row| row.iter().zip(x).fold(0.0, |acc, (a, b)| acc + a * b))
                .collect();
        }
        cur
    }

    /// `A x^{m-1}`: the vector with components `sum a_{i i_2..i_m} x_{i_2}..x_{i_m}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_vector(x)?;
        Ok(self.contract_tail(x, self.order - 1))
    }

    /// `A x^m`, the full contraction.
    pub fn form_value(&self, x: &[f64]) -> Result<f64> {
        self.check_vector(x)?;
        Ok(self.contract_tail(x, self.order)[0])
    }

    /// The order `m-1` tensor obtained by fixing index `mode` at `i`. Works on
    /// any tensor; see [`slice`](Self::slice) for the symmetric case.
    pub fn slice_mode(&self, mode: usize, i: usize) -> Result<CubicTensor> {
        if self.order < 2 {
            return Err(Error::UnsupportedOrder {
                order: self.order,
                reason: "slicing needs order >= 2",
            });
        }
        if mode >= self.order {
            return Err(Error::IndexOutOfRange {
                index: mode,
                dim: self.order,
            });
        }
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        let mut full = vec![0usize; self.order];
        let t = CubicTensor::from_fn(self.order - 1, self.dim, |tail| {
            full[..mode].copy_from_slice(&tail[..mode]);
            full[mode] = i;
            full[mode + 1..].copy_from_slice(&tail[mode..]);
            self.get(&full)
        })?;
        Ok(CubicTensor {
            symmetric: self.symmetric,
            ..t
        })
    }

    /// Slice `(a_{i i_2 .. i_m})` of a symmetric tensor. Non-symmetric input is
    /// rejected because the result would depend on the fixed mode.
    pub fn slice(&self, i: usize) -> Result<CubicTensor> {
        if self.order < 3 {
            return Err(Error::UnsupportedOrder {
                order: self.order,
                reason: "slice needs order >= 3",
            });
        }
        if i >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            });
        }
        if !self.symmetric {
            if let Some((a, b)) = self.symmetry_violation(SYMMETRY_TOL * self.scale()) {
                return Err(Error::NotSymmetric(a, b));
            }
        }
        let block = self.entries.len() / self.dim;
        Ok(CubicTensor {
            order: self.order - 1,
            dim: self.dim,
            entries: self.entries[i * block..(i + 1) * block].to_vec(),
            symmetric: true,
        })
    }

    fn check_same_shape(&self, other: &CubicTensor) -> Result<()> {
        if self.order != other.order || self.dim != other.dim {
            return Err(Error::ShapeMismatch(
                self.order, self.dim, other.order, other.dim,
            ));
        }
        Ok(())
    }

    /// Entrywise product.
    pub fn hadamard(&self, other: &CubicTensor) -> Result<CubicTensor> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &CubicTensor) -> Result<CubicTensor> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CubicTensor) -> Result<CubicTensor> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &CubicTensor, f: impl Fn(f64, f64) -> f64) -> Result<CubicTensor> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(CubicTensor {
            order: self.order,
            dim: self.dim,
            entries,
            symmetric: self.symmetric && other.symmetric,
        })
    }

    pub fn scaled(&self, c: f64) -> CubicTensor {
        CubicTensor {
            entries: self.entries.iter().map(|v| v * c).collect(),
            ..self.clone()
        }
    }

    /// `u^m`, entries `u_{i_1} .. u_{i_m}`.
    pub fn rank_one_power(u: &[f64], order: usize) -> Result<CubicTensor> {
        if u.is_empty() {
            return Err(Error::Shape("empty vector".into()));
        }
        let mut t = CubicTensor::from_fn(order, u.len(), |idx| {
            idx.iter().fold(1.0, |acc, &i| acc * u[i])
        })?;
        t.symmetric = true;
        Ok(t)
    }

    /// Entries of an order-2 tensor as a row-major square matrix.
    pub fn as_matrix(&self) -> Result<crate::linalg::Matrix> {
        if self.order != 2 {
            return Err(Error::UnsupportedOrder {
                order: self.order,
                reason: "matrix view needs order 2",
            });
        }
        crate::linalg::Matrix::from_row_major(self.dim, self.entries.clone())
    }
}

/// `x^{[k]}`, the componentwise power.
pub fn componentwise_pow(x: &[f64], k: usize) -> Vec<f64> {
    x.iter().map(|v| v.powi(k as i32)).collect()
}

/// Row-major position of `idx`, validating its length and range.
pub(crate) fn linear_index_checked(order: usize, dim: usize, idx: &[usize]) -> Result<usize> {
    if idx.len() != order {
        return Err(Error::DimensionMismatch {
            expected: order,
            got: idx.len(),
        });
    }
    idx.iter().try_fold(0usize, |acc, &i| {
        if i >= dim {
            Err(Error::IndexOutOfRange { index: i, dim })
        } else {
            Ok(acc * dim + i)
        }
    })
}
