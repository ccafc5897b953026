//! Small dense matrix kernels: cyclic Jacobi eigensolver, PSD tests, pivoted
//! Cholesky, rank and linear solves.

use crate::error::{Error, Result};

/// Dense square matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn symmetry_violation(&self, tol: f64) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.n.max(1))
            .map(|row| row.iter().zip(x).fold(0.0, |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// `x^T M x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        self.mul_vec(x).iter().zip(x).fold(0.0, |acc, (a, b)| acc + a * b)
    }

    pub fn hadamard(&self, other: &Matrix) -> Result<Matrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        })
    }
}

/// Eigenvalues of a symmetric matrix in ascending order, with the matching
/// orthonormal eigenvectors stored as the columns of `vectors` when requested.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: Option<Matrix>,
}

impl SymEigen {
    /// Column `k` of the eigenvector matrix.
    pub fn vector(&self, k: usize) -> Option<Vec<f64>> {
        self.vectors
            .as_ref()
            .map(|v| (0..v.n()).map(|i| v.get(i, k)).collect())
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations on a symmetric matrix.
///
/// Input must be symmetric within `1e-10 * max(1, max|m_ij|)`. Each rotation
/// zeroes one off-diagonal pair; sweeps repeat until the off-diagonal mass is
/// below machine precision relative to the Frobenius norm.
pub fn sym_matrix_eigs(m: &Matrix, with_vectors: bool) -> Result<SymEigen> {
    let n = m.n();
    let scale = m.max_abs().max(1.0);
    if let Some((i, j)) = m.symmetry_violation(1e-10 * scale) {
        return Err(Error::MatrixNotSymmetric(i, j));
    }
    let mut a = m.clone();
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a.get(i, j) + a.get(j, i));
            a.set(i, j, avg);
            a.set(j, i, avg);
        }
    }
    let mut v = Matrix::identity(n);
    let frob = a.frobenius();

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * a.get(p, q) * a.get(p, q);
            }
        }
        if off.sqrt() <= f64::EPSILON * frob || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
                a.set(p, q, 0.0);
                a.set(q, p, 0.0);
                if with_vectors {
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, c * vkp - s * vkq);
                        v.set(k, q, s * vkp + c * vkq);
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).total_cmp(&a.get(j, j)));
    let values = order.iter().map(|&i| a.get(i, i)).collect();
    let vectors = with_vectors.then(|| {
        let mut sorted = Matrix::zeros(n);
        for (col, &src) in order.iter().enumerate() {
            // first nonzero component positive
            let sign = (0..n)
                .map(|k| v.get(k, src))
                .find(|x| x.abs() > 1e-12)
                .map_or(1.0, f64::signum);
            for k in 0..n {
                sorted.set(k, col, sign * v.get(k, src));
            }
        }
        sorted
    });
    Ok(SymEigen { values, vectors })
}

/// Outcome of a matrix definiteness test.
#[derive(Debug, Clone, PartialEq)]
pub enum Definiteness {
    /// The test passed; `min_eigenvalue` is the smallest computed eigenvalue.
    Yes { min_eigenvalue: f64 },
    /// The test failed; `witness` is a unit vector with quadratic value `value`.
    No {
        witness: Vec<f64>,
        value: f64,
        min_eigenvalue: f64,
    },
}

impl Definiteness {
    pub fn is_yes(&self) -> bool {
        matches!(self, Definiteness::Yes { .. })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        match self {
            Definiteness::Yes { min_eigenvalue } | Definiteness::No { min_eigenvalue, .. } => {
                *min_eigenvalue
            }
        }
    }
}

fn definiteness(m: &Matrix, pass: impl Fn(f64) -> bool) -> Result<Definiteness> {
    if m.n() == 0 {
        return Ok(Definiteness::Yes {
            min_eigenvalue: f64::INFINITY,
        });
    }
    let eig = sym_matrix_eigs(m, true)?;
    let min = eig.min();
    if pass(min) {
        return Ok(Definiteness::Yes {
            min_eigenvalue: min,
        });
    }
    let witness = eig.vector(0).expect("vectors requested");
    let value = m.quad_form(&witness);
    Ok(Definiteness::No {
        witness,
        value,
        min_eigenvalue: min,
    })
}

/// PSD iff the smallest eigenvalue is at least `-tol`.
pub fn matrix_psd(m: &Matrix, tol: f64) -> Result<Definiteness> {
    definiteness(m, |min| min >= -tol)
}

/// PD iff the smallest eigenvalue exceeds `tol`.
pub fn matrix_pd(m: &Matrix, tol: f64) -> Result<Definiteness> {
    definiteness(m, |min| min > tol)
}

/// PSD decision by diagonally pivoted Cholesky; used to cross-check
/// [`matrix_psd`].
pub fn pivoted_cholesky_psd(m: &Matrix, tol: f64) -> bool {
    let n = m.n();
    let mut s = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let (pos, &piv) = active
            .iter()
            .enumerate()
            .max_by(|a, b| s.get(*a.1, *a.1).total_cmp(&s.get(*b.1, *b.1)))
            .expect("non-empty");
        let d = s.get(piv, piv);
        if d <= tol {
            // a PSD remainder with diagonal <= tol has off-diagonals <= tol
            return d >= -tol
                && active.iter().all(|&i| {
                    active
                        .iter()
                        .all(|&j| i == j || s.get(i, j).abs() <= tol.max(0.0))
                });
        }
        active.swap_remove(pos);
        for &i in &active {
            for &j in &active {
                let v = s.get(i, j) - s.get(i, piv) * s.get(piv, j) / d;
                s.set(i, j, v);
            }
        }
    }
    true
}

/// Rank of a set of row vectors by Gaussian elimination with full pivoting;
/// pivots below `rel_tol * max|entry|` count as zero.
pub fn rank(rows: &[Vec<f64>], rel_tol: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let cols = a[0].len();
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let thresh = rel_tol * scale;
    let mut r = 0;
    let mut used_cols = vec![false; cols];
    while r < a.len() {
        let mut best = (0.0, 0, 0);
        for (i, row) in a.iter().enumerate().skip(r) {
            for (j, &v) in row.iter().enumerate() {
                if !used_cols[j] && v.abs() > best.0 {
                    best = (v.abs(), i, j);
                }
            }
        }
        if best.0 <= thresh {
            break;
        }
        let (_, pi, pj) = best;
        a.swap(r, pi);
        used_cols[pj] = true;
        let pivot_row = a[r].clone();
        for row in a.iter_mut().skip(r + 1) {
            let f = row[pj] / pivot_row[pj];
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= f * p;
            }
        }
        r += 1;
    }
    r
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting. `None` when
/// a pivot falls below `1e-14` relative to the largest entry.
pub fn solve(a: &Matrix, b: &[f64]) -> Option<Vec<f64>> {
    let n = a.n();
    let mut m: Vec<Vec<f64>> = a.rows();
    let mut rhs = b.to_vec();
    let scale = a.max_abs();
    if scale == 0.0 {
        return None;
    }
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))?;
        if m[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            let (top, bottom) = m.split_at_mut(i);
            for (t, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *t -= f * p;
            }
            rhs[i] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s = (i + 1..n).fold(rhs[i], |acc, j| acc - m[i][j] * x[j]);
        x[i] = s / m[i][i];
    }
    Some(x)
}
