use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::tensor::{for_each_index, CubicTensor};

/// Generating vector of a Hankel tensor `a_{i_1..i_m} = h_{i_1 + .. + i_m}`.
///
/// `h` has length `(n-1) m + 1`. When `(n-1) m` is odd the associated Hankel
/// matrix needs one more value, `pad`; it is present exactly in that case.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelSpec {
    m: usize,
    n: usize,
    h: Vec<f64>,
    pad: Option<f64>,
    pad_defaulted: bool,
}

impl HankelSpec {
    /// Strict constructor: `pad` must be given iff `(n-1) m` is odd.
    pub fn new(m: usize, n: usize, h: Vec<f64>, pad: Option<f64>) -> Result<Self> {
        if m < 1 || n < 1 {
            return Err(Error::InvalidParameter("hankel needs m, n >= 1".into()));
        }
        let want = (n - 1) * m + 1;
        if h.len() != want {
            return Err(Error::DimensionMismatch {
                expected: want,
                got: h.len(),
            });
        }
        if h.iter().chain(pad.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("hankel values must be finite".into()));
        }
        let needs_pad = (n - 1) * m % 2 == 1;
        match (needs_pad, pad) {
            (true, None) => Err(Error::InvalidParameter(format!(
                "(n-1)m = {} is odd: associated matrix needs a pad value",
                (n - 1) * m
            ))),
            (false, Some(_)) => Err(Error::InvalidParameter(format!(
                "(n-1)m = {} is even: no pad value expected",
                (n - 1) * m
            ))),
            _ => Ok(Self {
                m,
                n,
                h,
                pad,
                pad_defaulted: false,
            }),
        }
    }

    /// Like [`new`](Self::new) but supplies `pad = 0` when one is required and
    /// none was given; [`pad_defaulted`](Self::pad_defaulted) records that.
    pub fn with_default_pad(m: usize, n: usize, h: Vec<f64>, pad: Option<f64>) -> Result<Self> {
        let needs_pad = n >= 1 && (n - 1) * m % 2 == 1;
        let defaulted = needs_pad && pad.is_none();
        let pad = if defaulted { Some(0.0) } else { pad };
        let mut spec = Self::new(m, n, h, pad)?;
        spec.pad_defaulted = defaulted;
        Ok(spec)
    }

    /// `h_k = f(k)` for every needed index, including the pad.
    pub fn from_fn(m: usize, n: usize, f: impl Fn(usize) -> f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("hankel needs n >= 1".into()));
        }
        let top = (n - 1) * m;
        let h = (0..=top).map(&f).collect();
        let pad = (top % 2 == 1).then(|| f(top + 1));
        Self::new(m, n, h, pad)
    }

    /// `h_k = 1 / (k + 1)`.
    pub fn hilbert(m: usize, n: usize) -> Result<Self> {
        Self::from_fn(m, n, |k| 1.0 / (k as f64 + 1.0))
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn pad(&self) -> Option<f64> {
        self.pad
    }

    pub fn pad_defaulted(&self) -> bool {
        self.pad_defaulted
    }

    /// Size of the associated Hankel matrix, `ceil((n-1) m / 2) + 1`.
    pub fn matrix_size(&self) -> usize {
        ((self.n - 1) * self.m).div_ceil(2) + 1
    }

    fn value(&self, k: usize) -> f64 {
        self.h.get(k).copied().or(self.pad).unwrap_or(0.0)
    }

    /// Generating vector of the slice with the first index fixed at `i`:
    /// `h'_k = h_{i+k}`, order `m - 1`.
    pub fn slice_spec(&self, i: usize) -> Result<HankelSpec> {
        if self.m < 2 {
            return Err(Error::UnsupportedOrder {
                order: self.m,
                reason: "hankel slice needs order >= 2",
            });
        }
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.n,
            });
        }
        let len = (self.n - 1) * (self.m - 1) + 1;
        HankelSpec::with_default_pad(self.m - 1, self.n, self.h[i..i + len].to_vec(), None)
    }

    /// Scales every generating value (cone membership is scale invariant).
    pub fn scaled(&self, c: f64) -> HankelSpec {
        HankelSpec {
            h: self.h.iter().map(|v| v * c).collect(),
            pad: self.pad.map(|p| p * c),
            ..self.clone()
        }
    }
}

pub fn gen_hankel(spec: &HankelSpec) -> Result<CubicTensor> {
    if spec.m < 2 {
        return Err(Error::InvalidParameter("hankel tensor needs m >= 2".into()));
    }
    let t = CubicTensor::from_fn(spec.m, spec.n, |idx| spec.h[idx.iter().sum::<usize>()])?;
    Ok(t.mark_symmetric())
}

/// Square matrix `(h_{i+j})` of size [`HankelSpec::matrix_size`].
pub fn associated_hankel_matrix(spec: &HankelSpec) -> Result<Matrix> {
    let top = (spec.n - 1) * spec.m;
    if top % 2 == 1 && spec.pad.is_none() {
        return Err(Error::InvalidParameter("missing pad value".into()));
    }
    let k = spec.matrix_size();
    Ok(Matrix::from_fn(k, |i, j| spec.value(i + j)))
}

/// Recovers a generating vector when every entry depends only on its index sum
/// (within `tol`). Returns the first pair of conflicting index tuples otherwise.
pub fn detect_hankel(
    t: &CubicTensor,
    tol: f64,
) -> std::result::Result<HankelSpec, (Vec<usize>, Vec<usize>)> {
    let m = t.order();
    let n = t.dim();
    let top = (n - 1) * m;
    let mut h: Vec<Option<(f64, Vec<usize>)>> = vec![None; top + 1];
    let mut conflict = None;
    for_each_index(m, n, |pos, idx| {
        if conflict.is_some() {
            return;
        }
        let s: usize = idx.iter().sum();
        let v = t.entries()[pos];
        match &h[s] {
            None => h[s] = Some((v, idx.to_vec())),
            Some((first, at)) => {
                if (v - first).abs() > tol {
                    conflict = Some((at.clone(), idx.to_vec()));
                }
            }
        }
    });
    if let Some(c) = conflict {
        return Err(c);
    }
    let h = h.into_iter().map(|v| v.map_or(0.0, |(x, _)| x)).collect();
    // shape is valid by construction; pad defaults to 0
    Ok(HankelSpec::with_default_pad(m, n, h, None).expect("consistent shape"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_hilbert;

    #[test]
    fn unit_generator() {
        let mut h = vec![0.0; 7];
        h[0] = 1.0;
        let spec = HankelSpec::new(3, 3, h, None).unwrap();
        let t = gen_hankel(&spec).unwrap();
        assert_eq!(t.get(&[0, 0, 0]), 1.0);
        assert_eq!(t.entries().iter().filter(|&&v| v != 0.0).count(), 1);
    }

    #[test]
    fn length_and_pad_checks() {
        assert!(matches!(
            HankelSpec::new(3, 3, vec![0.0; 6], None),
            Err(Error::DimensionMismatch { expected: 7, got: 6 })
        ));
        // (n-1)m = 3 odd
        assert!(HankelSpec::new(3, 2, vec![0.0; 4], None).is_err());
        assert!(HankelSpec::new(3, 3, vec![0.0; 7], Some(1.0)).is_err());
        let s = HankelSpec::with_default_pad(3, 2, vec![1.0; 4], None).unwrap();
        assert!(s.pad_defaulted());
        assert_eq!(s.pad(), Some(0.0));
        let m = associated_hankel_matrix(&s).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.get(2, 2), 0.0);
        assert_eq!(m.get(1, 2), 1.0);
    }

    #[test]
    fn hilbert_associated_matrix() {
        let spec = HankelSpec::hilbert(3, 3).unwrap();
        let m = associated_hankel_matrix(&spec).unwrap();
        assert_eq!(m.n(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), 1.0 / (i + j + 1) as f64);
                assert_eq!(m.get(i, j), m.get(j, i));
            }
        }
        let zero = HankelSpec::new(3, 3, vec![0.0; 7], None).unwrap();
        assert_eq!(associated_hankel_matrix(&zero).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn detects_hilbert_and_rejects_others() {
        let t = gen_hilbert(3, 4).unwrap();
        let spec = detect_hankel(&t, 0.0).unwrap();
        assert_eq!(spec.h(), HankelSpec::hilbert(3, 4).unwrap().h());
        assert!(spec.pad_defaulted());
        let id = crate::generators::gen_identity(3, 3).unwrap();
        let (a, b) = detect_hankel(&id, 1e-12).unwrap_err();
        assert_eq!(a.iter().sum::<usize>(), b.iter().sum::<usize>());
    }

    #[test]
    fn slice_spec_shifts() {
        let spec = HankelSpec::hilbert(5, 3).unwrap();
        let s = spec.slice_spec(2).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.h().len(), 9);
        assert_eq!(s.h()[0], 1.0 / 3.0);
        assert!(s.pad().is_none());
    }
}
