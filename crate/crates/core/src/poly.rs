//! Univariate real polynomials and Sturm-chain root isolation.

use crate::error::{Error, Result};

/// Coefficients below this fraction of the dividend's largest coefficient are
/// dropped from Sturm remainders.
const REMAINDER_CUTOFF: f64 = 1e-11;

/// Relative isolation width for real roots.
pub const ROOT_WIDTH: f64 = 1e-12;

/// Real polynomial, coefficients in ascending powers with no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn scaled(&self, s: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiplies by `t^k`.
    pub fn shifted(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![0.0; k];
        c.extend_from_slice(&self.coeffs);
        Poly::new(c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0.0)
                        - other.coeffs.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }

    /// Remainder of `self / divisor`; tiny trailing coefficients relative to
    /// `self`'s magnitude are treated as cancellation noise and dropped.
    fn rem(&self, divisor: &Poly) -> Poly {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading();
        let mut r = self.coeffs.clone();
        let noise = REMAINDER_CUTOFF * self.max_abs_coeff().max(divisor.max_abs_coeff());
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let q = r[r.len() - 1] / lead;
            for (k, &d) in divisor.coeffs.iter().enumerate() {
                r[shift + k] -= q * d;
            }
            r.pop();
            while r.last().is_some_and(|c| c.abs() <= noise) {
                r.pop();
            }
        }
        for c in &mut r {
            if c.abs() <= noise {
                *c = 0.0;
            }
        }
        Poly::new(r)
    }

    fn normalized(&self) -> Poly {
        let m = self.max_abs_coeff();
        if m == 0.0 {
            self.clone()
        } else {
            self.scaled(1.0 / m)
        }
    }

    /// Cauchy bound: every real root lies strictly inside `(-b, b)`.
    pub fn root_bound(&self) -> f64 {
        let lead = self.leading().abs();
        1.0 + self
            .coeffs
            .iter()
            .take(self.coeffs.len().saturating_sub(1))
            .fold(0.0f64, |m, c| m.max(c.abs() / lead))
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...`, each member scaled to unit
/// largest coefficient.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(p: &Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![p.normalized()];
        let d = p.derivative();
        if !d.is_zero() {
            chain.push(d.normalized());
        }
        while chain.len() >= 2 {
            let k = chain.len();
            if chain[k - 1].degree() == Some(0) {
                break;
            }
            let r = chain[k - 2].rem(&chain[k - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.scaled(-1.0).normalized());
        }
        Ok(Self { chain })
    }

    pub fn polys(&self) -> &[Poly] {
        &self.chain
    }

    fn variations(signs: impl Iterator<Item = f64>) -> usize {
        let mut last = 0.0;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0.0) {
            if last != 0.0 && s.signum() != last {
                count += 1;
            }
            last = s.signum();
        }
        count
    }

    fn variations_at(&self, t: f64) -> usize {
        if t == f64::INFINITY {
            Self::variations(self.chain.iter().map(Poly::leading))
        } else if t == f64::NEG_INFINITY {
            Self::variations(self.chain.iter().map(|p| {
                let sign = if p.degree().unwrap_or(0) % 2 == 0 { 1.0 } else { -1.0 };
                sign * p.leading()
            }))
        } else {
            Self::variations(self.chain.iter().map(|p| p.eval(t)))
        }
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: f64, b: f64) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.count(f64::NEG_INFINITY, f64::INFINITY)
    }
}

fn narrow(a: f64, b: f64) -> bool {
    b - a <= ROOT_WIDTH * a.abs().max(b.abs()).max(1.0)
}

/// Distinct real roots of `p` in `interval` (default: all of the real line),
/// ascending, each isolated by Sturm bisection to relative width
/// [`ROOT_WIDTH`] and then polished by guarded Newton steps.
pub fn sturm_real_roots(p: &Poly, interval: Option<(f64, f64)>) -> Result<Vec<f64>> {
    let chain = SturmChain::new(p)?;
    if p.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let bound = p.normalized().root_bound();
    let (lo, hi) = interval.unwrap_or((-bound, bound));
    let (lo, hi) = (lo.max(-bound), hi.min(bound));
    let mut roots = Vec::new();
    let mut stack = vec![(lo, hi, chain.count(lo, hi))];
    while let Some((a, b, k)) = stack.pop() {
        if k == 0 {
            continue;
        }
        if narrow(a, b) {
            roots.push(0.5 * (a + b));
            continue;
        }
        let mid = 0.5 * (a + b);
        if k == 1 {
            let left = chain.count(a, mid);
            if left == 1 {
                stack.push((a, mid, 1));
            } else {
                stack.push((mid, b, 1));
            }
            continue;
        }
        let left = chain.count(a, mid);
        stack.push((mid, b, k.saturating_sub(left)));
        stack.push((a, mid, left));
    }
    let dp = p.derivative();
    for r in &mut roots {
        *r = polish(p, &dp, *r);
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| narrow(b.min(*a), b.max(*a)));
    Ok(roots)
}

fn polish(p: &Poly, dp: &Poly, mut t: f64) -> f64 {
    let width = ROOT_WIDTH * t.abs().max(1.0);
    let start = t;
    for _ in 0..4 {
        let d = dp.eval(t);
        if d == 0.0 {
            break;
        }
        let next = t - p.eval(t) / d;
        if (next - start).abs() > width || p.eval(next).abs() >= p.eval(t).abs() {
            break;
        }
        t = next;
    }
    t
}

/// Points at which `p` takes every sign it takes on the real line: the real
/// roots, midpoints between consecutive roots, and one point beyond each end.
pub fn sign_test_points(p: &Poly) -> Result<Vec<f64>> {
    let roots = sturm_real_roots(p, None)?;
    let mut pts = Vec::with_capacity(2 * roots.len() + 1);
    match (roots.first(), roots.last()) {
        (Some(&first), Some(&last)) => {
            pts.push(first - 1.0 - first.abs());
            for w in roots.windows(2) {
                pts.push(w[0]);
                pts.push(0.5 * (w[0] + w[1]));
            }
            pts.push(last);
            pts.push(last + 1.0 + last.abs());
        }
        _ => pts.push(0.0),
    }
    Ok(pts)
}

/// Outcome of [`sturm_nonneg`].
#[derive(Debug, Clone, PartialEq)]
pub enum Nonnegativity {
    Nonnegative,
    Negative { t: f64, value: f64 },
}

/// Decides `p(t) >= -tol` for all real `t`, returning a witness otherwise.
pub fn sturm_nonneg(p: &Poly, tol: f64) -> Result<Nonnegativity> {
    if p.is_zero() {
        return Ok(Nonnegativity::Nonnegative);
    }
    let worst = sign_test_points(p)?
        .into_iter()
        .map(|t| (t, p.eval(t)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one test point");
    if worst.1 < -tol {
        Ok(Nonnegativity::Negative {
            t: worst.0,
            value: worst.1,
        })
    } else {
        Ok(Nonnegativity::Nonnegative)
    }
}

/// Global minimum `(t, p(t))` over the reals, or `None` when `p` is unbounded
/// below.
pub fn min_on_real(p: &Poly) -> Option<(f64, f64)> {
    match p.degree() {
        None => Some((0.0, 0.0)),
        Some(0) => Some((0.0, p.coeffs[0])),
        Some(d) if d % 2 == 1 || p.leading() < 0.0 => None,
        Some(_) => sturm_real_roots(&p.derivative(), None)
            .ok()?
            .into_iter()
            .map(|t| (t, p.eval(t)))
            .min_by(|a, b| a.1.total_cmp(&b.1)),
    }
}
