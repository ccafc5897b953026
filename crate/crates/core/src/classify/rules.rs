//! Individual predicate checks. Each is sound on its own; the engine combines
//! them and propagates implications.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{Verdict, Witness};
use crate::error::{Error, Result};
use crate::generators::{associated_hankel_matrix, FactorSet, HankelSpec};
use crate::linalg::{self, matrix_pd, matrix_psd, Definiteness, Matrix};
use crate::spectra::{binary_form_pd, binary_form_psd, nonneg_spectral_radius, FormVerdict, RadiusOptions};
use crate::tensor::{for_each_index, CubicTensor, SYMMETRY_TOL};

pub(crate) const A_SLICE: &str = "fixed-index slices of a strongly PSD (PD) tensor are PSD (PD) even-order tensors";
pub(crate) const A_PREFILTER: &str = "entries whose indices repeat one value m-1 times are nonnegative in a strongly PSD tensor";
pub(crate) const A_SEARCH: &str = "a point x with a negative component of A x^{m-1} refutes strong PSD-ness";
pub(crate) const A_NO_TEST: &str = "no exact strong PSD test for m >= 5, n >= 3";
pub(crate) const A_B_TENSOR: &str = "B-tensor: positive row sums whose averages dominate every off-diagonal row entry";
pub(crate) const A_M_TENSOR: &str = "M-tensor: A = sI - B, B nonnegative, s >= rho(B); strong when s > rho(B)";
pub(crate) const A_STRONG_HANKEL: &str = "strong Hankel: associated Hankel matrix PSD";
pub(crate) const A_STRICT_HANKEL: &str = "strict Hankel: every fixed-index slice is a strong Hankel tensor";
pub(crate) const A_CP: &str = "completely positive: sum of m-th powers of nonnegative vectors";
pub(crate) const A_STRONG_CP: &str = "strongly completely positive: nonnegative factors spanning R^n";
pub(crate) const A_GAMMA: &str = "CP factors supported on each index span R^n => strongly PD";
pub(crate) const A_SV3: &str = "order 3: dual-cone membership coincides with slice PSD-ness";

/// Seeded counterexample search on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub seed: u64,
    pub points: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            seed: 42,
            points: 10_000,
        }
    }
}

pub(crate) fn require_symmetric(a: &CubicTensor) -> Result<()> {
    if a.symmetric_hint() {
        return Ok(());
    }
    match a.symmetry_violation(SYMMETRY_TOL * a.scale()) {
        Some((i, j)) => Err(Error::NotSymmetric(i, j)),
        None => Ok(()),
    }
}

fn require_odd(a: &CubicTensor) -> Result<()> {
    if a.order().is_multiple_of(2) {
        return Err(Error::UnsupportedOrder {
            order: a.order(),
            reason: "strong PSD classes are defined for odd order",
        });
    }
    Ok(())
}

/// Scans entries `a_{j..j k}` (one value repeated `m-1` times). Strong PSD
/// needs them `>= -tol`, strong PD needs them `> tol`.
fn repeated_index_scan(a: &CubicTensor, fails: impl Fn(f64) -> bool) -> Option<Witness> {
    let (m, n) = (a.order(), a.dim());
    for j in 0..n {
        for k in 0..n {
            let mut idx = vec![j; m - 1];
            idx.push(k);
            idx.sort_unstable();
            let v = a.get(&idx);
            if fails(v) {
                return Some(Witness::Entry { index: idx, value: v });
            }
        }
    }
    None
}

/// Certified "no" for strong PSD-ness from a negative repeated-index entry;
/// `None` when the scan is inconclusive.
pub fn necessary_entry_prefilter(a: &CubicTensor, tol: f64) -> Result<Option<Verdict>> {
    require_odd(a)?;
    require_symmetric(a)?;
    Ok(repeated_index_scan(a, |v| v < -tol)
        .map(|w| Verdict::no("repeated-index-entry", A_PREFILTER, w, tol)))
}

fn vector_witness(a: &CubicTensor, x: Vec<f64>, component: usize) -> Result<Witness> {
    let value = a.apply(&x)?[component];
    Ok(Witness::Vector { x, component, value })
}

/// Exact slice test at order 3: every slice matrix PSD (or PD).
fn slice_matrices(a: &CubicTensor, tol: f64, pd: bool) -> Result<Verdict> {
    let mut mins = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let s = a.slice(i)?.as_matrix()?;
        let d = if pd { matrix_pd(&s, tol)? } else { matrix_psd(&s, tol)? };
        match d {
            Definiteness::Yes { min_eigenvalue } => mins.push(min_eigenvalue),
            Definiteness::No {
                witness,
                min_eigenvalue,
                ..
            } => {
                let w = vector_witness(a, witness, i)?;
                return Ok(Verdict::no("slice-matrix-eigenvalues", A_SLICE, w, tol)
                    .note("slice", i)
                    .note("min_eigenvalue", min_eigenvalue));
            }
        }
    }
    Ok(Verdict::yes("slice-matrix-eigenvalues", A_SLICE, tol).note("slice_min_eigenvalues", mins))
}

/// Exact slice test for `n = 2`: every slice is a binary form.
fn slice_binary_forms(a: &CubicTensor, tol: f64, pd: bool) -> Result<Verdict> {
    let mut mins = Vec::with_capacity(2);
    for i in 0..2 {
        let s = a.slice(i)?;
        let v = if pd { binary_form_pd(&s, tol)? } else { binary_form_psd(&s, tol)? };
        match v {
            FormVerdict::Yes { min_value } => mins.push(min_value),
            FormVerdict::No { witness, .. } => {
                let w = vector_witness(a, witness, i)?;
                return Ok(Verdict::no("slice-binary-forms", A_SLICE, w, tol).note("slice", i));
            }
        }
    }
    Ok(Verdict::yes("slice-binary-forms", A_SLICE, tol).note("slice_min_values", mins))
}

/// Smallest component of `A x^{m-1}` found over coordinate-pair restrictions
/// (exact binary-form minima) and seeded random unit vectors.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct SearchOutcome {
    pub x: Vec<f64>,
    pub component: usize,
    pub value: f64,
}

pub(crate) fn sphere_search(a: &CubicTensor, tol: f64, opts: &SearchOptions) -> Result<SearchOutcome> {
    let (m, n) = (a.order(), a.dim());
    let mut best: Option<SearchOutcome> = None;
    let consider = |x: Vec<f64>, best: &mut Option<SearchOutcome>| -> Result<()> {
        let f = a.apply(&x)?;
        let (component, value) = f
            .iter()
            .copied()
            .enumerate()
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("n >= 1");
        if best.as_ref().is_none_or(|b| value < b.value) {
            *best = Some(SearchOutcome { x, component, value });
        }
        Ok(())
    };
    // restriction of slice i to span{e_j, e_k} is an even-order binary form
    for i in 0..n {
        let s = a.slice(i)?;
        for j in 0..n {
            for k in j + 1..n {
                let map = [j, k];
                let mut full = vec![0; m - 1];
                let r = CubicTensor::from_fn(m - 1, 2, |idx| {
                    for (f, &t) in full.iter_mut().zip(idx) {
                        *f = map[t];
                    }
                    s.get(&full)
                })?;
                if let FormVerdict::No { witness, .. } = binary_form_pd(&r, tol)? {
                    let mut x = vec![0.0; n];
                    x[j] = witness[0];
                    x[k] = witness[1];
                    consider(x, &mut best)?;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.points {
        let mut x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        x.iter_mut().for_each(|v| *v /= norm);
        consider(x, &mut best)?;
    }
    let mut e0 = vec![0.0; n];
    e0[0] = 1.0;
    match best {
        Some(b) => Ok(b),
        None => {
            let f = a.apply(&e0)?;
            let (component, value) = f
                .iter()
                .copied()
                .enumerate()
                .min_by(|p, q| p.1.total_cmp(&q.1))
                .expect("n >= 1");
            Ok(SearchOutcome { x: e0, component, value })
        }
    }
}

pub(crate) fn search_verdict(found: &SearchOutcome, tol: f64, pd: bool, opts: &SearchOptions) -> Verdict {
    let refuted = if pd { found.value <= tol } else { found.value < -tol };
    let v = if refuted {
        Verdict::no(
            "sphere-search",
            A_SEARCH,
            Witness::Vector {
                x: found.x.clone(),
                component: found.component,
                value: found.value,
            },
            tol,
        )
    } else {
        Verdict::unknown("sphere-search-inconclusive", A_NO_TEST, tol)
    };
    v.note("search_points", opts.points).note("search_min_value", found.value)
}

fn strongly_definite(a: &CubicTensor, tol: f64, search: &SearchOptions, pd: bool) -> Result<Verdict> {
    require_odd(a)?;
    require_symmetric(a)?;
    let pre = if pd {
        repeated_index_scan(a, |v| v <= tol)
    } else {
        repeated_index_scan(a, |v| v < -tol)
    };
    if let Some(w) = pre {
        return Ok(Verdict::no("repeated-index-entry", A_PREFILTER, w, tol));
    }
    if a.order() == 3 {
        slice_matrices(a, tol, pd)
    } else if a.dim() == 2 {
        slice_binary_forms(a, tol, pd)
    } else {
        let found = sphere_search(a, tol, search)?;
        Ok(search_verdict(&found, tol, pd, search))
    }
}

/// Strong PSD-ness: exact for `m = 3` or `n = 2`, otherwise a counterexample
/// search that can only refute.
pub fn check_strongly_psd(a: &CubicTensor, tol: f64, search: &SearchOptions) -> Result<Verdict> {
    strongly_definite(a, tol, search, false)
}

/// Strong PD-ness, decided like [`check_strongly_psd`] with margin `> tol`.
pub fn check_strongly_pd(a: &CubicTensor, tol: f64, search: &SearchOptions) -> Result<Verdict> {
    strongly_definite(a, tol, search, true)
}

/// Order 3 only: membership in the dual slice cone equals slice PSD-ness.
pub fn check_sv3(a: &CubicTensor, tol: f64) -> Result<Verdict> {
    if a.order() != 3 {
        return Err(Error::UnsupportedOrder {
            order: a.order(),
            reason: "dual-cone membership is only decided at order 3",
        });
    }
    let v = check_strongly_psd(a, tol, &SearchOptions::default())?;
    Ok(Verdict {
        rule: "sv3-equals-slice-psd",
        anchor: A_SV3,
        ..v.note("strongly_psd_rule", "slice-matrix-eigenvalues")
    })
}

/// Row `i` sums `s_i` must be positive and `s_i / n^{m-1}` must exceed every
/// entry `a_{i j_2..j_m}` whose tail is not `(i, .., i)`. Margins above `tol`
/// certify yes, margins at or below zero certify no.
pub fn check_b_tensor(a: &CubicTensor, tol: f64) -> Verdict {
    let (m, n) = (a.order(), a.dim());
    let block = a.entries().len() / n;
    let mut sums = Vec::with_capacity(n);
    let mut undecided = false;
    for i in 0..n {
        let row = &a.entries()[i * block..(i + 1) * block];
        let s: f64 = row.iter().sum();
        sums.push(s);
        if s <= 0.0 {
            return Verdict::no(
                "row-sum-average",
                A_B_TENSOR,
                Witness::Inequality {
                    row: i,
                    tail: None,
                    lhs: s,
                    relation: ">",
                    rhs: 0.0,
                },
                tol,
            );
        }
        undecided |= s <= tol;
        let avg = s / block as f64;
        let mut failure = None;
        for_each_index(m - 1, n, |pos, tail| {
            if failure.is_some() || tail.iter().all(|&t| t == i) {
                return;
            }
            let v = row[pos];
            if avg - v <= 0.0 {
                failure = Some((tail.to_vec(), v));
            } else if avg - v <= tol {
                undecided = true;
            }
        });
        if let Some((tail, v)) = failure {
            return Verdict::no(
                "row-sum-average",
                A_B_TENSOR,
                Witness::Inequality {
                    row: i,
                    tail: Some(tail),
                    lhs: avg,
                    relation: ">",
                    rhs: v,
                },
                tol,
            )
            .note("row_sums", &sums);
        }
    }
    let v = if undecided {
        Verdict::unknown("row-sum-average-within-tol", A_B_TENSOR, tol)
    } else {
        Verdict::yes("row-sum-average", A_B_TENSOR, tol)
    };
    v.note("row_sums", sums)
}

/// M-tensor and strong M-tensor verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct MTensorVerdicts {
    pub m_tensor: Verdict,
    pub strong_m_tensor: Verdict,
}

/// Splits `A = sI - B` with `s = max(0, max_i a_{i..i})` and brackets
/// `rho(B)`. Since `rho(B + cI) = rho(B) + c`, any admissible `s` gives the
/// same sign of `s - rho(B)`, so this single split decides both predicates.
pub fn check_m_tensor(a: &CubicTensor, tol: f64) -> Result<MTensorVerdicts> {
    let (m, n) = (a.order(), a.dim());
    let diag_pos = |i: usize| -> usize { (0..m).fold(0, |acc, _| acc * n + i) };
    let is_diag: Vec<bool> = {
        let mut d = vec![false; a.entries().len()];
        (0..n).for_each(|i| d[diag_pos(i)] = true);
        d
    };
    if let Some(pos) = (0..a.entries().len()).find(|&p| !is_diag[p] && a.entries()[p] > tol) {
        let w = Witness::Entry {
            index: a.multi_index(pos),
            value: a.entries()[pos],
        };
        let v = Verdict::no("positive-off-diagonal", A_M_TENSOR, w, tol);
        return Ok(MTensorVerdicts {
            m_tensor: v.clone(),
            strong_m_tensor: v,
        });
    }
    let s = (0..n)
        .map(|i| a.entries()[diag_pos(i)])
        .fold(0.0f64, f64::max);
    let b_entries: Vec<f64> = a
        .entries()
        .iter()
        .enumerate()
        .map(|(p, &v)| if is_diag[p] { s - v } else { (-v).max(0.0) })
        .collect();
    let b = CubicTensor::new(m, n, b_entries)?;
    let r = nonneg_spectral_radius(&b, RadiusOptions::default())?;
    let gap = Witness::Inequality {
        row: 0,
        tail: None,
        lhs: s,
        relation: ">=",
        rhs: r.lower,
    };
    let m_tensor = if s >= r.upper - tol {
        Verdict::yes("shift-vs-spectral-radius", A_M_TENSOR, tol)
    } else if s < r.lower - tol {
        Verdict::no("shift-vs-spectral-radius", A_M_TENSOR, gap.clone(), tol)
    } else {
        Verdict::unknown("radius-bracket-straddles-shift", A_M_TENSOR, tol)
    };
    let strong = if s > r.upper + tol {
        Verdict::yes("shift-vs-spectral-radius", A_M_TENSOR, tol)
    } else if s <= r.lower + tol {
        let w = Witness::Inequality {
            row: 0,
            tail: None,
            lhs: s,
            relation: ">",
            rhs: r.lower,
        };
        Verdict::no("shift-vs-spectral-radius", A_M_TENSOR, w, tol)
    } else {
        Verdict::unknown("radius-bracket-straddles-shift", A_M_TENSOR, tol)
    };
    let annotate = |v: Verdict| {
        v.note("s", s)
            .note("rho_lower", r.lower)
            .note("rho_upper", r.upper)
            .note("rho_converged", r.converged)
    };
    Ok(MTensorVerdicts {
        m_tensor: annotate(m_tensor),
        strong_m_tensor: annotate(strong),
    })
}

fn matrix_witness(slice: Option<usize>, d: Definiteness) -> Option<Witness> {
    match d {
        Definiteness::Yes { .. } => None,
        Definiteness::No {
            witness,
            value,
            min_eigenvalue,
        } => Some(Witness::Matrix {
            slice,
            x: witness,
            value,
            min_eigenvalue,
        }),
    }
}

/// Strong Hankel test on the associated matrix.
///
/// When the pad value was filled in by default rather than given, it is a
/// free parameter: with `H = [[H0, b], [b^T, p]]` the tensor is strong Hankel
/// iff some `p` makes `H` PSD. A PD `H0` admits `p = b^T H0^{-1} b`; a
/// non-PSD `H0` rules out every `p`; a singular PSD `H0` stays undecided.
pub fn check_strong_hankel(spec: &HankelSpec, tol: f64) -> Result<Verdict> {
    let h = associated_hankel_matrix(spec)?;
    if !spec.pad_defaulted() {
        let d = matrix_psd(&h, tol)?;
        let min = d.min_eigenvalue();
        let v = match matrix_witness(None, d) {
            None => Verdict::yes("hankel-matrix-psd", A_STRONG_HANKEL, tol),
            Some(w) => Verdict::no("hankel-matrix-psd", A_STRONG_HANKEL, w, tol),
        };
        return Ok(v.note("min_eigenvalue", min));
    }
    let k = h.n();
    let h0 = Matrix::from_fn(k - 1, |i, j| h.get(i, j));
    let b: Vec<f64> = (0..k - 1).map(|i| h.get(i, k - 1)).collect();
    match matrix_psd(&h0, tol)? {
        Definiteness::No {
            mut witness,
            min_eigenvalue,
            ..
        } => {
            witness.push(0.0);
            let value = h.quad_form(&witness);
            let w = Witness::Matrix {
                slice: None,
                x: witness,
                value,
                min_eigenvalue,
            };
            Ok(Verdict::no("hankel-leading-block-not-psd", A_STRONG_HANKEL, w, tol).note("pad", "free"))
        }
        Definiteness::Yes { min_eigenvalue } if min_eigenvalue > tol => {
            let y = linalg::solve(&h0, &b).ok_or_else(|| Error::InvalidParameter("singular leading block".into()))?;
            let schur: f64 = b.iter().zip(&y).map(|(p, q)| p * q).sum();
            let pad = schur.max(0.0) + tol;
            let mut full = h.clone();
            full.set(k - 1, k - 1, pad);
            let d = matrix_psd(&full, tol)?;
            let min = d.min_eigenvalue();
            let v = if d.is_yes() {
                Verdict::yes("hankel-matrix-psd-with-chosen-pad", A_STRONG_HANKEL, tol)
            } else {
                Verdict::unknown("hankel-chosen-pad-inconclusive", A_STRONG_HANKEL, tol)
            };
            Ok(v.note("pad", pad).note("min_eigenvalue", min).note("leading_min_eigenvalue", min_eigenvalue))
        }
        Definiteness::Yes { min_eigenvalue } => {
            Ok(Verdict::unknown("hankel-leading-block-singular", A_STRONG_HANKEL, tol)
                .note("pad", "free")
                .note("leading_min_eigenvalue", min_eigenvalue))
        }
    }
}

/// Strict Hankel test: the slice generating vectors `h_{i+k}` (order `m-1`,
/// no pad) must all give PSD associated matrices. Also reports whether every
/// slice matrix is PD.
pub fn check_strict_hankel(spec: &HankelSpec, tol: f64) -> Result<Verdict> {
    if spec.order().is_multiple_of(2) {
        return Err(Error::UnsupportedOrder {
            order: spec.order(),
            reason: "strict Hankel needs odd order",
        });
    }
    let mut mins = Vec::with_capacity(spec.dim());
    for i in 0..spec.dim() {
        let h = associated_hankel_matrix(&spec.slice_spec(i)?)?;
        let d = matrix_psd(&h, tol)?;
        mins.push(d.min_eigenvalue());
        if let Some(w) = matrix_witness(Some(i), d) {
            return Ok(Verdict::no("slice-hankel-matrices-psd", A_STRICT_HANKEL, w, tol)
                .note("slice_min_eigenvalues", mins));
        }
    }
    let all_pd = mins.iter().all(|&v| v > tol);
    Ok(Verdict::yes("slice-hankel-matrices-psd", A_STRICT_HANKEL, tol)
        .note("slice_min_eigenvalues", mins)
        .note("all_slices_pd", all_pd))
}

/// Verdicts derived from a factor set.
#[derive(Debug, Clone, PartialEq)]
pub struct CpVerdicts {
    pub cp: Verdict,
    pub strongly_cp: Verdict,
    /// Yes when the support rank rule fires; otherwise unknown (the rule is
    /// only sufficient).
    pub strongly_pd_via_cp: Verdict,
}

/// Rank threshold relative to the factor scale.
const RANK_TOL: f64 = 1e-10;

pub fn check_cp(f: &FactorSet) -> CpVerdicts {
    let n = f.dim();
    let cp = Verdict::yes("given-nonnegative-factors", A_CP, 0.0).note("rank_r", f.rank());
    let full = linalg::rank(f.factors(), RANK_TOL);
    let strongly_cp = if f.rank() >= n && full == n {
        Verdict::yes("factors-span", A_STRONG_CP, RANK_TOL)
    } else {
        Verdict::unknown("given-factors-do-not-span", A_STRONG_CP, RANK_TOL)
    }
    .note("factor_rank", full);
    let mut support_ranks = Vec::with_capacity(n);
    for i in 0..n {
        let rows: Vec<Vec<f64>> = f.factors().iter().filter(|u| u[i] > 0.0).cloned().collect();
        support_ranks.push(if rows.is_empty() { 0 } else { linalg::rank(&rows, RANK_TOL) });
    }
    let strongly_pd_via_cp = if support_ranks.iter().all(|&r| r == n) {
        Verdict::yes("cp-support-rank", A_GAMMA, RANK_TOL)
    } else {
        Verdict::unknown("cp-support-rank-deficient", A_GAMMA, RANK_TOL)
    }
    .note("support_ranks", support_ranks);
    CpVerdicts {
        cp,
        strongly_cp,
        strongly_pd_via_cp,
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Status;
    use crate::generators::*;

    fn laplacian() -> CubicTensor {
        let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        gen_hypergraph_tensors(&g).unwrap().laplacian
    }

    #[test]
    fn laplacian_not_strongly_psd() {
        let v = check_strongly_psd(&laplacian(), 1e-9, &SearchOptions::default()).unwrap();
        assert_eq!(v.status, Status::CertifiedNo);
        match v.witness.unwrap() {
            Witness::Vector { x, component, value } => {
                assert_eq!(component, 0);
                assert!((value + 0.5).abs() < 1e-9);
                assert!((x[1].abs() - 0.5f64.sqrt()).abs() < 1e-9);
            }
            w => panic!("{w:?}"),
        }
    }

    #[test]
    fn prefilter_on_barren_b_tensor() {
        let v = necessary_entry_prefilter(&gen_barren_b_tensor(), 1e-9).unwrap().unwrap();
        match v.witness.unwrap() {
            Witness::Entry { index, value } => {
                assert_eq!(index, vec![0, 0, 1]);
                assert!((value + 3f64.sqrt()).abs() < 1e-15);
            }
            w => panic!("{w:?}"),
        }
        let s = gen_signed_spsd(3, 54.0, 5.0).unwrap();
        assert!(necessary_entry_prefilter(&s, 1e-9).unwrap().is_none());
        assert!(necessary_entry_prefilter(&gen_hilbert(3, 3).unwrap(), 1e-9).unwrap().is_none());
    }

    #[test]
    fn b_tensor_cases() {
        assert!(check_b_tensor(&gen_barren_b_tensor(), 1e-9).is_yes());
        assert!(check_b_tensor(&gen_identity(3, 3).unwrap(), 1e-9).is_yes());
        let z = gen_diagonal(3, &[1.0, 0.0]).unwrap();
        assert!(check_b_tensor(&z, 1e-9).is_no());
    }

    #[test]
    fn m_tensor_cases() {
        let l = check_m_tensor(&laplacian(), 1e-9).unwrap();
        assert!(l.m_tensor.is_yes());
        assert!(l.strong_m_tensor.is_no());
        let i = check_m_tensor(&gen_identity(3, 3).unwrap(), 1e-9).unwrap();
        assert!(i.m_tensor.is_yes() && i.strong_m_tensor.is_yes());
        let ones = CubicTensor::rank_one_power(&[1.0; 3], 3).unwrap();
        assert!(check_m_tensor(&ones, 1e-9).unwrap().m_tensor.is_no());
    }

    #[test]
    fn hankel_cases() {
        let h = HankelSpec::hilbert(3, 3).unwrap();
        assert!(check_strict_hankel(&h, 1e-9).unwrap().is_yes());
        let mut e0 = vec![0.0; 7];
        e0[0] = 1.0;
        assert!(check_strict_hankel(&HankelSpec::new(3, 3, e0, None).unwrap(), 1e-9).unwrap().is_yes());
        let mut neg = vec![0.0; 7];
        neg[0] = -1.0;
        assert!(check_strict_hankel(&HankelSpec::new(3, 3, neg, None).unwrap(), 1e-9).unwrap().is_no());
        // (n-1)m = 3: pad free, leading block is the 3x3 Hilbert matrix
        let free = HankelSpec::with_default_pad(3, 2, vec![1.0, 0.5, 1.0 / 3.0, 0.25], None).unwrap();
        let v = check_strong_hankel(&free, 1e-9).unwrap();
        assert!(v.is_yes(), "{v:?}");
        let fixed = HankelSpec::new(3, 2, vec![1.0, 0.5, 1.0 / 3.0, 0.25], Some(0.0)).unwrap();
        assert!(check_strong_hankel(&fixed, 1e-9).unwrap().is_no());
    }

    #[test]
    fn cp_rules() {
        let unit = FactorSet::new(3, vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let v = check_cp(&unit);
        assert!(v.strongly_cp.is_yes());
        assert!(v.strongly_pd_via_cp.is_unknown());
        let pos = FactorSet::new(3, vec![vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(check_cp(&pos).strongly_pd_via_cp.is_yes());
    }

    #[test]
    fn sv3_matches_slice_check() {
        assert!(check_sv3(&gen_signed_spsd(3, 54.0, 5.0).unwrap(), 1e-9).unwrap().is_yes());
        assert!(check_sv3(&laplacian(), 1e-9).unwrap().is_no());
        assert!(check_sv3(&gen_identity(3, 3).unwrap(), 1e-9).unwrap().is_yes());
        assert!(check_sv3(&gen_identity(5, 2).unwrap(), 1e-9).is_err());
    }

    #[test]
    fn search_refutes_order_five() {
        let d = gen_diagonal(5, &[1.0, 1.0, -1.0]).unwrap();
        let v = check_strongly_psd(&d, 1e-9, &SearchOptions::default()).unwrap();
        assert!(v.is_no());
        let h = gen_hilbert(5, 3).unwrap();
        assert!(check_strongly_psd(&h, 1e-9, &SearchOptions::default()).unwrap().is_unknown());
    }
}
