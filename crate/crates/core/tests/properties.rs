use proptest::prelude::*;
use tensorlab::classify::{classify, sos_decompose_cp, sos_decompose_m3, ClassifyOptions, Status, Witness};
use tensorlab::generators::{
    gen_cauchy, gen_completely_positive, gen_hilbert, gen_hypergraph_tensors, hilbert_cauchy_vector, FactorSet,
    Hypergraph,
};
use tensorlab::io::{tensor_from_json, tensor_to_json};
use tensorlab::linalg::{matrix_psd, pivoted_cholesky_psd, Matrix};
use tensorlab::spectra::{h_eigs_exact_n2, nonneg_spectral_radius, RadiusOptions};
use tensorlab::CubicTensor;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn shape() -> impl Strategy<Value = (usize, usize)> {
    (2usize..=4, 1usize..=3)
}

fn tensor() -> impl Strategy<Value = CubicTensor> {
    shape().prop_flat_map(|(m, n)| {
        prop::collection::vec(-3.0f64..3.0, n.pow(m as u32)).prop_map(move |e| CubicTensor::new(m, n, e).unwrap())
    })
}

fn tensor_and_point() -> impl Strategy<Value = (CubicTensor, Vec<f64>)> {
    tensor().prop_flat_map(|a| {
        let n = a.dim();
        (Just(a), prop::collection::vec(-2.0f64..2.0, n))
    })
}

fn factor_set(m: usize) -> impl Strategy<Value = FactorSet> {
    (1usize..=4, 1usize..=5).prop_flat_map(move |(n, r)| {
        prop::collection::vec(prop::collection::vec(0.0f64..2.0, n), r)
            .prop_map(move |f| FactorSet::new(m, f).unwrap())
    })
}

fn sym_n2_m3() -> impl Strategy<Value = CubicTensor> {
    prop::collection::vec(-5.0f64..5.0, 4).prop_map(|h| {
        CubicTensor::from_symmetric_fn(3, 2, |idx| h[idx.iter().sum::<usize>()]).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetrize_is_idempotent_and_preserves_form((a, x) in tensor_and_point()) {
        let s = a.symmetrize();
        prop_assert!(s.is_symmetric(1e-12 * s.scale()));
        let s2 = s.symmetrize();
        for (p, q) in s.entries().iter().zip(s2.entries()) {
            prop_assert!(close(*p, *q, 1e-14));
        }
        prop_assert!(close(a.form_value(&x).unwrap(), s.form_value(&x).unwrap(), 1e-12));
    }

    #[test]
    fn apply_is_homogeneous((a, x) in tensor_and_point(), t in -3.0f64..3.0) {
        let m = a.order() as i32;
        let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
        let f = a.apply(&x).unwrap();
        let g = a.apply(&tx).unwrap();
        for (p, q) in f.iter().zip(&g) {
            prop_assert!(close(p * t.powi(m - 1), *q, 1e-12));
        }
        let fx: f64 = f.iter().zip(&x).map(|(p, v)| p * v).sum();
        prop_assert!(close(fx, a.form_value(&x).unwrap(), 1e-12));
    }

    #[test]
    fn slices_agree_across_modes_when_symmetric(a in tensor()) {
        let s = a.symmetrize();
        for i in 0..s.dim() {
            let first = s.slice_mode(0, i).unwrap();
            for mode in 1..s.order() {
                let other = s.slice_mode(mode, i).unwrap();
                for (p, q) in first.entries().iter().zip(other.entries()) {
                    prop_assert!(close(*p, *q, 1e-13));
                }
            }
        }
    }

    #[test]
    fn hadamard_commutes(a in tensor()) {
        let b = a.scaled(-0.5).add(&CubicTensor::from_fn(a.order(), a.dim(), |i| i.iter().sum::<usize>() as f64).unwrap()).unwrap();
        prop_assert_eq!(a.hadamard(&b).unwrap(), b.hadamard(&a).unwrap());
    }

    #[test]
    fn dense_json_round_trips_exactly(a in tensor()) {
        let b = tensor_from_json(&tensor_to_json(&a).unwrap()).unwrap();
        prop_assert_eq!(a.entries(), b.entries());
    }

    #[test]
    fn laplacian_annihilates_ones(n in 3usize..=5, seed in 0u64..1000) {
        let m = 3;
        let mut edges = Vec::new();
        for (k, e) in [[0, 1, 2], [0, 1, 3], [1, 2, 4], [0, 3, 4], [2, 3, 4]].iter().enumerate() {
            if e.iter().all(|&v| v < n) && (seed >> k) & 1 == 1 {
                edges.push(e.to_vec());
            }
        }
        let g = Hypergraph::new(n, m, edges).unwrap();
        let t = gen_hypergraph_tensors(&g).unwrap();
        let f = t.laplacian.apply(&vec![1.0; n]).unwrap();
        prop_assert!(f.iter().all(|v| v.abs() <= 1e-12));
    }

    #[test]
    fn cp_form_is_sum_of_powers(f in factor_set(3), seed in 0u64..1000) {
        let a = gen_completely_positive(&f).unwrap();
        let x: Vec<f64> = (0..f.dim()).map(|j| ((seed as f64 + 1.0) * (j as f64 + 0.3)).sin()).collect();
        let want: f64 = f.factors().iter().map(|u| u.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>().powi(3)).sum();
        prop_assert!(close(a.form_value(&x).unwrap(), want, 1e-12));
    }

    #[test]
    fn cp_sos_reconstructs(f in factor_set(5), seed in 0u64..1000) {
        let a = gen_completely_positive(&f).unwrap();
        let d = sos_decompose_cp(&f).unwrap();
        let x: Vec<f64> = (0..f.dim()).map(|j| ((seed as f64 + 0.5) * (j as f64 + 1.7)).cos()).collect();
        for (p, q) in d.eval(&x).iter().zip(a.apply(&x).unwrap()) {
            prop_assert!(close(*p, q, 1e-10));
        }
    }

    #[test]
    fn exact_spectrum_scales(a in sym_n2_m3(), c in 0.1f64..10.0) {
        let s1 = h_eigs_exact_n2(&a).unwrap();
        let s2 = h_eigs_exact_n2(&a.scaled(c)).unwrap();
        prop_assert_eq!(s1.pairs.len(), s2.pairs.len());
        for (p, q) in s1.pairs.iter().zip(&s2.pairs) {
            prop_assert!(close(p.lambda * c, q.lambda, 1e-7));
        }
        for p in &s1.pairs {
            prop_assert!(p.is_verified(3));
        }
    }

    #[test]
    fn radius_bracket_within_row_sums(entries in prop::collection::vec(0.0f64..2.0, 27)) {
        let b = CubicTensor::new(3, 3, entries).unwrap();
        let r = nonneg_spectral_radius(&b, RadiusOptions::default()).unwrap();
        let sums: Vec<f64> = (0..3).map(|i| b.slice_mode(0, i).unwrap().entries().iter().sum()).collect();
        let lo = sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = sums.iter().cloned().fold(0.0, f64::max);
        prop_assert!(r.lower <= r.upper + 1e-12);
        prop_assert!(r.lower >= lo - 1e-9 * hi.max(1.0));
        prop_assert!(r.upper <= hi + 1e-9 * hi.max(1.0));
    }

    #[test]
    fn cholesky_agrees_with_eigenvalues(rows in prop::collection::vec(prop::collection::vec(-2.0f64..2.0, 3), 1..4)) {
        let mut g = Matrix::zeros(3);
        for r in &rows {
            for i in 0..3 {
                for j in 0..3 {
                    g.set(i, j, g.get(i, j) + r[i] * r[j]);
                }
            }
        }
        let shifted = Matrix::from_fn(3, |i, j| g.get(i, j) - if i == j { 0.5 } else { 0.0 });
        for m in [&g, &shifted] {
            let eig = matrix_psd(m, 1e-9).unwrap();
            let min = eig.min_eigenvalue();
            if min.abs() > 1e-6 {
                prop_assert_eq!(pivoted_cholesky_psd(m, 1e-9), eig.is_yes());
            }
        }
    }

    #[test]
    fn hadamard_preserves_strong_psd_at_order_three(f in factor_set(3), g in factor_set(3)) {
        prop_assume!(f.dim() == g.dim());
        let a = gen_completely_positive(&f).unwrap();
        let b = gen_completely_positive(&g).unwrap();
        let opts = ClassifyOptions::default();
        let ra = classify(&a, &opts).unwrap();
        let rb = classify(&b, &opts).unwrap();
        prop_assume!(ra.verdicts.strongly_psd.is_yes() && rb.verdicts.strongly_psd.is_yes());
        let c = a.hadamard(&b).unwrap();
        let rc = classify(&c, &opts).unwrap();
        prop_assert!(rc.verdicts.strongly_psd.is_yes());
        if ra.verdicts.strongly_pd.is_yes() && rb.verdicts.strongly_pd.is_yes() {
            prop_assert!(rc.verdicts.strongly_pd.is_yes());
        }
    }

    #[test]
    fn positive_scaling_keeps_verdicts(a in sym_n2_m3(), c in 0.5f64..4.0) {
        let opts = ClassifyOptions::default();
        let r1 = classify(&a, &opts).unwrap();
        let r2 = classify(&a.scaled(c), &opts).unwrap();
        for name in ["strongly_psd", "strongly_pd", "barren", "nonnegative", "symmetric", "strict_hankel"] {
            let (s1, s2) = (r1.status(name).unwrap(), r2.status(name).unwrap());
            // borderline cases may move between a certified status and Unknown, never flip
            prop_assert!(s1 == s2 || s1 == Status::Unknown || s2 == Status::Unknown, "{name}: {s1:?} vs {s2:?}");
        }
    }

    #[test]
    fn reports_are_consistent_and_witnesses_recheck(a in tensor()) {
        let r = classify(&a, &ClassifyOptions::default()).unwrap();
        prop_assert!(r.violations(&a).is_empty(), "{:?}", r.violations(&a));
        let s = a.symmetrize();
        for (name, v) in r.verdicts.iter() {
            if !v.is_no() {
                continue;
            }
            match &v.witness {
                Some(Witness::Vector { x, component, value }) => {
                    let f = s.apply(x).unwrap()[*component];
                    prop_assert!(close(f, *value, 1e-9), "{name}");
                    prop_assert!(f <= v.tol, "{name}: {f}");
                }
                Some(Witness::Entry { index, value }) => {
                    prop_assert_eq!(a.get(index), *value);
                }
                Some(Witness::Eigenpair { lambda, x, .. }) => {
                    let p = tensorlab::spectra::HEigenpair::new(&s, *lambda, x, tensorlab::spectra::Method::Sshopm).unwrap();
                    prop_assert!(p.is_verified(s.order()), "{name}: residual {}", p.residual);
                }
                _ => {}
            }
        }
    }
}

#[test]
fn hilbert_is_cauchy_with_shifted_vector() {
    for m in [3, 5] {
        for n in 2..=5 {
            let h = gen_hilbert(m, n).unwrap();
            let c = gen_cauchy(m, &hilbert_cauchy_vector(m, n)).unwrap();
            for (p, q) in h.entries().iter().zip(c.entries()) {
                assert!(close(*p, *q, 1e-15));
            }
        }
    }
}

#[test]
fn order_three_sos_reconstructs_cauchy() {
    let a = gen_cauchy(3, &[0.5, 1.0, 2.5, 4.0]).unwrap();
    let d = sos_decompose_m3(&a).unwrap();
    for k in 0..50 {
        let x: Vec<f64> = (0..4).map(|j| ((k * 7 + j) as f64 * 0.37).sin()).collect();
        for (p, q) in d.eval(&x).iter().zip(a.apply(&x).unwrap()) {
            assert!(close(*p, q, 1e-10));
        }
    }
}
