//! End-to-end acceptance run: prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tensorlab::classify::{classify, sos_decompose_cp, ClassificationReport, ClassifyOptions};
use tensorlab::generators::{
    associated_hankel_matrix, gen_barren_b_tensor, gen_cauchy, gen_completely_positive, gen_diagonal, gen_hankel,
    gen_hilbert, gen_hypergraph_tensors, gen_identity, gen_lehmer, gen_pascal, gen_signed_spsd, FactorSet,
    HankelSpec, Hypergraph,
};
use tensorlab::io::{factors_to_json, hypergraph_to_json, tensor_to_json};
use tensorlab::linalg::sym_matrix_eigs;
use tensorlab::poly::SturmChain;
use tensorlab::spectra::{h_eigs_exact_n2, sshopm, SshopmOptions};
use tensorlab::CubicTensor;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn opts() -> ClassifyOptions {
    ClassifyOptions::default()
}

fn opts_with(f: &FactorSet) -> ClassifyOptions {
    ClassifyOptions {
        factors: Some(f.clone()),
        ..ClassifyOptions::default()
    }
}

fn random_factors(rng: &mut ChaCha8Rng, m: usize, n: usize, r: usize, lo: f64) -> FactorSet {
    let f = (0..r).map(|_| (0..n).map(|_| rng.random_range(lo..1.0)).collect()).collect();
    FactorSet::new(m, f).expect("valid factors")
}

fn c1_barren_b_tensor() -> Outcome {
    let t0 = Instant::now();
    let a = gen_barren_b_tensor();
    let r = classify(&a, &opts()).expect("classify");
    let spec = h_eigs_exact_n2(&a).expect("exact");
    let roots = SturmChain::new(&spec.elimination).expect("sturm").count_all();
    let dt = t0.elapsed();
    let ok = r.verdicts.b_tensor.is_yes()
        && spec.pairs.is_empty()
        && spec.continuum.is_none()
        && r.verdicts.barren.is_yes()
        && roots == 0
        && dt < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "b_tensor={} pairs={} barren={} sturm_real_roots={roots} time={dt:.2?}",
            r.verdicts.b_tensor.status.as_str(),
            spec.pairs.len(),
            r.verdicts.barren.status.as_str()
        ),
    )
}

fn c2_laplacian() -> Outcome {
    let t0 = Instant::now();
    let g = Hypergraph::new(3, 3, vec![vec![0, 1, 2]]).expect("graph");
    let l = gen_hypergraph_tensors(&g).expect("tensors").laplacian;
    let s0 = l.slice(0).expect("slice").as_matrix().expect("matrix");
    let want = [1.0, 0.0, 0.0, 0.0, 0.0, -0.5, 0.0, -0.5, 0.0];
    let exact = s0.data() == want;
    let min = sym_matrix_eigs(&s0, false).expect("eigs").min();
    let r = classify(&l, &opts()).expect("classify");
    let dt = t0.elapsed();
    let v = &r.verdicts;
    let ok = exact
        && (min + 0.5).abs() <= 1e-9
        && v.strongly_psd.is_no()
        && v.m_tensor.is_yes()
        && v.genuinely_psd.is_yes()
        && v.genuinely_psd.rule == "m-tensor"
        && dt < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "slice0_exact={exact} min_eig={min:.3e} strongly_psd={} m_tensor={} genuinely_psd={} via {} time={dt:.2?}",
            v.strongly_psd.status.as_str(),
            v.m_tensor.status.as_str(),
            v.genuinely_psd.status.as_str(),
            v.genuinely_psd.rule
        ),
    )
}

fn c3_hilbert() -> Outcome {
    let t0 = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for m in [3, 5] {
        for n in 2..=5 {
            let a = gen_hilbert(m, n).expect("hilbert");
            let r = classify(&a, &opts()).expect("classify");
            let spec = HankelSpec::hilbert(m, n).expect("spec");
            let min_eig = (0..n)
                .map(|i| {
                    let h = associated_hankel_matrix(&spec.slice_spec(i).expect("slice spec")).expect("matrix");
                    sym_matrix_eigs(&h, false).expect("eigs").min()
                })
                .fold(f64::INFINITY, f64::min);
            let v = &r.verdicts;
            let mut good = v.strict_hankel.is_yes() && min_eig > 1e-12 && v.strongly_sos.is_yes();
            if m == 3 {
                good &= v.strongly_pd.is_yes() && v.strongly_pd.rule == "slice-matrix-eigenvalues";
            }
            if !good {
                notes.push(format!(
                    "m={m} n={n}: strict_hankel={} min_slice_eig={min_eig:.3e} strongly_sos={} strongly_pd={}",
                    v.strict_hankel.status.as_str(),
                    v.strongly_sos.status.as_str(),
                    v.strongly_pd.status.as_str()
                ));
            }
            ok &= good;
        }
    }
    let dt = t0.elapsed();
    ok &= dt < Duration::from_secs(5);
    let detail = if notes.is_empty() {
        format!("all 8 tensors certified, time={dt:.2?}")
    } else {
        format!("{}; time={dt:.2?}", notes.join("; "))
    };
    outcome(ok, detail)
}

fn c4_cp_reconstruction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut worst = 0f64;
    for _ in 0..20 {
        let m = [3, 5][rng.random_range(0..2)];
        let n = rng.random_range(2..=4);
        let r = rng.random_range(1..=6);
        let f = random_factors(&mut rng, m, n, r, 0.0);
        let a = gen_completely_positive(&f).expect("cp");
        let d = sos_decompose_cp(&f).expect("sos");
        for _ in 0..100 {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            for (p, q) in d.eval(&x).iter().zip(a.apply(&x).expect("apply")) {
                worst = worst.max((p - q).abs() / q.abs().max(f64::MIN_POSITIVE));
            }
        }
    }
    outcome(worst <= 1e-8, format!("20 factor sets x 100 points, worst relative error {worst:.3e}"))
}

fn spsd_member(rng: &mut ChaCha8Rng, n: usize) -> (CubicTensor, Option<FactorSet>) {
    match rng.random_range(0..3) {
        0 => {
            let r = rng.random_range(1..=5);
            let f = random_factors(rng, 3, n, r, 0.0);
            (gen_completely_positive(&f).expect("cp"), Some(f))
        }
        1 => {
            let c: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..3.0)).collect();
            (gen_cauchy(3, &c).expect("cauchy"), None)
        }
        _ => {
            let c2 = (2 * n - 1) as f64 + rng.random_range(0.0..3.0);
            let c1 = 3.0 * c2 + 3.0 + (c2 + 1.0).powi(2) + rng.random_range(0.0..5.0);
            (gen_signed_spsd(n, c1, c2).expect("signed"), None)
        }
    }
}

fn c5_hadamard_closure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut pairs, mut pd_pairs, mut bad) = (0, 0, Vec::new());
    let mut attempts = 0;
    while pairs < 200 && attempts < 2000 {
        attempts += 1;
        let n = rng.random_range(2..=4);
        let (a, fa) = spsd_member(&mut rng, n);
        let (b, fb) = spsd_member(&mut rng, n);
        let ra = classify(&a, &fa.as_ref().map_or_else(opts, opts_with)).expect("classify");
        let rb = classify(&b, &fb.as_ref().map_or_else(opts, opts_with)).expect("classify");
        if !(ra.verdicts.strongly_psd.is_yes() && rb.verdicts.strongly_psd.is_yes()) {
            continue;
        }
        pairs += 1;
        let c = a.hadamard(&b).expect("hadamard");
        let rc = classify(&c, &opts()).expect("classify");
        if !rc.verdicts.strongly_psd.is_yes() {
            bad.push(format!("pair {pairs}: product strongly_psd={}", rc.verdicts.strongly_psd.status.as_str()));
        }
        if ra.verdicts.strongly_pd.is_yes() && rb.verdicts.strongly_pd.is_yes() {
            pd_pairs += 1;
            if !rc.verdicts.strongly_pd.is_yes() {
                bad.push(format!("pair {pairs}: product strongly_pd={}", rc.verdicts.strongly_pd.status.as_str()));
            }
        }
    }
    outcome(
        pairs == 200 && bad.is_empty(),
        format!("{pairs} certified pairs ({pd_pairs} PD), {} failures {:?}", bad.len(), bad.iter().take(3).collect::<Vec<_>>()),
    )
}

fn c6_strongly_pd_rules() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut failures = Vec::new();
    for k in 0..20 {
        let n = rng.random_range(2..=5);
        let mut c: Vec<f64> = (0..n).map(|i| i as f64 + rng.random_range(0.05..0.95)).collect();
        c.reverse();
        let r = classify(&gen_cauchy(3, &c).expect("cauchy"), &opts()).expect("classify");
        if !r.verdicts.strongly_pd.is_yes() {
            failures.push(format!("cauchy {k}"));
        }
    }
    for k in 0..20 {
        let m = [3, 5][k % 2];
        let n = rng.random_range(2..=4);
        let r = n + rng.random_range(0..3);
        let f = random_factors(&mut rng, m, n, r, 0.05);
        let rep = classify(&gen_completely_positive(&f).expect("cp"), &opts_with(&f)).expect("classify");
        if !(rep.verdicts.strongly_pd.is_yes() && rep.verdicts.strongly_pd.rule == "cp-support-rank") {
            failures.push(format!("cp {k}: {} via {}", rep.verdicts.strongly_pd.status.as_str(), rep.verdicts.strongly_pd.rule));
        }
    }
    outcome(failures.is_empty(), format!("20 Cauchy + 20 positive CP, failures {failures:?}"))
}

fn c7_oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let (mut worst_match, mut worst_residual, mut found) = (0f64, 0f64, 0usize);
    for k in 0..100 {
        let h: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
        let a = CubicTensor::from_symmetric_fn(3, 2, |idx| h[idx.iter().sum::<usize>()]).expect("tensor");
        let exact = h_eigs_exact_n2(&a).expect("exact");
        for p in &exact.pairs {
            worst_residual = worst_residual.max(p.residual);
        }
        let o = SshopmOptions {
            starts: 50,
            seed: 42 + k,
            ..SshopmOptions::default()
        };
        for p in sshopm(&a, &o).expect("sshopm").pairs {
            found += 1;
            let d = exact
                .pairs
                .iter()
                .map(|q| (q.lambda - p.lambda).abs())
                .fold(f64::INFINITY, f64::min);
            worst_match = worst_match.max(d);
        }
    }
    outcome(
        worst_match <= 1e-6 && worst_residual <= 1e-8,
        format!("{found} local pairs, worst |lambda - exact| {worst_match:.3e}, worst exact residual {worst_residual:.3e}"),
    )
}

struct Item {
    name: String,
    tensor: CubicTensor,
    factors: Option<FactorSet>,
}

fn item(name: impl Into<String>, tensor: CubicTensor) -> Item {
    Item {
        name: name.into(),
        tensor,
        factors: None,
    }
}

fn corpus() -> Vec<Item> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut out = vec![item("example-2-10", gen_barren_b_tensor())];
    for n in [3, 5] {
        let c2 = (2 * n - 1) as f64;
        out.push(item(format!("example-3-8 n={n}"), gen_signed_spsd(n, 3.0 * c2 + 3.0 + (c2 + 1.0).powi(2), c2).expect("signed")));
    }
    for m in [3, 5] {
        for n in 2..=5 {
            out.push(item(format!("identity {m} {n}"), gen_identity(m, n).expect("identity")));
            out.push(item(format!("hilbert {m} {n}"), gen_hilbert(m, n).expect("hilbert")));
            out.push(item(format!("pascal {m} {n}"), gen_pascal(m, n).expect("pascal")));
            out.push(item(format!("lehmer {m} {n}"), gen_lehmer(m, n).expect("lehmer")));
            let d: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..3.0)).collect();
            out.push(item(format!("diagonal {m} {n}"), gen_diagonal(m, &d).expect("diagonal")));
            let c: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..2.0)).collect();
            out.push(item(format!("cauchy {m} {n}"), gen_cauchy(m, &c).expect("cauchy")));
            let h: Vec<f64> = (0..=(n - 1) * m).map(|_| rng.random_range(-1.0..1.0)).collect();
            let spec = HankelSpec::with_default_pad(m, n, h, None).expect("hankel");
            out.push(item(format!("hankel {m} {n}"), gen_hankel(&spec).expect("hankel")));
            let r = rng.random_range(1..=5);
            let f = random_factors(&mut rng, m, n, r, 0.0);
            out.push(Item {
                name: format!("cp {m} {n}"),
                tensor: gen_completely_positive(&f).expect("cp"),
                factors: Some(f),
            });
        }
        let graphs = if m == 3 {
            vec![
                Hypergraph::new(3, 3, vec![vec![0, 1, 2]]),
                Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4], vec![0, 3, 4]]),
            ]
        } else {
            vec![Hypergraph::new(5, 5, vec![vec![0, 1, 2, 3, 4]])]
        };
        for (k, g) in graphs.into_iter().enumerate() {
            let t = gen_hypergraph_tensors(&g.expect("graph")).expect("tensors");
            out.push(item(format!("laplacian {m} #{k}"), t.laplacian));
            out.push(item(format!("adjacency {m} #{k}"), t.adjacency));
            out.push(item(format!("degree {m} #{k}"), t.degree));
        }
    }
    out
}

fn classify_item(it: &Item) -> ClassificationReport {
    let o = it.factors.as_ref().map_or_else(opts, opts_with);
    classify(&it.tensor, &o).expect("classify")
}

fn c8_negation(corpus: &[(String, CubicTensor, ClassificationReport)]) -> Outcome {
    let b = gen_barren_b_tensor();
    let rb = classify(&b, &opts()).expect("classify");
    let rn = classify(&b.scaled(-1.0), &opts()).expect("classify");
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, a, r) in corpus {
        if r.verdicts.genuinely_pd.is_yes() && a.max_abs() > 0.0 {
            checked += 1;
            let neg = classify(&a.scaled(-1.0), &opts()).expect("classify");
            if neg.verdicts.genuinely_pd.is_yes() {
                bad.push(name.clone());
            }
        }
    }
    outcome(
        rb.verdicts.barren.is_yes() && rn.verdicts.barren.is_yes() && bad.is_empty(),
        format!(
            "barren(B)={} barren(-B)={}; {checked} genuinely PD tensors negated, {} still PD {bad:?}",
            rb.verdicts.barren.status.as_str(),
            rn.verdicts.barren.status.as_str(),
            bad.len()
        ),
    )
}

fn c9_consistency(corpus: &[(String, CubicTensor, ClassificationReport)]) -> Outcome {
    let mut bad = Vec::new();
    for (name, a, r) in corpus {
        for v in r.violations(a) {
            bad.push(format!("{name}: {}", v.rule));
        }
    }
    outcome(bad.is_empty(), format!("{} reports, {} violations {bad:?}", corpus.len(), bad.len()))
}

fn run_cli(args: &[&str], env_seed: Option<&str>) -> Vec<u8> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tensorlab"));
    cmd.args(args).env_remove("TENSORLAB_SEED");
    if let Some(s) = env_seed {
        cmd.env("TENSORLAB_SEED", s);
    }
    let out = cmd.output().expect("spawn tensorlab");
    assert!(out.status.success() || out.status.code() == Some(3), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn c10_determinism(dir: &Path) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut files = Vec::new();
    let write = |name: &str, text: String| {
        let p = dir.join(name);
        std::fs::write(&p, text).expect("write");
        p
    };
    files.push(write("b.json", tensor_to_json(&gen_barren_b_tensor()).expect("json")));
    files.push(write("h35.json", tensor_to_json(&gen_hilbert(3, 5).expect("hilbert")).expect("json")));
    files.push(write("h54.json", tensor_to_json(&gen_hilbert(5, 4).expect("hilbert")).expect("json")));
    files.push(write("p53.json", tensor_to_json(&gen_pascal(5, 3).expect("pascal")).expect("json")));
    files.push(write("l54.json", tensor_to_json(&gen_lehmer(5, 4).expect("lehmer")).expect("json")));
    let g = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]).expect("graph");
    let gp = write("g.json", hypergraph_to_json(&g).expect("json"));
    let f = random_factors(&mut rng, 5, 3, 3, 0.0);
    let fp = write("f.json", factors_to_json(&f).expect("json"));
    let gen = |args: &[&str], out: &str| {
        let p = dir.join(out);
        let mut full: Vec<&str> = args.to_vec();
        let ps = p.to_str().expect("utf8").to_owned();
        full.extend(["-o", &ps]);
        run_cli(&full, None);
        p
    };
    let gs = gp.to_str().expect("utf8").to_owned();
    let fs = fp.to_str().expect("utf8").to_owned();
    files.push(gen(&["gen", "laplacian", "--graph", &gs], "lap.json"));
    files.push(gen(&["gen", "adjacency", "--graph", &gs], "adj.json"));
    files.push(gen(&["gen", "cp", "--factors", &fs], "cp.json"));
    files.push(gen(&["gen", "example-3-8", "--n", "4", "--c1", "90", "--c2", "7"], "e38.json"));
    files.push(gen(&["gen", "hankel", "--m", "5", "--n", "3", "--h", "1,-0.5,0.3,0.2,-0.1,0.4,0.1,0.2,0.6,-0.3,0.9"], "hk.json"));
    let mut mismatches = Vec::new();
    for p in &files {
        let ps = p.to_str().expect("utf8");
        let first = run_cli(&["classify", ps], None);
        let second = run_cli(&["classify", ps], None);
        let explicit = run_cli(&["classify", ps, "--seed", "42"], None);
        let env = run_cli(&["classify", ps], Some("42"));
        if first.is_empty() || first != second || first != explicit || first != env {
            mismatches.push(p.file_name().expect("name").to_string_lossy().into_owned());
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{} files x 4 runs, mismatches {mismatches:?}", files.len()),
    )
}

type Criterion<'a> = Box<dyn FnOnce() -> Outcome + 'a>;

fn main() {
    let dir = tempfile::tempdir().expect("tempdir");
    let items = corpus();
    let reports: Vec<_> = items
        .iter()
        .map(|it| (it.name.clone(), it.tensor.clone(), classify_item(it)))
        .collect();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("barren B-tensor reproduction", Box::new(c1_barren_b_tensor)),
        ("single-edge Laplacian reproduction", Box::new(c2_laplacian)),
        ("Hilbert tensors strict Hankel and strongly SOS", Box::new(c3_hilbert)),
        ("CP decomposition reconstruction", Box::new(c4_cp_reconstruction)),
        ("Hadamard closure of strong PSD/PD", Box::new(c5_hadamard_closure)),
        ("Cauchy and positive CP certified strongly PD", Box::new(c6_strongly_pd_rules)),
        ("exact solver oracle vs local search", Box::new(c7_oracle_equivalence)),
        ("negation and barrenness", Box::new(|| c8_negation(&reports))),
        ("report consistency over the corpus", Box::new(|| c9_consistency(&reports))),
        ("CLI determinism", Box::new(|| c10_determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.into_iter().enumerate() {
        let o = check();
        if !o.pass {
            failed += 1;
        }
        println!("{} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
