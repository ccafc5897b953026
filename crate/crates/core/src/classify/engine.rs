use super::report::{ClassificationReport, Settings, TensorSummary, TraceEntry, Verdicts};
use super::rules::{
    self, check_b_tensor, check_cp, check_m_tensor, check_strict_hankel, check_strong_hankel, search_verdict,
    sphere_search, SearchOptions, SearchOutcome,
};
use super::sos::{sos_decompose_cp, sos_decompose_m3, CpSos, M3Sos};
use super::{tensor_hash, Status, Verdict, Witness, DEFAULT_TOL};
use crate::error::{Error, Result};
use crate::generators::{detect_hankel, gen_completely_positive, gen_hankel, FactorSet, HankelSpec};
use crate::spectra::{h_eigs_exact_n2, sshopm, HEigenpair, Method, SshopmOptions};
use crate::tensor::{CubicTensor, SYMMETRY_TOL};

const A_SYMMETRIC: &str = "symmetric: invariant under every index permutation";
const A_NONNEG: &str = "entrywise nonnegative";
const A_ODD_ONLY: &str = "strong PSD classes are defined for odd-order symmetric tensors";
const A_SOS_M3: &str = "order 3: PSD quadratic slices are sums of squares";
const A_SOS_N2: &str = "n = 2: nonnegative binary forms are sums of squares";
const A_SOS_M5N3: &str = "m = 5, n = 3: nonnegative ternary quartics are sums of squares";
const A_SOS_CP: &str = "completely positive tensors are strongly SOS";
const A_SOS_HANKEL: &str = "strict Hankel tensors are strongly SOS";
const A_SOS_PSD: &str = "strongly SOS implies strongly PSD";
const A_BARREN: &str = "barren: the symmetrization has no H-eigenvalue";
const A_GENUINE: &str = "genuinely PSD (PD): some H-eigenvalue exists and all are nonnegative (positive)";
const A_GEN_SPSD: &str = "strongly PSD tensors have an H-eigenvalue and are genuinely PSD";
const A_GEN_M: &str = "symmetric M-tensors are genuinely PSD; strong M-tensors genuinely PD";
const A_GEN_DIAG: &str = "the H-eigenvalues of a diagonal tensor are its diagonal entries";
const A_GEN_CP: &str = "completely positive tensors are genuinely PSD; strongly CP genuinely PD";
const A_GEN_NONNEG: &str = "nonnegative tensors have a nonnegative H-eigenvalue";
const A_SSHOPM: &str = "verified H-eigenpairs found by local search";
const A_IMPLIED: &str = "implication between tensor classes";

/// Inputs and budgets for [`classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifyOptions {
    /// `tol = tol_base * max(1, |A|_inf)`.
    pub tol_base: f64,
    pub seed: u64,
    pub search_points: usize,
    pub sshopm_starts: usize,
    pub factors: Option<FactorSet>,
    pub hankel: Option<HankelSpec>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            tol_base: DEFAULT_TOL,
            seed: 42,
            search_points: 10_000,
            sshopm_starts: 20,
            factors: None,
            hankel: None,
        }
    }
}

impl ClassifyOptions {
    fn search(&self) -> SearchOptions {
        SearchOptions {
            seed: self.seed,
            points: self.search_points,
        }
    }
}

#[derive(Default)]
struct Trace(Vec<TraceEntry>);

impl Trace {
    fn fire(&mut self, predicate: &'static str, v: &Verdict) {
        self.0.push(TraceEntry {
            predicate,
            rule: v.rule,
            status: v.status,
            note: None,
        });
    }

    fn note(&mut self, predicate: &'static str, rule: &'static str, status: Status, note: String) {
        self.0.push(TraceEntry {
            predicate,
            rule,
            status,
            note: Some(note),
        });
    }
}

fn max_deviation(a: &CubicTensor, b: &CubicTensor) -> Result<f64> {
    Ok(a.sub(b)?.max_abs())
}

fn eigen_witness(p: &HEigenpair) -> Witness {
    Witness::Eigenpair {
        lambda: p.lambda,
        x: p.x.clone(),
        residual: p.residual,
    }
}

fn diagonal_entries(a: &CubicTensor) -> Option<Vec<f64>> {
    let (m, n) = (a.order(), a.dim());
    let diag_pos = |i: usize| (0..m).fold(0usize, |acc, _| acc * n + i);
    let d: Vec<f64> = (0..n).map(|i| a.entries()[diag_pos(i)]).collect();
    let nonzeros = a.entries().iter().filter(|v| **v != 0.0).count();
    let diag_nonzeros = d.iter().filter(|v| **v != 0.0).count();
    (nonzeros == diag_nonzeros).then_some(d)
}

/// Classifies `a` against every predicate and returns the full report.
pub fn classify(a: &CubicTensor, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let tol = opts.tol_base * a.scale();
    let (m, n) = (a.order(), a.dim());
    let mut trace = Trace::default();

    // symmetry and the symmetrization used by eigenvalue-based predicates
    let asym = if a.symmetric_hint() {
        None
    } else {
        a.symmetry_violation(SYMMETRY_TOL * a.scale())
    };
    let symmetric = match &asym {
        None => Verdict::yes("permutation-scan", A_SYMMETRIC, SYMMETRY_TOL * a.scale()),
        Some((i, j)) => Verdict::no(
            "permutation-scan",
            A_SYMMETRIC,
            Witness::EntryPair {
                first: i.clone(),
                second: j.clone(),
                values: [a.get(i), a.get(j)],
            },
            SYMMETRY_TOL * a.scale(),
        ),
    };
    trace.fire("symmetric", &symmetric);
    let s = if asym.is_none() {
        a.clone().mark_symmetric()
    } else {
        a.symmetrize()
    };
    let asym_witness = symmetric.witness.clone();

    let nonnegative = match a.first_negative() {
        None => Verdict::yes("entrywise-scan", A_NONNEG, 0.0),
        Some((index, value)) => Verdict::no("entrywise-scan", A_NONNEG, Witness::Entry { index, value }, 0.0),
    };
    trace.fire("nonnegative", &nonnegative);

    // Hankel structure
    let (strong_hankel, strict_hankel) = hankel_verdicts(a, &s, asym_witness.as_ref(), opts, tol)?;
    trace.fire("strong_hankel", &strong_hankel);
    trace.fire("strict_hankel", &strict_hankel);

    // complete positivity
    let factors = match (&opts.factors, &asym_witness, nonnegative.is_yes()) {
        (Some(f), None, _) => {
            let dev = max_deviation(&gen_completely_positive(f)?, a)?;
            if dev > tol {
                return Err(Error::FactorMismatch(dev));
            }
            Some((f.clone(), "given"))
        }
        (Some(_), Some(_), _) => return Err(Error::FactorMismatch(f64::INFINITY)),
        (None, None, true) => diagonal_entries(a).and_then(|d| {
            let rows = (0..n)
                .filter(|&i| d[i] > 0.0)
                .map(|i| {
                    let mut u = vec![0.0; n];
                    u[i] = d[i].powf(1.0 / m as f64);
                    u
                })
                .collect::<Vec<_>>();
            if rows.is_empty() {
                None
            } else {
                FactorSet::new(m, rows).ok().map(|f| (f, "diagonal"))
            }
        }),
        _ => None,
    };
    let (completely_positive, strongly_completely_positive, gamma) = match (&factors, &asym_witness) {
        (_, Some(w)) => {
            let v = Verdict::no("not-symmetric", rules::A_CP, w.clone(), 0.0);
            (v.clone(), Verdict { anchor: rules::A_STRONG_CP, ..v }, None)
        }
        _ if nonnegative.is_no() => {
            let w = nonnegative.witness.clone().expect("no carries witness");
            let v = Verdict::no("negative-entry", rules::A_CP, w, 0.0);
            (v.clone(), Verdict { anchor: rules::A_STRONG_CP, ..v }, None)
        }
        (Some((f, origin)), None) => {
            let c = check_cp(f);
            let cp = c.cp.note("factors", *origin);
            (cp, c.strongly_cp, Some(c.strongly_pd_via_cp))
        }
        (None, None) => {
            let v = Verdict::unknown("no-factorization-known", rules::A_CP, 0.0);
            let sv = Verdict::unknown("no-factorization-known", rules::A_STRONG_CP, 0.0);
            (v, sv, None)
        }
    };
    trace.fire("completely_positive", &completely_positive);
    trace.fire("strongly_completely_positive", &strongly_completely_positive);

    // strong PSD / PD / SOS
    let (strongly_psd, strongly_pd, strongly_sos) = if let Some(w) = &asym_witness {
        let v = Verdict::no("not-symmetric", A_ODD_ONLY, w.clone(), tol);
        (v.clone(), v.clone(), v)
    } else if m % 2 == 0 {
        let v = Verdict::no(
            "even-order",
            A_ODD_ONLY,
            Witness::Structural {
                reason: format!("order {m} is even"),
            },
            tol,
        );
        (v.clone(), v.clone(), v)
    } else {
        strong_verdicts(
            &s,
            opts,
            tol,
            &completely_positive,
            &strict_hankel,
            gamma.as_ref(),
            factors.as_ref().map(|(f, _)| f),
            &mut trace,
        )?
    };

    let b_tensor = check_b_tensor(a, tol);
    trace.fire("b_tensor", &b_tensor);
    let mt = check_m_tensor(a, tol)?;
    trace.fire("m_tensor", &mt.m_tensor);
    trace.fire("strong_m_tensor", &mt.strong_m_tensor);

    let facts = Facts {
        symmetric: asym.is_none(),
        nonnegative: nonnegative.is_yes(),
        strongly_psd: &strongly_psd,
        strongly_pd: &strongly_pd,
        m_tensor: &mt.m_tensor,
        strong_m_tensor: &mt.strong_m_tensor,
        cp: &completely_positive,
        strongly_cp: &strongly_completely_positive,
    };
    let g = genuine_chain(&s, &facts, opts, tol, &mut trace)?;

    let mut verdicts = Verdicts {
        strongly_psd,
        strongly_pd,
        strongly_sos,
        b_tensor,
        m_tensor: mt.m_tensor,
        strong_m_tensor: mt.strong_m_tensor,
        strong_hankel,
        strict_hankel,
        completely_positive,
        strongly_completely_positive,
        barren: g.barren,
        genuinely_psd: g.genuinely_psd,
        genuinely_pd: g.genuinely_pd,
        nonnegative,
        symmetric,
    };
    propagate(&mut verdicts, &mut trace);

    Ok(ClassificationReport {
        tensor: TensorSummary {
            hash: tensor_hash(a),
            order: m,
            dim: n,
        },
        settings: Settings {
            tol,
            tol_base: opts.tol_base,
            seed: opts.seed,
            search_points: opts.search_points,
            sshopm_starts: opts.sshopm_starts,
        },
        verdicts,
        trace: trace.0,
    })
}

fn hankel_verdicts(
    a: &CubicTensor,
    s: &CubicTensor,
    asym: Option<&Witness>,
    opts: &ClassifyOptions,
    tol: f64,
) -> Result<(Verdict, Verdict)> {
    if let Some(w) = asym {
        let v = Verdict::no("not-symmetric", rules::A_STRONG_HANKEL, w.clone(), tol);
        return Ok((v.clone(), Verdict { anchor: rules::A_STRICT_HANKEL, ..v }));
    }
    let spec = match &opts.hankel {
        Some(spec) => {
            let dev = max_deviation(&gen_hankel(spec)?, a)?;
            if dev > tol {
                return Err(Error::HankelMismatch(dev));
            }
            spec.clone()
        }
        None => match detect_hankel(s, tol) {
            Ok(spec) => spec,
            Err((first, second)) => {
                let w = Witness::EntryPair {
                    values: [a.get(&first), a.get(&second)],
                    first,
                    second,
                };
                let v = Verdict::no("index-sum-conflict", rules::A_STRONG_HANKEL, w, tol);
                return Ok((v.clone(), Verdict { anchor: rules::A_STRICT_HANKEL, ..v }));
            }
        },
    };
    let strong = check_strong_hankel(&spec, tol)?.note("pad_defaulted", spec.pad_defaulted());
    let strict = if spec.order() % 2 == 1 {
        check_strict_hankel(&spec, tol)?
    } else {
        Verdict::no(
            "even-order",
            rules::A_STRICT_HANKEL,
            Witness::Structural {
                reason: format!("order {} is even", spec.order()),
            },
            tol,
        )
    };
    Ok((strong, strict))
}

#[allow(clippy::too_many_arguments)]
fn strong_verdicts(
    s: &CubicTensor,
    opts: &ClassifyOptions,
    tol: f64,
    cp: &Verdict,
    strict: &Verdict,
    gamma: Option<&Verdict>,
    factors: Option<&FactorSet>,
    trace: &mut Trace,
) -> Result<(Verdict, Verdict, Verdict)> {
    let (m, n) = (s.order(), s.dim());
    let exact = m == 3 || n == 2;
    let search = opts.search();
    let mut found: Option<SearchOutcome> = None;
    let searched = |found: &mut Option<SearchOutcome>| -> Result<SearchOutcome> {
        if found.is_none() {
            *found = Some(sphere_search(s, tol, &search)?);
        }
        Ok(found.clone().expect("just filled"))
    };

    let spsd = if let Some(v) = rules::necessary_entry_prefilter(s, tol)? {
        v
    } else if exact {
        rules::check_strongly_psd(s, tol, &search)?
    } else if cp.is_yes() {
        Verdict::yes("cp-components-sos", A_SOS_CP, tol).with_witness(Witness::Implication {
            from: "completely_positive",
        })
    } else if strict.is_yes() {
        Verdict::yes("strict-hankel-sos", A_SOS_HANKEL, tol).with_witness(Witness::Implication { from: "strict_hankel" })
    } else {
        search_verdict(&searched(&mut found)?, tol, false, &search)
    };
    trace.fire("strongly_psd", &spsd);

    let spd = match gamma {
        Some(g) if g.is_yes() => {
            let mut v = g.clone();
            if exact {
                let x = rules::check_strongly_pd(s, tol, &search)?;
                if x.is_no() {
                    trace.note(
                        "strongly_pd",
                        x.rule,
                        x.status,
                        "exact slice test disagrees with the support rank rule".into(),
                    );
                }
                v = v.note("exact_cross_check", x.status.as_str());
            }
            v
        }
        _ if spsd.is_no() => Verdict {
            rule: "not-strongly-psd",
            ..spsd.clone()
        },
        _ if exact => rules::check_strongly_pd(s, tol, &search)?,
        _ => {
            let slices_pd = strict.evidence.get("all_slices_pd").and_then(|v| v.as_bool()) == Some(true);
            if strict.is_yes() && slices_pd {
                Verdict::yes("strict-hankel-pd-slices", rules::A_STRICT_HANKEL, tol)
            } else {
                let pd_pre = rules::necessary_entry_prefilter(s, -tol)?;
                match pd_pre {
                    Some(v) => Verdict {
                        rule: "repeated-index-entry-not-positive",
                        ..v
                    },
                    None => search_verdict(&searched(&mut found)?, tol, true, &search),
                }
            }
        }
    };
    trace.fire("strongly_pd", &spd);

    let sos = if m == 3 && spsd.is_yes() {
        match sos_decompose_m3(s) {
            Ok(d) => Some(
                Verdict::yes("slice-eigen-factorization", A_SOS_M3, tol)
                    .note("terms", d.term_count())
                    .note("clamped", d.clamped.len()),
            ),
            Err(e) => {
                trace.note("strongly_sos", "slice-eigen-factorization", Status::Unknown, e.to_string());
                None
            }
        }
    } else {
        None
    };
    let sos = sos
        .or_else(|| (n == 2 && spsd.is_yes()).then(|| Verdict::yes("binary-forms", A_SOS_N2, tol)))
        .or_else(|| (m == 5 && n == 3 && spsd.is_yes()).then(|| Verdict::yes("ternary-quartics", A_SOS_M5N3, tol)))
        .or_else(|| {
            factors.map(|f| {
                let terms = sos_decompose_cp(f).map(|d| d.terms.iter().map(Vec::len).sum::<usize>()).unwrap_or(0);
                Verdict::yes("cp-factor-squares", A_SOS_CP, tol).note("terms", terms)
            })
        })
        .or_else(|| strict.is_yes().then(|| Verdict::yes("strict-hankel", A_SOS_HANKEL, tol)))
        .unwrap_or_else(|| {
            if spsd.is_no() {
                Verdict {
                    rule: "not-strongly-psd",
                    anchor: A_SOS_PSD,
                    ..spsd.clone()
                }
            } else {
                Verdict::unknown("no-sos-rule-applies", A_SOS_PSD, tol)
            }
        });
    trace.fire("strongly_sos", &sos);
    Ok((spsd, spd, sos))
}

struct Facts<'a> {
    symmetric: bool,
    nonnegative: bool,
    strongly_psd: &'a Verdict,
    strongly_pd: &'a Verdict,
    m_tensor: &'a Verdict,
    strong_m_tensor: &'a Verdict,
    cp: &'a Verdict,
    strongly_cp: &'a Verdict,
}

/// Barren, genuinely PSD and genuinely PD verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct GenuineVerdicts {
    pub barren: Verdict,
    pub genuinely_psd: Verdict,
    pub genuinely_pd: Verdict,
}

/// First certified verdict wins; a later certified verdict with the opposite
/// status turns the slot into a conflict.
fn offer(slot: &mut Option<Verdict>, name: &'static str, v: Verdict, trace: &mut Trace) {
    match slot {
        None => {
            trace.fire(name, &v);
            *slot = Some(v);
        }
        Some(cur) if cur.status != Status::Unknown && cur.status != v.status && v.status != Status::Unknown => {
            trace.note(
                name,
                "conflicting-evidence",
                Status::Unknown,
                format!("{} says {}, {} says {}", cur.rule, cur.status.as_str(), v.rule, v.status.as_str()),
            );
            *cur = Verdict::unknown("conflicting-evidence", cur.anchor, cur.tol)
                .note("first_rule", cur.rule)
                .note("second_rule", v.rule);
        }
        Some(_) => {}
    }
}

fn genuine_chain(
    s: &CubicTensor,
    f: &Facts<'_>,
    opts: &ClassifyOptions,
    tol: f64,
    trace: &mut Trace,
) -> Result<GenuineVerdicts> {
    let (m, n) = (s.order(), s.dim());
    let mut barren = None;
    let mut gpsd = None;
    let mut gpd = None;

    // (1) exact enumeration at n = 2
    if n == 2 {
        let spec = h_eigs_exact_n2(s)?;
        if spec.is_empty() {
            let w = Witness::Spectrum {
                elimination: spec.elimination.coeffs().to_vec(),
                real_roots: 0,
            };
            offer(&mut barren, "barren", Verdict::yes("exact-n2-empty", A_BARREN, tol).with_witness(w), trace);
            let imp = Witness::Implication { from: "barren" };
            offer(&mut gpsd, "genuinely_psd", Verdict::no("barren", A_GENUINE, imp.clone(), tol), trace);
            offer(&mut gpd, "genuinely_pd", Verdict::no("barren", A_GENUINE, imp, tol), trace);
        } else {
            let (sample, min_pair) = match &spec.continuum {
                None => (spec.pairs[0].clone(), spec.pairs.iter().min_by(|p, q| p.lambda.total_cmp(&q.lambda)).cloned()),
                Some(c) => {
                    let at = |z: f64| HEigenpair::new(s, c.lambda_of_z.eval(z), &[z, 1.0], Method::ExactN2);
                    let sample = at(0.0)?;
                    let low = match crate::poly::min_on_real(&c.lambda_of_z) {
                        Some((z, _)) => at(z)?,
                        None => {
                            let z = (0..40)
                                .map(|k| if k % 2 == 0 { 2f64.powi(k / 2) } else { -(2f64.powi(k / 2)) })
                                .find(|&z| c.lambda_of_z.eval(z) < -tol)
                                .unwrap_or(1e6);
                            at(z)?
                        }
                    };
                    let inf = c
                        .at_infinity
                        .map(|l| HEigenpair::new(s, l, &[1.0, 0.0], Method::ExactN2))
                        .transpose()?;
                    let low = match inf {
                        Some(p) if p.lambda < low.lambda => p,
                        _ => low,
                    };
                    (sample, Some(low))
                }
            };
            let eigs: Vec<f64> = spec.pairs.iter().map(|p| p.lambda).collect();
            offer(
                &mut barren,
                "barren",
                Verdict::no("exact-n2-eigenpair", A_BARREN, eigen_witness(&sample), tol),
                trace,
            );
            let low = min_pair.expect("non-empty spectrum");
            let psd = if low.lambda >= -tol {
                Verdict::yes("exact-n2-spectrum", A_GENUINE, tol)
            } else {
                Verdict::no("exact-n2-spectrum", A_GENUINE, eigen_witness(&low), tol)
            };
            let pd = if low.lambda > tol {
                Verdict::yes("exact-n2-spectrum", A_GENUINE, tol)
            } else {
                Verdict::no("exact-n2-spectrum", A_GENUINE, eigen_witness(&low), tol)
            };
            let continuum = spec.continuum.is_some();
            offer(&mut gpsd, "genuinely_psd", psd.note("eigenvalues", &eigs).note("continuum", continuum), trace);
            offer(&mut gpd, "genuinely_pd", pd.note("eigenvalues", &eigs).note("continuum", continuum), trace);
        }
    }

    // (2) strong PSD-ness
    if f.strongly_psd.is_yes() {
        let imp = Witness::Implication { from: "strongly_psd" };
        offer(&mut barren, "barren", Verdict::no("strongly-psd", A_GEN_SPSD, imp, tol), trace);
        offer(&mut gpsd, "genuinely_psd", Verdict::yes("strongly-psd", A_GEN_SPSD, tol), trace);
    }
    if f.strongly_pd.is_yes() {
        offer(&mut gpd, "genuinely_pd", Verdict::yes("strongly-pd", A_GEN_SPSD, tol), trace);
    }

    // (3) symmetric M-tensors
    if f.symmetric && f.m_tensor.is_yes() {
        offer(&mut gpsd, "genuinely_psd", Verdict::yes("m-tensor", A_GEN_M, tol), trace);
    }
    if f.symmetric && f.strong_m_tensor.is_yes() {
        offer(&mut gpd, "genuinely_pd", Verdict::yes("strong-m-tensor", A_GEN_M, tol), trace);
    }

    // (4) diagonal tensors: eigenvalues are exactly the diagonal entries
    if let Some(d) = diagonal_entries(s) {
        let (imin, dmin) = d
            .iter()
            .copied()
            .enumerate()
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("n >= 1");
        let mut e = vec![0.0; n];
        e[imin] = 1.0;
        let low = HEigenpair::new(s, dmin, &e, Method::ExactN2)?;
        offer(&mut barren, "barren", Verdict::no("diagonal", A_GEN_DIAG, eigen_witness(&low), tol), trace);
        let psd = if dmin >= -tol {
            Verdict::yes("diagonal", A_GEN_DIAG, tol)
        } else {
            Verdict::no("diagonal", A_GEN_DIAG, eigen_witness(&low), tol)
        };
        let pd = if dmin > tol {
            Verdict::yes("diagonal", A_GEN_DIAG, tol)
        } else {
            Verdict::no("diagonal", A_GEN_DIAG, eigen_witness(&low), tol)
        };
        offer(&mut gpsd, "genuinely_psd", psd, trace);
        offer(&mut gpd, "genuinely_pd", pd, trace);
    }

    // (5) complete positivity
    if f.cp.is_yes() {
        offer(&mut gpsd, "genuinely_psd", Verdict::yes("completely-positive", A_GEN_CP, tol), trace);
    }
    if f.strongly_cp.is_yes() {
        offer(&mut gpd, "genuinely_pd", Verdict::yes("strongly-completely-positive", A_GEN_CP, tol), trace);
    }

    // (7) local search evidence, run where no exact enumeration exists
    let found = if n >= 3 && m >= 3 {
        let o = SshopmOptions {
            starts: opts.sshopm_starts,
            seed: opts.seed,
            ..SshopmOptions::default()
        };
        Some(sshopm(s, &o)?)
    } else {
        None
    };
    let pairs: &[HEigenpair] = found.as_ref().map_or(&[], |r| &r.pairs);

    // (6) nonnegative tensors have an eigenvalue
    if f.nonnegative {
        let v = Verdict::no(
            "nonnegative",
            A_GEN_NONNEG,
            pairs.first().map_or(Witness::Implication { from: "nonnegative" }, eigen_witness),
            tol,
        );
        offer(&mut barren, "barren", v, trace);
    }

    if let Some(r) = &found {
        let eigs: Vec<f64> = r.pairs.iter().map(|p| p.lambda).collect();
        if let Some(p) = r.pairs.first() {
            offer(&mut barren, "barren", Verdict::no("sshopm-eigenpair", A_SSHOPM, eigen_witness(p), tol), trace);
            if p.lambda < -tol {
                offer(
                    &mut gpsd,
                    "genuinely_psd",
                    Verdict::no("sshopm-negative-eigenvalue", A_SSHOPM, eigen_witness(p), tol),
                    trace,
                );
            }
            if p.lambda <= tol {
                offer(
                    &mut gpd,
                    "genuinely_pd",
                    Verdict::no("sshopm-nonpositive-eigenvalue", A_SSHOPM, eigen_witness(p), tol),
                    trace,
                );
            }
        }
        let attach = |v: Verdict| {
            v.note("sshopm_eigenvalues", &eigs)
                .note("sshopm_runs", r.runs)
                .note("sshopm_failures", r.failures)
        };
        let unknown = |slot: Option<Verdict>, rule| attach(slot.unwrap_or_else(|| Verdict::unknown(rule, A_GENUINE, tol)));
        return Ok(GenuineVerdicts {
            barren: unknown(barren, "no-eigenvalue-evidence"),
            genuinely_psd: unknown(gpsd, "no-rule-applies"),
            genuinely_pd: unknown(gpd, "no-rule-applies"),
        });
    }
    Ok(GenuineVerdicts {
        barren: barren.unwrap_or_else(|| Verdict::unknown("no-eigenvalue-evidence", A_BARREN, tol)),
        genuinely_psd: gpsd.unwrap_or_else(|| Verdict::unknown("no-rule-applies", A_GENUINE, tol)),
        genuinely_pd: gpd.unwrap_or_else(|| Verdict::unknown("no-rule-applies", A_GENUINE, tol)),
    })
}

/// `(premise, status, conclusion, status, rule)`.
const PROPAGATION: [(&str, Status, &str, Status, &str); 17] = [
    ("strongly_pd", Status::CertifiedYes, "strongly_psd", Status::CertifiedYes, "implied-by-strongly-pd"),
    ("strict_hankel", Status::CertifiedYes, "strongly_sos", Status::CertifiedYes, "implied-by-strict-hankel"),
    ("strongly_sos", Status::CertifiedYes, "strongly_psd", Status::CertifiedYes, "implied-by-strongly-sos"),
    ("strongly_psd", Status::CertifiedNo, "strongly_sos", Status::CertifiedNo, "implied-by-not-strongly-psd"),
    ("strongly_psd", Status::CertifiedNo, "strongly_pd", Status::CertifiedNo, "implied-by-not-strongly-psd"),
    ("strongly_sos", Status::CertifiedNo, "strict_hankel", Status::CertifiedNo, "implied-by-not-strongly-sos"),
    ("barren", Status::CertifiedYes, "genuinely_psd", Status::CertifiedNo, "implied-by-barren"),
    ("barren", Status::CertifiedYes, "genuinely_pd", Status::CertifiedNo, "implied-by-barren"),
    ("barren", Status::CertifiedYes, "strongly_psd", Status::CertifiedNo, "implied-by-barren"),
    ("strongly_psd", Status::CertifiedYes, "barren", Status::CertifiedNo, "implied-by-strongly-psd"),
    ("genuinely_psd", Status::CertifiedYes, "barren", Status::CertifiedNo, "implied-by-genuinely-psd"),
    ("genuinely_pd", Status::CertifiedYes, "genuinely_psd", Status::CertifiedYes, "implied-by-genuinely-pd"),
    ("genuinely_psd", Status::CertifiedNo, "genuinely_pd", Status::CertifiedNo, "implied-by-not-genuinely-psd"),
    ("strong_m_tensor", Status::CertifiedYes, "m_tensor", Status::CertifiedYes, "implied-by-strong-m-tensor"),
    ("m_tensor", Status::CertifiedNo, "strong_m_tensor", Status::CertifiedNo, "implied-by-not-m-tensor"),
    (
        "strongly_completely_positive",
        Status::CertifiedYes,
        "completely_positive",
        Status::CertifiedYes,
        "implied-by-strongly-cp",
    ),
    (
        "completely_positive",
        Status::CertifiedNo,
        "strongly_completely_positive",
        Status::CertifiedNo,
        "implied-by-not-cp",
    ),
];

fn static_name(name: &str) -> &'static str {
    Verdicts::NAMES.into_iter().find(|n| *n == name).expect("known predicate")
}

/// Fills unknown verdicts from certified ones until nothing changes. A
/// certified verdict that contradicts an implication is left in place and
/// logged.
fn propagate(v: &mut Verdicts, trace: &mut Trace) {
    loop {
        let mut changed = false;
        for (p, ps, c, cs, rule) in PROPAGATION {
            let premise = v.get(p).expect("known predicate").clone();
            if premise.status != ps {
                continue;
            }
            let concl = v.get_mut(c).expect("known predicate");
            if concl.status == cs {
                continue;
            }
            if concl.status != Status::Unknown {
                let note = format!("{p} is {} but {c} is {}", ps.as_str(), concl.status.as_str());
                if !trace.0.iter().any(|t| t.note.as_deref() == Some(note.as_str())) {
                    trace.note(static_name(c), "implication-conflict", concl.status, note);
                }
                continue;
            }
            let witness = match (cs, &premise.witness) {
                (Status::CertifiedNo, Some(w)) if ps == Status::CertifiedNo => w.clone(),
                _ => Witness::Implication { from: static_name(p) },
            };
            let mut nv = Verdict::with_status(cs, rule, A_IMPLIED, concl.tol);
            if cs == Status::CertifiedNo {
                nv.witness = Some(witness);
            } else {
                nv.witness = Some(Witness::Implication { from: static_name(p) });
            }
            nv.evidence = std::mem::take(&mut concl.evidence);
            *concl = nv;
            trace.fire(static_name(c), concl);
            changed = true;
        }
        if !changed {
            break;
        }
    }
}

/// Strong SOS verdict with an explicit decomposition when the rule that fired
/// provides one.
#[derive(Debug, Clone, PartialEq)]
pub struct SosVerdict {
    pub verdict: Verdict,
    pub m3: Option<M3Sos>,
    pub cp: Option<CpSos>,
}

/// Runs the classifier and returns the strong SOS verdict, with the slice
/// decomposition (order 3) or factor decomposition attached when available.
pub fn check_strongly_sos(a: &CubicTensor, opts: &ClassifyOptions) -> Result<SosVerdict> {
    let r = classify(a, opts)?;
    let verdict = r.verdicts.strongly_sos;
    let m3 = (verdict.rule == "slice-eigen-factorization")
        .then(|| sos_decompose_m3(&a.symmetrize()))
        .transpose()?;
    let cp = match (&opts.factors, verdict.rule) {
        (Some(f), "cp-factor-squares") => Some(sos_decompose_cp(f)?),
        _ => None,
    };
    Ok(SosVerdict { verdict, m3, cp })
}

/// Runs the classifier and returns the eigenvalue-based verdicts.
pub fn check_barren_and_genuine(a: &CubicTensor, opts: &ClassifyOptions) -> Result<GenuineVerdicts> {
    let r = classify(a, opts)?;
    Ok(GenuineVerdicts {
        barren: r.verdicts.barren,
        genuinely_psd: r.verdicts.genuinely_psd,
        genuinely_pd: r.verdicts.genuinely_pd,
    })
}
