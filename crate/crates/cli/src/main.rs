use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tensorlab::classify::{
    classify, sos_decompose_cp, sos_decompose_m3, tensor_hash, ClassifyOptions, Status, DEFAULT_TOL,
};
use tensorlab::generators::{
    gen_barren_b_tensor, gen_cauchy, gen_completely_positive, gen_diagonal, gen_hankel, gen_hilbert,
    gen_hypergraph_tensors, gen_identity, gen_lehmer, gen_pascal, gen_signed_spsd, HankelSpec,
};
use tensorlab::io::{
    eigenpairs_to_json, factors_from_json, hankel_from_json, hypergraph_from_json, tensor_from_json, tensor_to_json,
    to_json,
};
use tensorlab::spectra::{h_eigs_exact_n2, sshopm, HEigenpair, SshopmOptions};
use tensorlab::CubicTensor;

#[derive(Parser)]
#[command(name = "tensorlab", version, about = "Structured tensors and positive semi-definiteness classes")]
struct Cli {
    /// Seed for every randomized component.
    #[arg(long, global = true, env = "TENSORLAB_SEED", default_value_t = 42)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a tensor from a structured family.
    Gen(GenArgs),
    /// Classify a tensor against every predicate.
    Classify(ClassifyArgs),
    /// Compute H-eigenpairs.
    Eig(EigArgs),
    /// Print F(x) = A x^{m-1} and A x^m.
    Apply {
        input: PathBuf,
        /// Comma-separated point, e.g. `1,2`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        x: Vec<f64>,
    },
    /// Entrywise product of two tensors.
    Hadamard {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Symmetrize a tensor.
    Sym {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Explicit SOS decomposition of the components of A x^{m-1}.
    Sos {
        input: PathBuf,
        /// Completely positive factors; otherwise the order 3 slice factorization is used.
        #[arg(long)]
        factors: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Identity,
    Diagonal,
    Cauchy,
    Hilbert,
    Pascal,
    Lehmer,
    Hankel,
    Laplacian,
    Adjacency,
    Degree,
    Cp,
    #[value(name = "example-2-10")]
    Example2_10,
    #[value(name = "example-3-8")]
    Example3_8,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Cauchy generating vector.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    c: Option<Vec<f64>>,
    /// Diagonal entries.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    d: Option<Vec<f64>>,
    /// Hankel generating vector h_0..h_{(n-1)m}.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    h: Option<Vec<f64>>,
    /// Extra Hankel value completing the associated matrix.
    #[arg(long, allow_negative_numbers = true)]
    pad: Option<f64>,
    /// Hypergraph JSON.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Factor set JSON.
    #[arg(long)]
    factors: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<f64>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ClassifyArgs {
    input: PathBuf,
    /// `PREDICATE=yes|no`; repeatable.
    #[arg(long = "assert")]
    asserts: Vec<String>,
    /// Relative tolerance base.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Sphere-search budget for m >= 5, n >= 3.
    #[arg(long, default_value_t = 10_000)]
    points: usize,
    /// Local eigenpair search restarts.
    #[arg(long, default_value_t = 20)]
    starts: usize,
    #[arg(long)]
    factors: Option<PathBuf>,
    #[arg(long)]
    hankel: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EigMethod {
    #[value(name = "exact-n2")]
    ExactN2,
    Sshopm,
}

#[derive(Args)]
struct EigArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = EigMethod::Sshopm)]
    method: EigMethod,
    #[arg(long, default_value_t = 20)]
    starts: usize,
    #[arg(long, default_value_t = 500)]
    max_iter: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

enum Failure {
    Usage(String),
    Assert(String),
}

impl From<tensorlab::Error> for Failure {
    fn from(e: tensorlab::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn read_tensor(path: &Path) -> CliResult<CubicTensor> {
    tensor_from_json(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("{family} needs --{flag}")))
}

fn cmd_gen(g: GenArgs) -> CliResult<()> {
    let name = g.family.to_possible_value().expect("named").get_name().to_owned();
    let order_dim = |g: &GenArgs| -> CliResult<(usize, usize)> {
        Ok((need(g.m, "m", &name)?, need(g.n, "n", &name)?))
    };
    let graph = |g: &GenArgs| -> CliResult<_> {
        let p = need(g.graph.as_deref(), "graph", &name)?;
        Ok(gen_hypergraph_tensors(&hypergraph_from_json(&read(p)?)?)?)
    };
    let a = match g.family {
        Family::Identity => {
            let (m, n) = order_dim(&g)?;
            gen_identity(m, n)?
        }
        Family::Diagonal => gen_diagonal(need(g.m, "m", &name)?, &need(g.d.clone(), "d", &name)?)?,
        Family::Cauchy => gen_cauchy(need(g.m, "m", &name)?, &need(g.c.clone(), "c", &name)?)?,
        Family::Hilbert => {
            let (m, n) = order_dim(&g)?;
            gen_hilbert(m, n)?
        }
        Family::Pascal => {
            let (m, n) = order_dim(&g)?;
            gen_pascal(m, n)?
        }
        Family::Lehmer => {
            let (m, n) = order_dim(&g)?;
            gen_lehmer(m, n)?
        }
        Family::Hankel => {
            let (m, n) = order_dim(&g)?;
            gen_hankel(&HankelSpec::with_default_pad(m, n, need(g.h.clone(), "h", &name)?, g.pad)?)?
        }
        Family::Laplacian => graph(&g)?.laplacian,
        Family::Adjacency => graph(&g)?.adjacency,
        Family::Degree => graph(&g)?.degree,
        Family::Cp => {
            let p = need(g.factors.as_deref(), "factors", &name)?;
            gen_completely_positive(&factors_from_json(&read(p)?)?)?
        }
        Family::Example2_10 => gen_barren_b_tensor(),
        Family::Example3_8 => gen_signed_spsd(
            need(g.n, "n", &name)?,
            need(g.c1, "c1", &name)?,
            need(g.c2, "c2", &name)?,
        )?,
    };
    eprintln!(
        "# tensorlab {} gen {name} order={} dim={} sha256={}",
        env!("CARGO_PKG_VERSION"),
        a.order(),
        a.dim(),
        tensor_hash(&a)
    );
    emit(&tensor_to_json(&a)?, g.output.as_deref())
}

fn parse_assert(s: &str) -> CliResult<(String, Status)> {
    let (pred, want) = s
        .split_once('=')
        .ok_or_else(|| usage(format!("--assert expects PREDICATE=yes|no, got {s:?}")))?;
    let want = match want.to_ascii_lowercase().as_str() {
        "yes" => Status::CertifiedYes,
        "no" => Status::CertifiedNo,
        _ => return Err(usage(format!("--assert value must be yes or no, got {want:?}"))),
    };
    if !tensorlab::classify::Verdicts::NAMES.contains(&pred) {
        return Err(usage(format!("unknown predicate {pred:?}")));
    }
    Ok((pred.to_owned(), want))
}

fn cmd_classify(c: ClassifyArgs, seed: u64) -> CliResult<()> {
    let asserts = c.asserts.iter().map(|s| parse_assert(s)).collect::<CliResult<Vec<_>>>()?;
    if !(c.tol.is_finite() && c.tol >= 0.0) {
        return Err(usage("--tol must be a nonnegative number"));
    }
    let a = read_tensor(&c.input)?;
    let opts = ClassifyOptions {
        tol_base: c.tol,
        seed,
        search_points: c.points,
        sshopm_starts: c.starts,
        factors: c.factors.as_deref().map(|p| Ok::<_, Failure>(factors_from_json(&read(p)?)?)).transpose()?,
        hankel: c.hankel.as_deref().map(|p| Ok::<_, Failure>(hankel_from_json(&read(p)?)?)).transpose()?,
    };
    let report = classify(&a, &opts)?;
    let text = match c.format {
        Format::Json => to_json(&report)?,
        Format::Text => {
            let mut s = format!(
                "tensor {} order={} dim={} tol={:e}\n",
                report.tensor.hash, report.tensor.order, report.tensor.dim, report.settings.tol
            );
            for (name, v) in report.verdicts.iter() {
                s.push_str(&format!("{name:<30} {:<13} {}\n", v.status.as_str(), v.rule));
            }
            s
        }
    };
    emit(&text, c.output.as_deref())?;
    let failed: Vec<String> = asserts
        .iter()
        .filter_map(|(p, want)| {
            let got = report.status(p).expect("validated name");
            (got != *want).then(|| format!("assertion failed: {p} is {} (wanted {})", got.as_str(), want.as_str()))
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Assert(failed.join("\n")))
    }
}

fn pair_line(p: &HEigenpair) -> String {
    let x: Vec<String> = p.x.iter().map(|v| format!("{:.12}", v + 0.0)).collect();
    format!("lambda = {:.12}  residual = {:.3e}  x = [{}]", p.lambda, p.residual, x.join(", "))
}

fn cmd_eig(e: EigArgs, seed: u64) -> CliResult<()> {
    let a = read_tensor(&e.input)?;
    match e.method {
        EigMethod::ExactN2 => {
            if a.dim() != 2 {
                return Err(usage(format!("exact-n2 needs dimension 2, got {}", a.dim())));
            }
            let spec = h_eigs_exact_n2(&a)?;
            if e.format == Format::Json {
                return emit(&eigenpairs_to_json(&spec.pairs)?, None);
            }
            println!("{} H-eigenpairs", spec.pairs.len());
            if spec.is_empty() {
                println!("no H-eigenvalues: barren");
            }
            for p in &spec.pairs {
                println!("{}", pair_line(p));
            }
            if let Some(c) = &spec.continuum {
                println!(
                    "continuum: every x = (z, 1) is an eigenvector with lambda(z) coefficients {:?}",
                    c.lambda_of_z.coeffs()
                );
            }
        }
        EigMethod::Sshopm => {
            if !a.symmetric_hint() && !a.is_symmetric(tensorlab::tensor::SYMMETRY_TOL * a.scale()) {
                return Err(usage("sshopm needs a symmetric tensor (see `tensorlab sym`)"));
            }
            let opts = SshopmOptions {
                starts: e.starts,
                max_iter: e.max_iter,
                seed,
                ..SshopmOptions::default()
            };
            let r = sshopm(&a, &opts)?;
            if e.format == Format::Json {
                return emit(&eigenpairs_to_json(&r.pairs)?, None);
            }
            println!("{} H-eigenpairs ({} runs, {} unconverged)", r.pairs.len(), r.runs, r.failures);
            for p in &r.pairs {
                println!("{}", pair_line(p));
            }
        }
    }
    Ok(())
}

fn fmt_vec(v: &[f64]) -> String {
    let s: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("({})", s.join(", "))
}

fn cmd_apply(input: &Path, x: &[f64]) -> CliResult<()> {
    let a = read_tensor(input)?;
    let f = a.apply(x)?;
    println!("F = {}", fmt_vec(&f));
    println!("A x^m = {}", a.form_value(x)?);
    Ok(())
}

/// Deterministic points in `[-1, 1]^n` for self-checks.
fn probe_points(n: usize, count: usize) -> Vec<Vec<f64>> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    (1..=count)
        .map(|k| {
            (1..=n)
                .map(|j| 2.0 * ((k as f64) * GOLDEN * (j as f64).sqrt()).fract() - 1.0)
                .collect()
        })
        .collect()
}

fn relative_residual(a: &CubicTensor, eval: impl Fn(&[f64]) -> Vec<f64>) -> CliResult<f64> {
    let mut worst = 0f64;
    for x in probe_points(a.dim(), 100) {
        let f = a.apply(&x)?;
        let g = eval(&x);
        for (p, q) in f.iter().zip(&g) {
            worst = worst.max((p - q).abs() / p.abs().max(1.0));
        }
    }
    Ok(worst)
}

fn cmd_sos(input: &Path, factors: Option<&Path>) -> CliResult<()> {
    let a = read_tensor(input)?;
    let out = match factors {
        Some(p) => {
            let f = factors_from_json(&read(p)?)?;
            let d = sos_decompose_cp(&f)?;
            let residual = relative_residual(&a, |x| d.eval(x))?;
            serde_json::json!({ "kind": "completely-positive", "decomposition": d, "residual": residual })
        }
        None => {
            let d = sos_decompose_m3(&a.symmetrize())?;
            let residual = relative_residual(&a, |x| d.eval(x))?;
            serde_json::json!({ "kind": "slice-eigen", "decomposition": d, "residual": residual })
        }
    };
    print!("{}", to_json(&out)?);
    eprintln!("reconstruction residual {:.3e}", out["residual"].as_f64().unwrap_or(f64::NAN));
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Gen(g) => cmd_gen(g),
        Cmd::Classify(c) => cmd_classify(c, cli.seed),
        Cmd::Eig(e) => cmd_eig(e, cli.seed),
        Cmd::Apply { input, x } => cmd_apply(&input, &x),
        Cmd::Hadamard { a, b, output } => {
            let c = read_tensor(&a)?.hadamard(&read_tensor(&b)?)?;
            emit(&tensor_to_json(&c)?, output.as_deref())
        }
        Cmd::Sym { input, output } => emit(&tensor_to_json(&read_tensor(&input)?.symmetrize())?, output.as_deref()),
        Cmd::Sos { input, factors } => cmd_sos(&input, factors.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Assert(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
