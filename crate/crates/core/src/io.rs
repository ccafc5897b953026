//! JSON formats for tensors, hypergraphs, factor sets, Hankel generating
//! vectors and eigenpairs.
//!
//! Numbers are written with 17 significant digits so every `f64` round-trips.

use std::collections::HashMap;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{Error, Result};
use crate::generators::{FactorSet, HankelSpec, Hypergraph};
use crate::spectra::HEigenpair;
use crate::tensor::CubicTensor;

pub const DENSE_LAYOUT: &str = "dense-row-major";
pub const COO_LAYOUT: &str = "coo";

/// Pretty JSON whose floats keep all 17 significant digits.
pub struct ExactFormatter<'a>(PrettyFormatter<'a>);

impl Default for ExactFormatter<'_> {
    fn default() -> Self {
        Self(PrettyFormatter::with_indent(b"  "))
    }
}

impl Formatter for ExactFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn end_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_key(w)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Serializes `value` with [`ExactFormatter`] and a trailing newline.
/// Non-finite floats become `null`.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFormatter::default());
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| Error::Format(e.to_string()))
}

#[derive(Serialize)]
struct DenseOut<'a> {
    order: usize,
    dim: usize,
    layout: &'static str,
    entries: &'a [f64],
    symmetric: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorIn {
    order: usize,
    dim: usize,
    #[serde(default)]
    layout: Option<String>,
    #[serde(default)]
    entries: Option<Vec<Option<f64>>>,
    #[serde(default, alias = "symmetric_hint")]
    symmetric: Option<bool>,
    #[serde(default)]
    indices: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    values: Option<Vec<Option<f64>>>,
    #[serde(default)]
    symmetrize_on_load: bool,
}

fn finite(values: Vec<Option<f64>>) -> Result<Vec<f64>> {
    values
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.filter(|v| v.is_finite()).ok_or(Error::NonFinite(k)))
        .collect()
}

/// Writes the dense layout.
pub fn tensor_to_json(a: &CubicTensor) -> Result<String> {
    to_json(&DenseOut {
        order: a.order(),
        dim: a.dim(),
        layout: DENSE_LAYOUT,
        entries: a.entries(),
        symmetric: a.symmetric_hint() || a.is_symmetric(crate::tensor::SYMMETRY_TOL * a.scale()),
    })
}

/// Reads either layout; a missing `layout` means dense.
///
/// In the sparse layout unlisted entries are zero and repeated indices are
/// summed. With `symmetrize_on_load` each listed value is copied to every
/// permutation of its index; two listed indices of the same orbit must then
/// agree.
pub fn tensor_from_json(s: &str) -> Result<CubicTensor> {
    let t: TensorIn = serde_json::from_str(s)?;
    match t.layout.as_deref().unwrap_or(DENSE_LAYOUT) {
        DENSE_LAYOUT => {
            let entries = t
                .entries
                .ok_or_else(|| Error::Format("dense layout needs \"entries\"".into()))?;
            let a = CubicTensor::new(t.order, t.dim, finite(entries)?)?;
            if t.symmetric == Some(true) {
                let tol = crate::tensor::SYMMETRY_TOL * a.scale();
                a.assert_symmetric(tol)
            } else {
                Ok(a)
            }
        }
        COO_LAYOUT => {
            let indices = t
                .indices
                .ok_or_else(|| Error::Format("coo layout needs \"indices\"".into()))?;
            let values = finite(
                t.values
                    .ok_or_else(|| Error::Format("coo layout needs \"values\"".into()))?,
            )?;
            if indices.len() != values.len() {
                return Err(Error::DimensionMismatch {
                    expected: indices.len(),
                    got: values.len(),
                });
            }
            coo_tensor(t.order, t.dim, &indices, &values, t.symmetrize_on_load)
        }
        other => Err(Error::Format(format!("unknown layout {other:?}"))),
    }
}

fn coo_tensor(m: usize, n: usize, indices: &[Vec<usize>], values: &[f64], sym: bool) -> Result<CubicTensor> {
    let mut a = CubicTensor::zeros(m, n)?;
    if !sym {
        let mut e = a.into_entries();
        for (idx, v) in indices.iter().zip(values) {
            e[crate::tensor::linear_index_checked(m, n, idx)?] += v;
        }
        return CubicTensor::new(m, n, e);
    }
    let mut orbit: HashMap<Vec<usize>, f64> = HashMap::new();
    for (idx, &v) in indices.iter().zip(values) {
        crate::tensor::linear_index_checked(m, n, idx)?;
        let mut key = idx.clone();
        key.sort_unstable();
        if let Some(&prev) = orbit.get(&key) {
            if prev != v {
                return Err(Error::Format(format!(
                    "index {idx:?} repeats orbit {key:?} with a different value ({prev} vs {v})"
                )));
            }
        }
        orbit.insert(key, v);
    }
    a = CubicTensor::from_symmetric_fn(m, n, |idx| {
        let mut key = idx.to_vec();
        key.sort_unstable();
        orbit.get(&key).copied().unwrap_or(0.0)
    })?;
    Ok(a)
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    m: usize,
    edges: Vec<Vec<usize>>,
}

pub fn hypergraph_from_json(s: &str) -> Result<Hypergraph> {
    let g: HypergraphJson = serde_json::from_str(s)?;
    Hypergraph::new(g.n, g.m, g.edges)
}

pub fn hypergraph_to_json(g: &Hypergraph) -> Result<String> {
    to_json(&HypergraphJson {
        n: g.vertices(),
        m: g.edge_size(),
        edges: g.edges().to_vec(),
    })
}

#[derive(Serialize, Deserialize)]
struct FactorSetJson {
    m: usize,
    factors: Vec<Vec<f64>>,
}

pub fn factors_from_json(s: &str) -> Result<FactorSet> {
    let f: FactorSetJson = serde_json::from_str(s)?;
    FactorSet::new(f.m, f.factors)
}

pub fn factors_to_json(f: &FactorSet) -> Result<String> {
    to_json(&FactorSetJson {
        m: f.order(),
        factors: f.factors().to_vec(),
    })
}

#[derive(Serialize, Deserialize)]
struct HankelJson {
    m: usize,
    n: usize,
    h: Vec<f64>,
    #[serde(default)]
    pad: Option<f64>,
}

/// A `null` or missing pad is defaulted when the associated matrix needs one.
pub fn hankel_from_json(s: &str) -> Result<HankelSpec> {
    let h: HankelJson = serde_json::from_str(s)?;
    HankelSpec::with_default_pad(h.m, h.n, h.h, h.pad)
}

pub fn hankel_to_json(h: &HankelSpec) -> Result<String> {
    to_json(&HankelJson {
        m: h.order(),
        n: h.dim(),
        h: h.h().to_vec(),
        pad: if h.pad_defaulted() { None } else { h.pad() },
    })
}

#[derive(Serialize)]
struct EigenpairJson<'a> {
    lambda: f64,
    x: &'a [f64],
    residual: f64,
    method: &'static str,
}

pub fn eigenpairs_to_json(pairs: &[HEigenpair]) -> Result<String> {
    let out: Vec<_> = pairs
        .iter()
        .map(|p| EigenpairJson {
            lambda: p.lambda,
            x: &p.x,
            residual: p.residual,
            method: p.method.as_str(),
        })
        .collect();
    to_json(&out)
}
