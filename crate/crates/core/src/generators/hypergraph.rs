use itertools::Itertools;

use crate::error::{Error, Result};
use crate::generators::gen_diagonal;
use crate::tensor::CubicTensor;

/// Uniform hypergraph on vertices `0..n` whose edges all have `m` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    m: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validates the edges, sorting each and removing duplicate edges.
    pub fn new(n: usize, m: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if n < 1 || m < 2 {
            return Err(Error::InvalidParameter(format!(
                "hypergraph needs n >= 1 and m >= 2 (got n={n}, m={m})"
            )));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != m {
                return Err(Error::InvalidParameter(format!(
                    "edge {e:?} has {} vertices, expected {m}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: v, dim: n });
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "edge {e:?} repeats a vertex"
                )));
            }
            canon.push(e);
        }
        canon.sort();
        canon.dedup();
        Ok(Self {
            n,
            m,
            edges: canon,
        })
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn edge_size(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Number of edges containing each vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for v in self.edges.iter().flatten() {
            d[*v] += 1;
        }
        d
    }
}

/// Adjacency, degree and Laplacian tensors of a uniform hypergraph.
#[derive(Debug, Clone)]
pub struct HypergraphTensors {
    pub adjacency: CubicTensor,
    pub degree: CubicTensor,
    pub laplacian: CubicTensor,
}

/// Adjacency `1/(m-1)!` at every permutation of every edge, diagonal degree
/// tensor, and Laplacian `D - A`.
pub fn gen_hypergraph_tensors(g: &Hypergraph) -> Result<HypergraphTensors> {
    let (n, m) = (g.n, g.m);
    let weight = 1.0 / (1..m).map(|k| k as f64).product::<f64>();
    let mut adjacency = CubicTensor::zeros(m, n)?.into_entries();
    let stride: Vec<usize> = (0..m).map(|k| n.pow((m - 1 - k) as u32)).collect();
    for e in &g.edges {
        for p in e.iter().permutations(m) {
            let pos: usize = p.iter().zip(&stride).map(|(&&v, &s)| v * s).sum();
            adjacency[pos] = weight;
        }
    }
    let adjacency = CubicTensor::new(m, n, adjacency)?.mark_symmetric();
    let d: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    let degree = gen_diagonal(m, &d)?;
    let laplacian = degree.sub(&adjacency)?;
    Ok(HypergraphTensors {
        adjacency,
        degree,
        laplacian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_laplacian() {
        let g = Hypergraph::new(3, 3, vec![vec![2, 0, 1]]).unwrap();
        let t = gen_hypergraph_tensors(&g).unwrap();
        let l = &t.laplacian;
        for i in 0..3 {
            assert_eq!(l.get(&[i, i, i]), 1.0);
        }
        for p in [[0, 1, 2], [1, 0, 2], [0, 2, 1], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            assert_eq!(l.get(&p), -0.5);
        }
        assert_eq!(l.entries().iter().filter(|&&v| v != 0.0).count(), 9);
        assert!(l.is_symmetric(0.0));
        assert_eq!(l.apply(&[1.0; 3]).unwrap(), vec![0.0; 3]);
    }

    #[test]
    fn edgeless_graph() {
        let g = Hypergraph::new(4, 3, vec![]).unwrap();
        let t = gen_hypergraph_tensors(&g).unwrap();
        assert_eq!(t.adjacency.max_abs(), 0.0);
        assert_eq!(t.laplacian.max_abs(), 0.0);
    }

    #[test]
    fn validation_and_dedup() {
        assert!(Hypergraph::new(3, 3, vec![vec![0, 1]]).is_err());
        assert!(Hypergraph::new(3, 3, vec![vec![0, 1, 3]]).is_err());
        assert!(Hypergraph::new(3, 3, vec![vec![0, 1, 1]]).is_err());
        let g = Hypergraph::new(4, 3, vec![vec![2, 1, 0], vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(g.edges(), &[vec![0, 1, 2], vec![1, 2, 3]]);
        assert_eq!(g.degrees(), vec![1, 2, 2, 1]);
    }
}
