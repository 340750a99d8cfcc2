//! Cographical arrangements of directed graphs and abelianized quivers.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arrangement::PolarizedArrangement;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// A connected directed multigraph with a framing vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    framing: usize,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String)>, framing: &str) -> Result<Self> {
        let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != vertices.len() {
            return Err(Error::Invalid("vertex names must be distinct".into()));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Invalid(format!("unknown vertex {name}")))
        };
        let edges = edges
            .iter()
            .map(|(t, h)| Ok((lookup(t)?, lookup(h)?)))
            .collect::<Result<Vec<_>>>()?;
        let framing = lookup(framing)?;
        Self::from_indices(vertices, edges, framing)
    }

    pub fn from_indices(vertices: Vec<String>, edges: Vec<(usize, usize)>, framing: usize) -> Result<Self> {
        let n = vertices.len();
        if framing >= n {
            return Err(Error::Invalid("framing vertex out of range".into()));
        }
        for (i, &(t, h)) in edges.iter().enumerate() {
            if t >= n || h >= n {
                return Err(Error::Invalid(format!("edge {} has an endpoint out of range", i + 1)));
            }
            if t == h {
                return Err(Error::Invalid(format!("edge {} is a self-loop at {}", i + 1, vertices[t])));
            }
        }
        let g = Self {
            vertices,
            edges,
            framing,
        };
        if !g.is_connected() {
            return Err(Error::Invalid("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn framing(&self) -> usize {
        self.framing
    }

    /// Edge labels `e1, e2, …` in edge order.
    pub fn edge_labels(&self) -> Vec<String> {
        (1..=self.edges.len()).map(|i| format!("e{i}")).collect()
    }

    pub fn non_framing(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| v != self.framing).collect()
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(t, h) in &self.edges {
            uf.union(t, h);
        }
        uf.components == 1
    }

    /// `|E| × (|V| - 1)`: `+1` at the head, `-1` at the tail, framing column
    /// dropped.
    pub fn coboundary(&self) -> IntMatrix {
        let cols = self.non_framing();
        let position: HashMap<usize, usize> = cols.iter().enumerate().map(|(j, &v)| (v, j)).collect();
        let mut m = IntMatrix::zeros(self.edges.len(), cols.len());
        for (e, &(t, h)) in self.edges.iter().enumerate() {
            if let Some(&j) = position.get(&h) {
                m[(e, j)] += 1;
            }
            if let Some(&j) = position.get(&t) {
                m[(e, j)] -= 1;
            }
        }
        m
    }

    /// The validated cographical arrangement.
    pub fn to_arrangement(&self, eta: Vec<BigInt>, zeta_lift: Vec<BigInt>) -> Result<PolarizedArrangement> {
        let a = self.to_arrangement_unchecked(eta, zeta_lift)?;
        a.ensure_valid()?;
        Ok(a)
    }

    /// Structural checks only.
    pub fn to_arrangement_unchecked(&self, eta: Vec<BigInt>, zeta_lift: Vec<BigInt>) -> Result<PolarizedArrangement> {
        PolarizedArrangement::new(self.edge_labels(), self.coboundary(), eta, zeta_lift)
    }

    /// Spanning trees as sorted edge-index lists, in lexicographic order.
    pub fn spanning_trees(&self) -> Vec<Vec<usize>> {
        let need = self.vertices.len() - 1;
        let candidates: Vec<Vec<usize>> = (0..self.edges.len()).combinations(need).collect();
        candidates
            .into_par_iter()
            .filter(|subset| {
                let mut uf = UnionFind::new(self.vertices.len());
                subset.iter().all(|&e| uf.union(self.edges[e].0, self.edges[e].1))
            })
            .collect()
    }

    /// Kirchhoff: `det(B^T B)` for the reduced coboundary `B`.
    pub fn tree_count(&self) -> BigInt {
        let b = self.coboundary();
        if b.cols() == 0 {
            return BigInt::one();
        }
        let laplacian = b.transpose().mul(&b).expect("shapes agree");
        laplacian.determinant().expect("square")
    }

    /// The abelianization of the linear quiver with dimension vector
    /// `ranks`: vertex `v{i}_{j}` for `j ≤ r_i`, every edge
    /// `v{i}_{j} -> v{i+1}_{j'}`, framed at `v1_1`.
    pub fn abelianize(ranks: &[usize]) -> Result<Graph> {
        if ranks.is_empty() || ranks.contains(&0) {
            return Err(Error::Invalid("ranks must be a nonempty list of positive integers".into()));
        }
        let mut vertices = Vec::new();
        let mut layer_start = Vec::new();
        for (i, &r) in ranks.iter().enumerate() {
            layer_start.push(vertices.len());
            for j in 1..=r {
                vertices.push(format!("v{}_{j}", i + 1));
            }
        }
        let mut edges = Vec::new();
        for i in 0..ranks.len() - 1 {
            for j in 0..ranks[i] {
                for j2 in 0..ranks[i + 1] {
                    edges.push((layer_start[i] + j, layer_start[i + 1] + j2));
                }
            }
        }
        Self::from_indices(vertices, edges, 0)
    }

    /// Cut vector of a vertex set avoiding the framing, as an element of
    /// `Z^{V - framing}`.
    pub fn indicator(&self, set: &HashSet<usize>) -> Vec<BigInt> {
        self.non_framing()
            .iter()
            .map(|v| if set.contains(v) { BigInt::one() } else { BigInt::zero() })
            .collect()
    }
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// False if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }
}
