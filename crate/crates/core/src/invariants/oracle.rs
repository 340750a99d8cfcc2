//! Poincaré polynomials of smooth toric GIT quotients `C^n // G` by
//! torus fixed-point counting.
//!
//! Fixed points are the `k`-subsets `β` of coordinates whose weights form a
//! basis with `η` in the open cone they span. Each contributes `τ^{2 n⁻}`
//! where `n⁻` counts tangent directions on which a strictly positive
//! one-parameter subgroup of the coordinate torus acts with negative weight.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::poly::TauPolynomial;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedCoord {
    pub label: String,
    pub weight: Vec<BigInt>,
}

/// A representation `C^n` of the rank-`k` torus together with a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedSpace {
    pub coords: Vec<WeightedCoord>,
    pub eta: Vec<BigInt>,
    pub k: usize,
}

impl WeightedSpace {
    pub fn new(coords: Vec<WeightedCoord>, eta: Vec<BigInt>, k: usize) -> Result<Self> {
        if eta.len() != k {
            return Err(Error::Shape(format!("eta has length {}, expected {k}", eta.len())));
        }
        if let Some(c) = coords.iter().find(|c| c.weight.len() != k) {
            return Err(Error::Shape(format!(
                "weight of {} has length {}, expected {k}",
                c.label,
                c.weight.len()
            )));
        }
        Ok(Self { coords, eta, k })
    }

    /// Coordinates labelled `c1, c2, …`.
    pub fn from_weights(weights: Vec<Vec<BigInt>>, eta: Vec<BigInt>) -> Result<Self> {
        let k = eta.len();
        let coords = weights
            .into_iter()
            .enumerate()
            .map(|(i, weight)| WeightedCoord {
                label: format!("c{}", i + 1),
                weight,
            })
            .collect();
        Self::new(coords, eta, k)
    }

    pub fn from_i64(weights: &[Vec<i64>], eta: &[i64]) -> Result<Self> {
        Self::from_weights(
            weights.iter().map(|w| w.iter().map(|&x| x.into()).collect()).collect(),
            eta.iter().map(|&x| x.into()).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Weights as a sorted multiset; equality ignores labels and order.
    pub fn weight_multiset(&self) -> Vec<Vec<BigInt>> {
        let mut w: Vec<Vec<BigInt>> = self.coords.iter().map(|c| c.weight.clone()).collect();
        w.sort();
        w
    }

    fn weight_matrix(&self, subset: &[usize]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| self.coords[i].weight.clone()).collect();
        IntMatrix::from_rows(&rows, self.k).expect("weights have length k")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Probe {
    /// `p = (1, M, M², …)` with `M → ∞`, compared exactly.
    Lexicographic,
    /// An explicit strictly positive vector; ties fall back to the
    /// lexicographic order.
    Weights(Vec<BigInt>),
}

/// A fixed point together with its number of repelling directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub coords: Vec<usize>,
    pub repelling: usize,
}

pub fn fixed_points(w: &WeightedSpace, probe: &Probe) -> Result<Vec<FixedPoint>> {
    if let Probe::Weights(p) = probe {
        if p.len() != w.len() || p.iter().any(|x| !x.is_positive()) {
            return Err(Error::InvalidProbe);
        }
    }
    if w.k == 0 {
        return Ok(vec![FixedPoint {
            coords: Vec::new(),
            repelling: 0,
        }]);
    }
    let subsets: Vec<Vec<usize>> = (0..w.len()).combinations(w.k).collect();
    let found: Vec<Option<FixedPoint>> = subsets
        .par_iter()
        .map(|beta| fixed_point_at(w, beta, probe))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

fn fixed_point_at(w: &WeightedSpace, beta: &[usize], probe: &Probe) -> Result<Option<FixedPoint>> {
    let m = w.weight_matrix(beta);
    let det = m.determinant()?;
    if det.is_zero() {
        return Ok(None);
    }
    if !det.abs().is_one() {
        return Err(Error::NonUnimodular(beta.to_vec()));
    }
    // rows of m are the basis weights; coefficients c with Σ c_j w_{β_j} = v
    // solve m^T c = v
    let inv = m.transpose().unimodular_inverse().expect("det is ±1");
    let a = inv.mul_vec(&w.eta)?;
    if a.iter().any(Zero::is_zero) {
        return Err(Error::DegenerateEta);
    }
    if a.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    let mut repelling = 0;
    for s in (0..w.len()).filter(|s| !beta.contains(s)) {
        let c = inv.mul_vec(&w.coords[s].weight)?;
        if tangent_is_negative(s, beta, &c, probe) {
            repelling += 1;
        }
    }
    Ok(Some(FixedPoint {
        coords: beta.to_vec(),
        repelling,
    }))
}

/// Sign of `<p, e_s - Σ c_j e_{β_j}>`.
fn tangent_is_negative(s: usize, beta: &[usize], c: &[BigInt], probe: &Probe) -> bool {
    if let Probe::Weights(p) = probe {
        let mut pairing = p[s].clone();
        for (j, &b) in beta.iter().enumerate() {
            pairing -= &c[j] * &p[b];
        }
        if !pairing.is_zero() {
            return pairing.is_negative();
        }
    }
    // the largest index with a nonzero entry dominates
    let top = beta
        .iter()
        .zip(c)
        .filter(|(_, cj)| !cj.is_zero())
        .map(|(&b, cj)| (b, cj))
        .max_by_key(|(b, _)| *b);
    match top {
        Some((b, cj)) if b > s => cj.is_positive(),
        _ => false,
    }
}

pub fn bb_poincare(w: &WeightedSpace) -> Result<TauPolynomial> {
    bb_poincare_with_probe(w, &Probe::Lexicographic)
}

pub fn bb_poincare_with_probe(w: &WeightedSpace, probe: &Probe) -> Result<TauPolynomial> {
    let mut p = TauPolynomial::zero();
    for fp in fixed_points(w, probe)? {
        p.add_term(2 * fp.repelling as i64, BigInt::one());
    }
    Ok(p)
}

/// Euler characteristic: the number of fixed points.
pub fn euler(w: &WeightedSpace) -> Result<BigInt> {
    Ok(BigInt::from(fixed_points(w, &Probe::Lexicographic)?.len()))
}

/// Whether `η` avoids every wall spanned by `k - 1` independent weights.
pub fn eta_is_generic(w: &WeightedSpace) -> bool {
    if w.k == 0 {
        return true;
    }
    if w.eta.iter().all(Zero::is_zero) {
        return false;
    }
    for subset in (0..w.len()).combinations(w.k - 1) {
        let m = w.weight_matrix(&subset);
        if m.rank() != w.k - 1 {
            continue;
        }
        let mut rows = m.to_rows();
        rows.push(w.eta.clone());
        let with_eta = IntMatrix::from_rows(&rows, w.k).expect("length k");
        if with_eta.rank() == w.k - 1 {
            return false;
        }
    }
    true
}
