//! Character-level data of hypertoric category O: Verma weight supports,
//! tilting filtrations, the basis order and linkage.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arrangement::{BasisVertex, ChamberFilter, PolarizedArrangement, SignVector};
use crate::error::{Error, Result};
use crate::lattice::dot;

/// Whether `β` agrees with `mu(b)` on every edge of `b`.
pub fn cone_membership(a: &PolarizedArrangement, b: &BasisVertex, beta: &SignVector) -> Result<bool> {
    Ok(a.mu(b)?.agrees_on(beta, &b.b))
}

/// Dimension (0 or 1) of the `α` weight space of the Verma module at `b`.
pub fn verma_weight(a: &PolarizedArrangement, b: &BasisVertex, alpha: &SignVector) -> Result<u8> {
    Ok(u8::from(cone_membership(a, b, alpha)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub b: Vec<usize>,
    pub verma_index: SignVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltingFiltrationReport {
    pub index: SignVector,
    pub subquotients: Vec<Subquotient>,
}

/// Standard filtration of the tilting module attached to `α`: one Verma
/// subquotient (for `-ζ`) per basis whose cone contains `α`.
pub fn tilting_filtration(a: &PolarizedArrangement, alpha: &SignVector) -> Result<TiltingFiltrationReport> {
    // rejects α outside the bounded feasible set
    a.mu_inverse(alpha)?;
    let opposite = a.with_zeta_negated();
    let mut subquotients = Vec::new();
    for v in a.bases() {
        if cone_membership(a, &v, alpha)? {
            subquotients.push(Subquotient {
                verma_index: opposite.mu(&v)?,
                b: v.b,
            });
        }
    }
    Ok(TiltingFiltrationReport {
        index: alpha.clone(),
        subquotients,
    })
}

pub fn tilting_multiplicity(a: &PolarizedArrangement, alpha: &SignVector, target: &SignVector) -> Result<usize> {
    let report = tilting_filtration(a, alpha)?;
    Ok(report
        .subquotients
        .iter()
        .filter(|sq| sq.verma_index.agrees_on(target, &sq.b))
        .count())
}

/// The partial order on bases generated by `b < b'` when `b`, `b'` differ
/// in one element and `ζ(H_b) < ζ(H_b')`.
pub struct BasisOrder {
    bases: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
}

impl BasisOrder {
    pub fn new(a: &PolarizedArrangement) -> Result<Self> {
        let vertices = a.bases();
        let values: Vec<BigRational> = vertices.iter().map(|v| a.zeta_value(v)).collect();
        let mut above = vec![Vec::new(); vertices.len()];
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if !adjacent(&vertices[i].b, &vertices[j].b) {
                    continue;
                }
                match values[i].cmp(&values[j]) {
                    std::cmp::Ordering::Less => above[i].push(j),
                    std::cmp::Ordering::Greater => above[j].push(i),
                    std::cmp::Ordering::Equal => {
                        return Err(Error::Degenerate(format!(
                            "bases {:?} and {:?} have equal zeta values",
                            a.labels(&vertices[i].b),
                            a.labels(&vertices[j].b)
                        )))
                    }
                }
            }
        }
        Ok(Self {
            bases: vertices.into_iter().map(|v| v.b).collect(),
            above,
        })
    }

    pub fn bases(&self) -> &[Vec<usize>] {
        &self.bases
    }

    fn position(&self, b: &[usize]) -> Result<usize> {
        let mut key = b.to_vec();
        key.sort_unstable();
        self.bases.iter().position(|x| *x == key).ok_or(Error::NotABasis(key))
    }

    /// Strict comparison in the transitive closure.
    pub fn less(&self, b: &[usize], b2: &[usize]) -> Result<bool> {
        let (from, to) = (self.position(b)?, self.position(b2)?);
        if from == to {
            return Ok(false);
        }
        let mut seen = HashSet::new();
        let mut stack = vec![from];
        while let Some(x) = stack.pop() {
            for &y in &self.above[x] {
                if y == to {
                    return Ok(true);
                }
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        Ok(false)
    }

    /// Whether the generating digraph has no directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.bases.len();
        let mut indegree = vec![0usize; n];
        for ys in &self.above {
            for &y in ys {
                indegree[y] += 1;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut visited = 0;
        while let Some(x) = ready.pop() {
            visited += 1;
            for &y in &self.above[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                }
            }
        }
        visited == n
    }
}

fn adjacent(b: &[usize], b2: &[usize]) -> bool {
    let s: HashSet<&usize> = b.iter().collect();
    b2.iter().filter(|e| !s.contains(e)).count() == 1
}

pub fn basis_order_less(a: &PolarizedArrangement, b: &[usize], b2: &[usize]) -> Result<bool> {
    BasisOrder::new(a)?.less(b, b2)
}

/// `η̄` is linked to `η` when its real feasible set equals the lattice
/// feasible set at `η`.
pub fn is_linked(a: &PolarizedArrangement, eta_bar: &[BigInt]) -> Result<bool> {
    let other = a.with_eta(eta_bar.to_vec())?;
    if let Some(c) = a.circuits().iter().find(|c| dot(eta_bar, &c.coords) == BigInt::from(0)) {
        return Err(Error::Degenerate(format!(
            "eta_bar on root hyperplane of circuit {:?}",
            a.labels(&c.support())
        )));
    }
    let real = other.enumerate_chambers(ChamberFilter::Feasible, false)?;
    let lattice = a.enumerate_chambers(ChamberFilter::Feasible, true)?;
    Ok(real == lattice)
}

/// Verma weight supports of all bounded feasible chambers, keyed by index.
pub fn verma_supports(a: &PolarizedArrangement, box_chambers: &[SignVector]) -> Result<HashMap<SignVector, Vec<SignVector>>> {
    let mut out = HashMap::new();
    for v in a.bases() {
        let index = a.mu(&v)?;
        let mut support = Vec::new();
        for beta in box_chambers {
            if cone_membership(a, &v, beta)? {
                support.push(beta.clone());
            }
        }
        out.insert(index, support);
    }
    Ok(out)
}
