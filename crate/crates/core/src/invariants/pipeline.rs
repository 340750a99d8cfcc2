//! Refined quasimap invariants `Υ^ref(z, τ)` computed two independent
//! ways: a closed sum over dual bases, and fixed-point counts on the
//! quasimap moduli themselves.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use super::oracle::{bb_poincare, WeightedCoord, WeightedSpace};
use super::poly::{GeneratingSeries, TauPolynomial};
use crate::arrangement::{PolarizedArrangement, SignVector};
use crate::error::{Error, Result};
use crate::lattice::l1_norm;
use crate::loops::{d_gamma, dual_bases, DualBasis};

/// Degree twist `m ∈ Z^E`; zero is the basepoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistVector(pub Vec<BigInt>);

impl TwistVector {
    pub fn zero(edges: usize) -> Self {
        Self(vec![BigInt::zero(); edges])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// The coordinates of `H(γ)`: `t_e = (B·γ)_e - m_e` copies of `w_e` (or
/// `|t_e|` copies of `-w_e` when negative).
pub fn quasimap_weights(
    a: &PolarizedArrangement,
    gamma: &[BigInt],
    m: &TwistVector,
) -> Result<WeightedSpace> {
    if m.0.len() != a.num_edges() {
        return Err(Error::Shape(format!(
            "twist has length {}, expected {}",
            m.0.len(),
            a.num_edges()
        )));
    }
    let image = a.boundary(gamma)?;
    let mut coords = Vec::new();
    for (e, (d, me)) in image.iter().zip(&m.0).enumerate() {
        let t = d - me;
        let count = usize::try_from(t.abs()).map_err(|_| Error::Invalid("degree too large".into()))?;
        let (prefix, weight): (&str, Vec<BigInt>) = if t.is_positive() {
            ("x", a.weight(e).to_vec())
        } else {
            ("y", a.weight(e).iter().map(|x| -x).collect())
        };
        for j in 0..count {
            coords.push(WeightedCoord {
                label: format!("{prefix}[{}]_{j}", a.edges()[e]),
                weight: weight.clone(),
            });
        }
    }
    WeightedSpace::new(coords, a.eta().to_vec(), a.rank())
}

/// All nonzero `γ` with `ℓ1(B·γ) ≤ bound`, in lexicographic order.
pub fn degrees(a: &PolarizedArrangement, bound: u64) -> Result<Vec<Vec<BigInt>>> {
    let k = a.rank();
    if k == 0 {
        return Ok(Vec::new());
    }
    // (B·γ)|_b = s for any dual basis b, so ℓ1(s) ≤ ℓ1(B·γ) ≤ bound
    let b = a
        .first_row_basis()
        .ok_or_else(|| Error::Invalid("weights do not span".into()))?;
    let inv = a.dual_basis_inverse(&b)?;
    let mut points = Vec::new();
    ball(k, bound as i64, &mut Vec::with_capacity(k), &mut points);
    let bound = BigInt::from(bound);
    let mut out: Vec<Vec<BigInt>> = points
        .into_par_iter()
        .map(|s| {
            let gamma = inv.mul_vec(&s)?;
            let keep = !gamma.iter().all(Zero::is_zero) && l1_norm(&a.boundary(&gamma)?) <= bound;
            Ok(keep.then_some(gamma))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    Ok(out)
}

fn ball(k: usize, radius: i64, current: &mut Vec<BigInt>, out: &mut Vec<Vec<BigInt>>) {
    if current.len() == k {
        out.push(current.clone());
        return;
    }
    for x in -radius..=radius {
        current.push(BigInt::from(x));
        ball(k, radius - x.abs(), current, out);
        current.pop();
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormulaOptions {
    /// Defaults to all-plus.
    pub alpha_plus: Option<SignVector>,
    /// Defaults to all-minus.
    pub alpha_minus: Option<SignVector>,
    /// Test fixture: added to `ε_b` at the first edge of every `b`.
    #[doc(hidden)]
    pub epsilon_offset: i64,
}

/// Precomputed dual-basis data for evaluating single coefficients.
pub struct Formula {
    bases: Vec<(DualBasis, Vec<BigInt>)>,
    alpha_plus: SignVector,
    alpha_minus: SignVector,
}

impl Formula {
    pub fn new(a: &PolarizedArrangement, options: &FormulaOptions) -> Result<Self> {
        let n = a.num_edges();
        let alpha_plus = options.alpha_plus.clone().unwrap_or_else(|| SignVector::all_plus(n));
        let alpha_minus = options.alpha_minus.clone().unwrap_or_else(|| SignVector::all_minus(n));
        for alpha in [&alpha_plus, &alpha_minus] {
            if alpha.len() != n {
                return Err(Error::Shape(format!("sign vector {alpha} has length {}, expected {n}", alpha.len())));
            }
        }
        let bases = dual_bases(a)?
            .into_iter()
            .map(|d| {
                let mut eps = d.epsilon();
                if let Some(&first) = d.b.first() {
                    eps[first] += options.epsilon_offset;
                }
                (d, eps)
            })
            .collect();
        Ok(Self {
            bases,
            alpha_plus,
            alpha_minus,
        })
    }

    /// `Σ_b Σ_{s + r = (B·γ)|_b} τ^{ψ_b(s + r, s)}`.
    pub fn coefficient(&self, a: &PolarizedArrangement, gamma: &[BigInt]) -> Result<TauPolynomial> {
        let image = a.boundary(gamma)?;
        let mut p = TauPolynomial::zero();
        for (d, eps) in &self.bases {
            let k: Vec<BigInt> = d.b.iter().map(|&e| image[e].clone()).collect();
            for (s, _r) in d.splittings(&k, &self.alpha_plus, &self.alpha_minus)? {
                let psi = d.psi(&k, &s, eps)?;
                if psi.is_negative() || (&psi % 2u32) != BigInt::zero() {
                    return Err(Error::Convention(format!(
                        "degree {psi} at gamma {:?}, basis {:?}, s {:?} is not a nonnegative even integer",
                        gamma.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        a.labels(&d.b),
                        s.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    )));
                }
                let psi = i64::try_from(&psi).map_err(|_| Error::Convention("degree overflow".into()))?;
                p.add_term(psi, BigInt::from(1));
            }
        }
        Ok(p)
    }
}

pub fn upsilon_formula(
    a: &PolarizedArrangement,
    bound: u64,
    m: &TwistVector,
    options: &FormulaOptions,
) -> Result<GeneratingSeries> {
    if !m.is_zero() {
        return Err(Error::UnsupportedTwist);
    }
    let formula = Formula::new(a, options)?;
    let gammas = degrees(a, bound)?;
    let coeffs: Vec<TauPolynomial> = gammas
        .par_iter()
        .map(|g| formula.coefficient(a, g))
        .collect::<Result<_>>()?;
    let mut out = GeneratingSeries::new(bound);
    for (g, p) in gammas.into_iter().zip(coeffs) {
        out.insert(g, p);
    }
    Ok(out)
}

pub fn upsilon_oracle(a: &PolarizedArrangement, bound: u64, m: &TwistVector) -> Result<GeneratingSeries> {
    let gammas = degrees(a, bound)?;
    let coeffs: Vec<TauPolynomial> = gammas
        .par_iter()
        .map(|g| bb_poincare(&quasimap_weights(a, g, m)?))
        .collect::<Result<_>>()?;
    let mut out = GeneratingSeries::new(bound);
    for (g, p) in gammas.into_iter().zip(coeffs) {
        out.insert(g, p);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub gamma: Vec<BigInt>,
    pub formula: TauPolynomial,
    pub oracle: TauPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub degree_bound: u64,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
    /// Set when the closed formula refused to evaluate.
    pub aborted: Option<String>,
}

impl VerifyReport {
    pub fn is_success(&self) -> bool {
        self.mismatches.is_empty() && self.aborted.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(reason) = &self.aborted {
            return write!(f, "formula aborted: {reason}");
        }
        if self.mismatches.is_empty() {
            return write!(f, "all degrees match ({} coefficients up to degree {})", self.compared, self.degree_bound);
        }
        write!(f, "{} mismatching degrees", self.mismatches.len())?;
        for m in &self.mismatches {
            let g: Vec<String> = m.gamma.iter().map(ToString::to_string).collect();
            write!(f, "\n  z^({}) formula: {}  oracle: {}", g.join(","), m.formula, m.oracle)?;
        }
        Ok(())
    }
}

pub fn verify(a: &PolarizedArrangement, bound: u64, options: &FormulaOptions) -> Result<VerifyReport> {
    let zero = TwistVector::zero(a.num_edges());
    let oracle = upsilon_oracle(a, bound, &zero)?;
    let formula = match upsilon_formula(a, bound, &zero, options) {
        Ok(f) => f,
        Err(Error::Convention(reason)) => {
            return Ok(VerifyReport {
                degree_bound: bound,
                compared: 0,
                mismatches: Vec::new(),
                aborted: Some(reason),
            })
        }
        Err(e) => return Err(e),
    };
    let mut all: BTreeMap<&Vec<BigInt>, ()> = BTreeMap::new();
    all.extend(formula.terms.keys().map(|g| (g, ())));
    all.extend(oracle.terms.keys().map(|g| (g, ())));
    let mut mismatches = Vec::new();
    for g in all.keys() {
        let f = formula.coefficient(g);
        let o = oracle.coefficient(g);
        if f != o {
            mismatches.push(Mismatch {
                gamma: (*g).clone(),
                formula: f,
                oracle: o,
            });
        }
    }
    Ok(VerifyReport {
        degree_bound: bound,
        compared: all.len(),
        mismatches,
        aborted: None,
    })
}

/// `τ^{d_γ}` times the formula coefficient at `γ`.
pub fn tilting_grdim_periodic(a: &PolarizedArrangement, gamma: &[BigInt]) -> Result<TauPolynomial> {
    let formula = Formula::new(a, &FormulaOptions::default())?;
    let p = formula.coefficient(a, gamma)?;
    let d = i64::try_from(d_gamma(a, gamma)?).map_err(|_| Error::Invalid("degree too large".into()))?;
    Ok(p.shifted(d))
}

/// Poincaré polynomial of `𝔏_{α₁} ∩ 𝔏_{α₂}`, unshifted.
pub fn ext_poincare(a: &PolarizedArrangement, alpha1: &SignVector, alpha2: &SignVector) -> Result<TauPolynomial> {
    bb_poincare(&a.lagrangian_weights(alpha1, alpha2)?)
}
