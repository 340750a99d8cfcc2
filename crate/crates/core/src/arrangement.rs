//! Polarized hyperplane arrangements: chambers, bases, Gale duality and the
//! bijections `mu` and `nu`.
//!
//! An arrangement is stored through the integer matrix `B` (one row per edge,
//! row `e` being the weight `w_e` of coordinate `e` under the rank-`k` torus
//! `G`), an integer character `eta` of `G` and an integer lift `zeta_lift` of
//! the cocharacter `zeta` of `T = D / G`. The quotient `Q: Z^E -> Z^{|E|-k}`
//! is derived once at construction.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::{WeightedCoord, WeightedSpace};
use crate::lattice::{
    dot, integer_solution, is_totally_unimodular, kernel_saturated, quotient_map, IntMatrix,
    RatVector,
};
use crate::lp::{self, Bound};

/// Largest edge count accepted by [`PolarizedArrangement::enumerate_chambers`].
pub const DEFAULT_CHAMBER_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of a nonzero number; `None` for zero.
    pub fn of<T: Signed>(x: &T) -> Option<Sign> {
        if x.is_positive() {
            Some(Sign::Plus)
        } else if x.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn as_int(self) -> BigInt {
        match self {
            Sign::Plus => BigInt::one(),
            Sign::Minus => -BigInt::one(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An element of `{+,-}^E`. Ordered lexicographically with `+ < -`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    pub fn uniform(len: usize, sign: Sign) -> Self {
        Self(vec![sign; len])
    }

    pub fn all_plus(len: usize) -> Self {
        Self::uniform(len, Sign::Plus)
    }

    pub fn all_minus(len: usize) -> Self {
        Self::uniform(len, Sign::Minus)
    }

    /// Sign vector whose edge `i` is `-` iff bit `len - 1 - i` of `bits` is
    /// set; iterating `bits` upwards visits sign vectors in canonical order.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        Self(
            (0..len)
                .map(|i| {
                    if (bits >> (len - 1 - i)) & 1 == 1 {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    }
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn get(&self, e: usize) -> Sign {
        self.0[e]
    }

    pub fn flipped_at(&self, e: usize) -> SignVector {
        let mut out = self.clone();
        out.0[e] = out.0[e].flip();
        out
    }

    pub fn flipped_on(&self, edges: &[usize]) -> SignVector {
        let mut out = self.clone();
        for &e in edges {
            out.0[e] = out.0[e].flip();
        }
        out
    }

    pub fn agrees_on(&self, other: &SignVector, edges: &[usize]) -> bool {
        edges.iter().all(|&e| self.0[e] == other.0[e])
    }

    pub fn hamming(&self, other: &SignVector) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                other => Err(Error::Parse(format!("unexpected sign character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(SignVector)
    }
}

/// A vertex `H_b` of the arrangement: `b` has `|E| - k` elements and the
/// remaining rows of `B` form a basis of the weight lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisVertex {
    pub b: Vec<usize>,
    pub vertex: RatVector,
}

/// Primitive vector of minimal support, with its image in `Z^E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub coords: Vec<BigInt>,
    pub image: Vec<BigInt>,
}

impl Circuit {
    pub fn support(&self) -> Vec<usize> {
        self.image
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChamberFilter {
    Feasible,
    Bounded,
    Both,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Bounded,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationFailure {
    NotTotallyUnimodular,
    SupportOneCircuit { edge: String },
    EtaOnRootHyperplane { circuit: Vec<String> },
    ZetaOnRootHyperplane { cocircuit: Vec<String> },
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationFailure::NotTotallyUnimodular => write!(f, "not totally unimodular"),
            ValidationFailure::SupportOneCircuit { edge } => {
                write!(f, "circuit supported on the single edge {edge}")
            }
            ValidationFailure::EtaOnRootHyperplane { circuit } => write!(
                f,
                "eta on root hyperplane of circuit {{{}}}",
                circuit.join(",")
            ),
            ValidationFailure::ZetaOnRootHyperplane { cocircuit } => write!(
                f,
                "zeta on root hyperplane of cocircuit {{{}}}",
                cocircuit.join(",")
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    /// Only genericity failures (the matrix itself is fine).
    pub fn is_degenerate_only(&self) -> bool {
        !self.failures.is_empty()
            && self.failures.iter().all(|f| {
                matches!(
                    f,
                    ValidationFailure::EtaOnRootHyperplane { .. }
                        | ValidationFailure::ZetaOnRootHyperplane { .. }
                )
            })
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        for (i, fail) in self.failures.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{fail}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedArrangement {
    edges: Vec<String>,
    matrix: IntMatrix,
    eta: Vec<BigInt>,
    zeta_lift: Vec<BigInt>,
    quotient: IntMatrix,
}

impl PolarizedArrangement {
    /// Structural checks only (shapes, full column rank, saturated image).
    /// Use [`validate`](Self::validate) for unimodularity and genericity.
    pub fn new(
        edges: Vec<String>,
        matrix: IntMatrix,
        eta: Vec<BigInt>,
        zeta_lift: Vec<BigInt>,
    ) -> Result<Self> {
        if edges.len() != matrix.rows() {
            return Err(Error::Shape(format!(
                "{} edge labels for a matrix with {} rows",
                edges.len(),
                matrix.rows()
            )));
        }
        if eta.len() != matrix.cols() {
            return Err(Error::Shape(format!(
                "eta has length {}, expected {}",
                eta.len(),
                matrix.cols()
            )));
        }
        if zeta_lift.len() != matrix.rows() {
            return Err(Error::Shape(format!(
                "zeta_lift has length {}, expected {}",
                zeta_lift.len(),
                matrix.rows()
            )));
        }
        if edges.iter().collect::<HashSet<_>>().len() != edges.len() {
            return Err(Error::Shape("edge labels must be distinct".into()));
        }
        let quotient = quotient_map(&matrix)?;
        Ok(Self {
            edges,
            matrix,
            eta,
            zeta_lift,
            quotient,
        })
    }

    /// Convenience constructor with edges labelled `e1, e2, …`.
    pub fn from_i64(matrix: &[Vec<i64>], eta: &[i64], zeta_lift: &[i64]) -> Result<Self> {
        let cols = eta.len();
        let m = IntMatrix::from_i64_rows(matrix, cols)?;
        let edges = (1..=matrix.len()).map(|i| format!("e{i}")).collect();
        Self::new(
            edges,
            m,
            eta.iter().map(|&x| x.into()).collect(),
            zeta_lift.iter().map(|&x| x.into()).collect(),
        )
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Rank `k` of the torus `G`.
    pub fn rank(&self) -> usize {
        self.matrix.cols()
    }

    /// Rank of `T = D / G`.
    pub fn torus_rank(&self) -> usize {
        self.num_edges() - self.rank()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn quotient(&self) -> &IntMatrix {
        &self.quotient
    }

    pub fn eta(&self) -> &[BigInt] {
        &self.eta
    }

    pub fn zeta_lift(&self) -> &[BigInt] {
        &self.zeta_lift
    }

    /// `zeta` in the basis of `T` chosen by the quotient map.
    pub fn zeta(&self) -> Vec<BigInt> {
        self.quotient.mul_vec(&self.zeta_lift).expect("quotient has |E| columns")
    }

    pub fn weight(&self, e: usize) -> &[BigInt] {
        self.matrix.row(e)
    }

    /// The image `∂γ = B·γ` of a cocharacter of `G`.
    pub fn boundary(&self, gamma: &[BigInt]) -> Result<Vec<BigInt>> {
        self.matrix.mul_vec(gamma)
    }

    pub fn with_eta(&self, eta: Vec<BigInt>) -> Result<Self> {
        Self::new(self.edges.clone(), self.matrix.clone(), eta, self.zeta_lift.clone())
    }

    pub fn with_zeta_lift(&self, zeta_lift: Vec<BigInt>) -> Result<Self> {
        Self::new(self.edges.clone(), self.matrix.clone(), self.eta.clone(), zeta_lift)
    }

    pub fn with_zeta_negated(&self) -> Self {
        let mut out = self.clone();
        out.zeta_lift = self.zeta_lift.iter().map(|x| -x).collect();
        out
    }

    pub fn with_eta_negated(&self) -> Self {
        let mut out = self.clone();
        out.eta = self.eta.iter().map(|x| -x).collect();
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        if !self.is_unimodular() {
            failures.push(ValidationFailure::NotTotallyUnimodular);
        }
        let circuits = self.circuits();
        for c in &circuits {
            let support = c.support();
            if support.len() == 1 {
                failures.push(ValidationFailure::SupportOneCircuit {
                    edge: self.edges[support[0]].clone(),
                });
            }
        }
        for c in &circuits {
            if dot(&self.eta, &c.coords).is_zero() {
                failures.push(ValidationFailure::EtaOnRootHyperplane {
                    circuit: self.labels(&c.support()),
                });
            }
        }
        for c in self.cocircuits() {
            if dot(&self.zeta_lift, &c.image).is_zero() {
                failures.push(ValidationFailure::ZetaOnRootHyperplane {
                    cocircuit: self.labels(&c.support()),
                });
            }
        }
        ValidationReport { failures }
    }

    /// Fails with [`Error::Invalid`] (or [`Error::Degenerate`] when only
    /// genericity fails) unless the arrangement validates.
    pub fn ensure_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else if report.is_degenerate_only() {
            Err(Error::Degenerate(report.to_string()))
        } else {
            Err(Error::Invalid(report.to_string()))
        }
    }

    pub fn labels(&self, edges: &[usize]) -> Vec<String> {
        edges.iter().map(|&e| self.edges[e].clone()).collect()
    }

    /// `D_Z -> T_Z` totally unimodular in a standard basis: with `S` a row
    /// basis of `B`, the matrix `B · B_S^{-1}` is integral and its rows
    /// outside `S` form a totally unimodular matrix.
    fn is_unimodular(&self) -> bool {
        let k = self.rank();
        if k == 0 {
            return true;
        }
        let Some(rows) = self.first_row_basis() else {
            return false;
        };
        let sub = self.matrix.select_rows(&rows);
        let Some(inv) = sub.unimodular_inverse() else {
            return false;
        };
        let reduced = self.matrix.mul(&inv).expect("k columns");
        let rest: Vec<usize> = (0..self.num_edges()).filter(|e| !rows.contains(e)).collect();
        is_totally_unimodular(&reduced.select_rows(&rest))
    }

    /// The lexicographically first `k`-subset of rows forming a basis.
    pub fn first_row_basis(&self) -> Option<Vec<usize>> {
        (0..self.num_edges())
            .combinations(self.rank())
            .find(|rows| !self.matrix.select_rows(rows).determinant().unwrap().is_zero())
    }

    /// Circuits: primitive `γ` in `Z^k` whose image `B·γ` has minimal
    /// support; one representative per ± pair, sorted by support.
    pub fn circuits(&self) -> Vec<Circuit> {
        minimal_support_vectors(&self.matrix)
    }

    /// Cocircuits: primitive `χ` in `T^∨_Z` (coordinates w.r.t. the rows of
    /// the quotient map) whose image in `Z^E` has minimal support.
    pub fn cocircuits(&self) -> Vec<Circuit> {
        minimal_support_vectors(&self.quotient.transpose())
    }

    fn check_sign_len(&self, alpha: &SignVector) -> Result<()> {
        if alpha.len() != self.num_edges() {
            return Err(Error::Shape(format!(
                "sign vector {alpha} has length {}, expected {}",
                alpha.len(),
                self.num_edges()
            )));
        }
        Ok(())
    }

    /// A point of `Δ_α`. In lattice mode the `-` coordinates are required to
    /// be at most `-1` (the integral points relevant to modules).
    pub fn feasible_point(&self, alpha: &SignVector, lattice: bool) -> Result<Option<RatVector>> {
        self.check_sign_len(alpha)?;
        let k = self.rank();
        let equations: Vec<Vec<BigRational>> = (0..k)
            .map(|j| self.matrix.column(j).into_iter().map(BigRational::from_integer).collect())
            .collect();
        let rhs: Vec<BigRational> = self.eta.iter().cloned().map(BigRational::from_integer).collect();
        let bounds: Vec<Bound> = alpha
            .signs()
            .iter()
            .map(|s| match (s, lattice) {
                (Sign::Plus, _) => Bound::nonneg(),
                (Sign::Minus, false) => Bound::nonpos(),
                (Sign::Minus, true) => Bound::AtMost(BigRational::from_integer(-BigInt::one())),
            })
            .collect();
        Ok(lp::find_point(&equations, &rhs, &bounds).map(RatVector))
    }

    pub fn is_feasible(&self, alpha: &SignVector, lattice: bool) -> Result<bool> {
        Ok(self.feasible_point(alpha, lattice)?.is_some())
    }

    /// `<ζ, ->` bounded above on `Δ_{0,α}`: the LP
    /// `{B^T x = 0, α_e x_e ≥ 0, Σ α_e x_e = 1, <ζ̃, x> ≥ 0}` is infeasible.
    pub fn is_bounded(&self, alpha: &SignVector) -> Result<bool> {
        self.check_sign_len(alpha)?;
        let n = self.num_edges();
        let k = self.rank();
        let signed = |e: usize, v: &BigInt| BigRational::from_integer(v * alpha.get(e).as_int());
        let mut equations = Vec::with_capacity(k + 2);
        for j in 0..k {
            let mut row: Vec<BigRational> = (0..n).map(|e| signed(e, &self.matrix[(e, j)])).collect();
            row.push(BigRational::zero());
            equations.push(row);
        }
        let mut norm = vec![BigRational::one(); n];
        norm.push(BigRational::zero());
        equations.push(norm);
        let mut pairing: Vec<BigRational> = (0..n).map(|e| signed(e, &self.zeta_lift[e])).collect();
        pairing.push(-BigRational::one());
        equations.push(pairing);
        let mut rhs = vec![BigRational::zero(); k];
        rhs.push(BigRational::one());
        rhs.push(BigRational::zero());
        let bounds = vec![Bound::nonneg(); n + 1];
        Ok(!lp::is_feasible(&equations, &rhs, &bounds))
    }

    pub fn enumerate_chambers(&self, filter: ChamberFilter, lattice: bool) -> Result<Vec<SignVector>> {
        self.enumerate_chambers_capped(filter, lattice, DEFAULT_CHAMBER_CAP)
    }

    pub fn enumerate_chambers_capped(
        &self,
        filter: ChamberFilter,
        lattice: bool,
        cap: usize,
    ) -> Result<Vec<SignVector>> {
        let n = self.num_edges();
        if n > cap || n >= 63 {
            return Err(Error::TooLarge { edges: n, cap });
        }
        let keep = |alpha: &SignVector| -> Result<bool> {
            Ok(match filter {
                ChamberFilter::All => true,
                ChamberFilter::Feasible => self.is_feasible(alpha, lattice)?,
                ChamberFilter::Bounded => self.is_bounded(alpha)?,
                ChamberFilter::Both => self.is_feasible(alpha, lattice)? && self.is_bounded(alpha)?,
            })
        };
        let mut out: Vec<SignVector> = (0..1u64 << n)
            .into_par_iter()
            .map(|bits| {
                let alpha = SignVector::from_bits(n, bits);
                keep(&alpha).map(|k| k.then_some(alpha))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        out.sort();
        Ok(out)
    }

    /// Complement of `b` in `E`, i.e. the rows of `B` forming a weight basis.
    pub fn complement(&self, b: &[usize]) -> Vec<usize> {
        (0..self.num_edges()).filter(|e| !b.contains(e)).collect()
    }

    /// All bases `b` (|b| = |E| - k) with their vertices `H_b`, ordered
    /// lexicographically by `b`.
    pub fn bases(&self) -> Vec<BasisVertex> {
        let n = self.num_edges();
        (0..n)
            .combinations(self.torus_rank())
            .filter_map(|b| self.basis_vertex(&b).ok())
            .collect()
    }

    /// The vertex `H_b`, or [`Error::NotABasis`].
    pub fn basis_vertex(&self, b: &[usize]) -> Result<BasisVertex> {
        let mut b = b.to_vec();
        b.sort_unstable();
        b.dedup();
        if b.len() != self.torus_rank() || b.iter().any(|&e| e >= self.num_edges()) {
            return Err(Error::NotABasis(b));
        }
        let rest = self.complement(&b);
        let sub_t = self.matrix.select_rows(&rest).transpose();
        let inv = sub_t.rational_inverse().ok_or_else(|| Error::NotABasis(b.clone()))?;
        let mut vertex = vec![BigRational::zero(); self.num_edges()];
        for (i, &e) in rest.iter().enumerate() {
            vertex[e] = inv[i]
                .iter()
                .zip(&self.eta)
                .map(|(a, x)| a * BigRational::from_integer(x.clone()))
                .sum();
        }
        Ok(BasisVertex {
            b,
            vertex: RatVector(vertex),
        })
    }

    /// `<ζ̃, H_b>`; differences between vertices are independent of the lift.
    pub fn zeta_value(&self, v: &BasisVertex) -> BigRational {
        v.vertex.dot_int(&self.zeta_lift)
    }

    /// The bounded feasible chamber with `ζ`-maximum at `H_b`.
    pub fn mu(&self, v: &BasisVertex) -> Result<SignVector> {
        let n = self.num_edges();
        let rest = self.complement(&v.b);
        let inv = self
            .matrix
            .select_rows(&rest)
            .transpose()
            .rational_inverse()
            .ok_or_else(|| Error::NotABasis(v.b.clone()))?;
        let mut signs = vec![Sign::Plus; n];
        for &e in &rest {
            signs[e] = Sign::of(&v.vertex.0[e]).ok_or_else(|| {
                Error::Degenerate(format!(
                    "vertex of basis {:?} lies on hyperplane {}",
                    self.labels(&v.b),
                    self.edges[e]
                ))
            })?;
        }
        for &e in &v.b {
            // u in ker B^T with u_b = δ_e: B_rest^T u_rest = -w_e
            let w = self.weight(e);
            let mut pairing = BigRational::from_integer(self.zeta_lift[e].clone());
            for (i, &r) in rest.iter().enumerate() {
                let u_r: BigRational = inv[i]
                    .iter()
                    .zip(w)
                    .map(|(a, x)| -(a * BigRational::from_integer(x.clone())))
                    .sum();
                pairing += u_r * BigRational::from_integer(self.zeta_lift[r].clone());
            }
            signs[e] = match Sign::of(&pairing) {
                Some(Sign::Minus) => Sign::Plus,
                Some(Sign::Plus) => Sign::Minus,
                None => {
                    return Err(Error::Degenerate(format!(
                        "zeta is constant along edge {} at basis {:?}",
                        self.edges[e],
                        self.labels(&v.b)
                    )))
                }
            };
        }
        Ok(SignVector(signs))
    }

    /// The basis `b` with `mu(b) = α`.
    pub fn mu_inverse(&self, alpha: &SignVector) -> Result<BasisVertex> {
        self.check_sign_len(alpha)?;
        for v in self.bases() {
            if &self.mu(&v)? == alpha {
                return Ok(v);
            }
        }
        Err(Error::NotBoundedFeasible(alpha.to_string()))
    }

    /// Flips `α` on `b = mu⁻¹(α)`; the result is bounded for `-ζ`.
    pub fn nu(&self, alpha: &SignVector) -> Result<SignVector> {
        let v = self.mu_inverse(alpha)?;
        Ok(alpha.flipped_on(&v.b))
    }

    /// The Gale dual: matrix `Q^T`, character `-ζ` (as `-Q·ζ̃`) and a lift
    /// `y` of the cocharacter `-η`, i.e. `B^T y = -η`.
    pub fn gale_dual(&self) -> Result<PolarizedArrangement> {
        let matrix = self.quotient.transpose();
        let eta = self.zeta().into_iter().map(|x| -x).collect();
        let neg_eta: Vec<BigInt> = self.eta.iter().map(|x| -x).collect();
        let lift = integer_solution(&self.matrix.transpose(), &neg_eta)
            .ok_or_else(|| Error::Invalid("B^T is not surjective onto the weight lattice".into()))?;
        PolarizedArrangement::new(self.edges.clone(), matrix, eta, lift)
    }

    /// Same arrangement up to a change of basis of `G` and of the lift of ζ.
    pub fn equivalent_to(&self, other: &PolarizedArrangement) -> bool {
        if self.edges != other.edges || self.rank() != other.rank() {
            return false;
        }
        if self.rank() == 0 {
            return self.quotient.mul_vec(&sub(&other.zeta_lift, &self.zeta_lift)).unwrap().iter().all(Zero::is_zero);
        }
        let Some(rows) = self.first_row_basis() else {
            return false;
        };
        let Some(inv) = self.matrix.select_rows(&rows).unimodular_inverse() else {
            return false;
        };
        let u = inv.mul(&other.matrix.select_rows(&rows)).unwrap();
        if !u.determinant().unwrap().abs().is_one() {
            return false;
        }
        if self.matrix.mul(&u).unwrap() != other.matrix {
            return false;
        }
        if u.transpose().mul_vec(&self.eta).unwrap() != other.eta {
            return false;
        }
        let diff = sub(&other.zeta_lift, &self.zeta_lift);
        self.quotient.mul_vec(&diff).unwrap().iter().all(Zero::is_zero)
    }

    /// Shortest path in the single-flip graph. `Bounded` mode walks only
    /// through bounded chambers and returns `None` when `β` is unreachable
    /// (or either endpoint is unbounded).
    pub fn chamber_distance(
        &self,
        alpha: &SignVector,
        beta: &SignVector,
        mode: DistanceMode,
    ) -> Result<Option<usize>> {
        self.check_sign_len(alpha)?;
        self.check_sign_len(beta)?;
        if mode == DistanceMode::All {
            return Ok(Some(alpha.hamming(beta)));
        }
        if !self.is_bounded(alpha)? || !self.is_bounded(beta)? {
            return Ok(None);
        }
        let mut bounded: HashMap<SignVector, bool> = HashMap::new();
        let mut dist: HashMap<SignVector, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(alpha.clone(), 0);
        queue.push_back(alpha.clone());
        while let Some(cur) = queue.pop_front() {
            let d = dist[&cur];
            if &cur == beta {
                return Ok(Some(d));
            }
            for e in 0..self.num_edges() {
                let next = cur.flipped_at(e);
                if dist.contains_key(&next) {
                    continue;
                }
                let ok = match bounded.get(&next) {
                    Some(&b) => b,
                    None => {
                        let b = self.is_bounded(&next)?;
                        bounded.insert(next.clone(), b);
                        b
                    }
                };
                if ok {
                    dist.insert(next.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        Ok(None)
    }

    /// `φ_b(s)`: the unique `γ` with `(B·γ)_e = s_e` for `e ∈ b`, where `b`
    /// is a basis of the Gale dual (`|b| = k`, rows of `B` on `b` a basis).
    pub fn phi(&self, b: &[usize], s: &[BigInt]) -> Result<Vec<BigInt>> {
        let inv = self.dual_basis_inverse(b)?;
        if s.len() != b.len() {
            return Err(Error::Shape(format!("s has length {}, expected {}", s.len(), b.len())));
        }
        inv.mul_vec(s)
    }

    /// Inverse of the `k×k` block of `B` on the rows `b`.
    pub fn dual_basis_inverse(&self, b: &[usize]) -> Result<IntMatrix> {
        if b.len() != self.rank() || b.iter().any(|&e| e >= self.num_edges()) {
            return Err(Error::NotABasis(b.to_vec()));
        }
        self.matrix
            .select_rows(b)
            .unimodular_inverse()
            .ok_or_else(|| Error::NotABasis(b.to_vec()))
    }

    /// Coordinates of `𝔏_{α₁} ∩ 𝔏_{α₂}` before the quotient: `x_e` (weight
    /// `w_e`) where both signs are `+`, `y_e` (weight `-w_e`) where both are
    /// `-`.
    pub fn lagrangian_weights(&self, alpha1: &SignVector, alpha2: &SignVector) -> Result<WeightedSpace> {
        self.check_sign_len(alpha1)?;
        self.check_sign_len(alpha2)?;
        let mut coords = Vec::new();
        for e in 0..self.num_edges() {
            match (alpha1.get(e), alpha2.get(e)) {
                (Sign::Plus, Sign::Plus) => coords.push(WeightedCoord {
                    label: format!("x[{}]", self.edges[e]),
                    weight: self.weight(e).to_vec(),
                }),
                (Sign::Minus, Sign::Minus) => coords.push(WeightedCoord {
                    label: format!("y[{}]", self.edges[e]),
                    weight: self.weight(e).iter().map(|x| -x).collect(),
                }),
                _ => {}
            }
        }
        WeightedSpace::new(coords, self.eta.clone(), self.rank())
    }
}

fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Minimal-support vectors in the column span of `m` (full column rank),
/// primitive, normalised so that the first nonzero image entry is positive.
fn minimal_support_vectors(m: &IntMatrix) -> Vec<Circuit> {
    let r = m.cols();
    if r == 0 {
        return Vec::new();
    }
    let mut seen: HashMap<Vec<usize>, Circuit> = HashMap::new();
    for rows in (0..m.rows()).combinations(r - 1) {
        let sub = m.select_rows(&rows);
        if sub.rank() != r - 1 {
            continue;
        }
        let ker = kernel_saturated(&sub);
        debug_assert_eq!(ker.cols(), 1);
        let mut coords = ker.column(0);
        let mut image = m.mul_vec(&coords).expect("shape");
        if image.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            coords.iter_mut().for_each(|x| *x = -&*x);
            image.iter_mut().for_each(|x| *x = -&*x);
        }
        let c = Circuit { coords, image };
        seen.entry(c.support()).or_insert(c);
    }
    let mut out: Vec<(Vec<usize>, Circuit)> = seen.into_iter().collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, c)| c).collect()
}
