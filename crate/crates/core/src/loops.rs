//! Loop arrangements truncated to `E × [-N, N]`, the designated loop
//! chambers, and the periodic-side data `𝕊^b_α`, `ε_b`, `ψ_b`, `d_γ`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arrangement::{PolarizedArrangement, Sign, SignVector};
use crate::error::{Error, Result};
use crate::lattice::{l1_norm, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pole {
    Zero,
    Infinity,
}

/// A loop chamber `δ·α^0` or `δ·α^∞`: on the copy of edge `e` indexed by
/// `k`, the base sign sits at slot `k = δ_e`. Towards the pole the signs are
/// `-` (at 0) or `+` (at ∞), and the other way round away from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopChamber {
    pub base: SignVector,
    pub shift: Vec<BigInt>,
    pub pole: Pole,
}

impl LoopChamber {
    pub fn new(base: SignVector, shift: Vec<BigInt>, pole: Pole) -> Result<Self> {
        if base.len() != shift.len() {
            return Err(Error::Shape(format!(
                "base has length {} but shift has length {}",
                base.len(),
                shift.len()
            )));
        }
        Ok(Self { base, shift, pole })
    }

    pub fn unshifted(base: SignVector, pole: Pole) -> Self {
        let shift = vec![BigInt::zero(); base.len()];
        Self { base, shift, pole }
    }

    /// `∂γ·α^pole`: the shift is `B·γ`.
    pub fn boundary_shift(
        a: &PolarizedArrangement,
        gamma: &[BigInt],
        base: SignVector,
        pole: Pole,
    ) -> Result<Self> {
        let shift = a.boundary(gamma)?;
        Self::new(base, shift, pole)
    }

    /// Smallest window that holds every slot strictly inside.
    pub fn min_window(&self) -> usize {
        let max = self.shift.iter().map(|d| d.abs()).max().unwrap_or_default();
        usize::try_from(max + 1u32).expect("shift fits in usize")
    }
}

fn window_width(n: usize) -> usize {
    2 * n + 1
}

/// Index of `(e, k)` in the truncated edge set.
pub fn truncated_index(e: usize, k: i64, n: usize) -> usize {
    e * window_width(n) + (k + n as i64) as usize
}

/// The default loop-rotation weight `1 + 2(2N+1)·max|ζ̃_e|`.
pub fn default_rotation(a: &PolarizedArrangement, n: usize) -> BigInt {
    let max = a.zeta_lift().iter().map(|z| z.abs()).max().unwrap_or_default();
    BigInt::one() + BigInt::from(2 * window_width(n)) * max
}

pub fn truncate(a: &PolarizedArrangement, n: usize) -> Result<PolarizedArrangement> {
    truncate_with_rotation(a, n, &default_rotation(a, n))
}

/// `ζ̃_N(e, k) = ζ̃_e - rotation·k`: the loop rotation dominates and pushes
/// each edge copy towards the pole at 0.
pub fn truncate_with_rotation(
    a: &PolarizedArrangement,
    n: usize,
    rotation: &BigInt,
) -> Result<PolarizedArrangement> {
    let width = window_width(n);
    let mut edges = Vec::with_capacity(a.num_edges() * width);
    let mut rows = Vec::with_capacity(a.num_edges() * width);
    let mut zeta = Vec::with_capacity(a.num_edges() * width);
    for e in 0..a.num_edges() {
        for k in -(n as i64)..=n as i64 {
            edges.push(format!("{}@{k}", a.edges()[e]));
            rows.push(a.weight(e).to_vec());
            zeta.push(&a.zeta_lift()[e] - rotation * BigInt::from(k));
        }
    }
    let matrix = IntMatrix::from_rows(&rows, a.rank())?;
    PolarizedArrangement::new(edges, matrix, a.eta().to_vec(), zeta)
}

pub fn truncate_chamber(lc: &LoopChamber, n: usize) -> Result<SignVector> {
    let need = lc.min_window();
    if n < need {
        let shift = lc.shift.iter().map(|d| d.abs()).max().unwrap_or_default();
        return Err(Error::WindowTooSmall { window: n, shift });
    }
    let mut signs = Vec::with_capacity(lc.base.len() * window_width(n));
    for (e, delta) in lc.shift.iter().enumerate() {
        let slot = i64::try_from(delta).expect("checked against the window");
        for k in -(n as i64)..=n as i64 {
            let s = if k == slot {
                lc.base.get(e)
            } else {
                match (lc.pole, k < slot) {
                    (Pole::Zero, true) | (Pole::Infinity, false) => Sign::Minus,
                    (Pole::Zero, false) | (Pole::Infinity, true) => Sign::Plus,
                }
            };
            signs.push(s);
        }
    }
    Ok(SignVector::new(signs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    NonNeg,
    NonPos,
    Pos,
    Neg,
}

impl Constraint {
    pub fn admits(self, x: &BigInt) -> bool {
        match self {
            Constraint::NonNeg => !x.is_negative(),
            Constraint::NonPos => !x.is_positive(),
            Constraint::Pos => x.is_positive(),
            Constraint::Neg => x.is_negative(),
        }
    }

    pub fn is_weak(self) -> bool {
        matches!(self, Constraint::NonNeg | Constraint::NonPos)
    }

    /// `(lower, upper)` bounds, `None` meaning unbounded.
    fn interval(self) -> (Option<BigInt>, Option<BigInt>) {
        match self {
            Constraint::NonNeg => (Some(BigInt::zero()), None),
            Constraint::Pos => (Some(BigInt::one()), None),
            Constraint::NonPos => (None, Some(BigInt::zero())),
            Constraint::Neg => (None, Some(-BigInt::one())),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Constraint::NonNeg => ">=0",
            Constraint::NonPos => "<=0",
            Constraint::Pos => ">0",
            Constraint::Neg => "<0",
        }
    }
}

/// A product of half-lines in `Z^b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonoidSpec {
    pub constraints: Vec<Constraint>,
}

impl MonoidSpec {
    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.constraints.len() && self.constraints.iter().zip(v).all(|(c, x)| c.admits(x))
    }

    pub fn is_weak(&self) -> bool {
        self.constraints.iter().all(|c| c.is_weak())
    }

    /// The weak orthant with the same orientation.
    pub fn closure(&self) -> MonoidSpec {
        MonoidSpec {
            constraints: self
                .constraints
                .iter()
                .map(|c| match c {
                    Constraint::NonNeg | Constraint::Pos => Constraint::NonNeg,
                    Constraint::NonPos | Constraint::Neg => Constraint::NonPos,
                })
                .collect(),
        }
    }
}

/// A basis `b` of the Gale dual (`|b| = k`, rows of `B` on `b` invertible),
/// together with `mu^!(b)` and the matrices of `φ_b` and `B·φ_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub b: Vec<usize>,
    pub mu: SignVector,
    pub phi: IntMatrix,
    pub image: IntMatrix,
}

impl DualBasis {
    pub fn phi(&self, s: &[BigInt]) -> Result<Vec<BigInt>> {
        self.phi.mul_vec(s)
    }

    /// `B·φ_b(s)` in `Z^E`.
    pub fn image_of(&self, s: &[BigInt]) -> Result<Vec<BigInt>> {
        self.image.mul_vec(s)
    }

    /// `𝕊^b_α`: at `e ∈ b` with `m = mu^!(b)(e)`, weak where `α(e) = m`
    /// and strict otherwise, pointing along `m`.
    pub fn monoid_spec(&self, alpha: &SignVector) -> MonoidSpec {
        let constraints = self
            .b
            .iter()
            .map(|&e| match (alpha.get(e) == self.mu.get(e), self.mu.get(e)) {
                (true, Sign::Plus) => Constraint::NonNeg,
                (true, Sign::Minus) => Constraint::NonPos,
                (false, Sign::Plus) => Constraint::Pos,
                (false, Sign::Minus) => Constraint::Neg,
            })
            .collect();
        MonoidSpec { constraints }
    }

    /// `𝔾^b`, read as the weak orthant of `mu^!(b)`.
    pub fn group_spec(&self) -> MonoidSpec {
        self.monoid_spec(&self.mu)
    }

    /// `ε_b ∈ {0,1}^E`, 1 exactly where `mu^!(b)` is `+`.
    pub fn epsilon(&self) -> Vec<BigInt> {
        self.mu
            .signs()
            .iter()
            .map(|s| if *s == Sign::Plus { BigInt::one() } else { BigInt::zero() })
            .collect()
    }

    /// `ψ_b(k, s) = |φ_b(k)| + |φ_b(k-s) - ε| - |φ_b(s) + ε|` with norms
    /// taken in `Z^E`.
    pub fn psi(&self, k: &[BigInt], s: &[BigInt], epsilon: &[BigInt]) -> Result<BigInt> {
        let diff: Vec<BigInt> = k.iter().zip(s).map(|(a, b)| a - b).collect();
        let full = self.image_of(k)?;
        let left: Vec<BigInt> = self.image_of(&diff)?.iter().zip(epsilon).map(|(x, e)| x - e).collect();
        let right: Vec<BigInt> = self.image_of(s)?.iter().zip(epsilon).map(|(x, e)| x + e).collect();
        Ok(l1_norm(&full) + l1_norm(&left) - l1_norm(&right))
    }

    /// All `(s, r)` with `s ∈ 𝕊^b_{α+}`, `r ∈ 𝕊^b_{α-}` and `s + r = k`.
    pub fn splittings(
        &self,
        k: &[BigInt],
        alpha_plus: &SignVector,
        alpha_minus: &SignVector,
    ) -> Result<Vec<(Vec<BigInt>, Vec<BigInt>)>> {
        let plus = self.monoid_spec(alpha_plus);
        let minus = self.monoid_spec(alpha_minus);
        let mut ranges = Vec::with_capacity(k.len());
        for (i, ki) in k.iter().enumerate() {
            let (mut lo, mut hi) = plus.constraints[i].interval();
            // r = k - s, so a bound on r is the reflected bound on s
            let (rlo, rhi) = minus.constraints[i].interval();
            if let Some(rlo) = rlo {
                let bound = ki - rlo;
                hi = Some(hi.map_or(bound.clone(), |h| h.min(bound)));
            }
            if let Some(rhi) = rhi {
                let bound = ki - rhi;
                lo = Some(lo.map_or(bound.clone(), |l| l.max(bound)));
            }
            match (lo, hi) {
                (Some(lo), Some(hi)) => {
                    if lo > hi {
                        return Ok(Vec::new());
                    }
                    ranges.push((lo, hi));
                }
                _ => return Err(Error::InfiniteSplittings(self.b.clone())),
            }
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k.len());
        product(&ranges, &mut current, &mut |s| {
            let r = k.iter().zip(s).map(|(a, b)| a - b).collect();
            out.push((s.to_vec(), r));
        });
        Ok(out)
    }
}

fn product(ranges: &[(BigInt, BigInt)], current: &mut Vec<BigInt>, f: &mut impl FnMut(&[BigInt])) {
    if current.len() == ranges.len() {
        f(current);
        return;
    }
    let (lo, hi) = &ranges[current.len()];
    let mut x = lo.clone();
    while &x <= hi {
        current.push(x.clone());
        product(ranges, current, f);
        current.pop();
        x += 1;
    }
}

/// Bases of the Gale dual with `mu` computed there.
pub fn dual_bases(a: &PolarizedArrangement) -> Result<Vec<DualBasis>> {
    let dual = a.gale_dual()?;
    dual.bases()
        .into_iter()
        .map(|v| {
            let mu = dual.mu(&v)?;
            let phi = a.dual_basis_inverse(&v.b)?;
            let image = a.matrix().mul(&phi)?;
            Ok(DualBasis { b: v.b, mu, phi, image })
        })
        .collect()
}

/// `d_γ = |∂γ| - rk T`.
pub fn d_gamma(a: &PolarizedArrangement, gamma: &[BigInt]) -> Result<BigInt> {
    Ok(l1_norm(&a.boundary(gamma)?) - BigInt::from(a.torus_rank()))
}
