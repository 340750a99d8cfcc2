//! Exact rational feasibility LP: phase-one simplex with Bland's
//! anti-cycling rule.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Constraint on a single variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Free,
    AtLeast(BigRational),
    AtMost(BigRational),
}

impl Bound {
    pub fn nonneg() -> Self {
        Bound::AtLeast(BigRational::zero())
    }

    pub fn nonpos() -> Self {
        Bound::AtMost(BigRational::zero())
    }

    pub fn admits(&self, x: &BigRational) -> bool {
        match self {
            Bound::Free => true,
            Bound::AtLeast(l) => x >= l,
            Bound::AtMost(u) => x <= u,
        }
    }
}

/// Column of the standard-form problem: `x[var] = offset + sign * y`.
struct Substitution {
    var: usize,
    negated: bool,
}

/// Finds a point `x` with `equations · x = rhs` and every `bounds[j]`
/// satisfied, or returns `None` when the system is infeasible.
pub fn find_point(
    equations: &[Vec<BigRational>],
    rhs: &[BigRational],
    bounds: &[Bound],
) -> Option<Vec<BigRational>> {
    let m = equations.len();
    let n = bounds.len();
    assert_eq!(rhs.len(), m, "one right-hand side per equation");
    assert!(equations.iter().all(|r| r.len() == n), "equation width must match bounds");

    let mut offsets = vec![BigRational::zero(); n];
    let mut subs = Vec::new();
    for (j, b) in bounds.iter().enumerate() {
        match b {
            Bound::Free => {
                subs.push(Substitution { var: j, negated: false });
                subs.push(Substitution { var: j, negated: true });
            }
            Bound::AtLeast(l) => {
                offsets[j] = l.clone();
                subs.push(Substitution { var: j, negated: false });
            }
            Bound::AtMost(u) => {
                offsets[j] = u.clone();
                subs.push(Substitution { var: j, negated: true });
            }
        }
    }
    let cols = subs.len();
    let width = cols + m + 1;
    let rhs_col = width - 1;

    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        let mut row = vec![BigRational::zero(); width];
        for (c, s) in subs.iter().enumerate() {
            let a = &equations[i][s.var];
            row[c] = if s.negated { -a } else { a.clone() };
        }
        let shifted: BigRational = equations[i]
            .iter()
            .zip(&offsets)
            .fold(rhs[i].clone(), |acc, (a, o)| acc - a * o);
        row[rhs_col] = shifted;
        if row[rhs_col].is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
        }
        row[cols + i] = BigRational::from_integer(1.into());
        tab.push(row);
    }
    // phase-one objective: minimise the sum of artificials
    let mut obj = vec![BigRational::zero(); width];
    for row in &tab {
        for c in 0..cols {
            obj[c] -= &row[c];
        }
        obj[rhs_col] -= &row[rhs_col];
    }
    tab.push(obj);
    let mut basis: Vec<usize> = (cols..cols + m).collect();

    while let Some(enter) = (0..cols + m).find(|&c| tab[m][c].is_negative()) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(i),
                Some(best) => {
                    let ri = &tab[i][rhs_col] / &tab[i][enter];
                    let rb = &tab[best][rhs_col] / &tab[best][enter];
                    if ri < rb || (ri == rb && basis[i] < basis[best]) {
                        Some(i)
                    } else {
                        Some(best)
                    }
                }
            };
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let r = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, r, enter);
        basis[r] = enter;
    }

    if !tab[m][rhs_col].is_zero() {
        return None;
    }
    let mut y = vec![BigRational::zero(); cols];
    for (i, &b) in basis.iter().enumerate() {
        if b < cols {
            y[b] = tab[i][rhs_col].clone();
        }
    }
    let mut x = offsets;
    for (c, s) in subs.iter().enumerate() {
        if s.negated {
            x[s.var] -= &y[c];
        } else {
            x[s.var] += &y[c];
        }
    }
    Some(x)
}

pub fn is_feasible(equations: &[Vec<BigRational>], rhs: &[BigRational], bounds: &[Bound]) -> bool {
    find_point(equations, rhs, bounds).is_some()
}

fn pivot(tab: &mut [Vec<BigRational>], r: usize, c: usize) {
    let inv = tab[r][c].recip();
    for v in tab[r].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (v, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= p * &f;
            }
        }
    }
}
