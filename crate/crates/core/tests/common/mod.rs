#![allow(dead_code)]

use galeforge::{Graph, PolarizedArrangement};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// A random connected bridgeless multigraph with `≤ max_edges` edges and
/// generic parameters, as a validated cographical arrangement.
pub fn random_instance(seed: u64, max_edges: usize) -> (Graph, PolarizedArrangement) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let nv = rng.gen_range(2..=4usize);
        if nv > max_edges {
            continue;
        }
        let ne = rng.gen_range(nv..=max_edges);
        let edges: Vec<(usize, usize)> = (0..ne)
            .map(|_| {
                let t = rng.gen_range(0..nv);
                let mut h = rng.gen_range(0..nv - 1);
                if h >= t {
                    h += 1;
                }
                (t, h)
            })
            .collect();
        let framing = rng.gen_range(0..nv);
        let vertices = (1..=nv).map(|i| format!("v{i}")).collect();
        let Ok(g) = Graph::from_indices(vertices, edges, framing) else {
            continue;
        };
        let eta: Vec<BigInt> = (0..nv - 1).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect();
        let zeta: Vec<BigInt> = (0..ne).map(|_| BigInt::from(rng.gen_range(-4..=4))).collect();
        if let Ok(a) = g.to_arrangement(eta, zeta) {
            return (g, a);
        }
    }
}

/// Fourier–Motzkin feasibility of `{B^T x = η, α_e x_e ≥ 0}` (lattice mode:
/// `x_e ≤ -1` on `-`).
pub fn fourier_motzkin_feasible(a: &PolarizedArrangement, alpha: &galeforge::SignVector, lattice: bool) -> bool {
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};
    let n = a.num_edges();
    // rows (coeffs, bound) meaning coeffs·x ≤ bound
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let q = |x: &BigInt| BigRational::from_integer(x.clone());
    for j in 0..a.rank() {
        let col: Vec<BigRational> = a.matrix().column(j).iter().map(q).collect();
        let neg: Vec<BigRational> = col.iter().map(|x| -x).collect();
        rows.push((col, q(&a.eta()[j])));
        rows.push((neg, -q(&a.eta()[j])));
    }
    for e in 0..n {
        let mut c = vec![BigRational::zero(); n];
        match alpha.get(e) {
            galeforge::Sign::Plus => {
                c[e] = -BigRational::from_integer(1.into());
                rows.push((c, BigRational::zero()));
            }
            galeforge::Sign::Minus => {
                c[e] = BigRational::from_integer(1.into());
                let bound = if lattice { -1 } else { 0 };
                rows.push((c, BigRational::from_integer(bound.into())));
            }
        }
    }
    for v in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.0[v].is_positive() {
                pos.push(r);
            } else if r.0[v].is_negative() {
                neg.push(r);
            } else {
                rest.push(r);
            }
        }
        for (pc, pb) in &pos {
            for (nc, nb) in &neg {
                let (fp, fnn) = (-&nc[v], pc[v].clone());
                let coeffs: Vec<BigRational> = pc.iter().zip(nc).map(|(x, y)| x * &fp + y * &fnn).collect();
                let bound = pb * &fp + nb * &fnn;
                rest.push((coeffs, bound));
            }
        }
        rest.sort();
        rest.dedup();
        rows = rest;
    }
    rows.iter().all(|(_, b)| !b.is_negative())
}
