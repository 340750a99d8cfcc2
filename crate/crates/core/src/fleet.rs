//! Named reference instances with generic parameters.

use num_bigint::BigInt;

use crate::arrangement::PolarizedArrangement;
use crate::error::Result;
use crate::graph::Graph;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `ζ̃_e = 2^e`: no signed sum over a nonempty edge set vanishes, so this
/// avoids every cocircuit wall.
pub fn powers_of_two(n: usize) -> Vec<BigInt> {
    (0..n).map(|e| BigInt::from(1) << e).collect()
}

/// Cotangent bundle of P¹: two parallel edges.
pub fn cotangent_p1() -> PolarizedArrangement {
    PolarizedArrangement::from_i64(&[vec![1], vec![1]], &[1], &[1, 0]).expect("fixed data")
}

/// Cotangent bundle of P²: three parallel edges.
pub fn cotangent_p2() -> PolarizedArrangement {
    PolarizedArrangement::from_i64(&[vec![1], vec![1], vec![1]], &[1], &[0, -1, 1]).expect("fixed data")
}

fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    let vertices = (1..=n).map(|i| format!("v{i}")).collect();
    Graph::from_indices(vertices, edges.to_vec(), 0).expect("fixed data")
}

/// The oriented triangle, framed at its first vertex.
pub fn three_cycle() -> Result<PolarizedArrangement> {
    graph(3, &[(0, 1), (1, 2), (2, 0)]).to_arrangement(ints(&[1, 2]), ints(&[1, 0, 0]))
}

/// Two vertices joined by two oppositely oriented edges.
pub fn two_vertex_two_edge() -> Result<PolarizedArrangement> {
    graph(2, &[(0, 1), (1, 0)]).to_arrangement(ints(&[1]), ints(&[1, 0]))
}

/// Abelianized linear quiver with all-ones `η` and `ζ̃_e = 2^e`.
pub fn flag(ranks: &[usize]) -> Result<PolarizedArrangement> {
    let g = Graph::abelianize(ranks)?;
    let eta = vec![BigInt::from(1); g.vertices().len() - 1];
    g.to_arrangement(eta, powers_of_two(g.edges().len()))
}

/// The instances of the pipeline identity check, with names.
pub fn standard() -> Result<Vec<(&'static str, PolarizedArrangement)>> {
    Ok(vec![
        ("cotangent-p1", cotangent_p1()),
        ("cotangent-p2", cotangent_p2()),
        ("three-cycle", three_cycle()?),
        ("two-vertex-two-edge", two_vertex_two_edge()?),
        ("flag-2-2", flag(&[2, 2])?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_instance_validates() {
        for (name, a) in standard().unwrap() {
            assert!(a.validate().is_valid(), "{name}: {}", a.validate());
        }
        assert!(flag(&[1, 2, 3]).unwrap().validate().is_valid());
    }

    #[test]
    fn ranks() {
        let a = flag(&[2, 2]).unwrap();
        assert_eq!((a.num_edges(), a.rank(), a.torus_rank()), (4, 3, 1));
        let a = flag(&[1, 2, 3]).unwrap();
        assert_eq!((a.num_edges(), a.rank(), a.torus_rank()), (8, 5, 3));
    }
}
