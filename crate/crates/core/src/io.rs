//! JSON formats for arrangements and graphs.

use serde_json::{json, Map, Value};

use crate::arrangement::PolarizedArrangement;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::poly::{big_to_json, json_to_big};
use crate::lattice::IntMatrix;
use num_bigint::BigInt;

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name).ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))
}

pub fn int_vector(v: &Value) -> Result<Vec<BigInt>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("expected an integer array, found {v}")))?
        .iter()
        .map(json_to_big)
        .collect()
}

pub fn int_matrix(v: &Value) -> Result<Vec<Vec<BigInt>>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of rows".into()))?
        .iter()
        .map(int_vector)
        .collect()
}

fn strings(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array of names".into()))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Parse(format!("expected a string, found {x}")))
        })
        .collect()
}

pub fn ints_to_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_to_json).collect())
}

/// Parses `{"edges", "matrix", "eta", "zeta_lift"}`; structural checks only.
pub fn arrangement_from_value(v: &Value) -> Result<PolarizedArrangement> {
    let obj = object(v)?;
    let edges = strings(field(obj, "edges")?)?;
    let rows = int_matrix(field(obj, "matrix")?)?;
    let eta = int_vector(field(obj, "eta")?)?;
    let zeta = int_vector(field(obj, "zeta_lift")?)?;
    let matrix = IntMatrix::from_rows(&rows, eta.len())?;
    PolarizedArrangement::new(edges, matrix, eta, zeta)
}

pub fn arrangement_from_str(s: &str) -> Result<PolarizedArrangement> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    arrangement_from_value(&v)
}

pub fn arrangement_to_value(a: &PolarizedArrangement) -> Value {
    json!({
        "edges": a.edges(),
        "matrix": a.matrix().to_rows().iter().map(|r| ints_to_json(r)).collect::<Vec<_>>(),
        "eta": ints_to_json(a.eta()),
        "zeta_lift": ints_to_json(a.zeta_lift()),
    })
}

/// Parses `{"vertices", "edges": [{"tail", "head"}], "framing"}`.
pub fn graph_from_value(v: &Value) -> Result<Graph> {
    let obj = object(v)?;
    let vertices = strings(field(obj, "vertices")?)?;
    let edges = field(obj, "edges")?
        .as_array()
        .ok_or_else(|| Error::Parse("edges must be an array".into()))?
        .iter()
        .map(|e| {
            let e = object(e)?;
            let name = |k: &str| -> Result<String> {
                field(e, k)?
                    .as_str()
                    .map(str::to_owned)
                    .ok_or_else(|| Error::Parse(format!("edge {k} must be a vertex name")))
            };
            Ok((name("tail")?, name("head")?))
        })
        .collect::<Result<Vec<_>>>()?;
    let framing = field(obj, "framing")?
        .as_str()
        .ok_or_else(|| Error::Parse("framing must be a vertex name".into()))?;
    Graph::new(vertices, edges, framing)
}

pub fn graph_from_str(s: &str) -> Result<Graph> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    graph_from_value(&v)
}

pub fn graph_to_value(g: &Graph) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|&(t, h)| json!({"tail": g.vertices()[t], "head": g.vertices()[h]}))
        .collect();
    json!({
        "vertices": g.vertices(),
        "edges": edges,
        "framing": g.vertices()[g.framing()],
    })
}

/// Canonical output: sorted keys, two-space indentation, trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_roundtrip() {
        let text = r#"{"edges":["a","b","c"],"matrix":[[1],[1],[1]],"eta":[1],"zeta_lift":[0,-1,1]}"#;
        let a = arrangement_from_str(text).unwrap();
        assert_eq!(a.edges(), ["a", "b", "c"]);
        let back = serde_json::to_string(&arrangement_to_value(&a)).unwrap();
        assert_eq!(back, r#"{"edges":["a","b","c"],"eta":[1],"matrix":[[1],[1],[1]],"zeta_lift":[0,-1,1]}"#);
        assert_eq!(arrangement_from_str(&back).unwrap(), a);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(arrangement_from_str("{"), Err(Error::Parse(_))));
        assert!(matches!(arrangement_from_str(r#"{"edges":[]}"#), Err(Error::Parse(_))));
        assert!(arrangement_from_str(r#"{"edges":["a"],"matrix":[[1.5]],"eta":[1],"zeta_lift":[0]}"#).is_err());
    }

    #[test]
    fn graph_roundtrip() {
        let text = r#"{"vertices":["p","q"],"edges":[{"tail":"p","head":"q"},{"tail":"q","head":"p"}],"framing":"p"}"#;
        let g = graph_from_str(text).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 0)]);
        assert_eq!(graph_from_value(&graph_to_value(&g)).unwrap(), g);
    }
}
