//! Laurent polynomials in `τ` and multivariate series in `z`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TauPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl TauPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exponent: i64, coeff: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_pairs<I: IntoIterator<Item = (i64, i64)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, exponent: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, exponent: i64) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Multiplication by `τ^d`.
    pub fn shifted(&self, d: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + d, c.clone())).collect(),
        }
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!([e, big_to_json(c)]))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("tau must be an array".into()))?;
        let mut p = Self::zero();
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse("tau entries must be [exponent, coeff]".into()))?;
            let e = pair[0]
                .as_i64()
                .ok_or_else(|| Error::Parse("exponent must be an integer".into()))?;
            p.add_term(e, json_to_big(&pair[1])?);
        }
        Ok(p)
    }
}

impl Add for TauPolynomial {
    type Output = TauPolynomial;

    fn add(mut self, rhs: TauPolynomial) -> TauPolynomial {
        self += rhs;
        self
    }
}

impl AddAssign for TauPolynomial {
    fn add_assign(&mut self, rhs: TauPolynomial) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl fmt::Display for TauPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*e, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{abs}t")?,
                (e, true) => write!(f, "t^{e}")?,
                (e, false) => write!(f, "{abs}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Series `Σ_γ P_γ(τ) z^γ` truncated at `ℓ1(B·γ) ≤ degree_bound`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratingSeries {
    pub degree_bound: u64,
    pub terms: BTreeMap<Vec<BigInt>, TauPolynomial>,
}

impl GeneratingSeries {
    pub fn new(degree_bound: u64) -> Self {
        Self {
            degree_bound,
            terms: BTreeMap::new(),
        }
    }

    /// Inserts `p` at `γ` unless it is zero.
    pub fn insert(&mut self, gamma: Vec<BigInt>, p: TauPolynomial) {
        if !p.is_zero() {
            self.terms.insert(gamma, p);
        }
    }

    pub fn coefficient(&self, gamma: &[BigInt]) -> TauPolynomial {
        self.terms.get(gamma).cloned().unwrap_or_default()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(g, p)| {
                json!({
                    "gamma": g.iter().map(big_to_json).collect::<Vec<_>>(),
                    "tau": p.to_json(),
                })
            })
            .collect();
        json!({ "degree_bound": self.degree_bound, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let degree_bound = v
            .get("degree_bound")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("missing degree_bound".into()))?;
        let mut out = Self::new(degree_bound);
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing terms".into()))?;
        for t in terms {
            let gamma = t
                .get("gamma")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term without gamma".into()))?
                .iter()
                .map(json_to_big)
                .collect::<Result<Vec<_>>>()?;
            let tau = TauPolynomial::from_json(
                t.get("tau").ok_or_else(|| Error::Parse("term without tau".into()))?,
            )?;
            out.insert(gamma, tau);
        }
        Ok(out)
    }
}

impl fmt::Display for GeneratingSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, p) in &self.terms {
            let g: Vec<String> = g.iter().map(ToString::to_string).collect();
            writeln!(f, "z^({}) : {p}", g.join(","))?;
        }
        Ok(())
    }
}

pub fn big_to_json(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse().expect("integers are valid JSON numbers"))
}

pub fn json_to_big(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::Parse(format!("expected an integer, found {n}"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}
