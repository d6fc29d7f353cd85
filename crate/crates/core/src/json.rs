//! JSON forms of elements.
//!
//! ```text
//! TDElement        {"terms":[{"coeff":N,"blocks":[[ints]]}]}
//! TensorElement    {"terms":[{"coeff":N,"left":[[ints]],"right":[[ints]]}]}
//! DescentElement   {"weight":n,"terms":[{"coeff":N,"parts":[ints]}]}
//! GroupAlgebra     {"degree":n,"terms":[{"coeff":N,"perm":[ints]}]}
//! ```
//!
//! Coefficients are JSON integers; values outside the 64-bit range are
//! written as decimal strings.

use serde_json::{json, Map, Value};

use crate::algebra::{Coeff, TDElement, TensorElement};
use crate::combinat::{FiniteSet, IntegerComposition, Permutation, SetComposition};
use crate::error::{Error, Result};
use crate::solomon::{DescentElement, GroupAlgebraElement};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn coeff_to_json(c: &Coeff) -> Value {
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

fn coeff_from_json(v: &Value) -> Result<Coeff> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Coeff::from)
            .ok_or_else(|| bad(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("coefficient {s:?} is not an integer"))),
        other => Err(bad(format!("coefficient must be an integer, got {other}"))),
    }
}

fn composition_to_json(sc: &SetComposition) -> Value {
    Value::Array(sc.blocks().iter().map(|b| json!(b.elements())).collect())
}

fn ints_from_json(v: &Value) -> Result<Vec<u32>> {
    v.as_array()
        .ok_or_else(|| bad(format!("expected an array of integers, got {v}")))?
        .iter()
        .map(|x| {
            x.as_u64()
                .and_then(|x| u32::try_from(x).ok())
                .ok_or_else(|| bad(format!("expected a nonnegative integer, got {x}")))
        })
        .collect()
}

fn composition_from_json(v: &Value) -> Result<SetComposition> {
    let blocks = v
        .as_array()
        .ok_or_else(|| bad(format!("expected a list of blocks, got {v}")))?
        .iter()
        .map(|b| FiniteSet::new(ints_from_json(b)?))
        .collect::<Result<Vec<_>>>()?;
    SetComposition::new(blocks)
}

fn terms_of(v: &Value) -> Result<&Vec<Value>> {
    v.get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing \"terms\" array"))
}

fn field<'a>(term: &'a Value, name: &str) -> Result<&'a Value> {
    term.get(name).ok_or_else(|| bad(format!("term is missing \"{name}\"")))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| bad(format!("\"{name}\" must be a nonnegative integer")))
}

fn wrap(mut extra: Map<String, Value>, terms: Vec<Value>) -> Value {
    extra.insert("terms".into(), Value::Array(terms));
    Value::Object(extra)
}

pub fn element_to_json(a: &TDElement) -> Value {
    let terms = a
        .terms()
        .map(|(sc, c)| json!({"coeff": coeff_to_json(c), "blocks": composition_to_json(sc)}))
        .collect();
    wrap(Map::new(), terms)
}

pub fn element_from_json(v: &Value) -> Result<TDElement> {
    let mut out = TDElement::zero();
    for t in terms_of(v)? {
        out.add_term(composition_from_json(field(t, "blocks")?)?, coeff_from_json(field(t, "coeff")?)?);
    }
    Ok(out)
}

pub fn tensor_to_json(x: &TensorElement) -> Value {
    let terms = x
        .terms()
        .map(|(l, r, c)| {
            json!({"coeff": coeff_to_json(c), "left": composition_to_json(l), "right": composition_to_json(r)})
        })
        .collect();
    wrap(Map::new(), terms)
}

pub fn tensor_from_json(v: &Value) -> Result<TensorElement> {
    let mut out = TensorElement::zero();
    for t in terms_of(v)? {
        out.add_term(
            composition_from_json(field(t, "left")?)?,
            composition_from_json(field(t, "right")?)?,
            coeff_from_json(field(t, "coeff")?)?,
        );
    }
    Ok(out)
}

pub fn descent_to_json(d: &DescentElement) -> Value {
    let terms = d
        .terms()
        .map(|(c, k)| json!({"coeff": coeff_to_json(k), "parts": c.parts()}))
        .collect();
    let mut extra = Map::new();
    extra.insert("weight".into(), json!(d.weight()));
    wrap(extra, terms)
}

pub fn descent_from_json(v: &Value) -> Result<DescentElement> {
    let mut out = DescentElement::zero(usize_field(v, "weight")?);
    for t in terms_of(v)? {
        out.add_term(
            IntegerComposition::new(ints_from_json(field(t, "parts")?)?)?,
            coeff_from_json(field(t, "coeff")?)?,
        )?;
    }
    Ok(out)
}

pub fn group_to_json(g: &GroupAlgebraElement) -> Value {
    let terms = g
        .terms()
        .map(|(p, k)| json!({"coeff": coeff_to_json(k), "perm": p.images()}))
        .collect();
    let mut extra = Map::new();
    extra.insert("degree".into(), json!(g.degree()));
    wrap(extra, terms)
}

pub fn group_from_json(v: &Value) -> Result<GroupAlgebraElement> {
    let mut out = GroupAlgebraElement::zero(usize_field(v, "degree")?);
    for t in terms_of(v)? {
        out.add_term(
            Permutation::new(ints_from_json(field(t, "perm")?)?)?,
            coeff_from_json(field(t, "coeff")?)?,
        )?;
    }
    Ok(out)
}

/// Parses JSON text, mapping syntax errors into [`Error::Json`].
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::Limits;
    use crate::solomon::descent_class;
    use crate::text::parse_element;

    #[test]
    fn element_layout() {
        let a = parse_element("2*[{3,5}|{1,4}] - [{2}]").unwrap();
        let v = element_to_json(&a);
        assert_eq!(
            v.to_string(),
            r#"{"terms":[{"blocks":[[2]],"coeff":-1},{"blocks":[[3,5],[1,4]],"coeff":2}]}"#
        );
        assert_eq!(element_from_json(&v).unwrap(), a);
    }

    #[test]
    fn big_coefficients_survive() {
        let big: Coeff = "123456789012345678901234567890".parse().unwrap();
        let a = TDElement::one().scale(&big);
        assert_eq!(element_from_json(&element_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn tensor_and_solomon_round_trip() {
        let d = parse_element("[{1,2}]").unwrap().coproduct().unwrap();
        assert_eq!(tensor_from_json(&tensor_to_json(&d)).unwrap(), d);
        let e = DescentElement::basis(IntegerComposition::new(vec![1, 1]).unwrap());
        let e = e.compose(&e);
        assert_eq!(descent_from_json(&descent_to_json(&e)).unwrap(), e);
        let g = descent_class(&IntegerComposition::new(vec![2, 1]).unwrap(), &Limits::default()).unwrap();
        assert_eq!(group_from_json(&group_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn rejects_bad_json() {
        assert!(element_from_json(&json!({})).is_err());
        assert!(element_from_json(&json!({"terms":[{"coeff":1,"blocks":[[1],[1]]}]})).is_err());
        assert!(element_from_json(&json!({"terms":[{"coeff":1.5,"blocks":[]}]})).is_err());
        assert!(parse_json("{").is_err());
    }
}
