//! JSON form of a polynomial: an object mapping the monomial key (the sorted
//! list of exponent vectors of its variables, itself JSON-encoded) to the
//! coefficient written as `"num/den"`.

use serde_json::{Map, Value};

use super::poly::{Poly, PolyMonomial, VarSpace};
use crate::combinatorics::Multiset;
use crate::error::{Error, Result};
use crate::exactla::{parse_rational, rational_string};

pub fn poly_to_json(p: &Poly, space: &VarSpace) -> Value {
    let mut map = Map::new();
    for (m, c) in p.terms() {
        let key: Vec<&[u32]> = m.vars().iter().map(|&v| space.var(v).exponents()).collect();
        map.insert(serde_json::to_string(&key).expect("key serializes"), Value::String(rational_string(c)));
    }
    Value::Object(map)
}

pub fn poly_from_json(value: &Value, space: &VarSpace) -> Result<Poly> {
    let obj = value.as_object().ok_or_else(|| Error::Parse("polynomial must be a JSON object".into()))?;
    let mut terms = Vec::with_capacity(obj.len());
    for (key, coeff) in obj {
        let exps: Vec<Vec<u32>> = serde_json::from_str(key).map_err(|e| Error::Parse(format!("monomial key {key:?}: {e}")))?;
        let vars = exps
            .into_iter()
            .map(|e| space.id(&Multiset::new(e)))
            .collect::<Result<Vec<u32>>>()?;
        let c = coeff.as_str().ok_or_else(|| Error::Parse(format!("coefficient of {key:?} must be a string")))?;
        terms.push((PolyMonomial::from_slice(&vars), parse_rational(c)?));
    }
    Ok(Poly::from_terms(space.n(), space.d(), terms))
}
