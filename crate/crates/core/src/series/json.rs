//! JSON form of a series file:
//! `{"schema":"npf/1","field":{"kind":"Q"|"Fp","p":..},"vars":[..],"trunc":D,"terms":[{"c":"a/b","e":[..]}]}`.
//! `schema` and `trunc` are optional on input.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::text::{SeriesFile, VarNames};
use super::{Exponent, Series};
use crate::error::{Error, Result};
use crate::field::Field;

pub const SCHEMA: &str = "npf/1";

#[derive(Serialize, Deserialize)]
struct FieldJson {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    p: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    c: String,
    e: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    schema: Option<String>,
    field: FieldJson,
    vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trunc: Option<u32>,
    terms: Vec<TermJson>,
}

fn parse_coeff(c: &str, field: Field) -> Result<crate::field::FieldValue> {
    let bad = || Error::Json(format!("bad coefficient '{c}'"));
    let (num, den) = match c.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().map_err(|_| bad())?, b.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (c.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::from(1)),
    };
    field
        .from_ratio(&num, &den)
        .ok_or_else(|| Error::Json(format!("coefficient '{c}' undefined over {field}")))
}

pub fn from_json_str(text: &str) -> Result<SeriesFile> {
    let j: SeriesJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if let Some(s) = &j.schema {
        if s != SCHEMA {
            return Err(Error::Json(format!("unsupported schema '{s}'")));
        }
    }
    let field = match (j.field.kind.as_str(), j.field.p) {
        ("Q", _) => Field::Rationals,
        ("Fp", Some(p)) => Field::prime(p)?,
        _ => return Err(Error::Json("field must be {\"kind\":\"Q\"} or {\"kind\":\"Fp\",\"p\":p}".into())),
    };
    if j.vars.is_empty() {
        return Err(Error::Json("empty variable list".into()));
    }
    let n = j.vars.len();
    let mut s = Series::zero(n, field);
    for t in &j.terms {
        if t.e.len() != n {
            return Err(Error::Json(format!("exponent {:?} does not have {n} entries", t.e)));
        }
        if t.e.iter().any(|&x| x < 0) {
            return Err(Error::Json(format!("negative exponent {:?}", t.e)));
        }
        s.add_term(Exponent(t.e.clone()), parse_coeff(&t.c, field)?);
    }
    if j.trunc.is_some() {
        s.set_truncation(j.trunc);
    }
    Ok(SeriesFile::new(s, Some(VarNames::new(j.vars))))
}

pub fn to_json_value(file: &SeriesFile) -> serde_json::Value {
    let s = &file.series;
    let field = match s.field() {
        Field::Rationals => FieldJson { kind: "Q".into(), p: None },
        Field::Prime(p) => FieldJson { kind: "Fp".into(), p: Some(p) },
    };
    let terms = s
        .terms()
        .map(|(e, c)| TermJson {
            c: match c.as_rational() {
                Some(q) => q.to_string(),
                None => c.to_string(),
            },
            e: e.0.clone(),
        })
        .collect();
    let j = SeriesJson {
        schema: Some(SCHEMA.into()),
        field,
        vars: file.vars.names().to_vec(),
        trunc: s.truncation(),
        terms,
    };
    serde_json::to_value(j).expect("serializable")
}

pub fn to_json_string(file: &SeriesFile) -> String {
    serde_json::to_string_pretty(&to_json_value(file)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_json() {
        let f = SeriesFile::parse("field F 7\nvars x y\ntrunc 5\n3*x*y - 1/2*y^3").unwrap();
        let j = to_json_string(&f);
        let g = SeriesFile::parse(&j).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn reads_documented_shape() {
        let j = r#"{"field":{"kind":"Q"},"vars":["x","y"],"terms":[{"c":"-1/2","e":[2,0]},{"c":"1","e":[0,2]}]}"#;
        let f = SeriesFile::parse(j).unwrap();
        assert_eq!(f.format(&f.series), "-1/2*x^2 + y^2");
        let bad = r#"{"field":{"kind":"Fp","p":3},"vars":["x"],"terms":[{"c":"1/3","e":[1]}]}"#;
        assert!(matches!(SeriesFile::parse(bad), Err(Error::Json(_))));
    }
}
