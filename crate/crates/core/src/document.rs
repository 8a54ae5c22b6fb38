//! JSON recurrence documents.
//!
//! ```json
//! {
//!   "field": { "minpoly": [-5, 0, 1] },
//!   "s": 1,
//!   "terms": [
//!     { "poly": [ { "exps": [0], "coeff": ["0", "1/5"] } ], "bases": [["1/2", "1/2"]] }
//!   ]
//! }
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multirec::{MultiPoly, MultiRecurrence, Term};
use crate::numberfield::{FieldElement, NumberField, Rational};
use crate::poly::IntPolynomial;

/// An integer given either as a JSON number or as a decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntLiteral {
    Int(i64),
    Str(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub minpoly: Vec<IntLiteral>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialDoc {
    pub exps: Vec<u32>,
    pub coeff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub poly: Vec<MonomialDoc>,
    pub bases: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceDoc {
    pub field: FieldDoc,
    pub s: usize,
    pub terms: Vec<TermDoc>,
}

/// A validated document: the field and the terms in document order, before merging.
#[derive(Clone, Debug)]
pub struct ParsedSpec {
    pub field: NumberField,
    pub arity: usize,
    pub raw_terms: Vec<Term>,
}

impl ParsedSpec {
    pub fn recurrence(&self) -> Result<MultiRecurrence> {
        MultiRecurrence::canonicalize(self.raw_terms.clone())
    }

    /// Canonical 1-based index of the term holding document term `i` (1-based).
    pub fn canonical_index(&self, g: &MultiRecurrence, i: usize) -> Result<usize> {
        let raw = self
            .raw_terms
            .get(i.wrapping_sub(1))
            .ok_or(Error::IndexOutOfRange { index: i, len: self.raw_terms.len() })?;
        g.terms()
            .iter()
            .position(|t| t.bases() == raw.bases())
            .map(|p| p + 1)
            .ok_or_else(|| Error::InvalidConfig(format!("term {} cancels against other terms with the same bases", i)))
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
}

pub fn parse_rational_literal(s: &str, loc: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = |m: &str| Error::parse(loc, format!("{}: {:?}", m, s));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("expected a rational \"p/q\""))?;
    let d: BigInt = d.parse().map_err(|_| bad("expected a rational \"p/q\""))?;
    if d == BigInt::from(0) {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(n, d))
}

fn element(field: &NumberField, coords: &[String], loc: &str) -> Result<FieldElement> {
    if coords.len() != field.degree() {
        return Err(Error::parse(loc, format!("expected {} coordinates, found {}", field.degree(), coords.len())));
    }
    let q = coords
        .iter()
        .enumerate()
        .map(|(i, c)| parse_rational_literal(c, &format!("{}[{}]", loc, i)))
        .collect::<Result<Vec<_>>>()?;
    field.element(q)
}

impl RecurrenceDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn validate(&self) -> Result<ParsedSpec> {
        let coeffs = self
            .field
            .minpoly
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                IntLiteral::Int(v) => Ok(BigInt::from(*v)),
                IntLiteral::Str(s) => s
                    .trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::parse(format!("field.minpoly[{}]", i), format!("expected an integer: {:?}", s))),
            })
            .collect::<Result<Vec<_>>>()?;
        let field = NumberField::new(IntPolynomial::new(coeffs))?;
        if self.s == 0 {
            return Err(Error::parse("s", "arity must be at least 1"));
        }
        if self.terms.is_empty() {
            return Err(Error::parse("terms", "at least one term is required"));
        }
        let mut raw_terms = Vec::with_capacity(self.terms.len());
        for (ti, t) in self.terms.iter().enumerate() {
            let loc = format!("terms[{}]", ti);
            if t.bases.len() != self.s {
                return Err(Error::parse(
                    format!("{}.bases", loc),
                    format!("expected {} bases, found {}", self.s, t.bases.len()),
                ));
            }
            let mut poly = MultiPoly::zero(&field, self.s);
            for (mi, m) in t.poly.iter().enumerate() {
                let mloc = format!("{}.poly[{}]", loc, mi);
                if m.exps.len() != self.s {
                    return Err(Error::parse(
                        format!("{}.exps", mloc),
                        format!("expected {} exponents, found {}", self.s, m.exps.len()),
                    ));
                }
                let c = element(&field, &m.coeff, &format!("{}.coeff", mloc))?;
                poly.add_term(m.exps.clone(), c)?;
            }
            let bases = t
                .bases
                .iter()
                .enumerate()
                .map(|(bi, b)| element(&field, b, &format!("{}.bases[{}]", loc, bi)))
                .collect::<Result<Vec<_>>>()?;
            raw_terms.push(Term::new(poly, bases)?);
        }
        Ok(ParsedSpec { field, arity: self.s, raw_terms })
    }

    /// Document for a recurrence, monomials in increasing exponent order.
    pub fn from_recurrence(g: &MultiRecurrence) -> Self {
        let coords = |e: &FieldElement| e.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let minpoly = g
            .field()
            .minpoly()
            .coeffs()
            .iter()
            .map(|c| match i64::try_from(c) {
                Ok(v) => IntLiteral::Int(v),
                Err(_) => IntLiteral::Str(c.to_string()),
            })
            .collect();
        let terms = g
            .terms()
            .iter()
            .map(|t| {
                let sorted: BTreeMap<&Vec<u32>, &FieldElement> = t.poly().terms().collect();
                TermDoc {
                    poly: sorted.into_iter().map(|(e, c)| MonomialDoc { exps: e.clone(), coeff: coords(c) }).collect(),
                    bases: t.bases().iter().map(coords).collect(),
                }
            })
            .collect();
        RecurrenceDoc { field: FieldDoc { minpoly }, s: g.arity(), terms }
    }
}

/// Parses and validates a document, returning the canonical recurrence.
pub fn parse_spec(text: &str) -> Result<MultiRecurrence> {
    RecurrenceDoc::from_json(text)?.validate()?.recurrence()
}

pub fn serialize_spec(g: &MultiRecurrence) -> String {
    RecurrenceDoc::from_recurrence(g).to_json()
}
