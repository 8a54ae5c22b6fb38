//! Exact arithmetic for multi-recurrences over number fields, rigorous interval
//! enclosures of their embeddings, and empirical verification of lower growth bounds.

pub mod cli;
pub mod document;
pub mod error;
pub mod heights;
pub mod interval;
pub mod multirec;
pub mod numberfield;
pub mod poly;
pub mod roots;
pub mod verifier;

pub use document::{parse_spec, serialize_spec};
pub use error::{Error, Result};
pub use multirec::{LatticePoint, MultiPoly, MultiRecurrence, Term};
pub use numberfield::{FieldElement, NumberField, Rational};
