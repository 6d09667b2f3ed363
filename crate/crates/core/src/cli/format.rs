//! The JSON problem-file format.
//!
//! ```json
//! {
//!   "version": "1",
//!   "objects": {
//!     "P": {"kind": "monoid", "rank": 1, "generators": [["1"]]},
//!     "theta": {"kind": "monoid-chart", "source": "P", "target": "P", "matrix": [["2"]]}
//!   },
//!   "tasks": [{"command": "check-log-etale", "arguments": {"chart": "theta"}}]
//! }
//! ```
//!
//! Integers are written as decimal strings; plain JSON integers are accepted
//! on input and written back as strings.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::cone::{Face, RationalCone};
use crate::lattice::vector::{Int, IntVector};
use crate::lattice::{LatticeMap, Sublattice};
use crate::monoid::AffineMonoid;

pub const FORMAT_VERSION: &str = "1";

/// An arbitrary-precision integer, serialized as a decimal string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Integer(pub BigInt);

impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

struct IntegerVisitor;

impl Visitor<'_> for IntegerVisitor {
    type Value = Integer;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Integer, E> {
        Ok(Integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Integer, E> {
        Ok(Integer(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Integer, E> {
        v.trim()
            .parse::<BigInt>()
            .map(Integer)
            .map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(IntegerVisitor)
    }
}

pub type Matrix = Vec<Vec<Integer>>;

pub fn to_vectors(m: &Matrix) -> Vec<IntVector> {
    m.iter().map(|row| row.iter().map(|x| x.0.clone()).collect()).collect()
}

pub fn to_matrix(vs: &[IntVector]) -> Matrix {
    vs.iter().map(|v| v.iter().cloned().map(Integer).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidSpec {
    pub rank: usize,
    pub generators: Matrix,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturated: Option<bool>,
}

/// A monoid given inline or by the name of another object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MonoidRef {
    Name(String),
    Inline(MonoidSpec),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ObjectSpec {
    Cone {
        rank: usize,
        generators: Matrix,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        facets: Option<Matrix>,
    },
    Monoid {
        rank: usize,
        generators: Matrix,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        saturated: Option<bool>,
    },
    ToricChart {
        lattice_rank: usize,
        cone_generators: Matrix,
    },
    /// `θ: source → target`; `matrix` has one row per target coordinate.
    MonoidChart {
        source: MonoidRef,
        target: MonoidRef,
        matrix: Matrix,
    },
    /// A lattice map `N_source → N_target` between two toric charts, given
    /// by name; it stands for the dual monoid chart.
    ToricMorphism {
        source: String,
        target: String,
        matrix: Matrix,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    pub command: String,
    #[serde(default)]
    pub arguments: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: String,
    #[serde(default)]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default)]
    pub tasks: Vec<TaskSpec>,
}

pub fn vector_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn vectors_json(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

pub fn integers_json(xs: &[Int]) -> Value {
    vector_json(xs)
}

pub fn matrix_json(m: &LatticeMap) -> Value {
    vectors_json(m.rows())
}

pub fn monoid_json(m: &AffineMonoid) -> Value {
    json!({
        "rank": m.ambient_rank(),
        "generators": vectors_json(m.generators()),
        "saturated": m.is_saturated(),
    })
}

pub fn cone_json(c: &RationalCone) -> Value {
    json!({
        "rank": c.ambient_rank(),
        "generators": vectors_json(&c.generators()),
        "facets": vectors_json(c.facets()),
    })
}

pub fn sublattice_json(s: &Sublattice) -> Value {
    vectors_json(s.basis())
}

pub fn face_json(f: &Face) -> Value {
    json!({
        "dim": f.dim(),
        "generators": vectors_json(f.generators()),
        "defining_normal": vector_json(f.defining_normal()),
    })
}

/// Parses a JSON argument holding a list of integer vectors.
pub fn parse_vectors(v: &Value) -> Option<Vec<IntVector>> {
    let m: Matrix = serde_json::from_value(v.clone()).ok()?;
    Some(to_vectors(&m))
}

/// Parses a JSON argument holding one integer vector.
pub fn parse_vector(v: &Value) -> Option<IntVector> {
    let row: Vec<Integer> = serde_json::from_value(v.clone()).ok()?;
    Some(row.into_iter().map(|x| x.0).collect())
}
