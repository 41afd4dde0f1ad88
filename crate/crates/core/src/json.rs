//! JSON value forms shared by the data files and the command line.
//!
//! * group: `{"ambient_rank": k, "relations": [[...], ...]}`, relations as columns
//! * element: `{"coords": [...]}`
//! * homomorphism: `{"matrix": [[...], ...]}`, row-major
//!
//! Integers are written as JSON numbers when they fit in 64 bits and as
//! decimal strings otherwise; both spellings are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fgab::{Element, FgAbGroup, Homomorphism};
use crate::matrix::IntMatrix;

/// An arbitrary-precision integer with a lenient JSON encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub BigInt);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct NumVisitor;

impl Visitor<'_> for NumVisitor {
    type Value = Num;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
        Ok(Num(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Num, E> {
        Ok(Num(v.into()))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Num, E> {
        v.trim()
            .parse()
            .map(Num)
            .map_err(|_| E::custom(format!("not an integer: {v:?}")))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Num, D::Error> {
        d.deserialize_any(NumVisitor)
    }
}

fn nums(v: &[BigInt]) -> Vec<Num> {
    v.iter().cloned().map(Num).collect()
}

fn ints(v: &[Num]) -> Vec<BigInt> {
    v.iter().map(|n| n.0.clone()).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub ambient_rank: usize,
    #[serde(default)]
    pub relations: Vec<Vec<Num>>,
    /// Rendering of the invariant-factor form; informational, ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<String>,
}

impl GroupJson {
    pub fn to_group(&self) -> Result<FgAbGroup> {
        let cols: Vec<Vec<BigInt>> = self.relations.iter().map(|c| ints(c)).collect();
        if let Some(c) = cols.iter().find(|c| c.len() != self.ambient_rank) {
            return Err(Error::Presentation(format!(
                "relation column of length {} in a group of ambient rank {}",
                c.len(),
                self.ambient_rank
            )));
        }
        FgAbGroup::new(self.ambient_rank, IntMatrix::from_columns(self.ambient_rank, &cols))
    }
}

impl From<&FgAbGroup> for GroupJson {
    fn from(g: &FgAbGroup) -> Self {
        GroupJson {
            ambient_rank: g.ambient_rank(),
            relations: g.relations().columns().iter().map(|c| nums(c)).collect(),
            canonical: Some(g.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ElementJson {
    pub coords: Vec<Num>,
}

impl ElementJson {
    pub fn in_group(&self, g: &FgAbGroup) -> Result<Element> {
        g.element(ints(&self.coords))
    }
}

impl From<&Element> for ElementJson {
    fn from(e: &Element) -> Self {
        ElementJson {
            coords: nums(e.coords()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomJson {
    pub matrix: Vec<Vec<Num>>,
}

impl HomJson {
    pub fn to_matrix(&self, rows: usize, cols: usize) -> Result<IntMatrix> {
        if self.matrix.len() != rows {
            return Err(Error::Presentation(format!(
                "matrix has {} rows, expected {rows}",
                self.matrix.len()
            )));
        }
        let entries: Vec<Vec<BigInt>> = self.matrix.iter().map(|r| ints(r)).collect();
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Presentation(format!("matrix rows must have {cols} entries")));
        }
        Ok(IntMatrix::from_rows(rows, cols, &entries))
    }

    pub fn to_hom(&self, source: &FgAbGroup, target: &FgAbGroup) -> Result<Homomorphism> {
        let m = self.to_matrix(target.ambient_rank(), source.ambient_rank())?;
        Homomorphism::new(source.clone(), target.clone(), m)
    }
}

impl From<&IntMatrix> for HomJson {
    fn from(m: &IntMatrix) -> Self {
        HomJson {
            matrix: m.to_rows().iter().map(|r| nums(r)).collect(),
        }
    }
}

impl From<&Homomorphism> for HomJson {
    fn from(h: &Homomorphism) -> Self {
        HomJson::from(h.matrix())
    }
}

pub use serde::de::DeserializeOwned;

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}
