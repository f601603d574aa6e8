//! JSON input documents: a degree matrix tagged by family, a two-variable
//! monomial ideal, or a raw graded Betti table. A file holds one document or
//! an array of them.

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::betti::{BettiTable, ShiftSummary};
use crate::cm2::{DegreeMatrixCm2, MatrixError};
use crate::gor3::DegreeMatrixGor3;
use crate::oracle::MonomialStaircase;
use crate::sweep::Family;

/// `{"type": "cm2", "a": [..], "b": [..]}` or
/// `{"type": "gor3", "a": [..], "b": [..], "d": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum DegreeMatrix {
    #[serde(rename = "cm2")]
    Cm2(DegreeMatrixCm2),
    #[serde(rename = "gor3")]
    Gor3(DegreeMatrixGor3),
}

impl DegreeMatrix {
    pub fn family(&self) -> Family {
        match self {
            DegreeMatrix::Cm2(_) => Family::Cm2,
            DegreeMatrix::Gor3(_) => Family::Gor3,
        }
    }

    pub fn t(&self) -> usize {
        match self {
            DegreeMatrix::Cm2(m) => m.t(),
            DegreeMatrix::Gor3(m) => m.t(),
        }
    }

    pub fn diagonal(&self) -> &[u64] {
        match self {
            DegreeMatrix::Cm2(m) => m.diagonal(),
            DegreeMatrix::Gor3(m) => m.base().diagonal(),
        }
    }

    pub fn superdiagonal(&self) -> &[u64] {
        match self {
            DegreeMatrix::Cm2(m) => m.superdiagonal(),
            DegreeMatrix::Gor3(m) => m.base().superdiagonal(),
        }
    }

    pub fn center(&self) -> Option<u64> {
        match self {
            DegreeMatrix::Cm2(_) => None,
            DegreeMatrix::Gor3(m) => Some(m.center()),
        }
    }

    pub fn shifts(&self) -> ShiftSummary {
        match self {
            DegreeMatrix::Cm2(m) => m.shifts(),
            DegreeMatrix::Gor3(m) => m.shifts(),
        }
    }

    /// Multiplicity by the closed formula of the family (u/v for `cm2`,
    /// Pfaffian for `gor3`).
    pub fn multiplicity(&self) -> Result<BigInt, MatrixError> {
        match self {
            DegreeMatrix::Cm2(m) => m.multiplicity_uv(),
            DegreeMatrix::Gor3(m) => Ok(m.multiplicity_pfaffian()),
        }
    }

    pub fn betti_table(&self) -> BettiTable {
        match self {
            DegreeMatrix::Cm2(m) => m.betti_table(),
            DegreeMatrix::Gor3(m) => m.betti_table(),
        }
    }
}

fn list(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// `cm2 a=2,2,1 b=2,2,1` or `gor3 a=2 b=2 d=5`.
impl fmt::Display for DegreeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} a={} b={}",
            self.family(),
            list(self.diagonal()),
            list(self.superdiagonal())
        )?;
        if let Some(d) = self.center() {
            write!(f, " d={d}")?;
        }
        Ok(())
    }
}

impl From<DegreeMatrixCm2> for DegreeMatrix {
    fn from(m: DegreeMatrixCm2) -> Self {
        DegreeMatrix::Cm2(m)
    }
}

impl From<DegreeMatrixGor3> for DegreeMatrix {
    fn from(m: DegreeMatrixGor3) -> Self {
        DegreeMatrix::Gor3(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
enum Tagged {
    #[serde(rename = "cm2")]
    Cm2(DegreeMatrixCm2),
    #[serde(rename = "gor3")]
    Gor3(DegreeMatrixGor3),
    #[serde(rename = "monomial2")]
    Monomial2 { gens: MonomialStaircase },
}

/// One input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputDoc {
    Matrix(DegreeMatrix),
    Monomial(MonomialStaircase),
    /// `{"codim": c, "steps": [[[shift, rank], ..], ..]}` with no `type`.
    Betti(BettiTable),
}

impl InputDoc {
    pub fn from_value(value: Value) -> Result<Self, serde_json::Error> {
        if value.get("type").is_some() {
            Ok(match serde_json::from_value::<Tagged>(value)? {
                Tagged::Cm2(m) => InputDoc::Matrix(DegreeMatrix::Cm2(m)),
                Tagged::Gor3(m) => InputDoc::Matrix(DegreeMatrix::Gor3(m)),
                Tagged::Monomial2 { gens } => InputDoc::Monomial(gens),
            })
        } else {
            serde_json::from_value(value).map(InputDoc::Betti)
        }
    }

    /// Parses a single document or a JSON array of documents.
    pub fn parse_many(text: &str) -> Result<Vec<Self>, serde_json::Error> {
        match serde_json::from_str::<Value>(text)? {
            Value::Array(items) => items.into_iter().map(Self::from_value).collect(),
            other => Ok(vec![Self::from_value(other)?]),
        }
    }
}

impl Serialize for InputDoc {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            InputDoc::Matrix(DegreeMatrix::Cm2(m)) => Tagged::Cm2(m.clone()).serialize(serializer),
            InputDoc::Matrix(DegreeMatrix::Gor3(m)) => {
                Tagged::Gor3(m.clone()).serialize(serializer)
            }
            InputDoc::Monomial(s) => Tagged::Monomial2 { gens: s.clone() }.serialize(serializer),
            InputDoc::Betti(t) => t.serialize(serializer),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_round_trip() {
        let json = r#"{"type":"gor3","a":[1,1],"b":[2,1],"d":1}"#;
        let m: DegreeMatrix = serde_json::from_str(json).unwrap();
        assert_eq!(m.family(), Family::Gor3);
        assert_eq!(m.to_string(), "gor3 a=1,1 b=2,1 d=1");
        assert_eq!(m.center(), Some(1));
        assert_eq!(serde_json::to_string(&m).unwrap(), json);

        let json = r#"{"type":"cm2","a":[1,2],"b":[2,2]}"#;
        let m: DegreeMatrix = serde_json::from_str(json).unwrap();
        assert_eq!(m.multiplicity().unwrap(), BigInt::from(8));
        assert_eq!(serde_json::to_string(&m).unwrap(), json);
    }

    #[test]
    fn invalid_matrices_are_rejected() {
        assert!(serde_json::from_str::<DegreeMatrix>(r#"{"type":"cm2","a":[0],"b":[1]}"#).is_err());
        assert!(
            serde_json::from_str::<DegreeMatrix>(r#"{"type":"gor3","a":[2],"b":[2],"d":1}"#)
                .is_err()
        );
        assert!(serde_json::from_str::<DegreeMatrix>(r#"{"type":"cm3","a":[1],"b":[1]}"#).is_err());
    }

    #[test]
    fn documents() {
        let text = r#"[
            {"type":"cm2","a":[2],"b":[3]},
            {"type":"monomial2","gens":[[0,3],[1,1],[2,0]]},
            {"codim":2,"steps":[[[2,3]],[[3,2]]]}
        ]"#;
        let docs = InputDoc::parse_many(text).unwrap();
        assert_eq!(docs.len(), 3);
        assert!(matches!(docs[0], InputDoc::Matrix(DegreeMatrix::Cm2(_))));
        match &docs[1] {
            InputDoc::Monomial(s) => assert_eq!(s.colength(), BigInt::from(4)),
            other => panic!("{other:?}"),
        }
        match &docs[2] {
            InputDoc::Betti(t) => assert_eq!(t.multiplicity().unwrap(), BigInt::from(3)),
            other => panic!("{other:?}"),
        }
        for doc in &docs {
            let back = InputDoc::from_value(serde_json::to_value(doc).unwrap()).unwrap();
            assert_eq!(&back, doc);
        }
        let single = InputDoc::parse_many(r#"{"type":"gor3","a":[2],"b":[2],"d":5}"#).unwrap();
        assert_eq!(single.len(), 1);
    }
}
