//! One JSON object per cube, for line-oriented output.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cube::{verify_cube, CubeTuple, Failure};
use crate::search::CubeRecord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(with = "int")]
    pub a0: BigInt,
    #[serde(with = "ints")]
    pub a: Vec<BigInt>,
    /// Roots of the subset sums in binary-index order.
    #[serde(with = "ints")]
    pub witness: Vec<BigInt>,
    pub reduced: bool,
    #[serde(with = "int")]
    pub sum: BigInt,
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("malformed record: {0}")]
    Json(#[from] serde_json::Error),
    #[error("witness does not match the subset sums")]
    Witness,
    #[error("not a cube: {0}")]
    NotACube(Failure),
}

impl OutputRecord {
    /// Verifies `t` and records its roots.
    pub fn from_cube(t: &CubeTuple) -> Result<Self, Failure> {
        let w = verify_cube(t)?;
        Ok(OutputRecord {
            a0: t.a0.clone(),
            a: t.parts.clone(),
            witness: w.roots,
            reduced: t.gcd().is_one(),
            sum: t.total(),
        })
    }

    pub fn from_search(r: &CubeRecord) -> Self {
        OutputRecord {
            a0: r.cube.a0.clone(),
            a: r.cube.parts.clone(),
            witness: r.witness.roots.clone(),
            reduced: r.reduced,
            sum: r.cube.total(),
        }
    }

    pub fn cube(&self) -> CubeTuple {
        CubeTuple::new(self.a0.clone(), self.a.iter().cloned())
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("integers and booleans always serialize")
    }

    /// Parses one line and re-verifies the cube against its witness.
    pub fn parse_line(line: &str) -> Result<Self, RecordError> {
        let r: OutputRecord = serde_json::from_str(line)?;
        let w = verify_cube(&r.cube()).map_err(RecordError::NotACube)?;
        if w.roots != r.witness || r.sum != r.cube().total() {
            return Err(RecordError::Witness);
        }
        Ok(r)
    }
}

mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string()).map_err(serde::de::Error::custom)
    }
}

mod ints {
    use super::*;

    #[derive(Serialize, Deserialize)]
    struct Int(#[serde(with = "super::int")] BigInt);

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| Int(x.clone())))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v: Vec<Int> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|i| i.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_line() {
        let r = OutputRecord::from_cube(&CubeTuple::new(1, [528, 840, 840])).unwrap();
        let line = r.to_line();
        assert_eq!(
            line,
            r#"{"a0":1,"a":[528,840,840],"witness":[1,23,29,37,29,37,41,47],"reduced":true,"sum":2209}"#
        );
        assert_eq!(OutputRecord::parse_line(&line).unwrap(), r);
    }

    #[test]
    fn large_values_stay_exact() {
        let t = crate::families::family_general(2, 1, 3, 1);
        let r = OutputRecord::from_cube(&t).unwrap();
        let line = r.to_line();
        assert!(line.contains("2954880000"));
        assert_eq!(OutputRecord::parse_line(&line).unwrap(), r);
        let t = crate::families::family_t(500);
        let line = OutputRecord::from_cube(&t).unwrap().to_line();
        assert!(!line.contains("e+") && !line.contains('.'));
        assert_eq!(OutputRecord::parse_line(&line).unwrap().cube(), t);
    }

    #[test]
    fn tampered_lines_fail() {
        let good = r#"{"a0":1,"a":[528,840,840],"witness":[1,23,29,37,29,37,41,47],"reduced":true,"sum":2209}"#;
        assert!(matches!(
            OutputRecord::parse_line(&good.replace("47]", "48]")),
            Err(RecordError::Witness)
        ));
        assert!(matches!(
            OutputRecord::parse_line(&good.replace("528", "529")),
            Err(RecordError::NotACube(_))
        ));
        assert!(matches!(OutputRecord::parse_line("{"), Err(RecordError::Json(_))));
    }

    proptest! {
        #[test]
        fn search_records_round_trip(n in 1u64..400) {
            let recs = crate::search::search_cubes(&crate::search::SearchConfig::with_entry_max(n * 50)).unwrap();
            for r in recs {
                let o = OutputRecord::from_search(&r);
                prop_assert_eq!(OutputRecord::parse_line(&o.to_line()).unwrap(), o);
            }
        }
    }
}
