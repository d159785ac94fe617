//! Finite subgroups of O(3) given by exact matrices: closure, trace and
//! determinant characters, classification, the isoclinic lift and the
//! H × {±1} splitting.

mod classify;
mod matrix;

pub use classify::{
    classify, isoclinic_lift, isoclinic_lift_with_kappa, permutation_model, recognize_rotation_type, rotation_subgroup,
    split_by_minus_one, AbstractType, IsoclinicLift, OrthoClassification, SplitInfo,
};
pub use matrix::{standard, Matrix3, MatrixGroup3, MAX_MATRIX_GROUP_ORDER};

use thiserror::Error;

use crate::exactnum::{CycNum, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthoError {
    #[error("matrix group closure exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("an element has determinant other than ±1")]
    NotOrthogonal,
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("group of order {0} is not a finite subgroup type of O(3)")]
    Unrecognized(usize),
    #[error("G is not H × {{±1}} for H = G ∩ SO(3)")]
    SplitFailed,
    #[error("isoclinic lift is not an isomorphism onto a rotation group")]
    LiftFailed,
    #[error("malformed generator file: {0}")]
    Parse(String),
}

fn parse_entry(v: &serde_json::Value) -> Result<CycNum, OrthoError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(CycNum::from_int)
            .ok_or_else(|| OrthoError::Parse(format!("non-integer number {n}; write rationals as \"p/q\""))),
        serde_json::Value::String(s) => s
            .trim()
            .parse::<Rational>()
            .map(CycNum::from_rational)
            .map_err(|e| OrthoError::Parse(format!("{s:?}: {e}"))),
        serde_json::Value::Object(_) => {
            serde_json::from_value::<CycNum>(v.clone()).map_err(|e| OrthoError::Parse(e.to_string()))
        }
        other => Err(OrthoError::Parse(format!("unsupported entry {other}"))),
    }
}

/// Parse `{"generators": [m1, m2, …]}` where each matrix is three rows of
/// three entries; an entry is an integer, a "p/q" string, or a cyclotomic
/// object `{"conductor": n, "coeffs": [...]}`.
pub fn parse_generators(text: &str) -> Result<Vec<Matrix3>, OrthoError> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| OrthoError::Parse(e.to_string()))?;
    let gens = v
        .get("generators")
        .and_then(|g| g.as_array())
        .ok_or_else(|| OrthoError::Parse("missing \"generators\" array".into()))?;
    gens.iter()
        .map(|m| {
            let rows = m.as_array().filter(|r| r.len() == 3).ok_or_else(|| OrthoError::Parse("matrix must have 3 rows".into()))?;
            let mut out: Vec<[CycNum; 3]> = Vec::with_capacity(3);
            for r in rows {
                let cells = r.as_array().filter(|c| c.len() == 3).ok_or_else(|| OrthoError::Parse("row must have 3 entries".into()))?;
                out.push([parse_entry(&cells[0])?, parse_entry(&cells[1])?, parse_entry(&cells[2])?]);
            }
            let [a, b, c]: [[CycNum; 3]; 3] = out.try_into().expect("three rows");
            Ok(Matrix3::new([a, b, c]))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_mixed_entries() {
        let text = r#"{"generators": [[[0,0,1],[1,0,0],[0,1,0]],
            [["1/2", {"conductor": 5, "coeffs": ["-1","-1","0","-1"]}, 0],[0,1,0],[0,0,1]]]}"#;
        let g = parse_generators(text).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g[0], standard::three_cycle());
        assert_eq!(g[1].entries[0][0], CycNum::from_rational(crate::exactnum::rat(1, 2)));
        assert_eq!(g[1].entries[0][1].conductor(), 5);
    }
}
