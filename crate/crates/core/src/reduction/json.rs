use serde::{Deserialize, Serialize};

use crate::scalar::{parse_rational, rational_to_string};
use crate::spectral::{TrigPoly, TrigPolyRecord};

use super::field::{CenterMonomial, FieldPoly};
use super::manifold::{CenterManifoldMap, ReductionSetup};
use super::ReductionError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldTermRecord {
    pub a: u32,
    pub b: u32,
    pub value: TrigPolyRecord,
}

/// Serialized [`CenterManifoldMap`]. `alphas` carries the mixed-basis
/// coefficients when the cubic part has that form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterManifoldRecord {
    pub lambda: String,
    pub order: u32,
    pub truncation: u32,
    pub cubic: String,
    pub terms: Vec<ManifoldTermRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<String>>,
}

impl CenterManifoldMap {
    pub fn to_record(&self) -> CenterManifoldRecord {
        CenterManifoldRecord {
            lambda: rational_to_string(self.lambda()),
            order: self.order(),
            truncation: self.truncation(),
            cubic: rational_to_string(&self.setup().cubic),
            terms: self
                .terms()
                .map(|(m, c)| ManifoldTermRecord {
                    a: m.a,
                    b: m.b,
                    value: c.to_record(),
                })
                .collect(),
            alphas: self
                .mixed_alphas()
                .ok()
                .map(|a| a.iter().map(rational_to_string).collect()),
        }
    }

    pub fn from_record(record: &CenterManifoldRecord) -> Result<Self, ReductionError> {
        let lambda = parse_rational(&record.lambda).map_err(ReductionError::Format)?;
        let cubic = parse_rational(&record.cubic).map_err(ReductionError::Format)?;
        let setup = ReductionSetup::new(lambda)
            .with_truncation(record.truncation)
            .with_cubic(cubic);
        let mut psi = FieldPoly::zero(record.truncation);
        for t in &record.terms {
            psi.insert(
                CenterMonomial::new(t.a, t.b),
                TrigPoly::from_record(&t.value, record.truncation)?,
            );
        }
        CenterManifoldMap::from_parts(setup, record.order, psi)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ReductionError> {
        let record: CenterManifoldRecord =
            serde_json::from_str(text).map_err(|e| ReductionError::Format(e.to_string()))?;
        Self::from_record(&record)
    }
}

#[cfg(test)]
mod tests {
    use crate::reduction::solve_center_manifold;
    use crate::reduction::CenterManifoldMap;
    use crate::scalar::ratio;

    #[test]
    fn manifold_round_trip() {
        let psi = solve_center_manifold(&ratio(9, 1), 3).unwrap();
        let text = psi.to_json();
        assert!(text.contains("\"1/2432\""));
        let back = CenterManifoldMap::from_json(&text).unwrap();
        assert_eq!(back.field(), psi.field());
        assert_eq!(back.to_json(), text);
    }
}
