//! JSON form of a [`TrigPoly`]:
//!
//! ```json
//! {"kind": "rational", "truncation": 8,
//!  "terms": [{"wave": "sin", "k": 3, "num": "1", "den": "4864"}]}
//! ```
//!
//! `truncation` is optional on input; when absent the largest `k` present
//! (or the supplied default, whichever is larger) is used.

use serde::{Deserialize, Serialize};

use super::trig::{Mode, TrigPoly, Wave};
use super::SpectralError;
use crate::scalar::{Scalar, ScalarKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub wave: String,
    pub k: u32,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrigPolyRecord {
    pub kind: ScalarKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u32>,
    pub terms: Vec<TermRecord>,
}

impl<S: Scalar> TrigPoly<S> {
    pub fn to_record(&self) -> TrigPolyRecord {
        TrigPolyRecord {
            kind: S::KIND,
            truncation: Some(self.truncation()),
            terms: self
                .terms()
                .map(|(m, c)| {
                    let (num, den) = c.encode();
                    TermRecord {
                        wave: m.wave().as_str().to_string(),
                        k: m.k(),
                        num,
                        den,
                    }
                })
                .collect(),
        }
    }

    pub fn from_record(
        record: &TrigPolyRecord,
        default_truncation: u32,
    ) -> Result<Self, SpectralError> {
        if record.kind != S::KIND {
            return Err(SpectralError::KindMismatch {
                expected: S::KIND,
                found: record.kind,
            });
        }
        let mut terms = Vec::with_capacity(record.terms.len());
        for t in &record.terms {
            let wave = match t.wave.as_str() {
                "sin" => Wave::Sin,
                "cos" => Wave::Cos,
                "const" => Wave::Const,
                other => return Err(SpectralError::Format(format!("unknown wave {other:?}"))),
            };
            let mode = Mode::new(wave, t.k)?;
            let c = S::decode(&t.num, &t.den).map_err(SpectralError::Format)?;
            terms.push((mode, c));
        }
        let max_k = terms.iter().map(|(m, _)| m.k()).max().unwrap_or(0);
        let truncation = record.truncation.unwrap_or(default_truncation.max(max_k));
        TrigPoly::from_terms(truncation, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(text: &str, default_truncation: u32) -> Result<Self, SpectralError> {
        let record: TrigPolyRecord =
            serde_json::from_str(text).map_err(|e| SpectralError::Format(e.to_string()))?;
        Self::from_record(&record, default_truncation)
    }
}
