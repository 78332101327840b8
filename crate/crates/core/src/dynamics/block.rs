use std::f64::consts::TAU;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::reduction::ReducedVectorField;

use super::{DynamicsError, PlanarState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryLabel {
    Ingress,
    Egress,
    Tangent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// Empty exit set.
    #[serde(rename = "attractor-like")]
    AttractorLike,
    /// Every boundary point is an exit point.
    #[serde(rename = "repeller-like")]
    RepellerLike,
    #[serde(rename = "mixed")]
    Mixed,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::AttractorLike => "attractor-like",
            Verdict::RepellerLike => "repeller-like",
            Verdict::Mixed => "mixed",
        }
    }

    /// Verdict from label counts; more than `max_tangent_fraction` tangent
    /// labels make the block undecided.
    pub fn from_counts(
        ingress: usize,
        egress: usize,
        tangent: usize,
        max_tangent_fraction: f64,
    ) -> Verdict {
        let total = ingress + egress + tangent;
        if total == 0 || tangent as f64 > max_tangent_fraction * total as f64 {
            return Verdict::Mixed;
        }
        match (ingress, egress) {
            (_, 0) => Verdict::AttractorLike,
            (0, _) => Verdict::RepellerLike,
            _ => Verdict::Mixed,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockOptions {
    /// Fraction of tangent samples tolerated before the verdict is `Mixed`.
    pub max_tangent_fraction: f64,
    /// Absolute threshold for the normal component; `None` uses
    /// `1e-12 · max|coefficient| · r³`.
    pub tangent_tol: Option<f64>,
}

impl Default for BlockOptions {
    fn default() -> Self {
        BlockOptions {
            max_tangent_fraction: 0.0,
            tangent_tol: None,
        }
    }
}

/// Boundary sampling of the disk `|s| ≤ r`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockClassification {
    pub radius: f64,
    pub samples: usize,
    pub tolerance: f64,
    pub labels: Vec<BoundaryLabel>,
    /// Outward normal component `⟨G(s), s⟩ / |s|` per sample.
    pub normal: Vec<f64>,
    pub ingress: usize,
    pub egress: usize,
    pub tangent: usize,
    pub verdict: Verdict,
}

pub fn classify_block(
    vf: &ReducedVectorField,
    radius: f64,
    samples: usize,
) -> Result<BlockClassification, DynamicsError> {
    classify_block_with(vf, radius, samples, BlockOptions::default())
}

pub fn classify_block_with(
    vf: &ReducedVectorField,
    radius: f64,
    samples: usize,
    opts: BlockOptions,
) -> Result<BlockClassification, DynamicsError> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(DynamicsError::InvalidBlock(format!(
            "radius {radius} must be positive"
        )));
    }
    if samples < 64 {
        return Err(DynamicsError::InvalidBlock(format!(
            "{samples} samples, need at least 64"
        )));
    }
    if !(0.0..=1.0).contains(&opts.max_tangent_fraction) {
        return Err(DynamicsError::InvalidBlock(
            "tangent fraction outside [0, 1]".into(),
        ));
    }
    let tolerance = opts
        .tangent_tol
        .unwrap_or(1e-12 * vf.max_abs_coefficient() * radius.powi(3));
    let field = vf.to_float();
    let normal: Vec<f64> = (0..samples)
        .map(|i| {
            let s = PlanarState::polar(radius, TAU * i as f64 / samples as f64);
            let (g1, g2) = field.eval(s.s1, s.s2);
            (g1 * s.s1 + g2 * s.s2) / radius
        })
        .collect();
    let labels: Vec<BoundaryLabel> = normal
        .iter()
        .map(|&v| {
            if v.abs() < tolerance || v.is_nan() {
                BoundaryLabel::Tangent
            } else if v < 0.0 {
                BoundaryLabel::Ingress
            } else {
                BoundaryLabel::Egress
            }
        })
        .collect();
    let count = |l: BoundaryLabel| labels.iter().filter(|x| **x == l).count();
    let (ingress, egress, tangent) = (
        count(BoundaryLabel::Ingress),
        count(BoundaryLabel::Egress),
        count(BoundaryLabel::Tangent),
    );
    Ok(BlockClassification {
        radius,
        samples,
        tolerance,
        verdict: Verdict::from_counts(ingress, egress, tangent, opts.max_tangent_fraction),
        labels,
        normal,
        ingress,
        egress,
        tangent,
    })
}

/// One serialized classification result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyRow {
    pub lambda: f64,
    pub r: f64,
    /// Verdict name, or `"error"` when the row could not be computed.
    pub verdict: String,
    pub r_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errors: Vec<String>,
}
