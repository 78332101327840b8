use std::sync::atomic::{AtomicU64, Ordering};

use super::trig::{Mode, TrigPoly, Wave};
use super::{LinearMapMatrix, SpectralError};
use crate::scalar::Scalar;

/// Index of the critical mode pair `{sin 2x, cos 2x}`.
pub const CENTER_K: u32 = 1;

static CONST_MODE_DROPS: AtomicU64 = AtomicU64::new(0);

/// Number of times a projection into the dotted space discarded a constant
/// term, process-wide.
pub fn const_mode_drops() -> u64 {
    CONST_MODE_DROPS.load(Ordering::Relaxed)
}

fn drop_const<S: Scalar>(u: &TrigPoly<S>) -> TrigPoly<S> {
    if u.is_mean_zero() {
        return u.clone();
    }
    CONST_MODE_DROPS.fetch_add(1, Ordering::Relaxed);
    u.retain_modes(|m| !m.is_const())
}

/// `λ_k = (1 − 4k²)² − λ`, the eigenvalue of `L_λ` on `sin 2kx` and `cos 2kx`.
pub fn eigenvalue<S: Scalar>(k: i64, lambda: &S) -> Result<S, SpectralError> {
    if k < 1 {
        return Err(SpectralError::Domain(format!(
            "eigenvalue requested for k = {k}; the zero-mean space has modes k >= 1 only"
        )));
    }
    let a = 1 - 4 * k * k;
    Ok(S::from_i64(a * a) - lambda.clone())
}

fn symbol<S: Scalar>(k: u32, lambda: &S) -> S {
    let a = 1 - 4 * k as i64 * k as i64;
    S::from_i64(a * a) - lambda.clone()
}

/// `L_λ u = (I + Δ)² u − λ u`, diagonal on the basis.
pub fn apply_l<S: Scalar>(lambda: &S, u: &TrigPoly<S>) -> TrigPoly<S> {
    drop_const(u).map_terms(|m, c| c.clone() * symbol(m.k(), lambda))
}

/// `P u`: the `span{sin 2x, cos 2x}` component.
pub fn project_center<S: Scalar>(u: &TrigPoly<S>) -> TrigPoly<S> {
    drop_const(u).retain_modes(|m| m.k() == CENTER_K)
}

/// `(I − P) u` within the dotted space.
pub fn project_stable<S: Scalar>(u: &TrigPoly<S>) -> TrigPoly<S> {
    drop_const(u).retain_modes(|m| m.k() != CENTER_K)
}

/// Ordering of the dotted basis used by matrices:
/// `[sin 2x, cos 2x, sin 4x, cos 4x, …]`.
pub fn basis_index(mode: Mode) -> Option<usize> {
    let k = mode.k() as usize;
    match mode.wave() {
        Wave::Const => None,
        Wave::Sin => Some(2 * (k - 1)),
        Wave::Cos => Some(2 * (k - 1) + 1),
    }
}

pub fn basis_mode(index: usize) -> Mode {
    let k = (index / 2 + 1) as u32;
    if index.is_multiple_of(2) {
        Mode::sin(k).expect("k >= 1")
    } else {
        Mode::cos(k).expect("k >= 1")
    }
}

/// Eigenvalue table of `L_λ` at one parameter value, split into center and
/// stable index sets by the gap constant `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition<S> {
    pub lambda: S,
    pub truncation: u32,
    pub beta: S,
    /// `(k, λ_k)` for `k = 1..=truncation`.
    pub eigenvalues: Vec<(u32, S)>,
    pub center_indices: Vec<u32>,
    pub stable_indices: Vec<u32>,
}

impl<S: Scalar> SpectralDecomposition<S> {
    pub const DEFAULT_BETA: i64 = 100;

    pub fn new(lambda: S, truncation: u32) -> Result<Self, SpectralError> {
        Self::with_beta(lambda, truncation, S::from_i64(Self::DEFAULT_BETA))
    }

    /// Center modes are those with `|λ_k| ≤ β`; every other mode must satisfy
    /// `λ_k ≥ 2β`, otherwise the gap condition fails.
    pub fn with_beta(lambda: S, truncation: u32, beta: S) -> Result<Self, SpectralError> {
        if truncation < 1 {
            return Err(SpectralError::Domain(
                "truncation must be at least 1".into(),
            ));
        }
        if beta.is_negative() || beta.is_zero() {
            return Err(SpectralError::Domain(
                "gap constant beta must be positive".into(),
            ));
        }
        let two_beta = beta.clone() + beta.clone();
        let mut eigenvalues = Vec::new();
        let mut center_indices = Vec::new();
        let mut stable_indices = Vec::new();
        for k in 1..=truncation {
            let ev = symbol(k, &lambda);
            let mag = ev.abs();
            let within = mag.clone() - beta.clone();
            if within.is_negative() || within.is_zero() {
                center_indices.push(k);
            } else {
                let slack = ev.clone() - two_beta.clone();
                if slack.is_negative() {
                    return Err(SpectralError::GapCondition {
                        k,
                        eigenvalue: ev.to_f64(),
                        beta: beta.to_f64(),
                    });
                }
                stable_indices.push(k);
            }
            eigenvalues.push((k, ev));
        }
        Ok(SpectralDecomposition {
            lambda,
            truncation,
            beta,
            eigenvalues,
            center_indices,
            stable_indices,
        })
    }

    pub fn dimension(&self) -> usize {
        2 * self.truncation as usize
    }

    pub fn eigenvalue(&self, k: u32) -> Option<&S> {
        self.eigenvalues
            .iter()
            .find(|(j, _)| *j == k)
            .map(|(_, e)| e)
    }

    /// Orthogonal projection onto the center modes as a matrix on the dotted
    /// basis.
    pub fn center_projection(&self) -> LinearMapMatrix<S> {
        self.mode_projection(&self.center_indices)
    }

    pub fn stable_projection(&self) -> LinearMapMatrix<S> {
        self.mode_projection(&self.stable_indices)
    }

    /// `L_λ` as a diagonal matrix.
    pub fn operator_matrix(&self) -> LinearMapMatrix<S> {
        let n = self.dimension();
        let mut m = LinearMapMatrix::zeros(n, n);
        for (k, ev) in &self.eigenvalues {
            let i = 2 * (*k as usize - 1);
            m.set(i, i, ev.clone());
            m.set(i + 1, i + 1, ev.clone());
        }
        m
    }

    fn mode_projection(&self, ks: &[u32]) -> LinearMapMatrix<S> {
        let n = self.dimension();
        let mut m = LinearMapMatrix::zeros(n, n);
        for k in ks {
            let i = 2 * (*k as usize - 1);
            m.set(i, i, S::one());
            m.set(i + 1, i + 1, S::one());
        }
        m
    }
}

/// Coefficient vector of `u` in the dotted basis of size `2 · truncation`.
pub fn to_coefficient_vector<S: Scalar>(
    u: &TrigPoly<S>,
    truncation: u32,
) -> Result<Vec<S>, SpectralError> {
    if u.max_k() > truncation {
        return Err(SpectralError::TruncationOverflow {
            needed: u.max_k(),
            available: truncation,
        });
    }
    let mut v = vec![S::zero(); 2 * truncation as usize];
    for (m, c) in u.terms() {
        if let Some(i) = basis_index(m) {
            v[i] = c.clone();
        }
    }
    Ok(v)
}

pub fn from_coefficient_vector<S: Scalar>(v: &[S], truncation: u32) -> TrigPoly<S> {
    TrigPoly::from_terms(
        truncation,
        v.iter()
            .enumerate()
            .map(|(i, c)| (basis_mode(i), c.clone())),
    )
    .expect("indices within truncation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn q(n: i64) -> Rational {
        ratio(n, 1)
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue(1, &q(9)).unwrap(), q(0));
        assert_eq!(eigenvalue(2, &q(9)).unwrap(), q(216));
        assert_eq!(eigenvalue(3, &q(0)).unwrap(), q(1225));
        assert!(matches!(
            eigenvalue(0, &q(9)),
            Err(SpectralError::Domain(_))
        ));
        assert!(eigenvalue(-2, &q(9)).is_err());
    }

    #[test]
    fn apply_l_examples() {
        let s1 = TrigPoly::<Rational>::sin(1, 8).unwrap();
        assert!(apply_l(&q(9), &s1).is_zero());

        let prod = s1.mul(&TrigPoly::cos(2, 8).unwrap()).unwrap();
        let got = apply_l(&q(9), &prod);
        let mixed = s1.mul(&TrigPoly::cos(2, 8).unwrap()).unwrap().add(
            &TrigPoly::cos(1, 8)
                .unwrap()
                .mul(&TrigPoly::sin(2, 8).unwrap())
                .unwrap(),
        );
        assert_eq!(got, mixed.scale(&q(608)));

        let c2 = TrigPoly::<Rational>::cos(2, 8).unwrap();
        assert_eq!(apply_l(&q(0), &c2), c2.scale(&q(225)));
    }

    #[test]
    fn projection_examples() {
        let s1 = TrigPoly::<Rational>::sin(1, 8).unwrap();
        let s3 = TrigPoly::<Rational>::sin(3, 8).unwrap();
        assert_eq!(project_center(&s1.add(&s3)), s1);
        let cube = s1.mul(&s1).unwrap().mul(&s1).unwrap();
        assert_eq!(project_center(&cube), s1.scale(&ratio(3, 4)));
        assert!(project_center(&TrigPoly::<Rational>::cos(2, 8).unwrap()).is_zero());
    }

    #[test]
    fn const_drops_are_counted() {
        let s1 = TrigPoly::<Rational>::sin(1, 8).unwrap();
        let sq = s1.mul(&s1).unwrap();
        let before = const_mode_drops();
        let stable = project_stable(&sq);
        assert!(stable.is_mean_zero());
        assert!(const_mode_drops() > before);
    }

    #[test]
    fn decomposition_at_criticality() {
        let d = SpectralDecomposition::new(q(9), 8).unwrap();
        assert_eq!(d.center_indices, vec![1]);
        assert_eq!(d.stable_indices, (2..=8).collect::<Vec<_>>());
        assert_eq!(d.eigenvalue(2), Some(&q(216)));
        let p = d.center_projection();
        assert_eq!(p.mul(&p).unwrap(), p);
    }

    #[test]
    fn gap_condition_violation() {
        // λ_2 = 225 − 30 = 195 is neither within β = 100 of zero nor ≥ 2β.
        let err = SpectralDecomposition::new(q(30), 8).unwrap_err();
        assert!(matches!(err, SpectralError::GapCondition { k: 2, .. }));
    }

    #[test]
    fn coefficient_vectors_round_trip() {
        let u = TrigPoly::<Rational>::sin(1, 4)
            .unwrap()
            .add(&TrigPoly::cos(4, 4).unwrap().scale(&ratio(2, 7)));
        let v = to_coefficient_vector(&u, 4).unwrap();
        assert_eq!(v.len(), 8);
        assert_eq!(from_coefficient_vector(&v, 4), u);
    }
}
