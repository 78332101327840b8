use nalgebra::DMatrix;

use super::SpectralError;
use crate::scalar::Scalar;

/// Dense row-major matrix over a scalar kind.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearMapMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> LinearMapMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LinearMapMatrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, SpectralError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(SpectralError::Dimension("ragged rows".into()));
        }
        Ok(LinearMapMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SpectralError> {
        if self.cols != other.rows {
            return Err(SpectralError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[S]) -> Result<Vec<S>, SpectralError> {
        if v.len() != self.cols {
            return Err(SpectralError::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(S::zero(), |acc, j| {
                    acc + self.get(i, j).clone() * v[j].clone()
                })
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SpectralError> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SpectralError> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Entry-wise comparison, exact for rationals.
    pub fn close(&self, other: &Self, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.close(b, tol))
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_f64())
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        if self.data.is_empty() {
            return 0.0;
        }
        self.to_nalgebra().singular_values().max()
    }

    /// Ratio of extreme singular values; infinite for singular matrices.
    pub fn condition_number(&self) -> f64 {
        let sv = self.to_nalgebra().singular_values();
        let max = sv.max();
        let min = sv.min();
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Positive definiteness of a symmetric matrix via the signs of the
    /// elimination pivots. Exact for rationals.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let mut a = self.clone();
        for p in 0..n {
            let pivot = a.get(p, p).clone();
            if pivot.is_negative() || pivot.is_zero() {
                return false;
            }
            for i in p + 1..n {
                let f = a.get(i, p).clone() / pivot.clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..n {
                    let v = a.get(i, j).clone() - f.clone() * a.get(p, j).clone();
                    a.set(i, j, v);
                }
            }
        }
        true
    }

    fn zip<F: Fn(&S, &S) -> S>(&self, other: &Self, f: F) -> Result<Self, SpectralError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(SpectralError::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(LinearMapMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }
}

/// Complementary projections `P¹ + P² = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionPair<S> {
    pub first: LinearMapMatrix<S>,
    pub second: LinearMapMatrix<S>,
}

/// Tolerance for float idempotence/complementarity checks.
const PROJECTION_TOL: f64 = 1e-10;

impl<S: Scalar> ProjectionPair<S> {
    pub fn new(
        first: LinearMapMatrix<S>,
        second: LinearMapMatrix<S>,
    ) -> Result<Self, SpectralError> {
        let pair = ProjectionPair { first, second };
        pair.validate()?;
        Ok(pair)
    }

    /// `(P, I − P)`.
    pub fn complementary(first: LinearMapMatrix<S>) -> Result<Self, SpectralError> {
        let second = LinearMapMatrix::identity(first.rows()).sub(&first)?;
        Self::new(first, second)
    }

    pub fn dimension(&self) -> usize {
        self.first.rows()
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        let n = self.first.rows();
        for (name, p) in [("first", &self.first), ("second", &self.second)] {
            if !p.is_square() || p.rows() != n {
                return Err(SpectralError::Dimension(format!(
                    "{name} projection is {}x{}, expected {n}x{n}",
                    p.rows(),
                    p.cols()
                )));
            }
            if !p.mul(p)?.close(p, PROJECTION_TOL) {
                return Err(SpectralError::NotIdempotent(name.to_string()));
            }
        }
        if !self
            .first
            .add(&self.second)?
            .close(&LinearMapMatrix::identity(n), PROJECTION_TOL)
        {
            return Err(SpectralError::NotComplementary);
        }
        Ok(())
    }
}

/// `T = P¹ P¹_λ + P² P²_λ`, mapping `range P^i_λ` onto `range P^i`.
///
/// Requires `‖P^i_λ − P^i‖₂ < 1` for both `i`; for exact scalars the bound is
/// certified by positive definiteness of `I − DᵀD`.
pub fn transition_isomorphism<S: Scalar>(
    p_ref: &ProjectionPair<S>,
    p_lam: &ProjectionPair<S>,
) -> Result<LinearMapMatrix<S>, SpectralError> {
    p_ref.validate()?;
    p_lam.validate()?;
    if p_ref.dimension() != p_lam.dimension() {
        return Err(SpectralError::Dimension(format!(
            "reference pair has dimension {}, perturbed pair {}",
            p_ref.dimension(),
            p_lam.dimension()
        )));
    }
    let n = p_ref.dimension();
    for (r, l) in [(&p_ref.first, &p_lam.first), (&p_ref.second, &p_lam.second)] {
        let diff = l.sub(r)?;
        let norm = diff.operator_norm();
        let below_one = if S::EXACT {
            let gram = diff.transpose().mul(&diff)?;
            LinearMapMatrix::identity(n)
                .sub(&gram)?
                .is_positive_definite()
        } else {
            norm < 1.0
        };
        if !below_one {
            return Err(SpectralError::NormCondition { norm });
        }
    }
    p_ref
        .first
        .mul(&p_lam.first)?
        .add(&p_ref.second.mul(&p_lam.second)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn line_projection(theta: f64) -> LinearMapMatrix<f64> {
        let (s, c) = theta.sin_cos();
        LinearMapMatrix::from_rows(vec![vec![c * c, c * s], vec![c * s, s * s]]).unwrap()
    }

    #[test]
    fn coincident_pairs_give_identity_exactly() {
        let p = LinearMapMatrix::<Rational>::from_rows(vec![
            vec![ratio(1, 1), ratio(0, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(0, 1), ratio(0, 1)],
        ])
        .unwrap();
        let pair = ProjectionPair::complementary(p).unwrap();
        let t = transition_isomorphism(&pair, &pair).unwrap();
        assert_eq!(t, LinearMapMatrix::identity(3));
    }

    #[test]
    fn rotated_line_maps_onto_axis() {
        let p_ref = ProjectionPair::complementary(line_projection(0.0)).unwrap();
        let p_lam = ProjectionPair::complementary(line_projection(0.1)).unwrap();
        let t = transition_isomorphism(&p_ref, &p_lam).unwrap();
        for scale in [1.0, -2.5, 0.3] {
            let v = [scale * 0.1f64.cos(), scale * 0.1f64.sin()];
            let w = t.apply(&v).unwrap();
            assert!(w[1].abs() < 1e-12, "image {w:?} leaves the x-axis");
        }
        assert!(t.condition_number().is_finite());
    }

    #[test]
    fn orthogonal_subspaces_violate_the_norm_condition() {
        let p_ref = ProjectionPair::complementary(line_projection(0.0)).unwrap();
        let p_lam =
            ProjectionPair::complementary(line_projection(std::f64::consts::FRAC_PI_2)).unwrap();
        match transition_isomorphism(&p_ref, &p_lam) {
            Err(SpectralError::NormCondition { norm }) => assert!((norm - 1.0).abs() < 1e-12),
            other => panic!("expected norm condition error, got {other:?}"),
        }
    }

    #[test]
    fn rational_norm_certificate_rejects_orthogonal_swap() {
        let x = LinearMapMatrix::<Rational>::from_rows(vec![
            vec![ratio(1, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(0, 1)],
        ])
        .unwrap();
        let y = LinearMapMatrix::<Rational>::from_rows(vec![
            vec![ratio(0, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(1, 1)],
        ])
        .unwrap();
        let a = ProjectionPair::complementary(x).unwrap();
        let b = ProjectionPair::complementary(y).unwrap();
        assert!(matches!(
            transition_isomorphism(&a, &b),
            Err(SpectralError::NormCondition { .. })
        ));
    }

    #[test]
    fn non_idempotent_input_is_rejected() {
        let bad = LinearMapMatrix::from_rows(vec![vec![2.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(
            ProjectionPair::complementary(bad),
            Err(SpectralError::NotIdempotent(_))
        ));
        let p = line_projection(0.0);
        let not_complement = ProjectionPair::new(p.clone(), p);
        assert!(not_complement.is_err());
    }
}
