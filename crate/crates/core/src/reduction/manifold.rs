use crate::scalar::{rational_to_string, Rational, Scalar};
use crate::spectral::{
    apply_l, eigenvalue, project_center, project_stable, Mode, SpectralError, TrigPoly,
    REDUCTION_TRUNCATION,
};

use super::field::{CenterMonomial, FieldPoly};
use super::ReductionError;

/// Parameter value, truncation and cubic nonlinearity `g(u) = c·u³` of one
/// reduction problem. Swift–Hohenberg has `c = −1`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionSetup {
    pub lambda: Rational,
    pub truncation: u32,
    pub cubic: Rational,
}

impl ReductionSetup {
    pub fn new(lambda: Rational) -> Self {
        ReductionSetup {
            lambda,
            truncation: REDUCTION_TRUNCATION,
            cubic: Rational::from_i64(-1),
        }
    }

    pub fn with_truncation(mut self, truncation: u32) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn with_cubic(mut self, cubic: Rational) -> Self {
        self.cubic = cubic;
        self
    }

    /// `g(u)` up to `max_degree`.
    pub fn nonlinearity(&self, u: &FieldPoly, max_degree: u32) -> Result<FieldPoly, SpectralError> {
        if self.cubic.is_zero() {
            return Ok(FieldPoly::zero(self.truncation));
        }
        Ok(u.cube(max_degree)?.scale(&self.cubic))
    }

    fn check_no_resonance(&self, lambda0: &Rational) -> Result<(), ReductionError> {
        for k in 2..=self.truncation {
            if eigenvalue(k as i64, lambda0)?.is_zero() {
                return Err(ReductionError::Resonance {
                    k,
                    lambda: rational_to_string(lambda0),
                });
            }
        }
        Ok(())
    }

    /// Solves the homological equation degree by degree in the eigenbasis.
    ///
    /// At each degree `d` the residual `R_d` of the lower-degree map is
    /// formed, and the stable-mode coefficient of `ψ_d` on mode `k` is
    /// `−R_d,k / λ_k`. `ψ_d` does not feed back into degree `d` apart from
    /// the `(I − P) L ψ_d` term, so this cancels the residual exactly.
    pub fn solve_center_manifold(&self, order: u32) -> Result<CenterManifoldMap, ReductionError> {
        check_order(order)?;
        let lambda0 = &self.lambda;
        self.check_no_resonance(lambda0)?;
        let mut psi = FieldPoly::zero(self.truncation);
        let mut const_drops = 0;
        for degree in 2..=order {
            let (residual, drops) = residual_terms(self, &psi, lambda0, degree)?;
            const_drops += drops;
            for (m, r) in residual.homogeneous_part(degree).terms() {
                let mut coeff = TrigPoly::zero(self.truncation);
                for (mode, v) in r.terms() {
                    let ev = eigenvalue(mode.k() as i64, lambda0)?;
                    if ev.is_zero() {
                        return Err(ReductionError::Resonance {
                            k: mode.k(),
                            lambda: rational_to_string(lambda0),
                        });
                    }
                    coeff = coeff.add(&TrigPoly::monomial(
                        self.truncation,
                        mode,
                        -(v.clone() / ev),
                    )?);
                }
                psi.insert(m, coeff);
            }
        }
        Ok(CenterManifoldMap {
            setup: self.clone(),
            order,
            psi,
            const_drops,
        })
    }
}

fn check_order(order: u32) -> Result<(), ReductionError> {
    if order < 3 || order.is_multiple_of(2) {
        return Err(ReductionError::InvalidOrder(order));
    }
    Ok(())
}

/// Stable-space-valued polynomial map `ψ(s₁, s₂)` approximating the center
/// manifold `u₂ = h(u₁)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterManifoldMap {
    setup: ReductionSetup,
    order: u32,
    psi: FieldPoly,
    const_drops: u64,
}

impl CenterManifoldMap {
    /// Builds a map from explicit coefficients, enforcing that every
    /// coefficient lies in the stable subspace and that the map starts at
    /// degree 3.
    pub fn from_parts(
        setup: ReductionSetup,
        order: u32,
        psi: FieldPoly,
    ) -> Result<Self, ReductionError> {
        for (m, c) in psi.terms() {
            if m.degree() < 3 {
                return Err(ReductionError::InvalidMap(format!(
                    "term {m} has degree below 3"
                )));
            }
            if !c.is_mean_zero() || !project_center(c).is_zero() {
                return Err(ReductionError::InvalidMap(format!(
                    "coefficient of {m} is not in the stable subspace: {c}"
                )));
            }
            if m.degree() > order {
                return Err(ReductionError::InvalidMap(format!(
                    "term {m} exceeds order {order}"
                )));
            }
        }
        Ok(CenterManifoldMap {
            setup,
            order,
            psi,
            const_drops: 0,
        })
    }

    /// Stable part of the ansatz
    /// `α₁ s₁³ sin2x cos4x + α₂ s₂³ cos2x cos4x + α₃ s₁²s₂ cos2x cos4x + α₄ s₁s₂² sin2x cos4x`.
    ///
    /// `sin2x cos4x = ½ sin6x − ½ sin2x` and `cos2x cos4x = ½ cos6x + ½ cos2x`;
    /// only the `6x` halves lie in the stable subspace.
    pub fn from_mixed_alphas(
        setup: ReductionSetup,
        alphas: &[Rational; 4],
    ) -> Result<Self, ReductionError> {
        let k = setup.truncation;
        let half = Rational::half();
        let sin6 = Mode::sin(3)?;
        let cos6 = Mode::cos(3)?;
        let entries = [
            (CenterMonomial::new(3, 0), sin6, &alphas[0]),
            (CenterMonomial::new(0, 3), cos6, &alphas[1]),
            (CenterMonomial::new(2, 1), cos6, &alphas[2]),
            (CenterMonomial::new(1, 2), sin6, &alphas[3]),
        ];
        let mut psi = FieldPoly::zero(k);
        for (m, mode, alpha) in entries {
            psi.insert(
                m,
                TrigPoly::monomial(k, mode, alpha.clone() * half.clone())?,
            );
        }
        Self::from_parts(setup, 3, psi)
    }

    pub fn setup(&self) -> &ReductionSetup {
        &self.setup
    }

    pub fn lambda(&self) -> &Rational {
        &self.setup.lambda
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn truncation(&self) -> u32 {
        self.setup.truncation
    }

    pub fn field(&self) -> &FieldPoly {
        &self.psi
    }

    pub fn coefficient(&self, m: CenterMonomial) -> Option<&TrigPoly<Rational>> {
        self.psi.get(m)
    }

    pub fn terms(&self) -> impl Iterator<Item = (CenterMonomial, &TrigPoly<Rational>)> + '_ {
        self.psi.terms()
    }

    /// Constant terms discarded while projecting during the solve.
    pub fn const_drops(&self) -> u64 {
        self.const_drops
    }

    /// Coefficients `α₁..α₄` of the mixed `{sin2x cos4x, cos2x cos4x}` ansatz
    /// reproducing the cubic part of this map.
    pub fn mixed_alphas(&self) -> Result<[Rational; 4], ReductionError> {
        let two = Rational::from_i64(2);
        let pick = |m: CenterMonomial, mode: Mode| -> Rational {
            self.psi
                .get(m)
                .map(|c| c.coeff(mode))
                .unwrap_or_else(Rational::zero)
                * two.clone()
        };
        let sin6 = Mode::sin(3)?;
        let cos6 = Mode::cos(3)?;
        let alphas = [
            pick(CenterMonomial::new(3, 0), sin6),
            pick(CenterMonomial::new(0, 3), cos6),
            pick(CenterMonomial::new(2, 1), cos6),
            pick(CenterMonomial::new(1, 2), sin6),
        ];
        let rebuilt = Self::from_mixed_alphas(self.setup.clone(), &alphas)?;
        if rebuilt.psi != self.psi.homogeneous_part(3) {
            return Err(ReductionError::NotMixedBasis(format!(
                "cubic part is not of the mixed-ansatz form:\n{}",
                self.psi.homogeneous_part(3)
            )));
        }
        Ok(alphas)
    }

    /// Copy with `α₁` shifted by `delta` (fault injection and sensitivity
    /// checks).
    pub fn with_alpha1_shifted(&self, delta: &Rational) -> Result<Self, ReductionError> {
        let mut psi = self.psi.clone();
        let shift = TrigPoly::monomial(
            self.truncation(),
            Mode::sin(3)?,
            delta.clone() * Rational::half(),
        )?;
        psi.insert(CenterMonomial::new(3, 0), shift);
        Self::from_parts(self.setup.clone(), self.order, psi)
    }
}

/// `M₁(ψ) = ψ′(u₁)·P g(u₁+ψ) + (I−P) L_{λ₀} ψ − (I−P) g(u₁+ψ)` through
/// the given degree.
pub fn homological_residual(
    psi: &CenterManifoldMap,
    lambda0: &Rational,
    order: u32,
) -> Result<FieldPoly, ReductionError> {
    check_order(order)?;
    if psi.order + 2 < order {
        return Err(ReductionError::InsufficientOrder {
            have: psi.order,
            need: order - 2,
        });
    }
    Ok(residual_terms(&psi.setup, &psi.psi, lambda0, order)?.0)
}

fn residual_terms(
    setup: &ReductionSetup,
    psi: &FieldPoly,
    lambda0: &Rational,
    order: u32,
) -> Result<(FieldPoly, u64), ReductionError> {
    let k = setup.truncation;
    let u = FieldPoly::center_coordinates(k)?
        .add(psi)
        .truncate_degree(order);
    let g = setup.nonlinearity(&u, order)?;
    let const_drops = g.terms().filter(|(_, c)| !c.is_mean_zero()).count() as u64;

    let pg = g.map(project_center);
    let w1 = pg.mode_component(Mode::sin(1)?);
    let w2 = pg.mode_component(Mode::cos(1)?);
    let transport = psi
        .partial(true)
        .mul_scalar_poly(&w1, order)
        .add(&psi.partial(false).mul_scalar_poly(&w2, order));

    let linear = psi
        .map(|c| project_stable(&apply_l(lambda0, c)))
        .truncate_degree(order);
    let forcing = g.map(project_stable);
    Ok((transport.add(&linear).sub(&forcing), const_drops))
}

/// [`ReductionSetup::solve_center_manifold`] for Swift–Hohenberg at the
/// default truncation.
pub fn solve_center_manifold(
    lambda0: &Rational,
    order: u32,
) -> Result<CenterManifoldMap, ReductionError> {
    ReductionSetup::new(lambda0.clone()).solve_center_manifold(order)
}
