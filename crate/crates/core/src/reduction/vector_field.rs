use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::{parse_rational, rational_to_string, Rational, Scalar};
use crate::spectral::{eigenvalue, project_center, Mode};

use super::field::{CenterMonomial, FieldPoly, ScalarPoly};
use super::manifold::{CenterManifoldMap, ReductionSetup};
use super::ReductionError;

/// Planar polynomial vector field `ṡ = G(s)` on the center coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedVectorField {
    lambda: Rational,
    order: u32,
    g1: ScalarPoly,
    g2: ScalarPoly,
}

impl ReducedVectorField {
    pub fn new(
        lambda: Rational,
        order: u32,
        g1: ScalarPoly,
        g2: ScalarPoly,
    ) -> Result<Self, ReductionError> {
        let strip =
            |p: ScalarPoly| -> ScalarPoly { p.into_iter().filter(|(_, c)| !c.is_zero()).collect() };
        let (g1, g2) = (strip(g1), strip(g2));
        if g1.contains_key(&CenterMonomial::new(0, 0))
            || g2.contains_key(&CenterMonomial::new(0, 0))
        {
            return Err(ReductionError::InvalidField("G(0) must vanish".into()));
        }
        Ok(ReducedVectorField {
            lambda,
            order,
            g1,
            g2,
        })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn g1(&self) -> &ScalarPoly {
        &self.g1
    }

    pub fn g2(&self) -> &ScalarPoly {
        &self.g2
    }

    /// Coefficient of `s₁^a s₂^b` in component 1 or 2.
    pub fn coefficient(&self, component: usize, a: u32, b: u32) -> Rational {
        let p = if component == 1 { &self.g1 } else { &self.g2 };
        p.get(&CenterMonomial::new(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, s1: f64, s2: f64) -> (f64, f64) {
        let e = |p: &ScalarPoly| {
            p.iter()
                .map(|(m, c)| c.to_f64() * m.eval(s1, s2))
                .sum::<f64>()
        };
        (e(&self.g1), e(&self.g2))
    }

    pub fn eval_exact(&self, s1: &Rational, s2: &Rational) -> (Rational, Rational) {
        let e = |p: &ScalarPoly| {
            p.iter().fold(Rational::zero(), |acc, (m, c)| {
                acc + c.clone() * m.eval_exact(s1, s2)
            })
        };
        (e(&self.g1), e(&self.g2))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.g1
            .values()
            .chain(self.g2.values())
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// `−G`, whose flow is the time reversal of this one.
    pub fn time_reversed(&self) -> Self {
        let neg = |p: &ScalarPoly| p.iter().map(|(m, c)| (*m, -c.clone())).collect();
        ReducedVectorField {
            lambda: self.lambda.clone(),
            order: self.order,
            g1: neg(&self.g1),
            g2: neg(&self.g2),
        }
    }

    /// Float copy for repeated evaluation.
    pub fn to_float(&self) -> FloatField {
        let conv = |p: &ScalarPoly| {
            p.iter()
                .map(|(m, c)| (m.a as i32, m.b as i32, c.to_f64()))
                .collect()
        };
        FloatField {
            g1: conv(&self.g1),
            g2: conv(&self.g2),
        }
    }

    /// `∂G₁/∂s₂ = ∂G₂/∂s₁`, compared exactly.
    pub fn is_gradient(&self) -> bool {
        partial(&self.g1, false) == partial(&self.g2, true)
    }

    /// Writes `G = ρ(|s|²) s + τ(|s|²) J s` (`J` the quarter turn) if the field
    /// has that rotation-equivariant form, returning the coefficient lists
    /// `ρ_j, τ_j` of `|s|^{2j}`.
    pub fn rotational_decomposition(
        &self,
    ) -> Result<(Vec<Rational>, Vec<Rational>), ReductionError> {
        let max_deg = self
            .g1
            .keys()
            .chain(self.g2.keys())
            .map(|m| m.degree())
            .max()
            .unwrap_or(1);
        let levels = (max_deg as usize).div_ceil(2);
        let mut rho = vec![Rational::zero(); levels];
        let mut tau = vec![Rational::zero(); levels];
        for j in 0..levels {
            let m = CenterMonomial::new(2 * j as u32 + 1, 0);
            rho[j] = self.g1.get(&m).cloned().unwrap_or_else(Rational::zero);
            tau[j] = self.g2.get(&m).cloned().unwrap_or_else(Rational::zero);
        }
        let mut g1 = ScalarPoly::new();
        let mut g2 = ScalarPoly::new();
        for j in 0..levels {
            // (s₁² + s₂²)^j expanded binomially
            for i in 0..=j {
                let binom = Rational::from_i64(binomial(j, i));
                let base = CenterMonomial::new(2 * (j - i) as u32, 2 * i as u32);
                let x = base.times(CenterMonomial::new(1, 0));
                let y = base.times(CenterMonomial::new(0, 1));
                add_to(&mut g1, x, binom.clone() * rho[j].clone());
                add_to(&mut g1, y, -(binom.clone() * tau[j].clone()));
                add_to(&mut g2, y, binom.clone() * rho[j].clone());
                add_to(&mut g2, x, binom * tau[j].clone());
            }
        }
        let strip =
            |p: ScalarPoly| -> ScalarPoly { p.into_iter().filter(|(_, c)| !c.is_zero()).collect() };
        if strip(g1) != self.g1 || strip(g2) != self.g2 {
            return Err(ReductionError::NotEquivariant(
                "field is not of the form ρ(|s|²)s + τ(|s|²)Js".into(),
            ));
        }
        Ok((rho, tau))
    }

    /// Exact check of `G(R v) = R G(v)` for the quarter turn and of
    /// `G(F v) = F G(v)` for the reflection `F(s₁, s₂) = (−s₁, s₂)`, at the
    /// given sample points.
    pub fn commutes_with_quarter_turn_and_reflection(
        &self,
        points: &[(Rational, Rational)],
    ) -> bool {
        points.iter().all(|(a, b)| {
            let (g1, g2) = self.eval_exact(a, b);
            let (r1, r2) = self.eval_exact(&-b.clone(), a);
            let (f1, f2) = self.eval_exact(&-a.clone(), b);
            r1 == -g2.clone() && r2 == g1 && f1 == -g1.clone() && f2 == g2
        })
    }

    /// Radial profile `ρ(r)` with `⟨G(s), s⟩ / |s| = ρ(|s|)`.
    pub fn radial_polynomial(&self) -> Result<RadialPolynomial, ReductionError> {
        let (rho, tau) = self.rotational_decomposition()?;
        if let Some(j) = tau.iter().position(|t| !t.is_zero()) {
            return Err(ReductionError::NotEquivariant(format!(
                "tangential component at |s|^{}",
                2 * j
            )));
        }
        let coeffs = rho
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (2 * j as u32 + 1, c))
            .collect();
        Ok(RadialPolynomial { coeffs })
    }

    pub fn to_record(&self) -> ReducedFieldRecord {
        let conv = |p: &ScalarPoly| {
            p.iter()
                .map(|(m, c)| MonomialRecord {
                    a: m.a,
                    b: m.b,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect()
        };
        ReducedFieldRecord {
            lambda: rational_to_string(&self.lambda),
            order: self.order,
            g1: conv(&self.g1),
            g2: conv(&self.g2),
        }
    }

    pub fn from_record(record: &ReducedFieldRecord) -> Result<Self, ReductionError> {
        let lambda = parse_rational(&record.lambda).map_err(ReductionError::Format)?;
        let conv = |terms: &[MonomialRecord]| -> Result<ScalarPoly, ReductionError> {
            let mut p = ScalarPoly::new();
            for t in terms {
                let c = Rational::decode(&t.num, &t.den).map_err(ReductionError::Format)?;
                if p.insert(CenterMonomial::new(t.a, t.b), c).is_some() {
                    return Err(ReductionError::Format(format!(
                        "duplicate monomial ({}, {})",
                        t.a, t.b
                    )));
                }
            }
            Ok(p)
        };
        Self::new(lambda, record.order, conv(&record.g1)?, conv(&record.g2)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ReductionError> {
        let record: ReducedFieldRecord =
            serde_json::from_str(text).map_err(|e| ReductionError::Format(e.to_string()))?;
        Self::from_record(&record)
    }
}

fn add_to(p: &mut ScalarPoly, m: CenterMonomial, c: Rational) {
    let entry = p.entry(m).or_insert_with(Rational::zero);
    *entry += c;
}

fn partial(p: &ScalarPoly, first: bool) -> ScalarPoly {
    let mut out = ScalarPoly::new();
    for (m, c) in p {
        let (e, dm) = if first {
            (m.a, CenterMonomial::new(m.a.saturating_sub(1), m.b))
        } else {
            (m.b, CenterMonomial::new(m.a, m.b.saturating_sub(1)))
        };
        if e > 0 {
            add_to(&mut out, dm, c.clone() * Rational::from_i64(e as i64));
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Float evaluation form of a [`ReducedVectorField`].
#[derive(Debug, Clone)]
pub struct FloatField {
    g1: Vec<(i32, i32, f64)>,
    g2: Vec<(i32, i32, f64)>,
}

impl FloatField {
    pub fn eval(&self, s1: f64, s2: f64) -> (f64, f64) {
        let e = |p: &[(i32, i32, f64)]| {
            p.iter()
                .map(|(a, b, c)| c * s1.powi(*a) * s2.powi(*b))
                .sum::<f64>()
        };
        (e(&self.g1), e(&self.g2))
    }
}

/// `ρ(r) = Σ c_p r^p` over odd powers `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialPolynomial {
    coeffs: BTreeMap<u32, Rational>,
}

impl RadialPolynomial {
    pub fn from_coefficients<I: IntoIterator<Item = (u32, Rational)>>(it: I) -> Self {
        RadialPolynomial {
            coeffs: it.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn coefficient(&self, power: u32) -> Rational {
        self.coeffs
            .get(&power)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest power with a nonzero coefficient.
    pub fn lowest(&self) -> Option<(u32, &Rational)> {
        self.coeffs.iter().next().map(|(p, c)| (*p, c))
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(p, c)| c.to_f64() * r.powi(*p as i32))
            .sum()
    }

    pub fn eval_exact(&self, r: &Rational) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (p, c)| {
            acc + c.clone() * num_traits::pow(r.clone(), *p as usize)
        })
    }

    /// `ρ(r) / r^p` for the lowest power `p`; same sign as `ρ` for `r > 0`
    /// and free of underflow near zero.
    pub fn eval_reduced(&self, r: f64) -> f64 {
        match self.lowest() {
            None => 0.0,
            Some((p0, _)) => self
                .coeffs
                .iter()
                .map(|(p, c)| c.to_f64() * r.powi((*p - p0) as i32))
                .sum(),
        }
    }
}

impl std::fmt::Display for RadialPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}) r^{p}", rational_to_string(c))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonomialRecord {
    pub a: u32,
    pub b: u32,
    pub num: String,
    pub den: String,
}

/// `{"lambda": "9", "order": 5, "G1": [...], "G2": [...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducedFieldRecord {
    pub lambda: String,
    pub order: u32,
    #[serde(rename = "G1")]
    pub g1: Vec<MonomialRecord>,
    #[serde(rename = "G2")]
    pub g2: Vec<MonomialRecord>,
}

/// Reads off `ṡ = −λ₁(λ) s + P g(u₁ + ψ(u₁))` through degree `order`.
pub fn reduced_vector_field(
    psi: &CenterManifoldMap,
    order: u32,
) -> Result<ReducedVectorField, ReductionError> {
    if order < 3 || order.is_multiple_of(2) {
        return Err(ReductionError::InvalidOrder(order));
    }
    if psi.order() + 2 < order {
        return Err(ReductionError::InsufficientOrder {
            have: psi.order(),
            need: order - 2,
        });
    }
    let setup = psi.setup();
    let u = FieldPoly::center_coordinates(setup.truncation)?
        .add(&psi.field().truncate_degree(order - 2));
    let pg = setup.nonlinearity(&u, order)?.map(project_center);
    let mut g1 = pg.mode_component(Mode::sin(1)?);
    let mut g2 = pg.mode_component(Mode::cos(1)?);
    let linear = -eigenvalue(1, &setup.lambda)?;
    add_to(&mut g1, CenterMonomial::new(1, 0), linear.clone());
    add_to(&mut g2, CenterMonomial::new(0, 1), linear);
    ReducedVectorField::new(setup.lambda.clone(), order, g1, g2)
}

/// Reduced field at parameter `λ`, with `ψ` recomputed from the eigenvalues
/// `(1 − 4k²)² − λ` at that parameter.
pub fn parameterized_reduction(
    lambda: &Rational,
    order: u32,
) -> Result<ReducedVectorField, ReductionError> {
    if order < 3 || order.is_multiple_of(2) {
        return Err(ReductionError::InvalidOrder(order));
    }
    let psi = ReductionSetup::new(lambda.clone())
        .solve_center_manifold(order.saturating_sub(2).max(3))?;
    reduced_vector_field(&psi, order)
}
