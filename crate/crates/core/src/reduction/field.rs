use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Rational, Scalar};
use crate::spectral::{SpectralError, TrigPoly};

/// `s₁^a s₂^b` in the center coordinates `u₁ = s₁ sin 2x + s₂ cos 2x`.
///
/// Ordered graded-lexicographically: by degree, then by descending power
/// of `s₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CenterMonomial {
    pub a: u32,
    pub b: u32,
}

impl CenterMonomial {
    pub const fn new(a: u32, b: u32) -> Self {
        CenterMonomial { a, b }
    }

    pub fn degree(self) -> u32 {
        self.a + self.b
    }

    pub fn times(self, other: CenterMonomial) -> CenterMonomial {
        CenterMonomial {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }

    pub fn eval(self, s1: f64, s2: f64) -> f64 {
        s1.powi(self.a as i32) * s2.powi(self.b as i32)
    }

    pub fn eval_exact(self, s1: &Rational, s2: &Rational) -> Rational {
        num_traits::pow(s1.clone(), self.a as usize) * num_traits::pow(s2.clone(), self.b as usize)
    }

    /// Monomials of the given degree in canonical order.
    pub fn of_degree(degree: u32) -> impl Iterator<Item = CenterMonomial> {
        (0..=degree)
            .rev()
            .map(move |a| CenterMonomial::new(a, degree - a))
    }
}

impl Ord for CenterMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.a.cmp(&self.a))
    }
}

impl PartialOrd for CenterMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CenterMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 0) => f.write_str("1"),
            (a, 0) => write!(f, "s1^{a}"),
            (0, b) => write!(f, "s2^{b}"),
            (a, b) => write!(f, "s1^{a} s2^{b}"),
        }
    }
}

/// Polynomial in `(s₁, s₂)` with exact rational coefficients.
pub type ScalarPoly = BTreeMap<CenterMonomial, Rational>;

/// Polynomial in `(s₁, s₂)` whose coefficients are functions of `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldPoly {
    truncation: u32,
    terms: BTreeMap<CenterMonomial, TrigPoly<Rational>>,
}

impl FieldPoly {
    pub fn zero(truncation: u32) -> Self {
        FieldPoly {
            truncation,
            terms: BTreeMap::new(),
        }
    }

    /// `u₁ = s₁ sin 2x + s₂ cos 2x`.
    pub fn center_coordinates(truncation: u32) -> Result<Self, SpectralError> {
        let mut p = FieldPoly::zero(truncation);
        p.insert(CenterMonomial::new(1, 0), TrigPoly::sin(1, truncation)?);
        p.insert(CenterMonomial::new(0, 1), TrigPoly::cos(1, truncation)?);
        Ok(p)
    }

    pub fn from_terms<I>(truncation: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (CenterMonomial, TrigPoly<Rational>)>,
    {
        let mut p = FieldPoly::zero(truncation);
        for (m, c) in terms {
            p.insert(m, c);
        }
        p
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (CenterMonomial, &TrigPoly<Rational>)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn get(&self, m: CenterMonomial) -> Option<&TrigPoly<Rational>> {
        self.terms.get(&m)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    /// Adds `c · m`, dropping the entry if it cancels.
    pub fn insert(&mut self, m: CenterMonomial, c: TrigPoly<Rational>) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(prev) => prev.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &FieldPoly) -> FieldPoly {
        let mut out = self.clone();
        out.truncation = out.truncation.max(other.truncation);
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FieldPoly) -> FieldPoly {
        self.add(&other.map(|c| c.neg()))
    }

    pub fn scale(&self, factor: &Rational) -> FieldPoly {
        self.map(|c| c.scale(factor))
    }

    /// Applies `f` to every coefficient.
    pub fn map<F: Fn(&TrigPoly<Rational>) -> TrigPoly<Rational>>(&self, f: F) -> FieldPoly {
        FieldPoly::from_terms(self.truncation, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Terms of degree at most `max_degree`.
    pub fn truncate_degree(&self, max_degree: u32) -> FieldPoly {
        self.filter_degree(|d| d <= max_degree)
    }

    /// Terms of exactly the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> FieldPoly {
        self.filter_degree(|d| d == degree)
    }

    fn filter_degree<F: Fn(u32) -> bool>(&self, keep: F) -> FieldPoly {
        FieldPoly {
            truncation: self.truncation,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.degree()))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Product, discarding monomials above `max_degree` before they are formed.
    pub fn mul(&self, other: &FieldPoly, max_degree: u32) -> Result<FieldPoly, SpectralError> {
        let mut out = FieldPoly::zero(self.truncation.max(other.truncation));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.times(*mb);
                if m.degree() > max_degree {
                    continue;
                }
                out.insert(m, ca.mul(cb)?);
            }
        }
        Ok(out)
    }

    /// `self³` up to `max_degree`.
    pub fn cube(&self, max_degree: u32) -> Result<FieldPoly, SpectralError> {
        self.mul(self, max_degree)?.mul(self, max_degree)
    }

    /// Product with a scalar polynomial.
    pub fn mul_scalar_poly(&self, p: &ScalarPoly, max_degree: u32) -> FieldPoly {
        let mut out = FieldPoly::zero(self.truncation);
        for (ma, ca) in &self.terms {
            for (mb, cb) in p {
                let m = ma.times(*mb);
                if m.degree() <= max_degree {
                    out.insert(m, ca.scale(cb));
                }
            }
        }
        out
    }

    /// `∂/∂s₁` (`first = true`) or `∂/∂s₂`.
    pub fn partial(&self, first: bool) -> FieldPoly {
        let mut out = FieldPoly::zero(self.truncation);
        for (m, c) in &self.terms {
            let (e, dm) = if first {
                (m.a, CenterMonomial::new(m.a.saturating_sub(1), m.b))
            } else {
                (m.b, CenterMonomial::new(m.a, m.b.saturating_sub(1)))
            };
            if e > 0 {
                out.insert(dm, c.scale(&Rational::from_i64(e as i64)));
            }
        }
        out
    }

    /// The scalar polynomial multiplying one basis mode.
    pub fn mode_component(&self, mode: crate::spectral::Mode) -> ScalarPoly {
        self.terms
            .iter()
            .filter_map(|(m, c)| c.get(mode).map(|v| (*m, v.clone())))
            .collect()
    }

    /// Evaluates the coefficient function at `x` and the monomials at `(s₁, s₂)`.
    pub fn evaluate(&self, s1: f64, s2: f64, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| m.eval(s1, s2) * c.evaluate(x))
            .sum()
    }
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{m}: {c}")?;
        }
        Ok(())
    }
}
