//! Independent oracle: polynomials in `(s₁, s₂)` whose coefficients are
//! functions `Σ c_m e^{2imx}` stored by their exponential coefficients.
//! Products are plain convolutions; no trigonometric identities are used.

#![allow(dead_code)]

use std::collections::BTreeMap;

use bifurcate_core::Rational;
use num_complex::Complex;
use num_traits::{One, Zero};

pub type Cq = Complex<Rational>;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn cq(re: Rational, im: Rational) -> Cq {
    Complex::new(re, im)
}

/// `(a, b, m) ↦ c` meaning `c · s₁^a s₂^b e^{2imx}`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExpPoly(pub BTreeMap<(u32, u32, i64), Cq>);

impl ExpPoly {
    pub fn add_term(&mut self, a: u32, b: u32, m: i64, c: Cq) {
        let e = self.0.entry((a, b, m)).or_insert_with(Cq::zero);
        *e = e.clone() + c;
        if e.is_zero() {
            self.0.remove(&(a, b, m));
        }
    }

    /// `s₁^a s₂^b sin(2kx)`.
    pub fn sin(a: u32, b: u32, k: i64, coeff: Rational) -> Self {
        let mut p = ExpPoly::default();
        let half = coeff / q(2, 1);
        p.add_term(a, b, k, cq(Rational::zero(), -half.clone()));
        p.add_term(a, b, -k, cq(Rational::zero(), half));
        p
    }

    /// `s₁^a s₂^b cos(2kx)`.
    pub fn cos(a: u32, b: u32, k: i64, coeff: Rational) -> Self {
        let mut p = ExpPoly::default();
        let half = coeff / q(2, 1);
        p.add_term(a, b, k, cq(half.clone(), Rational::zero()));
        p.add_term(a, b, -k, cq(half, Rational::zero()));
        p
    }

    pub fn plus(&self, other: &ExpPoly) -> ExpPoly {
        let mut out = self.clone();
        for ((a, b, m), c) in &other.0 {
            out.add_term(*a, *b, *m, c.clone());
        }
        out
    }

    pub fn scaled(&self, f: &Rational) -> ExpPoly {
        let mut out = ExpPoly::default();
        for ((a, b, m), c) in &self.0 {
            out.add_term(
                *a,
                *b,
                *m,
                cq(c.re.clone() * f.clone(), c.im.clone() * f.clone()),
            );
        }
        out
    }

    /// Product with every monomial of degree above `max_degree` discarded.
    pub fn times(&self, other: &ExpPoly, max_degree: u32) -> ExpPoly {
        let mut out = ExpPoly::default();
        for ((a1, b1, m1), c1) in &self.0 {
            for ((a2, b2, m2), c2) in &other.0 {
                if a1 + a2 + b1 + b2 <= max_degree {
                    out.add_term(a1 + a2, b1 + b2, m1 + m2, c1.clone() * c2.clone());
                }
            }
        }
        out
    }

    /// Keeps only the terms with `|m| = 1`, or drops them.
    pub fn center_part(&self, keep_center: bool) -> ExpPoly {
        ExpPoly(
            self.0
                .iter()
                .filter(|((_, _, m), _)| (m.abs() == 1) == keep_center)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        )
    }

    /// Real coefficient of `s₁^a s₂^b sin(2kx)`.
    pub fn sin_coeff(&self, a: u32, b: u32, k: i64) -> Rational {
        // c_k = −i s/2 + c/2, so s = −2 Im c_k
        let c = self.0.get(&(a, b, k)).cloned().unwrap_or_else(Cq::zero);
        -(c.im * q(2, 1))
    }

    /// Real coefficient of `s₁^a s₂^b cos(2kx)`.
    pub fn cos_coeff(&self, a: u32, b: u32, k: i64) -> Rational {
        let c = self.0.get(&(a, b, k)).cloned().unwrap_or_else(Cq::zero);
        c.re * q(2, 1)
    }

    pub fn has_constant(&self) -> bool {
        self.0.keys().any(|(_, _, m)| *m == 0)
    }
}

/// `u₁ = s₁ sin 2x + s₂ cos 2x`.
pub fn center_coordinates() -> ExpPoly {
    ExpPoly::sin(1, 0, 1, Rational::one()).plus(&ExpPoly::cos(0, 1, 1, Rational::one()))
}

/// `(1 − 4k²)² − λ`.
pub fn mode_eigenvalue(k: i64, lambda: &Rational) -> Rational {
    let base = 1 - 4 * k * k;
    Rational::from_integer((base * base).into()) - lambda.clone()
}

/// Degree-3 center-manifold map at `λ`, solved mode by mode from
/// `L_λ ψ = −(I − P) u₁³`.
pub fn cubic_manifold(lambda: &Rational) -> ExpPoly {
    let u1 = center_coordinates();
    let forcing = u1
        .times(&u1, 3)
        .times(&u1, 3)
        .center_part(false)
        .scaled(&q(-1, 1));
    let mut psi = ExpPoly::default();
    for ((a, b, m), c) in &forcing.0 {
        let e = mode_eigenvalue(*m, lambda);
        psi.add_term(*a, *b, *m, cq(c.re.clone() / e.clone(), c.im.clone() / e));
    }
    psi
}

/// The ansatz `Σ α_i (monomial) (sin2x|cos2x) cos4x` with the given α.
pub fn mixed_ansatz(alphas: [Rational; 4]) -> ExpPoly {
    let cos4 = ExpPoly::cos(0, 0, 2, Rational::one());
    let [a1, a2, a3, a4] = alphas;
    let parts = [
        ExpPoly::sin(3, 0, 1, a1),
        ExpPoly::cos(0, 3, 1, a2),
        ExpPoly::cos(2, 1, 1, a3),
        ExpPoly::sin(1, 2, 1, a4),
    ];
    parts
        .iter()
        .fold(ExpPoly::default(), |acc, p| acc.plus(&p.times(&cos4, 5)))
}

/// `P g(u₁ + ψ)` through degree 5 with `g(u) = −u³`.
pub fn reduced_nonlinearity(psi: &ExpPoly) -> ExpPoly {
    let u = center_coordinates().plus(psi);
    u.times(&u, 5)
        .times(&u, 5)
        .center_part(true)
        .scaled(&q(-1, 1))
}
