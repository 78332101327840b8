//! Library results against the exponential-coefficient oracle.

mod common;

use bifurcate_core::reduction::{
    parameterized_reduction, reduced_vector_field, solve_center_manifold, CenterMonomial,
    ReducedVectorField,
};
use bifurcate_core::spectral::Wave;
use bifurcate_core::{parse_rational, Rational};
use common::*;
use num_traits::Zero;

fn assert_manifold_matches(lambda: &Rational) {
    let oracle = cubic_manifold(lambda);
    let psi = solve_center_manifold(lambda, 3).unwrap();
    let mut seen = 0;
    for (m, poly) in psi.terms() {
        for (mode, c) in poly.terms() {
            let k = mode.k() as i64;
            let want = match mode.wave() {
                Wave::Sin => oracle.sin_coeff(m.a, m.b, k),
                Wave::Cos => oracle.cos_coeff(m.a, m.b, k),
                Wave::Const => panic!("constant term in the manifold map"),
            };
            assert_eq!(*c, want, "{m} {mode:?}");
            seen += 1;
        }
    }
    // every oracle coefficient was produced by the library
    assert_eq!(
        seen,
        oracle
            .0
            .keys()
            .filter(|(_, _, m)| *m > 0)
            .map(|(a, b, m)| {
                let s = oracle.sin_coeff(*a, *b, *m);
                let c = oracle.cos_coeff(*a, *b, *m);
                (!s.is_zero()) as usize + (!c.is_zero()) as usize
            })
            .sum::<usize>()
    );
}

fn assert_field_matches(vf: &ReducedVectorField, oracle: &ExpPoly, lambda: &Rational) {
    let linear = -mode_eigenvalue(1, lambda);
    for deg in 1..=5u32 {
        for m in CenterMonomial::of_degree(deg) {
            let mut g1 = oracle.sin_coeff(m.a, m.b, 1);
            let mut g2 = oracle.cos_coeff(m.a, m.b, 1);
            if (m.a, m.b) == (1, 0) {
                g1 += linear.clone();
            }
            if (m.a, m.b) == (0, 1) {
                g2 += linear.clone();
            }
            assert_eq!(vf.coefficient(1, m.a, m.b), g1, "G1 {m}");
            assert_eq!(vf.coefficient(2, m.a, m.b), g2, "G2 {m}");
        }
    }
}

#[test]
fn cubic_manifold_matches_oracle_at_criticality() {
    let lambda = q(9, 1);
    assert_manifold_matches(&lambda);
    let oracle = cubic_manifold(&lambda);
    assert_eq!(oracle.sin_coeff(3, 0, 3), q(1, 4864));
    assert!(!oracle.has_constant());
}

#[test]
fn cubic_manifold_matches_oracle_off_criticality() {
    for text in ["9.3", "8.75", "100"] {
        assert_manifold_matches(&parse_rational(text).unwrap());
    }
}

#[test]
fn alphas_are_twice_the_sixth_mode_coefficients() {
    let oracle = cubic_manifold(&q(9, 1));
    let want = [
        oracle.sin_coeff(3, 0, 3) * q(2, 1),
        oracle.cos_coeff(0, 3, 3) * q(2, 1),
        oracle.cos_coeff(2, 1, 3) * q(2, 1),
        oracle.sin_coeff(1, 2, 3) * q(2, 1),
    ];
    assert_eq!(want, [q(1, 2432), q(-1, 2432), q(3, 2432), q(-3, 2432)]);
    let got = solve_center_manifold(&q(9, 1), 3)
        .unwrap()
        .mixed_alphas()
        .unwrap();
    assert_eq!(got, want);
}

#[test]
fn quintic_field_matches_oracle() {
    let lambda = q(9, 1);
    let oracle = reduced_nonlinearity(&cubic_manifold(&lambda));
    let vf = reduced_vector_field(&solve_center_manifold(&lambda, 3).unwrap(), 5).unwrap();
    assert_field_matches(&vf, &oracle, &lambda);
    assert_eq!(oracle.sin_coeff(5, 0, 1), q(3, 19456));
    assert_eq!(oracle.sin_coeff(3, 2, 1), q(3, 9728));
    assert_eq!(oracle.sin_coeff(1, 4, 1), q(3, 19456));
    assert_eq!(oracle.cos_coeff(0, 5, 1), q(3, 19456));
}

#[test]
fn parameterized_field_matches_oracle() {
    for text in ["9.3", "8.9", "9.03125"] {
        let lambda = parse_rational(text).unwrap();
        let oracle = reduced_nonlinearity(&cubic_manifold(&lambda));
        let vf = parameterized_reduction(&lambda, 5).unwrap();
        assert_field_matches(&vf, &oracle, &lambda);
    }
}

/// The cos4x ansatz functions carry a `k = 1` part; substituting them
/// unprojected changes the quintic terms to these values.
#[test]
fn unprojected_ansatz_gives_a_different_quintic() {
    let alphas = [q(1, 2432), q(-1, 2432), q(3, 2432), q(-3, 2432)];
    let ansatz = mixed_ansatz(alphas);
    assert!(!ansatz.center_part(true).0.is_empty());
    let field = reduced_nonlinearity(&ansatz);
    assert_eq!(field.sin_coeff(5, 0, 1), q(3, 4864));
    assert_eq!(field.sin_coeff(3, 2, 1), q(-9, 4864));
    // its stable part is the solved map
    assert_eq!(ansatz.center_part(false), cubic_manifold(&q(9, 1)));
}
