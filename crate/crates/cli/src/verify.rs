//! Exact comparison of the reduction against reference coefficients.

use std::fmt::Write as _;

use bifurcate_core::reduction::{
    homological_residual, reduced_vector_field, solve_center_manifold, FieldPoly,
};
use bifurcate_core::scalar::{ratio, rational_to_string};
use bifurcate_core::spectral::{
    multiply_trig, project_center, transition_isomorphism, LinearMapMatrix, ProjectionPair,
    SpectralDecomposition, REDUCTION_TRUNCATION,
};
use bifurcate_core::Rational;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Exact,
    Mismatch,
    Skipped,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn run_count(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status != Status::Skipped)
            .count()
    }

    pub fn exact_count(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.status == Status::Exact)
            .count()
    }

    pub fn first_mismatch(&self) -> Option<&CheckRow> {
        self.rows.iter().find(|r| r.status == Status::Mismatch)
    }

    pub fn passed(&self) -> bool {
        self.first_mismatch().is_none()
    }

    pub fn table(&self) -> String {
        let w = self
            .rows
            .iter()
            .map(|r| r.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        let we = self
            .rows
            .iter()
            .map(|r| r.expected.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let wc = self
            .rows
            .iter()
            .map(|r| r.computed.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<w$}  {:<we$}  {:<wc$}  status",
            "check", "expected", "computed"
        );
        for r in &self.rows {
            let status = match r.status {
                Status::Exact => "exact",
                Status::Mismatch => "MISMATCH",
                Status::Skipped => "skipped",
            };
            let _ = writeln!(
                out,
                "{:<w$}  {:<we$}  {:<wc$}  {status}",
                r.name, r.expected, r.computed
            );
        }
        let _ = writeln!(
            out,
            "{}/{} checks exact",
            self.exact_count(),
            self.run_count()
        );
        out
    }
}

fn row(name: &str, expected: String, computed: String) -> CheckRow {
    let status = if expected == computed {
        Status::Exact
    } else {
        Status::Mismatch
    };
    CheckRow {
        name: name.into(),
        expected,
        computed,
        status,
    }
}

fn skipped(name: &str, expected: String) -> CheckRow {
    CheckRow {
        name: name.into(),
        expected,
        computed: "-".into(),
        status: Status::Skipped,
    }
}

fn q(n: i64, d: i64) -> Rational {
    ratio(n, d)
}

fn show(q: &Rational) -> String {
    rational_to_string(q)
}

/// Runs the eight exact checks at `λ = 9`; with `order = 3` the quintic
/// checks are skipped. `perturb_alpha1` shifts the first coefficient by 1.
pub fn run_verify(order: u32, perturb_alpha1: bool) -> Result<VerifyReport, CliError> {
    if order != 3 && order != 5 {
        return Err(CliError::Config(format!(
            "order must be 3 or 5, got {order}"
        )));
    }
    let lambda0 = q(9, 1);
    let mut psi = solve_center_manifold(&lambda0, 3)?;
    if perturb_alpha1 {
        psi = psi.with_alpha1_shifted(&q(1, 1))?;
    }
    let mut rows = Vec::new();

    let alphas = psi.mixed_alphas()?;
    let expected = [q(1, 2432), q(-1, 2432), q(3, 2432), q(-3, 2432)];
    for (i, (got, want)) in alphas.iter().zip(&expected).enumerate() {
        rows.push(row(&format!("alpha{}", i + 1), show(want), show(got)));
    }

    let vf = reduced_vector_field(&psi, order)?;
    rows.push(row(
        "G1 s1^3",
        show(&q(-3, 4)),
        show(&vf.coefficient(1, 3, 0)),
    ));
    rows.push(row(
        "G1 s1 s2^2",
        show(&q(-3, 4)),
        show(&vf.coefficient(1, 1, 2)),
    ));
    if order == 5 {
        rows.push(row(
            "G1 s1^5",
            show(&q(3, 4864)),
            show(&vf.coefficient(1, 5, 0)),
        ));
        rows.push(row(
            "G1 s1^3 s2^2",
            show(&q(-9, 4864)),
            show(&vf.coefficient(1, 3, 2)),
        ));
    } else {
        rows.push(skipped("G1 s1^5", show(&q(3, 4864))));
        rows.push(skipped("G1 s1^3 s2^2", show(&q(-9, 4864))));
    }

    let residual = homological_residual(&psi, &lambda0, 3)?.homogeneous_part(3);
    let nonzero = residual.terms().count();
    rows.push(row(
        "residual degree 3",
        "0 terms".into(),
        format!("{nonzero} terms"),
    ));

    let u1 = FieldPoly::center_coordinates(REDUCTION_TRUNCATION)?;
    let mut idempotent = true;
    for (_, c) in u1.cube(3)?.terms().chain(psi.terms()) {
        let p = project_center(c);
        idempotent &= project_center(&p) == p;
        let sq = multiply_trig(c, c)?;
        let ps = project_center(&sq);
        idempotent &= project_center(&ps) == ps;
    }
    rows.push(row("P o P = P", "true".into(), idempotent.to_string()));

    let d = SpectralDecomposition::new(lambda0, REDUCTION_TRUNCATION)?;
    let pair = ProjectionPair::new(d.center_projection(), d.stable_projection())?;
    let t = transition_isomorphism(&pair, &pair)?;
    rows.push(row(
        "T at 9 = I",
        "true".into(),
        (t == LinearMapMatrix::identity(d.dimension())).to_string(),
    ));

    Ok(VerifyReport {
        rows: merge_alpha_rows(rows),
    })
}

/// Collapses the four alpha rows into one check named after the first
/// differing coefficient.
fn merge_alpha_rows(rows: Vec<CheckRow>) -> Vec<CheckRow> {
    let (alpha, rest): (Vec<CheckRow>, Vec<CheckRow>) =
        rows.into_iter().partition(|r| r.name.starts_with("alpha"));
    let expected = alpha
        .iter()
        .map(|r| r.expected.as_str())
        .collect::<Vec<_>>()
        .join(", ");
    let computed = alpha
        .iter()
        .map(|r| r.computed.as_str())
        .collect::<Vec<_>>()
        .join(", ");
    let name = match alpha.iter().find(|r| r.status == Status::Mismatch) {
        Some(r) => r.name.clone(),
        None => "alpha1..alpha4".into(),
    };
    let status = if alpha.iter().all(|r| r.status == Status::Exact) {
        Status::Exact
    } else {
        Status::Mismatch
    };
    let mut out = vec![CheckRow {
        name,
        expected,
        computed,
        status,
    }];
    out.extend(rest);
    out
}
