//! Brute-force verification, independent of the measure construction:
//! the empirical pushforward of the normalized Lebesgue measure on a
//! deterministic midpoint grid, its Kolmogorov distance to a computed
//! measure, and the tensor-product integral comparison.

use crate::expr::Expr;
use crate::measure::{self, MeasureError, YoungMeasure};
use crate::piecewise::PiecewiseFunction;
use crate::quad;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("sample count must be >= 1")]
    EmptySample,
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

impl From<crate::piecewise::PieceError> for OracleError {
    fn from(e: crate::piecewise::PieceError) -> Self {
        OracleError::Measure(MeasureError::Piece(e))
    }
}

/// Sorted multiset of `u(x_j)` over the midpoint grid; the discretized
/// pushforward distribution.
#[derive(Debug, Clone)]
pub struct EmpiricalDistribution {
    values: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Evaluates `u` at the `n` midpoints `x_j = lo + (j + 1/2)·|Ω|/n` and sorts
/// the values. No randomness: repeated runs are bit-identical.
pub fn empirical_pushforward(
    pf: &PiecewiseFunction,
    n_samples: usize,
) -> Result<EmpiricalDistribution, OracleError> {
    if n_samples == 0 {
        return Err(OracleError::EmptySample);
    }
    let lo = pf.omega().lo();
    let step = pf.omega().length() / n_samples as f64;
    let mut values = Vec::with_capacity(n_samples);
    for j in 0..n_samples {
        let x = lo + (j as f64 + 0.5) * step;
        values.push(pf.eval(x)?);
    }
    values.sort_unstable_by(f64::total_cmp);
    Ok(EmpiricalDistribution { values })
}

/// One-sample Kolmogorov–Smirnov statistic of the empirical distribution
/// against the mixed (atomic + continuous) CDF of `ym`:
/// `sup_y |F_N(y) - F(y)|`, evaluated just before and at every sorted
/// sample. `F(y⁻)` is obtained from `F(y)` by removing the atom weight
/// sitting exactly at `y`, so atomic measures are handled exactly.
pub fn kolmogorov_distance(
    emp: &EmpiricalDistribution,
    ym: &YoungMeasure,
) -> Result<f64, OracleError> {
    let n = emp.values.len() as f64;
    let mut sup = 0.0f64;
    let mut i = 0usize;
    while i < emp.values.len() {
        let v = emp.values[i];
        let mut j = i;
        while j + 1 < emp.values.len() && emp.values[j + 1] == v {
            j += 1;
        }
        let before = i as f64 / n;
        let through = (j + 1) as f64 / n;
        let f_at = ym.cdf(v)?;
        let f_before = f_at - ym.atom_weight_at(v);
        sup = sup.max((f_at - through).abs()).max((f_before - before).abs());
        i = j + 1;
    }
    Ok(sup)
}

/// Both sides of the tensor-product comparison for `h = α ⊗ β`:
/// the homogeneous-measure integral
/// `(1/|Ω|) ∫ α dx · ∫ β dν` and the elementary integral
/// `(1/|Ω|) ∫ α(x) β(u(x)) dx`.
///
/// With constant `α` the two sides coincide (this is the defining identity);
/// for non-constant `α` they genuinely differ and the pair is reported
/// without judgment.
pub fn tensor_integrals(
    pf: &PiecewiseFunction,
    alpha: &Expr,
    beta: &Expr,
) -> Result<(f64, f64), OracleError> {
    let omega = pf.omega();
    let mean_alpha = quad::adaptive(
        |x| alpha.evaluate(x),
        omega.lo(),
        omega.hi(),
        measure::QUAD_ABS_TOL,
        quad::max_panels(),
    )
    .map_err(MeasureError::Eval)?
    .value
        / omega.length();

    let ym = measure::compute(pf);
    let quasi_side = mean_alpha * ym.integrate(beta)?;

    let per_piece_tol = measure::QUAD_ABS_TOL / pf.pieces().len() as f64;
    let mut total = quad::NeumaierSum::new();
    for piece in pf.pieces() {
        let outcome = quad::adaptive(
            |x| -> Result<f64, MeasureError> {
                Ok(alpha.evaluate(x)? * beta.evaluate(piece.eval(x)?)?)
            },
            piece.domain.lo(),
            piece.domain.hi(),
            per_piece_tol,
            quad::max_panels(),
        )?;
        total.add(outcome.value);
    }
    let elementary_side = total.total() / omega.length();
    Ok((quasi_side, elementary_side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::compute;
    use crate::oscillation::{example_c, example_d};
    use crate::piecewise::{Direction, Interval, Piece};

    fn expr(s: &str) -> Expr {
        Expr::parse(s).unwrap()
    }

    fn identity_on_unit() -> PiecewiseFunction {
        PiecewiseFunction::new(
            Interval::new(0.0, 1.0).unwrap(),
            vec![Piece::monotone(
                Interval::new(0.0, 1.0).unwrap(),
                expr("x"),
                Direction::Increasing,
            )],
        )
        .unwrap()
    }

    #[test]
    fn midpoint_grid_for_the_identity() {
        let emp = empirical_pushforward(&identity_on_unit(), 4).unwrap();
        assert_eq!(emp.values(), &[0.125, 0.375, 0.625, 0.875]);
    }

    #[test]
    fn step_function_midpoint_counts() {
        // midpoints 1/6, 1/2, 5/6, 7/6, 3/2, 11/6 against the split at 2/3:
        // exactly two land below it
        let pf = example_d(1.0, 2.0, 1).unwrap();
        let emp = empirical_pushforward(&pf, 6).unwrap();
        assert_eq!(emp.values(), &[1.0, 1.0, 2.0, 2.0, 2.0, 2.0]);
    }

    #[test]
    fn constant_function_yields_a_constant_sample() {
        let pf = PiecewiseFunction::new(
            Interval::new(0.0, 1.0).unwrap(),
            vec![Piece::constant(Interval::new(0.0, 1.0).unwrap(), 0.3)],
        )
        .unwrap();
        let emp = empirical_pushforward(&pf, 10).unwrap();
        assert!(emp.values().iter().all(|&v| v == 0.3));
        assert!(matches!(
            empirical_pushforward(&pf, 0),
            Err(OracleError::EmptySample)
        ));
    }

    #[test]
    fn ecdf_is_a_step_function_from_zero_to_one() {
        let emp = empirical_pushforward(&example_c(1).unwrap(), 1000).unwrap();
        assert_eq!(emp.len(), 1000);
        for w in emp.values().windows(2) {
            assert!(w[0] <= w[1], "sorted");
        }
        assert!(emp.values()[0] >= -1.0 && emp.values()[999] <= 1.0);
    }

    #[test]
    fn ks_distance_of_identity_vs_uniform() {
        let pf = identity_on_unit();
        let ym = compute(&pf);
        let emp = empirical_pushforward(&pf, 1000).unwrap();
        let d = kolmogorov_distance(&emp, &ym).unwrap();
        assert!(d <= 1e-3 + 1e-9, "KS {d}");
        // the midpoint grid is off by exactly 1/(2N)
        assert!(d >= 4e-4, "KS {d} suspiciously small");
    }

    #[test]
    fn ks_distance_handles_atoms() {
        let pf = example_d(1.0, 2.0, 1).unwrap();
        let ym = compute(&pf);
        let emp = empirical_pushforward(&pf, 600).unwrap();
        let d = kolmogorov_distance(&emp, &ym).unwrap();
        assert!(d <= 2e-3, "KS {d}");
    }

    #[test]
    fn ks_distance_is_deterministic() {
        let pf = example_c(1).unwrap();
        let ym = compute(&pf);
        let a = kolmogorov_distance(&empirical_pushforward(&pf, 5000).unwrap(), &ym).unwrap();
        let b = kolmogorov_distance(&empirical_pushforward(&pf, 5000).unwrap(), &ym).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn tensor_reduces_to_the_identity_for_constant_alpha() {
        let pf = example_c(1).unwrap();
        let (quasi, elementary) = tensor_integrals(&pf, &expr("1"), &expr("y^2")).unwrap();
        assert!((quasi - elementary).abs() < 1e-8);
        assert!((quasi - 0.5).abs() < 1e-8);
    }

    #[test]
    fn tensor_sides_differ_for_nonconstant_alpha() {
        // α = x, β = y, u = x: (∫x)(∫y dν) = 1/4 but ∫x·x = 1/3
        let (quasi, elementary) =
            tensor_integrals(&identity_on_unit(), &expr("x"), &expr("y")).unwrap();
        assert!((quasi - 0.25).abs() < 1e-10);
        assert!((elementary - 1.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn constant_beta_factors_out() {
        let (quasi, elementary) =
            tensor_integrals(&identity_on_unit(), &expr("x"), &expr("1")).unwrap();
        assert!((quasi - 0.5).abs() < 1e-10);
        assert!((elementary - 0.5).abs() < 1e-10);
    }
}
