//! Fast-oscillating sequences and the example corpus.
//!
//! A generator `u` on ]0,1[ is squeezed into `c` copies: the k-th copy lives
//! on `](k-1)/c, k/c]` and evaluates `u(c·x - (k-1))`. The substitution is
//! performed symbolically on the expression trees, so dilated functions are
//! ordinary piecewise functions that serialize and re-validate. Their Young
//! measures coincide with the generator's.

use crate::expr::{add, mul, sub, Expr};
use crate::piecewise::{
    Direction, Interval, Piece, PieceBody, PiecewiseFunction, ValidationError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

/// A generating function on ]0,1[ into [0,1] together with a dilation count.
#[derive(Debug, Clone)]
pub struct OscillationSpec {
    generator: PiecewiseFunction,
    c: u32,
}

/// Slack allowed when checking that the generator maps ]0,1[ into [0,1];
/// image endpoints computed in floating point may stick out by rounding.
const UNIT_RANGE_SLACK: f64 = 1e-9;

impl OscillationSpec {
    pub fn new(generator: PiecewiseFunction, c: u32) -> Result<Self, BuildError> {
        if c < 1 {
            return Err(BuildError::InvalidParams("c must be >= 1".into()));
        }
        let om = generator.omega();
        if om.lo().abs() > 1e-12 || (om.hi() - 1.0).abs() > 1e-12 {
            return Err(BuildError::InvalidParams(format!(
                "generator domain must be ]0,1[, got ]{}, {}[",
                om.lo(),
                om.hi()
            )));
        }
        let k = generator.k_range();
        if k.lo() < -UNIT_RANGE_SLACK || k.hi() > 1.0 + UNIT_RANGE_SLACK {
            return Err(BuildError::InvalidParams(format!(
                "generator range must lie in [0,1], got [{}, {}]",
                k.lo(),
                k.hi()
            )));
        }
        Ok(OscillationSpec { generator, c })
    }

    pub fn generator(&self) -> &PiecewiseFunction {
        &self.generator
    }

    pub fn c(&self) -> u32 {
        self.c
    }
}

/// Builds the dilated function: `c` affine copies of the generator tiling
/// ]0,1[, each piece expression composed with `x ↦ c·x - (k-1)`.
pub fn dilate(spec: &OscillationSpec) -> Result<PiecewiseFunction, BuildError> {
    let c = spec.c as f64;
    let mut pieces = Vec::with_capacity(spec.generator.pieces().len() * spec.c as usize);
    for k in 0..spec.c {
        let shift = k as f64;
        // x ↦ c·x - shift, built once per copy
        let inner = sub(mul(Expr::Const(c), Expr::Var), Expr::Const(shift));
        for piece in spec.generator.pieces() {
            let domain = Interval::new(
                (piece.domain.lo() + shift) / c,
                (piece.domain.hi() + shift) / c,
            )?;
            let body = match &piece.body {
                PieceBody::Constant { value } => PieceBody::Constant { value: *value },
                PieceBody::Monotone { expr, direction } => PieceBody::Monotone {
                    expr: expr.substitute(&inner),
                    direction: *direction,
                },
            };
            pieces.push(Piece { domain, body });
        }
    }
    Ok(PiecewiseFunction::new(Interval::new(0.0, 1.0)?, pieces)?)
}

/// Affinely maps the domain onto `new_omega` and the value range onto
/// `new_k`. The Young measure of the result is the corresponding affine
/// pushforward of the original's.
pub fn rescale(
    pf: &PiecewiseFunction,
    new_omega: Interval,
    new_k: Interval,
) -> Result<PiecewiseFunction, BuildError> {
    let k = pf.k_range();
    if k.is_point() {
        return Err(BuildError::InvalidParams(
            "cannot rescale values of a function with a single-point range".into(),
        ));
    }
    let om = pf.omega();
    let sx = new_omega.length() / om.length();
    let sv = new_k.length() / k.length();

    // φ maps old x to new x; expressions are composed with φ⁻¹
    let phi = |x: f64| new_omega.lo() + (x - om.lo()) * sx;
    let inner = add(
        mul(
            sub(Expr::Var, Expr::Const(new_omega.lo())),
            Expr::Const(1.0 / sx),
        ),
        Expr::Const(om.lo()),
    );
    let psi_value = |v: f64| new_k.lo() + (v - k.lo()) * sv;

    let mut pieces = Vec::with_capacity(pf.pieces().len());
    for piece in pf.pieces() {
        let domain = Interval::new(phi(piece.domain.lo()), phi(piece.domain.hi()))?;
        let body = match &piece.body {
            PieceBody::Constant { value } => PieceBody::Constant {
                value: psi_value(*value),
            },
            PieceBody::Monotone { expr, direction } => {
                let composed = expr.substitute(&inner);
                let mapped = add(
                    mul(sub(composed, Expr::Const(k.lo())), Expr::Const(sv)),
                    Expr::Const(new_k.lo()),
                );
                PieceBody::Monotone {
                    expr: mapped,
                    direction: *direction,
                }
            }
        };
        pieces.push(Piece { domain, body });
    }
    Ok(PiecewiseFunction::new(new_omega, pieces)?)
}

// ---------------------------------------------------------------------------
// Example corpus
// ---------------------------------------------------------------------------

/// Symmetric triangular wave on ]0,a[ into [0,b] with `n` teeth: slopes
/// alternate between `2nb/a` and `-2nb/a`.
pub fn example_a(a: f64, b: f64, n: u32) -> Result<PiecewiseFunction, BuildError> {
    if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
        return Err(BuildError::InvalidParams(
            "example a requires a > 0 and b > 0".into(),
        ));
    }
    if n < 1 {
        return Err(BuildError::InvalidParams("n must be >= 1".into()));
    }
    let nf = n as f64;
    let slope = 2.0 * nf * b / a;
    // breakpoints 0, a/(2n), a/n, 3a/(2n), ... computed once
    let breakpoints: Vec<f64> = (0..=2 * n).map(|j| j as f64 * a / (2.0 * nf)).collect();
    let mut pieces = Vec::with_capacity(2 * n as usize);
    for k in 0..n {
        let kf = k as f64;
        let up = Interval::new(breakpoints[2 * k as usize], breakpoints[2 * k as usize + 1])?;
        pieces.push(Piece::monotone(
            up,
            sub(mul(Expr::Const(slope), Expr::Var), Expr::Const(2.0 * b * kf)),
            Direction::Increasing,
        ));
        let down = Interval::new(
            breakpoints[2 * k as usize + 1],
            breakpoints[2 * k as usize + 2],
        )?;
        pieces.push(Piece::monotone(
            down,
            add(
                mul(Expr::Const(-slope), Expr::Var),
                Expr::Const(2.0 * b * (kf + 1.0)),
            ),
            Direction::Decreasing,
        ));
    }
    Ok(PiecewiseFunction::new(Interval::new(0.0, a)?, pieces)?)
}

/// The asymmetric four-slope tooth on ]0,1[: 3x, (3/2)x + 1/4,
/// -(3/2)x + 7/4, -3x + 3.
pub fn generator_b() -> PiecewiseFunction {
    let breaks = [0.0, 1.0 / 6.0, 0.5, 5.0 / 6.0, 1.0];
    let mk = |i: usize, slope: f64, intercept: f64, dir: Direction| {
        Piece::monotone(
            Interval::new(breaks[i], breaks[i + 1]).unwrap(),
            add(
                mul(Expr::Const(slope), Expr::Var),
                Expr::Const(intercept),
            ),
            dir,
        )
    };
    PiecewiseFunction::new(
        Interval::new(0.0, 1.0).unwrap(),
        vec![
            mk(0, 3.0, 0.0, Direction::Increasing),
            mk(1, 1.5, 0.25, Direction::Increasing),
            mk(2, -1.5, 1.75, Direction::Decreasing),
            mk(3, -3.0, 3.0, Direction::Decreasing),
        ],
    )
    .expect("builtin generator is valid")
}

/// Periodic sequence member with `n` teeth shaped like [`generator_b`].
pub fn example_b(n: u32) -> Result<PiecewiseFunction, BuildError> {
    dilate(&OscillationSpec::new(generator_b(), n)?)
}

/// `sin(2πnx)` on ]0,1[, split into its `2n + 1` monotone pieces at the
/// critical points `(2k+1)/(4n)`.
pub fn example_c(n: u32) -> Result<PiecewiseFunction, BuildError> {
    if n < 1 {
        return Err(BuildError::InvalidParams("n must be >= 1".into()));
    }
    let nf = n as f64;
    let freq = mul(mul(Expr::Const(2.0 * nf), Expr::Pi), Expr::Var);
    let sine = Expr::Sin(Box::new(freq));
    let mut breakpoints = Vec::with_capacity(2 * n as usize + 2);
    breakpoints.push(0.0);
    for k in 0..2 * n {
        breakpoints.push((2.0 * k as f64 + 1.0) / (4.0 * nf));
    }
    breakpoints.push(1.0);
    let mut pieces = Vec::with_capacity(2 * n as usize + 1);
    for (j, w) in breakpoints.windows(2).enumerate() {
        let dir = if j % 2 == 0 {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        pieces.push(Piece::monotone(
            Interval::new(w[0], w[1])?,
            sine.clone(),
            dir,
        ));
    }
    Ok(PiecewiseFunction::new(Interval::new(0.0, 1.0)?, pieces)?)
}

/// Two-level step on ]0,2[: `a` on ]0, 2/3[ and `b` on [2/3, 2[, tiled `n`
/// times with the same 1:2 length split.
pub fn example_d(a: f64, b: f64, n: u32) -> Result<PiecewiseFunction, BuildError> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(BuildError::InvalidParams("a and b must be finite".into()));
    }
    if n < 1 {
        return Err(BuildError::InvalidParams("n must be >= 1".into()));
    }
    let nf = n as f64;
    let width = 2.0 / nf;
    let mut pieces = Vec::with_capacity(2 * n as usize);
    for k in 0..n {
        let lo = k as f64 * width;
        let split = lo + 2.0 / (3.0 * nf);
        let hi = (k as f64 + 1.0) * width;
        pieces.push(Piece::constant(Interval::new(lo, split)?, a));
        pieces.push(Piece::constant(Interval::new(split, hi)?, b));
    }
    Ok(PiecewiseFunction::new(Interval::new(0.0, 2.0)?, pieces)?)
}

/// Nonperiodic oscillation on ]0,1[: pieces `k = 1..k_max` with endpoints
/// `(k-1)/(n+k-1)` and `k/(n+k)`, alternating direction, each mapping onto
/// [0,1]; the infinite tail accumulating at 1 is replaced by a constant 0
/// piece carrying the leftover weight `n/(n+k_max)`.
pub fn example_e(n: u32, k_max: u32) -> Result<PiecewiseFunction, BuildError> {
    if n < 1 || k_max < 1 {
        return Err(BuildError::InvalidParams(
            "example e requires n >= 1 and k_max >= 1".into(),
        ));
    }
    let nf = n as f64;
    let mut pieces = Vec::with_capacity(k_max as usize + 1);
    for k in 1..=k_max {
        let kf = k as f64;
        let lo = (kf - 1.0) / (nf + kf - 1.0);
        let hi = kf / (nf + kf);
        let domain = Interval::new(lo, hi)?;
        let expr = if k % 2 == 1 {
            // (x(n+k-1) - k + 1) · (n+k)/n, increasing from 0 to 1
            mul(
                sub(
                    mul(Expr::Var, Expr::Const(nf + kf - 1.0)),
                    Expr::Const(kf - 1.0),
                ),
                Expr::Const((nf + kf) / nf),
            )
        } else {
            // (k - x(n+k)) · (n+k-1)/n, decreasing from 1 to 0
            mul(
                sub(Expr::Const(kf), mul(Expr::Var, Expr::Const(nf + kf))),
                Expr::Const((nf + kf - 1.0) / nf),
            )
        };
        let dir = if k % 2 == 1 {
            Direction::Increasing
        } else {
            Direction::Decreasing
        };
        pieces.push(Piece::monotone(domain, expr, dir));
    }
    let tail_lo = k_max as f64 / (nf + k_max as f64);
    pieces.push(Piece::constant(Interval::new(tail_lo, 1.0)?, 0.0));
    Ok(PiecewiseFunction::new(Interval::new(0.0, 1.0)?, pieces)?)
}

/// Partial sum `n Σ_{k=1..k_max} 1/((n+k-1)(n+k))`, which telescopes to
/// exactly `k_max / (n + k_max)`.
pub fn weight_sum(n: u32, k_max: u64) -> f64 {
    let nf = n as f64;
    let kf = k_max as f64;
    kf / (nf + kf)
}

/// Example tag accepted by the CLI front end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleTag {
    A,
    B,
    C,
    D,
    E,
}

impl std::str::FromStr for ExampleTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a" => Ok(ExampleTag::A),
            "b" => Ok(ExampleTag::B),
            "c" => Ok(ExampleTag::C),
            "d" => Ok(ExampleTag::D),
            "e" => Ok(ExampleTag::E),
            other => Err(format!("unknown example tag {other:?}, expected a|b|c|d|e")),
        }
    }
}

/// Parameters for the example builders; fields irrelevant to a tag are
/// ignored by it.
#[derive(Debug, Clone, Copy)]
pub struct ExampleParams {
    pub a: f64,
    pub b: f64,
    pub n: u32,
    pub k_max: u32,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams {
            a: 1.0,
            b: 2.0,
            n: 1,
            k_max: 1000,
        }
    }
}

pub fn build_example(
    tag: ExampleTag,
    params: &ExampleParams,
) -> Result<PiecewiseFunction, BuildError> {
    match tag {
        ExampleTag::A => example_a(params.a, params.b, params.n),
        ExampleTag::B => example_b(params.n),
        ExampleTag::C => example_c(params.n),
        ExampleTag::D => example_d(params.a, params.b, params.n),
        ExampleTag::E => example_e(params.n, params.k_max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{compute, pushforward_integral};
    use crate::quad::NeumaierSum;

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
    fn dilating_the_identity_gives_a_sawtooth() {
        let spec = OscillationSpec::new(identity_on_unit(), 3).unwrap();
        let saw = dilate(&spec).unwrap();
        assert_eq!(saw.pieces().len(), 3);
        // copy k evaluates 3x - k on ]k/3, (k+1)/3]
        for (k, x) in [(0u32, 0.2), (1, 0.5), (2, 0.9)] {
            let expected = 3.0 * x - k as f64;
            assert!((saw.eval(x).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn dilation_by_one_is_the_identity() {
        let gen = generator_b();
        let spec = OscillationSpec::new(gen.clone(), 1).unwrap();
        assert_eq!(dilate(&spec).unwrap(), gen);
    }

    #[test]
    fn example_b_has_n_teeth() {
        let pf = example_b(4).unwrap();
        assert_eq!(pf.pieces().len(), 16);
        // each tooth replays the generator shape
        let gen = generator_b();
        for x in [0.1f64, 0.4, 0.73] {
            let tooth = (x * 4.0).floor();
            let local = 4.0 * x - tooth;
            assert!((pf.eval(x).unwrap() - gen.eval(local).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn oscillation_leaves_the_measure_invariant() {
        let gen = generator_b();
        let base = compute(&gen);
        for c in [1u32, 3, 7] {
            let dil = dilate(&OscillationSpec::new(gen.clone(), c).unwrap()).unwrap();
            let ym = compute(&dil);
            for i in 0..200 {
                let y = (i as f64 + 0.5) / 200.0;
                let a = base.density_at(y).unwrap();
                let b = ym.density_at(y).unwrap();
                assert!((a - b).abs() < 1e-9, "c={c}, y={y}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn area_under_the_graph_is_preserved() {
        let gen = generator_b();
        let y = expr("y");
        let base = pushforward_integral(&gen, &y).unwrap();
        for c in [2u32, 5] {
            let dil = dilate(&OscillationSpec::new(gen.clone(), c).unwrap()).unwrap();
            let v = pushforward_integral(&dil, &y).unwrap();
            assert!((v - base).abs() < 1e-10, "c={c}: {v} vs {base}");
        }
    }

    #[test]
    fn rescale_identity_is_a_no_op() {
        let pf = identity_on_unit();
        let unit = Interval::new(0.0, 1.0).unwrap();
        let back = rescale(&pf, unit, unit).unwrap();
        assert_eq!(back, pf);
    }

    #[test]
    fn rescale_to_a_box_flattens_the_density() {
        // x on ]0,1[ rescaled to ]0,a[ × [0,b] becomes (b/a)x with density 1/b
        let pf = identity_on_unit();
        let scaled = rescale(
            &pf,
            Interval::new(0.0, 2.0).unwrap(),
            Interval::new(0.0, 5.0).unwrap(),
        )
        .unwrap();
        assert!((scaled.eval(1.0).unwrap() - 2.5).abs() < 1e-12);
        let ym = compute(&scaled);
        for i in 0..50 {
            let y = 5.0 * (i as f64 + 0.5) / 50.0;
            assert!((ym.density_at(y).unwrap() - 0.2).abs() < 1e-12);
        }
    }

    #[test]
    fn rescale_round_trip_is_the_identity_on_eval() {
        let pf = generator_b();
        let om = Interval::new(-1.0, 3.0).unwrap();
        let kk = Interval::new(2.0, 7.0).unwrap();
        let there = rescale(&pf, om, kk).unwrap();
        let back = rescale(
            &there,
            pf.omega(),
            Interval::new(pf.k_range().lo(), pf.k_range().hi()).unwrap(),
        )
        .unwrap();
        for i in 0..100 {
            let x = (i as f64 + 0.5) / 100.0;
            let a = pf.eval(x).unwrap();
            let b = back.eval(x).unwrap();
            assert!((a - b).abs() < 1e-10, "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn rescaling_a_unit_step_reproduces_example_d() {
        let unit_step = PiecewiseFunction::new(
            Interval::new(0.0, 1.0).unwrap(),
            vec![
                Piece::constant(Interval::new(0.0, 1.0 / 3.0).unwrap(), 0.0),
                Piece::constant(Interval::new(1.0 / 3.0, 1.0).unwrap(), 1.0),
            ],
        )
        .unwrap();
        let scaled = rescale(
            &unit_step,
            Interval::new(0.0, 2.0).unwrap(),
            Interval::new(1.0, 2.0).unwrap(),
        )
        .unwrap();
        let d = example_d(1.0, 2.0, 1).unwrap();
        for x in [0.2, 0.5, 1.0, 1.7] {
            assert_eq!(scaled.eval(x).unwrap(), d.eval(x).unwrap());
        }
        let ym = compute(&scaled);
        assert!((ym.atoms()[0].weight - 1.0 / 3.0).abs() < 1e-12);
        assert!((ym.atoms()[1].weight - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn example_a_matches_the_formula() {
        let pf = example_a(1.0, 1.0, 2).unwrap();
        assert_eq!(pf.pieces().len(), 4);
        // slopes ±4: at x=1/8 the first tooth is half way up
        assert!((pf.eval(0.125).unwrap() - 0.5).abs() < 1e-12);
        assert!((pf.eval(0.375).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(pf.k_range().lo(), 0.0);
        assert_eq!(pf.k_range().hi(), 1.0);
    }

    #[test]
    fn example_c_splits_at_critical_points() {
        let pf = example_c(1).unwrap();
        assert_eq!(pf.pieces().len(), 3);
        assert_eq!(pf.pieces()[0].domain.hi(), 0.25);
        assert_eq!(pf.pieces()[1].domain.hi(), 0.75);
        let pf2 = example_c(2).unwrap();
        assert_eq!(pf2.pieces().len(), 5);
    }

    #[test]
    fn example_d_step_and_atoms() {
        let pf = example_d(1.0, 2.0, 1).unwrap();
        let ym = compute(&pf);
        assert_eq!(ym.atoms().len(), 2);
        assert!((ym.atoms()[0].weight - 1.0 / 3.0).abs() < 1e-15);
        assert!((ym.atoms()[1].weight - 2.0 / 3.0).abs() < 1e-15);
        // tiling with n > 1 keeps the measure
        let ym3 = compute(&example_d(1.0, 2.0, 3).unwrap());
        assert_eq!(ym3.atoms().len(), 2);
        assert!((ym3.atoms()[0].weight - 1.0 / 3.0).abs() < 1e-12);
        assert!((ym3.atoms()[1].weight - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn example_e_pieces_map_onto_the_unit_interval() {
        let pf = example_e(2, 50).unwrap();
        assert_eq!(pf.pieces().len(), 51);
        for piece in pf.pieces().iter().take(50) {
            let img = piece.image().unwrap();
            assert!(img.lo().abs() < 1e-12, "image lo {}", img.lo());
            assert!((img.hi() - 1.0).abs() < 1e-12, "image hi {}", img.hi());
        }
        // tail atom carries n/(n+k_max)
        let ym = compute(&pf);
        assert_eq!(ym.atoms().len(), 1);
        assert!((ym.atoms()[0].weight - 2.0 / 52.0).abs() < 1e-12);
    }

    #[test]
    fn weight_sum_telescopes_exactly() {
        assert_eq!(weight_sum(2, 998), 0.998);
        assert_eq!(weight_sum(1, 1), 0.5);
        for n in 1..=10u32 {
            for k in [1u64, 7, 100, 12345, 1_000_000] {
                assert_eq!(weight_sum(n, k), k as f64 / (n as f64 + k as f64));
            }
            // limit value 1 to within 1e-5 at k = 10^6
            assert!((weight_sum(n, 1_000_000) - 1.0).abs() < 1e-5);
        }
    }

    #[test]
    fn weight_sum_agrees_with_the_naive_series() {
        // independent route: literally sum the series
        for (n, k_max) in [(1u32, 1u64), (1, 500), (2, 998), (7, 10_000)] {
            let nf = n as f64;
            let mut s = NeumaierSum::new();
            for k in 1..=k_max {
                let kf = k as f64;
                s.add(nf / ((nf + kf - 1.0) * (nf + kf)));
            }
            let direct = s.total();
            let closed = weight_sum(n, k_max);
            assert!(
                (direct - closed).abs() < 1e-12,
                "n={n}, k={k_max}: {direct} vs {closed}"
            );
        }
    }

    #[test]
    fn tail_weight_closes_to_one_exactly() {
        for n in 1..=10u32 {
            for k in [1u64, 10, 999, 65536] {
                let tail = 1.0 - weight_sum(n, k);
                assert_eq!(weight_sum(n, k) + tail, 1.0);
            }
        }
    }

    #[test]
    fn spec_rejects_bad_generators() {
        let on_two = example_d(0.2, 0.8, 1).unwrap(); // omega is ]0,2[
        assert!(OscillationSpec::new(on_two, 2).is_err());
        let big_values = example_d(1.0, 2.0, 1).unwrap();
        let unit = rescale(
            &big_values,
            Interval::new(0.0, 1.0).unwrap(),
            Interval::new(0.0, 3.0).unwrap(),
        )
        .unwrap();
        assert!(OscillationSpec::new(unit, 2).is_err()); // range [0,3] not in [0,1]
        assert!(OscillationSpec::new(identity_on_unit(), 0).is_err());
    }

    #[test]
    fn invalid_example_params_are_rejected() {
        assert!(example_a(-1.0, 1.0, 1).is_err());
        assert!(example_a(1.0, 0.0, 1).is_err());
        assert!(example_b(0).is_err());
        assert!(example_c(0).is_err());
        assert!(example_e(0, 10).is_err());
        assert!(example_e(1, 0).is_err());
    }
}
