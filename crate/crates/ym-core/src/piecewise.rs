//! Piecewise functions on a bounded open interval, built from strictly
//! monotone differentiable pieces and constant pieces.
//!
//! Boundary convention: each piece owns `[lo, hi)` of its stored domain and
//! the whole function lives on the open interval Ω, so the two outermost
//! endpoints are excluded. Shared breakpoints therefore belong to the piece
//! on the right. All integral quantities are insensitive to this choice.

use crate::expr::{EvalError, Expr, ParseError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Number of interior sample points used by default when checking the sign
/// of a piece derivative.
pub const DEFAULT_MONOTONICITY_SAMPLES: usize = 64;

/// A derivative sample may cross zero by at most this much in the wrong
/// direction before it counts as a monotonicity violation. Pieces obtained
/// by splitting at critical points have derivative exactly zero at their
/// endpoints, which must pass.
pub const MONOTONICITY_SIGN_TOLERANCE: f64 = 1e-9;

/// Floor on |u'| below which the inverse-derivative density is reported as a
/// singularity rather than a number.
pub const EPS_DERIVATIVE: f64 = 1e-12;

/// Default inversion tolerance as a fraction of the piece-domain length.
pub const DEFAULT_INVERT_TOL_FACTOR: f64 = 1e-12;

/// Nonempty bounded open interval `]lo, hi[`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, ValidationError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(ValidationError::BadInterval { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    /// Open containment, matching `]lo, hi[`.
    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

/// Closed interval `[lo, hi]` that may degenerate to a single point; used
/// for piece images and for the value range K.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedInterval {
    lo: f64,
    hi: f64,
}

impl ClosedInterval {
    pub fn point(v: f64) -> Self {
        ClosedInterval { lo: v, hi: v }
    }

    pub fn from_endpoints(a: f64, b: f64) -> Self {
        if a <= b {
            ClosedInterval { lo: a, hi: b }
        } else {
            ClosedInterval { lo: b, hi: a }
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, y: f64) -> bool {
        self.lo <= y && y <= self.hi
    }

    fn hull(&self, other: &ClosedInterval) -> ClosedInterval {
        ClosedInterval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Direction {
    fn sign(self) -> f64 {
        match self {
            Direction::Increasing => 1.0,
            Direction::Decreasing => -1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PieceBody {
    Monotone { expr: Expr, direction: Direction },
    Constant { value: f64 },
}

/// One piece of a piecewise function: a domain interval together with either
/// a strictly monotone differentiable expression or a constant value.
#[derive(Debug, Clone, PartialEq)]
pub struct Piece {
    pub domain: Interval,
    pub body: PieceBody,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ValidationError {
    #[error("interval [{lo}, {hi}] is not a nonempty finite open interval")]
    BadInterval { lo: f64, hi: f64 },
    #[error("piecewise function has no pieces")]
    EmptyPieces,
    #[error("pieces {first} and {second} overlap on ]{lo}, {hi}[")]
    Overlap {
        first: usize,
        second: usize,
        lo: f64,
        hi: f64,
    },
    #[error("domain gap: subinterval ]{lo}, {hi}[ is covered by no piece")]
    Gap { lo: f64, hi: f64 },
    #[error(
        "piece {piece} declared {declared:?} but derivative at x = {x} is {derivative}"
    )]
    MonotonicityViolation {
        piece: usize,
        declared: Direction,
        x: f64,
        derivative: f64,
    },
    #[error("piece {piece} is unbounded or undefined near x = {x}: {detail}")]
    UnboundedValue {
        piece: usize,
        x: f64,
        detail: String,
    },
    #[error("piece {piece} has a non-finite constant value")]
    NonFiniteConstant { piece: usize },
}

/// Failures of the pointwise piece operations.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum PieceError {
    #[error("y = {y} lies outside the piece image [{lo}, {hi}]")]
    OutOfImage { y: f64, lo: f64, hi: f64 },
    #[error("x = {x} lies outside the domain ]{lo}, {hi}[")]
    OutOfDomain { x: f64, lo: f64, hi: f64 },
    #[error("derivative magnitude {derivative} at x = {x} (y = {y}) is below {}; density blows up", EPS_DERIVATIVE)]
    Singularity { y: f64, x: f64, derivative: f64 },
    #[error("piece is constant; monotone-piece operation does not apply")]
    NotMonotone,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("piece {index}: bad expression: {source}")]
    Expr { index: usize, source: ParseError },
    #[error("bad number {text:?}: expected a decimal or a p/q fraction")]
    BadNumber { text: String },
    #[error("piece {index}: unknown direction {dir:?}, expected \"inc\" or \"dec\"")]
    UnknownDirection { index: usize, dir: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
}

impl Piece {
    pub fn monotone(domain: Interval, expr: Expr, direction: Direction) -> Self {
        Piece {
            domain,
            body: PieceBody::Monotone { expr, direction },
        }
    }

    pub fn constant(domain: Interval, value: f64) -> Self {
        Piece {
            domain,
            body: PieceBody::Constant { value },
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.body, PieceBody::Constant { .. })
    }

    /// Value of the piece at `x`; `x` is clamped to nothing, callers pick
    /// points inside the domain closure.
    pub fn eval(&self, x: f64) -> Result<f64, EvalError> {
        match &self.body {
            PieceBody::Monotone { expr, .. } => expr.evaluate(x),
            PieceBody::Constant { value } => Ok(*value),
        }
    }

    /// Closure of the piece image: the interval spanned by the endpoint
    /// limits for a monotone piece, a single point for a constant piece.
    pub fn image(&self) -> Result<ClosedInterval, EvalError> {
        match &self.body {
            PieceBody::Monotone { expr, .. } => {
                let a = expr.evaluate(self.domain.lo)?;
                let b = expr.evaluate(self.domain.hi)?;
                Ok(ClosedInterval::from_endpoints(a, b))
            }
            PieceBody::Constant { value } => Ok(ClosedInterval::point(*value)),
        }
    }

    /// Inverts a monotone piece by bisection: returns `x` in the domain
    /// closure with `u(x) = y` up to the local variation over `tol_x`.
    /// Monotonicity guarantees the bracket, so at most
    /// `ceil(log2(|domain| / tol_x))` iterations run.
    pub fn invert(&self, y: f64, tol_x: f64) -> Result<f64, PieceError> {
        let PieceBody::Monotone { expr, direction } = &self.body else {
            return Err(PieceError::NotMonotone);
        };
        let (mut xl, mut xr) = (self.domain.lo, self.domain.hi);
        let sign = direction.sign();
        let f_lo = expr.evaluate(xl)? * sign;
        let f_hi = expr.evaluate(xr)? * sign;
        let img = self.image()?;
        // tiny grace for values that round just past the image boundary
        let slack = 1e-12 * (img.length() + img.lo().abs().max(img.hi().abs()).max(1.0));
        if y < img.lo() - slack || y > img.hi() + slack {
            return Err(PieceError::OutOfImage {
                y,
                lo: img.lo(),
                hi: img.hi(),
            });
        }
        let target = (y * sign).clamp(f_lo, f_hi);
        let tol = tol_x.max(f64::EPSILON * self.domain.length());
        while xr - xl > tol {
            let mid = 0.5 * (xl + xr);
            if mid <= xl || mid >= xr {
                break;
            }
            if expr.evaluate(mid)? * sign < target {
                xl = mid;
            } else {
                xr = mid;
            }
        }
        Ok(0.5 * (xl + xr))
    }

    /// Default inversion used by the measure machinery.
    pub fn invert_default(&self, y: f64) -> Result<f64, PieceError> {
        self.invert(y, DEFAULT_INVERT_TOL_FACTOR * self.domain.length())
    }

    /// `|(u^{-1})'(y)| = 1 / |u'(u^{-1}(y))|` via the inverse-function rule.
    /// Reports a singularity when `|u'|` at the preimage falls below
    /// [`EPS_DERIVATIVE`] (critical values, e.g. a sine at its extremes).
    pub fn inverse_derivative_magnitude(&self, y: f64) -> Result<f64, PieceError> {
        MonotoneProfile::new(self)?.inverse_derivative(self, y)
    }
}

/// Cached analytic data for a monotone piece: its symbolic derivative plus
/// the image endpoints at which the derivative vanishes. Bisection cannot
/// reach the preimage of a critical value in floating point (the function is
/// flat to machine precision around it), so those values are recognized
/// directly instead. One ulp inside the image the density is large but
/// representable, so only exact hits count.
#[derive(Debug, Clone)]
pub struct MonotoneProfile {
    derivative: Expr,
    /// (endpoint x, image value, derivative there) for each endpoint where
    /// |u'| < EPS_DERIVATIVE
    singular_values: [Option<(f64, f64, f64)>; 2],
}

impl MonotoneProfile {
    pub fn new(piece: &Piece) -> Result<Self, PieceError> {
        let PieceBody::Monotone { expr, .. } = &piece.body else {
            return Err(PieceError::NotMonotone);
        };
        let derivative = expr.differentiate();
        let mut singular_values = [None, None];
        for (slot, x_end) in [piece.domain.lo(), piece.domain.hi()].into_iter().enumerate() {
            let d = derivative.evaluate(x_end)?;
            if d.abs() < EPS_DERIVATIVE {
                singular_values[slot] = Some((x_end, expr.evaluate(x_end)?, d));
            }
        }
        Ok(MonotoneProfile {
            derivative,
            singular_values,
        })
    }

    pub fn derivative(&self) -> &Expr {
        &self.derivative
    }

    /// `|(u^{-1})'(y)|` for the given piece (which must be the piece this
    /// profile was built from).
    pub fn inverse_derivative(&self, piece: &Piece, y: f64) -> Result<f64, PieceError> {
        for entry in self.singular_values.iter().flatten() {
            let (x_end, y_end, d_end) = *entry;
            if y == y_end {
                return Err(PieceError::Singularity {
                    y,
                    x: x_end,
                    derivative: d_end,
                });
            }
        }
        let x = piece.invert_default(y)?;
        let d = self.derivative.evaluate(x)?;
        if d.abs() < EPS_DERIVATIVE {
            return Err(PieceError::Singularity {
                y,
                x,
                derivative: d,
            });
        }
        Ok(1.0 / d.abs())
    }

    /// True when `y_end` is one of the piece's critical image values.
    pub fn is_singular_at(&self, y_end: f64) -> bool {
        self.singular_values
            .iter()
            .flatten()
            .any(|(_, v, _)| y_end == *v)
    }
}

/// Validated piecewise function `u: Ω → K`.
///
/// Invariants established at construction: pieces are sorted, pairwise
/// disjoint, their domain closures tile the closure of Ω, monotone pieces
/// have the declared derivative sign at all sample points, and `k_range` is
/// the smallest closed interval containing every piece image.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFunction {
    omega: Interval,
    pieces: Vec<Piece>,
    k_range: ClosedInterval,
}

impl PiecewiseFunction {
    pub fn new(omega: Interval, pieces: Vec<Piece>) -> Result<Self, ValidationError> {
        Self::with_validation(omega, pieces, DEFAULT_MONOTONICITY_SAMPLES)
    }

    pub fn with_validation(
        omega: Interval,
        mut pieces: Vec<Piece>,
        samples_per_piece: usize,
    ) -> Result<Self, ValidationError> {
        if pieces.is_empty() {
            return Err(ValidationError::EmptyPieces);
        }
        pieces.sort_by(|a, b| a.domain.lo.total_cmp(&b.domain.lo));
        let pf = PiecewiseFunction {
            omega,
            k_range: ClosedInterval::point(0.0),
            pieces,
        };
        pf.validate(samples_per_piece)?;
        let mut k_range: Option<ClosedInterval> = None;
        for piece in &pf.pieces {
            let img = piece.image().expect("validated piece evaluates");
            k_range = Some(match k_range {
                Some(k) => k.hull(&img),
                None => img,
            });
        }
        Ok(PiecewiseFunction {
            k_range: k_range.expect("nonempty pieces"),
            ..pf
        })
    }

    /// Re-checks every construction invariant, sampling each piece
    /// derivative at `samples_per_piece` equally spaced interior points plus
    /// both endpoints (one-sided limits).
    pub fn validate(&self, samples_per_piece: usize) -> Result<(), ValidationError> {
        if self.pieces.is_empty() {
            return Err(ValidationError::EmptyPieces);
        }
        let tol = 1e-12 * self.omega.length();

        // partition conditions: piece domains tile the closure of omega
        let first = &self.pieces[0];
        if first.domain.lo > self.omega.lo + tol {
            return Err(ValidationError::Gap {
                lo: self.omega.lo,
                hi: first.domain.lo,
            });
        }
        for (i, pair) in self.pieces.windows(2).enumerate() {
            let (a, b) = (&pair[0], &pair[1]);
            if b.domain.lo < a.domain.hi - tol {
                return Err(ValidationError::Overlap {
                    first: i,
                    second: i + 1,
                    lo: b.domain.lo,
                    hi: a.domain.hi.min(b.domain.hi),
                });
            }
            if b.domain.lo > a.domain.hi + tol {
                return Err(ValidationError::Gap {
                    lo: a.domain.hi,
                    hi: b.domain.lo,
                });
            }
        }
        let last = self.pieces.last().unwrap();
        if last.domain.hi < self.omega.hi - tol {
            return Err(ValidationError::Gap {
                lo: last.domain.hi,
                hi: self.omega.hi,
            });
        }

        for (i, piece) in self.pieces.iter().enumerate() {
            match &piece.body {
                PieceBody::Constant { value } => {
                    if !value.is_finite() {
                        return Err(ValidationError::NonFiniteConstant { piece: i });
                    }
                }
                PieceBody::Monotone { expr, direction } => {
                    let derivative = expr.differentiate();
                    let (lo, hi) = (piece.domain.lo, piece.domain.hi);
                    let n = samples_per_piece.max(1);
                    let step = (hi - lo) / (n as f64 + 1.0);
                    let sample_points =
                        std::iter::once(lo)
                            .chain((1..=n).map(move |j| lo + step * j as f64))
                            .chain(std::iter::once(hi));
                    for x in sample_points {
                        let value = expr.evaluate(x).map_err(|e| {
                            ValidationError::UnboundedValue {
                                piece: i,
                                x,
                                detail: e.to_string(),
                            }
                        })?;
                        if !value.is_finite() {
                            return Err(ValidationError::UnboundedValue {
                                piece: i,
                                x,
                                detail: "non-finite value".into(),
                            });
                        }
                        let d = derivative.evaluate(x).map_err(|e| {
                            ValidationError::UnboundedValue {
                                piece: i,
                                x,
                                detail: format!("derivative: {e}"),
                            }
                        })?;
                        if d * direction.sign() < -MONOTONICITY_SIGN_TOLERANCE {
                            return Err(ValidationError::MonotonicityViolation {
                                piece: i,
                                declared: *direction,
                                x,
                                derivative: d,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn omega(&self) -> Interval {
        self.omega
    }

    pub fn k_range(&self) -> ClosedInterval {
        self.k_range
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Evaluates `u(x)` for `x` in Ω. Each interior breakpoint belongs to
    /// the piece on its right.
    pub fn eval(&self, x: f64) -> Result<f64, PieceError> {
        if !self.omega.contains(x) {
            return Err(PieceError::OutOfDomain {
                x,
                lo: self.omega.lo,
                hi: self.omega.hi,
            });
        }
        let idx = self
            .pieces
            .partition_point(|p| p.domain.lo <= x)
            .saturating_sub(1);
        Ok(self.pieces[idx].eval(x)?)
    }

    // ------------------------------------------------------------------
    // JSON schema
    // ------------------------------------------------------------------

    pub fn from_json(text: &str) -> Result<Self, LoadError> {
        let raw: PiecewiseJson = serde_json::from_str(text)?;
        let omega = Interval::new(raw.omega[0].value()?, raw.omega[1].value()?)?;
        let mut pieces = Vec::with_capacity(raw.pieces.len());
        for (index, pj) in raw.pieces.into_iter().enumerate() {
            let domain = Interval::new(pj.interval[0].value()?, pj.interval[1].value()?)?;
            let piece = match (pj.expr, pj.constant) {
                (Some(src), None) => {
                    let expr = Expr::parse(&src)
                        .map_err(|source| LoadError::Expr { index, source })?;
                    let dir = match pj.monotone.as_deref() {
                        Some("inc") => Direction::Increasing,
                        Some("dec") => Direction::Decreasing,
                        other => {
                            return Err(LoadError::UnknownDirection {
                                index,
                                dir: other.unwrap_or("<missing>").to_string(),
                            })
                        }
                    };
                    Piece::monotone(domain, expr, dir)
                }
                (None, Some(num)) => Piece::constant(domain, num.value()?),
                _ => {
                    return Err(LoadError::UnknownDirection {
                        index,
                        dir: "piece must have exactly one of `expr` or `const`".into(),
                    })
                }
            };
            pieces.push(piece);
        }
        Ok(Self::new(omega, pieces)?)
    }

    pub fn to_json(&self) -> String {
        let raw = PiecewiseJson {
            omega: [
                NumOrFraction::Num(self.omega.lo),
                NumOrFraction::Num(self.omega.hi),
            ],
            pieces: self
                .pieces
                .iter()
                .map(|p| {
                    let interval = [
                        NumOrFraction::Num(p.domain.lo),
                        NumOrFraction::Num(p.domain.hi),
                    ];
                    match &p.body {
                        PieceBody::Monotone { expr, direction } => PieceJson {
                            interval,
                            expr: Some(expr.to_string()),
                            monotone: Some(
                                match direction {
                                    Direction::Increasing => "inc",
                                    Direction::Decreasing => "dec",
                                }
                                .to_string(),
                            ),
                            constant: None,
                        },
                        PieceBody::Constant { value } => PieceJson {
                            interval,
                            expr: None,
                            monotone: None,
                            constant: Some(NumOrFraction::Num(*value)),
                        },
                    }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("schema serializes")
    }
}

/// Number in the JSON schema: either a plain JSON number or a string
/// carrying an exact fraction such as `"2/3"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum NumOrFraction {
    Num(f64),
    Text(String),
}

impl NumOrFraction {
    fn value(&self) -> Result<f64, LoadError> {
        match self {
            NumOrFraction::Num(v) => Ok(*v),
            NumOrFraction::Text(s) => {
                let t = s.trim();
                if let Some((p, q)) = t.split_once('/') {
                    let p: f64 = p.trim().parse().map_err(|_| LoadError::BadNumber {
                        text: s.clone(),
                    })?;
                    let q: f64 = q.trim().parse().map_err(|_| LoadError::BadNumber {
                        text: s.clone(),
                    })?;
                    if q == 0.0 {
                        return Err(LoadError::BadNumber { text: s.clone() });
                    }
                    Ok(p / q)
                } else {
                    t.parse().map_err(|_| LoadError::BadNumber { text: s.clone() })
                }
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PieceJson {
    interval: [NumOrFraction; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    expr: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monotone: Option<String>,
    #[serde(rename = "const", skip_serializing_if = "Option::is_none")]
    constant: Option<NumOrFraction>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PiecewiseJson {
    omega: [NumOrFraction; 2],
    pieces: Vec<PieceJson>,
}
