//! Planar line arrangements, great circles and common-line angles.
//!
//! Planar code is generic over [`Field`] so the same verifier runs on exact
//! rationals (reduction gadgets) and on floats (everything sampled).

mod sphere;

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use sphere::{
    circle_to_line, circular_distance, common_line_angles, line_to_circle, normal_to_line, normalize_angle,
    verify_local_circle_arrangement, CircleReport, CircleViolation, LocalCircleInstance, Orientation,
};

/// Tolerance for orthogonality and parallelism tests on floats.
pub const EPS_DEGENERATE: f64 = 1e-12;

/// Contribution of one parallel (non-intersecting) constrained pair to [`arrangement_error`].
pub const PARALLEL_PENALTY: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("line coefficients a and b are both zero")]
    ZeroNormal,
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("great circle lies on the equator and has no central projection")]
    DegenerateProjection,
    #[error("projection planes are parallel; no unique common line")]
    ParallelPlanes,
    #[error("matrix is not a proper rotation: {0}")]
    NotRotation(&'static str),
    #[error("expected {expected} items, got {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("pair ({i},{j}) is out of range for n = {n}")]
    PairOutOfRange { i: usize, j: usize, n: usize },
    #[error("pair ({i},{j}) has {count} allowed entries, limit is {limit}")]
    TooManyEntries { i: usize, j: usize, count: usize, limit: usize },
    #[error("pair ({i},{j}) has no allowed intersection points")]
    EmptyAllowedSet { i: usize, j: usize },
    #[error("exponent q must be positive, got {0}")]
    InvalidExponent(f64),
}

/// Scalar types the planar geometry runs on.
pub trait Field: Clone + Debug + PartialEq + PartialOrd + Num + Signed + ToPrimitive {
    /// Whether a determinant or difference counts as zero.
    fn is_negligible(&self) -> bool;

    /// Canonical coefficients of `ax + by = c`, given `(a, b) != (0, 0)`.
    fn canonical_line(a: Self, b: Self, c: Self) -> [Self; 3];
}

impl Field for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < EPS_DEGENERATE
    }

    /// Unit normal whose first nonzero component is positive.
    fn canonical_line(a: f64, b: f64, c: f64) -> [f64; 3] {
        let norm = a.hypot(b);
        let sign = if a > 0.0 || (a == 0.0 && b > 0.0) { 1.0 } else { -1.0 };
        let k = sign / norm;
        [a * k, b * k, c * k]
    }
}

impl Field for BigRational {
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    /// Scales so the first nonzero of `(a, b)` is exactly 1.
    fn canonical_line(a: Self, b: Self, c: Self) -> [Self; 3] {
        let lead = if a.is_zero() { b.clone() } else { a.clone() };
        [a / &lead, b / &lead, c / lead]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Field> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn distance_squared(&self, other: &Self) -> T {
        let dx = self.x.clone() - other.x.clone();
        let dy = self.y.clone() - other.y.clone();
        dx.clone() * dx + dy.clone() * dy
    }
}

pub type ExactPoint = Point<BigRational>;

/// Line `{(x, y) : a x + b y = c}` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Line<T> {
    a: T,
    b: T,
    c: T,
}

pub type ExactLine = Line<BigRational>;

impl<T: Field> Line<T> {
    pub fn new(a: T, b: T, c: T) -> Result<Self, GeometryError> {
        if a.is_zero() && b.is_zero() {
            return Err(GeometryError::ZeroNormal);
        }
        let [a, b, c] = T::canonical_line(a, b, c);
        Ok(Self { a, b, c })
    }

    /// `y = slope * x + intercept`.
    pub fn slope_intercept(slope: T, intercept: T) -> Self {
        Self::new(-slope, T::one(), intercept).expect("b = 1")
    }

    pub fn horizontal(y: T) -> Self {
        Self::new(T::zero(), T::one(), y).expect("b = 1")
    }

    pub fn vertical(x: T) -> Self {
        Self::new(T::one(), T::zero(), x).expect("a = 1")
    }

    pub fn coefficients(&self) -> [&T; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        (self.a.clone() * p.x.clone() + self.b.clone() * p.y.clone() - self.c.clone()).is_negligible()
    }

    pub fn to_f64(&self) -> Line<f64> {
        let f = |v: &T| v.to_f64().unwrap_or(f64::NAN);
        Line::new(f(&self.a), f(&self.b), f(&self.c)).expect("canonical line keeps a nonzero normal")
    }
}

impl Line<f64> {
    pub fn from_array([a, b, c]: [f64; 3]) -> Result<Self, GeometryError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Self::new(a, b, c)
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Intersection<T> {
    Point(Point<T>),
    Parallel { coincident: bool },
}

/// Unique common point of two lines, or `Parallel` when the determinant vanishes.
pub fn line_intersection<T: Field>(l1: &Line<T>, l2: &Line<T>) -> Intersection<T> {
    let det = l1.a.clone() * l2.b.clone() - l2.a.clone() * l1.b.clone();
    if det.is_negligible() {
        // canonical normals of parallel lines agree, so only c can differ
        let coincident = (l1.c.clone() - l2.c.clone()).is_negligible();
        return Intersection::Parallel { coincident };
    }
    let x = (l1.c.clone() * l2.b.clone() - l2.c.clone() * l1.b.clone()) / det.clone();
    let y = (l1.a.clone() * l2.c.clone() - l2.a.clone() * l1.c.clone()) / det;
    Intersection::Point(Point { x, y })
}

/// Allowed intersection points per line pair.
///
/// Pairs absent from the map are unconstrained (they may even be parallel);
/// a present pair requires its lines to cross at one of the listed points.
#[derive(Debug, Clone, PartialEq)]
pub struct LineArrangementInstance<T> {
    n: usize,
    allowed: BTreeMap<(usize, usize), Vec<Point<T>>>,
}

pub type ExactLineInstance = LineArrangementInstance<BigRational>;

impl<T: Field> LineArrangementInstance<T> {
    pub fn new(n: usize, allowed: BTreeMap<(usize, usize), Vec<Point<T>>>) -> Result<Self, GeometryError> {
        for &(i, j) in allowed.keys() {
            if i >= j || j >= n {
                return Err(GeometryError::PairOutOfRange { i, j, n });
            }
        }
        Ok(Self { n, allowed })
    }

    /// Like [`LineArrangementInstance::new`] but with `|P_ij| <= limit`.
    pub fn with_limit(
        n: usize,
        allowed: BTreeMap<(usize, usize), Vec<Point<T>>>,
        limit: usize,
    ) -> Result<Self, GeometryError> {
        for (&(i, j), pts) in &allowed {
            if pts.len() > limit {
                return Err(GeometryError::TooManyEntries { i, j, count: pts.len(), limit });
            }
        }
        Self::new(n, allowed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest allowed set, i.e. the smallest valid `l`.
    pub fn l(&self) -> usize {
        self.allowed.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn allowed(&self) -> &BTreeMap<(usize, usize), Vec<Point<T>>> {
        &self.allowed
    }

    pub fn allowed_at(&self, i: usize, j: usize) -> Option<&[Point<T>]> {
        self.allowed.get(&(i, j)).map(Vec::as_slice)
    }

    pub fn to_f64(&self) -> LineArrangementInstance<f64> {
        let f = |v: &T| v.to_f64().unwrap_or(f64::NAN);
        let allowed = self
            .allowed
            .iter()
            .map(|(&k, pts)| (k, pts.iter().map(|p| Point { x: f(&p.x), y: f(&p.y) }).collect()))
            .collect();
        LineArrangementInstance { n: self.n, allowed }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LineViolation {
    Parallel { i: usize, j: usize },
    Missed { i: usize, j: usize },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ArrangementReport {
    pub violations: Vec<LineViolation>,
}

impl ArrangementReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

fn within<T: Field>(p: &Point<T>, q: &Point<T>, tol: f64) -> bool {
    let d2 = p.distance_squared(q);
    if tol == 0.0 {
        return d2.is_zero();
    }
    d2.to_f64().is_some_and(|d| d <= tol * tol)
}

/// Accepts iff every constrained pair of lines crosses within `tol` of an allowed point.
///
/// `tol = 0` demands an exact hit, which is meaningful for rational inputs.
pub fn verify_line_arrangement<T: Field>(
    lines: &[Line<T>],
    inst: &LineArrangementInstance<T>,
    tol: f64,
) -> Result<ArrangementReport, GeometryError> {
    if lines.len() != inst.n {
        return Err(GeometryError::CountMismatch { expected: inst.n, found: lines.len() });
    }
    let mut violations = Vec::new();
    for (&(i, j), pts) in &inst.allowed {
        match line_intersection(&lines[i], &lines[j]) {
            Intersection::Parallel { .. } => violations.push(LineViolation::Parallel { i, j }),
            Intersection::Point(p) => {
                if !pts.iter().any(|q| within(&p, q, tol)) {
                    violations.push(LineViolation::Missed { i, j });
                }
            }
        }
    }
    Ok(ArrangementReport { violations })
}

/// Sum over constrained pairs of `dist(actual crossing, nearest allowed point)^q`.
///
/// A parallel pair contributes [`PARALLEL_PENALTY`]. The result is exactly
/// zero iff every crossing hits an allowed point exactly.
pub fn arrangement_error<T: Field>(
    lines: &[Line<T>],
    inst: &LineArrangementInstance<T>,
    q: f64,
) -> Result<f64, GeometryError> {
    if q.is_nan() || q <= 0.0 {
        return Err(GeometryError::InvalidExponent(q));
    }
    if lines.len() != inst.n {
        return Err(GeometryError::CountMismatch { expected: inst.n, found: lines.len() });
    }
    let mut total = 0.0;
    for (&(i, j), pts) in &inst.allowed {
        if pts.is_empty() {
            return Err(GeometryError::EmptyAllowedSet { i, j });
        }
        let p = match line_intersection(&lines[i], &lines[j]) {
            Intersection::Parallel { .. } => {
                total += PARALLEL_PENALTY;
                continue;
            }
            Intersection::Point(p) => p,
        };
        let nearest = pts.iter().map(|a| p.distance_squared(a)).reduce(|a, b| if b < a { b } else { a });
        let d2 = nearest.expect("checked non-empty");
        if d2.is_zero() {
            continue;
        }
        let term = d2.to_f64().map_or(f64::INFINITY, |v| v.powf(q / 2.0));
        // a miss too small for f64 still has to keep the total nonzero
        total += if term > 0.0 { term } else { f64::MIN_POSITIVE };
    }
    Ok(total)
}
