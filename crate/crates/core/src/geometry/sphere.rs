use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use nalgebra::{Matrix3, Rotation3, Unit, Vector3};

use super::{GeometryError, Line, EPS_DEGENERATE};

/// Rotation taking lab coordinates to projection coordinates.
///
/// The projection plane's lab normal is the third row; the first two rows are
/// the in-plane reference axes. The plane's great circle is the unit circle
/// orthogonal to that normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    rotation: Matrix3<f64>,
}

impl Orientation {
    pub fn new(rotation: Matrix3<f64>) -> Result<Self, GeometryError> {
        if rotation.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let defect = (rotation * rotation.transpose() - Matrix3::identity()).amax();
        if defect > EPS_DEGENERATE {
            return Err(GeometryError::NotRotation("R·Rᵀ differs from the identity"));
        }
        if (rotation.determinant() - 1.0).abs() > EPS_DEGENERATE {
            return Err(GeometryError::NotRotation("determinant is not +1"));
        }
        Ok(Self { rotation })
    }

    pub fn identity() -> Self {
        Self { rotation: Matrix3::identity() }
    }

    /// Rotation by `angle` radians about `axis` (right-hand rule).
    pub fn about_axis(axis: &Vector3<f64>, angle: f64) -> Self {
        let r = Rotation3::from_axis_angle(&Unit::new_normalize(*axis), angle);
        Self { rotation: *r.matrix() }
    }

    pub fn from_row_major(m: [f64; 9]) -> Result<Self, GeometryError> {
        Self::new(Matrix3::from_row_slice(&m))
    }

    pub fn to_row_major(&self) -> [f64; 9] {
        let m = &self.rotation;
        [m[(0, 0)], m[(0, 1)], m[(0, 2)], m[(1, 0)], m[(1, 1)], m[(1, 2)], m[(2, 0)], m[(2, 1)], m[(2, 2)]]
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    /// Lab-frame normal of the projection plane.
    pub fn normal(&self) -> Vector3<f64> {
        self.rotation.row(2).transpose()
    }

    /// `R · Qᵀ`: the same particle seen after rotating the lab frame by `q`.
    pub fn relabel(&self, q: &Matrix3<f64>) -> Self {
        Self { rotation: self.rotation * q.transpose() }
    }
}

/// Maps an angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Central projection of the great circle with lab normal `n` onto the plane `z = 1`.
pub fn normal_to_line(n: &Vector3<f64>) -> Result<Line<f64>, GeometryError> {
    if n.x.hypot(n.y) < EPS_DEGENERATE * n.norm() {
        return Err(GeometryError::DegenerateProjection);
    }
    // n·(x, y, 1) = 0  <=>  n_x x + n_y y = -n_z
    Line::new(n.x, n.y, -n.z)
}

/// Central projection of an orientation's great circle onto the plane `z = 1`.
pub fn circle_to_line(o: &Orientation) -> Result<Line<f64>, GeometryError> {
    normal_to_line(&o.normal())
}

/// Unit normal of the great circle whose central projection is `l`.
pub fn line_to_circle(l: &Line<f64>) -> Unit<Vector3<f64>> {
    let [a, b, c] = l.to_array();
    Unit::new_normalize(Vector3::new(a, b, -c))
}

/// Angles of the directed common line in the in-plane frames of the two projections.
///
/// The common line is `d = unit(n_i × n_j)`; each angle is the polar angle of
/// `R·d` in the corresponding frame, in `[0, 2π)`.
pub fn common_line_angles(oi: &Orientation, oj: &Orientation) -> Result<(f64, f64), GeometryError> {
    let cross = oi.normal().cross(&oj.normal());
    let norm = cross.norm();
    if norm <= EPS_DEGENERATE {
        return Err(GeometryError::ParallelPlanes);
    }
    let d = cross / norm;
    let angle = |o: &Orientation| {
        let local = o.matrix() * d;
        normalize_angle(local.y.atan2(local.x))
    };
    Ok((angle(oi), angle(oj)))
}

/// Allowed common-line angle pairs for every constrained pair of projections.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalCircleInstance {
    n: usize,
    allowed: BTreeMap<(usize, usize), Vec<(f64, f64)>>,
}

impl LocalCircleInstance {
    /// Angles are normalized into `[0, 2π)`.
    pub fn new(n: usize, allowed: BTreeMap<(usize, usize), Vec<(f64, f64)>>) -> Result<Self, GeometryError> {
        let mut normalized = BTreeMap::new();
        for ((i, j), pairs) in allowed {
            if i >= j || j >= n {
                return Err(GeometryError::PairOutOfRange { i, j, n });
            }
            if pairs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
                return Err(GeometryError::NonFinite);
            }
            normalized
                .insert((i, j), pairs.into_iter().map(|(a, b)| (normalize_angle(a), normalize_angle(b))).collect());
        }
        Ok(Self { n, allowed: normalized })
    }

    pub fn with_limit(
        n: usize,
        allowed: BTreeMap<(usize, usize), Vec<(f64, f64)>>,
        limit: usize,
    ) -> Result<Self, GeometryError> {
        for (&(i, j), pairs) in &allowed {
            if pairs.len() > limit {
                return Err(GeometryError::TooManyEntries { i, j, count: pairs.len(), limit });
            }
        }
        Self::new(n, allowed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.allowed.values().map(Vec::len).max().unwrap_or(0)
    }

    pub fn allowed(&self) -> &BTreeMap<(usize, usize), Vec<(f64, f64)>> {
        &self.allowed
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleViolation {
    ParallelPlanes { i: usize, j: usize },
    Missed { i: usize, j: usize },
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CircleReport {
    pub violations: Vec<CircleViolation>,
}

impl CircleReport {
    pub fn accepted(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pair_hits(actual: (f64, f64), allowed: (f64, f64), tol: f64) -> bool {
    circular_distance(actual.0, allowed.0) <= tol && circular_distance(actual.1, allowed.1) <= tol
}

/// Accepts iff every constrained pair's common-line angles lie within `tol`
/// (per coordinate, on the circle) of an allowed pair. The mirrored pair
/// `(α_i + π, α_j + π)` of the reversed common line also counts.
pub fn verify_local_circle_arrangement(
    orients: &[Orientation],
    inst: &LocalCircleInstance,
    tol: f64,
) -> Result<CircleReport, GeometryError> {
    if orients.len() != inst.n {
        return Err(GeometryError::CountMismatch { expected: inst.n, found: orients.len() });
    }
    let mut violations = Vec::new();
    for (&(i, j), allowed) in &inst.allowed {
        let Ok(actual) = common_line_angles(&orients[i], &orients[j]) else {
            violations.push(CircleViolation::ParallelPlanes { i, j });
            continue;
        };
        let mirror = (normalize_angle(actual.0 + PI), normalize_angle(actual.1 + PI));
        if !allowed.iter().any(|&p| pair_hits(actual, p, tol) || pair_hits(mirror, p, tol)) {
            violations.push(CircleViolation::Missed { i, j });
        }
    }
    Ok(CircleReport { violations })
}
