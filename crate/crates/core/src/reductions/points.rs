//! Integer points whose dual lines are in general position.
//!
//! A point `(g, h)` stands for the line `y = g x + h`. Points are chosen one
//! per column `g = 0, 1, 2, …`, each time taking the least `h >= 0` such that
//!
//! 1. every chosen point has its own column,
//! 2. no line passes through three chosen points, and
//! 3. three lines, each through two chosen points, meet in a common point
//!    only if that point is itself chosen.
//!
//! Arithmetic is exact integer arithmetic with overflow checks.

use std::collections::BTreeSet;

/// Chosen points plus, per column, how many candidates were rejected before
/// the accepted one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralPositionPoints {
    pub points: Vec<(i64, i64)>,
    pub rejected: Vec<u64>,
}

/// Worst-case number of rejected candidates in column `k`:
/// `C(k,2) + (k-4)·C(k,4)`.
pub fn column_scan_bound(k: u64) -> u128 {
    let k = k as i128;
    let c2 = k * (k - 1) / 2;
    let c4 = if k >= 4 { k * (k - 1) * (k - 2) * (k - 3) / 24 } else { 0 };
    (c2 + (k - 4) * c4).max(0) as u128
}

// Line a x + b y = c through two integer points.
#[derive(Clone, Copy)]
struct IntLine {
    a: i128,
    b: i128,
    c: i128,
}

fn through(p: (i128, i128), q: (i128, i128)) -> IntLine {
    let a = q.1 - p.1;
    let b = p.0 - q.0;
    IntLine { a, b, c: mul(a, p.0) + mul(b, p.1) }
}

fn mul(x: i128, y: i128) -> i128 {
    x.checked_mul(y).expect("point coordinates overflow i128")
}

fn sub(x: i128, y: i128) -> i128 {
    x.checked_sub(y).expect("point coordinates overflow i128")
}

/// Where the line through `q` and the rational point `(nx/d, ny/d)`, `d > 0`,
/// crosses column `k`, if that height is a non-negative integer.
fn column_hit(q: (i128, i128), nx: i128, ny: i128, d: i128, k: i128) -> Option<i64> {
    let den = sub(nx, mul(q.0, d));
    if den == 0 {
        return None;
    }
    let num = mul(sub(ny, mul(q.1, d)), k - q.0);
    if num % den != 0 {
        return None;
    }
    let h = q.1 + num / den;
    (h >= 0).then(|| i64::try_from(h).expect("height fits i64"))
}

/// Generates `count` points satisfying the three selection rules.
pub fn generate_general_position_points(count: usize) -> GeneralPositionPoints {
    let mut points: Vec<(i128, i128)> = Vec::with_capacity(count);
    let mut rejected = Vec::with_capacity(count);
    for col in 0..count {
        let k = col as i128;
        let bad = infeasible_heights(&points, k);
        let h = (0..).find(|h| !bad.contains(h)).expect("finitely many infeasible heights");
        rejected.push(h as u64);
        points.push((k, h as i128));
    }
    GeneralPositionPoints { points: points.into_iter().map(|(g, h)| (g as i64, h as i64)).collect(), rejected }
}

/// Heights in column `k` that would break rule 2 or rule 3.
fn infeasible_heights(points: &[(i128, i128)], k: i128) -> BTreeSet<i64> {
    let mut bad = BTreeSet::new();
    let n = points.len();

    // rule 2: the new point may not lie on a line through two chosen points
    for i in 0..n {
        for j in i + 1..n {
            if let Some(h) = column_hit(points[i], points[j].0, points[j].1, 1, k) {
                bad.insert(h);
            }
        }
    }

    // rule 3: a new line through a chosen point q may not pass through the
    // crossing of two chosen-point lines unless that crossing is chosen.
    // Lines sharing an endpoint cross at that chosen endpoint, so only
    // lines spanned by four distinct points matter.
    let quads = (0..n).flat_map(|a| {
        (a + 1..n).flat_map(move |b| (b + 1..n).flat_map(move |c| (c + 1..n).map(move |d| [a, b, c, d])))
    });
    for [a, b, c, d] in quads {
        for (p1, p2, p3, p4) in [(a, b, c, d), (a, c, b, d), (a, d, b, c)] {
            let l1 = through(points[p1], points[p2]);
            let l2 = through(points[p3], points[p4]);
            let mut det = sub(mul(l1.a, l2.b), mul(l2.a, l1.b));
            if det == 0 {
                continue;
            }
            let mut nx = sub(mul(l1.c, l2.b), mul(l2.c, l1.b));
            let mut ny = sub(mul(l1.a, l2.c), mul(l2.a, l1.c));
            if det < 0 {
                (det, nx, ny) = (-det, -nx, -ny);
            }
            if points.iter().any(|&(x, y)| mul(x, det) == nx && mul(y, det) == ny) {
                continue;
            }
            for (q, &pt) in points.iter().enumerate() {
                if q == a || q == b || q == c || q == d {
                    continue;
                }
                if let Some(h) = column_hit(pt, nx, ny, det, k) {
                    bad.insert(h);
                }
            }
        }
    }
    bad
}
