//! Brute-force oracles shared by the integration tests. None of them call
//! into the solvers they are used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use orisearch::graph::{PartiteGraph, VertexId, WeightedPartiteGraph};
use orisearch::reductions::ColoringInstance;
use orisearch::solvers::CnfFormula;

/// Calls `f` on every full pick vector in lexicographic order; stops when
/// `f` returns true.
pub fn for_each_full_pick(groups: &[Vec<VertexId>], mut f: impl FnMut(&[VertexId]) -> bool) {
    let mut idx = vec![0usize; groups.len()];
    loop {
        let picks: Vec<VertexId> = idx.iter().zip(groups).map(|(&i, g)| g[i]).collect();
        if f(&picks) {
            return;
        }
        let mut pos = groups.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < groups[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn pairwise(picks: &[VertexId], g: &PartiteGraph) -> bool {
    picks.iter().enumerate().all(|(i, &u)| picks[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Lexicographically first n-clique, if any.
pub fn brute_clique(g: &PartiteGraph) -> Option<Vec<VertexId>> {
    let mut found = None;
    for_each_full_pick(g.groups(), |p| {
        if pairwise(p, g) {
            found = Some(p.to_vec());
        }
        found.is_some()
    });
    found
}

/// Largest number of pairwise adjacent picks, at most one per group.
pub fn brute_max_partial(g: &PartiteGraph) -> usize {
    // slot m stands for "no pick"
    let opts: Vec<Vec<Option<VertexId>>> =
        g.groups().iter().map(|grp| grp.iter().copied().map(Some).chain([None]).collect()).collect();
    let mut best = 0;
    let mut idx = vec![0usize; opts.len()];
    loop {
        let picks: Vec<VertexId> = idx.iter().zip(&opts).filter_map(|(&i, o)| o[i]).collect();
        if picks.len() > best && pairwise(&picks, g) {
            best = picks.len();
        }
        let mut pos = opts.len();
        loop {
            if pos == 0 {
                return best;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < opts[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Minimum clique weight and the lexicographically first optimal picks.
pub fn brute_min_clique(g: &WeightedPartiteGraph) -> (BigUint, Vec<VertexId>) {
    let mut best: Option<(BigUint, Vec<VertexId>)> = None;
    for_each_full_pick(g.base().groups(), |p| {
        let mut w = BigUint::zero();
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                w += g.weight(p[i], p[j]).expect("complete graph");
            }
        }
        if best.as_ref().is_none_or(|(b, _)| w < *b) {
            best = Some((w, p.to_vec()));
        }
        false
    });
    best.expect("at least one assignment")
}

fn bits(code: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| code >> i & 1 == 1).collect()
}

fn clause_holds(f: &CnfFormula, c: usize, vals: &[bool]) -> bool {
    f.clauses()[c].literals.iter().any(|l| vals[l.var as usize] == l.positive)
}

/// First satisfying assignment in binary counting order.
pub fn brute_sat(f: &CnfFormula) -> Option<Vec<bool>> {
    let n = f.num_vars();
    assert!(n <= 24, "exhaustive SAT oracle limited to 24 variables");
    (0..1u64 << n).map(|c| bits(c, n)).find(|v| (0..f.clauses().len()).all(|c| clause_holds(f, c, v)))
}

/// Minimum total weight of unsatisfied clauses (unweighted clauses count 1).
pub fn brute_min_unsat(f: &CnfFormula) -> BigUint {
    let n = f.num_vars();
    assert!(n <= 24, "exhaustive SAT oracle limited to 24 variables");
    (0..1u64 << n)
        .map(|code| {
            let v = bits(code, n);
            f.clauses()
                .iter()
                .enumerate()
                .filter(|&(c, _)| !clause_holds(f, c, &v))
                .map(|(_, cl)| cl.weight.clone().unwrap_or_else(BigUint::one))
                .sum::<BigUint>()
        })
        .min()
        .expect("at least one assignment")
}

pub fn brute_colorable(c: &ColoringInstance) -> bool {
    let n = c.vertex_count();
    let edges: Vec<(usize, usize)> = c.edges().collect();
    let mut colors = vec![0usize; n];
    loop {
        if edges.iter().all(|&(u, v)| colors[u] != colors[v]) {
            return true;
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            colors[pos] += 1;
            if colors[pos] < c.k() {
                break;
            }
            colors[pos] = 0;
        }
    }
}

/// Every triple (t, u, v) from three distinct groups satisfies
/// `w(t,u) <= beta·(w(t,v) + w(v,u)) + slack`.
pub fn relaxed_triangle_holds(g: &WeightedPartiteGraph, beta: u64, slack: u64) -> bool {
    let base = g.base();
    let total = base.vertex_count() as VertexId;
    let w = |a, b| g.weight(a, b).expect("cross pair").clone();
    for t in 0..total {
        for u in 0..total {
            for v in 0..total {
                let (gt, gu, gv) = (base.group_of(t), base.group_of(u), base.group_of(v));
                if gt == gu || gt == gv || gu == gv || t > u {
                    continue;
                }
                if w(t, u) > (w(t, v) + w(v, u)) * beta + slack {
                    return false;
                }
            }
        }
    }
    true
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Canonical `ax + by = c` through two distinct integer points, scaled so the
/// first nonzero of (a, b) is 1.
fn exact_line(p: (i64, i64), q: (i64, i64)) -> (BigRational, BigRational, BigRational) {
    let a = rat(q.1 - p.1);
    let b = rat(p.0 - q.0);
    let c = &a * rat(p.0) + &b * rat(p.1);
    let s = if !a.is_zero() { a.clone() } else { b.clone() };
    (a / &s, b / &s, c / s)
}

/// Violated general-position rules, checked exhaustively in exact
/// arithmetic. Rule 3 groups all spanned lines by their crossing points, so
/// every triple of concurrent spanned lines is covered.
pub fn general_position_violations(pts: &[(i64, i64)]) -> Vec<String> {
    let mut out = Vec::new();
    let n = pts.len();
    let cols: BTreeSet<i64> = pts.iter().map(|p| p.0).collect();
    if cols.len() != n {
        out.push("rule 1: repeated first coordinate".to_owned());
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (p, q, r) = (pts[i], pts[j], pts[k]);
                if (q.0 - p.0) as i128 * (r.1 - p.1) as i128 == (q.1 - p.1) as i128 * (r.0 - p.0) as i128 {
                    out.push(format!("rule 2: {p:?} {q:?} {r:?} collinear"));
                }
            }
        }
    }
    let mut lines = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            lines.push(exact_line(pts[i], pts[j]));
        }
    }
    let chosen: BTreeSet<(BigRational, BigRational)> = pts.iter().map(|&(x, y)| (rat(x), rat(y))).collect();
    let mut through: BTreeMap<(BigRational, BigRational), BTreeSet<usize>> = BTreeMap::new();
    for a in 0..lines.len() {
        for b in a + 1..lines.len() {
            let (l1, l2) = (&lines[a], &lines[b]);
            let det = &l1.0 * &l2.1 - &l2.0 * &l1.1;
            if det.is_zero() {
                continue;
            }
            let x = (&l1.2 * &l2.1 - &l2.2 * &l1.1) / &det;
            let y = (&l1.0 * &l2.2 - &l2.0 * &l1.2) / &det;
            let entry = through.entry((x, y)).or_default();
            entry.insert(a);
            entry.insert(b);
        }
    }
    for (x, ls) in &through {
        if ls.len() >= 3 && !chosen.contains(x) {
            out.push(format!("rule 3: {} spanned lines meet at unchosen ({}, {})", ls.len(), x.0, x.1));
        }
    }
    out
}

pub fn is_nonneg(v: &BigRational) -> bool {
    !v.is_negative()
}

/// Plain-array rotation helpers, independent of nalgebra.
pub mod mat {
    pub type M = [[f64; 3]; 3];

    pub fn rot_x(t: f64) -> M {
        let (s, c) = t.sin_cos();
        [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]
    }

    pub fn rot_z(t: f64) -> M {
        let (s, c) = t.sin_cos();
        [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
    }

    pub fn mul_vec(m: &M, v: [f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| (0..3).map(|k| m[i][k] * v[k]).sum())
    }

    pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    }

    pub fn row_major(m: &M) -> [f64; 9] {
        std::array::from_fn(|k| m[k / 3][k % 3])
    }

    fn wrap(a: f64) -> f64 {
        let t = a.rem_euclid(std::f64::consts::TAU);
        if t >= std::f64::consts::TAU {
            0.0
        } else {
            t
        }
    }

    /// Common-line angles straight from the definition.
    pub fn common_line(ri: &M, rj: &M) -> (f64, f64) {
        let d = cross(ri[2], rj[2]);
        let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        let d = d.map(|x| x / norm);
        let (a, b) = (mul_vec(ri, d), mul_vec(rj, d));
        (wrap(a[1].atan2(a[0])), wrap(b[1].atan2(b[0])))
    }
}

pub fn angle_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}
