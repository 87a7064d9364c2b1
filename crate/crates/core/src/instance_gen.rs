//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64(seed)`; each
//! purpose (orientation draws, decoys, shuffles, ...) reads its own stream
//! via `set_stream`, so adding draws for one purpose never shifts another.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use nalgebra::{Quaternion, UnitQuaternion, Vector3};
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::geometry::{circular_distance, common_line_angles, normalize_angle, LocalCircleInstance, Orientation};
use crate::graph::{Assignment, PartiteGraph, VertexId, Weight, WeightedPartiteGraph};
use crate::reductions::ColoringInstance;
use crate::solvers::{Clause, CnfFormula, Literal};

/// Fixed integer scale applied to real distances in metric instances.
pub const METRIC_SCALE: f64 = 1e6;

/// Decoys closer than this (on both angles) to the true pair or its mirror
/// are redrawn; twice the planted-instance verifier tolerance.
pub const DECOY_EXCLUSION: f64 = 2e-6;

mod stream {
    pub const ORIENTATIONS: u64 = 1;
    pub const NOISE: u64 = 2;
    pub const DECOYS: u64 = 3;
    pub const SHUFFLE: u64 = 4;
    pub const PLANT: u64 = 5;
    pub const EDGES: u64 = 6;
    pub const POINTS: u64 = 7;
    pub const CLAUSES: u64 = 8;
    pub const WEIGHTS: u64 = 9;
}

fn rng(seed: u64, purpose: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(purpose);
    r
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParam(&'static str),
}

/// Where a generated instance came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub seed: u64,
    pub params: BTreeMap<String, Value>,
}

impl Provenance {
    pub fn new(generator: &str, seed: u64, params: Value) -> Self {
        let params = match params {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Self { generator: generator.to_owned(), seed, params }
    }
}

/// A generated instance with a known feasible solution.
#[derive(Debug, Clone, PartialEq)]
pub struct PlantedInstance<I, T> {
    pub instance: I,
    pub ground_truth: T,
    pub provenance: Provenance,
}

fn check(ok: bool, what: &'static str) -> Result<(), GenError> {
    if ok {
        Ok(())
    } else {
        Err(GenError::InvalidParam(what))
    }
}

fn check_prob(p: f64) -> Result<(), GenError> {
    check((0.0..=1.0).contains(&p), "edge probability must lie in [0, 1]")
}

fn draw_orientation(r: &mut ChaCha8Rng) -> Orientation {
    loop {
        let q: [f64; 4] = std::array::from_fn(|_| r.sample(StandardNormal));
        let quat = Quaternion::new(q[0], q[1], q[2], q[3]);
        if quat.norm() < 1e-9 {
            continue;
        }
        let rot = UnitQuaternion::from_quaternion(quat).to_rotation_matrix().into_inner();
        if let Ok(o) = Orientation::new(rot) {
            return o;
        }
    }
}

/// Uniformly distributed rotations from normalized Gaussian quaternions.
pub fn random_orientations(n: usize, seed: u64) -> Vec<Orientation> {
    let mut r = rng(seed, stream::ORIENTATIONS);
    (0..n).map(|_| draw_orientation(&mut r)).collect()
}

/// Rotates the projection frame in its own plane by `delta`; every common
/// line angle on this orientation shifts by `delta`.
pub fn rotate_in_plane(o: &Orientation, delta: f64) -> Orientation {
    let spin = UnitQuaternion::from_axis_angle(&Vector3::z_axis(), delta).to_rotation_matrix().into_inner();
    Orientation::new(spin * o.matrix()).expect("product of rotations")
}

fn near_pair(a: (f64, f64), b: (f64, f64), eps: f64) -> bool {
    circular_distance(a.0, b.0) <= eps && circular_distance(a.1, b.1) <= eps
}

/// Common-line instance with planted orientations. Each `P_ij` holds the
/// true angle pair (perturbed by uniform `±noise` per angle) and `l − 1`
/// uniform decoys, in shuffled order.
pub fn planted_common_line_instance(
    n: usize,
    l: usize,
    noise: f64,
    seed: u64,
) -> Result<PlantedInstance<LocalCircleInstance, Vec<Orientation>>, GenError> {
    check(n >= 1, "n must be at least 1")?;
    check(l >= 1, "l must be at least 1")?;
    check(noise >= 0.0 && noise.is_finite(), "noise must be finite and non-negative")?;

    let mut orient_rng = rng(seed, stream::ORIENTATIONS);
    let mut orients: Vec<Orientation> = Vec::with_capacity(n);
    while orients.len() < n {
        let o = draw_orientation(&mut orient_rng);
        // a plane parallel to an earlier one has no common line
        if orients.iter().all(|p| common_line_angles(p, &o).is_ok()) {
            orients.push(o);
        }
    }

    let (mut noise_rng, mut decoy_rng, mut shuffle_rng) =
        (rng(seed, stream::NOISE), rng(seed, stream::DECOYS), rng(seed, stream::SHUFFLE));
    let mut allowed = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let truth = common_line_angles(&orients[i], &orients[j]).expect("checked above");
            let mut jitter = || if noise > 0.0 { noise_rng.random_range(-noise..=noise) } else { 0.0 };
            let planted = (normalize_angle(truth.0 + jitter()), normalize_angle(truth.1 + jitter()));
            let mirror =
                (normalize_angle(truth.0 + std::f64::consts::PI), normalize_angle(truth.1 + std::f64::consts::PI));
            let mut pairs = vec![planted];
            while pairs.len() < l {
                let d = (decoy_rng.random_range(0.0..TAU), decoy_rng.random_range(0.0..TAU));
                if !near_pair(d, truth, DECOY_EXCLUSION) && !near_pair(d, mirror, DECOY_EXCLUSION) {
                    pairs.push(d);
                }
            }
            pairs.shuffle(&mut shuffle_rng);
            allowed.insert((i, j), pairs);
        }
    }
    let instance = LocalCircleInstance::with_limit(n, allowed, l).expect("angles normalized and within limit");
    Ok(PlantedInstance {
        instance,
        ground_truth: orients,
        provenance: Provenance::new(
            "planted_common_line",
            seed,
            json!({ "n": n, "l": l, "noise": noise, "decoys": l - 1 }),
        ),
    })
}

fn uniform_sizes(n: usize, m: usize) -> Result<Vec<usize>, GenError> {
    check(n >= 1, "n must be at least 1")?;
    check(m >= 1, "m must be at least 1")?;
    Ok(vec![m; n])
}

/// Partite graph with a planted n-clique; every other cross pair is an edge
/// with probability `edge_prob`.
pub fn planted_partite_clique(
    n: usize,
    m: usize,
    edge_prob: f64,
    seed: u64,
) -> Result<PlantedInstance<PartiteGraph, Assignment>, GenError> {
    let sizes = uniform_sizes(n, m)?;
    check_prob(edge_prob)?;
    let mut plant_rng = rng(seed, stream::PLANT);
    let picks: Vec<VertexId> = (0..n).map(|g| (g * m + plant_rng.random_range(0..m)) as VertexId).collect();
    let mut edge_rng = rng(seed, stream::EDGES);
    let g = PartiteGraph::from_fn(&sizes, |u, v| {
        let coin = edge_rng.random_bool(edge_prob);
        coin || (picks.contains(&u) && picks.contains(&v))
    })
    .expect("uniform groups are valid");
    Ok(PlantedInstance {
        instance: g,
        ground_truth: Assignment::full(picks),
        provenance: Provenance::new("planted_partite_clique", seed, json!({ "n": n, "m": m, "edge_prob": edge_prob })),
    })
}

/// Uniform random n,m-partite graph.
pub fn random_partite(n: usize, m: usize, edge_prob: f64, seed: u64) -> Result<PartiteGraph, GenError> {
    let sizes = uniform_sizes(n, m)?;
    check_prob(edge_prob)?;
    let mut r = rng(seed, stream::EDGES);
    Ok(PartiteGraph::from_fn(&sizes, |_, _| r.random_bool(edge_prob)).expect("uniform groups are valid"))
}

/// Complete n,m-partite graph with weights uniform in `0..=max_weight`.
pub fn random_weighted_partite(
    n: usize,
    m: usize,
    max_weight: u64,
    seed: u64,
) -> Result<WeightedPartiteGraph, GenError> {
    let sizes = uniform_sizes(n, m)?;
    let mut r = rng(seed, stream::WEIGHTS);
    Ok(WeightedPartiteGraph::from_fn(&sizes, |_, _| Weight::from(r.random_range(0..=max_weight)))
        .expect("uniform groups are valid"))
}

/// Weighted graph whose vertices sit at uniform points of `[0,1]^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricInstance {
    pub graph: WeightedPartiteGraph,
    /// Relaxed triangle factor, `2^(power−1)`.
    pub beta: u64,
    pub points: Vec<Vec<f64>>,
    pub provenance: Provenance,
}

/// Weight `round(METRIC_SCALE · |p_u − p_v|^power)` for every cross pair.
pub fn weights_from_points(sizes: &[usize], points: &[Vec<f64>], power: u32) -> Result<WeightedPartiteGraph, GenError> {
    check(points.len() == sizes.iter().sum::<usize>(), "one point per vertex")?;
    check(power >= 1, "power must be at least 1")?;
    let w = |u: VertexId, v: VertexId| {
        let (p, q) = (&points[u as usize], &points[v as usize]);
        let d = p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let scaled = (METRIC_SCALE * d.powi(power as i32)).round();
        assert!(scaled.is_finite() && scaled < 2f64.powi(63), "metric weight out of range");
        Weight::from(scaled as u64)
    };
    WeightedPartiteGraph::from_fn(sizes, w).map_err(|_| GenError::InvalidParam("group sizes"))
}

pub fn metric_weighted_instance(
    n: usize,
    m: usize,
    dim: usize,
    power: u32,
    seed: u64,
) -> Result<MetricInstance, GenError> {
    let sizes = uniform_sizes(n, m)?;
    check(dim >= 1, "dim must be at least 1")?;
    check((1..=32).contains(&power), "power must be in 1..=32")?;
    let mut r = rng(seed, stream::POINTS);
    let points: Vec<Vec<f64>> = (0..n * m).map(|_| (0..dim).map(|_| r.random::<f64>()).collect()).collect();
    let graph = weights_from_points(&sizes, &points, power)?;
    Ok(MetricInstance {
        graph,
        beta: 1 << (power - 1),
        points,
        provenance: Provenance::new("metric_weighted", seed, json!({ "n": n, "m": m, "dim": dim, "power": power })),
    })
}

/// Each clause has exactly `m` distinct variables with random polarity.
pub fn random_cnf(vars: usize, clauses: usize, m: usize, seed: u64) -> Result<CnfFormula, GenError> {
    check(m >= 1, "m must be at least 1")?;
    check(clauses == 0 || m <= vars, "clause width exceeds variable count")?;
    let mut r = rng(seed, stream::CLAUSES);
    let cls = (0..clauses)
        .map(|_| {
            let mut picked = index::sample(&mut r, vars, m).into_vec();
            picked.sort_unstable();
            Clause::new(picked.into_iter().map(|v| Literal::with_value(v as u32, r.random_bool(0.5))))
        })
        .collect();
    Ok(CnfFormula::new(vars, m, cls).expect("variables in range"))
}

/// `random_cnf` with clause weights uniform in `1..=max_weight`.
pub fn random_weighted_cnf(
    vars: usize,
    clauses: usize,
    m: usize,
    max_weight: u64,
    seed: u64,
) -> Result<CnfFormula, GenError> {
    check(max_weight >= 1, "max_weight must be at least 1")?;
    let base = random_cnf(vars, clauses, m, seed)?;
    let mut r = rng(seed, stream::WEIGHTS);
    let cls = base
        .clauses()
        .iter()
        .map(|c| Clause::weighted(c.literals.iter().copied(), r.random_range(1..=max_weight)))
        .collect();
    Ok(CnfFormula::new(vars, m, cls).expect("variables in range"))
}

/// Erdős–Rényi graph on `vertices` vertices with `k` colors.
pub fn random_coloring(vertices: usize, edge_prob: f64, k: usize, seed: u64) -> Result<ColoringInstance, GenError> {
    check_prob(edge_prob)?;
    let mut r = rng(seed, stream::EDGES);
    let mut edges = Vec::new();
    for u in 0..vertices {
        for v in u + 1..vertices {
            if r.random_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    ColoringInstance::new(vertices, &edges, k).map_err(|_| GenError::InvalidParam("k must be at least 1"))
}
