mod common;

use num_bigint::BigUint;
use orisearch::geometry::{arrangement_error, verify_line_arrangement};
use orisearch::graph::{PartiteGraph, WeightedPartiteGraph};
use orisearch::instance_gen::{
    random_cnf, random_coloring, random_partite, random_weighted_cnf, random_weighted_partite,
};
use orisearch::reductions::{
    clique_gap_weights, coloring_to_partite, column_scan_bound, generate_general_position_points,
    msat_to_line_instance, mw2sat_to_mwclique, mwclique_to_mw2sat, partite2_to_2sat, partite_to_line_instance,
    sat2_to_partite, ColoringInstance, ReductionError,
};
use orisearch::solvers::{Clause, CnfFormula, Literal};

#[test]
fn coloring_examples() {
    for (k, expect) in [(3, true), (2, false)] {
        let tri = ColoringInstance::new(3, &[(0, 1), (1, 2), (0, 2)], k).unwrap();
        assert_eq!(common::brute_colorable(&tri), expect);
        assert_eq!(common::brute_clique(&coloring_to_partite(&tri).unwrap()).is_some(), expect);
    }
    let edgeless = ColoringInstance::new(4, &[], 1).unwrap();
    assert!(common::brute_clique(&coloring_to_partite(&edgeless).unwrap()).is_some());
}

#[test]
fn coloring_soundness_random() {
    for seed in 0..100 {
        let c = random_coloring(2 + seed as usize % 5, 0.5, 2 + seed as usize % 2, seed).unwrap();
        let g = coloring_to_partite(&c).unwrap();
        assert_eq!(common::brute_colorable(&c), common::brute_clique(&g).is_some(), "seed {seed}");
    }
}

#[test]
fn partite2_examples() {
    let f = partite2_to_2sat(&PartiteGraph::complete(&[2, 2]).unwrap()).unwrap();
    assert!(f.clauses().is_empty());
    // v_1^0 = 0, v_1^1 = 1, v_2^0 = 2, v_2^1 = 3; drop {0, 2}
    let g = PartiteGraph::new(vec![vec![0, 1], vec![2, 3]], &[(0, 3), (1, 2), (1, 3)]).unwrap();
    let f = partite2_to_2sat(&g).unwrap();
    assert_eq!(f.clauses(), &[Clause::new([Literal::pos(0), Literal::pos(1)])]);
    let err = partite2_to_2sat(&PartiteGraph::complete(&[3, 1]).unwrap()).unwrap_err();
    assert!(matches!(err, ReductionError::GroupTooLarge { .. }));
}

#[test]
fn partite2_preserves_answer() {
    for seed in 0..200 {
        let g = random_partite(2 + seed as usize % 6, 1 + seed as usize % 2, 0.7, seed).unwrap();
        let f = partite2_to_2sat(&g).unwrap();
        assert_eq!(common::brute_clique(&g).is_some(), common::brute_sat(&f).is_some(), "seed {seed}");
    }
}

#[test]
fn sat2_examples() {
    let empty = CnfFormula::new(3, 2, vec![]).unwrap();
    assert!(sat2_to_partite(&empty).unwrap().is_complete());
    let f = CnfFormula::new(2, 2, vec![Clause::new([Literal::pos(0), Literal::pos(1)])]).unwrap();
    let g = sat2_to_partite(&f).unwrap();
    let missing: Vec<_> = g.cross_pairs().filter(|&(u, v)| !g.has_edge(u, v)).collect();
    assert_eq!(missing, vec![(0, 2)]);
}

#[test]
fn sat2_roundtrip_preserves_satisfiability() {
    for seed in 0..200 {
        let f = random_cnf(2 + seed as usize % 7, seed as usize % 20, 2, seed).unwrap();
        let g = sat2_to_partite(&f).unwrap();
        let back = partite2_to_2sat(&g).unwrap();
        let sat = common::brute_sat(&f).is_some();
        assert_eq!(common::brute_clique(&g).is_some(), sat, "seed {seed}");
        assert_eq!(common::brute_sat(&back).is_some(), sat, "seed {seed}");
    }
}

#[test]
fn weighted_examples() {
    let none = CnfFormula::new(2, 2, vec![]).unwrap();
    let g = mw2sat_to_mwclique(&none).unwrap();
    assert!(g.weighted_pairs().all(|(_, _, w)| *w == BigUint::from(0u8)));
    let one = CnfFormula::new(2, 2, vec![Clause::weighted([Literal::pos(0), Literal::pos(1)], 7u8)]).unwrap();
    assert_eq!(common::brute_min_clique(&mw2sat_to_mwclique(&one).unwrap()).0, BigUint::from(0u8));
    let contra =
        CnfFormula::new(1, 2, vec![Clause::weighted([Literal::pos(0)], 3u8), Clause::weighted([Literal::neg(0)], 4u8)])
            .unwrap();
    assert_eq!(common::brute_min_unsat(&contra), BigUint::from(3u8));
    assert_eq!(common::brute_min_clique(&mw2sat_to_mwclique(&contra).unwrap()).0, BigUint::from(3u8));
}

#[test]
fn weighted_reductions_preserve_optimum() {
    for seed in 0..60 {
        let f = random_weighted_cnf(2 + seed as usize % 7, seed as usize % 14, 2, 9, seed).unwrap();
        let g = mw2sat_to_mwclique(&f).unwrap();
        assert_eq!(common::brute_min_clique(&g).0, common::brute_min_unsat(&f), "seed {seed}");

        let w = random_weighted_partite(2 + seed as usize % 6, 2, 9, seed).unwrap();
        let f = mwclique_to_mw2sat(&w).unwrap();
        assert_eq!(common::brute_min_unsat(&f), common::brute_min_clique(&w).0, "seed {seed}");
    }
    let zero = WeightedPartiteGraph::from_fn(&[2, 2, 2], |_, _| BigUint::from(0u8)).unwrap();
    assert_eq!(common::brute_min_unsat(&mwclique_to_mw2sat(&zero).unwrap()), BigUint::from(0u8));
}

#[test]
fn gap_examples() {
    let full = clique_gap_weights(&PartiteGraph::complete(&[2, 2, 2]).unwrap(), 1).unwrap();
    assert_eq!(common::brute_min_clique(&full).0, BigUint::from(0u8));
    let bare = clique_gap_weights(&PartiteGraph::new(vec![vec![0], vec![1], vec![2]], &[]).unwrap(), 1).unwrap();
    assert_eq!(common::brute_min_clique(&bare).0, BigUint::from(24u8));
    let tri = ColoringInstance::new(3, &[(0, 1), (1, 2), (0, 2)], 2).unwrap();
    let gap = clique_gap_weights(&coloring_to_partite(&tri).unwrap(), 1).unwrap();
    assert!(common::brute_min_clique(&gap).0 > BigUint::from(0u8));
    let err = clique_gap_weights(&PartiteGraph::complete(&[1; 9]).unwrap(), 2).unwrap_err();
    assert_eq!(err, ReductionError::GapTooLarge { exponent: 81, cap: 64 });
}

#[test]
fn point_generator_rules_hold_up_to_twenty() {
    let gp = generate_general_position_points(20);
    for count in [1, 2, 3, 5, 8, 13, 20] {
        let v = common::general_position_violations(&gp.points[..count]);
        assert!(v.is_empty(), "count {count}: {v:?}");
    }
    for (k, &r) in gp.rejected.iter().enumerate() {
        assert!(r as u128 <= column_scan_bound(k as u64), "column {k}: {r}");
    }
}

#[test]
fn rule_checker_catches_violations() {
    assert!(!common::general_position_violations(&[(0, 0), (1, 1), (2, 2)]).is_empty());
    assert!(!common::general_position_violations(&[(0, 0), (0, 1)]).is_empty());
    // y = x, x + y = 2 and y = 2x - 1 all pass through the unchosen (1, 1)
    let concurrent = [(0, 0), (2, 2), (-1, 3), (3, -1), (0, -1), (2, 3)];
    let v = common::general_position_violations(&concurrent);
    assert!(v.iter().any(|s| s.starts_with("rule 3")), "{v:?}");
}

fn slot_choices(g: &PartiteGraph) -> usize {
    g.groups().iter().map(Vec::len).product()
}

#[test]
fn partite_lines_follow_cliques() {
    for seed in 0..25 {
        let g = random_partite(3, 1 + seed as usize % 3, 0.6, seed).unwrap();
        let r = partite_to_line_instance(&g).unwrap();
        let m = g.m();
        assert!(r.instance.allowed().values().all(|p| p.len() <= m * m));
        assert_eq!(r.choice_count() as usize, slot_choices(&g));
        let clique = common::brute_clique(&g);
        let real = r.find_realization();
        assert_eq!(clique.is_some(), real.is_some(), "seed {seed}");
        if let Some(picks) = clique {
            let slots: Vec<usize> = picks.iter().map(|&v| g.slot_of(v)).collect();
            let lines = r.lines_for(&slots);
            assert!(verify_line_arrangement(&lines, &r.instance, 0.0).unwrap().accepted());
            assert_eq!(arrangement_error(&lines, &r.instance, 2.0).unwrap(), 0.0);
        }
    }
    let tri = ColoringInstance::new(3, &[(0, 1), (1, 2), (0, 2)], 2).unwrap();
    let r = partite_to_line_instance(&coloring_to_partite(&tri).unwrap()).unwrap();
    assert_eq!(r.find_realization(), None);
}

fn three_sat(vars: usize, clauses: Vec<[(u32, bool); 3]>) -> CnfFormula {
    let cl = clauses.into_iter().map(|c| Clause::new(c.map(|(v, p)| Literal { var: v, positive: p }))).collect();
    CnfFormula::new(vars, 3, cl).unwrap()
}

#[test]
fn sat_gadget_examples() {
    let f = random_cnf(4, 4, 3, 3).unwrap();
    let r = msat_to_line_instance(&f).unwrap();
    assert_eq!(common::brute_sat(&f).is_some(), r.find_realization().is_some());
    let unsat = three_sat(4, (0..8u32).map(|c| [(0, c & 1 == 1), (1, c & 2 == 2), (2, c & 4 == 4)]).collect());
    assert!(common::brute_sat(&unsat).is_none());
    let r = msat_to_line_instance(&unsat).unwrap();
    assert_eq!(r.find_realization(), None);
    assert_eq!(r.instance.l(), 6);
}

#[test]
fn sat_gadget_witness_verifies_exactly() {
    for seed in 0..20 {
        let f = random_cnf(5, 4, 2, seed).unwrap();
        let r = msat_to_line_instance(&f).unwrap();
        match common::brute_sat(&f) {
            Some(vals) => {
                // variable lines from the truth values, clause lines at a satisfied literal
                let mut choice: Vec<usize> = vals.iter().map(|&b| usize::from(b)).collect();
                for c in f.clauses() {
                    choice.push(c.literals.iter().position(|l| vals[l.var as usize] == l.positive).unwrap());
                }
                let lines = r.lines_for(&choice);
                assert!(verify_line_arrangement(&lines, &r.instance, 0.0).unwrap().accepted(), "seed {seed}");
                assert_eq!(arrangement_error(&lines, &r.instance, 1.0).unwrap(), 0.0);
            }
            None => assert!(r.find_realization().is_none()),
        }
    }
}
