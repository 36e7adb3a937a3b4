mod common;

use proptest::prelude::*;
use rand::Rng;

use onetwo::fixtures;
use onetwo::instance::{block_of, unfixed_index};
use onetwo::solver::{
    brute_force_one_in_two, max_matching, min_cost_assignment, one_in_four_bruteforce,
    one_in_four_collapse, one_in_four_optimum, solve_one_in_two, solve_one_in_two_with,
    BipartiteGraph, OneInTwoOutcome, SolverConfig,
};
use onetwo::{validate_solution, OitmInstance, OitmSolution};

fn instance_strategy(max_blocks: usize, weighted: bool) -> impl Strategy<Value = OitmInstance> {
    (1..=max_blocks, 0.05f64..0.7, any::<u64>()).prop_map(move |(b, d, seed)| {
        let mut rng = common::rng(seed);
        common::random_instance(&mut rng, b, d, weighted.then_some(9))
    })
}

fn dense_strategy(max_n: usize) -> impl Strategy<Value = Vec<Vec<Option<i64>>>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec(prop::option::weighted(0.6, -4i64..10), n),
            n,
        )
    })
}

/// Relabels block `b` as `rho[b]` (0-based) and optionally swaps the two
/// indices inside each block.
fn relabel(inst: &OitmInstance, rho: &[usize], swap: &[bool]) -> OitmInstance {
    let map = |i: usize| {
        let b = block_of(i) - 1;
        let odd = i % 2 == 1;
        let odd = odd != swap[b];
        2 * rho[b] + if odd { 1 } else { 2 }
    };
    let mut out = match inst.budget() {
        Some(budget) => OitmInstance::weighted(inst.blocks(), budget).unwrap(),
        None => OitmInstance::new(inst.blocks()).unwrap(),
    };
    for ((r, c), w) in inst.entries() {
        if inst.is_weighted() {
            out.insert_weighted(map(r), map(c), w).unwrap();
        } else {
            out.insert(map(r), map(c)).unwrap();
        }
    }
    out
}

#[test]
fn assignment_example_optimum() {
    let rows: Vec<Vec<i64>> = fixtures::ASSIGNMENT_EXAMPLE
        .iter()
        .map(|r| r.to_vec())
        .collect();
    let g = BipartiteGraph::complete(&rows);
    let a = min_cost_assignment(&g).unwrap();
    let exhaustive = common::permutations(6)
        .into_iter()
        .map(|p| (0..6).map(|i| rows[i][p[i]]).sum::<i64>())
        .min()
        .unwrap();
    assert_eq!(a.cost, exhaustive);
    assert_eq!(a.cost, fixtures::ASSIGNMENT_EXAMPLE_OPTIMUM);
    assert!(a.cost <= fixtures::ASSIGNMENT_EXAMPLE_BUDGET);
    let shown: i64 = fixtures::ASSIGNMENT_EXAMPLE_SHOWN
        .iter()
        .enumerate()
        .map(|(i, &c)| rows[i][c - 1])
        .sum();
    assert_eq!(shown, 13);
}

#[test]
fn one_in_two_example_optimum() {
    let inst = fixtures::one_in_two_example();
    let out = solve_one_in_two(&inst).unwrap();
    assert_eq!(out.cost(), Some(fixtures::ONE_IN_TWO_EXAMPLE_OPTIMUM));
    assert_eq!(out, brute_force_one_in_two(&inst).unwrap());
    assert!(out.within_budget(&inst));
    let shown = OitmSolution::from_permutation(&[3, 2, 6, 4, 5, 1]).unwrap();
    let rep = validate_solution(&inst, &shown).unwrap();
    assert!(rep.valid);
    assert_eq!(rep.cost, Some(9));
    assert!(rep.within_budget(&inst));
}

#[test]
fn empty_instance_has_no_solution() {
    let inst = OitmInstance::new(3).unwrap();
    assert_eq!(solve_one_in_two(&inst).unwrap(), OneInTwoOutcome::Unsat);
}

#[test]
fn single_block_is_unsolvable() {
    // the lone unfixed index can only map inside its own block
    let inst = OitmInstance::new(1).unwrap();
    assert!(!solve_one_in_two(&inst).unwrap().is_sat());
}

#[test]
fn two_block_cycle() {
    let mut inst = OitmInstance::new(2).unwrap();
    inst.insert(2, 4).unwrap();
    inst.insert(4, 2).unwrap();
    let sol = solve_one_in_two(&inst).unwrap();
    let sol = sol.solution().unwrap();
    assert_eq!(sol.sigma(), [true, true]);
    assert_eq!(sol.full_permutation(), vec![1, 4, 3, 2]);
}

#[test]
fn limits_are_reported() {
    let mut rng = common::rng(17);
    let weighted = common::random_instance(&mut rng, 6, 0.3, Some(5));
    let cfg = SolverConfig {
        max_blocks: 5,
        ..SolverConfig::default()
    };
    assert!(matches!(
        solve_one_in_two_with(&weighted, &cfg),
        Err(onetwo::Error::ResourceLimit(_))
    ));
    let decision = common::random_instance(&mut rng, 10, 0.3, None);
    let cfg = SolverConfig {
        node_limit: 1,
        ..SolverConfig::default()
    };
    assert!(matches!(
        solve_one_in_two_with(&decision, &cfg),
        Err(onetwo::Error::ResourceLimit(_))
    ));
}

#[test]
fn one_in_four_requires_weights() {
    let inst = OitmInstance::new(2).unwrap();
    assert!(one_in_four_collapse(&inst).is_err());
    let mut rng = common::rng(3);
    let big = common::random_instance(&mut rng, 6, 0.5, Some(3));
    assert!(one_in_four_bruteforce(&big).is_err());
}

#[test]
fn validation_flags_each_violation() {
    let inst = fixtures::one_in_two_example();
    // both indices of block 1 fixed
    assert!(OitmSolution::from_permutation(&[1, 2, 3, 5, 4, 6]).is_err());
    let mut perm = std::collections::BTreeMap::new();
    perm.insert(2, 3);
    let sol = OitmSolution::new(vec![true, true, true], perm);
    let rep = validate_solution(&inst, &sol).unwrap();
    assert!(!rep.valid);
    assert_eq!(rep.cost, None);
    assert!(rep.violations.len() >= 2);
    let wrong_size = OitmSolution::new(vec![true], Default::default());
    assert!(validate_solution(&inst, &wrong_size).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn solver_agrees_with_enumeration(inst in instance_strategy(5, false)) {
        prop_assert_eq!(solve_one_in_two(&inst).unwrap(), brute_force_one_in_two(&inst).unwrap());
    }

    #[test]
    fn weighted_solver_agrees_with_enumeration(inst in instance_strategy(5, true)) {
        prop_assert_eq!(solve_one_in_two(&inst).unwrap(), brute_force_one_in_two(&inst).unwrap());
    }

    #[test]
    fn reported_solutions_validate(inst in instance_strategy(6, true)) {
        let out = solve_one_in_two(&inst).unwrap();
        if let Some(sol) = out.solution() {
            let rep = validate_solution(&inst, sol).unwrap();
            prop_assert!(rep.valid);
            prop_assert_eq!(rep.cost, out.cost());
            let pi = sol.full_permutation();
            let mut sorted = pi.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (1..=inst.dimension()).collect::<Vec<_>>());
            prop_assert_eq!(&OitmSolution::from_permutation(&pi).unwrap(), sol);
            prop_assert_eq!(&OitmSolution::parse(&sol.to_string()).unwrap(), sol);
        }
    }

    #[test]
    fn minor_edges_join_unfixed_indices(inst in instance_strategy(5, true), bits in any::<u32>()) {
        let sigma: Vec<bool> = (0..inst.blocks()).map(|b| bits >> b & 1 == 1).collect();
        let g = inst.minor(&sigma).unwrap();
        for r in 0..inst.blocks() {
            prop_assert!(!g.has_edge(r, r));
            for (c, w) in g.neighbors(r) {
                let i = unfixed_index(r + 1, sigma[r]);
                let j = unfixed_index(c + 1, sigma[c]);
                prop_assert_eq!(inst.weight(i, j), Some(w));
            }
        }
        let total: usize = (0..inst.blocks()).map(|r| g.neighbors(r).count()).sum();
        let expected = inst
            .entries()
            .filter(|((i, j), _)| {
                unfixed_index(block_of(*i), sigma[block_of(*i) - 1]) == *i
                    && unfixed_index(block_of(*j), sigma[block_of(*j) - 1]) == *j
            })
            .count();
        prop_assert_eq!(total, expected);
    }

    #[test]
    fn optimum_is_invariant_under_relabelling(
        inst in instance_strategy(5, true),
        seed in any::<u64>(),
    ) {
        let mut rng = common::rng(seed);
        let n = inst.blocks();
        let perms = common::permutations(n);
        let rho = &perms[rng.gen_range(0..perms.len())];
        let swap: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
        let other = relabel(&inst, rho, &swap);
        prop_assert_eq!(other.nnz(), inst.nnz());
        let a = solve_one_in_two(&inst).unwrap();
        let b = solve_one_in_two(&other).unwrap();
        prop_assert_eq!(a.is_sat(), b.is_sat());
        prop_assert_eq!(a.cost(), b.cost());
    }

    #[test]
    fn instance_text_round_trip(inst in instance_strategy(6, true)) {
        prop_assert_eq!(OitmInstance::parse(&inst.to_string()).unwrap(), inst);
    }

    #[test]
    fn matching_is_maximum(dense in dense_strategy(6)) {
        let n = dense.len();
        let g = BipartiteGraph::from_dense(&dense);
        let best = common::permutations(n)
            .iter()
            .map(|p| (0..n).filter(|&i| dense[i][p[i]].is_some()).count())
            .max()
            .unwrap();
        prop_assert_eq!(max_matching(&g).size(), best);
    }

    #[test]
    fn assignment_is_optimal(dense in dense_strategy(6)) {
        let n = dense.len();
        let g = BipartiteGraph::from_dense(&dense);
        let best = common::permutations(n)
            .iter()
            .filter_map(|p| (0..n).map(|i| dense[i][p[i]]).sum::<Option<i64>>())
            .min();
        let got = min_cost_assignment(&g);
        prop_assert_eq!(got.as_ref().map(|a| a.cost), best);
        if let Some(a) = got {
            let cost: i64 = a.perm.iter().enumerate().map(|(r, &c)| dense[r][c].unwrap()).sum();
            prop_assert_eq!(cost, a.cost);
        }
    }

    #[test]
    fn collapse_matches_enumeration(inst in instance_strategy(4, true)) {
        prop_assert_eq!(one_in_four_optimum(&inst).unwrap(), one_in_four_bruteforce(&inst).unwrap());
    }

    #[test]
    fn one_in_four_relaxes_one_in_two(inst in instance_strategy(4, true)) {
        let relaxed = one_in_four_optimum(&inst).unwrap();
        if let Some(c) = solve_one_in_two(&inst).unwrap().cost() {
            prop_assert!(relaxed.is_some_and(|r| r <= c));
        }
    }
}
