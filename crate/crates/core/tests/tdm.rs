mod common;

use proptest::prelude::*;

use onetwo::instance::{block_of, fixed_index};
use onetwo::solver::brute_force_one_in_two;
use onetwo::tdm::{
    decode_3dm, reduce_to_3dm, solve_3dm_bruteforce, validate_3dm, DecodeContext, TdmInstance,
    TdmSolution,
};
use onetwo::{fixtures, validate_solution, OitmInstance, OitmSolution};

fn instance_strategy(max_blocks: usize, weighted: bool) -> impl Strategy<Value = OitmInstance> {
    (1..=max_blocks, 0.05f64..0.7, any::<u64>()).prop_map(move |(b, d, seed)| {
        common::random_instance(&mut common::rng(seed), b, d, weighted.then_some(7))
    })
}

/// The 3DM image of a One-in-Two solution.
fn lift(sol: &OitmSolution) -> TdmSolution {
    let b = sol.blocks();
    let mut triples: Vec<_> = sol
        .sigma()
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let f = fixed_index(k + 1, s);
            (f, f, k + 1)
        })
        .chain(sol.perm().iter().map(|(&i, &j)| (i, j, b + block_of(i))))
        .collect();
    triples.sort_by_key(|t| t.2);
    TdmSolution { triples }
}

#[test]
fn example_reduction() {
    let inst = fixtures::one_in_two_example();
    let (t, ctx) = reduce_to_3dm(&inst);
    assert_eq!(t.n(), 6);
    assert_eq!(t.len(), inst.nnz() + 6);
    assert_eq!(ctx, DecodeContext { blocks: 3 });
    let shown = OitmSolution::from_permutation(&[3, 2, 6, 4, 5, 1]).unwrap();
    let rep = validate_3dm(&t, &lift(&shown));
    assert!(rep.valid);
    assert_eq!(rep.cost, Some(9));
    let best = solve_3dm_bruteforce(&t).unwrap().unwrap();
    assert_eq!(
        validate_3dm(&t, &best).cost,
        Some(fixtures::ONE_IN_TWO_EXAMPLE_OPTIMUM)
    );
}

#[test]
fn decode_rejects_malformed_solutions() {
    let ctx = DecodeContext { blocks: 2 };
    let short = TdmSolution {
        triples: vec![(1, 1, 1)],
    };
    assert!(decode_3dm(&short, &ctx).is_err());
    let bad_star = TdmSolution {
        triples: vec![(1, 2, 1), (3, 3, 2), (2, 4, 3), (4, 2, 4)],
    };
    assert!(decode_3dm(&bad_star, &ctx).is_err());
    let twice = TdmSolution {
        triples: vec![(1, 1, 1), (2, 2, 1), (2, 4, 3), (4, 2, 4)],
    };
    assert!(decode_3dm(&twice, &ctx).is_err());
}

#[test]
fn instance_text() {
    let text = "3dm 2\n1 1 1\n2 2 2\n1 2 2\n";
    let t = TdmInstance::parse(text).unwrap();
    assert_eq!(t.len(), 3);
    assert!(t.contains((1, 2, 2)));
    assert_eq!(TdmInstance::parse(&t.to_string()).unwrap(), t);
    assert!(TdmInstance::parse("3dm 2\n1 1 3\n").is_err());
    assert!(TdmInstance::parse("3dm 2\n1 1 1\n1 1 1\n").is_err());
}

#[test]
fn brute_force_cap() {
    let (t, _) = reduce_to_3dm(&OitmInstance::new(5).unwrap());
    assert!(solve_3dm_bruteforce(&t).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn triple_count_is_linear(inst in instance_strategy(8, true)) {
        let (t, _) = reduce_to_3dm(&inst);
        prop_assert_eq!(t.len(), inst.nnz() + inst.dimension());
        prop_assert_eq!(t.n(), inst.dimension());
        prop_assert_eq!(t.budget(), inst.budget());
    }

    #[test]
    fn equivalent_to_one_in_two(inst in instance_strategy(4, false)) {
        let (t, ctx) = reduce_to_3dm(&inst);
        let a = brute_force_one_in_two(&inst).unwrap();
        let b = solve_3dm_bruteforce(&t).unwrap();
        prop_assert_eq!(a.is_sat(), b.is_some());
        if let Some(sol) = b {
            prop_assert!(validate_3dm(&t, &sol).valid);
            let back = decode_3dm(&sol, &ctx).unwrap();
            prop_assert!(validate_solution(&inst, &back).unwrap().valid);
        }
    }

    #[test]
    fn costs_are_preserved(inst in instance_strategy(4, true)) {
        let (t, ctx) = reduce_to_3dm(&inst);
        let a = brute_force_one_in_two(&inst).unwrap();
        let b = solve_3dm_bruteforce(&t).unwrap();
        prop_assert_eq!(b.as_ref().and_then(|s| validate_3dm(&t, s).cost), a.cost());
        if let Some(sol) = a.solution() {
            let lifted = lift(sol);
            prop_assert_eq!(validate_3dm(&t, &lifted).cost, a.cost());
            prop_assert_eq!(&decode_3dm(&lifted, &ctx).unwrap(), sol);
        }
    }

    #[test]
    fn text_round_trip(inst in instance_strategy(6, true)) {
        let (t, _) = reduce_to_3dm(&inst);
        prop_assert_eq!(TdmInstance::parse(&t.to_string()).unwrap(), t);
    }
}
