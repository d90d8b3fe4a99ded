use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semaev::curves::Point;
use semaev::reductions::{
    decide_sumpoly, parse_dimacs, pull_back_points, pull_back_signs, pull_back_subset,
    pull_back_witness, push_forward_assignment, reduce_sat, relation_signs, sat_solve,
    sat_to_subsetsum_modm, sat_to_subsetsum_z, solve_chain, subset_oracle, subset_solve,
    subsetsum_to_sumpoly_cusp, subsetsum_to_sumpoly_ec, ChainRoute, Gadget, Group, SatInstance,
    SubsetSumInstance, DEFAULT_ORDER_BOUND,
};
use semaev::sumpoly::{summation_poly, verify_vanishing_by_points};
use semaev::Error;

fn ints(elements: &[i64], target: i64) -> SubsetSumInstance {
    SubsetSumInstance::new(
        Group::Integers,
        elements.iter().map(|&v| vec![v]).collect(),
        vec![target],
    )
    .unwrap()
}

fn power(p: u64, elements: &[&[i64]], target: &[i64]) -> SubsetSumInstance {
    let group = Group::Power {
        m: p,
        r: target.len(),
    };
    SubsetSumInstance::new(
        group,
        elements.iter().map(|v| v.to_vec()).collect(),
        target.to_vec(),
    )
    .unwrap()
}

#[test]
fn dimacs_examples() {
    let sat = parse_dimacs("p cnf 3 1\n1 -2 3 0").unwrap();
    assert_eq!((sat.num_vars(), sat.clauses().len()), (3, 1));
    let padded = parse_dimacs("p cnf 1 1\n1 0\n").unwrap();
    assert_eq!(padded.clauses(), &[[1, 1, 1]]);
    assert_eq!(sat_solve(&padded).unwrap(), Some(vec![true]));
    match parse_dimacs("p cnf 2 2\n1 2 0\n0\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected a located parse error, got {other:?}"),
    }
    assert!(parse_dimacs("p cnf 2 1\n1 3 0\n").is_err());
    assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
    assert!(parse_dimacs("p dnf 2 1\n1 2 0\n").is_err());
}

#[test]
fn oracle_examples() {
    let sat = SatInstance::new(1, vec![vec![1], vec![1, 1, 1]]).unwrap();
    assert_eq!(sat_solve(&sat).unwrap(), Some(vec![true]));
    assert_eq!(
        subset_solve(&ints(&[1, 2, 4], 5)).unwrap(),
        Some(vec![0, 2])
    );
    assert_eq!(subset_solve(&ints(&[2, 4], 1)).unwrap(), None);
    assert!(matches!(
        sat_solve(&SatInstance::new(25, vec![]).unwrap()),
        Err(Error::ResourceCap(_))
    ));
}

#[test]
fn gadgets_pass_their_audit() {
    for m in [3, 4, 5, 6, 7, 11] {
        assert!(Gadget::for_modulus(m).unwrap().audit().passed(), "m = {m}");
    }
    let g3 = Gadget::for_modulus(3).unwrap().audit();
    assert_eq!(g3.pairs_checked, 8 * 32);
    assert!(Gadget::integer().audit().passed());
}

#[test]
fn modm_rejects_small_moduli() {
    let sat = SatInstance::new(1, vec![vec![1]]).unwrap();
    assert!(sat_to_subsetsum_modm(&sat, 2).is_err());
    assert!(sat_to_subsetsum_modm(&sat, 1).is_err());
}

fn check_equivalence(sat: &SatInstance) {
    let expected = sat_solve(sat).unwrap().is_some();
    for m in [3, 4, 5] {
        let (inst, cert) = sat_to_subsetsum_modm(sat, m).unwrap();
        let found = subset_oracle(&inst).unwrap();
        assert_eq!(found.is_some(), expected, "m = {m}");
        if let Some(subset) = found {
            let a = pull_back_subset(&cert, sat, &inst, &subset).unwrap();
            assert!(sat.satisfied_by(&a));
        }
    }
    for cyclic in [false, true] {
        let (inst, cert) = sat_to_subsetsum_z(sat, cyclic).unwrap();
        let found = subset_oracle(&inst).unwrap();
        assert_eq!(found.is_some(), expected, "cyclic = {cyclic}");
        if let Some(subset) = found {
            assert!(sat.satisfied_by(&pull_back_subset(&cert, sat, &inst, &subset).unwrap()));
        }
    }
}

#[test]
fn subset_sum_stage_preserves_satisfiability() {
    check_equivalence(&SatInstance::new(3, vec![vec![1, -2, 3]]).unwrap());
    check_equivalence(&SatInstance::new(1, vec![vec![1], vec![-1]]).unwrap());
    check_equivalence(&SatInstance::new(2, vec![vec![1, -1, 2], vec![-2]]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        check_equivalence(&SatInstance::random(4, 3, &mut rng));
    }
}

#[test]
fn empty_formula_maps_to_an_empty_subset() {
    let sat = SatInstance::new(0, vec![]).unwrap();
    let (inst, cert) = sat_to_subsetsum_z(&sat, false).unwrap();
    assert!(inst.is_empty());
    assert_eq!(inst.target, vec![0]);
    assert_eq!(subset_solve(&inst).unwrap(), Some(vec![]));
    assert_eq!(
        pull_back_subset(&cert, &sat, &inst, &[]).unwrap(),
        Vec::<bool>::new()
    );
}

#[test]
fn satisfying_assignments_push_forward() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let sat = SatInstance::random(4, 3, &mut rng);
        let Some(a) = sat_solve(&sat).unwrap() else {
            continue;
        };
        for m in [3, 7] {
            let (inst, cert) = sat_to_subsetsum_modm(&sat, m).unwrap();
            let subset = push_forward_assignment(&cert, &sat, &inst, &a).unwrap();
            assert_eq!(pull_back_subset(&cert, &sat, &inst, &subset).unwrap(), a);
        }
    }
}

#[test]
fn elliptic_route_examples() {
    // {3}, w = 3: w' = 3 and the arity-two instance x(3P), x(3P)
    let inst = ints(&[3], 3);
    let red = subsetsum_to_sumpoly_ec(&inst, DEFAULT_ORDER_BOUND, 0).unwrap();
    assert_eq!(red.certificate.w_prime, vec![3]);
    let s = red.instance.as_ref().unwrap();
    assert_eq!(s.arity(), 2);
    assert_eq!(s.inputs[0], s.inputs[1]);
    assert_eq!(
        summation_poly(&s.model, 2)
            .unwrap()
            .evaluate(&s.inputs)
            .unwrap(),
        s.model.field().zero()
    );
    let pts = decide_sumpoly(&red).unwrap().unwrap();
    assert_eq!(
        pull_back_points(&red.certificate, &inst, &pts).unwrap(),
        vec![0]
    );

    // {1, 2}, w = 0: w' = -3, arity three
    let inst = ints(&[1, 2], 0);
    let red = subsetsum_to_sumpoly_ec(&inst, DEFAULT_ORDER_BOUND, 0).unwrap();
    assert_eq!(red.certificate.w_prime, vec![-3]);
    let s = red.instance.as_ref().unwrap();
    assert_eq!(s.arity(), 3);
    let v = verify_vanishing_by_points(s).unwrap();
    assert_eq!(v.vanishes(), subset_solve(&inst).unwrap().is_some());
    assert!(v.vanishes());

    // {2, 4}, w = 1 is unsolvable by parity
    let inst = ints(&[2, 4], 1);
    let red = subsetsum_to_sumpoly_ec(&inst, DEFAULT_ORDER_BOUND, 0).unwrap();
    let s = red.instance.as_ref().unwrap();
    assert!(!verify_vanishing_by_points(s).unwrap().vanishes());
    let value = summation_poly(&s.model, 3)
        .unwrap()
        .evaluate(&s.inputs)
        .unwrap();
    assert!(!value.is_zero());
}

#[test]
fn elliptic_route_handles_zero_target_and_bounds() {
    // w' = 0 drops the target input
    let inst = ints(&[1, 2, 3], 3);
    let red = subsetsum_to_sumpoly_ec(&inst, DEFAULT_ORDER_BOUND, 1).unwrap();
    assert!(!red.certificate.target_input);
    assert_eq!(red.instance.as_ref().unwrap().arity(), 3);
    let pts = decide_sumpoly(&red).unwrap().unwrap();
    assert!(inst.is_solution(&pull_back_points(&red.certificate, &inst, &pts).unwrap()));
    // zero elements are stripped
    let inst = ints(&[0, 5, 0, 5], 5);
    let red = subsetsum_to_sumpoly_ec(&inst, DEFAULT_ORDER_BOUND, 1).unwrap();
    assert_eq!(red.certificate.dropped, vec![0, 2]);
    let pts = decide_sumpoly(&red).unwrap().unwrap();
    let subset = pull_back_points(&red.certificate, &inst, &pts).unwrap();
    assert!(subset == vec![1] || subset == vec![3]);
    // single element, w' != 0, constant verdicts
    assert_eq!(
        decide_sumpoly(&subsetsum_to_sumpoly_ec(&ints(&[4], 1), 1 << 20, 0).unwrap()).unwrap(),
        None
    );
    assert!(
        decide_sumpoly(&subsetsum_to_sumpoly_ec(&ints(&[], 0), 1 << 20, 0).unwrap())
            .unwrap()
            .is_some()
    );
    assert!(
        decide_sumpoly(&subsetsum_to_sumpoly_ec(&ints(&[1, 1], 100), 1 << 20, 0).unwrap())
            .unwrap()
            .is_none()
    );
    assert!(matches!(
        subsetsum_to_sumpoly_ec(&ints(&[1 << 20], 0), 1 << 20, 0),
        Err(Error::ResourceCap(_))
    ));
}

#[test]
fn cusp_route_examples() {
    // p = 3, r = 1, v = {1}, target with w' = 1
    let inst = power(3, &[&[1]], &[1]);
    let red = subsetsum_to_sumpoly_cusp(&inst).unwrap();
    assert_eq!(red.certificate.w_prime, vec![1]);
    let s = red.instance.as_ref().unwrap();
    assert_eq!(s.arity(), 2);
    assert!(summation_poly(&s.model, 2)
        .unwrap()
        .evaluate(&s.inputs)
        .unwrap()
        .is_zero());

    // (1,0), (0,1), target (1,1)
    let inst = power(3, &[&[1, 0], &[0, 1]], &[1, 1]);
    let red = subsetsum_to_sumpoly_cusp(&inst).unwrap();
    let s = red.instance.as_ref().unwrap();
    assert!(verify_vanishing_by_points(s).unwrap().vanishes());
    let pts = decide_sumpoly(&red).unwrap().unwrap();
    assert_eq!(
        pull_back_points(&red.certificate, &inst, &pts).unwrap(),
        vec![0, 1]
    );

    // (1,0), (1,0), target (0,1): every +-combination has second coordinate 0
    let inst = power(3, &[&[1, 0], &[1, 0]], &[0, 1]);
    assert_eq!(subset_solve(&inst).unwrap(), None);
    let red = subsetsum_to_sumpoly_cusp(&inst).unwrap();
    let s = red.instance.as_ref().unwrap();
    let v = summation_poly(&s.model, s.arity())
        .unwrap()
        .evaluate(&s.inputs)
        .unwrap();
    assert!(!v.is_zero());
    assert_eq!(decide_sumpoly(&red).unwrap(), None);

    assert!(subsetsum_to_sumpoly_cusp(&power(2, &[&[1]], &[1])).is_err());
    assert!(subsetsum_to_sumpoly_cusp(&ints(&[1], 1)).is_err());
}

#[test]
fn cusp_route_agrees_with_explicit_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    use rand::Rng;
    for p in [3u64, 5] {
        for _ in 0..25 {
            let r = rng.gen_range(1..=2);
            let len = rng.gen_range(1..=3);
            let el: Vec<Vec<i64>> = (0..len)
                .map(|_| (0..r).map(|_| rng.gen_range(0..p as i64)).collect())
                .collect();
            let target: Vec<i64> = (0..r).map(|_| rng.gen_range(0..p as i64)).collect();
            let inst = SubsetSumInstance::new(Group::Power { m: p, r }, el, target).unwrap();
            let solvable = subset_solve(&inst).unwrap().is_some();
            let red = subsetsum_to_sumpoly_cusp(&inst).unwrap();
            assert_eq!(decide_sumpoly(&red).unwrap().is_some(), solvable);
            if let Some(s) = &red.instance {
                assert_eq!(verify_vanishing_by_points(s).unwrap().vanishes(), solvable);
            }
        }
    }
}

#[test]
fn full_chain_round_trip() {
    let sat = parse_dimacs("c toy\np cnf 3 2\n1 -2 3 0\n-1 2 0\n").unwrap();
    for route in [
        ChainRoute::Cuspidal,
        ChainRoute::Elliptic {
            order_bound: DEFAULT_ORDER_BOUND,
            seed: 0,
        },
    ] {
        let chain = reduce_sat(&sat, route).unwrap();
        let a = solve_chain(&chain).unwrap().expect("satisfiable");
        assert!(sat.satisfied_by(&a));
    }
    let unsat = SatInstance::new(1, vec![vec![1], vec![-1]]).unwrap();
    let chain = reduce_sat(&unsat, ChainRoute::Cuspidal).unwrap();
    assert_eq!(solve_chain(&chain).unwrap(), None);
}

#[test]
fn tampered_witnesses_are_rejected() {
    let sat = SatInstance::new(2, vec![vec![1, 2], vec![-1, 2]]).unwrap();
    let chain = reduce_sat(&sat, ChainRoute::Cuspidal).unwrap();
    let pts = decide_sumpoly(&chain.reduction).unwrap().unwrap();
    assert!(pull_back_witness(&chain.certificate, &pts).is_ok());
    let cert = &chain.certificate.sumpoly_stage;
    assert!(relation_signs(cert, &pts[1..]).is_err());
    let mut swapped = pts.clone();
    swapped.swap(0, 1);
    if swapped != pts {
        assert!(pull_back_witness(&chain.certificate, &swapped).is_err());
    }
    let mut flipped = pts.clone();
    flipped[0] = Point::Infinity;
    assert!(matches!(
        pull_back_signs(cert, &flipped),
        Err(Error::InvalidWitness(_))
    ));
    assert!(pull_back_subset(
        &chain.certificate.sat_stage,
        &sat,
        &chain.certificate.subset,
        &[0]
    )
    .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_formulas_agree_across_the_subset_stage(seed in any::<u64>(), s in 1usize..5, w in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sat = SatInstance::random(s, w, &mut rng);
        let sat_ok = sat_solve(&sat).unwrap().is_some();
        let (inst, _) = sat_to_subsetsum_modm(&sat, 3).unwrap();
        prop_assert_eq!(subset_oracle(&inst).unwrap().is_some(), sat_ok);
    }

    #[test]
    fn dimacs_round_trips(seed in any::<u64>(), s in 1usize..8, w in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sat = SatInstance::random(s, w, &mut rng);
        prop_assert_eq!(parse_dimacs(&sat.to_dimacs()).unwrap(), sat);
    }
}
