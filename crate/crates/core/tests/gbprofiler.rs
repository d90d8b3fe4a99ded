use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semaev::curves::{random_ordinary_curve, Point};
use semaev::fields::{Elem, Field};
use semaev::gbprofiler::{
    build_remark_w11_instance, build_split_system, chain_consistent, profile, run_experiment,
    to_csv, ExperimentConfig, ProfilerConfig,
};
use semaev::sumpoly::{eval_s3, summation_poly, verify_vanishing_by_points, SummationInstance};

#[test]
fn subspace_solutions_are_summation_zeros_and_point_relations() {
    for (n, seed) in [(8, 0), (10, 1), (12, 3), (14, 0), (16, 0)] {
        let inst = build_remark_w11_instance(n, seed).unwrap();
        assert_eq!(inst.system.nvars(), 2 * n.div_ceil(2));
        let p = profile(&inst.system, &ProfilerConfig::default()).unwrap();
        assert!(p.resolved());
        for s in &p.solutions {
            assert!(inst.system.is_satisfied_by(
                s.iter()
                    .enumerate()
                    .fold(0, |m, (i, &b)| m | (u64::from(b) << i))
            ));
            let (x1, x2) = inst.decode(s);
            assert!(eval_s3(&inst.curve, x1, x2, inst.x_p()).is_zero());
            let sum = SummationInstance::new(inst.curve.clone(), vec![x1, x2, inst.x_p()]).unwrap();
            assert!(verify_vanishing_by_points(&sum).unwrap().vanishes());
        }
    }
}

#[test]
fn subspace_profiles_are_complete() {
    for (n, seed) in [(8, 2), (8, 5), (10, 4), (12, 7), (16, 1)] {
        let inst = build_remark_w11_instance(n, seed).unwrap();
        let p = profile(&inst.system, &ProfilerConfig::default()).unwrap();
        assert_eq!(
            p.solution_masks(),
            inst.system.brute_force_solutions().unwrap()
        );
        // every subspace pair zeroing S_3 is found
        let k = inst.curve.field();
        let d = inst.subspace.len();
        let span: Vec<Elem> = (0..1u64 << d)
            .map(|b| {
                (0..d)
                    .filter(|j| b >> j & 1 == 1)
                    .fold(k.zero(), |acc, j| k.add(acc, inst.subspace[j]))
            })
            .collect();
        let zeros = span
            .iter()
            .flat_map(|&a| span.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| eval_s3(&inst.curve, a, b, inst.x_p()).is_zero())
            .count();
        assert_eq!(zeros, p.solutions.len());
    }
}

#[test]
fn chain_consistency_matches_summation_vanishing() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for n in [3, 4] {
        let k = Field::new(2, n, None).unwrap();
        let e = random_ordinary_curve(&k, &mut rng);
        for m in [4, 5] {
            let s = summation_poly(&e, m).unwrap();
            let mut checked = 0;
            for trial in 0..30 {
                let xs: Vec<Elem> = if trial % 2 == 0 {
                    let ps: Vec<Point> = (0..m - 1).map(|_| e.random_point(&mut rng)).collect();
                    let sum = ps.iter().fold(Point::Infinity, |a, p| e.add(&a, p));
                    ps.iter().chain([&sum]).filter_map(Point::x).collect()
                } else {
                    (0..m).map(|_| k.random(&mut rng)).collect()
                };
                if xs.len() != m {
                    continue;
                }
                if let Some(c) = chain_consistent(&e, &xs).unwrap() {
                    assert_eq!(c, s.evaluate(&xs).unwrap().is_zero(), "{n} {m} {xs:?}");
                    checked += 1;
                }
            }
            assert!(checked >= 10);
        }
    }
}

#[test]
fn split_chain_shape() {
    let k = Field::new(2, 4, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let e = random_ordinary_curve(&k, &mut rng);
    let xs: Vec<Elem> = (0..6).map(|_| k.random_nonzero(&mut rng)).collect();
    let s = build_split_system(&e, &xs).unwrap();
    assert_eq!(s.chain.len(), 4);
    assert_eq!(s.system.nvars(), 12);
    assert_eq!(s.system.generators().len(), 16);
    // outer links involve a single unknown, whose square and itself are additive
    for g in s.system.generators()[..4]
        .iter()
        .chain(&s.system.generators()[12..])
    {
        assert!(g.degree().unwrap_or(0) <= 1);
    }
}

#[test]
fn experiment_output_is_reproducible() {
    let cfg = ExperimentConfig {
        ns: vec![8, 10],
        seeds: vec![0, 1, 2],
        profiler: ProfilerConfig::default(),
        timing: false,
    };
    let a = run_experiment(&cfg).unwrap();
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(to_csv(&a), to_csv(&b));
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.sidecar().to_string(), y.sidecar().to_string());
    }
    let csv = to_csv(&a);
    assert!(csv.starts_with("n,seed,ffd,solving_degree,matrix_max_dims,wall_time_ms\n"));
    assert_eq!(csv.lines().count(), 7);
}
