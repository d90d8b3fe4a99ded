use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semaev::curves::{random_ordinary_curve, Point, WeierstrassModel};
use semaev::descent::{
    coordinate_point, cor_w8_combination, descend, lemma_w15_check, prop_w7_check, DescendedSystem,
    W7Mode,
};
use semaev::fields::{Basis, Field};
use semaev::sumpoly::{var_names, MultiPoly};

fn random_poly(k: &Field, r: usize, deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> MultiPoly {
    let mut f = MultiPoly::zero(k, var_names("X", r));
    for _ in 0..terms {
        let e = (0..r).map(|_| rng.gen_range(0..=deg)).collect();
        f.add_term(e, k.random(rng));
    }
    f
}

fn non_two_torsion(e: &WeierstrassModel, rng: &mut ChaCha8Rng) -> Point {
    loop {
        let p = e.random_point(rng);
        if !e.double(&p).is_infinity() {
            return p;
        }
    }
}

#[test]
fn zero_sets_correspond_under_descent() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for (p, n) in [(2, 2), (2, 3), (2, 4), (3, 2), (5, 1), (7, 1), (13, 1)] {
        let k = Field::new(p, n, None).unwrap();
        for r in 1..=2 {
            for _ in 0..3 {
                let basis = Basis::random(&k, &mut rng);
                let f = random_poly(&k, r, 4, 5, &mut rng);
                let comps = descend(&f, &basis).unwrap();
                let pts: Vec<Vec<_>> = if r == 1 {
                    k.elements().map(|a| vec![a]).collect()
                } else {
                    k.elements()
                        .flat_map(|a| k.elements().map(move |b| vec![a, b]))
                        .collect()
                };
                for pt in pts {
                    let zero = f.evaluate(&pt).unwrap().is_zero();
                    let cp = coordinate_point(&basis, &pt);
                    let all = comps.iter().all(|c| c.evaluate(&cp).unwrap().is_zero());
                    assert_eq!(zero, all);
                }
            }
        }
    }
}

#[test]
fn ring_trace_identity_on_random_quadratics() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for (p, n) in [(2, 3), (2, 4), (3, 2)] {
        let k = Field::new(p, n, None).unwrap();
        for _ in 0..5 {
            let basis = Basis::random(&k, &mut rng);
            let f = random_poly(&k, 2, 2, 5, &mut rng);
            let c = k.random_nonzero(&mut rng);
            let r = lemma_w15_check(&f, c, &basis).unwrap();
            assert!(r.holds && r.ideal_holds);
        }
    }
}

#[test]
fn trace_identity_holds_symbolically_up_to_degree_ten() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for n in 3..=10 {
        let k = Field::new(2, n, None).unwrap();
        let e = random_ordinary_curve(&k, &mut rng);
        let p = non_two_torsion(&e, &mut rng);
        let r = prop_w7_check(&e, &p, if n <= 6 { W7Mode::Both } else { W7Mode::Auto }).unwrap();
        assert!(r.holds(), "n={n}: {r:?}");
        assert_eq!(r.symbolic, Some(true));
    }
}

#[test]
fn weighted_component_sum_is_linear_for_several_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for n in [4, 6, 8] {
        let k = Field::new(2, n, None).unwrap();
        let e = random_ordinary_curve(&k, &mut rng);
        let p = non_two_torsion(&e, &mut rng);
        for _ in 0..3 {
            let basis = Basis::random(&k, &mut rng);
            let r = cor_w8_combination(&e, &p, &basis).unwrap();
            assert!(r.equal);
            assert!(r.rhs.total_degree().unwrap_or(0) <= 1);
            assert!(r.components.iter().any(|c| c.total_degree() == Some(2)));
            let d = semaev::curves::trace_morphism(&e, &p).unwrap();
            let constant = r.rhs.coeff(&vec![0; 2 * n]);
            assert_eq!(u8::from(!constant.is_zero()), d);
        }
    }
}

#[test]
fn descended_system_serializes() {
    let k = Field::new(2, 3, None).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let basis = Basis::random(&k, &mut rng);
    let f = random_poly(&k, 2, 3, 4, &mut rng);
    let sys = DescendedSystem::new(vec![f], &basis).unwrap();
    let a = serde_json::to_string(&sys.descriptor()).unwrap();
    let b = serde_json::to_string(
        &DescendedSystem::new(sys.sources.clone(), &basis)
            .unwrap()
            .descriptor(),
    )
    .unwrap();
    assert_eq!(a, b);
    assert_eq!(sys.equations().len(), 3);
}
