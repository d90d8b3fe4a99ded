use super::{Point, WeierstrassModel};
use crate::error::{Error, Result};

/// `P -> Tr((x(P) + a2)/a1^2)` on an ordinary curve in characteristic 2,
/// with `O -> 0`.
pub fn trace_morphism(e: &WeierstrassModel, p: &Point) -> Result<u8> {
    if !e.is_ordinary_binary() {
        return Err(Error::Precondition(
            "trace morphism needs characteristic 2 and a1 != 0".into(),
        ));
    }
    let k = e.field();
    let [a1, a2, ..] = *e.a();
    match *p {
        Point::Infinity => Ok(0),
        Point::Affine { x, .. } => {
            let v = k.div(k.add(x, a2), k.square(a1))?;
            Ok(k.trace_value(v) as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::random_ordinary_curve;
    use crate::fields::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn homomorphism_with_kernel_twice_the_group() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=6 {
            let k = Field::new(2, n, None).unwrap();
            for _ in 0..4 {
                let e = random_ordinary_curve(&k, &mut rng);
                let pts = e.points();
                let doubles: std::collections::BTreeSet<Point> =
                    pts.iter().map(|p| e.double(p)).collect();
                for p in &pts {
                    let tp = trace_morphism(&e, p).unwrap();
                    assert_eq!(tp == 0, doubles.contains(p));
                    for q in &pts {
                        let tq = trace_morphism(&e, q).unwrap();
                        assert_eq!(trace_morphism(&e, &e.add(p, q)).unwrap(), tp ^ tq);
                    }
                }
            }
        }
    }
}
