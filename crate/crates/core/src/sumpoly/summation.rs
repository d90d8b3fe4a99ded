use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::mpoly::{var_names, MultiPoly};
use super::resultant::resultant_with_quadratic;
use crate::curves::WeierstrassModel;
use crate::error::{Error, Result};

/// Largest arity for which the explicit polynomial is built.
pub const MAX_EXPLICIT_ARITY: usize = 7;

/// `S_3` in the variables with indices `i, j, l` of `vars`.
pub fn s3_in(e: &WeierstrassModel, vars: Vec<String>, i: usize, j: usize, l: usize) -> MultiPoly {
    let k = e.field();
    let [b2, b4, b6, b8] = *e.b();
    let x0 = MultiPoly::var(k, vars.clone(), i);
    let x1 = MultiPoly::var(k, vars.clone(), j);
    let x2 = MultiPoly::var(k, vars.clone(), l);
    let p01 = x0.mul(&x1);
    let p02 = x0.mul(&x2);
    let p12 = x1.mul(&x2);
    let p012 = p01.mul(&x2);
    let quartic = p01.pow(2).add(&p02.pow(2)).add(&p12.pow(2));
    let cubic = p012.mul(&x0.add(&x1).add(&x2)).scale(k.from_int(2));
    let quad = p01.add(&p02).add(&p12);
    let lin = x0.add(&x1).add(&x2);
    quartic
        .sub(&cubic)
        .sub(&p012.scale(b2))
        .sub(&quad.scale(b4))
        .sub(&lin.scale(b6))
        .sub(&MultiPoly::constant(k, vars, b8))
}

type Key = (u64, Vec<u64>, Vec<Vec<u64>>, usize);

static CACHE: OnceLock<Mutex<HashMap<Key, MultiPoly>>> = OnceLock::new();

/// `S_{A,r}` in the variables `X0 .. X{r-1}` (memoized per model and arity).
pub fn summation_poly(e: &WeierstrassModel, r: usize) -> Result<MultiPoly> {
    if !(2..=MAX_EXPLICIT_ARITY).contains(&r) {
        return Err(Error::OutOfRange(format!(
            "arity {r} outside 2..={MAX_EXPLICIT_ARITY}"
        )));
    }
    let d = e.descriptor();
    let key = (d.field.p, d.field.modulus, d.a, r);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("cache lock").get(&key) {
        return Ok(s.clone());
    }
    let s = build(e, r)?;
    cache.lock().expect("cache lock").insert(key, s.clone());
    Ok(s)
}

fn build(e: &WeierstrassModel, r: usize) -> Result<MultiPoly> {
    let k = e.field();
    match r {
        2 => {
            let v = var_names("X", 2);
            Ok(MultiPoly::var(k, v.clone(), 0).sub(&MultiPoly::var(k, v, 1)))
        }
        3 => Ok(s3_in(e, var_names("X", 3), 0, 1, 2)),
        _ => {
            let prev = summation_poly(e, r - 1)?;
            // ring X0 .. X{r-1}, X
            let mut vars = var_names("X", r);
            vars.push("X".into());
            let mut map: Vec<usize> = (0..r - 2).collect();
            map.push(r);
            let f = prev.embed(vars.clone(), &map);
            let g = s3_in(e, vars, r - 2, r - 1, r);
            resultant_with_quadratic(&f, &g, r)?.drop_vars(&[r])
        }
    }
}

/// Value of `S_3` at a point, without building the polynomial.
pub fn eval_s3(
    e: &WeierstrassModel,
    x0: crate::fields::Elem,
    x1: crate::fields::Elem,
    x2: crate::fields::Elem,
) -> crate::fields::Elem {
    let k = e.field();
    let [b2, b4, b6, b8] = *e.b();
    let p01 = k.mul(x0, x1);
    let p02 = k.mul(x0, x2);
    let p12 = k.mul(x1, x2);
    let p012 = k.mul(p01, x2);
    let sum = k.add(k.add(x0, x1), x2);
    let quartic = k.add(k.add(k.square(p01), k.square(p02)), k.square(p12));
    let cubic = k.scale(k.mul(p012, sum), 2);
    let quad = k.add(k.add(p01, p02), p12);
    let mut v = k.sub(quartic, cubic);
    v = k.sub(v, k.mul(b2, p012));
    v = k.sub(v, k.mul(b4, quad));
    v = k.sub(v, k.mul(b6, sum));
    k.sub(v, b8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::Field;

    #[test]
    fn cuspidal_s3_text() {
        let k = Field::prime(7).unwrap();
        let e = WeierstrassModel::from_ints(&k, [0; 5]);
        let s = summation_poly(&e, 3).unwrap();
        assert_eq!(
            s.to_text(),
            "X0^2*X1^2 - 2*X0^2*X1*X2 - 2*X0*X1^2*X2 + X0^2*X2^2 - 2*X0*X1*X2^2 + X1^2*X2^2"
        );
    }

    #[test]
    fn arity_bounds() {
        let k = Field::prime(5).unwrap();
        let e = WeierstrassModel::from_ints(&k, [0, 0, 0, 1, 1]);
        assert!(summation_poly(&e, 1).is_err());
        assert!(summation_poly(&e, 8).is_err());
        assert_eq!(summation_poly(&e, 2).unwrap().to_text(), "X0 - X1");
    }

    #[test]
    fn pointwise_s3_matches_polynomial() {
        let k = Field::new(3, 2, None).unwrap();
        let e = WeierstrassModel::from_ints(&k, [1, 2, 0, 1, 2]);
        let s = summation_poly(&e, 3).unwrap();
        for a in k.elements() {
            for b in k.elements().step_by(2) {
                let c = k.add(a, k.generator());
                assert_eq!(s.evaluate(&[a, b, c]).unwrap(), eval_s3(&e, a, b, c));
            }
        }
    }
}
