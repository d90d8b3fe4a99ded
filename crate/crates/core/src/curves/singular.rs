//! Explicit group isomorphisms for the two singular models
//! `y^2 + xy = x^3` (nodal, `E_ns = F*`) and `y^2 = x^3` (cuspidal, `E_ns = F+`).

use super::{Point, WeierstrassModel};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

pub fn nodal_model(field: &Field) -> WeierstrassModel {
    WeierstrassModel::from_ints(field, [1, 0, 0, 0, 0])
}

pub fn cuspidal_model(field: &Field) -> WeierstrassModel {
    WeierstrassModel::from_ints(field, [0; 5])
}

/// `t -> (t/(t-1)^2, t/(t-1)^3)`, with `1 -> O`.
pub fn nodal_param(k: &Field, t: Elem) -> Result<Point> {
    if t.is_zero() {
        return Err(Error::Precondition("t must be nonzero".into()));
    }
    let d = k.sub(t, k.one());
    if d.is_zero() {
        return Ok(Point::Infinity);
    }
    let d2 = k.inv(k.square(d))?;
    let x = k.mul(t, d2);
    let y = k.mul(x, k.inv(d)?);
    Ok(Point::Affine { x, y })
}

/// `(x, y) -> 1 + x/y`, with `O -> 1`.
pub fn nodal_param_inv(k: &Field, p: &Point) -> Result<Elem> {
    match *p {
        Point::Infinity => Ok(k.one()),
        Point::Affine { x, y } => {
            if y.is_zero() {
                return Err(Error::SingularPoint);
            }
            Ok(k.add(k.one(), k.div(x, y)?))
        }
    }
}

/// `t -> (1/t^2, 1/t^3)`, with `0 -> O`.
pub fn cuspidal_param(k: &Field, t: Elem) -> Result<Point> {
    if t.is_zero() {
        return Ok(Point::Infinity);
    }
    let s = k.inv(t)?;
    let x = k.square(s);
    Ok(Point::Affine { x, y: k.mul(x, s) })
}

/// `(x, y) -> x/y`, with `O -> 0`.
pub fn cuspidal_param_inv(k: &Field, p: &Point) -> Result<Elem> {
    match *p {
        Point::Infinity => Ok(k.zero()),
        Point::Affine { x, y } => {
            if y.is_zero() {
                return Err(Error::SingularPoint);
            }
            k.div(x, y)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodal_parametrization_is_a_group_isomorphism() {
        for (p, n) in [(2, 1), (2, 3), (2, 4), (3, 2), (5, 1), (7, 1), (11, 1)] {
            let k = Field::new(p, n, None).unwrap();
            let e = nodal_model(&k);
            let units: Vec<Elem> = k.elements().filter(|t| !t.is_zero()).collect();
            let pts: Vec<Point> = units.iter().map(|&t| nodal_param(&k, t).unwrap()).collect();
            for (&t, pt) in units.iter().zip(&pts) {
                e.check_point(pt).unwrap();
                assert_eq!(nodal_param_inv(&k, pt).unwrap(), t);
            }
            assert_eq!(e.points().len(), units.len());
            for (i, &s) in units.iter().enumerate() {
                for (j, &t) in units.iter().enumerate() {
                    assert_eq!(
                        e.add(&pts[i], &pts[j]),
                        nodal_param(&k, k.mul(s, t)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn cuspidal_parametrization_is_a_group_isomorphism() {
        for (p, n) in [(2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let k = Field::new(p, n, None).unwrap();
            let e = cuspidal_model(&k);
            let elems: Vec<Elem> = k.elements().collect();
            assert_eq!(e.points().len(), elems.len());
            for &s in &elems {
                let ps = cuspidal_param(&k, s).unwrap();
                e.check_point(&ps).unwrap();
                assert_eq!(cuspidal_param_inv(&k, &ps).unwrap(), s);
                for &t in &elems {
                    let pt = cuspidal_param(&k, t).unwrap();
                    assert_eq!(e.add(&ps, &pt), cuspidal_param(&k, k.add(s, t)).unwrap());
                }
            }
        }
    }
}
