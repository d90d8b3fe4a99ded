use std::collections::HashMap;

use super::summation::summation_poly;
use crate::curves::{cuspidal_param, cuspidal_param_inv, Point, WeierstrassModel};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field, QuadraticExtension};

/// Arity cap of the meet-in-the-middle relation search.
pub const MAX_RELATION_ARITY: usize = 44;
const EXPLICIT_CHECK_ARITY: usize = 5;

#[derive(Clone, Debug)]
pub struct SummationInstance {
    pub model: WeierstrassModel,
    pub inputs: Vec<Elem>,
}

impl SummationInstance {
    pub fn new(model: WeierstrassModel, inputs: Vec<Elem>) -> Result<SummationInstance> {
        if inputs.len() < 2 {
            return Err(Error::Precondition("arity must be at least 2".into()));
        }
        if !inputs.iter().all(|&x| model.field().contains(x)) {
            return Err(Error::FieldMismatch);
        }
        Ok(SummationInstance { model, inputs })
    }

    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// Points over the quadratic extension with the given x-coordinates and zero sum.
    Witness {
        extension: QuadraticExtension,
        points: Vec<Point>,
    },
    /// No relation exists; `value` is `S(inputs)` when it was evaluated explicitly.
    Refutation { value: Option<Elem> },
}

impl Verdict {
    pub fn vanishes(&self) -> bool {
        matches!(self, Verdict::Witness { .. })
    }
}

/// Searches `±P_0 ± ... ± P_{r-1} = 0` with `x(P_i) = inputs[i]`, points over
/// the quadratic extension. Returns the signed points on success.
pub fn point_relation(
    e: &WeierstrassModel,
    inputs: &[Elem],
) -> Result<Option<(QuadraticExtension, Vec<Point>)>> {
    let r = inputs.len();
    if r > MAX_RELATION_ARITY {
        return Err(Error::ResourceCap(format!(
            "relation search over {r} points"
        )));
    }
    let qe = QuadraticExtension::of(e.field());
    if let Some(found) = cusp_relation(e, &qe, inputs)? {
        return Ok(found);
    }
    let big = e.base_change(&qe);
    let mut pts = Vec::with_capacity(r);
    for &x in inputs {
        let lifts = big.lift_x(qe.embed(x));
        let p = *lifts.first().ok_or_else(|| {
            Error::Precondition(format!(
                "{} is not the x-coordinate of a non-singular point",
                e.field().format(x)
            ))
        })?;
        pts.push(p);
    }
    let signs = signed_zero_sum(&big, &pts)?;
    Ok(signs.map(|s| {
        let points = pts
            .iter()
            .zip(&s)
            .map(|(p, &neg)| if neg { big.neg(p) } else { *p })
            .collect();
        (qe, points)
    }))
}

/// Like [`point_relation`] but with every point over the base field. Each
/// input must be the x-coordinate of a rational point; then every lift is
/// rational and the search is complete.
pub fn rational_point_relation(
    e: &WeierstrassModel,
    inputs: &[Elem],
) -> Result<Option<Vec<Point>>> {
    let r = inputs.len();
    if r > MAX_RELATION_ARITY {
        return Err(Error::ResourceCap(format!(
            "relation search over {r} points"
        )));
    }
    let k = e.field();
    let mut pts = Vec::with_capacity(r);
    for &x in inputs {
        let p = *e.lift_x(x).first().ok_or_else(|| {
            Error::Precondition(format!(
                "{} is not the x-coordinate of a rational non-singular point",
                k.format(x)
            ))
        })?;
        pts.push(p);
    }
    let signs = if e.a().iter().all(|a| a.is_zero()) {
        let ts = pts
            .iter()
            .map(|p| cuspidal_param_inv(k, p))
            .collect::<Result<Vec<Elem>>>()?;
        signed_zero_sum_additive(k, &ts)
    } else {
        signed_zero_sum(e, &pts)?
    };
    Ok(signs.map(|s| {
        pts.iter()
            .zip(&s)
            .map(|(p, &neg)| if neg { e.neg(p) } else { *p })
            .collect()
    }))
}

/// On `y^2 = x^3` every input with a square root in the base field is `x(T(t))`
/// for `t = 1/sqrt(x)`, and the group is additive in `t`. `None` when the
/// shortcut does not apply.
#[allow(clippy::type_complexity)]
fn cusp_relation(
    e: &WeierstrassModel,
    qe: &QuadraticExtension,
    inputs: &[Elem],
) -> Result<Option<Option<(QuadraticExtension, Vec<Point>)>>> {
    let k = e.field();
    if e.a().iter().any(|a| !a.is_zero()) {
        return Ok(None);
    }
    let mut ts = Vec::with_capacity(inputs.len());
    for &x in inputs {
        let Some(s) = (!x.is_zero()).then(|| k.sqrt(x)).flatten() else {
            return Ok(None);
        };
        ts.push(k.inv(s)?);
    }
    let Some(signs) = signed_zero_sum_additive(k, &ts) else {
        return Ok(Some(None));
    };
    let big = qe.ext();
    let points = ts
        .iter()
        .zip(&signs)
        .map(|(&t, &neg)| cuspidal_param(big, qe.embed(if neg { k.neg(t) } else { t })))
        .collect::<Result<Vec<Point>>>()?;
    Ok(Some(Some((qe.clone(), points))))
}

/// Signs (true = negated) with `sum ±t_i = 0` in the additive group of `k`.
fn signed_zero_sum_additive(k: &Field, ts: &[Elem]) -> Option<Vec<bool>> {
    let r = ts.len();
    if r == 0 {
        return Some(vec![]);
    }
    let h = r.div_ceil(2);
    let walk = |part: &[Elem], fixed: usize, f: &mut dyn FnMut(Elem, u64) -> bool| {
        let mut sum = part.iter().fold(k.zero(), |acc, &t| k.add(acc, t));
        let doubles: Vec<Elem> = part.iter().map(|&t| k.add(t, t)).collect();
        let mut mask = 0u64;
        if f(sum, mask) {
            return;
        }
        for step in 1u64..1 << part.len().saturating_sub(fixed) {
            let bit = step.trailing_zeros() as usize + fixed;
            mask ^= 1 << bit;
            sum = if mask >> bit & 1 == 1 {
                k.sub(sum, doubles[bit])
            } else {
                k.add(sum, doubles[bit])
            };
            if f(sum, mask) {
                return;
            }
        }
    };
    let mut table: HashMap<Elem, u64> = HashMap::new();
    walk(&ts[..h], 1, &mut |sum, mask| {
        table.entry(sum).or_insert(mask);
        false
    });
    let mut hit = None;
    walk(&ts[h..], 0, &mut |sum, mask| {
        if let Some(&lm) = table.get(&k.neg(sum)) {
            hit = Some((lm, mask));
            return true;
        }
        false
    });
    hit.map(|(lm, rm)| {
        (0..r)
            .map(|i| {
                if i < h {
                    lm >> i & 1 == 1
                } else {
                    rm >> (i - h) & 1 == 1
                }
            })
            .collect()
    })
}

/// Signs (true = negated) making the sum vanish, by meet in the middle.
fn signed_zero_sum(e: &WeierstrassModel, pts: &[Point]) -> Result<Option<Vec<bool>>> {
    let r = pts.len();
    if r == 0 {
        return Ok(Some(vec![]));
    }
    // the first sign is fixed to +
    let h = r.div_ceil(2);
    let left = &pts[..h];
    let right = &pts[h..];
    let mut table: HashMap<Point, u64> = HashMap::new();
    walk(e, left, 1, |sum, mask| {
        table.entry(sum).or_insert(mask);
        false
    });
    let mut hit = None;
    walk(e, right, 0, |sum, mask| {
        if let Some(&lm) = table.get(&e.neg(&sum)) {
            hit = Some((lm, mask));
            return true;
        }
        false
    });
    Ok(hit.map(|(lm, rm)| {
        (0..r)
            .map(|i| {
                if i < h {
                    lm >> i & 1 == 1
                } else {
                    rm >> (i - h) & 1 == 1
                }
            })
            .collect()
    }))
}

/// Visits every signed sum of `pts` in Gray-code order, leaving the first
/// `fixed` signs positive. The callback returns true to stop.
fn walk<F: FnMut(Point, u64) -> bool>(e: &WeierstrassModel, pts: &[Point], fixed: usize, mut f: F) {
    let mut sum = pts.iter().fold(Point::Infinity, |acc, p| e.add(&acc, p));
    let doubles: Vec<Point> = pts.iter().map(|p| e.double(p)).collect();
    let free = pts.len().saturating_sub(fixed);
    let mut mask = 0u64;
    if f(sum, mask) {
        return;
    }
    for step in 1u64..(1u64 << free) {
        let bit = step.trailing_zeros() as usize + fixed;
        mask ^= 1 << bit;
        sum = if mask >> bit & 1 == 1 {
            e.sub(&sum, &doubles[bit])
        } else {
            e.add(&sum, &doubles[bit])
        };
        if f(sum, mask) {
            return;
        }
    }
}

/// Witness or refutation of `S_{A,r}(inputs) = 0`. For small arity the
/// explicit polynomial is evaluated as well and must agree.
pub fn verify_vanishing_by_points(inst: &SummationInstance) -> Result<Verdict> {
    let relation = point_relation(&inst.model, &inst.inputs)?;
    let value = if inst.arity() <= EXPLICIT_CHECK_ARITY {
        Some(summation_poly(&inst.model, inst.arity())?.evaluate(&inst.inputs)?)
    } else {
        None
    };
    match (relation, value) {
        (Some((extension, points)), None) => Ok(Verdict::Witness { extension, points }),
        (Some((extension, points)), Some(v)) if v.is_zero() => {
            Ok(Verdict::Witness { extension, points })
        }
        (None, Some(v)) if v.is_zero() => Err(Error::Malformed(
            "summation polynomial vanishes without a point relation".into(),
        )),
        (Some(_), Some(_)) => Err(Error::Malformed(
            "point relation found but the summation polynomial is nonzero".into(),
        )),
        (None, value) => Ok(Verdict::Refutation { value }),
    }
}
