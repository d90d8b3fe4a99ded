use serde::{Deserialize, Serialize};

use super::subsetsum::{Group, GroupElem, SubsetSumInstance};
use crate::curves::{
    cuspidal_model, cuspidal_param, find_curve_with_large_order_point, CurveDescriptor,
    CurveFamily, CurveSearch, Point, PointDescriptor, WeierstrassModel,
};
use crate::error::{Error, Result};
use crate::fields::{is_prime, Elem, Field};
use crate::sumpoly::{rational_point_relation, SummationInstance};

/// Largest point order the elliptic route will search for.
pub const DEFAULT_ORDER_BOUND: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Elliptic,
    Cuspidal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumpolyCertificate {
    pub route: Route,
    /// Indices of the nonzero elements, in input order.
    pub kept: Vec<usize>,
    /// Indices of zero elements, never part of the pulled-back subset.
    pub dropped: Vec<usize>,
    /// `w' = 2w - sum of kept elements`.
    pub w_prime: GroupElem,
    pub curve: CurveDescriptor,
    /// Base point of the elliptic route.
    pub point: Option<PointDescriptor>,
    /// Rational point behind each input: `v_i P` or the cusp image of `v_i`,
    /// then the one for `w'` when it is an input.
    pub references: Vec<PointDescriptor>,
    pub target_input: bool,
    /// Verdict decided without a polynomial (arity below two or `|w'|` too large).
    pub constant: Option<bool>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct SumpolyReduction {
    /// `None` when the verdict is constant.
    pub instance: Option<SummationInstance>,
    pub certificate: SumpolyCertificate,
}

impl SumpolyReduction {
    pub fn field(&self) -> Result<Field> {
        Field::from_descriptor(&self.certificate.curve.field)
    }

    pub fn model(&self) -> Result<WeierstrassModel> {
        WeierstrassModel::from_descriptor(&self.certificate.curve)
    }
}

fn split_zeros(inst: &SubsetSumInstance) -> (Vec<usize>, Vec<usize>) {
    let zero = inst.group.zero();
    (0..inst.len()).partition(|&i| inst.elements[i] != zero)
}

fn w_prime(inst: &SubsetSumInstance, kept: &[usize]) -> Result<GroupElem> {
    let g = &inst.group;
    g.sub(&g.scale(2, &inst.target)?, &inst.sum_of(kept)?)
}

#[allow(clippy::too_many_arguments)]
fn finish(
    route: Route,
    e: &WeierstrassModel,
    point: Option<&Point>,
    kept: Vec<usize>,
    dropped: Vec<usize>,
    w_prime: GroupElem,
    references: Vec<Point>,
    target_input: bool,
    forced: Option<bool>,
    mut notes: Vec<String>,
) -> Result<SumpolyReduction> {
    if !dropped.is_empty() {
        notes.push(format!(
            "zero elements {dropped:?} removed; they never change a sum"
        ));
    }
    let mut constant = forced;
    let instance = if forced.is_some() {
        None
    } else if references.len() < 2 {
        let solvable = references.is_empty();
        notes.push(format!(
            "arity {} below two: {}",
            references.len(),
            if solvable {
                "empty sum already hits the target"
            } else {
                "a single nonzero point never sums to O"
            }
        ));
        constant = Some(solvable);
        None
    } else {
        let xs = references
            .iter()
            .map(|p| {
                p.x()
                    .ok_or_else(|| Error::Precondition("reference point at infinity".into()))
            })
            .collect::<Result<Vec<Elem>>>()?;
        Some(SummationInstance::new(e.clone(), xs)?)
    };
    Ok(SumpolyReduction {
        instance,
        certificate: SumpolyCertificate {
            route,
            kept,
            dropped,
            w_prime,
            curve: e.descriptor(),
            point: point.map(|p| e.point_descriptor(p)),
            references: references.iter().map(|p| e.point_descriptor(p)).collect(),
            target_input,
            constant,
            notes,
        },
    })
}

/// F_p-linear identification of `(Z/pZ)^r` with `F_{p^r}` by power-basis coordinates.
pub fn vector_to_field(k: &Field, v: &[i64]) -> Result<Elem> {
    let coords: Vec<u64> = v
        .iter()
        .map(|&c| c.rem_euclid(k.characteristic() as i64) as u64)
        .collect();
    k.from_coords(&coords)
}

/// Subset sum over `(Z/pZ)^r`, `p` an odd prime, to the summation polynomial of
/// the cusp `y^2 = x^3` over `F_{p^r}` at the inputs `1/phi(v_i)^2` (and `1/phi(w')^2`).
pub fn subsetsum_to_sumpoly_cusp(inst: &SubsetSumInstance) -> Result<SumpolyReduction> {
    let Group::Power { m: p, r } = inst.group else {
        return Err(Error::Precondition(
            "cuspidal route needs a group (Z/pZ)^r".into(),
        ));
    };
    if p == 2 || !is_prime(p) {
        return Err(Error::Precondition(format!(
            "cuspidal route needs an odd prime, got {p}"
        )));
    }
    if r == 0 {
        return Err(Error::Precondition("cuspidal route needs r >= 1".into()));
    }
    let k = Field::new(p, r, None)?;
    let e = cuspidal_model(&k);
    let (kept, dropped) = split_zeros(inst);
    let wp = w_prime(inst, &kept)?;
    let mut references = Vec::with_capacity(kept.len() + 1);
    for &i in &kept {
        references.push(cuspidal_param(&k, vector_to_field(&k, &inst.elements[i])?)?);
    }
    let target_input = wp != inst.group.zero();
    if target_input {
        references.push(cuspidal_param(&k, vector_to_field(&k, &wp)?)?);
    }
    finish(
        Route::Cuspidal,
        &e,
        None,
        kept,
        dropped,
        wp,
        references,
        target_input,
        None,
        Vec::new(),
    )
}

/// Subset sum over `Z` to the summation polynomial of an elliptic curve with a
/// point `P` of order above `1 + 2 sum |v_i|`, at the inputs `x(v_i P)` (and `x(w' P)`).
pub fn subsetsum_to_sumpoly_ec(
    inst: &SubsetSumInstance,
    order_bound: u64,
    seed: u64,
) -> Result<SumpolyReduction> {
    if inst.group != Group::Integers {
        return Err(Error::Precondition(
            "elliptic route needs a subset sum over Z".into(),
        ));
    }
    let (kept, dropped) = split_zeros(inst);
    let wp = w_prime(inst, &kept)?;
    let total: u64 = kept
        .iter()
        .map(|&i| inst.elements[i][0].unsigned_abs())
        .sum();
    let needed = 1 + 2 * total;
    if needed > order_bound {
        return Err(Error::ResourceCap(format!(
            "point order {needed} exceeds the bound {order_bound}"
        )));
    }
    let search = CurveSearch {
        family: CurveFamily::Prime,
        seed,
        ..CurveSearch::default()
    };
    let found = find_curve_with_large_order_point(needed, &search)?;
    let e = found.curve;
    let p = found.point;
    let mut notes = vec![format!(
        "point of order {} on a curve of order {} over GF({})",
        found.point_order,
        found.group_order,
        found.field.order()
    )];
    let mut references: Vec<Point> = kept
        .iter()
        .map(|&i| e.mul(inst.elements[i][0] as i128, &p))
        .collect();
    let target_input = wp[0] != 0;
    if wp[0].unsigned_abs() > total {
        notes.push(format!(
            "|w'| = {} exceeds the sum of |v_i| = {total}: unsolvable",
            wp[0].unsigned_abs()
        ));
        return finish(
            Route::Elliptic,
            &e,
            Some(&p),
            kept,
            dropped,
            wp,
            Vec::new(),
            target_input,
            Some(false),
            notes,
        );
    }
    if target_input {
        references.push(e.mul(wp[0] as i128, &p));
    }
    finish(
        Route::Elliptic,
        &e,
        Some(&p),
        kept,
        dropped,
        wp,
        references,
        target_input,
        None,
        notes,
    )
}

/// Rational points with the instance's x-coordinates summing to `O`, or `None`. A constant-verdict reduction yields the empty list or `None`.
pub fn decide_sumpoly(red: &SumpolyReduction) -> Result<Option<Vec<Point>>> {
    match (&red.instance, red.certificate.constant) {
        (_, Some(true)) => Ok(Some(Vec::new())),
        (_, Some(false)) | (None, None) => Ok(None),
        (Some(inst), None) => rational_point_relation(&inst.model, &inst.inputs),
    }
}

/// Signs `s_i` with `Q_i = s_i R_i` after checking that the points lie on the
/// curve, have the input x-coordinates and sum to `O`.
pub fn relation_signs(cert: &SumpolyCertificate, points: &[Point]) -> Result<Vec<i8>> {
    if cert.references.len() != points.len() {
        return Err(Error::InvalidWitness(format!(
            "expected {} points, got {}",
            cert.references.len(),
            points.len()
        )));
    }
    let e = WeierstrassModel::from_descriptor(&cert.curve)?;
    let mut sum = Point::Infinity;
    let mut signs = Vec::with_capacity(points.len());
    for (q, d) in points.iter().zip(&cert.references) {
        if !e.is_on_curve(q) {
            return Err(Error::InvalidWitness("point is not on the curve".into()));
        }
        let r = e.point_from_descriptor(d)?;
        signs.push(if *q == r {
            1
        } else if *q == e.neg(&r) {
            -1
        } else {
            return Err(Error::InvalidWitness(
                "point has the wrong x-coordinate".into(),
            ));
        });
        sum = e.add(&sum, q);
    }
    if !sum.is_infinity() {
        return Err(Error::InvalidWitness("points do not sum to O".into()));
    }
    Ok(signs)
}

/// `n_i in {+1, -1}` with `sum n_i v_i = w'` over the kept elements.
pub fn pull_back_signs(cert: &SumpolyCertificate, points: &[Point]) -> Result<Vec<i8>> {
    if cert.constant.is_some() {
        if !points.is_empty() || cert.constant == Some(false) {
            return Err(Error::InvalidWitness(
                "reduction has no relation to witness".into(),
            ));
        }
        return Ok(Vec::new());
    }
    let mut s = relation_signs(cert, points)?;
    if cert.target_input {
        let last = s.pop().expect("target input present");
        for x in &mut s {
            *x *= -last;
        }
    }
    Ok(s)
}

/// Subset `{i : n_i = +1}` (so `n_i = 2 eps_i - 1`), checked against the instance.
pub fn subset_from_signs(
    cert: &SumpolyCertificate,
    inst: &SubsetSumInstance,
    signs: &[i8],
) -> Result<Vec<usize>> {
    if signs.len() != cert.kept.len() {
        return Err(Error::InvalidWitness(
            "sign vector has the wrong length".into(),
        ));
    }
    let subset: Vec<usize> = cert
        .kept
        .iter()
        .zip(signs)
        .filter(|(_, &n)| n == 1)
        .map(|(&i, _)| i)
        .collect();
    if !inst.is_solution(&subset) {
        return Err(Error::InvalidWitness(
            "pulled-back subset misses the target".into(),
        ));
    }
    Ok(subset)
}

/// Point relation to subset, verifying every stage.
pub fn pull_back_points(
    cert: &SumpolyCertificate,
    inst: &SubsetSumInstance,
    points: &[Point],
) -> Result<Vec<usize>> {
    let signs = pull_back_signs(cert, points)?;
    subset_from_signs(cert, inst, &signs)
}
