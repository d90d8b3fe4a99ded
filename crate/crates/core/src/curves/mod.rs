//! Weierstrass models `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`,
//! smooth or singular, and the chord-tangent group law on their
//! non-singular points.

mod order;
mod singular;
mod trace;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{poly, Elem, Field, FieldDescriptor, QuadraticExtension};

pub use order::{
    find_curve_with_large_order_point, CurveFamily, CurveSearch, FoundCurve, MAX_COUNT_ORDER,
};
pub use singular::{
    cuspidal_model, cuspidal_param, cuspidal_param_inv, nodal_model, nodal_param, nodal_param_inv,
};
pub use trace::trace_morphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Smooth,
    Nodal,
    Cuspidal,
}

/// A point of `E_ns`, the non-singular locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine { x: Elem, y: Elem },
}

impl Point {
    pub fn x(&self) -> Option<Elem> {
        match self {
            Point::Infinity => None,
            Point::Affine { x, .. } => Some(*x),
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }
}

#[derive(Clone, Debug)]
pub struct WeierstrassModel {
    field: Field,
    a: [Elem; 5],
    b: [Elem; 4],
    c4: Elem,
    discriminant: Elem,
    class: Classification,
}

impl PartialEq for WeierstrassModel {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.a == other.a
    }
}
impl Eq for WeierstrassModel {}

/// `b2, b4, b6, b8` of a coefficient vector.
pub fn b_invariants(k: &Field, a: &[Elem; 5]) -> [Elem; 4] {
    let [a1, a2, a3, a4, a6] = *a;
    let four = k.from_int(4);
    let b2 = k.add(k.square(a1), k.mul(four, a2));
    let b4 = k.add(k.mul(a1, a3), k.scale(a4, 2));
    let b6 = k.add(k.square(a3), k.mul(four, a6));
    let b8 = [
        k.mul(k.square(a1), a6),
        k.neg(k.mul(k.mul(a1, a3), a4)),
        k.mul(a2, k.square(a3)),
        k.mul(four, k.mul(a2, a6)),
        k.neg(k.square(a4)),
    ]
    .into_iter()
    .fold(k.zero(), |acc, t| k.add(acc, t));
    [b2, b4, b6, b8]
}

/// Classifies `A` by the discriminant and `c4`.
pub fn classify(k: &Field, a: &[Elem; 5]) -> Classification {
    let [b2, b4, b6, b8] = b_invariants(k, a);
    let c4 = k.sub(k.square(b2), k.scale(b4, 24));
    let disc = discriminant(k, b2, b4, b6, b8);
    if !disc.is_zero() {
        Classification::Smooth
    } else if !c4.is_zero() {
        Classification::Nodal
    } else {
        Classification::Cuspidal
    }
}

fn discriminant(k: &Field, b2: Elem, b4: Elem, b6: Elem, b8: Elem) -> Elem {
    let t1 = k.neg(k.mul(k.square(b2), b8));
    let t2 = k.neg(k.scale(k.mul(k.square(b4), b4), 8));
    let t3 = k.neg(k.scale(k.square(b6), 27));
    let t4 = k.scale(k.mul(k.mul(b2, b4), b6), 9);
    k.add(k.add(t1, t2), k.add(t3, t4))
}

/// JSON: `{field, a: [a1, a2, a3, a4, a6]}` with coordinate arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescriptor {
    pub field: FieldDescriptor,
    pub a: Vec<Vec<u64>>,
}

/// JSON: `"inf"` or `{x, y}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointDescriptor {
    Infinity(String),
    Affine { x: Vec<u64>, y: Vec<u64> },
}

impl WeierstrassModel {
    pub fn new(field: &Field, a: [Elem; 5]) -> WeierstrassModel {
        let k = field;
        let b = b_invariants(k, &a);
        let c4 = k.sub(k.square(b[0]), k.scale(b[1], 24));
        let discriminant = discriminant(k, b[0], b[1], b[2], b[3]);
        let class = classify(k, &a);
        WeierstrassModel {
            field: field.clone(),
            a,
            b,
            c4,
            discriminant,
            class,
        }
    }

    pub fn from_ints(field: &Field, a: [i64; 5]) -> WeierstrassModel {
        WeierstrassModel::new(field, a.map(|v| field.from_int(v)))
    }

    pub fn from_descriptor(d: &CurveDescriptor) -> Result<WeierstrassModel> {
        let field = Field::from_descriptor(&d.field)?;
        if d.a.len() != 5 {
            return Err(Error::Malformed("curve needs five coefficients".into()));
        }
        let mut a = [Elem::ZERO; 5];
        for (slot, c) in a.iter_mut().zip(&d.a) {
            *slot = field.from_coords(c)?;
        }
        Ok(WeierstrassModel::new(&field, a))
    }

    pub fn descriptor(&self) -> CurveDescriptor {
        CurveDescriptor {
            field: self.field.descriptor(),
            a: self.a.iter().map(|&c| self.field.coords(c)).collect(),
        }
    }

    pub fn point_descriptor(&self, p: &Point) -> PointDescriptor {
        match p {
            Point::Infinity => PointDescriptor::Infinity("inf".into()),
            Point::Affine { x, y } => PointDescriptor::Affine {
                x: self.field.coords(*x),
                y: self.field.coords(*y),
            },
        }
    }

    pub fn point_from_descriptor(&self, d: &PointDescriptor) -> Result<Point> {
        let p = match d {
            PointDescriptor::Infinity(s) if s == "inf" => Point::Infinity,
            PointDescriptor::Infinity(s) => {
                return Err(Error::Malformed(format!("unknown point `{s}`")))
            }
            PointDescriptor::Affine { x, y } => Point::Affine {
                x: self.field.from_coords(x)?,
                y: self.field.from_coords(y)?,
            },
        };
        self.check_point(&p)?;
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `[a1, a2, a3, a4, a6]`.
    pub fn a(&self) -> &[Elem; 5] {
        &self.a
    }

    /// `[b2, b4, b6, b8]`.
    pub fn b(&self) -> &[Elem; 4] {
        &self.b
    }

    pub fn discriminant(&self) -> Elem {
        self.discriminant
    }

    pub fn c4(&self) -> Elem {
        self.c4
    }

    pub fn classification(&self) -> Classification {
        self.class
    }

    pub fn is_smooth(&self) -> bool {
        self.class == Classification::Smooth
    }

    /// Characteristic 2 with `a1 != 0`.
    pub fn is_ordinary_binary(&self) -> bool {
        self.field.is_binary() && !self.a[0].is_zero()
    }

    /// Same coefficients over the quadratic extension.
    pub fn base_change(&self, qe: &QuadraticExtension) -> WeierstrassModel {
        debug_assert_eq!(qe.base(), &self.field);
        WeierstrassModel::new(qe.ext(), self.a.map(|c| qe.embed(c)))
    }

    /// Value of `y^2 + a1 xy + a3 y - (x^3 + a2 x^2 + a4 x + a6)`.
    pub fn equation(&self, x: Elem, y: Elem) -> Elem {
        let k = &self.field;
        let [a1, _, a3, _, _] = self.a;
        let lhs = k.mul(y, k.add(y, k.add(k.mul(a1, x), a3)));
        k.sub(lhs, self.rhs(x))
    }

    /// `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs(&self, x: Elem) -> Elem {
        let k = &self.field;
        let [_, a2, _, a4, a6] = self.a;
        k.add(k.mul(k.add(k.mul(k.add(x, a2), x), a4), x), a6)
    }

    /// The singular point, if the model is singular and the point is rational.
    pub fn singular_point(&self) -> Option<(Elem, Elem)> {
        if self.is_smooth() {
            return None;
        }
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        if k.is_binary() {
            let (x, y) = if !a1.is_zero() {
                let x = k.div(a3, a1).ok()?;
                (x, k.div(k.add(k.square(x), a4), a1).ok()?)
            } else {
                let x = k.sqrt(a4)?;
                let y = k.sqrt(k.add(k.mul(k.add(k.mul(k.add(x, a2), x), a4), x), a6))?;
                (x, y)
            };
            return (self.equation(x, y).is_zero()).then_some((x, y));
        }
        // y = -(a1 x + a3)/2 on the locus F_y = 0
        let half = k.inv(k.from_int(2)).ok()?;
        let ycoef = [k.neg(k.mul(a3, half)), k.neg(k.mul(a1, half))];
        let three = k.from_int(3);
        // F_x = a1 y - 3x^2 - 2 a2 x - a4
        let fx = poly::sub(
            k,
            &[k.mul(a1, ycoef[0]), k.mul(a1, ycoef[1])],
            &[a4, k.scale(a2, 2), three],
        );
        // F = y^2 + a1 x y + a3 y - x^3 - a2 x^2 - a4 x - a6
        let y = ycoef.to_vec();
        let inner = poly::add(k, &poly::add(k, &y, &[a3]), &[k.zero(), a1]);
        let f = poly::sub(k, &poly::mul(k, &y, &inner), &[a6, a4, a2, k.one()]);
        let g = poly::gcd(k, &fx, &f);
        let x = *poly::roots(k, &g).first()?;
        let yv = poly::eval(k, &y, x);
        Some((x, yv))
    }

    pub fn is_on_curve(&self, p: &Point) -> bool {
        match *p {
            Point::Infinity => true,
            Point::Affine { x, y } => self.equation(x, y).is_zero(),
        }
    }

    /// Rejects off-curve points and the singular point.
    pub fn check_point(&self, p: &Point) -> Result<()> {
        if !self.is_on_curve(p) {
            return Err(Error::NotOnCurve);
        }
        if let (Point::Affine { x, y }, Some(s)) = (p, self.singular_point()) {
            if (*x, *y) == s {
                return Err(Error::SingularPoint);
            }
        }
        Ok(())
    }

    pub fn point(&self, x: Elem, y: Elem) -> Result<Point> {
        let p = Point::Affine { x, y };
        self.check_point(&p)?;
        Ok(p)
    }

    pub fn neg(&self, p: &Point) -> Point {
        match *p {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => {
                let k = &self.field;
                let [a1, _, a3, _, _] = self.a;
                Point::Affine {
                    x,
                    y: k.neg(k.add(y, k.add(k.mul(a1, x), a3))),
                }
            }
        }
    }

    pub fn add(&self, p: &Point, q: &Point) -> Point {
        let (x1, y1, x2, y2) = match (*p, *q) {
            (Point::Infinity, _) => return *q,
            (_, Point::Infinity) => return *p,
            (Point::Affine { x: x1, y: y1 }, Point::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let k = &self.field;
        let [a1, a2, a3, a4, a6] = self.a;
        let (lambda, nu) = if x1 != x2 {
            let d = k.inv(k.sub(x2, x1)).expect("distinct x");
            let lambda = k.mul(k.sub(y2, y1), d);
            let nu = k.mul(k.sub(k.mul(y1, x2), k.mul(y2, x1)), d);
            (lambda, nu)
        } else {
            let denom = k.add(k.add(k.scale(y1, 2), k.mul(a1, x1)), a3);
            if y1 != y2 || denom.is_zero() {
                // q = -p
                return Point::Infinity;
            }
            let d = k.inv(denom).expect("nonzero");
            let x1sq = k.square(x1);
            let num = k.sub(
                k.add(k.add(k.scale(x1sq, 3), k.scale(k.mul(a2, x1), 2)), a4),
                k.mul(a1, y1),
            );
            let nu_num = k.sub(
                k.add(k.add(k.neg(k.mul(x1sq, x1)), k.mul(a4, x1)), k.scale(a6, 2)),
                k.mul(a3, y1),
            );
            (k.mul(num, d), k.mul(nu_num, d))
        };
        let x3 = k.sub(
            k.sub(k.sub(k.add(k.square(lambda), k.mul(a1, lambda)), a2), x1),
            x2,
        );
        let y3 = k.sub(k.sub(k.neg(k.mul(k.add(lambda, a1), x3)), nu), a3);
        Point::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &Point, q: &Point) -> Point {
        self.add(p, &self.neg(q))
    }

    pub fn double(&self, p: &Point) -> Point {
        self.add(p, p)
    }

    pub fn mul(&self, k: i128, p: &Point) -> Point {
        let mut base = if k < 0 { self.neg(p) } else { *p };
        let mut e = k.unsigned_abs();
        let mut acc = Point::Infinity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.double(&base);
            }
        }
        acc
    }

    /// Points of `E_ns` with the given x-coordinate.
    pub fn lift_x(&self, x: Elem) -> Vec<Point> {
        let k = &self.field;
        let [a1, _, a3, _, _] = self.a;
        let b = k.add(k.mul(a1, x), a3);
        let c = k.neg(self.rhs(x));
        let sing = self.singular_point();
        k.quadratic_roots(k.one(), b, c)
            .expect("monic quadratic")
            .into_iter()
            .filter(|&y| sing != Some((x, y)))
            .map(|y| Point::Affine { x, y })
            .collect()
    }

    /// All rational points of `E_ns`, infinity first.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::Infinity];
        for x in self.field.elements() {
            out.extend(self.lift_x(x));
        }
        out
    }

    pub fn random_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        loop {
            let x = self.field.random(rng);
            let lifts = self.lift_x(x);
            if !lifts.is_empty() {
                return lifts[rng.gen_range(0..lifts.len())];
            }
        }
    }
}

/// Random smooth curve over a field of characteristic 2 with `a1 != 0`.
pub fn random_ordinary_curve<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> WeierstrassModel {
    assert!(
        field.is_binary(),
        "ordinary curves here live in characteristic 2"
    );
    loop {
        let a = [
            field.random_nonzero(rng),
            field.random(rng),
            field.random(rng),
            field.random(rng),
            field.random(rng),
        ];
        let m = WeierstrassModel::new(field, a);
        if m.is_smooth() {
            return m;
        }
    }
}

/// Random smooth curve with all five coefficients drawn uniformly.
pub fn random_smooth_curve<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> WeierstrassModel {
    loop {
        let a = [(); 5].map(|_| field.random(rng));
        let m = WeierstrassModel::new(field, a);
        if m.is_smooth() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf2() -> Field {
        Field::new(2, 1, None).unwrap()
    }

    #[test]
    fn classification_examples() {
        for p in [2, 3, 5, 7] {
            let k = Field::prime(p).unwrap();
            assert_eq!(
                classify(&k, &[1, 0, 0, 0, 0].map(|v| k.from_int(v))),
                Classification::Nodal
            );
            assert_eq!(
                classify(&k, &[0; 5].map(|v| k.from_int(v))),
                Classification::Cuspidal
            );
        }
        let k = gf2();
        assert_eq!(
            classify(&k, &[1, 0, 0, 0, 1].map(|v| k.from_int(v))),
            Classification::Smooth
        );
    }

    #[test]
    fn b_invariants_satisfy_the_standard_relation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [3, 5, 7, 11] {
            let k = Field::new(p, 2, None).unwrap();
            for _ in 0..20 {
                let a = [(); 5].map(|_| k.random(&mut rng));
                let [b2, b4, b6, b8] = b_invariants(&k, &a);
                // 4 b8 = b2 b6 - b4^2
                assert_eq!(k.scale(b8, 4), k.sub(k.mul(b2, b6), k.square(b4)));
            }
        }
    }

    #[test]
    fn order_four_curve_over_gf2() {
        let k = gf2();
        let e = WeierstrassModel::from_ints(&k, [1, 0, 0, 0, 1]);
        let pts = e.points();
        assert_eq!(pts.len(), 4);
        let g = Point::Affine {
            x: k.one(),
            y: k.zero(),
        };
        assert_eq!(e.mul(4, &g), Point::Infinity);
        assert_ne!(e.mul(2, &g), Point::Infinity);
        let t = Point::Affine {
            x: k.zero(),
            y: k.one(),
        };
        assert_eq!(e.mul(2, &g), t);
        assert_eq!(e.double(&t), Point::Infinity);
        assert_eq!(e.add(&g, &Point::Infinity), g);
    }

    #[test]
    fn group_law_is_associative_and_commutative() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        for (p, n) in [(2, 3), (2, 4), (3, 2), (5, 2), (7, 1), (13, 1), (31, 1)] {
            let k = Field::new(p, n, None).unwrap();
            for _ in 0..3 {
                let e = random_smooth_curve(&k, &mut rng);
                let pts = e.points();
                if pts.len() > 40 {
                    continue;
                }
                tested += 1;
                for a in &pts {
                    assert!(e.is_on_curve(a));
                    assert_eq!(e.add(a, &e.neg(a)), Point::Infinity);
                    for b in &pts {
                        let ab = e.add(a, b);
                        assert!(e.is_on_curve(&ab));
                        assert_eq!(ab, e.add(b, a));
                        for c in &pts {
                            assert_eq!(e.add(&ab, c), e.add(a, &e.add(b, c)));
                        }
                    }
                }
            }
        }
        assert!(tested >= 5);
    }

    #[test]
    fn invalid_points_rejected() {
        let k = Field::prime(7).unwrap();
        let e = WeierstrassModel::from_ints(&k, [0, 0, 0, 1, 1]);
        assert_eq!(
            e.point(k.from_int(1), k.from_int(1)),
            Err(Error::NotOnCurve)
        );
        let cusp = WeierstrassModel::from_ints(&k, [0; 5]);
        assert_eq!(cusp.point(k.zero(), k.zero()), Err(Error::SingularPoint));
        let node = WeierstrassModel::from_ints(&k, [1, 0, 0, 0, 0]);
        assert_eq!(node.singular_point(), Some((k.zero(), k.zero())));
        let k2 = Field::new(2, 3, None).unwrap();
        let node2 = WeierstrassModel::from_ints(&k2, [1, 0, 0, 0, 0]);
        assert_eq!(node2.singular_point(), Some((k2.zero(), k2.zero())));
    }

    #[test]
    fn descriptors_round_trip() {
        let k = Field::new(2, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let e = random_ordinary_curve(&k, &mut rng);
        let d = e.descriptor();
        let json = serde_json::to_string(&d).unwrap();
        let back =
            WeierstrassModel::from_descriptor(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, e);
        let p = e.random_point(&mut rng);
        let pj = serde_json::to_string(&e.point_descriptor(&p)).unwrap();
        assert_eq!(
            e.point_from_descriptor(&serde_json::from_str(&pj).unwrap())
                .unwrap(),
            p
        );
        assert_eq!(
            serde_json::to_string(&e.point_descriptor(&Point::Infinity)).unwrap(),
            "\"inf\""
        );
    }
}
