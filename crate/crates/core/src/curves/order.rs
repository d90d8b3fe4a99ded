use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{random_smooth_curve, Classification, Point, WeierstrassModel};
use crate::error::{Error, Result};
use crate::fields::{is_prime, prime_factors, Field};

/// Largest field size accepted by the counting routines.
pub const MAX_COUNT_ORDER: u64 = 1 << 24;
const NAIVE_LIMIT: u64 = 1 << 12;
const MAX_SEARCH_ORDER: u64 = 1 << 20;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `[q + 1 - w, q + 1 + w]` with `w = ceil(2 sqrt q)`.
fn hasse_interval(q: u64) -> (u64, u64) {
    let s = isqrt(4 * q);
    let w = if s * s == 4 * q { s } else { s + 1 };
    ((q + 1).saturating_sub(w), q + 1 + w)
}

impl WeierstrassModel {
    /// `|E_ns(F)|`.
    pub fn group_order(&self) -> Result<u64> {
        let k = self.field();
        let q = k.order();
        if q > MAX_COUNT_ORDER {
            return Err(Error::ResourceCap(format!(
                "field of order {q} is too large to count"
            )));
        }
        match self.classification() {
            Classification::Cuspidal => return Ok(q),
            Classification::Nodal => {
                // split iff the tangent slopes at the node are rational
                let (x0, _) = self
                    .singular_point()
                    .ok_or_else(|| Error::Precondition("singular point is not rational".into()))?;
                let [a1, a2, ..] = *self.a();
                let c = k.neg(k.add(k.scale(x0, 3), a2));
                let split = !k.quadratic_roots(k.one(), a1, c)?.is_empty();
                return Ok(if split { q - 1 } else { q + 1 });
            }
            Classification::Smooth => {}
        }
        if q <= NAIVE_LIMIT {
            return Ok(self.points().len() as u64);
        }
        let (lo, hi) = hasse_interval(q);
        let mut rng = ChaCha8Rng::seed_from_u64(q ^ 0x0bd3);
        let mut candidates: Option<Vec<u64>> = None;
        for _ in 0..64 {
            let p = self.random_point(&mut rng);
            let found = self.annihilators(&p, lo, hi);
            let next: Vec<u64> = match candidates {
                None => found,
                Some(c) => c.into_iter().filter(|m| found.contains(m)).collect(),
            };
            if next.len() == 1 {
                return Ok(next[0]);
            }
            candidates = Some(next);
        }
        Ok(self.points().len() as u64)
    }

    /// All `m` in `[lo, hi]` with `mP = O`, by baby-step giant-step.
    fn annihilators(&self, p: &Point, lo: u64, hi: u64) -> Vec<u64> {
        let width = hi - lo;
        let s = isqrt(width) + 1;
        let mut baby: HashMap<Point, u64> = HashMap::with_capacity(s as usize);
        let mut cur = Point::Infinity;
        for j in 0..s {
            if j > 0 && cur.is_infinity() {
                // order j is small: every multiple in range
                let first = lo.div_ceil(j) * j;
                return (first..=hi).step_by(j as usize).collect();
            }
            baby.insert(cur, j);
            cur = self.add(&cur, p);
        }
        let giant = self.mul(s as i128, p);
        let mut r = self.mul(lo as i128, p);
        let mut out = Vec::new();
        let mut base = lo;
        while base <= hi {
            if let Some(&j) = baby.get(&self.neg(&r)) {
                if base + j <= hi {
                    out.push(base + j);
                }
            }
            r = self.add(&r, &giant);
            base += s;
        }
        out
    }

    /// Least `m >= 1` with `mP = O`.
    pub fn point_order(&self, p: &Point) -> Result<u64> {
        self.check_point(p)?;
        let n = self.group_order()?;
        Ok(self.point_order_dividing(p, n))
    }

    /// Order of `p` given a multiple `n` of it.
    pub fn point_order_dividing(&self, p: &Point, n: u64) -> u64 {
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.mul((ord / r) as i128, p).is_infinity() {
                ord /= r;
            }
        }
        ord
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveFamily {
    /// Fields GF(p), p prime.
    Prime,
    /// Fields GF(2^n).
    Binary,
}

/// Parameters of the seeded search for a point of large order.
#[derive(Clone, Copy, Debug)]
pub struct CurveSearch {
    pub family: CurveFamily,
    pub seed: u64,
    /// Total number of curves tried before giving up.
    pub max_trials: usize,
    /// Curves tried per field before moving to the next one.
    pub trials_per_field: usize,
}

impl Default for CurveSearch {
    fn default() -> Self {
        CurveSearch {
            family: CurveFamily::Prime,
            seed: 0,
            max_trials: 10_000,
            trials_per_field: 16,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FoundCurve {
    pub field: Field,
    pub curve: WeierstrassModel,
    pub point: Point,
    pub point_order: u64,
    pub group_order: u64,
}

fn reaches(q: u64, n: u64) -> bool {
    hasse_interval(q).1 >= n
}

fn next_field(family: CurveFamily, after: Option<&Field>, n: u64) -> Result<Field> {
    match family {
        CurveFamily::Prime => {
            let mut p = after.map_or(2, |f| f.order() + 1);
            while !(is_prime(p) && reaches(p, n)) {
                p += 1;
            }
            Field::prime(p)
        }
        CurveFamily::Binary => {
            let mut d = after.map_or(1, |f| f.degree() + 1);
            while !reaches(1 << d, n) {
                d += 1;
            }
            Field::new(2, d, None)
        }
    }
}

/// A curve over the smallest admissible field (then larger ones) with a
/// rational point of order at least `n`.
pub fn find_curve_with_large_order_point(n: u64, search: &CurveSearch) -> Result<FoundCurve> {
    if n > MAX_SEARCH_ORDER {
        return Err(Error::OutOfRange(format!(
            "order bound {n} exceeds {MAX_SEARCH_ORDER}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut field = next_field(search.family, None, n)?;
    let mut trials = 0;
    loop {
        for _ in 0..search.trials_per_field.max(1) {
            if trials >= search.max_trials {
                return Err(Error::SearchExhausted(format!(
                    "no point of order >= {n} after {trials} curves"
                )));
            }
            trials += 1;
            let curve = random_smooth_curve(&field, &mut rng);
            let group_order = curve.group_order()?;
            if group_order < n {
                continue;
            }
            for _ in 0..4 {
                let point = curve.random_point(&mut rng);
                let point_order = curve.point_order_dividing(&point, group_order);
                if point_order >= n {
                    return Ok(FoundCurve {
                        field,
                        curve,
                        point,
                        point_order,
                        group_order,
                    });
                }
            }
        }
        field = next_field(search.family, Some(&field), n)?;
        if field.order() > MAX_COUNT_ORDER {
            return Err(Error::SearchExhausted(format!(
                "no suitable field for order {n}"
            )));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binary_examples() {
        let gf2 = Field::new(2, 1, None).unwrap();
        let e = WeierstrassModel::from_ints(&gf2, [1, 0, 0, 0, 1]);
        assert_eq!(e.group_order().unwrap(), 4);
        assert_eq!(e.point_order(&Point::Infinity).unwrap(), 1);
        let gf4 = Field::new(2, 2, None).unwrap();
        let e4 = WeierstrassModel::from_ints(&gf4, [1, 0, 0, 0, 1]);
        assert_eq!(e4.group_order().unwrap(), 8);
    }

    #[test]
    fn singular_orders() {
        for p in [3, 5, 7, 11] {
            let k = Field::prime(p).unwrap();
            let node = WeierstrassModel::from_ints(&k, [1, 0, 0, 0, 0]);
            assert_eq!(node.group_order().unwrap(), node.points().len() as u64);
            let cusp = WeierstrassModel::from_ints(&k, [0; 5]);
            assert_eq!(cusp.group_order().unwrap(), p);
            // y^2 = x^3 + x^2 has tangents y = +-x; y^2 = x^3 + c x^2 with c a non-square does not split
            let nonsq = (1..p as i64)
                .find(|&c| !k.is_square(k.from_int(c)))
                .unwrap();
            let ns = WeierstrassModel::from_ints(&k, [0, nonsq, 0, 0, 0]);
            assert_eq!(ns.group_order().unwrap(), p + 1);
            assert_eq!(ns.points().len() as u64, p + 1);
        }
    }

    #[test]
    fn bsgs_matches_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (p, n) in [(4099, 1), (2, 13), (3, 8), (8191, 1)] {
            let k = Field::new(p, n, None).unwrap();
            for _ in 0..2 {
                let e = random_smooth_curve(&k, &mut rng);
                assert_eq!(e.group_order().unwrap(), e.points().len() as u64);
            }
        }
    }

    #[test]
    fn point_orders_divide_group_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let k = Field::new(2, 5, None).unwrap();
        for _ in 0..5 {
            let e = random_smooth_curve(&k, &mut rng);
            let n = e.group_order().unwrap();
            for pt in e.points() {
                let o = e.point_order(&pt).unwrap();
                assert_eq!(n % o, 0);
                assert!(e.mul(o as i128, &pt).is_infinity());
                let brute = (1..=n)
                    .find(|&m| e.mul(m as i128, &pt).is_infinity())
                    .unwrap();
                assert_eq!(o, brute);
            }
        }
    }

    #[test]
    fn search_finds_large_order_points() {
        for (n, family) in [
            (2, CurveFamily::Prime),
            (5, CurveFamily::Binary),
            (1000, CurveFamily::Prime),
        ] {
            let s = CurveSearch {
                family,
                seed: 1,
                ..CurveSearch::default()
            };
            let f = find_curve_with_large_order_point(n, &s).unwrap();
            assert!(f.point_order >= n);
            assert_eq!(f.curve.point_order(&f.point).unwrap(), f.point_order);
            let (_, hi) = hasse_interval(f.field.order());
            assert!(hi >= n);
        }
        let tight = CurveSearch {
            max_trials: 0,
            ..CurveSearch::default()
        };
        assert!(matches!(
            find_curve_with_large_order_point(10, &tight),
            Err(Error::SearchExhausted(_))
        ));
    }
}
