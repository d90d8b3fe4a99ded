use super::{descend, ring_trace};
use crate::curves::{Point, WeierstrassModel};
use crate::error::{Error, Result};
use crate::fields::{Basis, Elem, Field};
use crate::sumpoly::{s3_in, MultiPoly};

#[derive(Clone, Debug)]
pub struct W15Report {
    pub lhs: Vec<MultiPoly>,
    pub rhs: Vec<MultiPoly>,
    pub holds: bool,
    /// Every component is a multiple of any component with `c_j != 0`.
    pub ideal_holds: bool,
}

/// Both sides of `[Tr(cf)]_i = c_i sum_j Tr(c alpha_j) [f]_j` in `R_2`.
pub fn lemma_w15_check(f: &MultiPoly, c: Elem, basis: &Basis) -> Result<W15Report> {
    let k = basis.field();
    let prime = Field::prime(k.characteristic())?;
    let lhs = descend(&ring_trace(&f.scale(c)), basis)?;
    let comps = descend(f, basis)?;
    let mut sum = MultiPoly::zero(&prime, comps[0].vars().to_vec());
    for (comp, &a) in comps.iter().zip(basis.elems()) {
        sum = sum.add(&comp.scale(prime.from_int(k.trace_value(k.mul(c, a)) as i64)));
    }
    let ones = basis.one_coords();
    let rhs: Vec<MultiPoly> = ones
        .iter()
        .map(|&ci| sum.scale(prime.from_int(ci as i64)))
        .collect();
    let holds = lhs == rhs;
    let mut ideal_holds = true;
    for (j, &cj) in ones.iter().enumerate() {
        if cj == 0 {
            continue;
        }
        let inv = prime.inv(prime.from_int(cj as i64))?;
        for (i, &ci) in ones.iter().enumerate() {
            let scaled = lhs[j].scale(prime.mul(prime.from_int(ci as i64), inv));
            ideal_holds &= lhs[i] == scaled;
        }
    }
    Ok(W15Report {
        lhs,
        rhs,
        holds,
        ideal_holds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum W7Mode {
    /// Exhaustive for `n <= 6`, symbolic otherwise.
    Auto,
    Exhaustive,
    Symbolic,
    Both,
}

#[derive(Clone, Debug)]
pub struct W7Report {
    pub b: Elem,
    pub exhaustive: Option<bool>,
    pub symbolic: Option<bool>,
    /// `Tr((b6 x + b8)/b^2) = Tr((x + a2)/a1^2)`.
    pub e1: bool,
    /// `T(x(2P), x(P)) = 0`.
    pub relation_in_zero_set: bool,
}

impl W7Report {
    pub fn holds(&self) -> bool {
        self.exhaustive.unwrap_or(true)
            && self.symbolic.unwrap_or(true)
            && self.e1
            && self.relation_in_zero_set
    }
}

struct Setup {
    t: MultiPoly,
    b: Elem,
    x: Elem,
}

fn setup(e: &WeierstrassModel, p: &Point) -> Result<Setup> {
    if !e.is_ordinary_binary() {
        return Err(Error::Precondition(
            "needs an ordinary curve in characteristic 2".into(),
        ));
    }
    e.check_point(p)?;
    let Point::Affine { x, .. } = *p else {
        return Err(Error::Precondition("P is 2-torsion".into()));
    };
    let k = e.field();
    let [a1, _, a3, _, _] = *e.a();
    let b = k.mul(a1, k.add(k.mul(a1, x), a3));
    if b.is_zero() {
        return Err(Error::Precondition("P is 2-torsion".into()));
    }
    let vars: Vec<String> = ["X1", "X2", "X3"].iter().map(|s| s.to_string()).collect();
    let t = s3_in(e, vars, 0, 1, 2).specialize(2, x).drop_vars(&[2])?;
    Ok(Setup { t, b, x })
}

/// `(X1 + X2 + x + a2)/a1^2` in the variables of `t`.
fn linear_side(e: &WeierstrassModel, t: &MultiPoly, x: Elem) -> MultiPoly {
    let k = e.field();
    let [a1, a2, ..] = *e.a();
    let inv = k.inv(k.square(a1)).expect("a1 != 0");
    let vars = t.vars().to_vec();
    MultiPoly::var(k, vars.clone(), 0)
        .add(&MultiPoly::var(k, vars.clone(), 1))
        .add(&MultiPoly::constant(k, vars, k.add(x, a2)))
        .scale(inv)
}

/// Checks `Tr(T/b^2) = Tr((X1 + X2 + x(P) + a2)/a1^2)` with `T = S_3(X1, X2, x(P))`.
pub fn prop_w7_check(e: &WeierstrassModel, p: &Point, mode: W7Mode) -> Result<W7Report> {
    let Setup { t, b, x } = setup(e, p)?;
    let k = e.field();
    let n = k.degree();
    let binv2 = k.inv(k.square(b))?;
    let h = linear_side(e, &t, x);
    let (do_ex, do_sym) = match mode {
        W7Mode::Auto => (n <= 6, n > 6),
        W7Mode::Exhaustive => (true, false),
        W7Mode::Symbolic => (false, true),
        W7Mode::Both => (true, true),
    };
    let exhaustive = do_ex.then(|| {
        k.elements().all(|x1| {
            k.elements().all(|x2| {
                let l = k.trace(k.mul(t.evaluate(&[x1, x2]).unwrap(), binv2));
                l == k.trace(h.evaluate(&[x1, x2]).unwrap())
            })
        })
    });
    let symbolic = do_sym.then(|| ring_trace(&t.scale(binv2)) == ring_trace(&h));
    let [a1, a2, ..] = *e.a();
    let [_, _, b6, b8] = *e.b();
    let e1 = k.trace(k.mul(k.add(k.mul(b6, x), b8), binv2))
        == k.trace(k.div(k.add(x, a2), k.square(a1))?);
    let relation_in_zero_set = match e.double(p).x() {
        Some(x2p) => t.evaluate(&[x2p, x])?.is_zero(),
        None => false,
    };
    Ok(W7Report {
        b,
        exhaustive,
        symbolic,
        e1,
        relation_in_zero_set,
    })
}

#[derive(Clone, Debug)]
pub struct W8Report {
    /// `Tr(alpha_j / b^2)`.
    pub weights: Vec<u8>,
    /// `sum_j Tr(alpha_j / b^2) [T]_j`.
    pub lhs: MultiPoly,
    /// `Tr((x(P) + a2)/a1^2) + sum_j Tr(alpha_j / a1^2)(X1_j + X2_j)`.
    pub rhs: MultiPoly,
    pub components: Vec<MultiPoly>,
    pub equal: bool,
}

/// The GF(2)-combination of descended components of `T` that collapses to
/// a polynomial of degree at most one.
pub fn cor_w8_combination(e: &WeierstrassModel, p: &Point, basis: &Basis) -> Result<W8Report> {
    let Setup { t, b, x } = setup(e, p)?;
    let k = e.field();
    if basis.field() != k {
        return Err(Error::FieldMismatch);
    }
    let n = k.degree();
    let gf2 = Field::prime(2)?;
    let comps = descend(&t, basis)?;
    let vars = comps[0].vars().to_vec();
    let binv2 = k.inv(k.square(b))?;
    let [a1, a2, ..] = *e.a();
    let a1inv2 = k.inv(k.square(a1))?;
    let weights: Vec<u8> = basis
        .elems()
        .iter()
        .map(|&a| k.trace_value(k.mul(a, binv2)) as u8)
        .collect();
    let mut lhs = MultiPoly::zero(&gf2, vars.clone());
    for (c, &w) in comps.iter().zip(&weights) {
        if w == 1 {
            lhs = lhs.add(c);
        }
    }
    let d = k.trace_value(k.mul(k.add(x, a2), a1inv2));
    let mut rhs = MultiPoly::constant(&gf2, vars.clone(), gf2.from_int(d as i64));
    for (j, &a) in basis.elems().iter().enumerate() {
        if k.trace_value(k.mul(a, a1inv2)) == 1 {
            rhs = rhs
                .add(&MultiPoly::var(&gf2, vars.clone(), j))
                .add(&MultiPoly::var(&gf2, vars.clone(), n + j));
        }
    }
    let equal = lhs == rhs;
    Ok(W8Report {
        weights,
        lhs,
        rhs,
        components: comps,
        equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::random_ordinary_curve;
    use crate::sumpoly::var_names;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn non_two_torsion(e: &WeierstrassModel, rng: &mut ChaCha8Rng) -> Point {
        loop {
            let p = e.random_point(rng);
            if !e.double(&p).is_infinity() {
                return p;
            }
        }
    }

    #[test]
    fn ring_trace_identity_trivial_cases() {
        let k = Field::new(2, 3, None).unwrap();
        let b = Basis::power(&k);
        let vars = var_names("X", 2);
        let f = MultiPoly::var(&k, vars.clone(), 0)
            .mul(&MultiPoly::var(&k, vars.clone(), 1))
            .add(&MultiPoly::var(&k, vars, 0).scale(k.generator()));
        let r = lemma_w15_check(&f, k.one(), &b).unwrap();
        assert!(r.holds && r.ideal_holds);
        let z = lemma_w15_check(&f, k.zero(), &b).unwrap();
        assert!(z.holds && z.lhs.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn trace_identities_on_small_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for n in 3..=5 {
            let k = Field::new(2, n, None).unwrap();
            let e = random_ordinary_curve(&k, &mut rng);
            let p = non_two_torsion(&e, &mut rng);
            let r = prop_w7_check(&e, &p, W7Mode::Both).unwrap();
            assert!(r.holds(), "{r:?}");
            let basis = Basis::random(&k, &mut rng);
            let comb = cor_w8_combination(&e, &p, &basis).unwrap();
            assert!(comb.equal);
            assert!(comb.rhs.total_degree().unwrap_or(0) <= 1);
        }
    }

    #[test]
    fn two_torsion_rejected() {
        let k = Field::new(2, 1, None).unwrap();
        let e = WeierstrassModel::from_ints(&k, [1, 0, 0, 0, 1]);
        let t = e.point(k.zero(), k.one()).unwrap();
        assert!(prop_w7_check(&e, &t, W7Mode::Auto).is_err());
        assert!(prop_w7_check(&e, &Point::Infinity, W7Mode::Auto).is_err());
    }
}
