use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Elem, Field, FieldDescriptor};

pub type Exponents = Vec<u32>;

/// Sparse polynomial over a finite field in a fixed, named variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDescriptor {
    pub exps: Vec<u32>,
    pub coeff: Vec<u64>,
}

/// JSON: `{field, vars, terms: [{exps, coeff}]}`, terms in grevlex order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDescriptor {
    pub field: FieldDescriptor,
    pub vars: Vec<String>,
    pub terms: Vec<TermDescriptor>,
}

/// Graded reverse lexicographic comparison, `Greater` for the larger monomial.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Exponent vectors packed into one integer, first variable most
/// significant, so integer order agrees with lexicographic order.
#[derive(Clone, Copy)]
struct Packing {
    n: usize,
    width: u32,
}

impl Packing {
    /// A packing holding exponents up to `max`, if it fits.
    fn new(n: usize, max: u32) -> Option<Packing> {
        let width = (32 - max.leading_zeros()).max(1);
        (n as u32 * width <= 128).then_some(Packing { n, width })
    }

    fn pack(&self, e: &[u32]) -> u128 {
        e.iter()
            .fold(0u128, |acc, &x| (acc << self.width) | x as u128)
    }

    fn unpack(&self, mut key: u128) -> Exponents {
        let mask = (1u128 << self.width) - 1;
        let mut e = vec![0u32; self.n];
        for slot in e.iter_mut().rev() {
            *slot = (key & mask) as u32;
            key >>= self.width;
        }
        e
    }
}

/// Names `prefix0 .. prefix{n-1}`.
pub fn var_names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

impl MultiPoly {
    pub fn zero(field: &Field, vars: Vec<String>) -> MultiPoly {
        MultiPoly {
            field: field.clone(),
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, vars: Vec<String>, c: Elem) -> MultiPoly {
        let mut p = MultiPoly::zero(field, vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(field: &Field, vars: Vec<String>) -> MultiPoly {
        MultiPoly::constant(field, vars, field.one())
    }

    /// The variable with index `i`.
    pub fn var(field: &Field, vars: Vec<String>, i: usize) -> MultiPoly {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = MultiPoly::zero(field, vars);
        p.add_term(e, field.one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponents, Elem)>>(
        field: &Field,
        vars: Vec<String>,
        terms: I,
    ) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(field, vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::Malformed(
                    "exponent vector length differs from variable count".into(),
                ));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Elem> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn coeff(&self, e: &[u32]) -> Elem {
        self.terms.get(e).copied().unwrap_or(Elem::ZERO)
    }

    pub fn add_term(&mut self, e: Exponents, c: Elem) {
        if c.is_zero() {
            return;
        }
        let k = &self.field;
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = k.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.vars != other.vars {
            return Err(Error::Precondition(
                "polynomials use different variable lists".into(),
            ));
        }
        Ok(())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let k = &self.field;
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), k.neg(c)))
                .collect(),
        }
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> MultiPoly {
        let k = &self.field;
        let mut out = MultiPoly::zero(k, self.vars.clone());
        for (e, &d) in &self.terms {
            out.add_term(e.clone(), k.mul(c, d));
        }
        out
    }

    fn max_exponent(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        let k = &self.field;
        if let Some(pk) = Packing::new(self.nvars(), self.max_exponent() + other.max_exponent()) {
            let a: Vec<(u128, Elem)> = self.terms.iter().map(|(e, &c)| (pk.pack(e), c)).collect();
            let b: Vec<(u128, Elem)> = other.terms.iter().map(|(e, &c)| (pk.pack(e), c)).collect();
            let mut acc: HashMap<u128, Elem> = HashMap::with_capacity(a.len().max(b.len()) * 4);
            for &(ea, ca) in &a {
                for &(eb, cb) in &b {
                    let v = acc.entry(ea + eb).or_insert(Elem::ZERO);
                    *v = k.add(*v, k.mul(ca, cb));
                }
            }
            let terms = acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (pk.unpack(e), c))
                .collect();
            return Ok(MultiPoly {
                field: self.field.clone(),
                vars: self.vars.clone(),
                terms,
            });
        }
        let mut acc: BTreeMap<Exponents, Elem> = BTreeMap::new();
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let v = acc.entry(e).or_insert(Elem::ZERO);
                *v = k.add(*v, k.mul(c1, c2));
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.try_add(other).expect("compatible polynomials")
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.try_sub(other).expect("compatible polynomials")
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.try_mul(other).expect("compatible polynomials")
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one(&self.field, self.vars.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Value at a point given in variable order.
    pub fn evaluate(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.vars.len() {
            return Err(Error::Precondition(format!(
                "expected {} values, got {}",
                self.vars.len(),
                point.len()
            )));
        }
        let k = &self.field;
        // cache powers per variable
        let maxdeg: Vec<u32> = (0..self.nvars())
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Elem>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(&x, &d)| {
                let mut v = Vec::with_capacity(d as usize + 1);
                let mut cur = k.one();
                for _ in 0..=d {
                    v.push(cur);
                    cur = k.mul(cur, x);
                }
                v
            })
            .collect();
        let mut acc = k.zero();
        for (e, &c) in &self.terms {
            let mut t = c;
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = k.mul(t, powers[i][ei as usize]);
                }
            }
            acc = k.add(acc, t);
        }
        Ok(acc)
    }

    /// Value at a point given by variable name; every variable must be bound.
    pub fn evaluate_named(&self, values: &[(&str, Elem)]) -> Result<Elem> {
        let mut point = vec![None; self.nvars()];
        for (name, v) in values {
            point[self.var_index(name)?] = Some(*v);
        }
        let pt: Option<Vec<Elem>> = point.into_iter().collect();
        let pt = pt.ok_or_else(|| Error::Precondition("not every variable is bound".into()))?;
        self.evaluate(&pt)
    }

    /// Replaces variable `i` by `g` (a polynomial in the same variables).
    pub fn substitute(&self, i: usize, g: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(g)?;
        let d = self.degree_in(i).unwrap_or(0);
        let mut gp = vec![MultiPoly::one(&self.field, self.vars.clone())];
        for j in 1..=d as usize {
            gp.push(gp[j - 1].mul(g));
        }
        let mut out = MultiPoly::zero(&self.field, self.vars.clone());
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            let mut mono = MultiPoly::zero(&self.field, self.vars.clone());
            mono.add_term(rest, c);
            out = out.add(&mono.mul(&gp[e[i] as usize]));
        }
        Ok(out)
    }

    pub fn substitute_named(&self, name: &str, g: &MultiPoly) -> Result<MultiPoly> {
        self.substitute(self.var_index(name)?, g)
    }

    /// Sets variable `i` to the constant `c`.
    pub fn specialize(&self, i: usize, c: Elem) -> MultiPoly {
        let g = MultiPoly::constant(&self.field, self.vars.clone(), c);
        self.substitute(i, &g).expect("same ring")
    }

    /// Moves the polynomial into a new variable list, old variable `j` becoming `map[j]`.
    pub fn embed(&self, vars: Vec<String>, map: &[usize]) -> MultiPoly {
        assert_eq!(map.len(), self.nvars());
        let mut out = MultiPoly::zero(&self.field, vars);
        let n = out.nvars();
        for (e, &c) in &self.terms {
            let mut ne = vec![0; n];
            for (j, &ej) in e.iter().enumerate() {
                ne[map[j]] += ej;
            }
            out.add_term(ne, c);
        }
        out
    }

    /// Drops variables that do not occur (or are listed for removal and absent).
    pub fn drop_vars(&self, remove: &[usize]) -> Result<MultiPoly> {
        if self.terms.keys().any(|e| remove.iter().any(|&i| e[i] != 0)) {
            return Err(Error::Precondition("variable still occurs".into()));
        }
        let keep: Vec<usize> = (0..self.nvars()).filter(|i| !remove.contains(i)).collect();
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = MultiPoly::zero(&self.field, vars);
        for (e, &c) in &self.terms {
            out.add_term(keep.iter().map(|&i| e[i]).collect(), c);
        }
        Ok(out)
    }

    /// Coefficients with respect to variable `i`, lowest power first.
    pub fn coefficients_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = self.degree_in(i).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(&self.field, self.vars.clone()); d + 1];
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            out[e[i] as usize].add_term(rest, c);
        }
        out
    }

    /// Permutes variables: new exponent at `perm[j]` is the old exponent at `j`.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        self.embed(self.vars.clone(), perm)
    }

    fn leading(&self) -> Option<(&Exponents, &Elem)> {
        self.terms.iter().next_back()
    }

    /// `self / d` when the division is exact.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(d)?;
        let k = &self.field;
        let (ld, &lc) = d.leading().ok_or(Error::DivisionByZero)?;
        let lc_inv = k.inv(lc)?;
        if let Some(pk) = Packing::new(self.nvars(), self.max_exponent().max(d.max_exponent())) {
            return self.div_exact_packed(d, pk, lc_inv);
        }
        let mut rem = self.clone();
        let mut q = MultiPoly::zero(k, self.vars.clone());
        while let Some((le, &c)) = rem.leading() {
            if le.iter().zip(ld).any(|(a, b)| a < b) {
                return Err(Error::Precondition("division is not exact".into()));
            }
            let e: Exponents = le.iter().zip(ld).map(|(a, b)| a - b).collect();
            let f = k.mul(c, lc_inv);
            for (de, &dc) in &d.terms {
                let pe: Exponents = e.iter().zip(de).map(|(a, b)| a + b).collect();
                rem.add_term(pe, k.neg(k.mul(f, dc)));
            }
            q.add_term(e, f);
        }
        Ok(q)
    }

    fn div_exact_packed(&self, d: &MultiPoly, pk: Packing, lc_inv: Elem) -> Result<MultiPoly> {
        let k = &self.field;
        let mut rem: BTreeMap<u128, Elem> =
            self.terms.iter().map(|(e, &c)| (pk.pack(e), c)).collect();
        let dv: Vec<(Exponents, Elem)> =
            d.terms.iter().rev().map(|(e, &c)| (e.clone(), c)).collect();
        let ld = &dv[0].0;
        let ldk = pk.pack(ld);
        let mut q: Vec<(u128, Elem)> = Vec::new();
        while let Some((&lk, &c)) = rem.iter().next_back() {
            let le = pk.unpack(lk);
            if le.iter().zip(ld).any(|(a, b)| a < b) {
                return Err(Error::Precondition("division is not exact".into()));
            }
            // no borrows: every lane of le is at least the lane of ld
            let shift = lk - ldk;
            let f = k.mul(c, lc_inv);
            for (de, dc) in &dv {
                let key = pk.pack(de) + shift;
                let v = rem.entry(key).or_insert(Elem::ZERO);
                *v = k.sub(*v, k.mul(f, *dc));
                if v.is_zero() {
                    rem.remove(&key);
                }
            }
            q.push((shift, f));
        }
        Ok(MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: q.into_iter().map(|(e, c)| (pk.unpack(e), c)).collect(),
        })
    }

    /// Terms sorted from the grevlex-largest monomial down.
    pub fn grevlex_terms(&self) -> Vec<(&Exponents, Elem)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, &c)| (e, c)).collect();
        v.sort_by(|a, b| grevlex(b.0, a.0));
        v
    }

    /// Canonical text, e.g. `X0^2*X1 + 3*X2 + 1`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let k = &self.field;
        // odd prime fields print coefficients above p/2 as negatives
        let signed = k.degree() == 1 && k.characteristic() > 2;
        let mut out = String::new();
        for (i, (e, c)) in self.grevlex_terms().into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], x)
                    }
                })
                .collect();
            let p = k.characteristic();
            let (neg, c) = match k.prime_value(c) {
                Some(v) if signed && v > p / 2 => (true, k.from_int((p - v) as i64)),
                _ => (false, c),
            };
            let cs = k.format(c);
            let cs = if cs.contains('+') {
                format!("({cs})")
            } else {
                cs
            };
            let term = match (mono.is_empty(), c == k.one()) {
                (true, _) => cs,
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", cs, mono.join("*")),
            };
            out.push_str(match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            });
            out.push_str(&term);
        }
        out
    }

    pub fn descriptor(&self) -> PolyDescriptor {
        PolyDescriptor {
            field: self.field.descriptor(),
            vars: self.vars.clone(),
            terms: self
                .grevlex_terms()
                .into_iter()
                .map(|(e, c)| TermDescriptor {
                    exps: e.clone(),
                    coeff: self.field.coords(c),
                })
                .collect(),
        }
    }

    pub fn from_descriptor(d: &PolyDescriptor) -> Result<MultiPoly> {
        let field = Field::from_descriptor(&d.field)?;
        let terms = d
            .terms
            .iter()
            .map(|t| Ok((t.exps.clone(), field.from_coords(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(&field, d.vars.clone(), terms)
    }
}

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xs(k: &Field, n: usize) -> Vec<MultiPoly> {
        (0..n)
            .map(|i| MultiPoly::var(k, var_names("X", n), i))
            .collect()
    }

    #[test]
    fn frobenius_square_in_char_two() {
        let k = Field::prime(2).unwrap();
        let x = xs(&k, 2);
        let s = x[0].add(&x[1]);
        assert_eq!(s.mul(&s).to_text(), "X0^2 + X1^2");
    }

    #[test]
    fn evaluation_example() {
        let k = Field::prime(7).unwrap();
        let x = xs(&k, 2);
        let f = x[0].mul(&x[1]).add(&MultiPoly::one(&k, var_names("X", 2)));
        assert_eq!(
            f.evaluate_named(&[("X0", k.from_int(2)), ("X1", k.from_int(3))])
                .unwrap(),
            k.zero()
        );
        assert_eq!(
            f.evaluate_named(&[("Y", k.one())]),
            Err(Error::UnknownVariable("Y".into()))
        );
    }

    #[test]
    fn grevlex_text_order() {
        let k = Field::prime(5).unwrap();
        let x = xs(&k, 3);
        let f = x[2]
            .pow(2)
            .add(&x[0].mul(&x[1]))
            .add(&x[0].pow(2))
            .add(&x[1].scale(k.from_int(3)));
        assert_eq!(f.to_text(), "X0^2 + X0*X1 + X2^2 - 2*X1");
    }

    #[test]
    fn exact_division() {
        let k = Field::prime(11).unwrap();
        let x = xs(&k, 3);
        let a = x[0]
            .add(&x[1].mul(&x[2]))
            .add(&MultiPoly::one(&k, var_names("X", 3)));
        let b = x[2].pow(3).sub(&x[0].mul(&x[1]).scale(k.from_int(4)));
        let ab = a.mul(&b);
        assert_eq!(ab.div_exact(&a).unwrap(), b);
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let k = Field::new(3, 2, None).unwrap();
        let x = xs(&k, 2);
        let f = x[0].scale(k.generator()).add(&x[1].pow(3));
        let json = serde_json::to_string(&f.descriptor()).unwrap();
        assert_eq!(
            MultiPoly::from_descriptor(&serde_json::from_str(&json).unwrap()).unwrap(),
            f
        );
    }
}
