//! Weil descent of polynomials over GF(p^n) to GF(p) with respect to a basis,
//! the ring trace, and symbolic checks of the trace identities behind the
//! first fall degree of descended third summation polynomials.

mod identities;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Basis, Elem, Field, FieldDescriptor};
use crate::sumpoly::{MultiPoly, PolyDescriptor};

pub use identities::{
    cor_w8_combination, lemma_w15_check, prop_w7_check, W15Report, W7Mode, W7Report, W8Report,
};

/// `e -> ((e - 1) mod (m - 1)) + 1` for `e >= 1`, i.e. reduction by `X^m = X`.
pub fn reduce_exponent(e: u128, m: u128) -> u32 {
    if e == 0 {
        0
    } else {
        (((e - 1) % (m - 1)) + 1) as u32
    }
}

fn reduce_mod(f: &MultiPoly, m: u128) -> MultiPoly {
    let mut out = MultiPoly::zero(f.field(), f.vars().to_vec());
    for (e, &c) in f.terms() {
        out.add_term(
            e.iter().map(|&x| reduce_exponent(x as u128, m)).collect(),
            c,
        );
    }
    out
}

/// Reduction modulo `X_i^q - X_i` where `q` is the size of the coefficient field.
pub fn reduce_field_equations(f: &MultiPoly) -> MultiPoly {
    reduce_mod(f, f.field().order() as u128)
}

/// Reduction modulo `X_i^p - X_i`, `p` the characteristic.
pub fn reduce_prime_equations(f: &MultiPoly) -> MultiPoly {
    reduce_mod(f, f.field().characteristic() as u128)
}

/// `sum_{i<n} f^{p^i}`, reduced modulo the field equations.
pub fn ring_trace(f: &MultiPoly) -> MultiPoly {
    let k = f.field();
    let q = k.order() as u128;
    let p = k.characteristic() as u128;
    let mut out = MultiPoly::zero(k, f.vars().to_vec());
    let mut pk = 1u128;
    for i in 0..k.degree() {
        for (e, &c) in f.terms() {
            let mut ci = c;
            for _ in 0..i {
                ci = k.frobenius(ci);
            }
            let ne = e
                .iter()
                .map(|&x| reduce_exponent(x as u128 * pk, q))
                .collect();
            out.add_term(ne, ci);
        }
        pk *= p;
    }
    out
}

/// Component variable names `{v}_{j}`, `j = 1..n`, variable-major.
pub fn component_vars(source_vars: &[String], n: usize) -> Vec<String> {
    source_vars
        .iter()
        .flat_map(|v| (1..=n).map(move |j| format!("{v}_{j}")))
        .collect()
}

struct Lifter<'a> {
    field: &'a Field,
    frames: &'a [Vec<Elem>],
    offsets: Vec<usize>,
    vars: Vec<String>,
    powers: HashMap<(usize, u32), MultiPoly>,
}

impl<'a> Lifter<'a> {
    fn new(field: &'a Field, frames: &'a [Vec<Elem>], source_vars: &[String]) -> Self {
        let mut offsets = Vec::with_capacity(frames.len());
        let mut vars = Vec::new();
        for (v, fr) in source_vars.iter().zip(frames) {
            offsets.push(vars.len());
            vars.extend((1..=fr.len()).map(|j| format!("{v}_{j}")));
        }
        Lifter {
            field,
            frames,
            offsets,
            vars,
            powers: HashMap::new(),
        }
    }

    /// `(sum_j beta_j^(p^k) Y_{ij})` in R_3.
    fn linear(&self, i: usize, k: usize) -> MultiPoly {
        let f = self.field;
        let mut out = MultiPoly::zero(f, self.vars.clone());
        for (j, &a) in self.frames[i].iter().enumerate() {
            let mut ak = a;
            for _ in 0..k {
                ak = f.frobenius(ak);
            }
            let mut e = vec![0; self.vars.len()];
            e[self.offsets[i] + j] = 1;
            out.add_term(e, ak);
        }
        out
    }

    /// `X_i^e` expanded in R_3.
    fn power(&mut self, i: usize, e: u32) -> MultiPoly {
        if let Some(p) = self.powers.get(&(i, e)) {
            return p.clone();
        }
        let f = self.field;
        let p = f.characteristic() as u32;
        let mut acc = MultiPoly::one(f, self.vars.clone());
        let (mut rest, mut k) = (e, 0);
        while rest > 0 {
            let d = rest % p;
            if d > 0 {
                let l = self.linear(i, k);
                acc = reduce_prime_equations(&acc.mul(&l.pow(d)));
            }
            rest /= p;
            k += 1;
        }
        self.powers.insert((i, e), acc.clone());
        acc
    }
}

/// `f(sum_j X_{1j} alpha_j, ...)` in `R_3`, coefficients still in GF(p^n).
pub fn lift(f: &MultiPoly, basis: &Basis) -> Result<MultiPoly> {
    let frames = vec![basis.elems().to_vec(); f.nvars()];
    lift_with_frames(f, basis.field(), &frames)
}

/// `f(sum_j Y_{1j} beta_{1j}, ...)` for one spanning list per variable; the
/// new variables are named `{X}_{j}`.
pub fn lift_with_frames(f: &MultiPoly, k: &Field, frames: &[Vec<Elem>]) -> Result<MultiPoly> {
    if f.field() != k {
        return Err(Error::FieldMismatch);
    }
    if frames.len() != f.nvars() {
        return Err(Error::Precondition(
            "one frame per variable is required".into(),
        ));
    }
    let f = reduce_field_equations(f);
    let mut lifter = Lifter::new(k, frames, f.vars());
    let mut out = MultiPoly::zero(k, lifter.vars.clone());
    for (e, &c) in f.terms() {
        let mut t = MultiPoly::constant(k, lifter.vars.clone(), c);
        for (i, &ei) in e.iter().enumerate() {
            if ei > 0 {
                // distinct source variables touch disjoint component variables
                t = t.mul(&lifter.power(i, ei));
            }
        }
        out = out.add(&t);
    }
    Ok(out)
}

/// The components `[f]_1 .. [f]_n` over GF(p).
pub fn descend(f: &MultiPoly, basis: &Basis) -> Result<Vec<MultiPoly>> {
    split(&lift(f, basis)?, basis)
}

/// Components after substituting `X_i = sum_j Y_{ij} beta_{ij}`.
pub fn descend_with_frames(
    f: &MultiPoly,
    basis: &Basis,
    frames: &[Vec<Elem>],
) -> Result<Vec<MultiPoly>> {
    split(&lift_with_frames(f, basis.field(), frames)?, basis)
}

/// Splits the coefficients of an `R_3` polynomial along the basis.
fn split(lifted: &MultiPoly, basis: &Basis) -> Result<Vec<MultiPoly>> {
    let k = basis.field();
    let prime = Field::prime(k.characteristic())?;
    let n = basis.len();
    let mut comps = vec![MultiPoly::zero(&prime, lifted.vars().to_vec()); n];
    for (e, &c) in lifted.terms() {
        for (i, ci) in basis.coords(c).into_iter().enumerate() {
            if ci != 0 {
                comps[i].add_term(e.clone(), prime.from_int(ci as i64));
            }
        }
    }
    Ok(comps)
}

/// `sum_i [f]_i alpha_i`, the components pushed back into GF(p^n).
pub fn recombine(components: &[MultiPoly], basis: &Basis) -> Result<MultiPoly> {
    let k = basis.field();
    let vars = components
        .first()
        .ok_or_else(|| Error::Precondition("no components".into()))?
        .vars()
        .to_vec();
    let mut out = MultiPoly::zero(k, vars);
    for (comp, &alpha) in components.iter().zip(basis.elems()) {
        for (e, &c) in comp.terms() {
            let v = comp
                .field()
                .prime_value(c)
                .expect("prime field coefficient");
            out.add_term(e.clone(), k.scale(alpha, v));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct DescendedSystem {
    pub sources: Vec<MultiPoly>,
    pub basis: Basis,
    pub components: Vec<Vec<MultiPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescendedSystemDescriptor {
    pub field: FieldDescriptor,
    pub basis: Vec<Vec<u64>>,
    pub sources: Vec<PolyDescriptor>,
    pub components: Vec<Vec<PolyDescriptor>>,
}

impl DescendedSystem {
    pub fn new(sources: Vec<MultiPoly>, basis: &Basis) -> Result<DescendedSystem> {
        let components = sources
            .iter()
            .map(|f| descend(f, basis))
            .collect::<Result<_>>()?;
        Ok(DescendedSystem {
            sources,
            basis: basis.clone(),
            components,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.basis.field().characteristic()
    }

    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    /// All components, source-major.
    pub fn equations(&self) -> Vec<MultiPoly> {
        self.components.iter().flatten().cloned().collect()
    }

    pub fn descriptor(&self) -> DescendedSystemDescriptor {
        let k = self.basis.field();
        DescendedSystemDescriptor {
            field: k.descriptor(),
            basis: self.basis.elems().iter().map(|&a| k.coords(a)).collect(),
            sources: self.sources.iter().map(|f| f.descriptor()).collect(),
            components: self
                .components
                .iter()
                .map(|cs| cs.iter().map(|c| c.descriptor()).collect())
                .collect(),
        }
    }
}

/// Basis coordinates of every point, flattened in component-variable order.
pub fn coordinate_point(basis: &Basis, point: &[Elem]) -> Vec<Elem> {
    let prime = Field::prime(basis.field().characteristic()).expect("prime");
    point
        .iter()
        .flat_map(|&x| basis.coords(x))
        .map(|c| prime.from_int(c as i64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumpoly::var_names;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(k: &Field, r: usize, deg: u32, terms: usize, rng: &mut ChaCha8Rng) -> MultiPoly {
        use rand::Rng;
        let mut f = MultiPoly::zero(k, var_names("X", r));
        for _ in 0..terms {
            let e = (0..r).map(|_| rng.gen_range(0..=deg)).collect();
            f.add_term(e, k.random(rng));
        }
        f
    }

    #[test]
    fn linear_source_gives_coordinate_forms() {
        let k = Field::new(3, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = Basis::random(&k, &mut rng);
        let x = MultiPoly::var(&k, vec!["X1".into()], 0);
        let comps = descend(&x, &b).unwrap();
        for (i, c) in comps.iter().enumerate() {
            assert_eq!(c.len(), 1);
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(c.coeff(&e), c.field().one());
        }
    }

    #[test]
    fn ring_trace_examples() {
        let k = Field::new(2, 2, None).unwrap();
        let x = MultiPoly::var(&k, vec!["X".into()], 0);
        let t = ring_trace(&x);
        assert_eq!(t, x.add(&x.pow(2)));
        for a in k.elements() {
            assert_eq!(t.evaluate(&[a]).unwrap(), k.trace(a));
        }
        let c = MultiPoly::constant(&k, vec!["X".into()], k.generator());
        assert_eq!(
            ring_trace(&c),
            MultiPoly::constant(&k, vec!["X".into()], k.trace(k.generator()))
        );
    }

    #[test]
    fn ring_trace_is_evaluation_compatible_and_frobenius_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for (p, n) in [(2, 3), (3, 2), (2, 4)] {
            let k = Field::new(p, n, None).unwrap();
            for _ in 0..3 {
                let f = random_poly(&k, 2, 5, 6, &mut rng);
                let t = ring_trace(&f);
                let fp = reduce_field_equations(&f.pow(p as u32));
                assert_eq!(ring_trace(&fp), t);
                for a in k.elements() {
                    for b in k.elements() {
                        let v = t.evaluate(&[a, b]).unwrap();
                        assert!(k.is_prime_subfield(v));
                        assert_eq!(v, k.trace(f.evaluate(&[a, b]).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn descent_recombines_and_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, n) in [(2, 3), (3, 2), (5, 2)] {
            let k = Field::new(p, n, None).unwrap();
            let b = Basis::random(&k, &mut rng);
            let f = random_poly(&k, 2, 3, 4, &mut rng);
            let g = random_poly(&k, 2, 2, 3, &mut rng);
            let cf = descend(&f, &b).unwrap();
            let cg = descend(&g, &b).unwrap();
            let rf = recombine(&cf, &b).unwrap();
            assert_eq!(rf, lift(&f, &b).unwrap());
            for c in &cf {
                for i in 0..c.nvars() {
                    assert!(c.degree_in(i).unwrap_or(0) < p as u32);
                }
            }
            let rfg = recombine(&descend(&f.mul(&g), &b).unwrap(), &b).unwrap();
            let prod = reduce_prime_equations(&rf.mul(&recombine(&cg, &b).unwrap()));
            assert_eq!(rfg, prod);
        }
    }

    #[test]
    fn square_over_gf4_descends_to_matching_zero_set() {
        let k = Field::new(2, 2, None).unwrap();
        let b = Basis::power(&k);
        let x = MultiPoly::var(&k, vec!["X1".into()], 0);
        let comps = descend(&x.pow(2), &b).unwrap();
        for a in k.elements() {
            let pt = coordinate_point(&b, &[a]);
            let all_zero = comps.iter().all(|c| c.evaluate(&pt).unwrap().is_zero());
            assert_eq!(all_zero, a.is_zero());
        }
    }
}
