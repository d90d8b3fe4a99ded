use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::Field;
use crate::sumpoly::MultiPoly;

/// Maximum number of unknowns of a [`BoolPoly`].
pub const MAX_BOOL_VARS: usize = 64;

/// A multilinear monomial as a variable bitmask (bit i = variable i).
pub type Monomial = u64;

pub fn monomial_degree(m: Monomial) -> u32 {
    m.count_ones()
}

/// Grevlex on multilinear monomials with `X0 > X1 > ...`.
pub fn grevlex_cmp(a: Monomial, b: Monomial) -> Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| b.cmp(&a))
}

/// A polynomial in `GF(2)[X]/(X_i^2 - X_i)`, stored as the set of its monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoolPoly {
    /// Sorted descending in grevlex, no repeats.
    monomials: Vec<Monomial>,
}

impl BoolPoly {
    pub fn zero() -> BoolPoly {
        BoolPoly::default()
    }

    pub fn one() -> BoolPoly {
        BoolPoly { monomials: vec![0] }
    }

    pub fn var(i: usize) -> BoolPoly {
        BoolPoly {
            monomials: vec![1 << i],
        }
    }

    /// Sum of the given monomials; repeated monomials cancel.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(it: I) -> BoolPoly {
        let mut v: Vec<Monomial> = it.into_iter().collect();
        v.sort_unstable();
        let mut out: Vec<Monomial> = Vec::with_capacity(v.len());
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(v[i]);
            }
            i = j;
        }
        out.sort_unstable_by(|a, b| grevlex_cmp(*b, *a));
        BoolPoly { monomials: out }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.monomials == [0]
    }

    pub fn leading(&self) -> Option<Monomial> {
        self.monomials.first().copied()
    }

    pub fn degree(&self) -> Option<u32> {
        self.leading().map(monomial_degree)
    }

    /// Union of the variables occurring in the polynomial.
    pub fn support(&self) -> Monomial {
        self.monomials.iter().fold(0, |a, &m| a | m)
    }

    pub fn add(&self, other: &BoolPoly) -> BoolPoly {
        BoolPoly::from_monomials(self.monomials.iter().chain(&other.monomials).copied())
    }

    pub fn mul_monomial(&self, m: Monomial) -> BoolPoly {
        BoolPoly::from_monomials(self.monomials.iter().map(|&t| t | m))
    }

    pub fn mul(&self, other: &BoolPoly) -> BoolPoly {
        BoolPoly::from_monomials(
            self.monomials
                .iter()
                .flat_map(|&a| other.monomials.iter().map(move |&b| a | b)),
        )
    }

    /// Value at the assignment whose set bits are the variables equal to 1.
    pub fn eval(&self, point: u64) -> bool {
        self.monomials.iter().filter(|&&m| m & !point == 0).count() % 2 == 1
    }

    /// Conversion from a polynomial over GF(2); exponents are reduced by `X^2 = X`.
    pub fn from_multipoly(f: &MultiPoly) -> Result<BoolPoly> {
        if f.field().order() != 2 {
            return Err(Error::FieldMismatch);
        }
        if f.nvars() > MAX_BOOL_VARS {
            return Err(Error::OutOfRange(format!(
                "at most {MAX_BOOL_VARS} boolean unknowns"
            )));
        }
        Ok(BoolPoly::from_monomials(f.terms().keys().map(|e| {
            e.iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .fold(0u64, |m, (i, _)| m | (1 << i))
        })))
    }

    pub fn to_multipoly(&self, vars: &[String]) -> MultiPoly {
        let gf2 = Field::prime(2).expect("2 is prime");
        let mut out = MultiPoly::zero(&gf2, vars.to_vec());
        for &m in &self.monomials {
            let e = (0..vars.len()).map(|i| ((m >> i) & 1) as u32).collect();
            out.add_term(e, gf2.one());
        }
        out
    }

    pub fn to_text(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.monomials
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..64)
                        .filter(|i| (m >> i) & 1 == 1)
                        .map(|i| vars.get(i).cloned().unwrap_or_else(|| format!("x{i}")))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Polynomial equations over GF(2) together with their origin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BooleanSystem {
    variables: Vec<String>,
    generators: Vec<BoolPoly>,
    pub provenance: BTreeMap<String, serde_json::Value>,
}

impl BooleanSystem {
    pub fn new(variables: Vec<String>, generators: Vec<BoolPoly>) -> Result<BooleanSystem> {
        if variables.len() > MAX_BOOL_VARS {
            return Err(Error::OutOfRange(format!(
                "at most {MAX_BOOL_VARS} boolean unknowns"
            )));
        }
        let allowed = if variables.len() == 64 {
            u64::MAX
        } else {
            (1u64 << variables.len()) - 1
        };
        if generators.iter().any(|g| g.support() & !allowed != 0) {
            return Err(Error::Precondition(
                "generator uses an undeclared variable".into(),
            ));
        }
        Ok(BooleanSystem {
            variables,
            generators,
            provenance: BTreeMap::new(),
        })
    }

    /// All generators must share the variable list of the first one.
    pub fn from_multipolys(polys: &[MultiPoly]) -> Result<BooleanSystem> {
        let vars = polys.first().map(|f| f.vars().to_vec()).unwrap_or_default();
        if polys.iter().any(|f| f.vars() != vars.as_slice()) {
            return Err(Error::Precondition(
                "generators over different variable lists".into(),
            ));
        }
        let gens = polys
            .iter()
            .map(BoolPoly::from_multipoly)
            .collect::<Result<_>>()?;
        BooleanSystem::new(vars, gens)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn generators(&self) -> &[BoolPoly] {
        &self.generators
    }

    pub fn max_degree(&self) -> u32 {
        self.generators
            .iter()
            .filter_map(BoolPoly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn is_satisfied_by(&self, point: u64) -> bool {
        self.generators.iter().all(|g| !g.eval(point))
    }

    /// Exhaustive enumeration of `GF(2)^k`, ascending as integers.
    pub fn brute_force_solutions(&self) -> Result<Vec<u64>> {
        if self.nvars() > 24 {
            return Err(Error::ResourceCap(
                "brute force is limited to 24 unknowns".into(),
            ));
        }
        Ok((0..1u64 << self.nvars())
            .filter(|&a| self.is_satisfied_by(a))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_multilinear() {
        let x = BoolPoly::var(0);
        let y = BoolPoly::var(1);
        let f = x.add(&y);
        assert_eq!(f.mul(&f), f);
        assert_eq!(x.mul(&x.add(&BoolPoly::one())), BoolPoly::zero());
        assert_eq!(f.mul(&y).to_text(&["a".into(), "b".into()]), "a*b + b");
    }

    #[test]
    fn grevlex_orders_degree_then_reverse_lex() {
        use Ordering::*;
        assert_eq!(grevlex_cmp(0b01, 0b10), Greater);
        assert_eq!(grevlex_cmp(0b011, 0b100), Greater);
        // x0*x3 vs x1*x2: x3 is the last differing variable
        assert_eq!(grevlex_cmp(0b1001, 0b0110), Less);
    }

    #[test]
    fn round_trip_through_multipoly() {
        let names: Vec<String> = (0..3).map(|i| format!("y{i}")).collect();
        let f = BoolPoly::from_monomials([0b101, 0b010, 0]);
        let g = BoolPoly::from_multipoly(&f.to_multipoly(&names)).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.leading(), Some(0b101));
    }

    #[test]
    fn undeclared_variables_rejected() {
        assert!(BooleanSystem::new(vec!["a".into()], vec![BoolPoly::var(1)]).is_err());
    }
}
