use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Clause gadget over `(Z/mZ)^r` (or over `Z` when `m` is `None`): vectors
/// `c_1, c_2, c_3`, slack vectors `d_1..d_k` and a clause target `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub m: Option<u64>,
    pub r: usize,
    pub c: [Vec<i64>; 3],
    pub d: Vec<Vec<i64>>,
    pub t: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetAudit {
    /// Every nonempty `C` has some `D` with `sum C + sum D = t`.
    pub condition_a: bool,
    /// No `D` alone sums to `t`.
    pub condition_b: bool,
    /// Number of `(C, D)` pairs examined.
    pub pairs_checked: usize,
}

impl GadgetAudit {
    pub fn passed(&self) -> bool {
        self.condition_a && self.condition_b
    }
}

fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl Gadget {
    /// `r = 1, k = 2, c_i = d_i = 1, t = 3` for `m > 3`; the three-dimensional
    /// gadget with five slack vectors for `m = 3`.
    pub fn for_modulus(m: u64) -> Result<Gadget> {
        match m {
            0..=2 => Err(Error::Precondition(format!(
                "no gadget for m = {m}; m must be at least 3"
            ))),
            3 => {
                let c = [vec![2, 1, 2], vec![2, 2, 2], vec![2, 0, 1]];
                let t = vec![2, 0, 1];
                let d = vec![
                    sub(&t, &c[0]),
                    sub(&t, &c[1]),
                    sub(&sub(&t, &c[0]), &c[1]),
                    sub(&sub(&t, &c[0]), &c[2]),
                    sub(&sub(&t, &c[1]), &c[2]),
                ];
                Ok(Gadget {
                    m: Some(3),
                    r: 3,
                    c,
                    d,
                    t,
                }
                .reduced())
            }
            _ => Ok(Gadget {
                m: Some(m),
                ..Gadget::integer()
            }),
        }
    }

    /// The `m > 3` gadget read over `Z`.
    pub fn integer() -> Gadget {
        Gadget {
            m: None,
            r: 1,
            c: [vec![1], vec![1], vec![1]],
            d: vec![vec![1], vec![1]],
            t: vec![3],
        }
    }

    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        match self.m {
            None => v.to_vec(),
            Some(m) => v.iter().map(|&x| x.rem_euclid(m as i64)).collect(),
        }
    }

    fn reduced(self) -> Gadget {
        Gadget {
            c: self.c.clone().map(|v| self.reduce(&v)),
            d: self.d.iter().map(|v| self.reduce(v)).collect(),
            t: self.reduce(&self.t),
            ..self
        }
    }

    pub fn k(&self) -> usize {
        self.d.len()
    }

    /// `c_0 = 0, c_1, c_2, c_3`.
    pub fn c_at(&self, r: usize) -> Vec<i64> {
        if r == 0 {
            vec![0; self.r]
        } else {
            self.c[r - 1].clone()
        }
    }

    fn sum_of(&self, cs: u32, ds: u32) -> Vec<i64> {
        let mut acc = vec![0i64; self.r];
        for (i, c) in self.c.iter().enumerate() {
            if cs >> i & 1 == 1 {
                acc = acc.iter().zip(c).map(|(a, b)| a + b).collect();
            }
        }
        for (i, d) in self.d.iter().enumerate() {
            if ds >> i & 1 == 1 {
                acc = acc.iter().zip(d).map(|(a, b)| a + b).collect();
            }
        }
        self.reduce(&acc)
    }

    /// Exhaustive check of both conditions over all `2^3 * 2^k` pairs.
    pub fn audit(&self) -> GadgetAudit {
        let t = self.reduce(&self.t);
        let mut condition_a = true;
        let mut condition_b = true;
        let mut pairs = 0;
        for cs in 0u32..8 {
            let mut found = false;
            for ds in 0u32..1 << self.k() {
                pairs += 1;
                if self.sum_of(cs, ds) == t {
                    found = true;
                }
            }
            if cs == 0 {
                condition_b = !found;
            } else if !found {
                condition_a = false;
            }
        }
        GadgetAudit {
            condition_a,
            condition_b,
            pairs_checked: pairs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_gadgets_pass() {
        for m in [3, 4, 5, 7, 9, 10] {
            let g = Gadget::for_modulus(m).unwrap();
            let a = g.audit();
            assert!(a.passed(), "m = {m}: {a:?}");
            assert_eq!(a.pairs_checked, 8 << g.k());
        }
        assert!(Gadget::integer().audit().passed());
        assert!(Gadget::for_modulus(2).is_err());
    }

    #[test]
    fn three_dimensional_slack_vectors() {
        let g = Gadget::for_modulus(3).unwrap();
        assert_eq!(
            g.d,
            vec![
                vec![0, 2, 2],
                vec![0, 1, 2],
                vec![1, 0, 0],
                vec![1, 2, 1],
                vec![1, 1, 1]
            ]
        );
    }

    #[test]
    fn the_simple_gadget_fails_for_three() {
        let g = Gadget {
            m: Some(3),
            ..Gadget::integer()
        };
        assert!(!g.audit().condition_b);
    }
}
