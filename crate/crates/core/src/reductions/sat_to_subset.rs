use serde::{Deserialize, Serialize};

use super::gadget::Gadget;
use super::sat::SatInstance;
use super::subsetsum::{Group, GroupElem, SubsetSumInstance};
use crate::error::{Error, Result};

/// What a subset-sum element stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElementRole {
    /// `v_x` for the literal `x` (variable 1-based).
    Literal { var: usize, negated: bool },
    /// `h_{j,i} = d_i e'_j` (both 1-based).
    Slack { clause: usize, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatCertificate {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub gadget: Gadget,
    /// `Some(8)` when the vectors are packed into integers in radix 8.
    pub radix: Option<u64>,
    pub roles: Vec<ElementRole>,
    /// `r_x(j)` for each literal element, per clause.
    pub positions: Vec<Vec<usize>>,
}

/// Position (1-based) of the first occurrence of `lit` in the clause, or 0.
fn first_position(clause: &[i32; 3], lit: i32) -> usize {
    clause.iter().position(|&l| l == lit).map_or(0, |p| p + 1)
}

/// Elements, target, element roles and literal positions per clause.
type Layout = (Vec<Vec<i64>>, Vec<i64>, Vec<ElementRole>, Vec<Vec<usize>>);

/// The vectors `v_x`, `h_{j,i}` and `w` in `(Z/mZ)^s x ((Z/mZ)^r)^w` before reduction.
fn vectors(sat: &SatInstance, g: &Gadget) -> Layout {
    let s = sat.num_vars();
    let w = sat.clauses().len();
    let dim = s + g.r * w;
    let mut elements = Vec::new();
    let mut roles = Vec::new();
    let mut positions = Vec::new();
    for negated in [false, true] {
        for var in 1..=s {
            let lit = if negated { -(var as i32) } else { var as i32 };
            let mut v = vec![0i64; dim];
            v[var - 1] = 1;
            let mut pos = Vec::with_capacity(w);
            for (j, clause) in sat.clauses().iter().enumerate() {
                let r = first_position(clause, lit);
                pos.push(r);
                for (o, x) in g.c_at(r).into_iter().enumerate() {
                    v[s + j * g.r + o] += x;
                }
            }
            elements.push(v);
            roles.push(ElementRole::Literal { var, negated });
            positions.push(pos);
        }
    }
    for j in 0..w {
        for (i, d) in g.d.iter().enumerate() {
            let mut v = vec![0i64; dim];
            v[s + j * g.r..s + (j + 1) * g.r].copy_from_slice(d);
            elements.push(v);
            roles.push(ElementRole::Slack {
                clause: j + 1,
                index: i + 1,
            });
        }
    }
    let mut target = vec![0i64; dim];
    for t in target.iter_mut().take(s) {
        *t = 1;
    }
    for j in 0..w {
        target[s + j * g.r..s + (j + 1) * g.r].copy_from_slice(&g.t);
    }
    (elements, target, roles, positions)
}

/// 3-SAT to subset sum in `(Z/mZ)^{s + r w}`.
pub fn sat_to_subsetsum_modm(
    sat: &SatInstance,
    m: u64,
) -> Result<(SubsetSumInstance, SatCertificate)> {
    let gadget = Gadget::for_modulus(m)?;
    let (elements, target, roles, positions) = vectors(sat, &gadget);
    let group = Group::Power { m, r: target.len() };
    let elements = elements.iter().map(|e| group.normalize(e)).collect();
    let target = group.normalize(&target);
    let inst = SubsetSumInstance::new(group, elements, target)?;
    Ok((
        inst,
        SatCertificate {
            num_vars: sat.num_vars(),
            num_clauses: sat.clauses().len(),
            gadget,
            radix: None,
            roles,
            positions,
        },
    ))
}

const RADIX: u64 = 8;

fn pack_radix(v: &[i64]) -> Result<i64> {
    v.iter().rev().try_fold(0i64, |acc, &d| {
        acc.checked_mul(RADIX as i64)
            .and_then(|a| a.checked_add(d))
            .ok_or_else(|| Error::OutOfRange("instance too large for 64-bit packing".into()))
    })
}

/// 3-SAT to subset sum over `Z` (or `Z/nZ` with `n = 8^{s+w}` when `cyclic`),
/// packing the `m > 3` construction in radix 8 so no column carries.
pub fn sat_to_subsetsum_z(
    sat: &SatInstance,
    cyclic: bool,
) -> Result<(SubsetSumInstance, SatCertificate)> {
    let gadget = Gadget::integer();
    let (elements, target, roles, positions) = vectors(sat, &gadget);
    let digits = target.len() as u32;
    let group = if cyclic {
        let n = RADIX
            .checked_pow(digits)
            .filter(|&n| n <= i64::MAX as u64)
            .ok_or_else(|| Error::OutOfRange("instance too large for 64-bit packing".into()))?;
        Group::Cyclic { n }
    } else {
        Group::Integers
    };
    let elements = elements
        .iter()
        .map(|e| pack_radix(e).map(|x| vec![x]))
        .collect::<Result<_>>()?;
    let target = vec![pack_radix(&target)?];
    let inst = SubsetSumInstance::new(group, elements, target)?;
    Ok((
        inst,
        SatCertificate {
            num_vars: sat.num_vars(),
            num_clauses: sat.clauses().len(),
            gadget,
            radix: Some(RADIX),
            roles,
            positions,
        },
    ))
}

/// Assignment read off a verified subset: `x_i` is true iff `v_{x_i}` is chosen.
pub fn pull_back_subset(
    cert: &SatCertificate,
    sat: &SatInstance,
    inst: &SubsetSumInstance,
    subset: &[usize],
) -> Result<Vec<bool>> {
    if !inst.is_solution(subset) {
        return Err(Error::InvalidWitness(
            "subset does not sum to the target".into(),
        ));
    }
    let mut assignment = vec![false; cert.num_vars];
    for &i in subset {
        if let Some(ElementRole::Literal {
            var,
            negated: false,
        }) = cert.roles.get(i)
        {
            assignment[var - 1] = true;
        }
    }
    if !sat.satisfied_by(&assignment) {
        return Err(Error::InvalidWitness(
            "pulled-back assignment violates a clause".into(),
        ));
    }
    Ok(assignment)
}

/// The subset selecting `v_x` for every true literal plus slack completing each clause.
pub fn push_forward_assignment(
    cert: &SatCertificate,
    sat: &SatInstance,
    inst: &SubsetSumInstance,
    assignment: &[bool],
) -> Result<Vec<usize>> {
    if !sat.satisfied_by(assignment) {
        return Err(Error::InvalidWitness(
            "assignment does not satisfy the formula".into(),
        ));
    }
    let g = &cert.gadget;
    let mut chosen: Vec<usize> = Vec::new();
    for (i, role) in cert.roles.iter().enumerate() {
        if let ElementRole::Literal { var, negated } = role {
            if assignment[var - 1] != *negated {
                chosen.push(i);
            }
        }
    }
    let literals = chosen.clone();
    let slack_start = 2 * cert.num_vars;
    for j in 0..sat.clauses().len() {
        // positions of true literals in this clause, as a bitmask over c_1..c_3
        let mut cs = 0u32;
        for &i in &literals {
            let r = cert.positions[i][j];
            if r > 0 {
                cs |= 1 << (r - 1);
            }
        }
        let ds = (0u32..1 << g.k())
            .find(|&ds| {
                let mut acc = vec![0i64; g.r];
                for r in 0..3 {
                    if cs >> r & 1 == 1 {
                        acc = acc.iter().zip(&g.c[r]).map(|(a, b)| a + b).collect();
                    }
                }
                for (i, d) in g.d.iter().enumerate() {
                    if ds >> i & 1 == 1 {
                        acc = acc.iter().zip(d).map(|(a, b)| a + b).collect();
                    }
                }
                let red = |v: &[i64]| -> GroupElem {
                    match g.m {
                        Some(m) => v.iter().map(|&x| x.rem_euclid(m as i64)).collect(),
                        None => v.to_vec(),
                    }
                };
                red(&acc) == red(&g.t)
            })
            .ok_or_else(|| {
                Error::InvalidWitness(format!("gadget cannot complete clause {}", j + 1))
            })?;
        for i in 0..g.k() {
            if ds >> i & 1 == 1 {
                chosen.push(slack_start + j * g.k() + i);
            }
        }
    }
    chosen.sort_unstable();
    if !inst.is_solution(&chosen) {
        return Err(Error::InvalidWitness(
            "pushed-forward subset misses the target".into(),
        ));
    }
    Ok(chosen)
}
