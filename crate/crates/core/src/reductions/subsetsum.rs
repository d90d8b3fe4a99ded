use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest instance for the exhaustive oracle.
pub const MAX_EXHAUSTIVE_ELEMENTS: usize = 24;
/// Largest instance for the meet-in-the-middle oracle.
pub const MAX_MITM_ELEMENTS: usize = 48;

/// Group elements are coordinate vectors: length 1 for `Z` and `Z/nZ`,
/// length `r` for `(Z/mZ)^r`, each coordinate reduced into `0..m`.
pub type GroupElem = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Group {
    Integers,
    Cyclic { n: u64 },
    Power { m: u64, r: usize },
}

impl Group {
    pub fn dim(&self) -> usize {
        match self {
            Group::Integers | Group::Cyclic { .. } => 1,
            Group::Power { r, .. } => *r,
        }
    }

    pub fn zero(&self) -> GroupElem {
        vec![0; self.dim()]
    }

    fn modulus(&self) -> Option<u64> {
        match self {
            Group::Integers => None,
            Group::Cyclic { n } => Some(*n),
            Group::Power { m, .. } => Some(*m),
        }
    }

    /// Reduces coordinates into canonical range.
    pub fn normalize(&self, a: &[i64]) -> GroupElem {
        match self.modulus() {
            None => a.to_vec(),
            Some(m) => a
                .iter()
                .map(|&x| (x as i128).rem_euclid(m as i128) as i64)
                .collect(),
        }
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        a.len() == self.dim()
            && match self.modulus() {
                None => true,
                Some(m) => a.iter().all(|&x| x >= 0 && (x as u64) < m),
            }
    }

    fn check(&self) -> Result<()> {
        match self {
            Group::Cyclic { n } if *n == 0 => Err(Error::Precondition("Z/0Z is not finite".into())),
            Group::Power { m, .. } if *m < 2 => {
                Err(Error::Precondition("m must be at least 2".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Result<GroupElem> {
        let s: Vec<i64> = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| {
                x.checked_add(y)
                    .ok_or_else(|| Error::OutOfRange("integer overflow".into()))
            })
            .collect::<Result<_>>()?;
        Ok(self.normalize(&s))
    }

    pub fn neg(&self, a: &[i64]) -> GroupElem {
        self.normalize(&a.iter().map(|&x| -x).collect::<Vec<_>>())
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Result<GroupElem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &[i64]) -> Result<GroupElem> {
        let s: Vec<i64> = a
            .iter()
            .map(|&x| {
                x.checked_mul(k)
                    .ok_or_else(|| Error::OutOfRange("integer overflow".into()))
            })
            .collect::<Result<_>>()?;
        Ok(self.normalize(&s))
    }
}

/// Does some subset of `elements` sum to `target`?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetSumInstance {
    pub group: Group,
    pub elements: Vec<GroupElem>,
    pub target: GroupElem,
}

impl SubsetSumInstance {
    pub fn new(
        group: Group,
        elements: Vec<GroupElem>,
        target: GroupElem,
    ) -> Result<SubsetSumInstance> {
        group.check()?;
        if let Some(i) = elements.iter().position(|e| !group.contains(e)) {
            return Err(Error::OutOfRange(format!(
                "element {i} is not a reduced group element"
            )));
        }
        if !group.contains(&target) {
            return Err(Error::OutOfRange(
                "target is not a reduced group element".into(),
            ));
        }
        Ok(SubsetSumInstance {
            group,
            elements,
            target,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sum_of(&self, subset: &[usize]) -> Result<GroupElem> {
        let mut acc = self.group.zero();
        for &i in subset {
            let e = self
                .elements
                .get(i)
                .ok_or_else(|| Error::OutOfRange(format!("index {i}")))?;
            acc = self.group.add(&acc, e)?;
        }
        Ok(acc)
    }

    /// Valid subsets list distinct indices in increasing order.
    pub fn is_solution(&self, subset: &[usize]) -> bool {
        subset.windows(2).all(|w| w[0] < w[1])
            && self.sum_of(subset).is_ok_and(|s| s == self.target)
    }
}

/// First solving subset in lexicographic order of indicator vectors.
pub fn subset_solve(inst: &SubsetSumInstance) -> Result<Option<Vec<usize>>> {
    let n = inst.len();
    if n > MAX_EXHAUSTIVE_ELEMENTS {
        return Err(Error::ResourceCap(format!(
            "exhaustive search over {n} elements"
        )));
    }
    for bits in 0u64..1 << n {
        let subset: Vec<usize> = (0..n).filter(|&i| bits >> (n - 1 - i) & 1 == 1).collect();
        if inst.sum_of(&subset)? == inst.target {
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

/// Fixed-width encoding of group elements in a `u128` with cheap addition.
enum Packer {
    Integers,
    Cyclic(u128),
    Lanes { m: u128, r: usize, width: u32 },
}

impl Packer {
    fn new(g: &Group) -> Result<Packer> {
        Ok(match g {
            Group::Integers => Packer::Integers,
            Group::Cyclic { n } => Packer::Cyclic(*n as u128),
            Group::Power { m, r } => {
                let width = 128 - (2 * (*m as u128) - 1).leading_zeros();
                if width as usize * r > 128 {
                    return Err(Error::ResourceCap(
                        "group elements do not fit the packed search".into(),
                    ));
                }
                Packer::Lanes {
                    m: *m as u128,
                    r: *r,
                    width,
                }
            }
        })
    }

    fn pack(&self, a: &[i64]) -> u128 {
        match self {
            Packer::Integers => a[0] as i128 as u128,
            Packer::Cyclic(_) => a[0] as u128,
            Packer::Lanes { width, .. } => a.iter().enumerate().fold(0u128, |acc, (i, &x)| {
                acc | (x as u128) << (i as u32 * width)
            }),
        }
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        match self {
            Packer::Integers => (a as i128).wrapping_add(b as i128) as u128,
            Packer::Cyclic(n) => (a + b) % n,
            Packer::Lanes { m, r, width } => {
                let s = a + b;
                let mask = (1u128 << width) - 1;
                let mut out = s;
                for i in 0..*r {
                    let sh = i as u32 * width;
                    if (s >> sh) & mask >= *m {
                        out -= m << sh;
                    }
                }
                out
            }
        }
    }

    fn neg(&self, a: u128) -> u128 {
        match self {
            Packer::Integers => (a as i128).wrapping_neg() as u128,
            Packer::Cyclic(n) => (n - a % n) % n,
            Packer::Lanes { m, r, width } => {
                let mask = (1u128 << width) - 1;
                (0..*r).fold(0u128, |acc, i| {
                    let sh = i as u32 * width;
                    let x = (a >> sh) & mask;
                    acc | ((m - x) % m) << sh
                })
            }
        }
    }
}

/// All subset sums of `items`, indexed by bitmask.
fn subset_sums(p: &Packer, items: &[u128]) -> Vec<u128> {
    let mut sums = vec![0u128; 1 << items.len()];
    for (i, &x) in items.iter().enumerate() {
        let half = 1usize << i;
        for mask in 0..half {
            sums[mask | half] = p.add(sums[mask], x);
        }
    }
    sums
}

/// A solving subset by meet in the middle, or `None`. Integer sums must not
/// overflow `i128`.
pub fn subset_solve_mitm(inst: &SubsetSumInstance) -> Result<Option<Vec<usize>>> {
    let n = inst.len();
    if n > MAX_MITM_ELEMENTS {
        return Err(Error::ResourceCap(format!(
            "meet in the middle over {n} elements"
        )));
    }
    let p = Packer::new(&inst.group)?;
    let items: Vec<u128> = inst.elements.iter().map(|e| p.pack(e)).collect();
    let h = n / 2;
    let left = subset_sums(&p, &items[..h]);
    let mut table: HashMap<u128, u64> = HashMap::with_capacity(left.len());
    for (mask, &s) in left.iter().enumerate() {
        table.entry(s).or_insert(mask as u64);
    }
    let target = p.pack(&inst.target);
    let right = subset_sums(&p, &items[h..]);
    for (rm, &s) in right.iter().enumerate() {
        if let Some(&lm) = table.get(&p.add(target, p.neg(s))) {
            let subset: Vec<usize> = (0..h)
                .filter(|i| lm >> i & 1 == 1)
                .chain((0..n - h).filter(|i| rm >> i & 1 == 1).map(|i| i + h))
                .collect();
            debug_assert!(inst.is_solution(&subset));
            return Ok(Some(subset));
        }
    }
    Ok(None)
}

/// Exhaustive search when it is cheap, meet in the middle otherwise.
pub fn subset_oracle(inst: &SubsetSumInstance) -> Result<Option<Vec<usize>>> {
    if inst.len() <= 16 {
        subset_solve(inst)
    } else {
        subset_solve_mitm(inst)
    }
}
