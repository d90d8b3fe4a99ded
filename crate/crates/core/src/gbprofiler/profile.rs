use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::boolpoly::{grevlex_cmp, BoolPoly, BooleanSystem, Monomial};
use super::matrix::{matrix_bytes, words_for, BitMatrix, Echelon};
use crate::error::{Error, Result};

/// Limits for [`profile`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfilerConfig {
    pub d_max: u32,
    /// Budget for the matrices built at one degree.
    pub memory_cap_bytes: u64,
    /// Largest affine solution space enumerated when checking resolution.
    pub max_enumeration: u64,
}

impl Default for ProfilerConfig {
    fn default() -> Self {
        ProfilerConfig {
            d_max: 6,
            memory_cap_bytes: 4 << 30,
            max_enumeration: 1 << 20,
        }
    }
}

/// Multilinear monomials of degree at most `d`, in descending grevlex order.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Number of multilinear monomials of degree at most `d` in `k` variables.
pub fn monomial_count(k: usize, d: u32) -> u64 {
    (0..=d.min(k as u32) as u64)
        .map(|i| binomial(k as u64, i))
        .sum()
}

fn subsets(k: usize, size: u32, start: usize, acc: Monomial, out: &mut Vec<Monomial>) {
    if size == 0 {
        out.push(acc);
        return;
    }
    for i in start..k {
        if k - i < size as usize {
            break;
        }
        subsets(k, size - 1, i + 1, acc | (1 << i), out);
    }
}

impl MonomialIndex {
    pub fn new(k: usize, d: u32) -> MonomialIndex {
        let mut monomials = Vec::new();
        for deg in 0..=d.min(k as u32) {
            subsets(k, deg, 0, 0, &mut monomials);
        }
        monomials.sort_unstable_by(|a, b| grevlex_cmp(*b, *a));
        let index = monomials.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        MonomialIndex { monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn column(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }

    /// Monomials of degree at most `d`.
    pub fn up_to(&self, d: u32) -> impl Iterator<Item = Monomial> + '_ {
        self.monomials
            .iter()
            .copied()
            .filter(move |m| m.count_ones() <= d)
    }
}

/// Outcome of one Macaulay matrix at degree `d`.
#[derive(Clone, Debug)]
pub struct MacaulayStep {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// Echelon rows of degree below `d` not spanned by the degree `d - 1` matrix.
    pub new_low: Vec<BoolPoly>,
    /// A basis of the span's polynomials of degree at most 1.
    pub linear: Vec<BoolPoly>,
}

/// Rows `m * g` with `deg m + deg g <= d`.
fn product_rows(gens: &[BoolPoly], d: u32, cols: &MonomialIndex) -> BitMatrix {
    let count = gens
        .iter()
        .filter_map(BoolPoly::degree)
        .filter(|&e| e <= d)
        .map(|e| cols.up_to(d - e).count())
        .sum();
    let mut mat = BitMatrix::zeros(count, cols.len());
    let mut r = 0;
    for g in gens {
        let Some(e) = g.degree() else { continue };
        if e > d {
            continue;
        }
        for m in cols.up_to(d - e) {
            for t in g.mul_monomial(m).monomials() {
                let c = cols
                    .column(*t)
                    .expect("product stays within the column degree");
                mat.flip(r, c);
            }
            r += 1;
        }
    }
    mat
}

fn row_poly(row: &[u64], cols: &MonomialIndex) -> BoolPoly {
    let mut ms = Vec::new();
    for (w, &word) in row.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            ms.push(cols.monomials()[w * 64 + x.trailing_zeros() as usize]);
            x &= x - 1;
        }
    }
    BoolPoly::from_monomials(ms)
}

fn row_count(gens: &[BoolPoly], k: usize, d: u32) -> u64 {
    gens.iter()
        .filter_map(BoolPoly::degree)
        .filter(|&e| e <= d)
        .map(|e| monomial_count(k, d - e))
        .sum()
}

/// Bytes needed by [`macaulay_step`] at degree `d`.
pub fn step_bytes(system: &BooleanSystem, d: u32) -> u64 {
    let k = system.nvars();
    let cols = monomial_count(k, d) as usize;
    matrix_bytes(row_count(system.generators(), k, d) as usize, cols)
        + matrix_bytes(
            row_count(system.generators(), k, d.saturating_sub(1)) as usize,
            cols,
        )
}

/// Builds and row-reduces the degree-`d` Macaulay matrix of the system.
pub fn macaulay_step(
    system: &BooleanSystem,
    d: u32,
    memory_cap_bytes: u64,
) -> Result<MacaulayStep> {
    if d < system.max_degree() {
        return Err(Error::Precondition(format!(
            "degree {d} is below the generator degree {}",
            system.max_degree()
        )));
    }
    let need = step_bytes(system, d);
    if need > memory_cap_bytes {
        return Err(Error::ResourceCap(format!(
            "degree {d} matrices need {need} bytes, cap is {memory_cap_bytes}"
        )));
    }
    let k = system.nvars();
    let cols = MonomialIndex::new(k, d);
    let gens = system.generators();
    let mut mat = product_rows(gens, d, &cols);
    let rows = mat.rows();
    let pivots = mat.echelonize();
    let rank = pivots.len();

    let mut lower = Echelon::new(cols.len());
    if d > 0 {
        let mut prev = product_rows(gens, d - 1, &cols);
        let pr = prev.echelonize().len();
        for i in 0..pr {
            lower.insert(prev.row(i).to_vec());
        }
    }
    let mut new_low = Vec::new();
    let mut linear = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        let deg = cols.monomials()[p].count_ones();
        if deg < d && lower.insert(mat.row(i).to_vec()) {
            new_low.push(row_poly(mat.row(i), &cols));
        }
        if deg <= 1 {
            linear.push(row_poly(mat.row(i), &cols));
        }
    }
    Ok(MacaulayStep {
        degree: d,
        rows,
        cols: cols.len(),
        rank,
        new_low,
        linear,
    })
}

/// Instrumentation of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRecord {
    pub degree: u32,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    /// New polynomials of degree below `degree`, summed over feedback rounds.
    pub new_low: usize,
    /// Matrices built at this degree.
    pub rounds: usize,
    pub resolved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub nvars: usize,
    pub d_max: u32,
    /// `None` when no degree `d >= 2` produced a fall before resolution.
    pub first_fall_degree: Option<u32>,
    /// `None` when unresolved up to `d_max`.
    pub observed_solving_degree: Option<u32>,
    pub steps: Vec<DegreeRecord>,
    /// Solutions as 0/1 vectors, ascending as binary numbers with the first
    /// variable least significant.
    pub solutions: Vec<Vec<u8>>,
    /// A degree step hit the memory cap.
    pub capped: bool,
    pub note: Option<String>,
}

impl DegreeProfile {
    pub fn resolved(&self) -> bool {
        self.observed_solving_degree.is_some()
    }

    pub fn ffd_label(&self) -> String {
        self.first_fall_degree
            .map_or_else(|| "n/a".into(), |d| d.to_string())
    }

    pub fn solving_degree_label(&self) -> String {
        match self.observed_solving_degree {
            Some(d) => d.to_string(),
            None if self.capped => "capped".into(),
            None => format!("{}+", self.d_max),
        }
    }

    /// Largest matrix built, as `(rows, cols)`.
    pub fn matrix_max_dims(&self) -> (usize, usize) {
        self.steps
            .iter()
            .map(|s| (s.rows, s.cols))
            .max_by_key(|&(r, c)| (r as u64 * c as u64, r, c))
            .unwrap_or((0, 0))
    }

    pub fn solution_masks(&self) -> Vec<u64> {
        self.solutions
            .iter()
            .map(|s| {
                s.iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &b)| m | (u64::from(b) << i))
            })
            .collect()
    }
}

/// Reduced echelon form of linear polynomials as `(variable mask, constant)`
/// rows with distinct lowest variables, or `None` if inconsistent.
fn affine_solutions(linear: &[BoolPoly]) -> Option<Vec<(u64, bool)>> {
    // rows as (variable mask, constant)
    let mut rows: Vec<(u64, bool)> = Vec::new();
    for l in linear {
        let mut mask = 0u64;
        let mut c = false;
        for &m in l.monomials() {
            if m == 0 {
                c = true;
            } else {
                mask |= m;
            }
        }
        rows.push((mask, c));
    }
    let mut basis: Vec<(u64, bool)> = Vec::new();
    for (mut m, mut c) in rows {
        for &(bm, bc) in &basis {
            if m & (1 << bm.trailing_zeros()) != 0 {
                m ^= bm;
                c ^= bc;
            }
        }
        if m == 0 {
            if c {
                return None;
            }
            continue;
        }
        let p = 1u64 << m.trailing_zeros();
        for b in basis.iter_mut() {
            if b.0 & p != 0 {
                b.0 ^= m;
                b.1 ^= c;
            }
        }
        basis.push((m, c));
    }
    Some(basis)
}

fn enumerate_affine(nvars: usize, linear: &[BoolPoly], cap: u64) -> Result<Option<Vec<u64>>> {
    let Some(rows) = affine_solutions(linear) else {
        return Ok(Some(Vec::new()));
    };
    let pivot_mask = rows
        .iter()
        .fold(0u64, |a, &(m, _)| a | (1 << m.trailing_zeros()));
    let base = rows
        .iter()
        .filter(|&&(_, c)| c)
        .fold(0u64, |a, &(m, _)| a | (1 << m.trailing_zeros()));
    let all = if nvars == 64 {
        u64::MAX
    } else {
        (1u64 << nvars) - 1
    };
    let free: Vec<usize> = (0..nvars)
        .filter(|&i| (all & !pivot_mask) >> i & 1 == 1)
        .collect();
    if free.len() >= 64 || (1u64 << free.len()) > cap {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(1 << free.len());
    for bits in 0..1u64 << free.len() {
        let mut a = 0u64;
        for (j, &f) in free.iter().enumerate() {
            if bits >> j & 1 == 1 {
                a |= 1 << f;
            }
        }
        let mut point = a | base;
        for &(m, _) in &rows {
            let p = m.trailing_zeros();
            if (m & a).count_ones() % 2 == 1 {
                point ^= 1 << p;
            }
        }
        out.push(point);
    }
    out.sort_unstable();
    Ok(Some(out))
}

/// Dimension of the affine hull of a nonempty point set.
pub fn affine_hull_dim(points: &[u64]) -> Option<usize> {
    let (&p0, rest) = points.split_first()?;
    let mut basis: Vec<u64> = Vec::new();
    for &v in rest {
        let mut x = v ^ p0;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    Some(basis.len())
}

/// Points satisfying the degree-1 generators, if at most `cap` of them.
pub fn linear_part_points(system: &BooleanSystem, cap: u64) -> Result<Option<Vec<u64>>> {
    let linear: Vec<BoolPoly> = system
        .generators()
        .iter()
        .filter(|g| g.degree().is_some_and(|d| d <= 1))
        .cloned()
        .collect();
    enumerate_affine(system.nvars(), &linear, cap)
}

/// Whether the degree-`d` span equals the degree-`d` part of the ideal of
/// `points`, given `cols - rank` for the span.
fn spans_vanishing_ideal(points: &[u64], cols: &MonomialIndex, corank: usize) -> bool {
    let mut ev = Echelon::new(cols.len());
    for &v in points {
        if ev.rank() == corank {
            break;
        }
        let mut row = vec![0u64; words_for(cols.len())];
        for (c, &m) in cols.monomials().iter().enumerate() {
            if m & !v == 0 {
                row[c / 64] |= 1 << (c % 64);
            }
        }
        ev.insert(row);
    }
    ev.rank() == corank
}

/// XL with feedback: at each degree, new low-degree polynomials are added
/// as generators and the degree is repeated until nothing new appears.
pub fn profile(system: &BooleanSystem, config: &ProfilerConfig) -> Result<DegreeProfile> {
    if config.d_max < 2 {
        return Err(Error::Precondition("d_max must be at least 2".into()));
    }
    let k = system.nvars();
    let mut current = system.clone();
    let start = system.max_degree().max(1);
    let mut out = DegreeProfile {
        nvars: k,
        d_max: config.d_max,
        first_fall_degree: None,
        observed_solving_degree: None,
        steps: Vec::new(),
        solutions: Vec::new(),
        capped: false,
        note: None,
    };
    for d in start..=config.d_max {
        let mut record = DegreeRecord {
            degree: d,
            rows: 0,
            cols: 0,
            rank: 0,
            new_low: 0,
            rounds: 0,
            resolved: false,
        };
        let step = loop {
            let step = match macaulay_step(&current, d, config.memory_cap_bytes) {
                Ok(s) => s,
                Err(Error::ResourceCap(msg)) => {
                    if record.rounds > 0 {
                        out.steps.push(record);
                    }
                    out.capped = true;
                    out.note = Some(msg);
                    return Ok(out);
                }
                Err(e) => return Err(e),
            };
            if record.rounds == 0
                && d >= 2
                && !step.new_low.is_empty()
                && out.first_fall_degree.is_none()
            {
                out.first_fall_degree = Some(d);
            }
            record.rounds += 1;
            record.rows = step.rows;
            record.cols = step.cols;
            record.rank = step.rank;
            record.new_low += step.new_low.len();
            if step.new_low.is_empty() {
                break step;
            }
            let mut gens = current.generators().to_vec();
            gens.extend(step.new_low.iter().cloned());
            current = BooleanSystem::new(current.variables().to_vec(), gens)?;
        };
        if let Some(points) = enumerate_affine(k, &step.linear, config.max_enumeration)? {
            let sols: Vec<u64> = points
                .into_iter()
                .filter(|&a| system.is_satisfied_by(a))
                .collect();
            let cols = MonomialIndex::new(k, d);
            if spans_vanishing_ideal(&sols, &cols, step.cols - step.rank) {
                record.resolved = true;
                out.steps.push(record);
                out.observed_solving_degree = Some(d);
                out.solutions = sols
                    .iter()
                    .map(|&a| (0..k).map(|i| (a >> i & 1) as u8).collect())
                    .collect();
                return Ok(out);
            }
        }
        out.steps.push(record);
    }
    Ok(out)
}
