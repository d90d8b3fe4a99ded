//! Finite fields GF(p^n) in a polynomial basis over GF(p).
//!
//! A [`Field`] is a cheap, shareable handle. Arithmetic is done on raw
//! [`Elem`] values through the field handle; [`FieldElement`] bundles an
//! element with its field and rejects cross-field operations.

mod basis;
mod element;
mod extension;
pub mod poly;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use basis::Basis;
pub use element::FieldElement;
pub use extension::QuadraticExtension;

/// Largest supported extension degree.
pub const MAX_DEGREE: usize = 64;

/// A field element relative to some [`Field`].
///
/// Coordinates in the power basis are packed into a `u128`, one fixed-width
/// lane per coordinate. The value is meaningless without its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u128);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u64,
    n: usize,
    /// Monic modulus, `c_0..c_n` with `c_n = 1`.
    modulus: Vec<u64>,
    width: u32,
    lane: u128,
    /// For p = 2: modulus without its leading bit.
    low_mask: u128,
    order: u64,
    nonresidue: OnceLock<Elem>,
    artin_schreier: OnceLock<Vec<(u64, u64)>>,
}

/// Handle to GF(p^n) = GF(p)[u]/(modulus).
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.n, self.0.modulus)
    }
}

/// JSON form of a field: `{p, n, modulus: [c_0..c_n]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: usize,
    pub modulus: Vec<u64>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn lane_width(p: u64) -> u32 {
    64 - (p - 1).leading_zeros()
}

impl Field {
    fn raw(p: u64, modulus: Vec<u64>) -> Result<Field> {
        let n = modulus.len() - 1;
        let width = lane_width(p);
        if n == 0 || n > MAX_DEGREE || width as usize * n > 128 {
            return Err(Error::InvalidField(format!(
                "degree {n} unsupported for p = {p}"
            )));
        }
        let order = (0..n).try_fold(1u64, |acc, _| acc.checked_mul(p));
        let order = order.ok_or_else(|| {
            Error::InvalidField(format!("{p}^{n} exceeds the supported field size"))
        })?;
        let low_mask = if p == 2 {
            modulus[..n]
                .iter()
                .enumerate()
                .fold(0u128, |m, (i, &c)| m | ((c as u128) << i))
        } else {
            0
        };
        Ok(Field(Arc::new(Inner {
            p,
            n,
            modulus,
            width,
            lane: (1u128 << width) - 1,
            low_mask,
            order,
            nonresidue: OnceLock::new(),
            artin_schreier: OnceLock::new(),
        })))
    }

    /// The prime field GF(p).
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidField(format!("characteristic {p} too large")));
        }
        Field::raw(p, vec![0, 1])
    }

    /// Builds GF(p^n). Without a modulus, the first monic irreducible
    /// polynomial is taken, enumerating `c_0 + c_1 p + ... + c_{n-1} p^{n-1}`
    /// upward.
    pub fn new(p: u64, n: usize, modulus: Option<&[u64]>) -> Result<Field> {
        let base = Field::prime(p)?;
        if n == 0 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        match modulus {
            Some(m) => {
                if m.len() != n + 1 || m[n] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {n}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(
                        "modulus coefficients must be reduced".into(),
                    ));
                }
                if !poly::is_irreducible(&base, m) {
                    return Err(Error::ReducibleModulus(p));
                }
                Field::raw(p, m.to_vec())
            }
            None => {
                if n == 1 {
                    return Ok(base);
                }
                // Checked before the search so that the loop is bounded.
                Field::raw(p, {
                    let mut m = vec![0; n + 1];
                    m[n] = 1;
                    m
                })?;
                let mut coeffs = vec![0u64; n + 1];
                coeffs[n] = 1;
                loop {
                    if coeffs[0] != 0 && poly::is_irreducible(&base, &coeffs) {
                        return Field::raw(p, coeffs);
                    }
                    // increment the little-endian counter c_0, c_1, ...
                    let mut i = 0;
                    loop {
                        if i == n {
                            unreachable!("irreducible polynomials exist in every degree");
                        }
                        coeffs[i] += 1;
                        if coeffs[i] < p {
                            break;
                        }
                        coeffs[i] = 0;
                        i += 1;
                    }
                }
            }
        }
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Field> {
        Field::new(d.p, d.n, Some(&d.modulus))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.0.p,
            n: self.0.n,
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.n
    }

    /// Number of elements p^n.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_binary(&self) -> bool {
        self.0.p == 2
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// Residue of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        let p = self.0.p as i64;
        Elem(v.rem_euclid(p) as u128)
    }

    /// The class of the indeterminate `u`.
    pub fn generator(&self) -> Elem {
        if self.0.n == 1 {
            // u = -c_0 in GF(p)[u]/(u + c_0)
            self.from_int(-(self.0.modulus[0] as i64))
        } else {
            Elem(1u128 << self.0.width)
        }
    }

    /// Element with base-p digits of `index` as coordinates.
    pub fn from_index(&self, mut index: u64) -> Result<Elem> {
        if index >= self.0.order {
            return Err(Error::OutOfRange(format!(
                "index {index} outside a field of {} elements",
                self.0.order
            )));
        }
        let mut packed = 0u128;
        for i in 0..self.0.n {
            packed |= ((index % self.0.p) as u128) << (i as u32 * self.0.width);
            index /= self.0.p;
        }
        Ok(Elem(packed))
    }

    pub fn index(&self, a: Elem) -> u64 {
        let mut idx = 0u64;
        for i in (0..self.0.n).rev() {
            idx = idx * self.0.p + self.digit(a, i);
        }
        idx
    }

    /// Iterates over all field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.order).map(move |i| self.from_index(i).expect("index in range"))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        self.from_index(rng.gen_range(0..self.0.order))
            .expect("index in range")
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        self.from_index(rng.gen_range(1..self.0.order))
            .expect("index in range")
    }

    #[inline]
    fn digit(&self, a: Elem, i: usize) -> u64 {
        ((a.0 >> (i as u32 * self.0.width)) & self.0.lane) as u64
    }

    #[inline]
    fn decode(&self, a: Elem, out: &mut [u64]) {
        for (i, d) in out.iter_mut().enumerate().take(self.0.n) {
            *d = self.digit(a, i);
        }
    }

    #[inline]
    fn encode(&self, digits: &[u64]) -> Elem {
        let mut packed = 0u128;
        for (i, &d) in digits.iter().enumerate().take(self.0.n) {
            packed |= (d as u128) << (i as u32 * self.0.width);
        }
        Elem(packed)
    }

    /// Power-basis coordinates `c_0..c_{n-1}`.
    pub fn coords(&self, a: Elem) -> Vec<u64> {
        (0..self.0.n).map(|i| self.digit(a, i)).collect()
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<Elem> {
        if coords.len() != self.0.n {
            return Err(Error::OutOfRange(format!(
                "expected {} coordinates, got {}",
                self.0.n,
                coords.len()
            )));
        }
        if coords.iter().any(|&c| c >= self.0.p) {
            return Err(Error::OutOfRange("coordinate not reduced mod p".into()));
        }
        Ok(self.encode(coords))
    }

    /// True if `a` is a valid encoding of an element of this field.
    pub fn contains(&self, a: Elem) -> bool {
        self.from_coords(&self.coords(a)).ok() == Some(a)
    }

    /// True if `a` lies in the prime subfield.
    pub fn is_prime_subfield(&self, a: Elem) -> bool {
        a.0 <= self.0.lane
    }

    /// Value of a prime-subfield element as an integer in `0..p`.
    pub fn prime_value(&self, a: Elem) -> Option<u64> {
        self.is_prime_subfield(a).then_some(a.0 as u64)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.0.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = self.0.p;
        let mut packed = 0u128;
        for i in 0..self.0.n {
            let s = self.digit(a, i) + self.digit(b, i);
            let s = if s >= p { s - p } else { s };
            packed |= (s as u128) << (i as u32 * self.0.width);
        }
        Elem(packed)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.0.p == 2 {
            return a;
        }
        let p = self.0.p;
        let mut packed = 0u128;
        for i in 0..self.0.n {
            let d = self.digit(a, i);
            let d = if d == 0 { 0 } else { p - d };
            packed |= (d as u128) << (i as u32 * self.0.width);
        }
        Elem(packed)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Multiplies by an integer of the prime subfield.
    pub fn scale(&self, a: Elem, k: u64) -> Elem {
        let p = self.0.p;
        let k = k % p;
        if self.0.p == 2 {
            return if k == 0 { Elem(0) } else { a };
        }
        let mut packed = 0u128;
        for i in 0..self.0.n {
            let d = self.digit(a, i) * k % p;
            packed |= (d as u128) << (i as u32 * self.0.width);
        }
        Elem(packed)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = self.0.n;
        if self.0.p == 2 {
            let (mut x, y) = (a.0, b.0);
            let mut acc = 0u128;
            let mut shift = 0;
            while x != 0 {
                if x & 1 == 1 {
                    acc ^= y << shift;
                }
                x >>= 1;
                shift += 1;
            }
            for k in (n..2 * n - 1).rev() {
                if (acc >> k) & 1 == 1 {
                    acc ^= (1u128 << k) | (self.0.low_mask << (k - n));
                }
            }
            return Elem(acc);
        }
        if n == 1 {
            return Elem(((a.0 as u64) * (b.0 as u64) % self.0.p) as u128);
        }
        let p = self.0.p;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        self.decode(a, &mut da);
        self.decode(b, &mut db);
        let mut prod = [0u128; 2 * MAX_DEGREE];
        for i in 0..n {
            if da[i] == 0 {
                continue;
            }
            let ai = da[i] as u128;
            for j in 0..n {
                prod[i + j] += ai * db[j] as u128;
            }
        }
        let m = &self.0.modulus;
        let p128 = p as u128;
        for k in (n..2 * n - 1).rev() {
            let c = (prod[k] % p128) as u64;
            if c == 0 {
                continue;
            }
            let neg = (p - c) as u128;
            for i in 0..n {
                prod[k - n + i] += neg * m[i] as u128;
            }
        }
        let mut out = [0u64; MAX_DEGREE];
        for i in 0..n {
            out[i] = (prod[i] % p128) as u64;
        }
        self.encode(&out[..n])
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: Elem, mut e: u128) -> Elem {
        let mut base = a;
        let mut acc = Elem(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(base);
            }
        }
        acc
    }

    /// Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        if self.0.p == 2 {
            self.square(a)
        } else {
            self.pow(a, self.0.p as u128)
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.0.n == 1 {
            return Ok(self.pow(a, (self.0.p - 2) as u128));
        }
        // extended Euclid over GF(p)[u]
        let prime = &self.0;
        let p = prime.p;
        let inv_mod_p = |x: u64| -> u64 { modpow(x, p - 2, p) };
        let mut r0: Vec<u64> = prime.modulus.clone();
        let mut r1: Vec<u64> = self.coords(a);
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !(r1.len() == 1) {
            // r0 = q r1 + r
            let (q, r) = divrem_modp(&r0, &r1, p, &inv_mod_p);
            let s2 = sub_modp(&s0, &mul_modp(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                unreachable!("modulus is irreducible");
            }
        }
        let c = inv_mod_p(r1[0]);
        let mut out = vec![0u64; prime.n];
        for (i, &s) in s1.iter().enumerate() {
            out[i] = s * c % p;
        }
        Ok(self.encode(&out))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace `sum_{i<n} a^{p^i}`, an element of GF(p).
    pub fn trace(&self, a: Elem) -> Elem {
        let mut acc = a;
        let mut cur = a;
        for _ in 1..self.0.n {
            cur = self.frobenius(cur);
            acc = self.add(acc, cur);
        }
        debug_assert!(self.is_prime_subfield(acc));
        acc
    }

    /// Absolute trace as an integer in `0..p`.
    pub fn trace_value(&self, a: Elem) -> u64 {
        self.trace(a).0 as u64
    }

    pub fn is_square(&self, a: Elem) -> bool {
        if a.is_zero() || self.0.p == 2 {
            return true;
        }
        self.pow(a, ((self.0.order - 1) / 2) as u128) == Elem(1)
    }

    fn nonresidue(&self) -> Elem {
        *self.0.nonresidue.get_or_init(|| {
            (2..self.0.order)
                .map(|i| self.from_index(i).expect("index in range"))
                .find(|&z| !self.is_square(z))
                .expect("odd fields have non-squares")
        })
    }

    /// A square root, if one exists in the field.
    pub fn sqrt(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return Some(a);
        }
        if self.0.p == 2 {
            return Some(self.pow(a, (self.0.order / 2) as u128));
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks
        let q1 = self.0.order - 1;
        let s = q1.trailing_zeros();
        let t = q1 >> s;
        let mut m = s;
        let mut c = self.pow(self.nonresidue(), t as u128);
        let mut x = self.pow(a, t.div_ceil(2) as u128);
        let mut b = self.pow(a, t as u128);
        let one = Elem(1);
        while b != one {
            let mut i = 0;
            let mut b2 = b;
            while b2 != one {
                b2 = self.square(b2);
                i += 1;
            }
            let mut g = c;
            for _ in 0..(m - i - 1) {
                g = self.square(g);
            }
            x = self.mul(x, g);
            c = self.square(g);
            b = self.mul(b, c);
            m = i;
        }
        Some(x)
    }

    /// Solves `z^2 + z = t` in characteristic 2.
    pub fn artin_schreier(&self, t: Elem) -> Option<Elem> {
        assert!(
            self.0.p == 2,
            "Artin-Schreier solver needs characteristic 2"
        );
        if self.trace_value(t) != 0 {
            return None;
        }
        let n = self.0.n;
        // Rows of the reduced system for the linear map z -> z^2 + z,
        // stored as (row over coordinates of z, combination of t coordinates).
        let echelon = self.0.artin_schreier.get_or_init(|| {
            let cols: Vec<u64> = (0..n)
                .map(|i| {
                    let e = Elem(1u128 << i);
                    self.add(self.square(e), e).0 as u64
                })
                .collect();
            // rows r: bit j set if column j has coordinate r
            let mut rows: Vec<(u64, u64)> = (0..n)
                .map(|r| {
                    let row = cols
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, &c)| acc | (((c >> r) & 1) << j));
                    (row, 1u64 << r)
                })
                .collect();
            let mut pivot_row = 0;
            for col in 0..n {
                let Some(k) = (pivot_row..n).find(|&k| (rows[k].0 >> col) & 1 == 1) else {
                    continue;
                };
                rows.swap(pivot_row, k);
                let pr = rows[pivot_row];
                for (k, row) in rows.iter_mut().enumerate() {
                    if k != pivot_row && (row.0 >> col) & 1 == 1 {
                        row.0 ^= pr.0;
                        row.1 ^= pr.1;
                    }
                }
                pivot_row += 1;
            }
            rows
        });
        let tv = t.0 as u64;
        let mut z = 0u64;
        for &(row, comb) in echelon {
            let rhs = (tv & comb).count_ones() as u64 & 1;
            if row == 0 {
                if rhs != 0 {
                    return None;
                }
                continue;
            }
            // free columns are set to zero, so the pivot takes the rhs
            if rhs == 1 {
                z |= 1u64 << row.trailing_zeros();
            }
        }
        let z = Elem(z as u128);
        debug_assert_eq!(self.add(self.square(z), z), t);
        Some(z)
    }

    /// Roots in this field of `a x^2 + b x + c` with `a != 0`, without repetition.
    pub fn quadratic_roots(&self, a: Elem, b: Elem, c: Elem) -> Result<Vec<Elem>> {
        let inv_a = self.inv(a)?;
        if self.0.p == 2 {
            if b.is_zero() {
                let r = self
                    .sqrt(self.mul(c, inv_a))
                    .expect("every element is a square");
                return Ok(vec![r]);
            }
            let t = self.div(self.mul(a, c), self.square(b))?;
            return Ok(match self.artin_schreier(t) {
                None => vec![],
                Some(z) => {
                    let s = self.mul(b, inv_a);
                    let r1 = self.mul(s, z);
                    vec![r1, self.add(r1, s)]
                }
            });
        }
        let disc = self.sub(self.square(b), self.scale(self.mul(a, c), 4));
        let Some(s) = self.sqrt(disc) else {
            return Ok(vec![]);
        };
        let half_inv_a = self.mul(inv_a, self.inv(self.from_int(2))?);
        let r1 = self.mul(self.sub(s, b), half_inv_a);
        if s.is_zero() {
            return Ok(vec![r1]);
        }
        let r2 = self.mul(self.sub(self.neg(b), s), half_inv_a);
        Ok(vec![r1, r2])
    }

    /// Wraps a raw element.
    pub fn element(&self, a: Elem) -> FieldElement {
        FieldElement::new(self.clone(), a)
    }

    /// Human-readable form: integers for prime fields, polynomials in `u` otherwise.
    pub fn format(&self, a: Elem) -> String {
        if self.0.n == 1 {
            return a.0.to_string();
        }
        let mut parts = Vec::new();
        for i in (0..self.0.n).rev() {
            let d = self.digit(a, i);
            if d == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "u".to_string(),
                _ => format!("u^{i}"),
            };
            parts.push(match (d, i) {
                (_, 0) => d.to_string(),
                (1, _) => mono,
                _ => format!("{d}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn mul_modp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn sub_modp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn divrem_modp(a: &[u64], b: &[u64], p: u64, inv: &dyn Fn(u64) -> u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let lc_inv = inv(*b.last().expect("nonzero divisor"));
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().copied().unwrap() * lc_inv % p;
        q[shift] = c;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}
