use rand::Rng;

use super::{Elem, Field};
use crate::error::{Error, Result};

/// An ordered GF(p)-basis `alpha_1..alpha_n` of GF(p^n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    field: Field,
    elems: Vec<Elem>,
    /// Inverse of the coordinate matrix (columns = basis elements), row-major.
    inverse: Vec<Vec<u64>>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut b, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a square matrix over GF(p), or `None` if singular.
pub(crate) fn invert_mod_p(m: &[Vec<u64>], p: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let inv = inv_mod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, &y) in row.iter_mut().zip(&prow) {
                *x = (*x + p - c * y % p) % p;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl Basis {
    pub fn new(field: &Field, elems: Vec<Elem>) -> Result<Basis> {
        let n = field.degree();
        if elems.len() != n {
            return Err(Error::DegenerateBasis);
        }
        // rows = power-basis coordinate, columns = basis element
        let m: Vec<Vec<u64>> = (0..n)
            .map(|r| elems.iter().map(|&e| field.coords(e)[r]).collect())
            .collect();
        let inverse = invert_mod_p(&m, field.characteristic()).ok_or(Error::DegenerateBasis)?;
        Ok(Basis {
            field: field.clone(),
            elems,
            inverse,
        })
    }

    /// `1, u, ..., u^{n-1}`.
    pub fn power(field: &Field) -> Basis {
        let elems = (0..field.degree())
            .map(|i| {
                let mut c = vec![0u64; field.degree()];
                c[i] = 1;
                field.from_coords(&c).expect("unit vector")
            })
            .collect();
        Basis::new(field, elems).expect("power basis has full rank")
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Basis {
        loop {
            let elems = (0..field.degree()).map(|_| field.random(rng)).collect();
            if let Ok(b) = Basis::new(field, elems) {
                return b;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Coordinates `c_j` with `a = sum c_j alpha_j`.
    pub fn coords(&self, a: Elem) -> Vec<u64> {
        let p = self.field.characteristic();
        let v = self.field.coords(a);
        self.inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&v)
                    .fold(0u64, |acc, (&x, &y)| (acc + x * y) % p)
            })
            .collect()
    }

    pub fn combine(&self, coords: &[u64]) -> Elem {
        let f = &self.field;
        coords
            .iter()
            .zip(&self.elems)
            .fold(f.zero(), |acc, (&c, &e)| f.add(acc, f.scale(e, c)))
    }

    /// Coordinates of 1.
    pub fn one_coords(&self) -> Vec<u64> {
        self.coords(self.field.one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn power_basis_coordinates() {
        let f = Field::new(3, 4, None).unwrap();
        let b = Basis::power(&f);
        assert_eq!(b.one_coords(), vec![1, 0, 0, 0]);
        assert_eq!(b.coords(f.generator()), vec![0, 1, 0, 0]);
    }

    #[test]
    fn degenerate_basis_rejected() {
        let f = Field::new(2, 3, None).unwrap();
        let u = f.generator();
        assert_eq!(
            Basis::new(&f, vec![f.one(), u, f.add(f.one(), u)]),
            Err(Error::DegenerateBasis)
        );
    }

    #[test]
    fn random_basis_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, n) in [(2, 6), (3, 3), (5, 2)] {
            let f = Field::new(p, n, None).unwrap();
            let b = Basis::random(&f, &mut rng);
            for _ in 0..20 {
                let a = f.random(&mut rng);
                assert_eq!(b.combine(&b.coords(a)), a);
            }
        }
    }
}
