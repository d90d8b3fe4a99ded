use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::basis::invert_mod_p;
use super::{poly, Elem, Field, FieldDescriptor};

type Cache = Mutex<HashMap<(u64, Vec<u64>), QuadraticExtension>>;

static CACHE: OnceLock<Cache> = OnceLock::new();

/// The quadratic extension F' of a field F together with the embedding
/// F -> F' and the generator `sigma: b -> b^q` of Gal(F'/F).
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    base: Field,
    ext: Field,
    /// Image of the base generator `u`, a root of the base modulus.
    root: Elem,
    /// Left inverse of the embedding on the image, as a matrix over GF(p)
    /// (selected pivot rows of the embedding matrix, inverted).
    pivot_rows: Vec<usize>,
    restrict: Vec<Vec<u64>>,
}

impl QuadraticExtension {
    /// Memoized [`QuadraticExtension::new`].
    pub fn of(base: &Field) -> QuadraticExtension {
        let FieldDescriptor { p, modulus, .. } = base.descriptor();
        let key = (p, modulus);
        let cache = CACHE.get_or_init(Default::default);
        if let Some(qe) = cache.lock().expect("cache lock").get(&key) {
            return qe.clone();
        }
        let qe = QuadraticExtension::new(base);
        cache.lock().expect("cache lock").insert(key, qe.clone());
        qe
    }

    pub fn new(base: &Field) -> QuadraticExtension {
        let p = base.characteristic();
        let n = base.degree();
        let ext = Field::new(p, 2 * n, None).expect("degree 2n extension exists");
        let f: Vec<Elem> = base
            .modulus()
            .iter()
            .map(|&c| ext.from_int(c as i64))
            .collect();
        let root = *poly::roots(&ext, &f)
            .first()
            .expect("the base modulus splits in the quadratic extension");
        // embedding matrix: column i = coords of root^i (2n x n)
        let mut cols = Vec::with_capacity(n);
        let mut pw = ext.one();
        for _ in 0..n {
            cols.push(ext.coords(pw));
            pw = ext.mul(pw, root);
        }
        // pick n independent rows
        let mut pivot_rows = Vec::new();
        let mut chosen: Vec<Vec<u64>> = Vec::new();
        for r in 0..2 * n {
            let row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            let mut trial = chosen.clone();
            trial.push(row);
            if rank_mod_p(&trial, p) == trial.len() {
                chosen = trial;
                pivot_rows.push(r);
                if chosen.len() == n {
                    break;
                }
            }
        }
        let restrict = invert_mod_p(&chosen, p).expect("embedding is injective");
        QuadraticExtension {
            base: base.clone(),
            ext,
            root,
            pivot_rows,
            restrict,
        }
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn embed(&self, a: Elem) -> Elem {
        let e = &self.ext;
        self.base.coords(a).iter().rev().fold(e.zero(), |acc, &c| {
            e.add(e.mul(acc, self.root), e.from_int(c as i64))
        })
    }

    /// `b -> b^q` where q = |base|.
    pub fn sigma(&self, b: Elem) -> Elem {
        self.ext.pow(b, self.base.order() as u128)
    }

    pub fn in_base(&self, b: Elem) -> bool {
        self.sigma(b) == b
    }

    /// Preimage under the embedding, if `b` lies in the image.
    pub fn restrict(&self, b: Elem) -> Option<Elem> {
        let p = self.base.characteristic();
        let c = self.ext.coords(b);
        let sel: Vec<u64> = self.pivot_rows.iter().map(|&r| c[r]).collect();
        let coords: Vec<u64> = self
            .restrict
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&sel)
                    .fold(0, |acc, (&x, &y)| (acc + x * y) % p)
            })
            .collect();
        let a = self.base.from_coords(&coords).ok()?;
        (self.embed(a) == b).then_some(a)
    }
}

fn rank_mod_p(rows: &[Vec<u64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = (1..p)
            .find(|&x| x * a[rank][col] % p == 1)
            .expect("p prime");
        let prow: Vec<u64> = a[rank].iter().map(|&x| x * inv % p).collect();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&prow) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        a[rank] = prow;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_fixed_ring_homomorphism() {
        for (p, n) in [
            (2, 1),
            (2, 2),
            (2, 3),
            (2, 4),
            (3, 1),
            (3, 2),
            (5, 1),
            (7, 1),
            (13, 1),
        ] {
            let base = Field::new(p, n, None).unwrap();
            let qe = QuadraticExtension::new(&base);
            let e = qe.ext();
            assert_eq!(qe.embed(base.one()), e.one());
            let elems: Vec<_> = base.elements().collect();
            for &a in &elems {
                let ea = qe.embed(a);
                assert_eq!(qe.sigma(ea), ea);
                assert_eq!(qe.restrict(ea), Some(a));
                for &b in &elems {
                    assert_eq!(qe.embed(base.mul(a, b)), e.mul(ea, qe.embed(b)));
                    assert_eq!(qe.embed(base.add(a, b)), e.add(ea, qe.embed(b)));
                }
            }
            // sigma is an involution fixing exactly the image
            let mut fixed = 0;
            for b in e.elements() {
                assert_eq!(qe.sigma(qe.sigma(b)), b);
                if qe.in_base(b) {
                    fixed += 1;
                    assert!(qe.restrict(b).is_some());
                } else {
                    assert!(qe.restrict(b).is_none());
                }
            }
            assert_eq!(fixed, base.order());
        }
    }
}
