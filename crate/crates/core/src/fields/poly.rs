//! Dense univariate polynomials with coefficients in a [`Field`].
//!
//! Coefficient vectors are little-endian and kept trimmed (no trailing zeros).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{prime_factors, Elem, Field};

pub type UniPoly = Vec<Elem>;

pub fn trim(f: &mut UniPoly) {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

pub fn degree(f: &[Elem]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn add(k: &Field, f: &[Elem], g: &[Elem]) -> UniPoly {
    let mut out: UniPoly = (0..f.len().max(g.len()))
        .map(|i| {
            let a = f.get(i).copied().unwrap_or_default();
            let b = g.get(i).copied().unwrap_or_default();
            k.add(a, b)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn sub(k: &Field, f: &[Elem], g: &[Elem]) -> UniPoly {
    let neg: UniPoly = g.iter().map(|&c| k.neg(c)).collect();
    add(k, f, &neg)
}

pub fn mul(k: &Field, f: &[Elem], g: &[Elem]) -> UniPoly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![Elem::ZERO; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(a, b));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on a zero divisor.
pub fn divrem(k: &Field, f: &[Elem], g: &[Elem]) -> (UniPoly, UniPoly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let mut r: UniPoly = f.to_vec();
    trim(&mut r);
    if r.len() <= dg {
        return (vec![], r);
    }
    let lc_inv = k.inv(g[dg]).expect("leading coefficient is nonzero");
    let mut q = vec![Elem::ZERO; r.len() - dg];
    while r.len() > dg {
        let shift = r.len() - 1 - dg;
        let c = k.mul(*r.last().unwrap(), lc_inv);
        q[shift] = c;
        for (i, &gi) in g[..=dg].iter().enumerate() {
            r[shift + i] = k.sub(r[shift + i], k.mul(c, gi));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(k: &Field, f: &[Elem], g: &[Elem]) -> UniPoly {
    divrem(k, f, g).1
}

pub fn monic(k: &Field, f: &[Elem]) -> UniPoly {
    match degree(f) {
        None => vec![],
        Some(d) => {
            let inv = k.inv(f[d]).expect("nonzero leading coefficient");
            f[..=d].iter().map(|&c| k.mul(c, inv)).collect()
        }
    }
}

/// Monic gcd.
pub fn gcd(k: &Field, f: &[Elem], g: &[Elem]) -> UniPoly {
    let mut a: UniPoly = f.to_vec();
    let mut b: UniPoly = g.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    monic(k, &a)
}

pub fn mulmod(k: &Field, f: &[Elem], g: &[Elem], m: &[Elem]) -> UniPoly {
    rem(k, &mul(k, f, g), m)
}

pub fn powmod(k: &Field, f: &[Elem], mut e: u128, m: &[Elem]) -> UniPoly {
    let mut base = rem(k, f, m);
    let mut acc = rem(k, &[k.one()], m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &base, m);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(k, &base, &base, m);
        }
    }
    acc
}

pub fn eval(k: &Field, f: &[Elem], x: Elem) -> Elem {
    f.iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
}

/// `x^(p^times) mod m`, by repeated p-th powering.
fn x_frobenius_power(k: &Field, times: usize, m: &[Elem]) -> UniPoly {
    let mut h = rem(k, &[Elem::ZERO, k.one()], m);
    let p = k.characteristic() as u128;
    for _ in 0..times {
        h = powmod(k, &h, p, m);
    }
    h
}

/// Rabin irreducibility test for a monic polynomial over GF(p), coefficients given as integers.
pub fn is_irreducible(prime: &Field, coeffs: &[u64]) -> bool {
    debug_assert_eq!(prime.degree(), 1);
    let f: UniPoly = coeffs.iter().map(|&c| prime.from_int(c as i64)).collect();
    let Some(n) = degree(&f) else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![Elem::ZERO, prime.one()];
    if x_frobenius_power(prime, n, &f) != rem(prime, &x, &f) {
        return false;
    }
    prime_factors(n as u64).into_iter().all(|r| {
        let h = x_frobenius_power(prime, n / r as usize, &f);
        let g = gcd(prime, &sub(prime, &h, &x), &f);
        g.len() == 1
    })
}

/// All distinct roots of `f` lying in `k`, sorted.
pub fn roots(k: &Field, f: &[Elem]) -> Vec<Elem> {
    let f = monic(k, f);
    let Some(d) = degree(&f) else {
        return vec![];
    };
    if d == 0 {
        return vec![];
    }
    // product of the distinct linear factors
    let x = vec![Elem::ZERO, k.one()];
    let xq = x_frobenius_power(k, k.degree(), &f);
    let g = gcd(k, &sub(k, &xq, &x), &f);
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    split_linear(k, g, &mut rng, &mut out);
    out.sort();
    out
}

fn split_linear(k: &Field, g: UniPoly, rng: &mut ChaCha8Rng, out: &mut Vec<Elem>) {
    match degree(&g) {
        None | Some(0) => {}
        Some(1) => out.push(k.neg(k.div(g[0], g[1]).expect("nonzero"))),
        Some(_) => loop {
            let delta = k.random(rng);
            let h = if k.is_binary() {
                // trace polynomial of delta*x
                let mut t = rem(k, &[Elem::ZERO, delta], &g);
                let mut acc = t.clone();
                for _ in 1..k.degree() {
                    t = mulmod(k, &t, &t, &g);
                    acc = add(k, &acc, &t);
                }
                acc
            } else {
                let e = ((k.order() - 1) / 2) as u128;
                let pw = powmod(k, &[delta, k.one()], e, &g);
                sub(k, &pw, &[k.one()])
            };
            let c = gcd(k, &h, &g);
            let dc = degree(&c).unwrap_or(0);
            if dc > 0 && dc < degree(&g).unwrap() {
                let (q, _) = divrem(k, &g, &c);
                split_linear(k, c, rng, out);
                split_linear(k, monic(k, &q), rng, out);
                return;
            }
        },
    }
}
