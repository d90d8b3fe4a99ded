use super::mpoly::MultiPoly;
use crate::error::{Error, Result};

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(mut m: Vec<Vec<MultiPoly>>) -> Result<MultiPoly> {
    let n = m.len();
    let (field, vars) = match m.first().and_then(|r| r.first()) {
        Some(p) => (p.field().clone(), p.vars().to_vec()),
        None => return Err(Error::Precondition("empty matrix".into())),
    };
    let mut negate = false;
    let mut prev = MultiPoly::one(&field, vars.clone());
    for k in 0..n {
        let Some(piv) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(MultiPoly::zero(&field, vars));
        };
        if piv != k {
            m.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev)?;
            }
            m[i][k] = MultiPoly::zero(&field, vars.clone());
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Sylvester resultant of `f` and `g` with respect to variable `i`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, i: usize) -> Result<MultiPoly> {
    f.try_sub(g)?;
    let (df, dg) = match (f.degree_in(i), g.degree_in(i)) {
        (Some(a), Some(b)) if a > 0 && b > 0 => (a as usize, b as usize),
        _ => {
            return Err(Error::Precondition(
                "resultant needs positive degree in the eliminated variable".into(),
            ))
        }
    };
    let fc = f.coefficients_in(i);
    let gc = g.coefficients_in(i);
    let size = df + dg;
    let zero = MultiPoly::zero(f.field(), f.vars().to_vec());
    let mut m = vec![vec![zero; size]; size];
    for r in 0..dg {
        for (j, c) in fc.iter().rev().enumerate() {
            m[r][r + j] = c.clone();
        }
    }
    for r in 0..df {
        for (j, c) in gc.iter().rev().enumerate() {
            m[dg + r][r + j] = c.clone();
        }
    }
    determinant(m)
}

/// Resultant of `f` and a `g` of degree exactly 2 in variable `i`, by
/// pseudo-division: `Res = (g2 r0^2 - g1 r0 r1 + g0 r1^2) / g2^(d-1)` where
/// `r1 X + r0 = prem(f, g)` and `d = deg f`.
pub fn resultant_with_quadratic(f: &MultiPoly, g: &MultiPoly, i: usize) -> Result<MultiPoly> {
    f.try_sub(g)?;
    let d = match (f.degree_in(i), g.degree_in(i)) {
        (Some(d), Some(2)) if d > 0 => d as usize,
        _ => {
            return Err(Error::Precondition(
                "expected positive degree and a quadratic".into(),
            ))
        }
    };
    let gc = g.coefficients_in(i);
    let (g0, g1, g2) = (&gc[0], &gc[1], &gc[2]);
    let mut r = f.coefficients_in(i);
    // each pass removes the top coefficient and multiplies by g2
    for top in (2..=d).rev() {
        let lead = r[top].clone();
        for c in r.iter_mut().take(top) {
            *c = c.mul(g2);
        }
        r[top - 1] = r[top - 1].sub(&lead.mul(g1));
        r[top - 2] = r[top - 2].sub(&lead.mul(g0));
        r.truncate(top);
    }
    let (r0, r1) = (
        &r[0],
        r.get(1)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(f.field(), f.vars().to_vec())),
    );
    let num = g2
        .mul(&r0.mul(r0))
        .sub(&g1.mul(&r0.mul(&r1)))
        .add(&g0.mul(&r1.mul(&r1)));
    if d == 1 {
        return Ok(num);
    }
    num.div_exact(&g2.pow(d as u32 - 1))
}
