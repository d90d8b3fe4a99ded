use super::summation::eval_s3;
use crate::curves::{cuspidal_model, nodal_model};
use crate::error::{Error, Result};
use crate::fields::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularKind {
    /// Model `(1,0,0,0,0)`.
    Nodal,
    /// Model `(0,0,0,0,0)`.
    Cuspidal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorizationCheck {
    /// `S_3` at the transformed inputs.
    pub lhs: Elem,
    /// Unit factor times the product of four linear or bilinear factors.
    pub rhs: Elem,
    pub agree: bool,
}

/// Evaluates both sides of the closed-form factorization of `S_3` on a
/// singular model at transformed inputs.
pub fn degenerate_factorization_check(
    k: &Field,
    kind: SingularKind,
    x: [Elem; 3],
) -> Result<FactorizationCheck> {
    let one = k.one();
    let [x0, x1, x2] = x;
    let (lhs, rhs) = match kind {
        SingularKind::Nodal => {
            if x.iter().any(|&v| v.is_zero() || v == one) {
                return Err(Error::Precondition(
                    "nodal inputs must avoid 0 and 1".into(),
                ));
            }
            let t = |v: Elem| k.div(v, k.square(k.sub(v, one)));
            let lhs = eval_s3(&nodal_model(k), t(x0)?, t(x1)?, t(x2)?);
            let unit = k.inv(k.pow(
                k.mul(k.mul(k.sub(x0, one), k.sub(x1, one)), k.sub(x2, one)),
                4,
            ))?;
            let prod = [
                k.sub(k.mul(x1, x2), x0),
                k.sub(k.mul(x0, x2), x1),
                k.sub(x2, k.mul(x0, x1)),
                k.sub(k.mul(k.mul(x0, x1), x2), one),
            ]
            .into_iter()
            .fold(unit, |acc, f| k.mul(acc, f));
            (lhs, prod)
        }
        SingularKind::Cuspidal => {
            if x.iter().any(|v| v.is_zero()) {
                return Err(Error::Precondition(
                    "cuspidal inputs must be nonzero".into(),
                ));
            }
            let t = |v: Elem| k.inv(k.square(v));
            let lhs = eval_s3(&cuspidal_model(k), t(x0)?, t(x1)?, t(x2)?);
            let unit = k.inv(k.pow(k.mul(k.mul(x0, x1), x2), 4))?;
            let n0 = k.neg(x0);
            let prod = [
                k.sub(k.add(n0, x1), x2),
                k.add(k.add(n0, x1), x2),
                k.sub(k.add(x0, x1), x2),
                k.add(k.add(x0, x1), x2),
            ]
            .into_iter()
            .fold(unit, |acc, f| k.mul(acc, f));
            (lhs, prod)
        }
    };
    Ok(FactorizationCheck {
        lhs,
        rhs,
        agree: lhs == rhs,
    })
}

fn signed_search(r: usize, mut hit: impl FnMut(u64) -> bool) -> bool {
    if r == 0 {
        return true;
    }
    (0..1u64 << (r - 1)).any(|m| hit(m << 1))
}

/// Whether `x_0^{±1} ... x_{r-1}^{±1} = 1` for some signs.
pub fn multiplicative_relation(k: &Field, xs: &[Elem]) -> Result<bool> {
    let inv: Vec<Elem> = xs.iter().map(|&x| k.inv(x)).collect::<Result<_>>()?;
    Ok(signed_search(xs.len(), |m| {
        let prod = (0..xs.len()).fold(k.one(), |acc, i| {
            k.mul(acc, if m >> i & 1 == 1 { inv[i] } else { xs[i] })
        });
        prod == k.one()
    }))
}

/// Whether `±x_0 ± ... ± x_{r-1} = 0` for some signs.
pub fn additive_relation(k: &Field, xs: &[Elem]) -> bool {
    signed_search(xs.len(), |m| {
        let s = (0..xs.len()).fold(k.zero(), |acc, i| {
            if m >> i & 1 == 1 {
                k.sub(acc, xs[i])
            } else {
                k.add(acc, xs[i])
            }
        });
        s.is_zero()
    })
}
