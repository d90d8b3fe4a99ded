use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::boolpoly::BooleanSystem;
use super::profile::{affine_hull_dim, linear_part_points, DegreeProfile};
use crate::curves::{random_ordinary_curve, Point, WeierstrassModel};
use crate::descent::{descend, descend_with_frames};
use crate::error::{Error, Result};
use crate::fields::{poly, Basis, Elem, Field, QuadraticExtension};
use crate::sumpoly::{s3_in, MultiPoly};

const MAX_DRAWS: usize = 100;

/// A descended `S_3(X1, X2, x(P))` with `X1, X2` restricted to a subspace.
#[derive(Clone, Debug)]
pub struct SubspaceInstance {
    pub system: BooleanSystem,
    pub curve: WeierstrassModel,
    pub point: Point,
    /// Spanning elements `beta_1..beta_d` of the subspace.
    pub subspace: Vec<Elem>,
    /// `S_3(X1, X2, x(P))` over the curve's field.
    pub polynomial: MultiPoly,
}

impl SubspaceInstance {
    /// `(x_1, x_2)` for a 0/1 assignment of the system's unknowns.
    pub fn decode(&self, assignment: &[u8]) -> (Elem, Elem) {
        let k = self.curve.field();
        let d = self.subspace.len();
        let comb = |bits: &[u8]| {
            bits.iter()
                .zip(&self.subspace)
                .filter(|(&b, _)| b == 1)
                .fold(k.zero(), |acc, (_, &e)| k.add(acc, e))
        };
        (comb(&assignment[..d]), comb(&assignment[d..2 * d]))
    }

    pub fn x_p(&self) -> Elem {
        self.point.x().expect("affine point")
    }
}

/// `d` elements of GF(2^n) independent over GF(2).
fn random_subspace(k: &Field, d: usize, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let mut reduced: Vec<u64> = Vec::new();
    let mut out = Vec::new();
    while out.len() < d {
        let e = k.random(rng);
        let mut v = k.index(e);
        for &r in &reduced {
            v = v.min(v ^ r);
        }
        if v != 0 {
            reduced.push(v);
            reduced.sort_unstable_by(|a, b| b.cmp(a));
            out.push(e);
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Slot {
    Var(usize),
    Const(Elem),
}

fn s3_specialized(e: &WeierstrassModel, names: &[&str], slots: [Slot; 3]) -> MultiPoly {
    let n = names.len();
    let mut vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    vars.extend(["C1", "C2", "C3"].map(String::from));
    let idx: Vec<usize> = slots
        .iter()
        .enumerate()
        .map(|(j, s)| match s {
            Slot::Var(i) => *i,
            Slot::Const(_) => n + j,
        })
        .collect();
    let mut f = s3_in(e, vars, idx[0], idx[1], idx[2]);
    for (j, s) in slots.iter().enumerate() {
        if let Slot::Const(c) = s {
            f = f.specialize(n + j, *c);
        }
    }
    f.drop_vars(&[n, n + 1, n + 2])
        .expect("placeholders were specialized")
}

/// Random ordinary curve over GF(2^n), random `P` with `2P != 0`, and
/// `S_3(X1, X2, x(P))` descended after substituting `X_i = sum_k Y_ik beta_k`
/// for a random `ceil(n/2)`-dimensional subspace.
pub fn build_remark_w11_instance(n: usize, seed: u64) -> Result<SubspaceInstance> {
    if !(4..=24).contains(&n) {
        return Err(Error::OutOfRange("n must lie in 4..=24".into()));
    }
    let k = Field::new(2, n, None)?;
    let basis = Basis::power(&k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = n.div_ceil(2);
    for _ in 0..MAX_DRAWS {
        let curve = random_ordinary_curve(&k, &mut rng);
        let point = curve.random_point(&mut rng);
        if curve.double(&point).is_infinity() {
            continue;
        }
        let xp = point.x().expect("not 2-torsion");
        let subspace = random_subspace(&k, d, &mut rng);
        let polynomial = s3_specialized(
            &curve,
            &["X1", "X2"],
            [Slot::Var(0), Slot::Var(1), Slot::Const(xp)],
        );
        let frames = vec![subspace.clone(), subspace.clone()];
        let comps = descend_with_frames(&polynomial, &basis, &frames)?;
        if comps.iter().all(MultiPoly::is_zero) {
            continue;
        }
        let mut system = BooleanSystem::from_multipolys(&comps)?;
        let prov = &mut system.provenance;
        prov.insert("kind".into(), json!("subspace-descent"));
        prov.insert("n".into(), json!(n));
        prov.insert("seed".into(), json!(seed));
        prov.insert(
            "curve".into(),
            serde_json::to_value(curve.descriptor()).expect("serializable"),
        );
        prov.insert(
            "point".into(),
            serde_json::to_value(curve.point_descriptor(&point)).expect("serializable"),
        );
        prov.insert(
            "subspace".into(),
            json!(subspace.iter().map(|&b| k.coords(b)).collect::<Vec<_>>()),
        );
        return Ok(SubspaceInstance {
            system,
            curve,
            point,
            subspace,
            polynomial,
        });
    }
    Err(Error::SearchExhausted(format!(
        "no usable draw in {MAX_DRAWS} attempts"
    )))
}

/// The chained third summation polynomials and their descent.
#[derive(Clone, Debug)]
pub struct SplitSystem {
    pub system: BooleanSystem,
    pub curve: WeierstrassModel,
    pub inputs: Vec<Elem>,
    /// `S_3(a1,a2,X1), S_3(a3,X1,X2), ..., S_3(a_{m-1},a_m,X_{m-3})`.
    pub chain: Vec<MultiPoly>,
}

impl SplitSystem {
    /// Solvable, not purely linear, and the solutions satisfy a linear
    /// relation that the degree-1 generators do not imply.
    pub fn is_nondegenerate(&self, profile: &DegreeProfile) -> Result<bool> {
        if profile.solutions.is_empty() || self.system.max_degree() < 2 {
            return Ok(false);
        }
        let Some(outer) = linear_part_points(&self.system, 1 << 24)? else {
            return Ok(true);
        };
        let hull = affine_hull_dim(&profile.solution_masks()).expect("nonempty");
        Ok((1u64 << hull) < outer.len() as u64)
    }
}

/// Splits `S_m(a_1..a_m) = 0` into `m - 2` third summation polynomials in
/// `X1..X_{m-3}` and descends them with the power basis.
pub fn build_split_system(curve: &WeierstrassModel, inputs: &[Elem]) -> Result<SplitSystem> {
    let m = inputs.len();
    if m < 4 {
        return Err(Error::Precondition(
            "at least four x-coordinates are required".into(),
        ));
    }
    let k = curve.field();
    if !k.is_binary() {
        return Err(Error::Precondition("characteristic 2 is required".into()));
    }
    if inputs.iter().any(|&a| !k.contains(a)) {
        return Err(Error::OutOfRange("input outside the curve's field".into()));
    }
    let t = m - 3;
    let names: Vec<String> = (1..=t).map(|i| format!("X{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut chain = vec![s3_specialized(
        curve,
        &refs,
        [Slot::Const(inputs[0]), Slot::Const(inputs[1]), Slot::Var(0)],
    )];
    for i in 0..t - 1 {
        chain.push(s3_specialized(
            curve,
            &refs,
            [Slot::Const(inputs[i + 2]), Slot::Var(i), Slot::Var(i + 1)],
        ));
    }
    chain.push(s3_specialized(
        curve,
        &refs,
        [
            Slot::Const(inputs[m - 2]),
            Slot::Const(inputs[m - 1]),
            Slot::Var(t - 1),
        ],
    ));
    let basis = Basis::power(k);
    let mut comps = Vec::new();
    for g in &chain {
        comps.extend(descend(g, &basis)?);
    }
    let mut system = BooleanSystem::from_multipolys(&comps)?;
    let prov = &mut system.provenance;
    prov.insert("kind".into(), json!("split"));
    prov.insert(
        "curve".into(),
        serde_json::to_value(curve.descriptor()).expect("serializable"),
    );
    prov.insert(
        "inputs".into(),
        json!(inputs.iter().map(|&a| k.index(a)).collect::<Vec<_>>()),
    );
    Ok(SplitSystem {
        system,
        curve: curve.clone(),
        inputs: inputs.to_vec(),
        chain,
    })
}

/// `S_3(x0, x1, X)` as a polynomial in `X`, little-endian.
fn s3_in_last(e: &WeierstrassModel, x0: Elem, x1: Elem) -> [Elem; 3] {
    let k = e.field();
    let [b2, b4, b6, b8] = *e.b();
    let s = k.add(x0, x1);
    let p = k.mul(x0, x1);
    let two = k.from_int(2);
    let a = k.square(k.sub(x0, x1));
    let b = k.neg(k.add(
        k.add(k.mul(two, k.mul(p, s)), k.mul(b2, p)),
        k.add(k.mul(b4, s), b6),
    ));
    let c = k.sub(k.sub(k.sub(k.square(p), k.mul(b4, p)), k.mul(b6, s)), b8);
    [c, b, a]
}

/// Whether the chain has a common zero over the algebraic closure, found by
/// following roots over the quadratic extension. `None` if some step drops
/// below degree 2 in its unknown.
pub fn chain_consistent(curve: &WeierstrassModel, inputs: &[Elem]) -> Result<Option<bool>> {
    let m = inputs.len();
    if m < 4 {
        return Err(Error::Precondition(
            "at least four x-coordinates are required".into(),
        ));
    }
    let qe = QuadraticExtension::of(curve.field());
    let big = curve.base_change(&qe);
    let kk = qe.ext();
    let a: Vec<Elem> = inputs.iter().map(|&x| qe.embed(x)).collect();
    let roots_of = |x0: Elem, x1: Elem| -> Option<Vec<Elem>> {
        let f = s3_in_last(&big, x0, x1);
        if f[2].is_zero() {
            None
        } else {
            Some(poly::roots(kk, &f))
        }
    };
    let Some(mut frontier) = roots_of(a[0], a[1]) else {
        return Ok(None);
    };
    for &ai in &a[2..m - 2] {
        let mut next = Vec::new();
        for &x in &frontier {
            let Some(r) = roots_of(ai, x) else {
                return Ok(None);
            };
            next.extend(r);
        }
        next.sort();
        next.dedup();
        frontier = next;
    }
    let Some(last) = roots_of(a[m - 2], a[m - 1]) else {
        return Ok(None);
    };
    Ok(Some(frontier.iter().any(|x| last.contains(x))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sumpoly::eval_s3;

    #[test]
    fn s3_in_last_matches_evaluation() {
        let k = Field::new(2, 4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let e = random_ordinary_curve(&k, &mut rng);
        for _ in 0..30 {
            let (x0, x1, x) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
            assert_eq!(
                poly::eval(&k, &s3_in_last(&e, x0, x1), x),
                eval_s3(&e, x0, x1, x)
            );
        }
    }

    #[test]
    fn instance_dimensions() {
        let inst = build_remark_w11_instance(8, 1).unwrap();
        assert_eq!(inst.system.nvars(), 8);
        assert_eq!(inst.system.generators().len(), 8);
        assert!(build_remark_w11_instance(3, 1).is_err());
    }

    #[test]
    fn split_needs_four_inputs() {
        let k = Field::new(2, 3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let e = random_ordinary_curve(&k, &mut rng);
        assert!(build_split_system(&e, &[k.one(), k.one(), k.one()]).is_err());
        let s = build_split_system(&e, &[k.one(), k.zero(), k.generator(), k.one()]).unwrap();
        assert_eq!(s.chain.len(), 2);
        assert_eq!(s.system.nvars(), 3);
    }
}
