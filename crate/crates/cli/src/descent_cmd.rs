use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semaev::curves::{random_smooth_curve, Point, WeierstrassModel};
use semaev::descent::{cor_w8_combination, prop_w7_check, W7Mode};
use semaev::fields::{Basis, Field};
use serde_json::json;

use crate::{log, to_json, BasisChoice, CheckArgs, CliError, CliResult, Mode, Outcome, SCHEMA};

const MIN_N: usize = 3;
const MAX_SYMBOLIC_N: usize = 10;
const MAX_EXHAUSTIVE_N: usize = 6;

/// A seeded ordinary curve over GF(2^n) and an affine point `P` with `2P != O`.
fn draw(
    args: &CheckArgs,
    verbose: u8,
) -> Result<(Field, WeierstrassModel, Point, ChaCha8Rng), CliError> {
    if !(MIN_N..=MAX_SYMBOLIC_N).contains(&args.n) {
        return Err(CliError::Usage(format!(
            "--n must lie in {MIN_N}..={MAX_SYMBOLIC_N}"
        )));
    }
    let k = Field::new(2, args.n, None)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let e = loop {
        let e = random_smooth_curve(&k, &mut rng);
        if e.is_ordinary_binary() {
            break e;
        }
        log(1, "curve has a1 = 0; drawing again");
    };
    let p = loop {
        let p = e.random_point(&mut rng);
        if !e.double(&p).is_infinity() {
            break p;
        }
    };
    log(verbose, &format!("curve {:?}", e.descriptor().a));
    Ok((k, e, p, rng))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn check_trace(args: &CheckArgs, verbose: u8) -> CliResult {
    let mode = match args.mode {
        Mode::Auto => W7Mode::Auto,
        Mode::Exhaustive => W7Mode::Exhaustive,
        Mode::Symbolic => W7Mode::Symbolic,
        Mode::Both => W7Mode::Both,
    };
    if matches!(args.mode, Mode::Exhaustive | Mode::Both) && args.n > MAX_EXHAUSTIVE_N {
        return Err(CliError::Usage(format!(
            "exhaustive mode needs --n <= {MAX_EXHAUSTIVE_N}"
        )));
    }
    let (k, e, p, _) = draw(args, verbose)?;
    let r = prop_w7_check(&e, &p, mode)?;
    let ok = r.holds();
    if args.json {
        print!(
            "{}",
            to_json(&json!({
                "schema": SCHEMA,
                "check": "trace",
                "n": args.n,
                "seed": args.seed,
                "curve": e.descriptor(),
                "point": e.point_descriptor(&p),
                "b": k.coords(r.b),
                "exhaustive": r.exhaustive,
                "symbolic": r.symbolic,
                "constant_term": r.e1,
                "doubling_relation": r.relation_in_zero_set,
                "verdict": verdict(ok),
            }))
        );
    } else {
        println!(
            "{} trace identity n={} seed={} exhaustive={} symbolic={} constant={} doubling={}",
            verdict(ok),
            args.n,
            args.seed,
            r.exhaustive.map_or("skipped".into(), |b| b.to_string()),
            r.symbolic.map_or("skipped".into(), |b| b.to_string()),
            r.e1,
            r.relation_in_zero_set
        );
    }
    Ok(if ok { Outcome::Yes } else { Outcome::No })
}

pub fn check_combination(args: &CheckArgs, verbose: u8) -> CliResult {
    if args.mode == Mode::Exhaustive && args.n > MAX_EXHAUSTIVE_N {
        return Err(CliError::Usage(format!(
            "exhaustive mode needs --n <= {MAX_EXHAUSTIVE_N}"
        )));
    }
    let (k, e, p, mut rng) = draw(args, verbose)?;
    let basis = match args.basis {
        BasisChoice::Power => Basis::power(&k),
        BasisChoice::Random => Basis::random(&k, &mut rng),
    };
    let r = cor_w8_combination(&e, &p, &basis)?;
    let degree = r.lhs.total_degree();
    let ok = r.equal && degree.unwrap_or(0) <= 1;
    if args.json {
        print!(
            "{}",
            to_json(&json!({
                "schema": SCHEMA,
                "check": "combination",
                "n": args.n,
                "seed": args.seed,
                "curve": e.descriptor(),
                "point": e.point_descriptor(&p),
                "basis": basis.elems().iter().map(|&b| k.coords(b)).collect::<Vec<_>>(),
                "weights": r.weights,
                "lhs": r.lhs.to_text(),
                "rhs": r.rhs.to_text(),
                "lhs_degree": degree,
                "equal": r.equal,
                "verdict": verdict(ok),
            }))
        );
    } else {
        println!(
            "{} weighted combination n={} seed={} degree={} lhs={}",
            verdict(ok),
            args.n,
            args.seed,
            degree.map_or("-inf".into(), |d| d.to_string()),
            r.lhs.to_text()
        );
    }
    Ok(if ok { Outcome::Yes } else { Outcome::No })
}
