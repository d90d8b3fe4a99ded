use semaev::curves::WeierstrassModel;
use semaev::fields::{Elem, Field};
use semaev::sumpoly::summation_poly;
use serde_json::json;

use crate::{to_json, CliError, CliResult, ComputeArgs, Outcome, SCHEMA};

pub fn parse_field(text: &str, modulus: Option<&[u64]>) -> Result<Field, CliError> {
    let bad = || CliError::Usage(format!("bad field `{text}`: expected p or p^n"));
    let (p, n) = match text.split_once('^') {
        Some((p, n)) => (
            p.trim().parse().map_err(|_| bad())?,
            n.trim().parse().map_err(|_| bad())?,
        ),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    let field = match modulus {
        Some(m) => Field::new(p, n, Some(m)),
        None => Field::new(p, n, None),
    };
    field.map_err(|e| CliError::Usage(format!("bad field `{text}`: {e}")))
}

/// `-3` (integer), `5` (field index) or `1,0,1` (coordinates, constant first).
pub fn parse_elem(k: &Field, s: &str) -> Result<Elem, CliError> {
    let bad = |e: String| CliError::Usage(format!("bad field element `{s}`: {e}"));
    if s.contains(',') {
        let coords = s
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        return k.from_coords(&coords).map_err(|e| bad(e.to_string()));
    }
    let v: i64 = s
        .trim()
        .parse()
        .map_err(|e: std::num::ParseIntError| bad(e.to_string()))?;
    if v < 0 {
        Ok(k.from_int(v))
    } else {
        k.from_index(v as u64).map_err(|e| bad(e.to_string()))
    }
}

pub fn compute(a: &ComputeArgs) -> CliResult {
    let k = parse_field(&a.field, a.modulus.as_deref())?;
    let coeffs = [&a.a1, &a.a2, &a.a3, &a.a4, &a.a6];
    let mut vals = [k.zero(); 5];
    for (v, s) in vals.iter_mut().zip(coeffs) {
        *v = parse_elem(&k, s)?;
    }
    let e = WeierstrassModel::new(&k, vals);
    let s = summation_poly(&e, a.r)?;
    if a.json {
        print!(
            "{}",
            to_json(&json!({
                "schema": SCHEMA,
                "command": "sumpoly compute",
                "curve": e.descriptor(),
                "r": a.r,
                "text": s.to_text(),
                "polynomial": s.descriptor(),
            }))
        );
    } else {
        println!("{}", s.to_text());
    }
    Ok(Outcome::Yes)
}
