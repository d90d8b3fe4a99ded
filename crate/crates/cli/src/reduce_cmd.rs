use std::fs;
use std::path::Path;

use semaev::curves::{PointDescriptor, WeierstrassModel};
use semaev::reductions::{
    decide_sumpoly, parse_dimacs, pull_back_witness, reduce_sat, ChainRoute, ReductionCertificate,
    SatInstance, SubsetSumInstance,
};
use semaev::Error;
use serde_json::{json, Value};

use crate::{log, to_json, CliError, CliResult, Outcome, ReduceArgs, RouteArg, VerifyArgs, SCHEMA};

fn io(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Lib(Error::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(io(path))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn assignment_text(a: &[bool]) -> String {
    let lits: Vec<String> = a
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if b {
                format!("{}", i + 1)
            } else {
                format!("-{}", i + 1)
            }
        })
        .collect();
    lits.join(" ")
}

pub fn reduce(a: &ReduceArgs, verbose: u8) -> CliResult {
    let text = fs::read_to_string(&a.input).map_err(io(&a.input))?;
    let sat = parse_dimacs(&text)?;
    let route = match a.route {
        RouteArg::Cusp => ChainRoute::Cuspidal,
        RouteArg::Ec => ChainRoute::Elliptic {
            order_bound: a.order_bound,
            seed: a
                .seed
                .ok_or_else(|| CliError::Usage("--seed is required for --route ec".into()))?,
        },
    };
    let chain = reduce_sat(&sat, route)?;
    let cert = &chain.certificate;
    log(
        verbose,
        &format!(
            "{} subset-sum elements, arity {}",
            cert.subset.len(),
            cert.sumpoly_stage.references.len()
        ),
    );
    let e = chain.reduction.model()?;
    let k = e.field();
    let inputs: Vec<Vec<u64>> = chain
        .reduction
        .instance
        .as_ref()
        .map(|s| s.inputs.iter().map(|&x| k.coords(x)).collect())
        .unwrap_or_default();
    fs::create_dir_all(&a.out).map_err(io(&a.out))?;
    let write = |name: &str, v: Value| -> Result<(), CliError> {
        let path = a.out.join(name);
        fs::write(&path, to_json(&v)).map_err(io(&path))
    };
    write(
        "subsetsum.json",
        json!({
            "schema": SCHEMA,
            "stage": "subsetsum",
            "group": cert.subset.group,
            "elements": cert.subset.elements,
            "target": cert.subset.target,
        }),
    )?;
    write(
        "instance.json",
        json!({
            "schema": SCHEMA,
            "stage": "sumpoly",
            "curve": cert.sumpoly_stage.curve,
            "inputs": inputs,
            "certificate": cert,
        }),
    )?;
    let witness = decide_sumpoly(&chain.reduction)?;
    let (verdict, assignment) = match &witness {
        Some(points) => {
            let assignment = pull_back_witness(cert, points)?;
            write(
                "witness.json",
                json!({
                    "schema": SCHEMA,
                    "stage": "witness",
                    "points": points.iter().map(|p| e.point_descriptor(p)).collect::<Vec<_>>(),
                    "assignment": assignment,
                }),
            )?;
            ("SAT", Some(assignment))
        }
        None => {
            let stale = a.out.join("witness.json");
            if stale.exists() {
                fs::remove_file(&stale).map_err(io(&stale))?;
            }
            ("UNSAT", None)
        }
    };
    if a.json {
        print!(
            "{}",
            to_json(&json!({
                "schema": SCHEMA,
                "command": "reduce",
                "verdict": verdict,
                "vanishes": witness.is_some(),
                "arity": inputs.len(),
                "assignment": assignment,
                "notes": cert.sumpoly_stage.notes,
            }))
        );
    } else {
        match &assignment {
            Some(x) => println!("{verdict}: S vanishes; assignment {}", assignment_text(x)),
            None => println!("{verdict}: S does not vanish"),
        }
    }
    Ok(if witness.is_some() {
        Outcome::Yes
    } else {
        Outcome::No
    })
}

/// Re-validates the deserialized upstream instances.
fn checked(cert: ReductionCertificate) -> Result<ReductionCertificate, CliError> {
    let clauses = cert.sat.clauses().iter().map(|c| c.to_vec()).collect();
    let sat = SatInstance::new(cert.sat.num_vars(), clauses)?;
    let s = &cert.subset;
    let subset = SubsetSumInstance::new(s.group.clone(), s.elements.clone(), s.target.clone())?;
    WeierstrassModel::from_descriptor(&cert.sumpoly_stage.curve)?;
    Ok(ReductionCertificate {
        sat,
        subset,
        ..cert
    })
}

pub fn verify(a: &VerifyArgs) -> CliResult {
    let inst = read_json(&a.instance)?;
    let wit = read_json(&a.witness)?;
    let bad = |what: &str, e: serde_json::Error| CliError::Usage(format!("{what}: {e}"));
    let cert: ReductionCertificate =
        serde_json::from_value(inst["certificate"].clone()).map_err(|e| bad("certificate", e))?;
    let cert = checked(cert)?;
    let descs: Vec<PointDescriptor> =
        serde_json::from_value(wit["points"].clone()).map_err(|e| bad("witness points", e))?;
    let e = WeierstrassModel::from_descriptor(&cert.sumpoly_stage.curve)?;
    let result = descs
        .iter()
        .map(|d| e.point_from_descriptor(d))
        .collect::<semaev::Result<Vec<_>>>()
        .and_then(|points| pull_back_witness(&cert, &points));
    let (valid, detail) = match &result {
        Ok(x) => (true, assignment_text(x)),
        Err(err) => (false, err.to_string()),
    };
    if a.json {
        print!(
            "{}",
            to_json(&json!({
                "schema": SCHEMA,
                "command": "verify",
                "valid": valid,
                "assignment": result.as_ref().ok(),
                "reason": result.as_ref().err().map(|e| e.to_string()),
            }))
        );
    } else if valid {
        println!("VALID: assignment {detail}");
    } else {
        println!("INVALID: {detail}");
    }
    Ok(if valid { Outcome::Yes } else { Outcome::No })
}
