use std::collections::BTreeMap;

use semaev::gbprofiler::{run_instance, to_csv, write_experiment, ExperimentRow, ProfilerConfig};
use serde_json::json;

use crate::{log, to_json, CliError, CliResult, FfdArgs, Outcome, SCHEMA};

struct Summary {
    n: usize,
    trials: usize,
    ffd2: usize,
    ffd: BTreeMap<String, usize>,
    solving: BTreeMap<String, usize>,
}

fn summarize(ns: &[usize], rows: &[ExperimentRow]) -> Vec<Summary> {
    ns.iter()
        .map(|&n| {
            let mine: Vec<&ExperimentRow> = rows.iter().filter(|r| r.n == n).collect();
            let mut ffd = BTreeMap::new();
            let mut solving = BTreeMap::new();
            for r in &mine {
                *ffd.entry(r.profile.ffd_label()).or_insert(0) += 1;
                *solving.entry(r.profile.solving_degree_label()).or_insert(0) += 1;
            }
            Summary {
                n,
                trials: mine.len(),
                ffd2: mine
                    .iter()
                    .filter(|r| r.profile.first_fall_degree == Some(2))
                    .count(),
                ffd,
                solving,
            }
        })
        .collect()
}

fn rate(k: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        k as f64 / n as f64
    }
}

pub fn run(a: &FfdArgs, verbose: u8) -> CliResult {
    if a.dmax == 0 || a.mem == 0 {
        return Err(CliError::Usage("--dmax and --mem must be positive".into()));
    }
    let mut ns = a.n_list.clone();
    ns.sort_unstable();
    ns.dedup();
    let config = ProfilerConfig {
        d_max: a.dmax,
        memory_cap_bytes: a.mem,
        ..ProfilerConfig::default()
    };
    let mut rows = Vec::new();
    for &n in &ns {
        for seed in a.seed..a.seed + a.trials {
            let row = run_instance(n, seed, &config, a.timing)?;
            log(verbose, &format!("n={n} seed={seed}: {}", row.csv_line()));
            rows.push(row);
        }
    }
    let summary = summarize(&ns, &rows);
    let total: usize = summary.iter().map(|s| s.trials).sum();
    let pooled: usize = summary.iter().map(|s| s.ffd2).sum();
    if let Some(dir) = &a.out {
        write_experiment(&rows, dir)?;
    }
    if a.json {
        let per_n: Vec<_> = summary
            .iter()
            .map(|s| {
                json!({
                    "n": s.n,
                    "trials": s.trials,
                    "ffd2_rate": rate(s.ffd2, s.trials),
                    "ffd": s.ffd,
                    "solving_degree": s.solving,
                })
            })
            .collect();
        let mut out = json!({
            "schema": SCHEMA,
            "command": "ffd run",
            "trials": total,
            "ffd2_rate": rate(pooled, total),
            "per_n": per_n,
        });
        if a.out.is_none() {
            out["csv"] = json!(to_csv(&rows));
        }
        print!("{}", to_json(&out));
        return Ok(Outcome::Yes);
    }
    let mut text = String::new();
    for s in &summary {
        let dist: Vec<String> = s.solving.iter().map(|(d, c)| format!("{d}:{c}")).collect();
        text.push_str(&format!(
            "n={} trials={} ffd2_rate={:.3} solving_degree={{{}}}\n",
            s.n,
            s.trials,
            rate(s.ffd2, s.trials),
            dist.join(", ")
        ));
    }
    text.push_str(&format!(
        "pooled ffd2_rate={:.3} over {total} trials\n",
        rate(pooled, total)
    ));
    if a.out.is_some() {
        print!("{text}");
    } else {
        print!("{}", to_csv(&rows));
        eprint!("{text}");
    }
    Ok(Outcome::Yes)
}
