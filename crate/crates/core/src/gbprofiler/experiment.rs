use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::instances::build_remark_w11_instance;
use super::profile::{profile, DegreeProfile, ProfilerConfig};
use crate::error::{Error, Result};

pub const SCHEMA: &str = "semaev/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub ns: Vec<usize>,
    pub seeds: Vec<u64>,
    pub profiler: ProfilerConfig,
    /// Fill the `wall_time_ms` column. Off by default so reruns are byte-identical.
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub seed: u64,
    pub profile: DegreeProfile,
    pub provenance: serde_json::Value,
    pub wall_time_ms: Option<u128>,
}

impl ExperimentRow {
    pub fn csv_line(&self) -> String {
        let (r, c) = self.profile.matrix_max_dims();
        format!(
            "{},{},{},{},{}x{},{}",
            self.n,
            self.seed,
            self.profile.ffd_label(),
            self.profile.solving_degree_label(),
            r,
            c,
            self.wall_time_ms.map(|t| t.to_string()).unwrap_or_default()
        )
    }

    pub fn sidecar(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": SCHEMA,
            "n": self.n,
            "seed": self.seed,
            "provenance": self.provenance,
            "profile": self.profile,
        })
    }
}

pub const CSV_HEADER: &str = "n,seed,ffd,solving_degree,matrix_max_dims,wall_time_ms";

pub fn run_instance(
    n: usize,
    seed: u64,
    config: &ProfilerConfig,
    timing: bool,
) -> Result<ExperimentRow> {
    let start = Instant::now();
    let inst = build_remark_w11_instance(n, seed)?;
    let profile = profile(&inst.system, config)?;
    let elapsed = start.elapsed().as_millis();
    Ok(ExperimentRow {
        n,
        seed,
        profile,
        provenance: serde_json::to_value(&inst.system.provenance).expect("serializable"),
        wall_time_ms: timing.then_some(elapsed),
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    let mut rows = Vec::new();
    for &n in &config.ns {
        for &seed in &config.seeds {
            rows.push(run_instance(n, seed, &config.profiler, config.timing)?);
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[ExperimentRow]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{}", r.csv_line());
    }
    s
}

/// Writes `results.csv` and one `instance_n{n}_s{seed}.json` per row.
pub fn write_experiment(rows: &[ExperimentRow], dir: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join("results.csv"), to_csv(rows)).map_err(io)?;
    for r in rows {
        let text = serde_json::to_string_pretty(&r.sidecar()).expect("serializable");
        fs::write(
            dir.join(format!("instance_n{}_s{}.json", r.n, r.seed)),
            text + "\n",
        )
        .map_err(io)?;
    }
    Ok(())
}
