//! Macaulay-matrix elimination over GF(2) instrumented by degree, and the
//! descent systems it is run on.

mod boolpoly;
mod experiment;
mod instances;
mod matrix;
mod profile;

pub use boolpoly::{
    grevlex_cmp, monomial_degree, BoolPoly, BooleanSystem, Monomial, MAX_BOOL_VARS,
};
pub use experiment::{
    run_experiment, run_instance, to_csv, write_experiment, ExperimentConfig, ExperimentRow,
    CSV_HEADER, SCHEMA,
};
pub use instances::{
    build_remark_w11_instance, build_split_system, chain_consistent, SplitSystem, SubspaceInstance,
};
pub use matrix::{matrix_bytes, BitMatrix, Echelon};
pub use profile::{
    affine_hull_dim, linear_part_points, macaulay_step, monomial_count, profile, step_bytes,
    DegreeProfile, DegreeRecord, MacaulayStep, MonomialIndex, ProfilerConfig,
};
