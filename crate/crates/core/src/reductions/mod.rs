//! 3-SAT to subset sum to summation polynomials, with witness pull-back and brute-force oracles.

mod gadget;
mod sat;
mod sat_to_subset;
mod subsetsum;
mod to_sumpoly;

use serde::{Deserialize, Serialize};

pub use gadget::{Gadget, GadgetAudit};
pub use sat::{parse_dimacs, sat_solve, SatInstance, MAX_SAT_VARS};
pub use sat_to_subset::{
    pull_back_subset, push_forward_assignment, sat_to_subsetsum_modm, sat_to_subsetsum_z,
    ElementRole, SatCertificate,
};
pub use subsetsum::{
    subset_oracle, subset_solve, subset_solve_mitm, Group, GroupElem, SubsetSumInstance,
    MAX_EXHAUSTIVE_ELEMENTS, MAX_MITM_ELEMENTS,
};
pub use to_sumpoly::{
    decide_sumpoly, pull_back_points, pull_back_signs, relation_signs, subset_from_signs,
    subsetsum_to_sumpoly_cusp, subsetsum_to_sumpoly_ec, vector_to_field, Route, SumpolyCertificate,
    SumpolyReduction, DEFAULT_ORDER_BOUND,
};

use crate::curves::Point;
use crate::error::Result;

/// Which subset-sum stage the chain goes through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "lowercase")]
pub enum ChainRoute {
    /// `(Z/3Z)^{s+3w}` and the cusp over `F_{3^{s+3w}}`.
    Cuspidal,
    /// Radix-8 integers and an elliptic curve over a prime field.
    Elliptic { order_bound: u64, seed: u64 },
}

/// Everything needed to map a point relation back to a satisfying assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionCertificate {
    pub sat: SatInstance,
    pub subset: SubsetSumInstance,
    pub sat_stage: SatCertificate,
    pub sumpoly_stage: SumpolyCertificate,
}

#[derive(Clone, Debug)]
pub struct Chain {
    pub reduction: SumpolyReduction,
    pub certificate: ReductionCertificate,
}

/// 3-SAT all the way to a summation-polynomial instance.
pub fn reduce_sat(sat: &SatInstance, route: ChainRoute) -> Result<Chain> {
    let (subset, sat_stage) = match route {
        ChainRoute::Cuspidal => sat_to_subsetsum_modm(sat, 3)?,
        ChainRoute::Elliptic { .. } => sat_to_subsetsum_z(sat, false)?,
    };
    let reduction = match route {
        ChainRoute::Cuspidal => subsetsum_to_sumpoly_cusp(&subset)?,
        ChainRoute::Elliptic { order_bound, seed } => {
            subsetsum_to_sumpoly_ec(&subset, order_bound, seed)?
        }
    };
    Ok(Chain {
        certificate: ReductionCertificate {
            sat: sat.clone(),
            subset,
            sat_stage,
            sumpoly_stage: reduction.certificate.clone(),
        },
        reduction,
    })
}

/// Point relation, then signs, then subset, then assignment; each stage is verified.
pub fn pull_back_witness(cert: &ReductionCertificate, points: &[Point]) -> Result<Vec<bool>> {
    let subset = pull_back_points(&cert.sumpoly_stage, &cert.subset, points)?;
    pull_back_subset(&cert.sat_stage, &cert.sat, &cert.subset, &subset)
}

/// Decides the chain's polynomial instance and pulls any relation back.
pub fn solve_chain(chain: &Chain) -> Result<Option<Vec<bool>>> {
    match decide_sumpoly(&chain.reduction)? {
        None => Ok(None),
        Some(points) => pull_back_witness(&chain.certificate, &points).map(Some),
    }
}
