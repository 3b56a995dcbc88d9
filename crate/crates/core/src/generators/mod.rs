//! Exact constructions of the point families the counters operate on:
//! Horton sets and their perturbed-grid variant, cup-cap free sets, tangent
//! cluster constructions, explicit double chains, the pentagon witness and
//! seeded uniform samples.
//!
//! Every generator is a pure function of its parameters and seed; equal
//! inputs produce bit-identical point sets.

mod cluster;
mod families;
mod horton;

pub use cluster::{gen_cluster, gen_lattice_convex, ClusterConstruction};
pub use families::{
    binomial, es_lower_size, gen_double_chain, gen_es_lower, gen_pentagon_center_witness,
    gen_random_uniform, EsLowerSet, Shape,
};
pub use horton::{
    check_layer_separation, gen_horton, gen_squared_horton, is_cap, is_cup, HortonSet, LayerNode,
    SquaredHorton,
};

/// Errors shared by the generators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parameters are infeasible: {0}")]
    Infeasible(String),
    #[error("construction degenerated: {0}")]
    Degenerate(String),
    #[error("retry budget exhausted while building {0}")]
    RetriesExhausted(String),
}
