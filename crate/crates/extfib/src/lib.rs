//! Exterior-algebra models for torus bundles over products of elliptic
//! curves and over `S × S`: group actions on `H^1`, bigraded invariants
//! and the `d_2` differentials given by Chern classes.

mod action;
mod alg;
mod beta3;
mod chern;
mod invariants;
mod model;
pub mod rank2;
mod spdim;

pub use action::{action_from_glz, substitution, FibAction};
pub use alg::BigradedAlg;
pub use beta3::{beta3_gysin_rank, g_basis, Beta3Gysin};
pub use chern::{
    character_class, chern_d2, chern_substitution, d2_table, elliptic_pullback, poincare_class, D2Entry, D2Table,
};
pub use invariants::{in_span, invariant_table, invariants_bigraded, invariants_in, span_rank, InvariantTable};
pub use model::{fibre_model, fibre_model_names, model_with_group, reynolds, FibreModel};
pub use rank2::{rank2_suite, Rank2Report};
pub use spdim::sp_dim;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtError {
    #[error(transparent)]
    Group(#[from] arithgrp::ArithError),
    #[error("matrix is not unimodular")]
    NotUnimodular,
    #[error("transformation does not stabilize {0}")]
    NotStabilizing(String),
    #[error("characters do not form a basis of the perpendicular lattice")]
    CharacterOutsideSpan,
    #[error("unknown cone {0}")]
    UnknownCone(String),
    #[error("cone is not a facet")]
    NotFacet,
    #[error("bad partition {0}")]
    Partition(String),
    #[error("cannot parse {0}")]
    Parse(String),
}
