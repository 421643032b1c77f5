//! Cohomology of torus orbit quotients `T_σ / G_σ`.
//!
//! `H^1` of the orbit torus is the character lattice `σ^⊥ ⊗ Q`; all classes
//! are Tate, so every answer is a polynomial in `L = [Q(-1)]`.

mod gysin;
mod orbit;
mod tables;
mod tate;

pub use gysin::{gysin_rank, gysin_rank_with, GysinReport};
pub use orbit::{hc_profile, invariant_basis, invariant_dims, molien_ec, molien_series_dims, orbit_rep, orbit_rep_with, verified_dims, OrbitRep};
pub use tables::{e_labels, ELabel, has_coloop, perfect_label, RefRow, E_ROWS, E_TOTAL, PERFECT_ROWS};
pub use tate::{duality, Coeff, Symbol, TatePoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error(transparent)]
    Group(#[from] arithgrp::ArithError),
    #[error("{0} is not a facet of {1}")]
    NotFacet(String, String),
    #[error("group does not stabilize {0}")]
    NotStabilizing(String),
    #[error("invariant dimensions disagree: {0}")]
    InvariantMismatch(String),
}
