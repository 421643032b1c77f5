//! Finite groups of unimodular matrices attached to cones of quadratic
//! forms: isometry groups, stabilizers, equivalences and orbit censuses.

mod census;
mod group;
mod isometry;
mod small;

pub use census::{classify, e_census, local_orbits, perfect_census, Census, LocalOrbit, Orbit};
pub use group::{FiniteMatrixGroup, GroupJson};
pub use isometry::{
    are_equivalent, isometries, orth_group, stabilizer, stabilizer_transposed,
    generator_permutation, ArithError,
};
pub use small::SmallMat;
