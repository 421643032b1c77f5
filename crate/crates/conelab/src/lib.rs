//! Cones in `Sym^2(Z^g)` spanned by finitely many integral forms.

mod cone;
mod faces;
mod named;

pub use cone::{Cone, ConeError, ConeJson, MAX_FACE_DIM, MAX_FACE_GENS};
pub use faces::FaceLattice;
pub use named::{named_cone, named_cone_names, star_of_e};
