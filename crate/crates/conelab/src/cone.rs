use std::collections::BTreeSet;
use std::fmt;

use exact_linalg::{elementary_divisors, integral_kernel, rank_and_kernel, IntMatrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use symquad::{sym_dim, QuadForm, QuadFormJson, SymquadError};

use crate::faces::{facet_normals, FaceLattice};

/// Desk-scale guard for face enumeration.
pub const MAX_FACE_DIM: usize = 10;
pub const MAX_FACE_GENS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConeError {
    #[error("generator {0} is not primitive in the lattice")]
    NotPrimitive(String),
    #[error("generator {0} is not extremal")]
    NotExtremal(String),
    #[error("generator {0} is not positive semidefinite")]
    NotPsd(String),
    #[error("generators do not all have genus {0}")]
    Genus(usize),
    #[error("cone too large for face enumeration: dim {dim}, {gens} generators")]
    TooLarge { dim: usize, gens: usize },
    #[error("unknown cone name {0}")]
    UnknownName(String),
    #[error(transparent)]
    Form(#[from] SymquadError),
}

/// A pointed polyhedral cone given by its extremal ray generators.
#[derive(Clone)]
pub struct Cone {
    g: usize,
    gens: Vec<QuadForm>,
    name: Option<String>,
}

impl Cone {
    /// Builds a cone, deduplicating generators and rejecting non-primitive or
    /// redundant ones.
    pub fn new(g: usize, gens: Vec<QuadForm>, name: Option<String>) -> Result<Self, ConeError> {
        let mut seen = BTreeSet::new();
        let mut uniq = Vec::new();
        for q in gens {
            if q.genus() != g {
                return Err(ConeError::Genus(g));
            }
            if !q.is_primitive() {
                return Err(ConeError::NotPrimitive(q.label()));
            }
            if seen.insert(q.coords()) {
                uniq.push(q);
            }
        }
        let cone = Cone { g, gens: uniq, name };
        if let Some(bad) = cone.redundant_generator() {
            return Err(ConeError::NotExtremal(cone.gens[bad].label()));
        }
        Ok(cone)
    }

    /// Builds a cone from generators already known to be extremal (faces of a checked cone).
    pub(crate) fn from_trusted(g: usize, gens: Vec<QuadForm>, name: Option<String>) -> Self {
        Cone { g, gens, name }
    }

    pub fn from_vectors(g: usize, vectors: &[Vec<i64>], name: &str) -> Result<Self, ConeError> {
        let gens = vectors
            .iter()
            .map(|v| symquad::rank1_i64(v))
            .collect::<Result<Vec<_>, _>>()?;
        Cone::new(g, gens, Some(name.to_string()))
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn gens(&self) -> &[QuadForm] {
        &self.gens
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// Generators as rows of a coordinate matrix.
    pub fn coord_matrix(&self) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = self.gens.iter().map(QuadForm::coords).collect();
        IntMatrix::from_big_rows(&rows, sym_dim(self.g))
    }

    pub fn dim(&self) -> usize {
        if self.gens.is_empty() {
            return 0;
        }
        self.coord_matrix().to_rat().rank()
    }

    /// Generators extend to a lattice basis.
    pub fn is_basic(&self) -> bool {
        if self.gens.is_empty() {
            return true;
        }
        let d = elementary_divisors(&self.coord_matrix());
        d.len() == self.gens.len() && d.iter().all(One::is_one)
    }

    pub fn generator_sum(&self) -> QuadForm {
        self.gens.iter().fold(QuadForm::zero(self.g), |a, b| a.add(b))
    }

    /// Rank of a generic form in the relative interior.
    pub fn interior_rank(&self) -> Result<usize, ConeError> {
        for q in &self.gens {
            if q.vector().is_none() && !q.is_positive_semidefinite() {
                return Err(ConeError::NotPsd(q.label()));
            }
        }
        Ok(self.generator_sum().rank())
    }

    /// Saturated basis of the forms in the dual lattice vanishing on the cone.
    pub fn perp_lattice(&self) -> Vec<Vec<BigInt>> {
        if self.gens.is_empty() {
            return (0..sym_dim(self.g))
                .map(|i| {
                    let mut v = vec![BigInt::zero(); sym_dim(self.g)];
                    v[i] = BigInt::one();
                    v
                })
                .collect();
        }
        integral_kernel(&self.coord_matrix())
    }

    pub fn faces(&self) -> Result<FaceLattice, ConeError> {
        let dim = self.dim();
        if dim > MAX_FACE_DIM || self.gens.len() > MAX_FACE_GENS {
            return Err(ConeError::TooLarge { dim, gens: self.gens.len() });
        }
        Ok(FaceLattice::compute(self))
    }

    /// Subcone spanned by the generators selected by `mask`.
    pub fn subcone(&self, mask: u32) -> Cone {
        let gens = (0..self.gens.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.gens[i].clone())
            .collect();
        Cone::from_trusted(self.g, gens, None)
    }

    /// Index of a generator in this cone's list.
    pub fn position(&self, q: &QuadForm) -> Option<usize> {
        self.gens.iter().position(|x| x == q)
    }

    pub fn contains_generator_set(&self, other: &Cone) -> bool {
        other.gens.iter().all(|q| self.position(q).is_some())
    }

    /// Sorted generator coordinate lists, a canonical form of the generator set.
    pub fn sorted_coords(&self) -> Vec<Vec<BigInt>> {
        let mut v: Vec<Vec<BigInt>> = self.gens.iter().map(QuadForm::coords).collect();
        v.sort();
        v
    }

    /// First generator that lies in the cone of the others.
    fn redundant_generator(&self) -> Option<usize> {
        if self.gens.len() < 2 {
            return None;
        }
        (0..self.gens.len()).find(|&i| {
            let others: Vec<QuadForm> =
                self.gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| q.clone()).collect();
            cone_contains(self.g, &others, &self.gens[i])
        })
    }
}

/// Membership of `x` in the cone spanned by `gens`, decided by facet inequalities.
pub(crate) fn cone_contains(g: usize, gens: &[QuadForm], x: &QuadForm) -> bool {
    let c = Cone::from_trusted(g, gens.to_vec(), None);
    let xc: Vec<BigInt> = x.coords();
    // x must lie in the linear span.
    let m = c.coord_matrix();
    let (_, perp) = rank_and_kernel(&m.to_rat());
    let xr: Vec<BigRational> = xc.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    for p in &perp {
        let s: BigRational = p.iter().zip(&xr).map(|(a, b)| a * b).sum();
        if !s.is_zero() {
            return false;
        }
    }
    if c.gens.is_empty() {
        return xc.iter().all(Zero::is_zero);
    }
    let k = c.dim();
    if k == 1 {
        // Positive multiple of the single ray direction.
        let r = c.gens[0].coords();
        let i = r.iter().position(|v| !v.is_zero()).expect("nonzero generator");
        return (&xc[i] * &r[i]).is_positive() || xc.iter().all(Zero::is_zero);
    }
    facet_normals(&c).iter().all(|(normal, _)| {
        let s: BigInt = normal.iter().zip(&xc).map(|(a, b)| a * b).sum();
        !s.is_negative()
    })
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(QuadForm::label).collect();
        write!(f, "{}<{}>", self.name.as_deref().unwrap_or(""), gens.join(", "))
    }
}

/// JSON shape `{"g":4,"name":"K33","generators":[...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeJson {
    pub g: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub generators: Vec<QuadFormJson>,
}

impl ConeJson {
    pub fn to_cone(&self) -> Result<Cone, ConeError> {
        let gens = self.generators.iter().map(QuadFormJson::to_form).collect::<Result<Vec<_>, _>>()?;
        Cone::new(self.g, gens, self.name.clone())
    }
}

impl From<&Cone> for ConeJson {
    fn from(c: &Cone) -> Self {
        ConeJson {
            g: c.g,
            name: c.name.clone(),
            generators: c.gens.iter().map(QuadFormJson::from).collect(),
        }
    }
}
