//! Integral quadratic forms in `g` variables as points of the lattice
//! `Sym^2(Z^g)`, with the unimodular action `A -> U A U^T`.
//!
//! Coordinates are ordered `(m11, .., mgg, m12, m13, .., m(g-1)g)`; the
//! pairing on coordinates is the plain dot product.

use std::fmt;

use exact_linalg::{IntMatrix, LinalgError};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymquadError {
    #[error("zero vector has no rank-one form")]
    ZeroVector,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("expected {expected} coordinates for genus {g}, got {got}")]
    BadCoords { g: usize, expected: usize, got: usize },
    #[error("transformation is not unimodular")]
    NotUnimodular,
    #[error("genus mismatch: {0} vs {1}")]
    Genus(usize, usize),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Number of coordinates of `Sym^2(Z^g)`.
pub fn sym_dim(g: usize) -> usize {
    g * (g + 1) / 2
}

/// The matrix position `(i, j)` with `i <= j` of coordinate `k`.
pub fn coord_position(g: usize, k: usize) -> (usize, usize) {
    if k < g {
        return (k, k);
    }
    let mut k = k - g;
    for i in 0..g {
        let row = g - 1 - i;
        if k < row {
            return (i, i + 1 + k);
        }
        k -= row;
    }
    panic!("coordinate index out of range");
}

/// Inverse of [`coord_position`]; accepts either order of the indices.
pub fn coord_index(g: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    if i == j {
        return i;
    }
    g + (0..i).map(|a| g - 1 - a).sum::<usize>() + (j - i - 1)
}

/// An integral symmetric matrix, optionally remembering the primitive
/// vector `l` when it equals `l l^T`.
#[derive(Clone)]
pub struct QuadForm {
    g: usize,
    mat: IntMatrix,
    vector: Option<Vec<BigInt>>,
}

// Identity is the matrix; the vector is only a label.
impl PartialEq for QuadForm {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g && self.mat == other.mat
    }
}

impl Eq for QuadForm {}

impl std::hash::Hash for QuadForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.g.hash(state);
        self.mat.hash(state);
    }
}

impl PartialOrd for QuadForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.g, self.coords()).cmp(&(other.g, other.coords()))
    }
}

/// Divides by the gcd and makes the first nonzero entry positive.
pub fn normalize_primitive(l: &[BigInt]) -> Result<Vec<BigInt>, SymquadError> {
    let g = l.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if g.is_zero() {
        return Err(SymquadError::ZeroVector);
    }
    let mut v: Vec<BigInt> = l.iter().map(|x| x / &g).collect();
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    Ok(v)
}

impl QuadForm {
    pub fn new(mat: IntMatrix) -> Result<Self, SymquadError> {
        if mat != mat.transpose() {
            return Err(SymquadError::NotSymmetric);
        }
        Ok(QuadForm { g: mat.rows(), mat, vector: None })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, SymquadError> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn from_coords(g: usize, coords: &[BigInt]) -> Result<Self, SymquadError> {
        if coords.len() != sym_dim(g) {
            return Err(SymquadError::BadCoords { g, expected: sym_dim(g), got: coords.len() });
        }
        let mut m = IntMatrix::zeros(g, g);
        for (k, c) in coords.iter().enumerate() {
            let (i, j) = coord_position(g, k);
            m.set(i, j, c.clone());
            m.set(j, i, c.clone());
        }
        Ok(QuadForm { g, mat: m, vector: None })
    }

    pub fn from_coords_i64(g: usize, coords: &[i64]) -> Result<Self, SymquadError> {
        let c: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        Self::from_coords(g, &c)
    }

    pub fn zero(g: usize) -> Self {
        QuadForm { g, mat: IntMatrix::zeros(g, g), vector: None }
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn mat(&self) -> &IntMatrix {
        &self.mat
    }

    /// The primitive vector `l` if this form was built as `l l^T`.
    pub fn vector(&self) -> Option<&[BigInt]> {
        self.vector.as_deref()
    }

    pub fn coords(&self) -> Vec<BigInt> {
        (0..sym_dim(self.g))
            .map(|k| {
                let (i, j) = coord_position(self.g, k);
                self.mat.get(i, j).clone()
            })
            .collect()
    }

    pub fn coords_i64(&self) -> Vec<i64> {
        self.coords().iter().map(|x| x.to_i64().expect("coordinate fits in i64")).collect()
    }

    pub fn rank(&self) -> usize {
        self.mat.to_rat().rank()
    }

    /// Sylvester's criterion on the leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.g).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            self.mat.submatrix(&idx, &idx).det().is_positive()
        })
    }

    /// Positive semidefinite test: every principal minor is nonnegative.
    pub fn is_positive_semidefinite(&self) -> bool {
        (1u32..(1 << self.g)).all(|mask| {
            let idx: Vec<usize> = (0..self.g).filter(|&i| mask >> i & 1 == 1).collect();
            !self.mat.submatrix(&idx, &idx).det().is_negative()
        })
    }

    /// Value of the form on a vector, `v^T A v`.
    pub fn eval(&self, v: &[BigInt]) -> BigInt {
        let av = self.mat.apply(v);
        av.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn add(&self, other: &QuadForm) -> QuadForm {
        QuadForm { g: self.g, mat: &self.mat + &other.mat, vector: None }
    }

    /// The coordinate gcd is one.
    pub fn is_primitive(&self) -> bool {
        self.coords().iter().fold(BigInt::zero(), |a, b| a.gcd(b)).is_one()
    }

    /// Human-readable rendering such as `(x1-x2)^2`.
    pub fn label(&self) -> String {
        match &self.vector {
            Some(l) => format!("({})^2", linear_form(l)),
            None => format!("{:?}", self.coords()),
        }
    }
}

fn linear_form(l: &[BigInt]) -> String {
    let mut s = String::new();
    for (i, c) in l.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
        let coef = if mag.is_one() { String::new() } else { mag.to_string() };
        s.push_str(&format!("{sign}{coef}x{}", i + 1));
    }
    s
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Rank-one form `l l^T` of the primitive, sign-normalized multiple of `l`.
pub fn rank1(l: &[BigInt]) -> Result<QuadForm, SymquadError> {
    let v = normalize_primitive(l)?;
    let g = v.len();
    let mut m = IntMatrix::zeros(g, g);
    for i in 0..g {
        for j in 0..g {
            m.set(i, j, &v[i] * &v[j]);
        }
    }
    Ok(QuadForm { g, mat: m, vector: Some(v) })
}

pub fn rank1_i64(l: &[i64]) -> Result<QuadForm, SymquadError> {
    let v: Vec<BigInt> = l.iter().map(|&x| BigInt::from(x)).collect();
    rank1(&v)
}

/// `U A U^T`. Rank-one forms keep their vector label, transformed by `U`.
pub fn act(u: &IntMatrix, a: &QuadForm) -> Result<QuadForm, SymquadError> {
    if !u.is_square() || u.rows() != a.g {
        return Err(SymquadError::Genus(u.rows(), a.g));
    }
    if !u.is_unimodular() {
        return Err(SymquadError::NotUnimodular);
    }
    Ok(act_unchecked(u, a))
}

/// [`act`] without the determinant check, for callers that already know `U` is unimodular.
pub fn act_unchecked(u: &IntMatrix, a: &QuadForm) -> QuadForm {
    if let Some(l) = &a.vector {
        return rank1(&u.apply(l)).expect("unimodular image of a nonzero vector");
    }
    let m = &(u * &a.mat) * &u.transpose();
    QuadForm { g: a.g, mat: m, vector: None }
}

/// Matrix of `A -> U A U^T` on coordinates: column `k` holds the image of
/// the `k`-th basis element.
pub fn rep_matrix(u: &IntMatrix) -> Result<IntMatrix, SymquadError> {
    if !u.is_unimodular() {
        return Err(SymquadError::NotUnimodular);
    }
    Ok(rep_matrix_unchecked(u))
}

pub fn rep_matrix_unchecked(u: &IntMatrix) -> IntMatrix {
    let g = u.rows();
    let d = sym_dim(g);
    let mut r = IntMatrix::zeros(d, d);
    for k in 0..d {
        let (a, b) = coord_position(g, k);
        // Basis element: E_ab + E_ba off the diagonal, E_aa on it.
        // (U B U^T)_{ij} = u_ia u_jb + u_ib u_ja (off diagonal) or u_ia u_ja.
        for t in 0..d {
            let (i, j) = coord_position(g, t);
            let v = if a == b {
                u.get(i, a) * u.get(j, a)
            } else {
                u.get(i, a) * u.get(j, b) + u.get(i, b) * u.get(j, a)
            };
            r.set(t, k, v);
        }
    }
    r
}

/// Standard dot product of coordinate vectors.
pub fn pairing(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The 12 rank-one generators of the second perfect cone in genus 4.
pub fn second_perfect_vectors() -> Vec<[i64; 4]> {
    vec![
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 0, -1, 0],
        [1, 0, 0, -1],
        [0, 1, -1, 0],
        [0, 1, 0, -1],
        [0, 0, 1, -1],
        [1, 1, -1, 0],
        [1, 1, 0, -1],
        [1, 1, -1, -1],
    ]
}

/// The central ray `e`: one third of the sum of the generators of the
/// second perfect cone.
pub fn central_e() -> QuadForm {
    let mut sum = QuadForm::zero(4);
    for l in second_perfect_vectors() {
        sum = sum.add(&rank1_i64(&l).expect("nonzero"));
    }
    let three = BigInt::from(3);
    let coords: Vec<BigInt> = sum
        .coords()
        .iter()
        .map(|c| {
            assert!((c % &three).is_zero(), "generator sum divisible by 3");
            c / &three
        })
        .collect();
    QuadForm::from_coords(4, &coords).expect("valid coordinates")
}

/// JSON shape: either coordinates or a vector for a rank-one form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum QuadFormJson {
    Coords { g: usize, coords: Vec<i64> },
    Vector { vector: Vec<i64> },
}

impl QuadFormJson {
    pub fn to_form(&self) -> Result<QuadForm, SymquadError> {
        match self {
            QuadFormJson::Coords { g, coords } => QuadForm::from_coords_i64(*g, coords),
            QuadFormJson::Vector { vector } => rank1_i64(vector),
        }
    }
}

impl From<&QuadForm> for QuadFormJson {
    fn from(q: &QuadForm) -> Self {
        match &q.vector {
            Some(v) => QuadFormJson::Vector {
                vector: v.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect(),
            },
            None => QuadFormJson::Coords { g: q.g, coords: q.coords_i64() },
        }
    }
}
