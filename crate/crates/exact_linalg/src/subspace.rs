use num_rational::BigRational;
use num_traits::Zero;

use crate::{rank_and_kernel, RatMatrix};

/// A subspace of `Q^n`, stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &RatMatrix::identity(ambient).row_vecs())
    }

    pub fn span(ambient: usize, vectors: &[Vec<BigRational>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let (r, pivots) = RatMatrix::from_rows(vectors, ambient).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside.
    pub fn coords(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(v.len(), self.ambient);
        let coeffs: Vec<BigRational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= c * y;
                }
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.dim() == 0 || other.dim() == 0 {
            return Self::zero(self.ambient);
        }
        // Solve sum a_i s_i = sum b_j o_j.
        let k = self.dim() + other.dim();
        let mut m = RatMatrix::zeros(self.ambient, k);
        for (j, b) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, j, b[i].clone());
            }
        }
        for (j, b) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m.set(i, self.dim() + j, -b[i].clone());
            }
        }
        let (_, ker) = rank_and_kernel(&m);
        let vecs: Vec<Vec<BigRational>> = ker
            .iter()
            .map(|c| {
                let mut v = vec![BigRational::zero(); self.ambient];
                for (a, b) in c.iter().zip(&self.basis) {
                    if a.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(b) {
                        *x += a * y;
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vecs)
    }
}
