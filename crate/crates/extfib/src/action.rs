use arithgrp::{generator_permutation, SmallMat};
use conelab::Cone;
use exact_linalg::exterior::Wedge;
use exact_linalg::{BigRational, IntMatrix, RatMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use symquad::{pairing, rep_matrix_unchecked, sym_dim};

use crate::{BigradedAlg, ExtError};

/// An automorphism of `H^1(base) ⊕ H^1(fibre)`. Column `j` of each matrix
/// holds the image of the `j`-th generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibAction {
    pub base_matrix: IntMatrix,
    pub fiber_matrix: IntMatrix,
}

impl FibAction {
    pub fn new(base_matrix: IntMatrix, fiber_matrix: IntMatrix) -> Result<Self, ExtError> {
        if !base_matrix.is_unimodular() || !fiber_matrix.is_unimodular() {
            return Err(ExtError::NotUnimodular);
        }
        Ok(FibAction { base_matrix, fiber_matrix })
    }

    pub fn identity(alg: &BigradedAlg) -> Self {
        FibAction {
            base_matrix: IntMatrix::identity(alg.base_len()),
            fiber_matrix: IntMatrix::identity(alg.fiber_len()),
        }
    }

    /// Images of all generators, base first.
    pub fn images(&self) -> Vec<Wedge> {
        let col = |m: &IntMatrix, j: usize, off: usize| {
            let mut v = vec![BigRational::zero(); off + m.rows()];
            for i in 0..m.rows() {
                v[off + i] = BigRational::from_integer(m.get(i, j).clone());
            }
            Wedge::vector(&v)
        };
        let nb = self.base_matrix.cols();
        (0..nb)
            .map(|j| col(&self.base_matrix, j, 0))
            .chain((0..self.fiber_matrix.cols()).map(|j| col(&self.fiber_matrix, j, nb)))
            .collect()
    }

    pub fn apply(&self, w: &Wedge) -> Wedge {
        w.substitute(&self.images())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FibAction) -> FibAction {
        FibAction {
            base_matrix: &self.base_matrix * &other.base_matrix,
            fiber_matrix: &self.fiber_matrix * &other.fiber_matrix,
        }
    }

    /// The dual action on the dual bases, `M^{-T}` on both factors.
    pub fn contragredient(&self) -> FibAction {
        let inv = |m: &IntMatrix| m.inverse_unimodular().expect("unimodular").transpose();
        FibAction { base_matrix: inv(&self.base_matrix), fiber_matrix: inv(&self.fiber_matrix) }
    }

    /// Matrix of the action on the span of `basis`, which it must preserve.
    pub fn matrix_on(&self, basis: &[u32]) -> RatMatrix {
        let imgs = self.images();
        let mut m = RatMatrix::zeros(basis.len(), basis.len());
        for (j, &mask) in basis.iter().enumerate() {
            let w = Wedge::monomial(mask, BigRational::from_integer(1.into())).substitute(&imgs);
            for (i, c) in w.to_coords(basis).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }
}

/// The matrix `U` with `act(U, ·)` equal to the printed coordinate
/// substitution `x ↦ P x` (row `i` of `P` gives the new `x_i`).
pub fn substitution(p: &[[i64; 3]]) -> IntMatrix {
    IntMatrix::from_rows(p).transpose()
}

/// Action of `U ∈ GL(3,Z)` stabilizing `σ` on the bundle over `E×E×E`
/// whose fibre has the given characters (coordinate functionals in `σ^⊥`).
///
/// On the base `f_{2i-1+ε} ↦ Σ_k U_ik f_{2k-1+ε}`, the behaviour of the
/// coordinates `τ_{i,4}` under the block matrix `diag(U, 1)`. On the fibre a
/// character `χ` goes to `χ ∘ act(U)`, written in the character basis.
pub fn action_from_glz(u: &IntMatrix, sigma: &Cone, chars: &[Vec<i64>]) -> Result<FibAction, ExtError> {
    let g = sigma.genus();
    if u.rows() != g || !u.is_unimodular() {
        return Err(ExtError::NotUnimodular);
    }
    let small = SmallMat::from_int(u).ok_or(ExtError::NotUnimodular)?;
    if generator_permutation(&small, sigma).is_none() {
        return Err(ExtError::NotStabilizing(sigma.name().unwrap_or("cone").to_string()));
    }
    let mut base = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        for k in 0..g {
            for e in 0..2 {
                base.set(2 * k + e, 2 * i + e, u.get(i, k).clone());
            }
        }
    }
    let fiber = fiber_matrix(u, sigma, chars)?;
    FibAction::new(base, fiber)
}

/// Checks that `chars` is a basis of `σ^⊥` and returns the matrix of
/// `χ ↦ χ ∘ act(U)` in it.
pub(crate) fn fiber_matrix(u: &IntMatrix, sigma: &Cone, chars: &[Vec<i64>]) -> Result<IntMatrix, ExtError> {
    let d = sym_dim(sigma.genus());
    let big: Vec<Vec<BigInt>> = chars.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
    check_characters(sigma, &big, d)?;
    let n = chars.len();
    let r = rep_matrix_unchecked(u).transpose();
    let mut basis = IntMatrix::zeros(d, n);
    for (j, c) in big.iter().enumerate() {
        for i in 0..d {
            basis.set(i, j, c[i].clone());
        }
    }
    let basis_q = basis.to_rat();
    let mut out = IntMatrix::zeros(n, n);
    for (j, c) in big.iter().enumerate() {
        let img: Vec<BigRational> = r.apply(c).into_iter().map(BigRational::from_integer).collect();
        let x = basis_q.solve(&img).ok_or(ExtError::CharacterOutsideSpan)?;
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_integer() {
                return Err(ExtError::CharacterOutsideSpan);
            }
            out.set(i, j, xi.to_integer());
        }
    }
    Ok(out)
}

fn check_characters(sigma: &Cone, chars: &[Vec<BigInt>], d: usize) -> Result<(), ExtError> {
    for c in chars {
        if c.len() != d || sigma.gens().iter().any(|q| !pairing(&q.coords(), c).is_zero()) {
            return Err(ExtError::CharacterOutsideSpan);
        }
    }
    let perp = sigma.perp_lattice();
    if perp.len() != chars.len() {
        return Err(ExtError::CharacterOutsideSpan);
    }
    // The characters must generate the saturated lattice, not a sublattice.
    let m = IntMatrix::from_big_rows(chars, d);
    let p = IntMatrix::from_big_rows(&perp, d);
    let gram = |a: &IntMatrix| (a * &a.transpose()).det();
    if perp.is_empty() || gram(&m) == gram(&p) {
        Ok(())
    } else {
        Err(ExtError::CharacterOutsideSpan)
    }
}
