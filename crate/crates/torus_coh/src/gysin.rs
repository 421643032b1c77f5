use arithgrp::stabilizer;
use conelab::Cone;
use exact_linalg::exterior::{subsets, Wedge};
use exact_linalg::{BigRational, RatMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;
use symquad::sym_dim;

use crate::orbit::{dual_lifts, invariant_basis, orbit_rep_with, OrbitRep};
use crate::TorusError;

/// Outcome of the boundary map from the orbit of `σ` into the orbit of a facet `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GysinReport {
    /// Exterior degree on the source side.
    pub j: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    /// Invariant dimensions for the common stabilizer `Γ = G_σ ∩ G_F`.
    pub gamma_source_dim: usize,
    pub gamma_target_dim: usize,
    pub rank: usize,
}

impl GysinReport {
    pub fn bound(&self) -> usize {
        self.source_dim.min(self.target_dim)
    }
}

fn label(c: &Cone) -> String {
    c.name().map_or_else(|| format!("{:?}", c.sorted_coords()), str::to_string)
}

fn wf_coords(rep: &OrbitRep, x: &[BigInt]) -> Vec<BigInt> {
    rep.perp.iter().map(|b| b.iter().zip(x).map(|(p, q)| p * q).sum()).collect()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    v.into_iter().map(|x| x / &g).collect()
}

/// Rank of `(Λ^j W_σ)^{G_σ} -> (Λ^{j+1} W_F)^{G_F}`, `w ↦ Σ_{G_F} v ∧ s(w)`,
/// where `v` spans the kernel of `W_F -> W_σ` and `s` is any rational section.
pub fn gysin_rank(face: &Cone, sigma: &Cone, j: usize) -> Result<GysinReport, TorusError> {
    gysin_rank_with(face, sigma, j, None)
}

/// As [`gysin_rank`], with the section changed to `s + v ⊗ φ` for a
/// functional `φ` on `W_σ`; the rank must not depend on `φ`.
pub fn gysin_rank_with(
    face: &Cone,
    sigma: &Cone,
    j: usize,
    phi: Option<&[BigRational]>,
) -> Result<GysinReport, TorusError> {
    let nf = || TorusError::NotFacet(label(face), label(sigma));
    if !sigma.contains_generator_set(face) || face.dim() + 1 != sigma.dim() {
        return Err(nf());
    }
    let g_sigma = stabilizer(sigma)?;
    let g_face = stabilizer(face)?;
    let gamma = g_sigma.intersection(&g_face);

    let rep_s = orbit_rep_with(sigma, g_sigma)?;
    let rep_f = orbit_rep_with(face, g_face)?;
    let rep_sg = orbit_rep_with(sigma, gamma.clone())?;
    let rep_fg = orbit_rep_with(face, gamma)?;
    let (ns, nfd) = (rep_s.n(), rep_f.n());
    if j > ns {
        return Err(nf());
    }

    // π: W_F -> W_σ in perp coordinates, b^σ_i = Σ_k π_ik b^F_k.
    let d = sym_dim(face.genus());
    let lifts_f = dual_lifts(&rep_f.perp, d);
    let mut pi = RatMatrix::zeros(ns, nfd);
    for (i, bs) in rep_s.perp.iter().enumerate() {
        for k in 0..nfd {
            let mut s = BigRational::zero();
            for (r, x) in bs.iter().enumerate() {
                if !x.is_zero() {
                    s += BigRational::from_integer(x.clone()) * lifts_f.get(r, k);
                }
            }
            pi.set(i, k, s);
        }
    }
    // Right inverse s = πᵀ (π πᵀ)⁻¹.
    let pt = pi.transpose();
    let section = if ns == 0 {
        RatMatrix::zeros(nfd, 0)
    } else {
        pt.mul(&pi.mul(&pt).inverse().expect("π is onto"))
    };

    let extra = sigma.gens().iter().find(|q| face.position(q).is_none()).ok_or_else(nf)?;
    let v_int = primitive(wf_coords(&rep_f, &extra.coords()));
    let v_rat: Vec<BigRational> = v_int.into_iter().map(BigRational::from_integer).collect();
    let v = Wedge::vector(&v_rat);
    let mut section = section;
    if let Some(phi) = phi {
        for (i, f) in phi.iter().enumerate().take(ns) {
            for (k, vk) in v_rat.iter().enumerate() {
                let x = section.get(k, i) + f * vk;
                section.set(k, i, x);
            }
        }
    }

    let section_images: Vec<Wedge> = (0..ns)
        .map(|i| Wedge::vector(&(0..nfd).map(|k| section.get(k, i).clone()).collect::<Vec<_>>()))
        .collect();
    let reynolds: Vec<Vec<Wedge>> = rep_f
        .actions
        .iter()
        .map(|m| (0..nfd).map(|c| Wedge::vector_i64(&(0..nfd).map(|r| m.get(r, c)).collect::<Vec<_>>())).collect())
        .collect();

    let source = invariant_basis(&rep_s, j);
    let basis = subsets(nfd, j + 1);
    let mut rows = Vec::new();
    for w in &source {
        let lifted = v.wedge(&w.substitute(&section_images));
        let mut avg = Wedge::zero();
        for imgs in &reynolds {
            avg = avg.add(&lifted.substitute(imgs));
        }
        rows.push(avg.to_coords(&basis));
    }
    let rank = if rows.is_empty() { 0 } else { RatMatrix::from_rows(&rows, basis.len()).rank() };

    Ok(GysinReport {
        j,
        source_dim: source.len(),
        target_dim: invariant_basis(&rep_f, j + 1).len(),
        gamma_source_dim: invariant_basis(&rep_sg, j).len(),
        gamma_target_dim: invariant_basis(&rep_fg, j + 1).len(),
        rank,
    })
}
