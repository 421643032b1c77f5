use arithgrp::{stabilizer, FiniteMatrixGroup, SmallMat};
use conelab::Cone;
use exact_linalg::exterior::{exterior_power, fixed_space, subsets, Wedge};
use exact_linalg::{charpoly_i64, BigRational, RatMatrix};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use symquad::{rep_matrix_unchecked, sym_dim};

use crate::{Coeff, TatePoly, TorusError};


/// The stabilizer of a cone acting on the cocharacter space `N / span σ`
/// of its orbit torus, in coordinates dual to a basis of `σ^⊥`.
#[derive(Clone, Debug)]
pub struct OrbitRep {
    pub cone: Cone,
    pub group: FiniteMatrixGroup,
    /// Saturated basis `b_1..b_n` of `σ^⊥`.
    pub perp: Vec<Vec<BigInt>>,
    /// `ρ(U)` for every element of `group`, in the same order.
    pub actions: Vec<SmallMat>,
    /// `ρ` of the group generators.
    pub generator_actions: Vec<SmallMat>,
}

impl OrbitRep {
    pub fn n(&self) -> usize {
        self.perp.len()
    }
}

/// Rational lifts `a_j` with `<b_i, a_j> = δ_ij`, as columns of a `d x n` matrix.
pub(crate) fn dual_lifts(perp: &[Vec<BigInt>], d: usize) -> RatMatrix {
    let n = perp.len();
    let mut b = RatMatrix::zeros(d, n);
    for (j, v) in perp.iter().enumerate() {
        for i in 0..d {
            b.set(i, j, BigRational::from_integer(v[i].clone()));
        }
    }
    if n == 0 {
        return b;
    }
    let gram = b.transpose().mul(&b).inverse().expect("independent basis");
    b.mul(&gram)
}

/// `ρ(U)_{ij} = <b_i, R a_j>` with `R` the action of `U` on coordinates.
pub(crate) fn quotient_action(u: &SmallMat, perp: &[Vec<BigInt>], lifts: &RatMatrix) -> Option<SmallMat> {
    let n = perp.len();
    let r = rep_matrix_unchecked(&u.to_int()).to_rat();
    let ra = r.mul(lifts);
    let mut a = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = BigRational::zero();
            for (k, bik) in perp[i].iter().enumerate() {
                if !bik.is_zero() {
                    s += BigRational::from_integer(bik.clone()) * ra.get(k, j);
                }
            }
            if !s.is_integer() {
                return None;
            }
            a[i * n + j] = s.to_integer().to_i64()?;
        }
    }
    Some(SmallMat { n, a })
}

pub fn orbit_rep(c: &Cone) -> Result<OrbitRep, TorusError> {
    let group = stabilizer(c)?;
    orbit_rep_with(c, group)
}

/// Orbit representation for a given subgroup of the stabilizer.
pub fn orbit_rep_with(c: &Cone, group: FiniteMatrixGroup) -> Result<OrbitRep, TorusError> {
    let perp = c.perp_lattice();
    let lifts = dual_lifts(&perp, sym_dim(c.genus()));
    let name = format!("{c:?}");
    let act = |u: &SmallMat| {
        if arithgrp::generator_permutation(u, c).is_none() {
            return Err(TorusError::NotStabilizing(name.clone()));
        }
        quotient_action(u, &perp, &lifts).ok_or_else(|| TorusError::NotStabilizing(name.clone()))
    };
    let actions = group.small_elements().iter().map(act).collect::<Result<Vec<_>, _>>()?;
    let generator_actions = group.small_generators().iter().map(act).collect::<Result<Vec<_>, _>>()?;
    for m in &actions {
        let det = m.to_int().det();
        assert!(det == BigInt::from(1) || det == BigInt::from(-1), "orbit action is unimodular");
    }
    // Homomorphism check on generator pairs.
    let gens = group.small_generators();
    for (x, rx) in gens.iter().zip(&generator_actions) {
        for (y, ry) in gens.iter().zip(&generator_actions) {
            let xy = x.mul(y);
            let idx = group.small_elements().binary_search(&xy).expect("closed group");
            assert_eq!(actions[idx], rx.mul(ry), "orbit action is a homomorphism");
        }
    }
    Ok(OrbitRep { cone: c.clone(), group, perp, actions, generator_actions })
}

fn to_rat(m: &SmallMat) -> RatMatrix {
    let rows: Vec<Vec<i64>> = m.a.chunks(m.n.max(1)).map(|r| r.to_vec()).collect();
    if m.n == 0 {
        return RatMatrix::zeros(0, 0);
    }
    RatMatrix::from_i64_rows(&rows)
}

fn average_charpolys(rep: &OrbitRep) -> Vec<BigRational> {
    let n = rep.n();
    let mut sums = vec![BigInt::zero(); n + 1];
    for m in &rep.actions {
        let c = charpoly_i64(n, &m.a)
            .map(|v| v.into_iter().map(BigInt::from).collect::<Vec<_>>())
            .unwrap_or_else(|| exact_linalg::charpoly(&m.to_int()));
        for (s, x) in sums.iter_mut().zip(c) {
            *s += x;
        }
    }
    let order = BigInt::from(rep.actions.len());
    sums.into_iter().map(|s| BigRational::new(s, order.clone())).collect()
}

/// `(1/|G|) Σ det(L·Id − ρ(U))`.
pub fn molien_ec(rep: &OrbitRep) -> TatePoly {
    let mut p = TatePoly::zero();
    for (k, c) in average_charpolys(rep).into_iter().enumerate() {
        assert!(c.is_integer(), "Molien average is integral");
        let v = c.to_integer().to_i64().expect("small coefficient");
        p.add_term(k as i32, Coeff::int(v));
    }
    p
}

/// `dim (Λ^j)^G` read off the Molien series `(1/|G|) Σ det(Id + tρ(U))`.
pub fn molien_series_dims(rep: &OrbitRep) -> Vec<usize> {
    let n = rep.n();
    let c = average_charpolys(rep);
    (0..=n)
        .map(|j| {
            // det(Id + tρ) has t^j coefficient (−1)^j c_{n−j}.
            let x = if j % 2 == 0 { c[n - j].clone() } else { -c[n - j].clone() };
            assert!(x.is_integer(), "invariant dimension is integral");
            x.to_integer().to_usize().expect("nonnegative dimension")
        })
        .collect()
}

/// Explicit basis of `(Λ^j W)^G` on the monomial basis `subsets(n, j)`.
pub fn invariant_basis(rep: &OrbitRep, j: usize) -> Vec<Wedge> {
    let n = rep.n();
    let basis = subsets(n, j);
    let mats: Vec<RatMatrix> = rep.generator_actions.iter().map(|m| exterior_power(&to_rat(m), j)).collect();
    fixed_space(&mats, basis.len()).iter().map(|v| Wedge::from_coords(&basis, v)).collect()
}

/// Dimensions `d_0..d_n` of the invariant exterior powers, by explicit fixed spaces.
pub fn invariant_dims(rep: &OrbitRep) -> Vec<usize> {
    (0..=rep.n()).map(|j| invariant_basis(rep, j).len()).collect()
}

/// Compact-support cohomology as `(degree, weight, dim)` triples:
/// `Λ^j` contributes in degree `2n − j` with weight `2(n − j)`.
pub fn hc_profile(dims: &[usize]) -> Vec<(usize, usize, usize)> {
    let n = dims.len() - 1;
    dims.iter()
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(j, &d)| (2 * n - j, 2 * (n - j), d))
        .collect()
}


/// Invariant dimensions, cross-checked between the Molien series and explicit fixed spaces.
pub fn verified_dims(rep: &OrbitRep) -> Result<Vec<usize>, TorusError> {
    let a = molien_series_dims(rep);
    let b = invariant_dims(rep);
    if a != b {
        return Err(TorusError::InvariantMismatch(format!("Molien {a:?}, fixed spaces {b:?}")));
    }
    Ok(a)
}
