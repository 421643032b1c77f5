use exact_linalg::exterior::Wedge;
use exact_linalg::BigRational;
use serde::Serialize;

use crate::invariants::{in_span, span_rank, InvariantTable};
use crate::{BigradedAlg, FibreModel};

/// `c_1` of the Poincaré bundle on `A × A` for a principal polarization
/// `θ ∈ Λ²H^1(A)` on `n` generators: `p_1^*θ + p_2^*θ - m^*θ`, which on
/// `E × E` with `θ = f1∧f2` is `f2∧f3 - f1∧f4`.
pub fn poincare_class(theta: &Wedge, n: usize) -> Wedge {
    let gen = Wedge::generator;
    let p1: Vec<Wedge> = (0..n).map(gen).collect();
    let p2: Vec<Wedge> = (0..n).map(|i| gen(i + n)).collect();
    let m: Vec<Wedge> = (0..n).map(|i| gen(i).add(&gen(i + n))).collect();
    theta.substitute(&p1).add(&theta.substitute(&p2)).sub(&theta.substitute(&m))
}

/// Pullback along the homomorphism `E^s -> E^r`, `x ↦ A x`, of a class on
/// `E^r`; factor `i` carries `f_{2i-1}, f_{2i}`.
pub fn elliptic_pullback(a: &[Vec<i64>], s: usize, w: &Wedge) -> Wedge {
    let mut images = Vec::with_capacity(2 * a.len());
    for row in a {
        assert_eq!(row.len(), s, "ragged map");
        for e in 0..2 {
            let mut v = vec![0i64; 2 * s];
            for (k, &x) in row.iter().enumerate() {
                v[2 * k + e] = x;
            }
            images.push(Wedge::vector_i64(&v));
        }
    }
    w.substitute(&images)
}

/// Chern class on `E^g` of the line bundle attached to a character of the
/// genus-`g` torus: `-e_ij` goes to `c_1(p_ij^* P)`, extended linearly
/// (the diagonal `e_ii` uses the pullback along `x ↦ (x_i, x_i)`).
pub fn character_class(g: usize, chi: &[i64]) -> Wedge {
    let c1 = poincare_class(&Wedge::generator(0).wedge(&Wedge::generator(1)), 2);
    let mut out = Wedge::zero();
    for (k, &x) in chi.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let (a, b) = symquad::coord_position(g, k);
        let mut pick = vec![vec![0i64; g]; 2];
        pick[0][a] = 1;
        pick[1][b] = 1;
        let c = elliptic_pullback(&pick, g, &c1);
        out = out.sub(&c.scale(&BigRational::from_integer(x.into())));
    }
    out
}

/// Images of the fibre generators under `d_2`, as a derivation table
/// indexed by generator (base generators map to zero).
pub fn chern_substitution(model: &FibreModel) -> Vec<Option<Wedge>> {
    let g = model.cone.genus();
    let mut subst = vec![None; model.alg.len()];
    for (k, chi) in model.chars.iter().enumerate() {
        subst[model.alg.base_len() + k] = Some(character_class(g, chi));
    }
    subst
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D2Entry {
    pub p: usize,
    pub q: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
}

/// `d_2 : E_2^{p,q} -> E_2^{p+2,q-1}` on the invariant parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct D2Table {
    pub entries: Vec<D2Entry>,
    /// `(p, q, dim E_3^{p,q})` for every nonzero term.
    pub e3: Vec<(usize, usize, usize)>,
    /// True when no `d_r` with `r >= 3` can connect two nonzero `E_3` terms.
    pub degenerates_at_e3: bool,
}

impl D2Table {
    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.entries.iter().find(|e| (e.p, e.q) == (p, q)).map_or(0, |e| e.rank)
    }

    pub fn e3_dim(&self, p: usize, q: usize) -> usize {
        self.e3.iter().find(|e| (e.0, e.1) == (p, q)).map_or(0, |e| e.2)
    }

    /// `dim E_3` summed over each total degree.
    pub fn total_dims(&self) -> Vec<usize> {
        let top = self.e3.iter().map(|e| e.0 + e.1).max().unwrap_or(0);
        let mut out = vec![0; top + 1];
        for &(p, q, d) in &self.e3 {
            out[p + q] += d;
        }
        out
    }
}

/// Ranks of the derivation `subst` between invariant spaces. Panics if an
/// image leaves the invariant target, which would mean `subst` is not
/// equivariant.
pub fn d2_table(alg: &BigradedAlg, inv: &InvariantTable, subst: &[Option<Wedge>]) -> D2Table {
    let mut entries = Vec::new();
    for (&(p, q), basis) in inv {
        if q == 0 {
            continue;
        }
        let target = inv.get(&(p + 2, q - 1)).cloned().unwrap_or_default();
        let imgs: Vec<Wedge> = basis.iter().map(|w| w.derive(subst)).collect();
        for w in &imgs {
            assert!(alg.is_homogeneous(w, p + 2, q - 1) || w.is_zero(), "d2 is not bihomogeneous");
            assert!(in_span(&target, w), "d2 image is not invariant at ({p},{q})");
        }
        entries.push(D2Entry { p, q, source_dim: basis.len(), target_dim: target.len(), rank: span_rank(&imgs) });
    }
    let rank_at = |p: usize, q: usize| entries.iter().find(|e: &&D2Entry| (e.p, e.q) == (p, q)).map_or(0, |e| e.rank);
    let mut e3 = Vec::new();
    for (&(p, q), basis) in inv {
        let incoming = if p >= 2 { rank_at(p - 2, q + 1) } else { 0 };
        let d = basis.len() - rank_at(p, q) - incoming;
        if d > 0 {
            e3.push((p, q, d));
        }
    }
    let nonzero = |p: usize, q: usize| e3.iter().any(|e| (e.0, e.1) == (p, q));
    let degenerates_at_e3 = e3.iter().all(|&(p, q, _)| (3..=q + 1).all(|r| !nonzero(p + r, q + 1 - r)));
    D2Table { entries, e3, degenerates_at_e3 }
}

pub fn chern_d2(model: &FibreModel, inv: &InvariantTable) -> D2Table {
    d2_table(&model.alg, inv, &chern_substitution(model))
}
