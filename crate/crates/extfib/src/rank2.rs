//! The torus-rank-two fibre: `S × S` for an abelian surface `S`, with
//! `H^1 = Λ ⊕ Λ'` spanned by `f1..f4` and `f5..f8`, and the `C^*`-bundle
//! given by the Poincaré bundle.

use exact_linalg::exterior::Wedge;
use exact_linalg::{BigRational, IntMatrix};
use num_traits::Zero;
use serde::Serialize;

use crate::chern::{d2_table, poincare_class, D2Table};
use crate::invariants::{in_span, invariant_table, invariants_in, span_rank};
use crate::model::reynolds;
use crate::spdim::sp_dim;
use crate::{BigradedAlg, FibAction};

pub fn rank2_alg() -> BigradedAlg {
    BigradedAlg::new(8, &["Q"])
}

fn base_action(f: impl Fn(usize) -> Vec<(usize, i64)>, fiber: i64) -> FibAction {
    let mut m = IntMatrix::zeros(8, 8);
    for j in 0..8 {
        for (i, c) in f(j) {
            m.set(i, j, c.into());
        }
    }
    FibAction::new(m, IntMatrix::from_rows(&[[fiber]])).expect("involution")
}

/// `i1 (p,q) = (-p,-q)`, acting trivially on the fibre class.
pub fn i1() -> FibAction {
    base_action(|j| vec![(j, -1)], 1)
}

/// `i2 (p,q) = (q,p)`.
pub fn i2() -> FibAction {
    base_action(|j| vec![((j + 4) % 8, 1)], 1)
}

/// `i3 (x,y) = (x+y,-y)`, pulled back: `f_i ↦ f_i + f_{i+4}`, `f_{i+4} ↦ -f_{i+4}`.
pub fn i3() -> FibAction {
    base_action(|j| if j < 4 { vec![(j, 1), (j + 4, 1)] } else { vec![(j, -1)] }, 1)
}

/// The transpose of [`i3`]: `f_i ↦ f_i`, `f_{i+4} ↦ f_i - f_{i+4}`.
pub fn i3_transposed() -> FibAction {
    base_action(|j| if j < 4 { vec![(j, 1)] } else { vec![(j - 4, 1), (j, -1)] }, 1)
}

/// `κ (p,q) = (-p,q)` on the base.
pub fn kappa() -> FibAction {
    base_action(|j| vec![(j, if j < 4 { -1 } else { 1 })], 1)
}

/// The Kummer involution: `κ` on the base, `t ↦ 1/t` on the fibre.
pub fn iota() -> FibAction {
    base_action(|j| vec![(j, if j < 4 { -1 } else { 1 })], -1)
}

/// `c_1` of the Poincaré bundle on `S × S` for `θ = f1∧f2 + f3∧f4`.
pub fn poincare_class_surface() -> Wedge {
    let g = Wedge::generator;
    poincare_class(&g(0).wedge(&g(1)).add(&g(2).wedge(&g(3))), 4)
}

/// `v_{i,j,k,l}` for `i<j`, `k<l`, `{i,j,k,l} = {1,2,3,4}`, ordered by `(i,j)`.
pub fn v_basis() -> Vec<((usize, usize, usize, usize), Wedge)> {
    let f = |i: usize| Wedge::generator(i - 1);
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in i + 1..=4 {
            let rest: Vec<usize> = (1..=4).filter(|&x| x != i && x != j).collect();
            let (k, l) = (rest[0], rest[1]);
            let head = f(i).wedge(&f(j)).wedge(&f(i + 4)).wedge(&f(j + 4));
            let two = BigRational::from_integer(2.into());
            let tail = f(k)
                .wedge(&f(l))
                .scale(&two)
                .add(&f(k + 4).wedge(&f(l + 4)).scale(&two))
                .add(&f(k).wedge(&f(l + 4)))
                .add(&f(k + 4).wedge(&f(l)));
            out.push(((i, j, k, l), head.wedge(&tail)));
        }
    }
    out
}

/// The printed image `Q ⊗ f_i∧f_j∧f_{i+4}∧f_{j+4}∧(f_k∧f_{l+4} + f_{k+4}∧f_l)`.
pub fn delta2_printed(idx: (usize, usize, usize, usize)) -> Wedge {
    let (i, j, k, l) = idx;
    let f = |i: usize| Wedge::generator(i - 1);
    let head = f(i).wedge(&f(j)).wedge(&f(i + 4)).wedge(&f(j + 4));
    let tail = f(k).wedge(&f(l + 4)).add(&f(k + 4).wedge(&f(l)));
    head.wedge(&tail).wedge(&Wedge::generator(8))
}

/// Contraction with the fibre class: `Q ∧ α ↦ α`, the residue along the
/// zero section.
fn residue(w: &Wedge) -> Wedge {
    let q = 1u32 << 8;
    let mut out = Wedge::zero();
    for (m, c) in w.terms() {
        if m & q != 0 {
            out.add_term(m & !q, c);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SxSRow {
    pub k: usize,
    pub invariant: usize,
    pub kappa_invariant: usize,
    pub kappa_alternating: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rank2Report {
    /// `(i1,i2)`-invariants of `H^k(S×S)` split by `κ`.
    pub sxs: Vec<SxSRow>,
    /// `(i1,i2,i3)`-invariant dimensions in degrees `0..=8`.
    pub discr_dims: Vec<usize>,
    /// The same dimensions with `i3` replaced by its transpose.
    pub discr_dims_transposed: Vec<usize>,
    /// `E_2` and `d_2` of the `(j1,j2,ι)`-invariant Leray sequence.
    pub fibre_sequence: D2Table,
    pub e2_row0: Vec<usize>,
    pub e2_row1: Vec<usize>,
    pub einf_row0: Vec<usize>,
    pub einf_row1: Vec<usize>,
    /// The six `v_{i,j,k,l}` are invariant and independent.
    pub v_is_basis: bool,
    /// How many `v_{i,j,k,l}` the transposed `i3` fixes.
    pub v_fixed_by_transposed_i3: usize,
    /// Symmetrized images of the `v` equal the printed classes.
    pub delta2_matches_printed: bool,
    /// Rank of the symmetrized images, which live in `E_2^{6,1}`.
    pub delta2_image_rank: usize,
    pub e2_61_dim: usize,
    /// `dim E_∞^{6,1} = dim H^7`, and the rank of the residue on it.
    pub h7_dim: usize,
    pub residue_rank: usize,
    pub delta2_surjective: bool,
    /// Dimensions of the representation labels used in the fibre tables.
    pub label_dims: Vec<(String, usize)>,
}

fn row(t: &D2Table, inv: &crate::InvariantTable, q: usize, e2: bool) -> Vec<usize> {
    (0..=8)
        .map(|p| if e2 { inv.get(&(p, q)).map_or(0, Vec::len) } else { t.e3_dim(p, q) })
        .collect()
}

pub fn rank2_suite() -> Rank2Report {
    let alg = rank2_alg();
    let (a1, a2, a3, k) = (i1(), i2(), i3(), kappa());

    let sxs = (0..=8)
        .map(|d| {
            let inv = invariants_in(&alg, &[a1.clone(), a2.clone()], d, 0).len();
            let kin = invariants_in(&alg, &[a1.clone(), a2.clone(), k.clone()], d, 0).len();
            SxSRow { k: d, invariant: inv, kappa_invariant: kin, kappa_alternating: inv - kin }
        })
        .collect();
    let discr = |c: &FibAction| -> Vec<usize> {
        (0..=8).map(|d| invariants_in(&alg, &[a1.clone(), a2.clone(), c.clone()], d, 0).len()).collect()
    };
    let discr_dims = discr(&a3);
    let discr_dims_transposed = discr(&i3_transposed());

    // The (j1, j2, ι)-invariant Leray sequence of the C^*-bundle.
    let group = [a1.clone(), a2.clone(), iota()];
    let inv = invariant_table(&alg, &group);
    let mut subst = vec![None; 9];
    subst[8] = Some(poincare_class_surface());
    let seq = d2_table(&alg, &inv, &subst);

    let vs = v_basis();
    let deg6 = invariants_in(&alg, &[a1.clone(), a2.clone(), a3.clone()], 6, 0);
    let v_only: Vec<Wedge> = vs.iter().map(|(_, v)| v.clone()).collect();
    let v_is_basis = v_only.iter().all(|v| in_span(&deg6, v)) && span_rank(&v_only) == deg6.len();
    let t = i3_transposed();
    let v_fixed = v_only.iter().filter(|v| &t.apply(v) == *v).count();

    // δ2*: α ↦ Q ⊗ α, symmetrized over the group generated by j1, j2, ι.
    let elements = closure(&group);
    let q = Wedge::generator(8);
    let images: Vec<Wedge> = v_only.iter().map(|v| reynolds(&elements, &v.wedge(&q))).collect();
    let delta2_matches_printed = vs.iter().zip(&images).all(|((idx, _), im)| &delta2_printed(*idx) == im);
    let e61 = inv.get(&(6, 1)).cloned().unwrap_or_default();

    // H^7 is the kernel of d2 on E_2^{6,1}; the residue detects surjectivity of δ2.
    let kernel = kernel_of(&e61, |w| w.derive(&subst));
    let residues: Vec<Wedge> = kernel.iter().map(residue).collect();
    let residue_rank = span_rank(&residues);
    let h7 = seq.e3_dim(6, 1);

    let label_dims = [("V11", vec![1, 1]), ("V20", vec![2, 0]), ("V22", vec![2, 2])]
        .into_iter()
        .map(|(n, l)| (n.to_string(), sp_dim(2, &l).expect("valid partition")))
        .collect();

    Rank2Report {
        sxs,
        discr_dims,
        discr_dims_transposed,
        e2_row0: row(&seq, &inv, 0, true),
        e2_row1: row(&seq, &inv, 1, true),
        einf_row0: row(&seq, &inv, 0, false),
        einf_row1: row(&seq, &inv, 1, false),
        fibre_sequence: seq,
        v_is_basis,
        v_fixed_by_transposed_i3: v_fixed,
        delta2_matches_printed,
        delta2_image_rank: span_rank(&images),
        e2_61_dim: e61.len(),
        h7_dim: h7,
        residue_rank,
        delta2_surjective: kernel.len() == h7 && residue_rank == h7,
        label_dims,
    }
}

/// All products of the given actions.
pub fn closure(gens: &[FibAction]) -> Vec<FibAction> {
    let id = FibAction {
        base_matrix: IntMatrix::identity(gens[0].base_matrix.rows()),
        fiber_matrix: IntMatrix::identity(gens[0].fiber_matrix.rows()),
    };
    let mut all = vec![id];
    let mut i = 0;
    while i < all.len() {
        for g in gens {
            let n = all[i].compose(g);
            if !all.contains(&n) {
                all.push(n);
            }
        }
        i += 1;
    }
    all
}

/// Kernel of a linear map on the span of `basis`, as elements.
fn kernel_of(basis: &[Wedge], map: impl Fn(&Wedge) -> Wedge) -> Vec<Wedge> {
    let imgs: Vec<Wedge> = basis.iter().map(&map).collect();
    let mut monos: Vec<u32> = imgs.iter().flat_map(|w| w.terms().map(|(m, _)| *m).collect::<Vec<_>>()).collect();
    monos.sort();
    monos.dedup();
    if monos.is_empty() {
        return basis.to_vec();
    }
    let mut m = exact_linalg::RatMatrix::zeros(monos.len(), basis.len());
    for (j, w) in imgs.iter().enumerate() {
        for (i, c) in w.to_coords(&monos).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m.kernel()
        .iter()
        .map(|c| {
            let mut w = Wedge::zero();
            for (x, b) in c.iter().zip(basis) {
                if !x.is_zero() {
                    w = w.add(&b.scale(x));
                }
            }
            w
        })
        .collect()
}
