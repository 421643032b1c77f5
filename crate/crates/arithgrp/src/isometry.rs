use std::collections::HashMap;
use std::ops::ControlFlow;

use conelab::{Cone, ConeError};
use exact_linalg::{integral_kernel, smith_normal_form, IntMatrix};
use num_traits::{Signed, ToPrimitive};
use symquad::QuadForm;

use crate::group::FiniteMatrixGroup;
use crate::small::SmallMat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("cone has interior rank {rank} < genus {g}; its stabilizer is infinite")]
    Degenerate { rank: usize, g: usize },
    #[error("integer overflow in a machine-integer search")]
    Overflow,
    #[error("group closure exceeded the size limit")]
    Infinite,
    #[error("genus mismatch")]
    Genus,
    #[error("census check failed: {0}")]
    Census(String),
    #[error(transparent)]
    Cone(#[from] ConeError),
}

fn sym_small(q: &QuadForm) -> Result<SmallMat, ArithError> {
    SmallMat::from_int(q.mat()).ok_or(ArithError::Overflow)
}

fn quad(q: &SmallMat, u: &[i64], v: &[i64]) -> i64 {
    let n = q.n;
    let mut s = 0i64;
    for i in 0..n {
        if u[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += u[i] * q.a[i * n + j] * v[j];
        }
    }
    s
}

/// All integer vectors `v` with `v^T q v == norm`, for positive definite `q`.
/// Coordinates are bounded by `|v_k| <= sqrt(norm * (q^{-1})_kk)`.
fn short_vectors(q: &QuadForm, norm: i64) -> Vec<Vec<i64>> {
    let g = q.genus();
    if norm < 0 {
        return Vec::new();
    }
    let inv = q.mat().to_rat().inverse().expect("definite form is invertible");
    let bounds: Vec<i64> = (0..g)
        .map(|k| {
            let x = inv.get(k, k) * exact_linalg::BigRational::from_integer(norm.into());
            x.floor().to_integer().sqrt().to_i64().expect("small bound")
        })
        .collect();
    let qs = sym_small(q).expect("small form");
    let mut out = Vec::new();
    let mut v = vec![0i64; g];
    fn rec(k: usize, v: &mut Vec<i64>, b: &[i64], q: &SmallMat, norm: i64, out: &mut Vec<Vec<i64>>) {
        if k == v.len() {
            if quad(q, v, v) == norm {
                out.push(v.clone());
            }
            return;
        }
        for x in -b[k]..=b[k] {
            v[k] = x;
            rec(k + 1, v, b, q, norm, out);
        }
    }
    rec(0, &mut v, &bounds, &qs, norm, &mut out);
    out
}

/// Visits every `U` in GL(g,Z) with `U q1 U^T == q2`, both forms positive
/// definite. The visitor may stop the search early.
pub fn isometries(
    q1: &QuadForm,
    q2: &QuadForm,
    mut visit: impl FnMut(&SmallMat) -> ControlFlow<()>,
) -> Result<(), ArithError> {
    if q1.genus() != q2.genus() {
        return Err(ArithError::Genus);
    }
    if !q1.is_positive_definite() || !q2.is_positive_definite() {
        return Err(ArithError::NotPositiveDefinite);
    }
    let g = q1.genus();
    let a = sym_small(q1)?;
    let b = sym_small(q2)?;
    // Row i of U is a vector of q1-norm b_ii.
    let mut by_norm: HashMap<i64, Vec<Vec<i64>>> = HashMap::new();
    let cands: Vec<Vec<Vec<i64>>> = (0..g)
        .map(|i| {
            let n = b.get(i, i);
            by_norm.entry(n).or_insert_with(|| short_vectors(q1, n)).clone()
        })
        .collect();
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(g);
    fn rec(
        i: usize,
        rows: &mut Vec<Vec<i64>>,
        cands: &[Vec<Vec<i64>>],
        a: &SmallMat,
        b: &SmallMat,
        visit: &mut dyn FnMut(&SmallMat) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let g = cands.len();
        if i == g {
            let u = SmallMat { n: g, a: rows.concat() };
            return visit(&u);
        }
        for v in &cands[i] {
            if (0..i).all(|j| quad(a, v, &rows[j]) == b.get(i, j)) {
                rows.push(v.clone());
                let r = rec(i + 1, rows, cands, a, b, visit);
                rows.pop();
                r?;
            }
        }
        ControlFlow::Continue(())
    }
    let _ = rec(0, &mut rows, &cands, &a, &b, &mut visit);
    Ok(())
}

/// The finite group `{U : U q U^T = q}`.
pub fn orth_group(q: &QuadForm) -> Result<FiniteMatrixGroup, ArithError> {
    let mut els = Vec::new();
    isometries(q, q, |u| {
        els.push(u.clone());
        ControlFlow::Continue(())
    })?;
    Ok(FiniteMatrixGroup::from_elements(q.genus(), els))
}

struct GenIndex {
    mats: Vec<SmallMat>,
    index: HashMap<Vec<i64>, usize>,
}

impl GenIndex {
    fn new(c: &Cone) -> Result<Self, ArithError> {
        let mats: Vec<SmallMat> = c.gens().iter().map(sym_small).collect::<Result<_, _>>()?;
        let index = mats.iter().enumerate().map(|(i, m)| (m.a.clone(), i)).collect();
        Ok(GenIndex { mats, index })
    }

    /// Image indices of the generators under `A -> U A U^T`, if `U` permutes them.
    fn permutation(&self, u: &SmallMat, transposed: bool) -> Option<Vec<usize>> {
        let w = if transposed { u.transpose() } else { u.clone() };
        self.mats.iter().map(|m| self.index.get(&w.congruence(m).a).copied()).collect()
    }

    fn maps_onto(&self, u: &SmallMat, target: &GenIndex) -> bool {
        self.mats.iter().all(|m| target.index.contains_key(&u.congruence(m).a))
    }
}

/// How `U` permutes the generators of `c`, or `None` if it does not.
pub fn generator_permutation(u: &SmallMat, c: &Cone) -> Option<Vec<usize>> {
    GenIndex::new(c).ok()?.permutation(u, false)
}

fn require_full_rank(c: &Cone) -> Result<QuadForm, ArithError> {
    let r = c.interior_rank()?;
    if r != c.genus() {
        return Err(ArithError::Degenerate { rank: r, g: c.genus() });
    }
    Ok(c.generator_sum())
}

/// The stabilizer of a cone whose generator sum is positive definite,
/// obtained by filtering the isometry group of that sum.
pub fn stabilizer(c: &Cone) -> Result<FiniteMatrixGroup, ArithError> {
    let q0 = require_full_rank(c)?;
    let idx = GenIndex::new(c)?;
    let mut els = Vec::new();
    isometries(&q0, &q0, |u| {
        if idx.permutation(u, false).is_some() {
            els.push(u.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(FiniteMatrixGroup::from_elements(c.genus(), els))
}

/// The stabilizer for the transposed convention `A -> U^T A U`, found by an
/// independent search over the isometries of the adjugate of the generator sum.
pub fn stabilizer_transposed(c: &Cone) -> Result<FiniteMatrixGroup, ArithError> {
    let q0 = require_full_rank(c)?;
    // U^T q0 U = q0 exactly when U adj(q0) U^T = adj(q0).
    let inv = q0.mat().to_rat().inverse().expect("definite");
    let det = q0.mat().det();
    let g = c.genus();
    let mut adj = IntMatrix::zeros(g, g);
    for i in 0..g {
        for j in 0..g {
            let x = inv.get(i, j) * exact_linalg::BigRational::from_integer(det.clone());
            adj.set(i, j, x.to_integer());
        }
    }
    if det.is_negative() {
        adj = -&adj;
    }
    let adjq = QuadForm::new(adj).expect("symmetric");
    let idx = GenIndex::new(c)?;
    let mut els = Vec::new();
    isometries(&adjq, &adjq, |u| {
        if idx.permutation(u, true).is_some() {
            els.push(u.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(FiniteMatrixGroup::from_elements(g, els))
}

/// Unimodular `M` with `M A M^T` supported on the leading `r x r` block for
/// every generator `A`, together with the reduced cone in genus `r`.
pub(crate) fn reduce_degenerate(c: &Cone) -> Result<(SmallMat, Cone), ArithError> {
    let g = c.genus();
    let q0 = c.generator_sum();
    let kernel = integral_kernel(q0.mat());
    let k = kernel.len();
    let r = g - k;
    let m = if k == 0 {
        SmallMat::identity(g)
    } else {
        let kmat = IntMatrix::from_columns(&kernel, g);
        let snf = smith_normal_form(&kmat);
        let w = snf.u.inverse_unimodular().expect("unimodular");
        // Kernel directions are the first k columns of w; move them last.
        let order: Vec<usize> = (k..g).chain(0..k).collect();
        let all: Vec<usize> = (0..g).collect();
        let wr = w.submatrix(&all, &order);
        SmallMat::from_int(&wr.transpose()).ok_or(ArithError::Overflow)?
    };
    let mut gens = Vec::new();
    for a in c.gens() {
        let b = m.congruence(&sym_small(a)?);
        let mut blk = IntMatrix::zeros(r, r);
        for i in 0..g {
            for j in 0..g {
                let x = b.get(i, j);
                if i < r && j < r {
                    blk.set(i, j, x.into());
                } else {
                    debug_assert_eq!(x, 0, "generator supported on the interior block");
                }
            }
        }
        gens.push(QuadForm::new(blk).expect("symmetric"));
    }
    Ok((m, Cone::new(r, gens, None)?))
}

fn embed(u: &SmallMat, g: usize) -> SmallMat {
    let mut out = SmallMat::identity(g);
    for i in 0..u.n {
        for j in 0..u.n {
            out.a[i * g + j] = u.get(i, j);
        }
    }
    out
}

fn invert(m: &SmallMat) -> SmallMat {
    SmallMat::from_int(&m.to_int().inverse_unimodular().expect("unimodular")).expect("small inverse")
}

/// A unimodular `U` with `act(U, .)` mapping the generators of `c1` onto
/// those of `c2`, or `None` when the cones are inequivalent.
pub fn are_equivalent(c1: &Cone, c2: &Cone) -> Result<Option<IntMatrix>, ArithError> {
    Ok(equivalence_small(c1, c2)?.map(|u| u.to_int()))
}

pub(crate) fn equivalence_small(c1: &Cone, c2: &Cone) -> Result<Option<SmallMat>, ArithError> {
    if c1.genus() != c2.genus() {
        return Err(ArithError::Genus);
    }
    let g = c1.genus();
    if c1.gens().len() != c2.gens().len() || c1.dim() != c2.dim() {
        return Ok(None);
    }
    let mut ranks1: Vec<usize> = c1.gens().iter().map(QuadForm::rank).collect();
    let mut ranks2: Vec<usize> = c2.gens().iter().map(QuadForm::rank).collect();
    ranks1.sort();
    ranks2.sort();
    if ranks1 != ranks2 {
        return Ok(None);
    }
    let r1 = c1.interior_rank()?;
    if r1 != c2.interior_rank()? {
        return Ok(None);
    }
    if c1.gens().is_empty() {
        return Ok(Some(SmallMat::identity(g)));
    }
    if r1 < g {
        let (m1, d1) = reduce_degenerate(c1)?;
        let (m2, d2) = reduce_degenerate(c2)?;
        let Some(u) = equivalence_small(&d1, &d2)? else {
            return Ok(None);
        };
        let w = invert(&m2).mul(&embed(&u, g)).mul(&m1);
        debug_assert!(GenIndex::new(c1)?.maps_onto(&w, &GenIndex::new(c2)?));
        return Ok(Some(w));
    }
    let q1 = c1.generator_sum();
    let q2 = c2.generator_sum();
    if q1.mat().det() != q2.mat().det() {
        return Ok(None);
    }
    let i1 = GenIndex::new(c1)?;
    let i2 = GenIndex::new(c2)?;
    let mut found = None;
    isometries(&q1, &q2, |u| {
        if i1.maps_onto(u, &i2) {
            found = Some(u.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Invariant data that any equivalence preserves; used to bucket cones
/// before pairwise searches.
pub(crate) fn fingerprint(c: &Cone) -> Result<(usize, usize, usize, usize, Vec<usize>, i64), ArithError> {
    let r = c.interior_rank()?;
    let mut ranks: Vec<usize> = c.gens().iter().map(QuadForm::rank).collect();
    ranks.sort();
    let det = if c.gens().is_empty() {
        1
    } else {
        let (_, red) = reduce_degenerate(c)?;
        red.generator_sum().mat().det().abs().to_i64().ok_or(ArithError::Overflow)?
    };
    Ok((c.genus(), c.dim(), c.gens().len(), r, ranks, det))
}
