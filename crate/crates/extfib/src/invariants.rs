use std::collections::BTreeMap;

use exact_linalg::exterior::{fixed_space, Wedge};
use exact_linalg::{BigRational, RatMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{BigradedAlg, FibAction, FibreModel};

/// Invariants of each bidegree, keyed by `(p, q)`; empty bidegrees are omitted.
pub type InvariantTable = BTreeMap<(usize, usize), Vec<Wedge>>;

/// Scales a rational vector to a primitive integral one with positive leading entry.
pub(crate) fn primitive(v: &[BigRational]) -> Vec<BigRational> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect()
}

/// Basis of the simultaneous fixed space of `gens` on bidegree `(p, q)`.
pub fn invariants_in(alg: &BigradedAlg, gens: &[FibAction], p: usize, q: usize) -> Vec<Wedge> {
    let basis = alg.basis(p, q);
    if basis.is_empty() {
        return Vec::new();
    }
    let mats: Vec<RatMatrix> = gens.iter().map(|a| a.matrix_on(&basis)).collect();
    fixed_space(&mats, basis.len())
        .iter()
        .map(|v| Wedge::from_coords(&basis, &primitive(v)))
        .collect()
}

pub fn invariant_table(alg: &BigradedAlg, gens: &[FibAction]) -> InvariantTable {
    let mut out = BTreeMap::new();
    for p in 0..=alg.base_len() {
        for q in 0..=alg.fiber_len() {
            let b = invariants_in(alg, gens, p, q);
            if !b.is_empty() {
                out.insert((p, q), b);
            }
        }
    }
    out
}

/// The `G(σ)`-invariant part of `H^p(E×E×E) ⊗ H^q(fibre)` for every `(p, q)`.
pub fn invariants_bigraded(model: &FibreModel) -> InvariantTable {
    invariant_table(&model.alg, &model.generator_actions)
}

/// Rank of a family of elements, computed on their monomial coordinates.
pub fn span_rank(ws: &[Wedge]) -> usize {
    let mut monos: Vec<u32> = ws.iter().flat_map(|w| w.terms().map(|(m, _)| *m).collect::<Vec<_>>()).collect();
    monos.sort();
    monos.dedup();
    if monos.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<BigRational>> = ws.iter().map(|w| w.to_coords(&monos)).collect();
    RatMatrix::from_rows(&rows, monos.len()).rank()
}

/// Whether `w` lies in the span of `basis`.
pub fn in_span(basis: &[Wedge], w: &Wedge) -> bool {
    let mut all = basis.to_vec();
    let r = span_rank(&all);
    all.push(w.clone());
    span_rank(&all) == r
}
