use exact_linalg::exterior::Wedge;
use exact_linalg::{BigRational, IntMatrix};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;
use symquad::pairing;

use crate::invariants::{in_span, invariants_in, span_rank};
use crate::{fibre_model, ExtError, FibreModel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Beta3Gysin {
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub surjective: bool,
    /// The four `g_{i,j}` form a basis of the source.
    pub g_is_basis: bool,
    /// Each image is one common multiple of `(2/3) Σ_{k,l} Q_{k+1}∧Q_{l+1} ⊗ f_{2k+i}∧f_{2l+j}`.
    pub matches_printed: bool,
    /// That common multiple (the sum over ordered pairs counts each term twice).
    pub printed_scale: Option<String>,
    pub images: Vec<String>,
}

/// The generators `g_{i,j} = ((Q2+2Q3)⊗f_{j+2} + (2Q2+Q3)⊗f_{j+4}) ∧ f_i`.
pub fn g_basis(m: &FibreModel) -> Vec<((usize, usize), Wedge)> {
    let a = &m.alg;
    let two = BigRational::from_integer(2.into());
    let x = a.q("Q2").add(&a.q("Q3").scale(&two));
    let y = a.q("Q2").scale(&two).add(&a.q("Q3"));
    let mut out = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let g = x.wedge(&a.f(j + 2)).add(&y.wedge(&a.f(j + 4))).wedge(&a.f(i));
            out.push(((i, j), g));
        }
    }
    out
}

/// Map from classes on the fibre over the larger cone into the algebra of
/// a face: base generators fixed, characters included via the character
/// lattices.
fn inclusion(big: &FibreModel, face: &FibreModel) -> Result<Vec<Wedge>, ExtError> {
    let nb = face.alg.base_len();
    let n = face.alg.len();
    let d = big.chars.first().map_or(0, Vec::len);
    let basis = IntMatrix::from_big_rows(
        &face.chars.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>(),
        d,
    )
    .transpose()
    .to_rat();
    let mut images: Vec<Wedge> = (0..nb).map(Wedge::generator).collect();
    for c in &big.chars {
        let rhs: Vec<BigRational> = c.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let x = basis.solve(&rhs).ok_or(ExtError::CharacterOutsideSpan)?;
        let mut v = vec![BigRational::zero(); n];
        v[nb..].clone_from_slice(&x);
        images.push(Wedge::vector(&v));
    }
    Ok(images)
}

/// A face character `u` with `<u, n> = 1` on the generator `n` of `σ` that
/// is missing from the face.
fn normal_character(big: &FibreModel, face: &FibreModel) -> Result<Wedge, ExtError> {
    let extra: Vec<_> = big.cone.gens().iter().filter(|q| face.cone.position(q).is_none()).collect();
    let [n] = extra.as_slice() else {
        return Err(ExtError::NotFacet);
    };
    let nc = n.coords();
    for (k, c) in face.chars.iter().enumerate() {
        let c: Vec<BigInt> = c.iter().map(|&x| x.into()).collect();
        let p = pairing(&nc, &c);
        if p == BigInt::from(1) || p == BigInt::from(-1) {
            let s = BigRational::from_integer(p);
            return Ok(Wedge::generator(face.alg.base_len() + k).scale(&s));
        }
    }
    Err(ExtError::NotFacet)
}

/// The degree-three part of the boundary map from the fibre over `σ_I` into
/// the fibre over `σ^{(3)}`: `g ↦ Σ_{G(σ^{(3)})} u ∧ g`, averaged.
pub fn beta3_gysin_rank() -> Result<Beta3Gysin, ExtError> {
    let big = fibre_model("sigmaI")?;
    let face = fibre_model("sigma3")?;
    let incl = inclusion(&big, &face)?;
    let u = normal_character(&big, &face)?;

    let source = invariants_in(&big.alg, &big.generator_actions, 2, 1);
    let target = invariants_in(&face.alg, &face.generator_actions, 2, 2);
    let gs = g_basis(&big);
    let g_only: Vec<Wedge> = gs.iter().map(|(_, g)| g.clone()).collect();
    let g_is_basis = g_only.iter().all(|g| in_span(&source, g)) && span_rank(&g_only) == source.len();

    let images: Vec<Wedge> = g_only.iter().map(|g| face.reynolds(&u.wedge(&g.substitute(&incl)))).collect();
    let a = &face.alg;
    let printed = |i: usize, j: usize| {
        let q = ["Q1", "Q2", "Q3"];
        let mut w = Wedge::zero();
        for k in 0..3 {
            for l in 0..3 {
                w = w.add(&a.q(q[k]).wedge(&a.q(q[l])).wedge(&a.f(2 * k + i)).wedge(&a.f(2 * l + j)));
            }
        }
        w.scale(&BigRational::new(2.into(), 3.into()))
    };
    let scale = gs.first().zip(images.first()).and_then(|(((i, j), _), im)| ratio(im, &printed(*i, *j)));
    let matches_printed = scale.as_ref().is_some_and(|c| {
        gs.iter().zip(&images).all(|(((i, j), _), im)| &printed(*i, *j).scale(c) == im)
    });
    let rank = span_rank(&images);
    let inside = images.iter().all(|w| in_span(&target, w));
    Ok(Beta3Gysin {
        source_dim: source.len(),
        target_dim: target.len(),
        rank,
        surjective: inside && rank == target.len(),
        g_is_basis,
        matches_printed,
        printed_scale: scale.map(|c| c.to_string()),
        images: images.iter().map(|w| a.render(w)).collect(),
    })
}

/// The scalar `c` with `a = c·b`, if there is one and `b ≠ 0`.
fn ratio(a: &Wedge, b: &Wedge) -> Option<BigRational> {
    let (m, x) = b.terms().next()?;
    let c = a.coeff(*m) / x;
    (&b.scale(&c) == a).then_some(c)
}
