use arithgrp::*;
use conelab::{named_cone, Cone};
use exact_linalg::IntMatrix;
use proptest::prelude::*;
use symquad::{act, central_e, QuadForm};

fn image_coords(u: &IntMatrix, c: &Cone) -> Vec<Vec<num_bigint::BigInt>> {
    let mut v: Vec<_> = c.gens().iter().map(|q| act(u, q).unwrap().coords()).collect();
    v.sort();
    v
}

fn image(u: &IntMatrix, c: &Cone) -> Cone {
    let gens = c.gens().iter().map(|q| act(u, q).unwrap()).collect();
    Cone::new(c.genus(), gens, None).unwrap()
}

/// The matrix `U` with `act(U, .)` realizing the substitution `x -> P x`.
fn substitution(p: &[[i64; 4]]) -> IntMatrix {
    IntMatrix::from_rows(p).transpose()
}

fn unimodular(g: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..g, 0..g, prop::bool::ANY), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(g);
        for (i, j, neg) in ops {
            let mut e = IntMatrix::identity(g);
            if i == j {
                e.set(i, i, (-1).into());
            } else {
                e.set(i, j, if neg { (-1).into() } else { 1.into() });
            }
            m = &m * &e;
        }
        m
    })
}

#[test]
fn orthogonal_group_orders() {
    let i3 = QuadForm::from_rows(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
    assert_eq!(orth_group(&i3).unwrap().order(), 48);
    let i4 = QuadForm::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]).unwrap();
    assert_eq!(orth_group(&i4).unwrap().order(), 384);
    let oe = orth_group(&central_e()).unwrap();
    assert_eq!(oe.order(), 1152);
    assert!(oe.is_closed());
    let indefinite = QuadForm::from_rows(&[[1, 0], [0, -1]]).unwrap();
    assert!(matches!(orth_group(&indefinite), Err(ArithError::NotPositiveDefinite)));
}

#[test]
fn stabilizer_orders_regression() {
    let expected = [
        ("sigma3", 48),
        ("sigmaI", 24),
        ("sigmaII", 48),
        ("sigma5", 16),
        ("sigma6", 48),
        ("Pi1", 240),
        ("Pi2", 1152),
        ("K5-1", 24),
        ("K33", 144),
        ("K5-1-1b", 16),
        ("C321", 24),
        ("C5", 240),
    ];
    for (name, order) in expected {
        let c = named_cone(name).unwrap();
        let s = stabilizer(&c).unwrap();
        assert_eq!(s.order(), order, "{name}");
        assert!(s.is_closed());
        assert!(s.is_subgroup_of(&orth_group(&c.generator_sum()).unwrap()));
        for u in s.elements() {
            assert_eq!(image_coords(&u, &c), c.sorted_coords(), "{name}");
        }
        assert_eq!(stabilizer_transposed(&c).unwrap().order(), order, "{name}");
    }
}

#[test]
fn printed_stabilizer_generators() {
    let k = named_cone("K5-1-1b").unwrap();
    let s = stabilizer(&k).unwrap();
    let minus = IntMatrix::from_rows(&[[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]);
    let a = substitution(&[[0, 0, 1, 0], [0, 0, 0, 1], [0, 1, 0, 0], [1, 0, 0, 0]]);
    let b = substitution(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]);
    for u in [&minus, &a, &b] {
        assert!(s.contains(u));
    }
    let closure = FiniteMatrixGroup::generate(4, &[minus, a, b]).unwrap();
    assert_eq!(closure.order(), 16);
    assert!(s.is_subgroup_of(&stabilizer(&named_cone("K33").unwrap()).unwrap()));

    let si = stabilizer(&named_cone("sigmaI").unwrap()).unwrap();
    let t3 = |p: [[i64; 3]; 3]| IntMatrix::from_rows(&p).transpose();
    let printed = [
        t3([[1, 0, 0], [0, 1, -1], [0, 0, -1]]),
        t3([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]),
        t3([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        t3([[-1, 0, 0], [0, -1, 0], [0, 0, -1]]),
    ];
    for u in &printed {
        assert!(si.contains(u));
    }
    assert_eq!(FiniteMatrixGroup::generate(3, &printed).unwrap().order(), si.order());
}

#[test]
fn degenerate_cones_have_no_finite_stabilizer() {
    let c = Cone::from_vectors(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], "x").unwrap();
    assert!(matches!(stabilizer(&c), Err(ArithError::Degenerate { rank: 2, g: 4 })));
}

#[test]
fn printed_subcone_is_a_face_orbit() {
    let k33 = named_cone("K33").unwrap();
    let b = named_cone("K5-1-1b").unwrap();
    assert!(k33.contains_generator_set(&b));
    let pi1 = named_cone("Pi1").unwrap();
    let lattice = pi1.faces().unwrap();
    let found = lattice
        .faces_of_dim(8)
        .into_iter()
        .filter_map(|f| are_equivalent(&b, &f).unwrap().map(|u| (f, u)))
        .next();
    let (f, u) = found.expect("K5-1-1b is equivalent to a face of Pi1");
    assert_eq!(image(&u, &b).sorted_coords(), f.sorted_coords());
}

#[test]
fn inequivalent_genus_three_cones() {
    let a = named_cone("sigmaI").unwrap();
    let b = named_cone("sigmaII").unwrap();
    assert_eq!(are_equivalent(&a, &b).unwrap(), None);
}

#[test]
fn face_stabilizers_nest() {
    let c = named_cone("C321").unwrap();
    let f = named_cone("C5").unwrap();
    let gs = stabilizer(&c).unwrap();
    let gf = stabilizer(&f).unwrap();
    for u in gs.elements() {
        if image_coords(&u, &f) == f.sorted_coords() {
            assert!(gf.contains(&u));
        }
    }
    assert!(gs.is_subgroup_of(&gf));
}

#[test]
fn census_counts() {
    let p = perfect_census().unwrap();
    assert_eq!(p.counts_by_dim(10), vec![1, 1, 2, 3, 4, 5, 4, 2, 2, 2]);
    assert_eq!(p.len(), 26);
    let nondegenerate = p.orbits.iter().filter(|o| o.rep.interior_rank().unwrap() == 4).count();
    assert_eq!(nondegenerate, 18);
    let e = e_census(true).unwrap();
    assert_eq!(e.len(), 35);
    assert_eq!(e.counts_by_dim(10), vec![1, 1, 2, 4, 5, 6, 7, 5, 2, 2]);
    // Second Voronoi fan: the perfect fan without Pi2, plus the cones through e.
    let voronoi: Vec<usize> = p
        .counts_by_dim(10)
        .iter()
        .zip(e.counts_by_dim(10))
        .enumerate()
        .map(|(i, (a, b))| a + b - usize::from(i == 9))
        .collect();
    assert_eq!(voronoi, vec![2, 2, 4, 7, 9, 11, 11, 7, 4, 3]);
    assert_eq!(voronoi.iter().sum::<usize>(), 60);
}

#[test]
fn census_is_deterministic() {
    let a = perfect_census().unwrap();
    let b = perfect_census().unwrap();
    let ka: Vec<_> = a.orbits.iter().map(|o| o.rep.sorted_coords()).collect();
    let kb: Vec<_> = b.orbits.iter().map(|o| o.rep.sorted_coords()).collect();
    assert_eq!(ka, kb);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn equivalence_witnesses(u in unimodular(4), v in unimodular(4)) {
        let c = named_cone("C222").unwrap();
        let cu = image(&u, &c);
        let cv = image(&v, &cu);
        // Reflexive, symmetric and transitive, each with a checked witness.
        for (x, y) in [(&c, &c), (&c, &cu), (&cu, &c), (&cu, &cv), (&c, &cv)] {
            let w = are_equivalent(x, y).unwrap().expect("equivalent");
            prop_assert_eq!(image(&w, x).sorted_coords(), y.sorted_coords());
        }
        let other = named_cone("C321").unwrap();
        prop_assert!(are_equivalent(&cu, &image(&v, &other)).unwrap().is_none());
    }

    #[test]
    fn stabilizers_are_conjugate(u in unimodular(4)) {
        let c = named_cone("K5-2").unwrap();
        let s = stabilizer(&c).unwrap();
        let cu = image(&u, &c);
        let su = stabilizer(&cu).unwrap();
        prop_assert_eq!(s.order(), su.order());
        let uinv = u.inverse_unimodular().unwrap();
        for g in s.generators() {
            prop_assert!(su.contains(&(&(&u * &g) * &uinv)));
        }
    }
}
