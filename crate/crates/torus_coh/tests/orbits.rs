use std::collections::BTreeMap;

use arithgrp::{e_census, perfect_census, FiniteMatrixGroup};
use conelab::{named_cone, Cone};
use exact_linalg::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use torus_coh::*;

fn ec(name: &str) -> TatePoly {
    molien_ec(&orbit_rep(&named_cone(name).unwrap()).unwrap())
}

fn p(s: &str) -> TatePoly {
    s.parse().unwrap()
}

fn nondegenerate_perfect() -> Vec<Cone> {
    perfect_census()
        .unwrap()
        .orbits
        .into_iter()
        .map(|o| o.rep)
        .filter(|c| c.interior_rank().unwrap() == 4)
        .collect()
}

fn e_cones() -> Vec<Cone> {
    e_census(false).unwrap().orbits.into_iter().map(|o| o.rep).collect()
}

#[test]
fn point_orbits() {
    for name in ["Pi1", "Pi2"] {
        let rep = orbit_rep(&named_cone(name).unwrap()).unwrap();
        assert_eq!(rep.n(), 0);
        assert_eq!(molien_ec(&rep), TatePoly::int(1));
        assert_eq!(verified_dims(&rep).unwrap(), vec![1]);
        assert_eq!(hc_profile(&invariant_dims(&rep)), vec![(0, 0, 1)]);
    }
}

#[test]
fn rank_one_orbits() {
    // A one-dimensional orbit lattice carries a sign character.
    let k33 = orbit_rep(&named_cone("K33").unwrap()).unwrap();
    assert_eq!(k33.n(), 1);
    assert!(k33.actions.iter().all(|m| m.a[0] == 1 || m.a[0] == -1));
    assert!(k33.actions.iter().any(|m| m.a[0] == -1));
    assert_eq!(molien_ec(&k33), p("L"));
    assert_eq!(ec("K5-1"), p("L-1"));
}

#[test]
fn sign_character_oracle() {
    // For n = 1 the character is det(U) times the sign of the generator permutation.
    for name in ["K5-1", "K33"] {
        let c = named_cone(name).unwrap();
        let rep = orbit_rep(&c).unwrap();
        for (u, m) in rep.group.small_elements().iter().zip(&rep.actions) {
            let perm = arithgrp::generator_permutation(u, &c).unwrap();
            let mut seen = vec![false; perm.len()];
            let mut sign = 1i64;
            for s in 0..perm.len() {
                if seen[s] {
                    continue;
                }
                let mut len = 0;
                let mut k = s;
                while !seen[k] {
                    seen[k] = true;
                    k = perm[k];
                    len += 1;
                }
                if len % 2 == 0 {
                    sign = -sign;
                }
            }
            let det: i64 = if u.to_int().det() == BigInt::one() { 1 } else { -1 };
            assert_eq!(m.a[0], det * sign, "{name}");
        }
    }
}

#[test]
fn printed_examples() {
    assert_eq!(ec("C321"), p("L^4+1"));
    assert_eq!(ec("C5"), p("L^5-1"));
    assert_eq!(ec("C222"), p("L^4-L^3"));
    assert_eq!(ec("C2221"), p("L^3"));
    assert_eq!(ec("K5-2"), p("L^2"));
    assert_eq!(ec("K5-1-1b"), p("L^2-L"));
    assert_eq!(ec("K5-2-1b"), p("L^3-L^2"));
    let e = orbit_rep(&named_cone("e").unwrap()).unwrap();
    assert_eq!(e.n(), 9);
    assert_eq!(molien_ec(&e), p("L^9-L^4"));
}

#[test]
fn c5_profile_top_entry() {
    let rep = orbit_rep(&named_cone("C5").unwrap()).unwrap();
    let prof = hc_profile(&verified_dims(&rep).unwrap());
    assert_eq!(prof.first(), Some(&(10, 10, 1)));
}

#[test]
fn trivial_group_gives_full_torus() {
    let c = named_cone("K5-2").unwrap();
    let rep = orbit_rep_with(&c, FiniteMatrixGroup::trivial(4)).unwrap();
    assert_eq!(rep.n(), 2);
    assert_eq!(molien_ec(&rep), p("L^2-2L+1"));
    assert_eq!(verified_dims(&rep).unwrap(), vec![1, 2, 1]);
}

#[test]
fn perfect_table_reproduced() {
    let mut computed: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    let mut printed: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    let mut labelled = Vec::new();
    for c in nondegenerate_perfect() {
        let e = molien_ec(&orbit_rep(&c).unwrap());
        labelled.push((perfect_label(&c, &e).unwrap(), e.clone()));
        computed.entry(c.dim()).or_default().push(e.to_string());
    }
    for r in PERFECT_ROWS {
        printed.entry(r.dim).or_default().push(r.poly().to_string());
    }
    for v in computed.values_mut().chain(printed.values_mut()) {
        v.sort();
    }
    assert_eq!(labelled.len(), 18);
    assert_eq!(computed, printed);
    // Labels agree row by row except for the exchanged pair K5-1 / K33.
    for (label, e) in &labelled {
        let row = PERFECT_ROWS.iter().find(|r| r.label == *label).unwrap();
        match *label {
            "K5-1" => assert_eq!(*e, p("L-1")),
            "K33" => assert_eq!(*e, p("L")),
            _ => assert_eq!(*e, row.poly(), "{label}"),
        }
    }
    let labels: std::collections::BTreeSet<&str> = labelled.iter().map(|x| x.0).collect();
    assert_eq!(labels.len(), 18);
}

#[test]
fn e_tables_reproduced() {
    let cones = e_cones();
    assert_eq!(cones.len(), 35);
    let v: Vec<(usize, TatePoly)> = cones.iter().map(|c| (c.dim(), molien_ec(&orbit_rep(c).unwrap()))).collect();
    let labels = e_labels(&v);
    let mismatched: Vec<&str> = labels.iter().map(|l| l.as_ref().unwrap()).filter(|l| !l.matches).map(|l| l.label).collect();
    assert_eq!(mismatched, vec!["221-"]);
    let total = v.iter().fold(TatePoly::zero(), |a, (_, e)| &a + e);
    assert_eq!(total, p(E_TOTAL));
    let printed_sum = E_ROWS.iter().fold(TatePoly::zero(), |a, r| &a + &r.poly());
    assert_eq!(&printed_sum - &total, TatePoly::l(1));
    // The total is palindromic.
    assert_eq!(duality(&total, 9), total);
}

#[test]
fn molien_agrees_with_fixed_spaces_on_all_orbits() {
    let cones: Vec<Cone> = nondegenerate_perfect().into_iter().chain(e_cones()).collect();
    assert_eq!(cones.len(), 53);
    for c in &cones {
        let rep = orbit_rep(c).unwrap();
        let dims = verified_dims(&rep).unwrap();
        assert_eq!(dims[0], 1);
        // Alternating sum over the profile reproduces the Molien polynomial.
        let mut e = TatePoly::zero();
        for (k, w, d) in hc_profile(&dims) {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            e.add_term((w / 2) as i32, Coeff::int(sign * d as i64));
        }
        let m = molien_ec(&rep);
        assert_eq!(e, m);
        assert_eq!(m.degree(), Some(rep.n() as i32));
        assert_eq!(m.coeff(rep.n() as i32), Coeff::int(1));
        // L -> 1 gives the average of det(Id - ρ).
        let mut s = BigInt::zero();
        for a in &rep.actions {
            let mut id_minus = a.clone();
            for (i, x) in id_minus.a.iter_mut().enumerate() {
                *x = if i % (rep.n() + 1) == 0 { 1 - *x } else { -*x };
            }
            s += id_minus.to_int().det();
        }
        let avg = BigRational::new(s, BigInt::from(rep.actions.len()));
        assert_eq!(BigRational::from_integer(BigInt::from(m.eval_at_one().as_int().unwrap())), avg);
    }
}

#[test]
fn connecting_map_ranks() {
    let pairs = [("K5-1", "Pi1", 0), ("C5", "C321", 4), ("K5-1-1b", "K33", 0), ("K5-2-1b", "K5-2", 0), ("C222", "C2221", 0)];
    for (f, s, j) in pairs {
        let r = gysin_rank(&named_cone(f).unwrap(), &named_cone(s).unwrap(), j).unwrap();
        assert_eq!((r.source_dim, r.target_dim, r.rank), (1, 1, 1), "{f} in {s}");
        assert_eq!(r.gamma_source_dim, r.source_dim, "{f} in {s}");
        assert_eq!(r.gamma_target_dim, r.target_dim, "{f} in {s}");
    }
    // The orbit of K33 has no invariant H^1, so nothing is hit from Pi2.
    let r = gysin_rank(&named_cone("K33").unwrap(), &named_cone("Pi2").unwrap(), 0).unwrap();
    assert_eq!((r.target_dim, r.rank), (0, 0));
}

#[test]
fn connecting_map_ignores_section_choice() {
    let f = named_cone("C5").unwrap();
    let s = named_cone("C321").unwrap();
    for phi in [[1i64, 0, 0, 0], [2, -1, 3, 5], [0, 0, 0, -7]] {
        let phi: Vec<BigRational> = phi.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        for j in 0..=4 {
            let a = gysin_rank(&f, &s, j).unwrap();
            let b = gysin_rank_with(&f, &s, j, Some(&phi)).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn non_facets_rejected() {
    let c5 = named_cone("C5").unwrap();
    let pi2 = named_cone("Pi2").unwrap();
    assert!(matches!(gysin_rank(&c5, &pi2, 0), Err(TorusError::NotFacet(..))));
    let k33 = named_cone("K33").unwrap();
    let c321 = named_cone("C321").unwrap();
    assert!(matches!(gysin_rank(&k33, &c321, 0), Err(TorusError::NotFacet(..))));
}
