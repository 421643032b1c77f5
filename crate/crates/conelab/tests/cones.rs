use conelab::*;
use exact_linalg::{elementary_divisors, rank_and_kernel};
use num_bigint::BigInt;
use num_traits::One;
use symquad::{central_e, rank1_i64, QuadForm};

fn cone(name: &str) -> Cone {
    named_cone(name).unwrap()
}

#[test]
fn dimensions() {
    assert_eq!(cone("Pi2").dim(), 10);
    assert_eq!(cone("Pi1").dim(), 10);
    assert_eq!(cone("sigma5").dim(), 5);
    assert_eq!(cone("e").dim(), 1);
    assert_eq!(cone("K33").dim(), 9);
    let (r, _) = rank_and_kernel(&cone("Pi1").coord_matrix().to_rat());
    assert_eq!(r, 10);
    let (r, k) = rank_and_kernel(&cone("K33").coord_matrix().transpose().to_rat());
    assert_eq!((r, k.len()), (9, 0));
}

#[test]
fn elementary_divisors_of_generator_matrices() {
    let d = elementary_divisors(&cone("sigma3").coord_matrix());
    assert_eq!(d, vec![BigInt::one(); 3]);
    // The twelve generators of the second perfect cone span the whole
    // lattice; the cone fails to be basic only because 12 > 10.
    let pi2 = cone("Pi2");
    let d = elementary_divisors(&pi2.coord_matrix());
    assert_eq!(d, vec![BigInt::one(); 10]);
    assert_eq!(pi2.gens().len(), 12);
}

#[test]
fn basicness() {
    assert!(cone("Pi1").is_basic());
    assert!(!cone("Pi2").is_basic());
    let lat = cone("Pi2").faces().unwrap();
    let nine = lat.faces_of_dim(9);
    assert!(!nine.is_empty());
    assert!(nine.iter().all(Cone::is_basic));
}

#[test]
fn interior_ranks() {
    assert_eq!(cone("sigma3").interior_rank().unwrap(), 3);
    assert_eq!(cone("Pi1").interior_rank().unwrap(), 4);
    let single = Cone::from_vectors(4, &[vec![1, 0, 0, 0]], "x1").unwrap();
    assert_eq!(single.interior_rank().unwrap(), 1);
    let bad = Cone::new(2, vec![QuadForm::from_rows(&[[1, 0], [0, -1]]).unwrap()], None).unwrap();
    assert!(matches!(bad.interior_rank(), Err(ConeError::NotPsd(_))));
}

#[test]
fn perp_lattices() {
    assert_eq!(cone("e").perp_lattice().len(), 9);
    assert_eq!(cone("sigma6").perp_lattice().len(), 0);
    assert_eq!(cone("Pi1").perp_lattice().len(), 0);
    assert_eq!(cone("K33").perp_lattice().len(), 1);
}

#[test]
fn simplicial_faces() {
    let lat = cone("sigma3").faces().unwrap();
    assert_eq!(lat.len(), 8);
    assert_eq!(lat.f_vector(), vec![1, 3, 3, 1]);
    assert_eq!(lat.facet_count(), 3);
}

#[test]
fn genus_three_cones_are_faces_of_the_top_cone() {
    let lat = cone("sigma6").faces().unwrap();
    let faces: Vec<Cone> = (0..lat.len()).map(|i| lat.face(i)).collect();
    for name in ["sigma3", "sigmaI", "sigmaII", "sigma5"] {
        let c = cone(name);
        assert!(
            faces.iter().any(|f| f.sorted_coords() == c.sorted_coords()),
            "{name} is a face"
        );
    }
}

#[test]
fn redundant_generators_are_rejected() {
    let gens = vec![
        rank1_i64(&[1, 0]).unwrap(),
        rank1_i64(&[0, 1]).unwrap(),
        QuadForm::from_coords_i64(2, &[1, 1, 0]).unwrap(),
    ];
    assert!(matches!(Cone::new(2, gens, None), Err(ConeError::NotExtremal(_))));
    let twice = QuadForm::from_coords_i64(2, &[2, 0, 0]).unwrap();
    assert!(matches!(Cone::new(2, vec![twice], None), Err(ConeError::NotPrimitive(_))));
}

#[test]
fn face_lattice_invariants() {
    for name in ["Pi1", "Pi2", "K33", "C321", "sigma6"] {
        let c = cone(name);
        let lat = c.faces().unwrap();
        let top = lat.len() - 1;
        assert_eq!(lat.dims()[top], c.dim());
        assert_eq!(lat.masks()[0], 0);
        for i in 0..lat.len() {
            let f = lat.face(i);
            assert!(c.contains_generator_set(&f));
            assert!(i == top || f.dim() < c.dim());
            // Perp of a face contains the perp of the cone, saturated.
            let pf = f.perp_lattice();
            let pc = c.perp_lattice();
            assert_eq!(pf.len(), symquad::sym_dim(c.genus()) - f.dim());
            for v in &pc {
                let coeffs = f.coord_matrix().apply(v);
                assert!(coeffs.iter().all(|x| x == &BigInt::from(0)));
            }
            if !f.gens().is_empty() {
                assert!(f.interior_rank().unwrap() <= c.interior_rank().unwrap());
            }
            for j in 0..lat.len() {
                if lat.is_face_of(i, j) && i != j {
                    let inter = lat.masks()[i] & lat.masks()[j];
                    assert_eq!(inter, lat.masks()[i]);
                }
            }
        }
        // Closed under intersection.
        let masks: std::collections::BTreeSet<u32> = lat.masks().iter().copied().collect();
        for &a in lat.masks() {
            for &b in lat.masks() {
                assert!(masks.contains(&(a & b)));
            }
        }
    }
}

#[test]
fn star_of_e_consists_of_e_cones() {
    let star = star_of_e();
    let pi2_faces = cone("Pi2").faces().unwrap().len();
    assert_eq!(star.len(), pi2_faces - 1);
    let e = central_e();
    for c in &star {
        assert_eq!(c.gens().last(), Some(&e));
        assert_eq!(c.dim(), c.gens().len());
        assert_eq!(c.interior_rank().unwrap(), 4);
        assert!(c.is_basic());
    }
    assert!(star.iter().any(|c| c.gens().len() == 1));
}

#[test]
fn json_roundtrip() {
    let c = cone("C5");
    let j = serde_json::to_string(&ConeJson::from(&c)).unwrap();
    let back: ConeJson = serde_json::from_str(&j).unwrap();
    assert_eq!(back.to_cone().unwrap().sorted_coords(), c.sorted_coords());
}
