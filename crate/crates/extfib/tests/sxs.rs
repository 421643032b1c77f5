use extfib::rank2::*;
use extfib::{span_rank, BigradedAlg};

#[test]
fn square_of_abelian_surface() {
    let r = rank2_suite();
    let inv: Vec<usize> = r.sxs.iter().map(|row| row.invariant).collect();
    let plus: Vec<usize> = r.sxs.iter().map(|row| row.kappa_invariant).collect();
    assert_eq!(inv, vec![1, 0, 12, 0, 38, 0, 12, 0, 1]);
    assert_eq!(plus, vec![1, 0, 6, 0, 22, 0, 6, 0, 1]);
    assert_eq!(r.discr_dims, vec![1, 0, 6, 0, 21, 0, 6, 0, 1]);
    assert_eq!(r.discr_dims_transposed, r.discr_dims);
}

#[test]
fn fibre_sequence_of_the_poincare_bundle() {
    let r = rank2_suite();
    assert_eq!(r.e2_row0, vec![1, 0, 6, 0, 22, 0, 6, 0, 1]);
    assert_eq!(r.e2_row1, vec![0, 0, 6, 0, 16, 0, 6, 0, 0]);
    let ranks: Vec<_> = r.fibre_sequence.entries.iter().map(|e| (e.p, e.q, e.rank)).collect();
    assert_eq!(ranks, vec![(2, 1, 6), (4, 1, 6), (6, 1, 1)]);
    assert_eq!(r.einf_row0, vec![1, 0, 6, 0, 16, 0, 0, 0, 0]);
    assert_eq!(r.einf_row1, vec![0, 0, 0, 0, 10, 0, 5, 0, 0]);
    assert!(r.fibre_sequence.degenerates_at_e3);
}

#[test]
fn v_classes_and_delta2() {
    let r = rank2_suite();
    assert!(r.v_is_basis);
    assert_eq!(r.v_fixed_by_transposed_i3, 0);
    assert!(r.delta2_matches_printed);
    assert_eq!((r.delta2_image_rank, r.e2_61_dim), (6, 6));
    assert_eq!((r.h7_dim, r.residue_rank), (5, 5));
    assert!(r.delta2_surjective);
}

#[test]
fn representation_labels() {
    let r = rank2_suite();
    let dims: Vec<usize> = r.label_dims.iter().map(|(_, d)| *d).collect();
    assert_eq!(dims, vec![5, 10, 14]);
}

#[test]
fn surface_poincare_class() {
    let a = BigradedAlg::new(8, &[]);
    assert_eq!(poincare_class_surface(), a.parse("f2^f5 - f1^f6 + f4^f7 - f3^f8").unwrap());
    // i3 and its transpose generate different actions.
    assert_ne!(i3(), i3_transposed());
    let g = closure(&[i1(), i2(), iota()]);
    assert_eq!(g.len(), 8);
    assert_eq!(span_rank(&v_basis().into_iter().map(|(_, v)| v).collect::<Vec<_>>()), 6);
}
