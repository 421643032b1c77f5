use exact_linalg::exterior::*;
use exact_linalg::{rat, RatMatrix};
use num_rational::BigRational;
use proptest::prelude::*;

fn mat(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-3i64..=3, n * n).prop_map(move |d| {
        let rows: Vec<Vec<i64>> = d.chunks(n).map(|c| c.to_vec()).collect();
        RatMatrix::from_i64_rows(&rows)
    })
}

#[test]
fn subset_counts() {
    assert_eq!(subsets(9, 4).len(), 126);
    assert_eq!(subsets(5, 0), vec![0]);
    assert_eq!(subsets(3, 2), vec![0b011, 0b101, 0b110]);
}

#[test]
fn anticommutation() {
    let a = Wedge::generator(0);
    let b = Wedge::generator(1);
    assert_eq!(a.wedge(&b), b.wedge(&a).scale(&rat(-1, 1)));
    assert!(a.wedge(&a).is_zero());
    let ab = a.wedge(&b);
    let c = Wedge::generator(2);
    assert_eq!(ab.wedge(&c), c.wedge(&ab));
}

#[test]
fn render_uses_names() {
    let names: Vec<String> = ["f1", "f2", "Q"].iter().map(|s| s.to_string()).collect();
    let w = Wedge::generator(0).wedge(&Wedge::generator(1)).scale(&rat(2, 1)).sub(&Wedge::generator(2));
    assert_eq!(w.render(&names), "2 f1^f2 - Q");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn exterior_power_is_multiplicative(a in mat(4), b in mat(4), k in 0usize..=4) {
        let lhs = exterior_power(&a.mul(&b), k);
        let rhs = exterior_power(&a, k).mul(&exterior_power(&b, k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn top_power_is_determinant(a in mat(4)) {
        let top = exterior_power(&a, 4);
        let ints: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| a.get(i, j).to_integer().try_into().unwrap()).collect()).collect();
        let det = exact_linalg::IntMatrix::from_rows(&ints).det();
        prop_assert_eq!(top.get(0, 0).clone(), BigRational::from_integer(det));
    }

    #[test]
    fn derivation_satisfies_leibniz(
        x in proptest::collection::vec(-2i64..=2, 5),
        y in proptest::collection::vec(-2i64..=2, 5),
        z in proptest::collection::vec(-2i64..=2, 5),
    ) {
        // Generators 0..3 are odd base classes, 3 and 4 map to 2-forms.
        let c3 = Wedge::generator(0).wedge(&Wedge::generator(1));
        let c4 = Wedge::generator(1).wedge(&Wedge::generator(2)).scale(&rat(3, 1));
        let images = vec![None, None, None, Some(c3), Some(c4)];
        let a = Wedge::vector_i64(&x);
        let b = Wedge::vector_i64(&y).wedge(&Wedge::vector_i64(&z));
        let lhs = a.wedge(&b).derive(&images);
        let rhs = a.derive(&images).wedge(&b).sub(&a.wedge(&b.derive(&images)));
        prop_assert_eq!(lhs, rhs);
    }
}
