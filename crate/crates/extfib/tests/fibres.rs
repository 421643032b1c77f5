use exact_linalg::exterior::Wedge;
use exact_linalg::BigRational;
use extfib::*;
use proptest::prelude::*;

fn model(name: &str) -> FibreModel {
    fibre_model(name).unwrap()
}

fn w(m: &FibreModel, s: &str) -> Wedge {
    m.alg.parse(s).unwrap()
}

/// Checks the action of the substitution `x ↦ P x` generator by generator.
fn assert_action(m: &FibreModel, p: [[i64; 3]; 3], base: [&str; 6], fibre: &[&str]) {
    let a = action_from_glz(&substitution(&p), &m.cone, &m.chars).unwrap();
    for (i, img) in base.iter().enumerate() {
        assert_eq!(a.apply(&m.alg.f(i + 1)), w(m, img), "{}: image of f{}", m.name, i + 1);
    }
    for (name, img) in m.alg.fiber_names().iter().zip(fibre) {
        assert_eq!(a.apply(&m.alg.q(name)), w(m, img), "{}: image of {name}", m.name);
    }
}

const NEG: [[i64; 3]; 3] = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]];
const ALL_NEG: [&str; 6] = ["-f1", "-f2", "-f3", "-f4", "-f5", "-f6"];

#[test]
fn sigma_i_generator_actions() {
    let m = model("sigmaI");
    assert_action(&m, [[1, 0, 0], [0, 1, -1], [0, 0, -1]], ["f1", "f2", "f3", "f4", "-f3 - f5", "-f4 - f6"], &[
        "-Q2 - Q3", "Q3",
    ]);
    assert_action(&m, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]], ["-f1", "-f2", "f3", "f4", "f5", "f6"], &["-Q2", "-Q3"]);
    assert_action(&m, [[1, 0, 0], [0, 0, 1], [0, 1, 0]], ["f1", "f2", "f5", "f6", "f3", "f4"], &["Q3", "Q2"]);
    assert_action(&m, NEG, ALL_NEG, &["Q2", "Q3"]);
}

#[test]
fn sigma_ii_generator_actions() {
    let m = model("sigmaII");
    assert_action(&m, NEG, ALL_NEG, &["Q3", "R"]);
    assert_action(&m, [[0, 1, 0], [1, 0, 0], [1, 1, -1]], ["f3 + f5", "f4 + f6", "f1 + f5", "f2 + f6", "-f5", "-f6"], &[
        "Q3 - R", "-R",
    ]);
    assert_action(&m, [[1, 0, -1], [0, -1, 0], [0, 0, -1]], ["f1", "f2", "-f3", "-f4", "-f1 - f5", "-f2 - f6"], &[
        "-Q3", "-Q3 + R",
    ]);
    assert_action(
        &m,
        [[0, -1, 1], [0, -1, 0], [1, -1, 0]],
        ["f5", "f6", "-f1 - f3 - f5", "-f2 - f4 - f6", "f1", "f2"],
        &["R", "Q3"],
    );
}

#[test]
fn sigma5_generator_actions() {
    let m = model("sigma5");
    assert_action(&m, NEG, ALL_NEG, &["Q3"]);
    assert_action(&m, [[0, 1, 0], [1, 0, 0], [0, 0, 1]], ["f3", "f4", "f1", "f2", "f5", "f6"], &["Q3"]);
    assert_action(
        &m,
        [[1, 0, -1], [0, 1, -1], [0, 0, -1]],
        ["f1", "f2", "f3", "f4", "-f1 - f3 - f5", "-f2 - f4 - f6"],
        &["Q3"],
    );
    assert_action(&m, [[1, 0, -1], [0, -1, 0], [0, 0, -1]], ["f1", "f2", "-f3", "-f4", "-f1 - f5", "-f2 - f6"], &[
        "-Q3",
    ]);
}

#[test]
fn sigma3_permutations_and_sign_changes() {
    let m = model("sigma3");
    assert_action(&m, [[0, 1, 0], [1, 0, 0], [0, 0, 1]], ["f3", "f4", "f1", "f2", "f5", "f6"], &["Q2", "Q1", "Q3"]);
    assert_action(&m, [[1, 0, 0], [0, 0, 1], [0, 1, 0]], ["f1", "f2", "f5", "f6", "f3", "f4"], &["Q1", "Q3", "Q2"]);
    assert_action(&m, [[-1, 0, 0], [0, 1, 0], [0, 0, 1]], ["-f1", "-f2", "f3", "f4", "f5", "f6"], &["Q1", "-Q2", "-Q3"]);
    assert_action(&m, [[1, 0, 0], [0, 1, 0], [0, 0, -1]], ["f1", "f2", "f3", "f4", "-f5", "-f6"], &["-Q1", "-Q2", "Q3"]);
}

#[test]
fn non_stabilizing_matrix_is_rejected() {
    let m = model("sigmaI");
    let u = substitution(&[[1, 1, 0], [0, 1, 0], [0, 0, 1]]);
    assert!(matches!(action_from_glz(&u, &m.cone, &m.chars), Err(ExtError::NotStabilizing(_))));
    let singular = substitution(&[[2, 0, 0], [0, 1, 0], [0, 0, 1]]);
    assert_eq!(action_from_glz(&singular, &m.cone, &m.chars), Err(ExtError::NotUnimodular));
}

#[test]
fn characters_must_span_the_saturated_lattice() {
    let m = model("sigmaI");
    let doubled = vec![m.chars[0].iter().map(|x| 2 * x).collect(), m.chars[1].clone()];
    let id = substitution(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    assert_eq!(action_from_glz(&id, &m.cone, &doubled), Err(ExtError::CharacterOutsideSpan));
    assert_eq!(action_from_glz(&id, &m.cone, &m.chars[..1]), Err(ExtError::CharacterOutsideSpan));
}

#[test]
fn stabilizer_orders() {
    let orders: Vec<usize> = fibre_model_names().iter().map(|n| model(n).group.order()).collect();
    assert_eq!(orders, vec![48, 24, 48, 16, 48]);
}

fn dims(inv: &InvariantTable) -> Vec<((usize, usize), usize)> {
    inv.iter().map(|(k, v)| (*k, v.len())).collect()
}

#[test]
fn sigma3_invariant_table() {
    let m = model("sigma3");
    let inv = invariants_bigraded(&m);
    assert_eq!(dims(&inv), vec![
        ((0, 0), 1),
        ((2, 0), 1),
        ((2, 1), 1),
        ((2, 2), 3),
        ((4, 0), 1),
        ((4, 1), 1),
        ((4, 2), 3),
        ((6, 0), 1)
    ]);
    let q = ["Q1", "Q2", "Q3"];
    let mut h21 = Wedge::zero();
    let mut h41 = Wedge::zero();
    let mut w22 = vec![Wedge::zero(); 3];
    let mut w42 = vec![Wedge::zero(); 3];
    for (i, j, k) in [(1, 2, 3), (1, 3, 2), (2, 3, 1)] {
        let f = |n: usize| m.alg.f(n);
        let top = f(2 * k - 1).wedge(&f(2 * k));
        let c = f(2 * i - 1).wedge(&f(2 * j)).sub(&f(2 * i).wedge(&f(2 * j - 1)));
        h21 = h21.add(&m.alg.q(q[k - 1]).wedge(&c));
        h41 = h41.add(&m.alg.q(q[k - 1]).wedge(&c).wedge(&top));
        let ws = [
            f(2 * i - 1).wedge(&f(2 * j)).add(&f(2 * i).wedge(&f(2 * j - 1))),
            f(2 * i - 1).wedge(&f(2 * j - 1)),
            f(2 * i).wedge(&f(2 * j)),
        ];
        let qq = m.alg.q(q[i - 1]).wedge(&m.alg.q(q[j - 1]));
        for (n, x) in ws.iter().enumerate() {
            w22[n] = w22[n].add(&qq.wedge(x));
            w42[n] = w42[n].add(&qq.wedge(x).wedge(&top));
        }
    }
    for (key, printed) in [((2, 1), vec![h21]), ((4, 1), vec![h41]), ((2, 2), w22), ((4, 2), w42)] {
        for x in &printed {
            assert!(m.is_invariant(x), "{key:?}");
        }
        assert_eq!(span_rank(&printed), inv[&key].len());
        assert!(printed.iter().all(|x| in_span(&inv[&key], x)), "{key:?}");
    }
    assert_eq!(inv[&(2, 0)], vec![w(&m, "f1^f2 + f3^f4 + f5^f6")]);
}

#[test]
fn sigma3_differentials() {
    let m = model("sigma3");
    let d = chern_d2(&m, &invariants_bigraded(&m));
    assert_eq!((d.rank(2, 1), d.rank(4, 1), d.rank(2, 2), d.rank(4, 2)), (1, 1, 0, 0));
    assert_eq!(d.e3, vec![(0, 0, 1), (2, 0, 1), (2, 2, 3), (4, 2, 3)]);
    assert!(d.degenerates_at_e3);
}

#[test]
fn sigma_i_invariants_and_differentials() {
    let m = model("sigmaI");
    let inv = invariants_bigraded(&m);
    assert_eq!(dims(&inv), vec![
        ((0, 0), 1),
        ((2, 0), 2),
        ((2, 1), 4),
        ((2, 2), 3),
        ((4, 0), 2),
        ((4, 1), 4),
        ((4, 2), 3),
        ((6, 0), 1)
    ]);
    let i1 = w(&m, "f1^f2");
    let i2 = w(&m, "2 f3^f4 + 2 f5^f6 + f3^f6 + f5^f4");
    assert!(in_span(&inv[&(2, 0)], &i1) && in_span(&inv[&(2, 0)], &i2));
    let e40 = [i1.wedge(&i2), i2.wedge(&i2)];
    assert_eq!(span_rank(&e40), 2);
    assert!(e40.iter().all(|x| in_span(&inv[&(4, 0)], x)));
    let gs: Vec<Wedge> = g_basis(&m).into_iter().map(|(_, g)| g).collect();
    assert_eq!(span_rank(&gs), 4);
    assert!(gs.iter().all(|g| in_span(&inv[&(2, 1)], g)));
    let gi: Vec<Wedge> = gs.iter().map(|g| g.wedge(&i2)).collect();
    assert_eq!(span_rank(&gi), 4);
    assert!(gi.iter().all(|g| in_span(&inv[&(4, 1)], g)));
    let e22 = [
        w(&m, "Q2^Q3^f3^f5"),
        w(&m, "Q2^Q3^f3^f6 + Q2^Q3^f4^f5"),
        w(&m, "Q2^Q3^f4^f6"),
    ];
    assert!(e22.iter().all(|x| in_span(&inv[&(2, 2)], x)));
    // E^{4,2} is E^{2,2} ∧ I1, three-dimensional.
    let e42: Vec<Wedge> = e22.iter().map(|x| x.wedge(&i1)).collect();
    assert_eq!(span_rank(&e42), 3);
    assert!(e42.iter().all(|x| in_span(&inv[&(4, 2)], x)));

    let subst = chern_substitution(&m);
    assert_eq!(subst[6], Some(w(&m, "-f1^f6 - f5^f2")));
    assert_eq!(subst[7], Some(w(&m, "-f1^f4 - f3^f2")));
    let d = chern_d2(&m, &inv);
    assert_eq!((d.rank(2, 1), d.rank(2, 2), d.rank(4, 1)), (1, 3, 1));
    assert_eq!(d.e3, vec![(0, 0, 1), (2, 0, 2), (2, 1, 3), (4, 0, 1), (4, 2, 3)]);
}

/// Compactly supported Betti numbers of the σ_I fibre, by duality from `E_3`.
#[test]
fn sigma_i_fibre_compact_support() {
    let m = model("sigmaI");
    let d = chern_d2(&m, &invariants_bigraded(&m));
    let h = d.total_dims();
    let hc: Vec<(usize, usize)> = (0..=10).rev().filter_map(|k| h.get(10 - k).filter(|&&x| x > 0).map(|&x| (k, x))).collect();
    assert_eq!(hc, vec![(10, 1), (8, 2), (7, 3), (6, 1), (4, 3)]);
}

#[test]
fn sigma_ii_invariants_and_chern_classes() {
    let m = model("sigmaII");
    let inv = invariants_bigraded(&m);
    assert_eq!(dims(&inv), vec![((0, 0), 1), ((2, 0), 1), ((2, 1), 1), ((4, 0), 1), ((4, 1), 1), ((6, 0), 1)]);
    let phi = w(&m, "f1^f6 + f3^f6 + f5^f6 + f5^f2 + f5^f4 + f5^f6");
    let psi = w(&m, "f1^f4 + f3^f2");
    let two = BigRational::from_integer(2.into());
    let three = BigRational::from_integer(3.into());
    let i1 = w(&m, "f1^f2 + f3^f4").scale(&three).add(&phi.scale(&two)).add(&psi);
    assert_eq!(inv[&(2, 0)], vec![i1.clone()]);
    let i2 = m
        .alg
        .q("R")
        .wedge(&phi.scale(&two).add(&psi))
        .scale(&BigRational::from_integer((-1).into()))
        .add(&m.alg.q("Q3").wedge(&phi.add(&psi.scale(&two))));
    assert!(m.is_invariant(&i2));
    assert!(in_span(&inv[&(2, 1)], &i2));
    assert!(in_span(&inv[&(4, 0)], &i1.wedge(&i1)));
    assert!(in_span(&inv[&(4, 1)], &i2.wedge(&i1)));

    // The bundle is p12^*P ⊕ q^*(P^{-1}) with q(x,y,z) = (x+y+z, z).
    let c1 = poincare_class(&Wedge::generator(0).wedge(&Wedge::generator(1)), 2);
    let p12 = elliptic_pullback(&[vec![1, 0, 0], vec![0, 1, 0]], 3, &c1);
    let q = elliptic_pullback(&[vec![1, 1, 1], vec![0, 0, 1]], 3, &c1);
    let subst = chern_substitution(&m);
    assert_eq!(subst[6], Some(psi.scale(&BigRational::from_integer((-1).into()))));
    assert_eq!(subst[6], Some(p12));
    assert_eq!(subst[7], Some(phi.clone()));
    assert_eq!(subst[7], Some(q.scale(&BigRational::from_integer((-1).into()))));

    let d = chern_d2(&m, &inv);
    assert_eq!((d.rank(2, 1), d.rank(4, 1)), (1, 1));
    let e = phi.wedge(&phi.scale(&two).add(&psi)).add(&psi.wedge(&psi.scale(&two).add(&phi)));
    assert!(!e.is_zero() && !e.wedge(&i1).is_zero());
}

#[test]
fn sigma5_invariants_and_differentials() {
    let m = model("sigma5");
    let inv = invariants_bigraded(&m);
    assert_eq!(dims(&inv), vec![((0, 0), 1), ((2, 0), 2), ((2, 1), 1), ((4, 0), 2), ((4, 1), 1), ((6, 0), 1)]);
    let i1 = w(&m, "f1^f2 + f3^f4");
    let i2 = w(&m, "f1^f4 + f3^f2 + 2 f1^f6 + 2 f3^f6 + 2 f5^f6 + 2 f5^f2 + 2 f5^f4 + 2 f5^f6");
    assert!(in_span(&inv[&(2, 0)], &i1) && in_span(&inv[&(2, 0)], &i2));
    let psi = w(&m, "f1^f4 + f3^f2");
    let h21 = m.alg.q("Q3").wedge(&psi);
    assert!(in_span(&inv[&(2, 1)], &h21));
    assert!(in_span(&inv[&(4, 1)], &h21.wedge(&i2)));
    let d2 = h21.derive(&chern_substitution(&m));
    assert_eq!(d2, w(&m, "2 f1^f2^f3^f4"));
    let d = chern_d2(&m, &inv);
    assert_eq!((d.rank(2, 1), d.rank(4, 1)), (1, 1));
}

#[test]
fn sigma6_invariants() {
    let m = model("sigma6");
    let inv = invariants_bigraded(&m);
    assert_eq!(dims(&inv), vec![((0, 0), 1), ((2, 0), 1), ((4, 0), 1), ((6, 0), 1)]);
    let v = w(&m, "2 f1^f2 + 2 f3^f4 + 2 f5^f6 + f1^f4 + f3^f6 + f5^f2 + f1^f6 + f3^f2 + f5^f4");
    assert_eq!(inv[&(2, 0)], vec![v]);
    assert!(chern_d2(&m, &inv).entries.is_empty());
}

#[test]
fn poincare_class_on_e_times_e() {
    let c1 = poincare_class(&Wedge::generator(0).wedge(&Wedge::generator(1)), 2);
    let a = BigradedAlg::new(4, &[]);
    assert_eq!(c1, a.parse("f2^f3 - f1^f4").unwrap());
    let diag = character_class(3, &[-1, 0, 0, 0, 0, 0]);
    assert_eq!(diag, BigradedAlg::new(6, &[]).parse("-2 f1^f2").unwrap());
}

#[test]
fn euler_characteristic_survives_d2() {
    for n in fibre_model_names() {
        let m = model(n);
        let inv = invariants_bigraded(&m);
        let d = chern_d2(&m, &inv);
        let sign = |p: usize, q: usize| if (p + q) % 2 == 0 { 1i64 } else { -1 };
        let e2: i64 = inv.iter().map(|(&(p, q), b)| sign(p, q) * b.len() as i64).sum();
        let e3: i64 = d.e3.iter().map(|&(p, q, x)| sign(p, q) * x as i64).sum();
        assert_eq!(e2, e3, "{n}");
        assert!(d.degenerates_at_e3, "{n}");
    }
}

#[test]
fn contragredient_action_has_the_same_invariant_dimensions() {
    for n in fibre_model_names() {
        let m = model(n);
        let dual: Vec<FibAction> = m.generator_actions.iter().map(FibAction::contragredient).collect();
        assert_eq!(dims(&invariants_bigraded(&m)), dims(&invariant_table(&m.alg, &dual)), "{n}");
    }
}

#[test]
fn beta3_boundary_is_surjective() {
    let b = beta3_gysin_rank().unwrap();
    assert_eq!((b.source_dim, b.target_dim, b.rank), (4, 3, 3));
    assert!(b.surjective && b.g_is_basis && b.matches_printed);
    assert_eq!(b.printed_scale.as_deref(), Some("-1/2"));
}

#[test]
fn sp_dimensions() {
    assert_eq!(sp_dim(2, &[]).unwrap(), 1);
    assert_eq!(sp_dim(1, &[2]).unwrap(), 3);
    assert_eq!(sp_dim(2, &[1, 1]).unwrap(), 5);
    assert_eq!(sp_dim(2, &[2, 0]).unwrap(), 10);
    assert_eq!(sp_dim(2, &[2, 2]).unwrap(), 14);
    assert_eq!(sp_dim(3, &[1, 1, 0]).unwrap(), 14);
    assert_eq!(sp_dim(3, &[1, 0, 0]).unwrap(), 6);
    assert!(sp_dim(2, &[1, 2]).is_err());
    assert!(sp_dim(2, &[1, 1, 1]).is_err());
    assert!(sp_dim(0, &[]).is_err());
}

#[test]
fn parse_render_roundtrip() {
    let m = model("sigma3");
    for s in ["3 f1^f2 - 2/3 Q2^f3 + f4", "f1^f2^f3^f4^f5^f6", "-Q1^Q2^Q3"] {
        let x = w(&m, s);
        assert_eq!(w(&m, &m.alg.render(&x)), x);
    }
    assert!(m.alg.parse("f9").is_err());
    assert!(m.alg.parse("Q7^f1").is_err());
}

fn word_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..n, 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn action_reverses_products(name in prop::sample::select(fibre_model_names().to_vec()), a in word_strategy(8), b in word_strategy(8)) {
        let m = model(name);
        let gens = m.group.generators();
        let prod = |word: &[usize]| word.iter().fold(exact_linalg::IntMatrix::identity(3), |acc, &i| &acc * &gens[i % gens.len()]);
        let (u1, u2) = (prod(&a), prod(&b));
        let act = |u: &exact_linalg::IntMatrix| action_from_glz(u, &m.cone, &m.chars).unwrap();
        prop_assert_eq!(act(&(&u1 * &u2)), act(&u2).compose(&act(&u1)));
    }

    #[test]
    fn chern_classes_are_equivariant(name in prop::sample::select(fibre_model_names().to_vec()), k in 0usize..48, coeffs in prop::collection::vec(-3i64..=3, 20)) {
        let m = model(name);
        let a = &m.actions[k % m.actions.len()];
        let subst = chern_substitution(&m);
        let basis = m.alg.basis(2, m.alg.fiber_len().min(1));
        let v: Vec<BigRational> = basis.iter().zip(coeffs.iter().cycle()).map(|(_, &c)| BigRational::from_integer(c.into())).collect();
        let x = Wedge::from_coords(&basis, &v);
        prop_assert_eq!(a.apply(&x.derive(&subst)), a.apply(&x).derive(&subst));
    }

    #[test]
    fn reynolds_lands_in_invariants(name in prop::sample::select(fibre_model_names().to_vec()), coeffs in prop::collection::vec(-2i64..=2, 15)) {
        let m = model(name);
        let basis = m.alg.basis(2, 0);
        let v: Vec<BigRational> = basis.iter().zip(coeffs.iter().cycle()).map(|(_, &c)| BigRational::from_integer(c.into())).collect();
        let r = m.reynolds(&Wedge::from_coords(&basis, &v));
        prop_assert!(m.is_invariant(&r));
        prop_assert_eq!(m.reynolds(&r), r);
    }
}
