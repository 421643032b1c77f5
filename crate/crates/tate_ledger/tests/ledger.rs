use std::collections::BTreeMap;
use std::sync::OnceLock;

use tate_ledger::*;

fn ledger() -> &'static Ledger {
    static L: OnceLock<Ledger> = OnceLock::new();
    L.get_or_init(|| Ledger::build(&ConstantStore::standard()).unwrap())
}

fn c(s: &str) -> Coeff {
    parse_coeff(s).unwrap()
}

fn cell(s: &str) -> Cell {
    s.parse().unwrap()
}

/// Betti numbers at the listed degrees, all others zero.
fn assert_betti(a: &Assembly, degrees: &[i64], values: &[&str]) {
    let b = a.betti().unwrap();
    let want: BTreeMap<i64, Coeff> = degrees.iter().zip(values).map(|(k, v)| (*k, c(v))).collect();
    assert_eq!(b, want, "{}", a.name);
}

fn even<'a>(values: &[&'a str]) -> (Vec<i64>, Vec<&'a str>) {
    let d: Vec<i64> = (0..values.len() as i64).map(|k| 2 * k).collect();
    (d, values.to_vec())
}

#[test]
fn perfect_rank_four_stratum() {
    let a = &ledger().beta4_perf;
    let (d, v) = even(&["1", "1", "1", "4", "4", "3", "1"]);
    assert_betti(a, &d, &v);
    // Degree 6 mixes three weight-6 classes with one of weight 2.
    assert_eq!(a.row.get(6), cell("Q(-3)^3 + Q(-1)"));
    assert_eq!(a.row.get(6).tag(), Tag::GradedPiece);
    for k in [0, 2, 4, 8, 10, 12] {
        assert!(a.row.get(k).is_pure_of_weight(k), "degree {k}");
    }
}

#[test]
fn perfect_page_matches_printed_e1() {
    let run = ledger().beta4_perf.main_run().unwrap();
    let e1 = run.page(1).unwrap();
    let want = [
        ((0, 0), "Q^2"),
        ((1, 0), "Q"),
        ((1, 1), "Q(-1)^2"),
        ((2, 1), "Q(-1)"),
        ((2, 2), "Q(-2)^2"),
        ((3, 2), "Q(-2)"),
        ((3, 3), "Q(-3)^4"),
        ((4, 0), "Q"),
        ((4, 3), "Q(-3)"),
        ((4, 4), "Q(-4)^4"),
        ((5, 0), "Q"),
        ((5, 1), "Q(-1)"),
        ((5, 5), "Q(-5)^3"),
        ((6, 6), "Q(-6)"),
    ];
    let want: Terms = want.iter().map(|(k, s)| (*k, cell(s))).collect();
    assert_eq!(e1, &want);
    // Exactly the five connecting maps are nonzero, each of rank one and computed.
    let nonzero: Vec<_> = run.ranks.iter().filter(|r| r.rank > 0).collect();
    assert_eq!(nonzero.len(), 5);
    for r in &nonzero {
        assert_eq!((r.r, r.rank), (1, 1));
        assert!(matches!(r.provenance, Provenance::Computed(_)));
    }
    let froms: Vec<_> = nonzero.iter().map(|r| r.from).collect();
    assert_eq!(froms, vec![(0, 0), (1, 1), (2, 2), (3, 3), (4, 0)]);
}

#[test]
fn zero_differentials_keep_the_euler_characteristic() {
    let page = tate_ledger::assemble::beta4_perf_page().unwrap();
    let a = page.run().unwrap();
    let b = page.without_differentials().run().unwrap();
    assert_eq!(a.abutment().euler().unwrap(), b.abutment().euler().unwrap());
    assert_ne!(a.abutment(), b.abutment());
}

#[test]
fn exceptional_divisor() {
    let a = &ledger().e_divisor;
    let (d, v) = even(&["1", "1", "2", "3", "3", "3", "3", "2", "1", "1"]);
    assert_betti(a, &d, &v);
    let b = a.betti().unwrap();
    assert!(is_poincare_symmetric(&b, 9));
    let total: i64 = b.values().map(|x| x.as_int().unwrap()).sum();
    assert_eq!(total, 20);
    let poly = tate_ledger::assemble::e_divisor_polynomial().unwrap();
    assert_eq!(poly, "L^9+L^8+2L^7+3L^6+3L^5+3L^4+3L^3+2L^2+L+1".parse().unwrap());
}

#[test]
fn negative_coefficients_violate_purity() {
    let p: TatePoly = "L^2-L".parse().unwrap();
    assert!(matches!(pure_row(&p), Err(LedgerError::Purity(_))));
}

#[test]
fn voronoi_rank_four_stratum() {
    let a = &ledger().beta4;
    let (d, v) = even(&["1", "2", "3", "7", "7", "6", "4", "2", "1", "1"]);
    assert_betti(a, &d, &v);
    assert_eq!(a.row.get(6), cell("Q(-3)^6 + Q(-1)"));
    assert_eq!(a.euler().unwrap(), Coeff::int(34));
    // All connecting maps vanish: odd cohomology is zero on both sides.
    assert!(a.main_run().unwrap().ranks.iter().all(|r| r.rank == 0 && r.provenance == Provenance::Weight));
}

#[test]
fn removing_a_point_needs_a_connected_space() {
    let r = Row::parse(&[(0, "Q^2")]).unwrap();
    assert!(remove_point(&r).is_err());
    let r = Row::parse(&[(0, "Q"), (2, "Q(-1)")]).unwrap();
    assert_eq!(remove_point(&r).unwrap(), Row::parse(&[(2, "Q(-1)")]).unwrap());
}

#[test]
fn torus_rank_three() {
    let a = &ledger().beta3;
    assert_betti(a, &[2, 4, 5, 6, 7, 8, 10, 12, 14], &["1", "1", "1", "2", "1", "4", "4", "3", "1"]);
    assert_eq!(a.row.get(7), cell("Q(-1)"));
    assert_eq!(a.row.get(5), cell("Q"));
    assert_eq!(a.euler().unwrap(), Coeff::int(14));
    for k in [2, 4, 6, 8, 10, 12, 14] {
        assert!(a.row.get(k).is_pure_of_weight(k), "degree {k}");
    }
    let run = a.main_run().unwrap();
    assert_eq!(run.rank_of(1, (3, 5)), 1);
    assert_eq!(run.ranks.iter().filter(|r| r.rank > 0).count(), 1);
}

#[test]
fn torus_rank_two_fibre() {
    let store = ConstantStore::standard();
    let fibre = tate_ledger::assemble::rank2_fibre_page(&store).unwrap().run().unwrap();
    let r = fibre.abutment();
    let v = |l: &[u32], t: i64| Cell::of(Class::local(2, l, t), Coeff::int(1));
    let mut r4 = cell("Q(-2)^2");
    r4.add_cell(&v(&[1, 1], 1));
    r4.add_cell(&v(&[2, 2], 0));
    let mut r6 = cell("Q(-3)^3");
    r6.add_cell(&v(&[1, 1], 2));
    r6.add_cell(&v(&[2, 2], 1));
    let mut r8 = cell("Q(-4)^2");
    r8.add_cell(&v(&[1, 1], 3));
    let want = Row::from_cells(&[
        (0, cell("Q")),
        (2, cell("Q(-1)")),
        (4, r4),
        (5, v(&[2, 0], 1)),
        (6, r6),
        (8, r8),
        (10, cell("Q(-5)")),
    ]);
    assert_eq!(r, want);
    // Compactly supported weights never exceed the degree.
    for (k, cl) in r.iter() {
        assert!(cl.iter().all(|(x, _)| x.weight().unwrap() <= *k));
    }
}

#[test]
fn torus_rank_two() {
    let a = &ledger().beta2;
    let degrees = [4, 6, 7, 8, 9, 10, 11, 12, 14, 16];
    assert_betti(a, &degrees, &["1", "2", "1+r", "4+r", "1+r", "5+r", "1", "5", "3", "1"]);
    assert_eq!(a.euler().unwrap(), Coeff::int(18));
    let at0: Vec<i64> =
        degrees.iter().map(|k| a.row.bind(Symbol::R, 0).betti().unwrap().get(k).map_or(0, |x| x.as_int().unwrap())).collect();
    assert_eq!(at0, vec![1, 2, 1, 4, 1, 5, 1, 5, 3, 1]);
    let e2 = a.main_run().unwrap().page(2).unwrap();
    let tate = |p: i64, q: i64| e2.get(&(p, q)).cloned().unwrap_or_default().bind(Symbol::R, 0);
    assert_eq!(tate(4, 0), cell("Q(-2)"));
    assert_eq!(tate(6, 0), cell("Q(-3)"));
    assert_eq!(tate(3, 4), cell("Q(-1)"));
    assert_eq!(tate(4, 4), cell("Q(-4)^2"));
    assert_eq!(tate(6, 4), cell("Q(-5)^2"));
    assert_eq!(tate(3, 5), cell("Q(-2)"));
    assert_eq!(tate(3, 6), cell("Q(-2)"));
    assert_eq!(tate(4, 6), cell("Q(-5)^3"));
    assert_eq!(tate(6, 6), cell("Q(-6)^3"));
    assert_eq!(tate(3, 8), cell("Q(-3)"));
    assert_eq!(tate(4, 10), cell("Q(-7)"));
    // The opaque slot sits at (3,4), (4,4), (3,6) and (4,6).
    let h: Vec<(i64, i64)> =
        e2.iter().filter(|(_, c)| c.iter().any(|(x, _)| matches!(x.kind, Kind::Opaque { .. }))).map(|(k, _)| *k).collect();
    assert_eq!(h, vec![(3, 4), (3, 6), (4, 4), (4, 6)]);
    // No differential survives the weight test.
    assert!(a.main_run().unwrap().ranks.iter().all(|r| r.rank == 0));
}

#[test]
fn torus_rank_one() {
    let a = &ledger().beta1;
    assert_betti(
        a,
        &[6, 7, 8, 9, 10, 11, 12, 13, 14, 16, 18],
        &["2", "1", "3", "1", "4+eps", "eps", "5+eps", "eps", "3", "2", "1"],
    );
    assert_eq!(a.euler().unwrap(), Coeff::int(18));
    assert_eq!(a.row.get(6), cell("Q(-3) + Q"));
    assert_eq!(a.row.get(8), cell("Q(-4)^2 + Q(-1)"));
}

#[test]
fn epsilon_touches_four_terms() {
    let store = ConstantStore::standard();
    let page = tate_ledger::assemble::beta1_page(&store).unwrap();
    let zero = page.bind(Symbol::Eps, 0).entries;
    let one = page.bind(Symbol::Eps, 1).entries;
    let keys: std::collections::BTreeSet<(i64, i64)> = zero.keys().chain(one.keys()).copied().collect();
    let changed: Vec<(i64, i64)> = keys.into_iter().filter(|k| zero.get(k) != one.get(k)).collect();
    assert_eq!(changed, vec![(8, 2), (8, 4), (9, 2), (9, 4)]);
    assert_eq!(page.entries[&(8, 2)], cell("Q(-5)^(1+eps)"));
    // Both bindings still degenerate.
    for v in [0, 1] {
        let run = page.bind(Symbol::Eps, v).run().unwrap();
        assert!(run.ranks.iter().all(|r| r.rank == 0));
    }
}

#[test]
fn kummer_fibre_dimensions() {
    let f = tate_ledger::local::kummer_fibre(3);
    let dims: Vec<i64> = (0..=6).map(|k| f.get(k).dim().unwrap().as_int().unwrap()).collect();
    assert_eq!(dims, vec![1, 0, 15, 0, 15, 0, 1]);
    for g in 1..=3 {
        for k in 0..=2 * g {
            let d = tate_ledger::local::lefschetz(g, k).dim().unwrap().as_int().unwrap();
            let binom = (0..k).fold(1i64, |a, i| a * (2 * g - i) as i64 / (i + 1) as i64);
            assert_eq!(d, binom, "g = {g}, k = {k}");
        }
    }
}

#[test]
fn jacobian_closure() {
    let a = &ledger().jacobian;
    assert_betti(a, &[8, 10, 12, 14, 16, 18], &["2", "1", "1", "2", "1", "1"]);
    assert_eq!(a.row.get(8), cell("Q(-4) + Q(-1)"));
    assert_eq!(a.euler().unwrap(), Coeff::int(8));
    let run = a.main_run().unwrap();
    let nonzero: Vec<_> = run.ranks.iter().filter(|r| r.rank > 0).collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0].provenance, Provenance::Imported("jacobian.d".into()));
}

fn final_report() -> FinalReport {
    ledger().assemble_final(&ConstantStore::standard(), FinalOptions::standard()).unwrap()
}

#[test]
fn voronoi_compactification() {
    let f = final_report();
    let b: Vec<String> = (0..=20).step_by(2).map(|k| f.voronoi[&k].to_string()).collect();
    assert_eq!(b, ["1", "3", "5", "11", "17", "10+e(A4)", "17", "11", "5", "3", "1"]);
    assert!((1..20).step_by(2).all(|k| f.voronoi[&k].is_zero()));
    assert_eq!(f.voronoi[&10] - Coeff::symbol(Symbol::EA4), Coeff::int(10));
    assert_eq!(f.boundary_euler, Coeff::int(84));
    let parts: Vec<i64> = f.boundary_parts.iter().map(|(_, e)| e.as_int().unwrap()).collect();
    assert_eq!(parts, vec![34, 14, 18, 18]);
    let numeric = ledger().assemble_final(&ConstantStore::standard(), FinalOptions { r: Some(0), ea4: Some(9) }).unwrap();
    assert_eq!(numeric.voronoi[&10], Coeff::int(19));
    assert!(is_poincare_symmetric(&numeric.voronoi, 10));
}

#[test]
fn perfect_compactification_low_degrees() {
    let f = final_report();
    let b: Vec<i64> = (0..=9).map(|k| f.perfect_low[&k].as_int().unwrap()).collect();
    assert_eq!(b, vec![1, 0, 2, 0, 3, 0, 8, 0, 14, 0]);
}

#[test]
fn e_infinity_after_purity() {
    let f = final_report();
    let want = [
        ((1, -1), "Q"),
        ((1, 1), "Q(-1)^2"),
        ((1, 3), "Q(-2)^3"),
        ((1, 5), "Q(-3)^6"),
        ((1, 7), "Q(-4)^7"),
        ((2, 0), "Q(-1)"),
        ((2, 2), "Q(-2)"),
        ((2, 4), "Q(-3)^2"),
        ((2, 6), "Q(-4)^4"),
        ((3, 1), "Q(-2)"),
        ((3, 3), "Q(-3)^2"),
        ((3, 5), "Q(-4)^3"),
        ((4, 2), "Q(-3)"),
        ((4, 4), "Q(-4)^2"),
        ((5, 3), "Q(-4)"),
    ];
    let want: Terms = want.iter().map(|(k, s)| (*k, cell(s))).collect();
    assert_eq!(f.e_inf, want);
}

#[test]
fn purity_assignment() {
    let f = final_report();
    let got: Vec<(usize, (i64, i64), (i64, i64), &str)> =
        f.kills.iter().map(|k| (k.r, k.from, k.to, k.class.as_str())).collect();
    assert_eq!(
        got,
        vec![
            (1, (1, 5), (2, 5), "Q(-1)"),
            (1, (3, 4), (4, 4), "Q(-1)"),
            (1, (3, 5), (4, 5), "Q(-2)"),
            (1, (3, 6), (4, 6), "Q(-2)"),
            (1, (4, 3), (5, 3), "Q(-1)"),
            (2, (2, 3), (4, 2), "Q"),
        ]
    );
}

#[test]
fn big_page_matches_printed_e1() {
    let f = final_report();
    let e = |p: i64, q: i64| f.page.cell(p, q);
    let sym = ledger().assemble_final(&ConstantStore::standard(), FinalOptions { r: None, ea4: None });
    assert!(matches!(sym, Err(LedgerError::Opaque(_))));
    assert_eq!(e(1, 5), Some(cell("Q(-3)^6 + Q(-1)")));
    assert_eq!(e(2, 3), Some(cell("Q")));
    assert_eq!(e(3, 5), Some(cell("Q(-4)^3 + Q(-2)")));
    assert_eq!(e(4, 2), Some(cell("Q(-3) + Q")));
    assert_eq!(e(4, 6), Some(cell("Q(-5)^(3+eps) + Q(-2)")));
    assert_eq!(e(4, 8), Some(cell("Q(-6)^(4+eps) + Q(-3)")));
    assert_eq!(e(4, 9), Some(cell("Q(-6)^eps")));
    assert_eq!(e(5, 3), Some(cell("Q(-4) + Q(-1)")));
    assert_eq!(e(6, 14), Some(cell("Q(-10)")));
    assert_eq!(e(6, 3), Some(Cell::new()));
    assert_eq!(e(6, 4), None);
    assert_eq!(e(6, 13), None);
    assert_eq!(e(1, 17), Some(cell("Q(-9)")));
}

#[test]
fn constants_are_listed_and_used() {
    let store = ConstantStore::standard();
    let l = Ledger::build(&store).unwrap();
    l.assemble_final(&store, FinalOptions::standard()).unwrap();
    let m = store.manifest();
    assert!(m.iter().all(|e| !e.anchor.is_empty()));
    let names: Vec<&str> = m.iter().map(|e| e.name).collect();
    assert_eq!(store.used(), {
        let mut v = names.clone();
        v.sort();
        v
    });
    assert!(store.get("nope").is_err());
    let j = serde_json::to_string(&store.manifest_json()).unwrap();
    assert!(j.contains("a3.v110"));
}
