//! Betti tables of the torus-rank-4 strata and of the open strata of lower torus rank.

use std::collections::BTreeMap;

use arithgrp::{e_census, perfect_census};
use conelab::named_cone;
use serde::Serialize;
use torus_coh::{gysin_rank, hc_profile, molien_ec, orbit_rep, verified_dims, Coeff, TatePoly};

use crate::class::{Cell, Class, Row};
use crate::constants::ConstantStore;
use crate::local::{kummer_fibre, leray_e2};
use crate::page::{PageRun, Provenance, SpecPage};
use crate::LedgerError;

/// A reproduced cohomology table.
#[derive(Clone, Debug)]
pub struct Assembly {
    pub name: &'static str,
    /// Compact-support cohomology by degree, as weight-graded pieces.
    pub row: Row,
    /// The spectral sequences behind it, in order of use.
    pub runs: Vec<PageRun>,
}

impl Assembly {
    pub fn betti(&self) -> Result<BTreeMap<i64, Coeff>, LedgerError> {
        self.row.betti()
    }

    pub fn euler(&self) -> Result<Coeff, LedgerError> {
        self.row.euler()
    }

    pub fn main_run(&self) -> Option<&PageRun> {
        self.runs.last()
    }
}

/// One connecting map between adjacent torus orbits of the perfect fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Delta {
    pub name: &'static str,
    pub face: &'static str,
    pub cone: &'static str,
    pub j: usize,
}

/// The connecting maps that can be nonzero on the perfect stratum.
pub const DELTAS: [Delta; 5] = [
    Delta { name: "delta0", face: "K5-1", cone: "Pi1", j: 0 },
    Delta { name: "delta0'", face: "C5", cone: "C321", j: 4 },
    Delta { name: "delta1", face: "K5-1-1b", cone: "K33", j: 0 },
    Delta { name: "delta2", face: "K5-2-1b", cone: "K5-2", j: 0 },
    Delta { name: "delta3", face: "C222", cone: "C2221", j: 0 },
];

fn torus(e: torus_coh::TorusError) -> LedgerError {
    LedgerError::Upstream(e.to_string())
}

fn arith(e: arithgrp::ArithError) -> LedgerError {
    LedgerError::Upstream(e.to_string())
}

/// `E_1^{p,q} = H_c^{p+q}` of the union of the torus orbits of the
/// nondegenerate perfect cones of dimension `10 - p`, with the connecting
/// maps computed orbit by orbit.
pub fn beta4_perf_page() -> Result<SpecPage, LedgerError> {
    let mut page = SpecPage::new("beta4-perfect", 1);
    let census = perfect_census().map_err(arith)?;
    for o in &census.orbits {
        if o.rep.interior_rank().map_err(|e| LedgerError::Upstream(e.to_string()))? != 4 {
            continue;
        }
        let rep = orbit_rep(&o.rep).map_err(torus)?;
        let dims = verified_dims(&rep).map_err(torus)?;
        let p = 10 - o.rep.dim() as i64;
        for (k, w, d) in hc_profile(&dims) {
            page.put(p, k as i64 - p, &Cell::tate(w as i64 / 2, d as i64));
        }
    }
    for d in DELTAS {
        let cone = named_cone(d.cone).map_err(|e| LedgerError::Upstream(e.to_string()))?;
        let face = named_cone(d.face).map_err(|e| LedgerError::Upstream(e.to_string()))?;
        let g = gysin_rank(&face, &cone, d.j).map_err(torus)?;
        let p = 10 - cone.dim() as i64;
        let q = p - d.j as i64;
        let class = Class::tate(q);
        // The face orbit must be the only contributor of this weight to the target.
        let target = page.get(p + 1, q).mult(&class);
        if target != Coeff::int(g.target_dim as i64) || !(page.get(p, q).mult(&class) - Coeff::int(g.source_dim as i64)).is_nonnegative() {
            return Err(LedgerError::Constant(format!("{} does not match the term at ({p},{q})", d.name)));
        }
        let src = format!("{}: {} in {}, j = {}", d.name, d.face, d.cone, d.j);
        page.declare(1, p, q, class, g.rank as u64, Provenance::Computed(src));
    }
    Ok(page)
}

pub fn assemble_beta4_perf() -> Result<Assembly, LedgerError> {
    let run = beta4_perf_page()?.run()?;
    Ok(Assembly { name: "beta4-perfect", row: run.abutment(), runs: vec![run] })
}

/// Sum of the Hodge–Euler polynomials of the orbits through the central ray.
pub fn e_divisor_polynomial() -> Result<TatePoly, LedgerError> {
    let census = e_census(false).map_err(arith)?;
    let mut total = TatePoly::zero();
    for o in &census.orbits {
        total = &total + &molien_ec(&orbit_rep(&o.rep).map_err(torus)?);
    }
    Ok(total)
}

/// A pure space: `b_{2k}` is the coefficient of `L^k`, odd degrees vanish.
pub fn pure_row(poly: &TatePoly) -> Result<Row, LedgerError> {
    let mut row = Row::new();
    for (k, c) in poly.terms() {
        if !c.is_nonnegative() || k < 0 {
            return Err(LedgerError::Purity(format!("coefficient {c} of L^{k}")));
        }
        row.add(2 * k as i64, &Cell::of(Class::tate(k as i64), c));
    }
    Ok(row)
}

pub fn assemble_e_divisor() -> Result<Assembly, LedgerError> {
    Ok(Assembly { name: "E", row: pure_row(&e_divisor_polynomial()?)?, runs: Vec::new() })
}

/// `H_c` of a connected compact space with one point removed.
pub fn remove_point(row: &Row) -> Result<Row, LedgerError> {
    if row.get(0) != Cell::tate(0, 1) {
        return Err(LedgerError::Constant(format!("H^0 is {}, not Q", row.get(0))));
    }
    let mut out = row.clone();
    out.add(0, &Cell::tate(0, -1));
    Ok(out)
}

/// Closed `E` and its complement, which is the perfect stratum minus the point `E` contracts to.
pub fn beta4_voronoi_page(perf: &Row, e: &Row) -> Result<SpecPage, LedgerError> {
    let mut page = SpecPage::new("beta4-voronoi", 1);
    page.put_column(1, e);
    page.put_column(2, &remove_point(perf)?);
    Ok(page)
}

pub fn assemble_beta4_voronoi(perf: &Assembly, e: &Assembly) -> Result<Assembly, LedgerError> {
    let run = beta4_voronoi_page(&perf.row, &e.row)?.run()?;
    Ok(Assembly { name: "beta4", row: run.abutment(), runs: vec![run] })
}

/// Gysin sequence over the strata of the open torus-rank-3 locus.
pub fn beta3_page(store: &ConstantStore) -> Result<SpecPage, LedgerError> {
    let mut page = SpecPage::new("beta3", 1);
    for (i, col) in store.get("beta3.strata")?.columns()?.iter().enumerate() {
        page.put_column(i as i64 + 1, col);
    }
    let g = extfib::beta3_gysin_rank().map_err(|e| LedgerError::Upstream(e.to_string()))?;
    let class = Class::tate(2);
    let target = page.get(4, 5).mult(&class).as_int().unwrap_or(0) as u64;
    // Surjectivity on each fibre over A1 makes the map onto the Q(-2) piece surjective.
    let rank = if g.surjective { target } else { 0 };
    let src = format!("fibre Gysin map of rank {} onto {} dimensions", g.rank, g.target_dim);
    page.declare(1, 3, 5, class, rank, Provenance::Computed(src));
    Ok(page)
}

pub fn assemble_beta3(store: &ConstantStore) -> Result<Assembly, LedgerError> {
    let run = beta3_page(store)?.run()?;
    Ok(Assembly { name: "beta3", row: run.abutment(), runs: vec![run] })
}

/// The fibre of the torus-rank-2 stratum over `A2`: the discriminant part
/// (compact) and its complement, glued by the Gysin map.
pub fn rank2_fibre_page(store: &ConstantStore) -> Result<SpecPage, LedgerError> {
    let closed = store.get("rank2.closed")?.row()?;
    let open = store.get("rank2.open")?.row()?;
    let rep = extfib::rank2_suite();
    let dims = |r: &Row, k: usize| r.get(k as i64).dim().map(|d| d.as_int().unwrap_or(-1));
    for k in 0..=8 {
        let open_dim = rep.einf_row0[k] + if k > 0 { rep.einf_row1[k - 1] } else { 0 };
        if dims(closed, k)? != rep.discr_dims[k] as i64 || dims(open, k)? != open_dim as i64 {
            return Err(LedgerError::Constant(format!("rank-two decomposition disagrees in degree {k}")));
        }
    }
    let mut page = SpecPage::new("rank2-fibre", 1);
    page.put_column(1, closed);
    page.put_column(2, &open.dual(5)?);
    let rank = u64::from(rep.delta2_surjective);
    page.declare(
        1,
        1,
        1,
        Class::local(2, &[1, 1], 0),
        rank,
        Provenance::Computed(format!("delta2 on the v basis, residue rank {} of {}", rep.residue_rank, rep.h7_dim)),
    );
    Ok(page)
}

pub fn assemble_beta2(store: &ConstantStore) -> Result<Assembly, LedgerError> {
    let fibre = rank2_fibre_page(store)?.run()?;
    let mut page = SpecPage::new("beta2", 2);
    page.entries = leray_e2(store, 2, &fibre.abutment())?;
    let run = page.run()?;
    Ok(Assembly { name: "beta2", row: run.abutment(), runs: vec![fibre, run] })
}

pub fn beta1_page(store: &ConstantStore) -> Result<SpecPage, LedgerError> {
    let mut page = SpecPage::new("beta1", 2);
    page.entries = leray_e2(store, 3, &kummer_fibre(3))?;
    let deg = store.get("kummer.degeneration")?;
    let rank = deg.rank()?;
    for (p, q, t) in [(6, 4, 5), (6, 6, 6)] {
        page.declare(3, p, q, Class::tate(t), rank, Provenance::Imported(deg.name.to_string()));
    }
    Ok(page)
}

pub fn assemble_beta1(store: &ConstantStore) -> Result<Assembly, LedgerError> {
    let run = beta1_page(store)?.run()?;
    Ok(Assembly { name: "beta1", row: run.abutment(), runs: vec![run] })
}

pub fn jacobian_page(store: &ConstantStore) -> Result<SpecPage, LedgerError> {
    let mut page = SpecPage::new("jacobian", 1);
    for (i, col) in store.get("jacobian.strata")?.columns()?.iter().enumerate() {
        page.put_column(i as i64 + 1, col);
    }
    let d = store.get("jacobian.d")?;
    page.declare(1, 4, 8, Class::tate(6), d.rank()?, Provenance::Imported(d.name.to_string()));
    Ok(page)
}

pub fn assemble_jacobian(store: &ConstantStore) -> Result<Assembly, LedgerError> {
    let run = jacobian_page(store)?.run()?;
    Ok(Assembly { name: "jacobian", row: run.abutment(), runs: vec![run] })
}
