use std::path::Path;

use arithgrp::{classify, e_census, perfect_census, stabilizer, stabilizer_transposed, Census};
use conelab::{named_cone, Cone};
use exact_linalg::IntMatrix;
use extfib::{beta3_gysin_rank, chern_d2, fibre_model, fibre_model_names, invariants_bigraded, rank2_suite};
use tate_ledger::{ConstantStore, FinalOptions, Ledger, Provenance, Row, Terms, DELTAS, PURITY_RANGE};
use torus_coh::{e_labels, gysin_rank, hc_profile, molien_ec, orbit_rep, perfect_label, verified_dims, TatePoly, PERFECT_ROWS};

use crate::config::{Bindings, Fan};
use crate::input::{one_cone, read_cones};
use crate::report::{Report, Table};
use crate::CliError;

/// Tables accepted by `table`.
pub const TABLES: &[&str] = &[
    "beta4perf", "E", "beta4", "beta3", "beta2", "beta2-fibre", "beta1", "jacobian", "final", "table2", "purity",
    "perfect", "e1", "ranks", "manifest",
];

/// Suites accepted by `suite`.
pub const SUITES: &[&str] = &["sigma3", "sigmaI", "sigmaII", "sigma5", "sigma6", "rank2", "beta3", "deltas"];

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn matrix(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| format!("[{}]", join(m.row(i)))).collect();
    format!("[{}]", rows.join(","))
}

fn cone_label(c: &Cone) -> String {
    c.name().map(str::to_string).unwrap_or_else(|| "-".into())
}

fn is_nondegenerate(c: &Cone) -> Result<bool, CliError> {
    Ok(c.interior_rank()? == c.genus())
}

/// Per-dimension counts `1..=10`.
fn counts_table(counts: &[usize]) -> Table {
    let mut t = Table::new("orbits per cone dimension", &["dim", "orbits"]);
    for (i, n) in counts.iter().enumerate() {
        t.push(&[(i + 1).to_string(), n.to_string()]);
    }
    t
}

fn perfect_rows(p: &Census, skip_pi2: bool, t: &mut Table) -> Result<(), CliError> {
    let pi2 = named_cone("Pi2")?;
    for o in &p.orbits {
        let c = &o.rep;
        let (label, ec) = if is_nondegenerate(c)? {
            let ec = molien_ec(&orbit_rep(c)?);
            (perfect_label(c, &ec).unwrap_or("?").to_string(), ec.to_string())
        } else {
            (format!("rank {}", c.interior_rank()?), "-".to_string())
        };
        if skip_pi2 && label == "Pi2" && arithgrp::are_equivalent(c, &pi2)?.is_some() {
            continue;
        }
        t.push(&[(t.rows.len() + 1).to_string(), c.dim().to_string(), label, c.gens().len().to_string(), ec]);
    }
    Ok(())
}

pub fn census(fan: Fan, input: Option<&Path>) -> Result<Report, CliError> {
    let columns = ["orbit", "dim", "label", "generators", "ec"];
    if let Some(file) = input {
        let c = classify(&read_cones(file)?)?;
        let mut t = Table::new("orbits of the input cones", &["orbit", "dim", "generators", "members"]);
        for (i, o) in c.orbits.iter().enumerate() {
            t.push(&[(i + 1).to_string(), o.dim().to_string(), o.rep.gens().len().to_string(), join(&o.members)]);
        }
        return Ok(Report::new("census").table(counts_table(&c.counts_by_dim(10))).table(t));
    }
    let p = perfect_census()?;
    let mut list = Table::new("orbit representatives", &columns);
    let counts: Vec<usize> = match fan {
        Fan::Perfect => {
            perfect_rows(&p, false, &mut list)?;
            p.counts_by_dim(10)
        }
        Fan::Voronoi => {
            perfect_rows(&p, true, &mut list)?;
            let e = e_census(false)?;
            let ecs: Vec<(usize, TatePoly)> =
                e.orbits.iter().map(|o| Ok((o.dim(), molien_ec(&orbit_rep(&o.rep)?)))).collect::<Result<_, CliError>>()?;
            for ((o, (_, ec)), l) in e.orbits.iter().zip(&ecs).zip(e_labels(&ecs)) {
                let label = l.map(|l| l.label.to_string()).unwrap_or_else(|| "?".into());
                list.push(&[(list.rows.len() + 1).to_string(), o.dim().to_string(), label, o.rep.gens().len().to_string(), ec.to_string()]);
            }
            // Pi2 is subdivided by the star at the central ray.
            p.counts_by_dim(10).iter().zip(e.counts_by_dim(10)).enumerate().map(|(i, (a, b))| a + b - usize::from(i == 9)).collect()
        }
    };
    let total: usize = counts.iter().sum();
    Ok(Report::new("census").table(counts_table(&counts)).table(list).note(format!("total {total}")))
}

pub fn stabilizer_cmd(name: Option<&str>, input: Option<&Path>) -> Result<Report, CliError> {
    let c = one_cone(name, input)?;
    let g = stabilizer(&c)?;
    let gt = stabilizer_transposed(&c)?;
    let mut t = Table::new("stabilizer", &["cone", "dim", "order", "transposed_order"]);
    t.push(&[cone_label(&c), c.dim().to_string(), g.order().to_string(), gt.order().to_string()]);
    let mut gens = Table::new("generators, acting by A -> U A U^T", &["index", "matrix"]);
    for (i, u) in g.generators().iter().enumerate() {
        gens.push(&[(i + 1).to_string(), matrix(u)]);
    }
    Ok(Report::new("stabilizer").table(t).table(gens))
}

pub fn euler(name: Option<&str>, input: Option<&Path>) -> Result<Report, CliError> {
    let c = one_cone(name, input)?;
    if !is_nondegenerate(&c)? {
        return Err(CliError::Usage("the cone has no positive definite interior form".into()));
    }
    let rep = orbit_rep(&c)?;
    let ec = molien_ec(&rep);
    let dims = verified_dims(&rep)?;
    let mut t = Table::new("Hodge-Euler polynomial of the torus-orbit stratum", &["cone", "dim", "torus_dim", "group_order", "ec"]);
    t.push(&[cone_label(&c), c.dim().to_string(), rep.n().to_string(), rep.group.order().to_string(), ec.to_string()]);
    let mut prof = Table::new("compactly supported cohomology", &["degree", "weight", "dim"]);
    for (k, w, d) in hc_profile(&dims) {
        prof.push(&[k, w, d]);
    }
    let mut r = Report::new("euler").table(t).table(prof);
    if let Some(label) = perfect_label(&c, &ec) {
        let printed = PERFECT_ROWS.iter().find(|x| x.label == label).map(|x| x.poly());
        r = r.note(format!("table label {label}"));
        if let Some(p) = printed.filter(|p| *p != ec) {
            r = r.note(format!("the table prints {p} for {label}"));
        }
    }
    Ok(r)
}

pub fn faces(name: Option<&str>, input: Option<&Path>) -> Result<Report, CliError> {
    let c = one_cone(name, input)?;
    let lat = c.faces()?;
    let mut t = Table::new("faces by dimension", &["dim", "faces"]);
    for (d, n) in lat.f_vector().iter().enumerate() {
        t.push(&[d, *n]);
    }
    Ok(Report::new("faces").table(t).note(format!("{} facets, {} faces in all", lat.facet_count(), lat.len())))
}

pub fn suite(name: &str) -> Result<Report, CliError> {
    match name {
        "rank2" => {
            let r = rank2_suite();
            let mut sxs = Table::new("invariants of the square of the abelian surface", &["degree", "invariant", "kappa_plus", "kappa_minus"]);
            for row in &r.sxs {
                sxs.push(&[row.k, row.invariant, row.kappa_invariant, row.kappa_alternating]);
            }
            let mut seq = Table::new("fibre sequence", &["degree", "discriminant", "e2_row0", "e2_row1", "einf_row0", "einf_row1"]);
            for k in 0..r.discr_dims.len() {
                seq.push(&[k, r.discr_dims[k], r.e2_row0[k], r.e2_row1[k], r.einf_row0[k], r.einf_row1[k]]);
            }
            Ok(Report::new("suite")
                .table(seq)
                .table(sxs)
                .note(format!("v classes form a basis: {}", r.v_is_basis))
                .note(format!("delta2 matches the printed formula: {}", r.delta2_matches_printed))
                .note(format!("delta2 surjective: {} (residue rank {} of {})", r.delta2_surjective, r.residue_rank, r.h7_dim)))
        }
        "beta3" => {
            let b = beta3_gysin_rank()?;
            let mut t = Table::new("Gysin map onto the torus-rank-3 boundary", &["source_dim", "target_dim", "rank", "surjective"]);
            t.push(&[b.source_dim.to_string(), b.target_dim.to_string(), b.rank.to_string(), b.surjective.to_string()]);
            let mut r = Report::new("suite").table(t);
            if let Some(s) = &b.printed_scale {
                r = r.note(format!("images are {s} times the printed formula"));
            }
            Ok(r)
        }
        "deltas" => {
            let mut t = Table::new("connecting maps of the perfect stratum", &["name", "face", "cone", "j", "source_dim", "target_dim", "rank"]);
            for d in DELTAS {
                let g = gysin_rank(&named_cone(d.face)?, &named_cone(d.cone)?, d.j)?;
                t.push(&[d.name.to_string(), d.face.into(), d.cone.into(), d.j.to_string(), g.source_dim.to_string(), g.target_dim.to_string(), g.rank.to_string()]);
            }
            Ok(Report::new("suite").table(t))
        }
        m if fibre_model_names().contains(&m) => {
            let model = fibre_model(m)?;
            let inv = invariants_bigraded(&model);
            let d = chern_d2(&model, &inv);
            let mut t = Table::new("invariant dimensions", &["p", "q", "dim"]);
            for ((p, q), v) in &inv {
                t.push(&[*p, *q, v.len()]);
            }
            let mut dt = Table::new("d2 of the fibre sequence", &["p", "q", "source", "target", "rank"]);
            for e in &d.entries {
                dt.push(&[e.p, e.q, e.source_dim, e.target_dim, e.rank]);
            }
            let mut e3 = Table::new("E3", &["p", "q", "dim"]);
            for (p, q, n) in &d.e3 {
                e3.push(&[*p, *q, *n]);
            }
            Ok(Report::new("suite")
                .table(t)
                .table(dt)
                .table(e3)
                .note(format!("stabilizer order {}", model.group.order()))
                .note(format!("degenerates at E3: {}", d.degenerates_at_e3)))
        }
        _ => Err(CliError::Usage(format!("unknown suite {name:?}; one of {}", SUITES.join(", ")))),
    }
}

fn stratum_table(title: &str, row: &Row, b: &Bindings) -> Result<Table, CliError> {
    let row = b.row(row);
    let mut t = Table::new(title, &["degree", "betti", "classes"]);
    for (k, c) in row.iter() {
        t.push(&[k.to_string(), b.coeff(c.dim()?).to_string(), c.to_string()]);
    }
    Ok(t)
}

fn terms_table(title: &str, terms: &Terms, b: &Bindings) -> Table {
    let mut t = Table::new(title, &["p", "q", "term"]);
    for ((p, q), c) in terms {
        let c = b.cell(c);
        if !c.is_zero() {
            t.push(&[p.to_string(), q.to_string(), c.to_string()]);
        }
    }
    t
}

fn final_options(b: &Bindings) -> FinalOptions {
    FinalOptions { r: b.r.value(), ea4: b.ea4.value() }
}

pub fn table(name: &str, b: &Bindings) -> Result<Report, CliError> {
    if !TABLES.contains(&name) {
        return Err(CliError::Usage(format!("unknown table {name:?}; one of {}", TABLES.join(", "))));
    }
    let store = ConstantStore::standard();
    if name == "manifest" {
        let mut t = Table::new("imported constants", &["name", "anchor", "value"]);
        for e in store.manifest() {
            t.push(&[e.name.to_string(), e.anchor.to_string(), e.value.to_string()]);
        }
        return Ok(Report::new("table").table(t));
    }
    let ledger = Ledger::build(&store)?;
    let strata = [
        ("beta4perf", &ledger.beta4_perf),
        ("E", &ledger.e_divisor),
        ("beta4", &ledger.beta4),
        ("beta3", &ledger.beta3),
        ("beta2", &ledger.beta2),
        ("beta1", &ledger.beta1),
        ("jacobian", &ledger.jacobian),
    ];
    if let Some((_, a)) = strata.iter().find(|(n, _)| *n == name) {
        let mut r = Report::new("table").table(stratum_table(&format!("compactly supported cohomology of {}", a.name), &a.row, b)?);
        r = r.note(format!("Euler characteristic {}", b.coeff(a.euler()?)));
        return Ok(r);
    }
    match name {
        "beta2-fibre" => {
            let run = &ledger.beta2.runs[0];
            Ok(Report::new("table").table(stratum_table("direct images over A2", &run.abutment(), b)?))
        }
        "ranks" => {
            let mut t = Table::new("differentials", &["sequence", "r", "from", "to", "class", "rank", "provenance"]);
            for a in ledger.all() {
                for run in &a.runs {
                    for x in &run.ranks {
                        let prov = match &x.provenance {
                            Provenance::Computed(s) => format!("computed: {s}"),
                            Provenance::Weight => "weight".to_string(),
                            Provenance::Imported(s) => format!("imported: {s}"),
                        };
                        t.push(&[
                            run.name.clone(),
                            x.r.to_string(),
                            format!("{:?}", x.from),
                            format!("{:?}", x.to),
                            x.class.clone().unwrap_or_else(|| "-".into()),
                            x.rank.to_string(),
                            prov,
                        ]);
                    }
                }
            }
            Ok(Report::new("table").table(t))
        }
        _ => {
            let f = ledger.assemble_final(&store, final_options(b))?;
            match name {
                "final" => {
                    let mut t = Table::new("Betti numbers of the second Voronoi compactification", &["degree", "betti"]);
                    for (k, v) in &f.voronoi {
                        t.push(&[k.to_string(), b.coeff(*v).to_string()]);
                    }
                    let parts: Vec<String> = f.boundary_parts.iter().map(|(n, e)| format!("{n} {e}")).collect();
                    Ok(Report::new("table")
                        .table(t)
                        .note(format!("boundary Euler characteristic {} = {}", f.boundary_euler, parts.join(" + ")))
                        .note(format!("b10 = {}", b.coeff(f.voronoi[&10]))))
                }
                "perfect" => {
                    let mut t = Table::new("Betti numbers of the perfect cone compactification", &["degree", "betti"]);
                    for (k, v) in &f.perfect_low {
                        t.push(&[k.to_string(), v.to_string()]);
                    }
                    Ok(Report::new("table").table(t))
                }
                "table2" => Ok(Report::new("table").table(terms_table(
                    &format!("surviving terms in total degree <= {PURITY_RANGE}"),
                    &f.e_inf,
                    b,
                ))),
                "purity" => {
                    let mut t = Table::new("cancellations forced by purity", &["r", "from", "to", "class"]);
                    for k in &f.kills {
                        t.push(&[k.r.to_string(), format!("{:?}", k.from), format!("{:?}", k.to), k.class.clone()]);
                    }
                    Ok(Report::new("table").table(t))
                }
                "e1" => {
                    let mut t = terms_table("E1 of the boundary stratification", &f.page.e1, b);
                    for (p, q) in &f.page.unknown {
                        t.push(&[p.to_string(), q.to_string(), "?".to_string()]);
                    }
                    t.rows.sort_by_key(|r| (r[0].parse::<i64>().unwrap_or(0), r[1].parse::<i64>().unwrap_or(0)));
                    Ok(Report::new("table").table(t))
                }
                _ => unreachable!("table names are checked above"),
            }
        }
    }
}
