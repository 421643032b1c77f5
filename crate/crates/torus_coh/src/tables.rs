//! Reference strata of the genus-4 fans and the labels used in reports.

use arithgrp::are_equivalent;
use conelab::{named_cone, Cone};
use exact_linalg::RatMatrix;
use num_rational::BigRational;

use crate::TatePoly;

/// A row of a reference table: orbit label, cone dimension and Hodge–Euler polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefRow {
    pub label: &'static str,
    pub dim: usize,
    pub ec: &'static str,
}

const fn row(label: &'static str, dim: usize, ec: &'static str) -> RefRow {
    RefRow { label, dim, ec }
}

/// Perfect cones with a positive definite interior form, as printed in the
/// standard reference table (labels and polynomials verbatim).
pub const PERFECT_ROWS: &[RefRow] = &[
    row("K5", 10, "1"),
    row("Pi2", 10, "1"),
    row("K5-1", 9, "L"),
    row("K33", 9, "L-1"),
    row("K5-2", 8, "L^2"),
    row("K5-1-1", 8, "L^2-L"),
    row("K5-2-1", 7, "L^3-L^2"),
    row("C2221", 7, "L^3"),
    row("K5-3", 7, "L^3"),
    row("K4+1", 7, "L^3"),
    row("C222", 6, "L^4-L^3"),
    row("C321", 6, "L^4+1"),
    row("C221+1", 6, "L^4"),
    row("C3+C3", 6, "L^4"),
    row("C5", 5, "L^5-1"),
    row("C4+1", 5, "L^5"),
    row("C3+1+1", 5, "L^5+L"),
    row("1+1+1+1", 4, "L^6"),
];

/// Cones of the second Voronoi fan containing the central ray.
pub const E_ROWS: &[RefRow] = &[
    row("111+", 10, "1"),
    row("111-", 10, "1"),
    row("211+", 9, "L-1"),
    row("211-", 9, "L"),
    row("311+", 8, "L^2-L"),
    row("311-", 8, "L^2"),
    row("22'1", 8, "L^2-L"),
    row("221+", 8, "L^2"),
    row("221-", 8, "L^2+L"),
    row("411", 7, "L^3-L^2"),
    row("321+", 7, "L^3-L^2+L-1"),
    row("321-", 7, "L^3-2L^2+L"),
    row("222'", 7, "L^3-L^2"),
    row("22'2''", 7, "L^3"),
    row("222+", 7, "L^3"),
    row("222-", 7, "L^3"),
    row("421", 6, "L^4-L^3+L^2-L"),
    row("331+", 6, "L^4+1"),
    row("331-", 6, "L^4-L^3-L+1"),
    row("322+", 6, "L^4-L^3"),
    row("322-", 6, "L^4-L^3"),
    row("322'", 6, "L^4-2L^3+2L^2-2L+1"),
    row("422'", 5, "L^5+L^3-L^2+L"),
    row("332-", 5, "L^5-L^4+L^3-3L^2+2L"),
    row("431", 5, "L^5-L^4+L^3-L^2+L-1"),
    row("422", 5, "L^5-L^4"),
    row("332+", 5, "L^5-2L^4+L^3-L^2+2L-1"),
    row("432", 4, "L^6-2L^5+2L^4-4L^3+5L^2-2L"),
    row("333-", 4, "L^6+2L^2"),
    row("441", 4, "L^6+L^2"),
    row("333+", 4, "L^6-L^5-L^3+2L^2-L"),
    row("433", 3, "L^7-L^6+L^5-L^4+4L^3-4L^2"),
    row("442", 3, "L^7+2L^3-L^2"),
    row("443", 2, "L^8+2L^4-3L^3"),
    row("444", 1, "L^9-L^4"),
];

/// The printed total of [`E_ROWS`].
pub const E_TOTAL: &str = "L^9+L^8+2L^7+3L^6+3L^5+3L^4+3L^3+2L^2+L+1";

impl RefRow {
    pub fn poly(&self) -> TatePoly {
        self.ec.parse().expect("reference polynomial parses")
    }
}

/// Whether some generator's linear form is a coloop of the matroid of all
/// the linear forms, i.e. dropping it lowers the rank.
pub fn has_coloop(c: &Cone) -> bool {
    let vecs: Vec<Vec<BigRational>> = c
        .gens()
        .iter()
        .filter_map(|q| q.vector().map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect()))
        .collect();
    if vecs.len() != c.gens().len() || vecs.is_empty() {
        return false;
    }
    let g = c.genus();
    let rank = |skip: Option<usize>| {
        let rows: Vec<Vec<BigRational>> =
            vecs.iter().enumerate().filter(|(i, _)| Some(*i) != skip).map(|(_, v)| v.clone()).collect();
        if rows.is_empty() {
            0
        } else {
            RatMatrix::from_rows(&rows, g).rank()
        }
    };
    let full = rank(None);
    (0..vecs.len()).any(|i| rank(Some(i)) < full)
}

/// Built-in cones whose generators are printed, with their table labels.
const PRINTED: &[(&str, &str)] = &[
    ("Pi1", "K5"),
    ("Pi2", "Pi2"),
    ("K5-1", "K5-1"),
    ("K33", "K33"),
    ("K5-2", "K5-2"),
    ("K5-1-1b", "K5-1-1"),
    ("K5-2-1b", "K5-2-1"),
    ("C2221", "C2221"),
    ("C222", "C222"),
    ("C321", "C321"),
    ("C5", "C5"),
];

/// Label of a nondegenerate perfect cone with Hodge–Euler polynomial `ec`.
///
/// Cones equivalent to a built-in cone take its label. The rest are assigned
/// by `(dim, ec)`, with ties broken by the presence of a coloop (a `+1` summand).
pub fn perfect_label(c: &Cone, ec: &TatePoly) -> Option<&'static str> {
    for (name, label) in PRINTED {
        let n = named_cone(name).expect("built-in cone");
        if n.dim() == c.dim() && are_equivalent(c, &n).ok().flatten().is_some() {
            return Some(label);
        }
    }
    let printed: Vec<&str> = PRINTED.iter().map(|p| p.1).collect();
    let mut candidates: Vec<&RefRow> = PERFECT_ROWS
        .iter()
        .filter(|r| r.dim == c.dim() && !printed.contains(&r.label) && r.poly() == *ec)
        .collect();
    if candidates.len() > 1 {
        let coloop = has_coloop(c);
        candidates.retain(|r| r.label.ends_with("+1") == coloop);
    }
    (candidates.len() == 1).then(|| candidates[0].label)
}

/// Label assigned to a central-ray cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ELabel {
    pub label: &'static str,
    /// Several rows share this `(dim, ec)`, so the choice among them is arbitrary.
    pub ambiguous: bool,
    /// The printed polynomial of the row equals the computed one.
    pub matches: bool,
}

/// Labels for a list of `(dim, ec)` values of central-ray cones. Rows are
/// matched by `(dim, ec)` and handed out in table order; cones left over are
/// paired with the unused rows of the same dimension and marked as mismatches.
pub fn e_labels(cones: &[(usize, TatePoly)]) -> Vec<Option<ELabel>> {
    let mut used = vec![false; E_ROWS.len()];
    let mut out: Vec<Option<ELabel>> = cones
        .iter()
        .map(|(d, p)| {
            let matches: Vec<usize> =
                (0..E_ROWS.len()).filter(|&i| E_ROWS[i].dim == *d && E_ROWS[i].poly() == *p).collect();
            let i = matches.iter().copied().find(|&i| !used[i])?;
            used[i] = true;
            Some(ELabel { label: E_ROWS[i].label, ambiguous: matches.len() > 1, matches: true })
        })
        .collect();
    for (slot, (d, _)) in out.iter_mut().zip(cones) {
        if slot.is_none() {
            let free: Vec<usize> = (0..E_ROWS.len()).filter(|&i| !used[i] && E_ROWS[i].dim == *d).collect();
            if let Some(&i) = free.first() {
                used[i] = true;
                *slot = Some(ELabel { label: E_ROWS[i].label, ambiguous: free.len() > 1, matches: false });
            }
        }
    }
    out
}
