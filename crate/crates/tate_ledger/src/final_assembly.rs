//! The Gysin spectral sequence of the stratification of the toroidal
//! compactification by torus rank, and the purity argument on it.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use torus_coh::{Coeff, Symbol};

use crate::assemble::Assembly;
use crate::class::{Cell, Class, Kind, Row};
use crate::constants::ConstantStore;
use crate::page::Terms;
use crate::LedgerError;

/// Degrees up to which the last column is known to vanish and purity is applied.
pub const PURITY_RANGE: i64 = 9;
/// Complex dimension of the compactification.
pub const DIM: i64 = 10;

/// The closed strata in filtration order: torus rank 4, 3, 2, 1, then the Jacobian closure.
#[derive(Clone, Debug)]
pub struct Strata {
    pub beta4: Row,
    pub beta3: Row,
    pub beta2: Row,
    pub beta1: Row,
    pub jacobian: Row,
}

impl Strata {
    pub fn from_assemblies(beta4: &Assembly, beta3: &Assembly, beta2: &Assembly, beta1: &Assembly, jac: &Assembly) -> Self {
        Strata {
            beta4: beta4.row.clone(),
            beta3: beta3.row.clone(),
            beta2: beta2.row.clone(),
            beta1: beta1.row.clone(),
            jacobian: jac.row.clone(),
        }
    }

    fn boundary(&self) -> [(&'static str, &Row); 4] {
        [("beta4", &self.beta4), ("beta3", &self.beta3), ("beta2", &self.beta2), ("beta1", &self.beta1)]
    }
}

/// A differential that kills one graded unit in the source and one in the target.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Kill {
    pub r: usize,
    pub from: (i64, i64),
    pub to: (i64, i64),
    pub class: String,
}

#[derive(Clone, Debug)]
pub struct BigPage {
    pub e1: Terms,
    /// Terms of the open stratum that are not known.
    pub unknown: BTreeSet<(i64, i64)>,
}

impl BigPage {
    pub fn cell(&self, p: i64, q: i64) -> Option<Cell> {
        if self.unknown.contains(&(p, q)) {
            return None;
        }
        Some(self.e1.get(&(p, q)).cloned().unwrap_or_default())
    }
}

#[derive(Clone, Debug)]
pub struct FinalReport {
    pub page: BigPage,
    pub kills: Vec<Kill>,
    /// `E_∞^{p,q}` for `p + q <= 9`.
    pub e_inf: Terms,
    pub boundary_parts: Vec<(&'static str, Coeff)>,
    pub boundary_euler: Coeff,
    /// Betti numbers of the Voronoi compactification, degrees `0..=20`.
    pub voronoi: BTreeMap<i64, Coeff>,
    pub perfect_page: BigPage,
    pub perfect_e_inf: Terms,
    /// Betti numbers of the perfect cone compactification, degrees `0..=9`.
    pub perfect_low: BTreeMap<i64, Coeff>,
}

/// `E_1^{p,q} = H_c^{p+q}` of the `p`-th stratum.
pub fn big_page(store: &ConstantStore, s: &Strata, first: &Row) -> Result<BigPage, LedgerError> {
    let mut e1 = Terms::new();
    let mut put = |p: i64, row: &Row| {
        for (k, c) in row.iter() {
            if !c.is_zero() {
                e1.insert((p, k - p), c.clone());
            }
        }
    };
    put(1, first);
    put(2, &s.beta3);
    put(3, &s.beta2);
    put(4, &s.beta1);
    put(5, &s.jacobian);
    let open = store.get("open.a4")?.row()?;
    put(6, open);
    // The open part is affine of dimension 10: nothing below degree 10;
    // between 10 and 19 nothing is known.
    let unknown = (DIM..2 * DIM).filter(|k| open.get(*k).is_zero()).map(|k| (6, k - 6)).collect();
    Ok(BigPage { e1, unknown })
}

#[derive(Clone, Debug)]
struct Unit {
    p: i64,
    q: i64,
    class: Class,
    mandatory: bool,
}

/// Finds differentials killing every graded piece of weight different from
/// its degree in degrees `<= max_k`. Partners may sit in degree `max_k + 1`
/// as long as that term is known.
pub fn purity_filter(page: &BigPage, max_k: i64) -> Result<(Vec<Kill>, Terms), LedgerError> {
    let mut units = Vec::new();
    for (&(p, q), c) in &page.e1 {
        let k = p + q;
        if k > max_k + 1 || page.unknown.contains(&(p, q)) {
            continue;
        }
        for (cl, m) in c.iter() {
            let off = cl.weight() != Some(k);
            if let Kind::Opaque { label, .. } = &cl.kind {
                if k <= max_k {
                    return Err(LedgerError::Opaque(format!(
                        "{label} at ({p},{q}) with multiplicity {m}: its weights are unknown and every such slot sits in one column, so no differential can be assigned; bind r"
                    )));
                }
                continue;
            }
            let n = match m.as_int() {
                Some(n) => n,
                None if k <= max_k && off => {
                    return Err(LedgerError::Purity(format!("symbolic off-weight piece {cl}^({m}) at ({p},{q})")))
                }
                None => m.bind(Symbol::Eps, 0).as_int().unwrap_or(0),
            };
            for _ in 0..n.max(0) {
                units.push(Unit { p, q, class: cl.clone(), mandatory: off && k <= max_k });
            }
        }
    }
    let adjacent = |a: &Unit, b: &Unit| {
        let (ka, kb) = (a.p + a.q, b.p + b.q);
        a.class == b.class && ((kb == ka + 1 && b.p > a.p) || (ka == kb + 1 && a.p > b.p))
    };
    let order: Vec<usize> = {
        let mut v: Vec<usize> = (0..units.len()).filter(|&i| units[i].mandatory).collect();
        v.sort_by_key(|&i| (units[i].p + units[i].q, units[i].p, units[i].q));
        v
    };
    let mut mate: Vec<Option<usize>> = vec![None; units.len()];
    if !assign(&units, &order, 0, &mut mate, &adjacent) {
        let left: Vec<String> = order.iter().map(|&i| format!("{} at ({},{})", units[i].class, units[i].p, units[i].q)).collect();
        return Err(LedgerError::Purity(format!("no consistent set of differentials kills {}", left.join(", "))));
    }
    // One kill per matched pair of units.
    let mut pairs: Vec<Kill> = Vec::new();
    for (i, m) in mate.iter().enumerate() {
        if let Some(j) = *m {
            if units[i].p + units[i].q < units[j].p + units[j].q {
                pairs.push(Kill {
                    r: (units[j].p - units[i].p) as usize,
                    from: (units[i].p, units[i].q),
                    to: (units[j].p, units[j].q),
                    class: units[i].class.to_string(),
                });
            }
        }
    }
    pairs.sort();
    let e_inf = apply_kills(page, &pairs, max_k)?;
    Ok((pairs, e_inf))
}

fn assign(
    units: &[Unit],
    order: &[usize],
    at: usize,
    mate: &mut Vec<Option<usize>>,
    adjacent: &dyn Fn(&Unit, &Unit) -> bool,
) -> bool {
    let Some(pos) = (at..order.len()).find(|&i| mate[order[i]].is_none()) else {
        return true;
    };
    let u = order[pos];
    let mut cands: Vec<usize> = (0..units.len()).filter(|&v| v != u && mate[v].is_none() && adjacent(&units[u], &units[v])).collect();
    // Prefer partners that must die anyway, then the shortest differential.
    cands.sort_by_key(|&v| (!units[v].mandatory, (units[v].p - units[u].p).abs(), units[v].p, units[v].q));
    for v in cands {
        mate[u] = Some(v);
        mate[v] = Some(u);
        if assign(units, order, pos + 1, mate, adjacent) {
            return true;
        }
        mate[u] = None;
        mate[v] = None;
    }
    false
}

/// Removes the killed units and keeps the terms of total degree `<= max_k`,
/// which must then be pure of the right weight.
pub fn apply_kills(page: &BigPage, kills: &[Kill], max_k: i64) -> Result<Terms, LedgerError> {
    let mut t: Terms = page.e1.iter().filter(|(k, _)| k.0 + k.1 <= max_k + 1 && !page.unknown.contains(k)).map(|(k, c)| (*k, c.clone())).collect();
    for kill in kills {
        for at in [kill.from, kill.to] {
            let c = t.get_mut(&at).ok_or_else(|| LedgerError::Purity(format!("no term at {at:?}")))?;
            let class = c
                .classes()
                .into_iter()
                .find(|x| x.to_string() == kill.class)
                .ok_or_else(|| LedgerError::Purity(format!("no {} at {at:?}", kill.class)))?;
            c.add(class, Coeff::int(-1));
            if !c.is_nonnegative() {
                return Err(LedgerError::Purity(format!("{} killed twice at {at:?}", kill.class)));
            }
        }
    }
    t.retain(|k, c| k.0 + k.1 <= max_k && !c.is_zero());
    for (&(p, q), c) in &t {
        if !c.is_pure_of_weight(p + q) {
            return Err(LedgerError::Purity(format!("E_inf at ({p},{q}) is {c}, not pure of weight {}", p + q)));
        }
    }
    Ok(t)
}

fn betti_low(t: &Terms, max_k: i64) -> Result<BTreeMap<i64, Coeff>, LedgerError> {
    let mut b: BTreeMap<i64, Coeff> = (0..=max_k).map(|k| (k, Coeff::ZERO)).collect();
    for (&(p, q), c) in t {
        let e = b.entry(p + q).or_default();
        *e = *e + c.dim()?;
    }
    Ok(b)
}

/// Options for the symbols that the final assembly can bind.
#[derive(Clone, Copy, Debug, Default)]
pub struct FinalOptions {
    /// Value of `r`; `None` keeps it symbolic, which purity cannot handle.
    pub r: Option<i64>,
    pub ea4: Option<i64>,
}

impl FinalOptions {
    /// `r = 0`, from the vanishing of the V(2,2) cohomology of A2.
    pub fn standard() -> Self {
        FinalOptions { r: Some(0), ea4: None }
    }
}

pub fn assemble_final(
    store: &ConstantStore,
    strata: &Strata,
    beta4_perf: &Row,
    opts: FinalOptions,
) -> Result<FinalReport, LedgerError> {
    let mut s = strata.clone();
    let mut perf = beta4_perf.clone();
    if let Some(r) = opts.r {
        if r == 0 {
            store.get("h.vanishing")?;
        }
        for row in [&mut s.beta4, &mut s.beta3, &mut s.beta2, &mut s.beta1, &mut s.jacobian, &mut perf] {
            *row = row.bind(Symbol::R, r);
        }
    }
    let page = big_page(store, &s, &s.beta4)?;
    let (kills, e_inf) = purity_filter(&page, PURITY_RANGE)?;

    let mut boundary_parts = Vec::new();
    let mut boundary = Coeff::ZERO;
    for (name, row) in s.boundary() {
        let e = row.euler()?;
        boundary = boundary + e;
        boundary_parts.push((name, e));
    }
    // e(A4^Vor) = e(boundary) + e(Jacobian closure) + e(its complement) = e(boundary) + e(A4).
    let ea4 = opts.ea4.map_or(Coeff::symbol(Symbol::EA4), Coeff::int);
    let total = boundary + ea4;
    let low = betti_low(&e_inf, PURITY_RANGE)?;
    let mut voronoi = BTreeMap::new();
    let mut rest = Coeff::ZERO;
    for (&k, &b) in &low {
        voronoi.insert(k, b);
        voronoi.insert(2 * DIM - k, b);
        let sign = if k % 2 == 0 { b } else { -b };
        rest = rest + sign.scale(2);
    }
    voronoi.insert(DIM, total - rest);

    // The perfect compactification: same strata apart from the first.
    let perfect_page = big_page(store, &s, &perf)?;
    if kills.iter().any(|k| k.from.0 == 1 || k.to.0 == 1) {
        store.get("perfect.weight2")?;
    }
    let perfect_e_inf = apply_kills(&perfect_page, &kills, PURITY_RANGE)?;
    let perfect_low = betti_low(&perfect_e_inf, PURITY_RANGE)?;
    Ok(FinalReport {
        page,
        kills,
        e_inf,
        boundary_parts,
        boundary_euler: boundary,
        voronoi,
        perfect_page,
        perfect_e_inf,
        perfect_low,
    })
}
