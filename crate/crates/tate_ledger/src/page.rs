use std::collections::BTreeMap;

use serde::Serialize;
use torus_coh::{Coeff, Symbol};

use crate::class::{compat, Cell, Class, Compat, Row};
use crate::LedgerError;

/// Where a differential rank came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "source", rename_all = "kebab-case")]
pub enum Provenance {
    /// Computed by another crate of this workspace.
    Computed(String),
    /// Forced to vanish: source and target share no weight or type.
    Weight,
    /// Taken from the constant store.
    Imported(String),
}

/// A differential rank supplied before running the page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Declared {
    pub r: usize,
    pub p: i64,
    pub q: i64,
    pub class: Class,
    pub rank: u64,
    pub provenance: Provenance,
}

/// Every differential between two nonzero terms, with its rank and provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    pub r: usize,
    pub from: (i64, i64),
    pub to: (i64, i64),
    /// `None` when the rank was forced to vanish on every class.
    pub class: Option<String>,
    pub rank: u64,
    pub provenance: Provenance,
}

pub type Terms = BTreeMap<(i64, i64), Cell>;

/// A spectral sequence with `d_r : E_r^{p,q} -> E_r^{p+r,q-r+1}`, starting at page `start`.
#[derive(Clone, Debug, Default)]
pub struct SpecPage {
    pub name: String,
    pub start: usize,
    pub entries: Terms,
    pub declared: Vec<Declared>,
}

/// The outcome of running a page to `E_∞`.
#[derive(Clone, Debug)]
pub struct PageRun {
    pub name: String,
    /// `E_r` for every `r` from the start page on; the last one is `E_∞`.
    pub pages: Vec<(usize, Terms)>,
    pub ranks: Vec<RankRecord>,
    pub euler_start: Coeff,
    pub euler_end: Coeff,
}

impl PageRun {
    pub fn e_inf(&self) -> &Terms {
        &self.pages.last().expect("at least one page").1
    }

    /// The abutment, graded by total degree `p + q`.
    pub fn abutment(&self) -> Row {
        total(self.e_inf())
    }

    pub fn page(&self, r: usize) -> Option<&Terms> {
        self.pages.iter().find(|(i, _)| *i == r).map(|(_, t)| t)
    }

    pub fn rank_of(&self, r: usize, from: (i64, i64)) -> u64 {
        self.ranks.iter().filter(|x| x.r == r && x.from == from).map(|x| x.rank).sum()
    }
}

pub fn total(t: &Terms) -> Row {
    let mut row = Row::new();
    for (&(p, q), c) in t {
        row.add(p + q, c);
    }
    row
}

/// `Σ (-1)^{p+q} dim E^{p,q}`.
pub fn euler_of(t: &Terms) -> Result<Coeff, LedgerError> {
    total(t).euler()
}

impl SpecPage {
    pub fn new(name: &str, start: usize) -> Self {
        SpecPage { name: name.to_string(), start, ..Default::default() }
    }

    pub fn put(&mut self, p: i64, q: i64, c: &Cell) {
        let e = self.entries.entry((p, q)).or_default();
        e.add_cell(c);
        if e.is_zero() {
            self.entries.remove(&(p, q));
        }
    }

    /// Places a row as column `p`: degree `k` goes to `(p, k - p)`.
    pub fn put_column(&mut self, p: i64, row: &Row) {
        for (k, c) in row.iter() {
            self.put(p, k - p, c);
        }
    }

    pub fn get(&self, p: i64, q: i64) -> Cell {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn declare(&mut self, r: usize, p: i64, q: i64, class: Class, rank: u64, provenance: Provenance) {
        self.declared.push(Declared { r, p, q, class, rank, provenance });
    }

    pub fn bind(&self, s: Symbol, v: i64) -> SpecPage {
        let mut out = SpecPage { entries: Terms::new(), ..self.clone() };
        for (&(p, q), c) in &self.entries {
            out.put(p, q, &c.bind(s, v));
        }
        out
    }

    /// The same page with every declared rank set to zero.
    pub fn without_differentials(&self) -> SpecPage {
        let mut out = self.clone();
        for d in &mut out.declared {
            d.rank = 0;
        }
        out
    }

    /// Runs the sequence. Every pair of nonzero terms joined by a `d_r` must
    /// either be separated by weights or carry a declared rank on each shared
    /// class; declared ranks must fit the terms they join.
    pub fn run(&self) -> Result<PageRun, LedgerError> {
        for (&(p, q), c) in &self.entries {
            if !c.is_nonnegative() {
                return Err(LedgerError::NegativeMultiplicity { page: self.name.clone(), r: self.start, p, q });
            }
        }
        let cols: Vec<i64> = self.entries.keys().map(|k| k.0).collect();
        let span = match (cols.iter().min(), cols.iter().max()) {
            (Some(a), Some(b)) => (b - a) as usize,
            _ => 0,
        };
        let mut used = vec![false; self.declared.len()];
        let mut ranks = Vec::new();
        let mut cur = self.entries.clone();
        let mut pages = vec![(self.start, cur.clone())];
        for r in self.start..=span.max(self.start) {
            let mut next = cur.clone();
            for (&(p, q), src) in &cur {
                let to = (p + r as i64, q - r as i64 + 1);
                let Some(tgt) = cur.get(&to) else { continue };
                let mut any = false;
                for (cs, ms) in src.iter() {
                    for (ct, mt) in tgt.iter() {
                        match compat(cs, ct) {
                            Compat::Disjoint => continue,
                            Compat::Unknown => {
                                return Err(LedgerError::Undetermined {
                                    page: self.name.clone(),
                                    r,
                                    p,
                                    q,
                                    class: format!("{cs} -> {ct}"),
                                })
                            }
                            Compat::Same => {}
                        }
                        any = true;
                        let i = self
                            .declared
                            .iter()
                            .position(|d| (d.r, d.p, d.q) == (r, p, q) && &d.class == cs)
                            .ok_or_else(|| LedgerError::Undetermined {
                                page: self.name.clone(),
                                r,
                                p,
                                q,
                                class: cs.to_string(),
                            })?;
                        used[i] = true;
                        let d = &self.declared[i];
                        let k = Coeff::int(d.rank as i64);
                        if !(*ms - k).is_nonnegative() || !(*mt - k).is_nonnegative() {
                            return Err(LedgerError::RankTooLarge {
                                page: self.name.clone(),
                                r,
                                p,
                                q,
                                rank: d.rank,
                                available: ms.to_string(),
                                target: mt.to_string(),
                            });
                        }
                        ranks.push(RankRecord {
                            r,
                            from: (p, q),
                            to,
                            class: Some(cs.to_string()),
                            rank: d.rank,
                            provenance: d.provenance.clone(),
                        });
                        if d.rank > 0 {
                            sub(&mut next, (p, q), cs, k);
                            sub(&mut next, to, cs, k);
                        }
                    }
                }
                if !any {
                    ranks.push(RankRecord { r, from: (p, q), to, class: None, rank: 0, provenance: Provenance::Weight });
                }
            }
            for (&(p, q), c) in &next {
                if !c.is_nonnegative() {
                    return Err(LedgerError::NegativeMultiplicity { page: self.name.clone(), r: r + 1, p, q });
                }
            }
            if next != cur {
                pages.push((r + 1, next.clone()));
            }
            cur = next;
        }
        // A declared vanishing may refer to a term that a binding removed.
        if let Some(i) = (0..used.len()).find(|&i| !used[i] && self.declared[i].rank > 0) {
            let d = &self.declared[i];
            return Err(LedgerError::UnusedDeclaration {
                page: self.name.clone(),
                r: d.r,
                p: d.p,
                q: d.q,
                class: d.class.to_string(),
            });
        }
        let run = PageRun {
            name: self.name.clone(),
            euler_start: euler_of(&self.entries)?,
            euler_end: euler_of(&cur)?,
            pages,
            ranks,
        };
        if run.euler_start != run.euler_end {
            return Err(LedgerError::Euler { page: self.name.clone() });
        }
        Ok(run)
    }
}

fn sub(t: &mut Terms, at: (i64, i64), class: &Class, k: Coeff) {
    let c = t.entry(at).or_default();
    c.add(class.clone(), -k);
    if c.is_zero() {
        t.remove(&at);
    }
}
