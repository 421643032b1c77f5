use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use torus_coh::{Coeff, Symbol};

use crate::LedgerError;

/// The isotypic type of a graded piece, before twisting.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    /// The trivial Hodge structure `Q` of weight 0.
    Tate,
    /// The irreducible local system `V_λ` of `Sp(2g)`, of weight `|λ|`.
    Local { g: usize, lambda: Vec<u32> },
    /// A non-Tate slot of unknown structure; `bound` caps the untwisted weight.
    Opaque { label: String, bound: i64 },
}

/// A twisted type: `Q(-t)`, `V_λ(-t)` or `H(-t)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Class {
    pub kind: Kind,
    pub twist: i64,
}

/// How two classes may interact under a morphism of weight-graded objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Compat {
    Same,
    /// No nonzero morphism: different weights or different irreducible types.
    Disjoint,
    /// One side is opaque and the weights do not separate them.
    Unknown,
}

impl Class {
    pub fn tate(twist: i64) -> Self {
        Class { kind: Kind::Tate, twist }
    }

    /// `V_λ(-twist)`; `λ` is padded with zeros to length `g`.
    pub fn local(g: usize, lambda: &[u32], twist: i64) -> Self {
        let mut lambda = lambda.to_vec();
        if lambda.len() < g {
            lambda.resize(g, 0);
        }
        Class { kind: Kind::Local { g, lambda }, twist }
    }

    pub fn opaque(label: &str, bound: i64, twist: i64) -> Self {
        Class { kind: Kind::Opaque { label: label.to_string(), bound }, twist }
    }

    /// The exact weight, when known.
    pub fn weight(&self) -> Option<i64> {
        match &self.kind {
            Kind::Tate => Some(2 * self.twist),
            Kind::Local { lambda, .. } => Some(lambda.iter().map(|&x| x as i64).sum::<i64>() + 2 * self.twist),
            Kind::Opaque { .. } => None,
        }
    }

    /// An upper bound for the weight.
    pub fn weight_bound(&self) -> i64 {
        match &self.kind {
            Kind::Opaque { bound, .. } => bound + 2 * self.twist,
            _ => self.weight().expect("definite weight"),
        }
    }

    pub fn is_tate(&self) -> bool {
        self.kind == Kind::Tate
    }

    pub fn twisted(&self, t: i64) -> Class {
        Class { kind: self.kind.clone(), twist: self.twist + t }
    }

    /// Rank of the underlying vector space, per unit of multiplicity.
    pub fn rank(&self) -> Result<usize, LedgerError> {
        match &self.kind {
            Kind::Tate | Kind::Opaque { .. } => Ok(1),
            Kind::Local { g, lambda } => {
                extfib::sp_dim(*g, lambda).map_err(|e| LedgerError::Constant(format!("{self}: {e}")))
            }
        }
    }

    /// The class paired with this one under a duality into `Q(-n)`:
    /// `V(-t)` goes to `V(-(n - t - w))` for `V` of weight `w`.
    pub fn dual(&self, n: i64) -> Result<Class, LedgerError> {
        match &self.kind {
            Kind::Tate => Ok(Class::tate(n - self.twist)),
            Kind::Local { lambda, .. } => {
                let w: i64 = lambda.iter().map(|&x| x as i64).sum();
                Ok(self.twisted(n - 2 * self.twist - w))
            }
            Kind::Opaque { label, .. } => Err(LedgerError::Opaque(format!("no dual for {label}"))),
        }
    }
}

pub fn compat(a: &Class, b: &Class) -> Compat {
    if a == b {
        return Compat::Same;
    }
    match (&a.kind, &b.kind) {
        (Kind::Opaque { .. }, Kind::Opaque { .. }) => Compat::Unknown,
        (Kind::Opaque { .. }, _) => {
            if b.weight_bound() > a.weight_bound() {
                Compat::Disjoint
            } else {
                Compat::Unknown
            }
        }
        (_, Kind::Opaque { .. }) => compat(b, a),
        _ => Compat::Disjoint,
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match &self.kind {
            Kind::Tate => "Q".to_string(),
            Kind::Local { lambda, .. } => format!("V{}", lambda.iter().map(u32::to_string).collect::<String>()),
            Kind::Opaque { label, .. } => label.clone(),
        };
        match self.twist {
            0 => write!(f, "{head}"),
            t if t > 0 => write!(f, "{head}(-{t})"),
            t => write!(f, "{head}({})", -t),
        }
    }
}

/// Whether a cell is a single weight or a sum of graded pieces of an extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Pure,
    GradedPiece,
}

/// One weight-graded constituent of a cohomology group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedEntry {
    pub degree: i64,
    /// `None` for opaque slots.
    pub weight: Option<i64>,
    pub class: String,
    pub mult: String,
    pub tag: Tag,
}

/// A weight-graded object: classes with (possibly symbolic) multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cell(BTreeMap<Class, Coeff>);

impl Cell {
    pub fn new() -> Self {
        Cell::default()
    }

    pub fn of(class: Class, mult: Coeff) -> Self {
        let mut c = Cell::new();
        c.add(class, mult);
        c
    }

    pub fn tate(twist: i64, n: i64) -> Self {
        Cell::of(Class::tate(twist), Coeff::int(n))
    }

    pub fn add(&mut self, class: Class, mult: Coeff) {
        let e = self.0.entry(class.clone()).or_default();
        *e = *e + mult;
        if e.is_zero() {
            self.0.remove(&class);
        }
    }

    pub fn add_cell(&mut self, other: &Cell) {
        for (c, m) in other.iter() {
            self.add(c.clone(), *m);
        }
    }

    pub fn mult(&self, class: &Class) -> Coeff {
        self.0.get(class).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Class, &Coeff)> {
        self.0.iter()
    }

    pub fn classes(&self) -> Vec<Class> {
        self.0.keys().cloned().collect()
    }

    pub fn twisted(&self, t: i64) -> Cell {
        Cell(self.0.iter().map(|(c, m)| (c.twisted(t), *m)).collect())
    }

    pub fn scaled(&self, k: i64) -> Cell {
        let mut out = Cell::new();
        for (c, m) in self.iter() {
            out.add(c.clone(), m.scale(k));
        }
        out
    }

    pub fn bind(&self, s: Symbol, v: i64) -> Cell {
        let mut out = Cell::new();
        for (c, m) in self.iter() {
            out.add(c.clone(), m.bind(s, v));
        }
        out
    }

    /// Total rank as a vector space.
    pub fn dim(&self) -> Result<Coeff, LedgerError> {
        let mut d = Coeff::ZERO;
        for (c, m) in self.iter() {
            d = d + m.scale(c.rank()? as i64);
        }
        Ok(d)
    }

    /// Sum of multiplicities, counting each irreducible once.
    pub fn count(&self) -> Coeff {
        self.iter().fold(Coeff::ZERO, |a, (_, m)| a + *m)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(Coeff::is_nonnegative)
    }

    pub fn tag(&self) -> Tag {
        let w: std::collections::BTreeSet<Option<i64>> = self.0.keys().map(Class::weight).collect();
        if w.len() <= 1 {
            Tag::Pure
        } else {
            Tag::GradedPiece
        }
    }

    pub fn is_pure_of_weight(&self, w: i64) -> bool {
        self.0.keys().all(|c| c.weight() == Some(w))
    }

    pub fn entries(&self, degree: i64) -> Vec<GradedEntry> {
        let tag = self.tag();
        self.display_order()
            .into_iter()
            .map(|(c, m)| GradedEntry { degree, weight: c.weight(), class: c.to_string(), mult: m.to_string(), tag })
            .collect()
    }

    /// Highest twist first, as tables are usually written.
    fn display_order(&self) -> Vec<(&Class, &Coeff)> {
        let mut v: Vec<_> = self.0.iter().collect();
        v.sort_by(|a, b| b.0.twist.cmp(&a.0.twist).then_with(|| a.0.cmp(b.0)));
        v
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .display_order()
            .into_iter()
            .map(|(c, m)| match m.as_int() {
                Some(1) => c.to_string(),
                Some(n) => format!("{c}^{n}"),
                None => format!("{c}^({m})"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses multiplicities such as `3`, `eps`, `1+eps`, `r`, `2-eps`.
pub fn parse_coeff(s: &str) -> Result<Coeff, LedgerError> {
    let bad = || LedgerError::Parse(format!("coefficient {s:?}"));
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(bad());
    }
    let mut out = Coeff::ZERO;
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'+' => (1, &rest[1..]),
            b'-' => (-1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let term = &body[..end];
        rest = &body[end..];
        let digits = term.chars().take_while(char::is_ascii_digit).count();
        let k: i64 = if digits == 0 { 1 } else { term[..digits].parse().map_err(|_| bad())? };
        let unit = match &term[digits..] {
            "" if digits > 0 => Coeff::int(1),
            "eps" => Coeff::symbol(Symbol::Eps),
            "r" => Coeff::symbol(Symbol::R),
            "eA4" | "e(A4)" => Coeff::symbol(Symbol::EA4),
            _ => return Err(bad()),
        };
        out = out + unit.scale(sign * k);
    }
    Ok(out)
}

/// Parses Tate cells written as `Q(-3)^3 + Q(-1)` or `Q(-5)^(1+eps)`; `0` is the zero cell.
impl FromStr for Cell {
    type Err = LedgerError;

    fn from_str(s: &str) -> Result<Cell, LedgerError> {
        let bad = || LedgerError::Parse(format!("cell {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cell = Cell::new();
        if t == "0" {
            return Ok(cell);
        }
        for term in split_top(&t) {
            let rest = term.strip_prefix('Q').ok_or_else(bad)?;
            let (twist, rest) = if let Some(r) = rest.strip_prefix("(-") {
                let close = r.find(')').ok_or_else(bad)?;
                (r[..close].parse::<i64>().map_err(|_| bad())?, &r[close + 1..])
            } else {
                (0, rest)
            };
            let mult = match rest.strip_prefix('^') {
                None if rest.is_empty() => Coeff::int(1),
                None => return Err(bad()),
                Some(m) => parse_coeff(m.trim_start_matches('(').trim_end_matches(')'))?,
            };
            cell.add(Class::tate(twist), mult);
        }
        Ok(cell)
    }
}

fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// A graded object indexed by cohomological degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Row(pub BTreeMap<i64, Cell>);

impl Row {
    pub fn new() -> Self {
        Row::default()
    }

    pub fn from_cells(cells: &[(i64, Cell)]) -> Self {
        let mut r = Row::new();
        for (k, c) in cells {
            r.add(*k, c);
        }
        r
    }

    /// Tate rows from `(degree, "Q(-t)^n + ...")` pairs.
    pub fn parse(cells: &[(i64, &str)]) -> Result<Self, LedgerError> {
        let mut r = Row::new();
        for (k, s) in cells {
            r.add(*k, &s.parse()?);
        }
        Ok(r)
    }

    pub fn add(&mut self, k: i64, c: &Cell) {
        let e = self.0.entry(k).or_default();
        e.add_cell(c);
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn get(&self, k: i64) -> Cell {
        self.0.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Cell)> {
        self.0.iter()
    }

    pub fn twisted(&self, t: i64) -> Row {
        Row(self.0.iter().map(|(k, c)| (*k, c.twisted(t))).collect())
    }

    pub fn bind(&self, s: Symbol, v: i64) -> Row {
        let mut out = Row::new();
        for (k, c) in self.iter() {
            out.add(*k, &c.bind(s, v));
        }
        out
    }

    /// Betti numbers `b_k`, symbolic where the multiplicities are.
    pub fn betti(&self) -> Result<BTreeMap<i64, Coeff>, LedgerError> {
        let mut out = BTreeMap::new();
        for (k, c) in self.iter() {
            let d = c.dim()?;
            if !d.is_zero() {
                out.insert(*k, d);
            }
        }
        Ok(out)
    }

    /// `Σ (-1)^k b_k`.
    pub fn euler(&self) -> Result<Coeff, LedgerError> {
        let mut e = Coeff::ZERO;
        for (k, d) in self.betti()? {
            e = e + if k % 2 == 0 { d } else { -d };
        }
        Ok(e)
    }

    /// `H^k` to `H_c^{2n-k}` (or back) for an orientable orbifold of complex dimension `n`.
    pub fn dual(&self, n: i64) -> Result<Row, LedgerError> {
        let mut out = Row::new();
        for (k, c) in self.iter() {
            for (cl, m) in c.iter() {
                out.add(2 * n - k, &Cell::of(cl.dual(n)?, *m));
            }
        }
        Ok(out)
    }

    pub fn entries(&self) -> Vec<GradedEntry> {
        self.iter().flat_map(|(k, c)| c.entries(*k)).collect()
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.iter() {
            writeln!(f, "{k:>3} | {c}")?;
        }
        Ok(())
    }
}

/// `b_k` for `0 <= k <= top`, rendered with symbols.
pub fn betti_line(b: &BTreeMap<i64, Coeff>, degrees: &[i64]) -> Vec<String> {
    degrees.iter().map(|k| b.get(k).copied().unwrap_or_default().to_string()).collect()
}
