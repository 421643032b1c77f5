use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// The unresolved numeric inputs carried symbolically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Symbol {
    /// rank of a weight graded piece of H^9_c(A3; V(1,1,0))
    #[serde(rename = "eps")]
    Eps,
    /// rank of H^3_c(A2; V(2,2))
    #[serde(rename = "r")]
    R,
    /// Euler number of A4
    #[serde(rename = "eA4")]
    EA4,
}

impl Symbol {
    pub fn name(self) -> &'static str {
        match self {
            Symbol::Eps => "eps",
            Symbol::R => "r",
            Symbol::EA4 => "e(A4)",
        }
    }
}

/// An integer-linear combination of `1, eps, r, eA4`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coeff {
    pub one: i64,
    pub eps: i64,
    pub r: i64,
    pub ea4: i64,
}

impl Coeff {
    pub const ZERO: Coeff = Coeff { one: 0, eps: 0, r: 0, ea4: 0 };

    pub fn int(n: i64) -> Self {
        Coeff { one: n, ..Coeff::ZERO }
    }

    pub fn symbol(s: Symbol) -> Self {
        let mut c = Coeff::ZERO;
        *c.slot(s) = 1;
        c
    }

    fn slot(&mut self, s: Symbol) -> &mut i64 {
        match s {
            Symbol::Eps => &mut self.eps,
            Symbol::R => &mut self.r,
            Symbol::EA4 => &mut self.ea4,
        }
    }

    pub fn get(&self, s: Symbol) -> i64 {
        match s {
            Symbol::Eps => self.eps,
            Symbol::R => self.r,
            Symbol::EA4 => self.ea4,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Coeff::ZERO
    }

    pub fn is_numeric(&self) -> bool {
        self.eps == 0 && self.r == 0 && self.ea4 == 0
    }

    pub fn as_int(&self) -> Option<i64> {
        self.is_numeric().then_some(self.one)
    }

    pub fn scale(&self, k: i64) -> Coeff {
        Coeff { one: self.one * k, eps: self.eps * k, r: self.r * k, ea4: self.ea4 * k }
    }

    /// Replaces a symbol by an integer value.
    pub fn bind(&self, s: Symbol, v: i64) -> Coeff {
        let mut c = *self;
        let k = c.get(s);
        *c.slot(s) = 0;
        c.one += k * v;
        c
    }

    /// Nonnegative for every admissible value: `eps ∈ {0,1}`, `r >= 0`;
    /// `eA4` terms are never sign-definite.
    pub fn is_nonnegative(&self) -> bool {
        self.ea4 == 0 && self.one >= 0 && self.r >= 0 && self.one + self.eps.min(0) >= 0
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, o: Coeff) -> Coeff {
        Coeff { one: self.one + o.one, eps: self.eps + o.eps, r: self.r + o.r, ea4: self.ea4 + o.ea4 }
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, o: Coeff) -> Coeff {
        self + (-o)
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        self.scale(-1)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, &str)> = Vec::new();
        if self.one != 0 {
            parts.push((self.one, ""));
        }
        for s in [Symbol::Eps, Symbol::R, Symbol::EA4] {
            if self.get(s) != 0 {
                parts.push((self.get(s), s.name()));
            }
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (k, name)) in parts.iter().enumerate() {
            let neg = *k < 0;
            let mag = k.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            if name.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                }
                out.push_str(name);
            }
        }
        write!(f, "{out}")
    }
}

/// A polynomial in `L` whose coefficients are [`Coeff`]s.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TatePoly {
    terms: BTreeMap<i32, Coeff>,
}

impl TatePoly {
    pub fn zero() -> Self {
        TatePoly::default()
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(0, c)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Coeff::int(n))
    }

    /// `c L^k`
    pub fn monomial(k: i32, c: Coeff) -> Self {
        let mut p = TatePoly::zero();
        p.add_term(k, c);
        p
    }

    /// `L^k`
    pub fn l(k: i32) -> Self {
        Self::monomial(k, Coeff::int(1))
    }

    /// Builds from `(exponent, integer coefficient)` pairs.
    pub fn from_ints(terms: &[(i32, i64)]) -> Self {
        let mut p = TatePoly::zero();
        for &(k, c) in terms {
            p.add_term(k, Coeff::int(c));
        }
        p
    }

    pub fn add_term(&mut self, k: i32, c: Coeff) {
        let e = self.terms.entry(k).or_default();
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: i32) -> Coeff {
        self.terms.get(&k).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, Coeff)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn eval_at_one(&self) -> Coeff {
        self.terms.values().fold(Coeff::ZERO, |a, b| a + *b)
    }

    pub fn bind(&self, s: Symbol, v: i64) -> TatePoly {
        let mut p = TatePoly::zero();
        for (k, c) in self.terms() {
            p.add_term(k, c.bind(s, v));
        }
        p
    }

    /// Product; each pair of multiplied coefficients must have a numeric side.
    pub fn try_mul(&self, o: &TatePoly) -> Option<TatePoly> {
        let mut p = TatePoly::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                let c = match (x.as_int(), y.as_int()) {
                    (Some(m), _) => y.scale(m),
                    (_, Some(m)) => x.scale(m),
                    _ => return None,
                };
                p.add_term(a + b, c);
            }
        }
        Some(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut coeffs = serde_json::Map::new();
        for (k, c) in self.terms() {
            let mut m = serde_json::Map::new();
            if c.one != 0 {
                m.insert("1".into(), c.one.into());
            }
            for s in [Symbol::Eps, Symbol::R, Symbol::EA4] {
                if c.get(s) != 0 {
                    let key = serde_json::to_value(s).expect("symbol").as_str().expect("str").to_string();
                    m.insert(key, c.get(s).into());
                }
            }
            coeffs.insert(k.to_string(), m.into());
        }
        serde_json::json!({ "coeffs": coeffs })
    }
}

impl Add for &TatePoly {
    type Output = TatePoly;
    fn add(self, o: &TatePoly) -> TatePoly {
        let mut p = self.clone();
        for (k, c) in o.terms() {
            p.add_term(k, c);
        }
        p
    }
}

impl Sub for &TatePoly {
    type Output = TatePoly;
    fn sub(self, o: &TatePoly) -> TatePoly {
        self + &(-o)
    }
}

impl Neg for &TatePoly {
    type Output = TatePoly;
    fn neg(self) -> TatePoly {
        TatePoly { terms: self.terms.iter().map(|(k, c)| (*k, -*c)).collect() }
    }
}

impl Mul for &TatePoly {
    type Output = TatePoly;
    fn mul(self, o: &TatePoly) -> TatePoly {
        self.try_mul(o).expect("product of two symbolic coefficients")
    }
}

impl fmt::Display for TatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let numeric = c.as_int();
            let (neg, body) = match numeric {
                Some(n) => (n < 0, if n.abs() == 1 && *k != 0 { String::new() } else { n.abs().to_string() }),
                None => (false, format!("({c})")),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
            match *k {
                0 => {}
                1 => out.push('L'),
                k => out.push_str(&format!("L^{k}")),
            }
        }
        write!(f, "{out}")
    }
}

/// Exchanges the coefficient of `L^k` with that of `L^(n-k)`.
pub fn duality(p: &TatePoly, n: i32) -> TatePoly {
    let mut out = TatePoly::zero();
    for (k, c) in p.terms() {
        out.add_term(n - k, c);
    }
    out
}

/// Parses integer polynomials such as `L^5-2L^4+L-1` (spaces and `*` ignored).
impl std::str::FromStr for TatePoly {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if s.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut p = TatePoly::zero();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let (term, tail) = body.split_at(end);
            rest = tail;
            let (coef, exp) = match term.find('L') {
                None => (term, 0),
                Some(i) => {
                    let e = &term[i + 1..];
                    let e = if e.is_empty() {
                        1
                    } else {
                        e.strip_prefix('^').ok_or_else(|| format!("bad term {term}"))?.parse().map_err(|_| format!("bad exponent in {term}"))?
                    };
                    (&term[..i], e)
                }
            };
            let c: i64 = if coef.is_empty() {
                if exp == 0 {
                    return Err(format!("bad term {term:?}"));
                }
                1
            } else {
                coef.parse().map_err(|_| format!("bad coefficient in {term}"))?
            };
            p.add_term(exp, Coeff::int(if neg { -c } else { c }));
        }
        Ok(p)
    }
}
