use exact_linalg::exterior::{subsets, Wedge};
use exact_linalg::BigRational;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ExtError;

/// `Λ(base) ⊗ Λ(fibre)` with base generators `f1..f_{n}` of bidegree (1,0)
/// followed by fibre generators of bidegree (0,1). Elements are [`Wedge`]s
/// on the combined generator list, base generators in the low bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedAlg {
    base: usize,
    fiber: Vec<String>,
}

impl BigradedAlg {
    pub fn new(base: usize, fiber: &[&str]) -> Self {
        assert!(base + fiber.len() <= 32, "at most 32 generators");
        BigradedAlg { base, fiber: fiber.iter().map(|s| s.to_string()).collect() }
    }

    pub fn base_len(&self) -> usize {
        self.base
    }

    pub fn fiber_len(&self) -> usize {
        self.fiber.len()
    }

    pub fn fiber_names(&self) -> &[String] {
        &self.fiber
    }

    pub fn len(&self) -> usize {
        self.base + self.fiber.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> Vec<String> {
        (1..=self.base).map(|i| format!("f{i}")).chain(self.fiber.iter().cloned()).collect()
    }

    /// The base generator `f_i`, counting from 1.
    pub fn f(&self, i: usize) -> Wedge {
        assert!((1..=self.base).contains(&i), "no generator f{i}");
        Wedge::generator(i - 1)
    }

    /// The fibre generator with the given name.
    pub fn q(&self, name: &str) -> Wedge {
        let k = self.fiber.iter().position(|n| n == name).unwrap_or_else(|| panic!("no fibre generator {name}"));
        Wedge::generator(self.base + k)
    }

    pub fn base_mask(&self) -> u32 {
        (1u32 << self.base) - 1
    }

    pub fn bidegree(&self, mask: u32) -> (usize, usize) {
        let b = self.base_mask();
        ((mask & b).count_ones() as usize, (mask & !b).count_ones() as usize)
    }

    /// Monomial basis of bidegree `(p, q)`, ordered by mask.
    pub fn basis(&self, p: usize, q: usize) -> Vec<u32> {
        if p > self.base || q > self.fiber.len() {
            return Vec::new();
        }
        let mut out: Vec<u32> = subsets(self.base, p)
            .into_iter()
            .flat_map(|b| subsets(self.fiber.len(), q).into_iter().map(move |f| b | f << self.base))
            .collect();
        out.sort();
        out
    }

    pub fn is_homogeneous(&self, w: &Wedge, p: usize, q: usize) -> bool {
        w.terms().all(|(m, _)| self.bidegree(*m) == (p, q))
    }

    pub fn render(&self, w: &Wedge) -> String {
        w.render(&self.names())
    }

    /// Parses sums like `3 f1^f2 - 2/3 Q2^f3 + f4`, with optional coefficients
    /// and `^` for the wedge product, read left to right.
    pub fn parse(&self, s: &str) -> Result<Wedge, ExtError> {
        let names = self.names();
        let bad = |why: &str| ExtError::Parse(format!("{s:?}: {why}"));
        let mut out = Wedge::zero();
        let mut sign = BigRational::one();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        if rest == "0" {
            return Ok(out);
        }
        loop {
            if let Some(r) = rest.strip_prefix('-') {
                sign = -sign;
                rest = r.trim_start();
                continue;
            }
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
                continue;
            }
            break;
        }
        while !rest.is_empty() {
            let end = rest.find([' ', '+', '-']).map_or(rest.len(), |i| i);
            let (tok, tail) = rest.split_at(end);
            if tok.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (coef, mono, tail) = if tok.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                let c = parse_rational(tok).ok_or_else(|| bad("coefficient"))?;
                let tail = tail.trim_start();
                let end = tail.find([' ', '+', '-']).map_or(tail.len(), |i| i);
                let (m, t) = tail.split_at(end);
                (c, if m.is_empty() { "1" } else { m }, t)
            } else {
                (BigRational::one(), tok, tail)
            };
            let mut term = Wedge::monomial(0, coef * &sign);
            if mono != "1" {
                for g in mono.split('^') {
                    let i = names.iter().position(|n| n == g).ok_or_else(|| bad("unknown generator"))?;
                    term = term.wedge(&Wedge::generator(i));
                }
            }
            out = out.add(&term);
            let t = tail.trim_start();
            sign = BigRational::one();
            rest = if let Some(r) = t.strip_prefix('+') {
                r.trim_start()
            } else if let Some(r) = t.strip_prefix('-') {
                sign = -sign;
                r.trim_start()
            } else if t.is_empty() {
                t
            } else {
                return Err(bad("missing operator"));
            };
            if rest.is_empty() && !t.is_empty() {
                return Err(bad("dangling sign"));
            }
        }
        Ok(out)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(a.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
