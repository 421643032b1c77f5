//! Sparse elements of an exterior algebra `Λ(Q^N)` with `N <= 32`.
//!
//! A monomial is a bitmask of generator indices, read in increasing order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::RatMatrix;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Wedge {
    terms: BTreeMap<u32, BigRational>,
}

/// Sign of moving generator `i` from the right end past every set bit above it.
fn insert_sign(mask: u32, i: usize) -> bool {
    (mask >> (i + 1)).count_ones() % 2 == 1
}

/// Sign and product of two monomials, or `None` when they share a generator.
pub fn monomial_product(a: u32, b: u32) -> Option<(bool, u32)> {
    if a & b != 0 {
        return None;
    }
    // Move each generator of b, in increasing order, into place.
    let mut neg = false;
    let mut acc = a;
    let mut rest = b;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // Generators of b below i have already been placed; they sit below i.
        neg ^= insert_sign(acc, i);
        acc |= 1 << i;
    }
    Some((neg, acc))
}

impl Wedge {
    pub fn zero() -> Self {
        Wedge::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn monomial(mask: u32, c: BigRational) -> Self {
        let mut w = Wedge::zero();
        if !c.is_zero() {
            w.terms.insert(mask, c);
        }
        w
    }

    /// The degree-one element `Σ v_i e_i`.
    pub fn vector(v: &[BigRational]) -> Self {
        let mut w = Wedge::zero();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                w.terms.insert(1 << i, c.clone());
            }
        }
        w
    }

    pub fn vector_i64(v: &[i64]) -> Self {
        let r: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
        Self::vector(&r)
    }

    pub fn generator(i: usize) -> Self {
        Self::monomial(1 << i, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mask: u32) -> BigRational {
        self.terms.get(&mask).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, mask: u32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(mask).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, o: &Wedge) -> Wedge {
        let mut w = self.clone();
        for (m, c) in &o.terms {
            w.add_term(*m, c);
        }
        w
    }

    pub fn sub(&self, o: &Wedge) -> Wedge {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Wedge {
        if c.is_zero() {
            return Wedge::zero();
        }
        Wedge { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn wedge(&self, o: &Wedge) -> Wedge {
        let mut out = Wedge::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((neg, m)) = monomial_product(*a, *b) {
                    let p = x * y;
                    out.add_term(m, &if neg { -p } else { p });
                }
            }
        }
        out
    }

    /// Image under the algebra map sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Wedge]) -> Wedge {
        let mut out = Wedge::zero();
        for (m, c) in &self.terms {
            let mut p = Wedge::one();
            let mut rest = *m;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                p = p.wedge(&images[i]);
                if p.is_zero() {
                    break;
                }
            }
            out = out.add(&p.scale(c));
        }
        out
    }

    /// Odd derivation sending generator `i` to the even element `images[i]`
    /// (generators without an image go to zero).
    pub fn derive(&self, images: &[Option<Wedge>]) -> Wedge {
        let mut out = Wedge::zero();
        for (m, c) in &self.terms {
            let mut before = 0usize;
            let mut rest = *m;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if let Some(Some(img)) = images.get(i) {
                    // The image is even, so it moves to the front freely.
                    let rem = Wedge::monomial(*m & !(1 << i), c.clone());
                    let t = img.wedge(&rem);
                    out = if before % 2 == 1 { out.sub(&t) } else { out.add(&t) };
                }
                before += 1;
            }
        }
        out
    }

    /// The homogeneous part whose monomials satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(u32) -> bool) -> Wedge {
        Wedge { terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect() }
    }

    /// Coordinates on an ordered monomial basis; panics on monomials outside it.
    pub fn to_coords(&self, basis: &[u32]) -> Vec<BigRational> {
        let pos: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut v = vec![BigRational::zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = *pos.get(m).expect("monomial in basis");
            v[i] = c.clone();
        }
        v
    }

    pub fn from_coords(basis: &[u32], v: &[BigRational]) -> Wedge {
        let mut w = Wedge::zero();
        for (m, c) in basis.iter().zip(v) {
            w.add_term(*m, c);
        }
        w
    }

    /// Renders with generator names, e.g. `2 f1^f2 - Q3`.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (m, c) in &self.terms {
            let mono: Vec<&str> = (0..32).filter(|i| m >> i & 1 == 1).map(|i| names[i].as_str()).collect();
            let mono = if mono.is_empty() { "1".to_string() } else { mono.join("^") };
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{mag} "));
            }
            s.push_str(&mono);
        }
        s
    }
}

/// All `k`-element subsets of `0..n` as masks, in increasing numeric order.
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out.sort();
    out
}

/// Matrix of `Λ^k m` on the basis [`subsets`]`(n, k)`: column `J` is the
/// wedge of the columns of `m` indexed by `J`.
pub fn exterior_power(m: &RatMatrix, k: usize) -> RatMatrix {
    let n = m.cols();
    assert_eq!(m.rows(), n, "square matrix");
    let basis = subsets(n, k);
    let cols: Vec<Wedge> = (0..n)
        .map(|j| Wedge::vector(&(0..n).map(|i| m.get(i, j).clone()).collect::<Vec<_>>()))
        .collect();
    let mut out = RatMatrix::zeros(basis.len(), basis.len());
    for (jc, &mask) in basis.iter().enumerate() {
        let w = Wedge::monomial(mask, BigRational::one()).substitute(&cols);
        for (i, c) in w.to_coords(&basis).into_iter().enumerate() {
            out.set(i, jc, c);
        }
    }
    out
}

/// Simultaneous fixed space of the given square matrices.
pub fn fixed_space(mats: &[RatMatrix], n: usize) -> Vec<Vec<BigRational>> {
    let mut basis: Vec<Vec<BigRational>> = RatMatrix::identity(n).row_vecs();
    for m in mats {
        if basis.is_empty() {
            break;
        }
        // Restrict (m - 1) to the current space and take the kernel.
        let k = basis.len();
        let mut a = RatMatrix::zeros(n, k);
        for (j, b) in basis.iter().enumerate() {
            let mb = m.apply(b);
            for i in 0..n {
                a.set(i, j, &mb[i] - &b[i]);
            }
        }
        let (_, ker) = crate::rank_and_kernel(&a);
        basis = ker
            .iter()
            .map(|c| {
                let mut v = vec![BigRational::zero(); n];
                for (x, b) in c.iter().zip(&basis) {
                    if x.is_zero() {
                        continue;
                    }
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += x * bi;
                    }
                }
                v
            })
            .collect();
    }
    basis
}
