use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::IntMatrix;

/// Smith normal form `u * m * v == d` with `u`, `v` unimodular and `d`
/// diagonal with each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries of `d`.
    pub fn divisors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().len()
    }
}

fn min_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((a, b)) if d.get(a, b).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    for t in 0..r.min(c) {
        loop {
            let Some((pi, pj)) = min_entry(&d, t) else {
                return Snf { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            let pivot = d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..r {
                let q = d.get(i, t).div_floor(&pivot);
                let nq = -q;
                d.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = d.get(t, j).div_floor(&pivot);
                let nq = -q;
                d.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..r).find(|&i| {
                (t + 1..c).any(|j| !d.get(i, j).mod_floor(&pivot).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { u, d, v }
}

pub fn elementary_divisors(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).divisors()
}

/// Basis of the integer kernel `{x : m x = 0}`. The result is saturated:
/// it spans all integer vectors of the rational kernel.
pub fn integral_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(m);
    let k = snf.rank();
    (k..m.cols()).map(|j| snf.v.column(j)).collect()
}

/// Basis of the saturation of the lattice spanned by `vectors` in `Z^n`.
pub fn saturate(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let b = IntMatrix::from_columns(vectors, n);
    let snf = smith_normal_form(&b);
    let k = snf.rank();
    let uinv = snf.u.inverse_unimodular().expect("transform is unimodular");
    (0..k).map(|j| uinv.column(j)).collect()
}
