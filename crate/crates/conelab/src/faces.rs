use std::collections::BTreeSet;

use exact_linalg::{rank_and_kernel, RatMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use symquad::sym_dim;

use crate::Cone;

fn rat_rows(c: &Cone, mask: u32) -> RatMatrix {
    let d = sym_dim(c.genus());
    let rows: Vec<Vec<BigRational>> = (0..c.gens().len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| c.gens()[i].coords().into_iter().map(BigRational::from_integer).collect())
        .collect();
    RatMatrix::from_rows(&rows, d)
}

pub(crate) fn mask_rank(c: &Cone, mask: u32) -> usize {
    if mask == 0 {
        return 0;
    }
    rat_rows(c, mask).rank()
}

fn to_primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::from(1), |a, x| a.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    ints.into_iter().map(|x| x / &g).collect()
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(u32)) {
    fn rec(start: usize, n: usize, k: usize, acc: u32, f: &mut dyn FnMut(u32)) {
        if k == 0 {
            f(acc);
            return;
        }
        for i in start..=n - k {
            rec(i + 1, n, k - 1, acc | 1 << i, f);
        }
    }
    if k <= n {
        rec(0, n, k, 0, &mut f);
    }
}

/// Inward integral facet normals with the mask of generators on each facet.
/// Requires `dim >= 2`.
pub(crate) fn facet_normals(c: &Cone) -> Vec<(Vec<BigInt>, u32)> {
    let n = c.gens().len();
    let k = c.dim();
    let coords: Vec<Vec<BigInt>> = c.gens().iter().map(|q| q.coords()).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    combinations(n, k - 1, |mask| {
        // Any facet contains a rank k-1 subset, so scanning these subsets finds all facets.
        let m = rat_rows(c, mask);
        let (r, ker) = rank_and_kernel(&m);
        if r != k - 1 {
            return;
        }
        for b in ker {
            let b = to_primitive_integer(&b);
            let vals: Vec<BigInt> =
                coords.iter().map(|a| a.iter().zip(&b).map(|(x, y)| x * y).sum()).collect();
            if vals.iter().all(Zero::is_zero) {
                continue;
            }
            let pos = vals.iter().any(Signed::is_positive);
            let neg = vals.iter().any(Signed::is_negative);
            if !(pos && neg) {
                let zero_mask =
                    (0..n).filter(|&i| vals[i].is_zero()).fold(0u32, |a, i| a | 1 << i);
                if seen.insert(zero_mask) {
                    let normal = if neg { b.iter().map(|x| -x).collect() } else { b };
                    out.push((normal, zero_mask));
                }
            }
            // The kernel modulo the cone's perp is one-dimensional.
            break;
        }
    });
    out
}

/// All faces of a cone as generator subsets, closed under intersection.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    cone: Cone,
    masks: Vec<u32>,
    dims: Vec<usize>,
    facets: Vec<u32>,
}

impl FaceLattice {
    pub(crate) fn compute(c: &Cone) -> FaceLattice {
        let n = c.gens().len();
        let full: u32 = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
        let k = c.dim();
        let facets: Vec<u32> = match k {
            0 => Vec::new(),
            1 => vec![0],
            _ => facet_normals(c).into_iter().map(|(_, m)| m).collect(),
        };
        let mut all: BTreeSet<u32> = BTreeSet::new();
        all.insert(full);
        let mut frontier: Vec<u32> = vec![full];
        while let Some(f) = frontier.pop() {
            for &t in &facets {
                let m = f & t;
                if all.insert(m) {
                    frontier.push(m);
                }
            }
        }
        let mut faces: Vec<(usize, u32)> = all.into_iter().map(|m| (mask_rank(c, m), m)).collect();
        faces.sort();
        FaceLattice {
            cone: c.clone(),
            dims: faces.iter().map(|f| f.0).collect(),
            masks: faces.iter().map(|f| f.1).collect(),
            facets,
        }
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    /// Generator masks of all faces, sorted by dimension.
    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn facet_masks(&self) -> &[u32] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    /// Number of faces in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.dims.iter().copied().max().unwrap_or(0);
        let mut f = vec![0; top + 1];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    pub fn face(&self, i: usize) -> Cone {
        self.cone.subcone(self.masks[i])
    }

    pub fn faces_of_dim(&self, d: usize) -> Vec<Cone> {
        (0..self.len()).filter(|&i| self.dims[i] == d).map(|i| self.face(i)).collect()
    }

    /// Face `i` is contained in face `j`.
    pub fn is_face_of(&self, i: usize, j: usize) -> bool {
        self.masks[i] & !self.masks[j] == 0
    }
}
