use exact_linalg::IntMatrix;
use num_bigint::BigInt;

/// Square matrix with machine-integer entries, used inside searches.
/// Every product is overflow-checked.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallMat {
    pub n: usize,
    pub a: Vec<i64>,
}

impl SmallMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        SmallMat { n, a }
    }

    pub fn from_int(m: &IntMatrix) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        Some(SmallMat { n: m.rows(), a: m.to_i64()? })
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from_vec(self.n, self.n, self.a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.n + j]
    }

    pub fn mul(&self, o: &SmallMat) -> SmallMat {
        let n = self.n;
        let mut a = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = x.checked_mul(o.a[k * n + j]).expect("matrix entry overflow");
                    a[i * n + j] = a[i * n + j].checked_add(p).expect("matrix entry overflow");
                }
            }
        }
        SmallMat { n, a }
    }

    pub fn transpose(&self) -> SmallMat {
        let n = self.n;
        let mut a = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j];
            }
        }
        SmallMat { n, a }
    }

    /// `U A U^T` for a symmetric `A`.
    pub fn congruence(&self, sym: &SmallMat) -> SmallMat {
        self.mul(sym).mul(&self.transpose())
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.a[i * self.n + j] * v[j]).sum())
            .collect()
    }
}

