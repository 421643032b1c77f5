use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::IntMatrix;

/// Coefficients `c[0..=n]` of `det(x I - m)`, lowest degree first.
pub fn charpoly(m: &IntMatrix) -> Vec<BigInt> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    if let Some(small) = m.to_i64() {
        if let Some(c) = charpoly_i64(m.rows(), &small) {
            return c.into_iter().map(BigInt::from).collect();
        }
    }
    let n = m.rows();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::from(1);
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            let v = next.get(i, i) + &c[n - k + 1];
            next.set(i, i, v);
        }
        let am = m * &next;
        let tr: BigInt = (0..n).map(|i| am.get(i, i).clone()).sum();
        c[n - k] = -tr / BigInt::from(k);
        mk = next;
    }
    c
}

/// Faddeev-LeVerrier in checked machine arithmetic. `None` on overflow.
pub fn charpoly_i64(n: usize, a: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.len(), n * n);
    let a: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut mk = vec![0i128; n * n];
    let mul = |x: &[i128], y: &[i128]| -> Option<Vec<i128>> {
        let mut out = vec![0i128; n * n];
        for i in 0..n {
            for k in 0..n {
                let xv = x[i * n + k];
                if xv == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = xv.checked_mul(y[k * n + j])?;
                    out[i * n + j] = out[i * n + j].checked_add(p)?;
                }
            }
        }
        Some(out)
    };
    for k in 1..=n {
        let mut next = mul(&a, &mk)?;
        for i in 0..n {
            next[i * n + i] = next[i * n + i].checked_add(c[n - k + 1])?;
        }
        let am = mul(&a, &next)?;
        let mut tr = 0i128;
        for i in 0..n {
            tr = tr.checked_add(am[i * n + i])?;
        }
        c[n - k] = -tr / k as i128;
        mk = next;
    }
    c.into_iter().map(|x| x.to_i64()).collect()
}
