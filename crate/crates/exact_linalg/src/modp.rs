use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::IntMatrix;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rank of the reduction of `m` modulo the prime `p`.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let bp = BigInt::from(p);
    let mut a: Vec<u64> = m
        .data()
        .iter()
        .map(|x| x.mod_floor(&bp).to_u64().expect("residue fits"))
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            a.swap(piv * cols + j, rank * cols + j);
        }
        let inv = pow_mod(a[rank * cols + c], p - 2, p);
        for i in 0..rows {
            if i == rank || a[i * cols + c] == 0 {
                continue;
            }
            let f = (a[i * cols + c] as u128 * inv as u128 % p as u128) as u64;
            for j in c..cols {
                let sub = (f as u128 * a[rank * cols + j] as u128 % p as u128) as u64;
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
