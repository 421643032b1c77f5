use exact_linalg::BigRational;
use num_traits::{One, ToPrimitive};

use crate::ExtError;

/// Dimension of the irreducible `Sp(2g)` representation of highest weight
/// `λ`, by the Weyl dimension formula for type `C_g`.
pub fn sp_dim(g: usize, lambda: &[u32]) -> Result<usize, ExtError> {
    let bad = || ExtError::Partition(format!("{lambda:?} for g = {g}"));
    if !(1..=3).contains(&g) || lambda.len() > g || lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(bad());
    }
    // l_i = λ_i + g + 1 - i are the shifted weights.
    let l: Vec<i64> = (0..g).map(|i| *lambda.get(i).unwrap_or(&0) as i64 + (g - i) as i64).collect();
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let mut dim = BigRational::one();
    for i in 0..g {
        dim *= r(l[i], (g - i) as i64);
        for j in i + 1..g {
            let (a, b) = ((i + 1) as i64, (j + 1) as i64);
            dim *= r((l[i] - l[j]) * (l[i] + l[j]), (b - a) * (2 * g as i64 + 2 - a - b));
        }
    }
    debug_assert!(dim.is_integer());
    dim.to_integer().to_usize().ok_or_else(bad)
}
