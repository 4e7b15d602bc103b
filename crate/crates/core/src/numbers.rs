//! Closed-form counting numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dual::Rational;

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// Coefficients `c_0, ..., c_{k-1}` of the unique polynomial of degree
/// below `k` through the `k` points `(xs[i], ys[i])`.
pub fn interpolate(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    assert_eq!(xs.len(), ys.len());
    let k = xs.len();
    let mut coeffs = vec![Rational::zero(); k];
    for i in 0..k {
        // basis polynomial prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for j in (0..k).filter(|&j| j != i) {
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * &xs[j];
            }
            basis = next;
            denom *= &xs[i] - &xs[j];
        }
        let scale = &ys[i] / denom;
        for (slot, c) in coeffs.iter_mut().zip(&basis) {
            *slot += c * &scale;
        }
    }
    coeffs
}

pub fn evaluate(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}
