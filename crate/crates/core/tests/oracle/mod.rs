//! Reference implementations for the acceptance and integration tests. Each
//! one takes a different route from the library: brute-force partitions,
//! Kreweras by permutations, Moebius by block formula, and the functional
//! recursion for moments.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use typeb::{DualScalar, Rational};

pub type Blocks = Vec<Vec<usize>>;

/// Catalan numbers `C_0..=C_max` by `C_{n+1} = sum C_i C_{n-i}`.
pub fn catalans(max: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::one()];
    for n in 0..max {
        let next = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    c
}

/// Row `n` of Pascal's triangle.
pub fn pascal_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::one(); row.len() + 1];
        for i in 1..row.len() {
            next[i] = &row[i - 1] + &row[i];
        }
        row = next;
    }
    row
}

/// Every set partition of `[n]`, blocks 1-based and sorted.
pub fn all_partitions(n: usize) -> Vec<Blocks> {
    fn go(i: usize, n: usize, blocks: &mut Blocks, out: &mut Vec<Blocks>) {
        if i > n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut out);
    out
}

fn block_index(p: &Blocks, n: usize) -> Vec<usize> {
    let mut idx = vec![0; n + 1];
    for (b, block) in p.iter().enumerate() {
        for &e in block {
            idx[e] = b;
        }
    }
    idx
}

/// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn is_noncrossing(p: &Blocks, n: usize) -> bool {
    let idx = block_index(p, n);
    for a in 1..=n {
        for b in a + 1..=n {
            for c in b + 1..=n {
                if idx[a] != idx[c] || idx[a] == idx[b] {
                    continue;
                }
                for d in c + 1..=n {
                    if idx[b] == idx[d] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn nc(n: usize) -> Vec<Blocks> {
    all_partitions(n).into_iter().filter(|p| is_noncrossing(p, n)).collect()
}

pub fn canonical(mut p: Blocks) -> Blocks {
    for b in &mut p {
        b.sort_unstable();
    }
    p.sort();
    p
}

/// `Kr(p)` as the cycles of `p^{-1} gamma`, where `p` cycles each block
/// upwards and `gamma = (1 2 ... n)`.
pub fn kreweras(p: &Blocks, n: usize) -> Blocks {
    let mut inv = vec![0; n + 1];
    for block in p {
        let mut b = block.clone();
        b.sort_unstable();
        for k in 0..b.len() {
            inv[b[(k + 1) % b.len()]] = b[k];
        }
    }
    let sigma = |i: usize| inv[i % n + 1];
    let mut seen = vec![false; n + 1];
    let mut out = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = sigma(i);
        }
        out.push(cycle);
    }
    canonical(out)
}

/// Every block of `p` lies inside a block of `q`.
pub fn refines(p: &Blocks, q: &Blocks, n: usize) -> bool {
    let idx = block_index(q, n);
    p.iter().all(|b| b.iter().all(|&e| idx[e] == idx[b[0]]))
}

/// `mu(p, 1_n) = prod_{B in Kr(p)} (-1)^{|B|-1} Catalan(|B|-1)`.
pub fn moebius_to_top(p: &Blocks, n: usize) -> BigInt {
    let c = catalans(n);
    kreweras(p, n)
        .iter()
        .map(|b| if b.len() % 2 == 1 { c[b.len() - 1].clone() } else { -c[b.len() - 1].clone() })
        .product()
}

fn poly_mul(a: &[DualScalar], b: &[DualScalar], len: usize) -> Vec<DualScalar> {
    let mut out = vec![DualScalar::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `m_n = sum_s k_s [z^{n-s}] M(z)^s` with `M(z) = 1 + sum m_i z^i`.
pub fn moments_from_cumulants(k: &[DualScalar]) -> Vec<DualScalar> {
    let order = k.len();
    let mut m = vec![DualScalar::one()];
    for n in 1..=order {
        m.push(DualScalar::zero());
        let mut power = vec![DualScalar::one()];
        let mut total = DualScalar::zero();
        for s in 1..=n {
            power = poly_mul(&power, &m, n);
            total += &k[s - 1] * &power[n - s];
        }
        m[n] = total;
    }
    m.remove(0);
    m
}

/// Inverse of [`moments_from_cumulants`], solved one order at a time.
pub fn cumulants_from_moments(m: &[DualScalar]) -> Vec<DualScalar> {
    let order = m.len();
    let full: Vec<DualScalar> = std::iter::once(DualScalar::one()).chain(m.iter().cloned()).collect();
    let mut k: Vec<DualScalar> = Vec::new();
    for n in 1..=order {
        let mut power = vec![DualScalar::one()];
        let mut rest = DualScalar::zero();
        for s in 1..n {
            power = poly_mul(&power, &full[..n], n);
            rest += &k[s - 1] * &power[n - s];
        }
        k.push(&m[n - 1] - &rest);
    }
    k
}

/// `prod_{B in p} f_{|B|}` with `f[0]` the coefficient of `z`.
pub fn cf(f: &[DualScalar], p: &Blocks) -> DualScalar {
    p.iter().map(|b| f[b.len() - 1].clone()).fold(DualScalar::one(), |a, b| a * b)
}

/// Boxed convolution from its definition; `first_singleton` keeps only the
/// partitions with `{1}` as a block.
pub fn box_conv(f: &[DualScalar], g: &[DualScalar], first_singleton: bool) -> Vec<DualScalar> {
    (1..=f.len())
        .map(|n| {
            nc(n)
                .iter()
                .filter(|p| !first_singleton || p.iter().any(|b| b == &vec![1]))
                .map(|p| cf(f, p) * cf(g, &kreweras(p, n)))
                .fold(DualScalar::zero(), |a, b| a + b)
        })
        .collect()
}

/// `f(g(z))` for series without constant term, coefficient of `z^n` at `n - 1`.
pub fn compose(f: &[DualScalar], g: &[DualScalar]) -> Vec<DualScalar> {
    let len = f.len() + 1;
    let inner: Vec<DualScalar> = std::iter::once(DualScalar::zero()).chain(g.iter().cloned()).collect();
    let mut out = vec![DualScalar::zero(); len];
    let mut power = vec![DualScalar::one()];
    for c in f {
        power = poly_mul(&power, &inner, len);
        for (slot, p) in out.iter_mut().zip(&power) {
            *slot += c * p;
        }
    }
    out.remove(0);
    out
}

/// Compositional inverse by the iteration `g <- g + f_1^{-1} (z - f(g))`,
/// which fixes at least one more coefficient per step.
pub fn invert(f: &[DualScalar]) -> Vec<DualScalar> {
    let lead_inv = f[0].inverse().expect("invertible leading coefficient");
    let mut g = vec![DualScalar::zero(); f.len()];
    g[0] = lead_inv.clone();
    for _ in 0..f.len() {
        let fg = compose(f, &g);
        for (n, slot) in g.iter_mut().enumerate() {
            let target = if n == 0 { DualScalar::one() } else { DualScalar::zero() };
            *slot += &lead_inv * &(target - &fg[n]);
        }
    }
    g
}

/// Product of two series given with constant term first, truncated to `len`.
pub fn product(a: &[DualScalar], b: &[DualScalar], len: usize) -> Vec<DualScalar> {
    poly_mul(a, b, len)
}

/// Newton divided differences, then expanded to monomial coefficients.
pub fn fit_polynomial(xs: &[Rational], ys: &[Rational]) -> Vec<Rational> {
    let k = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..k {
        for i in (level..k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![Rational::zero(); k];
    for i in (0..k).rev() {
        // coeffs <- coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![Rational::zero(); k];
        for d in 0..k - 1 {
            next[d + 1] += &coeffs[d];
            next[d] -= &coeffs[d] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    coeffs
}
