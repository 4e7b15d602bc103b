//! Truncated formal power series with dual-number coefficients.
//!
//! [`CSeries`] has no constant term: index `n` of the coefficient list is the
//! coefficient of `z^n`, starting at `n = 1`. [`UnitSeries`] starts at `z^0`
//! and is what dividing a `CSeries` by `z` produces. Every operation is exact
//! up to the stated truncation order.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dual::DualScalar;
use crate::error::{Error, Result};
use crate::nc::SetPartition;
use crate::tables::{self, BlockType};

/// Largest order accepted by the partition-sum convolutions.
pub const SERIES_ORDER_CAP: usize = 10;

/// `sum_{n=1}^{N} a_n z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CSeries {
    coeffs: Vec<DualScalar>,
}

/// `sum_{n=0}^{N} s_n z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSeries {
    coeffs: Vec<DualScalar>,
}

impl CSeries {
    /// `coeffs[0]` is the coefficient of `z`.
    pub fn new(coeffs: Vec<DualScalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("series order must be at least 1"));
        }
        Ok(CSeries { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        assert!(order >= 1);
        CSeries { coeffs: vec![DualScalar::zero(); order] }
    }

    /// `c z^k`, truncated at `order`.
    pub fn monomial(order: usize, k: usize, c: DualScalar) -> Self {
        let mut s = CSeries::zero(order);
        if (1..=order).contains(&k) {
            s.coeffs[k - 1] = c;
        }
        s
    }

    /// The compositional identity `(1, 0) z`, also the unit of boxed convolution.
    pub fn identity(order: usize) -> Self {
        CSeries::monomial(order, 1, DualScalar::one())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `z^n`; zero outside `1..=order`.
    pub fn coeff(&self, n: usize) -> DualScalar {
        if n == 0 || n > self.order() {
            DualScalar::zero()
        } else {
            self.coeffs[n - 1].clone()
        }
    }

    pub fn coeffs(&self) -> &[DualScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<DualScalar> {
        self.coeffs
    }

    pub fn add(&self, other: &CSeries) -> Result<CSeries> {
        same_order(self.order(), other.order())?;
        Ok(CSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    /// Coefficients indexed by exponent, with a zero constant term.
    fn dense(&self) -> Vec<DualScalar> {
        std::iter::once(DualScalar::zero()).chain(self.coeffs.iter().cloned()).collect()
    }

    /// Product over block sizes `s` of the coefficient of `z^s`.
    fn cf_type(&self, block_type: &BlockType) -> DualScalar {
        block_type.iter().map(|&s| &self.coeffs[s - 1]).product()
    }
}

impl UnitSeries {
    /// `coeffs[0]` is the constant term.
    pub fn new(coeffs: Vec<DualScalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("unit series needs at least a constant term"));
        }
        Ok(UnitSeries { coeffs })
    }

    pub fn constant(order: usize, c: DualScalar) -> Self {
        let mut coeffs = vec![DualScalar::zero(); order + 1];
        coeffs[0] = c;
        UnitSeries { coeffs }
    }

    /// Highest exponent kept.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> DualScalar {
        self.coeffs.get(n).cloned().unwrap_or_else(DualScalar::zero)
    }

    pub fn coeffs(&self) -> &[DualScalar] {
        &self.coeffs
    }

    /// `self(g(z))`, truncated at `self.order()`.
    pub fn compose(&self, g: &CSeries) -> Result<UnitSeries> {
        same_order(self.order(), g.order())?;
        let n = self.order();
        let mut out = vec![DualScalar::zero(); n + 1];
        out[0] = self.coeffs[0].clone();
        let inner = g.dense();
        let mut power = inner.clone();
        for j in 1..=n {
            for (slot, p) in out.iter_mut().zip(&power).skip(1) {
                *slot += &self.coeffs[j] * p;
            }
            power = truncated_product(&power, &inner, n);
        }
        Ok(UnitSeries { coeffs: out })
    }
}

/// A unit series with zero constant term is a `CSeries` of the same order.
impl TryFrom<UnitSeries> for CSeries {
    type Error = Error;

    fn try_from(s: UnitSeries) -> Result<CSeries> {
        if !s.coeffs[0].is_zero() {
            return Err(Error::domain(format!("series has constant term {}", s.coeffs[0])));
        }
        if s.order() == 0 {
            return Err(Error::domain("series has no terms beyond the constant"));
        }
        CSeries::new(s.coeffs[1..].to_vec())
    }
}

fn same_order(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::dimension(format!("series orders differ: {a} vs {b}")));
    }
    Ok(())
}

fn check_convolution_order(n: usize) -> Result<()> {
    if n > SERIES_ORDER_CAP {
        return Err(Error::SizeLimit { what: "series order", value: n, cap: SERIES_ORDER_CAP });
    }
    Ok(())
}

/// Cauchy product of exponent-indexed coefficient lists, keeping `0..=max_exp`.
fn truncated_product(a: &[DualScalar], b: &[DualScalar], max_exp: usize) -> Vec<DualScalar> {
    let mut out = vec![DualScalar::zero(); max_exp + 1];
    for (i, ai) in a.iter().enumerate().take(max_exp + 1) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(max_exp + 1 - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `sum_{n>=1} (1, 0) z^n`.
pub fn zeta_prime(order: usize) -> CSeries {
    assert!(order >= 1);
    CSeries { coeffs: vec![DualScalar::one(); order] }
}

/// `Cf_p(f)`: product over blocks `B` of `p` of the coefficient of `z^|B|`.
pub fn cf_product(f: &CSeries, p: &SetPartition) -> Result<DualScalar> {
    let sizes = p.block_sizes();
    if let Some(&block) = sizes.iter().find(|&&s| s > f.order()) {
        return Err(Error::Truncation { block, order: f.order() });
    }
    Ok(sizes.iter().map(|&s| &f.coeffs[s - 1]).product())
}

fn convolve(f: &CSeries, g: &CSeries, first_singleton_only: bool) -> Result<CSeries> {
    same_order(f.order(), g.order())?;
    check_convolution_order(f.order())?;
    let coeffs = (1..=f.order())
        .map(|n| {
            let terms = tables::convolution_terms(n)?;
            let terms = if first_singleton_only { &terms.first_singleton } else { &terms.all };
            Ok(terms
                .iter()
                .map(|(pt, kt, count)| (f.cf_type(pt) * g.cf_type(kt)).scale_int(*count as i64))
                .sum())
        })
        .collect::<Result<_>>()?;
    Ok(CSeries { coeffs })
}

/// Boxed convolution: coefficient `n` is `sum_{p in NC(n)} Cf_p(f) Cf_{Kr(p)}(g)`.
pub fn box_conv(f: &CSeries, g: &CSeries) -> Result<CSeries> {
    convolve(f, g, false)
}

/// The restricted boxed convolution used in the S-transform argument: the
/// same sum as [`box_conv`] over partitions having `{1}` as a block.
pub fn check_box_conv(f: &CSeries, g: &CSeries) -> Result<CSeries> {
    convolve(f, g, true)
}

/// `f(g(z))`, truncated at the common order.
pub fn compose(f: &CSeries, g: &CSeries) -> Result<CSeries> {
    same_order(f.order(), g.order())?;
    let n = f.order();
    let inner = g.dense();
    let mut out = vec![DualScalar::zero(); n + 1];
    let mut power = inner.clone();
    for j in 1..=n {
        for (slot, p) in out.iter_mut().zip(&power) {
            *slot += &f.coeffs[j - 1] * p;
        }
        power = truncated_product(&power, &inner, n);
    }
    out.remove(0);
    Ok(CSeries { coeffs: out })
}

/// Compositional inverse by forward substitution.
///
/// With `g_1 = a_1^{-1}`, the coefficient of `z^n` in `f(g)` is
/// `a_1 g_n + sum_{k>=2} a_k [z^n] g^k`, and the sum only involves
/// `g_1, ..., g_{n-1}`; setting it to zero determines `g_n`.
pub fn invert_compositional(f: &CSeries) -> Result<CSeries> {
    let lead_inv = f.coeffs[0]
        .inverse()
        .map_err(|_| Error::NotInvertible(format!("leading coefficient {} has zero first component", f.coeffs[0])))?;
    let n = f.order();
    let mut g = vec![DualScalar::zero(); n + 1];
    g[1] = lead_inv.clone();
    for m in 2..=n {
        let mut power = truncated_product(&g, &g, m);
        let mut acc = DualScalar::zero();
        for k in 2..=m {
            acc += &f.coeffs[k - 1] * &power[m];
            if k < m {
                power = truncated_product(&power, &g, m);
            }
        }
        g[m] = -(&lead_inv * &acc);
    }
    g.remove(0);
    Ok(CSeries { coeffs: g })
}

/// `S(z) = R^{<-1>}(z) / z`.
pub fn s_transform(r: &CSeries) -> Result<UnitSeries> {
    Ok(UnitSeries { coeffs: invert_compositional(r)?.coeffs })
}

/// Cauchy product of two unit series of equal order.
pub fn series_pointwise_mul(a: &UnitSeries, b: &UnitSeries) -> Result<UnitSeries> {
    same_order(a.order(), b.order())?;
    Ok(UnitSeries { coeffs: truncated_product(&a.coeffs, &b.coeffs, a.order()) })
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<DualScalar>,
}

impl Serialize for CSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr { order: self.order(), coeffs: self.coeffs.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.order != repr.coeffs.len() || repr.order == 0 {
            return Err(serde::de::Error::custom(format!(
                "order {} does not match {} coefficients",
                repr.order,
                repr.coeffs.len()
            )));
        }
        Ok(CSeries { coeffs: repr.coeffs })
    }
}

impl Serialize for UnitSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr { order: self.order(), coeffs: self.coeffs.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnitSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.order + 1 != repr.coeffs.len() {
            return Err(serde::de::Error::custom(format!(
                "order {} needs {} coefficients, got {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(UnitSeries { coeffs: repr.coeffs })
    }
}
