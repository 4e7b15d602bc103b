//! Central and Poisson limit theorems for type B variables, checked exactly.
//!
//! Free cumulants are additive over free summands and homogeneous of degree
//! `n` under scaling, so the cumulants of `(x_1 + ... + x_N) / sqrt(N)` for
//! identically distributed free `x_i` are `N^(1 - n/2) k_n`. Sums of `N`
//! free Bernoulli variables of rate `Lambda / N` have cumulants
//! `N k_n(beta_N)`. Both finite-`N` families are evaluated in exact rational
//! arithmetic and compared with their limits.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::cumulant::{cumulants_to_moments, moments_to_cumulants, CumulantSequence, MomentSequence};
use crate::dual::{DualScalar, Rational};
use crate::error::{Error, Result};
use crate::nc::NC_CAP;
use crate::numbers::{binomial, catalan};
use crate::series::CSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CltSpec {
    pub order: usize,
    /// The common second cumulant of the summands.
    pub variance: DualScalar,
}

impl CltSpec {
    /// Unit variance `(1, 1)` in both components.
    pub fn new(order: usize) -> Self {
        CltSpec { order, variance: DualScalar::from_ints(1, 1) }
    }

    pub fn with_variance(order: usize, variance: DualScalar) -> Self {
        CltSpec { order, variance }
    }
}

/// A variable with `E(x^n) = rate * jump^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernoulliSpec {
    pub rate: DualScalar,
    /// Both components are real.
    pub jump: DualScalar,
}

impl BernoulliSpec {
    pub fn new(rate: DualScalar, jump: DualScalar) -> Self {
        BernoulliSpec { rate, jump }
    }
}

/// Finite-`N` values next to their limit, with the exact difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitReport {
    #[serde(rename = "N")]
    pub n_summands: u64,
    pub cumulants: Vec<DualScalar>,
    pub limit: Vec<DualScalar>,
    pub deviation: Vec<DualScalar>,
}

impl LimitReport {
    fn new(n_summands: u64, values: Vec<DualScalar>, limit: Vec<DualScalar>) -> Self {
        let deviation = values.iter().zip(&limit).map(|(v, l)| v - l).collect();
        LimitReport { n_summands, cumulants: values, limit, deviation }
    }
}

/// `sigma z^2`, truncated at `spec.order`.
pub fn clt_limit_r_transform(spec: &CltSpec) -> CSeries {
    CSeries::monomial(spec.order.max(1), 2, spec.variance.clone())
}

pub fn clt_limit_moments(spec: &CltSpec) -> Result<MomentSequence> {
    cumulants_to_moments(&CumulantSequence::from(clt_limit_r_transform(spec)))
}

/// `N^(1 - n/2)` as an exact rational, when it is one.
fn clt_scale(n: usize, n_summands: u64) -> Option<Rational> {
    let big_n = Rational::from_integer(BigInt::from(n_summands));
    let exponent = 2 - n as i32;
    if exponent % 2 == 0 {
        return Some(num_traits::pow::Pow::pow(&big_n, exponent / 2));
    }
    let root = n_summands.sqrt();
    (root * root == n_summands).then(|| {
        num_traits::pow::Pow::pow(&Rational::from_integer(BigInt::from(root)), exponent)
    })
}

/// Cumulants of `(x_1 + ... + x_N) / sqrt(N)` for free copies of a variable
/// with cumulants `base`.
pub fn clt_finite_n_cumulants(spec: &CltSpec, base: &CumulantSequence, n_summands: u64) -> Result<CumulantSequence> {
    if n_summands == 0 {
        return Err(Error::domain("need at least one summand"));
    }
    if base.order() < spec.order {
        return Err(Error::dimension(format!("base has order {} < {}", base.order(), spec.order)));
    }
    if !base.get(1).is_zero() {
        return Err(Error::domain("summands must be centred (k_1 = 0)"));
    }
    let values = (1..=spec.order)
        .map(|n| {
            let k = base.get(n);
            if k.is_zero() {
                return Ok(DualScalar::zero());
            }
            clt_scale(n, n_summands).map(|s| k.scale(&s)).ok_or_else(|| {
                Error::Exactness(format!("k_{n} scales by N^({}/2) with N = {n_summands} not a perfect square", 2 - n as i64))
            })
        })
        .collect::<Result<_>>()?;
    Ok(CumulantSequence::new(values))
}

pub fn clt_finite_n_moments(spec: &CltSpec, base: &CumulantSequence, n_summands: u64) -> Result<MomentSequence> {
    cumulants_to_moments(&clt_finite_n_cumulants(spec, base, n_summands)?)
}

/// Finite-`N` moments against the limit moments.
pub fn clt_report(spec: &CltSpec, base: &CumulantSequence, n_summands: u64) -> Result<LimitReport> {
    let finite = clt_finite_n_moments(spec, base, n_summands)?;
    let limit = clt_limit_moments(spec)?;
    Ok(LimitReport::new(n_summands, finite.into_values(), limit.into_values()))
}

/// Checks `Catalan(k) + k Catalan(k) = binom(2k, k)` for `2k <= order`, and
/// that the unit-variance limit moments computed by the engine are
/// `(Catalan(k), k Catalan(k))` at even orders and zero at odd orders, as far
/// as the lattice cap allows.
pub fn arcsine_check(order: usize) -> Result<bool> {
    for k in 1..=(order / 2) as u64 {
        let c = catalan(k);
        if &c + BigInt::from(k) * &c != binomial(2 * k, k) {
            return Ok(false);
        }
    }
    let engine_order = order.min(NC_CAP);
    if engine_order == 0 {
        return Ok(true);
    }
    let moments = clt_limit_moments(&CltSpec::new(engine_order))?;
    for n in 1..=engine_order {
        let m = moments.get(n);
        let expected = if n % 2 == 1 {
            DualScalar::zero()
        } else {
            let k = (n / 2) as u64;
            let c = Rational::from_integer(catalan(k));
            DualScalar::new(c.clone(), c * Rational::from_integer(BigInt::from(k)))
        };
        if *m != expected {
            return Ok(false);
        }
        if n % 2 == 0 && &m.x + &m.t != Rational::from_integer(binomial(n as u64, n as u64 / 2)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `M_n = rate * jump^n`.
pub fn bernoulli_moments(spec: &BernoulliSpec, order: usize) -> MomentSequence {
    MomentSequence::new((1..=order as u32).map(|n| &spec.rate * &spec.jump.pow(n)).collect())
}

/// Exact cumulants of the sum of `N` free Bernoulli variables of rate `rate / N`.
pub fn poisson_sum_cumulants(spec: &BernoulliSpec, n_summands: u64, order: usize) -> Result<CumulantSequence> {
    if n_summands == 0 {
        return Err(Error::domain("need at least one summand"));
    }
    let big_n = Rational::from_integer(BigInt::from(n_summands));
    let thinned = BernoulliSpec::new(spec.rate.scale(&big_n.recip()), spec.jump.clone());
    let single = moments_to_cumulants(&bernoulli_moments(&thinned, order))?;
    Ok(CumulantSequence::new(single.values().iter().map(|k| k.scale(&big_n)).collect()))
}

/// `k_n = rate * jump^n`.
pub fn poisson_limit_cumulants(spec: &BernoulliSpec, order: usize) -> CumulantSequence {
    CumulantSequence::new(bernoulli_moments(spec, order).into_values())
}

pub fn poisson_report(spec: &BernoulliSpec, n_summands: u64, order: usize) -> Result<LimitReport> {
    let finite = poisson_sum_cumulants(spec, n_summands, order)?;
    let limit = poisson_limit_cumulants(spec, order);
    Ok(LimitReport::new(n_summands, finite.into_values(), limit.into_values()))
}

/// Moments of the free Poisson limit.
pub fn free_poisson_moments(spec: &BernoulliSpec, order: usize) -> Result<MomentSequence> {
    cumulants_to_moments(&poisson_limit_cumulants(spec, order))
}

/// Cumulants of `s^2` where `s` is the CLT limit with second cumulant `sigma`:
/// the `n`-th moment of `s^2` is the `2n`-th moment of `s`.
pub fn semicircle_square_cumulants(sigma: &DualScalar, order: usize) -> Result<CumulantSequence> {
    if 2 * order > NC_CAP {
        return Err(Error::SizeLimit { what: "square order", value: order, cap: NC_CAP / 2 });
    }
    let s_moments = clt_limit_moments(&CltSpec::with_variance(2 * order, sigma.clone()))?;
    let square = MomentSequence::new((1..=order).map(|n| s_moments.get(2 * n).clone()).collect());
    moments_to_cumulants(&square)
}

/// True iff the square of the CLT limit with variance `sigma` has the
/// cumulants of a free Poisson element of rate `sigma` and jump `(1, 0)`,
/// i.e. `k_n = sigma` for every `n <= order`.
pub fn semicircle_square_check(sigma: &DualScalar, order: usize) -> Result<bool> {
    let k = semicircle_square_cumulants(sigma, order)?;
    Ok(k.values().iter().all(|v| v == sigma))
}

/// True iff the square of the CLT limit with variance `sigma` has cumulants
/// `sigma^n`, those of a free Poisson element of rate `(1, 0)` and jump `sigma`.
pub fn semicircle_square_jump_check(sigma: &DualScalar, order: usize) -> Result<bool> {
    let k = semicircle_square_cumulants(sigma, order)?;
    Ok(k.values().iter().zip(1u32..).all(|(v, n)| *v == sigma.pow(n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    First,
    Second,
}

/// The 2x2 Hankel minor condition `m2 m4 >= m3^2` on one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HankelReport {
    pub component: Component,
    #[serde(serialize_with = "ser_rational")]
    pub m2: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub m3: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub m4: Rational,
    /// `m2 * m4`
    #[serde(serialize_with = "ser_rational")]
    pub lhs: Rational,
    /// `m3^2`
    #[serde(serialize_with = "ser_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn hankel_minor(m: &MomentSequence, component: Component) -> Result<HankelReport> {
    if m.order() < 4 {
        return Err(Error::dimension(format!("need moments up to order 4, got {}", m.order())));
    }
    let pick = |n: usize| match component {
        Component::First => m.get(n).x.clone(),
        Component::Second => m.get(n).t.clone(),
    };
    let (m2, m3, m4) = (pick(2), pick(3), pick(4));
    let lhs = &m2 * &m4;
    let rhs = &m3 * &m3;
    let holds = !(&lhs - &rhs).is_negative();
    Ok(HankelReport { component, m2, m3, m4, lhs, rhs, holds })
}

/// True iff the second components satisfy `m2 m4 >= m3^2`, a necessary
/// condition for them to be moments of a positive measure on the line.
pub fn hankel_necessary_check(m: &MomentSequence) -> Result<bool> {
    Ok(hankel_minor(m, Component::Second)?.holds)
}

/// Moments of the free Poisson element with rate `(lambda, 0)` and jump `(alpha, alpha)`.
pub fn hankel_example_moments(lambda: &Rational, alpha: &Rational) -> Result<MomentSequence> {
    let spec = BernoulliSpec::new(DualScalar::real(lambda.clone()), DualScalar::new(alpha.clone(), alpha.clone()));
    free_poisson_moments(&spec, 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dual::{int, rat};

    fn d(x: i64, t: i64) -> DualScalar {
        DualScalar::from_ints(x, t)
    }

    #[test]
    fn limit_r_transform_shape() {
        assert_eq!(clt_limit_r_transform(&CltSpec::new(2)).coeffs(), &[d(0, 0), d(1, 1)]);
        assert_eq!(clt_limit_r_transform(&CltSpec::new(5)).coeffs(), &[d(0, 0), d(1, 1), d(0, 0), d(0, 0), d(0, 0)]);
        let sigma = DualScalar::new(rat(2, 3), rat(-1, 5));
        assert_eq!(clt_limit_r_transform(&CltSpec::with_variance(3, sigma.clone())).coeff(2), sigma);
    }

    #[test]
    fn limit_moments() {
        let m = clt_limit_moments(&CltSpec::new(6)).unwrap();
        assert_eq!(m.values(), &[d(0, 0), d(1, 1), d(0, 0), d(2, 4), d(0, 0), d(5, 15)]);
    }

    #[test]
    fn finite_n_moments() {
        let base = CumulantSequence::new(vec![d(0, 0), d(1, 1), d(0, 0), d(1, 0)]);
        let spec = CltSpec::new(4);
        let m1 = clt_finite_n_moments(&spec, &base, 1).unwrap();
        assert_eq!(m1, cumulants_to_moments(&base).unwrap());
        let m4 = clt_finite_n_moments(&spec, &base, 4).unwrap();
        assert_eq!(m4.get(4), &(d(2, 4) + DualScalar::real(rat(1, 4))));
        let dev = |n: u64| clt_report(&spec, &base, n).unwrap().deviation[3].clone();
        assert_eq!(dev(8).scale_int(2), dev(4));
    }

    #[test]
    fn odd_cumulants_need_square_n() {
        let base = CumulantSequence::new(vec![d(0, 0), d(1, 1), d(1, 2)]);
        let spec = CltSpec::new(3);
        assert!(matches!(clt_finite_n_moments(&spec, &base, 2), Err(Error::Exactness(_))));
        let k = clt_finite_n_cumulants(&spec, &base, 4).unwrap();
        assert_eq!(k.get(3), &DualScalar::new(rat(1, 2), int(1)));
        let uncentred = CumulantSequence::new(vec![d(1, 0), d(1, 1), d(0, 0)]);
        assert!(clt_finite_n_moments(&spec, &uncentred, 4).is_err());
    }

    #[test]
    fn arcsine() {
        assert!(arcsine_check(20).unwrap());
        assert!(arcsine_check(6).unwrap());
    }

    #[test]
    fn bernoulli_examples() {
        let m = bernoulli_moments(&BernoulliSpec::new(d(1, 0), d(1, 0)), 5);
        assert!(m.values().iter().all(|v| *v == d(1, 0)));
        let (lambda, alpha) = (rat(1, 3), rat(5, 2));
        let m = bernoulli_moments(&BernoulliSpec::new(DualScalar::real(lambda.clone()), DualScalar::new(alpha.clone(), alpha.clone())), 5);
        for n in 1..=5 {
            let an = num_traits::pow(alpha.clone(), n);
            assert_eq!(m.get(n), &DualScalar::new(&lambda * &an, &lambda * &an * int(n as i64)));
        }
        let m = bernoulli_moments(&BernoulliSpec::new(d(0, 1), d(1, 0)), 4);
        assert!(m.values().iter().all(|v| *v == d(0, 1)));
    }

    #[test]
    fn poisson_sums() {
        let spec = BernoulliSpec::new(DualScalar::new(rat(3, 2), rat(-1, 3)), DualScalar::new(rat(2, 5), rat(7, 4)));
        for n in [1, 2, 5, 17] {
            let k = poisson_sum_cumulants(&spec, n, 4).unwrap();
            assert_eq!(k.get(1), &(&spec.rate * &spec.jump));
        }
        let unit = BernoulliSpec::new(d(1, 0), d(1, 0));
        assert_eq!(poisson_sum_cumulants(&unit, 2, 2).unwrap().get(2), &DualScalar::real(rat(1, 2)));
        assert_eq!(poisson_limit_cumulants(&unit, 2).get(2), &d(1, 0));
    }

    #[test]
    fn poisson_limit_examples() {
        let (lambda, alpha) = (rat(2, 7), rat(-3, 2));
        let k = poisson_limit_cumulants(&BernoulliSpec::new(DualScalar::real(lambda.clone()), DualScalar::new(alpha.clone(), alpha.clone())), 4);
        for n in 1..=4 {
            let an = num_traits::pow(alpha.clone(), n);
            assert_eq!(k.get(n), &DualScalar::new(&lambda * &an, &lambda * &an * int(n as i64)));
        }
        let rate = DualScalar::new(rat(1, 2), rat(3, 1));
        let k = poisson_limit_cumulants(&BernoulliSpec::new(rate.clone(), d(1, 0)), 3);
        assert!(k.values().iter().all(|v| *v == rate));
    }

    #[test]
    fn poisson_deviation_vanishes() {
        let spec = BernoulliSpec::new(DualScalar::new(rat(1, 2), int(1)), d(1, 1));
        let mut previous: Option<DualScalar> = None;
        for n in [1u64, 10, 100, 1000] {
            let dev = poisson_report(&spec, n, 4).unwrap().deviation[3].clone();
            if let Some(p) = previous {
                assert!(dev.x.abs() < p.x.abs());
            }
            previous = Some(dev);
        }
    }

    #[test]
    fn semicircle_square() {
        assert!(semicircle_square_check(&d(1, 0), 4).unwrap());
        assert!(semicircle_square_check(&d(0, 0), 4).unwrap());
        let k = semicircle_square_cumulants(&d(1, 1), 3).unwrap();
        assert_eq!(k.values(), &[d(1, 1), d(1, 2), d(1, 3)]);
        assert!(!semicircle_square_check(&d(1, 1), 3).unwrap());
        for sigma in [d(1, 0), d(1, 1), d(2, 3), d(0, 0)] {
            assert!(semicircle_square_jump_check(&sigma, 5).unwrap());
        }
        assert!(semicircle_square_cumulants(&d(1, 0), 8).is_err());
    }

    #[test]
    fn hankel_examples() {
        let lambda = rat(1, 100);
        let m = hankel_example_moments(&lambda, &int(1)).unwrap();
        let l = |c: [i64; 4]| (0..4).map(|i| int(c[i]) * num_traits::pow(lambda.clone(), i + 1)).fold(rat(0, 1), |a, b| a + b);
        assert_eq!(m.get(2).t, int(2) * l([1, 1, 0, 0]));
        assert_eq!(m.get(3).t, int(3) * l([1, 3, 1, 0]));
        assert_eq!(m.get(4).t, int(4) * l([1, 6, 6, 1]));
        assert!(!hankel_necessary_check(&m).unwrap());
        assert!(hankel_minor(&m, Component::First).unwrap().holds);
        let semicircle = clt_limit_moments(&CltSpec::new(4)).unwrap();
        let report = hankel_minor(&semicircle, Component::Second).unwrap();
        assert_eq!((report.m2.clone(), report.m3.clone(), report.m4.clone()), (int(1), int(0), int(4)));
        assert!(report.holds);
        let short = MomentSequence::new(vec![d(0, 0); 3]);
        assert!(matches!(hankel_necessary_check(&short), Err(Error::Dimension(_))));
    }
}
