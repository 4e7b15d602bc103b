//! The theorem battery behind `typeb verify-paper`.
//!
//! Each check is exact and deterministic: random inputs come from a seeded
//! ChaCha stream, so a failure reproduces bit for bit.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cumulant::{
    cumulants_to_moments, moments_of_sum, moments_to_cumulants, multilinear_cumulant, CumulantSequence, FreeProductOracle,
    Letter, MomentSequence,
};
use crate::dual::{int, rat, DualScalar, Rational};
use crate::error::Result;
use crate::limits::{
    arcsine_check, clt_finite_n_moments, clt_limit_moments, free_poisson_moments, hankel_example_moments, hankel_minor,
    poisson_limit_cumulants, poisson_sum_cumulants, semicircle_square_check, semicircle_square_cumulants, BernoulliSpec,
    CltSpec, Component,
};
use crate::matrix_model::{
    c_action, component_identity_check, conditional_expectation, BimoduleElement, MatrixModel, RatMatrix, TypeBElement,
};
use crate::nc::{enumerate_nc, enumerate_ncb, moebius_by_recursion, refines, PartitionInterval, SetPartition};
use crate::numbers::{binomial, catalan, evaluate, interpolate};
use crate::series::{box_conv, check_box_conv, compose, invert_compositional, s_transform, series_pointwise_mul, zeta_prime, CSeries};
use crate::tables;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    fn from_result(id: u8, title: &'static str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((passed, detail)) => CriterionOutcome { id, title, passed, detail },
            Err(e) => CriterionOutcome { id, title, passed: false, detail: format!("error: {e}") },
        }
    }

    /// `PASS  3 title: detail`
    pub fn line(&self) -> String {
        format!("{} {:>2} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.id, self.title, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "lattice counts"),
    (2, "Kreweras laws"),
    (3, "Moebius function and inversion"),
    (4, "M = R box zeta'"),
    (5, "inverse-composition identity"),
    (6, "S-transform multiplicativity"),
    (7, "central limit theorem"),
    (8, "arcsine decomposition"),
    (9, "Poisson limit theorem"),
    (10, "square of the central limit"),
    (11, "Hankel condition fails"),
    (12, "conditional expectation"),
    (13, "freeness"),
];

pub fn run(id: u8) -> Option<CriterionOutcome> {
    let check: fn() -> Result<(bool, String)> = match id {
        1 => lattice_counts,
        2 => kreweras_laws,
        3 => moebius,
        4 => moments_from_cumulants_by_convolution,
        5 => inverse_composition_identity,
        6 => s_transform_multiplicative,
        7 => central_limit,
        8 => arcsine,
        9 => poisson_limit,
        10 => central_limit_square,
        11 => hankel_failure,
        12 => conditional_expectation_linearity,
        13 => freeness,
        _ => return None,
    };
    let title = CRITERIA[id as usize - 1].1;
    Some(CriterionOutcome::from_result(id, title, check()))
}

pub fn run_all() -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|&(id, _)| run(id)).collect()
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x7b_f9ee + stream)
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let r = random_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

fn random_dual(rng: &mut ChaCha8Rng) -> DualScalar {
    DualScalar::new(random_rational(rng), random_rational(rng))
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> CSeries {
    CSeries::new((0..order).map(|_| random_dual(rng)).collect()).expect("order >= 1")
}

fn random_invertible(rng: &mut ChaCha8Rng, order: usize) -> CSeries {
    let mut coeffs: Vec<DualScalar> = (0..order).map(|_| random_dual(rng)).collect();
    coeffs[0] = DualScalar::new(random_nonzero(rng), random_rational(rng));
    CSeries::new(coeffs).expect("order >= 1")
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> RatMatrix {
    RatMatrix::from_rows((0..dim).map(|_| (0..dim).map(|_| random_rational(rng)).collect()).collect())
        .expect("square by construction")
}

fn lattice_counts() -> Result<(bool, String)> {
    for n in 1..=12 {
        let got = enumerate_nc(n)?.len();
        if BigInt::from(got) != catalan(n as u64) {
            return Ok((false, format!("|NC({n})| = {got}")));
        }
    }
    for n in 1..=6 {
        let got = enumerate_ncb(n)?.len();
        if BigInt::from(got) != binomial(2 * n as u64, n as u64) {
            return Ok((false, format!("|NC^B({n})| = {got}")));
        }
    }
    Ok((true, "|NC(n)| = Catalan(n) for n <= 12, |NC^B(n)| = binom(2n, n) for n <= 6".into()))
}

fn kreweras_laws() -> Result<(bool, String)> {
    let mut pairs = 0u64;
    for n in 1..=8 {
        let lattice = tables::lattice(n)?;
        let index: std::collections::HashMap<&SetPartition, usize> =
            lattice.iter().enumerate().map(|(i, e)| (&e.partition, i)).collect();
        let mut hit = vec![false; lattice.len()];
        for e in lattice.iter() {
            if e.partition.num_blocks() + e.kreweras.num_blocks() != n + 1 {
                return Ok((false, format!("block count fails at {}", e.partition)));
            }
            match index.get(&e.kreweras) {
                Some(&i) if !hit[i] => hit[i] = true,
                _ => return Ok((false, format!("Kr is not a bijection of NC({n})"))),
            }
        }
        for p in lattice.iter() {
            for q in lattice.iter() {
                if refines(&p.partition, &q.partition)? != refines(&q.kreweras, &p.kreweras)? {
                    return Ok((false, format!("order reversal fails at {} <= {}", p.partition, q.partition)));
                }
                pairs += 1;
            }
        }
    }
    Ok((true, format!("bijective, |p| + |Kr p| = n + 1 and order reversing on {pairs} pairs, n <= 8")))
}

fn moebius() -> Result<(bool, String)> {
    for n in 1..=8 {
        let mu = moebius_by_recursion(&PartitionInterval::to_top(SetPartition::singletons(n)))?;
        let sign = if n % 2 == 1 { 1 } else { -1 };
        if BigInt::from(mu) != catalan(n as u64 - 1) * sign {
            return Ok((false, format!("mu(0_{n}, 1_{n}) = {mu}")));
        }
    }
    let mut rng = rng(3);
    for trial in 0..100 {
        let k = CumulantSequence::new((0..8).map(|_| random_dual(&mut rng)).collect());
        if moments_to_cumulants(&cumulants_to_moments(&k)?)? != k {
            return Ok((false, format!("cumulant round trip fails on sample {trial}")));
        }
        let m = MomentSequence::new((0..8).map(|_| random_dual(&mut rng)).collect());
        if cumulants_to_moments(&moments_to_cumulants(&m)?)? != m {
            return Ok((false, format!("moment round trip fails on sample {trial}")));
        }
    }
    Ok((true, "mu(0_n, 1_n) = (-1)^(n-1) Catalan(n-1) for n <= 8; 100 + 100 round trips at order 8".into()))
}

fn moments_from_cumulants_by_convolution() -> Result<(bool, String)> {
    let mut rng = rng(4);
    for trial in 0..60 {
        let order = 1 + trial % 8;
        let r = random_series(&mut rng, order);
        let by_conv = box_conv(&r, &zeta_prime(order))?;
        let by_sum = cumulants_to_moments(&CumulantSequence::from(r))?;
        if by_conv.coeffs() != by_sum.values() {
            return Ok((false, format!("sample {trial} (order {order}) differs")));
        }
    }
    Ok((true, "60 random R, orders 1..=8".into()))
}

fn inverse_composition_identity() -> Result<(bool, String)> {
    let mut rng = rng(5);
    for trial in 0..24 {
        let f = random_invertible(&mut rng, 7);
        let g = random_invertible(&mut rng, 7);
        let lhs = compose(&invert_compositional(&f)?, &box_conv(&f, &g)?)?;
        let lead_inv = f.coeff(1).inverse()?;
        let rhs: Vec<DualScalar> = check_box_conv(&f, &g)?.coeffs().iter().map(|c| &lead_inv * c).collect();
        if lhs.coeffs() != &rhs[..] {
            return Ok((false, format!("sample {trial} differs")));
        }
    }
    Ok((true, "24 random pairs at order 7".into()))
}

fn s_transform_multiplicative() -> Result<(bool, String)> {
    let mut rng = rng(6);
    for trial in 0..24 {
        let f = random_invertible(&mut rng, 7);
        let g = random_invertible(&mut rng, 7);
        let lhs = s_transform(&box_conv(&f, &g)?)?;
        let rhs = series_pointwise_mul(&s_transform(&f)?, &s_transform(&g)?)?;
        if lhs != rhs {
            return Ok((false, format!("sample {trial} differs")));
        }
    }
    Ok((true, "24 random pairs at order 7".into()))
}

fn central_limit() -> Result<(bool, String)> {
    let moments = clt_limit_moments(&CltSpec::new(12))?;
    for n in 1..=12 {
        let expected = if n % 2 == 1 {
            DualScalar::zero()
        } else {
            let k = n as u64 / 2;
            DualScalar::new(Rational::from_integer(catalan(k)), Rational::from_integer(binomial(2 * k, k + 1)))
        };
        if *moments.get(n) != expected {
            return Ok((false, format!("limit moment {n} is {}", moments.get(n))));
        }
    }
    let kappa4 = DualScalar::new(rat(3, 2), rat(-2, 7));
    let base = CumulantSequence::new(vec![DualScalar::zero(), DualScalar::from_ints(1, 1), DualScalar::zero(), kappa4.clone()]);
    let spec = CltSpec::new(4);
    let limit = clt_limit_moments(&spec)?;
    for n_summands in [1u64, 2, 4, 8, 16] {
        let finite = clt_finite_n_moments(&spec, &base, n_summands)?;
        let scaled = (finite.get(4) - limit.get(4)).scale_int(n_summands as i64);
        if scaled != kappa4 {
            return Ok((false, format!("N (M_4(N) - M_4) = {scaled} at N = {n_summands}")));
        }
    }
    Ok((true, "limit moments (Catalan(k), binom(2k, k+1)) for 2k <= 12; N (M_4(N) - M_4) = k_4 for N in 1..16".into()))
}

fn arcsine() -> Result<(bool, String)> {
    let ok = arcsine_check(20)?;
    Ok((ok, "Catalan(k) + k Catalan(k) = binom(2k, k) for k <= 10, engine moments to order 14".into()))
}

fn poisson_limit() -> Result<(bool, String)> {
    let spec = BernoulliSpec::new(DualScalar::new(rat(1, 2), rat(1, 3)), DualScalar::new(int(2), int(-1)));
    let order = 5;
    let sizes = [2u64, 4, 8, 16, 32];
    let limit = poisson_limit_cumulants(&spec, order);
    for n in 1..=order {
        if *limit.get(n) != &spec.rate * &spec.jump.pow(n as u32) {
            return Ok((false, format!("limit cumulant {n} differs")));
        }
    }
    let xs: Vec<Rational> = sizes.iter().map(|&s| rat(1, s as i64)).collect();
    let finite: Vec<CumulantSequence> = sizes.iter().map(|&s| poisson_sum_cumulants(&spec, s, order)).collect::<Result<_>>()?;
    for n in 1..=order {
        // N k_n(beta_N) is a polynomial of degree n - 1 in 1/N
        for part in [|d: &DualScalar| d.x.clone(), |d: &DualScalar| d.t.clone()] {
            let ys: Vec<Rational> = finite.iter().map(|k| part(k.get(n))).collect();
            let poly = interpolate(&xs, &ys);
            let expected_lead = part(limit.get(n));
            let pairs = int((n * (n - 1) / 2) as i64);
            let expected_linear = -part(&(&spec.rate.pow(2) * &spec.jump.pow(n as u32))) * pairs;
            if poly[0] != expected_lead || poly[1] != expected_linear || poly[n.max(2)..].iter().any(|c| !c.is_zero()) {
                return Ok((false, format!("N k_{n}(beta_N) is not limit + c/N + ... with the expected c")));
            }
        }
    }
    let jump = DualScalar::new(rat(3, 2), rat(1, 2));
    for lambda in [rat(1, 3), rat(1, 2), rat(2, 1), rat(5, 7), rat(-3, 4)] {
        let rate = DualScalar::real(lambda.clone());
        let m = free_poisson_moments(&BernoulliSpec::new(rate, jump.clone()), 4)?;
        let l = |c: &[i64]| evaluate(&std::iter::once(int(0)).chain(c.iter().map(|&v| int(v))).collect::<Vec<_>>(), &lambda);
        let expected = [jump.pow(2).scale(&l(&[1, 1])), jump.pow(3).scale(&l(&[1, 3, 1])), jump.pow(4).scale(&l(&[1, 6, 6, 1]))];
        if m.values()[1..4] != expected {
            return Ok((false, format!("moment polynomials differ at lambda = {lambda}")));
        }
    }
    Ok((true, "limit k_n = Lambda A^n; N k_n(beta_N) = Lambda A^n - binom(n,2) Lambda^2 A^n / N + O(1/N^2) for n <= 5 at N in 2..32; M_2, M_3, M_4 at 5 lambdas".into()))
}

fn central_limit_square() -> Result<(bool, String)> {
    let sigmas = [DualScalar::from_ints(1, 0), DualScalar::from_ints(1, 1), DualScalar::from_ints(2, 3)];
    let mut failures = Vec::new();
    for sigma in &sigmas {
        if !semicircle_square_check(sigma, 5)? {
            let k = semicircle_square_cumulants(sigma, 5)?;
            failures.push(format!("sigma = {sigma}: k_2 = {}", k.get(2)));
        }
    }
    if failures.is_empty() {
        Ok((true, "k_n = sigma for n <= 5 and all three sigma".into()))
    } else {
        Ok((false, format!("cumulants are sigma^n, not sigma ({})", failures.join("; "))))
    }
}

fn hankel_failure() -> Result<(bool, String)> {
    let lambdas: Vec<Rational> = (1..=5).map(|k| rat(1, 100 * k)).collect();
    let mut lhs_values = Vec::new();
    let mut rhs_values = Vec::new();
    for lambda in &lambdas {
        let report = hankel_minor(&hankel_example_moments(lambda, &Rational::one())?, Component::Second)?;
        let l2 = lambda * lambda;
        lhs_values.push(&report.lhs / &l2);
        rhs_values.push(&report.rhs / &l2);
    }
    let lhs = interpolate(&lambdas, &lhs_values);
    let rhs = interpolate(&lambdas, &rhs_values);
    let report = hankel_minor(&hankel_example_moments(&rat(1, 100), &Rational::one())?, Component::Second)?;
    let ok = lhs[0] == int(8) && rhs[0] == int(9) && report.lhs < report.rhs;
    Ok((
        ok,
        format!(
            "m2 m4 / lambda^2 = {} + O(lambda), m3^2 / lambda^2 = {} + O(lambda); at lambda = 1/100: {} < {}",
            lhs[0], rhs[0], report.lhs, report.rhs
        ),
    ))
}

fn conditional_expectation_linearity() -> Result<(bool, String)> {
    let mut rng = rng(12);
    for trial in 0..200 {
        let dim = 2 + trial % 2;
        let model = MatrixModel::with_default_weights(dim);
        let c = random_dual(&mut rng);
        let m = BimoduleElement::new(random_matrix(&mut rng, dim), random_matrix(&mut rng, dim), random_matrix(&mut rng, dim));
        if conditional_expectation(&model, &c_action(&c, &m)) != &c * &conditional_expectation(&model, &m) {
            return Ok((false, format!("E~(c m) != c E~(m) on sample {trial}")));
        }
    }
    for dim in [2, 3] {
        let model = MatrixModel::with_default_weights(dim);
        for _ in 0..3 {
            let pairs: Vec<TypeBElement> =
                (0..4).map(|_| TypeBElement::new(random_matrix(&mut rng, dim), random_matrix(&mut rng, dim))).collect();
            for n in 1..=4 {
                if !component_identity_check(&model, &pairs, n)? {
                    return Ok((false, format!("component identity fails at n = {n}, dim {dim}")));
                }
            }
        }
    }
    Ok((true, "200 random (c, m); component identity for n <= 4 on 2x2 and 3x3 models".into()))
}

fn freeness() -> Result<(bool, String)> {
    let mut rng = rng(13);
    let families: Vec<CumulantSequence> =
        (0..3).map(|_| CumulantSequence::new((0..4).map(|_| random_dual(&mut rng)).collect())).collect();
    let oracle = FreeProductOracle::new(families.clone());
    let letters: Vec<Letter> = (0..3).map(|f| Letter::new(f, 0)).collect();
    let mut mixed = 0;
    for n in 2..=4u32 {
        for code in 0..3usize.pow(n) {
            let word: Vec<Letter> = (0..n).map(|i| letters[code / 3usize.pow(i) % 3]).collect();
            if word.iter().all(|l| l.family == word[0].family) {
                continue;
            }
            mixed += 1;
            if !multilinear_cumulant(&oracle, &word)?.is_zero() {
                return Ok((false, format!("mixed cumulant of {word:?} is nonzero")));
            }
        }
    }
    let sum = moments_to_cumulants(&moments_of_sum(&oracle, &letters, 4)?)?;
    for n in 1..=4 {
        let expected: DualScalar = families.iter().map(|k| k.get(n).clone()).sum();
        if *sum.get(n) != expected {
            return Ok((false, format!("k_{n} of the sum is not additive")));
        }
    }
    Ok((true, format!("{mixed} mixed cumulants vanish; cumulants of a sum of 3 free variables add, order 4")))
}
