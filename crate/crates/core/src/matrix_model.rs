//! A concrete type B probability space on rational matrices.
//!
//! The algebra is `d x d` rational matrices with the normalized trace as its
//! state; the vector space is again `d x d` matrices, acted on by matrix
//! multiplication from both sides, with a weighted entry sum as its linear
//! functional. The module also carries the bimodule extension `A x (X + A)`
//! and its dual-number valued conditional expectation.

use std::ops::{Add, Mul};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cumulant::{moebius_expansion, multilinear_cumulant, Letter, MixedMomentOracle};
use crate::dual::{int, parse_rational, format_rational, DualScalar, Rational};
use crate::error::{Error, Result};

/// Dense square matrix of rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(dim: usize) -> Self {
        RatMatrix { dim, entries: vec![Rational::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = RatMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::dimension("matrix rows must form a non-empty square"));
        }
        Ok(RatMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i).clone()).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, rhs.dim);
        RatMatrix { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, rhs.dim);
        let d = self.dim;
        let mut out = RatMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    out.entries[i * d + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Serialize for RatMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RatMatrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

/// `(A, phi, X, f, Phi)` with `A = X = M_d(Q)`, `phi = tr / d` and
/// `f(x) = sum_ij w_ij x_ij`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixModel {
    dim: usize,
    f_weights: RatMatrix,
}

impl MatrixModel {
    pub fn new(f_weights: RatMatrix) -> Self {
        MatrixModel { dim: f_weights.dim(), f_weights }
    }

    /// Weights `w_ij = (i + 2j + 1) / (ij + 2)`, chosen only to be generic.
    pub fn with_default_weights(dim: usize) -> Self {
        let rows = (0..dim as i64)
            .map(|i| (0..dim as i64).map(|j| Rational::new((i + 2 * j + 1).into(), (i * j + 2).into())).collect())
            .collect();
        MatrixModel::new(RatMatrix::from_rows(rows).expect("square by construction"))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phi(&self, a: &RatMatrix) -> Rational {
        a.trace() / int(self.dim as i64)
    }

    pub fn f(&self, xi: &RatMatrix) -> Rational {
        xi.entries.iter().zip(&self.f_weights.entries).map(|(x, w)| x * w).fold(Rational::zero(), |a, b| a + b)
    }

    fn check(&self, m: &RatMatrix) -> Result<()> {
        if m.dim() != self.dim {
            return Err(Error::dimension(format!("matrix of size {} in a model of size {}", m.dim(), self.dim)));
        }
        Ok(())
    }
}

/// An element `(a, xi)` of `A x X`, multiplied as `(a, xi)(b, eta) = (ab, a eta + xi b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeBElement {
    pub a: RatMatrix,
    pub xi: RatMatrix,
}

impl TypeBElement {
    pub fn new(a: RatMatrix, xi: RatMatrix) -> Self {
        TypeBElement { a, xi }
    }

    pub fn one(dim: usize) -> Self {
        TypeBElement::new(RatMatrix::identity(dim), RatMatrix::zeros(dim))
    }

    pub fn mul(&self, other: &TypeBElement) -> TypeBElement {
        TypeBElement::new(&self.a * &other.a, &(&self.a * &other.xi) + &(&self.xi * &other.a))
    }
}

/// `E(a, xi) = (phi(a), f(xi))`.
pub fn expectation(model: &MatrixModel, e: &TypeBElement) -> DualScalar {
    DualScalar::new(model.phi(&e.a), model.f(&e.xi))
}

/// Mixed moments of a fixed list of elements of the matrix model; a letter's
/// `element` field indexes the list.
#[derive(Clone, Debug)]
pub struct MatrixModelOracle {
    model: MatrixModel,
    elements: Vec<TypeBElement>,
}

impl MatrixModelOracle {
    pub fn new(model: MatrixModel, elements: Vec<TypeBElement>) -> Result<Self> {
        for e in &elements {
            model.check(&e.a)?;
            model.check(&e.xi)?;
        }
        Ok(MatrixModelOracle { model, elements })
    }
}

impl MixedMomentOracle for MatrixModelOracle {
    fn moment(&self, word: &[Letter]) -> Result<DualScalar> {
        let mut product = TypeBElement::one(self.model.dim());
        for letter in word {
            let e = self
                .elements
                .get(letter.element)
                .ok_or_else(|| Error::domain(format!("no element with index {}", letter.element)))?;
            product = product.mul(e);
        }
        Ok(expectation(&self.model, &product))
    }
}

fn ordered_product(dim: usize, factors: impl Iterator<Item = RatMatrix>) -> RatMatrix {
    factors.fold(RatMatrix::identity(dim), |acc, m| &acc * &m)
}

/// Type A free cumulant `k_n(a_1, ..., a_n)` of the algebra part alone.
pub fn free_cumulant(model: &MatrixModel, a: &[RatMatrix]) -> Result<Rational> {
    for m in a {
        model.check(m)?;
    }
    let mut total = Rational::zero();
    for (p, mu) in moebius_expansion(a.len())? {
        let term = p
            .blocks()
            .iter()
            .map(|b| model.phi(&ordered_product(model.dim(), b.iter().map(|&i| a[i - 1].clone()))))
            .fold(Rational::one(), |x, y| x * y);
        total += term * int(mu);
    }
    Ok(total)
}

/// `k'_{n,p}`: the free cumulant formula with the `p`-th argument replaced by
/// `xi` and `phi` replaced by `f` on the block that contains position `p`.
/// Entry `p` of `a` is ignored.
pub fn kprime(model: &MatrixModel, a: &[RatMatrix], p: usize, xi: &RatMatrix) -> Result<Rational> {
    let n = a.len();
    if p == 0 || p > n {
        return Err(Error::domain(format!("position {p} outside 1..={n}")));
    }
    model.check(xi)?;
    for m in a {
        model.check(m)?;
    }
    let arg = |i: usize| if i == p { xi.clone() } else { a[i - 1].clone() };
    let mut total = Rational::zero();
    for (partition, mu) in moebius_expansion(n)? {
        let mut term = Rational::one();
        for block in partition.blocks() {
            let product = ordered_product(model.dim(), block.iter().map(|&i| arg(i)));
            term *= if block.contains(&p) { model.f(&product) } else { model.phi(&product) };
        }
        total += term * int(mu);
    }
    Ok(total)
}

/// Compares the type B cumulant of the first `n` pairs, computed from mixed
/// moments of `A x X` products, against `(k_n(a), sum_p k'_{n,p})`.
pub fn component_identity_check(model: &MatrixModel, pairs: &[TypeBElement], n: usize) -> Result<bool> {
    if n == 0 || n > pairs.len() {
        return Err(Error::domain(format!("need 1 <= n <= {} pairs, got n = {n}", pairs.len())));
    }
    let pairs = &pairs[..n];
    let oracle = MatrixModelOracle::new(model.clone(), pairs.to_vec())?;
    let word: Vec<Letter> = (0..n).map(|i| Letter::new(i, i)).collect();
    let lhs = multilinear_cumulant(&oracle, &word)?;

    let a: Vec<RatMatrix> = pairs.iter().map(|e| e.a.clone()).collect();
    let first = free_cumulant(model, &a)?;
    let mut second = Rational::zero();
    for (p, pair) in pairs.iter().enumerate() {
        second += kprime(model, &a, p + 1, &pair.xi)?;
    }
    Ok(lhs == DualScalar::new(first, second))
}

/// An element `(a, xi + b)` of `A x (X + A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleElement {
    pub a: RatMatrix,
    pub xi: RatMatrix,
    pub b: RatMatrix,
}

impl BimoduleElement {
    pub fn new(a: RatMatrix, xi: RatMatrix, b: RatMatrix) -> Self {
        BimoduleElement { a, xi, b }
    }
}

/// `E~(a, xi + b) = (phi(a), f(xi) + phi(b))`.
pub fn conditional_expectation(model: &MatrixModel, e: &BimoduleElement) -> DualScalar {
    DualScalar::new(model.phi(&e.a), model.f(&e.xi) + model.phi(&e.b))
}

/// `(x, t)(a, xi + b) = (xa, xi x + (ta + bx))`: the `t a` term lands in the
/// algebra summand of `X + A`, next to `b`.
pub fn c_action(c: &DualScalar, e: &BimoduleElement) -> BimoduleElement {
    BimoduleElement {
        a: e.a.scale(&c.x),
        xi: e.xi.scale(&c.x),
        b: &e.a.scale(&c.t) + &e.b.scale(&c.x),
    }
}

/// JSON configuration for a matrix desk model and a list of elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixModelConfig {
    pub dim: usize,
    pub f_weights: RatMatrix,
    pub elements: Vec<TypeBElement>,
}

impl MatrixModelConfig {
    pub fn into_parts(self) -> Result<(MatrixModel, Vec<TypeBElement>)> {
        if self.f_weights.dim() != self.dim {
            return Err(Error::dimension("f_weights size does not match dim"));
        }
        let model = MatrixModel::new(self.f_weights);
        for e in &self.elements {
            model.check(&e.a)?;
            model.check(&e.xi)?;
        }
        Ok((model, self.elements))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cumulant::{moments_to_cumulants, MomentSequence};
    use crate::dual::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng, dim: usize) -> RatMatrix {
        let rows = (0..dim).map(|_| (0..dim).map(|_| rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))).collect()).collect();
        RatMatrix::from_rows(rows).unwrap()
    }

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn phi_is_a_state() {
        let model = MatrixModel::with_default_weights(3);
        assert_eq!(model.phi(&RatMatrix::identity(3)), int(1));
    }

    #[test]
    fn kprime_low_orders() {
        let model = MatrixModel::with_default_weights(2);
        let a = m(&[&[1, 2], &[0, -1]]);
        let xi = m(&[&[3, -1], &[2, 5]]);
        assert_eq!(kprime(&model, std::slice::from_ref(&a), 1, &xi).unwrap(), model.f(&xi));
        let expected = model.f(&(&a * &xi)) - model.phi(&a) * model.f(&xi);
        assert_eq!(kprime(&model, &[a.clone(), a.clone()], 2, &xi).unwrap(), expected);
        assert!(kprime(&model, std::slice::from_ref(&a), 2, &xi).is_err());
    }

    #[test]
    fn first_cumulant_is_the_expectation() {
        let model = MatrixModel::with_default_weights(2);
        let e = TypeBElement::new(m(&[&[1, 2], &[3, 4]]), m(&[&[0, 1], &[1, 0]]));
        let oracle = MatrixModelOracle::new(model.clone(), vec![e.clone()]).unwrap();
        let k1 = multilinear_cumulant(&oracle, &[Letter::new(0, 0)]).unwrap();
        assert_eq!(k1, DualScalar::new(model.phi(&e.a), model.f(&e.xi)));
        assert!(component_identity_check(&model, &[e], 1).unwrap());
    }

    #[test]
    fn component_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (dim, n) in [(2, 2), (2, 3), (3, 4)] {
            let model = MatrixModel::with_default_weights(dim);
            let pairs: Vec<_> = (0..n).map(|_| TypeBElement::new(random_matrix(&mut rng, dim), random_matrix(&mut rng, dim))).collect();
            assert!(component_identity_check(&model, &pairs, n).unwrap());
        }
    }

    #[test]
    fn first_components_are_type_a_cumulants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let model = MatrixModel::with_default_weights(3);
        let pairs: Vec<_> = (0..4).map(|_| TypeBElement::new(random_matrix(&mut rng, 3), random_matrix(&mut rng, 3))).collect();
        let oracle = MatrixModelOracle::new(model.clone(), pairs.clone()).unwrap();
        for n in 1..=4 {
            let word: Vec<Letter> = (0..n).map(|i| Letter::new(i, i)).collect();
            let a: Vec<RatMatrix> = pairs[..n].iter().map(|e| e.a.clone()).collect();
            assert_eq!(multilinear_cumulant(&oracle, &word).unwrap().x, free_cumulant(&model, &a).unwrap());
        }
    }

    #[test]
    fn single_variable_word_matches_scalar_path() {
        let model = MatrixModel::with_default_weights(2);
        let e = TypeBElement::new(m(&[&[0, 1], &[1, 0]]), m(&[&[2, 0], &[1, -1]]));
        let oracle = MatrixModelOracle::new(model.clone(), vec![e.clone()]).unwrap();
        let mut power = TypeBElement::one(2);
        let mut moments = Vec::new();
        for _ in 0..3 {
            power = power.mul(&e);
            moments.push(expectation(&model, &power));
        }
        let k = moments_to_cumulants(&MomentSequence::new(moments)).unwrap();
        let word = [Letter::new(0, 0); 3];
        assert_eq!(&multilinear_cumulant(&oracle, &word).unwrap(), k.get(3));
    }

    #[test]
    fn conditional_expectation_examples() {
        let model = MatrixModel::with_default_weights(2);
        let (id, zero) = (RatMatrix::identity(2), RatMatrix::zeros(2));
        let unit = BimoduleElement::new(id.clone(), zero.clone(), zero.clone());
        assert_eq!(conditional_expectation(&model, &unit), DualScalar::one());
        let xi = m(&[&[1, 2], &[3, 4]]);
        let pure = BimoduleElement::new(zero.clone(), xi.clone(), zero.clone());
        assert_eq!(conditional_expectation(&model, &pure), DualScalar::new(int(0), model.f(&xi)));
    }

    #[test]
    fn c_action_examples() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let zero = RatMatrix::zeros(2);
        let e = BimoduleElement::new(a.clone(), m(&[&[0, 1], &[0, 0]]), m(&[&[5, 0], &[0, 5]]));
        assert_eq!(c_action(&DualScalar::one(), &e), e);
        let plain = BimoduleElement::new(a.clone(), zero.clone(), zero.clone());
        assert_eq!(c_action(&DualScalar::epsilon(), &plain), BimoduleElement::new(zero.clone(), zero, a));
    }

    #[test]
    fn c_action_is_a_module_action_and_expectation_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let model = MatrixModel::with_default_weights(3);
        for _ in 0..50 {
            let e = BimoduleElement::new(random_matrix(&mut rng, 3), random_matrix(&mut rng, 3), random_matrix(&mut rng, 3));
            let c1 = DualScalar::new(rat(rng.gen_range(-5..=5), 2), rat(rng.gen_range(-5..=5), 3));
            let c2 = DualScalar::new(rat(rng.gen_range(-5..=5), 3), rat(rng.gen_range(-5..=5), 2));
            assert_eq!(c_action(&c1, &c_action(&c2, &e)), c_action(&(&c1 * &c2), &e));
            assert_eq!(
                conditional_expectation(&model, &c_action(&c1, &e)),
                &c1 * &conditional_expectation(&model, &e)
            );
        }
    }

    #[test]
    fn config_json_round_trip() {
        let text = r#"{"dim":2,"f_weights":[["1","1/2"],["0","-1"]],
            "elements":[{"a":[["1","0"],["0","1"]],"xi":[["0","1"],["1/3","0"]]}]}"#;
        let config: MatrixModelConfig = serde_json::from_str(text).unwrap();
        let (model, elements) = config.clone().into_parts().unwrap();
        assert_eq!(model.f(&elements[0].xi), rat(1, 2));
        let again: MatrixModelConfig = serde_json::from_str(&serde_json::to_string(&config).unwrap()).unwrap();
        assert_eq!(again, config);
        let bad: MatrixModelConfig = serde_json::from_str(r#"{"dim":2,"f_weights":[["1"]],"elements":[]}"#).unwrap();
        assert!(bad.into_parts().is_err());
    }
}
