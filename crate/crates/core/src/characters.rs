//! Exact character theory for SL(n): the Weyl dimension formula, Schur
//! functions evaluated at eigenvalue multisets through the Jacobi–Trudi
//! determinant, Freudenthal weight multiplicities, and the closed-form value
//! of χ_Λ at the order-3 element μ of SL(9).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{BigRational, Cyclotomic};
use crate::error::{Error, Result};
use crate::weights::{pairing, positive_roots, residue_sets, rho, HighestWeight};

/// Eigenvalues (with repetition) of a finite-order element of SL(n).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EigenvalueMultiset {
    values: Vec<Cyclotomic>,
}

impl EigenvalueMultiset {
    /// Checks that every entry is a ninth root of unity and that the product
    /// is 1.
    pub fn new(values: Vec<Cyclotomic>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidEigenvalues("empty multiset".into()));
        }
        if let Some(bad) = values.iter().find(|x| !x.pow(9).is_one()) {
            return Err(Error::InvalidEigenvalues(format!("{bad} is not a ninth root of unity")));
        }
        let det: Cyclotomic = values.iter().cloned().product();
        if !det.is_one() {
            return Err(Error::InvalidEigenvalues(format!("product is {det}, not 1")));
        }
        Ok(Self { values })
    }

    /// All-ones multiset of the identity of SL(n).
    pub fn identity(n: usize) -> Self {
        Self { values: vec![Cyclotomic::one(); n] }
    }

    /// μ = diag(ζ₃, 1, ζ₃², ζ₃, 1, ζ₃², ζ₃, 1, ζ₃²) in SL(9).
    pub fn mu() -> Self {
        let [one, z, z2] = Cyclotomic::cube_roots_of_unity();
        let block = [z, one, z2];
        Self { values: (0..3).flat_map(|_| block.clone()).collect() }
    }

    /// u = diag(ζ₃², ζ₃, 1) in SL(3).
    pub fn u() -> Self {
        let [one, z, z2] = Cyclotomic::cube_roots_of_unity();
        Self { values: vec![z2, z, one] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Canonical form used as a cache key: the entries sorted.
    pub fn sorted(&self) -> Vec<Cyclotomic> {
        let mut v = self.values.clone();
        v.sort();
        v
    }

    /// Multiplicity of the exponent k in the entries when every entry is a
    /// cube root of unity ζ₃ᵏ; `None` otherwise.
    pub fn cube_root_counts(&self) -> Option<[usize; 3]> {
        let roots = Cyclotomic::cube_roots_of_unity();
        let mut counts = [0; 3];
        for x in &self.values {
            let k = roots.iter().position(|r| r == x)?;
            counts[k] += 1;
        }
        Some(counts)
    }
}

/// Weight multiplicities of one irreducible representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDiagram {
    weights: BTreeMap<Vec<i64>, BigUint>,
}

impl WeightDiagram {
    pub fn weights(&self) -> &BTreeMap<Vec<i64>, BigUint> {
        &self.weights
    }

    pub fn multiplicity(&self, weight: &[i64]) -> BigUint {
        self.weights.get(weight).cloned().unwrap_or_default()
    }

    /// Σ multiplicities, which is the dimension.
    pub fn total_mass(&self) -> BigUint {
        self.weights.values().sum()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

/// Weyl dimension formula Π ⟨α, Λ+ρ⟩ / ⟨α, ρ⟩, with a single division.
pub fn weyl_dimension(weight: &HighestWeight) -> BigUint {
    let n = weight.n();
    let shifted = weight.plus_rho();
    let r = rho(n);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for alpha in positive_roots(n) {
        num *= pairing(alpha, &shifted) as u64;
        den *= pairing(alpha, &r) as u64;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// Complete homogeneous symmetric polynomials h₀ … h_max at `eigs`.
fn complete_homogeneous(eigs: &EigenvalueMultiset, max: usize) -> Vec<Cyclotomic> {
    let mut h = vec![Cyclotomic::zero(); max + 1];
    h[0] = Cyclotomic::one();
    for x in eigs.values() {
        // Multiplying by ±ζᵏ is a coefficient shift.
        let root = x.as_root_of_unity();
        for k in 1..=max {
            let term = match root {
                Some((1, e)) => h[k - 1].mul_zeta_pow(e as i64),
                Some((_, e)) => -h[k - 1].mul_zeta_pow(e as i64),
                None => x * &h[k - 1],
            };
            h[k] += &term;
        }
    }
    h
}

/// Determinant by Gaussian elimination over Q(ζ₉).
pub(crate) fn determinant(mut m: Vec<Vec<Cyclotomic>>) -> Cyclotomic {
    let size = m.len();
    let mut det = Cyclotomic::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return Cyclotomic::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let p_inv = p.inv().expect("pivot is nonzero");
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &p_inv;
            let (upper, lower) = m.split_at_mut(r);
            for (x, y) in lower[0][col..size].iter_mut().zip(&upper[col][col..size]) {
                *x -= &(&factor * y);
            }
        }
    }
    det
}

/// χ_Λ at an element with the given eigenvalues, as the Schur polynomial
/// s_Λ = det(h_{λᵢ−i+j}). The determinant is regular at repeated eigenvalues.
pub fn char_at(weight: &HighestWeight, eigs: &EigenvalueMultiset) -> Result<Cyclotomic> {
    if eigs.len() != weight.n() {
        return Err(Error::DimensionMismatch { expected: weight.n(), actual: eigs.len() });
    }
    let len = weight.length();
    if len == 0 {
        return Ok(Cyclotomic::one());
    }
    let lambda = weight.entries();
    let h = complete_homogeneous(eigs, lambda[0] as usize + len - 1);
    let matrix = (0..len)
        .map(|i| {
            (0..len)
                .map(|j| {
                    let k = lambda[i] - i as i64 + j as i64;
                    if k < 0 {
                        Cyclotomic::zero()
                    } else {
                        h[k as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(determinant(matrix))
}

/// Dominant weights μ ⊴ λ with |μ| = |λ| and at most n parts, sorted
/// lexicographically descending (a linear extension of dominance).
fn dominated_partitions(lambda: &[i64]) -> Vec<Vec<i64>> {
    fn go(
        prefix: &mut Vec<i64>,
        lambda_prefix: &[i64],
        remaining: i64,
        cap: i64,
        n: usize,
        out: &mut Vec<Vec<i64>>,
    ) {
        let k = prefix.len();
        if k == n {
            if remaining == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let parts_left = (n - k) as i64;
        let sum: i64 = prefix.iter().sum();
        // dominance: every prefix sum of μ stays below that of λ
        let upper = cap.min(remaining).min(lambda_prefix[k] - sum);
        for x in (0..=upper).rev() {
            if x * parts_left < remaining {
                break;
            }
            prefix.push(x);
            go(prefix, lambda_prefix, remaining - x, x, n, out);
            prefix.pop();
        }
    }
    let n = lambda.len();
    let prefix_sums: Vec<i64> = lambda
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let total = prefix_sums.last().copied().unwrap_or(0);
    let mut out = Vec::new();
    go(&mut Vec::new(), &prefix_sums, total, lambda[0].max(0), n, &mut out);
    out
}

fn norm_sq(v: &[i64]) -> i64 {
    v.iter().map(|x| x * x).sum()
}

fn sorted_desc(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s
}

/// Multiplicities of the dominant weights of the irreducible with highest
/// weight Λ, by the Freudenthal recursion. Weights use the same coordinates
/// as Λ (nonnegative entries summing to |Λ|).
pub fn dominant_multiplicities(weight: &HighestWeight) -> BTreeMap<Vec<i64>, BigUint> {
    let lambda = weight.entries();
    let n = lambda.len();
    let r = rho(n);
    let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&r).map(|(a, b)| a + b).collect() };
    let top = norm_sq(&shift(lambda));

    let mut mult: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for mu in dominated_partitions(lambda) {
        if mu == lambda {
            mult.insert(mu, BigInt::one());
            continue;
        }
        let mut acc = BigInt::zero();
        for alpha in positive_roots(n) {
            let (i, j) = (alpha.i(), alpha.j());
            let mut w = mu.clone();
            for k in 1.. {
                w[i] += 1;
                w[j] -= 1;
                if w[j] < 0 {
                    break;
                }
                let Some(m) = mult.get(&sorted_desc(&w)) else {
                    break;
                };
                let ip = mu[i] - mu[j] + 2 * k;
                acc += m * BigInt::from(ip);
            }
        }
        let denom = top - norm_sq(&shift(&mu));
        debug_assert!(denom > 0);
        let (q, rem) = (acc * BigInt::from(2)).div_rem(&BigInt::from(denom));
        debug_assert!(rem.is_zero(), "Freudenthal quotient is not integral at {mu:?}");
        if q.is_positive() {
            mult.insert(mu, q);
        }
    }
    mult.into_iter().map(|(k, v)| (k, v.to_biguint().expect("positive"))).collect()
}

/// Steps `v` to its next lexicographic permutation; false when `v` was the
/// last one.
fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Full weight diagram, obtained by spreading the dominant multiplicities
/// over their Weyl (coordinate-permutation) orbits.
pub fn freudenthal_diagram(weight: &HighestWeight) -> WeightDiagram {
    let mut weights = BTreeMap::new();
    for (mu, m) in dominant_multiplicities(weight) {
        let mut p = mu;
        p.reverse();
        loop {
            weights.insert(p.clone(), m.clone());
            if !next_permutation(&mut p) {
                break;
            }
        }
    }
    WeightDiagram { weights }
}

/// Π_{α∈S₀(0)} ⟨α, ρ⟩ for SL(9); the heights are 3 (six times) and 6 (three
/// times), giving 2³·3⁹.
pub fn mu_limit_denominator() -> BigInt {
    let sets = residue_sets(&HighestWeight::zero(9));
    sets.class(0).iter().map(|&a| BigInt::from(sets.value(a))).product()
}

/// χ_Λ(μ) from the limit of the Weyl quotient along e^{(2πi/3 + t)H_ρ}:
///
/// −(−1)^{Σ_α ⌊⟨α,Λ+ρ⟩/3⌋} · Π_{α∈S₀(Λ)} ⟨α,Λ+ρ⟩ / (2³3⁹) when |S₀(Λ)| = 9,
/// and 0 when |S₀(Λ)| > 9.
pub fn chi_mu_limit(weight: &HighestWeight) -> Result<Cyclotomic> {
    if weight.n() != 9 {
        return Err(Error::PreconditionViolated(format!("μ lives in SL(9), got rank {}", weight.n())));
    }
    if weight.size() % 3 != 0 {
        return Err(Error::PreconditionViolated(format!("|Λ| = {} is not divisible by 3", weight.size())));
    }
    let sets = residue_sets(weight);
    let s0 = sets.sizes()[0];
    if s0 > 9 {
        return Ok(Cyclotomic::zero());
    }
    if s0 < 9 {
        return Err(Error::FormulaViolation(format!("|S0({weight})| = {s0} < 9")));
    }
    let floors: i64 = sets.values().values().map(|v| v.div_euclid(3)).sum();
    let numerator: BigInt = sets.class(0).iter().map(|&a| BigInt::from(sets.value(a))).product();
    let sign = if floors % 2 == 0 { -1 } else { 1 };
    let value = BigRational::new(numerator * sign, mu_limit_denominator());
    Ok(Cyclotomic::from_rational(value))
}

/// Sign exponent Σ_{α>0} ⌊⟨α,Λ+ρ⟩/3⌋ appearing in [`chi_mu_limit`].
pub fn mu_sign_exponent(weight: &HighestWeight) -> i64 {
    residue_sets(weight).values().values().map(|v| v.div_euclid(3)).sum()
}
