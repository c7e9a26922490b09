//! Type-A weight combinatorics: dominant weights, ρ, root pairings and the
//! residue classes of positive roots modulo 3.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A dominant weight of SL(n), stored as a weakly decreasing tuple of
/// nonnegative integers whose last entry is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HighestWeight {
    lambda: Vec<i64>,
}

impl HighestWeight {
    /// Accepts any weakly decreasing integer tuple of length ≥ 2 and
    /// normalizes it so that the last entry is 0.
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(Error::InvalidWeight(format!("rank too small: {lambda:?}")));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!("not weakly decreasing: {lambda:?}")));
        }
        let last = *lambda.last().unwrap();
        Ok(Self { lambda: lambda.into_iter().map(|x| x - last).collect() })
    }

    pub fn zero(n: usize) -> Self {
        Self { lambda: vec![0; n] }
    }

    /// The SL(3) weight m·ε₁ + n·ε₂ written (m, n, 0).
    pub fn sl3(m: u32, n: u32) -> Result<Self> {
        Self::new(vec![m as i64, n as i64, 0])
    }

    /// Pads `head` with zeros up to length `n`.
    pub fn padded(head: &[i64], n: usize) -> Result<Self> {
        if head.len() > n {
            return Err(Error::InvalidWeight(format!("{head:?} longer than rank {n}")));
        }
        let mut lambda = head.to_vec();
        lambda.resize(n, 0);
        Self::new(lambda)
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.lambda
    }

    /// |λ| = Σ λᵢ.
    pub fn size(&self) -> i64 {
        self.lambda.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.lambda.iter().take_while(|&&x| x > 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.iter().all(|&x| x == 0)
    }

    /// λ + ρ with ρ = (n−1, …, 1, 0).
    pub fn plus_rho(&self) -> Vec<i64> {
        self.lambda.iter().zip(rho(self.n())).map(|(a, b)| a + b).collect()
    }
}

impl fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The positive root εᵢ − εⱼ, with 0-based indices i < j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositiveRoot {
    i: usize,
    j: usize,
}

impl PositiveRoot {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i >= j {
            return Err(Error::InvalidWeight(format!("root e{i}-e{j} is not positive")));
        }
        Ok(Self { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Height j − i.
    pub fn height(&self) -> usize {
        self.j - self.i
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}-e{}", self.i + 1, self.j + 1)
    }
}

/// All n(n−1)/2 positive roots of SL(n), in lexicographic order.
pub fn positive_roots(n: usize) -> impl Iterator<Item = PositiveRoot> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| PositiveRoot { i, j }))
}

/// Representative (n−1, n−2, …, 0) of ρ. It differs from the trace-zero ρ by
/// a multiple of (1, …, 1), which no root pairing sees.
pub fn rho(n: usize) -> Vec<i64> {
    (0..n as i64).rev().collect()
}

/// ⟨εᵢ − εⱼ, v⟩ = vᵢ − vⱼ.
pub fn pairing(alpha: PositiveRoot, v: &[i64]) -> i64 {
    v[alpha.i] - v[alpha.j]
}

/// Partition of the positive roots by ⟨α, Λ+ρ⟩ mod 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSets {
    classes: [Vec<PositiveRoot>; 3],
    values: BTreeMap<PositiveRoot, i64>,
}

impl ResidueSets {
    /// Roots with ⟨α, Λ+ρ⟩ ≡ `j` (mod 3).
    pub fn class(&self, j: usize) -> &[PositiveRoot] {
        &self.classes[j]
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.classes[0].len(), self.classes[1].len(), self.classes[2].len()]
    }

    /// ⟨α, Λ+ρ⟩ for every positive root.
    pub fn values(&self) -> &BTreeMap<PositiveRoot, i64> {
        &self.values
    }

    pub fn value(&self, alpha: PositiveRoot) -> i64 {
        self.values[&alpha]
    }
}

/// Sorts the positive roots of SL(n) into S₀(Λ), S₁(Λ), S₂(Λ).
pub fn residue_sets(weight: &HighestWeight) -> ResidueSets {
    let shifted = weight.plus_rho();
    let mut classes: [Vec<PositiveRoot>; 3] = Default::default();
    let mut values = BTreeMap::new();
    for alpha in positive_roots(weight.n()) {
        let v = pairing(alpha, &shifted);
        classes[v.rem_euclid(3) as usize].push(alpha);
        values.insert(alpha, v);
    }
    ResidueSets { classes, values }
}

/// Every dominant weight of SL(n) (last entry 0) with entries ≤ `max`, sorted
/// lexicographically.
pub fn dominant_weights_up_to(n: usize, max: i64) -> Vec<HighestWeight> {
    fn go(prefix: &mut Vec<i64>, left: usize, bound: i64, out: &mut Vec<HighestWeight>) {
        if left == 0 {
            let mut lambda = prefix.clone();
            lambda.push(0);
            out.push(HighestWeight { lambda });
            return;
        }
        for x in 0..=bound {
            prefix.push(x);
            go(prefix, left - 1, x, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        go(&mut Vec::new(), n - 1, max, &mut out);
    }
    out.sort();
    out
}
