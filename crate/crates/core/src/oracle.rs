//! Brute-force graded decomposition of Sym^d(V).
//!
//! Weights of Sym^d(V) are counted by a multiset dynamic program over the
//! weight-one basis of V, then peeled into irreducibles by repeatedly
//! subtracting the character of the lexicographically largest dominant
//! weight. From the graded multiplicities m_Λ(d) we read off the invariant
//! series and divide it out to get graded harmonic multiplicities.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use crate::characters::{dominant_multiplicities, weyl_dimension};
use crate::error::{Error, Result};
use crate::multiplicity::{Case, E6Weight};
use crate::weights::HighestWeight;

/// Both cases use nine GL coordinates: three blocks of three for SL₃³, and
/// the nine coordinates of GL₉. In degree d every coordinate lies in 0..=d.
const COORDS: usize = 9;
const BITS: u32 = 4;
/// Largest degree whose coordinates fit in a 4-bit field.
pub const PACKED_MAX_DEGREE: u32 = (1 << BITS) - 1;
/// Default degree cap for Λ³C⁹.
pub const DEFAULT_E8_MAX_DEGREE: u32 = 6;

type Key = u64;

fn pack(v: &[i64]) -> Key {
    v.iter().enumerate().fold(0, |acc, (i, &x)| acc | (x as u64) << (BITS * i as u32))
}

fn unpack(k: Key) -> Vec<i64> {
    (0..COORDS).map(|i| ((k >> (BITS * i as u32)) & 0xf) as i64).collect()
}

/// Weights of the basis vectors of V, each of multiplicity one.
fn basis_weights(case: Case) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    match case {
        Case::E6 => {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        let mut v = vec![0; COORDS];
                        v[i] = 1;
                        v[3 + j] = 1;
                        v[6 + k] = 1;
                        out.push(v);
                    }
                }
            }
        }
        Case::E8 => {
            for i in 0..9 {
                for j in i + 1..9 {
                    for k in j + 1..9 {
                        let mut v = vec![0; COORDS];
                        v[i] = 1;
                        v[j] = 1;
                        v[k] = 1;
                        out.push(v);
                    }
                }
            }
        }
    }
    out
}

pub fn dim_v(case: Case) -> u64 {
    match case {
        Case::E6 => 27,
        Case::E8 => 84,
    }
}

/// C(dim V + d − 1, d) = dim Sym^d(V).
pub fn symd_dimension(case: Case, d: u32) -> BigUint {
    let n = dim_v(case);
    let mut acc = BigUint::from(1u32);
    for i in 0..u64::from(d) {
        acc = acc * (n + i) / (i + 1);
    }
    acc
}

/// Degree limits for the dynamic program.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaleLimits {
    pub e6_max_degree: u32,
    pub e8_max_degree: u32,
}

impl Default for ScaleLimits {
    fn default() -> Self {
        Self { e6_max_degree: PACKED_MAX_DEGREE, e8_max_degree: DEFAULT_E8_MAX_DEGREE }
    }
}

impl ScaleLimits {
    fn check(&self, case: Case, d: u32) -> Result<()> {
        let cap = match case {
            Case::E6 => self.e6_max_degree,
            Case::E8 => self.e8_max_degree,
        }
        .min(PACKED_MAX_DEGREE);
        if d > cap {
            return Err(Error::ScaleExceeded(format!("{case} degree {d} exceeds the cap {cap}")));
        }
        if symd_dimension(case, d).to_u64().is_none() {
            return Err(Error::ScaleExceeded(format!("dim Sym^{d} does not fit in 64 bits")));
        }
        Ok(())
    }
}

/// Weight multiplicities of Sym^d(V), in nine GL coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightMultTable {
    case: Case,
    degree: u32,
    counts: FxHashMap<Key, u64>,
}

impl WeightMultTable {
    pub fn case(&self) -> Case {
        self.case
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Multiplicity of a nine-coordinate weight; 0 when absent.
    pub fn get(&self, weight: &[i64]) -> u64 {
        if weight.len() != COORDS || weight.iter().any(|&x| !(0..=15).contains(&x)) {
            return 0;
        }
        self.counts.get(&pack(weight)).copied().unwrap_or(0)
    }

    /// All weights with their multiplicities, sorted.
    pub fn entries(&self) -> BTreeMap<Vec<i64>, u64> {
        self.counts.iter().map(|(&k, &c)| (unpack(k), c)).collect()
    }

    pub fn total_mass(&self) -> BigUint {
        self.counts.values().map(|&c| BigUint::from(c)).sum()
    }

    fn dominant_entries(&self) -> BTreeMap<Vec<i64>, i128> {
        self.counts
            .iter()
            .map(|(&k, &c)| (unpack(k), c))
            .filter(|(v, _)| is_dominant(self.case, v))
            .map(|(v, c)| (v, i128::from(c)))
            .collect()
    }
}

fn is_dominant(case: Case, v: &[i64]) -> bool {
    match case {
        Case::E6 => v.chunks(3).all(|b| b[0] >= b[1] && b[1] >= b[2]),
        Case::E8 => v.windows(2).all(|p| p[0] >= p[1]),
    }
}

/// Tables for Sym⁰ … Sym^max_d, from one pass of the multiset DP: basis
/// vectors are taken in a fixed order and each may be reused, so every
/// monomial is counted once.
pub fn symd_tables(case: Case, max_d: u32, limits: &ScaleLimits) -> Result<Vec<WeightMultTable>> {
    limits.check(case, max_d)?;
    let items: Vec<Key> = basis_weights(case).iter().map(|v| pack(v)).collect();
    let mut layers: Vec<FxHashMap<Key, u64>> = (0..=max_d).map(|_| FxHashMap::default()).collect();
    layers[0].insert(0, 1);
    for &item in &items {
        for d in 1..=max_d as usize {
            let (lower, upper) = layers.split_at_mut(d);
            let target = &mut upper[0];
            for (&k, &c) in lower[d - 1].iter() {
                *target.entry(k + item).or_insert(0) += c;
            }
        }
    }
    Ok(layers
        .into_iter()
        .enumerate()
        .map(|(d, counts)| WeightMultTable { case, degree: d as u32, counts })
        .collect())
}

/// The table of Sym^d(V) alone.
pub fn symd_weights(case: Case, d: u32, limits: &ScaleLimits) -> Result<WeightMultTable> {
    Ok(symd_tables(case, d, limits)?.pop().expect("degree d is present"))
}

/// Label of an irreducible: (m₁,n₁,m₂,n₂,m₃,n₃) for SL₃³, and the
/// normalized SL₉ weight (last entry 0) for Λ³C⁹.
fn label_of(case: Case, top: &[i64]) -> Vec<i64> {
    match case {
        Case::E6 => top.chunks(3).flat_map(|b| [b[0] - b[2], b[1] - b[2]]).collect(),
        Case::E8 => top.iter().map(|x| x - top[8]).collect(),
    }
}

/// Dimension of the irreducible with the given label.
pub fn label_dimension(case: Case, label: &[i64]) -> Result<BigUint> {
    match case {
        Case::E6 => Ok(E6Weight::from_slice(label)?.dimension()),
        Case::E8 => {
            let l = HighestWeight::new(label.to_vec())?;
            if l.n() != 9 {
                return Err(Error::DimensionMismatch { expected: 9, actual: l.n() });
            }
            Ok(weyl_dimension(&l))
        }
    }
}

/// Dominant multiplicities of the irreducible whose highest weight is `top`
/// (GL coordinates), in the same coordinates.
fn dominant_character(case: Case, top: &[i64]) -> Vec<(Vec<i64>, i128)> {
    let shifted = |block: &[i64]| -> Vec<(Vec<i64>, i128)> {
        let base = *block.last().unwrap();
        let hw = HighestWeight::new(block.to_vec()).expect("dominant block");
        dominant_multiplicities(&hw)
            .into_iter()
            .map(|(w, m)| {
                let w = w.into_iter().map(|x| x + base).collect();
                (w, m.to_i128().expect("multiplicity fits in i128"))
            })
            .collect()
    };
    match case {
        Case::E8 => shifted(top),
        Case::E6 => {
            let blocks: Vec<_> = top.chunks(3).map(shifted).collect();
            let mut out = Vec::new();
            for (a, ma) in &blocks[0] {
                for (b, mb) in &blocks[1] {
                    for (c, mc) in &blocks[2] {
                        let w = a.iter().chain(b).chain(c).copied().collect();
                        out.push((w, ma * mb * mc));
                    }
                }
            }
            out
        }
    }
}

/// Irreducible multiplicities in one degree, keyed by label.
pub type Decomposition = BTreeMap<Vec<i64>, u64>;

/// Splits a genuine character into irreducibles, always peeling off the
/// lexicographically largest dominant weight.
pub fn decompose(table: &WeightMultTable) -> Result<Decomposition> {
    decompose_with(table, |candidates| candidates.keys().next_back().cloned())
}

/// Peels irreducibles in the order chosen by `pick`, which receives the
/// remaining positive dominant weights and must return one that is maximal
/// in the dominance order.
pub(crate) fn decompose_with(
    table: &WeightMultTable,
    mut pick: impl FnMut(&BTreeMap<Vec<i64>, i128>) -> Option<Vec<i64>>,
) -> Result<Decomposition> {
    let case = table.case;
    let mut rest = table.dominant_entries();
    let mut out = Decomposition::new();
    while let Some(top) = pick(&rest) {
        let m = rest[&top];
        for (w, c) in dominant_character(case, &top) {
            let slot = rest.entry(w.clone()).or_insert(0);
            *slot -= m * c;
            if *slot < 0 {
                return Err(Error::NegativeRemainder(w));
            }
            if *slot == 0 {
                rest.remove(&w);
            }
        }
        *out.entry(label_of(case, &top)).or_insert(0) += m as u64;
    }
    if let Some((w, _)) = rest.into_iter().next() {
        return Err(Error::NegativeRemainder(w));
    }
    Ok(out)
}

/// Truncated power series with integer coefficients, index = degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    coefficients: Vec<i64>,
}

impl HilbertSeries {
    pub fn new(coefficients: Vec<i64>) -> Self {
        Self { coefficients }
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn coefficient(&self, d: usize) -> i64 {
        self.coefficients.get(d).copied().unwrap_or(0)
    }

    /// Highest degree kept.
    pub fn max_degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn partial_sum(&self) -> i64 {
        self.coefficients.iter().sum()
    }

    /// self / divisor, truncated to the length of self. The divisor must
    /// have constant term 1.
    pub fn divide(&self, divisor: &HilbertSeries) -> HilbertSeries {
        assert_eq!(divisor.coefficient(0), 1, "divisor must start with 1");
        let mut q: Vec<i64> = Vec::with_capacity(self.coefficients.len());
        for d in 0..self.coefficients.len() {
            let c = self.coefficients[d] - (1..=d).map(|k| divisor.coefficient(k) * q[d - k]).sum::<i64>();
            q.push(c);
        }
        HilbertSeries { coefficients: q }
    }
}

/// m_Λ(d) for every irreducible Λ and every degree d ≤ max_degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedDecomposition {
    case: Case,
    degrees: Vec<Decomposition>,
}

impl GradedDecomposition {
    /// Runs the DP to `max_d` and decomposes every degree.
    pub fn compute(case: Case, max_d: u32, limits: &ScaleLimits) -> Result<Self> {
        let tables = symd_tables(case, max_d, limits)?;
        let degrees = tables.iter().map(decompose).collect::<Result<_>>()?;
        Ok(Self { case, degrees })
    }

    pub fn case(&self) -> Case {
        self.case
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    pub fn degree(&self, d: u32) -> Option<&Decomposition> {
        self.degrees.get(d as usize)
    }

    pub fn degrees(&self) -> &[Decomposition] {
        &self.degrees
    }

    pub fn multiplicity(&self, label: &[i64], d: u32) -> u64 {
        self.degree(d).and_then(|m| m.get(label)).copied().unwrap_or(0)
    }

    /// Label of the trivial representation.
    pub fn trivial_label(&self) -> Vec<i64> {
        match self.case {
            Case::E6 => vec![0; 6],
            Case::E8 => vec![0; 9],
        }
    }

    /// Σ_Λ m_Λ(d)·dim Λ.
    pub fn dimension(&self, d: u32) -> Result<BigUint> {
        let mut total = BigUint::from(0u32);
        for (label, &m) in self.degree(d).into_iter().flatten() {
            total += label_dimension(self.case, label)? * m;
        }
        Ok(total)
    }

    /// Whether Σ_Λ m_Λ(d)·dim Λ = dim Sym^d(V).
    pub fn conserves_dimension(&self, d: u32) -> Result<bool> {
        Ok(self.dimension(d)? == symd_dimension(self.case, d))
    }

    /// Σ_d m_Λ(d) tᵈ.
    pub fn series(&self, label: &[i64]) -> HilbertSeries {
        let coefficients = (0..=self.max_degree()).map(|d| self.multiplicity(label, d) as i64).collect();
        HilbertSeries::new(coefficients)
    }

    /// Dimensions of the invariants in each degree.
    pub fn invariant_series(&self) -> HilbertSeries {
        self.series(&self.trivial_label())
    }

    /// H_Λ(t) = M_Λ(t) / P_inv(t), truncated at the top degree.
    pub fn harmonic_series(&self, label: &[i64]) -> Result<HilbertSeries> {
        let h = self.series(label).divide(&self.invariant_series());
        if let Some(d) = h.coefficients().iter().position(|&c| c < 0) {
            return Err(Error::NegativeCoefficient(d));
        }
        Ok(h)
    }
}

/// Invariant dimensions in degrees 0 … max_d.
pub fn invariant_series(case: Case, max_d: u32, limits: &ScaleLimits) -> Result<HilbertSeries> {
    Ok(GradedDecomposition::compute(case, max_d, limits)?.invariant_series())
}

/// Graded harmonic multiplicities of `label` in degrees 0 … max_d.
pub fn harmonic_series(case: Case, label: &[i64], max_d: u32, limits: &ScaleLimits) -> Result<HilbertSeries> {
    GradedDecomposition::compute(case, max_d, limits)?.harmonic_series(label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn limits() -> ScaleLimits {
        ScaleLimits::default()
    }

    #[test]
    fn packing_round_trips() {
        let v = vec![15, 0, 3, 7, 1, 2, 0, 9, 4];
        assert_eq!(unpack(pack(&v)), v);
    }

    #[test]
    fn degree_zero_and_one() {
        for case in [Case::E6, Case::E8] {
            let t0 = symd_weights(case, 0, &limits()).unwrap();
            assert_eq!(t0.entries(), BTreeMap::from([(vec![0; 9], 1)]));
            let t1 = symd_weights(case, 1, &limits()).unwrap();
            assert_eq!(t1.len() as u64, dim_v(case));
            assert!(t1.entries().values().all(|&c| c == 1));
        }
    }

    #[test]
    fn sym2_mass() {
        let t = symd_weights(Case::E6, 2, &limits()).unwrap();
        assert_eq!(t.total_mass(), BigUint::from(378u32));
        assert_eq!(t.get(&[2, 0, 0, 2, 0, 0, 2, 0, 0]), 1);
        assert_eq!(t.get(&[1, 1, 0, 1, 1, 0, 1, 1, 0]), 4);
    }

    #[test]
    fn dp_matches_direct_monomial_count() {
        // enumerate multisets of basis indices directly for small d
        for case in [Case::E6, Case::E8] {
            let basis = basis_weights(case);
            for d in 0..=3usize {
                let mut counts: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
                let mut idx = vec![0usize; d];
                loop {
                    let mut w = vec![0; 9];
                    for &i in &idx {
                        for (a, b) in w.iter_mut().zip(&basis[i]) {
                            *a += b;
                        }
                    }
                    *counts.entry(w).or_default() += 1;
                    // next nondecreasing index tuple
                    let Some(p) = (0..d).rev().find(|&p| idx[p] + 1 < basis.len()) else { break };
                    let next = idx[p] + 1;
                    idx[p..d].fill(next);
                }
                assert_eq!(symd_weights(case, d as u32, &limits()).unwrap().entries(), counts);
            }
        }
    }

    #[test]
    fn sym1_is_v() {
        let g = GradedDecomposition::compute(Case::E6, 1, &limits()).unwrap();
        assert_eq!(g.degree(1).unwrap(), &Decomposition::from([(vec![1, 0, 1, 0, 1, 0], 1)]));
        let g = GradedDecomposition::compute(Case::E8, 1, &limits()).unwrap();
        assert_eq!(g.degree(1).unwrap(), &Decomposition::from([(vec![1, 1, 1, 0, 0, 0, 0, 0, 0], 1)]));
    }

    #[test]
    fn sym2_is_the_cauchy_decomposition() {
        let g = GradedDecomposition::compute(Case::E6, 2, &limits()).unwrap();
        let expected = Decomposition::from([
            (vec![2, 0, 2, 0, 2, 0], 1),
            (vec![2, 0, 1, 1, 1, 1], 1),
            (vec![1, 1, 2, 0, 1, 1], 1),
            (vec![1, 1, 1, 1, 2, 0], 1),
        ]);
        assert_eq!(g.degree(2).unwrap(), &expected);
    }

    #[test]
    fn dimension_conservation_small() {
        let g = GradedDecomposition::compute(Case::E6, 5, &limits()).unwrap();
        for d in 0..=5 {
            assert!(g.conserves_dimension(d).unwrap(), "degree {d}");
        }
        let g = GradedDecomposition::compute(Case::E8, 3, &limits()).unwrap();
        for d in 0..=3 {
            assert!(g.conserves_dimension(d).unwrap(), "degree {d}");
        }
    }

    #[test]
    fn e6_invariants_through_degree_six() {
        let p = invariant_series(Case::E6, 6, &limits()).unwrap();
        assert_eq!(p.coefficients(), &[1, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn harmonic_series_of_v() {
        let g = GradedDecomposition::compute(Case::E6, 6, &limits()).unwrap();
        let h = g.harmonic_series(&[1, 0, 1, 0, 1, 0]).unwrap();
        assert_eq!(h.coefficient(0), 0);
        assert_eq!(h.coefficient(1), 1);
        assert!(h.partial_sum() <= 3);
        let trivial = g.harmonic_series(&g.trivial_label()).unwrap();
        assert_eq!(trivial.coefficients(), &[1, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn series_division() {
        let m = HilbertSeries::new(vec![1, 2, 3, 4]);
        let p = HilbertSeries::new(vec![1, 1]);
        assert_eq!(m.divide(&p).coefficients(), &[1, 1, 2, 2]);
    }

    #[test]
    fn negative_harmonic_coefficient_is_reported() {
        let g = GradedDecomposition {
            case: Case::E6,
            degrees: vec![
                Decomposition::from([(vec![0; 6], 1)]),
                Decomposition::from([(vec![0; 6], 1)]),
                Decomposition::new(),
            ],
        };
        assert!(g.harmonic_series(&[0; 6]).is_ok());
        assert!(g.harmonic_series(&[1, 0, 1, 0, 1, 0]).is_ok());
        let g = GradedDecomposition {
            case: Case::E6,
            degrees: vec![
                Decomposition::from([(vec![0; 6], 1)]),
                Decomposition::from([(vec![0; 6], 1), (vec![1, 0, 1, 0, 1, 0], 1)]),
                Decomposition::from([(vec![0; 6], 1)]),
            ],
        };
        assert!(matches!(g.harmonic_series(&[1, 0, 1, 0, 1, 0]), Err(Error::NegativeCoefficient(2))));
    }

    #[test]
    fn scale_caps() {
        assert!(matches!(symd_weights(Case::E8, 7, &limits()), Err(Error::ScaleExceeded(_))));
        assert!(matches!(symd_weights(Case::E6, 16, &limits()), Err(Error::ScaleExceeded(_))));
        let raised = ScaleLimits { e8_max_degree: 99, ..limits() };
        assert!(matches!(symd_weights(Case::E8, 16, &raised), Err(Error::ScaleExceeded(_))));
    }

    #[test]
    fn corrupted_table_leaves_a_remainder() {
        let mut t = symd_weights(Case::E6, 2, &limits()).unwrap();
        *t.counts.get_mut(&pack(&[1, 1, 0, 1, 1, 0, 1, 1, 0])).unwrap() -= 1;
        assert!(matches!(decompose(&t), Err(Error::NegativeRemainder(_))));
    }

    fn dominates(case: Case, a: &[i64], b: &[i64]) -> bool {
        let blocks = match case {
            Case::E6 => 3,
            Case::E8 => 9,
        };
        a.chunks(blocks).zip(b.chunks(blocks)).all(|(x, y)| {
            let (mut sx, mut sy) = (0, 0);
            x.iter().zip(y).all(|(p, q)| {
                sx += p;
                sy += q;
                sx >= sy
            })
        })
    }

    #[test]
    fn tie_breaking_order_is_irrelevant() {
        let mut rng = StdRng::seed_from_u64(7);
        for (case, max_d) in [(Case::E6, 4), (Case::E8, 3)] {
            for t in symd_tables(case, max_d, &limits()).unwrap() {
                let canonical = decompose(&t).unwrap();
                for _ in 0..3 {
                    let random = decompose_with(&t, |rest| {
                        let maximal: Vec<&Vec<i64>> = rest
                            .keys()
                            .filter(|w| !rest.keys().any(|u| u != *w && dominates(case, u, w)))
                            .collect();
                        maximal.choose(&mut rng).map(|w| (*w).clone())
                    })
                    .unwrap();
                    assert_eq!(random, canonical, "{case} degree {}", t.degree());
                }
            }
        }
    }
}
