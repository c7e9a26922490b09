//! Harmonic multiplicities for the two pairs, by closed form, by character
//! averaging over the centralizer groups, and (E8) by direct evaluation of
//! χ_Λ(μ).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::Cyclotomic;
use crate::centralizers::{enumerate_e6_m, enumerate_e8_c, e8_monomial_stabilizer};
use crate::characters::{char_at, chi_mu_limit, weyl_dimension, EigenvalueMultiset};
use crate::error::{Error, Result};
use crate::weights::{dominant_weights_up_to, HighestWeight};

/// Which of the two pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    /// SL₃³ on C³⊗C³⊗C³.
    E6,
    /// SL₉ on Λ³C⁹.
    E8,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::E6 => "e6",
            Case::E8 => "e8",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "e6" => Ok(Case::E6),
            "e8" => Ok(Case::E8),
            _ => Err(Error::PreconditionViolated(format!("unknown case {s:?}, expected e6 or e8"))),
        }
    }
}

/// F^{m₁,n₁} ⊗ F^{m₂,n₂} ⊗ F^{m₃,n₃}, each factor an SL₃ weight (m, n, 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct E6Weight {
    parts: [(u32, u32); 3],
}

impl E6Weight {
    pub fn new(m1: u32, n1: u32, m2: u32, n2: u32, m3: u32, n3: u32) -> Result<Self> {
        let parts = [(m1, n1), (m2, n2), (m3, n3)];
        if let Some((m, n)) = parts.iter().find(|(m, n)| m < n) {
            return Err(Error::InvalidWeight(format!("SL3 factor ({m},{n}) needs m ≥ n")));
        }
        Ok(Self { parts })
    }

    /// Parses the six numbers m₁, n₁, m₂, n₂, m₃, n₃.
    pub fn from_slice(v: &[i64]) -> Result<Self> {
        if v.len() != 6 {
            return Err(Error::DimensionMismatch { expected: 6, actual: v.len() });
        }
        let mut u = [0u32; 6];
        for (slot, &x) in u.iter_mut().zip(v) {
            *slot = u32::try_from(x).map_err(|_| Error::InvalidWeight(format!("negative entry in {v:?}")))?;
        }
        Self::new(u[0], u[1], u[2], u[3], u[4], u[5])
    }

    pub fn parts(&self) -> [(u32, u32); 3] {
        self.parts
    }

    pub fn entries(&self) -> [i64; 6] {
        let [(a, b), (c, d), (e, f)] = self.parts;
        [a, b, c, d, e, f].map(i64::from)
    }

    /// The three SL₃ highest weights.
    pub fn factors(&self) -> [HighestWeight; 3] {
        self.parts.map(|(m, n)| HighestWeight::sl3(m, n).expect("m ≥ n checked at construction"))
    }

    /// Product of the three SL₃ Weyl dimensions.
    pub fn dimension(&self) -> BigUint {
        self.factors().iter().map(weyl_dimension).product()
    }
}

impl fmt::Display for E6Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [(a, b), (c, d), (e, g)] = self.parts;
        write!(f, "({a},{b})({c},{d})({e},{g})")
    }
}

/// Every E6 weight with all mᵢ ≤ `max`, in lexicographic order.
pub fn e6_weights_up_to(max: u32) -> Vec<E6Weight> {
    let pairs: Vec<(u32, u32)> = (0..=max).flat_map(|m| (0..=m).map(move |n| (m, n))).collect();
    let mut out = Vec::with_capacity(pairs.len().pow(3));
    for &p in &pairs {
        for &q in &pairs {
            for &r in &pairs {
                out.push(E6Weight { parts: [p, q, r] });
            }
        }
    }
    out.sort();
    out
}

/// m₁+n₁ ≡ m₂+n₂ ≡ m₃+n₃ (mod 3).
pub fn e6_congruence(w: &E6Weight) -> bool {
    let [a, b, c] = w.parts.map(|(m, n)| (m + n) % 3);
    a == b && b == c
}

/// (D + ε)/9 with ε = 0, 8, −8 for D ≡ 0, 1, 8 (mod 9); zero when the
/// congruence fails.
pub fn e6_closed_form(w: &E6Weight) -> Result<BigUint> {
    if !e6_congruence(w) {
        return Ok(BigUint::zero());
    }
    let d = BigInt::from(w.dimension());
    let eps = match (&d % 9u32).to_u32().expect("residue fits") {
        0 => 0,
        1 => 8,
        8 => -8,
        r => return Err(Error::FormulaViolation(format!("{w}: D = {d} ≡ {r} (mod 9)"))),
    };
    let (q, r) = (d + BigInt::from(eps)).div_rem(&BigInt::from(9));
    if !r.is_zero() {
        return Err(Error::FormulaViolation(format!("{w}: D + ε not divisible by 9")));
    }
    nonnegative(q, &w.to_string())
}

fn require_sl9(l: &HighestWeight) -> Result<()> {
    if l.n() != 9 {
        return Err(Error::PreconditionViolated(format!("expected an SL9 weight, got rank {}", l.n())));
    }
    Ok(())
}

fn nonnegative(q: BigInt, what: &str) -> Result<BigUint> {
    q.to_biguint().ok_or_else(|| Error::FormulaViolation(format!("{what}: negative multiplicity {q}")))
}

/// (D + 26χ)/27 with χ = χ_Λ(μ) taken from the limit formula; zero unless
/// 3 divides |Λ|.
pub fn e8_closed_form(l: &HighestWeight) -> Result<BigUint> {
    require_sl9(l)?;
    if l.size() % 3 != 0 {
        return Ok(BigUint::zero());
    }
    let chi = chi_mu_limit(l)?.as_rational().cloned().expect("limit formula is rational");
    let num = chi * BigInt::from(26) + BigInt::from(weyl_dimension(l));
    if !num.is_integer() {
        return Err(Error::FormulaViolation(format!("{l}: D + 26χ(μ) = {num} is not an integer")));
    }
    let (q, r) = num.to_integer().div_rem(&BigInt::from(27));
    if !r.is_zero() {
        return Err(Error::FormulaViolation(format!("{l}: D + 26χ(μ) not divisible by 27")));
    }
    nonnegative(q, &l.to_string())
}

/// (D + 26χ)/27 with χ = χ_Λ(μ) evaluated directly, cross-checked against
/// the 81-element form (3D + 78χ)/81.
pub fn e8_lemma_route(l: &HighestWeight) -> Result<BigUint> {
    require_sl9(l)?;
    if l.size() % 3 != 0 {
        return Err(Error::PreconditionViolated(format!("|Λ| = {} is not divisible by 3", l.size())));
    }
    let chi = char_at(l, &EigenvalueMultiset::mu())?.as_integer()?;
    let d = BigInt::from(weyl_dimension(l));
    let short = exact_div(&d + &chi * 26, 27, l)?;
    let long = exact_div(d * 3 + chi * 78, 81, l)?;
    if short != long {
        return Err(Error::FormulaViolation(format!("{l}: {short} ≠ {long}")));
    }
    nonnegative(short, &l.to_string())
}

fn exact_div(num: BigInt, den: u32, l: &HighestWeight) -> Result<BigInt> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if !r.is_zero() {
        return Err(Error::NotRationalInteger(format!("{l}: {num}/{den}")));
    }
    Ok(q)
}

/// Group elements collapsed to distinct eigenvalue data with counts.
#[derive(Clone, Debug)]
struct Classes<K> {
    order: usize,
    classes: Vec<(K, usize)>,
}

impl<K> Classes<K> {
    /// (1/|G|) Σ_g χ(g) as a nonnegative integer.
    fn average(&self, chi: impl Fn(&K) -> Result<Cyclotomic>) -> Result<BigUint> {
        let mut total = Cyclotomic::zero();
        for (k, count) in &self.classes {
            total += &chi(k)?.scale(&BigInt::from(*count).into());
        }
        let sum = total.as_integer()?;
        let (q, r) = sum.div_rem(&BigInt::from(self.order));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::NotRationalInteger(format!("{sum}/{}", self.order)));
        }
        Ok(q.to_biguint().expect("checked nonnegative"))
    }
}

fn collect_classes<K: Ord, I: IntoIterator<Item = Result<K>>>(order: usize, keys: I) -> Result<Classes<K>> {
    let mut counts: BTreeMap<K, usize> = BTreeMap::new();
    for k in keys {
        *counts.entry(k?).or_default() += 1;
    }
    Ok(Classes { order, classes: counts.into_iter().collect() })
}

/// The averaging engines with the centralizer groups enumerated once.
#[derive(Clone, Debug)]
pub struct MultiplicityEngine {
    e6: Classes<[Vec<Cyclotomic>; 3]>,
    e8: Classes<Vec<Cyclotomic>>,
    e8_stabilizer: Classes<Vec<Cyclotomic>>,
}

impl MultiplicityEngine {
    pub fn new() -> Result<Self> {
        let m = enumerate_e6_m()?;
        let e6 = collect_classes(
            m.order(),
            m.elements().iter().map(|g| Ok(g.eigenvalues()?.map(|e| e.sorted()))),
        )?;
        let c = enumerate_e8_c()?;
        let e8 = collect_classes(c.order(), c.elements().iter().map(|g| Ok(g.eigenvalues()?.sorted())))?;
        let s = e8_monomial_stabilizer()?;
        let e8_stabilizer =
            collect_classes(s.order(), s.elements().iter().map(|g| Ok(g.eigenvalues()?.sorted())))?;
        Ok(Self { e6, e8, e8_stabilizer })
    }

    /// (1/81) Σ_{g∈M} Π χ_{(mᵢ,nᵢ)}(gᵢ) over the triples of M.
    pub fn e6_averaging(&self, w: &E6Weight) -> Result<BigUint> {
        let factors = w.factors();
        self.e6.average(|eigs| {
            let mut prod = Cyclotomic::one();
            for (f, e) in factors.iter().zip(eigs) {
                prod *= &char_at(f, &EigenvalueMultiset::new(e.clone())?)?;
            }
            Ok(prod)
        })
    }

    /// (1/81) Σ_{g∈C} χ_Λ(g) over the generated 81-element group.
    pub fn e8_full_averaging(&self, l: &HighestWeight) -> Result<BigUint> {
        require_sl9(l)?;
        self.e8.average(|e| char_at(l, &EigenvalueMultiset::new(e.clone())?))
    }

    /// The same average over the 243-element monomial stabilizer of the
    /// Cartan basis. Not one of the compared routes.
    pub fn e8_stabilizer_averaging(&self, l: &HighestWeight) -> Result<BigUint> {
        require_sl9(l)?;
        self.e8_stabilizer.average(|e| char_at(l, &EigenvalueMultiset::new(e.clone())?))
    }

    /// One report per weight of `range`, sorted by weight and deduplicated.
    /// Weights are evaluated in parallel; the order of the result does not
    /// depend on scheduling.
    pub fn report(&self, range: &RangeSpec, method: Method) -> Result<Vec<MultiplicityReport>> {
        if method == Method::Direct && range.case() == Case::E6 {
            return Err(Error::PreconditionViolated("method direct exists only for e8".into()));
        }
        match range {
            RangeSpec::E6(ws) => {
                let mut ws = ws.clone();
                ws.sort();
                ws.dedup();
                ws.par_iter().map(|w| self.report_e6(w, method)).collect()
            }
            RangeSpec::E8(ls) => {
                let mut ls = ls.clone();
                ls.sort();
                ls.dedup();
                ls.par_iter().map(|l| self.report_e8(l, method)).collect()
            }
        }
    }

    fn report_e6(&self, w: &E6Weight, method: Method) -> Result<MultiplicityReport> {
        let closed = method.wants(Method::Closed).then(|| e6_closed_form(w)).transpose()?;
        let averaging = method.wants(Method::Averaging).then(|| self.e6_averaging(w)).transpose()?;
        Ok(MultiplicityReport::new(w.entries().to_vec(), w.dimension(), closed, averaging, None))
    }

    fn report_e8(&self, l: &HighestWeight, method: Method) -> Result<MultiplicityReport> {
        require_sl9(l)?;
        let closed = method.wants(Method::Closed).then(|| e8_closed_form(l)).transpose()?;
        let averaging = method.wants(Method::Averaging).then(|| self.e8_full_averaging(l)).transpose()?;
        let direct = if method.wants(Method::Direct) && l.size() % 3 == 0 {
            Some(e8_lemma_route(l)?)
        } else {
            None
        };
        let label = l.entries()[..8].to_vec();
        Ok(MultiplicityReport::new(label, weyl_dimension(l), closed, averaging, direct))
    }
}

/// Which routes to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Closed,
    Averaging,
    /// E8 only: (D + 26χ_Λ(μ))/27 with χ evaluated directly.
    Direct,
    All,
}

impl Method {
    fn wants(self, route: Method) -> bool {
        self == Method::All || self == route
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "closed" => Ok(Method::Closed),
            "averaging" => Ok(Method::Averaging),
            "direct" => Ok(Method::Direct),
            "all" => Ok(Method::All),
            _ => Err(Error::PreconditionViolated(format!("unknown method {s:?}"))),
        }
    }
}

/// A finite list of weights of one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeSpec {
    E6(Vec<E6Weight>),
    E8(Vec<HighestWeight>),
}

impl RangeSpec {
    /// All weights of `case` with entries ≤ `max`.
    pub fn up_to(case: Case, max: u32) -> Self {
        match case {
            Case::E6 => RangeSpec::E6(e6_weights_up_to(max)),
            Case::E8 => RangeSpec::E8(dominant_weights_up_to(9, i64::from(max))),
        }
    }

    pub fn case(&self) -> Case {
        match self {
            RangeSpec::E6(_) => Case::E6,
            RangeSpec::E8(_) => Case::E8,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            RangeSpec::E6(v) => v.len(),
            RangeSpec::E8(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Results of the requested routes for one weight. E6 weights are labelled
/// (m₁,n₁,m₂,n₂,m₃,n₃); E8 weights by λ₁…λ₈ (λ₉ = 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub weight: Vec<i64>,
    pub dim: BigUint,
    pub closed: Option<BigUint>,
    pub averaging: Option<BigUint>,
    pub direct: Option<BigUint>,
    pub agree: bool,
}

impl MultiplicityReport {
    pub fn new(
        weight: Vec<i64>,
        dim: BigUint,
        closed: Option<BigUint>,
        averaging: Option<BigUint>,
        direct: Option<BigUint>,
    ) -> Self {
        let values: Vec<&BigUint> = [&closed, &averaging, &direct].into_iter().flatten().collect();
        let agree = values.windows(2).all(|p| p[0] == p[1]);
        Self { weight, dim, closed, averaging, direct, agree }
    }
}
