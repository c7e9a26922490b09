//! The finite centralizer groups that the multiplicity formulas average over.
//!
//! Elements are built from the displayed families of monomial matrices, then
//! kept only if they fix the Cartan basis pointwise. The surviving set is
//! checked to be a group of order 81.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::hash::Hash;

use crate::arith::Cyclotomic;
use crate::cartan::{e6_cartan_basis, e8_cartan_basis, Tensor333, Wedge3of9};
use crate::characters::EigenvalueMultiset;
use crate::error::{Error, Result};

/// An n×n monomial matrix: column j has the single nonzero entry
/// `entries[j]` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    perm: Vec<usize>,
    entries: Vec<Cyclotomic>,
}

impl MonomialMatrix {
    pub fn new(perm: Vec<usize>, entries: Vec<Cyclotomic>) -> Result<Self> {
        let n = perm.len();
        if entries.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: entries.len() });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::StructureMismatch(format!("{perm:?} is not a permutation")));
            }
        }
        if entries.iter().any(Cyclotomic::is_zero) {
            return Err(Error::StructureMismatch("monomial matrix with a zero entry".into()));
        }
        Ok(Self { perm, entries })
    }

    /// Reads a dense matrix given by rows; fails unless it is monomial.
    pub fn from_rows(rows: &[Vec<Cyclotomic>]) -> Result<Self> {
        let n = rows.len();
        let mut perm = vec![usize::MAX; n];
        let mut entries = vec![Cyclotomic::zero(); n];
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
            for (c, v) in row.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if perm[c] != usize::MAX {
                    return Err(Error::StructureMismatch(format!("column {c} has two entries")));
                }
                perm[c] = r;
                entries[c] = v.clone();
            }
        }
        if perm.contains(&usize::MAX) {
            return Err(Error::StructureMismatch("singular matrix".into()));
        }
        Self::new(perm, entries)
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Cyclotomic::one())
    }

    pub fn scalar(n: usize, c: Cyclotomic) -> Self {
        Self { perm: (0..n).collect(), entries: vec![c; n] }
    }

    pub fn diagonal(entries: Vec<Cyclotomic>) -> Self {
        Self { perm: (0..entries.len()).collect(), entries }
    }

    /// diag(b₁, b₂, …) for square blocks.
    pub fn block_diagonal(blocks: &[MonomialMatrix]) -> Self {
        let mut perm = Vec::new();
        let mut entries = Vec::new();
        let mut offset = 0;
        for b in blocks {
            perm.extend(b.perm.iter().map(|p| p + offset));
            entries.extend(b.entries.iter().cloned());
            offset += b.n();
        }
        Self { perm, entries }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    /// Dense rows, for display.
    pub fn to_rows(&self) -> Vec<Vec<Cyclotomic>> {
        let n = self.n();
        let mut rows = vec![vec![Cyclotomic::zero(); n]; n];
        for (c, (&r, v)) in self.perm.iter().zip(&self.entries).enumerate() {
            rows[r][c] = v.clone();
        }
        rows
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        Self { perm: self.perm.clone(), entries: self.entries.iter().map(|e| e * c).collect() }
    }

    /// Matrix product self · rhs.
    pub fn mul(&self, rhs: &Self) -> Self {
        // (AB)e_j = b_j · a_{π_B(j)} · e_{π_A(π_B(j))}
        let (perm, entries) = rhs
            .perm
            .iter()
            .zip(&rhs.entries)
            .map(|(&p, b)| (self.perm[p], &self.entries[p] * b))
            .unzip();
        Self { perm, entries }
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut perm = vec![0; n];
        let mut entries = vec![Cyclotomic::zero(); n];
        for (j, (&p, v)) in self.perm.iter().zip(&self.entries).enumerate() {
            perm[p] = j;
            entries[p] = v.inv().expect("monomial entries are nonzero");
        }
        Self { perm, entries }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.entries.iter().all(Cyclotomic::is_one)
    }

    /// The scalar c when self = c·I.
    pub fn as_scalar(&self) -> Option<&Cyclotomic> {
        let first = self.entries.first()?;
        (self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.entries.iter().all(|e| e == first))
            .then_some(first)
    }

    /// Cycles of the underlying permutation, each listed from its smallest
    /// index.
    fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                j = self.perm[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn det(&self) -> Cyclotomic {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 1;
        let product: Cyclotomic = self.entries.iter().cloned().product();
        if odd {
            -product
        } else {
            product
        }
    }

    /// Smallest k ≥ 1 with selfᵏ = I, searched up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let mut power = self.clone();
        for k in 1..=limit {
            if power.is_identity() {
                return Some(k);
            }
            power = power.mul(self);
        }
        None
    }

    /// Eigenvalues from the cycle decomposition: a k-cycle whose entries
    /// multiply to p contributes the k k-th roots of p.
    pub fn eigenvalues(&self) -> Result<EigenvalueMultiset> {
        let roots = Cyclotomic::roots_of_unity();
        let mut values = Vec::with_capacity(self.n());
        for cycle in self.cycles() {
            let p: Cyclotomic = cycle.iter().map(|&j| self.entries[j].clone()).product();
            let k = cycle.len() as u32;
            let found: Vec<&Cyclotomic> = roots.iter().filter(|x| x.pow(k) == p).collect();
            if found.len() != k as usize {
                return Err(Error::UnrepresentableRoot(format!("{k}-th root of {p}")));
            }
            values.extend(found.into_iter().cloned());
        }
        EigenvalueMultiset::new(values)
    }

    /// Image of a vector of coordinates under the induced action on Λ³Cⁿ
    /// (n = 9), in the basis of [`Wedge3of9`].
    pub fn act_on_wedge3(&self, coords: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(); coords.len()];
        for (&mask, v) in Wedge3of9::masks().iter().zip(coords).filter(|(_, v)| !v.is_zero()) {
            let idx: Vec<usize> = (0..9).filter(|b| mask >> b & 1 == 1).collect();
            let images: Vec<usize> = idx.iter().map(|&a| self.perm[a]).collect();
            let mut coeff = v.clone();
            for &a in &idx {
                coeff *= &self.entries[a];
            }
            let inversions = (0..3)
                .flat_map(|a| (a + 1..3).map(move |b| (a, b)))
                .filter(|&(a, b)| images[a] > images[b])
                .count();
            if inversions % 2 == 1 {
                coeff = -coeff;
            }
            let target = images.iter().fold(0u16, |m, &i| m | 1 << i);
            out[Wedge3of9::index_of(target)] += &coeff;
        }
        out
    }

    /// True when the Λ³ action fixes `w`.
    pub fn fixes_wedge(&self, w: &Wedge3of9) -> bool {
        let coords = lift(w.coords());
        self.act_on_wedge3(&coords) == coords
    }
}

fn lift(coords: &[crate::arith::BigRational]) -> Vec<Cyclotomic> {
    coords.iter().cloned().map(Cyclotomic::from_rational).collect()
}

/// A triple (g₁, g₂, g₃) of 3×3 monomial matrices acting on C³⊗C³⊗C³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleElement {
    factors: [MonomialMatrix; 3],
}

impl TripleElement {
    pub fn new(factors: [MonomialMatrix; 3]) -> Result<Self> {
        if let Some(f) = factors.iter().find(|f| f.n() != 3) {
            return Err(Error::DimensionMismatch { expected: 3, actual: f.n() });
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[MonomialMatrix; 3] {
        &self.factors
    }

    /// (αg, βg, g/(αβ)): the shape shared by every family of M.
    fn twisted(g: &MonomialMatrix, alpha: &Cyclotomic, beta: &Cyclotomic) -> Self {
        let third = (alpha * beta).inv().expect("roots of unity are invertible");
        Self { factors: [g.scale(alpha), g.scale(beta), g.scale(&third)] }
    }

    /// Image of a coordinate vector under g₁⊗g₂⊗g₃.
    pub fn act_on_tensor(&self, coords: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let [a, b, c] = &self.factors;
        let mut out = vec![Cyclotomic::zero(); 27];
        for (p, v) in coords.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let (i, j, k) = Tensor333::split(p);
            let coeff = &(&(v * &a.entries[i]) * &b.entries[j]) * &c.entries[k];
            out[Tensor333::index(a.perm[i], b.perm[j], c.perm[k])] += &coeff;
        }
        out
    }

    pub fn fixes_tensor(&self, x: &Tensor333) -> bool {
        let coords = lift(x.coords());
        self.act_on_tensor(&coords) == coords
    }

    /// Acts as the identity operator on C³⊗C³⊗C³.
    pub fn acts_trivially(&self) -> bool {
        (0..27).all(|p| {
            let (i, j, k) = Tensor333::split(p);
            let e = lift(Tensor333::basis(i, j, k).coords());
            self.act_on_tensor(&e) == e
        })
    }

    pub fn eigenvalues(&self) -> Result<[EigenvalueMultiset; 3]> {
        let [a, b, c] = &self.factors;
        Ok([a.eigenvalues()?, b.eigenvalues()?, c.eigenvalues()?])
    }

    /// The block-diagonal element diag(g₁, g₂, g₃) of SL(9).
    pub fn to_block_diagonal(&self) -> MonomialMatrix {
        MonomialMatrix::block_diagonal(&self.factors)
    }
}

/// Multiplication structure needed for closure checks.
pub trait GroupElement: Clone + Eq + Hash + Ord {
    fn compose(&self, other: &Self) -> Self;
    fn is_identity(&self) -> bool;
}

impl GroupElement for MonomialMatrix {
    fn compose(&self, other: &Self) -> Self {
        self.mul(other)
    }

    fn is_identity(&self) -> bool {
        MonomialMatrix::is_identity(self)
    }
}

impl GroupElement for TripleElement {
    fn compose(&self, other: &Self) -> Self {
        let [a, b, c] = &self.factors;
        let [x, y, z] = &other.factors;
        Self { factors: [a.mul(x), b.mul(y), c.mul(z)] }
    }

    fn is_identity(&self) -> bool {
        self.factors.iter().all(MonomialMatrix::is_identity)
    }
}

/// A finite group given by its elements, kept in sorted order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup<T> {
    elements: Vec<T>,
}

impl<T: GroupElement> FiniteGroup<T> {
    /// Accepts a set of elements after checking identity, closure and
    /// inverses.
    pub fn from_elements(elements: impl IntoIterator<Item = T>) -> Result<Self> {
        let set: BTreeSet<T> = elements.into_iter().collect();
        if !set.iter().any(T::is_identity) {
            return Err(Error::StructureMismatch("identity missing".into()));
        }
        for a in &set {
            if !set.iter().any(|b| a.compose(b).is_identity()) {
                return Err(Error::StructureMismatch("element without inverse".into()));
            }
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::StructureMismatch("set is not closed under products".into()));
                }
            }
        }
        Ok(Self { elements: set.into_iter().collect() })
    }

    /// Closure of `generators` under multiplication. `identity` seeds the
    /// search; `cap` bounds the group order.
    pub fn generate(identity: T, generators: &[T], cap: usize) -> Result<Self> {
        let mut seen: HashSet<T> = HashSet::new();
        let mut queue = VecDeque::from([identity]);
        while let Some(g) = queue.pop_front() {
            if !seen.insert(g.clone()) {
                continue;
            }
            if seen.len() > cap {
                return Err(Error::StructureMismatch(format!("closure exceeds {cap} elements")));
            }
            for s in generators {
                queue.push_back(g.compose(s));
            }
        }
        let mut elements: Vec<T> = seen.into_iter().collect();
        elements.sort();
        Ok(Self { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn contains(&self, g: &T) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        self.elements
            .iter()
            .all(|a| self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}

impl FiniteGroup<MonomialMatrix> {
    /// Histogram of element orders.
    pub fn order_histogram(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for g in &self.elements {
            *out.entry(g.order(81).unwrap_or(0)).or_insert(0) += 1;
        }
        out
    }
}

fn c(k: i64) -> Cyclotomic {
    Cyclotomic::zeta3_pow(k)
}

fn zero() -> Cyclotomic {
    Cyclotomic::zero()
}

/// Which displayed family (1–4) a candidate of M came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E6Candidate {
    pub family: u8,
    pub element: TripleElement,
}

/// All parameter choices in the four displayed families M₁ … M₄, before
/// filtering or deduplication.
pub fn e6_candidates() -> Vec<E6Candidate> {
    let mut out = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            let (alpha, beta) = (c(a), c(b));
            out.push(E6Candidate {
                family: 1,
                element: TripleElement::twisted(&MonomialMatrix::identity(3), &alpha, &beta),
            });
            for d in 0..3 {
                for m in 0..3 {
                    let (delta, mu) = (c(d), c(m));
                    let last = c(-d - m);
                    if d != m {
                        let diag = MonomialMatrix::diagonal(vec![delta.clone(), mu.clone(), last.clone()]);
                        out.push(E6Candidate { family: 2, element: TripleElement::twisted(&diag, &alpha, &beta) });
                    }
                    let m3 = MonomialMatrix::from_rows(&[
                        vec![zero(), delta.clone(), zero()],
                        vec![zero(), zero(), mu.clone()],
                        vec![last.clone(), zero(), zero()],
                    ])
                    .expect("monomial by construction");
                    out.push(E6Candidate { family: 3, element: TripleElement::twisted(&m3, &alpha, &beta) });
                    let m4 = MonomialMatrix::from_rows(&[
                        vec![zero(), zero(), delta.clone()],
                        vec![mu.clone(), zero(), zero()],
                        vec![zero(), last.clone(), zero()],
                    ])
                    .expect("monomial by construction");
                    out.push(E6Candidate { family: 4, element: TripleElement::twisted(&m4, &alpha, &beta) });
                }
            }
        }
    }
    out
}

/// The group M ⊂ SL₃³ of order 81 fixing v₁, v₂, v₃.
pub fn enumerate_e6_m() -> Result<FiniteGroup<TripleElement>> {
    let basis = e6_cartan_basis();
    let kept = e6_candidates()
        .into_iter()
        .map(|cand| cand.element)
        .filter(|g| basis.iter().all(|v| g.fixes_tensor(v)));
    let group = FiniteGroup::from_elements(kept)?;
    if group.order() != 81 {
        return Err(Error::StructureMismatch(format!("|M| = {}, expected 81", group.order())));
    }
    Ok(group)
}

/// A_{z,w} = w·diag(I, zI, z²I).
pub fn e8_a(z: i64, w: i64) -> MonomialMatrix {
    let entries = (0..9).map(|i| c(z * (i / 3) as i64 + w)).collect();
    MonomialMatrix::diagonal(entries)
}

/// B_{z,w} = w·diag(1, z, z², z², 1, z, z, z², 1).
pub fn e8_b(z: i64, w: i64) -> MonomialMatrix {
    let pattern = [0, 1, 2, 2, 0, 1, 1, 2, 0];
    MonomialMatrix::diagonal(pattern.iter().map(|&k| c(z * k + w)).collect())
}

fn block_shift(blocks: [[usize; 3]; 3]) -> MonomialMatrix {
    let mut rows = vec![vec![zero(); 9]; 9];
    for (br, row) in blocks.iter().enumerate() {
        for (bc, &one) in row.iter().enumerate() {
            if one == 1 {
                for i in 0..3 {
                    rows[3 * br + i][3 * bc + i] = Cyclotomic::one();
                }
            }
        }
    }
    MonomialMatrix::from_rows(&rows).expect("block permutation")
}

/// U = [[0, I, 0], [0, 0, I], [I, 0, 0]].
pub fn e8_u() -> MonomialMatrix {
    block_shift([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
}

/// V = [[0, 0, I], [I, 0, 0], [0, I, 0]].
pub fn e8_v() -> MonomialMatrix {
    block_shift([[0, 0, 1], [1, 0, 0], [0, 1, 0]])
}

/// The subgroup of the centralizer of span{ω₁ … ω₄} in SL(9) generated by
/// the A, B, U, V elements. It has order 81.
pub fn enumerate_e8_c() -> Result<FiniteGroup<MonomialMatrix>> {
    let mut gens = Vec::new();
    for z in 0..3 {
        for w in 0..3 {
            gens.push(e8_a(z, w));
            gens.push(e8_b(z, w));
        }
    }
    gens.push(e8_u());
    gens.push(e8_v());
    let group = FiniteGroup::generate(MonomialMatrix::identity(9), &gens, 10_000)?;
    let basis = e8_cartan_basis();
    for g in group.elements() {
        if !g.det().is_one() {
            return Err(Error::StructureMismatch(format!("{g:?} is not in SL(9)")));
        }
        if let Some(i) = basis.iter().position(|w| !g.fixes_wedge(w)) {
            return Err(Error::StructureMismatch(format!("an element moves w{}", i + 1)));
        }
    }
    if group.order() != 81 {
        return Err(Error::StructureMismatch(format!("|C| = {}, expected 81", group.order())));
    }
    Ok(group)
}

/// diag(P, P, P) with P the cyclic shift e₁ → e₂ → e₃ → e₁ of each block.
pub fn e8_block_cycle() -> MonomialMatrix {
    let p = MonomialMatrix::new(vec![1, 2, 0], vec![Cyclotomic::one(); 3]).expect("3-cycle");
    MonomialMatrix::block_diagonal(&[p.clone(), p.clone(), p])
}

/// Every monomial element of SL(9) fixing ω₁ … ω₄: the generated group of
/// [`enumerate_e8_c`] together with [`e8_block_cycle`], of order 243.
///
/// Monomial stabilizers permute the 12 lines of the affine plane on
/// {1..9} that the ωᵢ are built from, preserving each parallel class; in
/// SL(9) only the 9 translations survive, and over each translation the
/// diagonal part is a coset of the 27 diagonal elements.
pub fn e8_monomial_stabilizer() -> Result<FiniteGroup<MonomialMatrix>> {
    let mut gens = enumerate_e8_c()?.elements().to_vec();
    gens.push(e8_block_cycle());
    let group = FiniteGroup::generate(MonomialMatrix::identity(9), &gens, 10_000)?;
    let basis = e8_cartan_basis();
    if let Some(g) = group.elements().iter().find(|g| !basis.iter().all(|w| g.fixes_wedge(w))) {
        return Err(Error::StructureMismatch(format!("{g:?} moves the Cartan basis")));
    }
    Ok(group)
}
