//! The two Cartan subspaces and the identities that certify them: the
//! brackets [v_i, v_j] and ω_i ∧ ω_j vanish, and every v_i, ω_i pairing
//! against a Lie-algebra generator is zero (criticality).
//!
//! The inner product is the standard coordinate form. Vectors here have
//! rational coordinates, so the Hermitian form is the dot product.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::arith::BigRational;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// An element of C³⊗C³⊗C³ with coordinate (i, j, k) at 9i + 3j + k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor333 {
    coords: Vec<BigRational>,
}

impl Tensor333 {
    pub fn zero() -> Self {
        Self { coords: vec![BigRational::zero(); 27] }
    }

    pub fn index(i: usize, j: usize, k: usize) -> usize {
        9 * i + 3 * j + k
    }

    /// Inverse of [`Tensor333::index`].
    pub fn split(index: usize) -> (usize, usize, usize) {
        (index / 9, (index / 3) % 3, index % 3)
    }

    /// e_i ⊗ e_j ⊗ e_k, 0-based.
    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut t = Self::zero();
        t.coords[Self::index(i, j, k)] = BigRational::one();
        t
    }

    pub fn from_coords(coords: Vec<BigRational>) -> Self {
        assert_eq!(coords.len(), 27);
        Self { coords }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.coords[Self::index(i, j, k)]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn inner(&self, other: &Self) -> BigRational {
        dot(&self.coords, &other.coords)
    }
}

/// Coordinates of an element of (C³)*⊗(C³)*⊗(C³)*, indexed like [`Tensor333`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualTensor333 {
    coords: Vec<BigRational>,
}

impl DualTensor333 {
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &BigRational {
        &self.coords[Tensor333::index(i, j, k)]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// The E6 Cartan basis v₁, v₂, v₃.
pub fn e6_cartan_basis() -> [Tensor333; 3] {
    let sum = |terms: [(usize, usize, usize); 3]| {
        terms
            .iter()
            .fold(Tensor333::zero(), |acc, &(i, j, k)| acc.add(&Tensor333::basis(i, j, k)))
    };
    [
        sum([(0, 0, 0), (1, 1, 1), (2, 2, 2)]),
        sum([(0, 1, 2), (2, 0, 1), (1, 2, 0)]),
        sum([(2, 1, 0), (0, 2, 1), (1, 0, 2)]),
    ]
}

/// e_a ∧ e_b ∈ Λ²C³ identified with sign(a, b, c)·e_c^*, c the third index.
fn wedge_to_dual(a: usize, b: usize) -> Option<(i64, usize)> {
    if a == b {
        return None;
    }
    let c = 3 - a - b;
    let even = matches!((a, b, c), (0, 1, 2) | (1, 2, 0) | (2, 0, 1));
    Some((if even { 1 } else { -1 }, c))
}

/// [x, y] restricted to V, up to a scalar:
/// (x₁⊗x₂⊗x₃, y₁⊗y₂⊗y₃) ↦ x₁∧y₁ ⊗ x₂∧y₂ ⊗ x₃∧y₃, extended bilinearly.
pub fn e6_bracket(x: &Tensor333, y: &Tensor333) -> DualTensor333 {
    let mut coords = vec![BigRational::zero(); 27];
    for (p, xv) in x.coords.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        let (a1, a2, a3) = Tensor333::split(p);
        for (q, yv) in y.coords.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            let (b1, b2, b3) = Tensor333::split(q);
            let (Some((s1, c1)), Some((s2, c2)), Some((s3, c3))) =
                (wedge_to_dual(a1, b1), wedge_to_dual(a2, b2), wedge_to_dual(a3, b3))
            else {
                continue;
            };
            coords[Tensor333::index(c1, c2, c3)] += xv * yv * rat(s1 * s2 * s3);
        }
    }
    DualTensor333 { coords }
}

/// A generator of sl(n): E_rs (r ≠ s) or E_rr − E_ss, with 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieGenerator {
    Elementary { row: usize, col: usize },
    DiagonalDifference { first: usize, second: usize },
}

impl LieGenerator {
    /// X e_t as a list of (coefficient, index) pairs.
    fn apply_basis(&self, t: usize) -> Vec<(i64, usize)> {
        match *self {
            LieGenerator::Elementary { row, col } => {
                if t == col {
                    vec![(1, row)]
                } else {
                    vec![]
                }
            }
            LieGenerator::DiagonalDifference { first, second } => {
                if t == first {
                    vec![(1, t)]
                } else if t == second {
                    vec![(-1, t)]
                } else {
                    vec![]
                }
            }
        }
    }
}

impl std::fmt::Display for LieGenerator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LieGenerator::Elementary { row, col } => write!(f, "E{}{}", row + 1, col + 1),
            LieGenerator::DiagonalDifference { first, second } => {
                write!(f, "E{0}{0}-E{1}{1}", first + 1, second + 1)
            }
        }
    }
}

/// A generator of one sl(3) factor of sl(3)⊕sl(3)⊕sl(3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FactorGenerator {
    pub factor: usize,
    pub op: LieGenerator,
}

/// Every E_rs (r ≠ s) and E_rr − E_ss (r < s) in each of the three factors.
pub fn e6_generators() -> Vec<FactorGenerator> {
    let mut out = Vec::new();
    for factor in 0..3 {
        for r in 0..3 {
            for s in 0..3 {
                if r != s {
                    out.push(FactorGenerator { factor, op: LieGenerator::Elementary { row: r, col: s } });
                }
                if r < s {
                    out.push(FactorGenerator {
                        factor,
                        op: LieGenerator::DiagonalDifference { first: r, second: s },
                    });
                }
            }
        }
    }
    out
}

/// X·x for X acting on one tensor factor.
pub fn e6_apply(gen: &FactorGenerator, x: &Tensor333) -> Tensor333 {
    let mut out = Tensor333::zero();
    for (p, v) in x.coords.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        let mut idx = {
            let (i, j, k) = Tensor333::split(p);
            [i, j, k]
        };
        let t = idx[gen.factor];
        for (c, target) in gen.op.apply_basis(t) {
            idx[gen.factor] = target;
            out.coords[Tensor333::index(idx[0], idx[1], idx[2])] += v * rat(c);
        }
    }
    out
}

/// ⟨X v_i, v_j⟩ for the E6 Cartan basis (0-based i, j).
pub fn e6_criticality(i: usize, j: usize, gen: &FactorGenerator) -> BigRational {
    let basis = e6_cartan_basis();
    e6_apply(gen, &basis[i]).inner(&basis[j])
}

/// k-subsets of {0..9} as bitmasks, in lexicographic order of their sorted
/// index lists.
fn subsets(k: usize) -> &'static [u16] {
    static TABLES: [OnceLock<Vec<u16>>; 10] = [const { OnceLock::new() }; 10];
    TABLES[k].get_or_init(|| {
        let mut masks: Vec<u16> = (0u16..512).filter(|m| m.count_ones() as usize == k).collect();
        let key = |m: &u16| (0..9).filter(|b| m >> b & 1 == 1).collect::<Vec<u16>>();
        masks.sort_by_key(key);
        masks
    })
}

fn mask_index(k: usize, mask: u16) -> usize {
    static TABLES: [OnceLock<Vec<usize>>; 10] = [const { OnceLock::new() }; 10];
    TABLES[k].get_or_init(|| {
        let mut idx = vec![usize::MAX; 512];
        for (i, &m) in subsets(k).iter().enumerate() {
            idx[m as usize] = i;
        }
        idx
    })[mask as usize]
}

/// (−1) to the number of pairs (a, b) ∈ A×B with a > b: the sign of
/// e_A ∧ e_B = ±e_{A∪B} for disjoint A, B.
fn merge_sign(a: u16, b: u16) -> i64 {
    let mut inversions = 0;
    for bit in 0..9 {
        if b >> bit & 1 == 1 {
            inversions += (a >> (bit + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An element of ΛᵏC⁹ in the basis e_A, A ranging over increasing k-tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge<const K: usize> {
    coords: Vec<BigRational>,
}

/// Λ³C⁹, the E8 representation space.
pub type Wedge3of9 = Wedge<3>;
/// Λ⁶C⁹, where the bracket of two elements of Λ³C⁹ lands.
pub type Wedge6of9 = Wedge<6>;

impl<const K: usize> Wedge<K> {
    pub fn zero() -> Self {
        Self { coords: vec![BigRational::zero(); subsets(K).len()] }
    }

    /// Basis masks, in coordinate order.
    pub fn masks() -> &'static [u16] {
        subsets(K)
    }

    pub fn index_of(mask: u16) -> usize {
        mask_index(K, mask)
    }

    /// e_{i₁} ∧ … ∧ e_{i_K} for 0-based indices in any order.
    pub fn basis(indices: [usize; K]) -> Self {
        let mut out = Self::zero();
        let mut sorted = indices;
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return out;
        }
        let mut inversions = 0;
        for a in 0..K {
            for b in a + 1..K {
                if indices[a] > indices[b] {
                    inversions += 1;
                }
            }
        }
        let mask = indices.iter().fold(0u16, |m, &i| m | 1 << i);
        out.coords[Self::index_of(mask)] = rat(if inversions % 2 == 0 { 1 } else { -1 });
        out
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn coord(&self, mask: u16) -> &BigRational {
        &self.coords[Self::index_of(mask)]
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn inner(&self, other: &Self) -> BigRational {
        dot(&self.coords, &other.coords)
    }

    /// Nonzero coordinates as (mask, value).
    pub fn support(&self) -> impl Iterator<Item = (u16, &BigRational)> {
        Self::masks().iter().copied().zip(&self.coords).filter(|(_, v)| !v.is_zero())
    }
}

/// Exterior product Λ³C⁹ × Λ³C⁹ → Λ⁶C⁹. Odd forms anticommute, so this is
/// antisymmetric and a ∧ a = 0.
pub fn e8_wedge(a: &Wedge3of9, b: &Wedge3of9) -> Wedge6of9 {
    let mut out = Wedge6of9::zero();
    for (ma, va) in a.support() {
        for (mb, vb) in b.support() {
            if ma & mb != 0 {
                continue;
            }
            out.coords[Wedge6of9::index_of(ma | mb)] += va * vb * rat(merge_sign(ma, mb));
        }
    }
    out
}

/// The E8 Cartan basis ω₁ … ω₄.
pub fn e8_cartan_basis() -> [Wedge3of9; 4] {
    let sum = |triples: [[usize; 3]; 3]| {
        triples
            .iter()
            .fold(Wedge3of9::zero(), |acc, t| acc.add(&Wedge3of9::basis([t[0] - 1, t[1] - 1, t[2] - 1])))
    };
    [
        sum([[1, 2, 3], [4, 5, 6], [7, 8, 9]]),
        sum([[1, 4, 7], [2, 5, 8], [3, 6, 9]]),
        sum([[1, 5, 9], [2, 6, 7], [3, 4, 8]]),
        sum([[1, 6, 8], [2, 4, 9], [3, 5, 7]]),
    ]
}

/// E_rs (r < s) and E_rr − E_{r+1,r+1}: 36 + 8 generators of sl(9).
pub fn e8_generators() -> Vec<LieGenerator> {
    let mut out = Vec::new();
    for r in 0..9 {
        for s in r + 1..9 {
            out.push(LieGenerator::Elementary { row: r, col: s });
        }
    }
    for r in 0..8 {
        out.push(LieGenerator::DiagonalDifference { first: r, second: r + 1 });
    }
    out
}

/// X acting on Λ³C⁹ as a derivation.
pub fn e8_apply(gen: &LieGenerator, x: &Wedge3of9) -> Wedge3of9 {
    let mut out = Wedge3of9::zero();
    for (mask, v) in x.support() {
        for t in (0..9).filter(|t| mask >> t & 1 == 1) {
            for (c, target) in gen.apply_basis(t) {
                if target == t {
                    out.coords[Wedge3of9::index_of(mask)] += v * rat(c);
                    continue;
                }
                if mask >> target & 1 == 1 {
                    continue;
                }
                // moving e_t to slot `target` passes every index strictly between them
                let (lo, hi) = (t.min(target), t.max(target));
                let between = (lo + 1..hi).filter(|b| mask >> b & 1 == 1).count();
                let sign = if between % 2 == 0 { 1 } else { -1 };
                let image = (mask & !(1 << t)) | 1 << target;
                out.coords[Wedge3of9::index_of(image)] += v * rat(c * sign);
            }
        }
    }
    out
}

/// ⟨X ω_i, ω_j⟩ for the E8 Cartan basis (0-based i, j).
pub fn e8_criticality(i: usize, j: usize, gen: &LieGenerator) -> BigRational {
    let basis = e8_cartan_basis();
    e8_apply(gen, &basis[i]).inner(&basis[j])
}

/// T(e_i⊗e_j⊗e_k) = e_i ∧ e_{j+3} ∧ e_{k+6}, intertwining the block-diagonal
/// SL₃³ ⊂ SL₉ actions.
pub fn tensor_to_wedge(x: &Tensor333) -> Wedge3of9 {
    let mut out = Wedge3of9::zero();
    for (p, v) in x.coords.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
        let (i, j, k) = Tensor333::split(p);
        let mask = 1u16 << i | 1 << (j + 3) | 1 << (k + 6);
        out.coords[Wedge3of9::index_of(mask)] += v;
    }
    out
}

/// One named identity of the Cartan suite and whether it held exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
}

/// Runs every bracket and criticality identity for both examples.
pub fn verify_all() -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    let v = e6_cartan_basis();
    for i in 0..3 {
        for j in 0..3 {
            out.push(IdentityCheck {
                name: format!("e6 [v{},v{}] = 0", i + 1, j + 1),
                passed: e6_bracket(&v[i], &v[j]).is_zero(),
            });
        }
    }
    let gens = e6_generators();
    let e6_crit = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .all(|(i, j)| gens.iter().all(|g| e6_criticality(i, j, g).is_zero()));
    out.push(IdentityCheck {
        name: format!("e6 <X v_i, v_j> = 0 for {} generators, all i,j", gens.len()),
        passed: e6_crit,
    });

    let w = e8_cartan_basis();
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                out.push(IdentityCheck {
                    name: format!("e8 w{} ^ w{} = 0", i + 1, j + 1),
                    passed: e8_wedge(&w[i], &w[j]).is_zero(),
                });
            }
        }
    }
    let gens = e8_generators();
    let e8_crit = (0..4)
        .flat_map(|i| (0..4).map(move |j| (i, j)))
        .all(|(i, j)| gens.iter().all(|g| e8_criticality(i, j, g).is_zero()));
    out.push(IdentityCheck {
        name: format!("e8 <X w_i, w_j> = 0 for {} generators, all i,j", gens.len()),
        passed: e8_crit,
    });
    for (i, vi) in v.iter().enumerate() {
        out.push(IdentityCheck {
            name: format!("T(v{}) = w{}", i + 1, i + 2),
            passed: tensor_to_wedge(vi) == w[i + 1],
        });
    }
    out
}
