//! Exact arithmetic in the ninth cyclotomic field Q(ζ₉).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ⁵ and kept reduced
//! modulo Φ₉(x) = x⁶ + x³ + 1, i.e. ζ⁶ = −ζ³ − 1. The primitive cube root
//! of unity used throughout the crate is ζ₃ = ζ³.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use num_rational::BigRational;

use crate::error::{Error, Result};

/// Degree of Q(ζ₉) over Q.
pub const DEGREE: usize = 6;

/// Exponents k with gcd(k, 9) = 1; σ_k : ζ ↦ ζᵏ runs over the Galois group.
const GALOIS_EXPONENTS: [usize; 6] = [1, 2, 4, 5, 7, 8];

/// An exact element c₀ + c₁ζ + … + c₅ζ⁵ of Q(ζ₉).
///
/// The derived ordering is lexicographic on coefficients. It carries no
/// algebraic meaning and exists so that multisets of field elements have a
/// canonical sorted form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    coeffs: [BigRational; DEGREE],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self { coeffs: Default::default() }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut out = Self::zero();
        out.coeffs[0] = q;
        out
    }

    /// Builds an element from (unreduced) integer coefficients of 1, ζ, ζ², ….
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut wide = vec![BigRational::zero(); coeffs.len().max(DEGREE)];
        for (slot, &c) in wide.iter_mut().zip(coeffs) {
            *slot = rat(c);
        }
        Self::reduce(wide)
    }

    /// The fixed primitive ninth root of unity ζ.
    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// The primitive cube root of unity ζ₃ = ζ³.
    pub fn zeta3() -> Self {
        Self::zeta_pow(3)
    }

    /// ζᵏ for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(9) as usize;
        let mut wide = vec![BigRational::zero(); 9];
        wide[k] = BigRational::one();
        Self::reduce(wide)
    }

    /// ζ₃ᵏ for any integer k.
    pub fn zeta3_pow(k: i64) -> Self {
        Self::zeta_pow(3 * k.rem_euclid(3))
    }

    /// The three cube roots of unity 1, ζ₃, ζ₃².
    pub fn cube_roots_of_unity() -> [Self; 3] {
        [Self::one(), Self::zeta3(), Self::zeta3_pow(2)]
    }

    /// Coefficient of ζᵏ in the reduced form.
    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigRational; DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Reduces a coefficient vector of arbitrary length modulo Φ₉.
    fn reduce(mut wide: Vec<BigRational>) -> Self {
        // ζᵏ = −ζᵏ⁻³ − ζᵏ⁻⁶ for k ≥ 6; walking downward keeps it single-pass.
        for k in (DEGREE..wide.len()).rev() {
            let c = std::mem::take(&mut wide[k]);
            if c.is_zero() {
                continue;
            }
            wide[k - 3] -= &c;
            wide[k - 6] -= &c;
        }
        wide.truncate(DEGREE);
        let mut coeffs: [BigRational; DEGREE] = Default::default();
        for (slot, c) in coeffs.iter_mut().zip(wide) {
            *slot = c;
        }
        Self { coeffs }
    }

    /// Galois automorphism σ_k : ζ ↦ ζᵏ. `k` must be prime to 9.
    pub fn galois(&self, k: usize) -> Self {
        debug_assert!(matches!(k % 3, 1 | 2), "σ_k needs gcd(k, 9) = 1");
        let mut wide = vec![BigRational::zero(); 9];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                wide[(i * k) % 9] += c;
            }
        }
        Self::reduce(wide)
    }

    /// Complex conjugation, ζ ↦ ζ⁻¹.
    pub fn conj(&self) -> Self {
        self.galois(8)
    }

    /// Field norm down to Q: the product of all six Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let product = GALOIS_EXPONENTS
            .iter()
            .fold(Self::one(), |acc, &k| &acc * &self.galois(k));
        debug_assert!(product.coeffs[1..].iter().all(Zero::is_zero));
        product.coeffs[0].clone()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        // a⁻¹ = (σ₂a · σ₄a · … · σ₈a) / N(a)
        let cofactor = GALOIS_EXPONENTS[1..]
            .iter()
            .fold(Self::one(), |acc, &k| &acc * &self.galois(k));
        let norm = (&cofactor * self).coeffs[0].clone();
        Some(cofactor.scale(&norm.recip()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { coeffs: self.coeffs.clone().map(|c| c * q) }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplication by ζᵏ, done as a coefficient shift.
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        let k = k.rem_euclid(9) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut wide = vec![BigRational::zero(); DEGREE + 8];
        for (i, c) in self.coeffs.iter().enumerate() {
            wide[i + k] = c.clone();
        }
        Self::reduce(wide)
    }

    /// The rational value, if the ζ-part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| &self.coeffs[0])
    }

    /// The value as an integer; fails if it has a ζ-part or is fractional.
    pub fn as_integer(&self) -> Result<BigInt> {
        match self.as_rational() {
            Some(q) if q.is_integer() => Ok(q.to_integer()),
            _ => Err(Error::NotRationalInteger(self.to_string())),
        }
    }

    /// Returns `(sign, k)` with self = sign·ζᵏ when self is one of the 18
    /// roots of unity contained in Q(ζ₉).
    pub fn as_root_of_unity(&self) -> Option<(i8, u8)> {
        for k in 0..9u8 {
            let z = Self::zeta_pow(k as i64);
            if *self == z {
                return Some((1, k));
            }
            if *self == -z {
                return Some((-1, k));
            }
        }
        None
    }

    /// All 18 roots of unity in Q(ζ₉), as ±ζᵏ.
    pub fn roots_of_unity() -> Vec<Self> {
        (0..9)
            .flat_map(|k| {
                let z = Self::zeta_pow(k);
                [z.clone(), -z]
            })
            .collect()
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{mag}*z^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self += &rhs;
        self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(mut self, rhs: Cyclotomic) -> Cyclotomic {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { coeffs: self.coeffs.map(|c| -c) }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -self.clone()
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        let mut wide = vec![BigRational::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        Cyclotomic::reduce(wide)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Cyclotomic {
    fn product<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::one(), |acc, x| acc * x)
    }
}
