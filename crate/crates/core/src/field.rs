//! Arithmetic in the prime field F_p for odd primes p.
//!
//! Elements carry their modulus so that geometry code can use ordinary
//! operators. Mixing elements of different fields is a logic error and is
//! caught by debug assertions.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use thiserror::Error;

/// Largest modulus accepted; keeps every product of two residues inside `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// Below this bound square roots are found by exhaustive search.
const EXHAUSTIVE_SQRT_LIMIT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// The field F_p together with its canonical square root of -1, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    sqrt_minus_one: Option<u32>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(FieldError::NotOddPrime(p));
        }
        let p = p as u32;
        let sqrt_minus_one = if p % 4 == 1 {
            FieldElement::new_reduced(p - 1, p).sqrt().map(|i| i.value)
        } else {
            None
        };
        Ok(Self { p, sqrt_minus_one })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// `p mod 4`, either 1 or 3.
    #[inline]
    pub fn residue_class_mod_4(&self) -> u32 {
        self.p % 4
    }

    /// True when p ≡ 1 (mod 4), i.e. when isotropic directions exist.
    #[inline]
    pub fn has_isotropic_directions(&self) -> bool {
        self.p % 4 == 1
    }

    /// The smallest nonnegative `i` with `i² = -1`, present iff p ≡ 1 (mod 4).
    pub fn sqrt_minus_one(&self) -> Option<FieldElement> {
        self.sqrt_minus_one.map(|i| FieldElement::new_reduced(i, self.p))
    }

    /// Reduces an arbitrary integer into the field.
    pub fn elem(&self, v: i64) -> FieldElement {
        FieldElement::new_reduced(v.rem_euclid(self.p as i64) as u32, self.p)
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::new_reduced(0, self.p)
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::new_reduced(1, self.p)
    }

    /// All residues `0, 1, ..., p-1` in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        let p = self.p;
        (0..p).map(move |v| FieldElement::new_reduced(v, p))
    }

    /// Nonzero residues in increasing order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        self.elements().skip(1)
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue in `[0, p)`.
///
/// Ordering compares the residue first, which gives the canonical order used
/// for points and lines within a single field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    #[inline]
    fn new_reduced(value: u32, p: u32) -> Self {
        debug_assert!(value < p);
        Self { value, p }
    }

    /// Reduces `value` modulo `p`; `p` must already be a validated modulus.
    #[inline]
    pub(crate) fn from_raw(value: u32, p: u32) -> Self {
        Self { value: value % p, p }
    }

    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    pub fn square(self) -> Self {
        self * self
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::new_reduced(1 % self.p, self.p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base *= base;
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat's little theorem.
    pub fn inverse(self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(self.p as u64 - 2))
    }

    /// Euler's criterion; zero counts as a square.
    pub fn is_square(self) -> bool {
        self.is_zero() || self.pow((self.p as u64 - 1) / 2).value == 1
    }

    /// The smaller of the two square roots, or `None` for a non-residue.
    pub fn sqrt(self) -> Option<Self> {
        if self.p < EXHAUSTIVE_SQRT_LIMIT {
            self.sqrt_exhaustive()
        } else {
            self.sqrt_tonelli_shanks()
        }
    }

    /// Scans `0..=p/2`; the first hit is the canonical root.
    pub fn sqrt_exhaustive(self) -> Option<Self> {
        let p = self.p as u64;
        (0..=self.p / 2)
            .find(|&r| (r as u64 * r as u64) % p == self.value as u64)
            .map(|r| Self::new_reduced(r, self.p))
    }

    pub fn sqrt_tonelli_shanks(self) -> Option<Self> {
        if self.is_zero() {
            return Some(self);
        }
        if !self.is_square() {
            return None;
        }
        let p = self.p as u64;
        // p - 1 = odd * 2^twos
        let mut odd = p - 1;
        let mut twos = 0u32;
        while odd.is_multiple_of(2) {
            odd /= 2;
            twos += 1;
        }
        let non_residue = (2..self.p)
            .map(|z| Self::new_reduced(z, self.p))
            .find(|z| !z.is_square())
            .expect("every odd prime field has a non-residue");

        let mut m = twos;
        let mut c = non_residue.pow(odd);
        let mut t = self.pow(odd);
        let mut r = self.pow(odd.div_ceil(2));
        while t.value != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.value != 1 {
                t2 = t2.square();
                i += 1;
            }
            let b = c.pow(1u64 << (m - i - 1));
            m = i;
            c = b.square();
            t *= c;
            r *= b;
        }
        Some(if r.value <= self.p - r.value { r } else { -r })
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value as u64 + rhs.value as u64;
        let p = self.p as u64;
        Self::new_reduced(if s >= p { s - p } else { s } as u32, self.p)
    }
}

impl Sub for FieldElement {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.value == 0 {
            self
        } else {
            Self::new_reduced(self.p - self.value, self.p)
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let prod = (self.value as u64 * rhs.value as u64) % self.p as u64;
        Self::new_reduced(prod as u32, self.p)
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for FieldElement {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// Deterministic trial division; adequate up to [`MAX_MODULUS`].
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
