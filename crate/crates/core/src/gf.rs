//! Arithmetic in GF(q), q = p^e.
//!
//! An element is stored as the integer `Σ c_i p^i` encoding the polynomial
//! `Σ c_i x^i` of degree below `e`. Prime fields use plain modular arithmetic;
//! extension fields multiply through log/antilog tables built once per field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Raw encoding. Callers are responsible for range; see [`FieldSpec::element`].
    pub(crate) const fn from_raw(value: u32) -> Self {
        FieldElement(value)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite field GF(p^e) together with the tables needed for fast arithmetic.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(into = "FieldSpecRepr", try_from = "FieldSpecRepr")]
pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    // Only populated for e > 1. `exp` has length 2(q-1) so that log sums need no reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct FieldSpecRepr {
    p: u32,
    e: u32,
    modulus: Vec<u32>,
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        FieldSpecRepr { p: f.p, e: f.e, modulus: f.modulus }
    }
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        FieldSpec::new(r.p, r.e, Some(&r.modulus))
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

impl FieldSpec {
    /// Builds GF(p^e). Without an explicit modulus the lexicographically least
    /// monic irreducible polynomial of degree `e` is used.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::InvalidModulus(vec![], "extension degree must be at least 1"));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(e)))?;
        let q = q as u32;

        let modulus = match modulus {
            Some(m) => {
                check_modulus(m, p, e)?;
                m.to_vec()
            }
            None if e == 1 => vec![0, 1],
            None => least_irreducible(p, e),
        };

        let mut field = FieldSpec { p, e, q, modulus, generator: 0, exp: Vec::new(), log: Vec::new() };
        field.build_tables();
        Ok(field)
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// The default field of order `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or_else(|| Error::OutOfRange(format!("{q} is not a prime power")))?;
        Self::new(p, e, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// A fixed generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.generator)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value < self.q {
            Ok(FieldElement(value))
        } else {
            Err(Error::FieldMismatch { value, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Coefficients `c_0..c_{e-1}` of the polynomial an element encodes.
    pub fn decode(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn encode(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.e as usize {
            return Err(Error::DimensionMismatch { expected: self.e as usize, found: coeffs.len() });
        }
        let mut v = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= self.p {
                return Err(Error::FieldMismatch { value: c, q: self.p });
            }
            v = v * self.p + c;
        }
        Ok(FieldElement(v))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.e == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q);
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.e == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 >= self.q {
            return Err(Error::FieldMismatch { value: a.0, q: self.q });
        }
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        if self.e == 1 {
            return Ok(self.pow(a, (self.p - 2) as u64));
        }
        let order = self.q - 1;
        Ok(FieldElement(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn pow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// Field-checked variants for elements of unknown provenance.
    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(self.add(a, b))
    }

    pub fn checked_mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        self.element(a.0)?;
        self.element(b.0)?;
        Ok(self.mul(a, b))
    }

    fn build_tables(&mut self) {
        if self.e == 1 {
            self.generator = (1..self.q).find(|&g| self.slow_order(g) == self.q - 1).unwrap_or(1);
            return;
        }
        let order = self.q - 1;
        let generator = (2..self.q)
            .find(|&g| self.slow_order(g) == order)
            .expect("multiplicative group of a finite field is cyclic");
        self.generator = generator;
        self.exp = vec![0; 2 * order as usize];
        self.log = vec![0; self.q as usize];
        let mut x = 1;
        for i in 0..order {
            self.exp[i as usize] = x;
            self.exp[(i + order) as usize] = x;
            self.log[x as usize] = i;
            x = self.slow_mul(x, generator);
        }
    }

    fn slow_order(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.slow_mul(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let da = self.decode(FieldElement(a));
        let db = self.decode(FieldElement(b));
        let prod = poly_mul(&da, &db, self.p);
        let rem = poly_rem(&prod, &self.modulus, self.p);
        let mut digits = rem;
        digits.resize(self.e as usize, 0);
        digits.iter().rev().fold(0, |v, &c| v * self.p + c)
    }
}

fn check_modulus(m: &[u32], p: u32, e: u32) -> Result<()> {
    if m.len() != e as usize + 1 {
        return Err(Error::InvalidModulus(m.to_vec(), "degree must equal the extension degree"));
    }
    if m.last() != Some(&1) {
        return Err(Error::InvalidModulus(m.to_vec(), "polynomial must be monic"));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus(m.to_vec(), "coefficients must lie in [0, p)"));
    }
    if e == 1 {
        if m != [0, 1] {
            return Err(Error::InvalidModulus(m.to_vec(), "prime fields use the placeholder [0, 1]"));
        }
        return Ok(());
    }
    if !is_irreducible(m, p) {
        return Err(Error::ReducibleModulus(m.to_vec(), p));
    }
    Ok(())
}

fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    for v in 0..count {
        let mut poly = digits(v, p, e as usize);
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn digits(mut v: u64, p: u32, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (v % p as u64) as u32;
            v /= p as u64;
            d
        })
        .collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for v in 0..(p as u64).pow(d as u32) {
            let mut divisor = digits(v, p, d);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - dm;
            for (k, &c) in m[..dm].iter().enumerate() {
                r[shift + k] = (r[shift + k] + (p - lead) * c % p) % p;
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(v: u32) -> FieldElement {
        FieldElement(v)
    }

    #[test]
    fn prime_field_gf2() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.add(el(1), el(1)), el(0));
    }

    #[test]
    fn gf4_default_modulus() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(el(2), el(2)), el(3));
    }

    #[test]
    fn gf8_default_is_x3_x_1() {
        let f = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn non_prime_characteristic() {
        assert!(matches!(FieldSpec::new(4, 1, None), Err(Error::NonPrimeCharacteristic(4))));
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(FieldSpec::new(2, 2, Some(&[1, 0, 1])), Err(Error::ReducibleModulus(..))));
        assert!(matches!(FieldSpec::new(2, 2, Some(&[1, 1])), Err(Error::InvalidModulus(..))));
    }

    #[test]
    fn inverse_in_gf3() {
        let f = FieldSpec::prime(3).unwrap();
        assert_eq!(f.inv(el(2)).unwrap(), el(2));
        assert!(matches!(f.inv(el(0)), Err(Error::ZeroInverse)));
        assert!(matches!(f.inv(el(5)), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn order_factorisation() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(FieldSpec::of_order(16).unwrap().e(), 4);
        assert!(FieldSpec::of_order(12).is_err());
        assert!(matches!(FieldSpec::new(2, 17, None), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn json_round_trip() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"p":3,"e":2,"modulus":[1,0,1]}"#);
        let g: FieldSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        assert!(serde_json::from_str::<FieldSpec>(r#"{"p":2,"e":2,"modulus":[1,0,1]}"#).is_err());
    }

    fn all_fields() -> Vec<FieldSpec> {
        [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16].iter().map(|&q| FieldSpec::of_order(q).unwrap()).collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in all_fields() {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                    assert_eq!(f.pow(a, (f.q() - 1) as u64), FieldElement::ONE, "GF({})", f.q());
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_multiplication_matches_polynomial_product() {
        for f in all_fields().into_iter().filter(|f| f.e() > 1) {
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b).value(), f.slow_mul(a.value(), b.value()));
                }
            }
        }
    }

    #[test]
    fn encoding_bijection() {
        for f in all_fields() {
            for a in f.elements() {
                assert_eq!(f.encode(&f.decode(a)).unwrap(), a);
            }
        }
    }
}
