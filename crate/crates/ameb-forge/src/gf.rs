//! Finite-field arithmetic GF(p^n) for prime-power orders up to 2^16.
//!
//! Elements are polynomials over GF(p) reduced modulo a monic irreducible
//! polynomial of degree n. The modulus is always the lexicographically
//! smallest monic irreducible of its degree (coefficient vectors compared as
//! base-p integers, constant term least significant), so a field of a given
//! order is identical across runs.
//!
//! The canonical enumeration `0, 1, α, α², …, α^(q−2)` (with `α` the first
//! primitive element in base-p counting order) fixes the bijection between
//! GF(q) and the symbol set `[0, q)` used by the Latin-square constructions.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest admissible field order p^n.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("field order {0} exceeds the cap of 2^16")]
    OrderTooLarge(u64),
    #[error("the extension degree must be at least 1")]
    ZeroDegree,
    #[error("the zero element has no multiplicative inverse")]
    ZeroInverse,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("coefficient {value} is not in [0, {p})")]
    CoefficientOutOfRange { value: u32, p: u32 },
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
}

/// The defining data of a field GF(p^n): characteristic, degree and the
/// monic irreducible modulus (constant term first, length n+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    n: usize,
    modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Monic modulus polynomial, constant term first; length is `degree() + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }
}

/// A handle to a field GF(p^n); cheap to clone and share between threads.
#[derive(Debug, Clone)]
pub struct Field {
    spec: Arc<FieldSpec>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

/// An element of GF(p^n) in polynomial representation, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: Arc<FieldSpec>,
    coeffs: Vec<u32>,
}

impl Field {
    /// Constructs GF(p^n) with the lexicographically smallest monic
    /// irreducible modulus of degree n over GF(p). Deterministic across runs.
    pub fn new(p: u32, n: usize) -> Result<Field, GfError> {
        if n == 0 {
            return Err(GfError::ZeroDegree);
        }
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p as u64));
        }
        let order = checked_pow(p as u64, n as u32).ok_or(GfError::OrderTooLarge(u64::MAX))?;
        if order > MAX_ORDER {
            return Err(GfError::OrderTooLarge(order));
        }
        let modulus = smallest_irreducible(p, n);
        Ok(Field {
            spec: Arc::new(FieldSpec { p, n, modulus }),
        })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u64 {
        self.spec.order()
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> usize {
        self.spec.n
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            coeffs: vec![0; self.spec.n],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.spec.n];
        coeffs[0] = 1;
        FieldElement {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    /// Builds an element from its polynomial coefficients, constant term first.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() != self.spec.n {
            return Err(GfError::CoefficientCount {
                expected: self.spec.n,
                got: coeffs.len(),
            });
        }
        for &c in coeffs {
            if c >= self.spec.p {
                return Err(GfError::CoefficientOutOfRange {
                    value: c,
                    p: self.spec.p,
                });
            }
        }
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs: coeffs.to_vec(),
        })
    }

    /// The element whose coefficient vector is the base-p digit expansion of
    /// `raw` (constant term = least significant digit).
    fn element_from_raw(&self, mut raw: u64) -> FieldElement {
        let p = self.spec.p as u64;
        let mut coeffs = vec![0u32; self.spec.n];
        for c in coeffs.iter_mut() {
            *c = (raw % p) as u32;
            raw /= p;
        }
        FieldElement {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    /// The first element, in base-p counting order of coefficient vectors,
    /// whose multiplicative order is q−1. Deterministic; always exists.
    pub fn primitive_element(&self) -> FieldElement {
        let q = self.order();
        let factors = prime_factors(q - 1);
        for raw in 1..q {
            let candidate = self.element_from_raw(raw);
            if candidate.is_zero() {
                continue;
            }
            if q == 2 {
                return candidate; // q−1 = 1: the unit generates the trivial group
            }
            let full_order = factors
                .iter()
                .all(|&f| !candidate.pow((q - 1) / f).is_one());
            if full_order {
                return candidate;
            }
        }
        unreachable!("every finite field has a primitive element")
    }

    /// All q elements in the canonical order `0, 1, α, α², …, α^(q−2)`.
    ///
    /// The position of an element in this sequence is its symbol in the
    /// Latin-square constructions; the map is a bijection with `[0, q)`.
    pub fn elements(&self) -> Vec<FieldElement> {
        let q = self.order() as usize;
        let alpha = self.primitive_element();
        let mut out = Vec::with_capacity(q);
        out.push(self.zero());
        out.push(self.one());
        let mut power = alpha.clone();
        while out.len() < q {
            out.push(power.clone());
            power = power.mul(&alpha).expect("same field");
        }
        out
    }
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn check_same_field(&self, rhs: &FieldElement) -> Result<(), GfError> {
        if self.spec == rhs.spec {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    /// Coefficientwise addition mod p.
    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement, GfError> {
        self.check_same_field(rhs)?;
        let p = self.spec.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Polynomial multiplication reduced modulo (modulus, p).
    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement, GfError> {
        self.check_same_field(rhs)?;
        let coeffs = poly_mul_mod(&self.coeffs, &rhs.coeffs, &self.spec);
        Ok(FieldElement {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Multiplicative inverse; `a.inv()` satisfies `a * a⁻¹ = 1`.
    pub fn inv(&self) -> Result<FieldElement, GfError> {
        if self.is_zero() {
            return Err(GfError::ZeroInverse);
        }
        // a^(q−2) = a⁻¹ in a field of order q
        Ok(self.pow(self.spec.order() - 2))
    }

    /// Exponentiation by squaring; `a.pow(0)` is the unit.
    pub fn pow(&self, mut e: u64) -> FieldElement {
        let field = Field {
            spec: self.spec.clone(),
        };
        let mut result = field.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same field");
            }
            base = base.mul(&base).expect("same field");
            e >>= 1;
        }
        result
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{c}x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{c}x^{i}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Schoolbook product of two degree-< n polynomials, reduced by the monic
/// modulus of `spec` and by p.
fn poly_mul_mod(a: &[u32], b: &[u32], spec: &FieldSpec) -> Vec<u32> {
    let n = spec.n;
    let p = spec.p as u64;
    let mut prod = vec![0u64; 2 * n - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p;
        }
    }
    // x^n ≡ −(m₀ + m₁x + … + m_{n−1}x^{n−1})
    for deg in (n..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for t in 0..n {
            let sub = c * spec.modulus[t] as u64 % p;
            prod[deg - n + t] = (prod[deg - n + t] + p - sub) % p;
        }
    }
    prod.iter().take(n).map(|&c| c as u32).collect()
}

/// Lexicographically smallest monic irreducible polynomial of degree n over
/// GF(p): candidates ordered by the base-p integer value of their non-leading
/// coefficients, tested by trial division against every monic polynomial of
/// degree 1..=n/2.
fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    if n == 1 {
        // x itself: the constant-0 monic linear polynomial
        return vec![0, 1];
    }
    let q = checked_pow(p as u64, n as u32).expect("order checked by caller");
    for raw in 0..q {
        let mut candidate = digits(raw, p, n);
        candidate.push(1);
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
    unreachable!("monic irreducible polynomials exist for every degree")
}

fn digits(mut raw: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for d in out.iter_mut() {
        *d = (raw % p as u64) as u32;
        raw /= p as u64;
    }
    out
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let n = poly.len() - 1;
    for deg in 1..=n / 2 {
        let count = checked_pow(p as u64, deg as u32).expect("small degree");
        for raw in 0..count {
            let mut divisor = digits(raw, p, deg);
            divisor.push(1);
            if divides(&divisor, poly, p) {
                return false;
            }
        }
    }
    true
}

/// Whether the monic `divisor` divides `poly` over GF(p).
fn divides(divisor: &[u32], poly: &[u32], p: u32) -> bool {
    let p = p as u64;
    let dd = divisor.len() - 1;
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    for k in (dd..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        rem[k] = 0;
        for t in 0..dd {
            let sub = c * divisor[t] as u64 % p;
            rem[k - dd + t] = (rem[k - dd + t] + p - sub) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}
