//! Arithmetic in `GF(p^m)` as `Z_p[x]` modulo a monic irreducible of degree
//! `m`, plus the deterministic searches the code constructions rely on:
//! the lexicographically first irreducible modulus and the first primitive
//! element in enumeration order.
//!
//! Elements are coefficient vectors of length `m`, little-endian (index j
//! holds the coefficient of `x^j`). Enumeration order indexes an element by
//! `sum c_j * p^j`, so element 0 is zero, element 1 is one, and for p = 2
//! element 2 is `x`.

use std::fmt::Write as _;
use std::sync::OnceLock;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("polynomial of degree {found} is not a valid modulus of degree {expected}")]
    BadModulus { found: usize, expected: usize },
    #[error("modulus is reducible")]
    ReducibleModulus,
}

/// An element of `GF(p^m)`: `m` coefficients in `0..p`, little-endian.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(Vec<u64>);

impl FieldElement {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense little-endian polynomials over Z_p (helpers, also used by codes) ---

pub(crate) fn poly_degree(f: &[u64]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub(crate) fn poly_mul_zp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

/// Remainder of `a` modulo monic-leading `b` (leading coefficient inverted
/// via Fermat). `b` must be nonzero.
pub(crate) fn poly_rem_zp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut rem: Vec<u64> = a.to_vec();
    while let Some(da) = poly_degree(&rem) {
        if da < db {
            break;
        }
        let factor = rem[da] * lead_inv % p;
        let shift = da - db;
        for j in 0..=db {
            let sub = factor * b[j] % p;
            rem[shift + j] = (rem[shift + j] + p - sub) % p;
        }
    }
    rem
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a nonzero mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn index_to_coeffs(mut i: u128, p: u64, len: usize) -> Vec<u64> {
    let mut coeffs = vec![0u64; len];
    for c in coeffs.iter_mut() {
        *c = (i % p as u128) as u64;
        i /= p as u128;
    }
    coeffs
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = poly_degree(f).expect("zero polynomial");
    if m == 0 {
        return false;
    }
    if m == 1 {
        return true;
    }
    for d in 1..=m / 2 {
        let mut divisor = vec![0u64; d + 1];
        divisor[d] = 1;
        for i in 0..(p as u128).pow(d as u32) {
            divisor[..d].copy_from_slice(&index_to_coeffs(i, p, d));
            if poly_degree(&poly_rem_zp(f, &divisor, p)).is_none() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically first monic irreducible of degree `m` over `Z_p`,
/// scanning constant-coefficient-first: candidate index i has coefficient
/// `(i / p^j) mod p` at `x^j`. Returned little-endian with length `m + 1`.
pub fn find_irreducible(p: u64, m: usize) -> Result<Vec<u64>, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    let mut f = vec![0u64; m + 1];
    f[m] = 1;
    for i in 0..(p as u128).pow(m as u32) {
        f[..m].copy_from_slice(&index_to_coeffs(i, p, m));
        if is_irreducible(&f, p) {
            return Ok(f);
        }
    }
    unreachable!("an irreducible of every degree exists over Z_p");
}

/// `GF(p^m)` with a fixed modulus. The primitive element is found once,
/// on first request, and cached.
#[derive(Debug)]
pub struct FieldContext {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
    primitive: OnceLock<FieldElement>,
}

impl FieldContext {
    /// Field with the lexicographically first irreducible modulus.
    pub fn new(p: u64, m: usize) -> Result<Self, GfError> {
        let modulus = find_irreducible(p, m)?;
        Ok(FieldContext {
            p,
            m,
            modulus,
            primitive: OnceLock::new(),
        })
    }

    /// Field with a caller-chosen modulus (monic, degree `m`, irreducible).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
        let m = match poly_degree(&modulus) {
            Some(0) | None => return Err(GfError::ZeroDegree),
            Some(d) => d,
        };
        if modulus.len() != m + 1 || modulus[m] != 1 {
            return Err(GfError::BadModulus {
                found: modulus.len().saturating_sub(1),
                expected: m,
            });
        }
        if !is_irreducible(&modulus, p) {
            return Err(GfError::ReducibleModulus);
        }
        Ok(FieldContext {
            p,
            m,
            modulus,
            primitive: OnceLock::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of field elements, `p^m`.
    pub fn element_count(&self) -> u128 {
        (self.p as u128).pow(self.m as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.m])
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![0; self.m];
        c[0] = 1;
        FieldElement(c)
    }

    /// Element with the given coefficients (reduced mod p, padded or
    /// truncated is not allowed: the length must be exactly `m`).
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        assert_eq!(coeffs.len(), self.m, "coefficient vector has wrong length");
        FieldElement(coeffs.iter().map(|&c| c % self.p).collect())
    }

    /// The element `x` (for m = 1 this is zero, since x reduces to 0).
    pub fn x(&self) -> FieldElement {
        let mut c = vec![0; self.m];
        if self.m > 1 {
            c[1] = 1;
        }
        FieldElement(c)
    }

    pub fn element_from_index(&self, i: u128) -> FieldElement {
        assert!(i < self.element_count());
        FieldElement(index_to_coeffs(i, self.p, self.m))
    }

    pub fn index_of(&self, a: &FieldElement) -> u128 {
        a.0.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    /// All elements in enumeration order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.element_count()).map(|i| self.element_from_index(i))
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement(
            a.0.iter()
                .zip(&b.0)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        )
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement(a.0.iter().map(|&x| (self.p - x) % self.p).collect())
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let product = poly_mul_zp(&a.0, &b.0, self.p);
        let mut rem = poly_rem_zp(&product, &self.modulus, self.p);
        rem.resize(self.m, 0);
        FieldElement(rem)
    }

    pub fn pow(&self, a: &FieldElement, mut e: u128) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, GfError> {
        if self.is_zero(a) {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(a, self.element_count() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u128, GfError> {
        if self.is_zero(a) {
            return Err(GfError::ZeroInverse);
        }
        let group = self.element_count() - 1;
        let mut order = group;
        for q in prime_factors(group) {
            while order % q == 0 && self.pow(a, order / q) == self.one() {
                order /= q;
            }
        }
        Ok(order)
    }

    /// First element in enumeration order with multiplicative order
    /// `p^m - 1`. Cached after the first call.
    pub fn primitive(&self) -> &FieldElement {
        self.primitive.get_or_init(|| {
            let group = self.element_count() - 1;
            for i in 1..self.element_count() {
                let a = self.element_from_index(i);
                if self.multiplicative_order(&a).unwrap() == group {
                    return a;
                }
            }
            unreachable!("the multiplicative group of a finite field is cyclic");
        })
    }

    /// Coefficient vector of `a` over `Z_p`, little-endian, length `m`.
    /// This is the linear isomorphism `GF(p^m) -> Z_p^m` used to expand
    /// parity-check entries.
    pub fn to_vector(&self, a: &FieldElement) -> Vec<u64> {
        a.0.clone()
    }

    /// Human form of a polynomial over Z_p, e.g. `x^3 + x + 1`.
    pub fn poly_string(coeffs: &[u64]) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (j, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mut term = String::new();
            if j == 0 || c != 1 {
                write!(term, "{c}").unwrap();
            }
            if j >= 1 {
                if c != 1 {
                    term.push('*');
                }
                term.push('x');
                if j > 1 {
                    write!(term, "^{j}").unwrap();
                }
            }
            terms.push(term);
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    pub fn modulus_string(&self) -> String {
        Self::poly_string(&self.modulus)
    }
}
