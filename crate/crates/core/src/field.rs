//! Arithmetic in `F_{p^ell}` over a fixed irreducible modulus.
//!
//! Elements are identified with their index: the polynomial-basis
//! coordinates `(c_0, .., c_{ell-1})` read as little-endian base-`p` digits,
//! so `index = sum c_j p^j`. Zero has index 0 and one has index 1. Addition
//! works digit-wise on indices; multiplication goes through discrete
//! log/antilog tables built once from schoolbook polynomial products.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg;
use crate::{Error, Result};

/// Largest field order this crate will build.
pub const MAX_Q: u64 = 1 << 20;

const ADD_TABLE_MAX_Q: u32 = 512;

/// An element of some [`Field`], stored as its canonical index.
///
/// The index is only meaningful together with the field it came from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The finite field `F_q`, `q = p^ell`, presented as `F_p[t]/(modulus)`.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    ell: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    trace: Vec<u32>,
    add_table: Option<Vec<u32>>,
    /// Add table on blocks of base-`p` digits, `(block size, table)`.
    chunk_add: Option<(u32, Vec<u32>)>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.ell == other.ell && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while u64::from(d) * u64::from(d) <= u64::from(n) {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

/// Remainder of `num` modulo the monic polynomial `den` over F_p.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let dd = den.len() - 1;
    let mut r: Vec<u64> = num.iter().map(|&c| u64::from(c)).collect();
    let p64 = u64::from(p);
    if r.len() <= dd {
        return num.to_vec();
    }
    for deg in (dd..r.len()).rev() {
        let c = r[deg] % p64;
        if c == 0 {
            continue;
        }
        for (i, &m) in den.iter().enumerate() {
            let k = deg - dd + i;
            r[k] = (r[k] + p64 * p64 - c * u64::from(m) % p64) % p64;
        }
    }
    r.truncate(dd);
    r.into_iter().map(|c| (c % p64) as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() - 1;
    for k in 1..=deg / 2 {
        let count = u64::from(p).pow(k as u32);
        for idx in 0..count {
            let mut div = digits(idx, p, k);
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % u64::from(p)) as u32);
        idx /= u64::from(p);
    }
    out
}

/// Lexicographically least monic irreducible of degree `ell`, ordering
/// candidates by the base-`p` value of their lower coefficients.
pub fn default_modulus(p: u32, ell: u32) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if ell == 0 || u64::from(p).checked_pow(ell).is_none_or(|q| q > MAX_Q) {
        return Err(Error::UnsupportedSize);
    }
    if ell > 1 && (p > 13 || ell > 6) {
        return Err(Error::UnsupportedSize);
    }
    let count = u64::from(p).pow(ell);
    for idx in 0..count {
        let mut m = digits(idx, p, ell as usize);
        m.push(1);
        if is_irreducible(&m, p) {
            return Ok(m);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds `F_{p^ell}`. Without an explicit modulus the built-in table
    /// (`p <= 13`, `ell <= 6`, or any prime field) supplies one. A supplied
    /// modulus is little-endian, monic, and re-checked for irreducibility.
    pub fn new(p: u32, ell: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        let q = match u64::from(p).checked_pow(ell) {
            Some(q) if ell >= 1 && q <= MAX_Q => q as u32,
            _ => return Err(Error::UnsupportedSize),
        };
        let modulus = match modulus {
            Some(m) => {
                if m.len() != ell as usize + 1 || m[ell as usize] != 1 || m.iter().any(|&c| c >= p)
                {
                    return Err(Error::MalformedModulus);
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => default_modulus(p, ell)?,
        };

        let mut field = Field {
            p,
            ell,
            q,
            modulus,
            primitive: FieldElement::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            trace: Vec::new(),
            add_table: None,
            chunk_add: None,
        };
        field.neg = (0..q).map(|a| field.digit_neg(a)).collect();
        field.build_log_tables();
        if q <= ADD_TABLE_MAX_Q {
            let mut t = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.digit_add(a, b);
                }
            }
            field.add_table = Some(t);
        } else if ell > 1 && p > 2 {
            let mut b = p;
            while b * p <= ADD_TABLE_MAX_Q {
                b *= p;
            }
            let mut t = vec![0u32; (b * b) as usize];
            for x in 0..b {
                for y in 0..b {
                    t[(x * b + y) as usize] = field.digit_add(x, y);
                }
            }
            field.chunk_add = Some((b, t));
        }
        if ell > 1 {
            let basis_traces: Vec<u32> = (0..ell)
                .map(|j| field.trace_by_frobenius(FieldElement(p.pow(j))).0)
                .collect();
            field.trace = (0..q)
                .map(|a| {
                    let s: u64 = digits(u64::from(a), p, ell as usize)
                        .iter()
                        .zip(&basis_traces)
                        .map(|(&c, &t)| u64::from(c) * u64::from(t))
                        .sum();
                    (s % u64::from(p)) as u32
                })
                .collect();
        }
        Ok(field)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let ell = self.ell as usize;
        let da = digits(u64::from(a), self.p, ell);
        let db = digits(u64::from(b), self.p, ell);
        let mut prod = vec![0u32; 2 * ell - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((u64::from(prod[i + j]) + u64::from(x) * u64::from(y))
                    % u64::from(self.p)) as u32;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.from_digits(&r)
    }

    fn poly_pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = 1;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.poly_mul(r, base);
            }
            base = self.poly_mul(base, base);
            e >>= 1;
        }
        r
    }

    fn build_log_tables(&mut self) {
        let order = u64::from(self.q) - 1;
        let factors = prime_factors(order);
        let g = (1..self.q)
            .find(|&g| factors.iter().all(|&r| self.poly_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        self.primitive = FieldElement(g);
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut x = 1u32;
        for k in 0..order as u32 {
            exp.push(x);
            log[x as usize] = k;
            x = self.poly_mul(x, g);
        }
        self.exp = exp;
        self.log = log;
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn digit_add(&self, mut a: u32, mut b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let mut r = 0;
        let mut w = 1;
        for _ in 0..self.ell {
            r += (a % self.p + b % self.p) % self.p * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        r
    }

    fn digit_neg(&self, mut a: u32) -> u32 {
        let mut r = 0;
        let mut w = 1;
        for _ in 0..self.ell {
            r += (self.p - a % self.p) % self.p * w;
            a /= self.p;
            w *= self.p;
        }
        r
    }

    fn trace_by_frobenius(&self, a: FieldElement) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..self.ell {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The least-index generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        self.primitive
    }

    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index))
        } else {
            Err(Error::IndexOutOfRange {
                index: index as usize,
                bound: self.q as usize,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    /// Polynomial-basis coordinates, little-endian.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        digits(u64::from(a.0), self.p, self.ell as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.ell as usize {
            return Err(Error::DimensionMismatch {
                expected: self.ell as usize,
                got: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::IndexOutOfRange {
                index: c as usize,
                bound: self.p as usize,
            });
        }
        Ok(FieldElement(self.from_digits(coeffs)))
    }

    /// Embeds an integer through the prime subfield (`n mod p`).
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(i64::from(self.p)) as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.q && b.0 < self.q);
        if let Some(t) = &self.add_table {
            return FieldElement(t[(a.0 * self.q + b.0) as usize]);
        }
        if self.ell == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        if let Some((base, t)) = &self.chunk_add {
            let (mut a, mut b, mut w, mut r) = (a.0, b.0, 1, 0);
            while a | b != 0 {
                r += t[(a % base * base + b % base) as usize] * w;
                a /= base;
                b /= base;
                w *= base;
            }
            return FieldElement(r);
        }
        FieldElement(self.digit_add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[(if s >= order { s - order } else { s }) as usize])
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut r = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        r
    }

    /// Discrete log to the primitive element, `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// `a^(q-2)`.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, u64::from(self.q) - 2))
    }

    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, u64::from(self.p))
    }

    /// Absolute trace to the prime field, returned as an integer in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u32 {
        if self.ell == 1 {
            a.0
        } else {
            self.trace[a.0 as usize]
        }
    }

    /// `{1, t, .., t^(ell-1)}`.
    pub fn polynomial_basis(&self) -> FpBasis {
        let elements = (0..self.ell).map(|j| FieldElement(self.p.pow(j))).collect();
        FpBasis {
            inverse: identity(self.ell as usize),
            elements,
            p: self.p,
            ell: self.ell,
        }
    }

    /// Whether the element lies in the prime subfield.
    pub fn in_prime_field(&self, a: FieldElement) -> bool {
        a.0 < self.p
    }
}

fn identity(n: usize) -> Vec<Vec<u32>> {
    (0..n)
        .map(|r| (0..n).map(|c| u32::from(r == c)).collect())
        .collect()
}

/// A basis of `F_q` as a vector space over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpBasis {
    elements: Vec<FieldElement>,
    inverse: Vec<Vec<u32>>,
    p: u32,
    ell: u32,
}

impl FpBasis {
    pub fn new(field: &Field, elements: Vec<FieldElement>) -> Result<FpBasis> {
        if elements.len() != field.ell as usize || elements.iter().any(|e| e.0 >= field.q) {
            return Err(Error::NotABasis);
        }
        let cols: Vec<Vec<u32>> = elements.iter().map(|&e| field.coeffs(e)).collect();
        let inverse = linalg::invert_columns(&cols, field.p).ok_or(Error::NotABasis)?;
        Ok(FpBasis {
            elements,
            inverse,
            p: field.p,
            ell: field.ell,
        })
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    /// The unique `k` with `a = sum k_i beta_i`, `k_i` in `[0, p)`.
    pub fn coordinates(&self, a: FieldElement) -> Vec<u32> {
        linalg::mat_vec(
            &self.inverse,
            &digits(u64::from(a.0), self.p, self.ell as usize),
            self.p,
        )
    }
}
