//! Exact arithmetic in `Z[zeta_p]`.
//!
//! Values are kept as coefficient vectors over `1, zeta, .., zeta^(p-1)`
//! reduced with `1 + zeta + .. + zeta^(p-1) = 0` so that the last
//! coefficient is zero. With that normalization two elements are equal
//! exactly when their coefficient vectors are.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// An element of `Z[zeta_p]` in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycInt {
    p: u32,
    coeffs: Vec<i128>,
}

impl CycInt {
    pub fn zero(p: u32) -> CycInt {
        CycInt {
            p,
            coeffs: vec![0; p as usize],
        }
    }

    pub fn from_int(p: u32, n: i128) -> CycInt {
        let mut c = CycInt::zero(p);
        c.coeffs[0] = n;
        c.reduce()
    }

    /// `zeta^k`.
    pub fn zeta_pow(p: u32, k: u64) -> CycInt {
        let mut c = CycInt::zero(p);
        c.coeffs[(k % u64::from(p)) as usize] = 1;
        c.reduce()
    }

    /// Builds `sum_j coeffs[j] zeta^j` from an arbitrary (unreduced)
    /// coefficient vector of length `p`.
    pub fn from_coeffs(p: u32, coeffs: Vec<i128>) -> Result<CycInt> {
        if coeffs.len() != p as usize {
            return Err(Error::DimensionMismatch {
                expected: p as usize,
                got: coeffs.len(),
            });
        }
        Ok(CycInt { p, coeffs }.reduce())
    }

    /// `sum_j counts[j] zeta^j`: the character sum whose exponent takes
    /// value `j` exactly `counts[j]` times.
    pub fn from_histogram(counts: &[u64]) -> CycInt {
        let p = counts.len() as u32;
        CycInt {
            p,
            coeffs: counts.iter().map(|&c| i128::from(c)).collect(),
        }
        .reduce()
    }

    fn reduce(mut self) -> CycInt {
        let last = self.coeffs[self.p as usize - 1];
        if last != 0 {
            for c in self.coeffs.iter_mut() {
                *c -= last;
            }
        }
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical coefficients; the last one is always zero.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &CycInt) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::PrimeMismatch {
                left: self.p,
                right: other.p,
            })
        }
    }

    pub fn add(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn sub(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt { p: self.p, coeffs })
    }

    pub fn neg(&self) -> CycInt {
        CycInt {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycInt) -> Result<CycInt> {
        self.check(other)?;
        let p = self.p as usize;
        let mut out = vec![0i128; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        Ok(CycInt {
            p: self.p,
            coeffs: out,
        }
        .reduce())
    }

    /// Complex conjugation, `zeta^j -> zeta^(p-j)`.
    pub fn conjugate(&self) -> CycInt {
        let p = self.p as usize;
        let mut out = vec![0i128; p];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[(p - j) % p] = c;
        }
        CycInt {
            p: self.p,
            coeffs: out,
        }
        .reduce()
    }

    /// `S * conj(S)`, i.e. `|S|^2` as an element of the real subring.
    pub fn abs_sq(&self) -> CycInt {
        self.mul(&self.conjugate()).expect("same prime")
    }

    /// `Some(n)` when the value is the rational integer `n`.
    pub fn as_integer(&self) -> Option<i128> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    /// Double-precision value of `sum c_j e^(2 pi i j / p)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let p = f64::from(self.p);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let theta = 2.0 * PI * j as f64 / p;
            re += c as f64 * libm::cos(theta);
            im += c as f64 * libm::sin(theta);
        }
        (re, im)
    }

    /// Real value of an element known to be real (such as an `abs_sq`).
    pub fn to_real(&self) -> f64 {
        match self.as_integer() {
            Some(n) => n as f64,
            None => self.to_complex().0,
        }
    }
}

/// Rational values print as the integer; others as the canonical
/// coefficients `[c_0;c_1;..;c_(p-2)]`.
impl core::fmt::Display for CycInt {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        f.write_str("[")?;
        for (i, c) in self.coeffs[..self.coeffs.len() - 1].iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}
