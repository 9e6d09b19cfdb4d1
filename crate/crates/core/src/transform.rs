//! Multidimensional size-`p` DFTs over `(Z_p)^n`, laid out on point
//! indices read as base-`p` digit strings.
//!
//! Every transform computes `y[k] = sum_x w(x) zeta^(-<x, k>)` where
//! `<x, k>` is the digit-wise dot product mod `p`. The exact variant
//! carries a `p`-bin histogram per entry (an unreduced element of
//! `Z[zeta_p]`), so multiplying by a root of unity is a rotation of bins.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::field::FieldElement;
use crate::space::Space;

/// Exact transform in place. `hist` has `p` bins per entry.
pub(crate) fn exact_dft(hist: &mut [u64], p: usize, axes: usize) {
    let n = hist.len() / p;
    let mut block = vec![0u64; p * p];
    let mut stride = 1;
    for _ in 0..axes {
        let span = stride * p;
        for hi in (0..n).step_by(span) {
            for lo in 0..stride {
                let base = hi + lo;
                block.iter_mut().for_each(|b| *b = 0);
                for j in 0..p {
                    let src = &hist[(base + j * stride) * p..][..p];
                    for k in 0..p {
                        // zeta^(-jk) moves bin c to bin c - jk
                        let shift = (j * k) % p;
                        let (head, tail) = block[k * p..][..p].split_at_mut(p - shift);
                        head.iter_mut()
                            .zip(&src[shift..])
                            .for_each(|(d, s)| *d += s);
                        tail.iter_mut()
                            .zip(&src[..shift])
                            .for_each(|(d, s)| *d += s);
                    }
                }
                for k in 0..p {
                    hist[(base + k * stride) * p..][..p].copy_from_slice(&block[k * p..][..p]);
                }
            }
        }
        stride = span;
    }
}

/// Floating transform in place.
pub(crate) fn complex_dft(data: &mut [Complex64], p: usize, axes: usize) {
    let n = data.len();
    let twiddle: Vec<Complex64> = (0..p)
        .map(|r| {
            let theta = -2.0 * PI * r as f64 / p as f64;
            Complex64::new(libm::cos(theta), libm::sin(theta))
        })
        .collect();
    let mut tmp = vec![Complex64::new(0.0, 0.0); p];
    let mut stride = 1;
    for _ in 0..axes {
        let span = stride * p;
        for hi in (0..n).step_by(span) {
            for lo in 0..stride {
                let base = hi + lo;
                for (k, out) in tmp.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for j in 0..p {
                        acc += data[base + j * stride] * twiddle[(j * k) % p];
                    }
                    *out = acc;
                }
                for (k, v) in tmp.iter().enumerate() {
                    data[base + k * stride] = *v;
                }
            }
        }
        stride = span;
    }
}

/// Integer Walsh-Hadamard transform in place (the `p = 2` case).
pub(crate) fn walsh_hadamard(data: &mut [i64]) {
    let n = data.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (data[j], data[j + h]);
                data[j] = a + b;
                data[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// For each frequency `m`, the digit index `k(m)` with
/// `Tr(u * (x . m)) = <digits(x), k(m)>` for all `x`.
pub(crate) fn frequency_map(space: &Space, u: FieldElement) -> Vec<usize> {
    let f = space.field();
    let p = f.p() as usize;
    let q = f.q() as usize;
    let ell = f.ell();
    // kvec[c] = sum_j Tr(u c t^j) p^j
    let kvec: Vec<usize> = f
        .elements()
        .map(|c| {
            let uc = f.mul(u, c);
            (0..ell)
                .map(|j| f.trace(f.mul(uc, FieldElement(f.p().pow(j)))) as usize * p.pow(j))
                .sum()
        })
        .collect();
    (0..space.size())
        .map(|m| {
            let mut m = m;
            let mut out = 0;
            let mut w = 1;
            for _ in 0..space.dim() {
                out += kvec[m % q] * w;
                m /= q;
                w *= q;
            }
            out
        })
        .collect()
}
