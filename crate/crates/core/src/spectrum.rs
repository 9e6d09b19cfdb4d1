//! Character sums `S(u, m) = sum_x zeta^Tr(u (f(x) - x . m))` and the bent
//! test built on them.
//!
//! Nontrivial additive characters of `F_q` are enumerated as
//! `chi_u(y) = zeta_p^Tr(u y)` for `u != 0`. There are two routes to a
//! spectrum: the exact one (histograms of trace values, reduced in
//! `Z[zeta_p]`) and the fast floating one (a size-`p` butterfly along each
//! of the `d * ell` F_p-axes). The exact route is the arbiter.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::cyclotomic::CycInt;
use crate::field::FieldElement;
use crate::funcs::{FnTable, PnVerdict};
use crate::par;
use crate::space::Point;
use crate::transform;
use crate::{Error, Result};

/// Relative tolerance between fast and exact magnitudes.
pub const FAST_TOLERANCE: f64 = 1e-9;

/// `chi_u(y) = zeta_p^Tr(u y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Character {
    u: FieldElement,
}

impl Character {
    pub fn new(u: FieldElement) -> Result<Character> {
        if u.is_zero() {
            Err(Error::TrivialCharacter)
        } else {
            Ok(Character { u })
        }
    }

    pub fn u(&self) -> FieldElement {
        self.u
    }

    /// The exponent `Tr(u y)` in `[0, p)`.
    pub fn exponent(&self, field: &crate::Field, y: FieldElement) -> u32 {
        field.trace(field.mul(self.u, y))
    }
}

/// `S(u, m)` for one frequency, by a `p`-bin histogram of exponents.
pub fn walsh_exact(f: &FnTable, u: FieldElement, m: &Point) -> Result<CycInt> {
    let chi = Character::new(u)?;
    let m = f.space().index(m)?;
    Ok(walsh_exact_index(f, chi, m))
}

pub(crate) fn walsh_exact_index(f: &FnTable, chi: Character, m: usize) -> CycInt {
    let field = f.field();
    let space = f.space();
    let mut counts = vec![0u64; field.p() as usize];
    for x in 0..space.size() {
        let y = field.sub(f.at(x), space.dot_index(x, m));
        counts[chi.exponent(field, y) as usize] += 1;
    }
    CycInt::from_histogram(&counts)
}

/// `S(u, m)` for every `m`, exactly, via the histogram-valued transform.
pub fn exact_spectrum(f: &FnTable, u: FieldElement) -> Result<Vec<CycInt>> {
    let chi = Character::new(u)?;
    let field = f.field();
    let p = field.p() as usize;
    let n = f.space().size();
    let mut hist = vec![0u64; n * p];
    for x in 0..n {
        hist[x * p + chi.exponent(field, f.at(x)) as usize] = 1;
    }
    transform::exact_dft(&mut hist, p, f.space().fp_dim());
    let kmap = transform::frequency_map(f.space(), u);
    Ok(kmap
        .iter()
        .map(|&k| CycInt::from_histogram(&hist[k * p..][..p]))
        .collect())
}

/// `|S(u, m)|` for every `m` by the floating transform; exact integers
/// (as floats) when `p = 2`.
pub fn walsh_fast_all(f: &FnTable, u: FieldElement) -> Result<Vec<f64>> {
    let chi = Character::new(u)?;
    let field = f.field();
    let space = f.space();
    let n = space.size();
    let kmap = transform::frequency_map(space, u);
    if field.p() == 2 {
        let mut data: Vec<i64> = (0..n)
            .map(|x| {
                if chi.exponent(field, f.at(x)) == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        transform::walsh_hadamard(&mut data);
        return Ok(kmap
            .iter()
            .map(|&k| data[k].unsigned_abs() as f64)
            .collect());
    }
    let p = field.p() as usize;
    let roots: Vec<Complex64> = (0..p)
        .map(|r| {
            let theta = 2.0 * core::f64::consts::PI * r as f64 / p as f64;
            Complex64::new(libm::cos(theta), libm::sin(theta))
        })
        .collect();
    let mut data: Vec<Complex64> = (0..n)
        .map(|x| roots[chi.exponent(field, f.at(x)) as usize])
        .collect();
    transform::complex_dft(&mut data, p, space.fp_dim());
    Ok(kmap
        .iter()
        .map(|&k| libm::hypot(data[k].re, data[k].im))
        .collect())
}

/// Exact `|S|^2` as a float: the integer when rational, otherwise the real
/// part of its complex value.
pub fn magnitude_from_abs_sq(abs_sq: &CycInt) -> f64 {
    libm::sqrt(abs_sq.to_real().max(0.0))
}

/// Whether a fast magnitude agrees with an exact `|S|^2`.
pub fn fast_agrees(fast: f64, abs_sq: &CycInt) -> bool {
    if let (2, Some(n)) = (abs_sq.p(), abs_sq.as_integer()) {
        return fast * fast == n as f64;
    }
    let exact = magnitude_from_abs_sq(abs_sq);
    (fast - exact).abs() <= FAST_TOLERANCE * exact.max(1.0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BentVerdict {
    Bent,
    NotBent {
        u: FieldElement,
        m: usize,
        abs_sq: CycInt,
    },
}

impl BentVerdict {
    pub fn is_bent(&self) -> bool {
        matches!(self, BentVerdict::Bent)
    }
}

/// Bent iff `|S(u, m)|^2 = q^d` exactly for all `u != 0` and all `m`.
///
/// The witness comes from the least failing `u`; within it, the least `m`
/// whose `|S|^2` exceeds `q^d` (one always does, the mean being `q^d`),
/// falling back to the least `m` that differs.
pub fn is_bent_exact(f: &FnTable) -> BentVerdict {
    let target = f.space().size() as i128;
    let q = f.field().q() as usize;
    let w = par::find_map_first(1..q, |u| {
        let u = FieldElement(u as u32);
        let abs_sq: Vec<CycInt> = exact_spectrum(f, u)
            .expect("u is nonzero")
            .iter()
            .map(CycInt::abs_sq)
            .collect();
        let differs = |a: &CycInt| a.as_integer() != Some(target);
        let first = abs_sq.iter().position(differs)?;
        let m = abs_sq
            .iter()
            .position(|a| match a.as_integer() {
                Some(n) => n > target,
                None => a.to_real() > target as f64,
            })
            .unwrap_or(first);
        Some(BentVerdict::NotBent {
            u,
            m,
            abs_sq: abs_sq[m].clone(),
        })
    });
    w.unwrap_or(BentVerdict::Bent)
}

/// `sum_m |S(u, m)|^2`, exactly.
pub fn parseval_sum(spectrum: &[CycInt]) -> CycInt {
    let p = spectrum.first().map_or(2, CycInt::p);
    spectrum.iter().fold(CycInt::zero(p), |acc, s| {
        acc.add(&s.abs_sq()).expect("same prime")
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crosscheck {
    pub pn: PnVerdict,
    pub bent: BentVerdict,
    pub agree: bool,
}

/// Runs the PN and bent tests independently; in odd characteristic they
/// must agree, so disagreement signals an implementation fault.
pub fn crosscheck_pn_bent(f: &FnTable) -> Result<Crosscheck> {
    if f.field().p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    let pn = f.is_pn();
    let bent = is_bent_exact(f);
    let agree = pn.is_pn() == bent.is_bent();
    Ok(Crosscheck { pn, bent, agree })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumRecord {
    pub m: usize,
    /// Exact `|S|^2`; in fast mode only present on spot-checked rows.
    pub abs_sq: Option<CycInt>,
    pub magnitude: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumMode {
    Exact,
    /// Floating transform, with exact spot checks on every `stride`-th `m`.
    Fast {
        stride: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub u: FieldElement,
    pub records: Vec<SpectrumRecord>,
    pub max_magnitude: f64,
    pub min_magnitude: f64,
    /// Least `m` whose magnitude is not `q^(d/2)` (exact in exact mode).
    pub first_non_flat: Option<usize>,
    /// Spot-checked `m` whose fast value disagreed with the exact one.
    pub spot_check_failures: Vec<usize>,
}

pub fn spectrum_report(f: &FnTable, u: FieldElement, mode: SpectrumMode) -> Result<SpectrumReport> {
    let n = f.space().size();
    let (records, spot_check_failures) = match mode {
        SpectrumMode::Exact => {
            let spec = exact_spectrum(f, u)?;
            let records = spec
                .iter()
                .enumerate()
                .map(|(m, s)| {
                    let a = s.abs_sq();
                    SpectrumRecord {
                        m,
                        magnitude: magnitude_from_abs_sq(&a),
                        abs_sq: Some(a),
                    }
                })
                .collect::<Vec<_>>();
            (records, Vec::new())
        }
        SpectrumMode::Fast { stride } => {
            let stride = stride.max(1);
            let mags = walsh_fast_all(f, u)?;
            let chi = Character::new(u)?;
            let checked = par::map_collect(0..n.div_ceil(stride), |i| {
                walsh_exact_index(f, chi, i * stride).abs_sq()
            });
            let mut failures = Vec::new();
            let records = mags
                .iter()
                .enumerate()
                .map(|(m, &magnitude)| {
                    let abs_sq = (m % stride == 0).then(|| checked[m / stride].clone());
                    if abs_sq.as_ref().is_some_and(|a| !fast_agrees(magnitude, a)) {
                        failures.push(m);
                    }
                    SpectrumRecord {
                        m,
                        abs_sq,
                        magnitude,
                    }
                })
                .collect();
            (records, failures)
        }
    };
    let target = n as i128;
    let flat_mag = libm::sqrt(n as f64);
    let first_non_flat = records.iter().position(|r| match &r.abs_sq {
        Some(a) if mode == SpectrumMode::Exact => a.as_integer() != Some(target),
        _ => (r.magnitude - flat_mag).abs() > FAST_TOLERANCE * flat_mag,
    });
    let max_magnitude = records.iter().map(|r| r.magnitude).fold(f64::MIN, f64::max);
    let min_magnitude = records.iter().map(|r| r.magnitude).fold(f64::MAX, f64::min);
    Ok(SpectrumReport {
        u,
        records,
        max_magnitude,
        min_magnitude,
        first_non_flat,
        spot_check_failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogParams};
    use crate::field::Field;
    use crate::funcs::{build_function, FnSpec};
    use crate::space::Space;
    use alloc::sync::Arc;

    fn field(p: u32, ell: u32) -> Arc<Field> {
        Arc::new(Field::new(p, ell, None).unwrap())
    }

    fn poly(f: &Arc<Field>, c: &[u32]) -> FnTable {
        build_function(
            &FnSpec::Univariate(c.iter().map(|&x| FieldElement(x)).collect()),
            f.clone(),
            1,
        )
        .unwrap()
    }

    fn bool_quadratic() -> FnTable {
        catalog::get_function("bool_quadratic", field(2, 1), &CatalogParams::with_d(4)).unwrap()
    }

    /// Independent oracle: sum of complex exponentials term by term.
    fn complex_oracle(f: &FnTable, u: FieldElement, m: usize) -> (f64, f64) {
        let fl = f.field();
        let p = f64::from(fl.p());
        let (mut re, mut im) = (0.0, 0.0);
        for x in 0..f.space().size() {
            let mut y = f.at(x);
            for i in 0..f.dim() {
                y = fl.sub(y, fl.mul(f.space().coord(x, i), f.space().coord(m, i)));
            }
            // trace through Frobenius powers, not the table
            let mut t = FieldElement::ZERO;
            let mut z = fl.mul(u, y);
            for _ in 0..fl.ell() {
                t = fl.add(t, z);
                z = fl.pow(z, u64::from(fl.p()));
            }
            let th = 2.0 * core::f64::consts::PI * f64::from(t.0) / p;
            re += libm::cos(th);
            im += libm::sin(th);
        }
        (re, im)
    }

    #[test]
    fn walsh_exact_examples() {
        let f5 = field(5, 1);
        let sq = poly(&f5, &[0, 0, 1]);
        let s = walsh_exact(&sq, FieldElement(1), &Point::new(vec![FieldElement(0)])).unwrap();
        assert_eq!(s, CycInt::from_histogram(&[1, 2, 0, 0, 2]));
        assert_eq!(s.abs_sq().as_integer(), Some(5));

        let zero = poly(&f5, &[]);
        let s = walsh_exact(&zero, FieldElement(3), &Point::new(vec![FieldElement(0)])).unwrap();
        assert_eq!(s.as_integer(), Some(5));

        let id = poly(&f5, &[0, 1]);
        let s = walsh_exact(&id, FieldElement(1), &Point::new(vec![FieldElement(1)])).unwrap();
        assert_eq!(s.as_integer(), Some(5));

        assert_eq!(
            walsh_exact(&id, FieldElement(0), &Point::new(vec![FieldElement(1)])),
            Err(Error::TrivialCharacter)
        );
    }

    #[test]
    fn character_is_additive() {
        for (p, ell) in [(2, 3), (3, 2), (3, 4), (5, 2), (7, 1)] {
            let fl = field(p, ell);
            for u in 1..fl.q() {
                let chi = Character::new(FieldElement(u)).unwrap();
                let nontrivial = fl.elements().any(|y| chi.exponent(&fl, y) != 0);
                assert!(nontrivial);
                for y in fl.elements() {
                    for z in fl.elements() {
                        let lhs = chi.exponent(&fl, fl.add(y, z));
                        assert_eq!(lhs, (chi.exponent(&fl, y) + chi.exponent(&fl, z)) % p);
                    }
                }
            }
        }
    }

    #[test]
    fn exact_spectrum_matches_histogram_and_oracle() {
        for (p, ell, d) in [
            (5, 1, 1),
            (3, 2, 1),
            (3, 1, 2),
            (2, 2, 2),
            (7, 1, 1),
            (5, 1, 2),
        ] {
            let fl = field(p, ell);
            let space = Space::new(fl.clone(), d).unwrap();
            let t = catalog::random_function(&space, 11);
            for u in 1..fl.q() {
                let u = FieldElement(u);
                let spec = exact_spectrum(&t, u).unwrap();
                for (m, s) in spec.iter().enumerate() {
                    assert_eq!(*s, walsh_exact_index(&t, Character::new(u).unwrap(), m));
                    let (re, im) = s.to_complex();
                    let (ore, oim) = complex_oracle(&t, u, m);
                    assert!((re - ore).abs() < 1e-9 && (im - oim).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn bent_examples() {
        let f5 = field(5, 1);
        assert_eq!(is_bent_exact(&poly(&f5, &[0, 0, 1])), BentVerdict::Bent);
        assert_eq!(
            is_bent_exact(&poly(&f5, &[0, 1])),
            BentVerdict::NotBent {
                u: FieldElement(1),
                m: 1,
                abs_sq: CycInt::from_int(5, 25)
            }
        );
        assert_eq!(is_bent_exact(&bool_quadratic()), BentVerdict::Bent);
    }

    #[test]
    fn fast_examples() {
        let f5 = field(5, 1);
        let mags = walsh_fast_all(&poly(&f5, &[0, 0, 1]), FieldElement(1)).unwrap();
        assert!(mags.iter().all(|&m| (m - 5f64.sqrt()).abs() < 1e-9));

        let f2 = field(2, 1);
        let zero = build_function(&FnSpec::Monomials(vec![]), f2.clone(), 4).unwrap();
        let mags = walsh_fast_all(&zero, FieldElement(1)).unwrap();
        assert_eq!(mags[0], 16.0);
        assert!(mags[1..].iter().all(|&m| m == 0.0));

        let xy = build_function(
            &FnSpec::Monomials(vec![(FieldElement(1), vec![1, 1])]),
            f2,
            2,
        )
        .unwrap();
        assert_eq!(walsh_fast_all(&xy, FieldElement(1)).unwrap(), vec![2.0; 4]);
        assert_eq!(
            walsh_fast_all(&xy, FieldElement(0)),
            Err(Error::TrivialCharacter)
        );
    }

    #[test]
    fn crosscheck_examples() {
        let f5 = field(5, 1);
        let c = crosscheck_pn_bent(&poly(&f5, &[0, 0, 1])).unwrap();
        assert!(c.pn.is_pn() && c.bent.is_bent() && c.agree);
        let c = crosscheck_pn_bent(&poly(&f5, &[0, 0, 0, 1])).unwrap();
        assert!(!c.pn.is_pn() && !c.bent.is_bent() && c.agree);
        let c = crosscheck_pn_bent(&poly(&field(3, 2), &[0, 0, 1])).unwrap();
        assert!(c.pn.is_pn() && c.bent.is_bent() && c.agree);
        assert_eq!(
            crosscheck_pn_bent(&bool_quadratic()),
            Err(Error::EvenCharacteristic)
        );
    }

    #[test]
    fn parseval_small() {
        for (p, ell, d) in [(5, 1, 2), (3, 2, 1), (2, 1, 5), (7, 1, 1)] {
            let fl = field(p, ell);
            let space = Space::new(fl.clone(), d).unwrap();
            let t = catalog::random_function(&space, 3);
            let n = space.size() as i128;
            for u in 1..fl.q() {
                let spec = exact_spectrum(&t, FieldElement(u)).unwrap();
                assert_eq!(parseval_sum(&spec).as_integer(), Some(n * n));
            }
        }
    }

    #[test]
    fn fast_report_spot_checks() {
        let fl = field(3, 2);
        let space = Space::new(fl, 2).unwrap();
        let t = catalog::random_function(&space, 5);
        let r = spectrum_report(&t, FieldElement(2), SpectrumMode::Fast { stride: 10 }).unwrap();
        assert!(r.spot_check_failures.is_empty());
        assert_eq!(r.records.iter().filter(|r| r.abs_sq.is_some()).count(), 9);
        let e = spectrum_report(&t, FieldElement(2), SpectrumMode::Exact).unwrap();
        for (a, b) in r.records.iter().zip(&e.records) {
            assert!(fast_agrees(a.magnitude, b.abs_sq.as_ref().unwrap()));
        }
    }
}
