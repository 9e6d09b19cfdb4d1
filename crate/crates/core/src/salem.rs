//! Indicator-function Fourier coefficients of point sets, per-instance
//! Salem constants, and the verifier for graphs of bent functions.
//!
//! All comparisons are made on squared, unnormalized sums
//! `|S(m)|^2 = |sum_{x in E} zeta^Tr(-x . m)|^2`, so the inequality
//! `|E^(m)| <= C q^-d |E|^(1/2)` becomes `|S(m)|^2 <= C^2 |E|` with no
//! floating point involved. The canonical character `u = 1` is used
//! throughout; any other `u` permutes the frequencies.

use alloc::vec;
use alloc::vec::Vec;

use crate::cyclotomic::CycInt;
use crate::field::FieldElement;
use crate::funcs::FnTable;
use crate::space::{Point, Space};
use crate::spectrum::{self, BentVerdict};
use crate::transform;
use crate::{Error, Result};

/// A subset of `F_q^d` as a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    space: Space,
    members: Vec<bool>,
    cardinality: usize,
}

impl PointSet {
    pub fn new(space: Space, members: Vec<bool>) -> Result<PointSet> {
        if members.len() != space.size() {
            return Err(Error::DimensionMismatch {
                expected: space.size(),
                got: members.len(),
            });
        }
        let cardinality = members.iter().filter(|&&b| b).count();
        Ok(PointSet {
            space,
            members,
            cardinality,
        })
    }

    pub fn from_indices(space: Space, points: impl IntoIterator<Item = usize>) -> Result<PointSet> {
        let mut members = vec![false; space.size()];
        for x in points {
            *members.get_mut(x).ok_or(Error::IndexOutOfRange {
                index: x,
                bound: space.size(),
            })? = true;
        }
        PointSet::new(space, members)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn cardinality(&self) -> usize {
        self.cardinality
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
    }
}

/// `{(x, f(x))}` in `F_q^(d+1)` for `f` on `F_q^d`; the value is the last
/// coordinate.
pub fn graph_of(f: &FnTable) -> Result<PointSet> {
    let space = Space::new(f.field().clone(), f.dim() + 1)?;
    let n = f.space().size();
    PointSet::from_indices(space, (0..n).map(|x| x + f.at(x).0 as usize * n))
}

/// Exact `|S(m)|^2` for one frequency.
pub fn indicator_ft_abs_sq(e: &PointSet, m: &Point) -> Result<CycInt> {
    let m = e.space.index(m)?;
    Ok(indicator_sum(e, m).abs_sq())
}

fn indicator_sum(e: &PointSet, m: usize) -> CycInt {
    let field = e.space.field();
    let mut counts = vec![0u64; field.p() as usize];
    for x in e.iter() {
        counts[field.trace(field.neg(e.space.dot_index(x, m))) as usize] += 1;
    }
    CycInt::from_histogram(&counts)
}

/// `S(m)` for every `m` through the exact transform.
pub fn indicator_spectrum(e: &PointSet) -> Vec<CycInt> {
    let p = e.space.field().p() as usize;
    let mut hist = vec![0u64; e.space.size() * p];
    for x in e.iter() {
        hist[x * p] = 1;
    }
    transform::exact_dft(&mut hist, p, e.space.fp_dim());
    transform::frequency_map(&e.space, FieldElement::ONE)
        .iter()
        .map(|&k| CycInt::from_histogram(&hist[k * p..][..p]))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SalemConstant {
    /// `max_{m != 0} |S(m)| / |E|^(1/2)`.
    pub constant: f64,
    pub argmax: usize,
    /// `(max |S(m)|^2, |E|)` when every `|S(m)|^2` is a rational integer,
    /// so `constant^2` is this exact ratio.
    pub exact_sq_ratio: Option<(i128, usize)>,
}

fn constant_from_abs_sq(e: &PointSet, abs_sq: &[CycInt]) -> Result<SalemConstant> {
    if e.cardinality == 0 {
        return Err(Error::EmptySet);
    }
    let mut best = (f64::MIN, 0usize);
    for (m, a) in abs_sq.iter().enumerate().skip(1) {
        let v = spectrum::magnitude_from_abs_sq(a);
        if v > best.0 {
            best = (v, m);
        }
    }
    let exact_sq_ratio = abs_sq[1..]
        .iter()
        .map(CycInt::as_integer)
        .try_fold(0i128, |acc, v| v.map(|v| acc.max(v)))
        .map(|max| (max, e.cardinality));
    // a single point space has no nonzero frequency
    let best = if abs_sq.len() > 1 { best } else { (0.0, 0) };
    Ok(SalemConstant {
        constant: best.0 / libm::sqrt(e.cardinality as f64),
        argmax: best.1,
        exact_sq_ratio,
    })
}

pub fn salem_constant(e: &PointSet) -> Result<SalemConstant> {
    if e.cardinality == 0 {
        return Err(Error::EmptySet);
    }
    let abs_sq: Vec<CycInt> = indicator_spectrum(e).iter().map(CycInt::abs_sq).collect();
    constant_from_abs_sq(e, &abs_sq)
}

/// Which branch of the argument a frequency falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    Origin,
    /// Last coordinate zero, rest not all zero: the sum vanishes.
    Case1,
    /// Last coordinate nonzero: the sum has the bent magnitude.
    Case2,
}

impl CaseTag {
    /// Tag of frequency `m` in a graph space, where `base = q^(d-1)` is the
    /// number of points whose last coordinate is zero.
    pub fn of(m: usize, base: usize) -> CaseTag {
        if m == 0 {
            CaseTag::Origin
        } else if m < base {
            CaseTag::Case1
        } else {
            CaseTag::Case2
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Origin => "m=0",
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SalemRecord {
    pub m: usize,
    pub case: CaseTag,
    pub abs_sq: CycInt,
    /// `|E|^2`, `0` or `q^(d-1)` according to `case`.
    pub expected: i128,
    pub magnitude: f64,
    /// `|S(m)| / |E|^(1/2)`.
    pub bound_ratio: f64,
}

impl SalemRecord {
    pub fn matches(&self) -> bool {
        self.abs_sq.as_integer() == Some(self.expected)
    }

    /// `|E^(m)| = q^-d |S(m)|`.
    pub fn normalized_magnitude(&self, space_size: usize) -> f64 {
        self.magnitude / space_size as f64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SalemReport {
    pub q: u32,
    /// Dimension of the ambient space the graph lives in.
    pub d: usize,
    pub cardinality: usize,
    pub records: Vec<SalemRecord>,
    pub constant: SalemConstant,
    /// Every record matched its case value and the constant is exactly 1.
    pub theorem1_pass: bool,
}

/// Checks that the graph of a bent `f` is Salem with constant exactly 1,
/// frequency by frequency, following the split on the last coordinate of
/// `m`.
pub fn verify_theorem1(f: &FnTable) -> Result<SalemReport> {
    if let BentVerdict::NotBent { .. } = spectrum::is_bent_exact(f) {
        return Err(Error::HypothesisFailed);
    }
    let e = graph_of(f)?;
    let space = &e.space;
    let d = space.dim();
    let card = e.cardinality as i128;
    let base = f.space().size(); // q^(d-1)
    let spectrum = indicator_spectrum(&e);
    let records: Vec<SalemRecord> = spectrum
        .iter()
        .enumerate()
        .map(|(m, s)| {
            let case = CaseTag::of(m, base);
            let expected = match case {
                CaseTag::Origin => card * card,
                CaseTag::Case1 => 0,
                CaseTag::Case2 => base as i128,
            };
            let abs_sq = s.abs_sq();
            let magnitude = spectrum::magnitude_from_abs_sq(&abs_sq);
            SalemRecord {
                m,
                case,
                abs_sq,
                expected,
                magnitude,
                bound_ratio: magnitude / libm::sqrt(e.cardinality as f64),
            }
        })
        .collect();
    let abs_sq: Vec<CycInt> = records.iter().map(|r| r.abs_sq.clone()).collect();
    let constant = constant_from_abs_sq(&e, &abs_sq)?;
    let theorem1_pass = records.iter().all(SalemRecord::matches)
        && constant
            .exact_sq_ratio
            .is_some_and(|(num, den)| num == den as i128);
    Ok(SalemReport {
        q: space.field().q(),
        d,
        cardinality: e.cardinality,
        records,
        constant,
        theorem1_pass,
    })
}
