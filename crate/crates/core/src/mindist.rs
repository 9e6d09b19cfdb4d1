//! Distance-one neighbours of planar functions.
//!
//! A planar `f` on `F_q` is edited at a single point `w` to a new value
//! `v`; the sweep shows each such `g` fails planarity by exhibiting a shift
//! `a` and a value hit more than once by `Delta_{g,a}`. The base table is
//! shared; each neighbour is evaluated through the one edited entry rather
//! than materialized.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::FieldElement;
use crate::funcs::{FnTable, Witness};
use crate::par;
use crate::{Error, Result};

/// `g` with `g(w) = v` and `g = f` elsewhere.
pub fn perturb(f: &FnTable, w: usize, v: FieldElement) -> Result<FnTable> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    f.field().element(v.0)?;
    if w >= f.space().size() {
        return Err(Error::IndexOutOfRange {
            index: w,
            bound: f.space().size(),
        });
    }
    if f.at(w) == v {
        return Err(Error::NoOpPerturbation);
    }
    Ok(f.with_value(w, v))
}

fn witness_for(f: &FnTable, value_at: impl Fn(usize) -> FieldElement) -> Option<Witness> {
    let field = f.field();
    let q = field.q() as usize;
    let mut counts = vec![0usize; q];
    for a in 1..q {
        counts.iter_mut().for_each(|c| *c = 0);
        for x in 0..q {
            let y = f.space().add(x, a);
            counts[field.sub(value_at(y), value_at(x)).0 as usize] += 1;
        }
        if let Some(v) = counts.iter().position(|&c| c > 1) {
            return Some(Witness {
                a,
                value: FieldElement(v as u32),
                count: counts[v],
            });
        }
    }
    None
}

/// Least `(a, value)` where `Delta_{g,a}` is not a bijection, or `None`
/// when `g` is planar.
pub fn planarity_witness(g: &FnTable) -> Result<Option<Witness>> {
    if g.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: g.dim(),
        });
    }
    Ok(witness_for(g, |x| g.at(x)))
}

/// Recounts a witness against a fresh scan of `Delta_{g,a}`.
pub fn witness_holds(g: &FnTable, w: &Witness) -> bool {
    let field = g.field();
    let q = field.q() as usize;
    let count = (0..q)
        .filter(|&x| field.sub(g.at(g.space().add(x, w.a)), g.at(x)) == w.value)
        .count();
    count == w.count && count != 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbationOutcome {
    NonPlanar(Witness),
    /// A planar distance-one neighbour; never expected for `p > 3`.
    Planar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PerturbationEntry {
    pub w: usize,
    pub v: FieldElement,
    pub outcome: PerturbationOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationReport {
    /// Entries ordered by `(w, v)`.
    pub entries: Vec<PerturbationEntry>,
    /// `p > 3`; outside that range the sweep runs but claims nothing.
    pub bound_applies: bool,
}

impl PerturbationReport {
    pub fn planar_found(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.outcome == PerturbationOutcome::Planar)
            .count()
    }
}

/// Tests every `(w, v)` with `v != f(w)`.
pub fn perturbation_sweep(f: &FnTable) -> Result<PerturbationReport> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    if !f.is_pn().is_pn() {
        return Err(Error::NotPlanarBase);
    }
    let q = f.field().q() as usize;
    let per_w: Vec<Vec<PerturbationEntry>> = par::map_collect(0..q, |w| {
        (0..q as u32)
            .map(FieldElement)
            .filter(|&v| v != f.at(w))
            .map(|v| {
                let outcome = match witness_for(f, |x| if x == w { v } else { f.at(x) }) {
                    Some(wit) => PerturbationOutcome::NonPlanar(wit),
                    None => PerturbationOutcome::Planar,
                };
                PerturbationEntry { w, v, outcome }
            })
            .collect()
    });
    Ok(PerturbationReport {
        entries: per_w.into_iter().flatten().collect(),
        bound_applies: f.field().p() > 3,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    pub distances: Vec<Vec<usize>>,
    /// Pairs `(i, j)`, `i < j`, of identical tables.
    pub duplicates: Vec<(usize, usize)>,
    /// Minimum over pairs of distinct functions.
    pub min_distance: Option<usize>,
}

pub fn pairwise_min_distance(fns: &[FnTable]) -> Result<DistanceMatrix> {
    for (i, f) in fns.iter().enumerate() {
        if f.dim() != 1 || !f.is_pn().is_pn() {
            return Err(Error::NotPlanarEntry(i));
        }
    }
    let n = fns.len();
    let mut distances = vec![vec![0usize; n]; n];
    let mut duplicates = Vec::new();
    let mut min_distance: Option<usize> = None;
    for i in 0..n {
        for j in i + 1..n {
            let d = fns[i].hamming_distance(&fns[j])?;
            distances[i][j] = d;
            distances[j][i] = d;
            if d == 0 {
                duplicates.push((i, j));
            } else {
                min_distance = Some(min_distance.map_or(d, |m| m.min(d)));
            }
        }
    }
    Ok(DistanceMatrix {
        distances,
        duplicates,
        min_distance,
    })
}
