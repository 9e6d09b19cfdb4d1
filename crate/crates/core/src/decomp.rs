//! Rebuilding every difference operator of `f` from the `d * ell`
//! operators at an F_p-basis.
//!
//! For `a = sum k_i g_i` with `0 <= k_i < p`, put `b_1 = 0` and
//! `b_{i+1} = b_i + k_i g_i`. Then
//!
//! ```text
//! Delta_{f,a}(x) = sum_i sum_{j=0}^{k_i - 1} Delta_{f,g_i}(x + b_i + j g_i)
//! ```
//!
//! which telescopes to `f(x + a) - f(x)`. Starting the inner index at 1
//! instead of 0 (the [`IndexConvention::ShiftedByOne`] variant) breaks
//! already at `k = 1`; it is kept so the suite can show that it fails.

use alloc::vec::Vec;

use crate::field::FieldElement;
use crate::funcs::FnTable;
use crate::space::SpaceBasis;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexConvention {
    /// Inner shifts `j g_i` for `j = 0..k_i`.
    Telescoping,
    /// Inner shifts `j g_i` for `j = 1..=k_i`.
    ShiftedByOne,
}

impl IndexConvention {
    fn steps(self, k: u32) -> core::ops::Range<u32> {
        match self {
            IndexConvention::Telescoping => 0..k,
            IndexConvention::ShiftedByOne => 1..k + 1,
        }
    }
}

/// `Delta_{f,g_i}` for every basis vector `g_i`.
#[derive(Clone, Debug)]
pub struct BaseDeltaSet {
    basis: SpaceBasis,
    tables: Vec<FnTable>,
}

impl BaseDeltaSet {
    pub fn basis(&self) -> &SpaceBasis {
        &self.basis
    }

    pub fn tables(&self) -> &[FnTable] {
        &self.tables
    }
}

/// Digits of a shift and the offsets at which each block of base
/// operators is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompPlan {
    pub digits: Vec<u32>,
    /// `offsets[0] = 0`, `offsets[i+1] = offsets[i] + k_i g_i`.
    pub offsets: Vec<usize>,
}

impl DecompPlan {
    pub fn new(basis: &SpaceBasis, a: usize) -> DecompPlan {
        let space = basis.space();
        let digits = basis.decompose(a);
        let mut offsets = Vec::with_capacity(digits.len());
        let mut b = 0;
        for (&k, &g) in digits.iter().zip(basis.vectors()) {
            offsets.push(b);
            b = space.add(b, space.scale_int(k, g));
        }
        DecompPlan { digits, offsets }
    }
}

pub fn base_deltas(f: &FnTable, basis: &SpaceBasis) -> Result<BaseDeltaSet> {
    if basis.space() != f.space() {
        return Err(Error::NotABasis);
    }
    let tables = basis.vectors().iter().map(|&g| f.delta(g)).collect();
    Ok(BaseDeltaSet {
        basis: basis.clone(),
        tables,
    })
}

/// `Delta_{f,a}` assembled from shifted base tables only.
pub fn reconstruct_delta(set: &BaseDeltaSet, a: usize) -> FnTable {
    reconstruct_delta_with(set, a, IndexConvention::Telescoping)
}

pub fn reconstruct_delta_with(set: &BaseDeltaSet, a: usize, conv: IndexConvention) -> FnTable {
    let space = set.basis.space();
    let field = space.field();
    let plan = DecompPlan::new(&set.basis, a);
    let mut shifts: Vec<(usize, usize)> = Vec::new(); // (table, total shift)
    for (i, (&k, &g)) in plan.digits.iter().zip(set.basis.vectors()).enumerate() {
        for j in conv.steps(k) {
            shifts.push((i, space.add(plan.offsets[i], space.scale_int(j, g))));
        }
    }
    let mut values = alloc::vec![FieldElement::ZERO; space.size()];
    for &(i, s) in &shifts {
        let t = set.tables[i].values();
        for (acc, y) in values.iter_mut().zip(space.translates(s)) {
            *acc = field.add(*acc, t[y]);
        }
    }
    FnTable::new(space.clone(), values).expect("sums of field elements")
}

/// One of the identities the reconstruction rests on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `Delta_{b+c}(x) = Delta_c(x + b) + Delta_b(x)`.
    Combine { b: usize, c: usize },
    /// `Delta_{kb}(x) = sum_j Delta_b(x + j b)`.
    Multiple {
        b: usize,
        k: u32,
        convention: IndexConvention,
    },
    /// `Delta_{c_1 + .. + c_n}(x) = sum_i Delta_{c_i}(x + c_1 + .. + c_{i-1})`.
    Chain { parts: Vec<usize> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityOutcome {
    Pass,
    /// Least point index where the two sides differ.
    Fail {
        x: usize,
    },
}

/// Checks an identity pointwise over every `x`, using `f` directly.
pub fn identity_suite(f: &FnTable, identity: &Identity) -> IdentityOutcome {
    let space = f.space();
    let field = f.field();
    let (lhs_shift, terms): (usize, Vec<(usize, usize)>) = match identity {
        Identity::Combine { b, c } => (space.add(*b, *c), alloc::vec![(*c, *b), (*b, 0)]),
        Identity::Multiple { b, k, convention } => (
            space.scale_int(*k, *b),
            convention
                .steps(*k)
                .map(|j| (*b, space.scale_int(j, *b)))
                .collect(),
        ),
        Identity::Chain { parts } => {
            let mut offset = 0;
            let mut terms = Vec::new();
            for &c in parts {
                terms.push((c, offset));
                offset = space.add(offset, c);
            }
            (offset, terms)
        }
    };
    let lhs = f.delta(lhs_shift);
    let deltas: Vec<(FnTable, usize)> = terms.iter().map(|&(s, off)| (f.delta(s), off)).collect();
    for x in 0..space.size() {
        let rhs = deltas.iter().fold(FieldElement::ZERO, |acc, (t, off)| {
            field.add(acc, t.at(space.add(x, *off)))
        });
        if rhs != lhs.at(x) {
            return IdentityOutcome::Fail { x };
        }
    }
    IdentityOutcome::Pass
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompCertificate {
    pub basis: Vec<usize>,
    pub shifts_checked: usize,
    /// Least shift whose reconstruction differs from the direct operator.
    pub failing_a: Option<usize>,
}

impl DecompCertificate {
    pub fn pass(&self) -> bool {
        self.failing_a.is_none()
    }
}

/// Compares reconstruction with the direct operator for every nonzero shift.
pub fn verify_decomposition(f: &FnTable, basis: &SpaceBasis) -> Result<DecompCertificate> {
    verify_decomposition_with(f, basis, IndexConvention::Telescoping)
}

pub fn verify_decomposition_with(
    f: &FnTable,
    basis: &SpaceBasis,
    conv: IndexConvention,
) -> Result<DecompCertificate> {
    let set = base_deltas(f, basis)?;
    let n = f.space().size();
    let mut walk = Walk {
        set: &set,
        f,
        conv,
        digits: alloc::vec![0; basis.vectors().len()],
        failing: None,
    };
    let zero = alloc::vec![FieldElement::ZERO; n];
    walk.descend(0, 0, &zero);
    Ok(DecompCertificate {
        basis: basis.vectors().to_vec(),
        shifts_checked: n - 1,
        failing_a: walk.failing,
    })
}

/// Visits every coefficient vector `k`, each child raising the highest
/// nonzero digit by one. Raising `k_i` at the top appends the single term
/// `j = k_i - 1` (or `k_i`) of block `i` to the parent's sum, so each
/// reconstruction costs one pass over a shifted base table.
struct Walk<'a> {
    set: &'a BaseDeltaSet,
    f: &'a FnTable,
    conv: IndexConvention,
    digits: Vec<u32>,
    failing: Option<usize>,
}

impl Walk<'_> {
    fn descend(&mut self, top: usize, a: usize, sum: &[FieldElement]) {
        let space = self.f.space();
        let field = space.field();
        let p = field.p();
        let values = self.f.values();
        for i in top..self.digits.len() {
            if self.digits[i] == p - 1 {
                continue;
            }
            let g = self.set.basis.vectors()[i];
            self.digits[i] += 1;
            let k = self.digits[i];
            // offset b_i is a minus the k - 1 copies of g already in it
            let b = space.sub(a, space.scale_int(k - 1, g));
            let j = match self.conv {
                IndexConvention::Telescoping => k - 1,
                IndexConvention::ShiftedByOne => k,
            };
            let s = space.add(b, space.scale_int(j, g));
            let t = self.set.tables[i].values();
            let next: Vec<FieldElement> = sum
                .iter()
                .zip(space.translates(s))
                .map(|(&acc, y)| field.add(acc, t[y]))
                .collect();
            let a_next = space.add(a, g);
            let agrees = space
                .translates(a_next)
                .zip(values)
                .zip(&next)
                .all(|((y, &fx), &r)| field.sub(values[y], fx) == r);
            if !agrees && self.failing.is_none_or(|w| a_next < w) {
                self.failing = Some(a_next);
            }
            self.descend(i, a_next, &next);
            self.digits[i] -= 1;
        }
    }
}
