//! Dense function tables `F_q^d -> F_q` and the difference-operator
//! primitives built on them.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{self, CatalogParams};
use crate::field::{Field, FieldElement};
use crate::par;
use crate::space::{Point, Space};
use crate::{Error, Result};

/// A function `F_q^d -> F_q` stored by value at every point index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnTable {
    space: Space,
    values: Vec<FieldElement>,
}

/// How to produce an [`FnTable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnSpec {
    /// Values in point-index order.
    Table(Vec<FieldElement>),
    /// `c_0 + c_1 x + c_2 x^2 + ..` (d = 1).
    Univariate(Vec<FieldElement>),
    /// `sum c * prod x_i^(e_i)`.
    Monomials(Vec<(FieldElement, Vec<u64>)>),
    Catalog {
        name: alloc::string::String,
        params: CatalogParams,
    },
}

/// A value hit more often than a uniform distribution allows under
/// `Delta_{f,a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Point index of the shift.
    pub a: usize,
    pub value: FieldElement,
    pub count: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PnVerdict {
    Pn,
    NotPn(Witness),
}

impl PnVerdict {
    pub fn is_pn(&self) -> bool {
        matches!(self, PnVerdict::Pn)
    }
}

pub fn build_function(spec: &FnSpec, field: Arc<Field>, d: usize) -> Result<FnTable> {
    let space = Space::new(field, d)?;
    let f = space.field().clone();
    let n = space.size();
    match spec {
        FnSpec::Table(values) => FnTable::new(space, values.clone()),
        FnSpec::Univariate(coeffs) => {
            if d != 1 {
                return Err(Error::SpecDimensionMismatch);
            }
            check_elements(&f, coeffs)?;
            let values = (0..n as u32)
                .map(|x| {
                    coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                        f.add(f.mul(acc, FieldElement(x)), c)
                    })
                })
                .collect();
            Ok(FnTable { space, values })
        }
        FnSpec::Monomials(terms) => {
            if terms.iter().any(|(_, e)| e.len() != d) {
                return Err(Error::SpecDimensionMismatch);
            }
            check_elements(&f, &terms.iter().map(|t| t.0).collect::<Vec<_>>())?;
            let values = (0..n)
                .map(|x| {
                    terms.iter().fold(FieldElement::ZERO, |acc, (c, exps)| {
                        let term = exps
                            .iter()
                            .enumerate()
                            .fold(*c, |t, (i, &e)| f.mul(t, f.pow(space.coord(x, i), e)));
                        f.add(acc, term)
                    })
                })
                .collect();
            Ok(FnTable { space, values })
        }
        FnSpec::Catalog { name, params } => {
            if params.d.is_some_and(|pd| pd != d) {
                return Err(Error::SpecDimensionMismatch);
            }
            let params = CatalogParams {
                d: Some(d),
                ..params.clone()
            };
            catalog::get_function(name, space.field().clone(), &params)
        }
    }
}

fn check_elements(field: &Field, els: &[FieldElement]) -> Result<()> {
    match els.iter().find(|e| e.0 >= field.q()) {
        Some(e) => Err(Error::IndexOutOfRange {
            index: e.0 as usize,
            bound: field.q() as usize,
        }),
        None => Ok(()),
    }
}

impl FnTable {
    pub fn new(space: Space, values: Vec<FieldElement>) -> Result<FnTable> {
        if values.len() != space.size() {
            return Err(Error::DimensionMismatch {
                expected: space.size(),
                got: values.len(),
            });
        }
        check_elements(space.field(), &values)?;
        Ok(FnTable { space, values })
    }

    pub fn from_fn(space: Space, f: impl Fn(usize) -> FieldElement) -> FnTable {
        let values = (0..space.size()).map(f).collect();
        FnTable { space, values }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn field(&self) -> &Arc<Field> {
        self.space.field()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    #[inline]
    pub fn at(&self, x: usize) -> FieldElement {
        self.values[x]
    }

    pub fn eval(&self, x: &Point) -> Result<FieldElement> {
        Ok(self.values[self.space.index(x)?])
    }

    fn same_space(&self, other: &Space) -> Result<()> {
        if **self.space.field() != **other.field() {
            Err(Error::FieldMismatch)
        } else if self.space.dim() != other.dim() {
            Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                got: other.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// `x -> f(x + a) - f(x)` for the shift with point index `a`.
    pub fn delta(&self, a: usize) -> FnTable {
        let f = self.field();
        let values = self
            .space
            .translates(a)
            .zip(&self.values)
            .map(|(y, &v)| f.sub(self.values[y], v))
            .collect();
        FnTable {
            space: self.space.clone(),
            values,
        }
    }

    /// `Delta_{f,a}`. The zero shift is allowed and yields the zero table.
    pub fn delta_table(&self, a: &Point) -> Result<FnTable> {
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: a.dim(),
            });
        }
        if a.coords.iter().any(|c| c.0 >= self.field().q()) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.delta(self.space.index(a)?))
    }

    /// Preimage counts of `Delta_{f,a}`, indexed by value.
    pub fn delta_counts(&self, a: usize) -> Vec<usize> {
        let f = self.field();
        let mut counts = vec![0usize; f.q() as usize];
        for (y, &fx) in self.space.translates(a).zip(&self.values) {
            counts[f.sub(self.values[y], fx).0 as usize] += 1;
        }
        counts
    }

    /// PN check over every nonzero shift. On failure the witness is the
    /// least shift index, then the least value hit more than `q^(d-1)` times.
    pub fn is_pn(&self) -> PnVerdict {
        let expected = self.space.size() / self.field().q() as usize;
        let w = par::find_map_first(1..self.space.size(), |a| {
            let counts = self.delta_counts(a);
            counts.iter().position(|&c| c > expected).map(|v| Witness {
                a,
                value: FieldElement(v as u32),
                count: counts[v],
            })
        });
        match w {
            Some(w) => PnVerdict::NotPn(w),
            None => PnVerdict::Pn,
        }
    }

    pub fn hamming_distance(&self, other: &FnTable) -> Result<usize> {
        self.same_space(&other.space)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count())
    }

    pub fn image_size(&self) -> usize {
        let mut seen = vec![false; self.field().q() as usize];
        for v in &self.values {
            seen[v.0 as usize] = true;
        }
        seen.into_iter().filter(|&b| b).count()
    }

    /// `x -> f(x + s) + t`.
    pub fn translate(&self, s: &Point, t: FieldElement) -> Result<FnTable> {
        let s = self.space.index(s)?;
        if t.0 >= self.field().q() {
            return Err(Error::FieldMismatch);
        }
        Ok(self.translate_index(s, t))
    }

    pub(crate) fn translate_index(&self, s: usize, t: FieldElement) -> FnTable {
        let f = self.field();
        let values = self
            .space
            .translates(s)
            .map(|y| f.add(self.values[y], t))
            .collect();
        FnTable {
            space: self.space.clone(),
            values,
        }
    }

    /// Copy of the table with the value at `x` replaced.
    pub fn with_value(&self, x: usize, v: FieldElement) -> FnTable {
        let mut values = self.values.clone();
        values[x] = v;
        FnTable {
            space: self.space.clone(),
            values,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn field(p: u32, ell: u32) -> Arc<Field> {
        Arc::new(Field::new(p, ell, None).unwrap())
    }

    fn poly(f: &Arc<Field>, c: &[u32]) -> FnTable {
        let spec = FnSpec::Univariate(c.iter().map(|&x| FieldElement(x)).collect());
        build_function(&spec, f.clone(), 1).unwrap()
    }

    fn idx(t: &FnTable) -> Vec<u32> {
        t.values().iter().map(|v| v.0).collect()
    }

    fn pt(v: &[u32]) -> Point {
        Point::new(v.iter().map(|&c| FieldElement(c)).collect())
    }

    #[test]
    fn build_examples() {
        let f5 = field(5, 1);
        assert_eq!(idx(&poly(&f5, &[0, 0, 1])), vec![0, 1, 4, 4, 1]);
        assert_eq!(idx(&poly(&f5, &[0, 0, 0, 1])), vec![0, 1, 3, 2, 4]);
        let zero = build_function(&FnSpec::Monomials(vec![]), f5.clone(), 2).unwrap();
        assert!(zero.values().iter().all(|v| v.is_zero()));
        assert_eq!(
            build_function(&FnSpec::Univariate(vec![]), f5.clone(), 2),
            Err(Error::SpecDimensionMismatch)
        );
        assert!(matches!(
            build_function(&FnSpec::Table(vec![FieldElement(0); 4]), f5, 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn monomials_match_univariate() {
        let f9 = field(3, 2);
        let a = poly(&f9, &[1, 0, 5]);
        let b = build_function(
            &FnSpec::Monomials(vec![(FieldElement(1), vec![0]), (FieldElement(5), vec![2])]),
            f9,
            1,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn delta_examples() {
        let f5 = field(5, 1);
        let sq = poly(&f5, &[0, 0, 1]);
        assert_eq!(
            idx(&sq.delta_table(&pt(&[1])).unwrap()),
            vec![1, 3, 0, 2, 4]
        );
        assert!(sq
            .delta_table(&pt(&[0]))
            .unwrap()
            .values()
            .iter()
            .all(|v| v.is_zero()));
        let cube = poly(&f5, &[0, 0, 0, 1]);
        assert_eq!(
            idx(&cube.delta_table(&pt(&[1])).unwrap()),
            vec![1, 2, 4, 2, 1]
        );
    }

    #[test]
    fn delta_matches_recomputation() {
        let f = field(5, 1);
        let space = Space::new(f.clone(), 2).unwrap();
        let t = catalog::random_function(&space, 7);
        for a in 0..space.size() {
            let d = t.delta_table(&space.point(a).unwrap()).unwrap();
            for x in 0..space.size() {
                let px = space.point(x).unwrap();
                let pa = space.point(a).unwrap();
                let sum = Point::new(
                    px.coords
                        .iter()
                        .zip(&pa.coords)
                        .map(|(&u, &v)| f.add(u, v))
                        .collect(),
                );
                assert_eq!(d.at(x), f.sub(t.eval(&sum).unwrap(), t.at(x)));
            }
        }
    }

    #[test]
    fn pn_examples() {
        let f5 = field(5, 1);
        assert_eq!(poly(&f5, &[0, 0, 1]).is_pn(), PnVerdict::Pn);
        assert_eq!(
            poly(&f5, &[0, 0, 0, 1]).is_pn(),
            PnVerdict::NotPn(Witness {
                a: 1,
                value: FieldElement(1),
                count: 2
            })
        );
        let xy = build_function(
            &FnSpec::Monomials(vec![(FieldElement(1), vec![1, 1])]),
            f5,
            2,
        )
        .unwrap();
        assert_eq!(xy.is_pn(), PnVerdict::Pn);
    }

    #[test]
    fn distance_and_image() {
        let f5 = field(5, 1);
        let sq = poly(&f5, &[0, 0, 1]);
        assert_eq!(sq.hamming_distance(&sq).unwrap(), 0);
        assert_eq!(sq.hamming_distance(&poly(&f5, &[0, 0, 2])).unwrap(), 4);
        assert_eq!(sq.hamming_distance(&poly(&f5, &[0, 1, 1])).unwrap(), 4);
        assert_eq!(sq.image_size(), 3);
        assert_eq!(poly(&f5, &[3]).image_size(), 1);
        let f9 = field(3, 2);
        assert_eq!(poly(&f9, &[0, 1]).image_size(), 9);
        assert_eq!(
            sq.hamming_distance(&poly(&field(7, 1), &[0, 0, 1])),
            Err(Error::FieldMismatch)
        );
    }

    #[test]
    fn translate_examples() {
        let f5 = field(5, 1);
        let sq = poly(&f5, &[0, 0, 1]);
        assert_eq!(
            idx(&sq.translate(&pt(&[1]), FieldElement(0)).unwrap()),
            vec![1, 4, 4, 1, 0]
        );
        assert_eq!(sq.translate(&pt(&[0]), FieldElement(0)).unwrap(), sq);
        assert_eq!(
            idx(&sq.translate(&pt(&[0]), FieldElement(2)).unwrap()),
            vec![2, 3, 1, 1, 3]
        );
    }

    #[test]
    fn pn_invariant_under_translation() {
        for (p, ell) in [(5, 1), (3, 2), (7, 1), (5, 2)] {
            let f = field(p, ell);
            for t in [
                poly(&f, &[0, 0, 1]),
                poly(&f, &[0, 0, 0, 1]),
                poly(&f, &[1, 2, 0, 1, 1]),
            ] {
                let v = t.is_pn().is_pn();
                for s in 0..f.q() as usize {
                    for c in f.elements() {
                        assert_eq!(t.translate_index(s, c).is_pn().is_pn(), v);
                    }
                }
            }
        }
    }

    #[test]
    fn planar_functions_are_bijective_and_have_large_image() {
        for (p, ell) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3)] {
            let f = field(p, ell);
            let q = f.q();
            for e in 1..q as u64 {
                let spec = FnSpec::Monomials(vec![(FieldElement(1), vec![e])]);
                let t = build_function(&spec, f.clone(), 1).unwrap();
                if t.is_pn().is_pn() {
                    for a in 1..q as usize {
                        assert!(t.delta_counts(a).iter().all(|&c| c == 1));
                    }
                    assert!(2 * t.image_size() >= q as usize + 1);
                }
            }
        }
    }
}
