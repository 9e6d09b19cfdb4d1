//! The space `F_q^d`: points, the inner product, and F_p-bases.
//!
//! Points are indexed little-endian over coordinates,
//! `index = sum index(x_i) q^i`. Since element indices are themselves
//! base-`p` digit strings, a point index written in base `p` lists all
//! `d * ell` F_p-coordinates of the point, coordinate 0 first.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::field::{Field, FieldElement};
use crate::linalg;
use crate::{Error, Result};

/// Largest number of points a [`Space`] may have.
pub const MAX_POINTS: u64 = 1 << 24;

/// An element of `F_q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub coords: Vec<FieldElement>,
}

impl Point {
    pub fn new(coords: Vec<FieldElement>) -> Point {
        Point { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// `F_q^d` together with index arithmetic on its points.
#[derive(Clone, Debug)]
pub struct Space {
    field: Arc<Field>,
    d: usize,
    size: usize,
    q: usize,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && *self.field == *other.field
    }
}

impl Eq for Space {}

impl Space {
    pub fn new(field: Arc<Field>, d: usize) -> Result<Space> {
        let q = field.q() as usize;
        let size = u32::try_from(d)
            .ok()
            .and_then(|d| (q as u64).checked_pow(d))
            .filter(|&n| d >= 1 && n <= MAX_POINTS)
            .ok_or(Error::UnsupportedSize)? as usize;
        Ok(Space { field, d, size, q })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// `q^d`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of F_p-coordinates, `d * ell`.
    pub fn fp_dim(&self) -> usize {
        self.d * self.field.ell() as usize
    }

    pub fn point(&self, index: usize) -> Result<Point> {
        if index >= self.size {
            return Err(Error::IndexOutOfRange {
                index,
                bound: self.size,
            });
        }
        Ok(Point::new(
            (0..self.d).map(|i| self.coord(index, i)).collect(),
        ))
    }

    pub fn index(&self, x: &Point) -> Result<usize> {
        if x.dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: x.dim(),
            });
        }
        let mut idx = 0usize;
        for c in x.coords.iter().rev() {
            if c.0 as usize >= self.q {
                return Err(Error::IndexOutOfRange {
                    index: c.0 as usize,
                    bound: self.q,
                });
            }
            idx = idx * self.q + c.0 as usize;
        }
        Ok(idx)
    }

    /// Coordinate `i` of the point with index `x`.
    #[inline]
    pub fn coord(&self, x: usize, i: usize) -> FieldElement {
        FieldElement(((x / self.q.pow(i as u32)) % self.q) as u32)
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        if self.field.p() == 2 {
            return x ^ y;
        }
        if self.d == 1 {
            return self
                .field
                .add(FieldElement(x as u32), FieldElement(y as u32))
                .0 as usize;
        }
        let (mut x, mut y) = (x, y);
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.d {
            let s = self.field.add(
                FieldElement((x % self.q) as u32),
                FieldElement((y % self.q) as u32),
            );
            out += s.0 as usize * w;
            x /= self.q;
            y /= self.q;
            w *= self.q;
        }
        out
    }

    /// `x + s` for `x = 0, 1, ..` in index order.
    pub fn translates(&self, s: usize) -> Translates {
        let p = self.field.p() as usize;
        let n = self.fp_dim();
        Translates {
            p,
            shift: self.fp_digits(s).into_iter().map(|c| c as usize).collect(),
            x: alloc::vec![0; n],
            weight: (0..n as u32).map(|i| p.pow(i)).collect(),
            next: s,
            left: self.size,
            xor: (p == 2).then_some((s, 0)),
        }
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        if self.field.p() == 2 {
            return x;
        }
        let mut x = x;
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.d {
            out += self.field.neg(FieldElement((x % self.q) as u32)).0 as usize * w;
            x /= self.q;
            w *= self.q;
        }
        out
    }

    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `k * x` for an integer scalar `k` (taken mod `p`).
    pub fn scale_int(&self, k: u32, x: usize) -> usize {
        let p = self.field.p() as usize;
        let k = k as usize % p;
        let mut x = x;
        let mut out = 0;
        let mut w = 1;
        for _ in 0..self.fp_dim() {
            out += (x % p) * k % p * w;
            x /= p;
            w *= p;
        }
        out
    }

    /// The F_p-coordinates of a point (base-`p` digits of its index).
    pub fn fp_digits(&self, x: usize) -> Vec<u32> {
        let p = self.field.p() as usize;
        let mut x = x;
        (0..self.fp_dim())
            .map(|_| {
                let d = (x % p) as u32;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_fp_digits(&self, digits: &[u32]) -> usize {
        let p = self.field.p() as usize;
        digits.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
    }

    /// `x . m = sum x_i m_i`.
    pub fn dot(&self, x: &Point, m: &Point) -> Result<FieldElement> {
        for v in [x, m] {
            if v.dim() != self.d {
                return Err(Error::DimensionMismatch {
                    expected: self.d,
                    got: v.dim(),
                });
            }
        }
        Ok(self.dot_unchecked(x, m))
    }

    pub(crate) fn dot_unchecked(&self, x: &Point, m: &Point) -> FieldElement {
        x.coords
            .iter()
            .zip(&m.coords)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| {
                self.field.add(acc, self.field.mul(a, b))
            })
    }

    /// `x . m` on point indices.
    pub fn dot_index(&self, x: usize, m: usize) -> FieldElement {
        (0..self.d).fold(FieldElement::ZERO, |acc, i| {
            self.field
                .add(acc, self.field.mul(self.coord(x, i), self.coord(m, i)))
        })
    }
}

/// Iterator behind [`Space::translates`]. Tracks the digits of `x` and
/// steps `x + s` by one digit increment at a time.
#[derive(Clone, Debug)]
pub struct Translates {
    p: usize,
    shift: Vec<usize>,
    x: Vec<usize>,
    weight: Vec<usize>,
    next: usize,
    left: usize,
    /// `(s, x)` in characteristic 2, where `x + s = x ^ s`.
    xor: Option<(usize, usize)>,
}

impl Iterator for Translates {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.left == 0 {
            return None;
        }
        self.left -= 1;
        if let Some((s, x)) = &mut self.xor {
            *x += 1;
            return Some((*x - 1) ^ *s);
        }
        let out = self.next;
        if self.left > 0 {
            let top = self.p - 1;
            for i in 0..self.x.len() {
                let w = self.weight[i];
                // digit i of x + s moves from (x_i + s_i) to (x_i + s_i + 1) mod p
                if (self.x[i] + self.shift[i]) % self.p == top {
                    self.next -= top * w;
                } else {
                    self.next += w;
                }
                if self.x[i] < top {
                    self.x[i] += 1;
                    break;
                }
                self.x[i] = 0;
            }
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.left, Some(self.left))
    }
}

impl ExactSizeIterator for Translates {}

/// A basis of `F_q^d` over `F_p`: `d * ell` points.
#[derive(Clone, Debug)]
pub struct SpaceBasis {
    space: Space,
    vectors: Vec<usize>,
    inverse: Vec<Vec<u32>>,
}

impl SpaceBasis {
    /// Validates that `vectors` are `d * ell` F_p-independent points.
    pub fn new(space: &Space, vectors: Vec<usize>) -> Result<SpaceBasis> {
        if vectors.len() != space.fp_dim() || vectors.iter().any(|&v| v >= space.size()) {
            return Err(Error::NotABasis);
        }
        let cols: Vec<Vec<u32>> = vectors.iter().map(|&v| space.fp_digits(v)).collect();
        let inverse = linalg::invert_columns(&cols, space.field().p()).ok_or(Error::NotABasis)?;
        Ok(SpaceBasis {
            space: space.clone(),
            vectors,
            inverse,
        })
    }

    /// `{beta_i e_j}` with `beta_i = t^i`, ordered `j` outer, `i` inner.
    pub fn standard(space: &Space) -> SpaceBasis {
        let p = space.field().p() as usize;
        let vectors = (0..space.fp_dim()).map(|k| p.pow(k as u32)).collect();
        SpaceBasis::new(space, vectors).expect("standard basis is a basis")
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn vectors(&self) -> &[usize] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Digits `k_i` in `[0, p)` with `a = sum k_i g_i`.
    pub fn decompose(&self, a: usize) -> Vec<u32> {
        linalg::mat_vec(
            &self.inverse,
            &self.space.fp_digits(a),
            self.space.field().p(),
        )
    }

    pub fn decompose_point(&self, a: &Point) -> Result<Vec<u32>> {
        Ok(self.decompose(self.space.index(a)?))
    }

    /// `sum k_i g_i`.
    pub fn compose(&self, digits: &[u32]) -> usize {
        digits.iter().zip(&self.vectors).fold(0, |acc, (&k, &g)| {
            self.space.add(acc, self.space.scale_int(k, g))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn space(p: u32, ell: u32, d: usize) -> Space {
        Space::new(Arc::new(Field::new(p, ell, None).unwrap()), d).unwrap()
    }

    fn pt(v: &[u32]) -> Point {
        Point::new(v.iter().map(|&c| FieldElement(c)).collect())
    }

    #[test]
    fn dot_examples() {
        let s = space(5, 1, 3);
        assert_eq!(
            s.dot(&pt(&[1, 2, 3]), &pt(&[2, 0, 1])).unwrap(),
            FieldElement(0)
        );
        assert_eq!(
            s.dot(&pt(&[1, 2, 3]), &pt(&[0, 0, 0])).unwrap(),
            FieldElement(0)
        );
        let s9 = space(3, 2, 1);
        assert_eq!(s9.dot(&pt(&[3]), &pt(&[3])).unwrap(), FieldElement(2));
        assert!(matches!(
            s.dot(&pt(&[1, 2]), &pt(&[1, 2, 3])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn standard_basis_examples() {
        let s = space(5, 1, 2);
        let b = SpaceBasis::standard(&s);
        let pts: Vec<_> = b.vectors().iter().map(|&v| s.point(v).unwrap()).collect();
        assert_eq!(pts, vec![pt(&[1, 0]), pt(&[0, 1])]);

        let s9 = space(3, 2, 1);
        assert_eq!(SpaceBasis::standard(&s9).vectors(), &[1, 3]);

        let s92 = space(3, 2, 2);
        let b = SpaceBasis::standard(&s92);
        let pts: Vec<_> = b.vectors().iter().map(|&v| s92.point(v).unwrap()).collect();
        assert_eq!(
            pts,
            vec![pt(&[1, 0]), pt(&[3, 0]), pt(&[0, 1]), pt(&[0, 3])]
        );
    }

    #[test]
    fn decompose_examples() {
        let s9 = space(3, 2, 1);
        let b = SpaceBasis::standard(&s9);
        assert_eq!(b.decompose_point(&pt(&[2 + 3])).unwrap(), vec![2, 1]);
        assert_eq!(b.decompose(0), vec![0, 0]);
        let s = space(5, 1, 2);
        assert_eq!(
            SpaceBasis::standard(&s)
                .decompose_point(&pt(&[3, 4]))
                .unwrap(),
            vec![3, 4]
        );
    }

    #[test]
    fn translates_match_add() {
        for s in [
            space(2, 3, 2),
            space(3, 2, 2),
            space(5, 1, 3),
            space(7, 4, 1),
            space(13, 1, 2),
        ] {
            for a in (0..s.size()).step_by(7).chain([s.size() - 1]) {
                let got: Vec<usize> = s.translates(a).collect();
                let want: Vec<usize> = (0..s.size()).map(|x| s.add(x, a)).collect();
                assert_eq!(got, want, "shift {a}");
            }
        }
    }

    #[test]
    fn not_a_basis() {
        let s = space(5, 1, 2);
        // (1,1) and (2,2) are dependent
        let v = s.index(&pt(&[1, 1])).unwrap();
        let w = s.index(&pt(&[2, 2])).unwrap();
        assert!(matches!(
            SpaceBasis::new(&s, vec![v, w]),
            Err(Error::NotABasis)
        ));
        assert!(matches!(
            SpaceBasis::new(&s, vec![v]),
            Err(Error::NotABasis)
        ));
    }

    #[test]
    fn round_trip_exhaustive() {
        for &(p, ell, d) in &[(5, 1, 2), (5, 2, 2), (3, 2, 2), (2, 3, 3), (3, 1, 4)] {
            let s = space(p, ell, d);
            // a non-standard basis: g_k = e_k + e_{k+1} (last one alone)
            let n = s.fp_dim();
            let pw = |k: usize| (p as usize).pow(k as u32);
            let vectors: Vec<usize> = (0..n)
                .map(|k| {
                    if k + 1 < n {
                        s.add(pw(k), pw(k + 1))
                    } else {
                        pw(k)
                    }
                })
                .collect();
            for basis in [
                SpaceBasis::standard(&s),
                SpaceBasis::new(&s, vectors).unwrap(),
            ] {
                let mut seen = vec![false; s.size()];
                for a in 0..s.size() {
                    let k = basis.decompose(a);
                    assert!(k.iter().all(|&d| d < p));
                    assert_eq!(basis.compose(&k), a);
                    let key = s.from_fp_digits(&k);
                    assert!(!seen[key], "digits not unique");
                    seen[key] = true;
                }
            }
        }
    }

    #[test]
    fn dot_bilinear_and_index_codec() {
        let s = space(5, 1, 2);
        for x in 0..s.size() {
            let px = s.point(x).unwrap();
            assert_eq!(s.index(&px).unwrap(), x);
            for y in 0..s.size() {
                for m in (0..s.size()).step_by(3) {
                    let f = s.field();
                    assert_eq!(
                        s.dot_index(s.add(x, y), m),
                        f.add(s.dot_index(x, m), s.dot_index(y, m))
                    );
                    assert_eq!(s.dot_index(x, m), s.dot_index(m, x));
                }
            }
        }
    }

    #[test]
    fn index_arith_matches_coordinates() {
        let s = space(3, 2, 2);
        let f = s.field().clone();
        for x in 0..s.size() {
            for y in 0..s.size() {
                let sum = s.point(s.add(x, y)).unwrap();
                for i in 0..2 {
                    assert_eq!(sum.coords[i], f.add(s.coord(x, i), s.coord(y, i)));
                }
            }
            assert_eq!(s.add(x, s.neg(x)), 0);
            assert_eq!(s.scale_int(2, x), s.add(x, x));
        }
    }
}
