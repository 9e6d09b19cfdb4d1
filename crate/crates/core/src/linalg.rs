//! Square matrices over F_p, just enough to invert a change of basis.

use alloc::vec;
use alloc::vec::Vec;

pub(crate) fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and a != 0 mod p
    let mut r = 1u64;
    let mut base = u64::from(a % p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % u64::from(p);
        }
        base = base * base % u64::from(p);
        e >>= 1;
    }
    r as u32
}

/// Inverse of the `n x n` matrix whose columns are `columns`, or `None` when
/// singular. Result is row-major.
pub(crate) fn invert_columns(columns: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = columns.len();
    let p64 = u64::from(p);
    // augmented [A | I], A[r][c] = columns[c][r]
    let mut rows: Vec<Vec<u64>> = (0..n)
        .map(|r| {
            let mut row = vec![0u64; 2 * n];
            for (c, col) in columns.iter().enumerate() {
                row[c] = u64::from(col[r]);
            }
            row[n + r] = 1;
            row
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| rows[r][col] != 0)?;
        rows.swap(col, pivot);
        let inv = u64::from(mod_inv(rows[col][col] as u32, p));
        for v in rows[col].iter_mut() {
            *v = *v * inv % p64;
        }
        for r in 0..n {
            if r == col || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            for c in 0..2 * n {
                let sub = factor * rows[col][c] % p64;
                rows[r][c] = (rows[r][c] + p64 - sub) % p64;
            }
        }
    }
    Some(
        rows.into_iter()
            .map(|row| row[n..].iter().map(|&v| v as u32).collect())
            .collect(),
    )
}

pub(crate) fn mat_vec(m: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    m.iter()
        .map(|row| {
            let s: u64 = row
                .iter()
                .zip(v)
                .map(|(&a, &b)| u64::from(a) * u64::from(b) % u64::from(p))
                .sum();
            (s % u64::from(p)) as u32
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_identity_and_singular() {
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(invert_columns(&id, 5).unwrap(), id);
        assert!(invert_columns(&[vec![1, 2], vec![2, 4]], 5).is_none());
    }

    #[test]
    fn inverse_solves() {
        let cols = vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]];
        let inv = invert_columns(&cols, 3).unwrap();
        // A * e_c = column c, so inv * column c = e_c
        for (c, col) in cols.iter().enumerate() {
            let e = mat_vec(&inv, col, 3);
            for (r, v) in e.iter().enumerate() {
                assert_eq!(*v, u32::from(r == c));
            }
        }
    }
}
