//! The function table text format.
//!
//! ```text
//! p ell d
//! m_0 m_1 .. m_ell
//! v_0 v_1 .. v_(q^d - 1)
//! ```
//!
//! The second line is the field modulus, little-endian and monic. Values
//! are element indices in point-index order. Any whitespace separates
//! tokens on input; output is the canonical form with single spaces and a
//! final newline.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use charsum_core::{Field, FieldElement, FnTable, Space};

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("table ends before {0}")]
    Truncated(&'static str),
    #[error("token {position} ({token:?}) is not a valid {what}")]
    BadToken {
        token: String,
        position: usize,
        what: &'static str,
    },
    #[error("{0} extra tokens after the last value")]
    Trailing(usize),
    #[error(transparent)]
    Core(#[from] charsum_core::Error),
}

struct Tokens<'a> {
    inner: std::iter::Enumerate<std::str::SplitAsciiWhitespace<'a>>,
}

impl Tokens<'_> {
    fn next<T: FromStr>(&mut self, what: &'static str) -> Result<T, TableError> {
        let (position, token) = self.inner.next().ok_or(TableError::Truncated(what))?;
        token.parse().map_err(|_| TableError::BadToken {
            token: token.to_string(),
            position,
            what,
        })
    }
}

pub fn parse_table(text: &str) -> Result<FnTable, TableError> {
    let mut t = Tokens {
        inner: text.split_ascii_whitespace().enumerate(),
    };
    let p: u32 = t.next("p")?;
    let ell: u32 = t.next("ell")?;
    let d: usize = t.next("d")?;
    let modulus = (0..=ell)
        .map(|_| t.next("modulus coefficient"))
        .collect::<Result<Vec<u32>, _>>()?;
    let field = Arc::new(Field::new(p, ell, Some(&modulus))?);
    let space = Space::new(field, d)?;
    let values = (0..space.size())
        .map(|_| t.next("element index").map(FieldElement))
        .collect::<Result<Vec<_>, _>>()?;
    let extra = t.inner.count();
    if extra > 0 {
        return Err(TableError::Trailing(extra));
    }
    Ok(FnTable::new(space, values)?)
}

pub fn write_table(f: &FnTable) -> String {
    let field = f.field();
    let mut out = format!("{} {} {}\n", field.p(), field.ell(), f.dim());
    join_into(&mut out, field.modulus().iter());
    join_into(&mut out, f.values().iter().map(|v| v.0));
    out
}

fn join_into<T: std::fmt::Display>(out: &mut String, items: impl Iterator<Item = T>) {
    for (i, x) in items.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{x}").expect("writing to a String");
    }
    out.push('\n');
}
