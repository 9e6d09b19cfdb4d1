//! Built-in test subjects. Every stated property is re-verified when a
//! function is materialized at desk scale; nothing is taken on trust.
//!
//! Random tables come from SplitMix64 seeded with the user seed: the value
//! at point index `i` is `next_u64() % q` for the `(i+1)`-th draw. The
//! stream is fixed by the algorithm, so tables are identical on every
//! platform.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::field::{Field, FieldElement};
use crate::funcs::FnTable;
use crate::space::Space;
use crate::spectrum;
use crate::{Error, Result};

/// Largest table whose catalog expectations are verified on load.
pub const VERIFY_MAX_POINTS: usize = 4096;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogParams {
    /// Input dimension; each entry has its own default.
    pub d: Option<usize>,
    /// Exponent for `power`.
    pub exponent: Option<u64>,
    /// Slope `c` for `affine`.
    pub c: Option<u32>,
    /// Intercept `b` for `affine`.
    pub b: Option<u32>,
    pub seed: Option<u64>,
}

impl CatalogParams {
    pub fn with_d(d: usize) -> CatalogParams {
        CatalogParams {
            d: Some(d),
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub params: &'static str,
    /// Expected PN verdict, when one is claimed.
    pub pn: Option<bool>,
    pub bent: Option<bool>,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "square",
        description: "x^2 on F_q, q odd",
        params: "d=1",
        pn: Some(true),
        bent: Some(true),
    },
    CatalogEntry {
        name: "power",
        description: "x^e on F_q; properties measured, not claimed",
        params: "e (required), d=1",
        pn: None,
        bent: None,
    },
    CatalogEntry {
        name: "bilinear",
        description: "f(x, y) = x y on F_q^2",
        params: "d=2",
        pn: Some(true),
        bent: Some(true),
    },
    CatalogEntry {
        name: "bool_quadratic",
        description: "x1 x2 + x3 x4 + ... on F_2^d, d even",
        params: "d (even, default 4)",
        pn: Some(true),
        bent: Some(true),
    },
    CatalogEntry {
        name: "random",
        description: "uniform table from SplitMix64",
        params: "seed (default 0), d (default 1)",
        pn: None,
        bent: None,
    },
    CatalogEntry {
        name: "affine",
        description: "x -> c x + b",
        params: "c (default 1), b (default 0), d=1",
        pn: Some(false),
        bent: Some(false),
    },
];

pub fn entry(name: &str) -> Result<&'static CatalogEntry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

/// What was checked when a catalog function was loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub pn: Option<bool>,
    pub bent: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CatalogFunction {
    pub entry: &'static CatalogEntry,
    pub table: FnTable,
    /// `None` above [`VERIFY_MAX_POINTS`].
    pub verified: Option<Verification>,
}

pub fn random_function(space: &Space, seed: u64) -> FnTable {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let q = u64::from(space.field().q());
    let values = (0..space.size())
        .map(|_| FieldElement((rng.next_u64() % q) as u32))
        .collect();
    FnTable::new(space.clone(), values).expect("values are in range")
}

fn require_d(
    params: &CatalogParams,
    default: usize,
    allowed: impl Fn(usize) -> bool,
) -> Result<usize> {
    let d = params.d.unwrap_or(default);
    if allowed(d) {
        Ok(d)
    } else {
        Err(Error::InvalidCatalogParams("unsupported dimension d"))
    }
}

pub fn load(name: &str, field: Arc<Field>, params: &CatalogParams) -> Result<CatalogFunction> {
    let entry = entry(name)?;
    let f = field.clone();
    let table = match entry.name {
        "square" => {
            if f.p() == 2 {
                return Err(Error::InvalidCatalogParams(
                    "square needs odd characteristic",
                ));
            }
            let space = Space::new(field, require_d(params, 1, |d| d == 1)?)?;
            FnTable::from_fn(space, |x| {
                f.mul(FieldElement(x as u32), FieldElement(x as u32))
            })
        }
        "power" => {
            let e = params
                .exponent
                .ok_or(Error::InvalidCatalogParams("power needs e"))?;
            let space = Space::new(field, require_d(params, 1, |d| d == 1)?)?;
            FnTable::from_fn(space, |x| f.pow(FieldElement(x as u32), e))
        }
        "bilinear" => {
            let space = Space::new(field, require_d(params, 2, |d| d == 2)?)?;
            let s = space.clone();
            FnTable::from_fn(space, |x| f.mul(s.coord(x, 0), s.coord(x, 1)))
        }
        "bool_quadratic" => {
            if f.p() != 2 || f.ell() != 1 {
                return Err(Error::InvalidCatalogParams("bool_quadratic lives on F_2"));
            }
            let d = require_d(params, 4, |d| d >= 2 && d % 2 == 0)?;
            let space = Space::new(field, d)?;
            // bit i of the index is x_{i+1}
            FnTable::from_fn(space, |x| {
                let v =
                    (0..d / 2).fold(0, |acc, k| acc ^ ((x >> (2 * k)) & (x >> (2 * k + 1)) & 1));
                FieldElement(v as u32)
            })
        }
        "random" => {
            let space = Space::new(field, require_d(params, 1, |d| d >= 1)?)?;
            random_function(&space, params.seed.unwrap_or(0))
        }
        "affine" => {
            let c = params.c.unwrap_or(1);
            let b = params.b.unwrap_or(0);
            let (c, b) = (f.element(c)?, f.element(b)?);
            let space = Space::new(field, require_d(params, 1, |d| d == 1)?)?;
            FnTable::from_fn(space, |x| f.add(f.mul(c, FieldElement(x as u32)), b))
        }
        _ => unreachable!("entry() only returns listed names"),
    };

    let verified = (table.space().size() <= VERIFY_MAX_POINTS).then(|| {
        let pn = entry.pn.map(|_| table.is_pn().is_pn());
        let bent = entry
            .bent
            .map(|_| spectrum::is_bent_exact(&table).is_bent());
        Verification { pn, bent }
    });
    if let Some(v) = &verified {
        if v.pn != entry.pn {
            return Err(Error::PropertyMismatch {
                entry: entry.name,
                property: "pn",
            });
        }
        if v.bent != entry.bent {
            return Err(Error::PropertyMismatch {
                entry: entry.name,
                property: "bent",
            });
        }
    }
    Ok(CatalogFunction {
        entry,
        table,
        verified,
    })
}

pub fn get_function(name: &str, field: Arc<Field>, params: &CatalogParams) -> Result<FnTable> {
    load(name, field, params).map(|c| c.table)
}

/// Every `(entry, d)` that the catalog can build over `field` with at most
/// `max_points` points, with default parameters (and `e = 3` for `power`).
pub fn instances(field: &Arc<Field>, max_points: usize) -> Vec<(&'static str, CatalogParams)> {
    let q = field.q() as usize;
    let mut out = vec![];
    if field.p() != 2 && q <= max_points {
        out.push(("square", CatalogParams::with_d(1)));
    }
    if q <= max_points {
        out.push((
            "power",
            CatalogParams {
                exponent: Some(3),
                ..CatalogParams::with_d(1)
            },
        ));
        out.push((
            "affine",
            CatalogParams {
                c: Some(1),
                b: Some(0),
                ..CatalogParams::with_d(1)
            },
        ));
    }
    if q * q <= max_points {
        out.push(("bilinear", CatalogParams::with_d(2)));
    }
    if field.p() == 2 && field.ell() == 1 {
        let mut d = 2;
        while (1usize << d) <= max_points {
            out.push(("bool_quadratic", CatalogParams::with_d(d)));
            d += 2;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, ell: u32) -> Arc<Field> {
        Arc::new(Field::new(p, ell, None).unwrap())
    }

    fn idx(t: &FnTable) -> Vec<u32> {
        t.values().iter().map(|v| v.0).collect()
    }

    #[test]
    fn catalog_examples() {
        let c = load("square", field(5, 1), &CatalogParams::default()).unwrap();
        assert_eq!(idx(&c.table), vec![0, 1, 4, 4, 1]);
        assert_eq!(
            c.verified,
            Some(Verification {
                pn: Some(true),
                bent: Some(true)
            })
        );

        let c = load("bool_quadratic", field(2, 1), &CatalogParams::with_d(4)).unwrap();
        assert_eq!(c.verified.unwrap().bent, Some(true));

        let c = load(
            "affine",
            field(5, 1),
            &CatalogParams {
                c: Some(1),
                b: Some(0),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(idx(&c.table), vec![0, 1, 2, 3, 4]);
        assert_eq!(c.verified.unwrap().pn, Some(false));
    }

    #[test]
    fn catalog_errors() {
        assert_eq!(
            get_function("cubic", field(5, 1), &CatalogParams::default()).unwrap_err(),
            Error::UnknownCatalogEntry("cubic".into())
        );
        assert!(matches!(
            get_function("square", field(2, 3), &CatalogParams::default()),
            Err(Error::InvalidCatalogParams(_))
        ));
        assert!(matches!(
            get_function("bool_quadratic", field(2, 1), &CatalogParams::with_d(3)),
            Err(Error::InvalidCatalogParams(_))
        ));
        assert!(matches!(
            get_function("power", field(5, 1), &CatalogParams::default()),
            Err(Error::InvalidCatalogParams(_))
        ));
    }

    #[test]
    fn random_is_deterministic() {
        let s = Space::new(field(5, 1), 1).unwrap();
        assert_eq!(random_function(&s, 0), random_function(&s, 0));
        assert_ne!(random_function(&s, 0), random_function(&s, 1));
    }

    #[test]
    fn random_golden_tables() {
        // SplitMix64 streams reduced mod q, cross-checked against an
        // independent implementation of the generator.
        let s = Space::new(field(5, 1), 1).unwrap();
        assert_eq!(idx(&random_function(&s, 0)), GOLDEN_F5_SEED0);
        let s = Space::new(field(3, 2), 2).unwrap();
        assert_eq!(idx(&random_function(&s, 42))[..16], GOLDEN_F9_D2_SEED42);
    }

    const GOLDEN_F5_SEED0: [u32; 5] = [0, 0, 4, 4, 2];
    const GOLDEN_F9_D2_SEED42: [u32; 16] = [1, 1, 0, 0, 7, 6, 1, 5, 1, 2, 8, 7, 5, 1, 8, 2];
}
