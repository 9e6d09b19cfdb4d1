//! Turning command-line function descriptions into tables.

use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use charsum_core::catalog::{self, CatalogParams};
use charsum_core::funcs::build_function;
use charsum_core::{Field, FieldElement, FnSpec, FnTable};

use crate::config::{FieldArgs, FnArgs};
use crate::table;

/// A materialized function and the label reports use for it.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub table: FnTable,
    pub label: String,
}

pub fn build_field(args: &FieldArgs) -> Result<Arc<Field>> {
    let p = args.p.ok_or_else(|| anyhow!("--p is required"))?;
    let field = Field::new(p, args.ell, args.modulus.as_deref())
        .with_context(|| format!("cannot build F_{p}^{}", args.ell))?;
    Ok(Arc::new(field))
}

/// `F_q` with the built-in modulus, for `q` a prime power.
pub fn field_of_order(q: u32) -> Result<Arc<Field>> {
    let p = (2..=q)
        .find(|d| q % d == 0)
        .ok_or_else(|| anyhow!("{q} is not a prime power"))?;
    let mut ell = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        ell += 1;
    }
    if rest != 1 {
        bail!("{q} is not a prime power");
    }
    Ok(Arc::new(Field::new(p, ell, None)?))
}

pub fn parse_params(text: &str) -> Result<CatalogParams> {
    let mut params = CatalogParams::default();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("parameter {item:?} is not k=v"))?;
        let bad = || anyhow!("bad value for parameter {key}: {value:?}");
        match key.trim() {
            "d" => params.d = Some(value.trim().parse().map_err(|_| bad())?),
            "e" => params.exponent = Some(value.trim().parse().map_err(|_| bad())?),
            "c" => params.c = Some(value.trim().parse().map_err(|_| bad())?),
            "b" => params.b = Some(value.trim().parse().map_err(|_| bad())?),
            "seed" => params.seed = Some(value.trim().parse().map_err(|_| bad())?),
            other => bail!("unknown catalog parameter {other:?}"),
        }
    }
    Ok(params)
}

fn params_label(params: &CatalogParams) -> String {
    let mut parts = Vec::new();
    if let Some(d) = params.d {
        parts.push(format!("d={d}"));
    }
    if let Some(e) = params.exponent {
        parts.push(format!("e={e}"));
    }
    if let Some(c) = params.c {
        parts.push(format!("c={c}"));
    }
    if let Some(b) = params.b {
        parts.push(format!("b={b}"));
    }
    if let Some(s) = params.seed {
        parts.push(format!("seed={s}"));
    }
    parts.join(",")
}

fn load_catalog(
    name: &str,
    params: Option<&str>,
    d: Option<usize>,
    field: Arc<Field>,
    seed: u64,
) -> Result<Loaded> {
    let mut params = params.map(parse_params).transpose()?.unwrap_or_default();
    if let Some(d) = d {
        if params.d.is_some_and(|pd| pd != d) {
            bail!("--d {d} disagrees with the catalog parameters");
        }
        params.d = Some(d);
    }
    if name == "random" && params.seed.is_none() {
        params.seed = Some(seed);
    }
    let table = catalog::get_function(name, field, &params)?;
    let extra = params_label(&params);
    let label = if extra.is_empty() {
        format!("catalog:{name}")
    } else {
        format!("catalog:{name}:{extra}")
    };
    Ok(Loaded { table, label })
}

fn load_poly(coeffs: &[u32], d: Option<usize>, field: Arc<Field>) -> Result<Loaded> {
    let d = d.unwrap_or(1);
    let spec = FnSpec::Univariate(coeffs.iter().map(|&c| FieldElement(c)).collect());
    let table = build_function(&spec, field, d)?;
    let label = format!(
        "poly:{}",
        coeffs
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(Loaded { table, label })
}

fn load_file(path: &Path) -> Result<FnTable> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    table::parse_table(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_function(args: &FnArgs, seed: u64) -> Result<Loaded> {
    if let Some(path) = &args.input {
        let table = load_file(path)?;
        let field = table.field();
        let given = &args.field;
        if given.p.is_some_and(|p| p != field.p())
            || (given.p.is_some() && given.ell != field.ell())
            || given
                .modulus
                .as_deref()
                .is_some_and(|m| m != field.modulus())
        {
            bail!("field flags disagree with the table file header");
        }
        if args.d.is_some_and(|d| d != table.dim()) {
            bail!("--d disagrees with the table file header");
        }
        return Ok(Loaded {
            table,
            label: format!("table:{}", path.display()),
        });
    }
    let field = build_field(&args.field)?;
    load_in_field(args, field, seed)
}

/// Like [`load_function`] for a catalog entry or polynomial, on a given field.
pub fn load_in_field(args: &FnArgs, field: Arc<Field>, seed: u64) -> Result<Loaded> {
    match (&args.catalog, &args.poly) {
        (Some(name), _) => load_catalog(name, args.params.as_deref(), args.d, field, seed),
        (None, Some(coeffs)) => load_poly(coeffs, args.d, field),
        (None, None) if args.input.is_some() => bail!("a table file fixes its own field"),
        (None, None) => bail!("give a function with --catalog, --poly or --input"),
    }
}

/// `catalog:NAME[:k=v,..]`, `poly:c0,c1,..` or `table:PATH`.
pub fn load_spec(spec: &str, field: &Arc<Field>, seed: u64) -> Result<Loaded> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| anyhow!("function {spec:?} has no kind prefix"))?;
    match kind {
        "catalog" => {
            let (name, params) = match rest.split_once(':') {
                Some((n, p)) => (n, Some(p)),
                None => (rest, None),
            };
            load_catalog(name, params, None, field.clone(), seed)
        }
        "poly" => {
            let coeffs = rest
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u32>()
                        .map_err(|_| anyhow!("bad coefficient {c:?} in {spec:?}"))
                })
                .collect::<Result<Vec<_>>>()?;
            load_poly(&coeffs, None, field.clone())
        }
        "table" => {
            let table = load_file(Path::new(rest))?;
            if **table.field() != **field {
                bail!("{rest} is over a different field");
            }
            Ok(Loaded {
                table,
                label: spec.to_string(),
            })
        }
        other => bail!("unknown function kind {other:?}"),
    }
}
