//! Command dispatch. Every command produces its whole report in memory, in
//! canonical order, before anything is written.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use charsum_core::catalog::ENTRIES;
use charsum_core::mindist::{self, PerturbationOutcome};
use charsum_core::salem::{self, CaseTag};
use charsum_core::spectrum::{self, BentVerdict, SpectrumMode};
use charsum_core::{decomp, CycInt, FieldElement, FnTable, PnVerdict, SpaceBasis};

use crate::config::*;
use crate::report::*;
use crate::source::{self, Loaded};

/// Every `stride`-th frequency is checked exactly on the fast path.
pub const SPOT_CHECK_STRIDE: usize = 100;

const SAMPLE_WITNESSES: usize = 10;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses nothing and prints nothing on its own: resolves replays, sets up
/// the worker pool, runs, and maps the result to an exit code.
pub fn execute(cfg: RunConfig) -> i32 {
    match resolve(cfg).and_then(|cfg| run_in_pool(&cfg)) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<charsum_core::Error>() {
                Some(charsum_core::Error::PropertyMismatch { .. }) => EXIT_CHECK_FAILED,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// Replaces a `replay` invocation by the saved configuration. A worker
/// count given on the replay command line wins over the saved one.
pub fn resolve(cfg: RunConfig) -> Result<RunConfig> {
    let Command::Replay { config } = &cfg.command else {
        return Ok(cfg);
    };
    let text =
        fs::read_to_string(config).with_context(|| format!("reading {}", config.display()))?;
    let mut saved: RunConfig =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", config.display()))?;
    if matches!(saved.command, Command::Replay { .. }) {
        bail!("a saved configuration cannot itself be a replay");
    }
    if cfg.threads.is_some() {
        saved.threads = cfg.threads;
    }
    Ok(saved)
}

fn run_in_pool(cfg: &RunConfig) -> Result<bool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        builder = builder.num_threads(n);
    }
    let pool = builder.build()?;
    pool.install(|| run(cfg))
}

/// Runs one command; `Ok(false)` means a mathematical check failed.
pub fn run(cfg: &RunConfig) -> Result<bool> {
    if let Some(path) = &cfg.save_config {
        fs::write(path, to_json(cfg)?).with_context(|| format!("writing {}", path.display()))?;
    }
    let out = Output {
        format: cfg.format,
        emit: cfg.emit.clone(),
    };
    let seed = cfg.seed;
    match &cfg.command {
        Command::Test(TestCommand::Pn(a)) => test_pn(a, seed, &out),
        Command::Test(TestCommand::Bent(a)) => test_bent(a, seed, &out),
        Command::Crosscheck(a) => crosscheck(a, seed, &out),
        Command::Salem(s) => match &s.verify {
            Some(SalemVerify::VerifyThm1(a)) => salem_verify(a, seed, &out),
            None => salem_constants(s, seed, &out),
        },
        Command::Decomp(DecompCommand::Verify(a)) => decomp_verify(a, seed, &out),
        Command::Mindist(MindistCommand::Sweep(a)) => sweep(a, seed, &out),
        Command::Mindist(MindistCommand::Pairwise(a)) => pairwise(a, seed, &out),
        Command::Catalog(CatalogCommand::List) => catalog_list(&out),
        Command::Catalog(CatalogCommand::Export(a)) => catalog_export(a, seed, &out),
        Command::Field(FieldCommand::Info(a)) => field_info(a, &out),
        Command::Replay { .. } => bail!("nested replay"),
    }
}

struct Output {
    format: Format,
    emit: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> Result<()> {
        match &self.emit {
            Some(path) => write_file(path, text),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(text.as_bytes())?;
                Ok(stdout.flush()?)
            }
        }
    }

    fn json_only(&self, command: &str) -> Result<()> {
        if self.format == Format::Csv {
            bail!("`{command}` has no CSV output");
        }
        Ok(())
    }

    fn csv_dir(&self, command: &str) -> Result<&Path> {
        self.emit.as_deref().ok_or_else(|| {
            anyhow!("`{command}` writes one CSV per item; give a directory with --emit")
        })
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn print_stdout(text: &str) -> Result<()> {
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(text.as_bytes())?;
    Ok(stdout.flush()?)
}

fn pn_parts(f: &FnTable) -> (&'static str, Option<PnWitnessJson>) {
    match f.is_pn() {
        PnVerdict::Pn => ("pn", None),
        PnVerdict::NotPn(w) => ("not_pn", Some(PnWitnessJson::new(f.space(), &w))),
    }
}

fn bent_witness(f: &FnTable, u: FieldElement, m: usize, abs_sq: &CycInt) -> BentWitnessJson {
    BentWitnessJson {
        u: u.0,
        m,
        m_coords: coords(f.space(), m),
        abs_sq_exact: exact_value(abs_sq),
        magnitude: spectrum::magnitude_from_abs_sq(abs_sq),
    }
}

fn bent_parts(f: &FnTable) -> (&'static str, Option<BentWitnessJson>) {
    match spectrum::is_bent_exact(f) {
        BentVerdict::Bent => ("bent", None),
        BentVerdict::NotBent { u, m, abs_sq } => ("not_bent", Some(bent_witness(f, u, m, &abs_sq))),
    }
}

fn test_pn(args: &FnArgs, seed: u64, out: &Output) -> Result<bool> {
    out.json_only("test pn")?;
    let Loaded { table: f, label } = source::load_function(args, seed)?;
    let (verdict, witness) = pn_parts(&f);
    let report = PnReport {
        field: f.field().as_ref().into(),
        d: f.dim(),
        function: label,
        verdict,
        witness,
    };
    out.write(&to_json(&report)?)?;
    Ok(report.witness.is_none())
}

fn spectrum_rows(f: &FnTable, r: &spectrum::SpectrumReport) -> Vec<SpectrumRow> {
    r.records
        .iter()
        .map(|rec| SpectrumRow {
            m_index: rec.m,
            m_coords: coords_cell(f.space(), rec.m),
            abs_sq_exact: rec.abs_sq.as_ref().map(CycInt::to_string),
            magnitude_float: rec.magnitude,
        })
        .collect()
}

fn test_bent(args: &BentArgs, seed: u64, out: &Output) -> Result<bool> {
    let Loaded { table: f, label } = source::load_function(&args.function, seed)?;
    let csv_dir = match out.format {
        Format::Csv => Some(out.csv_dir("test bent")?),
        Format::Json => None,
    };
    let q = f.field().q();
    let mode = if args.fast {
        SpectrumMode::Fast {
            stride: SPOT_CHECK_STRIDE,
        }
    } else {
        SpectrumMode::Exact
    };

    let (verdict, witness, spot_checks) = if args.fast || csv_dir.is_some() {
        let mut witness = None;
        let mut checked = 0;
        let mut failures = Vec::new();
        if let Some(dir) = csv_dir {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        for u in (1..q).map(FieldElement) {
            let r = spectrum::spectrum_report(&f, u, mode)?;
            checked += r.records.iter().filter(|rec| rec.abs_sq.is_some()).count();
            failures.extend(r.spot_check_failures.iter().map(|&m| (u.0, m)));
            if witness.is_none() {
                if let Some(m) = r.first_non_flat {
                    let abs_sq = match &r.records[m].abs_sq {
                        Some(a) => a.clone(),
                        None => spectrum::walsh_exact(&f, u, &f.space().point(m)?)?.abs_sq(),
                    };
                    witness = Some(bent_witness(&f, u, m, &abs_sq));
                }
            }
            if let Some(dir) = csv_dir {
                write_file(
                    &dir.join(format!("{}.csv", u.0)),
                    &to_csv(&spectrum_rows(&f, &r))?,
                )?;
            }
        }
        if !args.fast {
            // the exact verdict keeps its own witness rule
            let (v, w) = bent_parts(&f);
            (v, w, None)
        } else {
            let v = if witness.is_none() {
                "bent"
            } else {
                "not_bent"
            };
            (v, witness, Some(SpotCheckJson { checked, failures }))
        }
    } else {
        let (v, w) = bent_parts(&f);
        (v, w, None)
    };

    let report = BentReport {
        field: f.field().as_ref().into(),
        d: f.dim(),
        function: label,
        mode: if args.fast { "fast" } else { "exact" },
        verdict,
        witness,
        spot_checks,
    };
    let text = to_json(&report)?;
    if csv_dir.is_some() {
        print_stdout(&text)?;
    } else {
        out.write(&text)?;
    }
    let spot_ok = report
        .spot_checks
        .as_ref()
        .is_none_or(|s| s.failures.is_empty());
    Ok(report.verdict == "bent" && spot_ok)
}

fn crosscheck(args: &FnArgs, seed: u64, out: &Output) -> Result<bool> {
    out.json_only("crosscheck")?;
    let Loaded { table: f, label } = source::load_function(args, seed)?;
    let c = spectrum::crosscheck_pn_bent(&f)?;
    let (pn, pn_witness) = match c.pn {
        PnVerdict::Pn => ("pn", None),
        PnVerdict::NotPn(w) => ("not_pn", Some(PnWitnessJson::new(f.space(), &w))),
    };
    let (bent, bent_witness) = match &c.bent {
        BentVerdict::Bent => ("bent", None),
        BentVerdict::NotBent { u, m, abs_sq } => {
            ("not_bent", Some(bent_witness(&f, *u, *m, abs_sq)))
        }
    };
    let report = CrosscheckReport {
        field: f.field().as_ref().into(),
        d: f.dim(),
        function: label,
        pn,
        pn_witness,
        bent,
        bent_witness,
        agree: c.agree,
    };
    out.write(&to_json(&report)?)?;
    Ok(c.agree)
}

fn summary(
    space: &charsum_core::Space,
    cardinality: usize,
    c: &salem::SalemConstant,
) -> SalemSummary {
    SalemSummary {
        q: space.field().q(),
        d: space.dim(),
        cardinality,
        salem_constant: c.constant,
        salem_constant_sq_exact: c.exact_sq_ratio,
        argmax_m: c.argmax,
        argmax_m_coords: coords(space, c.argmax),
        theorem1_pass: None,
        mismatches: None,
    }
}

fn salem_verify(args: &FnArgs, seed: u64, out: &Output) -> Result<bool> {
    let Loaded { table: f, label } = source::load_function(args, seed)?;
    let field: FieldJson = f.field().as_ref().into();
    let report = match salem::verify_theorem1(&f) {
        Ok(r) => r,
        Err(charsum_core::Error::HypothesisFailed) => {
            let BentVerdict::NotBent { u, m, abs_sq } = spectrum::is_bent_exact(&f) else {
                unreachable!("verify_theorem1 only fails the hypothesis for non-bent input");
            };
            let r = HypothesisFailedReport {
                field,
                function: label,
                theorem1_pass: false,
                error: "function is not bent",
                bent_witness: bent_witness(&f, u, m, &abs_sq),
            };
            match out.format {
                Format::Json => out.write(&to_json(&r)?)?,
                Format::Csv => print_stdout(&to_json(&r)?)?,
            }
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let graph = salem::graph_of(&f)?;
    let space = graph.space();
    let mut s = summary(space, report.cardinality, &report.constant);
    s.theorem1_pass = Some(report.theorem1_pass);
    s.mismatches = Some(
        report
            .records
            .iter()
            .filter(|r| !r.matches())
            .map(|r| r.m)
            .collect(),
    );
    let json = to_json(&SalemVerifyReport {
        field,
        function: label,
        summary: s,
    })?;
    match out.format {
        Format::Json => out.write(&json)?,
        Format::Csv => {
            let rows: Vec<SalemRow> = report
                .records
                .iter()
                .map(|r| SalemRow {
                    m_index: r.m,
                    m_coords: coords_cell(space, r.m),
                    case_tag: r.case.as_str(),
                    abs_sq_exact: r.abs_sq.to_string(),
                    magnitude_float: r.magnitude,
                    bound_ratio: r.bound_ratio,
                })
                .collect();
            out.write(&to_csv(&rows)?)?;
            if out.emit.is_some() {
                print_stdout(&json)?;
            }
        }
    }
    Ok(report.theorem1_pass)
}

/// Constant and per-frequency rows for the graph of any `f`.
fn graph_constants(f: &FnTable) -> Result<(SalemSummary, Vec<SalemRow>)> {
    let e = salem::graph_of(f)?;
    let space = e.space();
    let abs_sq: Vec<CycInt> = salem::indicator_spectrum(&e)
        .iter()
        .map(CycInt::abs_sq)
        .collect();
    let sqrt_card = (e.cardinality() as f64).sqrt();
    let rows = abs_sq
        .iter()
        .enumerate()
        .map(|(m, a)| {
            let magnitude = spectrum::magnitude_from_abs_sq(a);
            SalemRow {
                m_index: m,
                m_coords: coords_cell(space, m),
                case_tag: CaseTag::of(m, f.space().size()).as_str(),
                abs_sq_exact: a.to_string(),
                magnitude_float: magnitude,
                bound_ratio: magnitude / sqrt_card,
            }
        })
        .collect();
    let c = salem::salem_constant(&e)?;
    Ok((summary(space, e.cardinality(), &c), rows))
}

fn salem_constants(cmd: &SalemCommand, seed: u64, out: &Output) -> Result<bool> {
    let args = &cmd.function;
    let Some(family) = &cmd.family else {
        let Loaded { table: f, label } = source::load_function(args, seed)?;
        let (s, rows) = graph_constants(&f)?;
        match out.format {
            Format::Json => out.write(&to_json(&SalemFamilyReport {
                function: label,
                instances: vec![s],
            })?)?,
            Format::Csv => out.write(&to_csv(&rows)?)?,
        }
        return Ok(true);
    };
    if family.is_empty() {
        bail!("--family needs at least one field order");
    }
    let csv_dir = match out.format {
        Format::Csv => Some(out.csv_dir("salem --family")?),
        Format::Json => None,
    };
    if let Some(dir) = csv_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let mut label = String::new();
    let mut instances = Vec::new();
    for &q in family {
        let loaded = source::load_in_field(args, source::field_of_order(q)?, seed)?;
        label = loaded.label;
        let (s, rows) = graph_constants(&loaded.table)?;
        if let Some(dir) = csv_dir {
            write_file(&dir.join(format!("q{q}.csv")), &to_csv(&rows)?)?;
        }
        instances.push(s);
    }
    let json = to_json(&SalemFamilyReport {
        function: label,
        instances,
    })?;
    if csv_dir.is_some() {
        print_stdout(&json)?;
    } else {
        out.write(&json)?;
    }
    Ok(true)
}

fn decomp_verify(args: &DecompArgs, seed: u64, out: &Output) -> Result<bool> {
    out.json_only("decomp verify")?;
    let Loaded { table: f, label } = source::load_function(&args.function, seed)?;
    let basis = match &args.basis {
        Some(v) => SpaceBasis::new(f.space(), v.clone()).context("--basis")?,
        None => SpaceBasis::standard(f.space()),
    };
    let cert = decomp::verify_decomposition(&f, &basis)?;
    let report = DecompReport {
        field: f.field().as_ref().into(),
        d: f.dim(),
        function: label,
        basis: cert.basis.clone(),
        shifts_checked: cert.shifts_checked,
        pass: cert.pass(),
        failing_a: cert.failing_a,
    };
    out.write(&to_json(&report)?)?;
    Ok(report.pass)
}

fn sweep(args: &SweepArgs, seed: u64, out: &Output) -> Result<bool> {
    out.json_only("mindist sweep")?;
    let Loaded { table: f, label } = source::load_function(&args.function, seed)?;
    let start = Instant::now();
    let r = match mindist::perturbation_sweep(&f) {
        Err(charsum_core::Error::NotPlanarBase) => {
            let (_, w) = pn_parts(&f);
            let w = w.expect("a non-planar base has a witness");
            bail!(
                "{label} is not planar: shift {} hits value {} {} times",
                w.a,
                w.value,
                w.count
            );
        }
        r => r?,
    };
    let witnesses_verified = r.entries.iter().all(|e| match e.outcome {
        PerturbationOutcome::NonPlanar(w) => {
            mindist::perturb(&f, e.w, e.v).is_ok_and(|g| mindist::witness_holds(&g, &w))
        }
        PerturbationOutcome::Planar => true,
    });
    let wall_time = args.timing.then(|| start.elapsed().as_secs_f64());
    let q = f.field().q() as usize;
    let report = SweepReport {
        field: f.field().as_ref().into(),
        base_fn: label,
        pairs_tested: r.entries.len(),
        planar_found: r.planar_found(),
        bound_applies: r.bound_applies,
        witnesses_verified,
        image_size: f.image_size(),
        image_bound: q.div_ceil(2),
        sample_witnesses: r
            .entries
            .iter()
            .filter_map(|e| match e.outcome {
                PerturbationOutcome::NonPlanar(w) => Some(SweepWitnessJson {
                    w: e.w,
                    v: e.v.0,
                    a: w.a,
                    value: w.value.0,
                    count: w.count,
                }),
                PerturbationOutcome::Planar => None,
            })
            .take(SAMPLE_WITNESSES)
            .collect(),
        wall_time,
    };
    out.write(&to_json(&report)?)?;
    let claim_holds = !report.bound_applies || report.planar_found == 0;
    Ok(claim_holds && witnesses_verified && report.image_size >= report.image_bound)
}

fn pairwise(args: &PairwiseArgs, seed: u64, out: &Output) -> Result<bool> {
    out.json_only("mindist pairwise")?;
    let field = source::build_field(&args.field)?;
    let loaded = args
        .functions
        .iter()
        .map(|s| source::load_spec(s, &field, seed))
        .collect::<Result<Vec<_>>>()?;
    let tables: Vec<FnTable> = loaded.iter().map(|l| l.table.clone()).collect();
    let m = match mindist::pairwise_min_distance(&tables) {
        Err(charsum_core::Error::NotPlanarEntry(i)) => bail!("{} is not planar", loaded[i].label),
        r => r?,
    };
    let report = PairwiseReport {
        field: field.as_ref().into(),
        functions: loaded.into_iter().map(|l| l.label).collect(),
        distances: m.distances,
        duplicates: m.duplicates,
        min_distance: m.min_distance,
    };
    out.write(&to_json(&report)?)?;
    Ok(field.p() <= 3 || report.min_distance.is_none_or(|d| d >= 2))
}

fn catalog_list(out: &Output) -> Result<bool> {
    let rows: Vec<CatalogRow> = ENTRIES.iter().map(CatalogRow::from).collect();
    match out.format {
        Format::Json => out.write(&to_json(&rows)?)?,
        Format::Csv => out.write(&to_csv(&rows)?)?,
    }
    Ok(true)
}

fn catalog_export(args: &FnArgs, seed: u64, out: &Output) -> Result<bool> {
    let Loaded { table: f, .. } = source::load_function(args, seed)?;
    out.write(&crate::table::write_table(&f))?;
    Ok(true)
}

fn field_info(args: &FieldArgs, out: &Output) -> Result<bool> {
    let field = source::build_field(args)?;
    match out.format {
        Format::Json => {
            let report = FieldReport {
                field: field.as_ref().into(),
                primitive_element: field.primitive_element().0,
                basis_traces: field
                    .polynomial_basis()
                    .elements()
                    .iter()
                    .map(|&b| field.trace(b))
                    .collect(),
            };
            out.write(&to_json(&report)?)?;
        }
        Format::Csv => {
            let rows: Vec<ElementRow> = field
                .elements()
                .map(|a| ElementRow {
                    index: a.0,
                    coeffs: field
                        .coeffs(a)
                        .iter()
                        .map(u32::to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                    log: field.log(a).map(u64::from),
                    trace: field.trace(a),
                })
                .collect();
            out.write(&to_csv(&rows)?)?;
        }
    }
    Ok(true)
}
