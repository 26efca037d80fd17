use crate::config::{
    create_dir, create_file, display, invalid, parse_int, resolve_xi, write_json, xi_for_input, CliError,
    CliResult, RunConfig, XiConfig,
};
use crate::{AnalyzeArgs, ConstantsArgs, Fault, HypothesisArgs, MinpointsArgs, OracleCheckArgs, Prop43Args, VerifyMapsArgs};
use diophlab::constants::{anchor_checks, build_constants, constants_json, verify_identities};
use diophlab::exactreal::{parse_rational, AlgebraicReal};
use diophlab::maps::{ExactKernel, FlippedEKernel, MapKernel};
use diophlab::minpoints::{
    enumerate_minimal_points, precision_bits_from_env, read_records, verify_minimality_oracle, write_records,
    MinPointsError, MinimalPointRecord, ScanBound, ScanCursor, ScanOptions,
};
use diophlab::structure::{
    chain_analyze, cij_table, exponent_report, geometric_grid, hypothesis_scan, schmidt_audit, write_chain_csv,
    write_cij_csv, write_exponents_csv, write_schmidt_csv,
};
use diophlab::verify::{run_fuzz, run_prop43, FuzzConfig};
use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;
use std::fs::{File, OpenOptions};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

/// `println!` that ends the process quietly when stdout is closed early.
macro_rules! say {
    () => { emit(format_args!("")) };
    ($($t:tt)*) => { emit(format_args!($($t)*)) };
}

fn emit(args: std::fmt::Arguments) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = writeln!(out, "{args}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

const RECORDS: &str = "records.jsonl";
const CURSOR: &str = "cursor.json";

fn io_at(path: &Path, what: &str) -> impl FnOnce(std::io::Error) -> CliError {
    CliError::io(format!("{what} {}", path.display()))
}

fn jsonl_line<W: Write, T: Serialize>(w: &mut W, value: &T, path: &Path) -> CliResult<()> {
    serde_json::to_writer(&mut *w, value)
        .map_err(std::io::Error::from)
        .and_then(|_| w.write_all(b"\n"))
        .map_err(io_at(path, "writing"))
}

fn print_json<T: Serialize>(value: &T) {
    say!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

pub fn constants(a: &ConstantsArgs) -> CliResult<()> {
    let tolerance = a
        .verify
        .as_deref()
        .map(|t| {
            parse_rational(t)
                .ok()
                .filter(|r| r.is_positive())
                .ok_or_else(|| invalid(format!("--verify needs a positive tolerance, got {t:?}")))
        })
        .transpose()?;
    let c = build_constants();
    let digits = a.digits as usize;
    if a.json {
        print_json(&constants_json(&c, digits));
    } else {
        say!("{:<28} {:<14} value", "name", "symbol");
        for k in &c.constants {
            say!("{:<28} {:<14} {}", k.name, k.symbol, k.value.to_decimal(digits));
        }
        say!();
        say!("{:<28} {:<9} {:<6} difference", "anchor", "value", "tol");
        for ch in anchor_checks(&c) {
            say!(
                "{:<28} {:<9} {:<6} {:+.3e}{}",
                ch.name,
                ch.anchor,
                ch.tolerance,
                ch.difference,
                if ch.pass { "" } else { "  outside tolerance" }
            );
        }
    }
    let Some(tol) = tolerance else { return Ok(()) };
    let (rows, outcome) = match verify_identities(&c, &tol) {
        Ok(rows) => (rows, Ok(())),
        Err((rows, e)) => (rows, Err(CliError::Verification(e.to_string()))),
    };
    let stream: Box<dyn Fn(String)> = if a.json { Box::new(|s| eprintln!("{s}")) } else { Box::new(|s| say!("{s}")) };
    stream(String::new());
    for r in &rows {
        stream(format!(
            "{:<20} {:<6} residual {:.3e} at {} bits  {}",
            r.name,
            if r.pass { "pass" } else { "FAIL" },
            r.residual,
            r.bits,
            r.statement
        ));
    }
    outcome
}

pub fn verify_maps(a: &VerifyMapsArgs) -> CliResult<()> {
    let cfg = FuzzConfig {
        trials: a.trials,
        seed: a.seed,
        coeff_bound: a.coeff_bound,
    };
    let kernel: &dyn MapKernel = match a.inject_fault {
        None => &ExactKernel,
        Some(Fault::ESign) => &FlippedEKernel,
    };
    let mut trail = None;
    if let Some(dir) = &a.out {
        create_dir(dir)?;
        let path = dir.join("fuzz.jsonl");
        trail = Some((create_file(&path)?, path));
    }
    let mut write_err = None;
    let summary = run_fuzz(kernel, &cfg, |rec| {
        if let (Some((w, path)), None) = (trail.as_mut(), write_err.as_ref()) {
            if let Err(e) = jsonl_line(w, rec, path) {
                write_err = Some(e);
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e);
    }
    if let (Some(dir), Some((mut w, path))) = (&a.out, trail) {
        w.flush().map_err(io_at(&path, "writing"))?;
        write_json(&dir.join("fuzz_summary.json"), &summary)?;
        let mut rc = RunConfig::new("verify-maps");
        rc.trials = Some(a.trials);
        rc.seed = Some(a.seed);
        rc.coeff_bound = Some(a.coeff_bound);
        rc.fault = a.inject_fault.map(|_| "e-sign".to_string());
        rc.outputs = vec!["fuzz.jsonl".into(), "fuzz_summary.json".into()];
        rc.write(dir)?;
    }
    say!("kernel {} | {} trials from seed {} | coefficients in [-{b}, {b}]", summary.kernel, a.trials, a.seed, b = a.coeff_bound);
    for (name, t) in &summary.tallies {
        say!("{name:<20} passed {:>7} failed {:>7}", t.passed, t.failed);
    }
    let failing: Vec<String> = summary
        .tallies
        .iter()
        .filter_map(|(name, t)| t.first_failing_seed.map(|s| format!("{name} (first at seed {s})")))
        .collect();
    if failing.is_empty() {
        Ok(())
    } else {
        let seed = summary.tallies.values().filter_map(|t| t.first_failing_seed).min().unwrap();
        Err(CliError::Verification(format!(
            "{} failing identities: {}; reproduce with --seed {seed} --trials 1 --coeff-bound {}",
            failing.len(),
            failing.join(", "),
            a.coeff_bound
        )))
    }
}

fn read_cursor(path: &Path) -> CliResult<ScanCursor> {
    let text = std::fs::read_to_string(path).map_err(io_at(path, "reading"))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_records(path: &Path, xi: &AlgebraicReal) -> CliResult<Vec<MinimalPointRecord>> {
    let f = File::open(path).map_err(io_at(path, "opening"))?;
    read_records(BufReader::new(f), xi).map_err(|e| match e {
        MinPointsError::Io(source) => CliError::Io {
            context: format!("reading {}", path.display()),
            source,
        },
        other => invalid(format!("{}: {other}", path.display())),
    })
}

fn dimension_of(records: &[MinimalPointRecord], path: &Path) -> CliResult<usize> {
    let first = records.first().ok_or_else(|| invalid(format!("{} holds no records", path.display())))?;
    let n = first.x.len() - 1;
    if records.iter().any(|r| r.x.len() != n + 1) {
        return Err(invalid(format!("{} mixes point dimensions", path.display())));
    }
    Ok(n)
}

pub fn minpoints(a: &MinpointsArgs) -> CliResult<()> {
    let n = a.n as usize;
    let (xi, xi_cfg) = resolve_xi(&a.xi)?;
    if xi.degree() <= n {
        return Err(invalid(format!("xi has degree {}; n = {n} needs degree above n", xi.degree())));
    }
    let precision_bits = precision_bits_from_env().map_err(|e| invalid(e.to_string()))?;
    let bound = match (a.max_x0, a.count) {
        (Some(m), _) => ScanBound::X0Max(m),
        (None, Some(k)) => ScanBound::Count(k as usize),
        (None, None) => unreachable!("clap requires one bound"),
    };
    let out = &a.out;
    let records_path = out.join(RECORDS);
    let cursor_path = out.join(CURSOR);
    let resume = if a.resume {
        let stored = RunConfig::read(out)?;
        let same_xi = stored.xi.as_ref().map(|x| &x.canonical) == Some(&xi_cfg.canonical);
        if !same_xi || stored.n != Some(n) {
            return Err(invalid(format!("{} was produced for a different xi or n", out.display())));
        }
        let cursor = read_cursor(&cursor_path)?;
        let existing = load_records(&records_path, &xi)?.len();
        if existing != cursor.records {
            return Err(invalid(format!(
                "{} holds {existing} records but the cursor expects {}",
                records_path.display(),
                cursor.records
            )));
        }
        Some(cursor)
    } else {
        None
    };
    create_dir(out)?;

    let opts = ScanOptions {
        shards: a.shards as usize,
        precision_bits,
    };
    let t = Instant::now();
    let result = enumerate_minimal_points(&xi, n, bound, opts, resume.as_ref()).map_err(|e| invalid(e.to_string()))?;
    let elapsed = t.elapsed();

    let file = if resume.is_some() {
        OpenOptions::new().append(true).open(&records_path)
    } else {
        File::create(&records_path)
    }
    .map_err(io_at(&records_path, "opening"))?;
    let mut w = BufWriter::new(file);
    write_records(&mut w, &result.records)
        .and_then(|_| w.flush())
        .map_err(io_at(&records_path, "writing"))?;
    write_json(&cursor_path, &result.cursor)?;

    let mut rc = RunConfig::new("minpoints");
    rc.xi = Some(xi_cfg);
    rc.n = Some(n);
    match bound {
        ScanBound::X0Max(m) => rc.x0_max = Some(m.to_string()),
        ScanBound::Count(k) => rc.count = Some(k),
    }
    rc.shards = Some(opts.shards);
    rc.precision_bits = Some(precision_bits);
    rc.resumed_at = resume.map(|c| c.next_x0);
    rc.outputs = vec![RECORDS.into(), CURSOR.into()];
    rc.write(out)?;

    say!(
        "{} new records ({} in total); next x0 = {}",
        result.records.len(),
        result.cursor.records,
        result.cursor.next_x0
    );
    eprintln!("scan took {:.3}s, {} exact comparisons", elapsed.as_secs_f64(), result.exact_checks);
    Ok(())
}

pub fn analyze(a: &AnalyzeArgs) -> CliResult<()> {
    let (xi, xi_cfg) = xi_for_input(a.xi.as_deref(), &a.input)?;
    let records = load_records(&a.input, &xi)?;
    let n = dimension_of(&records, &a.input)?;
    if records.len() < 2 {
        return Err(invalid("analysis needs at least two records"));
    }
    create_dir(&a.out)?;
    let mut outputs = Vec::new();
    let mut write_table = |name: &str, f: &dyn Fn(&mut BufWriter<File>) -> std::io::Result<()>| -> CliResult<()> {
        let path = a.out.join(name);
        let mut w = create_file(&path)?;
        f(&mut w).and_then(|_| w.flush()).map_err(io_at(&path, "writing"))?;
        outputs.push(name.to_string());
        Ok(())
    };

    let exps = exponent_report(&records, n, a.window).map_err(|e| invalid(e.to_string()))?;
    write_table("exponents.csv", &|w| write_exponents_csv(w, &exps))?;
    say!(
        "{} records; uniform exponent over the last {} in [{:.4}, {:.4}]; max L_i X_(i+1)^(1/{n}) = {:.6}",
        records.len(),
        exps.window,
        exps.window_min,
        exps.window_max,
        exps.dirichlet_max
    );
    if n == 3 && records.len() >= 3 {
        let chain = chain_analyze(&records).map_err(|e| invalid(e.to_string()))?;
        let cij = cij_table(&records, &chain, &[]).map_err(|e| invalid(e.to_string()))?;
        let audit = schmidt_audit(&records, &chain);
        write_table("chain.csv", &|w| write_chain_csv(w, &chain))?;
        write_table("cij.csv", &|w| write_cij_csv(w, &cij))?;
        write_table("schmidt.csv", &|w| write_schmidt_csv(w, &audit))?;
        write_json(&a.out.join("chain.json"), &chain)?;
        outputs.push("chain.json".into());
        say!(
            "|I| = {}, |J| = {}, dimension collapses {:?}, points primitive {}, planes primitive {}, max raw Schmidt ratio {}",
            chain.i_set.len(),
            chain.j_set.len(),
            chain.collapses,
            chain.all_points_primitive(),
            chain.all_planes_primitive(),
            audit.max_raw.as_deref().unwrap_or("-")
        );
    } else if n != 3 {
        eprintln!("note: chain tables need n = 3; wrote exponents.csv only");
    }
    let mut rc = RunConfig::new("analyze");
    rc.xi = Some(xi_cfg);
    rc.n = Some(n);
    rc.inputs = vec![display(&a.input)];
    rc.outputs = outputs;
    rc.write(&a.out)
}

/// Largest x0 examined by the run beside `input`, when its cursor is present.
fn covered_bound(input: &Path) -> CliResult<Option<BigInt>> {
    let path = crate::config::parent_dir(input).join(CURSOR);
    if !path.exists() {
        return Ok(None);
    }
    let c = read_cursor(&path)?;
    let next = parse_int(&c.next_x0).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    Ok(Some(next - 1))
}

pub fn oracle_check(a: &OracleCheckArgs) -> CliResult<()> {
    let (xi, _) = xi_for_input(a.xi.as_deref(), &a.input)?;
    if let Some(covered) = covered_bound(&a.input)? {
        if BigInt::from(a.bound) > covered {
            return Err(invalid(format!("--bound {} exceeds the scanned range (x0 <= {covered})", a.bound)));
        }
    }
    let records = load_records(&a.input, &xi)?;
    let n = dimension_of(&records, &a.input)?;
    let report = verify_minimality_oracle(&records, &xi, n, a.bound).map_err(|e| match e {
        MinPointsError::MismatchFound { .. } => CliError::Verification(e.to_string()),
        other => invalid(other.to_string()),
    })?;
    print_json(&report);
    if report.all_green() {
        Ok(())
    } else {
        Err(CliError::Verification("records agree with the oracle but fail a sequence property".into()))
    }
}

pub fn prop43(a: &Prop43Args) -> CliResult<()> {
    let cfg = FuzzConfig {
        trials: a.trials,
        seed: a.seed,
        coeff_bound: a.coeff_bound,
    };
    let mut trail = None;
    if let Some(dir) = &a.out {
        create_dir(dir)?;
        let path = dir.join("prop43.jsonl");
        trail = Some((create_file(&path)?, path));
    }
    let mut write_err = None;
    let summary = run_prop43(&cfg, |rec| {
        if let (Some((w, path)), None) = (trail.as_mut(), write_err.as_ref()) {
            if let Err(e) = jsonl_line(w, rec, path) {
                write_err = Some(e);
            }
        }
    });
    if let Some(e) = write_err {
        return Err(e);
    }
    if let (Some(dir), Some((mut w, path))) = (&a.out, trail) {
        w.flush().map_err(io_at(&path, "writing"))?;
        write_json(&dir.join("prop43_summary.json"), &summary)?;
        let mut rc = RunConfig::new("prop43-test");
        rc.trials = Some(a.trials);
        rc.seed = Some(a.seed);
        rc.coeff_bound = Some(a.coeff_bound);
        rc.outputs = vec!["prop43.jsonl".into(), "prop43_summary.json".into()];
        rc.write(dir)?;
    }
    print_json(&summary);
    match summary.first_failing_seed {
        None if summary.all_passed() => Ok(()),
        seed => Err(CliError::Verification(format!(
            "{} instances failed; first failing seed {seed:?}",
            summary.failed
        ))),
    }
}

pub fn hypothesis(a: &HypothesisArgs) -> CliResult<()> {
    let lambda = parse_rational(&a.lambda).map_err(|e| invalid(format!("--lambda: {e}")))?;
    let c = parse_rational(&a.c).map_err(|e| invalid(format!("--c: {e}")))?;
    if !c.is_positive() {
        return Err(invalid("--c must be positive"));
    }
    if !(a.ratio > 1.0 && a.ratio.is_finite()) {
        return Err(invalid("--ratio must exceed 1"));
    }
    let (xi, xi_cfg): (AlgebraicReal, XiConfig) = xi_for_input(a.xi.as_deref(), &a.input)?;
    let records = load_records(&a.input, &xi)?;
    let n = dimension_of(&records, &a.input)?;
    let covered = match a.covered_to {
        Some(v) => BigInt::from(v),
        None => match covered_bound(&a.input)? {
            Some(v) => v,
            None => records.last().unwrap().norm.clone(),
        },
    };
    let lo: u64 = records[0].norm.clone().try_into().map_err(|_| invalid("first record too large"))?;
    let hi: u64 = covered.clone().try_into().map_err(|_| invalid("covered range too large for a grid"))?;
    let grid = geometric_grid(lo, hi, a.ratio);
    let report = hypothesis_scan(&records, &lambda, &c, &grid, &covered).map_err(|e| invalid(e.to_string()))?;
    let holds = report.rows.iter().filter(|r| r.holds).count();
    say!(
        "lambda = {}, c = {}: inequality holds at {holds} of {} grid points up to X = {covered}; first failure {}",
        report.lambda,
        report.c,
        report.rows.len(),
        report.first_failure.as_deref().unwrap_or("none")
    );
    if let Some(dir) = &a.out {
        create_dir(dir)?;
        let path = dir.join("hypothesis.csv");
        let mut w = create_file(&path)?;
        let body = (|| -> std::io::Result<()> {
            writeln!(w, "# X: grid value; record: index of the best record with X_i <= X; margin: ln L_i + lambda ln X - ln c; holds: margin <= 0")?;
            writeln!(w, "X,record,margin,holds")?;
            for r in &report.rows {
                writeln!(w, "{},{},{:.12e},{}", r.x, r.record, r.margin, r.holds)?;
            }
            w.flush()
        })();
        body.map_err(io_at(&path, "writing"))?;
        let mut rc = RunConfig::new("hypothesis-scan");
        rc.xi = Some(xi_cfg);
        rc.n = Some(n);
        rc.lambda = Some(report.lambda.clone());
        rc.c = Some(report.c.clone());
        rc.x0_max = Some(covered.to_string());
        rc.inputs = vec![display(&a.input)];
        rc.outputs = vec!["hypothesis.csv".into()];
        rc.write(dir)?;
    }
    Ok(())
}
