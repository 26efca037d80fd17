//! Minimal points of ξ in Z^(n+1), computed by a certified fixed-point scan.
//!
//! For each first coordinate `x0` the best companions are the nearest
//! integers to `x0 ξ^i`, so the record sequence is obtained by scanning
//! `x0 = 1, 2, …` and keeping strict decreases of `L`. The fast path tracks
//! `frac(x0 ξ^i)` as wrapping fixed-point integers with an explicit error
//! radius and only hands borderline candidates to exact arithmetic.

use crate::exactreal::{compare_l_forms, l_form, AlgebraicReal, LForm};
use crate::latgeom::IntPoint;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::io::{BufRead, Write};
use std::str::FromStr;

pub const PRECISION_ENV: &str = "DIOPHLAB_PRECISION_BITS";
pub const DEFAULT_PRECISION_BITS: u32 = 128;
/// Significant digits stored for `L` in record files.
pub const L_DIGITS: usize = 30;

#[derive(Debug, thiserror::Error)]
pub enum MinPointsError {
    #[error("ξ must lie strictly between 0 and 1; canonicalize it first")]
    XiOutOfRange,
    #[error("ξ is rational")]
    RationalInput,
    #[error("deg ξ = {degree} does not exceed n = {n}; the record sequence would terminate")]
    DegreeTooSmall { degree: usize, n: usize },
    #[error("n must be 1, 2 or 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("fixed-point precision must be in 32..=128 bits, got {0:?}")]
    BadPrecision(String),
    #[error("record mismatch at position {index}: expected {expected}, found {found}")]
    MismatchFound {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("malformed record line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `(ξ − ⌊ξ⌋, ⌊ξ⌋)`.
pub fn canonicalize_xi(xi: &AlgebraicReal) -> Result<(AlgebraicReal, BigInt), MinPointsError> {
    if xi.rational_value().is_some() {
        return Err(MinPointsError::RationalInput);
    }
    let k = xi.floor();
    if k.is_zero() {
        return Ok((xi.clone(), k));
    }
    Ok((xi.shifted(&k), k))
}

fn in_unit_interval(xi: &AlgebraicReal) -> bool {
    let one = BigInt::one();
    xi.sign_of_form(&[BigInt::zero(), one.clone()]) == Ordering::Greater
        && xi.sign_of_form(&[one.clone(), -one]) == Ordering::Greater
}

fn check_input(xi: &AlgebraicReal, n: usize) -> Result<(), MinPointsError> {
    if !(1..=3).contains(&n) {
        return Err(MinPointsError::UnsupportedDimension(n));
    }
    if !in_unit_interval(xi) {
        return Err(MinPointsError::XiOutOfRange);
    }
    if xi.degree() <= n {
        return Err(MinPointsError::DegreeTooSmall {
            degree: xi.degree(),
            n,
        });
    }
    Ok(())
}

fn best_point(x0: &BigInt, xi: &AlgebraicReal, n: usize) -> IntPoint {
    let mut coords = Vec::with_capacity(n + 1);
    coords.push(x0.clone());
    for i in 1..=n {
        let mut c = vec![BigInt::zero(); i + 1];
        c[0] = BigInt::one();
        c[i] = x0 * 2;
        coords.push(xi.floor_form_scaled(&c, -1));
    }
    IntPoint(coords)
}

/// `(x0, round(x0 ξ), …, round(x0 ξ^n))`.
pub fn best_for_x0(x0: &BigInt, xi: &AlgebraicReal, n: usize) -> Result<IntPoint, MinPointsError> {
    if !in_unit_interval(xi) {
        return Err(MinPointsError::XiOutOfRange);
    }
    assert!(x0 >= &BigInt::one(), "x0 must be positive");
    Ok(best_point(x0, xi, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPointRecord {
    pub i: usize,
    pub x: IntPoint,
    pub norm: BigInt,
    pub l_form: LForm,
    pub l_digits: String,
    pub primitive: bool,
    /// First coordinate of the following record, once known.
    pub next_x0: Option<BigInt>,
}

impl MinimalPointRecord {
    fn new(i: usize, x: IntPoint, l_form: LForm, xi: &AlgebraicReal) -> Self {
        MinimalPointRecord {
            i,
            norm: x.sup_norm(),
            l_digits: l_form.to_significant(xi, L_DIGITS),
            primitive: x.is_primitive(),
            l_form,
            x,
            next_x0: None,
        }
    }

    pub fn x0(&self) -> &BigInt {
        &self.x[0]
    }

    /// Index `k` with `L = |x0 ξ^k − x_k|`.
    pub fn argmax(&self) -> usize {
        self.l_form.index
    }

    pub fn to_json(&self) -> RecordJson {
        RecordJson {
            i: self.i,
            x: self.x.to_strings(),
            norm: self.norm.to_string(),
            l: self.l_digits.clone(),
            argmax: self.argmax(),
            primitive: self.primitive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub i: usize,
    pub x: Vec<String>,
    #[serde(rename = "X")]
    pub norm: String,
    #[serde(rename = "L")]
    pub l: String,
    pub argmax: usize,
    pub primitive: bool,
}

/// Where a scan stopped: the next `x0` to examine and the record to beat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanCursor {
    pub next_x0: String,
    pub current_l_form: Vec<String>,
    #[serde(default)]
    pub current_index: usize,
    #[serde(default)]
    pub records: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanBound {
    X0Max(u64),
    Count(usize),
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub shards: usize,
    pub precision_bits: u32,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            shards: 1,
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }
}

/// Reads the fast-path width from the environment.
pub fn precision_bits_from_env() -> Result<u32, MinPointsError> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_PRECISION_BITS),
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(b) if (32..=128).contains(&b) => Ok(b),
            _ => Err(MinPointsError::BadPrecision(v)),
        },
    }
}

#[derive(Clone, Debug)]
pub struct ScanOutput {
    pub records: Vec<MinimalPointRecord>,
    pub cursor: ScanCursor,
    /// Number of candidates that needed an exact comparison.
    pub exact_checks: u64,
}

/// Record state carried between scan segments.
struct Current {
    x0: u64,
    form: LForm,
    /// Strict upper bound on `L · 2^P`, when known from the fast path.
    upper: Option<u128>,
}

struct FixedPoint {
    bits: u32,
    mask: u128,
    half: u128,
    steps: [u128; 3],
}

impl FixedPoint {
    fn new(xi: &AlgebraicReal, n: usize, bits: u32) -> Self {
        let mask = if bits == 128 { u128::MAX } else { (1u128 << bits) - 1 };
        let mut steps = [0u128; 3];
        for (i, s) in steps.iter_mut().enumerate().take(n) {
            *s = Self::start(xi, &BigInt::one(), i + 1, bits, mask);
        }
        FixedPoint {
            bits,
            mask,
            half: 1u128 << (bits - 1),
            steps,
        }
    }

    /// `floor(x0 ξ^i 2^P) mod 2^P`.
    fn start(xi: &AlgebraicReal, x0: &BigInt, i: usize, bits: u32, mask: u128) -> u128 {
        let mut c = vec![BigInt::zero(); i + 1];
        c[i] = x0.clone();
        let v = xi.floor_form_scaled(&c, bits as i64);
        let m: BigInt = v & BigInt::from(mask);
        m.to_u128().expect("masked value fits")
    }

    fn dist(&self, g: u128) -> u128 {
        if g <= self.half {
            g
        } else {
            (!g & self.mask) + 1
        }
    }
}

/// `(x0, lower, upper)`: the fixed-point enclosure `lower < L 2^P < upper`.
type Candidate = (u64, u128, u128);

/// Scans `[s, e)` and returns every `x0` that might beat all earlier points
/// of the same shard.
fn scan_shard(fp: &FixedPoint, xi: &AlgebraicReal, n: usize, s: u64, e: u64) -> Vec<Candidate> {
    let x0s = BigInt::from(s);
    let mut acc = [0u128; 3];
    for (i, a) in acc.iter_mut().enumerate().take(n) {
        *a = FixedPoint::start(xi, &x0s, i + 1, fp.bits, fp.mask);
    }
    let mut best_upper = u128::MAX;
    let mut out = Vec::new();
    for x0 in s..e {
        let mut lmax = 0u128;
        for i in 0..n {
            lmax = lmax.max(fp.dist(acc[i]));
            acc[i] = acc[i].wrapping_add(fp.steps[i]) & fp.mask;
        }
        let err = (x0 - s + 1) as u128;
        let lo = lmax.saturating_sub(err);
        let hi = lmax.saturating_add(err);
        if lo < best_upper {
            out.push((x0, lo, hi));
        }
        best_upper = best_upper.min(hi);
    }
    out
}

fn shard_bounds(start: u64, end: u64, shards: usize) -> Vec<(u64, u64)> {
    let len = end - start;
    let k = (shards.max(1) as u64).min(len.max(1));
    let base = len / k;
    let extra = len % k;
    let mut out = Vec::with_capacity(k as usize);
    let mut a = start;
    for j in 0..k {
        let b = a + base + u64::from(j < extra);
        if b > a {
            out.push((a, b));
        }
        a = b;
    }
    out
}

fn scan_range(
    xi: &AlgebraicReal,
    n: usize,
    fp: &FixedPoint,
    start: u64,
    end: u64,
    shards: usize,
    cur: &mut Option<Current>,
    records: &mut Vec<MinimalPointRecord>,
    limit: Option<usize>,
    exact_checks: &mut u64,
    next_index: &mut usize,
) -> bool {
    let bounds = shard_bounds(start, end, shards);
    let cands: Vec<Vec<Candidate>> = bounds
        .par_iter()
        .map(|&(a, b)| scan_shard(fp, xi, n, a, b))
        .collect();
    for (x0, lo, hi) in cands.into_iter().flatten() {
        if let Some(c) = cur.as_ref() {
            if let Some(u) = c.upper {
                if lo >= u {
                    continue;
                }
            }
        }
        *exact_checks += 1;
        let x = best_point(&BigInt::from(x0), xi, n);
        let form = l_form(&x, xi);
        let better = match cur.as_ref() {
            None => true,
            Some(c) => compare_l_forms(&form, &c.form, xi) == Ordering::Less,
        };
        if better {
            if let Some(last) = records.last_mut() {
                last.next_x0 = Some(BigInt::from(x0));
            }
            let rec = MinimalPointRecord::new(*next_index, x, form.clone(), xi);
            *cur = Some(Current {
                x0,
                form,
                upper: Some(hi),
            });
            *next_index += 1;
            records.push(rec);
            if limit.is_some_and(|l| records.len() >= l) {
                return true;
            }
        }
    }
    false
}

fn cursor_of(next_x0: u64, cur: &Option<Current>, records: usize) -> ScanCursor {
    ScanCursor {
        next_x0: next_x0.to_string(),
        current_l_form: cur
            .as_ref()
            .map(|c| c.form.coeffs.iter().map(|v| v.to_string()).collect())
            .unwrap_or_default(),
        current_index: cur.as_ref().map(|c| c.form.index).unwrap_or(0),
        records,
    }
}

fn parse_cursor(c: &ScanCursor) -> Result<(u64, Option<Current>, usize), MinPointsError> {
    let bad = |r: &str| MinPointsError::Malformed {
        line: 0,
        reason: r.to_string(),
    };
    let next: u64 = c.next_x0.parse().map_err(|_| bad("next_x0"))?;
    if next == 0 {
        return Err(bad("next_x0 must be positive"));
    }
    let cur = if c.current_l_form.is_empty() {
        None
    } else {
        let coeffs = c
            .current_l_form
            .iter()
            .map(|s| BigInt::from_str(s).map_err(|_| bad("current_l_form")))
            .collect::<Result<Vec<_>, _>>()?;
        Some(Current {
            x0: next - 1,
            form: LForm {
                index: c.current_index,
                coeffs,
            },
            upper: None,
        })
    };
    Ok((next, cur, c.records))
}

/// Minimal points of `ξ` in `Z^(n+1)`, optionally continuing from a cursor.
pub fn enumerate_minimal_points(
    xi: &AlgebraicReal,
    n: usize,
    bound: ScanBound,
    opts: ScanOptions,
    resume: Option<&ScanCursor>,
) -> Result<ScanOutput, MinPointsError> {
    check_input(xi, n)?;
    if !(32..=128).contains(&opts.precision_bits) {
        return Err(MinPointsError::BadPrecision(opts.precision_bits.to_string()));
    }
    let fp = FixedPoint::new(xi, n, opts.precision_bits);
    let (mut next, mut cur, done) = match resume {
        Some(c) => parse_cursor(c)?,
        None => (1, None, 0),
    };
    let mut next_index = done + 1;
    let mut records = Vec::new();
    let mut exact_checks = 0;
    match bound {
        ScanBound::X0Max(m) => {
            if next <= m {
                scan_range(
                    xi, n, &fp, next, m + 1, opts.shards, &mut cur, &mut records, None,
                    &mut exact_checks, &mut next_index,
                );
                next = m + 1;
            }
        }
        ScanBound::Count(k) => {
            let mut chunk: u64 = 1 << 12;
            while records.len() < k {
                let end = next.checked_add(chunk).expect("x0 overflow");
                let hit = scan_range(
                    xi, n, &fp, next, end, opts.shards, &mut cur, &mut records, Some(k),
                    &mut exact_checks, &mut next_index,
                );
                next = if hit {
                    cur.as_ref().map(|c| c.x0 + 1).unwrap_or(end)
                } else {
                    end
                };
                chunk = chunk.saturating_mul(2).min(1 << 26);
            }
        }
    }
    let cursor = cursor_of(next, &cur, next_index - 1);
    Ok(ScanOutput {
        records,
        cursor,
        exact_checks,
    })
}

/// Record sequence for `x0 <= x0_max` by the plain definition, with exact
/// comparisons at every step.
pub fn brute_force_records(
    xi: &AlgebraicReal,
    n: usize,
    x0_max: u64,
) -> Result<Vec<MinimalPointRecord>, MinPointsError> {
    check_input(xi, n)?;
    let mut out: Vec<MinimalPointRecord> = Vec::new();
    let mut best: Option<LForm> = None;
    for x0 in 1..=x0_max {
        let x0b = BigInt::from(x0);
        let x = best_point(&x0b, xi, n);
        let form = l_form(&x, xi);
        let better = best
            .as_ref()
            .is_none_or(|b| compare_l_forms(&form, b, xi) == Ordering::Less);
        if better {
            if let Some(last) = out.last_mut() {
                last.next_x0 = Some(x0b);
            }
            best = Some(form.clone());
            out.push(MinimalPointRecord::new(out.len() + 1, x, form, xi));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OracleReport {
    pub compared: usize,
    pub x0_bound: u64,
    pub norms_increasing: bool,
    pub l_decreasing: bool,
    pub all_primitive: bool,
    pub norm_is_x0: bool,
}

impl OracleReport {
    pub fn all_green(&self) -> bool {
        self.norms_increasing && self.l_decreasing && self.all_primitive && self.norm_is_x0
    }
}

/// Re-derives the records with `x0 <= x0_bound` by definition and compares.
pub fn verify_minimality_oracle(
    records: &[MinimalPointRecord],
    xi: &AlgebraicReal,
    n: usize,
    x0_bound: u64,
) -> Result<OracleReport, MinPointsError> {
    let oracle = brute_force_records(xi, n, x0_bound)?;
    let bound = BigInt::from(x0_bound);
    let mine: Vec<&MinimalPointRecord> = records.iter().filter(|r| r.x0() <= &bound).collect();
    let show = |r: Option<&MinimalPointRecord>| match r {
        Some(r) => format!("x = {}", r.x),
        None => "nothing".to_string(),
    };
    for idx in 0..oracle.len().max(mine.len()) {
        let a = oracle.get(idx);
        let b = mine.get(idx).copied();
        let same = match (a, b) {
            (Some(a), Some(b)) => a.x == b.x && a.i == b.i && a.l_form == b.l_form,
            _ => false,
        };
        if !same {
            return Err(MinPointsError::MismatchFound {
                index: idx + 1,
                expected: show(a),
                found: show(b),
            });
        }
    }
    let norms_increasing = mine.windows(2).all(|w| w[0].norm < w[1].norm);
    let l_decreasing = mine
        .windows(2)
        .all(|w| compare_l_forms(&w[1].l_form, &w[0].l_form, xi) == Ordering::Less);
    Ok(OracleReport {
        compared: mine.len(),
        x0_bound,
        norms_increasing,
        l_decreasing,
        all_primitive: mine.iter().all(|r| r.primitive),
        norm_is_x0: mine.iter().all(|r| &r.norm == r.x0()),
    })
}

pub fn write_records<W: Write>(mut w: W, records: &[MinimalPointRecord]) -> std::io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut w, &r.to_json())?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn records_to_jsonl(records: &[MinimalPointRecord]) -> String {
    let mut buf = Vec::new();
    write_records(&mut buf, records).expect("writing to memory");
    String::from_utf8(buf).expect("json is utf-8")
}

/// Reads a records file and rebuilds exact L-forms from the points.
pub fn read_records<R: BufRead>(
    r: R,
    xi: &AlgebraicReal,
) -> Result<Vec<MinimalPointRecord>, MinPointsError> {
    let mut out: Vec<MinimalPointRecord> = Vec::new();
    for (k, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| MinPointsError::Malformed { line: k + 1, reason };
        let j: RecordJson = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let coords = j
            .x
            .iter()
            .map(|s| BigInt::from_str(s).map_err(|_| bad(format!("bad coordinate {s:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() < 2 {
            return Err(bad("point needs at least two coordinates".into()));
        }
        let x = IntPoint(coords);
        let form = l_form(&x, xi);
        let mut rec = MinimalPointRecord::new(j.i, x, form, xi);
        rec.l_digits = j.l;
        if let Some(last) = out.last_mut() {
            last.next_x0 = Some(rec.x0().clone());
        }
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2m1() -> AlgebraicReal {
        AlgebraicReal::from_i64s(&[-1, 2, 1], (0, 1), (1, 1)).unwrap()
    }

    fn fourth_root2m1() -> AlgebraicReal {
        AlgebraicReal::from_i64s(&[-1, 4, 6, 4, 1], (0, 1), (1, 2)).unwrap()
    }

    fn x0s(r: &[MinimalPointRecord]) -> Vec<String> {
        r.iter().map(|r| r.x0().to_string()).collect()
    }

    #[test]
    fn best_points() {
        let xi = sqrt2m1();
        let p = best_for_x0(&BigInt::from(12), &xi, 1).unwrap();
        assert_eq!(p, IntPoint::from_i64s(&[12, 5]));
        let q = best_for_x0(&BigInt::from(1), &fourth_root2m1(), 3).unwrap();
        assert_eq!(q, IntPoint::from_i64s(&[1, 0, 0, 0]));
        let sqrt2 = AlgebraicReal::from_i64s(&[-2, 0, 1], (1, 1), (2, 1)).unwrap();
        assert!(matches!(
            best_for_x0(&BigInt::from(1), &sqrt2, 1),
            Err(MinPointsError::XiOutOfRange)
        ));
    }

    #[test]
    fn canonicalization() {
        let sqrt2 = AlgebraicReal::from_i64s(&[-2, 0, 1], (1, 1), (2, 1)).unwrap();
        let (c, k) = canonicalize_xi(&sqrt2).unwrap();
        assert_eq!(k, BigInt::from(1));
        assert_eq!(c.poly(), sqrt2m1().poly());
        let r4 = AlgebraicReal::from_i64s(&[-2, 0, 0, 0, 1], (1, 1), (2, 1)).unwrap();
        let (c, k) = canonicalize_xi(&r4).unwrap();
        assert_eq!(k, BigInt::from(1));
        assert_eq!(c.poly(), fourth_root2m1().poly());
        let (c, k) = canonicalize_xi(&sqrt2m1()).unwrap();
        assert!(k.is_zero());
        assert_eq!(c.poly(), sqrt2m1().poly());
        let half = AlgebraicReal::from_i64s(&[-1, 2], (0, 1), (1, 1)).unwrap();
        assert!(matches!(canonicalize_xi(&half), Err(MinPointsError::RationalInput)));
    }

    #[test]
    fn continued_fraction_denominators() {
        let out = enumerate_minimal_points(
            &sqrt2m1(),
            1,
            ScanBound::X0Max(100),
            ScanOptions::default(),
            None,
        )
        .unwrap();
        assert_eq!(x0s(&out.records), ["1", "2", "5", "12", "29", "70"]);
        assert!(out.records[3].l_digits.starts_with("0.02943725152"));
        assert_eq!(out.records[3].l_digits.len(), "0.0".len() + L_DIGITS);
    }

    #[test]
    fn degree_too_small_is_refused() {
        assert!(matches!(
            enumerate_minimal_points(&sqrt2m1(), 3, ScanBound::X0Max(10), ScanOptions::default(), None),
            Err(MinPointsError::DegreeTooSmall { degree: 2, n: 3 })
        ));
    }

    #[test]
    fn engine_matches_oracle_for_any_shard_count_and_width() {
        let xi = fourth_root2m1();
        let oracle = brute_force_records(&xi, 3, 3000).unwrap();
        for shards in [1, 3, 8] {
            for bits in [32, 64, 128] {
                let out = enumerate_minimal_points(
                    &xi,
                    3,
                    ScanBound::X0Max(3000),
                    ScanOptions {
                        shards,
                        precision_bits: bits,
                    },
                    None,
                )
                .unwrap();
                assert_eq!(records_to_jsonl(&out.records), records_to_jsonl(&oracle));
            }
        }
    }

    #[test]
    fn count_and_resume_agree_with_single_scan() {
        let xi = fourth_root2m1();
        let full = enumerate_minimal_points(&xi, 3, ScanBound::X0Max(5000), ScanOptions::default(), None)
            .unwrap();
        let first = enumerate_minimal_points(&xi, 3, ScanBound::X0Max(700), ScanOptions::default(), None)
            .unwrap();
        let rest = enumerate_minimal_points(
            &xi,
            3,
            ScanBound::X0Max(5000),
            ScanOptions::default(),
            Some(&first.cursor),
        )
        .unwrap();
        let mut joined = first.records.clone();
        joined.extend(rest.records);
        assert_eq!(records_to_jsonl(&joined), records_to_jsonl(&full.records));

        let counted = enumerate_minimal_points(&xi, 3, ScanBound::Count(5), ScanOptions::default(), None)
            .unwrap();
        assert_eq!(records_to_jsonl(&counted.records), records_to_jsonl(&full.records[..5]));
    }

    #[test]
    fn oracle_detects_tampering() {
        let xi = sqrt2m1();
        let recs = brute_force_records(&xi, 1, 100).unwrap();
        let rep = verify_minimality_oracle(&recs, &xi, 1, 100).unwrap();
        assert!(rep.all_green());
        let mut t = recs.clone();
        t.remove(2);
        assert!(matches!(
            verify_minimality_oracle(&t, &xi, 1, 100),
            Err(MinPointsError::MismatchFound { index: 3, .. })
        ));
        assert!(matches!(
            verify_minimality_oracle(&[], &xi, 1, 1),
            Err(MinPointsError::MismatchFound { index: 1, .. })
        ));
    }

    #[test]
    fn records_round_trip_through_jsonl() {
        let xi = fourth_root2m1();
        let recs = brute_force_records(&xi, 3, 500).unwrap();
        let text = records_to_jsonl(&recs);
        let back = read_records(text.as_bytes(), &xi).unwrap();
        assert_eq!(back, recs);
    }
}
