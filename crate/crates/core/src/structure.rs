//! Subspace structure of a minimal-point sequence in Z⁴: the planes `W_i`,
//! the 3-spaces `U_i`, the jump sets `I` and `J`, heights, `C_{i,j}` tables
//! and exponent estimates.
//!
//! Indices follow the record numbering (`x_1` is the first record). Every
//! subspace comparison is an exact wedge-proportionality test; the floating
//! point columns are diagnostics derived from the stored 30-digit L-values.

use crate::exactreal::parse_rational;
use crate::latgeom::{rank, subspace_height, subspace_intersection, subspace_sum, wedge, IntPoint, MultiVector};
use crate::maps::{det2, ExactKernel, MapKernel, PairZ2};
use crate::minpoints::MinimalPointRecord;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::io::Write;

#[derive(Debug, thiserror::Error)]
pub enum StructureError {
    #[error("need at least {need} records, got {got}")]
    TooFewRecords { need: usize, got: usize },
    #[error("chain analysis needs points of Z⁴, got length {0}")]
    WrongDimension(usize),
    #[error("W_{index} has dimension below 2")]
    DimensionCollapse { index: usize },
    #[error("index {0} is not a determined element of I")]
    IndexNotInI(usize),
    #[error("X = {x} lies outside the covered range [{lo}, {hi})")]
    GridOutOfRange { x: String, lo: String, hi: String },
    #[error("unparsable L-value {0:?}")]
    BadLValue(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl Membership {
    fn as_str(self) -> &'static str {
        match self {
            Membership::Yes => "yes",
            Membership::No => "no",
            Membership::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub i: usize,
    /// Grassmann coordinates of `x_{i-1} ∧ x_i`.
    pub w_wedge: Vec<String>,
    pub w_dim: usize,
    pub h_w: String,
    pub w_primitive: bool,
    pub point_primitive: bool,
    pub in_i: Membership,
    /// `x_{i-1} ∧ x_i ∧ x_{i+1}`, for `i ∈ I`.
    pub u_wedge: Option<Vec<String>>,
    pub h_u: Option<String>,
    pub in_j: Option<Membership>,
    /// `C(x_i, x_{i+1})`, when the successor record exists.
    pub c_i: Option<[String; 2]>,
    /// `H(W_i) / (X_i L_{i-1})`.
    pub hw_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainAnalysis {
    pub first_index: usize,
    pub entries: Vec<ChainEntry>,
    pub i_set: Vec<usize>,
    pub j_set: Vec<usize>,
    pub collapses: Vec<usize>,
    /// `W_{i+1} = W_j = ⟨x_i, x_j⟩` for all consecutive `i < j` in I.
    pub consecutive_planes_agree: bool,
    /// `(x_h, x_i, x_j)` is a basis of `U_i` for consecutive `h < i < j` in I.
    pub triples_span_u: bool,
    pub hw_ratio_min: f64,
    pub hw_ratio_max: f64,
}

impl ChainAnalysis {
    pub fn entry(&self, i: usize) -> Option<&ChainEntry> {
        self.entries.iter().find(|e| e.i == i)
    }

    pub fn all_points_primitive(&self) -> bool {
        self.entries.iter().all(|e| e.point_primitive)
    }

    pub fn all_planes_primitive(&self) -> bool {
        self.entries.iter().filter(|e| e.w_dim == 2).all(|e| e.w_primitive)
    }

    /// Fails on the first plane `W_i` of dimension below two.
    pub fn require_full_rank(&self) -> Result<(), StructureError> {
        match self.collapses.first() {
            Some(&index) => Err(StructureError::DimensionCollapse { index }),
            None => Ok(()),
        }
    }

    /// Consecutive pairs `(i, j)` of I.
    pub fn consecutive_pairs(&self) -> Vec<(usize, usize)> {
        self.i_set.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

fn strings(m: &MultiVector) -> Vec<String> {
    m.coords.iter().map(|c| c.to_string()).collect()
}

fn l_value(r: &MinimalPointRecord) -> Result<BigRational, StructureError> {
    parse_rational(&r.l_digits).map_err(|_| StructureError::BadLValue(r.l_digits.clone()))
}

/// Natural logarithm of a positive rational, accurate to double precision
/// regardless of the size of numerator and denominator.
pub fn ln_rational(x: &BigRational) -> f64 {
    fn ln_int(n: &BigInt) -> f64 {
        let b = n.bits();
        if b <= 960 {
            n.to_f64().unwrap().ln()
        } else {
            let s = b - 64;
            (n >> s).to_f64().unwrap().ln() + s as f64 * std::f64::consts::LN_2
        }
    }
    ln_int(x.numer()) - ln_int(x.denom())
}

fn pair_strings(p: &PairZ2) -> [String; 2] {
    [p.minus.to_string(), p.plus.to_string()]
}

fn point_of(records: &[MinimalPointRecord], i: usize, first: usize) -> &IntPoint {
    &records[i - first].x
}

/// Computes the plane/space structure of a sequence of minimal points in Z⁴.
pub fn chain_analyze(records: &[MinimalPointRecord]) -> Result<ChainAnalysis, StructureError> {
    if records.len() < 3 {
        return Err(StructureError::TooFewRecords {
            need: 3,
            got: records.len(),
        });
    }
    if let Some(r) = records.iter().find(|r| r.x.len() != 4) {
        return Err(StructureError::WrongDimension(r.x.len()));
    }
    let first = records[0].i;
    let last = first + records.len() - 1;
    let x = |i: usize| point_of(records, i, first);
    let ls = records.iter().map(l_value).collect::<Result<Vec<_>, _>>()?;

    let planes: Vec<(usize, MultiVector)> = (first + 1..=last)
        .map(|i| (i, wedge(&[x(i - 1), x(i)]).expect("grade 2 in Z⁴")))
        .collect();
    let plane = |i: usize| &planes[i - first - 1].1;
    let collapses: Vec<usize> = planes.iter().filter(|(_, m)| m.is_zero()).map(|(i, _)| *i).collect();
    let collapsed = |i: usize| collapses.contains(&i);

    let mut in_i = Vec::new();
    for i in first + 1..=last {
        let m = if i == last || collapsed(i) || collapsed(i + 1) {
            if i == last { Membership::Unknown } else { Membership::No }
        } else if plane(i).proportional(plane(i + 1)) {
            Membership::No
        } else {
            Membership::Yes
        };
        in_i.push((i, m));
    }
    let i_set: Vec<usize> = in_i.iter().filter(|(_, m)| *m == Membership::Yes).map(|(i, _)| *i).collect();
    let spaces: Vec<(usize, MultiVector)> = i_set
        .iter()
        .map(|&i| (i, wedge(&[x(i - 1), x(i), x(i + 1)]).expect("grade 3 in Z⁴")))
        .collect();
    let space = |i: usize| &spaces.iter().find(|(k, _)| *k == i).unwrap().1;
    let successor = |i: usize| i_set.iter().copied().find(|&j| j > i);
    let j_of = |i: usize| match successor(i) {
        None => Membership::Unknown,
        Some(j) if space(i).proportional(space(j)) => Membership::No,
        Some(_) => Membership::Yes,
    };
    let j_set: Vec<usize> = i_set.iter().copied().filter(|&i| j_of(i) == Membership::Yes).collect();

    let mut consecutive_planes_agree = true;
    for w in i_set.windows(2) {
        let (i, j) = (w[0], w[1]);
        let xij = wedge(&[x(i), x(j)]).unwrap();
        consecutive_planes_agree &= plane(i + 1).proportional(plane(j)) && xij.proportional(plane(j));
    }
    let mut triples_span_u = true;
    for w in i_set.windows(3) {
        let (h, i, j) = (w[0], w[1], w[2]);
        let t = wedge(&[x(h), x(i), x(j)]).unwrap();
        triples_span_u &= rank(&[x(h), x(i), x(j)]) == 3 && t.proportional(space(i));
    }

    let kern = ExactKernel;
    let mut entries = Vec::new();
    let mut hw_min = f64::INFINITY;
    let mut hw_max = f64::NEG_INFINITY;
    for (i, m) in &in_i {
        let i = *i;
        let pw = plane(i);
        let w_dim = rank(&[x(i - 1), x(i)]);
        let h_w = subspace_height(&[x(i - 1), x(i)]);
        let rec = &records[i - first];
        let l_prev = &ls[i - 1 - first];
        let hw_ratio = (ln_rational(&BigRational::from_integer(h_w.clone()))
            - ln_rational(&BigRational::from_integer(rec.norm.clone()))
            - ln_rational(l_prev))
        .exp();
        if w_dim == 2 {
            hw_min = hw_min.min(hw_ratio);
            hw_max = hw_max.max(hw_ratio);
        }
        let (u_wedge, h_u, in_j) = if *m == Membership::Yes {
            let hu = subspace_height(&[x(i - 1), x(i), x(i + 1)]);
            (Some(strings(space(i))), Some(hu.to_string()), Some(j_of(i)))
        } else {
            (None, None, None)
        };
        entries.push(ChainEntry {
            i,
            w_wedge: strings(pw),
            w_dim,
            h_w: h_w.to_string(),
            w_primitive: !pw.is_zero() && pw.is_primitive(),
            point_primitive: rec.x.is_primitive(),
            in_i: *m,
            u_wedge,
            h_u,
            in_j,
            c_i: (i < last).then(|| pair_strings(&kern.c(x(i), x(i + 1)))),
            hw_ratio,
        });
    }
    Ok(ChainAnalysis {
        first_index: first,
        entries,
        i_set,
        j_set,
        collapses,
        consecutive_planes_agree,
        triples_span_u,
        hw_ratio_min: hw_min,
        hw_ratio_max: hw_max,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Multiplier {
    /// `C_{i,j} = b · C_i`.
    Proportional { b: String },
    NotProportional,
    /// `C_i = 0`.
    Degenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CijRow {
    pub i: usize,
    pub j: usize,
    pub c_ij: [String; 2],
    pub c_ji: [String; 2],
    pub c_i: [String; 2],
    pub multiplier: Multiplier,
    /// `|b| X_{i+1} / X_j`.
    pub b_scale: Option<f64>,
    /// `det(C_i, C_j)`.
    pub det_ci_cj: String,
}

fn multiplier(cij: &PairZ2, ci: &PairZ2) -> Multiplier {
    if ci.is_zero() {
        return Multiplier::Degenerate;
    }
    if det2(cij, ci) != BigInt::zero() {
        return Multiplier::NotProportional;
    }
    let (num, den) = if ci.minus.is_zero() {
        (&cij.plus, &ci.plus)
    } else {
        (&cij.minus, &ci.minus)
    };
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Multiplier::Proportional { b: q.to_string() }
    } else {
        Multiplier::NotProportional
    }
}

/// `C_{i,j}` data for pairs of consecutive elements of I; all consecutive
/// pairs when `pairs` is empty.
pub fn cij_table(
    records: &[MinimalPointRecord],
    chain: &ChainAnalysis,
    pairs: &[(usize, usize)],
) -> Result<Vec<CijRow>, StructureError> {
    let first = chain.first_index;
    let x = |i: usize| point_of(records, i, first);
    let all = chain.consecutive_pairs();
    let wanted: Vec<(usize, usize)> = if pairs.is_empty() { all.clone() } else { pairs.to_vec() };
    let k = ExactKernel;
    let mut out = Vec::new();
    for (i, j) in wanted {
        if !chain.i_set.contains(&i) {
            return Err(StructureError::IndexNotInI(i));
        }
        if !all.contains(&(i, j)) {
            return Err(StructureError::IndexNotInI(j));
        }
        let cij = k.c(x(i), x(j));
        let cji = k.c(x(j), x(i));
        let ci = k.c(x(i), x(i + 1));
        let cj = k.c(x(j), x(j + 1));
        let m = multiplier(&cij, &ci);
        let b_scale = match &m {
            Multiplier::Proportional { b } => {
                let b: BigInt = b.parse().unwrap();
                let r = BigRational::new(b.abs() * &records[i + 1 - first].norm, records[j - first].norm.clone());
                Some(ln_rational(&r).exp())
            }
            _ => None,
        };
        out.push(CijRow {
            i,
            j,
            c_ij: pair_strings(&cij),
            c_ji: pair_strings(&cji),
            c_i: pair_strings(&ci),
            multiplier: m,
            b_scale,
            det_ci_cj: det2(&ci, &cj).to_string(),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchmidtRow {
    pub kind: &'static str,
    pub i: usize,
    pub j: usize,
    /// `X_i H(U_i) / (H(W_i) H(W_{i+1}))` or `H(W_j) / (H(U_i) H(U_j))`.
    pub ratio: String,
    /// `H(V ∩ W) H(V + W) / (H(V) H(W))`.
    pub raw: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchmidtAudit {
    pub rows: Vec<SchmidtRow>,
    pub max_plane_ratio: Option<String>,
    pub max_space_ratio: Option<String>,
    pub max_raw: Option<String>,
}

impl SchmidtAudit {
    /// Whether all raw Schmidt ratios are at most one.
    pub fn raw_within_one(&self) -> bool {
        self.rows.iter().all(|r| parse_rational(&r.raw).unwrap() <= BigRational::from_integer(1.into()))
    }
}

fn raw_schmidt(v: &[&IntPoint], w: &[&IntPoint]) -> BigRational {
    let inter = subspace_intersection(v, w);
    let sum = subspace_sum(v, w);
    let ir: Vec<&IntPoint> = inter.iter().collect();
    let sr: Vec<&IntPoint> = sum.iter().collect();
    BigRational::new(
        subspace_height(&ir) * subspace_height(&sr),
        subspace_height(v) * subspace_height(w),
    )
}

/// Height inequalities for the planes and spaces of the chain.
pub fn schmidt_audit(records: &[MinimalPointRecord], chain: &ChainAnalysis) -> SchmidtAudit {
    let first = chain.first_index;
    let x = |i: usize| point_of(records, i, first);
    let h = |s: &Option<String>| -> BigInt { s.as_ref().unwrap().parse().unwrap() };
    let hw = |i: usize| -> BigInt { chain.entry(i).unwrap().h_w.parse().unwrap() };
    let mut rows = Vec::new();
    for &i in &chain.i_set {
        let e = chain.entry(i).unwrap();
        let ratio = BigRational::new(&records[i - first].norm * h(&e.h_u), hw(i) * hw(i + 1));
        let raw = raw_schmidt(&[x(i - 1), x(i)], &[x(i), x(i + 1)]);
        rows.push(SchmidtRow {
            kind: "planes",
            i,
            j: i + 1,
            ratio: ratio.to_string(),
            raw: raw.to_string(),
        });
    }
    for (i, j) in chain.consecutive_pairs() {
        if !chain.j_set.contains(&i) {
            continue;
        }
        let (ei, ej) = (chain.entry(i).unwrap(), chain.entry(j).unwrap());
        let ratio = BigRational::new(hw(j), h(&ei.h_u) * h(&ej.h_u));
        let raw = raw_schmidt(&[x(i - 1), x(i), x(i + 1)], &[x(j - 1), x(j), x(j + 1)]);
        rows.push(SchmidtRow {
            kind: "spaces",
            i,
            j,
            ratio: ratio.to_string(),
            raw: raw.to_string(),
        });
    }
    let max_of = |kind: Option<&str>, raw: bool| {
        rows.iter()
            .filter(|r| kind.is_none_or(|k| r.kind == k))
            .map(|r| parse_rational(if raw { &r.raw } else { &r.ratio }).unwrap())
            .max()
            .map(|m| m.to_string())
    };
    SchmidtAudit {
        max_plane_ratio: max_of(Some("planes"), false),
        max_space_ratio: max_of(Some("spaces"), false),
        max_raw: max_of(None, true),
        rows,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentRow {
    pub i: usize,
    pub norm: String,
    pub next_norm: String,
    pub l: String,
    /// `log(1/L_i) / log X_{i+1}`.
    pub uniform: f64,
    /// `log(1/L_i) / log X_i`; absent when `X_i = 1`.
    pub ordinary: Option<f64>,
    /// `L_i X_{i+1}^{1/n}`.
    pub dirichlet: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExponentReport {
    pub n: usize,
    pub window: usize,
    pub rows: Vec<ExponentRow>,
    pub window_min: f64,
    pub window_max: f64,
    pub dirichlet_max: f64,
}

pub const DEFAULT_WINDOW: usize = 10;

/// Exponent ratios for each record that has a known successor.
pub fn exponent_report(
    records: &[MinimalPointRecord],
    n: usize,
    window: usize,
) -> Result<ExponentReport, StructureError> {
    if records.len() < 2 {
        return Err(StructureError::TooFewRecords {
            need: 2,
            got: records.len(),
        });
    }
    let mut rows = Vec::new();
    for w in records.windows(2) {
        let (r, s) = (&w[0], &w[1]);
        let l = l_value(r)?;
        let ln_l = ln_rational(&l);
        let ln_next = ln_rational(&BigRational::from_integer(s.norm.clone()));
        let ln_x = ln_rational(&BigRational::from_integer(r.norm.clone()));
        rows.push(ExponentRow {
            i: r.i,
            norm: r.norm.to_string(),
            next_norm: s.norm.to_string(),
            l: r.l_digits.clone(),
            uniform: -ln_l / ln_next,
            ordinary: (ln_x > 0.0).then(|| -ln_l / ln_x),
            dirichlet: (ln_l + ln_next / n as f64).exp(),
        });
    }
    let k = window.max(1).min(rows.len());
    let tail = &rows[rows.len() - k..];
    Ok(ExponentReport {
        n,
        window: k,
        window_min: tail.iter().map(|r| r.uniform).fold(f64::INFINITY, f64::min),
        window_max: tail.iter().map(|r| r.uniform).fold(f64::NEG_INFINITY, f64::max),
        dirichlet_max: rows.iter().map(|r| r.dirichlet).fold(f64::NEG_INFINITY, f64::max),
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisRow {
    pub x: String,
    pub record: usize,
    /// `ln L_i + λ ln X − ln c`; the inequality holds when this is `<= 0`.
    pub margin: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypothesisReport {
    pub lambda: String,
    pub c: String,
    pub rows: Vec<HypothesisRow>,
    pub first_failure: Option<String>,
}

/// Tests `|x0| <= X, L(x) <= c X^-λ` on each grid value `X`, using the
/// minimal point that is best at scale `X`. Records are taken as complete up
/// to `covered_to`.
pub fn hypothesis_scan(
    records: &[MinimalPointRecord],
    lambda: &BigRational,
    c: &BigRational,
    grid: &[BigInt],
    covered_to: &BigInt,
) -> Result<HypothesisReport, StructureError> {
    let first = records.first().ok_or(StructureError::TooFewRecords { need: 1, got: 0 })?;
    let ln_c = ln_rational(c);
    let lam = lambda.to_f64().unwrap_or(f64::NAN);
    let mut rows = Vec::new();
    let mut first_failure = None;
    for xg in grid {
        if xg < &first.norm || xg > covered_to {
            return Err(StructureError::GridOutOfRange {
                x: xg.to_string(),
                lo: first.norm.to_string(),
                hi: covered_to.to_string(),
            });
        }
        let idx = records.partition_point(|r| &r.norm <= xg) - 1;
        let r = &records[idx];
        let margin = ln_rational(&l_value(r)?) + lam * ln_rational(&BigRational::from_integer(xg.clone())) - ln_c;
        let holds = margin <= 0.0;
        if !holds && first_failure.is_none() {
            first_failure = Some(xg.to_string());
        }
        rows.push(HypothesisRow {
            x: xg.to_string(),
            record: r.i,
            margin,
            holds,
        });
    }
    Ok(HypothesisReport {
        lambda: lambda.to_string(),
        c: c.to_string(),
        rows,
        first_failure,
    })
}

/// Geometric grid `X = ⌈lo · ratio^k⌉` up to `hi`, without repeats.
pub fn geometric_grid(lo: u64, hi: u64, ratio: f64) -> Vec<BigInt> {
    let mut out = BTreeSet::new();
    let mut v = lo.max(1) as f64;
    while v <= hi as f64 {
        out.insert(v.ceil() as u64);
        v *= ratio.max(1.0001);
    }
    out.insert(hi);
    out.into_iter().map(BigInt::from).collect()
}

pub fn write_chain_csv<W: Write>(mut w: W, chain: &ChainAnalysis) -> std::io::Result<()> {
    writeln!(
        w,
        "# i: record index; inI: W_i != W_(i+1) (yes/no/unknown); inJ: U_i != U_j for the successor j in I; \
         H_W: height of W_i; H_U: height of U_i (empty unless i in I); primitive: x_(i-1) wedge x_i primitive"
    )?;
    writeln!(w, "i,inI,inJ,H_W,H_U,primitive")?;
    for e in &chain.entries {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            e.i,
            e.in_i.as_str(),
            e.in_j.map(|m| m.as_str()).unwrap_or(""),
            e.h_w,
            e.h_u.as_deref().unwrap_or(""),
            e.w_primitive
        )?;
    }
    Ok(())
}

pub fn write_cij_csv<W: Write>(mut w: W, rows: &[CijRow]) -> std::io::Result<()> {
    writeln!(
        w,
        "# i<j consecutive in I; C_ij = C(x_i,x_j) and C_ji as (minus,plus); C_i = C(x_i,x_(i+1)); \
         b: multiplier with C_ij = b C_i or not_proportional/degenerate; b_scale: |b| X_(i+1)/X_j; det_Ci_Cj: det(C_i, C_j)"
    )?;
    writeln!(w, "i,j,C_ij_minus,C_ij_plus,C_ji_minus,C_ji_plus,C_i_minus,C_i_plus,b,b_scale,det_Ci_Cj")?;
    for r in rows {
        let b = match &r.multiplier {
            Multiplier::Proportional { b } => b.clone(),
            Multiplier::NotProportional => "not_proportional".into(),
            Multiplier::Degenerate => "degenerate".into(),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.i,
            r.j,
            r.c_ij[0],
            r.c_ij[1],
            r.c_ji[0],
            r.c_ji[1],
            r.c_i[0],
            r.c_i[1],
            b,
            r.b_scale.map(|v| format!("{v:.6e}")).unwrap_or_default(),
            r.det_ci_cj
        )?;
    }
    Ok(())
}

pub fn write_schmidt_csv<W: Write>(mut w: W, audit: &SchmidtAudit) -> std::io::Result<()> {
    writeln!(
        w,
        "# kind=planes: ratio = X_i H(U_i)/(H(W_i) H(W_(i+1))) for i in I; kind=spaces: ratio = H(W_j)/(H(U_i) H(U_j)) \
         for consecutive i<j in I with i in J; raw = H(V meet W) H(V+W)/(H(V) H(W)); exact rationals"
    )?;
    writeln!(w, "kind,i,j,ratio,raw")?;
    for r in &audit.rows {
        writeln!(w, "{},{},{},{},{}", r.kind, r.i, r.j, r.ratio, r.raw)?;
    }
    Ok(())
}

pub fn write_exponents_csv<W: Write>(mut w: W, rep: &ExponentReport) -> std::io::Result<()> {
    writeln!(
        w,
        "# i: record index; X: norm of x_i; X_next: norm of x_(i+1); L: L(x_i) truncated; \
         uniform: log(1/L_i)/log X_(i+1); ordinary: log(1/L_i)/log X_i; dirichlet: L_i X_(i+1)^(1/n)"
    )?;
    writeln!(w, "i,X,X_next,L,uniform,ordinary,dirichlet")?;
    for r in &rep.rows {
        writeln!(
            w,
            "{},{},{},{},{:.12},{},{:.12}",
            r.i,
            r.norm,
            r.next_norm,
            r.l,
            r.uniform,
            r.ordinary.map(|v| format!("{v:.12}")).unwrap_or_default(),
            r.dirichlet
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactreal::AlgebraicReal;
    use crate::minpoints::brute_force_records;

    fn p(c: &[i64]) -> IntPoint {
        IntPoint::from_i64s(c)
    }

    fn fourth_root2m1() -> AlgebraicReal {
        AlgebraicReal::from_i64s(&[-1, 4, 6, 4, 1], (0, 1), (1, 2)).unwrap()
    }

    #[test]
    fn schmidt_ratio_for_coordinate_planes() {
        let e: Vec<IntPoint> = (0..4).map(|i| IntPoint::unit(4, i)).collect();
        let r = raw_schmidt(&[&e[0], &e[1]], &[&e[2], &e[3]]);
        assert_eq!(r, BigRational::from_integer(1.into()));
        let v = [p(&[1, 2, 0, 3]), p(&[0, 1, 5, 1])];
        let r = raw_schmidt(&[&v[0], &v[1]], &[&v[0], &v[1]]);
        assert_eq!(r, BigRational::from_integer(1.into()));
    }

    #[test]
    fn chain_on_real_data() {
        let xi = fourth_root2m1();
        let recs = brute_force_records(&xi, 3, 20000).unwrap();
        let ch = chain_analyze(&recs).unwrap();
        assert!(ch.all_points_primitive() && ch.all_planes_primitive());
        assert!(ch.consecutive_planes_agree && ch.triples_span_u);
        assert_eq!(ch.entries.last().unwrap().in_i, Membership::Unknown);
        assert!(ch.collapses.is_empty());
        let json = serde_json::to_string(&ch).unwrap();
        let back: ChainAnalysis = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ch);
        let cij = cij_table(&recs, &ch, &[]).unwrap();
        assert_eq!(cij.len(), ch.i_set.len() - 1);
        assert!(cij_table(&recs, &ch, &[(1, 2)]).is_err());
    }

    #[test]
    fn proportional_records_collapse() {
        let xi = fourth_root2m1();
        let mut recs = brute_force_records(&xi, 3, 200).unwrap();
        let dup = recs[1].x.scale(&BigInt::from(2));
        recs[2].x = dup;
        let ch = chain_analyze(&recs).unwrap();
        assert_eq!(ch.collapses, vec![recs[2].i]);
        assert!(matches!(ch.require_full_rank(), Err(StructureError::DimensionCollapse { .. })));
    }

    #[test]
    fn multiplier_classification() {
        let ci = PairZ2::from_i64s(2, -3);
        assert_eq!(
            multiplier(&PairZ2::from_i64s(-6, 9), &ci),
            Multiplier::Proportional { b: "-3".into() }
        );
        assert_eq!(multiplier(&PairZ2::from_i64s(1, 1), &ci), Multiplier::NotProportional);
        assert_eq!(multiplier(&ci, &PairZ2::from_i64s(0, 0)), Multiplier::Degenerate);
        assert_eq!(det2(&ci, &ci), BigInt::zero());
    }

    #[test]
    fn exponents_and_hypothesis() {
        let xi = fourth_root2m1();
        let recs = brute_force_records(&xi, 3, 2000).unwrap();
        let two = &recs[..2];
        let rep = exponent_report(two, 3, 10).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.window_min, rep.rows[0].uniform);
        assert!(exponent_report(&recs[..1], 3, 10).is_err());

        let top = BigInt::from(2000);
        let grid = geometric_grid(1, 2000, 1.5);
        let one = BigRational::from_integer(1.into());
        let ok = hypothesis_scan(&recs, &BigRational::zero(), &one, &grid, &top).unwrap();
        assert!(ok.first_failure.is_none());
        let bad = hypothesis_scan(&recs, &one, &one, &grid, &top).unwrap();
        assert!(bad.first_failure.is_some());
        assert!(matches!(
            hypothesis_scan(&recs, &one, &one, &[BigInt::zero()], &top),
            Err(StructureError::GridOutOfRange { .. })
        ));
    }

    #[test]
    fn csv_headers_are_comments() {
        let xi = fourth_root2m1();
        let recs = brute_force_records(&xi, 3, 5000).unwrap();
        let ch = chain_analyze(&recs).unwrap();
        let mut buf = Vec::new();
        write_chain_csv(&mut buf, &ch).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert!(s.starts_with('#'));
        assert_eq!(s.lines().nth(1), Some("i,inI,inJ,H_W,H_U,primitive"));
        assert_eq!(s.lines().count(), 2 + ch.entries.len());
    }
}
