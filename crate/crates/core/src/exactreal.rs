//! Real algebraic numbers with certified enclosures, and exact sign
//! determination for elements of Z[ξ].
//!
//! An [`AlgebraicReal`] is a squarefree integer polynomial together with an
//! interval holding exactly one of its real roots. Enclosures of the root are
//! refined lazily and cached behind a lock, so a value can be shared freely
//! between threads while still behaving as an immutable number.

use crate::interval::{dyadic_ceil, dyadic_floor, floor_div, RatInterval};
use crate::latgeom::IntPoint;
use crate::poly::{count_roots, IntPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactRealError {
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("no root of {poly} in [{lo}, {hi}]")]
    NoRootInInterval { poly: String, lo: String, hi: String },
    #[error("{count} roots of {poly} in [{lo}, {hi}]; expected exactly one")]
    MultipleRootsInInterval {
        poly: String,
        lo: String,
        hi: String,
        count: usize,
    },
    #[error("interval endpoints out of order: lo = {lo}, hi = {hi}")]
    InvertedInterval { lo: String, hi: String },
    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },
}

/// First precision level of the refinement schedule, in bits.
pub const BASE_PRECISION_BITS: u64 = 64;

#[derive(Clone, Debug)]
struct Enclosure {
    lo: BigRational,
    hi: BigRational,
    exact: Option<BigRational>,
    sign_lo: Ordering,
}

/// Dyadic enclosures `lo[k] / 2^bits <= ξ^k <= hi[k] / 2^bits`.
#[derive(Debug)]
pub struct PowerTable {
    pub bits: u64,
    pub lo: Vec<BigInt>,
    pub hi: Vec<BigInt>,
}

pub struct AlgebraicReal {
    poly: IntPoly,
    sturm: Vec<IntPoly>,
    isolating: (BigRational, BigRational),
    state: RwLock<Enclosure>,
    powers: RwLock<HashMap<u64, Arc<PowerTable>>>,
}

impl Clone for AlgebraicReal {
    fn clone(&self) -> Self {
        AlgebraicReal {
            poly: self.poly.clone(),
            sturm: self.sturm.clone(),
            isolating: self.isolating.clone(),
            state: RwLock::new(self.state.read().unwrap().clone()),
            powers: RwLock::new(self.powers.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraicReal")
            .field("poly", &self.poly.to_string())
            .field("lo", &self.isolating.0.to_string())
            .field("hi", &self.isolating.1.to_string())
            .finish()
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(12);
        write!(f, "{}", self.to_decimal(digits))
    }
}

/// Number of bits needed so that `2^-bits <= w`, for `w > 0`.
fn bits_below(w: &BigRational) -> u64 {
    let nb = w.numer().bits() as i64;
    let db = w.denom().bits() as i64;
    (db - nb + 1).max(0) as u64
}

/// A dyadic strictly inside `(lo, hi)`, close to the midpoint.
fn inner_dyadic(lo: &BigRational, hi: &BigRational) -> BigRational {
    let w = hi - lo;
    let k = bits_below(&w) + 2;
    let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
    let m = dyadic_floor(&mid, k);
    if &m > lo {
        m
    } else {
        mid
    }
}

impl AlgebraicReal {
    /// Builds a validated algebraic number. The squarefree part of `poly` is
    /// taken first; the closed interval `[lo, hi]` must then contain exactly
    /// one real root.
    pub fn new(poly: IntPoly, lo: BigRational, hi: BigRational) -> Result<Self, ExactRealError> {
        if poly.is_constant() {
            return Err(ExactRealError::ConstantPolynomial);
        }
        if lo > hi {
            return Err(ExactRealError::InvertedInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        let poly = poly.squarefree_part();
        let sturm = poly.sturm_chain();
        let count = count_roots(&sturm, &lo, &hi);
        match count {
            0 => {
                return Err(ExactRealError::NoRootInInterval {
                    poly: poly.to_string(),
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                })
            }
            1 => {}
            count => {
                return Err(ExactRealError::MultipleRootsInInterval {
                    poly: poly.to_string(),
                    lo: lo.to_string(),
                    hi: hi.to_string(),
                    count,
                })
            }
        }
        let sign_lo = poly.sign_at(&lo);
        let exact = if sign_lo == Ordering::Equal {
            Some(lo.clone())
        } else if poly.sign_at(&hi) == Ordering::Equal {
            Some(hi.clone())
        } else {
            None
        };
        let state = match &exact {
            Some(r) => Enclosure {
                lo: r.clone(),
                hi: r.clone(),
                exact: exact.clone(),
                sign_lo: Ordering::Equal,
            },
            None => Enclosure {
                lo: lo.clone(),
                hi: hi.clone(),
                exact: None,
                sign_lo,
            },
        };
        let x = AlgebraicReal {
            poly,
            sturm,
            isolating: (lo, hi),
            state: RwLock::new(state),
            powers: RwLock::new(HashMap::new()),
        };
        x.detect_rational();
        Ok(x)
    }

    pub fn from_i64s(poly: &[i64], lo: (i64, i64), hi: (i64, i64)) -> Result<Self, ExactRealError> {
        Self::new(
            IntPoly::from_i64s(poly),
            BigRational::new(lo.0.into(), lo.1.into()),
            BigRational::new(hi.0.into(), hi.1.into()),
        )
    }

    /// A rational number as a degree-one algebraic number.
    pub fn from_rational(r: &BigRational) -> Self {
        let poly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        Self::new(poly, r.clone(), r.clone()).expect("linear polynomial has its root")
    }

    /// All real roots of `poly`, in increasing order.
    pub fn real_roots(poly: &IntPoly) -> Result<Vec<AlgebraicReal>, ExactRealError> {
        if poly.is_constant() {
            return Err(ExactRealError::ConstantPolynomial);
        }
        let p = poly.squarefree_part();
        let chain = p.sturm_chain();
        // Cauchy bound 1 + max |a_i / a_d|.
        let lc = p.leading().abs();
        let m = p
            .coeffs()
            .iter()
            .map(|c| BigRational::new(c.abs(), lc.clone()))
            .max()
            .unwrap();
        let bound = m + BigRational::one();
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            match count_roots(&chain, &a, &b) {
                0 => {}
                1 => out.push(Self::new(p.clone(), a, b)?),
                _ => {
                    let mut m = inner_dyadic(&a, &b);
                    while p.sign_at(&m) == Ordering::Equal {
                        m = inner_dyadic(&a, &m);
                    }
                    stack.push((a, m.clone()));
                    stack.push((m, b));
                }
            }
        }
        out.sort_by(|x, y| x.cmp_value(y));
        Ok(out)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn isolating_interval(&self) -> RatInterval {
        RatInterval::new(self.isolating.0.clone(), self.isolating.1.clone())
    }

    /// The exact rational value, when the root is rational.
    pub fn rational_value(&self) -> Option<BigRational> {
        self.state.read().unwrap().exact.clone()
    }

    /// Current cached enclosure (no refinement).
    pub fn enclosure(&self) -> RatInterval {
        let s = self.state.read().unwrap();
        RatInterval::new(s.lo.clone(), s.hi.clone())
    }

    fn detect_rational(&self) {
        if self.rational_value().is_some() {
            return;
        }
        // A rational root c/q has q | lc, hence is k / lc for an integer k;
        // distinct such values are 1/lc apart.
        let lc = self.poly.leading();
        let width = BigRational::new(BigInt::one(), &lc * 4);
        let iv = self.refine_to(&width);
        if self.rational_value().is_some() {
            return;
        }
        let scaled = iv.midpoint() * BigRational::from_integer(lc.clone());
        let k = (scaled + BigRational::new(1.into(), 2.into())).floor().to_integer();
        let cand = BigRational::new(k, lc);
        if iv.contains(&cand) && self.poly.sign_at(&cand) == Ordering::Equal {
            let mut s = self.state.write().unwrap();
            s.lo = cand.clone();
            s.hi = cand.clone();
            s.exact = Some(cand);
            s.sign_lo = Ordering::Equal;
        }
    }

    /// Refines until the enclosure has width at most `width`, and returns it.
    /// Successive results are nested.
    pub fn refine_to(&self, width: &BigRational) -> RatInterval {
        assert!(width.is_positive(), "refinement width must be positive");
        {
            let s = self.state.read().unwrap();
            if &(&s.hi - &s.lo) <= width {
                return RatInterval::new(s.lo.clone(), s.hi.clone());
            }
        }
        let mut s = self.state.write().unwrap();
        let target_bits = bits_below(width);
        while &(&s.hi - &s.lo) > width {
            if !self.newton_step(&mut s, target_bits) {
                self.bisect_step(&mut s);
            }
        }
        RatInterval::new(s.lo.clone(), s.hi.clone())
    }

    /// Refines to width at most `2^-bits`.
    pub fn refine_bits(&self, bits: u64) -> RatInterval {
        self.refine_to(&BigRational::new(BigInt::one(), BigInt::one() << bits))
    }

    fn set_exact(&self, s: &mut Enclosure, r: BigRational) {
        s.lo = r.clone();
        s.hi = r.clone();
        s.exact = Some(r);
        s.sign_lo = Ordering::Equal;
    }

    fn bisect_step(&self, s: &mut Enclosure) {
        let m = inner_dyadic(&s.lo, &s.hi);
        let sm = self.poly.sign_at(&m);
        if sm == Ordering::Equal {
            self.set_exact(s, m);
        } else if sm == s.sign_lo {
            s.lo = m;
        } else {
            s.hi = m;
        }
    }

    /// One Newton step from the midpoint, accepted only when the resulting
    /// bracket provably contains the root.
    fn newton_step(&self, s: &mut Enclosure, target_bits: u64) -> bool {
        let w = &s.hi - &s.lo;
        let wb = bits_below(&w);
        if wb < 8 {
            return false;
        }
        let m = inner_dyadic(&s.lo, &s.hi);
        let dp = self.poly.derivative();
        let fm = self.poly.eval(&m);
        let dm = dp.eval(&m);
        if dm.is_zero() {
            return false;
        }
        let x = &m - fm / dm;
        let half_bits = (2 * wb).min(target_bits + 8);
        let delta = BigRational::new(BigInt::one(), BigInt::one() << half_bits);
        let mut a = dyadic_floor(&(&x - &delta), half_bits + 1);
        let mut b = dyadic_ceil(&(&x + &delta), half_bits + 1);
        if a < s.lo {
            a = s.lo.clone();
        }
        if b > s.hi {
            b = s.hi.clone();
        }
        if a >= b {
            return false;
        }
        let sa = self.poly.sign_at(&a);
        let sb = self.poly.sign_at(&b);
        if sa == Ordering::Equal {
            self.set_exact(s, a);
            return true;
        }
        if sb == Ordering::Equal {
            self.set_exact(s, b);
            return true;
        }
        if sa == sb {
            return false;
        }
        if &b - &a >= w {
            return false;
        }
        s.lo = a;
        s.hi = b;
        s.sign_lo = sa;
        true
    }

    /// Dyadic enclosures of `ξ^0 .. ξ^(count-1)` at `bits` fractional bits.
    pub fn power_table(&self, bits: u64, count: usize) -> Arc<PowerTable> {
        if let Some(t) = self.powers.read().unwrap().get(&bits) {
            if t.lo.len() >= count {
                return t.clone();
            }
        }
        let count = count.max(self.degree());
        let enc = self.enclosure();
        let mag = enc.mag() + BigRational::one();
        let mag_bits = mag.to_integer().bits() + 1;
        let guard = 8 + (count as u64) * mag_bits + (count as u64).max(1).ilog2() as u64 + 1;
        let iv = self.refine_bits(bits + guard).round_out(bits + guard);
        let mut lo = Vec::with_capacity(count);
        let mut hi = Vec::with_capacity(count);
        let mut acc = RatInterval::from_int(1);
        let scale = BigInt::one() << bits;
        for _ in 0..count {
            let r = acc.round_out(bits);
            lo.push((r.lo * BigRational::from_integer(scale.clone())).to_integer());
            hi.push((r.hi * BigRational::from_integer(scale.clone())).to_integer());
            acc = (&acc * &iv).round_out(bits + guard);
        }
        let t = Arc::new(PowerTable { bits, lo, hi });
        self.powers.write().unwrap().insert(bits, t.clone());
        t
    }

    /// Reduces a form modulo the defining polynomial, with positive scaling.
    /// Only the sign at `ξ` survives; the value does not.
    pub fn reduce(&self, coeffs: &[BigInt]) -> IntPoly {
        let f = IntPoly::new(coeffs.to_vec());
        if f.is_zero() || f.degree() < self.degree() {
            f
        } else {
            f.rem_scaled(&self.poly)
        }
    }

    /// Enclosure of `Σ c_k ξ^k` scaled by `2^bits`, as an integer pair.
    fn form_scaled(&self, f: &IntPoly, bits: u64) -> (BigInt, BigInt) {
        let t = self.power_table(bits, f.coeffs().len());
        let mut lo = BigInt::zero();
        let mut hi = BigInt::zero();
        for (k, c) in f.coeffs().iter().enumerate() {
            if c.is_positive() {
                lo += c * &t.lo[k];
                hi += c * &t.hi[k];
            } else if c.is_negative() {
                lo += c * &t.hi[k];
                hi += c * &t.lo[k];
            }
        }
        (lo, hi)
    }

    /// Certified enclosure of `Σ c_k ξ^k` at the given precision.
    pub fn form_interval(&self, coeffs: &[BigInt], bits: u64) -> RatInterval {
        let f = IntPoly::new(coeffs.to_vec());
        if let Some(r) = self.rational_value() {
            return RatInterval::point(f.eval(&r));
        }
        let (lo, hi) = self.form_scaled(&f, bits);
        let d = BigInt::one() << bits;
        RatInterval::new(BigRational::new(lo, d.clone()), BigRational::new(hi, d))
    }

    /// Exact sign of `Σ c_k ξ^k`.
    pub fn sign_of_form(&self, coeffs: &[BigInt]) -> Ordering {
        let f = self.reduce(coeffs);
        if f.is_zero() {
            return Ordering::Equal;
        }
        if f.is_constant() {
            return f.leading().cmp(&BigInt::zero());
        }
        if let Some(r) = self.rational_value() {
            return f.sign_at(&r);
        }
        let mut bits = BASE_PRECISION_BITS;
        let mut zero_tested = false;
        loop {
            let (lo, hi) = self.form_scaled(&f, bits);
            if lo.is_positive() {
                return Ordering::Greater;
            }
            if hi.is_negative() {
                return Ordering::Less;
            }
            if !zero_tested && bits > BASE_PRECISION_BITS {
                zero_tested = true;
                if self.vanishes(&f) {
                    return Ordering::Equal;
                }
            }
            bits *= 2;
        }
    }

    /// Whether `f(ξ) = 0`, decided through the common factor of `f` and the
    /// defining polynomial.
    fn vanishes(&self, f: &IntPoly) -> bool {
        let g = f.gcd(&self.poly);
        if g.is_constant() {
            return false;
        }
        count_roots(&g.sturm_chain(), &self.isolating.0, &self.isolating.1) > 0
    }

    /// `floor(f(ξ) · 2^shift)`, exactly.
    pub fn floor_form_scaled(&self, coeffs: &[BigInt], shift: i64) -> BigInt {
        let f = IntPoly::new(coeffs.to_vec());
        if let Some(r) = self.rational_value() {
            return scale_pow2(&f.eval(&r), shift).floor().to_integer();
        }
        if f.is_constant() {
            return scale_pow2(&BigRational::from_integer(f.coeff(0)), shift)
                .floor()
                .to_integer();
        }
        let cbits = f.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0);
        let bits = (shift.max(0) as u64) + 64 + cbits;
        let (lo, hi) = self.form_scaled(&f, bits);
        let down = BigInt::one() << (bits as i64 - shift) as u64;
        let lower = floor_div(&lo, &down);
        let upper = floor_div(&hi, &down);
        let mut result = lower.clone();
        let mut k = lower + 1;
        while k <= upper {
            // f·2^shift − k >= 0 ?
            let g = if shift >= 0 {
                let mut c: Vec<BigInt> = f.coeffs().iter().map(|c| c << shift as u64).collect();
                c[0] -= &k;
                c
            } else {
                let mut c = f.coeffs().to_vec();
                c[0] -= &k << (-shift) as u64;
                c
            };
            if self.sign_of_form(&g) != Ordering::Less {
                result = k.clone();
                k += 1;
            } else {
                break;
            }
        }
        result
    }

    /// `floor(ξ)`.
    pub fn floor(&self) -> BigInt {
        self.floor_form_scaled(&[BigInt::zero(), BigInt::one()], 0)
    }

    /// Exact comparison of two algebraic numbers.
    pub fn cmp_value(&self, other: &AlgebraicReal) -> Ordering {
        if self.poly == other.poly && self.isolating == other.isolating {
            return Ordering::Equal;
        }
        let mut bits = BASE_PRECISION_BITS;
        loop {
            let a = self.refine_bits(bits);
            let b = other.refine_bits(bits);
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if let (Some(x), Some(y)) = (self.rational_value(), other.rational_value()) {
                return x.cmp(&y);
            }
            let g = self.poly.gcd(&other.poly);
            if !g.is_constant() && self.vanishes(&g) && other.vanishes(&g) {
                let lo = a.lo.clone().min(b.lo.clone());
                let hi = a.hi.clone().max(b.hi.clone());
                if count_roots(&g.sturm_chain(), &lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
            bits *= 2;
        }
    }

    /// `ξ − k` for an integer `k`.
    pub fn shifted(&self, k: &BigInt) -> AlgebraicReal {
        let kr = BigRational::from_integer(k.clone());
        let poly = self.poly.taylor_shift(k);
        let s = self.state.read().unwrap();
        let lo = &self.isolating.0 - &kr;
        let hi = &self.isolating.1 - &kr;
        AlgebraicReal {
            sturm: poly.sturm_chain(),
            poly,
            isolating: (lo, hi),
            state: RwLock::new(Enclosure {
                lo: &s.lo - &kr,
                hi: &s.hi - &kr,
                exact: s.exact.as_ref().map(|r| r - &kr),
                sign_lo: s.sign_lo,
            }),
            powers: RwLock::new(HashMap::new()),
        }
    }

    /// Value truncated toward zero to `digits` places after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        let mut bits = (digits as u64 * 10 / 3) + 16;
        loop {
            let iv = self.refine_bits(bits);
            if let Some(s) = crate::interval::truncated_fixed(&iv, digits) {
                return s;
            }
            bits *= 2;
        }
    }

    pub fn to_json(&self) -> AlgebraicRealJson {
        AlgebraicRealJson {
            poly: self.poly.coeffs().iter().map(|c| c.to_string()).collect(),
            lo: self.isolating.0.to_string(),
            hi: self.isolating.1.to_string(),
        }
    }

    pub fn from_json(j: &AlgebraicRealJson) -> Result<Self, ExactRealError> {
        let coeffs = j
            .poly
            .iter()
            .map(|c| {
                BigInt::from_str(c.trim()).map_err(|_| ExactRealError::Parse {
                    what: "integer coefficient",
                    input: c.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(IntPoly::new(coeffs), parse_rational(&j.lo)?, parse_rational(&j.hi)?)
    }
}

fn scale_pow2(x: &BigRational, shift: i64) -> BigRational {
    if shift >= 0 {
        x * BigRational::from_integer(BigInt::one() << shift as u64)
    } else {
        x / BigRational::from_integer(BigInt::one() << (-shift) as u64)
    }
}

/// Serialized form: constant-first decimal coefficients and `p/q` endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicRealJson {
    pub poly: Vec<String>,
    pub lo: String,
    pub hi: String,
}

/// Parses `p/q`, an integer, a decimal such as `0.43`, or `1e-5`-style input.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactRealError> {
    let err = || ExactRealError::Parse {
        what: "rational",
        input: s.to_string(),
    };
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mant, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(err());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{ip}{fp}");
    let mut num = BigInt::from_str(&digits).map_err(|_| err())?;
    if neg {
        num = -num;
    }
    let e = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    Ok(if e >= 0 {
        BigRational::from_integer(num * ten.pow(e as u32))
    } else {
        BigRational::new(num, ten.pow((-e) as u32))
    })
}

/// An element `c_0 + c_1 ξ + … + c_d ξ^d` of Z[ξ], stored formally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct XiPolynomial(pub IntPoly);

impl XiPolynomial {
    pub fn from_coeffs(c: Vec<BigInt>) -> Self {
        XiPolynomial(IntPoly::new(c))
    }

    pub fn constant(c: BigInt) -> Self {
        XiPolynomial(IntPoly::constant(c))
    }

    pub fn zero() -> Self {
        XiPolynomial(IntPoly::zero())
    }

    /// The element `ξ`.
    pub fn xi() -> Self {
        XiPolynomial(IntPoly::var())
    }

    /// `a + b ξ`.
    pub fn linear(a: BigInt, b: BigInt) -> Self {
        XiPolynomial(IntPoly::new(vec![a, b]))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }

    pub fn is_formally_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        XiPolynomial(self.0.scale(k))
    }

    /// Equality of values at `ξ`.
    pub fn eq_at(&self, other: &XiPolynomial, xi: &AlgebraicReal) -> bool {
        xi.sign_of_form((&self.0 - &other.0).coeffs()) == Ordering::Equal
    }

    pub fn sign_at(&self, xi: &AlgebraicReal) -> Ordering {
        xi.sign_of_form(self.coeffs())
    }

    pub fn interval_at(&self, xi: &AlgebraicReal, bits: u64) -> RatInterval {
        xi.form_interval(self.coeffs(), bits)
    }
}

impl Add for &XiPolynomial {
    type Output = XiPolynomial;
    fn add(self, o: &XiPolynomial) -> XiPolynomial {
        XiPolynomial(&self.0 + &o.0)
    }
}

impl Sub for &XiPolynomial {
    type Output = XiPolynomial;
    fn sub(self, o: &XiPolynomial) -> XiPolynomial {
        XiPolynomial(&self.0 - &o.0)
    }
}

impl Mul for &XiPolynomial {
    type Output = XiPolynomial;
    fn mul(self, o: &XiPolynomial) -> XiPolynomial {
        XiPolynomial(&self.0 * &o.0)
    }
}

impl Neg for XiPolynomial {
    type Output = XiPolynomial;
    fn neg(self) -> XiPolynomial {
        XiPolynomial(-self.0)
    }
}

impl fmt::Display for XiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.to_string().replace('T', "ξ"))
    }
}

/// The form `σ (x₀ ξ^k − x_k)` whose value is `L(x)`, where `k` is the
/// smallest index attaining the maximum and `σ` its sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LForm {
    pub index: usize,
    pub coeffs: Vec<BigInt>,
}

impl LForm {
    pub fn interval(&self, xi: &AlgebraicReal, bits: u64) -> RatInterval {
        xi.form_interval(&self.coeffs, bits)
    }

    /// Decimal string of `L` truncated to `sig` significant digits.
    pub fn to_significant(&self, xi: &AlgebraicReal, sig: usize) -> String {
        let mut bits = (sig as u64) * 4 + 64;
        for _ in 0..20 {
            let iv = self.interval(xi, bits);
            if iv.lo.is_zero() && iv.hi.is_zero() {
                return "0".to_string();
            }
            if let Some(s) = crate::interval::truncated_significant(&iv, sig) {
                return s;
            }
            bits *= 2;
        }
        panic!("L-value enclosure failed to separate from zero");
    }
}

/// Coefficients of `x₀ ξ^k − x_k`.
pub fn component_form(x: &IntPoint, k: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); k + 1];
    c[0] = -x[k].clone();
    c[k] += &x[0];
    c
}

fn negate(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|c| -c).collect()
}

fn sub_forms(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()
        })
        .collect()
}

/// `|f(ξ)|` as a form, together with the sign of `f(ξ)`.
fn abs_form(f: Vec<BigInt>, xi: &AlgebraicReal) -> Vec<BigInt> {
    if xi.sign_of_form(&f) == Ordering::Less {
        negate(&f)
    } else {
        f
    }
}

/// The L-form of `x`.
pub fn l_form(x: &IntPoint, xi: &AlgebraicReal) -> LForm {
    let n = x.len() - 1;
    assert!(n >= 1, "L is defined for points of length at least two");
    let mut best = abs_form(component_form(x, 1), xi);
    let mut index = 1;
    for k in 2..=n {
        let cand = abs_form(component_form(x, k), xi);
        if xi.sign_of_form(&sub_forms(&cand, &best)) == Ordering::Greater {
            best = cand;
            index = k;
        }
    }
    LForm {
        index,
        coeffs: best,
    }
}

pub fn compare_l_forms(a: &LForm, b: &LForm, xi: &AlgebraicReal) -> Ordering {
    xi.sign_of_form(&sub_forms(&a.coeffs, &b.coeffs))
}

/// Exact comparison of `L(x)` and `L(y)`.
#[allow(non_snake_case)]
pub fn compare_L(x: &IntPoint, y: &IntPoint, xi: &AlgebraicReal) -> Ordering {
    compare_l_forms(&l_form(x, xi), &l_form(y, xi), xi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::rat;

    fn sqrt2m1() -> AlgebraicReal {
        AlgebraicReal::from_i64s(&[-1, 2, 1], (0, 1), (1, 1)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn sqrt2_construction_and_refinement() {
        let x = AlgebraicReal::from_i64s(&[-2, 0, 1], (1, 1), (2, 1)).unwrap();
        let iv = x.refine_to(&rat(1, 1000));
        assert!(iv.width() <= rat(1, 1000));
        assert!(iv.contains(&rat(1414213, 1000000)) || iv.lo > rat(1414, 1000));
        assert_eq!(x.to_decimal(5), "1.41421");
    }

    #[test]
    fn forms_above_the_degree_keep_their_value() {
        let cbrt2 = AlgebraicReal::from_i64s(&[-2, 0, 0, 1], (1, 1), (2, 1)).unwrap();
        let iv = cbrt2.form_interval(&ints(&[4, 0, 0, 1]), 64);
        assert!(iv.contains(&rat(6, 1)));
        assert_eq!(cbrt2.floor_form_scaled(&ints(&[4, 0, 0, 3]), 1), BigInt::from(20));
        let iv = sqrt2m1().form_interval(&ints(&[0, 0, 3]), 64);
        assert!(iv.lo > rat(514, 1000) && iv.hi < rat(515, 1000));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            AlgebraicReal::from_i64s(&[-2, 0, 1], (3, 1), (4, 1)),
            Err(ExactRealError::NoRootInInterval { .. })
        ));
        assert!(matches!(
            AlgebraicReal::from_i64s(&[-2, 0, 1], (-2, 1), (2, 1)),
            Err(ExactRealError::MultipleRootsInInterval { count: 2, .. })
        ));
        assert!(matches!(
            AlgebraicReal::from_i64s(&[5], (0, 1), (1, 1)),
            Err(ExactRealError::ConstantPolynomial)
        ));
    }

    #[test]
    fn squarefree_part_is_taken() {
        let x = AlgebraicReal::from_i64s(&[4, 0, -4, 0, 1], (1, 1), (2, 1)).unwrap();
        assert_eq!(x.poly(), &IntPoly::from_i64s(&[-2, 0, 1]));
    }

    #[test]
    fn nested_refinement() {
        let x = AlgebraicReal::from_i64s(&[-1, 3, 0, -4, 1], (2, 5), (43, 100)).unwrap();
        let mut prev = x.enclosure();
        for b in [10u64, 40, 100, 200] {
            let iv = x.refine_bits(b);
            assert!(iv.is_subset_of(&prev));
            prev = iv;
        }
        assert!(x.to_decimal(10).starts_with("0.4245069034"));
    }

    #[test]
    fn sign_of_simple_forms() {
        let xi = sqrt2m1();
        assert_eq!(xi.sign_of_form(&ints(&[0, 0, 0])), Ordering::Equal);
        assert_eq!(xi.sign_of_form(&ints(&[-1, 1])), Ordering::Less);
        assert_eq!(xi.sign_of_form(&ints(&[-1, 0, 5])), Ordering::Less);
        // ξ² + 2ξ − 1 = 0 exactly
        assert_eq!(xi.sign_of_form(&ints(&[-1, 2, 1])), Ordering::Equal);
        assert_eq!(xi.sign_of_form(&ints(&[-3, 6, 3, 0])), Ordering::Equal);
    }

    #[test]
    fn zero_detected_with_reducible_defining_polynomial() {
        // (T² − 2)(T² − 3) with the root √2.
        let xi = AlgebraicReal::from_i64s(&[6, 0, -5, 0, 1], (1, 1), (3, 2)).unwrap();
        assert_eq!(xi.sign_of_form(&ints(&[-2, 0, 1])), Ordering::Equal);
        assert_eq!(xi.sign_of_form(&ints(&[-3, 0, 1])), Ordering::Less);
    }

    #[test]
    fn rational_root_detected() {
        let x = AlgebraicReal::from_i64s(&[-1, 2], (0, 1), (1, 1)).unwrap();
        assert_eq!(x.rational_value(), Some(rat(1, 2)));
        let y = AlgebraicReal::from_i64s(&[3, -8, 4], (1, 1), (2, 1)).unwrap();
        assert_eq!(y.rational_value(), Some(rat(3, 2)));
        assert_eq!(y.floor(), BigInt::from(1));
    }

    #[test]
    fn floor_of_forms() {
        let xi = sqrt2m1();
        // 12ξ ≈ 4.97
        assert_eq!(xi.floor_form_scaled(&ints(&[0, 12]), 0), BigInt::from(4));
        // round(12ξ) = floor((24ξ + 1)/2)
        assert_eq!(xi.floor_form_scaled(&ints(&[1, 24]), -1), BigInt::from(5));
        assert_eq!(xi.floor_form_scaled(&ints(&[0, 1]), 10), BigInt::from(424));
        assert_eq!(xi.floor_form_scaled(&ints(&[0, -1]), 0), BigInt::from(-1));
    }

    #[test]
    fn compare_l_examples() {
        let xi = sqrt2m1();
        let x = IntPoint::from_i64s(&[1, 0]);
        let y = IntPoint::from_i64s(&[2, 1]);
        assert_eq!(compare_L(&x, &y, &xi), Ordering::Greater);
        assert_eq!(compare_L(&x, &x, &xi), Ordering::Equal);
        let nx = IntPoint::from_i64s(&[-12, -5]);
        assert_eq!(compare_L(&IntPoint::from_i64s(&[12, 5]), &nx, &xi), Ordering::Equal);
    }

    #[test]
    fn real_roots_of_quartic() {
        let roots = AlgebraicReal::real_roots(&IntPoly::from_i64s(&[-1, 3, 0, -4, 1])).unwrap();
        let d: Vec<String> = roots.iter().map(|r| r.to_decimal(3)).collect();
        assert_eq!(d, vec!["-0.912", "0.424", "0.676", "3.811"]);
    }

    #[test]
    fn json_round_trip() {
        let x = AlgebraicReal::from_i64s(&[-1, 3, 0, -4, 1], (2, 5), (43, 100)).unwrap();
        let j = x.to_json();
        assert_eq!(j.poly, vec!["-1", "3", "0", "-4", "1"]);
        assert_eq!(j.lo, "2/5");
        let y = AlgebraicReal::from_json(&j).unwrap();
        assert_eq!(y.cmp_value(&x), Ordering::Equal);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("0.43").unwrap(), rat(43, 100));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2, 1));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn shifted_root() {
        let x = AlgebraicReal::from_i64s(&[-2, 0, 0, 0, 1], (1, 1), (2, 1)).unwrap();
        let y = x.shifted(&BigInt::from(1));
        assert_eq!(y.poly(), &IntPoly::from_i64s(&[-1, 4, 6, 4, 1]));
        assert!(y.to_decimal(5).starts_with("0.18920"));
    }
}
