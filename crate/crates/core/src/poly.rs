//! Dense univariate polynomials with integer coefficients, constant term first.
//!
//! This is the small amount of polynomial algebra the rest of the crate needs:
//! squarefree parts, Sturm chains, Taylor shifts, pseudo-remainders for
//! zero-testing elements of Z[ξ], and a handful of rational-coefficient
//! helpers used for exact computations in number fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An integer polynomial `c[0] + c[1] T + … + c[d] T^d` without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `T`.
    pub fn var() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Divides out the positive content but keeps the sign.
    fn primitive_keep_sign(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let g = self.content();
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of `p(x)` via the homogenized integer evaluation `Σ cᵢ aⁱ b^(d−i)`
    /// with `x = a/b`, `b > 0`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let a = x.numer();
        let b = x.denom();
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * a + c * &bpow;
            if i > 0 {
                bpow *= b;
            }
        }
        acc.sign_ordering()
    }

    /// `p(T + k)`.
    pub fn taylor_shift(&self, k: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * k;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    fn to_rat(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Remainder of `self` modulo `divisor` over Q, scaled by a positive
    /// rational so that it becomes a primitive integer polynomial. The sign of
    /// the remainder at every real point is preserved.
    pub fn rem_scaled(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let r = rat_rem(&self.to_rat(), &divisor.to_rat());
        from_rat_positive(&r)
    }

    /// Exact quotient over Q, made primitive with positive leading coefficient.
    pub fn quotient_normalized(&self, divisor: &IntPoly) -> IntPoly {
        let (q, _) = rat_div_rem(&self.to_rat(), &divisor.to_rat());
        from_rat_positive(&q).normalized()
    }

    /// Pseudo-remainder `lc(d)^(deg p − deg d + 1) · p mod d`; exact over Z.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        let lc = divisor.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Self::new(r);
        }
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let lead = r[top].clone();
            for c in r.iter_mut() {
                *c *= &lc;
            }
            let shift = top - dd;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                r[shift + j] -= &lead * dc;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.normalized();
        let mut b = other.normalized();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.rem_scaled(&b);
            a = b;
            b = r;
        }
        a.normalized()
    }

    pub fn squarefree_part(&self) -> IntPoly {
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            self.normalized()
        } else {
            self.quotient_normalized(&g)
        }
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Sturm chain `p, p', −rem(p, p'), …` with sign-preserving scaling.
    pub fn sturm_chain(&self) -> Vec<IntPoly> {
        let mut chain = vec![self.clone(), self.derivative().primitive_keep_sign()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            if chain[n - 1].is_constant() {
                break;
            }
            let r = -chain[n - 2].rem_scaled(&chain[n - 1]);
            chain.push(r);
        }
        chain
    }

    /// Evaluates `p` on an exact-integer-scaled argument `x = a / 2^bits`.
    pub fn eval_dyadic(&self, a: &BigInt, bits: u64) -> BigRational {
        self.eval(&BigRational::new(a.clone(), BigInt::one() << bits))
    }
}

/// Number of sign changes of a Sturm chain at `x` (zeros skipped).
pub fn sign_variations(chain: &[IntPoly], x: &BigRational) -> usize {
    let mut last = Ordering::Equal;
    let mut count = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Number of distinct real roots of the chain's head in the closed interval
/// `[lo, hi]`.
pub fn count_roots(chain: &[IntPoly], lo: &BigRational, hi: &BigRational) -> usize {
    let head = &chain[0];
    let at_lo = usize::from(head.sign_at(lo) == Ordering::Equal);
    let va = sign_variations(chain, lo);
    let vb = sign_variations(chain, hi);
    va.saturating_sub(vb) + at_lo
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

fn trim_rat(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

pub(crate) fn rat_div_rem(
    num: &[BigRational],
    den: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r: Vec<BigRational> = num.to_vec();
    trim_rat(&mut r);
    let mut d: Vec<BigRational> = den.to_vec();
    trim_rat(&mut d);
    assert!(!d.is_empty(), "division by the zero polynomial");
    let dd = d.len() - 1;
    let lc = d[dd].clone();
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - dd];
    while r.len() > dd {
        let top = r.len() - 1;
        let f = &r[top] / &lc;
        let shift = top - dd;
        for (j, dc) in d.iter().enumerate() {
            let t = &f * dc;
            r[shift + j] -= t;
        }
        q[shift] = f;
        r.pop();
        trim_rat(&mut r);
    }
    (q, r)
}

pub(crate) fn rat_rem(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    rat_div_rem(num, den).1
}

/// Clears denominators with a positive multiplier and removes the content.
fn from_rat_positive(v: &[BigRational]) -> IntPoly {
    if v.iter().all(Zero::is_zero) {
        return IntPoly::zero();
    }
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    IntPoly::new(ints).primitive_keep_sign()
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{mag}T")?,
                (_, true) => write!(f, "T^{i}")?,
                (_, false) => write!(f, "{mag}T^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        &self + &rhs
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        &self - &rhs
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl Zero for IntPoly {
    fn zero() -> Self {
        IntPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Polynomials with rational coefficients, used for arithmetic in Q[T]/(f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim_rat(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn from_int(p: &IntPoly) -> Self {
        Self::new(p.to_rat())
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::from_int(&IntPoly::from_i64s(c))
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigRational::zero();
        RatPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::new(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    pub fn rem(&self, m: &RatPoly) -> RatPoly {
        RatPoly::new(rat_rem(&self.coeffs, &m.coeffs))
    }

    pub fn mul_mod(&self, o: &RatPoly, m: &RatPoly) -> RatPoly {
        self.mul(o).rem(m)
    }

    /// Inverse modulo `m`, if `gcd(self, m)` is constant.
    pub fn inverse_mod(&self, m: &RatPoly) -> Option<RatPoly> {
        // Extended Euclid: track s with s·self ≡ r (mod m).
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (RatPoly::new(Vec::new()), RatPoly::new(vec![BigRational::one()]));
        while !r1.is_zero() {
            let (q, r) = rat_div_rem(&r0.coeffs, &r1.coeffs);
            let q = RatPoly::new(q);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = RatPoly::new(r);
            s0 = s1;
            s1 = s;
        }
        if r0.coeffs.len() != 1 {
            return None;
        }
        let inv = BigRational::one() / &r0.coeffs[0];
        Some(RatPoly::new(s0.coeffs.iter().map(|c| c * &inv).collect()).rem(m))
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}
