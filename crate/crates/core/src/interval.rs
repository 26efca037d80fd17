//! Closed rational intervals with outward dyadic rounding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

pub fn floor_div(n: &BigInt, d: &BigInt) -> BigInt {
    n.div_floor(d)
}

pub fn ceil_div(n: &BigInt, d: &BigInt) -> BigInt {
    -((-n).div_floor(d))
}

/// Largest `k / 2^bits` not exceeding `x`.
pub fn dyadic_floor(x: &BigRational, bits: u64) -> BigRational {
    let n = floor_div(&(x.numer() << bits), x.denom());
    BigRational::new(n, BigInt::one() << bits)
}

/// Smallest `k / 2^bits` not below `x`.
pub fn dyadic_ceil(x: &BigRational, bits: u64) -> BigRational {
    let n = ceil_div(&(x.numer() << bits), x.denom());
    BigRational::new(n, BigInt::one() << bits)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        RatInterval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&BigRational::zero())
    }

    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `max(|lo|, |hi|)`, an upper bound for the magnitude of any member.
    pub fn mag(&self) -> BigRational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Widens the endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u64) -> Self {
        RatInterval {
            lo: dyadic_floor(&self.lo, bits),
            hi: dyadic_ceil(&self.hi, bits),
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.contains_zero() {
            return None;
        }
        Some(RatInterval {
            lo: self.hi.recip(),
            hi: self.lo.recip(),
        })
    }

    pub fn div(&self, other: &RatInterval) -> Option<Self> {
        other.recip().map(|r| self * &r)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = RatInterval::from_int(1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    /// Approximates the interval by an `f64` midpoint; for diagnostics only.
    pub fn approx_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, o: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, o: &RatInterval) -> RatInterval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }
}

impl Add for RatInterval {
    type Output = RatInterval;
    fn add(self, o: RatInterval) -> RatInterval {
        &self + &o
    }
}

impl Sub for RatInterval {
    type Output = RatInterval;
    fn sub(self, o: RatInterval) -> RatInterval {
        &self - &o
    }
}

impl Mul for RatInterval {
    type Output = RatInterval;
    fn mul(self, o: RatInterval) -> RatInterval {
        &self * &o
    }
}

impl Neg for RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        -&self
    }
}

/// Decimal digits of a real number known only through enclosures.
///
/// Returns the value truncated toward zero to `frac_digits` places once
/// `lo` and `hi` agree on that truncation, or `None` when they do not.
pub fn truncated_fixed(iv: &RatInterval, frac_digits: usize) -> Option<String> {
    let p = BigInt::from(10u32).pow(frac_digits as u32);
    let t = |x: &BigRational| -> (bool, BigInt) {
        let neg = x.is_negative();
        let m = x.abs() * BigRational::from_integer(p.clone());
        (neg, m.to_integer())
    };
    let (nl, ml) = t(&iv.lo);
    let (nh, mh) = t(&iv.hi);
    if ml != mh || (nl != nh && !ml.is_zero()) {
        return None;
    }
    let neg = nl && nh;
    let digits = ml.to_string();
    let digits = if digits.len() <= frac_digits {
        format!("{}{}", "0".repeat(frac_digits + 1 - digits.len()), digits)
    } else {
        digits
    };
    let (int_part, frac_part) = digits.split_at(digits.len() - frac_digits);
    let mut s = String::new();
    if neg && !ml.is_zero() {
        s.push('-');
    }
    s.push_str(int_part);
    if frac_digits > 0 {
        s.push('.');
        s.push_str(frac_part);
    }
    Some(s)
}

/// Like [`truncated_fixed`] but with a fixed number of significant digits.
/// Positive intervals only.
pub fn truncated_significant(iv: &RatInterval, sig: usize) -> Option<String> {
    if !iv.lo.is_positive() {
        return None;
    }
    // 10^-e <= lo < 10^(1-e)
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut e: i64 = 0;
    let mut probe = iv.lo.clone();
    while probe < BigRational::one() {
        probe *= &ten;
        e += 1;
    }
    while probe >= ten {
        probe /= &ten;
        e -= 1;
    }
    let frac = (e - 1 + sig as i64).max(0) as usize;
    truncated_fixed(iv, frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outward_rounding_contains_original() {
        let iv = RatInterval::new(rat(1, 3), rat(2, 3));
        let r = iv.round_out(10);
        assert!(iv.is_subset_of(&r));
        assert!(r.width() <= iv.width() + rat(2, 1024));
    }

    #[test]
    fn multiplication_handles_signs() {
        let a = RatInterval::new(rat(-1, 1), rat(2, 1));
        let b = RatInterval::new(rat(-3, 1), rat(1, 1));
        let c = &a * &b;
        assert_eq!(c, RatInterval::new(rat(-6, 1), rat(3, 1)));
    }

    #[test]
    fn division_by_interval_with_zero_fails() {
        let a = RatInterval::from_int(1);
        assert!(a.div(&RatInterval::new(rat(-1, 1), rat(1, 1))).is_none());
        assert_eq!(
            a.div(&RatInterval::from_int(4)).unwrap(),
            RatInterval::point(rat(1, 4))
        );
    }

    #[test]
    fn fixed_truncation() {
        let iv = RatInterval::new(rat(14142, 10000), rat(14143, 10000));
        assert_eq!(truncated_fixed(&iv, 3).as_deref(), Some("1.414"));
        assert_eq!(truncated_fixed(&iv, 4), None);
        let neg = -&iv;
        assert_eq!(truncated_fixed(&neg, 2).as_deref(), Some("-1.41"));
        let small = RatInterval::new(rat(1, 1000), rat(1, 999));
        assert_eq!(truncated_fixed(&small, 2).as_deref(), Some("0.00"));
    }

    #[test]
    fn significant_truncation() {
        let iv = RatInterval::new(rat(29411, 1000000), rat(29412, 1000000));
        assert_eq!(truncated_significant(&iv, 4).as_deref(), Some("0.02941"));
    }
}
