use diophlab::constants::{lambda3_quartic, resultant};
use diophlab::exactreal::AlgebraicReal;
use diophlab::minpoints::brute_force_records;
use diophlab::poly::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

const ORACLE_BITS: u32 = 200;

/// `[a, a + 1] / 2^200` bracketing `2^(1/4) − 1`, from an integer fourth root.
fn fourth_root_bracket() -> (BigRational, BigRational) {
    let scale = BigInt::from(1) << ORACLE_BITS;
    let a = (BigInt::from(2) << (4 * ORACLE_BITS)).nth_root(4) - &scale;
    (BigRational::new(a.clone(), scale.clone()), BigRational::new(a + 1, scale))
}

fn eval(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Lipschitz bound for `coeffs` on `[0, 1]`.
fn slope_bound(coeffs: &[BigInt]) -> BigRational {
    let s: BigInt = coeffs.iter().enumerate().map(|(k, c)| c.abs() * k).sum();
    BigRational::from_integer(s)
}

/// Exact remainder modulo the monic `x⁴ + 4x³ + 6x² + 4x − 1`.
fn rem_monic(coeffs: &[BigInt]) -> Vec<BigInt> {
    let m: Vec<BigInt> = [-1, 4, 6, 4].iter().map(|&v| BigInt::from(v)).collect();
    let mut r = coeffs.to_vec();
    while r.len() > 4 {
        let lead = r.pop().unwrap();
        let base = r.len() - 4;
        for (k, mk) in m.iter().enumerate() {
            r[base + k] -= &lead * mk;
        }
    }
    r
}

fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn sign_of_form_matches_high_precision_oracle() {
    let xi = AlgebraicReal::from_i64s(&[-1, 4, 6, 4, 1], (0, 1), (1, 2)).unwrap();
    let (lo, hi) = fourth_root_bracket();
    let width = &hi - &lo;
    let minpoly: Vec<BigInt> = [-1, 4, 6, 4, 1].iter().map(|&v| BigInt::from(v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut zero_forms = 0;
    for trial in 0..1000 {
        let deg = rng.gen_range(0..=7);
        let mut coeffs: Vec<BigInt> = (0..=deg).map(|_| BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000))).collect();
        if trial % 10 == 0 {
            let cof: Vec<BigInt> = (0..3).map(|_| BigInt::from(rng.gen_range(-50i64..=50))).collect();
            coeffs = mul(&minpoly, &cof);
        } else if trial % 10 == 1 {
            // Near-cancelling form: c0 + c1 x with c0/c1 close to ξ.
            let c1 = BigInt::from(rng.gen_range(1i64..=1_000_000_000));
            let c0 = -(&c1 * &lo.numer().clone() / lo.denom()) + rng.gen_range(-1i64..=1);
            coeffs = vec![c0, c1];
        }
        let expected = if rem_monic(&coeffs).iter().all(Zero::is_zero) {
            zero_forms += 1;
            Ordering::Equal
        } else {
            let v = eval(&coeffs, &lo);
            assert!(v.abs() > slope_bound(&coeffs) * &width, "oracle undecided at trial {trial}");
            v.cmp(&BigRational::zero())
        };
        assert_eq!(xi.sign_of_form(&coeffs), expected, "trial {trial}: {coeffs:?}");
    }
    assert!(zero_forms >= 100);
}

/// Minimal points by definition, searching the whole box `|x_k| <= B`.
fn box_records(xi: f64, n: usize, x0_max: i64) -> Vec<Vec<i64>> {
    let bound = x0_max + 1;
    let l = |x: &[i64]| (1..=n).map(|k| (x[0] as f64 * xi.powi(k as i32) - x[k] as f64).abs()).fold(0.0, f64::max);
    let mut pts: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; n + 1];
    fn rec(k: usize, cur: &mut Vec<i64>, b: i64, out: &mut Vec<Vec<i64>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in -b..=b {
            cur[k] = v;
            rec(k + 1, cur, b, out);
        }
    }
    for x0 in 1..=x0_max {
        cur[0] = x0;
        rec(1, &mut cur, bound, &mut pts);
    }
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut best = f64::INFINITY;
    for x0 in 1..=x0_max {
        let (pt, val) = pts
            .iter()
            .filter(|p| p[0] == x0)
            .map(|p| (p.clone(), l(p)))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if val < best - 1e-9 {
            best = val;
            out.push(pt);
        } else {
            assert!(val > best + 1e-9, "near tie at x0 = {x0}");
        }
    }
    out
}

#[test]
fn minimal_points_match_box_search() {
    let cases = [
        (AlgebraicReal::from_i64s(&[-1, 2, 1], (0, 1), (1, 1)).unwrap(), 2f64.sqrt() - 1.0, 1, 400),
        (AlgebraicReal::from_i64s(&[-1, 4, 6, 4, 1], (0, 1), (1, 2)).unwrap(), 2f64.powf(0.25) - 1.0, 2, 60),
        (AlgebraicReal::from_i64s(&[-1, 4, 6, 4, 1], (0, 1), (1, 2)).unwrap(), 2f64.powf(0.25) - 1.0, 3, 14),
    ];
    for (xi, xf, n, x0_max) in cases {
        let fast: Vec<Vec<i64>> = brute_force_records(&xi, n, x0_max as u64)
            .unwrap()
            .iter()
            .map(|r| r.x.iter().map(|c| i64::try_from(c).unwrap()).collect())
            .collect();
        assert_eq!(fast, box_records(xf, n, x0_max), "n = {n}");
    }
}

#[test]
fn lambda3_quartic_matches_substitution() {
    // γ = T(1 − T)/(1 − 2T) substituted in γ² − γ − 1, cleared of denominators.
    let p = |c: &[i64]| IntPoly::from_i64s(c);
    let num = p(&[0, 1, -1]);
    let den = p(&[1, -2]);
    let subst = &(&num * &num) - &(&num * &den) - (&den * &den);
    let q = lambda3_quartic();
    assert!(q == subst || q == -subst);
}

proptest! {
    #[test]
    fn resultant_with_linear_factor(
        f0 in -30i64..=30,
        f1 in 1i64..=30,
        g in prop::collection::vec(-30i64..=30, 1..5),
    ) {
        let f = [IntPoly::from_i64s(&[f0]), IntPoly::from_i64s(&[f1])];
        let gp: Vec<IntPoly> = g.iter().map(|&c| IntPoly::from_i64s(&[c])).collect();
        let r = resultant(&f, &gp);
        let n = g.len() - 1;
        let expected: BigInt = g
            .iter()
            .enumerate()
            .map(|(k, &c)| BigInt::from(c) * BigInt::from(-f0).pow(k as u32) * BigInt::from(f1).pow((n - k) as u32))
            .sum();
        prop_assert_eq!(r.coeff(0).abs(), expected.abs());
        prop_assert!(r.degree() == 0 || r.is_zero());
    }
}
