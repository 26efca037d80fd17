//! The golden ratio, the exponents λ₂ and λ₃, and the quantities built from
//! them, with certified decimal expansions and an identity checker.
//!
//! Every constant except γ and λ₂ lies in Q(λ₃). Those are handled as
//! polynomials in λ₃ reduced modulo its quartic, which gives both exact
//! arithmetic and a defining polynomial for each constant.

use crate::exactreal::{AlgebraicReal, AlgebraicRealJson};
use crate::interval::{rational_to_f64, RatInterval};
use crate::latgeom::{det_generic, integer_kernel, Ring};
use crate::poly::{count_roots, IntPoly, RatPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Debug, thiserror::Error)]
pub enum ConstantsError {
    #[error("identity {name} has residual {residual:e}, above the tolerance {tolerance:e}")]
    ResidualTooLarge {
        name: &'static str,
        residual: f64,
        tolerance: f64,
    },
}

impl Ring for IntPoly {
    fn ring_zero() -> Self {
        IntPoly::zero()
    }
    fn ring_add(&self, o: &Self) -> Self {
        self + o
    }
    fn ring_sub(&self, o: &Self) -> Self {
        self - o
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// Resultant with respect to an eliminated variable. Both inputs list their
/// coefficients constant-first, each coefficient being a polynomial in the
/// remaining variable.
pub fn resultant(f: &[IntPoly], g: &[IntPoly]) -> IntPoly {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return IntPoly::constant(BigInt::one());
    }
    let mut rows = Vec::with_capacity(size);
    for (p, shifts) in [(f, n), (g, m)] {
        for s in 0..shifts {
            let mut row = vec![IntPoly::zero(); size];
            for (k, c) in p.iter().rev().enumerate() {
                row[s + k] = c.clone();
            }
            rows.push(row);
        }
    }
    det_generic(&rows)
}

/// `T⁴ − 4T³ + 3T − 1`, obtained by eliminating γ between
/// `T² − (2γ + 1)T + γ` and `γ² − γ − 1`.
pub fn lambda3_quartic() -> IntPoly {
    let p = |c: &[i64]| IntPoly::from_i64s(c);
    // T² − T + γ(1 − 2T), using γ³ = 2γ + 1.
    let f = [p(&[0, -1, 1]), p(&[1, -2])];
    let g = [p(&[-1]), p(&[-1]), p(&[1])];
    resultant(&f, &g).normalized()
}

pub fn p2_polynomial() -> IntPoly {
    IntPoly::from_i64s(&[-1, 2, 2, -4, 3])
}

/// Arithmetic in Q[T]/(f).
#[derive(Clone, Debug)]
pub struct QuotientField {
    pub modulus: RatPoly,
}

impl QuotientField {
    pub fn new(f: &IntPoly) -> Self {
        QuotientField {
            modulus: RatPoly::from_int(f),
        }
    }

    pub fn from_ints(&self, c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c).rem(&self.modulus)
    }

    pub fn add(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.add(b).rem(&self.modulus)
    }

    pub fn sub(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.sub(b).rem(&self.modulus)
    }

    pub fn mul(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn div(&self, a: &RatPoly, b: &RatPoly) -> RatPoly {
        let inv = b.inverse_mod(&self.modulus).expect("invertible element");
        self.mul(a, &inv)
    }

    pub fn pow(&self, a: &RatPoly, k: u32) -> RatPoly {
        (0..k).fold(self.from_ints(&[1]), |acc, _| self.mul(&acc, a))
    }

    /// Smallest-degree primitive integer polynomial vanishing at `a`.
    pub fn min_poly(&self, a: &RatPoly) -> IntPoly {
        let d = self.modulus.coeffs().len() - 1;
        let mut powers = vec![self.from_ints(&[1])];
        for k in 1..=d {
            powers.push(self.mul(&powers[k - 1], a));
            let scales: Vec<BigInt> = powers
                .iter()
                .map(|p| p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom())))
                .collect();
            let rows: Vec<Vec<BigInt>> = (0..d)
                .map(|r| {
                    powers
                        .iter()
                        .zip(&scales)
                        .map(|(p, s)| {
                            p.coeffs()
                                .get(r)
                                .map(|c| (c * BigRational::from_integer(s.clone())).to_integer())
                                .unwrap_or_default()
                        })
                        .collect()
                })
                .collect();
            let ker = integer_kernel(&rows, k + 1);
            if let Some(rel) = ker.first() {
                let coeffs = rel.iter().zip(&scales).map(|(c, s)| c * s).collect();
                return IntPoly::new(coeffs).normalized();
            }
        }
        unreachable!("the modulus itself is a relation")
    }
}

/// Interval Horner evaluation of a rational polynomial.
pub fn eval_interval(p: &RatPoly, x: &RatInterval) -> RatInterval {
    p.coeffs()
        .iter()
        .rev()
        .fold(RatInterval::point(BigRational::zero()), |acc, c| {
            &(&acc * x) + &RatInterval::point(c.clone())
        })
}

#[derive(Clone, Debug)]
pub struct NamedConstant {
    pub name: &'static str,
    pub symbol: &'static str,
    pub value: AlgebraicReal,
    /// The constant as a polynomial in λ₃, when it lies in Q(λ₃).
    pub in_field: Option<RatPoly>,
}

#[derive(Clone, Debug)]
pub struct ExponentConstants {
    pub quartic: IntPoly,
    pub field: QuotientField,
    /// γ written as a polynomial in λ₃.
    pub gamma_in_field: RatPoly,
    pub constants: Vec<NamedConstant>,
}

/// Width to which every constant is refined during construction.
pub fn build_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(60))
}

fn algebraic_from_field(field: &QuotientField, a: &RatPoly, lambda: &AlgebraicReal) -> AlgebraicReal {
    let poly = field.min_poly(a);
    let mut bits = 64;
    loop {
        let iv = eval_interval(a, &lambda.refine_bits(bits)).round_out(bits);
        if let Ok(x) = AlgebraicReal::new(poly.clone(), iv.lo, iv.hi) {
            return x;
        }
        bits *= 2;
    }
}

impl ExponentConstants {
    pub fn get(&self, name: &str) -> &NamedConstant {
        self.constants
            .iter()
            .find(|c| c.name == name)
            .unwrap_or_else(|| panic!("unknown constant {name}"))
    }

    pub fn gamma(&self) -> &AlgebraicReal {
        &self.get("gamma").value
    }

    pub fn lambda2(&self) -> &AlgebraicReal {
        &self.get("lambda2").value
    }

    pub fn lambda3(&self) -> &AlgebraicReal {
        &self.get("lambda3").value
    }

    /// `λ₃² − γ³λ₃ + γ` reduced in Q(λ₃); zero when the construction is right.
    pub fn defining_relation_residue(&self) -> RatPoly {
        let f = &self.field;
        let t = f.from_ints(&[0, 1]);
        let g = &self.gamma_in_field;
        let g3 = f.pow(g, 3);
        f.add(&f.sub(&f.mul(&t, &t), &f.mul(&g3, &t)), g)
    }

    /// `γ² − γ − 1` for the field representative of γ.
    pub fn golden_relation_residue(&self) -> RatPoly {
        let f = &self.field;
        let g = &self.gamma_in_field;
        f.sub(&f.sub(&f.mul(g, g), g), &f.from_ints(&[1]))
    }

    /// Whether λ₃ is the smallest positive root of its quartic.
    pub fn lambda3_is_smallest_positive(&self) -> bool {
        let lo = self.lambda3().enclosure().lo;
        lo.is_positive() && count_roots(&self.quartic.sturm_chain(), &BigRational::zero(), &lo) == 0
    }
}

/// Builds all constants with enclosures of width at most 10⁻⁶⁰.
pub fn build_constants() -> ExponentConstants {
    let gamma = AlgebraicReal::from_i64s(&[-1, -1, 1], (1, 1), (2, 1)).expect("golden ratio");
    let lambda2 = AlgebraicReal::real_roots(&p2_polynomial())
        .expect("non-constant")
        .into_iter()
        .find(|r| r.sign_of_form(&[BigInt::zero(), BigInt::one()]) == Ordering::Greater)
        .expect("positive root of P₂");
    let quartic = lambda3_quartic();
    let lambda3 = AlgebraicReal::real_roots(&quartic)
        .expect("non-constant")
        .into_iter()
        .find(|r| r.sign_of_form(&[BigInt::zero(), BigInt::one()]) == Ordering::Greater)
        .expect("positive root of the quartic");
    let field = QuotientField::new(&quartic);
    let f = &field;
    let t = f.from_ints(&[0, 1]);
    let one = f.from_ints(&[1]);
    let g = f.div(&f.from_ints(&[0, 1, -1]), &f.from_ints(&[1, -2]));

    let theta = f.div(&f.sub(&one, &t), &t);
    let sigma = f.sub(&f.from_ints(&[2]), &f.mul(&f.add(&f.from_ints(&[3]), &g), &t));
    let alpha = f.div(
        &f.from_ints(&[1, -3, 1, 1, -1]),
        &f.mul(&t, &f.from_ints(&[1, -1, 1])),
    );
    let neg_l_over_g = f.div(&f.from_ints(&[0, -1]), &g);
    let l2_over_g = f.div(&f.mul(&t, &t), &g);
    let one_minus_2l = f.from_ints(&[1, -2]);
    let g2 = f.mul(&g, &g);
    let g4l_g2 = f.sub(&f.mul(&f.mul(&g2, &g2), &t), &g2);
    let three_l_1 = f.from_ints(&[-1, 3]);
    let gl_1 = f.sub(&f.mul(&g, &t), &one);
    let neg_l = f.from_ints(&[0, -1]);

    let mut constants = vec![
        NamedConstant {
            name: "gamma",
            symbol: "γ",
            value: gamma,
            in_field: Some(g.clone()),
        },
        NamedConstant {
            name: "lambda2",
            symbol: "λ₂",
            value: lambda2,
            in_field: None,
        },
        NamedConstant {
            name: "lambda3",
            symbol: "λ₃",
            value: lambda3.clone(),
            in_field: Some(t.clone()),
        },
    ];
    let derived: [(&'static str, &'static str, RatPoly); 10] = [
        ("theta", "θ = (1−λ)/λ", theta),
        ("sigma", "σ = 2−(3+γ)λ", sigma),
        ("alpha", "α", alpha),
        ("neg_lambda_over_gamma", "−λ/γ", neg_l_over_g),
        ("lambda_sq_over_gamma", "λ²/γ", l2_over_g),
        ("one_minus_two_lambda", "1−2λ", one_minus_2l),
        ("gamma4_lambda_minus_gamma2", "γ⁴λ−γ²", g4l_g2),
        ("three_lambda_minus_one", "3λ−1", three_l_1),
        ("gamma_lambda_minus_one", "γλ−1", gl_1),
        ("neg_lambda", "−λ", neg_l),
    ];
    for (name, symbol, a) in derived {
        constants.push(NamedConstant {
            name,
            symbol,
            value: algebraic_from_field(f, &a, &lambda3),
            in_field: Some(a),
        });
    }
    let w = build_width();
    for c in &constants {
        c.value.refine_to(&w);
    }
    ExponentConstants {
        quartic,
        gamma_in_field: g,
        field,
        constants,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantJson {
    pub name: &'static str,
    pub symbol: &'static str,
    pub decimal: String,
    #[serde(flatten)]
    pub algebraic: AlgebraicRealJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantsJson {
    pub digits: usize,
    pub lambda3_quartic: Vec<String>,
    pub constants: Vec<ConstantJson>,
}

pub fn constants_json(c: &ExponentConstants, digits: usize) -> ConstantsJson {
    ConstantsJson {
        digits,
        lambda3_quartic: c.quartic.coeffs().iter().map(|v| v.to_string()).collect(),
        constants: c
            .constants
            .iter()
            .map(|k| ConstantJson {
                name: k.name,
                symbol: k.symbol,
                decimal: k.value.to_decimal(digits),
                algebraic: k.value.to_json(),
            })
            .collect(),
    }
}

/// One published decimal value with its tolerance.
#[derive(Clone, Debug, Serialize)]
pub struct AnchorCheck {
    pub name: &'static str,
    pub symbol: &'static str,
    pub anchor: &'static str,
    pub tolerance: &'static str,
    pub value: String,
    /// `value − anchor`, rounded to double precision.
    pub difference: f64,
    pub pass: bool,
}

/// `(constant, anchor, tolerance)`.
pub const ANCHORS: &[(&str, &str, &str)] = &[
    ("lambda3", "0.4245", "5e-5"),
    ("lambda2", "0.4241", "5e-5"),
    ("sigma", "0.0396", "5e-5"),
    ("alpha", "-0.1536", "5e-5"),
    ("neg_lambda_over_gamma", "-0.2623", "5e-5"),
    ("lambda_sq_over_gamma", "0.111", "1e-3"),
    ("gamma4_lambda_minus_gamma2", "0.2915", "5e-5"),
    ("three_lambda_minus_one", "0.2735", "5e-5"),
    ("gamma_lambda_minus_one", "-0.3131", "5e-5"),
    ("one_minus_two_lambda", "0.151", "1e-3"),
    ("neg_lambda", "-0.4245", "5e-5"),
];

/// Compares each anchored constant with its decimal value, certified by
/// interval arithmetic.
pub fn anchor_checks(c: &ExponentConstants) -> Vec<AnchorCheck> {
    let parse = |s: &str| crate::exactreal::parse_rational(s).expect("valid literal");
    ANCHORS
        .iter()
        .map(|&(name, anchor, tol)| {
            let k = c.get(name);
            let a = parse(anchor);
            let t = parse(tol);
            let mut bits = 128;
            let pass = loop {
                let iv = k.value.refine_bits(bits);
                let d = &iv - &RatInterval::point(a.clone());
                if d.mag() <= t {
                    break true;
                }
                let lower = if d.contains_zero() {
                    BigRational::zero()
                } else {
                    d.lo.abs().min(d.hi.abs())
                };
                if lower > t {
                    break false;
                }
                bits *= 2;
            };
            let iv = k.value.refine_bits(128);
            AnchorCheck {
                name,
                symbol: k.symbol,
                anchor,
                tolerance: tol,
                value: k.value.to_decimal(10),
                difference: rational_to_f64(&(iv.midpoint() - a)),
                pass,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResidual {
    pub name: &'static str,
    pub statement: &'static str,
    /// Certified upper bound on `|LHS − RHS|`.
    pub residual: f64,
    pub bits: u64,
    pub pass: bool,
}

/// The identity catalog, each written as an expression that vanishes.
pub const IDENTITY_CATALOG: &[(&str, &str)] = &[
    ("theta-inverse", "θ − 1/θ = 1/γ"),
    ("lambda3-quadratic", "λ² − γ³λ + γ = 0"),
    ("theta-square", "θ² − 1 = θ/γ"),
    ("four-term", "γθ − λθ − λγ − λθγ = 0"),
    ("one-minus", "1 − λθ − λγ = −λ/γ"),
    ("theta-minus", "θ − λγ − λθγ = −λ/γ"),
    ("theta-lambda", "θ − λ − λθ = λθ/γ"),
    ("gamma-theta", "γ − λθ − λγ = λθ/γ"),
    ("gamma-square-ratio", "γ − λγθ − λθ = λ²/γ"),
    ("sigma-product", "σ = (γ − θ)(1 − 2λ)"),
];

fn identity_intervals(lam: &RatInterval, g: &RatInterval) -> Vec<RatInterval> {
    let one = RatInterval::from_int(1);
    let two = RatInterval::from_int(2);
    let three = RatInterval::from_int(3);
    let th = (&one - lam).div(lam).expect("λ > 0");
    let inv = |x: &RatInterval| x.recip().expect("nonzero");
    let l_over_g = lam * &inv(g);
    let sigma = &two - &(&(&three + g) * lam);
    vec![
        &(&th - &inv(&th)) - &inv(g),
        &(&(lam * lam) - &(&g.pow(3) * lam)) + g,
        &(&(&th * &th) - &one) - &(&th * &inv(g)),
        &(&(&(g * &th) - &(lam * &th)) - &(lam * g)) - &(&(lam * &th) * g),
        &(&(&one - &(lam * &th)) - &(lam * g)) + &l_over_g,
        &(&(&th - &(lam * g)) - &(&(lam * &th) * g)) + &l_over_g,
        &(&(&th - lam) - &(lam * &th)) - &(&l_over_g * &th),
        &(&(g - &(lam * &th)) - &(lam * g)) - &(&l_over_g * &th),
        &(&(g - &(&(lam * g) * &th)) - &(lam * &th)) - &(lam * &l_over_g),
        &sigma - &(&(g - &th) * &(&one - &(&two * lam))),
    ]
}

/// Residual bounds for the catalog with both λ₃ and γ enclosed to `bits`.
pub fn identity_residuals(c: &ExponentConstants, bits: u64) -> Vec<(RatInterval, &'static str, &'static str)> {
    let lam = c.lambda3().refine_bits(bits);
    let g = c.gamma().refine_bits(bits);
    identity_intervals(&lam, &g)
        .into_iter()
        .zip(IDENTITY_CATALOG)
        .map(|(iv, &(n, s))| (iv, n, s))
        .collect()
}

/// Evaluates the catalog at escalating precision until every residual drops
/// below `tolerance`; an identity that never does is reported as failing.
pub fn verify_identities(
    c: &ExponentConstants,
    tolerance: &BigRational,
) -> Result<Vec<IdentityResidual>, (Vec<IdentityResidual>, ConstantsError)> {
    let max_bits: u64 = 1 << 13;
    let mut bits: u64 = 64;
    let mut rows: Vec<Option<IdentityResidual>> = vec![None; IDENTITY_CATALOG.len()];
    loop {
        for (k, (iv, name, statement)) in identity_residuals(c, bits).into_iter().enumerate() {
            if rows[k].as_ref().is_some_and(|r| r.pass) {
                continue;
            }
            let m = iv.mag();
            rows[k] = Some(IdentityResidual {
                name,
                statement,
                residual: rational_to_f64(&m),
                bits,
                pass: &m < tolerance,
            });
        }
        if rows.iter().all(|r| r.as_ref().unwrap().pass) || bits >= max_bits {
            break;
        }
        bits *= 2;
    }
    let rows: Vec<IdentityResidual> = rows.into_iter().map(Option::unwrap).collect();
    match rows.iter().find(|r| !r.pass) {
        None => Ok(rows),
        Some(r) => {
            let err = ConstantsError::ResidualTooLarge {
                name: r.name,
                residual: r.residual,
                tolerance: rational_to_f64(tolerance),
            };
            Err((rows, err))
        }
    }
}

/// `10^-k`.
pub fn ten_pow_neg(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(k))
}
