//! The determinant maps C, E, Ψ± and Ξ on Z⁴, the contraction of a point by
//! a pair in Z², and a witness construction for the vanishing of Ψ-minors.

use crate::exactreal::XiPolynomial;
use crate::latgeom::{delta_xi, det_generic, integer_kernel, to_xi_vector, wedge, IntPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapsError {
    #[error("expected points of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("the two expressions for Xi disagree at x={x}, y={y}, z={z}")]
    FormMismatch { x: String, y: String, z: String },
    #[error("degenerate input: {0}")]
    DegenerateBasis(String),
    #[error("linear system has only the trivial solution")]
    NoNontrivialSolution,
}

/// A point of Z², written `(C⁻, C⁺)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PairZ2 {
    pub minus: BigInt,
    pub plus: BigInt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Minus, Sign::Plus];
}

impl PairZ2 {
    pub fn new(minus: BigInt, plus: BigInt) -> Self {
        PairZ2 { minus, plus }
    }

    pub fn from_i64s(m: i64, p: i64) -> Self {
        PairZ2::new(m.into(), p.into())
    }

    pub fn get(&self, s: Sign) -> &BigInt {
        match s {
            Sign::Minus => &self.minus,
            Sign::Plus => &self.plus,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.minus.is_zero() && self.plus.is_zero()
    }

    pub fn norm(&self) -> BigInt {
        self.minus.abs().max(self.plus.abs())
    }

    /// `ΔC = C⁺ − ξ C⁻`.
    pub fn delta(&self) -> XiPolynomial {
        XiPolynomial::linear(self.plus.clone(), -self.minus.clone())
    }

    pub fn as_point(&self) -> IntPoint {
        IntPoint(vec![self.minus.clone(), self.plus.clone()])
    }

    pub fn scale(&self, k: &BigInt) -> PairZ2 {
        PairZ2::new(&self.minus * k, &self.plus * k)
    }

    pub fn add(&self, o: &PairZ2) -> PairZ2 {
        PairZ2::new(&self.minus + &o.minus, &self.plus + &o.plus)
    }

    pub fn sub(&self, o: &PairZ2) -> PairZ2 {
        PairZ2::new(&self.minus - &o.minus, &self.plus - &o.plus)
    }

    pub fn neg(&self) -> PairZ2 {
        PairZ2::new(-&self.minus, -&self.plus)
    }
}

impl fmt::Display for PairZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.minus, self.plus)
    }
}

/// `det(a, b)` for the 2x2 matrix with rows `a`, `b`.
pub fn det2(a: &PairZ2, b: &PairZ2) -> BigInt {
    &a.minus * &b.plus - &a.plus * &b.minus
}

/// 3x3 determinant of rows given as slices.
pub fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn lo(x: &IntPoint) -> &[BigInt] {
    &x.0[..3]
}

fn hi(x: &IntPoint) -> &[BigInt] {
    &x.0[1..]
}

pub fn face(x: &IntPoint, s: Sign) -> &[BigInt] {
    match s {
        Sign::Minus => lo(x),
        Sign::Plus => hi(x),
    }
}

fn lin3(terms: &[(&BigInt, &IntPoint)]) -> IntPoint {
    let mut out = vec![BigInt::zero(); 4];
    for (k, p) in terms {
        for (o, c) in out.iter_mut().zip(p.0.iter()) {
            *o += *k * c;
        }
    }
    IntPoint(out)
}

/// The bilinear and trilinear building blocks. The default methods derive
/// Ψ± and both forms of Ξ from `c` and `e`, so an altered `e` propagates.
pub trait MapKernel: Sync {
    fn name(&self) -> &'static str;

    /// `C(x, y) = (det(x⁻, x⁺, y⁻), det(x⁻, x⁺, y⁺))`.
    fn c(&self, x: &IntPoint, y: &IntPoint) -> PairZ2 {
        PairZ2::new(det3(lo(x), hi(x), lo(y)), det3(lo(x), hi(x), hi(y)))
    }

    /// The symmetric trilinear map with `E(x, x, y) = 2 C(x, y)`.
    fn e(&self, w: &IntPoint, x: &IntPoint, y: &IntPoint) -> PairZ2;

    /// `Ψ_ε(x, y, z) = C(y,z)^ε x + E(y,z,x)^ε y − C(y,x)^ε z`.
    fn psi(&self, s: Sign, x: &IntPoint, y: &IntPoint, z: &IntPoint) -> IntPoint {
        let a = self.c(y, z);
        let b = self.e(y, z, x);
        let cc = -self.c(y, x).get(s).clone();
        lin3(&[(a.get(s), x), (b.get(s), y), (&cc, z)])
    }

    /// `C(z,x)⁻ Ψ₊(y,x,z) − C(z,x)⁺ Ψ₋(y,x,z)`.
    fn xi_via_psi(&self, x: &IntPoint, y: &IntPoint, z: &IntPoint) -> IntPoint {
        let czx = self.c(z, x);
        let pp = self.psi(Sign::Plus, y, x, z);
        let pm = self.psi(Sign::Minus, y, x, z);
        let neg = -czx.plus.clone();
        lin3(&[(&czx.minus, &pp), (&neg, &pm)])
    }

    /// `−det(E(x,z,y), C(z,x)) x − det(C(x,z), C(z,x)) y + det(C(x,y), C(z,x)) z`.
    fn xi_expanded(&self, x: &IntPoint, y: &IntPoint, z: &IntPoint) -> IntPoint {
        let czx = self.c(z, x);
        let a = -det2(&self.e(x, z, y), &czx);
        let b = -det2(&self.c(x, z), &czx);
        let c = det2(&self.c(x, y), &czx);
        lin3(&[(&a, x), (&b, y), (&c, z)])
    }
}

/// The maps exactly as defined.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactKernel;

impl MapKernel for ExactKernel {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn e(&self, w: &IntPoint, x: &IntPoint, y: &IntPoint) -> PairZ2 {
        PairZ2::new(
            det3(lo(w), hi(x), lo(y)) - det3(hi(w), lo(x), lo(y)),
            det3(lo(w), hi(x), hi(y)) - det3(hi(w), lo(x), hi(y)),
        )
    }
}

/// Fault injection: `E` with the sign of its second term flipped.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlippedEKernel;

impl MapKernel for FlippedEKernel {
    fn name(&self) -> &'static str {
        "e-sign"
    }

    fn e(&self, w: &IntPoint, x: &IntPoint, y: &IntPoint) -> PairZ2 {
        PairZ2::new(
            det3(lo(w), hi(x), lo(y)) + det3(hi(w), lo(x), lo(y)),
            det3(lo(w), hi(x), hi(y)) + det3(hi(w), lo(x), hi(y)),
        )
    }
}

fn check4(points: &[&IntPoint]) -> Result<(), MapsError> {
    match points.iter().find(|p| p.len() != 4) {
        Some(p) => Err(MapsError::WrongLength {
            expected: 4,
            got: p.len(),
        }),
        None => Ok(()),
    }
}

pub fn c_map(x: &IntPoint, y: &IntPoint) -> Result<PairZ2, MapsError> {
    check4(&[x, y])?;
    Ok(ExactKernel.c(x, y))
}

pub fn e_map(w: &IntPoint, x: &IntPoint, y: &IntPoint) -> Result<PairZ2, MapsError> {
    check4(&[w, x, y])?;
    Ok(ExactKernel.e(w, x, y))
}

pub fn psi_map(s: Sign, x: &IntPoint, y: &IntPoint, z: &IntPoint) -> Result<IntPoint, MapsError> {
    check4(&[x, y, z])?;
    Ok(ExactKernel.psi(s, x, y, z))
}

/// `Ξ(x, y, z)`, computed both ways; disagreement is reported as an error.
pub fn xi_map(x: &IntPoint, y: &IntPoint, z: &IntPoint) -> Result<IntPoint, MapsError> {
    xi_map_with(&ExactKernel, x, y, z)
}

pub fn xi_map_with<K: MapKernel + ?Sized>(
    k: &K,
    x: &IntPoint,
    y: &IntPoint,
    z: &IntPoint,
) -> Result<IntPoint, MapsError> {
    check4(&[x, y, z])?;
    let a = k.xi_via_psi(x, y, z);
    let b = k.xi_expanded(x, y, z);
    if a != b {
        return Err(MapsError::FormMismatch {
            x: x.to_string(),
            y: y.to_string(),
            z: z.to_string(),
        });
    }
    Ok(a)
}

/// `C⁺ x⁻ − C⁻ x⁺ ∈ Z^n`.
pub fn contract_pair(c: &PairZ2, x: &IntPoint) -> Result<IntPoint, MapsError> {
    if !(2..=4).contains(&x.len()) {
        return Err(MapsError::WrongLength {
            expected: 4,
            got: x.len(),
        });
    }
    let m = x.minus();
    let p = x.plus();
    Ok(IntPoint(
        m.0.iter()
            .zip(p.0.iter())
            .map(|(a, b)| &c.plus * a - &c.minus * b)
            .collect(),
    ))
}

/// `dim ⟨x⁻, x⁺⟩`.
pub fn v_dim(x: &IntPoint) -> usize {
    let m = x.minus();
    let p = x.plus();
    if m.is_zero() && p.is_zero() {
        0
    } else if wedge(&[&m, &p]).map(|w| w.is_zero()).unwrap_or(true) {
        1
    } else {
        2
    }
}

/// `ΔC(x, y) − x₀ det(Δ²x, Δ²y)` as a formal element of Z[ξ].
pub fn delta_c_residual(x: &IntPoint, y: &IntPoint) -> Result<XiPolynomial, MapsError> {
    check4(&[x, y])?;
    let dc = ExactKernel.c(x, y).delta();
    let d2x = delta_xi(&delta_xi(&to_xi_vector(x)));
    let d2y = delta_xi(&delta_xi(&to_xi_vector(y)));
    let main = det_generic(&[d2x, d2y]).scale(&x[0]);
    Ok(&dc - &main)
}

/// Outcome of the witness construction for a basis `(v, w, x, y)`.
#[derive(Clone, Debug, Serialize)]
pub struct Prop43Report {
    pub a: String,
    pub b: String,
    pub c: String,
    pub z: Vec<String>,
    pub t: String,
    pub d_minus: String,
    pub d_plus: String,
    pub t_from_wedge: bool,
    pub t_consistent: bool,
    pub conclusion_i: bool,
    pub conclusion_ii: bool,
    pub conclusion_iii: bool,
    pub c_is_zero: bool,
}

impl Prop43Report {
    pub fn all_green(&self) -> bool {
        self.d_minus == "0"
            && self.d_plus == "0"
            && self.t_consistent
            && self.conclusion_i
            && self.conclusion_ii
            && self.conclusion_iii
    }
}

fn rat(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Solves `a C(y,x) − b C(x,y) + c E(w,y,x) = 0`, sets `z = a y + b x + c w`
/// and checks that both Ψ-minors vanish and the three conclusions hold with
/// a single rational `t`.
pub fn prop43_witness(
    v: &IntPoint,
    w: &IntPoint,
    x: &IntPoint,
    y: &IntPoint,
) -> Result<Prop43Report, MapsError> {
    check4(&[v, w, x, y])?;
    let k = ExactKernel;
    let basis_det = crate::latgeom::det_int(&[v, w, x, y]).expect("square");
    if basis_det.is_zero() {
        return Err(MapsError::DegenerateBasis("(v, w, x, y) is not a basis".into()));
    }
    let xm = x.minus();
    let xp = x.plus();
    let xw = wedge(&[&xm, &xp]).expect("grade 2 in dimension 3");
    if xw.is_zero() {
        return Err(MapsError::DegenerateBasis("x⁻ ∧ x⁺ = 0".into()));
    }
    let cyx = k.c(y, x);
    let cxy = k.c(x, y);
    let ewyx = k.e(w, y, x);
    let rows = vec![
        vec![cyx.minus.clone(), -cxy.minus.clone(), ewyx.minus.clone()],
        vec![cyx.plus.clone(), -cxy.plus.clone(), ewyx.plus.clone()],
    ];
    let mut kernel = crate::latgeom::hnf_rows(&integer_kernel(&rows, 3), 3);
    if kernel.is_empty() {
        return Err(MapsError::NoNontrivialSolution);
    }
    let mut sol = kernel.swap_remove(0);
    let g = sol.iter().fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
    for c in sol.iter_mut() {
        *c /= &g;
    }
    if sol.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        for c in sol.iter_mut() {
            *c = -c.clone();
        }
    }
    let (a, b, c) = (sol[0].clone(), sol[1].clone(), sol[2].clone());
    let z = lin3(&[(&a, y), (&b, x), (&c, w)]);
    let d = |s: Sign| crate::latgeom::det_int(&[v, w, x, &k.psi(s, x, y, &z)]).expect("square");
    let d_minus = d(Sign::Minus);
    let d_plus = d(Sign::Plus);

    // t from y⁻∧z⁺ − y⁺∧z⁻ − a y⁻∧y⁺ = −t x⁻∧x⁺.
    let (ym, yp, zm, zp) = (y.minus(), y.plus(), z.minus(), z.plus());
    let w1 = wedge(&[&ym, &zp]).unwrap();
    let w2 = wedge(&[&yp, &zm]).unwrap();
    let w3 = wedge(&[&ym, &yp]).unwrap();
    let lhs: Vec<BigInt> = (0..3)
        .map(|i| &w1.coords[i] - &w2.coords[i] - &a * &w3.coords[i])
        .collect();
    let piv = xw.coords.iter().position(|c| !c.is_zero()).unwrap();
    let t_wedge = -BigRational::new(lhs[piv].clone(), xw.coords[piv].clone());
    let wedge_ok = (0..3).all(|i| rat(&lhs[i]) == -&t_wedge * rat(&xw.coords[i]));

    let cyz = k.c(y, &z);
    let (t, t_from_wedge, consistent_i) = if cxy.is_zero() {
        (t_wedge.clone(), true, cyz.is_zero())
    } else {
        let t_i = if !cxy.minus.is_zero() {
            BigRational::new(cyz.minus.clone(), cxy.minus.clone())
        } else {
            BigRational::new(cyz.plus.clone(), cxy.plus.clone())
        };
        let same = rat(&cyz.minus) == &t_i * rat(&cxy.minus) && rat(&cyz.plus) == &t_i * rat(&cxy.plus);
        (t_i, false, same)
    };
    let t_consistent = wedge_ok && t == t_wedge;
    let conclusion_i =
        consistent_i && rat(&cyz.minus) == &t * rat(&cxy.minus) && rat(&cyz.plus) == &t * rat(&cxy.plus);
    let czy = k.c(&z, y);
    let cxw = k.c(x, w);
    let ct = rat(&c) * &t;
    let conclusion_ii = rat(&czy.minus) == &ct * rat(&cxw.minus) && rat(&czy.plus) == &ct * rat(&cxw.plus);
    let czx = k.c(&z, x);
    let cwx = k.c(w, x);
    let conclusion_iii = det2(&czx, &cxw) == &c * &c * det2(&cwx, &cxw);
    Ok(Prop43Report {
        a: a.to_string(),
        b: b.to_string(),
        c: c.to_string(),
        z: z.to_strings(),
        t: t.to_string(),
        d_minus: d_minus.to_string(),
        d_plus: d_plus.to_string(),
        t_from_wedge,
        t_consistent,
        conclusion_i,
        conclusion_ii,
        conclusion_iii,
        c_is_zero: c.is_zero(),
    })
}
