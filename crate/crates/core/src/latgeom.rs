//! Integer points, face maps, determinants, Grassmann coordinates, lattice
//! saturation and heights of rational subspaces.

use crate::exactreal::{l_form, AlgebraicReal, XiPolynomial};
use crate::interval::RatInterval;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Deref, Index, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatGeomError {
    #[error("point has length {0}; need at least 2")]
    LengthTooShort(usize),
    #[error("L is undefined at the zero point")]
    ZeroPoint,
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("grade {grade} is out of range for dimension {dim}")]
    GradeOutOfRange { grade: usize, dim: usize },
    #[error("spanning set is zero")]
    ZeroSpan,
    #[error("input is zero")]
    ZeroInput,
    #[error("vector is not normalized: max-norm {0}")]
    NotNormalized(String),
    #[error("points have mismatched lengths")]
    LengthMismatch,
}

/// A point of Z^N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntPoint(pub Vec<BigInt>);

impl IntPoint {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntPoint(coords)
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        IntPoint(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        IntPoint(vec![BigInt::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `max |x_i|`.
    pub fn sup_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// `x⁻`: drops the last coordinate.
    pub fn minus(&self) -> IntPoint {
        IntPoint(self.0[..self.0.len() - 1].to_vec())
    }

    /// `x⁺`: drops the first coordinate.
    pub fn plus(&self) -> IntPoint {
        IntPoint(self.0[1..].to_vec())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoint {
        IntPoint(self.0.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> IntPoint {
        IntPoint(self.0.iter().map(|c| -c).collect())
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|c| c.to_string()).collect()
    }

    /// `Σ k_i v_i` for integer coefficients.
    pub fn combination(coeffs: &[BigInt], points: &[&IntPoint]) -> IntPoint {
        let n = points[0].len();
        let mut out = vec![BigInt::zero(); n];
        for (k, p) in coeffs.iter().zip(points) {
            for (o, c) in out.iter_mut().zip(p.0.iter()) {
                *o += k * c;
            }
        }
        IntPoint(out)
    }
}

impl Deref for IntPoint {
    type Target = [BigInt];
    fn deref(&self) -> &[BigInt] {
        &self.0
    }
}

impl Index<usize> for IntPoint {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntPoint {
    type Output = IntPoint;
    fn add(self, o: &IntPoint) -> IntPoint {
        IntPoint(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntPoint {
    type Output = IntPoint;
    fn sub(self, o: &IntPoint) -> IntPoint {
        IntPoint(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for IntPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Minimal commutative-ring interface for determinant expansion.
pub trait Ring: Clone {
    fn ring_zero() -> Self;
    fn ring_add(&self, o: &Self) -> Self;
    fn ring_sub(&self, o: &Self) -> Self;
    fn ring_mul(&self, o: &Self) -> Self;
}

impl Ring for BigInt {
    fn ring_zero() -> Self {
        BigInt::zero()
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

impl Ring for BigRational {
    fn ring_zero() -> Self {
        BigRational::zero()
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

impl Ring for XiPolynomial {
    fn ring_zero() -> Self {
        XiPolynomial::zero()
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

/// Cofactor expansion along the first row. Intended for sizes up to 5.
pub fn det_generic<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    match n {
        0 => panic!("determinant of an empty matrix"),
        1 => m[0][0].clone(),
        2 => m[0][0].ring_mul(&m[1][1]).ring_sub(&m[0][1].ring_mul(&m[1][0])),
        _ => {
            let mut acc = T::ring_zero();
            for j in 0..n {
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, v)| v.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].ring_mul(&det_generic(&minor));
                acc = if j % 2 == 0 { acc.ring_add(&term) } else { acc.ring_sub(&term) };
            }
            acc
        }
    }
}

/// Exact determinant of the matrix whose rows are the given points.
pub fn det_int(rows: &[&IntPoint]) -> Result<BigInt, LatGeomError> {
    let n = rows.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    if rows.iter().any(|r| r.len() != n) {
        return Err(LatGeomError::NotSquare {
            rows: n,
            cols: rows[0].len(),
        });
    }
    Ok(det3_fast(rows).unwrap_or_else(|| {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.0.clone()).collect();
        det_generic(&m)
    }))
}

fn det3_fast(rows: &[&IntPoint]) -> Option<BigInt> {
    if rows.len() != 3 {
        return None;
    }
    let (a, b, c) = (&rows[0].0, &rows[1].0, &rows[2].0);
    Some(
        &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
            + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0]),
    )
}

/// `Δv = v⁺ − ξ v⁻` for a vector of Z[ξ] elements.
pub fn delta_xi(v: &[XiPolynomial]) -> Vec<XiPolynomial> {
    let xi = XiPolynomial::xi();
    (0..v.len() - 1).map(|i| &v[i + 1] - &(&xi * &v[i])).collect()
}

pub fn to_xi_vector(x: &IntPoint) -> Vec<XiPolynomial> {
    x.0.iter().map(|c| XiPolynomial::constant(c.clone())).collect()
}

/// `(x⁻, x⁺, Δx)` with `Δx = x⁺ − ξ x⁻` as degree-one Z[ξ] elements.
pub fn face_maps(x: &IntPoint) -> Result<(IntPoint, IntPoint, Vec<XiPolynomial>), LatGeomError> {
    if x.len() < 2 {
        return Err(LatGeomError::LengthTooShort(x.len()));
    }
    let dx = (0..x.len() - 1)
        .map(|i| XiPolynomial::linear(x[i + 1].clone(), -x[i].clone()))
        .collect();
    Ok((x.minus(), x.plus(), dx))
}

/// Certified enclosure of `L(x)` of width at most `width`, with the smallest
/// index attaining the maximum.
#[allow(non_snake_case)]
pub fn L_value(
    x: &IntPoint,
    xi: &AlgebraicReal,
    width: &BigRational,
) -> Result<(RatInterval, usize), LatGeomError> {
    if x.len() < 2 {
        return Err(LatGeomError::LengthTooShort(x.len()));
    }
    if x.is_zero() {
        return Err(LatGeomError::ZeroPoint);
    }
    let form = l_form(x, xi);
    let mut bits = 64;
    loop {
        let iv = form.interval(xi, bits);
        if &iv.width() <= width {
            return Ok((iv, form.index));
        }
        bits *= 2;
    }
}

/// Both sides of the expansion
/// `det(y₀,…,yₙ) = Σ (−1)^i y_{i,0} det(Δy₀,…,Δyᵢ omitted,…,Δyₙ)`
/// as formal elements of Z[ξ].
pub fn laplace_delta_expand(
    rows: &[&IntPoint],
) -> Result<(XiPolynomial, XiPolynomial), LatGeomError> {
    let n1 = rows.len();
    if n1 < 2 || rows.iter().any(|r| r.len() != n1) {
        return Err(LatGeomError::NotSquare {
            rows: n1,
            cols: rows.first().map_or(0, |r| r.len()),
        });
    }
    let lhs = XiPolynomial::constant(det_int(rows)?);
    let deltas: Vec<Vec<XiPolynomial>> =
        rows.iter().map(|r| delta_xi(&to_xi_vector(r))).collect();
    let mut rhs = XiPolynomial::zero();
    for i in 0..n1 {
        let minor: Vec<Vec<XiPolynomial>> = deltas
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, d)| d.clone())
            .collect();
        let term = det_generic(&minor).scale(&rows[i][0]);
        rhs = if i % 2 == 0 { &rhs + &term } else { &rhs - &term };
    }
    Ok((lhs, rhs))
}

/// Increasing index subsets of `{0..n}` of size `p`, lexicographically.
pub fn lex_subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Grassmann coordinates of a wedge product of `grade` vectors in Z^dim.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiVector {
    pub grade: usize,
    pub dim: usize,
    pub coords: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiVectorJson {
    pub grade: usize,
    pub coords: Vec<String>,
    pub order: String,
}

impl MultiVector {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn norm(&self) -> BigInt {
        self.coords.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coords.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Whether the two multivectors are nonzero multiples of one another.
    pub fn proportional(&self, o: &MultiVector) -> bool {
        if self.coords.len() != o.coords.len() || self.is_zero() || o.is_zero() {
            return false;
        }
        let n = self.coords.len();
        (0..n).all(|i| (0..n).all(|j| &self.coords[i] * &o.coords[j] == &self.coords[j] * &o.coords[i]))
    }

    pub fn to_json(&self) -> MultiVectorJson {
        MultiVectorJson {
            grade: self.grade,
            coords: self.coords.iter().map(|c| c.to_string()).collect(),
            order: "lex-subsets".to_string(),
        }
    }
}

/// The wedge `y₁ ∧ … ∧ y_p`; coordinates are the `p×p` minors on increasing
/// column subsets, taken with rows in argument order.
pub fn wedge(points: &[&IntPoint]) -> Result<MultiVector, LatGeomError> {
    let p = points.len();
    let dim = points.first().map_or(0, |x| x.len());
    if p == 0 || p > dim || dim > 5 {
        return Err(LatGeomError::GradeOutOfRange { grade: p, dim });
    }
    if points.iter().any(|x| x.len() != dim) {
        return Err(LatGeomError::LengthMismatch);
    }
    let coords = lex_subsets(dim, p)
        .into_iter()
        .map(|cols| {
            let m: Vec<Vec<BigInt>> = points
                .iter()
                .map(|x| cols.iter().map(|&c| x[c].clone()).collect())
                .collect();
            det_generic(&m)
        })
        .collect();
    Ok(MultiVector {
        grade: p,
        dim,
        coords,
    })
}

/// Integer solutions of `A u = 0` as a Z-basis (`A` given by rows).
pub fn integer_kernel(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    // h = A·U, u = U; columns transformed together.
    let mut h: Vec<Vec<BigInt>> = rows.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| BigInt::from((i == j) as i32)).collect())
        .collect();
    let col_op = |mat: &mut Vec<Vec<BigInt>>, i: usize, j: usize, s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt| {
        // col_i <- s col_i + t col_j ; col_j <- p col_i + q col_j
        for row in mat.iter_mut() {
            let a = row[i].clone();
            let b = row[j].clone();
            row[i] = s * &a + t * &b;
            row[j] = p * &a + q * &b;
        }
    };
    let mut piv = 0;
    for r in 0..m {
        if piv >= ncols {
            break;
        }
        for j in piv + 1..ncols {
            let a = h[r][piv].clone();
            let b = h[r][j].clone();
            if b.is_zero() {
                continue;
            }
            let e = a.extended_gcd(&b);
            let g = e.gcd;
            let (s, t) = (e.x, e.y);
            let p = -(&b / &g);
            let q = &a / &g;
            col_op(&mut h, piv, j, &s, &t, &p, &q);
            col_op(&mut u, piv, j, &s, &t, &p, &q);
        }
        if !h[r][piv].is_zero() {
            piv += 1;
        }
    }
    (piv..ncols)
        .map(|c| (0..ncols).map(|r| u[r][c].clone()).collect())
        .collect()
}

/// Row Hermite normal form of the lattice spanned by `vecs` (nonzero rows only).
pub fn hnf_rows(vecs: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = vecs.to_vec();
    let mut out_rows = 0;
    for c in 0..ncols {
        for r in out_rows + 1..a.len() {
            let x = a[out_rows][c].clone();
            let y = a[r][c].clone();
            if y.is_zero() {
                continue;
            }
            let e = x.extended_gcd(&y);
            let g = e.gcd;
            let (s, t) = (e.x, e.y);
            let p = -(&y / &g);
            let q = &x / &g;
            for k in 0..ncols {
                let u = a[out_rows][k].clone();
                let v = a[r][k].clone();
                a[out_rows][k] = &s * &u + &t * &v;
                a[r][k] = &p * &u + &q * &v;
            }
        }
        if out_rows < a.len() && !a[out_rows][c].is_zero() {
            if a[out_rows][c].is_negative() {
                for k in 0..ncols {
                    a[out_rows][k] = -a[out_rows][k].clone();
                }
            }
            let pv = a[out_rows][c].clone();
            for r in 0..out_rows {
                let f = a[r][c].div_floor(&pv);
                if !f.is_zero() {
                    for k in 0..ncols {
                        let d = &f * &a[out_rows][k];
                        a[r][k] -= d;
                    }
                }
            }
            out_rows += 1;
        }
    }
    a.truncate(out_rows);
    a
}

fn rows_of(points: &[&IntPoint]) -> Vec<Vec<BigInt>> {
    points.iter().map(|p| p.0.clone()).collect()
}

/// Rank over Q.
pub fn rank(points: &[&IntPoint]) -> usize {
    if points.is_empty() {
        return 0;
    }
    hnf_rows(&rows_of(points), points[0].len()).len()
}

/// A basis of `V ∩ Z^N` for `V` the span of the inputs, in row Hermite form.
pub fn lattice_saturate(spanning: &[&IntPoint]) -> Result<Vec<IntPoint>, LatGeomError> {
    if spanning.is_empty() || spanning.iter().all(|p| p.is_zero()) {
        return Err(LatGeomError::ZeroSpan);
    }
    let n = spanning[0].len();
    if spanning.iter().any(|p| p.len() != n) {
        return Err(LatGeomError::LengthMismatch);
    }
    let perp = integer_kernel(&rows_of(spanning), n);
    let sat = if perp.is_empty() {
        (0..n).map(|i| IntPoint::unit(n, i).0).collect()
    } else {
        integer_kernel(&perp, n)
    };
    Ok(hnf_rows(&sat, n).into_iter().map(IntPoint).collect())
}

/// `H(V)`: max-norm of the wedge of a basis of `V ∩ Z^N`; `H({0}) = 1`.
pub fn subspace_height(spanning: &[&IntPoint]) -> BigInt {
    match lattice_saturate(spanning) {
        Err(_) => BigInt::one(),
        Ok(basis) => {
            let refs: Vec<&IntPoint> = basis.iter().collect();
            wedge(&refs).expect("basis fits").norm()
        }
    }
}

/// Basis of the sum `V + W` (saturated); empty for the zero space.
pub fn subspace_sum(v: &[&IntPoint], w: &[&IntPoint]) -> Vec<IntPoint> {
    let all: Vec<&IntPoint> = v.iter().chain(w.iter()).copied().collect();
    lattice_saturate(&all).unwrap_or_default()
}

/// Basis of `V ∩ W` (saturated); empty for the zero space.
pub fn subspace_intersection(v: &[&IntPoint], w: &[&IntPoint]) -> Vec<IntPoint> {
    let vb = match lattice_saturate(v) {
        Ok(b) => b,
        Err(_) => return Vec::new(),
    };
    let wb = match lattice_saturate(w) {
        Ok(b) => b,
        Err(_) => return Vec::new(),
    };
    let n = vb[0].len();
    let (p, q) = (vb.len(), wb.len());
    // Solve Σ s_i v_i − Σ t_j w_j = 0.
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|k| {
            vb.iter()
                .map(|b| b[k].clone())
                .chain(wb.iter().map(|b| -b[k].clone()))
                .collect()
        })
        .collect();
    let ker = integer_kernel(&rows, p + q);
    let vrefs: Vec<&IntPoint> = vb.iter().collect();
    let gens: Vec<IntPoint> = ker
        .iter()
        .map(|s| IntPoint::combination(&s[..p], &vrefs))
        .filter(|x| !x.is_zero())
        .collect();
    let refs: Vec<&IntPoint> = gens.iter().collect();
    lattice_saturate(&refs).unwrap_or_default()
}

pub fn primitive_check_point(x: &IntPoint) -> Result<bool, LatGeomError> {
    if x.is_zero() {
        return Err(LatGeomError::ZeroInput);
    }
    Ok(x.is_primitive())
}

pub fn primitive_check(m: &MultiVector) -> Result<bool, LatGeomError> {
    if m.is_zero() {
        return Err(LatGeomError::ZeroInput);
    }
    Ok(m.is_primitive())
}

/// `(r, s)` of max-norm one with `min± ‖y ± (r², rs, s²)‖ ≤ 2|det(y⁻, y⁺)|`,
/// for `y` of max-norm exactly one.
pub fn veronese_factor(y: &[BigRational; 3]) -> Result<(BigRational, BigRational), LatGeomError> {
    let norm = y.iter().map(|c| c.abs()).max().unwrap();
    if !norm.is_one() {
        return Err(LatGeomError::NotNormalized(norm.to_string()));
    }
    let [a, b, c] = y.clone();
    let delta = (&a * &c - &b * &b).abs();
    if delta >= BigRational::one() {
        return Ok((BigRational::one(), BigRational::zero()));
    }
    if a.abs() >= c.abs() {
        Ok((BigRational::one(), if a.is_negative() { -b } else { b }))
    } else {
        Ok((if c.is_negative() { -b } else { b }, BigRational::one()))
    }
}

/// `min± ‖y ± (r², rs, s²)‖` and `δ = |det(y⁻, y⁺)|`.
pub fn veronese_residual(
    y: &[BigRational; 3],
    rs: &(BigRational, BigRational),
) -> (BigRational, BigRational) {
    let (r, s) = rs;
    let v = [r * r, r * s, s * s];
    let dist = |sign: i32| {
        (0..3)
            .map(|i| {
                if sign > 0 {
                    (&y[i] + &v[i]).abs()
                } else {
                    (&y[i] - &v[i]).abs()
                }
            })
            .max()
            .unwrap()
    };
    let delta = (&y[0] * &y[2] - &y[1] * &y[1]).abs();
    (dist(1).min(dist(-1)), delta)
}

/// Enclosure of `max |v_k|` over forms evaluated at `ξ`.
fn max_abs(forms: &[XiPolynomial], xi: &AlgebraicReal, bits: u64) -> RatInterval {
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    for f in forms {
        let iv = f.interval_at(xi, bits);
        let low = if iv.contains_zero() { BigRational::zero() } else { iv.lo.abs().min(iv.hi.abs()) };
        lo = lo.max(low);
        hi = hi.max(iv.mag());
    }
    RatInterval::new(lo, hi)
}

/// Enclosure of `‖x ∧ (1, ξ, …, ξⁿ)‖`.
pub fn wedge_with_xi_norm(x: &IntPoint, xi: &AlgebraicReal, bits: u64) -> RatInterval {
    let power = |k: usize| {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        XiPolynomial::from_coeffs(c)
    };
    let mut coords = Vec::new();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            coords.push(&power(j).scale(&x[i]) - &power(i).scale(&x[j]));
        }
    }
    max_abs(&coords, xi, bits)
}

/// Enclosure of `‖Δx‖`.
pub fn delta_norm(x: &IntPoint, xi: &AlgebraicReal, bits: u64) -> Result<RatInterval, LatGeomError> {
    let (_, _, dx) = face_maps(x)?;
    Ok(max_abs(&dx, xi, bits))
}

/// Admissible constants relating `L(x)`, `‖x ∧ Ξ‖` and `‖Δx‖` for one `ξ`
/// in dimension `n + 1`, where `Ξ = (1, ξ, …, ξⁿ)` and `M ≥ max(1, |ξ|)`.
///
/// For every `x` with `x₀ ≠ 0`:
/// `L ≤ ‖x∧Ξ‖ ≤ wedge_upper·L`, `‖Δx‖ ≤ delta_upper·L` and
/// `L ≤ delta_lower·‖Δx‖`. The remainder bound `det_remainder` is the `c`
/// with `|det(y₀..yₙ) − (−1)ⁿ y_{n,0} det(Δy₀..Δy_{n−1})| ≤ c Σ_{i<n} ‖yᵢ‖ Π_{k≠i} L(y_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiConstants {
    pub n: usize,
    pub m: BigRational,
    pub wedge_upper: BigRational,
    pub delta_upper: BigRational,
    pub delta_lower: BigRational,
    pub det_remainder: BigRational,
}

impl XiConstants {
    pub fn derive(xi: &AlgebraicReal, n: usize) -> Self {
        let m = xi.isolating_interval().mag().max(BigRational::one());
        let pow = |k: usize| (0..k).fold(BigRational::one(), |acc, _| acc * &m);
        let one_plus_m = BigRational::one() + &m;
        let factorial: BigInt = (1..=n as u64).map(BigInt::from).product();
        XiConstants {
            n,
            wedge_upper: pow(n) * BigRational::from_integer(2.into()),
            delta_upper: one_plus_m.clone(),
            delta_lower: (0..n).map(pow).fold(BigRational::zero(), |a, b| a + b),
            det_remainder: BigRational::from_integer(factorial) * (0..n).fold(BigRational::one(), |a, _| a * &one_plus_m),
            m,
        }
    }

    /// The threshold `1/(2nc)` on the products `‖yᵢ‖ Π_{k≠i} L(y_k)`.
    pub fn delta(&self) -> BigRational {
        let two_n = BigRational::from_integer(BigInt::from(2 * self.n));
        (two_n * &self.det_remainder).recip()
    }
}

/// The determinant of `(y₀, …, yₙ)` compared with its leading term
/// `(−1)ⁿ y_{n,0} det(Δy₀, …, Δy_{n−1})`.
#[derive(Clone, Debug)]
pub struct DetComparison {
    pub det: BigInt,
    /// Enclosure of `|det − leading term|`.
    pub remainder: RatInterval,
    /// Upper bound for `c Σ_{i<n} ‖yᵢ‖ Π_{k≠i} L(y_k)`.
    pub remainder_bound: BigRational,
    /// Upper bound for the largest product `‖yᵢ‖ Π_{k≠i} L(y_k)`, `i < n`.
    pub max_product: BigRational,
    /// Upper bound for `L(yₙ)`.
    pub last_l: BigRational,
}

impl DetComparison {
    /// The point set satisfies the small-product hypotheses with `δ = 1/(2nc)`.
    pub fn hypotheses_hold(&self, k: &XiConstants) -> bool {
        self.det != BigInt::zero() && self.last_l < BigRational::one() && self.max_product < k.delta()
    }

    /// `|det − leading term| ≤ |det|/2`.
    pub fn leading_term_dominates(&self) -> bool {
        self.remainder.hi.clone() * BigRational::from_integer(2.into()) <= BigRational::from_integer(self.det.abs())
    }
}

pub fn compare_det_with_delta(
    rows: &[&IntPoint],
    xi: &AlgebraicReal,
    k: &XiConstants,
    bits: u64,
) -> Result<DetComparison, LatGeomError> {
    if rows.len() < 2 {
        return Err(LatGeomError::LengthTooShort(rows.len()));
    }
    let n = rows.len() - 1;
    let det = det_int(rows)?;
    let deltas: Vec<Vec<XiPolynomial>> = rows[..n].iter().map(|r| delta_xi(&to_xi_vector(r))).collect();
    let mut lead = det_generic(&deltas).scale(&rows[n][0]);
    if n % 2 == 1 {
        lead = -lead;
    }
    let remainder = max_abs(&[&XiPolynomial::constant(det.clone()) - &lead], xi, bits);
    let ls: Vec<BigRational> = rows
        .iter()
        .map(|r| l_form(r, xi).interval(xi, bits).hi)
        .collect();
    let products: Vec<BigRational> = (0..n)
        .map(|i| {
            (0..=n)
                .filter(|&j| j != i)
                .fold(BigRational::from_integer(rows[i].sup_norm()), |a, j| a * &ls[j])
        })
        .collect();
    let sum = products.iter().fold(BigRational::zero(), |a, b| a + b);
    Ok(DetComparison {
        det,
        remainder,
        remainder_bound: &k.det_remainder * sum,
        max_product: products.into_iter().max().unwrap_or_else(BigRational::zero),
        last_l: ls[n].clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoint {
        IntPoint::from_i64s(c)
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn face_map_examples() {
        let (m, pl, d) = face_maps(&p(&[1, 0, 0, 0])).unwrap();
        assert_eq!(m, p(&[1, 0, 0]));
        assert_eq!(pl, p(&[0, 0, 0]));
        assert_eq!(d[0], XiPolynomial::from_coeffs(vec![0.into(), (-1).into()]));
        assert!(d[1].is_formally_zero() && d[2].is_formally_zero());
        let (_, _, d) = face_maps(&p(&[0, 1, 0, 0])).unwrap();
        assert_eq!(d[0], XiPolynomial::constant(1.into()));
        assert_eq!(d[1], XiPolynomial::from_coeffs(vec![0.into(), (-1).into()]));
        let d2 = delta_xi(&face_maps(&p(&[1, 0, 0, 0])).unwrap().2);
        assert_eq!(d2[0], XiPolynomial::from_coeffs(vec![0.into(), 0.into(), 1.into()]));
        assert!(face_maps(&p(&[3])).is_err());
    }

    #[test]
    fn determinant_examples() {
        let e = [p(&[1, 0, 0]), p(&[0, 1, 0]), p(&[0, 0, 1])];
        assert_eq!(det_int(&[&e[0], &e[1], &e[2]]).unwrap(), BigInt::one());
        assert_eq!(det_int(&[&e[0], &e[0], &e[2]]).unwrap(), BigInt::zero());
        let m = [p(&[1, 1, 0]), p(&[1, 0, 0]), p(&[0, 0, 1])];
        assert_eq!(det_int(&[&m[0], &m[1], &m[2]]).unwrap(), BigInt::from(-1));
        assert!(det_int(&[&m[0], &m[1]]).is_err());
        let q = [p(&[2, 0, 0, 1]), p(&[0, 3, 0, 0]), p(&[0, 0, 1, 0]), p(&[1, 0, 0, 1])];
        assert_eq!(det_int(&[&q[0], &q[1], &q[2], &q[3]]).unwrap(), BigInt::from(3));
    }

    #[test]
    fn laplace_expansion_small() {
        let a = p(&[3, 5]);
        let b = p(&[-2, 7]);
        let (l, r) = laplace_delta_expand(&[&a, &b]).unwrap();
        assert_eq!(l, r);
        assert_eq!(l, XiPolynomial::constant(31.into()));
        let z = p(&[0, 0, 0]);
        let (l, r) = laplace_delta_expand(&[&p(&[1, 2, 3]), &z, &p(&[4, 5, 7])]).unwrap();
        assert!(l.is_formally_zero() && r.is_formally_zero());
    }

    #[test]
    fn wedge_examples() {
        let e1 = IntPoint::unit(4, 0);
        let e2 = IntPoint::unit(4, 1);
        let w = wedge(&[&e1, &e2]).unwrap();
        assert_eq!(w.coords.len(), 6);
        assert_eq!(w.coords[0], BigInt::one());
        assert!(w.coords[1..].iter().all(Zero::is_zero));
        assert!(wedge(&[&e1, &e1]).unwrap().is_zero());
        assert_eq!(wedge(&[&p(&[1, 2])]).unwrap().coords, p(&[1, 2]).0);
        let swapped = wedge(&[&e2, &e1]).unwrap();
        assert_eq!(swapped.coords[0], BigInt::from(-1));
        assert!(wedge(&[&e1, &e2, &e1, &e2, &e1]).is_err());
        assert_eq!(w.to_json().order, "lex-subsets");
    }

    #[test]
    fn saturation_examples() {
        let a = p(&[2, 0, 0]);
        let b = p(&[0, 2, 0]);
        let basis = lattice_saturate(&[&a, &b]).unwrap();
        assert_eq!(basis, vec![p(&[1, 0, 0]), p(&[0, 1, 0])]);
        assert_eq!(subspace_height(&[&a, &b]), BigInt::one());
        assert_eq!(lattice_saturate(&[&p(&[1, 2])]).unwrap(), vec![p(&[1, 2])]);
        assert_eq!(lattice_saturate(&[&p(&[4, 6])]).unwrap(), vec![p(&[2, 3])]);
        assert!(lattice_saturate(&[&p(&[0, 0])]).is_err());
    }

    #[test]
    fn heights() {
        assert_eq!(subspace_height(&[]), BigInt::one());
        assert_eq!(
            subspace_height(&[&IntPoint::unit(4, 0), &IntPoint::unit(4, 1)]),
            BigInt::one()
        );
        assert_eq!(subspace_height(&[&p(&[1, 2])]), BigInt::from(2));
        // Whole space has height 1.
        let all: Vec<IntPoint> = (0..3).map(|i| IntPoint::unit(3, i).scale(&BigInt::from(5))).collect();
        let refs: Vec<&IntPoint> = all.iter().collect();
        assert_eq!(subspace_height(&refs), BigInt::one());
    }

    #[test]
    fn intersections() {
        let e: Vec<IntPoint> = (0..4).map(|i| IntPoint::unit(4, i)).collect();
        assert!(subspace_intersection(&[&e[0], &e[1]], &[&e[2], &e[3]]).is_empty());
        let i = subspace_intersection(&[&e[0], &e[1]], &[&e[1], &e[2]]);
        assert_eq!(i, vec![e[1].clone()]);
        let a = p(&[1, 1, 0, 0]);
        let b = p(&[0, 1, 1, 0]);
        let i = subspace_intersection(&[&a, &e[2]], &[&b, &e[0]]);
        assert_eq!(i.len(), 1);
        assert_eq!(rank(&[&i[0], &a, &e[2]]), 2);
    }

    #[test]
    fn primitivity() {
        assert!(!primitive_check_point(&p(&[2, 4, 6])).unwrap());
        assert!(primitive_check_point(&p(&[12, 5, 2, 1])).unwrap());
        let w = wedge(&[&IntPoint::unit(4, 0), &IntPoint::unit(4, 1)]).unwrap();
        assert!(primitive_check(&w).unwrap());
        assert!(primitive_check_point(&p(&[0, 0])).is_err());
    }

    #[test]
    fn veronese_examples() {
        let y = [r(1, 1), r(1, 2), r(1, 4)];
        let rs = veronese_factor(&y).unwrap();
        assert_eq!(rs, (r(1, 1), r(1, 2)));
        assert_eq!(veronese_residual(&y, &rs), (r(0, 1), r(0, 1)));
        let y = [r(1, 1), r(1, 2), r(3, 10)];
        let rs = veronese_factor(&y).unwrap();
        let (res, delta) = veronese_residual(&y, &rs);
        assert_eq!(delta, r(1, 20));
        assert_eq!(res, r(1, 20));
        let y = [r(0, 1), r(1, 1), r(0, 1)];
        let rs = veronese_factor(&y).unwrap();
        let (res, delta) = veronese_residual(&y, &rs);
        assert!(res <= delta * r(2, 1));
        assert!(veronese_factor(&[r(1, 2), r(0, 1), r(0, 1)]).is_err());
    }

    #[test]
    fn l_value_examples() {
        let xi = AlgebraicReal::from_i64s(&[-1, 2, 1], (0, 1), (1, 1)).unwrap();
        let w = r(1, 1_000_000);
        let (iv, k) = L_value(&p(&[12, 5]), &xi, &w).unwrap();
        assert_eq!(k, 1);
        assert!(iv.contains(&r(294, 10000)) || (iv.lo > r(294, 10000) && iv.hi < r(295, 10000)));
        let xi3 = AlgebraicReal::from_i64s(&[-1, 4, 6, 4, 1], (0, 1), (1, 1)).unwrap();
        let (iv, k) = L_value(&p(&[1, 0, 0, 0]), &xi3, &w).unwrap();
        assert_eq!(k, 1);
        assert!(iv.lo > r(1892, 10000) && iv.hi < r(1893, 10000));
        assert_eq!(L_value(&p(&[0, 0]), &xi, &w), Err(LatGeomError::ZeroPoint));
    }
}
