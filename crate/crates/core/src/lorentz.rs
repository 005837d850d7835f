//! Lorentz-form linear algebra and the correspondences between the circle,
//! the projective line, de Sitter vectors and binary quadratic forms.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat, rat_int, GaussianRational, Rational};
use crate::error::{Error, Result};

pub trait Scalar:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec3<T>(pub [T; 3]);

pub type Vec3Z = Vec3<BigInt>;
pub type Vec3Q = Vec3<Rational>;

impl<T: Scalar> Vec3<T> {
    pub fn new(x1: T, x2: T, x3: T) -> Self {
        Vec3([x1, x2, x3])
    }

    pub fn zero() -> Self {
        Vec3([T::zero(), T::zero(), T::zero()])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn inner(&self, o: &Self) -> T {
        lorentz_inner(self, o)
    }

    pub fn norm(&self) -> T {
        lorentz_inner(self, self)
    }

    pub fn scale(&self, k: &T) -> Self {
        Vec3(self.0.clone().map(|x| x * k.clone()))
    }

    /// `L x` with `L = diag(1, 1, -1)`.
    pub fn lower(&self) -> Self {
        let [a, b, c] = self.0.clone();
        Vec3([a, b, -c])
    }

    /// Euclidean cross product.
    pub fn cross(&self, o: &Self) -> Self {
        let [a1, a2, a3] = self.0.clone();
        let [b1, b2, b3] = o.0.clone();
        Vec3([
            a2.clone() * b3.clone() - a3.clone() * b2.clone(),
            a3 * b1.clone() - a1.clone() * b3,
            a1 * b2 - a2 * b1,
        ])
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Vec3<U> {
        Vec3([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Vec3([a1 + b1, a2 + b2, a3 + b3])
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        Vec3([a1 - b1, a2 - b2, a3 - b3])
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3(self.0.map(|x| -x))
    }
}

impl<T: fmt::Display> fmt::Display for Vec3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl Vec3Z {
    pub fn from_i64(x1: i64, x2: i64, x3: i64) -> Self {
        Vec3([BigInt::from(x1), BigInt::from(x2), BigInt::from(x3)])
    }

    pub fn to_rational(&self) -> Vec3Q {
        self.map(|x| rat_int(x.clone()))
    }

    pub fn content(&self) -> BigInt {
        self.0[0].gcd(&self.0[1]).gcd(&self.0[2])
    }

    /// Divides by the gcd of the entries (sign unchanged).
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        self.map(|x| x / &g)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        self.0.clone().map(|x| crate::arith::rational_to_f64(&rat_int(x)))
    }
}

impl Vec3Q {
    /// Integer vector if all entries are integral.
    pub fn to_integer(&self) -> Option<Vec3Z> {
        if self.0.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    /// Smallest positive multiple that has integer entries, divided by the content.
    pub fn clear_denominators(&self) -> Vec3Z {
        let l = self.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let v = self.map(|x| (x * rat_int(l.clone())).to_integer());
        v.primitive()
    }
}

/// The Lorentz form `x1 y1 + x2 y2 - x3 y3`.
pub fn lorentz_inner<T: Scalar>(x: &Vec3<T>, y: &Vec3<T>) -> T {
    x.0[0].clone() * y.0[0].clone() + x.0[1].clone() * y.0[1].clone() - x.0[2].clone() * y.0[2].clone()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

pub type Mat3Z = Mat3<BigInt>;
pub type Mat3Q = Mat3<Rational>;

impl<T: Scalar> Mat3<T> {
    pub fn identity() -> Self {
        let z = T::zero;
        let o = T::one;
        Mat3([[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]])
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        let z = T::zero;
        Mat3([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    /// `diag(1, 1, -1)`.
    pub fn lorentz() -> Self {
        Self::diag(T::one(), T::one(), -T::one())
    }

    pub fn entry(&self, i: usize, j: usize) -> &T {
        &self.0[i][j]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone())))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone() + a[i][2].clone() * b[2][j].clone()
            })
        }))
    }

    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        let a = &self.0;
        Vec3(std::array::from_fn(|i| {
            a[i][0].clone() * v.0[0].clone() + a[i][1].clone() * v.0[1].clone() + a[i][2].clone() * v.0[2].clone()
        }))
    }

    pub fn scale(&self, k: &T) -> Self {
        Mat3(self.0.clone().map(|row| row.map(|x| x * k.clone())))
    }

    pub fn neg(&self) -> Self {
        Mat3(self.0.clone().map(|row| row.map(|x| -x)))
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        let minor = |i1: usize, i2: usize, j1: usize, j2: usize| {
            m[i1][j1].clone() * m[i2][j2].clone() - m[i1][j2].clone() * m[i2][j1].clone()
        };
        m[0][0].clone() * minor(1, 2, 1, 2) - m[0][1].clone() * minor(1, 2, 0, 2) + m[0][2].clone() * minor(1, 2, 0, 1)
    }

    /// Inverse of a Lorentz-orthogonal matrix: `L A^T L`.
    pub fn orthogonal_inverse(&self) -> Self {
        let l = Self::lorentz();
        l.mul(&self.transpose()).mul(&l)
    }

    /// `A^T L A = L`.
    pub fn is_lorentz_orthogonal(&self) -> bool {
        let l = Self::lorentz();
        self.transpose().mul(&l).mul(self) == l
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat3<U> {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }
}

impl Mat3Z {
    pub fn from_i64(rows: [[i64; 3]; 3]) -> Self {
        Mat3(rows.map(|r| r.map(BigInt::from)))
    }

    pub fn to_rational(&self) -> Mat3Q {
        self.map(|x| rat_int(x.clone()))
    }

    /// Member of the orthochronous integer Lorentz group.
    pub fn is_orthochronous_orthogonal(&self) -> bool {
        self.is_lorentz_orthogonal() && self.0[2][2].is_positive()
    }

    pub fn to_f64(&self) -> [[f64; 3]; 3] {
        self.0.clone().map(|r| r.map(|x| crate::arith::rational_to_f64(&rat_int(x))))
    }
}

impl Mat3Q {
    pub fn to_integer(&self) -> Option<Mat3Z> {
        if self.0.iter().flatten().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }
}

impl<T: fmt::Display> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = |i: usize| format!("[{},{},{}]", self.0[i][0], self.0[i][1], self.0[i][2]);
        write!(f, "[{},{},{}]", r(0), r(1), r(2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T>(pub [[T; 2]; 2]);

pub type Mat2Q = Mat2<Rational>;
pub type Mat2Zi = Mat2<GaussianRational>;

impl<T: Scalar> Mat2<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Mat2([[T::one(), T::zero()], [T::zero(), T::one()]])
    }

    pub fn det(&self) -> T {
        let m = &self.0;
        m[0][0].clone() * m[1][1].clone() - m[0][1].clone() * m[1][0].clone()
    }

    pub fn trace(&self) -> T {
        self.0[0][0].clone() + self.0[1][1].clone()
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].clone(), m[1][0].clone()], [m[0][1].clone(), m[1][1].clone()]])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let a = &self.0;
        let b = &o.0;
        Mat2(std::array::from_fn(|i| {
            std::array::from_fn(|j| a[i][0].clone() * b[0][j].clone() + a[i][1].clone() * b[1][j].clone())
        }))
    }

    /// `[[d, -b], [-c, a]]`, equal to `det * inverse`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        Mat2([[m[1][1].clone(), -m[0][1].clone()], [-m[1][0].clone(), m[0][0].clone()]])
    }

    pub fn scale(&self, k: &T) -> Self {
        Mat2(self.0.clone().map(|row| row.map(|x| x * k.clone())))
    }

    pub fn neg(&self) -> Self {
        Mat2(self.0.clone().map(|row| row.map(|x| -x)))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat2<U> {
        Mat2(std::array::from_fn(|i| std::array::from_fn(|j| f(&self.0[i][j]))))
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.0[0][0], self.0[0][1], self.0[1][0], self.0[1][1])
    }
}

impl Mat2Q {
    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2([[rat(a, 1), rat(b, 1)], [rat(c, 1), rat(d, 1)]])
    }

    pub fn inverse(&self) -> Result<Self> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.adjugate().scale(&(Rational::one() / d)))
    }

    /// Representative with first nonzero entry (row-major) positive.
    pub fn normalized(&self) -> Self {
        match self.0.iter().flatten().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn projectively_eq(&self, o: &Self) -> bool {
        self == o || *self == o.neg()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_integer())
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        self.0.clone().map(|r| r.map(|x| crate::arith::rational_to_f64(&x)))
    }

    /// Moebius action on the projective line.
    pub fn act(&self, w: &P1) -> P1 {
        let [[a, b], [c, d]] = &self.0;
        match w {
            P1::Infinity => P1::from_ratio(a.clone(), c.clone()),
            P1::Finite(x) => P1::from_ratio(a * x + b, c * x + d),
        }
    }
}

impl Mat2Zi {
    /// Representative whose first nonzero entry (row-major) has positive real
    /// part, or positive imaginary part if purely imaginary.
    pub fn normalized(&self) -> Self {
        match self.0.iter().flatten().find(|x| !x.is_zero()) {
            Some(x) if x.leading_sign() < 0 => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn projectively_eq(&self, o: &Self) -> bool {
        self == o || *self == o.neg()
    }

    pub fn is_gaussian_integral(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_gaussian_integer())
    }

    /// Has the `[[a, b], [conj b, conj a]]` shape.
    pub fn has_su11_shape(&self) -> bool {
        let m = &self.0;
        m[1][0] == m[0][1].conj() && m[1][1] == m[0][0].conj()
    }
}

/// A point of the rational projective line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum P1 {
    Finite(Rational),
    Infinity,
}

impl P1 {
    pub fn from_ratio(num: Rational, den: Rational) -> P1 {
        if den.is_zero() {
            P1::Infinity
        } else {
            P1::Finite(num / den)
        }
    }

    pub fn int(n: i64) -> P1 {
        P1::Finite(rat(n, 1))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            P1::Finite(x) => Some(x),
            P1::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, P1::Infinity)
    }
}

impl fmt::Display for P1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            P1::Finite(x) => write!(f, "{x}"),
            P1::Infinity => write!(f, "inf"),
        }
    }
}

/// Symmetric matrix `[[-w2+w3, -w1], [-w1, w2+w3]]` attached to `w`.
fn vec_to_sym(w: &Vec3Q) -> Mat2Q {
    let [w1, w2, w3] = &w.0;
    Mat2([[w3 - w2, -w1.clone()], [-w1.clone(), w2 + w3]])
}

fn sym_to_vec(m: &Mat2Q) -> Vec3Q {
    let two = rat(2, 1);
    let p = &m.0[0][0];
    let r = &m.0[0][1];
    let s = &m.0[1][1];
    Vec3([-r.clone(), (s - p) / &two, (p + s) / two])
}

/// Image of `A` in the orthochronous Lorentz group, obtained from the action
/// `W -> (A^-1)^T W A^-1` on symmetric matrices.
pub fn bold_rep(a: &Mat2Q) -> Result<Mat3Q> {
    let det = a.det();
    if det.abs() != Rational::one() {
        return Err(Error::NotUnimodular(det.to_string()));
    }
    let inv = a.inverse()?;
    let inv_t = inv.transpose();
    let basis = [
        Vec3([rat(1, 1), rat(0, 1), rat(0, 1)]),
        Vec3([rat(0, 1), rat(1, 1), rat(0, 1)]),
        Vec3([rat(0, 1), rat(0, 1), rat(1, 1)]),
    ];
    let cols: Vec<Vec3Q> = basis.iter().map(|e| sym_to_vec(&inv_t.mul(&vec_to_sym(e)).mul(&inv))).collect();
    Ok(Mat3(std::array::from_fn(|i| std::array::from_fn(|j| cols[j].0[i].clone()))))
}

/// `bold_rep` for integer matrices, with integer output.
pub fn bold_rep_z(a: &Mat2Q) -> Result<Mat3Z> {
    bold_rep(a)?.to_integer().ok_or_else(|| Error::NonIntegral(a.to_string()))
}

/// `det(A) * bold(A)`, always of determinant one.
pub fn lambda_rep(a: &Mat2Q) -> Result<Mat3Q> {
    Ok(bold_rep(a)?.scale(&a.det()))
}

/// Conjugation by the Cayley transform, from the disc picture to the
/// upper half-plane picture.
pub fn cayley_conj(s: &Mat2Zi) -> Result<Mat2Q> {
    if !s.has_su11_shape() {
        return Err(Error::MalformedShape);
    }
    let GaussianRational { re: a, im: b } = &s.0[0][0];
    let GaussianRational { re: c, im: d } = &s.0[0][1];
    Ok(Mat2([[a + d, b + c], [c - b, a - d]]))
}

/// Inverse of [`cayley_conj`].
pub fn cayley_conj_inv(m: &Mat2Q) -> Mat2Zi {
    let two = rat(2, 1);
    let [[p, q], [r, s]] = &m.0;
    let a = (p + s) / &two;
    let d = (p - s) / &two;
    let b = (q - r) / &two;
    let c = (q + r) / &two;
    let alpha = GaussianRational::new(a, b);
    let beta = GaussianRational::new(c, d);
    Mat2([[alpha.clone(), beta.clone()], [beta.conj(), alpha.conj()]])
}

/// Lorentz reflection `I - (2/<w,w>) w w^T L` over the rationals.
pub fn reflection_matrix_q(w: &Vec3Q) -> Result<Mat3Q> {
    let n = w.norm();
    if !n.is_positive() {
        return Err(Error::NonPositiveNorm(w.to_string(), n.to_string()));
    }
    let k = rat(2, 1) / n;
    let lw = w.lower();
    let id = Mat3Q::identity();
    Ok(Mat3(std::array::from_fn(|i| {
        std::array::from_fn(|j| id.0[i][j].clone() - &k * &w.0[i] * &lw.0[j])
    })))
}

/// Lorentz reflection in the plane orthogonal to `w`; integral for every
/// de Sitter `w` (and for a few other vectors such as `(-1,1,0)`).
pub fn reflection_matrix(w: &Vec3Z) -> Result<Mat3Z> {
    reflection_matrix_q(&w.to_rational())?.to_integer().ok_or_else(|| Error::NonIntegral(w.to_string()))
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = num_integer::Roots::sqrt(q.numer());
    let d = num_integer::Roots::sqrt(q.denom());
    if &n * &n == *q.numer() && &d * &d == *q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Endpoints `(omega, alpha)` of the geodesic attached to a de Sitter vector.
/// A vector of positive norm is first rescaled to norm one, which needs the
/// norm to be a rational square.
pub fn desitter_to_pair(w: &Vec3Q) -> Result<(P1, P1)> {
    let n = w.norm();
    if !n.is_positive() {
        return Err(Error::NonPositiveNorm(w.to_string(), n.to_string()));
    }
    let s = rational_sqrt(&n).ok_or_else(|| Error::NotRationalScalable(w.to_string()))?;
    let w = w.scale(&(Rational::one() / s));
    let [w1, w2, w3] = &w.0;
    if w3 == w2 {
        return Ok(if w1.is_positive() { (P1::Infinity, P1::Finite(w2.clone())) } else { (P1::Finite(-w2.clone()), P1::Infinity) });
    }
    let den = w3 - w2;
    let one = Rational::one();
    Ok((P1::Finite((w1 + &one) / &den), P1::Finite((w1 - one) / den)))
}

/// Norm-one de Sitter vector with endpoints `(omega, alpha)`.
pub fn pair_to_desitter(omega: &P1, alpha: &P1) -> Result<Vec3Q> {
    let one = Rational::one();
    match (omega, alpha) {
        (P1::Infinity, P1::Infinity) => Err(Error::DegeneratePair("inf".into())),
        (P1::Infinity, P1::Finite(a)) => Ok(Vec3([one, a.clone(), a.clone()])),
        (P1::Finite(o), P1::Infinity) => Ok(Vec3([-one, -o.clone(), -o.clone()])),
        (P1::Finite(o), P1::Finite(a)) => {
            if o == a {
                return Err(Error::DegeneratePair(o.to_string()));
            }
            let den = o - a;
            let oa = o * a;
            Ok(Vec3([(o + a) / &den, (&oa - &one) / &den, (oa + one) / den]))
        }
    }
}

/// Binary quadratic form `q1 x^2 - q2 x y + q3 y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadForm {
    pub q1: BigInt,
    pub q2: BigInt,
    pub q3: BigInt,
}

impl QuadForm {
    pub fn new(q1: BigInt, q2: BigInt, q3: BigInt) -> Self {
        QuadForm { q1, q2, q3 }
    }

    pub fn from_i64(q1: i64, q2: i64, q3: i64) -> Self {
        QuadForm::new(q1.into(), q2.into(), q3.into())
    }

    pub fn discriminant(&self) -> BigInt {
        &self.q2 * &self.q2 - BigInt::from(4) * &self.q1 * &self.q3
    }

    pub fn to_vec(&self) -> Vec3Z {
        Vec3([self.q2.clone(), &self.q3 - &self.q1, &self.q1 + &self.q3])
    }

    pub fn from_vec(w: &Vec3Z) -> Result<QuadForm> {
        let [w1, w2, w3] = &w.0;
        let two = BigInt::from(2);
        let a = w3 - w2;
        let c = w3 + w2;
        if !a.is_multiple_of(&two) || !c.is_multiple_of(&two) {
            return Err(Error::NonIntegral(w.to_string()));
        }
        Ok(QuadForm { q1: a / &two, q2: w1.clone(), q3: c / two })
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.q1, self.q2, self.q3)
    }
}

/// Stereographic projection of an isotropic vector to the projective line.
pub fn stereo(t: &Vec3Z) -> P1 {
    let [t1, t2, t3] = &t.0;
    P1::from_ratio(rat_int(t1.clone()), rat_int(t3 - t2))
}

/// Inverse stereographic projection, as a primitive isotropic vector with
/// positive third coordinate.
pub fn stereo_inv(w: &P1) -> Vec3Z {
    match w {
        P1::Infinity => Vec3Z::from_i64(0, 1, 1),
        P1::Finite(x) => {
            let p = x.numer();
            let q = x.denom();
            Vec3([BigInt::from(2) * p * q, p * p - q * q, p * p + q * q]).primitive()
        }
    }
}

/// Frequently used matrices and their images.
pub mod named {
    use super::*;

    pub fn j() -> Mat2Q {
        Mat2Q::from_i64(-1, 0, 0, 1)
    }
    pub fn f() -> Mat2Q {
        Mat2Q::from_i64(0, 1, 1, 0)
    }
    pub fn p() -> Mat2Q {
        Mat2Q::from_i64(-1, 2, 0, 1)
    }
    pub fn bold_j() -> Mat3Z {
        Mat3Z::from_i64([[-1, 0, 0], [0, 1, 0], [0, 0, 1]])
    }
    pub fn bold_f() -> Mat3Z {
        Mat3Z::from_i64([[1, 0, 0], [0, -1, 0], [0, 0, 1]])
    }
    pub fn bold_p() -> Mat3Z {
        Mat3Z::from_i64([[-1, -2, 2], [-2, -1, 2], [-2, -2, 3]])
    }
    pub fn bold_g() -> Mat3Z {
        Mat3Z::from_i64([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    }
    pub fn script_j() -> Mat2Zi {
        let z = GaussianRational::from_ints;
        Mat2([[z(0, 0), z(0, -1)], [z(0, 1), z(0, 0)]])
    }
    pub fn script_f() -> Mat2Zi {
        let z = GaussianRational::from_ints;
        Mat2([[z(0, 0), z(1, 0)], [z(1, 0), z(0, 0)]])
    }
    pub fn script_p() -> Mat2Zi {
        let z = GaussianRational::from_ints;
        Mat2([[z(0, 1), z(1, -1)], [z(1, 1), z(0, -1)]])
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn inner_examples() {
        let v = Vec3Z::from_i64;
        assert_eq!(lorentz_inner(&v(1, 0, 1), &v(0, 1, 1)), BigInt::from(-1));
        assert_eq!(v(3, 4, 5).norm(), BigInt::from(0));
        assert_eq!(v(2, 1, 2).norm(), BigInt::from(1));
    }

    #[test]
    fn bold_examples() {
        assert_eq!(bold_rep_z(&p()).unwrap(), bold_p());
        assert_eq!(bold_rep_z(&j()).unwrap(), bold_j());
        assert_eq!(bold_rep_z(&f()).unwrap(), bold_f());
        let u = bold_rep(&Mat2Q::from_i64(1, 1, 0, 1)).unwrap();
        let expected = Mat3([
            [q(1, 1), q(-1, 1), q(1, 1)],
            [q(1, 1), q(1, 2), q(1, 2)],
            [q(1, 1), q(-1, 2), q(3, 2)],
        ]);
        assert_eq!(u, expected);
        assert!(matches!(bold_rep(&Mat2Q::from_i64(2, 0, 0, 1)), Err(Error::NotUnimodular(_))));
    }

    #[test]
    fn bold_one_parameter_families() {
        // Diagonal, unipotent and rotation-like generators with rational parameters.
        for t in [q(1, 1), q(-3, 2), q(5, 7)] {
            let u = Mat2([[q(1, 1), t.clone()], [q(0, 1), q(1, 1)]]);
            let b = bold_rep(&u).unwrap();
            assert!(b.is_lorentz_orthogonal());
            assert!(b.0[2][2].is_positive());
            assert_eq!(b.det(), q(1, 1));
        }
        let d = Mat2([[q(2, 1), q(0, 1)], [q(0, 1), q(1, 2)]]);
        let b = bold_rep(&d).unwrap();
        assert!(b.is_lorentz_orthogonal());
        assert_eq!(b.0[0][0], q(1, 1));
    }

    #[test]
    fn cayley_examples() {
        assert_eq!(cayley_conj(&script_j()).unwrap(), j());
        assert_eq!(cayley_conj(&script_p()).unwrap(), p());
        assert_eq!(cayley_conj(&script_f()).unwrap(), f());
        assert_eq!(cayley_conj(&Mat2Zi::identity()).unwrap(), Mat2Q::identity());
        assert_eq!(cayley_conj_inv(&p()), script_p());
        let z = GaussianRational::from_ints;
        let bad = Mat2([[z(1, 0), z(0, 1)], [z(0, 1), z(1, 0)]]);
        assert_eq!(cayley_conj(&bad), Err(Error::MalformedShape));
    }

    #[test]
    fn reflection_examples() {
        let v = Vec3Z::from_i64;
        assert_eq!(reflection_matrix(&v(1, 1, 1)).unwrap(), bold_p());
        assert_eq!(reflection_matrix(&v(0, 1, 0)).unwrap(), bold_f());
        assert_eq!(reflection_matrix(&v(1, 0, 0)).unwrap(), bold_j());
        assert_eq!(reflection_matrix(&v(-1, 1, 0)).unwrap(), bold_g());
        assert_eq!(
            reflection_matrix(&v(2, 1, 2)).unwrap(),
            Mat3Z::from_i64([[-7, -4, 8], [-4, -1, 4], [-8, -4, 9]])
        );
        assert!(reflection_matrix(&v(3, 4, 5)).is_err());
        assert!(reflection_matrix(&v(0, 0, 1)).is_err());
        assert!(reflection_matrix(&v(1, 1, 0)).is_ok());
        assert!(matches!(reflection_matrix(&v(1, 2, 0)), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn pair_examples() {
        let w = Vec3Z::from_i64(1, 0, 0).to_rational();
        assert_eq!(desitter_to_pair(&w).unwrap(), (P1::Infinity, P1::int(0)));
        let w = Vec3Z::from_i64(1, 2, 2).to_rational();
        assert_eq!(desitter_to_pair(&w).unwrap(), (P1::Infinity, P1::int(2)));
        assert_eq!(pair_to_desitter(&P1::Infinity, &P1::int(2)).unwrap(), w);
        let w = pair_to_desitter(&P1::int(1), &P1::int(0)).unwrap();
        assert_eq!(w, Vec3Z::from_i64(1, -1, 1).to_rational());
        assert_eq!(desitter_to_pair(&w).unwrap(), (P1::int(1), P1::int(0)));
        // Scaled vectors.
        let w2 = Vec3Z::from_i64(2, -2, 2).to_rational();
        assert_eq!(desitter_to_pair(&w2).unwrap(), (P1::int(1), P1::int(0)));
        assert!(matches!(desitter_to_pair(&Vec3Z::from_i64(1, 1, 0).to_rational()), Err(Error::NotRationalScalable(_))));
        assert!(pair_to_desitter(&P1::int(3), &P1::int(3)).is_err());
    }

    #[test]
    fn pair_endpoints_are_isotropic_and_orthogonal() {
        let w = pair_to_desitter(&P1::Finite(q(3, 2)), &P1::Finite(q(-1, 5))).unwrap();
        assert_eq!(w.norm(), q(1, 1));
        for e in [P1::Finite(q(3, 2)), P1::Finite(q(-1, 5))] {
            let t = stereo_inv(&e).to_rational();
            assert_eq!(lorentz_inner(&w, &t), q(0, 1));
        }
    }

    #[test]
    fn form_examples() {
        let f = QuadForm::from_i64(4091, -1302, 101);
        assert_eq!(f.to_vec(), Vec3Z::from_i64(-1302, -3990, 4192));
        assert_eq!(f.to_vec().primitive(), Vec3Z::from_i64(-651, -1995, 2096));
        assert_eq!(QuadForm::from_vec(&f.to_vec()).unwrap(), f);
        assert_eq!(QuadForm::from_i64(0, 1, 0).to_vec(), Vec3Z::from_i64(1, 0, 0));
        assert_eq!(QuadForm::from_i64(0, 0, 0).to_vec(), Vec3Z::zero());
        assert!(QuadForm::from_vec(&Vec3Z::from_i64(0, 1, 0)).is_err());
    }

    #[test]
    fn stereo_examples() {
        assert_eq!(stereo(&Vec3Z::from_i64(4, 3, 5)), P1::int(2));
        assert_eq!(stereo_inv(&P1::int(2)), Vec3Z::from_i64(4, 3, 5));
        assert_eq!(stereo(&Vec3Z::from_i64(0, 1, 1)), P1::Infinity);
        assert_eq!(stereo_inv(&P1::Infinity), Vec3Z::from_i64(0, 1, 1));
        assert_eq!(stereo_inv(&P1::int(0)), Vec3Z::from_i64(0, -1, 1));
    }

    #[test]
    fn moebius_action_matches_stereo() {
        // bold(A) acting on t corresponds to A acting on stereo(t), projectively.
        let a = p().mul(&f()).mul(&j());
        let b = bold_rep_z(&a).unwrap();
        for x in [P1::int(2), P1::Finite(q(-3, 7)), P1::Infinity] {
            let t = stereo_inv(&x);
            let img = b.apply(&t);
            assert_eq!(stereo(&img), a.act(&x));
        }
    }
}
