//! Number tower: rationals, Gaussian rationals and real quadratic surds.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Largest prime candidate tried when extracting square factors from a radicand.
pub const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `num/den`, a bare integer or a finite decimal such as `-0.125`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: '{s}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if fp.is_empty() && ip.is_empty() {
            return Err(bad());
        }
        if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{ip}{fp}");
        let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let q = Rational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Very large numerator or denominator: scale both down first.
        let nb = q.numer().bits() as i64;
        let db = q.denom().bits() as i64;
        let shift = (nb.max(db) - 1000).max(0) as usize;
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact rational with the same value as a finite f64.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite float {x}")))
}

/// Floor of `q * 10^digits`.
fn scaled_floor(q: &Rational, digits: usize) -> BigInt {
    let scaled = q * rat_int(num_traits::pow(BigInt::from(10), digits));
    scaled.floor().to_integer()
}

/// Formats a non-negative value given as `floor(value * 10^(digits+1))`,
/// rounding half away from zero.
fn render_scaled(floor_plus_one: BigInt, digits: usize, neg: bool) -> String {
    let rounded = (floor_plus_one + BigInt::from(5)).div_floor(&BigInt::from(10));
    let neg = neg && !rounded.is_zero();
    let mag = rounded.to_string();
    let mag = if mag.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag) } else { mag };
    let (ip, fp) = mag.split_at(mag.len() - digits);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(ip);
    if digits > 0 {
        out.push('.');
        out.push_str(fp);
    }
    out
}

/// Decimal rendering rounded to `digits` places after the point.
pub fn rational_to_decimal(q: &Rational, digits: usize) -> String {
    render_scaled(scaled_floor(&q.abs(), digits + 1), digits, q.is_negative())
}

/// Splits `n > 0` as `s^2 * d` with `d` free of prime-square factors below the
/// trial-division limit. The flag is true when `d` is certified square-free.
pub fn square_free_decompose(n: &BigInt) -> (BigInt, BigInt, bool) {
    assert!(n.is_positive());
    let mut rest = n.clone();
    let mut core = BigInt::one();
    let mut s = BigInt::one();
    let mut p: u64 = 2;
    let mut exhausted = true;
    loop {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        if p > TRIAL_DIVISION_LIMIT {
            exhausted = false;
            break;
        }
        let mut e = 0u32;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            e += 1;
        }
        s *= num_traits::pow(pb.clone(), (e / 2) as usize);
        if e % 2 == 1 {
            core *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !exhausted {
        let root = rest.sqrt();
        if &root * &root == rest {
            s *= root;
            rest = BigInt::one();
            exhausted = true;
        }
    }
    (s, core * rest, exhausted)
}

/// A positive square-free radicand shared by values of one quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Radicand {
    d: BigInt,
    certified: bool,
}

impl Radicand {
    /// Builds the field `Q(sqrt n)`. Returns the radicand and the cofactor `s`
    /// with `n = s^2 * d`.
    pub fn from_integer(n: &BigInt) -> Result<(Radicand, BigInt)> {
        if !n.is_positive() {
            return Err(Error::InvalidRadicand(n.to_string()));
        }
        let (s, d, certified) = square_free_decompose(n);
        if d.is_one() {
            return Err(Error::InvalidRadicand(n.to_string()));
        }
        Ok((Radicand { d, certified }, s))
    }

    pub fn value(&self) -> &BigInt {
        &self.d
    }

    /// False when a square factor above the trial-division limit may remain.
    pub fn is_certified(&self) -> bool {
        self.certified
    }
}

impl fmt::Display for Radicand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)
    }
}

/// The real number `a + b*sqrt(d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    pub a: Rational,
    pub b: Rational,
    d: Radicand,
}

impl QuadSurd {
    /// `a + b*sqrt(n)` for any positive non-square `n`; square factors of `n`
    /// are moved into `b`.
    pub fn new(a: Rational, b: Rational, n: &BigInt) -> Result<QuadSurd> {
        let (d, s) = Radicand::from_integer(n)?;
        Ok(QuadSurd { a, b: b * rat_int(s), d })
    }

    pub fn with_radicand(a: Rational, b: Rational, d: &Radicand) -> QuadSurd {
        QuadSurd { a, b, d: d.clone() }
    }

    pub fn from_rational(a: Rational, d: &Radicand) -> QuadSurd {
        QuadSurd { a, b: Rational::zero(), d: d.clone() }
    }

    pub fn radicand(&self) -> &Radicand {
        &self.d
    }

    pub fn d(&self) -> &BigInt {
        &self.d.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conj(&self) -> QuadSurd {
        QuadSurd { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rat_int(self.d().clone())
    }

    pub fn sign(&self) -> i32 {
        surd_sign(self)
    }

    fn check(&self, other: &QuadSurd) -> Result<()> {
        if self.d != other.d {
            return Err(Error::RadicandMismatch(self.d.to_string(), other.d.to_string()));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &QuadSurd) -> Result<QuadSurd> {
        self.check(o)?;
        Ok(QuadSurd { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d.clone() })
    }

    pub fn checked_sub(&self, o: &QuadSurd) -> Result<QuadSurd> {
        self.check(o)?;
        Ok(QuadSurd { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d.clone() })
    }

    pub fn checked_mul(&self, o: &QuadSurd) -> Result<QuadSurd> {
        self.check(o)?;
        let d = rat_int(self.d().clone());
        Ok(QuadSurd {
            a: &self.a * &o.a + &self.b * &o.b * d,
            b: &self.a * &o.b + &self.b * &o.a,
            d: self.d.clone(),
        })
    }

    pub fn checked_div(&self, o: &QuadSurd) -> Result<QuadSurd> {
        self.check(o)?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = o.norm();
        let num = self.checked_mul(&o.conj())?;
        Ok(QuadSurd { a: num.a / &n, b: num.b / &n, d: self.d.clone() })
    }

    pub fn inv(&self) -> Result<QuadSurd> {
        QuadSurd::from_rational(Rational::one(), &self.d).checked_div(self)
    }

    pub fn scale(&self, k: &Rational) -> QuadSurd {
        QuadSurd { a: &self.a * k, b: &self.b * k, d: self.d.clone() }
    }

    pub fn add_rational(&self, k: &Rational) -> QuadSurd {
        QuadSurd { a: &self.a + k, b: self.b.clone(), d: self.d.clone() }
    }

    /// Float value, evaluated so that cancellation between `a` and
    /// `b*sqrt(d)` does not destroy the relative accuracy.
    pub fn to_f64(&self) -> f64 {
        let a = rational_to_f64(&self.a);
        let bs = rational_to_f64(&self.b) * rational_to_f64(&rat_int(self.d().clone())).sqrt();
        if a == 0.0 || bs == 0.0 || a.signum() == bs.signum() {
            return a + bs;
        }
        let conj = a - bs;
        rational_to_f64(&self.norm()) / conj
    }

    /// Floor of `value * 10^digits`, exact.
    fn scaled_floor(&self, digits: usize) -> BigInt {
        let ten = num_traits::pow(BigInt::from(10), digits);
        let l = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&l / self.a.denom()) * &ten;
        let q = self.b.numer() * (&l / self.b.denom()) * &ten;
        // floor(q * sqrt(d))
        let q2d = &q * &q * self.d();
        let r = q2d.sqrt();
        let fq = if q.is_negative() {
            if &r * &r == q2d {
                -r
            } else {
                -r - BigInt::one()
            }
        } else {
            r
        };
        (p + fq).div_floor(&l)
    }

    /// Decimal rendering rounded to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        if surd_sign(self) < 0 {
            return render_scaled(self.scale(&rat(-1, 1)).scaled_floor(digits + 1), digits, true);
        }
        render_scaled(self.scaled_floor(digits + 1), digits, false)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sb = if self.b.is_negative() { '-' } else { '+' };
        let b = self.b.abs();
        if b.is_one() {
            write!(f, "{} {} sqrt({})", self.a, sb, self.d)
        } else {
            write!(f, "{} {} {}*sqrt({})", self.a, sb, b, self.d)
        }
    }
}

fn sign_of(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Exact sign of `a + b*sqrt(d)`.
pub fn surd_sign(x: &QuadSurd) -> i32 {
    let sa = sign_of(&x.a);
    let sb = sign_of(&x.b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // Opposite signs: the larger of a^2 and b^2 d wins.
    match sign_of(&x.norm()) {
        0 => 0,
        1 => sa,
        _ => sb,
    }
}

/// Exact sign of `a + b*sqrt(n)` for an arbitrary non-negative integer `n`.
pub fn sign_a_plus_b_sqrt(a: &Rational, b: &Rational, n: &BigInt) -> i32 {
    let sa = sign_of(a);
    let sb = if n.is_zero() { 0 } else { sign_of(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let diff = a * a - b * b * rat_int(n.clone());
    match sign_of(&diff) {
        0 => 0,
        1 => sa,
        _ => sb,
    }
}

/// Exact sign of `x + y*sqrt(n)` for integers, `n >= 0`.
pub fn sign_int_surd(x: &BigInt, y: &BigInt, n: &BigInt) -> i32 {
    let sx = bigint_sign(x);
    let sy = if n.is_zero() { 0 } else { bigint_sign(y) };
    if sy == 0 {
        return sx;
    }
    if sx == 0 || sx == sy {
        return sy;
    }
    let diff = x * x - y * y * n;
    match bigint_sign(&diff) {
        0 => 0,
        1 => sx,
        _ => sy,
    }
}

fn bigint_sign(x: &BigInt) -> i32 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurdOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn surd_arith(x: &QuadSurd, y: &QuadSurd, op: SurdOp) -> Result<QuadSurd> {
    match op {
        SurdOp::Add => x.checked_add(y),
        SurdOp::Sub => x.checked_sub(y),
        SurdOp::Mul => x.checked_mul(y),
        SurdOp::Div => x.checked_div(y),
    }
}

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational { re: rat(re, 1), im: rat(im, 1) }
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        Ok(self.clone() * o.inv()?)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational { re: &self.re * k, im: &self.im * k }
    }

    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    /// Sign used for projective normalization: the sign of the real part,
    /// or of the imaginary part when the real part vanishes.
    pub fn leading_sign(&self) -> i32 {
        match sign_of(&self.re) {
            0 => sign_of(&self.im),
            s => s,
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianRational { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianRational { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianRational {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}i", self.re, -self.im.clone())
                } else {
                    write!(f, "{}+{}i", self.re, self.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surd(a: i64, b: i64, d: i64) -> QuadSurd {
        QuadSurd::new(rat(a, 1), rat(b, 1), &int(d)).unwrap()
    }

    #[test]
    fn sign_examples() {
        assert_eq!(surd_sign(&surd(3, -2, 2)), 1);
        assert_eq!(surd_sign(&surd(1, -1, 2)), -1);
        let w0 = QuadSurd::new(rat(-1302, 8182), rat(1, 8182), &int(42440)).unwrap();
        assert_eq!(surd_sign(&w0), -1);
        assert!((w0.to_f64() + 0.13395).abs() < 1e-5);
    }

    #[test]
    fn integer_surd_sign() {
        assert_eq!(sign_int_surd(&int(3), &int(-2), &int(2)), 1);
        assert_eq!(sign_int_surd(&int(-1302), &int(1), &int(42440)), -1);
        assert_eq!(sign_int_surd(&int(-4), &int(2), &int(4)), 0);
        assert_eq!(sign_int_surd(&int(0), &int(-1), &int(5)), -1);
        assert_eq!(sign_int_surd(&int(-7), &int(3), &int(0)), -1);
    }

    #[test]
    fn sign_zero_only_when_exact() {
        assert_eq!(surd_sign(&surd(0, 0, 2)), 0);
        assert_eq!(sign_a_plus_b_sqrt(&rat(-3, 1), &rat(1, 1), &int(9)), 0);
        assert_eq!(sign_a_plus_b_sqrt(&rat(-3, 1), &rat(1, 1), &int(10)), 1);
    }

    #[test]
    fn arith_examples() {
        let x = surd(1, 1, 2);
        let y = surd(1, -1, 2);
        assert_eq!(surd_arith(&x, &y, SurdOp::Mul).unwrap(), surd(-1, 0, 2));
        assert_eq!(surd_arith(&x, &x, SurdOp::Mul).unwrap(), surd(3, 2, 2));
        let z = surd(3, 1, 8);
        assert_eq!(z, surd(3, 2, 2));
        assert_eq!(surd_arith(&z, &x, SurdOp::Div).unwrap(), x);
    }

    #[test]
    fn arith_errors() {
        let x = surd(1, 1, 2);
        let y = surd(1, 1, 3);
        assert!(matches!(surd_arith(&x, &y, SurdOp::Add), Err(Error::RadicandMismatch(..))));
        let zero = surd(0, 0, 2);
        assert_eq!(surd_arith(&x, &zero, SurdOp::Div), Err(Error::DivisionByZero));
        assert!(QuadSurd::new(rat(1, 1), rat(1, 1), &int(16)).is_err());
        assert!(QuadSurd::new(rat(1, 1), rat(1, 1), &int(-3)).is_err());
    }

    #[test]
    fn square_free_extraction() {
        let (s, d, ok) = square_free_decompose(&int(42440));
        assert_eq!((s, d.clone(), ok), (int(2), int(10610), true));
        let (s, d, _) = square_free_decompose(&int(72));
        assert_eq!((s, d), (int(6), int(2)));
        let big = int(1_000_003) * int(1_000_003) * int(7);
        let (s, d, _) = square_free_decompose(&big);
        assert_eq!(&s * &s * &d, big);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&rat(1, 3), 5), "0.33333");
        assert_eq!(rational_to_decimal(&rat(2, 3), 3), "0.667");
        assert_eq!(rational_to_decimal(&rat(-1, 8), 2), "-0.13");
        assert_eq!(rational_to_decimal(&rat(7, 1), 0), "7");
        assert_eq!(surd(1, 1, 2).to_decimal(10), "2.4142135624");
        assert_eq!(surd(1, -1, 2).to_decimal(6), "-0.414214");
        assert_eq!(surd(3, -2, 2).to_decimal(8), "0.17157288");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-0.125").unwrap(), rat(-1, 8));
        assert_eq!(parse_rational("12").unwrap(), rat(12, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(fmt_rational(&rat(4, 2)), "2/1");
    }

    #[test]
    fn gaussian_ops() {
        let z = GaussianRational::from_ints(4, 3);
        let w = z.checked_div(&GaussianRational::from_ints(5, 0)).unwrap();
        assert_eq!(w.norm(), rat(1, 1));
        assert_eq!(z.clone() * z.inv().unwrap(), GaussianRational::one());
        assert_eq!(GaussianRational::i() * GaussianRational::i(), GaussianRational::from_ints(-1, 0));
        assert_eq!(z.to_string(), "4+3i");
    }
}
