//! The linear model `T(x) = -(m-1) x mod 1` and the conjugacy `Φ` between the
//! billiard map and `T`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, rat_int, rational_to_f64, Rational};
use crate::billiard::{is_vertex, locate_interval, CirclePoint};
use crate::error::{Error, Result};
use crate::partition::{PythTriple, UnimodularPartition};
use crate::symbolic::SymbolicWord;

/// Value of `Φ`: exact for eventually periodic codings, otherwise a
/// truncation with an error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum PhiValue {
    Exact(Rational),
    Approx { value: f64, error_bound: f64 },
}

impl PhiValue {
    pub fn value(&self) -> f64 {
        match self {
            PhiValue::Exact(q) => rational_to_f64(q),
            PhiValue::Approx { value, .. } => *value,
        }
    }

    pub fn error_bound(&self) -> f64 {
        match self {
            PhiValue::Exact(_) => 0.0,
            PhiValue::Approx { error_bound, .. } => *error_bound,
        }
    }
}

/// Digit attached to consecutive letters; `d(a, a) = a`.
pub fn d_func(a: usize, b: usize) -> usize {
    if a < b {
        a + 1
    } else {
        a
    }
}

fn check_m(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("m = {m}, need m >= 3")));
    }
    Ok(())
}

/// Fractional part in `[0, 1)`.
pub fn frac(q: &Rational) -> Rational {
    q - q.floor()
}

pub fn t_map(x: &Rational, m: usize) -> Rational {
    frac(&(x * rat(-(m as i64 - 1), 1)))
}

pub fn t_map_f64(x: f64, m: usize) -> f64 {
    crate::billiard::wrap01(-((m - 1) as f64) * x)
}

/// Digits `d_t = d(a_t, a_{t+1})` of an eventually periodic word, with the
/// same preperiod and period.
pub fn digit_word(w: &SymbolicWord) -> (Vec<usize>, Vec<usize>) {
    let h = w.prefix().len();
    let p = w.cycle().len();
    let pre = (0..h).map(|t| d_func(w.letter(t), w.letter(t + 1))).collect();
    let cyc = (0..p).map(|t| d_func(w.letter(h + t), w.letter(h + t + 1))).collect();
    (pre, cyc)
}

/// Exact `Φ` of the point coded by an admissible eventually periodic word,
/// reduced into `[0, 1)`.
pub fn phi_exact(w: &SymbolicWord, m: usize) -> Result<Rational> {
    check_m(m)?;
    if !w.is_admissible(m) {
        return Err(Error::NotAdmissible);
    }
    Ok(phi_of_word(w, m))
}

/// The series value for any eventually periodic word, admissible or not.
pub fn phi_of_word(w: &SymbolicWord, m: usize) -> Rational {
    let (pre, cyc) = digit_word(w);
    let r = rat(-1, m as i64 - 1);
    let sum = |ds: &[usize]| {
        let mut acc = Rational::zero();
        let mut pw = Rational::one();
        for &d in ds {
            acc += rat(d as i64, 1) * &pw;
            pw *= &r;
        }
        (acc, pw)
    };
    let (y, rh) = sum(&pre);
    let (z, rp) = sum(&cyc);
    let total = (y + rh * z / (Rational::one() - rp)) * rat(1, m as i64 - 1);
    frac(&total)
}

/// Error bound attached to a depth-`depth` truncation.
pub fn error_bound(m: usize, depth: usize) -> f64 {
    let k = (m - 1) as f64;
    k.powi(1 - depth as i32) / (m as f64 - 2.0)
}

/// Value of the word `a_0 .. a_T a_T a_T ..` given the first `T + 1` letters:
/// the partial sum of the first `T` digits plus the constant tail.
pub fn phi_from_letters(letters: &[usize], m: usize) -> Rational {
    assert!(!letters.is_empty());
    let t = letters.len() - 1;
    let r = rat(-1, m as i64 - 1);
    let mut acc = Rational::zero();
    let mut pw = Rational::one();
    for i in 0..t {
        acc += rat(d_func(letters[i], letters[i + 1]) as i64, 1) * &pw;
        pw *= &r;
    }
    acc *= rat(1, m as i64 - 1);
    acc += pw * rat(letters[t] as i64, m as i64);
    frac(&acc)
}

/// First `count` letters of the coding of `sigma`, computed exactly.
pub fn letters_of(p: &UnimodularPartition, sigma: &CirclePoint, count: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(count);
    let mut cur = sigma.clone();
    while out.len() < count {
        let a = locate_interval(p, &cur);
        if is_vertex(p, &cur, a) {
            out.resize(count, a);
            break;
        }
        out.push(a);
        cur = cur.reflect(&p.refl3()[a])?;
    }
    Ok(out)
}

/// Depth-`depth` truncation of `Φ(sigma)`, exact rational part.
pub fn phi_truncated_rational(p: &UnimodularPartition, sigma: &CirclePoint, depth: usize) -> Result<Rational> {
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    Ok(phi_from_letters(&letters_of(p, sigma, depth + 1)?, p.size()))
}

pub fn phi_truncated(p: &UnimodularPartition, sigma: &CirclePoint, depth: usize) -> Result<PhiValue> {
    let q = phi_truncated_rational(p, sigma, depth)?;
    Ok(PhiValue::Approx { value: rational_to_f64(&q), error_bound: error_bound(p.size(), depth) })
}

/// Default number of guard digits for float inputs.
pub const DEFAULT_GUARD_DIGITS: u32 = 12;

/// Guard digits from a `BILLIARDS_PRECISION`-style setting, clamped to 3..=15.
pub fn guard_digits_from(setting: Option<&str>) -> u32 {
    setting.and_then(|s| s.trim().parse::<u32>().ok()).unwrap_or(DEFAULT_GUARD_DIGITS).clamp(3, 15)
}

/// Truncated `Φ` at a float argument. The letters are computed exactly for
/// rational points at `x ± 10^-guard`; they must agree to depth `T + 1`, so
/// that the whole bracket lies in a single cylinder.
pub fn phi_truncated_f64(p: &UnimodularPartition, x: f64, depth: usize, guard_digits: u32) -> Result<PhiValue> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::OutOfRange(x.to_string(), "[0,1)".into()));
    }
    if depth == 0 {
        return Err(Error::InvalidParameter("depth must be at least 1".into()));
    }
    let delta = 10f64.powi(-(guard_digits as i32));
    let lo = CirclePoint::Rational(PythTriple::near_argument(x - delta)?);
    let hi = CirclePoint::Rational(PythTriple::near_argument(x + delta)?);
    let a = letters_of(p, &lo, depth + 1)?;
    let b = letters_of(p, &hi, depth + 1)?;
    if let Some(k) = a.iter().zip(&b).position(|(u, v)| u != v) {
        return Err(Error::PrecisionLoss { achieved: k.saturating_sub(1), requested: depth });
    }
    let mid = CirclePoint::Rational(PythTriple::near_argument(x)?);
    let c = letters_of(p, &mid, depth + 1)?;
    let q = phi_from_letters(&c, p.size());
    Ok(PhiValue::Approx { value: rational_to_f64(&q), error_bound: error_bound(p.size(), depth) })
}

/// Distance on the circle `R/Z`.
pub fn circle_distance(x: &Rational, y: &Rational) -> Rational {
    let d = frac(&(x - y));
    let e = Rational::one() - &d;
    if d < e {
        d
    } else {
        e
    }
}

/// Bound on the conjugacy residual at depth `depth`.
pub fn residual_bound(m: usize, depth: usize) -> f64 {
    2.0 * error_bound(m, depth) * (m - 1) as f64
}

/// Maximum over random rational points `x` of `|Φ(Bx) - T(Φx)|` on the
/// circle, with both sides truncated at `depth`.
pub fn conjugacy_residual(p: &UnimodularPartition, samples: usize, depth: usize, seed: u64) -> Result<f64> {
    let m = p.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = Rational::zero();
    for _ in 0..samples {
        let x: f64 = rng.gen();
        let sigma = CirclePoint::Rational(PythTriple::near_argument(x)?);
        let letters = letters_of(p, &sigma, depth + 2)?;
        let lhs = phi_from_letters(&letters[1..], m);
        let rhs = t_map(&phi_from_letters(&letters[..depth + 1], m), m);
        let r = circle_distance(&lhs, &rhs);
        if r > worst {
            worst = r;
        }
    }
    Ok(rational_to_f64(&worst))
}

/// Exact residual on an eventually periodic word: `Φ(shift w) - T(Φ w)`.
pub fn exact_conjugacy_defect(w: &SymbolicWord, m: usize) -> Result<Rational> {
    let lhs = phi_exact(&w.shift(), m)?;
    let rhs = t_map(&phi_exact(w, m)?, m);
    Ok(circle_distance(&lhs, &rhs))
}

/// Depth used for each evaluation of the derivative probe.
pub const PROBE_DEPTH: usize = 64;

/// Symmetric difference quotients `(Φ(x+h) - Φ(x-h)) / 2h`.
pub fn derivative_probe(p: &UnimodularPartition, x: f64, scales: &[f64]) -> Result<Vec<f64>> {
    let phi = |y: f64| -> Result<Rational> {
        let sigma = CirclePoint::Rational(PythTriple::near_argument(y)?);
        phi_truncated_rational(p, &sigma, PROBE_DEPTH)
    };
    let mut out = Vec::with_capacity(scales.len());
    for &h in scales {
        if h.is_nan() || h <= 0.0 {
            return Err(Error::InvalidParameter(format!("scale {h} must be positive")));
        }
        let diff = frac(&(phi(x + h)? - phi(x - h)?));
        out.push(rational_to_f64(&diff) / (2.0 * h));
    }
    Ok(out)
}

/// `Φ` of the vertex `a`.
pub fn phi_vertex(a: usize, m: usize) -> Rational {
    rat(a as i64, m as i64)
}

/// Rational in `[0, 1)` with denominator `den`, sampled uniformly.
pub fn random_unit_rational(rng: &mut impl Rng, den: i64) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(0..den)), BigInt::from(den))
}

pub fn is_in_unit_interval(q: &Rational) -> bool {
    !q.is_negative() && *q < Rational::one()
}

/// Representative of `q mod 1` in `[a/m, (a+1)/m]`, the image of interval
/// `a` under the lift of `Φ` with `Φ(0) = 0`. Truncation error can push the
/// value slightly outside, so it is clamped.
pub fn phi_lift(q: &Rational, a: usize, m: usize) -> Rational {
    let lo = rat(a as i64, m as i64);
    let hi = rat(a as i64 + 1, m as i64);
    let mid = (&lo + &hi) * rat(1, 2);
    // nearest integer translate to the middle of the target interval
    let k = (&mid - q + rat(1, 2)).floor();
    let v = q + k;
    if v < lo {
        lo
    } else if v > hi {
        hi
    } else {
        v
    }
}

/// Lifted truncated `Φ` at the rational point nearest to `x`, with its
/// error bound.
pub fn phi_at_argument(p: &UnimodularPartition, x: f64, depth: usize) -> Result<(Rational, f64)> {
    let sigma = CirclePoint::Rational(PythTriple::near_argument(x)?);
    let letters = letters_of(p, &sigma, depth + 1)?;
    let q = phi_from_letters(&letters, p.size());
    Ok((phi_lift(&q, letters[0], p.size()), error_bound(p.size(), depth)))
}

pub fn rat_from_usize(n: usize) -> Rational {
    rat_int(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::billiard::Branch;
    use crate::lorentz::Vec3Z;
    use crate::partition::builtin;

    fn w(s: &str) -> SymbolicWord {
        SymbolicWord::parse(s).unwrap()
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_func(4, 5), 5);
        assert_eq!(d_func(5, 3), 5);
        assert_eq!(d_func(2, 2), 2);
    }

    #[test]
    fn t_examples() {
        assert_eq!(t_map(&rat(1, 4), 4), rat(1, 4));
        assert_eq!(t_map(&rat(1, 8), 4), rat(5, 8));
        assert_eq!(t_map(&rat(0, 1), 6), rat(0, 1));
        assert!((t_map_f64(0.125, 4) - 0.625).abs() < 1e-15);
    }

    #[test]
    fn worked_values() {
        let a = w("45:35420");
        assert_eq!(digit_word(&a), (vec![5, 5], vec![4, 5, 4, 2, 1]));
        assert_eq!(phi_exact(&a, 6).unwrap(), rat(32243, 39075));
        assert_eq!(phi_exact(&w("45:02453"), 6).unwrap(), rat(62873, 78150));
        for m in 3..9 {
            for a in 0..m {
                assert_eq!(phi_exact(&SymbolicWord::terminating(vec![], a), m).unwrap(), rat(a as i64, m as i64));
            }
        }
        assert_eq!(phi_exact(&w("3:4"), 6), Err(Error::NotAdmissible));
    }

    #[test]
    fn truncation_brackets_exact_value() {
        let p = builtin("example-7.5").unwrap();
        let s = CirclePoint::quadratic(Vec3Z::from_i64(-651, -1995, 2096), Branch::Plus).unwrap();
        let v = phi_truncated(&p, &s, 30).unwrap();
        let exact = rational_to_f64(&rat(32243, 39075));
        assert!((v.value() - exact).abs() <= v.error_bound());
        for a in 0..p.size() {
            let t = CirclePoint::Rational(p.vertex(a).clone());
            let v = phi_truncated(&p, &t, 7).unwrap();
            assert_eq!(v.value(), a as f64 / 6.0);
        }
        let sq = builtin("square").unwrap();
        let t = CirclePoint::Rational(PythTriple::new(4, 3, 5).unwrap());
        let exact = phi_exact(&w("0:3"), 4).unwrap();
        let v = phi_truncated(&sq, &t, 5).unwrap();
        assert!((v.value() - rational_to_f64(&exact)).abs() <= v.error_bound());
    }

    #[test]
    fn exact_shift_commutes() {
        for s in ["45:35420", "45:02453", "0:3", "213:0"] {
            assert!(exact_conjugacy_defect(&w(s), 6).unwrap().is_zero(), "{s}");
        }
    }

    #[test]
    fn residual_small() {
        let sq = builtin("square").unwrap();
        let r = conjugacy_residual(&sq, 200, 25, 7).unwrap();
        assert!(r < residual_bound(4, 25));
        assert!(r < 1e-8);
    }

    #[test]
    fn float_path_and_guard() {
        let sq = builtin("square").unwrap();
        let v = phi_truncated_f64(&sq, 0.1, 8, 12).unwrap();
        let exact = phi_at_argument(&sq, 0.1, 40).unwrap().0;
        assert!((v.value() - rational_to_f64(&exact)).abs() <= v.error_bound());
        match phi_truncated_f64(&sq, 0.1, 200, 12) {
            Err(Error::PrecisionLoss { requested: 200, .. }) => {}
            other => panic!("expected precision loss, got {other:?}"),
        }
        assert_eq!(guard_digits_from(Some("40")), 15);
        assert_eq!(guard_digits_from(Some("x")), DEFAULT_GUARD_DIGITS);
        assert_eq!(guard_digits_from(None), DEFAULT_GUARD_DIGITS);
    }

    #[test]
    fn lift_into_image_interval() {
        assert_eq!(phi_lift(&rat(0, 1), 3, 4), rat(1, 1));
        assert_eq!(phi_lift(&rat(1, 1000), 3, 4), rat(1, 1));
        assert_eq!(phi_lift(&rat(999, 1000), 0, 4), rat(0, 1));
        assert_eq!(phi_lift(&rat(1, 8), 0, 4), rat(1, 8));
        assert_eq!(phi_lift(&rat(7, 8), 3, 4), rat(7, 8));
    }

    #[test]
    fn probe_is_nonnegative() {
        let sq = builtin("square").unwrap();
        let q = derivative_probe(&sq, 0.0, &[1e-2, 1e-3, 1e-4]).unwrap();
        assert!(q.iter().all(|&d| d >= 0.0));
        assert!(q[2] < q[0]);
    }
}
