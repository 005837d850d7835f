//! Joint spectral radius of the reflection family, mean free paths of
//! periodic words and the Hölder exponent of `Φ`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{rat, rat_int, rational_to_f64, QuadSurd, Rational};
use crate::error::{Error, Result};
use crate::lorentz::Mat2Q;
use crate::partition::UnimodularPartition;

type M2 = [[i128; 2]; 2];

/// The matrices `A_0, .., A_{m-1}` of the half-plane picture with a fixed lift.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionFamily {
    mats: Vec<Mat2Q>,
    ints: Vec<M2>,
    involutive: bool,
}

impl ReflectionFamily {
    pub fn new(mats: Vec<Mat2Q>) -> Result<ReflectionFamily> {
        if mats.is_empty() {
            return Err(Error::InvalidParameter("empty family".into()));
        }
        let mut ints = Vec::with_capacity(mats.len());
        for a in &mats {
            let d = a.det();
            if d.abs() != rat(1, 1) {
                return Err(Error::NotUnimodular(a.to_string()));
            }
            ints.push(to_i128(a)?);
        }
        let involutive = mats.iter().all(|a| {
            let sq = a.mul(a);
            sq.projectively_eq(&Mat2Q::identity())
        });
        Ok(ReflectionFamily { mats, ints, involutive })
    }

    pub fn size(&self) -> usize {
        self.mats.len()
    }

    pub fn mats(&self) -> &[Mat2Q] {
        &self.mats
    }

    /// Every member squares to `±I`, so words with adjacent repeats collapse.
    pub fn is_involutive(&self) -> bool {
        self.involutive
    }

    /// Exact product `A_{w_0} ... A_{w_{h-1}}`.
    pub fn product(&self, word: &[usize]) -> Result<Mat2Q> {
        let mut p = Mat2Q::identity();
        for &a in word {
            let m = self.mats.get(a).ok_or(Error::IndexOutOfRange(a, self.size()))?;
            p = p.mul(m);
        }
        Ok(p)
    }

    /// The family `C A_a C^-1`.
    pub fn conjugate_by(&self, c: &Mat2Q) -> Result<ReflectionFamily> {
        let ci = c.inverse()?;
        ReflectionFamily::new(self.mats.iter().map(|a| c.mul(a).mul(&ci)).collect())
    }
}

fn to_i128(a: &Mat2Q) -> Result<M2> {
    let e = |x: &Rational| -> Result<i128> {
        if !x.is_integer() {
            return Err(Error::NonIntegral(a.to_string()));
        }
        x.numer().to_i128().ok_or_else(|| Error::OutOfRange(x.to_string(), "i128".into()))
    };
    let [[p, q], [r, s]] = &a.0;
    Ok([[e(p)?, e(q)?], [e(r)?, e(s)?]])
}

fn mul_i128(x: &M2, y: &M2) -> Option<M2> {
    let e = |i: usize, j: usize| x[i][0].checked_mul(y[0][j])?.checked_add(x[i][1].checked_mul(y[1][j])?);
    Some([[e(0, 0)?, e(0, 1)?], [e(1, 0)?, e(1, 1)?]])
}

/// Nonempty word with no two cyclically adjacent letters equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleWord(Vec<usize>);

impl CycleWord {
    pub fn new(letters: Vec<usize>) -> Result<CycleWord> {
        if letters.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        let h = letters.len();
        if h > 1 && (0..h).any(|i| letters[i] == letters[(i + 1) % h]) {
            return Err(Error::NotCyclicallyReduced);
        }
        Ok(CycleWord(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Lexicographically least rotation.
    pub fn canonical(&self) -> CycleWord {
        let h = self.0.len();
        let best = (0..h)
            .map(|r| {
                let mut v = self.0.clone();
                v.rotate_left(r);
                v
            })
            .min()
            .expect("nonempty");
        CycleWord(best)
    }

    pub fn is_rotation_of(&self, o: &CycleWord) -> bool {
        self.canonical() == o.canonical()
    }

    /// Digits run together, or comma-separated integers.
    pub fn parse(s: &str) -> Result<CycleWord> {
        let bad = || Error::InvalidWord(s.to_string());
        let letters: Vec<usize> = if s.contains(',') {
            s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_>>()?
        } else {
            s.trim().chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_>>()?
        };
        CycleWord::new(letters)
    }
}

impl fmt::Display for CycleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The half-plane reflections of a partition.
pub fn sigma_from_partition(p: &UnimodularPartition) -> Result<ReflectionFamily> {
    ReflectionFamily::new(p.sigma2().to_vec())
}

/// Exact eigenvalue of largest modulus, in absolute value.
#[derive(Clone, Debug, PartialEq)]
pub enum ExactRadius {
    Rational(Rational),
    Surd(QuadSurd),
}

impl ExactRadius {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactRadius::Rational(q) => rational_to_f64(q),
            ExactRadius::Surd(s) => s.to_f64(),
        }
    }
}

impl fmt::Display for ExactRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactRadius::Rational(q) => write!(f, "{}", crate::arith::fmt_rational(q)),
            ExactRadius::Surd(s) => write!(f, "{s}"),
        }
    }
}

/// `(|t| + sqrt(disc)) / 2` for a rational trace `t` and discriminant `disc`.
fn half_root(t: &Rational, disc: &Rational) -> Result<ExactRadius> {
    let half = rat(1, 2);
    let ta = t.abs() * &half;
    if disc.is_zero() {
        return Ok(ExactRadius::Rational(ta));
    }
    // sqrt(p/q) = sqrt(p q) / q
    let (p, q) = (disc.numer().clone(), disc.denom().clone());
    let pq: BigInt = &p * &q;
    let r = pq.sqrt();
    if &r * &r == pq {
        return Ok(ExactRadius::Rational(ta + rat_int(r) / rat_int(q) * half));
    }
    Ok(ExactRadius::Surd(QuadSurd::new(ta, half / rat_int(q), &pq)?))
}

/// Exact spectral radius of a 2x2 matrix with `|det| = 1`. Elliptic and
/// parabolic matrices give 1.
pub fn spectral_radius_2x2(a: &Mat2Q) -> Result<ExactRadius> {
    let d = a.det();
    let t = a.trace();
    let four = rat(4, 1);
    if d == rat(1, 1) {
        let disc = &t * &t - four;
        if !disc.is_positive() {
            return Ok(ExactRadius::Rational(rat(1, 1)));
        }
        half_root(&t, &disc)
    } else if d == rat(-1, 1) {
        half_root(&t, &(&t * &t + four))
    } else {
        Err(Error::NotUnimodular(a.to_string()))
    }
}

/// Float spectral radius from trace and determinant `±1`.
pub fn spectral_radius_f64(tr: f64, det_positive: bool) -> f64 {
    let t = tr.abs();
    if det_positive {
        if t <= 2.0 {
            1.0
        } else {
            0.5 * (t + (t * t - 4.0).sqrt())
        }
    } else {
        0.5 * (t + (t * t + 4.0).sqrt())
    }
}

/// Largest singular value of a matrix with `|det| = 1`: the square root of
/// the top eigenvalue of `A^T A`, whose trace is the squared Frobenius norm.
pub fn spectral_norm_f64(a: &[[f64; 2]; 2]) -> f64 {
    let s = a[0][0] * a[0][0] + a[0][1] * a[0][1] + a[1][0] * a[1][0] + a[1][1] * a[1][1];
    (0.5 * (s + (s * s - 4.0).max(0.0).sqrt())).sqrt()
}

/// Exact squared spectral norm of a matrix with `|det| = 1`.
pub fn spectral_norm_sq(a: &Mat2Q) -> Result<ExactRadius> {
    let ata = a.transpose().mul(a);
    let s = ata.trace();
    half_root(&s, &(&s * &s - rat(4, 1)))
}

/// Mean free path `(2/h) log rho(A_{w_0} ... A_{w_{h-1}})` of a periodic word.
pub fn mean_free_path(family: &ReflectionFamily, w: &CycleWord) -> Result<f64> {
    let rho = spectral_radius_2x2(&family.product(w.letters())?)?;
    Ok(2.0 * rho.to_f64().ln() / w.len() as f64)
}

/// Bracket on the joint spectral radius.
#[derive(Clone, Debug, PartialEq)]
pub struct JsrReport {
    pub lower: f64,
    pub upper: f64,
    pub best_word: CycleWord,
    pub certified: bool,
    pub max_len: usize,
    pub tolerance: f64,
    pub m: usize,
}

impl JsrReport {
    pub fn alpha(&self) -> Option<f64> {
        holder_exponent(self.m, self.lower).ok()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lower": self.lower,
            "upper": self.upper,
            "word": self.best_word.letters(),
            "certified": self.certified,
            "alpha": self.alpha(),
            "max_len": self.max_len,
            "tolerance": self.tolerance,
        })
    }
}

/// Per-branch search state: best cyclically reduced word by `rho^(1/k)` and
/// the largest spectral norm of reduced words of each length.
struct Search {
    best: f64,
    best_word: Vec<usize>,
    norms: Vec<f64>,
}

fn better(v: f64, word: &[usize], best: f64, best_word: &[usize]) -> bool {
    let tie = 1e-13 * best.abs().max(1.0);
    if v > best + tie {
        return true;
    }
    v >= best - tie && (word.len(), word) < (best_word.len(), best_word)
}

fn search_from(f: &ReflectionFamily, first: usize, k_max: usize) -> Result<Search> {
    let mut s = Search { best: 1.0, best_word: vec![first], norms: vec![1.0; k_max + 1] };
    let mut word = vec![first];
    let start = f.ints[first];
    walk(f, &mut word, start, k_max, &mut s)?;
    Ok(s)
}

fn walk(f: &ReflectionFamily, word: &mut Vec<usize>, prod: M2, k_max: usize, s: &mut Search) -> Result<()> {
    let k = word.len();
    let pf = prod.map(|r| r.map(|x| x as f64));
    let nrm = spectral_norm_f64(&pf);
    if nrm > s.norms[k] {
        s.norms[k] = nrm;
    }
    if k == 1 || !f.involutive || word[0] != word[k - 1] {
        let det_pos = pf[0][0] * pf[1][1] - pf[0][1] * pf[1][0] > 0.0;
        let rho = spectral_radius_f64(pf[0][0] + pf[1][1], det_pos).powf(1.0 / k as f64);
        if better(rho, word, s.best, &s.best_word) {
            s.best = rho;
            s.best_word = word.clone();
        }
    }
    if k == k_max {
        return Ok(());
    }
    let last = word[k - 1];
    for b in 0..f.size() {
        if f.involutive && b == last {
            continue;
        }
        let next = mul_i128(&prod, &f.ints[b]).ok_or_else(|| Error::Internal("matrix entries overflow i128".into()))?;
        word.push(b);
        walk(f, word, next, k_max, s)?;
        word.pop();
    }
    Ok(())
}

/// Brackets the joint spectral radius using all words of length at most
/// `max_len`. For involutive families only reduced words are enumerated: a
/// word of length `k` reduces to one of length `k, k-2, ..`.
pub fn jsr_bounds(family: &ReflectionFamily, max_len: usize, tolerance: f64) -> Result<JsrReport> {
    if max_len == 0 {
        return Err(Error::InvalidParameter("max_len must be at least 1".into()));
    }
    let parts: Vec<Search> = (0..family.size())
        .into_par_iter()
        .map(|a| search_from(family, a, max_len))
        .collect::<Result<_>>()?;
    let mut best = 1.0;
    let mut best_word = vec![0];
    let mut norms = vec![1.0f64; max_len + 1];
    for s in parts {
        if better(s.best, &s.best_word, best, &best_word) {
            best = s.best;
            best_word = s.best_word;
        }
        for (n, v) in norms.iter_mut().zip(&s.norms) {
            *n = n.max(*v);
        }
    }
    let mut upper = f64::INFINITY;
    for k in 1..=max_len {
        let mk = if family.involutive {
            (k % 2..=k).step_by(2).map(|j| norms[j]).fold(1.0f64, f64::max)
        } else {
            norms[k]
        };
        upper = upper.min(mk.powf(1.0 / k as f64));
    }
    let lower = best;
    let best_word = CycleWord(best_word).canonical();
    Ok(JsrReport {
        lower,
        upper,
        best_word,
        certified: upper - lower <= tolerance,
        max_len,
        tolerance,
        m: family.size(),
    })
}

/// Hölder exponent `log(m-1) / (2 log rho)`.
pub fn holder_exponent(m: usize, rho: f64) -> Result<f64> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("m = {m}, need m >= 3")));
    }
    if rho.is_nan() || rho <= 1.0 {
        return Err(Error::InvalidParameter(format!("rho = {rho}, need rho > 1")));
    }
    Ok(((m - 1) as f64).ln() / (2.0 * rho.ln()))
}
