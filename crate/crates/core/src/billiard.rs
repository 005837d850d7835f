//! The billiard map, its natural extension, symbolic codings and the
//! invariant density.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{rat_int, sign_int_surd, QuadSurd};
use crate::error::{Error, Result};
use crate::io::{json_bigint, json_vec3};
use crate::lorentz::{lorentz_inner, Mat3Z, Vec3Z};
use crate::partition::{normalize_triple, PythTriple, UnimodularPartition};
use crate::symbolic::SymbolicWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn flip(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// Irrational circle point of degree two, carried by an integer vector `v`
/// of non-square norm `n` and a choice of root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadPoint {
    v: Vec3Z,
    n: BigInt,
    branch: Branch,
}

impl QuadPoint {
    pub fn new(v: Vec3Z, branch: Branch) -> Result<QuadPoint> {
        let n = v.norm();
        if !n.is_positive() {
            return Err(Error::NonPositiveNorm(v.to_string(), n.to_string()));
        }
        let r = n.sqrt();
        if &r * &r == n {
            return Err(Error::InvalidRadicand(n.to_string()));
        }
        Ok(QuadPoint { v, n, branch })
    }

    pub fn carrier(&self) -> &Vec3Z {
        &self.v
    }

    pub fn norm(&self) -> &BigInt {
        &self.n
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// The other root of the same carrier.
    pub fn galois_conjugate(&self) -> QuadPoint {
        QuadPoint { v: self.v.clone(), n: self.n.clone(), branch: self.branch.flip() }
    }

    /// Homogeneous coordinates as pairs `(x, y)` meaning `x + y*sqrt(n)`,
    /// scaled so that the third coordinate is positive.
    pub fn coords(&self) -> [(BigInt, BigInt); 3] {
        let [v1, v2, v3] = &self.v.0;
        let e = v2 - v3;
        let sgn = if self.branch == Branch::Plus { BigInt::from(1) } else { BigInt::from(-1) };
        let v1sq = v1 * v1;
        let mut c = [
            (-(v1 * &e), -(&e * &sgn)),
            (&v1sq + v3 * &e, v1 * &sgn),
            (&v1sq + v2 * &e, v1 * &sgn),
        ];
        if sign_int_surd(&c[2].0, &c[2].1, &self.n) < 0 {
            for (x, y) in c.iter_mut() {
                *x = -x.clone();
                *y = -y.clone();
            }
        }
        c
    }

    /// Exact sign of `<w, point>`.
    pub fn inner_sign(&self, w: &Vec3Z) -> i32 {
        let c = self.coords();
        let x = &w.0[0] * &c[0].0 + &w.0[1] * &c[1].0 - &w.0[2] * &c[2].0;
        let y = &w.0[0] * &c[0].1 + &w.0[1] * &c[1].1 - &w.0[2] * &c[2].1;
        sign_int_surd(&x, &y, &self.n)
    }

    pub fn to_f64(&self) -> [f64; 3] {
        let rn = crate::arith::rational_to_f64(&rat_int(self.n.clone())).sqrt();
        let c = self.coords();
        let f = |p: &(BigInt, BigInt)| {
            let x = crate::arith::rational_to_f64(&rat_int(p.0.clone()));
            let y = crate::arith::rational_to_f64(&rat_int(p.1.clone()));
            x + y * rn
        };
        [f(&c[0]), f(&c[1]), f(&c[2])]
    }

    /// Stereographic coordinate `x1 / (x3 - x2)` as an exact surd.
    pub fn stereo(&self) -> Result<QuadSurd> {
        let c = self.coords();
        let num = QuadSurd::new(rat_int(c[0].0.clone()), rat_int(c[0].1.clone()), &self.n)?;
        let den = QuadSurd::new(rat_int(&c[2].0 - &c[1].0), rat_int(&c[2].1 - &c[1].1), &self.n)?;
        num.checked_div(&den)
    }

    /// Image of the point under the reflection `r` acting on the circle.
    pub fn reflect(&self, r: &Mat3Z) -> QuadPoint {
        QuadPoint { v: r.apply(&self.v).scale(&BigInt::from(-1)), n: self.n.clone(), branch: self.branch }
    }
}

/// A point of the circle of degree at most two over the Gaussian rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CirclePoint {
    Rational(PythTriple),
    Quadratic(QuadPoint),
}

impl CirclePoint {
    pub fn rational(t: PythTriple) -> Self {
        CirclePoint::Rational(t)
    }

    pub fn quadratic(v: Vec3Z, branch: Branch) -> Result<Self> {
        Ok(CirclePoint::Quadratic(QuadPoint::new(v, branch)?))
    }

    pub fn inner_sign(&self, w: &Vec3Z) -> i32 {
        match self {
            CirclePoint::Rational(t) => match lorentz_inner(w, t.vec()).sign() {
                num_bigint::Sign::Minus => -1,
                num_bigint::Sign::NoSign => 0,
                num_bigint::Sign::Plus => 1,
            },
            CirclePoint::Quadratic(q) => q.inner_sign(w),
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        match self {
            CirclePoint::Rational(t) => t.vec().to_f64(),
            CirclePoint::Quadratic(q) => q.to_f64(),
        }
    }

    /// Normalized argument in `[0, 1)`.
    pub fn argument(&self) -> f64 {
        match self {
            CirclePoint::Rational(t) => t.argument(),
            CirclePoint::Quadratic(_) => {
                let [x, y, _] = self.to_f64();
                wrap01(y.atan2(x) / std::f64::consts::TAU)
            }
        }
    }

    pub fn reflect(&self, r: &Mat3Z) -> Result<CirclePoint> {
        Ok(match self {
            CirclePoint::Rational(t) => CirclePoint::Rational(normalize_triple(&r.apply(t.vec()))?),
            CirclePoint::Quadratic(q) => CirclePoint::Quadratic(q.reflect(r)),
        })
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, CirclePoint::Rational(_))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePoint::Rational(t) => write!(f, "{t}"),
            CirclePoint::Quadratic(q) => {
                let b = if q.branch == Branch::Plus { "+" } else { "-" };
                write!(f, "{}{}", q.v, b)
            }
        }
    }
}

pub fn wrap01(x: f64) -> f64 {
    let y = x - x.floor();
    if y >= 1.0 {
        0.0
    } else {
        y
    }
}

/// Index `a` of the half-open interval `[t_a, t_{a+1})` containing `sigma`.
pub fn locate_interval(p: &UnimodularPartition, sigma: &CirclePoint) -> usize {
    let m = p.size();
    let signs: Vec<i32> = (0..m).map(|a| sigma.inner_sign(p.covector(a))).collect();
    if let Some(a) = signs.iter().position(|&s| s > 0) {
        return a;
    }
    // On a vertex: both neighbouring covectors vanish; the right-hand interval wins.
    (0..m).find(|&a| signs[a] == 0 && signs[(a + m - 1) % m] == 0).unwrap_or(0)
}

/// `sigma` equals the left endpoint of its interval.
pub fn is_vertex(p: &UnimodularPartition, sigma: &CirclePoint, a: usize) -> bool {
    match sigma {
        CirclePoint::Rational(t) => t == p.vertex(a),
        CirclePoint::Quadratic(_) => false,
    }
}

/// One step of the billiard map.
pub fn b_step(p: &UnimodularPartition, sigma: &CirclePoint) -> Result<CirclePoint> {
    let a = locate_interval(p, sigma);
    sigma.reflect(&p.refl3()[a])
}

/// Itinerary of a rational point until it lands on a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalOrbit {
    pub word: Vec<usize>,
    pub terminal: usize,
    pub points: Vec<PythTriple>,
}

impl RationalOrbit {
    pub fn symbolic(&self) -> SymbolicWord {
        SymbolicWord::terminating(self.word.clone(), self.terminal)
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .word
            .iter()
            .zip(&self.points)
            .map(|(a, t)| json!({"t": json_vec3(t.vec()), "interval": a}))
            .collect();
        let w = self.symbolic();
        json!({
            "steps": steps,
            "terminal": self.terminal,
            "terminal_vertex": json_vec3(self.points.last().expect("nonempty").vec()),
            "prefix": w.prefix_string(),
            "cycle": w.cycle_string(),
        })
    }
}

pub fn rational_orbit(p: &UnimodularPartition, t: &PythTriple, cap: usize) -> Result<RationalOrbit> {
    let mut word = Vec::new();
    let mut points = vec![t.clone()];
    let mut cur = CirclePoint::Rational(t.clone());
    loop {
        let a = locate_interval(p, &cur);
        if is_vertex(p, &cur, a) {
            return Ok(RationalOrbit { word, terminal: a, points });
        }
        if word.len() >= cap {
            return Err(Error::IterationCap(cap));
        }
        word.push(a);
        cur = cur.reflect(&p.refl3()[a])?;
        if let CirclePoint::Rational(t) = &cur {
            points.push(t.clone());
        }
    }
}

/// Third coordinates strictly decrease, except on steps through an interval
/// with `w3 = 0`, and two such steps are never adjacent.
pub fn check_descent(p: &UnimodularPartition, orbit: &RationalOrbit) -> bool {
    let mut prev_flat = false;
    for (k, &a) in orbit.word.iter().enumerate() {
        let (t, tn) = (orbit.points[k].t3(), orbit.points[k + 1].t3());
        if tn < t {
            prev_flat = false;
        } else if tn == t && p.covector(a).0[2].is_zero() && !prev_flat {
            prev_flat = true;
        } else {
            return false;
        }
    }
    true
}

/// Periodic coding of a quadratic carrier: the visited carriers, the
/// intervals of the `+` point and the eventually periodic words of both roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticOrbit {
    pub steps: Vec<(Vec3Z, usize)>,
    pub closing: Vec3Z,
    pub word_s: SymbolicWord,
    pub word_r: SymbolicWord,
}

impl QuadraticOrbit {
    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> =
            self.steps.iter().map(|(v, a)| json!({"v": json_vec3(v), "interval": a})).collect();
        json!({
            "steps": steps,
            "closing": json_vec3(&self.closing),
            "norm": json_bigint(&self.closing.norm()),
            "prefix": self.word_s.prefix_string(),
            "cycle": self.word_s.cycle_string(),
            "conjugate_prefix": self.word_r.prefix_string(),
            "conjugate_cycle": self.word_r.cycle_string(),
        })
    }
}

/// Iterates one root until its carrier repeats.
/// Visited carriers with their intervals, the first repeated carrier and
/// the index where the cycle starts.
type CarrierCycle = (Vec<(Vec3Z, usize)>, Vec3Z, usize);

fn carrier_cycle(p: &UnimodularPartition, start: &QuadPoint, cap: usize) -> Result<CarrierCycle> {
    let mut seen: HashMap<Vec3Z, usize> = HashMap::new();
    let mut steps = Vec::new();
    let mut cur = start.clone();
    loop {
        if let Some(&i) = seen.get(&cur.v) {
            return Ok((steps, cur.v, i));
        }
        if steps.len() >= cap {
            return Err(Error::IterationCap(cap));
        }
        let a = locate_interval(p, &CirclePoint::Quadratic(cur.clone()));
        seen.insert(cur.v.clone(), steps.len());
        steps.push((cur.v.clone(), a));
        cur = cur.reflect(&p.refl3()[a]);
    }
}

/// Symbolic words of the two roots carried by `v`. The word of the `-` root is
/// computed by its own iteration and must equal the conjugate of the `+` word.
pub fn quadratic_symbolic(p: &UnimodularPartition, v: &Vec3Z, cap: usize) -> Result<QuadraticOrbit> {
    let s = QuadPoint::new(v.clone(), Branch::Plus)?;
    let (steps, closing, i) = carrier_cycle(p, &s, cap)?;
    let letters: Vec<usize> = steps.iter().map(|(_, a)| *a).collect();
    let word_s = SymbolicWord::new(letters[..i].to_vec(), letters[i..].to_vec())?;

    let (rsteps, _, j) = carrier_cycle(p, &s.galois_conjugate(), cap)?;
    let rletters: Vec<usize> = rsteps.iter().map(|(_, a)| *a).collect();
    let word_r = SymbolicWord::new(rletters[..j].to_vec(), rletters[j..].to_vec())?;
    if word_r != word_s.conjugate() {
        return Err(Error::Internal(format!("conjugate root has word {word_r}, expected {}", word_s.conjugate())));
    }
    Ok(QuadraticOrbit { steps, closing, word_s, word_r })
}

/// A pair of distinct circle points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatExtPoint {
    pub sigma: CirclePoint,
    pub rho: CirclePoint,
}

impl NatExtPoint {
    pub fn new(sigma: CirclePoint, rho: CirclePoint) -> Result<NatExtPoint> {
        if sigma == rho {
            return Err(Error::EqualPoints(sigma.to_string()));
        }
        Ok(NatExtPoint { sigma, rho })
    }

    pub fn swap(&self) -> NatExtPoint {
        NatExtPoint { sigma: self.rho.clone(), rho: self.sigma.clone() }
    }

    /// Both points are irrational and lie in different intervals. Pairs with a
    /// rational coordinate are never tagged.
    pub fn in_domain(&self, p: &UnimodularPartition) -> bool {
        !self.sigma.is_rational()
            && !self.rho.is_rational()
            && locate_interval(p, &self.sigma) != locate_interval(p, &self.rho)
    }
}

/// Reflects both coordinates in the wall of the interval containing `sigma`.
pub fn natext_step(p: &UnimodularPartition, pt: &NatExtPoint) -> Result<NatExtPoint> {
    let a = locate_interval(p, &pt.sigma);
    let r = &p.refl3()[a];
    Ok(NatExtPoint { sigma: pt.sigma.reflect(r)?, rho: pt.rho.reflect(r)? })
}

/// Float version of the billiard map on normalized arguments.
pub struct FloatTable {
    args: Vec<f64>,
    refl: Vec<[[f64; 3]; 3]>,
}

impl FloatTable {
    pub fn new(p: &UnimodularPartition) -> FloatTable {
        FloatTable { args: p.arguments(), refl: p.refl3().iter().map(Mat3Z::to_f64).collect() }
    }

    pub fn size(&self) -> usize {
        self.args.len()
    }

    pub fn arguments(&self) -> &[f64] {
        &self.args
    }

    /// Interval index and offset `x - x_a` (mod 1) of the point `x`.
    pub fn locate(&self, x: f64) -> (usize, f64) {
        let m = self.args.len();
        for a in 0..m {
            let d = wrap01(x - self.args[a]);
            let len = arc_len(self.args[a], self.args[(a + 1) % m]);
            if d < len {
                return (a, d);
            }
        }
        // Rounding left x just short of a vertex.
        let a = (0..m)
            .min_by(|&i, &j| circ_dist(x, self.args[i]).total_cmp(&circ_dist(x, self.args[j])))
            .unwrap_or(0);
        (a, 0.0)
    }

    /// Applies reflection `a` to the point with argument `x`.
    pub fn reflect(&self, a: usize, x: f64) -> f64 {
        let t = x * std::f64::consts::TAU;
        let v = [t.cos(), t.sin(), 1.0];
        let r = &self.refl[a];
        let y: Vec<f64> = (0..3).map(|i| r[i][0] * v[0] + r[i][1] * v[1] + r[i][2] * v[2]).collect();
        wrap01(y[1].atan2(y[0]) / std::f64::consts::TAU)
    }

    pub fn step(&self, x: f64) -> (usize, f64) {
        let (a, _) = self.locate(x);
        (a, self.reflect(a, x))
    }
}

/// Length of the counterclockwise arc from `x` to `y`, in `(0, 1]`.
pub fn arc_len(x: f64, y: f64) -> f64 {
    let d = wrap01(y - x);
    if d == 0.0 {
        1.0
    } else {
        d
    }
}

pub fn circ_dist(x: f64, y: f64) -> f64 {
    let d = wrap01(x - y);
    d.min(1.0 - d)
}

/// Distance below which the density is reported as infinite.
pub const POLE_GUARD: f64 = 1e-9;

fn density_from_args(args: &[f64], x: f64) -> f64 {
    let m = args.len();
    let x = wrap01(x);
    if args.iter().any(|&xa| circ_dist(x, xa) < POLE_GUARD) {
        return f64::INFINITY;
    }
    for a in 0..m {
        let d = wrap01(x - args[a]);
        let len = arc_len(args[a], args[(a + 1) % m]);
        if d < len {
            return PI / (PI * d).tan() - PI / (PI * (d - len)).tan();
        }
    }
    f64::INFINITY
}

/// The invariant density at the normalized argument `x`; infinite within
/// [`POLE_GUARD`] of a vertex.
pub fn density_h(p: &UnimodularPartition, x: f64) -> f64 {
    density_from_args(&p.arguments(), x)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
    budget: &mut usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    if *budget < 2 {
        return Err(Error::IterationCap(0));
    }
    *budget -= 2;
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson_rec(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1, budget)?
        + simpson_rec(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1, budget)?)
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` with at most `max_evals`
/// function evaluations.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64, max_evals: usize) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut budget = max_evals.saturating_sub(3);
    let eps = rel_tol * whole.abs().max(f64::MIN_POSITIVE);
    simpson_rec(f, a, b, fa, fm, fb, whole, eps, 50, &mut budget)
        .map_err(|_| Error::InvalidParameter(format!("quadrature did not converge within {max_evals} evaluations")))
}

/// Measure of `[u, v]` and of its preimage under the billiard map, both
/// computed by quadrature of the invariant density.
pub fn measure_invariance_check(p: &UnimodularPartition, u: f64, v: f64, quad_points: usize) -> Result<(f64, f64)> {
    if !(0.0..1.0).contains(&u) || !(0.0..1.0).contains(&v) || v < u {
        return Err(Error::OutOfRange(format!("[{u},{v}]"), "[0,1)".into()));
    }
    if u == v {
        return Ok((0.0, 0.0));
    }
    let table = FloatTable::new(p);
    let args = table.arguments().to_vec();
    let (c, du) = table.locate(u);
    let len = arc_len(args[c], args[(c + 1) % args.len()]);
    if du + (v - u) >= len || du < POLE_GUARD {
        return Err(Error::OutOfRange(format!("[{u},{v}]"), "a single interval, away from its endpoints".into()));
    }
    let density = |x: f64| density_from_args(&args, x);
    let tol = 1e-11;
    let lhs = adaptive_simpson(&density, u, v, tol, quad_points)?;
    let mut rhs = 0.0;
    for b in (0..p.size()).filter(|&b| b != c) {
        // Reflections reverse orientation.
        let lo = table.reflect(b, v);
        let hi = table.reflect(b, u);
        let span = arc_len(lo, hi);
        rhs += adaptive_simpson(&density, lo, lo + span, tol, quad_points)?;
    }
    Ok((lhs, rhs))
}

/// Primitive carrier of the roots of a binary quadratic form.
pub fn carrier_from_form(q: &crate::lorentz::QuadForm) -> Vec3Z {
    q.to_vec().primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::partition::builtin;

    fn v(a: i64, b: i64, c: i64) -> Vec3Z {
        Vec3Z::from_i64(a, b, c)
    }

    fn pt(a: i64, b: i64, c: i64) -> PythTriple {
        PythTriple::new(a, b, c).unwrap()
    }

    const ORBIT: [(i64, i64, i64, usize); 7] = [
        (-651, -1995, 2096, 4),
        (-247, 199, -300, 5),
        (-45, 93, 8, 3),
        (-63, -129, 100, 5),
        (-5, 197, -168, 4),
        (111, 15, -44, 2),
        (-7, -119, -60, 0),
    ];

    #[test]
    fn locate_examples() {
        let p = builtin("example-7.5").unwrap();
        let s = CirclePoint::quadratic(v(-651, -1995, 2096), Branch::Plus).unwrap();
        assert_eq!(locate_interval(&p, &s), 4);
        let sq = builtin("square").unwrap();
        assert_eq!(locate_interval(&sq, &CirclePoint::Rational(pt(4, 3, 5))), 0);
        for a in 0..sq.size() {
            assert_eq!(locate_interval(&sq, &CirclePoint::Rational(sq.vertex(a).clone())), a);
        }
    }

    #[test]
    fn quadratic_point_value() {
        let q = QuadPoint::new(v(-651, -1995, 2096), Branch::Plus).unwrap();
        let w = q.stereo().unwrap();
        assert!((w.to_f64() + 0.13395).abs() < 1e-5);
        let expected = QuadSurd::new(
            Rational::new((-1302).into(), 8182.into()),
            Rational::new(1.into(), 8182.into()),
            &BigInt::from(42440),
        )
        .unwrap();
        assert_eq!(w, expected);
        let [x, y, z] = q.to_f64();
        assert!((x * x + y * y - z * z).abs() < 1e-6 * z * z);
    }

    #[test]
    fn b_step_examples() {
        let sq = builtin("square").unwrap();
        assert_eq!(b_step(&sq, &CirclePoint::Rational(pt(4, 3, 5))).unwrap(), CirclePoint::Rational(pt(0, -1, 1)));
        let p = builtin("example-7.5").unwrap();
        let s = CirclePoint::quadratic(v(-651, -1995, 2096), Branch::Plus).unwrap();
        match b_step(&p, &s).unwrap() {
            CirclePoint::Quadratic(q) => assert_eq!(q.carrier(), &v(-247, 199, -300)),
            _ => panic!("expected a quadratic point"),
        }
        for a in 0..p.size() {
            let t = CirclePoint::Rational(p.vertex(a).clone());
            assert_eq!(b_step(&p, &t).unwrap(), t);
        }
    }

    #[test]
    fn worked_orbit() {
        let p = builtin("example-7.5").unwrap();
        let o = quadratic_symbolic(&p, &v(-651, -1995, 2096), 1000).unwrap();
        let expected: Vec<(Vec3Z, usize)> = ORBIT.iter().map(|&(a, b, c, i)| (v(a, b, c), i)).collect();
        assert_eq!(o.steps, expected);
        assert_eq!(o.closing, v(-45, 93, 8));
        assert_eq!(o.word_s.to_string(), "45:35420");
        assert_eq!(o.word_r.to_string(), "45:02453");
        assert!(o.word_s.is_admissible(6));
    }

    #[test]
    fn rational_orbits() {
        let sq = builtin("square").unwrap();
        let o = rational_orbit(&sq, &pt(4, 3, 5), 100).unwrap();
        assert_eq!((o.word.clone(), o.terminal), (vec![0], 3));
        assert_eq!(o.symbolic().to_string(), "0:3");
        let o = rational_orbit(&sq, sq.vertex(2), 100).unwrap();
        assert_eq!((o.word.len(), o.terminal), (0, 2));
        let o = rational_orbit(&sq, &pt(3, 4, 5), 100).unwrap();
        assert!(check_descent(&sq, &o));
        let t3: Vec<_> = o.points.iter().map(|t| t.t3().clone()).collect();
        assert!(t3.windows(2).all(|w| w[1] < w[0]));
        assert!(o.symbolic().is_admissible(4));
    }

    #[test]
    fn descent_with_flat_interval() {
        // A half-circle interval has w3 = 0.
        let p = crate::partition::build_partition(vec![pt(1, 0, 1), pt(0, 1, 1), pt(-1, 0, 1)]).unwrap();
        assert!(p.covectors().iter().any(|w| w.0[2].is_zero()));
        for t in [pt(-3, -4, 5), pt(-5, -12, 13), pt(20, -21, 29), pt(-8, 15, 17)] {
            let o = rational_orbit(&p, &t, 1000).unwrap();
            assert!(check_descent(&p, &o), "{t}");
            assert!(o.symbolic().is_admissible(3));
        }
    }

    #[test]
    fn natext_worked_example() {
        let p = builtin("example-7.5").unwrap();
        let s = CirclePoint::quadratic(v(-651, -1995, 2096), Branch::Plus).unwrap();
        let r = CirclePoint::quadratic(v(-651, -1995, 2096), Branch::Minus).unwrap();
        let x0 = NatExtPoint::new(s, r).unwrap();
        assert_eq!(locate_interval(&p, &x0.sigma), 4);
        assert_eq!(locate_interval(&p, &x0.rho), 4);
        assert!(!x0.in_domain(&p));
        let x1 = natext_step(&p, &x0).unwrap();
        assert_eq!(locate_interval(&p, &x1.sigma), 5);
        assert_eq!(locate_interval(&p, &x1.rho), 5);
        let x2 = natext_step(&p, &x1).unwrap();
        assert_eq!(locate_interval(&p, &x2.sigma), 3);
        assert_eq!(locate_interval(&p, &x2.rho), 0);
        assert!(x2.in_domain(&p));
        let x3 = natext_step(&p, &x2).unwrap();
        assert_eq!(natext_step(&p, &x3.swap()).unwrap().swap(), x2);
    }

    #[test]
    fn density_values() {
        let sq = builtin("square").unwrap();
        let h = density_h(&sq, 0.125);
        assert!((h - 2.0 * PI / (PI / 8.0).tan()).abs() < 1e-12);
        assert!((h - 15.168_951_183).abs() < 1e-8);
        assert!((density_h(&sq, 0.375) - h).abs() < 1e-12);
        assert!(density_h(&sq, 0.25).is_infinite());
        let p = builtin("example-5.3").unwrap();
        for k in 1..100 {
            let x = k as f64 / 100.0 + 0.003;
            assert!(density_h(&p, x) > 0.0);
        }
    }

    #[test]
    fn measure_examples() {
        let sq = builtin("square").unwrap();
        let (l, r) = measure_invariance_check(&sq, 0.05, 0.20, 10_000).unwrap();
        assert!((l - r).abs() / l < 1e-6, "{l} {r}");
        assert_eq!(measure_invariance_check(&sq, 0.1, 0.1, 100).unwrap(), (0.0, 0.0));
        let p = builtin("example-5.3").unwrap();
        let (l, r) = measure_invariance_check(&p, 0.30, 0.40, 10_000).unwrap();
        assert!((l - r).abs() / l < 1e-6, "{l} {r}");
        assert!(measure_invariance_check(&sq, 0.2, 0.3, 10_000).is_err());
    }

    #[test]
    fn float_table_agrees_with_exact_step() {
        let p = builtin("example-5.3").unwrap();
        let ft = FloatTable::new(&p);
        let t = CirclePoint::Rational(pt(-20, 21, 29));
        let (a, y) = ft.step(t.argument());
        assert_eq!(a, locate_interval(&p, &t));
        let exact = b_step(&p, &t).unwrap().argument();
        assert!(circ_dist(y, exact) < 1e-12);
    }
}
