//! Pythagorean triples, unimodular intervals and partitions of the circle.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat, rat_int, rational_to_f64, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::lorentz::{
    bold_rep, cayley_conj, desitter_to_pair, lorentz_inner, reflection_matrix, stereo, Mat2, Mat2Q, Mat2Zi, Mat3Z,
    Vec3, Vec3Z, P1,
};

/// Primitive pythagorean triple with positive hypotenuse, viewed as the
/// rational point `(t1 + i t2) / t3` of the unit circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PythTriple(Vec3Z);

impl PythTriple {
    pub fn new(t1: i64, t2: i64, t3: i64) -> Result<PythTriple> {
        normalize_triple(&Vec3Z::from_i64(t1, t2, t3))
    }

    pub fn vec(&self) -> &Vec3Z {
        &self.0
    }

    pub fn t1(&self) -> &BigInt {
        &self.0 .0[0]
    }

    pub fn t2(&self) -> &BigInt {
        &self.0 .0[1]
    }

    pub fn t3(&self) -> &BigInt {
        &self.0 .0[2]
    }

    pub fn to_gaussian(&self) -> GaussianRational {
        let d = self.t3().clone();
        GaussianRational::new(Rational::new(self.t1().clone(), d.clone()), Rational::new(self.t2().clone(), d))
    }

    pub fn from_gaussian(z: &GaussianRational) -> Result<PythTriple> {
        if z.norm() != Rational::one() {
            return Err(Error::NotIsotropic(z.to_string()));
        }
        let l = z.re.denom().lcm(z.im.denom());
        let v = Vec3([
            (&z.re * rat_int(l.clone())).to_integer(),
            (&z.im * rat_int(l.clone())).to_integer(),
            l,
        ]);
        normalize_triple(&v)
    }

    /// Point of the projective line under stereographic projection.
    pub fn stereo(&self) -> P1 {
        stereo(&self.0)
    }

    /// Normalized argument in `[0, 1)`.
    pub fn argument(&self) -> f64 {
        let x = rational_to_f64(&rat_int(self.t1().clone()));
        let y = rational_to_f64(&rat_int(self.t2().clone()));
        let a = y.atan2(x) / std::f64::consts::TAU;
        if a < 0.0 {
            (a + 1.0).min(1.0 - f64::EPSILON)
        } else {
            a
        }
    }

    /// Rational point whose normalized argument is within about one ulp of `x`.
    pub fn near_argument(x: f64) -> Result<PythTriple> {
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!("argument {x} is not finite")));
        }
        let x = x - x.floor();
        let k = (4.0 * x).round();
        let r = x - k / 4.0;
        let s = crate::arith::rational_from_f64((std::f64::consts::PI * r).tan())?;
        let (p, q) = (s.numer().clone(), s.denom().clone());
        let mut t = Vec3([&q * &q - &p * &p, BigInt::from(2) * &p * &q, &q * &q + &p * &p]);
        for _ in 0..(k as i64).rem_euclid(4) {
            let [a, b, c] = t.0;
            t = Vec3([-b, a, c]);
        }
        normalize_triple(&t)
    }

    fn half(&self) -> u8 {
        if self.t2().is_positive() || (self.t2().is_zero() && self.t1().is_positive()) {
            0
        } else {
            1
        }
    }

    /// Compares normalized arguments exactly.
    pub fn angle_cmp(&self, o: &PythTriple) -> Ordering {
        match self.half().cmp(&o.half()) {
            Ordering::Equal => {
                // Within a half-plane, a positive cross product means self comes first.
                let cross = self.t1() * o.t2() - self.t2() * o.t1();
                BigInt::zero().cmp(&cross)
            }
            other => other,
        }
    }
}

impl fmt::Display for PythTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Scales a nonzero isotropic vector to a primitive triple with `t3 > 0`.
pub fn normalize_triple(x: &Vec3Z) -> Result<PythTriple> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !x.norm().is_zero() {
        return Err(Error::NotIsotropic(x.to_string()));
    }
    let mut v = x.primitive();
    if v.0[2].is_negative() {
        v = -v;
    }
    Ok(PythTriple(v))
}

/// Euclid's parametrization `(a^2 - b^2, 2ab, a^2 + b^2)`, made primitive.
pub fn euclid_param(a: &BigInt, b: &BigInt) -> Result<PythTriple> {
    if a.is_zero() || b.is_zero() || !a.gcd(b).is_one() {
        return Err(Error::NonCoprime(a.to_string(), b.to_string()));
    }
    let v = Vec3([a * a - b * b, BigInt::from(2) * a * b, a * a + b * b]);
    normalize_triple(&v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: &BigInt) -> Parity {
        if n.is_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Arc from `t` counterclockwise to `t_next` with integral covector `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularInterval {
    pub t: PythTriple,
    pub t_next: PythTriple,
    pub w: Vec3Z,
    pub parity: Parity,
}

impl UnimodularInterval {
    /// Length of the arc in radians.
    pub fn arclength(&self) -> f64 {
        let w3 = rational_to_f64(&rat_int(self.w.0[2].clone()));
        2.0 * 1.0f64.atan2(w3)
    }
}

/// Covector `(L t' x L t) / <t', t>` of the arc `[t, t']`, over the rationals.
pub fn interval_covector_q(t: &PythTriple, t_next: &PythTriple) -> Result<Vec3<Rational>> {
    if t == t_next {
        return Err(Error::EqualPoints(t.to_string()));
    }
    let c = t_next.vec().lower().cross(&t.vec().lower());
    let k = rat_int(lorentz_inner(t_next.vec(), t.vec()));
    Ok(c.map(|x| rat_int(x.clone()) / &k))
}

/// Covector of a unimodular arc; fails unless `<t, t'>` is -1 or -2.
pub fn interval_covector(t: &PythTriple, t_next: &PythTriple) -> Result<UnimodularInterval> {
    if t == t_next {
        return Err(Error::EqualPoints(t.to_string()));
    }
    let ip = lorentz_inner(t.vec(), t_next.vec());
    if ip != BigInt::from(-1) && ip != BigInt::from(-2) {
        return Err(Error::NotUnimodularPair(t.to_string(), t_next.to_string(), ip.to_string()));
    }
    let c = t_next.vec().lower().cross(&t.vec().lower());
    let w = c.map(|x| x / &ip);
    let parity = Parity::of(&w.0[2]);
    Ok(UnimodularInterval { t: t.clone(), t_next: t_next.clone(), w, parity })
}

/// The reflection of a unimodular arc acting on the disc,
/// `(θ - θ')^-1 [[-θ-θ', 2θθ'], [-2, θ+θ']]`.
pub fn reflection_su11(theta: &PythTriple, theta_next: &PythTriple) -> Result<Mat2Zi> {
    interval_covector(theta, theta_next)?;
    let a = theta.to_gaussian();
    let b = theta_next.to_gaussian();
    let k = (a.clone() - b.clone()).inv()?;
    let two = GaussianRational::from_ints(2, 0);
    let m = Mat2([
        [-(a.clone() + b.clone()), two.clone() * a.clone() * b.clone()],
        [-two, a + b],
    ])
    .scale(&k);
    if !m.is_gaussian_integral() {
        return Err(Error::Internal(format!("reflection of [{theta}, {theta_next}] is not integral")));
    }
    Ok(m)
}

/// Counterclockwise cyclically ordered triples with unimodular gaps, together
/// with the data derived from each gap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularPartition {
    vertices: Vec<PythTriple>,
    intervals: Vec<UnimodularInterval>,
    refl3: Vec<Mat3Z>,
    refl2: Vec<Mat2Zi>,
    sigma2: Vec<Mat2Q>,
}

/// Checks that the vertices are distinct and in strict counterclockwise
/// cyclic order.
pub fn check_cyclic_order(vertices: &[PythTriple]) -> Result<()> {
    let mut seen = HashSet::new();
    for (i, v) in vertices.iter().enumerate() {
        if !seen.insert(v) {
            return Err(Error::DuplicateVertex(i));
        }
    }
    let m = vertices.len();
    let mut descents = 0;
    for i in 0..m {
        let j = (i + 1) % m;
        if vertices[j].angle_cmp(&vertices[i]) == Ordering::Less {
            descents += 1;
            if descents > 1 {
                return Err(Error::CyclicOrder(j));
            }
        }
    }
    if descents != 1 {
        return Err(Error::CyclicOrder(0));
    }
    Ok(())
}

impl UnimodularPartition {
    pub fn new(vertices: Vec<PythTriple>) -> Result<UnimodularPartition> {
        build_partition(vertices)
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[PythTriple] {
        &self.vertices
    }

    pub fn vertex(&self, a: usize) -> &PythTriple {
        &self.vertices[a % self.size()]
    }

    pub fn intervals(&self) -> &[UnimodularInterval] {
        &self.intervals
    }

    pub fn covector(&self, a: usize) -> &Vec3Z {
        &self.intervals[a % self.size()].w
    }

    pub fn covectors(&self) -> Vec<Vec3Z> {
        self.intervals.iter().map(|i| i.w.clone()).collect()
    }

    /// Lorentz reflections `R_{w_a}`.
    pub fn refl3(&self) -> &[Mat3Z] {
        &self.refl3
    }

    /// Reflections acting on the disc, as given by the closed form.
    pub fn refl2(&self) -> &[Mat2Zi] {
        &self.refl2
    }

    /// Reflections acting on the upper half-plane, normalized representatives.
    pub fn sigma2(&self) -> &[Mat2Q] {
        &self.sigma2
    }

    /// Normalized arguments of the vertices.
    pub fn arguments(&self) -> Vec<f64> {
        self.vertices.iter().map(PythTriple::argument).collect()
    }

    /// Sum of the arc lengths of all intervals (radians).
    pub fn arclength_sum(&self) -> f64 {
        self.intervals.iter().map(UnimodularInterval::arclength).sum()
    }

    /// The positive integer `q_a` with `w_{a-1} + w_a = q_a t_a`.
    pub fn vertex_multiplicity(&self, a: usize) -> Result<BigInt> {
        let m = self.size();
        let s = self.covector((a + m - 1) % m).clone() + self.covector(a).clone();
        let t = self.vertex(a).vec();
        let q = &s.0[2] / t.0[2].clone();
        if t.scale(&q) != s || !q.is_positive() {
            return Err(Error::Internal(format!("w_(a-1) + w_a = {s} is not a positive multiple of {t}")));
        }
        Ok(q)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<String> =
            self.vertices.iter().map(|v| format!("[{},{},{}]", v.t1(), v.t2(), v.t3())).collect();
        format!("{{\"vertices\":[{}]}}", rows.join(","))
    }
}

/// Validates the vertices and precomputes the covectors and reflections.
pub fn build_partition(vertices: Vec<PythTriple>) -> Result<UnimodularPartition> {
    let m = vertices.len();
    if m < 3 {
        return Err(Error::TooFewVertices(m));
    }
    check_cyclic_order(&vertices)?;
    let mut intervals = Vec::with_capacity(m);
    let mut refl3 = Vec::with_capacity(m);
    let mut refl2 = Vec::with_capacity(m);
    let mut sigma2 = Vec::with_capacity(m);
    for a in 0..m {
        let (t, tn) = (&vertices[a], &vertices[(a + 1) % m]);
        let gap = |e: Error| Error::NonUnimodularGap { index: a, source: Box::new(e) };
        let iv = interval_covector(t, tn).map_err(gap)?;
        let r3 = reflection_matrix(&iv.w).map_err(gap)?;
        let r2 = reflection_su11(t, tn).map_err(gap)?;
        let s2 = cayley_conj(&r2)?.normalized();
        intervals.push(iv);
        refl3.push(r3);
        refl2.push(r2);
        sigma2.push(s2);
    }
    Ok(UnimodularPartition { vertices, intervals, refl3, refl2, sigma2 })
}

pub const BUILTIN_NAMES: [&str; 3] = ["square", "example-5.3", "example-7.5"];

/// Built-in partitions by name.
pub fn builtin(name: &str) -> Result<UnimodularPartition> {
    let raw: &[(i64, i64, i64)] = match name {
        "square" => &[(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)],
        "example-5.3" => &[(1, 0, 1), (12, 5, 13), (4, 3, 5), (0, 1, 1), (0, -1, 1), (4, -3, 5)],
        "example-7.5" => &[(1, 0, 1), (3, 4, 5), (0, 1, 1), (-1, 0, 1), (-4, -3, 5), (0, -1, 1)],
        _ => return Err(Error::UnknownPartition(name.to_string())),
    };
    let vertices = raw.iter().map(|&(a, b, c)| PythTriple::new(a, b, c)).collect::<Result<Vec<_>>>()?;
    build_partition(vertices)
}

fn json_int(v: &serde_json::Value) -> Result<BigInt> {
    match v {
        serde_json::Value::Number(n) => {
            n.to_string().parse::<BigInt>().map_err(|_| Error::Parse(format!("expected an integer, got {n}")))
        }
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

/// Parses `{"vertices": [[t1,t2,t3], ...]}`, normalizing each triple.
pub fn partition_from_json(text: &str) -> Result<UnimodularPartition> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let rows = value
        .get("vertices")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Error::Parse("missing \"vertices\" array".into()))?;
    let mut vertices = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .filter(|r| r.len() == 3)
            .ok_or_else(|| Error::Parse(format!("vertex {i} is not a list of three integers")))?;
        let v = Vec3([json_int(&entries[0])?, json_int(&entries[1])?, json_int(&entries[2])?]);
        vertices.push(normalize_triple(&v)?);
    }
    build_partition(vertices)
}

/// A builtin name or a path to a partition JSON file.
pub fn load_partition(source: &str) -> Result<UnimodularPartition> {
    if BUILTIN_NAMES.contains(&source) {
        return builtin(source);
    }
    let text = std::fs::read_to_string(source).map_err(|e| Error::Io(format!("{source}: {e}")))?;
    partition_from_json(&text)
}

/// The three pieces of the Romik map on `[0,1/3)`, `[1/3,1/2)` and `[1/2,1]`.
pub fn romik_pieces() -> [Mat2Q; 3] {
    [Mat2Q::from_i64(1, 0, -2, 1), Mat2Q::from_i64(-2, 1, 1, 0), Mat2Q::from_i64(2, -1, 1, 0)]
}

/// Piece index of the Romik map at `q`.
pub fn romik_piece(q: &Rational) -> Result<usize> {
    if q.is_negative() || *q > Rational::one() {
        return Err(Error::OutOfRange(q.to_string(), "[0,1]".into()));
    }
    Ok(if *q < rat(1, 3) {
        0
    } else if *q < rat(1, 2) {
        1
    } else {
        2
    })
}

pub fn romik_map(q: &Rational) -> Result<Rational> {
    let piece = &romik_pieces()[romik_piece(q)?];
    match piece.act(&P1::Finite(q.clone())) {
        P1::Finite(x) => Ok(x),
        P1::Infinity => Err(Error::Internal("romik map hit infinity".into())),
    }
}

/// Matrices used to finish a reduction.
fn fp_power(k: &BigInt) -> Mat2Q {
    let one = BigInt::one();
    let m = Mat2([[&one - k, k.clone()], [-k.clone(), &one + k]]);
    m.map(|x| rat_int(x.clone()))
}

fn pj_power(j: &BigInt) -> Mat2Q {
    Mat2([[BigInt::one(), BigInt::from(2) * j], [BigInt::zero(), BigInt::one()]]).map(|x| rat_int(x.clone()))
}

fn jpjf_power(j: &BigInt) -> Mat2Q {
    let one = BigInt::one();
    Mat2([[&one + j, j.clone()], [-j.clone(), &one - j]]).map(|x| rat_int(x.clone()))
}

/// Base covectors of the two parity orbits: the even pair `(1,0,0)`,
/// `(0,1,0)` and the odd pair `(1,1,1)`, `(-1,1,1)`.
pub fn base_covectors() -> [Vec3Z; 4] {
    [Vec3Z::from_i64(1, 0, 0), Vec3Z::from_i64(1, 1, 1), Vec3Z::from_i64(0, 1, 0), Vec3Z::from_i64(-1, 1, 1)]
}

/// Result of reducing a unimodular covector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Element of the integer orientation-preserving Lorentz group with
    /// `m * w = base`.
    pub m: Mat3Z,
    pub base: Vec3Z,
    /// A 2x2 matrix of determinant one whose image is `m`.
    pub lightface: Mat2Q,
}

pub const REDUCTION_CAP: usize = 100_000;

/// Moves a unimodular covector to one of the four base covectors.
pub fn reduce_unimodular(w: &Vec3Z) -> Result<Reduction> {
    let n = w.norm();
    if !n.is_one() {
        return Err(Error::NonPositiveNorm(w.to_string(), n.to_string()));
    }
    let (mut omega, mut alpha) = desitter_to_pair(&w.to_rational())?;
    let mut acc = Mat2Q::identity();
    let apply = |g: &Mat2Q, omega: &mut P1, alpha: &mut P1, acc: &mut Mat2Q| {
        *omega = g.act(omega);
        *alpha = g.act(alpha);
        *acc = g.mul(acc);
    };

    if !omega.is_infinite() {
        let x = omega.finite().cloned().unwrap_or_default();
        // Translate into [0, 1] along the parabolic subgroup fixing 1.
        let k = if x == Rational::one() {
            BigInt::zero()
        } else {
            let u = Rational::one() / (x - Rational::one());
            (u + Rational::one()).ceil().to_integer()
        };
        apply(&fp_power(&k), &mut omega, &mut alpha, &mut acc);
        let pieces = romik_pieces();
        let mut steps = 0;
        loop {
            let x = omega.finite().cloned().ok_or_else(|| Error::Internal("omega left [0,1]".into()))?;
            if x.is_zero() || x.is_one() {
                break;
            }
            steps += 1;
            if steps > REDUCTION_CAP {
                return Err(Error::IterationCap(REDUCTION_CAP));
            }
            let piece = pieces[romik_piece(&x)?].clone();
            apply(&piece, &mut omega, &mut alpha, &mut acc);
        }
        apply(&Mat2Q::from_i64(0, 1, -1, 0), &mut omega, &mut alpha, &mut acc);
        if acc.det() != Rational::one() {
            let fix = if omega.is_infinite() { crate::lorentz::named::j() } else { crate::lorentz::named::f() };
            apply(&fix, &mut omega, &mut alpha, &mut acc);
        }
    }

    if omega.is_infinite() {
        let a = alpha.finite().cloned().ok_or_else(|| Error::Internal("degenerate pair".into()))?;
        let j = -(a / rat(2, 1)).floor().to_integer();
        apply(&pj_power(&j), &mut omega, &mut alpha, &mut acc);
    } else if omega == P1::int(-1) {
        let j = match &alpha {
            P1::Infinity => BigInt::zero(),
            P1::Finite(a) => (Rational::one() / (a + Rational::one())).floor().to_integer(),
        };
        apply(&jpjf_power(&j), &mut omega, &mut alpha, &mut acc);
    } else {
        return Err(Error::Internal(format!("unexpected endpoint {omega}")));
    }

    let m = bold_rep(&acc)?.to_integer().ok_or_else(|| Error::Internal("reduction matrix not integral".into()))?;
    let base = m.apply(w);
    if !base_covectors().contains(&base) || m.det() != BigInt::one() || !m.0[2][2].is_positive() {
        return Err(Error::Internal(format!("reduction of {w} ended at {base}")));
    }
    Ok(Reduction { m, base, lightface: acc })
}

/// Canonical interior point of the arc with base covector `base`.
pub fn base_midpoint(base: &Vec3Z) -> Option<Vec3Z> {
    let bases = base_covectors();
    let mids = [
        Vec3Z::from_i64(1, 0, 1),
        Vec3Z::from_i64(3, 4, 5),
        Vec3Z::from_i64(0, 1, 1),
        Vec3Z::from_i64(-4, 3, 5),
    ];
    bases.iter().position(|b| b == base).map(|i| mids[i].clone())
}

/// Inserts one new vertex into interval `a`, keeping all gaps unimodular.
pub fn split_interval(p: &UnimodularPartition, a: usize) -> Result<UnimodularPartition> {
    let m = p.size();
    if a >= m {
        return Err(Error::IndexOutOfRange(a, m));
    }
    let red = reduce_unimodular(p.covector(a)).map_err(|e| Error::Internal(format!("reduction failed: {e}")))?;
    let mid = base_midpoint(&red.base).ok_or_else(|| Error::Internal("unknown base".into()))?;
    let t = normalize_triple(&red.m.orthogonal_inverse().apply(&mid))?;
    let mut vertices = p.vertices().to_vec();
    vertices.insert(a + 1, t);
    build_partition(vertices).map_err(|e| Error::Internal(format!("split produced an invalid partition: {e}")))
}
