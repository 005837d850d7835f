//! Randomized invariant suites over a partition.

use std::f64::consts::TAU;

use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::billiard::{b_step, check_descent, measure_invariance_check, quadratic_symbolic, rational_orbit, CirclePoint};
use crate::lorentz::{bold_rep_z, cayley_conj, named, Mat3Z, Vec3Z};
use crate::minkowski::{conjugacy_residual, residual_bound};
use crate::partition::{reduce_unimodular, Parity, UnimodularPartition};
use crate::sampling::{random_carrier, random_subinterval, random_triple};

/// Orbit length cap used by the suites.
pub const ORBIT_CAP: usize = 100_000;
/// Depth of the conjugacy residual suite.
pub const RESIDUAL_DEPTH: usize = 25;
/// Relative tolerance of the measure-invariance suite.
pub const MEASURE_TOL: f64 = 1e-6;
/// Number of intervals in the measure-invariance suite.
pub const MEASURE_INTERVALS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub max_error: Option<f64>,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, cases: 0, failures: 0, max_error: None, first_failure: None }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn error(&mut self, e: f64) {
        self.max_error = Some(self.max_error.map_or(e, |x| x.max(e)));
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "passed": self.passed(),
            "cases": self.cases,
            "failures": self.failures,
            "max_error": self.max_error,
            "first_failure": self.first_failure,
        })
    }
}

/// `⟨w_{a-1}, w_a⟩ = -1` and `w_{a-1} + w_a = q_a t_a` with `q_a > 0`.
pub fn suite_lemma_identity(p: &UnimodularPartition) -> SuiteResult {
    let mut r = SuiteResult::new("lemma-identity");
    let m = p.size();
    for a in 0..m {
        let prev = p.covector((a + m - 1) % m);
        let cur = p.covector(a);
        r.check(prev.inner(cur) == -num_bigint::BigInt::one(), || format!("<w_{}, w_{a}> != -1", (a + m - 1) % m));
        let q = p.vertex_multiplicity(a);
        r.check(matches!(&q, Ok(q) if q.is_positive()), || format!("w_{{a-1}} + w_a is not a positive multiple of t_{a}"));
    }
    r
}

pub fn suite_arclength(p: &UnimodularPartition) -> SuiteResult {
    let mut r = SuiteResult::new("arclength-sum");
    let e = (p.arclength_sum() - TAU).abs();
    r.error(e);
    r.check(e < 1e-12, || format!("arclength sum off by {e:e}"));
    r
}

/// `R^2 = I`, `R w = -w`, `R` in the orthochronous Lorentz group.
pub fn suite_reflections(p: &UnimodularPartition) -> SuiteResult {
    let mut r = SuiteResult::new("reflections");
    for (a, m) in p.refl3().iter().enumerate() {
        let w = p.covector(a);
        r.check(m.mul(m) == Mat3Z::identity(), || format!("R_{a} is not an involution"));
        r.check(m.apply(w) == -w.clone(), || format!("R_{a} does not negate w_{a}"));
        r.check(m.is_orthochronous_orthogonal(), || format!("R_{a} is not orthochronous Lorentz"));
    }
    r
}

/// Disc and half-plane reflections agree through the Cayley transform and
/// the Lorentz representation.
pub fn suite_su11_agreement(p: &UnimodularPartition) -> SuiteResult {
    let mut r = SuiteResult::new("su11-lorentz-agreement");
    for a in 0..p.size() {
        let s = &p.sigma2()[a];
        let via = cayley_conj(&p.refl2()[a]);
        r.check(matches!(&via, Ok(c) if c.projectively_eq(s)), || format!("Cayley image of refl2[{a}] differs from sigma2[{a}]"));
        let b = bold_rep_z(s);
        let r3 = &p.refl3()[a];
        r.check(matches!(&b, Ok(b) if b == r3 || b.neg() == *r3), || format!("bold(sigma2[{a}]) differs from refl3[{a}]"));
    }
    r
}

/// `-bold F`, `-bold P`, `-bold G` preserve the parity of `w3`, and the
/// reduction lands on a base of the same parity.
pub fn suite_parity(p: &UnimodularPartition, rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    use rand::Rng;
    let mut r = SuiteResult::new("parity-preservation");
    let gens = [named::bold_f().neg(), named::bold_p().neg(), named::bold_g().neg()];
    for _ in 0..cases {
        let mut w: Vec3Z = p.covector(rng.gen_range(0..p.size())).clone();
        let steps = rng.gen_range(0..8);
        for _ in 0..steps {
            let g = &gens[rng.gen_range(0..3)];
            let next = g.apply(&w);
            let ok = Parity::of(&next.0[2]) == Parity::of(&w.0[2]);
            r.check(ok, || format!("parity changed: {w} -> {next}"));
            w = next;
        }
        match reduce_unimodular(&w) {
            Ok(red) => {
                let ok = Parity::of(&red.base.0[2]) == Parity::of(&w.0[2]) && red.m.apply(&w) == red.base;
                r.check(ok, || format!("reduction of {w} landed on {}", red.base));
            }
            Err(e) => r.check(false, || format!("reduction of {w} failed: {e}")),
        }
    }
    r
}

/// Vertices are fixed by the billiard map.
pub fn suite_fixed_points(p: &UnimodularPartition) -> SuiteResult {
    let mut r = SuiteResult::new("fixed-points");
    for t in p.vertices() {
        let c = CirclePoint::Rational(t.clone());
        r.check(matches!(b_step(p, &c), Ok(x) if x == c), || format!("vertex {t} moved"));
    }
    r
}

/// Rational orbits terminate with descending third coordinates, and their
/// words are admissible.
pub fn suite_descent(p: &UnimodularPartition, rng: &mut ChaCha8Rng, cases: usize) -> (SuiteResult, SuiteResult) {
    let mut d = SuiteResult::new("descent");
    let mut adm = SuiteResult::new("admissibility");
    for _ in 0..cases {
        let t = random_triple(rng, 300);
        match rational_orbit(p, &t, ORBIT_CAP) {
            Ok(o) => {
                d.check(check_descent(p, &o), || format!("descent fails from {t}"));
                let w = o.symbolic();
                adm.check(w.is_admissible(p.size()), || format!("word {w} of {t} is not admissible"));
            }
            Err(e) => d.check(false, || format!("orbit of {t}: {e}")),
        }
    }
    (d, adm)
}

/// The conjugate root has the reversed cycle and the same prefix; both
/// words are admissible and the carrier norm is preserved.
pub fn suite_conjugate_reversal(p: &UnimodularPartition, rng: &mut ChaCha8Rng, cases: usize) -> (SuiteResult, SuiteResult) {
    let mut rev = SuiteResult::new("conjugate-reversal");
    let mut adm = SuiteResult::new("admissibility-quadratic");
    for _ in 0..cases {
        let v = random_carrier(rng, 40);
        match quadratic_symbolic(p, &v, ORBIT_CAP) {
            Ok(o) => {
                let mut cyc = o.word_s.cycle().to_vec();
                cyc.reverse();
                let same = o.word_r.prefix() == o.word_s.prefix()
                    && crate::symbolic::SymbolicWord::new(o.word_s.prefix().to_vec(), cyc).ok() == Some(o.word_r.clone());
                let norms = o.steps.iter().all(|(u, _)| u.norm() == v.norm()) && o.closing.norm() == v.norm();
                rev.check(same && norms, || format!("carrier {v}: {} vs {}", o.word_s, o.word_r));
                let ok = o.word_s.is_admissible(p.size()) && o.word_r.is_admissible(p.size());
                adm.check(ok, || format!("carrier {v}: inadmissible word {}", o.word_s));
            }
            Err(e) => rev.check(false, || format!("carrier {v}: {e}")),
        }
    }
    (rev, adm)
}

pub fn suite_measure(p: &UnimodularPartition, rng: &mut ChaCha8Rng, intervals: usize) -> SuiteResult {
    let mut r = SuiteResult::new("measure-invariance");
    for _ in 0..intervals {
        let (u, v) = random_subinterval(rng, p, 0.05);
        match measure_invariance_check(p, u, v, 2_000_000) {
            Ok((lhs, rhs)) => {
                let e = (lhs - rhs).abs() / lhs;
                r.error(e);
                r.check(e < MEASURE_TOL, || format!("[{u},{v}]: relative error {e:e}"));
            }
            Err(e) => r.check(false, || format!("[{u},{v}]: {e}")),
        }
    }
    r
}

pub fn suite_residual(p: &UnimodularPartition, seed: u64, samples: usize) -> SuiteResult {
    let mut r = SuiteResult::new("conjugacy-residual");
    let bound = residual_bound(p.size(), RESIDUAL_DEPTH);
    match conjugacy_residual(p, samples, RESIDUAL_DEPTH, seed) {
        Ok(e) => {
            r.error(e);
            r.check(e <= bound && (p.size() < 4 || e < 1e-8), || format!("residual {e:e} exceeds {bound:e}"));
        }
        Err(e) => r.check(false, || e.to_string()),
    }
    r
}

/// The suites that depend only on the partition structure.
pub fn structural_suites(p: &UnimodularPartition, rng: &mut ChaCha8Rng, cases: usize) -> Vec<SuiteResult> {
    vec![
        suite_lemma_identity(p),
        suite_arclength(p),
        suite_reflections(p),
        suite_su11_agreement(p),
        suite_parity(p, rng, cases),
        suite_fixed_points(p),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub seed: u64,
    pub cases: usize,
    pub m: usize,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "cases": self.cases,
            "m": self.m,
            "passed": self.passed(),
            "suites": self.suites.iter().map(SuiteResult::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Runs every suite with `cases` random cases each (the measure suite uses
/// at most [`MEASURE_INTERVALS`] intervals).
pub fn run_all(p: &UnimodularPartition, seed: u64, cases: usize) -> VerifyReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = structural_suites(p, &mut rng, cases);
    let (d, a) = suite_descent(p, &mut rng, cases);
    suites.push(d);
    suites.push(a);
    let (rv, aq) = suite_conjugate_reversal(p, &mut rng, cases);
    suites.push(rv);
    suites.push(aq);
    suites.push(suite_measure(p, &mut rng, cases.min(MEASURE_INTERVALS)));
    suites.push(suite_residual(p, seed, cases));
    VerifyReport { seed, cases, m: p.size(), suites }
}
