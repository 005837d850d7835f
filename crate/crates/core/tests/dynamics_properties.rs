//! Property tests for partitions, billiard maps, `Φ` and the spectral bounds.

use billiards::billiard::{
    density_h, locate_interval, natext_step, quadratic_symbolic, rational_orbit, Branch, CirclePoint, NatExtPoint,
    QuadPoint,
};
use billiards::lorentz::{bold_rep, named, Mat2Q};
use billiards::minkowski::{
    circle_distance, d_func, error_bound, phi_exact, phi_lift, phi_of_word, phi_truncated_rational, t_map,
};
use billiards::partition::{build_partition, reduce_unimodular, UnimodularPartition};
use billiards::sampling::{random_carrier, random_partition, random_partition_of_size, random_triple};
use billiards::spectral::{jsr_bounds, mean_free_path, sigma_from_partition, CycleWord, ReflectionFamily};
use billiards::symbolic::SymbolicWord;
use nalgebra::Matrix3;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn partition(seed: u64, max_m: usize) -> UnimodularPartition {
    random_partition(&mut ChaCha8Rng::seed_from_u64(seed), max_m).unwrap()
}

fn generator() -> impl Strategy<Value = Mat2Q> {
    prop_oneof![Just(named::j()), Just(named::f()), Just(named::p())]
}

fn product(w: &[Mat2Q]) -> Mat2Q {
    w.iter().fold(Mat2Q::identity(), |acc, m| acc.mul(m))
}

/// Letters in `0..m` with no two neighbours equal.
fn reduced_letters(m: usize, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..m, len).prop_map(|mut v| {
        v.dedup();
        v
    })
}

/// Admissible eventually periodic word on `m` letters.
fn admissible_word(m: usize) -> impl Strategy<Value = SymbolicWord> {
    (reduced_letters(m, 0..5), reduced_letters(m, 2..6))
        .prop_filter_map("not admissible", move |(pre, cyc)| {
            let w = SymbolicWord::new(pre, cyc).ok()?;
            w.is_admissible(m).then_some(w)
        })
}

fn spectral_radius_3x3(m: &Matrix3<f64>) -> f64 {
    m.complex_eigenvalues().iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn to_nalgebra(a: &billiards::lorentz::Mat3Q) -> Matrix3<f64> {
    Matrix3::from_fn(|i, j| billiards::arith::rational_to_f64(&a.0[i][j]))
}

/// Seeded runs without failure files.
fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, max_global_rejects: 1 << 16, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn split_partitions_stay_valid(seed in any::<u64>(), m in 4usize..=12) {
        let p = random_partition_of_size(&mut ChaCha8Rng::seed_from_u64(seed), m).unwrap();
        prop_assert_eq!(p.size(), m);
        let rebuilt = build_partition(p.vertices().to_vec()).unwrap();
        prop_assert_eq!(rebuilt.vertices(), p.vertices());
        prop_assert!((p.arclength_sum() - std::f64::consts::TAU).abs() < 1e-12);
        for (r, a) in p.refl3().iter().zip(p.sigma2()) {
            prop_assert!(r.is_orthochronous_orthogonal());
            prop_assert!(a.is_integral() && a.mul(a).projectively_eq(&Mat2Q::identity()));
        }
    }

    #[test]
    fn covectors_reduce_to_a_base(seed in any::<u64>(), word in prop::collection::vec(generator(), 0..6)) {
        let p = partition(seed, 9);
        let g = bold_rep(&product(&word)).unwrap().to_integer().unwrap();
        for w in p.covectors() {
            for w in [w.clone(), g.apply(&w)] {
                let r = reduce_unimodular(&w).unwrap();
                prop_assert_eq!(r.m.apply(&w), r.base);
            }
        }
    }

    #[test]
    fn bold_squares_the_spectral_radius(word in prop::collection::vec(generator(), 1..9)) {
        let a = product(&word);
        let [[p, q], [r, s]] = a.to_f64();
        let tr = p + s;
        let det = p * s - q * r;
        let disc = tr * tr - 4.0 * det;
        // parabolic and elliptic words have defective or unit eigenvalues
        prop_assume!(disc > 1e-6);
        let rho = (tr.abs() + disc.sqrt()) / 2.0;
        let big = spectral_radius_3x3(&to_nalgebra(&bold_rep(&a).unwrap()));
        prop_assert!((big - rho * rho).abs() <= 1e-9 * big, "{} vs {}", big, rho * rho);
    }

    #[test]
    fn quadratic_steps_preserve_the_norm(seed in any::<u64>(), steps in 1usize..30) {
        let p = partition(seed, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut q = QuadPoint::new(random_carrier(&mut rng, 40), Branch::Plus).unwrap();
        let n = q.norm().clone();
        for _ in 0..steps {
            let a = locate_interval(&p, &CirclePoint::Quadratic(q.clone()));
            q = q.reflect(&p.refl3()[a]);
            prop_assert_eq!(q.carrier().norm(), n.clone());
        }
    }

    #[test]
    fn natural_extension_is_an_involution_up_to_swap(seed in any::<u64>()) {
        let p = partition(seed, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let mut tried = 0;
        while tried < 5 {
            let s = CirclePoint::quadratic(random_carrier(&mut rng, 40), Branch::Plus).unwrap();
            let r = CirclePoint::quadratic(random_carrier(&mut rng, 40), Branch::Minus).unwrap();
            let Ok(pt) = NatExtPoint::new(s, r) else { continue };
            if !pt.in_domain(&p) {
                continue;
            }
            tried += 1;
            let once = natext_step(&p, &pt).unwrap();
            let back = natext_step(&p, &once.swap()).unwrap().swap();
            prop_assert_eq!(back, pt);
        }
    }

    #[test]
    fn density_is_positive(seed in any::<u64>(), x in 0.0f64..1.0) {
        let p = partition(seed, 10);
        let h = density_h(&p, x);
        prop_assert!(h > 0.0);
    }

    #[test]
    fn digits_stay_in_range((m, a, b) in (3usize..20).prop_flat_map(|m| (Just(m), 0..m, 0..m))) {
        let d = d_func(a, b);
        prop_assert!(d == a || d == a + 1);
        prop_assert!(d < m);
        prop_assert_eq!(d == a + 1, a < b);
    }

    #[test]
    fn phi_intertwines_shift_and_expansion(w in admissible_word(6)) {
        let m = 6;
        let phi = phi_exact(&w, m).unwrap();
        prop_assert_eq!(phi_of_word(&w.shift(), m), t_map(&phi, m));
    }

    #[test]
    fn phi_is_strictly_increasing_on_rational_points(seed in any::<u64>()) {
        let p = partition(seed, 8);
        let m = p.size();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        let mut pts: Vec<_> = (0..12).map(|_| random_triple(&mut rng, 25)).collect();
        pts.sort_by(|a, b| a.angle_cmp(b));
        pts.dedup();
        let values: Vec<_> = pts
            .iter()
            .map(|t| {
                let o = rational_orbit(&p, t, 100_000).unwrap();
                let first = o.word.first().copied().unwrap_or(o.terminal);
                phi_lift(&phi_exact(&o.symbolic(), m).unwrap(), first, m)
            })
            .collect();
        // arguments are sorted in [0, 1), so the lifts must be too
        for (i, w) in values.windows(2).enumerate() {
            prop_assert!(w[0] < w[1], "{} and {}", pts[i], pts[i + 1]);
        }
    }

    #[test]
    fn truncations_bracket_the_exact_value(seed in any::<u64>(), depth in 2usize..30) {
        let p = partition(seed, 8);
        let m = p.size();
        let v = random_carrier(&mut ChaCha8Rng::seed_from_u64(seed ^ 4), 30);
        let o = quadratic_symbolic(&p, &v, 100_000).unwrap();
        let exact = phi_exact(&o.word_s, m).unwrap();
        let sigma = CirclePoint::quadratic(v, Branch::Plus).unwrap();
        let approx = phi_truncated_rational(&p, &sigma, depth).unwrap();
        let gap = circle_distance(&exact, &approx).to_f64().unwrap();
        prop_assert!(gap <= error_bound(m, depth), "gap {} at depth {}", gap, depth);
    }
}

fn family(seed: u64) -> ReflectionFamily {
    sigma_from_partition(&partition(seed, 7)).unwrap()
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn jsr_brackets_nest(seed in any::<u64>()) {
        let f = family(seed);
        let reports: Vec<_> = (1..=4).map(|k| jsr_bounds(&f, k, 1e-9).unwrap()).collect();
        for r in &reports {
            prop_assert!(r.lower <= r.upper * (1.0 + 1e-12));
        }
        for w in reports.windows(2) {
            prop_assert!(w[1].lower >= w[0].lower && w[1].upper <= w[0].upper);
        }
    }

    #[test]
    fn mean_free_paths_respect_the_upper_bound(seed in any::<u64>(), letters in reduced_letters(4, 2..7)) {
        let f = family(seed);
        prop_assume!(letters.len() >= 2 && letters[0] != letters[letters.len() - 1]);
        let w = CycleWord::new(letters).unwrap();
        let upper = jsr_bounds(&f, 4, 1e-9).unwrap().upper;
        prop_assert!(mean_free_path(&f, &w).unwrap() <= 2.0 * upper.ln() + 1e-9);
    }

    #[test]
    fn adjacent_repeats_collapse(seed in any::<u64>(), letters in prop::collection::vec(0usize..4, 1..8), at in 0usize..8) {
        let f = family(seed);
        let at = at % letters.len();
        let mut doubled = letters.clone();
        doubled.insert(at, letters[at]);
        let mut removed = letters.clone();
        removed.remove(at);
        prop_assert!(f.product(&doubled).unwrap().projectively_eq(&f.product(&removed).unwrap()));
    }

    #[test]
    fn lower_bound_is_conjugation_invariant(seed in any::<u64>(), word in prop::collection::vec(generator(), 0..4)) {
        let f = family(seed);
        let c = product(&word);
        let g = f.conjugate_by(&c).unwrap();
        let (a, b) = (jsr_bounds(&f, 4, 1e-9).unwrap(), jsr_bounds(&g, 4, 1e-9).unwrap());
        prop_assert!((a.lower - b.lower).abs() <= 1e-9 * a.lower);
    }
}
