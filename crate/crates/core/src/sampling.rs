//! Seeded generators for partitions, circle points and quadratic carriers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::Rng;

use crate::billiard::arc_len;
use crate::error::Result;
use crate::lorentz::Vec3Z;
use crate::partition::{builtin, euclid_param, split_interval, PythTriple, UnimodularPartition};

/// Splits random intervals of the square table until it has `m` vertices.
pub fn random_partition_of_size(rng: &mut impl Rng, m: usize) -> Result<UnimodularPartition> {
    let mut p = builtin("square")?;
    while p.size() < m {
        let a = rng.gen_range(0..p.size());
        p = split_interval(&p, a)?;
    }
    Ok(p)
}

/// Random partition with between 4 and `max_m` vertices.
pub fn random_partition(rng: &mut impl Rng, max_m: usize) -> Result<UnimodularPartition> {
    let m = rng.gen_range(4..=max_m.max(4));
    random_partition_of_size(rng, m)
}

/// Random rational circle point from Euclid's parametrization with
/// parameters bounded by `bound` in absolute value.
pub fn random_triple(rng: &mut impl Rng, bound: i64) -> PythTriple {
    loop {
        let a: i64 = rng.gen_range(-bound..=bound);
        let b: i64 = rng.gen_range(-bound..=bound);
        if a != 0 && b != 0 && a.gcd(&b) == 1 {
            return euclid_param(&BigInt::from(a), &BigInt::from(b)).expect("coprime nonzero parameters");
        }
    }
}

/// Random carrier `v` with positive non-square Lorentz norm and entries
/// bounded by `bound`.
pub fn random_carrier(rng: &mut impl Rng, bound: i64) -> Vec3Z {
    loop {
        let v = Vec3Z::from_i64(
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        let n = v.norm();
        if n.is_positive() {
            let r = n.sqrt();
            if &r * &r != n {
                return v;
            }
        }
    }
}

/// Random `[u, v]` inside one interval, keeping a fraction `margin` of its
/// length clear of both endpoints.
pub fn random_subinterval(rng: &mut impl Rng, p: &UnimodularPartition, margin: f64) -> (f64, f64) {
    let args = p.arguments();
    let m = args.len();
    let a = rng.gen_range(0..m);
    let len = arc_len(args[a], args[(a + 1) % m]);
    let lo = margin * len;
    let hi = (1.0 - margin) * len;
    loop {
        let mut s = rng.gen_range(lo..hi);
        let mut t = rng.gen_range(lo..hi);
        if s > t {
            std::mem::swap(&mut s, &mut t);
        }
        let (u, v) = (args[a] + s, args[a] + t);
        // keep the interval from wrapping through 0
        let (u, v) = if u >= 1.0 { (u - 1.0, v - 1.0) } else { (u, v) };
        if t - s > 1e-6 && v < 1.0 {
            return (u, v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_seeded() {
        let mut r1 = ChaCha8Rng::seed_from_u64(5);
        let mut r2 = ChaCha8Rng::seed_from_u64(5);
        let p1 = random_partition(&mut r1, 10).unwrap();
        let p2 = random_partition(&mut r2, 10).unwrap();
        assert_eq!(p1.vertices(), p2.vertices());
        assert!(p1.size() >= 4 && p1.size() <= 10);
        assert_eq!(random_triple(&mut r1, 50), random_triple(&mut r2, 50));
        let v = random_carrier(&mut r1, 20);
        assert!(v.norm().is_positive());
        let (u, w) = random_subinterval(&mut r1, &p1, 0.1);
        assert!(0.0 <= u && u < w && w < 1.0);
    }
}
