//! Seeded exact sampling of orbit points and the membership oracle.

use super::{jordan_matrix, EquationSet};
use crate::partitions::Partition;
use crate::polyalg::RatMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// An exact point of the orbit of `J_μ`, produced by unimodular
/// conjugation.  Construction verifies nilpotency and the full rank
/// sequence, so holding an `OrbitPoint` certifies the Jordan type.
#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub matrix: RatMatrix,
    pub partition: Partition,
    pub seed: u64,
}

/// One elementary row operation `E = I + c·e_{a,b}` (`a ≠ b`, 0-based),
/// whose inverse is `I − c·e_{a,b}`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Transvection {
    a: usize,
    b: usize,
    c: i64,
}

/// Conjugates `J_μ` by the product of the given elementary matrices,
/// checking every `OrbitPoint` invariant before returning.
pub(crate) fn build_point(mu: &Partition, ops: &[Transvection], seed: u64) -> OrbitPoint {
    let n = mu.n();
    let jordan = jordan_matrix(mu);
    // accumulate P = Π E_i and P⁻¹ = Π E_i⁻¹ in reverse
    let mut p = RatMatrix::identity(n);
    let mut p_inv = RatMatrix::identity(n);
    for &Transvection { a, b, c } in ops {
        debug_assert!(a != b && a < n && b < n);
        let factor = BigRational::from(BigInt::from(c));
        // right-multiplying by E adds c · (column a) to column b of P
        for i in 0..n {
            let add = p.get(i, a) * &factor;
            let v = p.get(i, b) + add;
            p.set(i, b, v);
        }
        // left-multiplying by E⁻¹ subtracts c · (row b) from row a of P⁻¹
        for j in 0..n {
            let sub = p_inv.get(b, j) * &factor;
            let v = p_inv.get(a, j) - sub;
            p_inv.set(a, j, v);
        }
    }
    debug_assert_eq!(p_inv.mul(&p), RatMatrix::identity(n));
    let matrix = p_inv.mul(&jordan).mul(&p);

    // invariants: exact nilpotency and the full rank profile of μ
    let rs = mu.rank_sequence();
    let mut power = RatMatrix::identity(n);
    for k in 1..=n {
        power = power.mul(&matrix);
        assert_eq!(power.rank(), rs.rank_at(k), "rank(X^{k}) drifted for {mu}");
    }
    assert!(power.is_zero(), "conjugate of a nilpotent matrix must be nilpotent");

    OrbitPoint { matrix, partition: mu.clone(), seed }
}

/// Returns `P⁻¹·J_μ·P` for a seeded-random unimodular `P` built from `2n`
/// elementary row operations with multipliers in `[−3, 3]`.  Fully
/// deterministic in `(μ, seed)`; all arithmetic exact.
pub fn sample_orbit_point(mu: &Partition, seed: u64) -> OrbitPoint {
    let n = mu.n();
    let ops: Vec<Transvection> = if n < 2 {
        Vec::new() // no off-diagonal positions in gl_1
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..2 * n)
            .map(|_| {
                let a = rng.gen_range(0..n);
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                let c = rng.gen_range(-3..=3);
                Transvection { a, b, c }
            })
            .collect()
    };
    build_point(mu, &ops, seed)
}

/// Stable seed derivation: one independent stream per `(master, μ, index)`.
pub fn derive_seed(master: u64, mu: &Partition, index: usize) -> u64 {
    let mut h = splitmix(master ^ 0x6f72_6269_7466_7267);
    for &part in mu.parts() {
        h = splitmix(h ^ part as u64);
    }
    splitmix(h ^ index as u64)
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// True iff every equation vanishes exactly at the point.
pub fn membership_test(point: &OrbitPoint, eqs: &EquationSet) -> bool {
    assert_eq!(point.matrix.n(), eqs.n(), "dimension mismatch");
    let n = point.matrix.n();
    if point.matrix.is_integral() {
        let entries: Vec<BigInt> = (0..n)
            .flat_map(|i| (0..n).map(move |j| point.matrix.get(i, j).to_integer()))
            .collect();
        eqs.equations().par_iter().all(|eq| {
            eq.poly
                .evaluate_integer(n, &entries, None)
                .expect("closure equations are t-free and within range")
                .is_zero()
        })
    } else {
        eqs.equations().par_iter().all(|eq| {
            eq.poly
                .evaluate(&point.matrix, None)
                .expect("closure equations are t-free and within range")
                .is_zero()
        })
    }
}
