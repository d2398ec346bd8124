//! Coefficient statistics for closure equations and their reduction to
//! prime-field coefficients.
//!
//! The chain being checked: every closure equation is a `(r_k+1)`-minor of
//! a matrix power, each matrix entry occurs at most `r_k!`-fold in a
//! `(r_k+1)`-determinant, so any prime `p > max{r_k}!` leaves the system's
//! coefficients faithfully representable mod `p`.  [`coefficient_report`]
//! computes the actual coefficient multisets next to that bound — the
//! bound is extremely loose (minor coefficients are ±1), which the report
//! makes visible rather than hiding.

use crate::combinat::factorial;
use crate::orbits_gl::{closure_equations, nonvanishing_minors, EquationSet, Provenance};
use crate::partitions::Partition;
use crate::polyalg::{CoefficientSet, SymbolicMatrix, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Error, Clone, Copy, PartialEq, Eq, Debug)]
pub enum PadicError {
    #[error("modulus {p} is not prime")]
    CompositeModulus { p: u64 },
    #[error("expansion too large")]
    ExpansionTooLarge,
}

/// `max{r_k}!`, the factorial of the largest rank in the rank sequence:
/// any prime above it is admissible for the closure equations of `λ`.
pub fn coefficient_bound(lambda: &Partition) -> BigInt {
    factorial(lambda.rank_sequence().max_rank())
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(p: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if p < 2 {
        return false;
    }
    for q in WITNESSES {
        if p == q {
            return true;
        }
        if p % q == 0 {
            return false;
        }
    }
    let mut d = p - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, p);
        if x == 1 || x == p - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, p);
            if x == p - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Smallest prime strictly greater than `bound`.
pub fn smallest_admissible_prime(bound: &BigInt) -> u64 {
    let floor: u64 = bound
        .try_into()
        .expect("bound beyond u64 leaves no searchable prime range");
    let mut candidate = floor.checked_add(1).expect("prime search overflow").max(2);
    loop {
        if is_prime(candidate) {
            return candidate;
        }
        candidate += 1;
    }
}

fn big_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The coefficient multiset of one minor, labeled by its position.
#[derive(Clone, Debug, Serialize)]
pub struct EquationCoefficients {
    pub k: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub coefficients: CoefficientSet,
}

/// Everything the admissibility bound is about, computed exactly: the
/// per-equation coefficient multisets of the closure equations (the `F`
/// role) and of the nonvanishing minors (the `H` role), both maxima, the
/// factorial bound and the prime chosen above it.  The relation between
/// the two maxima is reported, not asserted — for small partitions both
/// are 1.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientReport {
    pub lambda: Partition,
    #[serde(serialize_with = "big_string")]
    pub paper_bound: BigInt,
    pub prime: u64,
    #[serde(serialize_with = "big_string")]
    pub max_coeff_f: BigInt,
    #[serde(serialize_with = "big_string")]
    pub max_coeff_h: BigInt,
    pub f_vs_h: &'static str,
    pub f_sets: Vec<EquationCoefficients>,
    pub h_sets: Vec<EquationCoefficients>,
}

pub fn coefficient_report(lambda: &Partition) -> CoefficientReport {
    let closure = closure_equations(lambda);
    let f_sets: Vec<EquationCoefficients> = closure
        .equations()
        .par_iter()
        .map(|eq| {
            let Provenance::PowerMinor { k, rows, cols } = &eq.provenance[0] else {
                unreachable!("closure equations carry minor provenance")
            };
            EquationCoefficients {
                k: *k,
                rows: rows.clone(),
                cols: cols.clone(),
                coefficients: CoefficientSet::from_poly(&eq.poly),
            }
        })
        .collect();
    let h_sets: Vec<EquationCoefficients> = nonvanishing_minors(lambda)
        .into_par_iter()
        .map(|minor| EquationCoefficients {
            k: minor.k,
            rows: minor.rows,
            cols: minor.cols,
            coefficients: CoefficientSet::from_poly(&minor.poly),
        })
        .collect();
    let max_coeff_f = f_sets
        .iter()
        .map(|e| e.coefficients.max_abs())
        .max()
        .expect("closure equations are never empty");
    let max_coeff_h = h_sets
        .iter()
        .map(|e| e.coefficients.max_abs())
        .max()
        .unwrap_or_default();
    let f_vs_h = match max_coeff_f.cmp(&max_coeff_h) {
        std::cmp::Ordering::Greater => "greater",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Less => "less",
    };
    let paper_bound = coefficient_bound(lambda);
    let prime = smallest_admissible_prime(&paper_bound);
    assert!(paper_bound >= BigInt::from(1));
    assert!(BigInt::from(prime) > paper_bound);
    CoefficientReport {
        lambda: lambda.clone(),
        paper_bound,
        prime,
        max_coeff_f,
        max_coeff_h,
        f_vs_h,
        f_sets,
        h_sets,
    }
}

/// True iff every entry variable occurs in exactly `(n−1)!` monomials of
/// the fully expanded `det(X_n)`.  The expansion is exhaustive, so the
/// range is capped.
pub fn verify_det_occurrences(n: usize) -> Result<bool, PadicError> {
    if !(1..=6).contains(&n) {
        return Err(PadicError::ExpansionTooLarge);
    }
    let det = SymbolicMatrix::generic(n).det();
    let expected = factorial(n - 1);
    for i in 1..=n {
        for j in 1..=n {
            if BigInt::from(det.occurrence_count(Var::x(i, j))) != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Maps every coefficient to its least non-negative residue mod `p`.
/// Terms that collapse to zero are dropped; equations that collapse
/// entirely impose nothing and are dropped too; equations that collide
/// after reduction merge their provenance.  The result is tagged with `p`.
pub fn reduce_mod_p(eqs: &EquationSet, p: u64) -> Result<EquationSet, PadicError> {
    if !is_prime(p) {
        return Err(PadicError::CompositeModulus { p });
    }
    let modulus = BigInt::from(p);
    let mut out = EquationSet::new(eqs.algebra(), eqs.lambda().clone()).with_modulus(p);
    for eq in eqs.equations() {
        let reduced = eq.poly.map_coefficients(|c| c.mod_floor(&modulus));
        if reduced.is_zero() {
            continue;
        }
        out.insert_all(reduced, eq.provenance.clone());
    }
    Ok(out)
}
