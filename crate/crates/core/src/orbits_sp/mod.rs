//! The symplectic side: the alternating form `Ω`, the constraint families
//! cutting `sp_2m` out of `gl_2m`, and orbit closures by intersection.
//!
//! Two formulations of the symplectic condition are provided.  The `lie`
//! mode imposes the Lie-algebra condition `XᵀΩ + ΩX = 0`, a set of linear
//! equations, and is the default: nilpotent orbits live in the Lie
//! algebra.  The `paper` mode instead carries the group condition
//! `XᵀΩX = Ω` as three indexed quadratic families `Λ^sp_{2m}(·,·)` —
//! including the members that are identically zero (every diagonal
//! position of the homogeneous family) and the members that repeat
//! another family's polynomial.  The raw families keep all `4m²` indexed
//! members; folding them into an [`EquationSet`] skips zero polynomials
//! and merges duplicates into a shared provenance list.
//!
//! Orbit closures in `sp_2m` only exist for partitions in which every odd
//! part occurs an even number of times; all entry points gate on that.

mod sample;

pub use sample::{sample_sp_orbit_point, sp_representative};

use crate::orbits_gl::{
    append_closure_equations, build_atlas, Algebra, ChartAtlas, EquationSet, KRange,
    Provenance,
};
use crate::partitions::Partition;
use crate::polyalg::{Monomial, Poly, RatMatrix, SymbolicMatrix, Var};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Clone, Copy, PartialEq, Eq, Debug)]
pub enum SpError {
    /// The partition has an odd part of odd multiplicity (or odd total),
    /// so no nilpotent matrix in `sp_2m` has that Jordan type.
    #[error("no symplectic orbit for this partition")]
    NotGerstenhaber,
}

/// Which symplectic condition to intersect with.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SpMode {
    /// Linear equations from `XᵀΩ + ΩX = 0`.
    #[serde(rename = "lie")]
    Lie,
    /// The quadratic group-condition families (`XᵀΩX = Ω`).
    #[serde(rename = "paper")]
    Group,
}

impl SpMode {
    /// The CLI/JSON token for the mode.
    pub fn token(self) -> &'static str {
        match self {
            SpMode::Lie => "lie",
            SpMode::Group => "paper",
        }
    }
}

/// The fixed alternating anti-diagonal form: entry `(i, 2m+1−i)` is
/// `(−1)^{i+1}` with 1-based rows (`+1` in row 1, alternating down to
/// `−1` in row `2m`), zeros elsewhere.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OmegaMatrix {
    pub m: usize,
    rows: Vec<Vec<i64>>,
}

pub fn omega_matrix(m: usize) -> OmegaMatrix {
    assert!(m >= 1, "the form needs m >= 1");
    let n = 2 * m;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 1..=n {
        rows[i - 1][n - i] = if i % 2 == 1 { 1 } else { -1 };
    }
    let omega = OmegaMatrix { m, rows };
    omega.verify();
    omega
}

impl OmegaMatrix {
    pub fn n(&self) -> usize {
        2 * self.m
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn as_rat(&self) -> RatMatrix {
        RatMatrix::from_int_rows(&self.rows)
    }

    pub fn as_symbolic(&self) -> SymbolicMatrix {
        SymbolicMatrix::from_int_rows(&self.rows)
    }

    /// Skew-symmetry and `det = 1`, checked exactly.
    fn verify(&self) {
        let n = self.n();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(self.rows[i][j], -self.rows[j][i], "form must be skew");
            }
        }
        assert!(self.as_rat().det().is_one(), "form must have determinant 1");
    }
}

/// Which constraint family a member belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpFamilyKind {
    /// Upper-triangle entries of `XᵀΩ + ΩX` (the expression is skew, so
    /// these carry all of its information).
    Lie,
    /// `1 + Σ_k (−1)^k x_{2m+1−k,i} x_{k,j}` at the odd anti-diagonal
    /// positions `i = 2q+1`, `j = 2m−2q`.
    ConstantOdd,
    /// The same sum with opposite sign, `1 + Σ_k (−1)^{k+1} …`, at the
    /// even positions `i = 2q`, `j = 2m−2q+1`.
    ConstantEven,
    /// `Σ_k (−1)^k x_{2m+1−k,r} x_{k,s}` at every remaining `(r, s)`.
    Homogeneous,
}

/// One indexed constraint, kept raw: `poly` may be zero and may
/// coincide with another member's polynomial.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpMember {
    pub row: usize,
    pub col: usize,
    pub poly: Poly,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpFamily {
    pub kind: SpFamilyKind,
    pub members: Vec<SpMember>,
}

/// A full constraint system for `sp_2m` in one of the two modes, stored
/// as raw labeled families so the printed cardinalities survive.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SymplecticConstraints {
    pub m: usize,
    pub mode: SpMode,
    pub families: Vec<SpFamily>,
}

impl SymplecticConstraints {
    /// Total member count across families, before any deduplication:
    /// `m(2m−1)` in lie mode, `4m²` in group mode.
    pub fn total_count(&self) -> usize {
        self.families.iter().map(|f| f.members.len()).sum()
    }

    pub fn family(&self, kind: SpFamilyKind) -> Option<&SpFamily> {
        self.families.iter().find(|f| f.kind == kind)
    }

    /// Folds every member into `set`.  Identically-zero members are
    /// skipped (an equation set has no use for `0 = 0`); members whose
    /// polynomial already appears only extend its provenance.
    pub fn contribute(&self, set: &mut EquationSet) {
        for family in &self.families {
            for member in &family.members {
                if member.poly.is_zero() {
                    continue;
                }
                let provenance = match family.kind {
                    SpFamilyKind::Lie => Provenance::SymplecticLie {
                        row: member.row,
                        col: member.col,
                    },
                    kind => Provenance::SymplecticLambda {
                        family: kind,
                        row: member.row,
                        col: member.col,
                    },
                };
                set.insert(member.poly.clone(), provenance);
            }
        }
    }
}

/// The linear condition `XᵀΩ + ΩX = 0` on a generic `2m × 2m` matrix.
/// The expression is skew with identically-zero diagonal, so the distinct
/// equations are its upper-triangle entries: `m(2m−1)` of them, which is
/// `dim gl_2m − dim sp_2m`.
pub fn symplectic_lie_equations(m: usize) -> SymplecticConstraints {
    assert!(m >= 1, "the constraints need m >= 1");
    let n = 2 * m;
    let omega = omega_matrix(m).as_symbolic();
    let x = SymbolicMatrix::generic(n);
    let s = x.transpose().mul(&omega).add(&omega.mul(&x));
    let mut members = Vec::new();
    for i in 1..=n {
        assert!(s.entry(i, i).is_zero(), "diagonal of a skew expression");
        for j in i + 1..=n {
            let mut opposite = s.entry(i, j).clone();
            opposite.add_assign_ref(s.entry(j, i));
            assert!(opposite.is_zero(), "expression must be skew");
            members.push(SpMember { row: i, col: j, poly: s.entry(i, j).clone() });
        }
    }
    assert_eq!(members.len(), m * (2 * m - 1));
    SymplecticConstraints {
        m,
        mode: SpMode::Lie,
        families: vec![SpFamily { kind: SpFamilyKind::Lie, members }],
    }
}

/// `Σ_{k=1}^{n} ± x_{n+1−k,i}·x_{k,j}`, the common shape of all three
/// group-condition families; `flip` swaps the sign convention from
/// `(−1)^k` to `(−1)^{k+1}` and `constant` adds the leading 1.
fn quadratic_member(n: usize, i: usize, j: usize, flip: bool, constant: bool) -> Poly {
    let mut poly = if constant { Poly::one() } else { Poly::zero() };
    for k in 1..=n {
        let positive = (k % 2 == 0) ^ flip;
        let mono = Monomial::from_pairs([(Var::x(n + 1 - k, i), 1), (Var::x(k, j), 1)]);
        let coeff = if positive { BigInt::one() } else { -BigInt::one() };
        poly.add_assign_ref(&Poly::term(mono, coeff));
    }
    poly
}

/// The three indexed families of the group condition: two constant
/// families of `m` members each and the homogeneous family at the
/// remaining `4m² − 2m` positions, `4m²` members in all.
pub fn lambda_sp_sets(m: usize) -> SymplecticConstraints {
    assert!(m >= 1, "the constraints need m >= 1");
    let n = 2 * m;

    let mut constant_odd = Vec::new();
    for q in 0..m {
        let (i, j) = (2 * q + 1, n - 2 * q);
        constant_odd.push(SpMember { row: i, col: j, poly: quadratic_member(n, i, j, false, true) });
    }
    let mut constant_even = Vec::new();
    for q in 1..=m {
        let (i, j) = (2 * q, n - 2 * q + 1);
        constant_even.push(SpMember { row: i, col: j, poly: quadratic_member(n, i, j, true, true) });
    }
    let taken: BTreeSet<(usize, usize)> = constant_odd
        .iter()
        .chain(&constant_even)
        .map(|member| (member.row, member.col))
        .collect();
    // the constant families sit exactly on the anti-diagonal
    debug_assert!(taken.iter().all(|&(r, s)| r + s == n + 1));
    debug_assert_eq!(taken.len(), n);

    let mut homogeneous = Vec::new();
    for r in 1..=n {
        for s in 1..=n {
            if taken.contains(&(r, s)) {
                continue;
            }
            homogeneous.push(SpMember { row: r, col: s, poly: quadratic_member(n, r, s, false, false) });
        }
    }

    assert_eq!(constant_odd.len(), m);
    assert_eq!(constant_even.len(), m);
    assert_eq!(homogeneous.len(), 4 * m * m - 2 * m);
    SymplecticConstraints {
        m,
        mode: SpMode::Group,
        families: vec![
            SpFamily { kind: SpFamilyKind::ConstantOdd, members: constant_odd },
            SpFamily { kind: SpFamilyKind::ConstantEven, members: constant_even },
            SpFamily { kind: SpFamilyKind::Homogeneous, members: homogeneous },
        ],
    }
}

fn constraints_for(m: usize, mode: SpMode) -> SymplecticConstraints {
    match mode {
        SpMode::Lie => symplectic_lie_equations(m),
        SpMode::Group => lambda_sp_sets(m),
    }
}

/// The closure equations of the symplectic orbit: the `gl_{2m}` rank
/// conditions of `λ` together with the chosen constraint set.  Refuses
/// partitions outside the Gerstenhaber classification.
pub fn sp_closure_equations(lambda: &Partition, mode: SpMode) -> Result<EquationSet, SpError> {
    sp_closure_equations_ranged(lambda, mode, KRange::Pruned)
}

pub fn sp_closure_equations_ranged(
    lambda: &Partition,
    mode: SpMode,
    range: KRange,
) -> Result<EquationSet, SpError> {
    if !lambda.gerstenhaber_valid().unwrap_or(false) {
        return Err(SpError::NotGerstenhaber);
    }
    let m = lambda.n() / 2;
    let mut set = EquationSet::new(Algebra::Sp, lambda.clone());
    append_closure_equations(&mut set, range);
    constraints_for(m, mode).contribute(&mut set);
    Ok(set)
}

/// Localization charts along the symplectic orbit: the same nonvanishing
/// minors as the `gl` case over the symplectic closure equations.
pub fn sp_orbit_charts(lambda: &Partition, mode: SpMode) -> Result<ChartAtlas, SpError> {
    sp_orbit_charts_ranged(lambda, mode, KRange::Pruned)
}

pub fn sp_orbit_charts_ranged(
    lambda: &Partition,
    mode: SpMode,
    range: KRange,
) -> Result<ChartAtlas, SpError> {
    let base = Arc::new(sp_closure_equations_ranged(lambda, mode, range)?);
    Ok(build_atlas(lambda, base))
}
