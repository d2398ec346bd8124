//! Rank-condition equations for nilpotent orbit closures in `gl_n`.
//!
//! For a partition `λ` of `n` the closure of the orbit `O_λ` is cut out by
//! the conditions `rank(X^k) ≤ r_k` for `(k, r_k)` in the rank sequence of
//! `λ`; concretely, by the vanishing of every `(r_k + 1)`-minor of `X^k`.
//! This module generates that equation set `F_λ`, the nonvanishing minors
//! `H_λ` whose charts recover the open orbit, and the localization charts
//! themselves, plus the seeded sampling oracle used to cross-check the
//! stratification `O̅_λ = ⋃_{μ ⊴ λ} O_μ` against the dominance order.

mod sample;

pub use sample::{derive_seed, membership_test, sample_orbit_point, OrbitPoint};

use crate::partitions::Partition;
use crate::polyalg::{Poly, RatMatrix, SymbolicMatrix};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Which matrix algebra an equation set lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algebra {
    Gl,
    Sp,
}

/// Where an equation came from.  Duplicate polynomials keep every label.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// `minor(X^k, rows, cols)` with `|rows| = |cols| = r_k + 1`.
    PowerMinor { k: usize, rows: Vec<usize>, cols: Vec<usize> },
    /// Spanning polynomial of `V_{i,p}` for the ordered pair `(P, Q)`.
    Vip { i: usize, p: usize, rows: Vec<usize>, cols: Vec<usize> },
    /// Entry `(row, col)` of `XᵀΩ + ΩX`.
    SymplecticLie { row: usize, col: usize },
    /// Member `(row, col)` of one of the three quadratic constraint families.
    SymplecticLambda { family: crate::orbits_sp::SpFamilyKind, row: usize, col: usize },
    /// Localization relation `h·t − 1` for the minor `(k, rows, cols)`.
    ChartRelation { k: usize, rows: Vec<usize>, cols: Vec<usize> },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Equation {
    pub poly: Poly,
    pub provenance: Vec<Provenance>,
}

/// How far the power loop runs: `Pruned` stops at the first `k` with
/// `r_k = 0` (higher powers contribute only redundant equations), `Full`
/// runs the literal `k = 1..n` loop.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KRange {
    #[default]
    Pruned,
    Full,
}

/// An ordered, deduplicated list of polynomial equations with provenance.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "EquationSetData", into = "EquationSetData")]
pub struct EquationSet {
    algebra: Algebra,
    n: usize,
    lambda: Partition,
    modulus: Option<u64>,
    equations: Vec<Equation>,
    index: HashMap<Poly, usize>,
    pre_dedup: usize,
}

impl EquationSet {
    pub fn new(algebra: Algebra, lambda: Partition) -> EquationSet {
        EquationSet {
            algebra,
            n: lambda.n(),
            lambda,
            modulus: None,
            equations: Vec::new(),
            index: HashMap::new(),
            pre_dedup: 0,
        }
    }

    pub(crate) fn with_modulus(mut self, p: u64) -> EquationSet {
        self.modulus = Some(p);
        self
    }

    /// Adds one equation; duplicates of an existing polynomial only extend
    /// its provenance list.  Returns `true` when the polynomial was new.
    pub fn insert(&mut self, poly: Poly, provenance: Provenance) -> bool {
        self.insert_all(poly, vec![provenance])
    }

    /// Like [`EquationSet::insert`] but carries a whole provenance list in
    /// one step (counted once), as when an equation is mapped from another
    /// set.
    pub(crate) fn insert_all(&mut self, poly: Poly, provenance: Vec<Provenance>) -> bool {
        assert!(!poly.is_zero(), "equation sets never contain the zero polynomial");
        self.pre_dedup += 1;
        if let Some(&at) = self.index.get(&poly) {
            self.equations[at].provenance.extend(provenance);
            return false;
        }
        self.index.insert(poly.clone(), self.equations.len());
        self.equations.push(Equation { poly, provenance });
        true
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// The prime the coefficients were reduced by, if any.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// Number of distinct equations.
    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Number of insertions before deduplication.
    pub fn pre_dedup_count(&self) -> usize {
        self.pre_dedup
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn polys(&self) -> impl Iterator<Item = &Poly> {
        self.equations.iter().map(|eq| &eq.poly)
    }

    pub fn contains(&self, poly: &Poly) -> bool {
        self.index.contains_key(poly)
    }
}

impl PartialEq for EquationSet {
    fn eq(&self, other: &EquationSet) -> bool {
        self.algebra == other.algebra
            && self.n == other.n
            && self.lambda == other.lambda
            && self.modulus == other.modulus
            && self.equations == other.equations
            && self.pre_dedup == other.pre_dedup
    }
}

impl Eq for EquationSet {}

#[derive(Serialize, Deserialize)]
struct EquationSetData {
    algebra: Algebra,
    n: usize,
    lambda: Partition,
    modulus: Option<u64>,
    pre_dedup_count: usize,
    equations: Vec<Equation>,
}

impl From<EquationSet> for EquationSetData {
    fn from(set: EquationSet) -> EquationSetData {
        EquationSetData {
            algebra: set.algebra,
            n: set.n,
            lambda: set.lambda,
            modulus: set.modulus,
            pre_dedup_count: set.pre_dedup,
            equations: set.equations,
        }
    }
}

impl TryFrom<EquationSetData> for EquationSet {
    type Error = String;

    fn try_from(data: EquationSetData) -> Result<EquationSet, String> {
        if data.lambda.n() != data.n {
            return Err(format!("partition {} does not sum to n = {}", data.lambda, data.n));
        }
        let mut index = HashMap::new();
        for (at, eq) in data.equations.iter().enumerate() {
            if eq.poly.is_zero() {
                return Err("zero polynomial in equation set".into());
            }
            if index.insert(eq.poly.clone(), at).is_some() {
                return Err("duplicate polynomial in equation set".into());
            }
        }
        Ok(EquationSet {
            algebra: data.algebra,
            n: data.n,
            lambda: data.lambda,
            modulus: data.modulus,
            equations: data.equations,
            index,
            pre_dedup: data.pre_dedup_count,
        })
    }
}

/// The nilpotent Jordan matrix of `μ`: blocks of sizes `μ_1, μ_2, ...` in
/// order, each with ones on the first superdiagonal.
pub fn jordan_matrix(mu: &Partition) -> RatMatrix {
    let n = mu.n();
    let mut rows = vec![vec![0i64; n]; n];
    let mut offset = 0;
    for &part in mu.parts() {
        for i in 0..part - 1 {
            rows[offset + i][offset + i + 1] = 1;
        }
        offset += part;
    }
    RatMatrix::from_int_rows(&rows)
}

/// All `(r_k + 1)`-minors of `X^k` for each `k` in the chosen range:
/// the defining equations of the orbit closure.
pub fn closure_equations(lambda: &Partition) -> EquationSet {
    closure_equations_ranged(lambda, KRange::Pruned)
}

pub fn closure_equations_ranged(lambda: &Partition, range: KRange) -> EquationSet {
    let mut set = EquationSet::new(Algebra::Gl, lambda.clone());
    append_closure_equations(&mut set, range);
    set
}

/// Inserts the rank-condition minors of `set.lambda()` into `set`; shared
/// between the gl path and the symplectic intersection.
pub(crate) fn append_closure_equations(set: &mut EquationSet, range: KRange) {
    let lambda = set.lambda().clone();
    let n = lambda.n();
    let rs = lambda.rank_sequence();
    let k_max = match range {
        KRange::Pruned => rs.k_stop(),
        KRange::Full => n,
    };
    let generic = SymbolicMatrix::generic(n);
    let mut power = SymbolicMatrix::identity(n);
    for k in 1..=k_max {
        power = power.mul(&generic);
        let size = rs.rank_at(k) + 1;
        for (rows, cols, poly) in layer_minors(&power, n, size) {
            set.insert(poly, Provenance::PowerMinor { k, rows, cols });
        }
    }
}

/// All `size`-minors of `power`, in lexicographic (rows, cols) order.
/// Generation is parallel; the output order is canonical regardless.
fn layer_minors(
    power: &SymbolicMatrix,
    n: usize,
    size: usize,
) -> Vec<(Vec<usize>, Vec<usize>, Poly)> {
    let subsets = crate::combinat::k_subsets(n, size);
    let mut pairs = Vec::with_capacity(subsets.len() * subsets.len());
    for rows in &subsets {
        for cols in &subsets {
            pairs.push((rows.clone(), cols.clone()));
        }
    }
    pairs
        .into_par_iter()
        .map(|(rows, cols)| {
            let poly = power.minor(&rows, &cols).expect("index sets are valid");
            (rows, cols, poly)
        })
        .collect()
}

/// A minor of `X^k` tagged with its position: `j` counts through the
/// lexicographic `(rows, cols)` enumeration of the `k` layer, 1-based.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LabeledMinor {
    pub j: usize,
    pub k: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: Poly,
}

/// The minors that stay nonzero on the open orbit: for each `k` with
/// `r_k ≥ 1`, every `r_k`-minor of `X^k`.
pub fn nonvanishing_minors(lambda: &Partition) -> Vec<LabeledMinor> {
    let n = lambda.n();
    let rs = lambda.rank_sequence();
    let generic = SymbolicMatrix::generic(n);
    let mut out = Vec::new();
    let mut power = SymbolicMatrix::identity(n);
    for k in 1..=rs.k_stop() {
        power = power.mul(&generic);
        let r = rs.rank_at(k);
        if r == 0 {
            continue;
        }
        for (j, (rows, cols, poly)) in layer_minors(&power, n, r).into_iter().enumerate() {
            out.push(LabeledMinor { j: j + 1, k, rows, cols, poly });
        }
    }
    out
}

/// One localized piece of the orbit: the closure equations plus the
/// relation `h·t − 1` inverting one nonvanishing minor.
#[derive(Clone, Debug)]
pub struct Chart {
    pub base: Arc<EquationSet>,
    pub minor: LabeledMinor,
    pub relation: Poly,
}

impl Chart {
    /// All equations of the chart: the base set followed by the relation.
    pub fn all_polys(&self) -> Vec<&Poly> {
        let mut out: Vec<&Poly> = self.base.polys().collect();
        out.push(&self.relation);
        out
    }
}

/// The full atlas of localization charts for an orbit.  The origin orbit
/// `[1,...,1]` has no charts; `origin_warning` records that degenerate
/// case.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ChartAtlasData", into = "ChartAtlasData")]
pub struct ChartAtlas {
    pub lambda: Partition,
    pub origin_warning: bool,
    pub base: Arc<EquationSet>,
    pub charts: Vec<Chart>,
}

#[derive(Serialize, Deserialize)]
struct ChartAtlasData {
    lambda: Partition,
    origin_warning: bool,
    base: EquationSet,
    charts: Vec<ChartData>,
}

#[derive(Serialize, Deserialize)]
struct ChartData {
    minor: LabeledMinor,
    relation: Poly,
}

impl From<ChartAtlas> for ChartAtlasData {
    fn from(atlas: ChartAtlas) -> ChartAtlasData {
        ChartAtlasData {
            lambda: atlas.lambda,
            origin_warning: atlas.origin_warning,
            base: (*atlas.base).clone(),
            charts: atlas
                .charts
                .into_iter()
                .map(|c| ChartData { minor: c.minor, relation: c.relation })
                .collect(),
        }
    }
}

impl TryFrom<ChartAtlasData> for ChartAtlas {
    type Error = String;

    fn try_from(data: ChartAtlasData) -> Result<ChartAtlas, String> {
        let base = Arc::new(data.base);
        let charts = data
            .charts
            .into_iter()
            .map(|c| Chart { base: Arc::clone(&base), minor: c.minor, relation: c.relation })
            .collect();
        Ok(ChartAtlas {
            lambda: data.lambda,
            origin_warning: data.origin_warning,
            base,
            charts,
        })
    }
}

/// One chart per nonvanishing minor, each carrying the closure equations
/// plus `h·t − 1`.  For the origin partition the atlas is empty and
/// flagged, since the single-point orbit has no localization.
pub fn localization_charts(lambda: &Partition) -> ChartAtlas {
    localization_charts_ranged(lambda, KRange::Pruned)
}

pub fn localization_charts_ranged(lambda: &Partition, range: KRange) -> ChartAtlas {
    let base = Arc::new(closure_equations_ranged(lambda, range));
    build_atlas(lambda, base)
}

pub(crate) fn build_atlas(lambda: &Partition, base: Arc<EquationSet>) -> ChartAtlas {
    if lambda.is_all_ones() {
        return ChartAtlas {
            lambda: lambda.clone(),
            origin_warning: true,
            base,
            charts: Vec::new(),
        };
    }
    let charts = nonvanishing_minors(lambda)
        .into_iter()
        .map(|minor| {
            let relation = &(&minor.poly * &Poly::t()) - &Poly::one();
            Chart { base: Arc::clone(&base), minor, relation }
        })
        .collect();
    ChartAtlas {
        lambda: lambda.clone(),
        origin_warning: false,
        base,
        charts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::binomial;
    use crate::partitions::enumerate_partitions;
    use crate::polyalg::Var;
    use num_bigint::BigInt;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn jordan_shapes() {
        let j21 = jordan_matrix(&p(&[2, 1]));
        assert_eq!(j21.rank(), 1);
        assert_eq!(j21.get(0, 1).to_string(), "1");
        assert!(j21.pow(2).is_zero());
        assert!(jordan_matrix(&p(&[1, 1, 1])).is_zero());
        let j3 = jordan_matrix(&p(&[3]));
        assert_eq!(j3.get(0, 1).to_string(), "1");
        assert_eq!(j3.get(1, 2).to_string(), "1");
        assert_eq!(j3.rank(), 2);
    }

    #[test]
    fn hook_example_has_eighteen_equations() {
        let set = closure_equations(&p(&[2, 1]));
        assert_eq!(set.len(), 18);
        assert_eq!(set.pre_dedup_count(), 18);
        // nine 2x2 minors of X and nine entries of X²
        let deg2_minors = set
            .equations()
            .iter()
            .filter(|eq| matches!(eq.provenance[0], Provenance::PowerMinor { k: 1, .. }))
            .count();
        assert_eq!(deg2_minors, 9);
    }

    #[test]
    fn origin_is_all_entries() {
        let set = closure_equations(&p(&[1, 1, 1]));
        assert_eq!(set.len(), 9);
        for i in 1..=3 {
            for j in 1..=3 {
                assert!(set.contains(&Poly::x(i, j)));
            }
        }
    }

    #[test]
    fn regular_two_case() {
        let set = closure_equations(&p(&[2]));
        assert_eq!(set.len(), 5);
        let det = SymbolicMatrix::generic(2).det();
        assert!(set.contains(&det));
    }

    #[test]
    fn full_range_adds_higher_powers() {
        let pruned = closure_equations_ranged(&p(&[2, 1]), KRange::Pruned);
        let full = closure_equations_ranged(&p(&[2, 1]), KRange::Full);
        assert_eq!(pruned.pre_dedup_count(), 18);
        assert_eq!(full.pre_dedup_count(), 27);
        // the nine X³ entries are new polynomials, not duplicates
        assert_eq!(full.len(), 27);
        for eq in pruned.equations() {
            assert!(full.contains(&eq.poly));
        }
    }

    #[test]
    fn count_identity() {
        for n in 1..=4 {
            for lambda in enumerate_partitions(n) {
                let rs = lambda.rank_sequence();
                let set = closure_equations(&lambda);
                let expected: BigInt = (1..=rs.k_stop())
                    .map(|k| {
                        let b = binomial(n, rs.rank_at(k) + 1);
                        &b * &b
                    })
                    .sum();
                assert_eq!(BigInt::from(set.pre_dedup_count()), expected, "{lambda}");
            }
        }
    }

    #[test]
    fn equations_are_homogeneous_of_layer_degree() {
        for lambda in enumerate_partitions(4) {
            let rs = lambda.rank_sequence();
            let set = closure_equations(&lambda);
            for eq in set.equations() {
                for prov in &eq.provenance {
                    let Provenance::PowerMinor { k, rows, .. } = prov else {
                        panic!("unexpected provenance")
                    };
                    assert!(eq.poly.is_homogeneous());
                    assert_eq!(eq.poly.total_degree(), Some(k * rows.len()));
                    assert_eq!(rows.len(), rs.rank_at(*k) + 1);
                }
            }
        }
    }

    #[test]
    fn nonvanishing_minor_counts() {
        assert_eq!(nonvanishing_minors(&p(&[2, 1])).len(), 9);
        assert!(nonvanishing_minors(&p(&[1, 1, 1])).is_empty());
        assert_eq!(nonvanishing_minors(&p(&[3])).len(), 18);
        // labels restart per layer
        let minors = nonvanishing_minors(&p(&[3]));
        assert_eq!(minors[0].j, 1);
        assert_eq!(minors[0].k, 1);
        let first_k2 = minors.iter().find(|m| m.k == 2).unwrap();
        assert_eq!(first_k2.j, 1);
    }

    #[test]
    fn chart_counts_and_relation_shape() {
        let atlas = localization_charts(&p(&[2, 1]));
        assert!(!atlas.origin_warning);
        assert_eq!(atlas.charts.len(), 9);
        for chart in &atlas.charts {
            assert_eq!(chart.base.len(), 18);
            // relation is h·t − 1 with t-degree exactly 1
            let rel = &chart.relation;
            assert!(rel.contains_var(Var::T));
            assert_eq!(
                rel.terms_desc()
                    .map(|(m, _)| m.exponent(Var::T))
                    .max()
                    .unwrap(),
                1
            );
            let reconstructed = &(&chart.minor.poly * &Poly::t()) - &Poly::one();
            assert_eq!(rel, &reconstructed);
        }

        let origin = localization_charts(&p(&[1, 1, 1]));
        assert!(origin.origin_warning);
        assert!(origin.charts.is_empty());

        assert_eq!(localization_charts(&p(&[2])).charts.len(), 4);
    }

    #[test]
    fn chart_count_identity() {
        for n in 2..=4 {
            for lambda in enumerate_partitions(n) {
                let rs = lambda.rank_sequence();
                let expected: BigInt = (1..=rs.k_stop())
                    .filter(|&k| rs.rank_at(k) >= 1)
                    .map(|k| {
                        let b = binomial(n, rs.rank_at(k));
                        &b * &b
                    })
                    .sum();
                let atlas = localization_charts(&lambda);
                assert_eq!(BigInt::from(atlas.charts.len()), expected, "{lambda}");
            }
        }
    }

    #[test]
    fn provenance_merging_keeps_labels() {
        let mut set = EquationSet::new(Algebra::Gl, p(&[2]));
        let poly = Poly::x(1, 1);
        assert!(set.insert(poly.clone(), Provenance::PowerMinor { k: 1, rows: vec![1], cols: vec![1] }));
        assert!(!set.insert(poly.clone(), Provenance::PowerMinor { k: 2, rows: vec![1], cols: vec![1] }));
        assert_eq!(set.len(), 1);
        assert_eq!(set.pre_dedup_count(), 2);
        assert_eq!(set.equations()[0].provenance.len(), 2);
    }

    #[test]
    fn equation_set_serde_roundtrip() {
        let set = closure_equations(&p(&[2, 1]));
        let json = serde_json::to_string(&set).unwrap();
        let back: EquationSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
        assert_eq!(back.pre_dedup_count(), 18);
    }

    #[test]
    fn atlas_serde_roundtrip() {
        let atlas = localization_charts(&p(&[2]));
        let json = serde_json::to_string(&atlas).unwrap();
        let back: ChartAtlas = serde_json::from_str(&json).unwrap();
        assert_eq!(back.charts.len(), 4);
        assert_eq!(*back.base, *atlas.base);
        for (a, b) in atlas.charts.iter().zip(back.charts.iter()) {
            assert_eq!(a.minor, b.minor);
            assert_eq!(a.relation, b.relation);
        }
    }
}
