//! Representation-theoretic generators for the ideal of an orbit closure.
//!
//! For each pair `(i, p)` the set `V_{i,p}` is spanned by one polynomial
//! per ordered pair `(P, Q)` of `i`-subsets of `{1..n}`:
//!
//! ```text
//!   Σ_{|J| = p − i, J ∩ (P ∪ Q) = ∅}  ±minor(X, P ∪ J, Q ∪ J)
//! ```
//!
//! where each summand is the determinant taken with rows ordered `(P, J)`
//! and columns ordered `(Q, J)`, i.e. the sorted-submatrix minor times the
//! interleaving parities of `J` into `P` and into `Q`.  The relative signs
//! are load-bearing: with all-positive summands the polynomials fail to
//! vanish on closures they must cut out (first visible at `V_{1,2}` over
//! `gl_4`, where the two summands acquire opposite orientations).  Each
//! spanning polynomial is normalized to a positive leading coefficient,
//! which is a harmless overall scalar.
//!
//! The ideal of the closure of `O_λ` is generated by `V_{0,p}` for
//! `p = 1..n` together with `V_{i,λ(min(i,ℓ))}` for `i = 1..n`, where
//! `ℓ` is the number of parts and `λ(i) = λ_1 + ... + λ_i − i + 1`.
//! The cap matters: `λ(i)` is exactly the smallest `p` for which every
//! `V_{i,p}` spanning polynomial vanishes on the closure (a `p×p` minor
//! of the Jordan matrix survives iff its row set splits into at most `i`
//! runs, and at most `ℓ` blocks can host a run), so zero-padding `λ`
//! past its length would instead inject minors that stay nonzero on the
//! open orbit.  This module materializes the spanning polynomials and
//! compares them against the rank-condition equations with the sampling
//! oracle — the two generating sets present the same variety but are far
//! from identical as polynomial lists.

use crate::orbits_gl::{
    closure_equations, derive_seed, membership_test, sample_orbit_point, Algebra,
    EquationSet, Provenance,
};
use crate::combinat::{k_subsets, k_subsets_of};
use crate::partitions::{enumerate_partitions, Partition};
use crate::polyalg::{Poly, SymbolicMatrix};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// One spanning polynomial of `V_{i,p}`, labelled by its `(P, Q)` pair.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VipPoly {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: Poly,
}

/// The spanning set of `V_{i,p}`; empty when the set is trivial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VipGenerator {
    pub i: usize,
    pub p: usize,
    pub n: usize,
    pub spanning: Vec<VipPoly>,
}

impl VipGenerator {
    pub fn is_trivial(&self) -> bool {
        self.spanning.is_empty()
    }
}

/// Spanning polynomials of `V_{i,p}` inside `gl_n`.  Trivial whenever
/// `i > p`, or when no admissible `J` exists for any `(P, Q)`.
pub fn v_ip_generators(i: usize, p: usize, n: usize) -> VipGenerator {
    assert!(p >= 1 && p <= n, "p = {p} outside 1..={n}");
    let mut spanning = Vec::new();
    if i <= p && i <= n {
        let x = SymbolicMatrix::generic(n);
        let isubs = k_subsets(n, i);
        for pset in &isubs {
            for qset in &isubs {
                let mut union: Vec<usize> = pset.iter().chain(qset.iter()).copied().collect();
                union.sort_unstable();
                union.dedup();
                let rest: Vec<usize> = (1..=n).filter(|v| !union.contains(v)).collect();
                let need = p - i;
                if need > rest.len() {
                    continue; // no admissible J for this (P, Q)
                }
                let mut acc = Poly::zero();
                for j in k_subsets_of(&rest, need) {
                    let rows = sorted_union(pset, &j);
                    let cols = sorted_union(qset, &j);
                    let minor = x.minor(&rows, &cols).expect("valid index sets");
                    if even_interleave(pset, &j) == even_interleave(qset, &j) {
                        acc.add_assign_ref(&minor);
                    } else {
                        acc.sub_assign_ref(&minor);
                    }
                }
                debug_assert!(!acc.is_zero(), "summands have disjoint supports");
                spanning.push(VipPoly {
                    rows: pset.clone(),
                    cols: qset.clone(),
                    poly: positive_leading(acc),
                });
            }
        }
    }
    VipGenerator { i, p, n, spanning }
}

fn sorted_union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out
}

/// Whether sorting the concatenation `(a, j)` of two ascending lists is an
/// even permutation.
fn even_interleave(a: &[usize], j: &[usize]) -> bool {
    let inversions: usize =
        a.iter().map(|&x| j.iter().filter(|&&y| y < x).count()).sum();
    inversions % 2 == 0
}

/// Scales by `−1` when the leading coefficient is negative.
fn positive_leading(poly: Poly) -> Poly {
    use num_traits::Signed;
    match poly.leading() {
        Some((_, c)) if c.is_negative() => poly.scale(&BigInt::from(-1)),
        _ => poly,
    }
}

/// Label of one `V_{i,p}` inside a generator assembly.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct VipLabel {
    pub i: usize,
    pub p: usize,
    pub count: usize,
    pub trivial: bool,
}

/// The assembled generator list for the ideal of one orbit closure.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JLambdaPresentation {
    pub lambda: Partition,
    pub labels: Vec<VipLabel>,
    pub generators: EquationSet,
}

impl JLambdaPresentation {
    /// Total spanning polynomials before deduplication (`Σ` label counts).
    pub fn spanning_count(&self) -> usize {
        self.generators.pre_dedup_count()
    }
}

/// Assembles `V_{0,p}` for `p = 1..n` and `V_{i,λ(i)}` for `i = 1..n`.
/// Trivial sets keep their label with an empty contribution; identical
/// polynomials arising under different labels are stored once with all
/// provenances.
pub fn j_lambda_generators(lambda: &Partition) -> JLambdaPresentation {
    let n = lambda.n();
    let mut labels = Vec::new();
    let mut generators = EquationSet::new(Algebra::Gl, lambda.clone());
    let absorb = |gen: VipGenerator, labels: &mut Vec<VipLabel>, set: &mut EquationSet| {
        labels.push(VipLabel {
            i: gen.i,
            p: gen.p,
            count: gen.spanning.len(),
            trivial: gen.spanning.is_empty(),
        });
        for vp in gen.spanning {
            set.insert(
                vp.poly,
                Provenance::Vip { i: gen.i, p: gen.p, rows: vp.rows, cols: vp.cols },
            );
        }
    };
    for p in 1..=n {
        absorb(v_ip_generators(0, p, n), &mut labels, &mut generators);
    }
    for i in 1..=n {
        // indices past the last part reuse its threshold; see module docs
        let p = lambda.weyman_lambda(i.min(lambda.len()));
        absorb(v_ip_generators(i, p, n), &mut labels, &mut generators);
    }
    JLambdaPresentation { lambda: lambda.clone(), labels, generators }
}

/// Per-stratum outcome of the sampling comparison.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratumAgreement {
    pub mu: Partition,
    pub dominated: bool,
    pub samples: usize,
    pub rank_vanishing: usize,
    pub weyman_vanishing: usize,
    pub agree: bool,
}

/// Comparison of the rank-condition equations against the `V_{i,p}`
/// assembly: raw counts, polynomials shared term-for-term, and
/// point-oracle agreement across every stratum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorComparison {
    pub lambda: Partition,
    pub closure_count: usize,
    pub closure_pre_dedup: usize,
    pub weyman_spanning_count: usize,
    pub weyman_distinct_count: usize,
    pub common: Vec<Poly>,
    pub strata: Vec<StratumAgreement>,
    pub oracle_agreement: bool,
}

pub fn compare_generator_sets(lambda: &Partition, samples: usize, seed: u64) -> GeneratorComparison {
    let rank_eqs = closure_equations(lambda);
    let presentation = j_lambda_generators(lambda);
    let weyman_eqs = &presentation.generators;
    let common: Vec<Poly> = rank_eqs
        .polys()
        .filter(|poly| weyman_eqs.contains(poly))
        .cloned()
        .collect();
    let mut strata = Vec::new();
    for mu in enumerate_partitions(lambda.n()) {
        let dominated = mu.dominance_leq(lambda).expect("same n");
        let mut rank_vanishing = 0;
        let mut weyman_vanishing = 0;
        let mut agree = true;
        for idx in 0..samples {
            let point = sample_orbit_point(&mu, derive_seed(seed, &mu, idx));
            let on_rank = membership_test(&point, &rank_eqs);
            let on_weyman = membership_test(&point, weyman_eqs);
            rank_vanishing += usize::from(on_rank);
            weyman_vanishing += usize::from(on_weyman);
            agree &= on_rank == on_weyman && on_rank == dominated;
        }
        strata.push(StratumAgreement {
            mu,
            dominated,
            samples,
            rank_vanishing,
            weyman_vanishing,
            agree,
        });
    }
    let oracle_agreement = strata.iter().all(|s| s.agree);
    GeneratorComparison {
        lambda: lambda.clone(),
        closure_count: rank_eqs.len(),
        closure_pre_dedup: rank_eqs.pre_dedup_count(),
        weyman_spanning_count: presentation.spanning_count(),
        weyman_distinct_count: weyman_eqs.len(),
        common,
        strata,
        oracle_agreement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn trace_generator() {
        let gen = v_ip_generators(0, 1, 3);
        assert_eq!(gen.spanning.len(), 1);
        let trace = &(&Poly::x(1, 1) + &Poly::x(2, 2)) + &Poly::x(3, 3);
        assert_eq!(gen.spanning[0].poly, trace);
        assert!(gen.spanning[0].rows.is_empty());
    }

    #[test]
    fn determinant_generator() {
        let gen = v_ip_generators(0, 3, 3);
        assert_eq!(gen.spanning.len(), 1);
        assert_eq!(gen.spanning[0].poly, SymbolicMatrix::generic(3).det());
    }

    #[test]
    fn triviality_above_the_diagonal() {
        assert!(v_ip_generators(3, 1, 3).is_trivial());
        assert!(v_ip_generators(2, 1, 3).is_trivial());
    }

    #[test]
    fn degenerate_equal_indices_give_plain_minors() {
        let gen = v_ip_generators(2, 2, 3);
        assert_eq!(gen.spanning.len(), 9);
        let x = SymbolicMatrix::generic(3);
        for vp in &gen.spanning {
            assert_eq!(vp.poly, x.minor(&vp.rows, &vp.cols).unwrap());
        }
    }

    #[test]
    fn principal_minor_sums_for_zero_row() {
        // V_{0,p} is a single polynomial: the sum of all p×p principal minors
        let x = SymbolicMatrix::generic(4);
        for p_size in 1..=4 {
            let gen = v_ip_generators(0, p_size, 4);
            assert_eq!(gen.spanning.len(), 1);
            let mut expected = Poly::zero();
            for j in k_subsets(4, p_size) {
                expected.add_assign_ref(&x.minor(&j, &j).unwrap());
            }
            assert_eq!(gen.spanning[0].poly, expected);
        }
    }

    #[test]
    fn spanning_polys_are_homogeneous_of_degree_p() {
        for n in 2..=4 {
            for i in 0..=n {
                for p_val in 1..=n {
                    let gen = v_ip_generators(i, p_val, n);
                    for vp in &gen.spanning {
                        assert!(vp.poly.is_homogeneous());
                        assert_eq!(vp.poly.total_degree(), Some(p_val));
                    }
                    if i <= p_val {
                        // count: one per (P,Q) with an admissible J
                        let pairs = k_subsets(n, i).len().pow(2);
                        assert!(gen.spanning.len() <= pairs);
                    }
                }
            }
        }
    }

    #[test]
    fn hook_assembly_labels() {
        let pres = j_lambda_generators(&p(&[2, 1]));
        let labels: Vec<(usize, usize, bool)> =
            pres.labels.iter().map(|l| (l.i, l.p, l.trivial)).collect();
        assert_eq!(
            labels,
            vec![
                (0, 1, false),
                (0, 2, false),
                (0, 3, false),
                (1, 2, false),
                (2, 2, false),
                (3, 2, true),
            ]
        );
        assert_eq!(pres.spanning_count(), 21);
        // the six off-diagonal V_{1,2} polynomials are single minors that
        // V_{2,2} lists again, so only 15 distinct polynomials remain
        assert_eq!(pres.generators.len(), 15);
    }

    #[test]
    fn origin_assembly_contains_entries() {
        let pres = j_lambda_generators(&p(&[1, 1, 1]));
        // V_{1,1} contributes the nine matrix entries
        for i in 1..=3 {
            for j in 1..=3 {
                assert!(pres.generators.contains(&Poly::x(i, j)));
            }
        }
    }

    #[test]
    fn single_row_assembly() {
        let pres = j_lambda_generators(&p(&[3]));
        // every i caps to λ(1) = 3, so only determinant copies appear
        let non_trivial: Vec<(usize, usize)> = pres
            .labels
            .iter()
            .filter(|l| !l.trivial)
            .map(|l| (l.i, l.p))
            .collect();
        assert_eq!(non_trivial, vec![(0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (3, 3)]);
        let det = SymbolicMatrix::generic(3).det();
        for label in &pres.labels {
            if label.i >= 1 && !label.trivial {
                let gen = v_ip_generators(label.i, label.p, 3);
                for vp in &gen.spanning {
                    assert_eq!(vp.poly, det);
                }
            }
        }
        // the distinct generators are just the three invariant sums
        assert_eq!(pres.generators.len(), 3);
    }

    #[test]
    fn vanishing_thresholds() {
        // every V_{i,p} spanning polynomial vanishes on O̅_λ exactly when
        // p reaches λ_1 + ... + λ_{min(i,ℓ)} − min(i,ℓ) + 1
        for n in 2..=4 {
            for lambda in enumerate_partitions(n) {
                for i in 0..=n {
                    for p_val in 1..=n {
                        let gen = v_ip_generators(i, p_val, n);
                        if gen.is_trivial() {
                            continue;
                        }
                        let threshold = if i == 0 {
                            1
                        } else {
                            lambda.weyman_lambda(i.min(lambda.len()))
                        };
                        let expected = p_val >= threshold;
                        let vanishes = (0..4).all(|idx| {
                            let point =
                                sample_orbit_point(&lambda, derive_seed(23, &lambda, idx));
                            gen.spanning.iter().all(|vp| {
                                use num_traits::Zero;
                                vp.poly.evaluate(&point.matrix, None).unwrap().is_zero()
                            })
                        });
                        assert_eq!(
                            vanishes, expected,
                            "V_{{{i},{p_val}}} on {lambda} (threshold {threshold})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn comparison_counts_for_hook() {
        let report = compare_generator_sets(&p(&[2, 1]), 4, 17);
        assert_eq!(report.closure_count, 18);
        assert_eq!(report.weyman_spanning_count, 21);
        // the nine plain 2×2 minors appear verbatim in both lists
        assert_eq!(report.common.len(), 9);
        assert!(report.oracle_agreement);
        for s in &report.strata {
            assert_eq!(s.rank_vanishing, if s.dominated { s.samples } else { 0 });
            assert_eq!(s.weyman_vanishing, s.rank_vanishing);
        }
    }

    #[test]
    fn comparison_exhaustive_for_two() {
        for lambda in enumerate_partitions(2) {
            let report = compare_generator_sets(&lambda, 6, 3);
            assert!(report.oracle_agreement, "{lambda}");
        }
    }
}
