//! Exact symbolic machinery for nilpotent orbit closures.
//!
//! The library is organised around a handful of layers:
//!
//! - [`partitions`]: integer partitions, rank sequences, dominance order,
//!   and the parity test for nilpotent matrices inside `sp_2m`.
//! - [`polyalg`]: sparse multivariate polynomials over `BigInt` in the
//!   matrix entries `x_{i,j}` (plus one localization variable `t`),
//!   symbolic matrices, and exact rational matrices.
//! - [`orbits_gl`]: rank-condition equations cutting out an orbit closure
//!   in `gl_n`, localization charts along the orbit itself, and seeded
//!   exact sampling of orbit points for cross-checks.
//! - [`weyman`]: the representation-theoretic generating sets `V_{i,p}`
//!   for the ideal of an orbit closure, with a sampling-based comparison
//!   against the rank-condition equations.
//! - [`orbits_sp`]: the symplectic form, the linear and quadratic
//!   constraint families cutting `sp_2m` out of `gl_2m`, and symplectic
//!   orbit sampling.
//! - [`padic`]: coefficient statistics, factorial bounds, admissible
//!   primes, and reduction of equation sets modulo a prime.
//! - [`verify`]: a self-check harness that re-runs the cross-validation
//!   oracles and renders a deterministic report.
//!
//! All arithmetic is exact; nothing in this crate uses floating point.

pub mod combinat;
pub mod orbits_gl;
pub mod orbits_sp;
pub mod padic;
pub mod partitions;
pub mod polyalg;
pub mod verify;
pub mod weyman;

pub use orbits_gl::{
    closure_equations, jordan_matrix, localization_charts, membership_test,
    nonvanishing_minors, sample_orbit_point, Algebra, Chart, ChartAtlas, Equation,
    EquationSet, LabeledMinor, OrbitPoint, Provenance,
};
pub use orbits_sp::{
    lambda_sp_sets, omega_matrix, sample_sp_orbit_point, sp_closure_equations,
    sp_orbit_charts, symplectic_lie_equations, OmegaMatrix, SpError, SpFamily,
    SpFamilyKind, SpMode, SymplecticConstraints,
};
pub use padic::{
    coefficient_bound, coefficient_report, reduce_mod_p, smallest_admissible_prime,
    verify_det_occurrences, CoefficientReport, PadicError,
};
pub use partitions::{
    enumerate_partitions, rank_counting, Partition, PartitionError, RankSequence,
};
pub use polyalg::{
    omega_g, CoefficientSet, Monomial, Poly, PolyError, RatMatrix, SymbolicMatrix, Var,
};
pub use verify::{run_verify, CheckResult, VerifyConfig, VerifyReport};
pub use weyman::{
    compare_generator_sets, j_lambda_generators, v_ip_generators, GeneratorComparison,
    JLambdaPresentation, VipGenerator,
};

/// Schema tag stamped into every JSON document the tool emits.
pub const SCHEMA_VERSION: &str = "orbitforge-v1";

/// Identifier of the monomial order used for all polynomial serialization.
///
/// Graded lexicographic order with the variable order
/// `x_{1,1} < x_{1,2} < ... < x_{n,n} < t`.
pub const MONOMIAL_ORDER: &str = "grlex-rowmajor-v1";
