//! Command implementations.  Each returns the full output as a `String`
//! so the binary owns a single write to stdout; errors split into usage
//! (exit 2) and domain (exit 1).

use crate::args::*;
use crate::cache::{Cache, RunConfig};
use crate::cas::{self, CasTarget, Dialect};
use crate::output::*;
use orbitforge::orbits_gl::{
    closure_equations_ranged, derive_seed, localization_charts_ranged, membership_test,
    sample_orbit_point, Algebra, ChartAtlas, EquationSet,
};
use orbitforge::orbits_sp::{
    lambda_sp_sets, sp_closure_equations_ranged, sp_orbit_charts_ranged,
    symplectic_lie_equations, SpMode,
};
use orbitforge::padic::{coefficient_report, reduce_mod_p, PadicError};
use orbitforge::partitions::{enumerate_partitions, Partition, PartitionError};
use orbitforge::verify::{run_verify, VerifyConfig};
use orbitforge::weyman::{compare_generator_sets, j_lambda_generators};
use rayon::prelude::*;
use std::io::Read;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<PartitionError> for CliError {
    fn from(err: PartitionError) -> CliError {
        CliError::Domain(err.to_string())
    }
}

impl From<PadicError> for CliError {
    fn from(err: PadicError) -> CliError {
        CliError::Domain(err.to_string())
    }
}

/// Largest n the sampling oracle will sweep; beyond this the closure sets
/// of the rectangular partitions no longer fit in memory.
const ORACLE_MAX_N: usize = 5;

pub fn run(cli: Cli) -> Result<String, CliError> {
    let cache = Cache::new(cli.cache_dir.clone());
    match cli.command {
        Command::Closure(args) => closure(args, &cache),
        Command::Charts(args) => charts(args, &cache),
        Command::Weyman(args) => weyman(args, &cache),
        Command::Constraints(args) => constraints(args),
        Command::Bound(args) => bound(args),
        Command::Reduce(args) => reduce(args),
        Command::Oracle(args) => oracle(args, &cache),
        Command::Verify(args) => verify(args),
        Command::Export(args) => export(args, &cache),
    }
}

/// A fully validated orbit selection.
struct Orbit {
    algebra: Algebra,
    n: usize,
    lambda: Partition,
    sp_mode: SpMode,
    k_range: KRangeArg,
}

fn resolve(selector: &OrbitSelector) -> Result<Orbit, CliError> {
    let algebra = match (selector.n, selector.m, selector.algebra) {
        (Some(_), None, None | Some(AlgebraArg::Gl)) => Algebra::Gl,
        (None, Some(_), None | Some(AlgebraArg::Sp)) => Algebra::Sp,
        (Some(_), None, Some(AlgebraArg::Sp)) => {
            return Err(CliError::Usage(
                "--algebra sp takes --m (half the matrix size), not --n".into(),
            ))
        }
        (None, Some(_), Some(AlgebraArg::Gl)) => {
            return Err(CliError::Usage("--algebra gl takes --n, not --m".into()))
        }
        // clap's argument group guarantees exactly one of --n / --m
        _ => unreachable!("size group admits exactly one of --n/--m"),
    };
    let lambda = Partition::parse(&selector.lambda)?;
    let n = match algebra {
        Algebra::Gl => selector.n.unwrap(),
        Algebra::Sp => 2 * selector.m.unwrap(),
    };
    if lambda.n() != n {
        let target = match algebra {
            Algebra::Gl => format!("n = {n}"),
            Algebra::Sp => format!("2m = {n}"),
        };
        return Err(CliError::Domain(format!(
            "partition {lambda} sums to {}, not {target}",
            lambda.n()
        )));
    }
    if algebra == Algebra::Sp && !lambda.gerstenhaber_valid()? {
        return Err(CliError::Domain(
            "no symplectic orbit for this partition".into(),
        ));
    }
    Ok(Orbit {
        algebra,
        n,
        lambda,
        sp_mode: selector.sp_mode.mode(),
        k_range: selector.k_range,
    })
}

impl Orbit {
    fn config(&self, command: &'static str) -> RunConfig {
        RunConfig {
            command,
            algebra: self.algebra,
            n: self.n,
            lambda: self.lambda.parts().to_vec(),
            sp_mode: match self.algebra {
                Algebra::Gl => None,
                Algebra::Sp => Some(self.sp_mode.token()),
            },
            k_range: self.k_range.token(),
        }
    }

    fn sp_mode(&self) -> Option<SpMode> {
        match self.algebra {
            Algebra::Gl => None,
            Algebra::Sp => Some(self.sp_mode),
        }
    }

    fn equations(&self, cache: &Cache) -> EquationSet {
        cache.get_or_compute(&self.config("closure"), || match self.algebra {
            Algebra::Gl => closure_equations_ranged(&self.lambda, self.k_range.range()),
            Algebra::Sp => {
                sp_closure_equations_ranged(&self.lambda, self.sp_mode, self.k_range.range())
                    .expect("partition already gated")
            }
        })
    }

    fn atlas(&self, cache: &Cache) -> ChartAtlas {
        cache.get_or_compute(&self.config("charts"), || match self.algebra {
            Algebra::Gl => localization_charts_ranged(&self.lambda, self.k_range.range()),
            Algebra::Sp => {
                sp_orbit_charts_ranged(&self.lambda, self.sp_mode, self.k_range.range())
                    .expect("partition already gated")
            }
        })
    }

    fn describe(&self) -> String {
        match self.algebra {
            Algebra::Gl => format!("orbit closure of {} in gl_{}", self.lambda, self.n),
            Algebra::Sp => format!(
                "symplectic orbit closure of {} in sp_{} ({} constraints)",
                self.lambda,
                self.n,
                self.sp_mode.token()
            ),
        }
    }
}

fn closure(args: ClosureArgs, cache: &Cache) -> Result<String, CliError> {
    let orbit = resolve(&args.orbit)?;
    let set = orbit.equations(cache);
    Ok(match args.format {
        FormatArg::Json => to_json(&SetEnvelope::new(
            "closure",
            &set,
            orbit.k_range.token(),
            orbit.sp_mode(),
        )),
        FormatArg::Text => closure_text(&set, orbit.k_range.token(), orbit.sp_mode()),
        FormatArg::Cas => {
            let target = CasTarget {
                title: orbit.describe(),
                n: orbit.n,
                include_t: false,
                polys: set.polys().collect(),
            };
            cas::render_script(&target, dialect(args.dialect))
        }
    })
}

fn dialect(arg: DialectArg) -> Dialect {
    match arg {
        DialectArg::Singular => Dialect::Singular,
        DialectArg::Macaulay2 => Dialect::Macaulay2,
    }
}

fn charts(args: ChartsArgs, cache: &Cache) -> Result<String, CliError> {
    let orbit = resolve(&args.orbit)?;
    let atlas = orbit.atlas(cache);
    Ok(match args.format {
        FormatArg::Json => to_json(&ChartsEnvelope::new(
            &atlas,
            orbit.k_range.token(),
            orbit.sp_mode(),
        )),
        FormatArg::Text => charts_text(&atlas, orbit.k_range.token(), orbit.sp_mode()),
        FormatArg::Cas => {
            return Err(CliError::Usage(
                "charts have no single script; use export --source charts --chart K".into(),
            ))
        }
    })
}

fn weyman(args: WeymanArgs, cache: &Cache) -> Result<String, CliError> {
    let lambda = Partition::parse(&args.lambda)?;
    if lambda.n() != args.n {
        return Err(CliError::Domain(format!(
            "partition {lambda} sums to {}, not n = {}",
            lambda.n(),
            args.n
        )));
    }
    let config = RunConfig {
        command: "weyman",
        algebra: Algebra::Gl,
        n: args.n,
        lambda: lambda.parts().to_vec(),
        sp_mode: None,
        k_range: "none",
    };
    let presentation = cache.get_or_compute(&config, || j_lambda_generators(&lambda));
    let comparison = args
        .compare
        .then(|| compare_generator_sets(&lambda, args.samples, args.seed));
    Ok(match args.format {
        FormatArg::Json => to_json(&WeymanEnvelope::new(&presentation, comparison.as_ref())),
        FormatArg::Text => weyman_text(&presentation, comparison.as_ref()),
        FormatArg::Cas => {
            let target = CasTarget {
                title: format!("generator assembly for {} in gl_{}", lambda, args.n),
                n: args.n,
                include_t: false,
                polys: presentation.generators.polys().collect(),
            };
            cas::render_script(&target, Dialect::Singular)
        }
    })
}

fn constraints(args: ConstraintsArgs) -> Result<String, CliError> {
    if args.m == 0 {
        return Err(CliError::Domain("m must be positive".into()));
    }
    let set = match args.mode.mode() {
        SpMode::Lie => symplectic_lie_equations(args.m),
        SpMode::Group => lambda_sp_sets(args.m),
    };
    Ok(match args.format {
        FormatArg::Json => to_json(&ConstraintsEnvelope::new(&set)),
        FormatArg::Text => constraints_text(&set),
        FormatArg::Cas => {
            return Err(CliError::Usage(
                "constraint families are not an ideal; export a closure instead".into(),
            ))
        }
    })
}

fn bound(args: BoundArgs) -> Result<String, CliError> {
    let lambda = Partition::parse(&args.lambda)?;
    if lambda.n() != args.n {
        return Err(CliError::Domain(format!(
            "partition {lambda} sums to {}, not n = {}",
            lambda.n(),
            args.n
        )));
    }
    let report = coefficient_report(&lambda);
    let envelope = BoundEnvelope {
        schema: orbitforge::SCHEMA_VERSION,
        command: "bound",
        n: args.n,
        lambda: lambda.parts(),
        paper_bound: big_value(&report.paper_bound),
        prime: report.prime,
        max_coeff_f: big_value(&report.max_coeff_f),
        max_coeff_h: big_value(&report.max_coeff_h),
        f_vs_h: report.f_vs_h,
        f_equations: report.f_sets.len(),
        h_equations: report.h_sets.len(),
    };
    Ok(match args.format {
        FormatArg::Json => to_json(&envelope),
        FormatArg::Text => bound_text(&envelope),
        FormatArg::Cas => {
            return Err(CliError::Usage("bound reports have no script form".into()))
        }
    })
}

fn reduce(args: ReduceArgs) -> Result<String, CliError> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|err| CliError::Domain(format!("reading stdin failed: {err}")))?;
    let set = parse_equation_set(&text)?;
    let reduced = reduce_mod_p(&set, args.p)?;
    let envelope = ReduceEnvelope {
        schema: orbitforge::SCHEMA_VERSION,
        command: "reduce",
        monomial_order: orbitforge::MONOMIAL_ORDER,
        p: args.p,
        equation_count: reduced.len(),
        equation_set: &reduced,
    };
    Ok(to_json(&envelope))
}

/// Accepts either a bare equation-set document or any envelope carrying an
/// `equation_set` field (closure and reduce output both qualify).
fn parse_equation_set(text: &str) -> Result<EquationSet, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|err| CliError::Domain(format!("stdin is not JSON: {err}")))?;
    let inner = match value.get("equation_set") {
        Some(inner) => inner.clone(),
        None => value,
    };
    serde_json::from_value(inner)
        .map_err(|err| CliError::Domain(format!("stdin is not an equation set: {err}")))
}

fn oracle(args: OracleArgs, cache: &Cache) -> Result<String, CliError> {
    if args.max_n < 2 {
        return Err(CliError::Domain("--max-n must be at least 2".into()));
    }
    if args.max_n > ORACLE_MAX_N {
        return Err(CliError::Domain(format!(
            "--max-n is capped at {ORACLE_MAX_N}: closure sets of larger rectangular partitions exceed memory"
        )));
    }
    let mut rows = Vec::new();
    let mut failures: Vec<String> = Vec::new();
    for n in 2..=args.max_n {
        let strata = enumerate_partitions(n);
        let mut mismatches = 0usize;
        for lambda in &strata {
            let orbit = Orbit {
                algebra: Algebra::Gl,
                n,
                lambda: lambda.clone(),
                sp_mode: SpMode::Lie,
                k_range: KRangeArg::Pruned,
            };
            let eqs = orbit.equations(cache);
            for mu in &strata {
                let expected = mu.dominance_leq(lambda)?;
                let bad: Vec<usize> = (0..args.samples)
                    .into_par_iter()
                    .filter(|&idx| {
                        let point = sample_orbit_point(mu, derive_seed(args.seed, mu, idx));
                        membership_test(&point, &eqs) != expected
                    })
                    .collect();
                mismatches += bad.len();
                if let Some(&idx) = bad.first() {
                    failures.push(format!(
                        "mu={mu} lambda={lambda} sample={idx}: membership != dominance ({expected})"
                    ));
                }
            }
        }
        rows.push(OracleRow {
            n,
            pairs: strata.len() * strata.len(),
            checks: strata.len() * strata.len() * args.samples,
            mismatches,
        });
    }
    failures.sort();
    failures.truncate(10);
    let agreement = rows.iter().all(|r| r.mismatches == 0);
    let envelope = OracleEnvelope {
        schema: orbitforge::SCHEMA_VERSION,
        command: "oracle",
        max_n: args.max_n,
        samples: args.samples,
        seed: args.seed,
        rows,
        agreement,
        failures,
    };
    let rendered = match args.format {
        FormatArg::Json => to_json(&envelope),
        FormatArg::Text => oracle_text(&envelope),
        FormatArg::Cas => {
            return Err(CliError::Usage("oracle reports have no script form".into()))
        }
    };
    if agreement {
        Ok(rendered)
    } else {
        // show the evidence, then fail the run
        print!("{rendered}");
        Err(CliError::Domain(
            "sampling oracle disagrees with the dominance order".into(),
        ))
    }
}

fn verify(args: VerifyArgs) -> Result<String, CliError> {
    let config = VerifyConfig {
        max_n: args.max_n,
        samples: args.samples,
        seed: args.seed,
    };
    let report = run_verify(&config);
    let rendered = match args.format {
        FormatArg::Json => to_json(&VerifyEnvelope::new(&report)),
        FormatArg::Text => report.render_text(),
        FormatArg::Cas => {
            return Err(CliError::Usage("verify reports have no script form".into()))
        }
    };
    if report.all_passed {
        Ok(rendered)
    } else {
        print!("{rendered}");
        Err(CliError::Domain("self-check suite failed".into()))
    }
}

fn export(args: ExportArgs, cache: &Cache) -> Result<String, CliError> {
    let orbit = resolve(&args.orbit)?;
    match args.source {
        ExportSource::Closure => {
            let set = orbit.equations(cache);
            let target = CasTarget {
                title: orbit.describe(),
                n: orbit.n,
                include_t: false,
                polys: set.polys().collect(),
            };
            Ok(cas::render_script(&target, dialect(args.dialect)))
        }
        ExportSource::Weyman => {
            if orbit.algebra == Algebra::Sp {
                return Err(CliError::Usage(
                    "the V_{i,p} assembly is a gl construction; use --n".into(),
                ));
            }
            let presentation = j_lambda_generators(&orbit.lambda);
            let target = CasTarget {
                title: format!("generator assembly for {} in gl_{}", orbit.lambda, orbit.n),
                n: orbit.n,
                include_t: false,
                polys: presentation.generators.polys().collect(),
            };
            Ok(cas::render_script(&target, dialect(args.dialect)))
        }
        ExportSource::Charts => {
            let index = args.chart.ok_or_else(|| {
                CliError::Usage("--source charts requires --chart <index>".into())
            })?;
            let atlas = orbit.atlas(cache);
            if atlas.origin_warning {
                return Err(CliError::Domain(
                    "the origin stratum is a single point and has no charts".into(),
                ));
            }
            let chart = atlas.charts.get(index).ok_or_else(|| {
                CliError::Domain(format!(
                    "chart index {index} out of range: {} charts",
                    atlas.charts.len()
                ))
            })?;
            let target = CasTarget {
                title: format!(
                    "chart {index} (k={}, rows={}, cols={}) of the {}",
                    chart.minor.k,
                    fmt_indices(&chart.minor.rows),
                    fmt_indices(&chart.minor.cols),
                    orbit.describe()
                ),
                n: orbit.n,
                include_t: true,
                polys: chart.all_polys(),
            };
            Ok(cas::render_script(&target, dialect(args.dialect)))
        }
    }
}
