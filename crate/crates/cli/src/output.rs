//! Rendering: JSON envelopes (the machine contract) and the fixed-layout
//! text formats.  Every JSON document carries the schema tag and, where
//! polynomials appear, the monomial-order identifier.  All output is
//! deterministic for a fixed configuration.

use orbitforge::orbits_gl::{Algebra, ChartAtlas, EquationSet};
use orbitforge::orbits_sp::{SpMode, SymplecticConstraints};
use orbitforge::verify::{CheckResult, VerifyReport};
use orbitforge::weyman::{GeneratorComparison, JLambdaPresentation, VipLabel};
use orbitforge::{MONOMIAL_ORDER, SCHEMA_VERSION};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("output serializes");
    text.push('\n');
    text
}

pub fn fmt_indices(indices: &[usize]) -> String {
    let inner: Vec<String> = indices.iter().map(|i| i.to_string()).collect();
    format!("[{}]", inner.join(","))
}

/// `sp_mode` token plus the printed warning for the group-condition mode.
fn sp_note(mode: SpMode) -> Option<&'static str> {
    match mode {
        SpMode::Lie => None,
        SpMode::Group => Some("group condition"),
    }
}

#[derive(Serialize)]
pub struct SetEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub monomial_order: &'static str,
    pub algebra: Algebra,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub lambda: &'a [usize],
    pub k_range: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sp_mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sp_note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gerstenhaber: Option<bool>,
    pub equation_count: usize,
    pub pre_dedup_count: usize,
    pub equation_set: &'a EquationSet,
}

impl<'a> SetEnvelope<'a> {
    pub fn new(
        command: &'static str,
        set: &'a EquationSet,
        k_range: &'static str,
        sp_mode: Option<SpMode>,
    ) -> SetEnvelope<'a> {
        SetEnvelope {
            schema: SCHEMA_VERSION,
            command,
            monomial_order: MONOMIAL_ORDER,
            algebra: set.algebra(),
            n: set.n(),
            m: matches!(set.algebra(), Algebra::Sp).then(|| set.n() / 2),
            lambda: set.lambda().parts(),
            k_range,
            sp_mode: sp_mode.map(SpMode::token),
            sp_note: sp_mode.and_then(sp_note),
            gerstenhaber: sp_mode.map(|_| true),
            equation_count: set.len(),
            pre_dedup_count: set.pre_dedup_count(),
            equation_set: set,
        }
    }
}

fn header_line(
    command: &str,
    set: &EquationSet,
    k_range: &str,
    sp_mode: Option<SpMode>,
) -> String {
    let mut line = format!("{command}  algebra={:?}", set.algebra());
    line.make_ascii_lowercase();
    if let Algebra::Sp = set.algebra() {
        line.push_str(&format!("  m={}", set.n() / 2));
    }
    line.push_str(&format!("  n={}  lambda={}", set.n(), set.lambda()));
    if let Some(mode) = sp_mode {
        line.push_str(&format!("  sp_mode={}", mode.token()));
        if let Some(note) = sp_note(mode) {
            line.push_str(&format!(" ({note})"));
        }
        line.push_str("  gerstenhaber=true");
    }
    line.push_str(&format!("  k_range={k_range}"));
    line
}

pub fn closure_text(set: &EquationSet, k_range: &str, sp_mode: Option<SpMode>) -> String {
    let mut out = header_line("closure", set, k_range, sp_mode);
    out.push('\n');
    out.push_str(&format!(
        "equations: {}  (pre-dedup {})\n",
        set.len(),
        set.pre_dedup_count()
    ));
    for (i, eq) in set.equations().iter().enumerate() {
        out.push_str(&format!("{:>4}.  {}\n", i + 1, eq.poly));
    }
    out
}

#[derive(Serialize)]
pub struct ChartsEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub monomial_order: &'static str,
    pub algebra: Algebra,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub lambda: &'a [usize],
    pub k_range: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sp_mode: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sp_note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gerstenhaber: Option<bool>,
    pub chart_count: usize,
    pub origin_warning: bool,
    pub atlas: &'a ChartAtlas,
}

impl<'a> ChartsEnvelope<'a> {
    pub fn new(
        atlas: &'a ChartAtlas,
        k_range: &'static str,
        sp_mode: Option<SpMode>,
    ) -> ChartsEnvelope<'a> {
        let set = &*atlas.base;
        ChartsEnvelope {
            schema: SCHEMA_VERSION,
            command: "charts",
            monomial_order: MONOMIAL_ORDER,
            algebra: set.algebra(),
            n: set.n(),
            m: matches!(set.algebra(), Algebra::Sp).then(|| set.n() / 2),
            lambda: atlas.lambda.parts(),
            k_range,
            sp_mode: sp_mode.map(SpMode::token),
            sp_note: sp_mode.and_then(sp_note),
            gerstenhaber: sp_mode.map(|_| true),
            chart_count: atlas.charts.len(),
            origin_warning: atlas.origin_warning,
            atlas,
        }
    }
}

pub fn charts_text(atlas: &ChartAtlas, k_range: &str, sp_mode: Option<SpMode>) -> String {
    let mut out = header_line("charts", &atlas.base, k_range, sp_mode);
    out.push('\n');
    if atlas.origin_warning {
        out.push_str("origin stratum: the orbit is a single point; no charts\n");
        return out;
    }
    out.push_str(&format!(
        "base equations: {}  charts: {}\n",
        atlas.base.len(),
        atlas.charts.len()
    ));
    for (i, chart) in atlas.charts.iter().enumerate() {
        out.push_str(&format!(
            "{:>4}.  minor k={} rows={} cols={}  relation: {}\n",
            i + 1,
            chart.minor.k,
            fmt_indices(&chart.minor.rows),
            fmt_indices(&chart.minor.cols),
            chart.relation
        ));
    }
    out
}

#[derive(Serialize)]
pub struct WeymanEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub monomial_order: &'static str,
    pub n: usize,
    pub lambda: &'a [usize],
    pub labels: &'a [VipLabel],
    pub spanning_count: usize,
    pub distinct_count: usize,
    pub generators: &'a EquationSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<&'a GeneratorComparison>,
}

impl<'a> WeymanEnvelope<'a> {
    pub fn new(
        presentation: &'a JLambdaPresentation,
        comparison: Option<&'a GeneratorComparison>,
    ) -> WeymanEnvelope<'a> {
        WeymanEnvelope {
            schema: SCHEMA_VERSION,
            command: "weyman",
            monomial_order: MONOMIAL_ORDER,
            n: presentation.lambda.n(),
            lambda: presentation.lambda.parts(),
            labels: &presentation.labels,
            spanning_count: presentation.spanning_count(),
            distinct_count: presentation.generators.len(),
            generators: &presentation.generators,
            comparison,
        }
    }
}

pub fn weyman_text(
    presentation: &JLambdaPresentation,
    comparison: Option<&GeneratorComparison>,
) -> String {
    let mut out = format!(
        "weyman  n={}  lambda={}\n",
        presentation.lambda.n(),
        presentation.lambda
    );
    out.push_str("labels:\n");
    for label in &presentation.labels {
        if label.trivial {
            out.push_str(&format!("  V_{{{},{}}}  trivial\n", label.i, label.p));
        } else {
            out.push_str(&format!(
                "  V_{{{},{}}}  spanning {}\n",
                label.i, label.p, label.count
            ));
        }
    }
    out.push_str(&format!(
        "generators: {} distinct  ({} spanning)\n",
        presentation.generators.len(),
        presentation.spanning_count()
    ));
    for (i, eq) in presentation.generators.equations().iter().enumerate() {
        out.push_str(&format!("{:>4}.  {}\n", i + 1, eq.poly));
    }
    if let Some(report) = comparison {
        out.push_str(&format!(
            "comparison: closure {} vs spanning {}  common {}  oracle agreement: {}\n",
            report.closure_count,
            report.weyman_spanning_count,
            report.common.len(),
            if report.oracle_agreement { "yes" } else { "NO" }
        ));
        for stratum in &report.strata {
            out.push_str(&format!(
                "  mu={}  dominated={}  rank {}/{}  generators {}/{}  {}\n",
                stratum.mu,
                stratum.dominated,
                stratum.rank_vanishing,
                stratum.samples,
                stratum.weyman_vanishing,
                stratum.samples,
                if stratum.agree { "agree" } else { "DISAGREE" }
            ));
        }
    }
    out
}

#[derive(Serialize)]
pub struct ConstraintsEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub monomial_order: &'static str,
    pub m: usize,
    pub n: usize,
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
    pub total_count: usize,
    pub constraints: &'a SymplecticConstraints,
}

impl<'a> ConstraintsEnvelope<'a> {
    pub fn new(constraints: &'a SymplecticConstraints) -> ConstraintsEnvelope<'a> {
        ConstraintsEnvelope {
            schema: SCHEMA_VERSION,
            command: "constraints",
            monomial_order: MONOMIAL_ORDER,
            m: constraints.m,
            n: 2 * constraints.m,
            mode: constraints.mode.token(),
            note: sp_note(constraints.mode),
            total_count: constraints.total_count(),
            constraints,
        }
    }
}

fn family_token(kind: orbitforge::orbits_sp::SpFamilyKind) -> &'static str {
    use orbitforge::orbits_sp::SpFamilyKind::*;
    match kind {
        Lie => "lie",
        ConstantOdd => "constant_odd",
        ConstantEven => "constant_even",
        Homogeneous => "homogeneous",
    }
}

pub fn constraints_text(constraints: &SymplecticConstraints) -> String {
    let mut out = format!(
        "constraints  m={}  mode={}",
        constraints.m,
        constraints.mode.token()
    );
    if let Some(note) = sp_note(constraints.mode) {
        out.push_str(&format!(" ({note})"));
    }
    out.push('\n');
    for family in &constraints.families {
        out.push_str(&format!(
            "family {}: {} members\n",
            family_token(family.kind),
            family.members.len()
        ));
        for member in &family.members {
            out.push_str(&format!(
                "  ({},{}):  {}\n",
                member.row, member.col, member.poly
            ));
        }
    }
    out.push_str(&format!("total: {}\n", constraints.total_count()));
    out
}

/// Exact integers that may exceed any machine width travel as JSON numbers
/// when they fit in a `u64` magnitude, else as decimal strings.
pub fn big_value(value: &BigInt) -> Value {
    match u64::try_from(value.clone()) {
        Ok(small) => Value::from(small),
        Err(_) => match i64::try_from(value.clone()) {
            Ok(small) => Value::from(small),
            Err(_) => Value::from(value.to_string()),
        },
    }
}

#[derive(Serialize)]
pub struct BoundEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub n: usize,
    pub lambda: &'a [usize],
    pub paper_bound: Value,
    pub prime: u64,
    #[serde(rename = "max_coeff_F")]
    pub max_coeff_f: Value,
    #[serde(rename = "max_coeff_H")]
    pub max_coeff_h: Value,
    pub f_vs_h: &'a str,
    pub f_equations: usize,
    pub h_equations: usize,
}

pub fn bound_text(envelope: &BoundEnvelope) -> String {
    format!(
        "bound  n={}  lambda={}\npaper_bound: {}\nprime: {}\nmax_coeff_F: {}\nmax_coeff_H: {}\nrelation: {}\n",
        envelope.n,
        fmt_indices(envelope.lambda),
        envelope.paper_bound,
        envelope.prime,
        envelope.max_coeff_f,
        envelope.max_coeff_h,
        envelope.f_vs_h
    )
}

#[derive(Serialize)]
pub struct ReduceEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub monomial_order: &'static str,
    pub p: u64,
    pub equation_count: usize,
    pub equation_set: &'a EquationSet,
}

#[derive(Serialize)]
pub struct OracleRow {
    pub n: usize,
    pub pairs: usize,
    pub checks: usize,
    pub mismatches: usize,
}

#[derive(Serialize)]
pub struct OracleEnvelope {
    pub schema: &'static str,
    pub command: &'static str,
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
    pub rows: Vec<OracleRow>,
    pub agreement: bool,
    pub failures: Vec<String>,
}

pub fn oracle_text(envelope: &OracleEnvelope) -> String {
    let mut out = format!(
        "oracle  max_n={}  samples={}  seed={}\n",
        envelope.max_n, envelope.samples, envelope.seed
    );
    for row in &envelope.rows {
        out.push_str(&format!(
            "n={}: {} pairs  {} checks  {} mismatches\n",
            row.n, row.pairs, row.checks, row.mismatches
        ));
    }
    for failure in &envelope.failures {
        out.push_str(&format!("mismatch: {failure}\n"));
    }
    if envelope.agreement {
        out.push_str("all strata agree with the dominance order\n");
    } else {
        out.push_str("DISAGREEMENT with the dominance order\n");
    }
    out
}

#[derive(Serialize)]
pub struct VerifyEnvelope<'a> {
    pub schema: &'static str,
    pub command: &'static str,
    pub max_n: usize,
    pub samples: usize,
    pub seed: u64,
    pub checks: &'a [CheckResult],
    pub all_passed: bool,
}

impl<'a> VerifyEnvelope<'a> {
    pub fn new(report: &'a VerifyReport) -> VerifyEnvelope<'a> {
        VerifyEnvelope {
            schema: SCHEMA_VERSION,
            command: "verify",
            max_n: report.max_n,
            samples: report.samples,
            seed: report.seed,
            checks: &report.checks,
            all_passed: report.all_passed,
        }
    }
}
