use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use qt_core::oracle::RepSpace;
use qt_core::{
    canonical_stability, enumerate_hn_types, has_semistable, moduli_dimension,
    subdimension_vectors, verdict, DimensionVector, HnType, Quiver, Verdict,
};

use crate::error::CliError;
use crate::problem::ProblemSpec;
use crate::table::{Format, StrataTable};

pub const EXIT_RIGID: i32 = 0;
pub const EXIT_VANISHING: i32 = 10;
pub const EXIT_NO_CERTIFICATE: i32 = 20;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAILURE: i32 = 1;

/// Default cap on the number of dimension vectors a sweep may visit.
pub const DEFAULT_SWEEP_LIMIT: u128 = 100_000;

const LISTED_STRATA: usize = 5;

pub struct StrataOutput {
    pub table: StrataTable,
    pub body: String,
    pub summary: String,
}

pub fn cmd_strata(spec: &ProblemSpec, format: Format) -> Result<StrataOutput, CliError> {
    let table = StrataTable::build(spec)?;
    let body = table.render(format)?;
    let summary = table.summary();
    Ok(StrataOutput {
        table,
        body,
        summary,
    })
}

pub fn verdict_exit_code(v: &Verdict) -> i32 {
    if v.rigidity_certified {
        EXIT_RIGID
    } else if v.vanishing_certified {
        EXIT_VANISHING
    } else {
        EXIT_NO_CERTIFICATE
    }
}

pub fn cmd_verdict(spec: &ProblemSpec) -> Result<(Verdict, String, i32), CliError> {
    let v = verdict(&spec.quiver, &spec.d, &spec.theta)?;
    let report = verdict_report(spec, &v)?;
    Ok((v.clone(), report, verdict_exit_code(&v)))
}

fn yes(flag: bool, when_true: String, when_false: String) -> String {
    if flag {
        when_true
    } else {
        when_false
    }
}

fn list_strata(strata: &[HnType]) -> String {
    let mut listed: Vec<String> = strata
        .iter()
        .take(LISTED_STRATA)
        .map(ToString::to_string)
        .collect();
    if strata.len() > LISTED_STRATA {
        listed.push(format!("... {} more", strata.len() - LISTED_STRATA));
    }
    listed.join(", ")
}

pub fn verdict_report(spec: &ProblemSpec, v: &Verdict) -> Result<String, CliError> {
    let unstable = v.stratum_count - 1;
    let mut out = String::new();
    writeln!(
        out,
        "instance: {} vertices, {} arrows, d = {}, theta = {}{}",
        spec.quiver.vertex_count(),
        spec.quiver.arrow_count(),
        spec.d,
        spec.theta,
        if spec.canonical { " (canonical)" } else { "" }
    )
    .unwrap();
    let lines = [
        (
            "coprime",
            v.coprime,
            yes(
                v.coprime,
                "no 0 < e < d has theta(e) = 0".into(),
                "some 0 < e < d has theta(e) = 0".into(),
            ),
        ),
        (
            "acyclic",
            v.acyclic,
            yes(
                v.acyclic,
                "the quiver has no oriented cycle".into(),
                "the quiver has an oriented cycle".into(),
            ),
        ),
        (
            "amply_stable",
            v.amply_stable,
            match v.min_unstable_codim {
                None => "no unstable strata".into(),
                Some(c) => format!("minimum codimension of an unstable stratum is {c}"),
            },
        ),
        (
            "strongly_amply_stable",
            v.strongly_amply_stable,
            match &v.strong_failure_witness {
                None => "<e,d-e> <= -2 for every 0 < e < d with mu(e) > mu(d-e)".into(),
                Some(e) => {
                    let rest = &spec.d - e;
                    let pairing = qt_core::euler_pairing(&spec.quiver, e, &rest)?;
                    format!("e = {e} has mu(e) > mu(d-e) and <e,d-e> = {pairing}")
                }
            },
        ),
        (
            "all_strata_inequality",
            v.all_strata_inequality,
            yes(
                v.all_strata_inequality,
                format!("k_1 - k_l < eta on all {unstable} unstable strata"),
                format!(
                    "k_1 - k_l >= eta on {} of {unstable} unstable strata",
                    v.failing_strata.len()
                ),
            ),
        ),
        (
            "vanishing_certified",
            v.vanishing_certified,
            yes(
                v.vanishing_certified,
                "coprime and the inequality holds on every unstable stratum".into(),
                "needs coprime and the inequality on every unstable stratum".into(),
            ),
        ),
        (
            "rigidity_certified",
            v.rigidity_certified,
            yes(
                v.rigidity_certified,
                "vanishing certified and the quiver is acyclic".into(),
                "needs the vanishing certificate and an acyclic quiver".into(),
            ),
        ),
    ];
    for (name, value, why) in lines {
        writeln!(out, "{name}: {value} ({why})").unwrap();
    }
    if v.failing_strata.is_empty() {
        writeln!(out, "failing_strata: none").unwrap();
    } else {
        writeln!(out, "failing_strata: {}", list_strata(&v.failing_strata)).unwrap();
    }
    if v.coprime {
        writeln!(
            out,
            "moduli_dimension: {} (1 - <d,d>)",
            moduli_dimension(&spec.quiver, &spec.d)?
        )
        .unwrap();
    }
    Ok(out)
}

/// The flags reported for one dimension vector of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub d: DimensionVector,
    pub coprime: bool,
    pub amply: bool,
    pub strongly_amply: bool,
    pub all_strata_inequality: bool,
}

pub const SWEEP_COLUMNS: [&str; 5] = [
    "d",
    "coprime",
    "amply",
    "strongly_amply",
    "all_strata_inequality",
];

/// Number of dimension vectors `0 ≤ d ≤ d_max`.
pub fn sweep_size(d_max: &DimensionVector) -> u128 {
    d_max.entries().iter().map(|&x| u128::from(x) + 1).product()
}

/// Visits every `0 < d ≤ d_max` in lexicographic order with the canonical
/// stability parameter and writes a CSV row for each `d` with a nonempty
/// semistable locus. Rows are flushed as they are computed.
pub fn cmd_sweep<W: Write>(
    quiver: &Quiver,
    d_max: &DimensionVector,
    limit: u128,
    out: W,
) -> Result<Vec<SweepRow>, CliError> {
    quiver.check_len(d_max.len())?;
    let size = sweep_size(d_max);
    if size > limit {
        return Err(qt_core::Error::BudgetExceeded {
            count: size,
            budget: limit,
        }
        .into());
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(SWEEP_COLUMNS)?;
    writer.flush()?;
    let mut rows = Vec::new();
    for d in subdimension_vectors(d_max) {
        if d.is_zero() {
            continue;
        }
        let theta = canonical_stability(quiver, &d)?;
        if !has_semistable(quiver, &d, &theta)? {
            continue;
        }
        let v = verdict(quiver, &d, &theta)?;
        let row = SweepRow {
            d,
            coprime: v.coprime,
            amply: v.amply_stable,
            strongly_amply: v.strongly_amply_stable,
            all_strata_inequality: v.all_strata_inequality,
        };
        writer.write_record([
            row.d.to_string(),
            row.coprime.to_string(),
            row.amply.to_string(),
            row.strongly_amply.to_string(),
            row.all_strata_inequality.to_string(),
        ])?;
        writer.flush()?;
        rows.push(row);
    }
    Ok(rows)
}

pub struct CensusOutput {
    pub census: BTreeMap<HnType, u64>,
    pub report: String,
    /// Key containment and the dense-type implication both hold.
    pub consistent: bool,
}

pub fn cmd_oracle_census(
    spec: &ProblemSpec,
    field: u32,
    budget: u128,
) -> Result<CensusOutput, CliError> {
    let space = RepSpace::new(field, &spec.quiver, &spec.d, budget)?;
    let census = space.census(&spec.theta);
    let types = enumerate_hn_types(&spec.quiver, &spec.d, &spec.theta)?;
    let semistable = has_semistable(&spec.quiver, &spec.d, &spec.theta)?;
    let mut report = String::new();
    writeln!(report, "hn_type\tcount").unwrap();
    for (t, count) in &census {
        writeln!(report, "{t}\t{count}").unwrap();
    }
    let total: u64 = census.values().sum();
    let unknown: Vec<HnType> = census
        .keys()
        .filter(|t| !types.contains(t))
        .cloned()
        .collect();
    let dense_seen = census.keys().any(HnType::is_dense);
    writeln!(
        report,
        "points: {total} of {} over F_{field}",
        space.point_count()
    )
    .unwrap();
    writeln!(
        report,
        "types realized: {} of {} enumerated",
        census.len(),
        types.len()
    )
    .unwrap();
    if unknown.is_empty() {
        writeln!(report, "keys enumerated: true").unwrap();
    } else {
        writeln!(report, "keys enumerated: false ({})", list_strata(&unknown)).unwrap();
    }
    writeln!(
        report,
        "dense realized: {dense_seen}, has_semistable: {semistable}"
    )
    .unwrap();
    let consistent =
        unknown.is_empty() && (!dense_seen || semistable) && total == space.point_count();
    Ok(CensusOutput {
        census,
        report,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem_str;

    const KRONECKER: &str =
        r#"{"vertices":2,"arrows":[[1,2],[1,2],[1,2]],"d":[2,3],"theta":"canonical"}"#;
    const SECOND: &str = r#"{"vertices":3,"arrows":[[1,2],[1,3],[1,3],[1,3],[1,3],[1,3],[1,3],[2,3]],"d":[1,6,6],"theta":"canonical"}"#;

    fn sweep(quiver: &Quiver, d_max: &[u32]) -> (Vec<SweepRow>, String) {
        let mut buf = Vec::new();
        let rows = cmd_sweep(
            quiver,
            &DimensionVector::new(d_max.to_vec()),
            DEFAULT_SWEEP_LIMIT,
            &mut buf,
        )
        .unwrap();
        (rows, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn verdict_kronecker() {
        let (v, report, code) = cmd_verdict(&parse_problem_str(KRONECKER).unwrap()).unwrap();
        assert!(v.rigidity_certified);
        assert_eq!(code, EXIT_RIGID);
        assert!(report.contains("rigidity_certified: true"));
        assert!(report.contains("moduli_dimension: 6"));
        assert!(report.contains("minimum codimension of an unstable stratum is 3"));
    }

    #[test]
    fn verdict_second_example() {
        let (v, report, code) = cmd_verdict(&parse_problem_str(SECOND).unwrap()).unwrap();
        assert_eq!(code, EXIT_NO_CERTIFICATE);
        assert!(!v.amply_stable);
        assert!(
            report.contains("failing_strata: ((0,1,0),(1,5,6))"),
            "{report}"
        );
        assert!(report
            .contains("amply_stable: false (minimum codimension of an unstable stratum is 1)"));
    }

    #[test]
    fn exit_code_for_vanishing_without_acyclicity() {
        let mut v = verdict(&Quiver::kronecker(3), &[2, 3].into(), &[3, -2].into()).unwrap();
        v.rigidity_certified = false;
        assert_eq!(verdict_exit_code(&v), EXIT_VANISHING);
        v.vanishing_certified = false;
        assert_eq!(verdict_exit_code(&v), EXIT_NO_CERTIFICATE);
    }

    #[test]
    fn sweep_one_kronecker() {
        let (rows, text) = sweep(&Quiver::kronecker(1), &[1, 1]);
        let ds: Vec<String> = rows.iter().map(|r| r.d.to_string()).collect();
        assert_eq!(ds, ["(0,1)", "(1,0)", "(1,1)"]);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(
            text.lines().next().unwrap(),
            "d,coprime,amply,strongly_amply,all_strata_inequality"
        );
    }

    #[test]
    fn sweep_three_kronecker_contains_two_three() {
        let (rows, _) = sweep(&Quiver::kronecker(3), &[3, 3]);
        let row = rows.iter().find(|r| r.d == [2, 3].into()).unwrap();
        assert!(row.coprime && row.amply && row.strongly_amply && row.all_strata_inequality);
    }

    #[test]
    fn sweep_budget_guard() {
        let mut buf = Vec::new();
        let err = cmd_sweep(&Quiver::kronecker(3), &[9, 9].into(), 99, &mut buf).unwrap_err();
        assert!(matches!(
            err,
            CliError::Core(qt_core::Error::BudgetExceeded {
                count: 100,
                budget: 99
            })
        ));
        assert!(buf.is_empty());
    }

    #[test]
    fn census_small_kronecker() {
        let spec = parse_problem_str(
            r#"{"vertices":2,"arrows":[[1,2],[1,2],[1,2]],"d":[1,1],"theta":[1,-1]}"#,
        )
        .unwrap();
        let out = cmd_oracle_census(&spec, 2, qt_core::oracle::DEFAULT_BUDGET).unwrap();
        assert!(out.consistent);
        assert_eq!(out.census.values().sum::<u64>(), 8);
        assert!(out.report.contains("((1,1))\t7"));
    }
}
