use serde::{Deserialize, Serialize};

use super::{enumerate_classes, ClassRecord, Engines};
use crate::error::Result;
use crate::ladder::LadderKind;

/// A class count compared against an expected value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountCheck {
    pub description: String,
    pub expected: usize,
    pub actual: usize,
    /// Hard checks must hold; soft ones are reported as findings.
    pub hard: bool,
}

impl CountCheck {
    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

/// Count checks that apply to one shape, given its full record list.
pub fn class_count_checks(kind: LadderKind, n: usize, records: &[ClassRecord]) -> Vec<CountCheck> {
    let table: &[(LadderKind, usize, usize, usize, usize, bool)] = &[
        (LadderKind::Circular, 4, 3, 3, 1, true),
        (LadderKind::Moebius, 5, 3, 3, 2, true),
        (LadderKind::Circular, 5, 2, 3, 10, false),
        (LadderKind::Circular, 6, 3, 4, 8, false),
        (LadderKind::Moebius, 4, 2, 2, 5, false),
    ];
    table
        .iter()
        .filter(|t| t.0 == kind && t.1 == n)
        .map(|&(kind, n, lo, hi, expected, hard)| {
            let actual = records
                .iter()
                .filter(|r| r.kind == kind && r.n == n && (lo..=hi).contains(&r.negatives))
                .count();
            let range = if lo == hi {
                format!("{lo}")
            } else {
                format!("{lo} to {hi}")
            };
            CountCheck {
                description: format!(
                    "{}_{n} classes with {range} negative edges",
                    kind.short_name()
                ),
                expected,
                actual,
                hard,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeSummary {
    pub kind: LadderKind,
    pub n: usize,
    pub classes: usize,
    pub admissible: usize,
    pub max_negatives: usize,
    pub max_flow_number: Option<i32>,
    /// Admissible classes whose best known flow needs `k = 6`.
    pub needing_six: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub records: Vec<ClassRecord>,
    pub summaries: Vec<ShapeSummary>,
    pub count_checks: Vec<CountCheck>,
    /// Every admissible class has a 5-flow, except the one `CL_4` class
    /// with a 6-flow.
    pub claim_holds: bool,
    pub findings: Vec<String>,
}

/// Best flow number known for a record: exact if an exhaustive engine ran.
fn best_k(r: &ClassRecord) -> Option<i32> {
    r.flow_number_oracle.or(r.flow_number_dp).or(r.prover_k)
}

/// Runs the engines over every class of each shape. Engine disagreement
/// is an error.
pub fn theorem_report(shapes: &[(LadderKind, usize)], engines: Engines) -> Result<TheoremReport> {
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    let mut count_checks = Vec::new();
    let mut findings = Vec::new();
    let mut claim_holds = true;
    for &(kind, n) in shapes {
        let recs = enumerate_classes(kind, n, None, engines)?;
        let mut needing_six = 0;
        for r in &recs {
            let k = best_k(r);
            if r.admissible && engines != Engines::NONE {
                match k {
                    Some(k) if k <= 5 => {}
                    Some(6) if r.is_cl4_exception() => needing_six += 1,
                    Some(k) => {
                        claim_holds = false;
                        if k == 6 {
                            needing_six += 1;
                        }
                        findings.push(format!("{} {} needs k = {k}", r.spec().label(), r.signs));
                    }
                    None => {
                        claim_holds = false;
                        findings.push(format!(
                            "{} {} has no flow found",
                            r.spec().label(),
                            r.signs
                        ));
                    }
                }
            }
        }
        let checks = class_count_checks(kind, n, &recs);
        for c in &checks {
            if !c.holds() {
                findings.push(format!(
                    "{}: expected {}, found {}",
                    c.description, c.expected, c.actual
                ));
            }
        }
        count_checks.extend(checks);
        summaries.push(ShapeSummary {
            kind,
            n,
            classes: recs.len(),
            admissible: recs.iter().filter(|r| r.admissible).count(),
            max_negatives: recs.iter().map(|r| r.negatives).max().unwrap_or(0),
            max_flow_number: recs.iter().filter_map(best_k).max(),
            needing_six,
        });
        records.extend(recs);
    }
    Ok(TheoremReport {
        records,
        summaries,
        count_checks,
        claim_holds,
        findings,
    })
}

impl TheoremReport {
    /// One row per class record.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| csv::Error::from(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self, pretty: bool) -> Result<String> {
        Ok(if pretty {
            serde_json::to_string_pretty(self)?
        } else {
            serde_json::to_string(self)?
        })
    }

    pub fn hard_checks_hold(&self) -> bool {
        self.count_checks
            .iter()
            .filter(|c| c.hard)
            .all(CountCheck::holds)
    }
}
