//! Sweeps over all signatures of a ladder shape, up to switching
//! isomorphism, with every engine run on each class.

mod bounds;
mod report;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::{
    canonical_classes, constructive_5flow, dp_flow_number, LadderKind, LadderSpec, ProverOutcome,
};
use crate::solver::{flow_number, FlowNumber};

pub use bounds::{
    expected_max_negatives, subladder_bounds, verify_bounds, BoundsReport, SubladderReport,
};
pub use report::{class_count_checks, theorem_report, CountCheck, ShapeSummary, TheoremReport};

/// Largest rung count swept exhaustively.
pub const MAX_ENUMERATE_N: usize = 8;
/// Largest flow bound tried by the oracle and the sweep.
pub const FLOW_CAP: i32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Engines {
    pub oracle: bool,
    pub dp: bool,
    pub prover: bool,
}

impl Engines {
    pub const ALL: Engines = Engines {
        oracle: true,
        dp: true,
        prover: true,
    };
    pub const NONE: Engines = Engines {
        oracle: false,
        dp: false,
        prover: false,
    };
}

/// One switching-isomorphism class with the results of each engine run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub kind: LadderKind,
    pub n: usize,
    /// Canonical signs as `rungs|top|bottom`.
    pub signs: String,
    pub negatives: usize,
    /// Number of signatures in the class.
    pub orbit_size: u64,
    pub admissible: bool,
    pub bipartite: bool,
    pub flow_number_oracle: Option<i32>,
    pub flow_number_dp: Option<i32>,
    pub prover_k: Option<i32>,
    /// Step names down the prover's contraction chain, joined by `>`.
    pub prover_steps: Option<String>,
}

impl ClassRecord {
    pub fn spec(&self) -> LadderSpec {
        LadderSpec::parse_sign_string(self.kind, &self.signs).expect("records hold valid signs")
    }

    /// Whether this is the `CL_4` class needing a 6-flow.
    pub fn is_cl4_exception(&self) -> bool {
        self.kind == LadderKind::Circular && self.n == 4 && self.negatives == 3
    }

    /// Checks the engines against each other.
    pub fn check(&self) -> Result<()> {
        let fail = |detail: String| {
            Err(Error::Disagreement {
                spec: self.spec().to_json(),
                detail,
            })
        };
        if self.admissible != (self.negatives != 1) {
            return fail("admissibility does not match the negative-edge count".into());
        }
        if let (Some(o), Some(d)) = (self.flow_number_oracle, self.flow_number_dp) {
            if o != d {
                return fail(format!("oracle flow number {o}, transfer sweep {d}"));
            }
        }
        for (name, v) in [
            ("oracle", self.flow_number_oracle),
            ("transfer sweep", self.flow_number_dp),
        ] {
            if v.is_some() && !self.admissible {
                return fail(format!("{name} found a flow on an inadmissible class"));
            }
        }
        if let Some(k) = self.prover_k {
            if !self.admissible {
                return fail("prover built a flow on an inadmissible class".into());
            }
            let limit = if self.is_cl4_exception() { 6 } else { 5 };
            if k > limit {
                return fail(format!("prover needed k = {k}"));
            }
            for v in [self.flow_number_oracle, self.flow_number_dp]
                .into_iter()
                .flatten()
            {
                if k < v {
                    return fail(format!("prover k = {k} below the flow number {v}"));
                }
            }
        }
        Ok(())
    }
}

/// One record per class of the shape, in canonical order. Classes are
/// optionally filtered by minimum negative-edge count.
pub fn enumerate_classes(
    kind: LadderKind,
    n: usize,
    negatives: Option<usize>,
    engines: Engines,
) -> Result<Vec<ClassRecord>> {
    if n > MAX_ENUMERATE_N {
        return Err(Error::TooLarge {
            what: "rung count",
            limit: MAX_ENUMERATE_N,
            actual: n,
        });
    }
    let classes: Vec<_> = canonical_classes(kind, n)?
        .into_iter()
        .filter(|c| negatives.is_none_or(|m| c.min_negatives == m))
        .collect();
    classes
        .par_iter()
        .map(|c| {
            let g = c.spec.build();
            let admissible = c.min_negatives != 1;
            let flow_number_oracle = if engines.oracle {
                match flow_number(&g, FLOW_CAP)? {
                    FlowNumber::Exact { k, .. } => Some(k),
                    _ => None,
                }
            } else {
                None
            };
            let flow_number_dp = if engines.dp {
                dp_flow_number(&c.spec, FLOW_CAP)?
            } else {
                None
            };
            let (prover_k, prover_steps) = if engines.prover {
                match constructive_5flow(&c.spec)? {
                    ProverOutcome::Flow { flow, trace } => {
                        if !trace.verify()? {
                            return Err(Error::Disagreement {
                                spec: c.spec.to_json(),
                                detail: "prover trace does not replay".into(),
                            });
                        }
                        (Some(flow.k), Some(trace.step_names().join(">")))
                    }
                    ProverOutcome::NotAdmissible => (None, None),
                }
            } else {
                (None, None)
            };
            let record = ClassRecord {
                kind,
                n,
                signs: c.spec.sign_string(),
                negatives: c.min_negatives,
                orbit_size: c.orbit_size() as u64,
                admissible,
                bipartite: g.is_bipartite(),
                flow_number_oracle,
                flow_number_dp,
                prover_k,
                prover_steps,
            };
            if engines.oracle || engines.dp || engines.prover {
                record.check()?;
            }
            Ok(record)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stated_counts() {
        let cl4 = enumerate_classes(LadderKind::Circular, 4, Some(3), Engines::NONE).unwrap();
        assert_eq!(cl4.len(), 1);
        let ml5 = enumerate_classes(LadderKind::Moebius, 5, Some(3), Engines::NONE).unwrap();
        assert_eq!(ml5.len(), 2);
        let ml4 = enumerate_classes(LadderKind::Moebius, 4, Some(2), Engines::NONE).unwrap();
        assert_eq!(ml4.len(), 5);
    }

    #[test]
    fn orbit_sizes_sum_to_all_signatures() {
        for (kind, n) in [(LadderKind::Circular, 6), (LadderKind::Moebius, 7)] {
            let recs = enumerate_classes(kind, n, None, Engines::NONE).unwrap();
            assert_eq!(recs.iter().map(|r| r.orbit_size).sum::<u64>(), 1 << (3 * n));
        }
    }

    #[test]
    fn engines_agree_on_cl5() {
        let recs = enumerate_classes(LadderKind::Circular, 5, None, Engines::ALL).unwrap();
        for r in &recs {
            assert_eq!(r.flow_number_oracle, r.flow_number_dp);
            assert_eq!(r.admissible, r.flow_number_oracle.is_some());
        }
    }

    #[test]
    fn disagreement_is_reported_with_the_spec() {
        let mut r =
            enumerate_classes(LadderKind::Circular, 4, Some(2), Engines::ALL).unwrap()[0].clone();
        r.flow_number_dp = Some(r.flow_number_oracle.unwrap() + 1);
        match r.check() {
            Err(Error::Disagreement { spec, .. }) => assert!(spec.contains("\"circular\"")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn size_limit() {
        assert!(matches!(
            enumerate_classes(LadderKind::Circular, 9, None, Engines::NONE),
            Err(Error::TooLarge { .. })
        ));
    }
}
