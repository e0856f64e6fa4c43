//! Frozen flows for the small ladders the induction starts from.
//!
//! The tables live in `fixtures/v1` and are regenerated by the
//! `gen_fixtures` example. A unit test checks they match a fresh run.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ladder::canon::canonical_classes;
use crate::ladder::spec::{LadderKind, LadderSpec};
use crate::solver::{find_nzflow, flow_number, Flow, FlowNumber};

/// Shapes whose admissible classes are all tabulated.
pub const BASE_SHAPES: [(LadderKind, usize); 5] = [
    (LadderKind::Circular, 4),
    (LadderKind::Circular, 5),
    (LadderKind::Circular, 6),
    (LadderKind::Moebius, 4),
    (LadderKind::Moebius, 5),
];

/// Minimal flow of one canonical class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseCase {
    pub kind: LadderKind,
    pub n: usize,
    /// Canonical signs as `rungs|top|bottom`.
    pub signs: String,
    pub flow: Flow,
}

impl BaseCase {
    pub fn class_id(&self) -> String {
        format!("{}_{}:{}", self.kind.short_name(), self.n, self.signs)
    }
}

/// Frozen certificate for the 3-negative class of `CL_4`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionCertificate {
    pub spec: LadderSpec,
    pub certificate: Flow,
}

const BASE_CASES_JSON: &str = include_str!("../../fixtures/v1/base_cases.json");
const CL4_EXCEPTION_JSON: &str = include_str!("../../fixtures/v1/cl4_exception.json");

type Table = HashMap<(LadderKind, usize, String), BaseCase>;

fn table() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let cases: Vec<BaseCase> =
            serde_json::from_str(BASE_CASES_JSON).expect("base case fixture parses");
        cases
            .into_iter()
            .map(|c| ((c.kind, c.n, c.signs.clone()), c))
            .collect()
    })
}

/// All frozen base cases.
pub fn base_cases() -> Vec<BaseCase> {
    serde_json::from_str(BASE_CASES_JSON).expect("base case fixture parses")
}

/// The frozen flow for a canonical spec, if tabulated.
pub fn base_case(canonical: &LadderSpec) -> Option<&'static BaseCase> {
    table().get(&(canonical.kind, canonical.n, canonical.sign_string()))
}

pub fn cl4_exception() -> &'static ExceptionCertificate {
    static CERT: OnceLock<ExceptionCertificate> = OnceLock::new();
    CERT.get_or_init(|| serde_json::from_str(CL4_EXCEPTION_JSON).expect("certificate parses"))
}

/// Recomputes the base-case table with the exhaustive search.
pub fn generate_base_cases() -> Result<Vec<BaseCase>> {
    let mut out = Vec::new();
    for (kind, n) in BASE_SHAPES {
        for class in canonical_classes(kind, n)? {
            if let FlowNumber::Exact { flow, .. } = flow_number(&class.spec.build(), 8)? {
                out.push(BaseCase {
                    kind,
                    n,
                    signs: class.spec.sign_string(),
                    flow,
                });
            }
        }
    }
    Ok(out)
}

/// Recomputes the `CL_4` certificate: the unique 3-negative class and a
/// 6-flow on it.
pub fn generate_cl4_exception() -> Result<ExceptionCertificate> {
    let class = canonical_classes(LadderKind::Circular, 4)?
        .into_iter()
        .find(|c| c.min_negatives == 3)
        .expect("CL_4 has a 3-negative class");
    let certificate = find_nzflow(&class.spec.build(), 6)?.expect("a 6-flow exists");
    Ok(ExceptionCertificate {
        spec: class.spec,
        certificate,
    })
}
