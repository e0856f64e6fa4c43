use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed::SignedGraph;

/// Integer flow relative to the graph's reference orientation.
///
/// Certificate format: `{"k": int, "values": [int per edge]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flow {
    pub k: i32,
    pub values: Vec<i32>,
}

impl Flow {
    pub fn new(k: i32, values: Vec<i32>) -> Self {
        Flow { k, values }
    }

    /// Largest absolute edge value.
    pub fn max_abs(&self) -> i32 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// The same flow with the bound tightened to `max_abs + 1`.
    pub fn tightened(&self) -> Flow {
        Flow::new(self.max_abs() + 1, self.values.clone())
    }
}

/// Net inflow `sum(tau * value)` at every vertex. Raw assignments with
/// zeros are allowed.
pub fn inflow_sums(g: &SignedGraph, values: &[i32]) -> Vec<i32> {
    let mut sums = vec![0; g.vertex_count()];
    for (e, &f) in values.iter().enumerate() {
        let edge = g.edge(e);
        sums[edge.a] += g.tau(e, edge.a) * f;
        sums[edge.b] += g.tau(e, edge.b) * f;
    }
    sums
}

/// Checks that every value is in `{±1, ..., ±(k-1)}` and Kirchhoff's law
/// holds at every vertex.
pub fn verify_flow(g: &SignedGraph, f: &Flow) -> Result<bool> {
    if f.values.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            expected: g.edge_count(),
            actual: f.values.len(),
        });
    }
    if f.values.iter().any(|&v| v == 0 || v.abs() > f.k - 1) {
        return Ok(false);
    }
    Ok(inflow_sums(g, &f.values).iter().all(|&s| s == 0))
}
