use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed::SignedGraph;

/// A walk with no repeated edge, given by its start vertex and edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trail {
    pub start: usize,
    pub edges: Vec<usize>,
}

impl Trail {
    pub fn new(start: usize, edges: Vec<usize>) -> Self {
        Trail { start, edges }
    }

    /// Validates the trail against `g` and returns its end vertex.
    pub fn end(&self, g: &SignedGraph) -> Result<usize> {
        if self.start >= g.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: self.start,
                count: g.vertex_count(),
            });
        }
        let mut used = vec![false; g.edge_count()];
        let mut cur = self.start;
        for &e in &self.edges {
            if e >= g.edge_count() {
                return Err(Error::NotATrail(format!("edge {e} does not exist")));
            }
            if std::mem::replace(&mut used[e], true) {
                return Err(Error::NotATrail(format!("edge {e} repeated")));
            }
            let edge = g.edge(e);
            if edge.a != cur && edge.b != cur {
                return Err(Error::NotATrail(format!(
                    "edge {e} is not incident with vertex {cur}"
                )));
            }
            cur = edge.other(cur);
        }
        Ok(cur)
    }
}

/// Sends `b` from the start of `t` to its end.
///
/// The first edge gains an extra outflow of `b` at the start vertex; each
/// following edge receives `±b` so every inner vertex keeps its balance.
/// The carried amount flips sign when it crosses a negative edge.
pub fn send_along_trail(g: &SignedGraph, values: &[i32], t: &Trail, b: i32) -> Result<Vec<i32>> {
    if values.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            expected: g.edge_count(),
            actual: values.len(),
        });
    }
    if b == 0 {
        return Err(Error::NotATrail("pushed value must be nonzero".into()));
    }
    t.end(g)?;
    let mut out = values.to_vec();
    let mut cur = t.start;
    let mut carried = b;
    for &e in &t.edges {
        out[e] -= carried * g.tau(e, cur);
        carried *= g.edge(e).sign.value();
        cur = g.edge(e).other(cur);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::Sign;
    use crate::solver::inflow_sums;

    fn hexagon(neg: &[usize]) -> SignedGraph {
        SignedGraph::new(
            6,
            (0..6)
                .map(|i| (i, (i + 1) % 6, Sign::from_neg(neg.contains(&i))))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn circulation_on_positive_circuit() {
        let g = hexagon(&[]);
        let t = Trail::new(0, (0..6).collect());
        let v = send_along_trail(&g, &[0; 6], &t, 1).unwrap();
        assert!(v.iter().all(|x| x.abs() == 1));
        assert!(inflow_sums(&g, &v).iter().all(|&s| s == 0));
    }

    #[test]
    fn inverse_push_cancels() {
        let g = hexagon(&[1, 4]);
        let t = Trail::new(2, vec![2, 3, 4]);
        let start = vec![3, -1, 2, 0, 1, 1];
        let pushed = send_along_trail(&g, &start, &t, 2).unwrap();
        assert_eq!(send_along_trail(&g, &pushed, &t, -2).unwrap(), start);
    }

    #[test]
    fn balanced_circuit_with_two_negatives_closes() {
        let g = hexagon(&[1, 4]);
        let t = Trail::new(0, (0..6).collect());
        let v = send_along_trail(&g, &[0; 6], &t, 2).unwrap();
        assert!(v.iter().all(|x| x.abs() == 2));
        assert!(inflow_sums(&g, &v).iter().all(|&s| s == 0));
    }

    #[test]
    fn open_trail_moves_b_from_start_to_end() {
        let g = hexagon(&[3]);
        let t = Trail::new(1, vec![1, 2, 3, 4]);
        let v = send_along_trail(&g, &[0; 6], &t, 3).unwrap();
        let sums = inflow_sums(&g, &v);
        assert_eq!(sums[1], -3);
        // One negative edge on the way: the end receives -3.
        assert_eq!(sums[5], -3);
        assert!(sums
            .iter()
            .enumerate()
            .all(|(v, &s)| v == 1 || v == 5 || s == 0));
    }

    #[test]
    fn unbalanced_closed_trail_leaves_imbalance_at_start() {
        let g = hexagon(&[0]);
        let t = Trail::new(0, (0..6).collect());
        let v = send_along_trail(&g, &[0; 6], &t, 1).unwrap();
        let sums = inflow_sums(&g, &v);
        assert_eq!(sums[0], -2);
        assert!(sums[1..].iter().all(|&s| s == 0));
    }

    #[test]
    fn rejects_non_trails() {
        let g = hexagon(&[]);
        assert!(matches!(
            send_along_trail(&g, &[0; 6], &Trail::new(0, vec![0, 0]), 1),
            Err(Error::NotATrail(_))
        ));
        assert!(matches!(
            send_along_trail(&g, &[0; 6], &Trail::new(0, vec![2]), 1),
            Err(Error::NotATrail(_))
        ));
    }
}
