//! Exhaustive backtracking search for nowhere-zero k-flows.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::signed::{is_flow_admissible, SignedGraph};
use crate::solver::flow::Flow;

pub const MAX_SEARCH_EDGES: usize = 40;

/// Edges in the order they are discovered by a BFS from vertex 0, so that
/// vertices become fully assigned early.
fn bfs_edge_order(g: &SignedGraph) -> Vec<usize> {
    let mut order = Vec::with_capacity(g.edge_count());
    let mut edge_seen = vec![false; g.edge_count()];
    let mut vseen = vec![false; g.vertex_count()];
    for s in 0..g.vertex_count() {
        if vseen[s] {
            continue;
        }
        vseen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            for &e in g.incident(v) {
                if !edge_seen[e] {
                    edge_seen[e] = true;
                    order.push(e);
                }
                let w = g.edge(e).other(v);
                if !vseen[w] {
                    vseen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    k: i32,
    order: Vec<usize>,
    ends: Vec<(usize, usize, i32, i32)>,
    values: Vec<i32>,
    bal: Vec<i32>,
    remaining: Vec<i32>,
    candidates: Vec<i32>,
    _g: &'a SignedGraph,
}

impl<'a> Search<'a> {
    fn new(g: &'a SignedGraph, k: i32) -> Self {
        let ends = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| (edge.a, edge.b, g.tau(e, edge.a), g.tau(e, edge.b)))
            .collect();
        let candidates = (1..k).flat_map(|v| [v, -v]).collect();
        Search {
            k,
            order: bfs_edge_order(g),
            ends,
            values: vec![0; g.edge_count()],
            bal: vec![0; g.vertex_count()],
            remaining: (0..g.vertex_count()).map(|v| g.degree(v) as i32).collect(),
            candidates,
            _g: g,
        }
    }

    fn feasible(&self, v: usize) -> bool {
        let r = self.remaining[v];
        let b = self.bal[v];
        match r {
            0 => b == 0,
            1 => b != 0 && b.abs() < self.k,
            _ => b.abs() <= r * (self.k - 1),
        }
    }

    fn legal(&self, x: i32) -> bool {
        x != 0 && x.abs() < self.k
    }

    fn try_value(
        &mut self,
        pos: usize,
        e: usize,
        x: i32,
        visit: &mut dyn FnMut(&[i32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let (a, b, ta, tb) = self.ends[e];
        self.values[e] = x;
        self.bal[a] += ta * x;
        self.bal[b] += tb * x;
        self.remaining[a] -= 1;
        self.remaining[b] -= 1;
        let res = if self.feasible(a) && self.feasible(b) {
            self.rec(pos + 1, visit)
        } else {
            ControlFlow::Continue(())
        };
        self.remaining[a] += 1;
        self.remaining[b] += 1;
        self.bal[a] -= ta * x;
        self.bal[b] -= tb * x;
        self.values[e] = 0;
        res
    }

    fn rec(
        &mut self,
        pos: usize,
        visit: &mut dyn FnMut(&[i32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if pos == self.order.len() {
            return visit(&self.values);
        }
        let e = self.order[pos];
        let (a, b, ta, tb) = self.ends[e];
        // The last unassigned edge at a vertex has its value forced.
        let forced_a = (self.remaining[a] == 1).then(|| -self.bal[a] * ta);
        let forced_b = (self.remaining[b] == 1).then(|| -self.bal[b] * tb);
        let forced = match (forced_a, forced_b) {
            (Some(x), Some(y)) if x != y => return ControlFlow::Continue(()),
            (Some(x), _) | (None, Some(x)) => Some(x),
            (None, None) => None,
        };
        match forced {
            Some(x) => {
                if self.legal(x) {
                    self.try_value(pos, e, x, visit)
                } else {
                    ControlFlow::Continue(())
                }
            }
            None => {
                for i in 0..self.candidates.len() {
                    let x = self.candidates[i];
                    self.try_value(pos, e, x, visit)?;
                }
                ControlFlow::Continue(())
            }
        }
    }
}

fn check_search_input(g: &SignedGraph, k: i32) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidBound(k));
    }
    if g.edge_count() > MAX_SEARCH_EDGES {
        return Err(Error::TooLarge {
            what: "edge count",
            limit: MAX_SEARCH_EDGES,
            actual: g.edge_count(),
        });
    }
    Ok(())
}

/// Calls `visit` with every nowhere-zero k-flow (as raw values) until it
/// breaks. Returns whether the visitor stopped the search.
pub fn for_each_nzflow(
    g: &SignedGraph,
    k: i32,
    mut visit: impl FnMut(&[i32]) -> ControlFlow<()>,
) -> Result<bool> {
    check_search_input(g, k)?;
    let mut s = Search::new(g, k);
    Ok(s.rec(0, &mut visit).is_break())
}

pub fn find_nzflow(g: &SignedGraph, k: i32) -> Result<Option<Flow>> {
    let mut found = None;
    for_each_nzflow(g, k, |vals| {
        found = Some(Flow::new(k, vals.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlowNumber {
    Exact {
        k: i32,
        flow: Flow,
    },
    /// Admissible, but no flow with `k <= cap` exists.
    AboveCap(i32),
    NotAdmissible,
}

impl FlowNumber {
    pub fn value(&self) -> Option<i32> {
        match self {
            FlowNumber::Exact { k, .. } => Some(*k),
            _ => None,
        }
    }
}

/// Smallest `k <= cap` admitting a nowhere-zero k-flow.
pub fn flow_number(g: &SignedGraph, cap: i32) -> Result<FlowNumber> {
    check_search_input(g, cap.max(2))?;
    if !is_flow_admissible(g)? {
        return Ok(FlowNumber::NotAdmissible);
    }
    for k in 2..=cap {
        if let Some(flow) = find_nzflow(g, k)? {
            return Ok(FlowNumber::Exact { k, flow });
        }
    }
    Ok(FlowNumber::AboveCap(cap))
}
