//! 1-factorizations of cubic graphs and the 4-flow built from two
//! balanced 2-factors.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed::SignedGraph;
use crate::solver::flow::{verify_flow, Flow};
use crate::solver::trail::{send_along_trail, Trail};

/// Three disjoint perfect matchings covering all edges (edge indices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFactorization {
    pub factors: [Vec<usize>; 3],
}

impl OneFactorization {
    pub fn new(mut factors: [Vec<usize>; 3]) -> Self {
        for f in factors.iter_mut() {
            f.sort_unstable();
        }
        OneFactorization { factors }
    }

    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        let mut owner = vec![usize::MAX; g.edge_count()];
        for (i, f) in self.factors.iter().enumerate() {
            let mut covered = vec![false; g.vertex_count()];
            for &e in f {
                if e >= g.edge_count() {
                    return Err(Error::InvalidFactorization(format!(
                        "edge {e} out of range"
                    )));
                }
                if owner[e] != usize::MAX {
                    return Err(Error::InvalidFactorization(format!(
                        "edge {e} in factors {} and {i}",
                        owner[e]
                    )));
                }
                owner[e] = i;
                let edge = g.edge(e);
                for v in [edge.a, edge.b] {
                    if std::mem::replace(&mut covered[v], true) {
                        return Err(Error::InvalidFactorization(format!(
                            "factor {i} covers vertex {v} twice"
                        )));
                    }
                }
            }
            if let Some(v) = covered.iter().position(|c| !c) {
                return Err(Error::InvalidFactorization(format!(
                    "factor {i} misses vertex {v}"
                )));
            }
        }
        if let Some(e) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidFactorization(format!("edge {e} uncovered")));
        }
        Ok(())
    }
}

fn require_cubic(g: &SignedGraph) -> Result<()> {
    match (0..g.vertex_count()).find(|&v| g.degree(v) != 3) {
        Some(v) => Err(Error::NotCubic(v, g.degree(v))),
        None => Ok(()),
    }
}

/// Splits a 2-regular edge set into circuits, each as a closed trail.
pub fn two_factor_circuits(g: &SignedGraph, edges: &[usize]) -> Result<Vec<Trail>> {
    let mut inc: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for &e in edges {
        let edge = g.edge(e);
        inc[edge.a].push(e);
        inc[edge.b].push(e);
    }
    if let Some(v) = inc.iter().position(|i| i.len() != 2) {
        return Err(Error::InvalidFactorization(format!(
            "vertex {v} has degree {} in the 2-factor",
            inc[v].len()
        )));
    }
    let mut used = vec![false; g.edge_count()];
    let mut out = Vec::new();
    for &first in edges {
        if used[first] {
            continue;
        }
        let start = g.edge(first).a;
        let mut cur = start;
        let mut e = first;
        let mut trail = Vec::new();
        loop {
            used[e] = true;
            trail.push(e);
            cur = g.edge(e).other(cur);
            if cur == start {
                break;
            }
            e = *inc[cur].iter().find(|&&x| !used[x]).expect("2-regular");
        }
        out.push(Trail::new(start, trail));
    }
    Ok(out)
}

fn circuit_balanced(g: &SignedGraph, t: &Trail) -> bool {
    t.edges.iter().filter(|&&e| g.edge(e).sign.is_neg()).count() % 2 == 0
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u
}

/// Index pairs `(i, j)` with `F_i ∪ F_j` balanced.
pub fn balanced_two_factors(
    g: &SignedGraph,
    fac: &OneFactorization,
) -> Result<Vec<(usize, usize)>> {
    fac.validate(g)?;
    let mut out = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let circuits = two_factor_circuits(g, &union(&fac.factors[i], &fac.factors[j]))?;
        if circuits.iter().all(|t| circuit_balanced(g, t)) {
            out.push((i, j));
        }
    }
    Ok(out)
}

/// 1-factorization of a cubic bipartite graph: one perfect matching by
/// augmenting paths, then the remaining even circuits split alternately.
pub fn one_factorize(g: &SignedGraph) -> Result<OneFactorization> {
    require_cubic(g)?;
    let side = g
        .bipartition()
        .map_err(|odd_cycle| Error::NotBipartite { odd_cycle })?;
    let n = g.vertex_count();
    let mut mate_edge = vec![usize::MAX; n];
    for v in (0..n).filter(|&v| !side[v]) {
        let mut visited = vec![false; n];
        if !augment(g, v, &mut mate_edge, &mut visited) {
            return Err(Error::InvalidFactorization("no perfect matching".into()));
        }
    }
    let mut first: Vec<usize> = (0..n).filter(|&v| !side[v]).map(|v| mate_edge[v]).collect();
    first.sort_unstable();
    let in_first: HashSet<usize> = first.iter().copied().collect();
    let rest: Vec<usize> = (0..g.edge_count())
        .filter(|e| !in_first.contains(e))
        .collect();
    let (second, third) = split_even_circuits(g, &rest)?;
    let fac = OneFactorization::new([first, second, third]);
    fac.validate(g)?;
    Ok(fac)
}

fn augment(g: &SignedGraph, v: usize, mate_edge: &mut [usize], visited: &mut [bool]) -> bool {
    for &e in g.incident(v) {
        let w = g.edge(e).other(v);
        if visited[w] {
            continue;
        }
        visited[w] = true;
        let m = mate_edge[w];
        if m == usize::MAX || augment(g, g.edge(m).other(w), mate_edge, visited) {
            mate_edge[w] = e;
            mate_edge[v] = e;
            return true;
        }
    }
    false
}

fn split_even_circuits(g: &SignedGraph, rest: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for t in two_factor_circuits(g, rest)? {
        if t.edges.len() % 2 == 1 {
            return Err(Error::InvalidFactorization(
                "odd circuit in complement".into(),
            ));
        }
        for (i, &e) in t.edges.iter().enumerate() {
            if i % 2 == 0 {
                a.push(e);
            } else {
                b.push(e);
            }
        }
    }
    Ok((a, b))
}

fn for_each_perfect_matching(
    g: &SignedGraph,
    covered: &mut Vec<bool>,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let Some(v) = covered.iter().position(|c| !c) else {
        return visit(chosen);
    };
    for &e in g.incident(v) {
        let w = g.edge(e).other(v);
        if covered[w] {
            continue;
        }
        covered[v] = true;
        covered[w] = true;
        chosen.push(e);
        let r = for_each_perfect_matching(g, covered, chosen, visit);
        chosen.pop();
        covered[v] = false;
        covered[w] = false;
        r?;
    }
    ControlFlow::Continue(())
}

/// Every 1-factorization of a cubic graph, as unordered triples.
pub fn all_one_factorizations(g: &SignedGraph) -> Result<Vec<OneFactorization>> {
    require_cubic(g)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut covered = vec![false; g.vertex_count()];
    let mut chosen = Vec::new();
    let mut err = None;
    let _ = for_each_perfect_matching(g, &mut covered, &mut chosen, &mut |m| {
        let in_m: HashSet<usize> = m.iter().copied().collect();
        let rest: Vec<usize> = (0..g.edge_count()).filter(|e| !in_m.contains(e)).collect();
        let circuits = match two_factor_circuits(g, &rest) {
            Ok(c) => c,
            Err(e) => {
                err = Some(e);
                return ControlFlow::Break(());
            }
        };
        if circuits.iter().any(|t| t.edges.len() % 2 == 1) {
            return ControlFlow::Continue(());
        }
        for choice in 0u64..(1u64 << circuits.len()) {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for (ci, t) in circuits.iter().enumerate() {
                let flip = choice >> ci & 1 == 1;
                for (i, &e) in t.edges.iter().enumerate() {
                    if (i % 2 == 0) != flip {
                        a.push(e);
                    } else {
                        b.push(e);
                    }
                }
            }
            let fac = OneFactorization::new([m.to_vec(), a, b]);
            let mut key = fac.factors.clone();
            key.sort();
            if seen.insert(key) {
                out.push(fac);
            }
        }
        ControlFlow::Continue(())
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// If two of the three 2-factors are balanced, push 1 around every
/// circuit of one and 2 around every circuit of the other. The shared
/// 1-factor ends up with values ±1 or ±3, so the result is a 4-flow.
pub fn flow_from_balanced_2factors(
    g: &SignedGraph,
    fac: &OneFactorization,
) -> Result<Option<Flow>> {
    let balanced = balanced_two_factors(g, fac)?;
    if balanced.len() < 2 {
        return Ok(None);
    }
    let mut values = vec![0; g.edge_count()];
    for (&(i, j), b) in balanced.iter().zip([1, 2]) {
        for t in two_factor_circuits(g, &union(&fac.factors[i], &fac.factors[j]))? {
            values = send_along_trail(g, &values, &t, b)?;
        }
    }
    let flow = Flow::new(4, values);
    debug_assert!(verify_flow(g, &flow)?);
    Ok(Some(flow))
}
