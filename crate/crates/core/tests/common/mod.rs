#![allow(dead_code)]

use std::collections::HashSet;

use ladderflow::ladder::{LadderKind, LadderSpec};
use ladderflow::{Sign, SignedGraph};
use rand::Rng;

/// Edge list with negative flags, read off a graph.
pub fn edge_list(g: &SignedGraph) -> Vec<(usize, usize, bool)> {
    g.edges()
        .iter()
        .map(|e| (e.a, e.b, e.sign.is_neg()))
        .collect()
}

/// Half-edge contributions of value 1 on an edge: a positive edge leaves
/// its lower endpoint, a negative edge leaves both endpoints.
fn contributions(a: usize, b: usize, neg: bool) -> (i32, i32) {
    if neg {
        (-1, -1)
    } else if a < b {
        (-1, 1)
    } else {
        (1, -1)
    }
}

/// Independent flow check against the derived orientation.
pub fn is_nz_flow(g: &SignedGraph, values: &[i32], k: i32) -> bool {
    let edges = edge_list(g);
    if values.len() != edges.len() || values.iter().any(|&x| x == 0 || x.abs() >= k) {
        return false;
    }
    let mut sums = vec![0; g.vertex_count()];
    for (&(a, b, neg), &x) in edges.iter().zip(values) {
        let (ca, cb) = contributions(a, b, neg);
        sums[a] += ca * x;
        sums[b] += cb * x;
    }
    sums.iter().all(|&s| s == 0)
}

/// Existence of a nowhere-zero k-flow by a frontier sweep. Vertices are
/// taken in BFS order from vertex 0 and each edge is added once both ends
/// are reached; the sweep keeps the set of reachable vertex-sum vectors,
/// dropping any vector that can no longer be balanced.
pub fn slow_has_flow(g: &SignedGraph, k: i32) -> bool {
    let edges = edge_list(g);
    let nv = g.vertex_count();
    let mut pos = vec![usize::MAX; nv];
    let mut queue = std::collections::VecDeque::from([0]);
    pos[0] = 0;
    let mut next_pos = 1;
    while let Some(v) = queue.pop_front() {
        for &(a, b, _) in &edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if pos[w] == usize::MAX {
                pos[w] = next_pos;
                next_pos += 1;
                queue.push_back(w);
            }
        }
    }
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&e| {
        let (a, b, _) = edges[e];
        (pos[a].max(pos[b]), pos[a].min(pos[b]))
    });
    let mut remaining = vec![0i32; nv];
    for &(a, b, _) in &edges {
        remaining[a] += 1;
        remaining[b] += 1;
    }
    let mut states: HashSet<Vec<i32>> = HashSet::from([vec![0; nv]]);
    for e in order {
        let (a, b, neg) = edges[e];
        remaining[a] -= 1;
        remaining[b] -= 1;
        let (ca, cb) = contributions(a, b, neg);
        let mut next = HashSet::new();
        for s in &states {
            for x in (1 - k..k).filter(|&x| x != 0) {
                let mut t = s.clone();
                t[a] += ca * x;
                t[b] += cb * x;
                if t[a].abs() > remaining[a] * (k - 1) || t[b].abs() > remaining[b] * (k - 1) {
                    continue;
                }
                next.insert(t);
            }
        }
        states = next;
        if states.is_empty() {
            return false;
        }
    }
    true
}

pub fn slow_flow_number(g: &SignedGraph, cap: i32) -> Option<i32> {
    (2..=cap).find(|&k| slow_has_flow(g, k))
}

pub fn random_spec(rng: &mut impl Rng, kind: LadderKind, n: usize) -> LadderSpec {
    let signs: Vec<Sign> = (0..3 * n)
        .map(|_| Sign::from_neg(rng.gen_bool(0.5)))
        .collect();
    LadderSpec::from_signs(kind, n, &signs).unwrap()
}

pub fn shapes(max_n: usize) -> Vec<(LadderKind, usize)> {
    let mut v = Vec::new();
    for kind in [LadderKind::Circular, LadderKind::Moebius] {
        for n in kind.min_rungs()..=max_n {
            v.push((kind, n));
        }
    }
    v
}
