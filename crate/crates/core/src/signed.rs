//! Signed graphs with a bidirected reference orientation, switching,
//! balance testing and canonical forms under switching isomorphism.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted by the exhaustive switching minimizers.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 24;

/// The sign of an edge. Ordered so that `Pos < Neg`, which is the
/// tie-breaking order used by canonical forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn is_neg(self) -> bool {
        self == Sign::Neg
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn flipped_if(self, cond: bool) -> Sign {
        if cond {
            self.flip()
        } else {
            self
        }
    }

    pub fn from_neg(neg: bool) -> Sign {
        if neg {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_neg(self.is_neg() != rhs.is_neg())
    }
}

impl TryFrom<i64> for Sign {
    type Error = Error;
    fn try_from(v: i64) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Pos),
            -1 => Ok(Sign::Neg),
            other => Err(Error::InvalidSign(other)),
        }
    }
}

impl From<Sign> for i64 {
    fn from(s: Sign) -> i64 {
        s.value() as i64
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.is_neg() { "-" } else { "+" })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// An undirected simple graph with a signature.
///
/// The reference orientation is derived from the signs: a positive edge
/// points from its lower to its higher endpoint, a negative edge is
/// extroverted. Flows are stored relative to this orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl SignedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, Sign)>) -> Result<Self> {
        let mut seen = HashMap::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); vertex_count];
        let mut out = Vec::with_capacity(edges.len());
        for (idx, &(a, b, sign)) in edges.iter().enumerate() {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::Loop(idx));
            }
            if seen.insert((a.min(b), a.max(b)), idx).is_some() {
                return Err(Error::ParallelEdge(a, b));
            }
            incidence[a].push(idx);
            incidence[b].push(idx);
            out.push(Edge { a, b, sign });
        }
        Ok(SignedGraph {
            vertex_count,
            edges: out,
            incidence,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    pub fn negatives(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_neg()).count()
    }

    /// Same underlying graph with a different signature.
    pub fn with_signs(&self, signs: &[Sign]) -> Result<SignedGraph> {
        if signs.len() != self.edges.len() {
            return Err(Error::LengthMismatch {
                expected: self.edges.len(),
                actual: signs.len(),
            });
        }
        let mut g = self.clone();
        for (e, &s) in g.edges.iter_mut().zip(signs) {
            e.sign = s;
        }
        Ok(g)
    }

    /// Direction of the half-edge of `e` at `v`: +1 toward `v`, -1 away.
    pub fn tau(&self, e: usize, v: usize) -> i32 {
        let edge = &self.edges[e];
        debug_assert!(v == edge.a || v == edge.b);
        match edge.sign {
            Sign::Neg => -1,
            Sign::Pos => {
                if v == edge.a.min(edge.b) {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// Half-edge directions `(tau_a, tau_b)` of edge `e`.
    pub fn orientation(&self, e: usize) -> (i32, i32) {
        let edge = &self.edges[e];
        (self.tau(e, edge.a), self.tau(e, edge.b))
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.incidence
            .get(u)?
            .iter()
            .copied()
            .find(|&e| self.edges[e].other(u) == v)
    }

    /// Bitmask of incident edges per vertex. Requires at most 64 edges.
    pub(crate) fn star_masks(&self) -> Vec<u64> {
        self.incidence
            .iter()
            .map(|inc| inc.iter().fold(0u64, |m, &e| m | (1u64 << e)))
            .collect()
    }

    pub(crate) fn negative_mask(&self) -> u64 {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.sign.is_neg())
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }

    pub fn is_connected(&self) -> bool {
        self.component_count_without(None) <= 1
    }

    fn component_count_without(&self, skip: Option<usize>) -> usize {
        let mut seen = vec![false; self.vertex_count];
        let mut comps = 0;
        for s in 0..self.vertex_count {
            if seen[s] {
                continue;
            }
            comps += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &e in &self.incidence[v] {
                    if Some(e) == skip {
                        continue;
                    }
                    let w = self.edges[e].other(v);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        comps
    }

    /// Edges whose removal disconnects their component.
    pub fn bridges(&self) -> Vec<usize> {
        let base = self.component_count_without(None);
        (0..self.edges.len())
            .filter(|&e| self.component_count_without(Some(e)) > base)
            .collect()
    }

    /// Proper 2-coloring of the vertices, or an odd cycle as a vertex list.
    pub fn bipartition(&self) -> std::result::Result<Vec<bool>, Vec<usize>> {
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        let mut parent = vec![usize::MAX; self.vertex_count];
        for s in 0..self.vertex_count {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &e in &self.incidence[v] {
                    let w = self.edges[e].other(v);
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            parent[w] = v;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => {
                            return Err(self.odd_cycle(&parent, v, w));
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap()).collect())
    }

    fn odd_cycle(&self, parent: &[usize], v: usize, w: usize) -> Vec<usize> {
        let path = |mut x: usize| {
            let mut p = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                p.push(x);
            }
            p
        };
        let pv = path(v);
        let pw = path(w);
        let on_w: std::collections::HashSet<usize> = pw.iter().copied().collect();
        let lca_pos = pv.iter().position(|x| on_w.contains(x)).unwrap();
        let lca = pv[lca_pos];
        let mut cycle: Vec<usize> = pv[..=lca_pos].to_vec();
        let w_pos = pw.iter().position(|&x| x == lca).unwrap();
        cycle.extend(pw[..w_pos].iter().rev());
        cycle
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    pub fn is_cubic(&self) -> bool {
        self.incidence.iter().all(|inc| inc.len() == 3)
    }
}

/// A set of vertices to switch at.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SwitchingSet {
    members: Vec<usize>,
}

impl SwitchingSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        SwitchingSet { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        Self::new((0..64).filter(|i| mask >> i & 1 == 1))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn indicator(&self, vertex_count: usize) -> Result<Vec<bool>> {
        let mut ind = vec![false; vertex_count];
        for &v in &self.members {
            if v >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    count: vertex_count,
                });
            }
            ind[v] = true;
        }
        Ok(ind)
    }
}

/// Flip the sign of every edge with exactly one endpoint in `x`.
pub fn switch(g: &SignedGraph, x: &SwitchingSet) -> Result<SignedGraph> {
    let ind = x.indicator(g.vertex_count())?;
    let mut out = g.clone();
    for e in out.edges.iter_mut() {
        e.sign = e.sign.flipped_if(ind[e.a] != ind[e.b]);
    }
    Ok(out)
}

/// Carry flow values on `g` over to `switch(g, x)`. Kirchhoff sums at
/// switched vertices change sign, all others are unchanged.
pub fn switch_flow(g: &SignedGraph, x: &SwitchingSet, values: &[i32]) -> Result<Vec<i32>> {
    let switched = switch(g, x)?;
    let ind = x.indicator(g.vertex_count())?;
    Ok(values
        .iter()
        .enumerate()
        .map(|(e, &f)| {
            let a = g.edge(e).a;
            let eps = if ind[a] { -1 } else { 1 };
            f * eps * g.tau(e, a) * switched.tau(e, a)
        })
        .collect())
}

/// Vertex potential `p` with `sign(uv) = p(u) p(v)`, if one exists.
/// `true` in the result means `p(v) = -1`.
pub fn balance_potential(g: &SignedGraph) -> Option<Vec<bool>> {
    let mut pot: Vec<Option<bool>> = vec![None; g.vertex_count()];
    for s in 0..g.vertex_count() {
        if pot[s].is_some() {
            continue;
        }
        pot[s] = Some(false);
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            let pv = pot[v].unwrap();
            for &e in g.incident(v) {
                let edge = g.edge(e);
                let w = edge.other(v);
                let want = pv ^ edge.sign.is_neg();
                match pot[w] {
                    None => {
                        pot[w] = Some(want);
                        stack.push(w);
                    }
                    Some(pw) if pw != want => return None,
                    _ => {}
                }
            }
        }
    }
    Some(pot.into_iter().map(|p| p.unwrap()).collect())
}

pub fn is_balanced(g: &SignedGraph) -> bool {
    balance_potential(g).is_some()
}

/// Switching set taking `g` to `h`, if the two signatures on the same
/// underlying graph are switching equivalent.
pub fn switching_between(g: &SignedGraph, h: &SignedGraph) -> Option<SwitchingSet> {
    let prod: Vec<Sign> = g
        .edges()
        .iter()
        .zip(h.edges())
        .map(|(a, b)| a.sign * b.sign)
        .collect();
    let diff = g.with_signs(&prod).ok()?;
    let pot = balance_potential(&diff)?;
    Some(SwitchingSet::new(
        pot.iter().enumerate().filter(|(_, &p)| p).map(|(v, _)| v),
    ))
}

/// A vertex permutation that is an automorphism of the underlying graph,
/// together with the induced edge permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    perm: Vec<usize>,
    edge_map: Vec<usize>,
}

impl Automorphism {
    pub fn new(g: &SignedGraph, perm: Vec<usize>) -> Result<Self> {
        let n = g.vertex_count();
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: perm.len(),
            });
        }
        let mut hit = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut hit[p], true) {
                return Err(Error::NotAutomorphism);
            }
        }
        let edge_map = g
            .edges()
            .iter()
            .map(|e| {
                g.edge_between(perm[e.a], perm[e.b])
                    .ok_or(Error::NotAutomorphism)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Automorphism { perm, edge_map })
    }

    pub fn identity(g: &SignedGraph) -> Self {
        Automorphism {
            perm: (0..g.vertex_count()).collect(),
            edge_map: (0..g.edge_count()).collect(),
        }
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Edge `e` is carried to edge `edge_map()[e]`.
    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    pub fn inverse(&self) -> Self {
        let mut perm = vec![0; self.perm.len()];
        for (v, &p) in self.perm.iter().enumerate() {
            perm[p] = v;
        }
        let mut edge_map = vec![0; self.edge_map.len()];
        for (e, &p) in self.edge_map.iter().enumerate() {
            edge_map[p] = e;
        }
        Automorphism { perm, edge_map }
    }

    /// Transport the signature: the image graph has the same edge list,
    /// with `sign'(edge_map[e]) = sign(e)`.
    pub fn apply(&self, g: &SignedGraph) -> SignedGraph {
        let mut signs = vec![Sign::Pos; g.edge_count()];
        for (e, edge) in g.edges().iter().enumerate() {
            signs[self.edge_map[e]] = edge.sign;
        }
        g.with_signs(&signs).expect("edge count preserved")
    }

    pub fn apply_flow(&self, g: &SignedGraph, values: &[i32]) -> Vec<i32> {
        let image = self.apply(g);
        let mut out = vec![0; values.len()];
        for (e, &f) in values.iter().enumerate() {
            let a = g.edge(e).a;
            let e2 = self.edge_map[e];
            out[e2] = f * g.tau(e, a) * image.tau(e2, self.perm[a]);
        }
        out
    }
}

/// A switching-isomorphism representative with the witnesses producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub representative: SignedGraph,
    pub min_negatives: usize,
    pub witness_switching: SwitchingSet,
    pub witness_automorphism: Vec<usize>,
}

/// Lexicographic key over the edge order with `+ < -`, minimum count first.
fn sign_key(mask: u64) -> (u32, u64) {
    (mask.count_ones(), mask.reverse_bits())
}

fn check_exhaustive_size(g: &SignedGraph) -> Result<()> {
    if g.vertex_count() > MAX_EXHAUSTIVE_VERTICES {
        return Err(Error::TooLarge {
            what: "vertex count",
            limit: MAX_EXHAUSTIVE_VERTICES,
            actual: g.vertex_count(),
        });
    }
    if g.edge_count() > 64 {
        return Err(Error::TooLarge {
            what: "edge count",
            limit: 64,
            actual: g.edge_count(),
        });
    }
    Ok(())
}

/// Best `(key, switching mask)` over all switchings with vertex 0 pinned.
fn best_switching(g: &SignedGraph, by_count_only: bool) -> ((u32, u64), u64) {
    let stars = g.star_masks();
    let mut cur = g.negative_mask();
    let mut x = 0u64;
    let key = |m: u64| {
        if by_count_only {
            (m.count_ones(), 0)
        } else {
            sign_key(m)
        }
    };
    let mut best = (key(cur), 0u64);
    let free = g.vertex_count().saturating_sub(1);
    for i in 1u64..(1u64 << free) {
        let v = i.trailing_zeros() as usize + 1;
        cur ^= stars[v];
        x ^= 1 << v;
        let k = key(cur);
        if k < best.0 {
            best = (k, x);
        }
    }
    best
}

/// Exhaustive minimum number of negative edges over all switchings.
pub fn min_negative_edges(g: &SignedGraph) -> Result<CanonicalForm> {
    check_exhaustive_size(g)?;
    let ((count, _), x) = best_switching(g, true);
    let witness_switching = SwitchingSet::from_mask(x);
    let representative = switch(g, &witness_switching)?;
    Ok(CanonicalForm {
        representative,
        min_negatives: count as usize,
        witness_switching,
        witness_automorphism: (0..g.vertex_count()).collect(),
    })
}

/// Canonical representative under switching composed with the supplied
/// automorphisms: minimum negative count, then lexicographically smallest
/// sign vector.
pub fn canonical_form(g: &SignedGraph, autos: &[Vec<usize>]) -> Result<CanonicalForm> {
    check_exhaustive_size(g)?;
    if autos.is_empty() {
        return Err(Error::Unsupported("automorphism list is empty".into()));
    }
    let mut best: Option<((u32, u64), u64, usize)> = None;
    let mut images = Vec::with_capacity(autos.len());
    for (i, perm) in autos.iter().enumerate() {
        let auto = Automorphism::new(g, perm.clone())?;
        let image = auto.apply(g);
        let (key, x) = best_switching(&image, false);
        if best.is_none_or(|(bk, _, _)| key < bk) {
            best = Some((key, x, i));
        }
        images.push(image);
    }
    let ((count, _), x, i) = best.unwrap();
    let witness_switching = SwitchingSet::from_mask(x);
    let representative = switch(&images[i], &witness_switching)?;
    Ok(CanonicalForm {
        representative,
        min_negatives: count as usize,
        witness_switching,
        witness_automorphism: autos[i].clone(),
    })
}

/// All automorphisms of the underlying graph, by backtracking. Intended
/// for small graphs.
pub fn graph_automorphisms(g: &SignedGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    // Assign images in BFS order so every vertex after the first of its
    // component has an already-mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut q = VecDeque::from([s]);
        while let Some(v) = q.pop_front() {
            order.push(v);
            for &e in g.incident(v) {
                let w = g.edge(e).other(v);
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    let adj: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| g.edge_between(u, v).is_some()).collect())
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        depth: usize,
        order: &[usize],
        g: &SignedGraph,
        adj: &[Vec<bool>],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == order.len() {
            out.push(image.clone());
            return;
        }
        let v = order[depth];
        for cand in 0..g.vertex_count() {
            if used[cand] || g.degree(cand) != g.degree(v) {
                continue;
            }
            let ok = order[..depth]
                .iter()
                .all(|&u| adj[u][v] == adj[image[u]][cand]);
            if !ok {
                continue;
            }
            image[v] = cand;
            used[cand] = true;
            rec(depth + 1, order, g, adj, image, used, out);
            used[cand] = false;
            image[v] = usize::MAX;
        }
    }
    rec(0, &order, g, &adj, &mut image, &mut used, &mut out);
    out
}

/// Flow-admissibility of a connected bridgeless signed graph: some
/// nowhere-zero integer flow exists iff the graph cannot be switched to
/// exactly one negative edge.
pub fn is_flow_admissible(g: &SignedGraph) -> Result<bool> {
    require_connected_bridgeless(g)?;
    Ok(min_negative_edges(g)?.min_negatives != 1)
}

pub(crate) fn require_connected_bridgeless(g: &SignedGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Unsupported("graph is disconnected".into()));
    }
    if let Some(&e) = g.bridges().first() {
        let edge = g.edge(e);
        return Err(Error::Unsupported(format!(
            "edge {e} ({}, {}) is a bridge",
            edge.a, edge.b
        )));
    }
    Ok(())
}

/// Interchange format: `{"vertices": n, "edges": [[a, b, sign], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Sign)>,
}

impl From<&SignedGraph> for GraphJson {
    fn from(g: &SignedGraph) -> Self {
        GraphJson {
            vertices: g.vertex_count(),
            edges: g.edges().iter().map(|e| (e.a, e.b, e.sign)).collect(),
        }
    }
}

impl TryFrom<GraphJson> for SignedGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<SignedGraph> {
        SignedGraph::new(j.vertices, j.edges)
    }
}

impl SignedGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<SignedGraph> {
        let j: GraphJson = serde_json::from_str(s)?;
        j.try_into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prism(n: usize, neg_rungs: &[usize]) -> SignedGraph {
        let mut edges = Vec::new();
        for i in 0..n {
            let s = Sign::from_neg(neg_rungs.contains(&i));
            edges.push((i, n + i, s));
        }
        for i in 0..n {
            edges.push((i, (i + 1) % n, Sign::Pos));
        }
        for i in 0..n {
            edges.push((n + i, n + (i + 1) % n, Sign::Pos));
        }
        SignedGraph::new(2 * n, edges).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert!(matches!(
            SignedGraph::new(2, vec![(0, 0, Sign::Pos)]),
            Err(Error::Loop(0))
        ));
        assert!(matches!(
            SignedGraph::new(2, vec![(0, 1, Sign::Pos), (1, 0, Sign::Neg)]),
            Err(Error::ParallelEdge(1, 0))
        ));
        assert!(SignedGraph::new(2, vec![(0, 2, Sign::Pos)]).is_err());
    }

    #[test]
    fn orientation_matches_sign() {
        let g = prism(4, &[1, 2]);
        for e in 0..g.edge_count() {
            let (ta, tb) = g.orientation(e);
            assert_eq!(ta * tb, -g.edge(e).sign.value());
        }
    }

    #[test]
    fn switching_edge_cases() {
        let g = prism(5, &[0]);
        assert_eq!(switch(&g, &SwitchingSet::empty()).unwrap(), g);
        let x = SwitchingSet::new([3]);
        assert_eq!(switch(&switch(&g, &x).unwrap(), &x).unwrap(), g);
        assert!(matches!(
            switch(&g, &SwitchingSet::new([10])),
            Err(Error::VertexOutOfRange { vertex: 10, .. })
        ));
    }

    #[test]
    fn all_rungs_negative_cube_switches_to_positive() {
        let g = prism(4, &[0, 1, 2, 3]);
        let top = SwitchingSet::new(0..4);
        let h = switch(&g, &top).unwrap();
        assert_eq!(h.negatives(), 0);
        assert!(is_balanced(&g));
    }

    #[test]
    fn balance_examples() {
        assert!(is_balanced(&prism(5, &[])));
        assert!(!is_balanced(&prism(5, &[2])));
    }

    #[test]
    fn minimization_examples() {
        let cf = min_negative_edges(&prism(5, &[])).unwrap();
        assert_eq!(cf.min_negatives, 0);
        assert!(cf.witness_switching.is_empty());
        assert_eq!(
            min_negative_edges(&prism(5, &[1])).unwrap().min_negatives,
            1
        );
        let cf = min_negative_edges(&prism(6, &[0, 1, 2, 3, 4, 5])).unwrap();
        assert_eq!(cf.min_negatives, 0);
        assert_eq!(
            switch(&prism(6, &[0, 1, 2, 3, 4, 5]), &cf.witness_switching).unwrap(),
            cf.representative
        );
    }

    #[test]
    fn exhaustive_size_limit() {
        let g = prism(13, &[]);
        assert!(matches!(
            min_negative_edges(&g),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn odd_cycle_witness_is_a_cycle() {
        let g = prism(5, &[]);
        let cyc = g.bipartition().unwrap_err();
        assert_eq!(cyc.len() % 2, 1);
        for i in 0..cyc.len() {
            assert!(g.edge_between(cyc[i], cyc[(i + 1) % cyc.len()]).is_some());
        }
        assert!(prism(6, &[]).is_bipartite());
    }

    #[test]
    fn cube_has_48_automorphisms() {
        assert_eq!(graph_automorphisms(&prism(4, &[])).len(), 48);
        assert_eq!(graph_automorphisms(&prism(5, &[])).len(), 20);
    }

    #[test]
    fn canonical_form_rejects_non_automorphism() {
        let g = prism(4, &[]);
        let mut p: Vec<usize> = (0..8).collect();
        p.swap(0, 2);
        assert!(matches!(
            canonical_form(&g, &[p]),
            Err(Error::NotAutomorphism)
        ));
    }

    #[test]
    fn admissibility_requires_bridgeless() {
        let path = SignedGraph::new(3, vec![(0, 1, Sign::Pos), (1, 2, Sign::Pos)]).unwrap();
        assert!(matches!(
            is_flow_admissible(&path),
            Err(Error::Unsupported(_))
        ));
        assert!(is_flow_admissible(&prism(6, &[])).unwrap());
        assert!(!is_flow_admissible(&prism(5, &[0])).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let g = prism(3, &[1]);
        let back = SignedGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(SignedGraph::from_json(r#"{"vertices":2,"edges":[[0,1,2]]}"#).is_err());
    }
}
