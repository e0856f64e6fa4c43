use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed::{graph_automorphisms, Automorphism, Sign, SignedGraph, SwitchingSet};
use crate::solver::{OneFactorization, Trail};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LadderKind {
    Circular,
    Moebius,
}

impl LadderKind {
    /// Smallest rung count giving a simple graph.
    pub fn min_rungs(self) -> usize {
        match self {
            LadderKind::Circular => 3,
            LadderKind::Moebius => 2,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            LadderKind::Circular => "CL",
            LadderKind::Moebius => "ML",
        }
    }
}

impl fmt::Display for LadderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LadderKind::Circular => "circular",
            LadderKind::Moebius => "moebius",
        })
    }
}

impl std::str::FromStr for LadderKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circular" | "CL" | "cl" => Ok(LadderKind::Circular),
            "moebius" | "mobius" | "ML" | "ml" => Ok(LadderKind::Moebius),
            other => Err(Error::InvalidLadder(format!(
                "unknown ladder kind {other:?}"
            ))),
        }
    }
}

/// A signed circular or Moebius ladder on `2n` vertices.
///
/// Top vertices `v_i` have index `i`, bottom vertices `u_i` index `n + i`.
/// Edges are ordered rungs, then top rails, then bottom rails. Rail `i`
/// joins slice `i` to slice `i + 1`; rail `n - 1` is the closure edge, which
/// for a Moebius ladder runs `v_{n-1} u_0` (top) and `u_{n-1} v_0` (bottom).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LadderJson")]
pub struct LadderSpec {
    pub kind: LadderKind,
    pub n: usize,
    pub rungs: Vec<Sign>,
    pub top: Vec<Sign>,
    pub bottom: Vec<Sign>,
}

#[derive(Deserialize)]
struct LadderJson {
    kind: LadderKind,
    n: usize,
    rungs: Vec<Sign>,
    top: Vec<Sign>,
    bottom: Vec<Sign>,
}

impl TryFrom<LadderJson> for LadderSpec {
    type Error = Error;
    fn try_from(j: LadderJson) -> Result<Self> {
        LadderSpec::new(j.kind, j.n, j.rungs, j.top, j.bottom)
    }
}

impl LadderSpec {
    pub fn new(
        kind: LadderKind,
        n: usize,
        rungs: Vec<Sign>,
        top: Vec<Sign>,
        bottom: Vec<Sign>,
    ) -> Result<Self> {
        if n < kind.min_rungs() {
            return Err(Error::InvalidLadder(format!(
                "{kind} ladder needs at least {} rungs, got {n}",
                kind.min_rungs()
            )));
        }
        for (name, v) in [("rungs", &rungs), ("top", &top), ("bottom", &bottom)] {
            if v.len() != n {
                return Err(Error::InvalidLadder(format!(
                    "{name} has {} signs, expected {n}",
                    v.len()
                )));
            }
        }
        Ok(LadderSpec {
            kind,
            n,
            rungs,
            top,
            bottom,
        })
    }

    pub fn uniform(kind: LadderKind, n: usize, sign: Sign) -> Result<Self> {
        Self::new(kind, n, vec![sign; n], vec![sign; n], vec![sign; n])
    }

    /// Builds from a sign vector in edge order.
    pub fn from_signs(kind: LadderKind, n: usize, signs: &[Sign]) -> Result<Self> {
        if signs.len() != 3 * n {
            return Err(Error::LengthMismatch {
                expected: 3 * n,
                actual: signs.len(),
            });
        }
        Self::new(
            kind,
            n,
            signs[..n].to_vec(),
            signs[n..2 * n].to_vec(),
            signs[2 * n..].to_vec(),
        )
    }

    /// Same ladder shape, signs read from a graph with the ladder's edge order.
    pub fn with_graph_signs(&self, g: &SignedGraph) -> Result<Self> {
        Self::from_signs(self.kind, self.n, &g.signs())
    }

    pub fn signs(&self) -> Vec<Sign> {
        let mut s = Vec::with_capacity(3 * self.n);
        s.extend_from_slice(&self.rungs);
        s.extend_from_slice(&self.top);
        s.extend_from_slice(&self.bottom);
        s
    }

    pub fn sign(&self, e: usize) -> Sign {
        let n = self.n;
        match e / n {
            0 => self.rungs[e],
            1 => self.top[e - n],
            _ => self.bottom[e - 2 * n],
        }
    }

    pub fn set_sign(&mut self, e: usize, s: Sign) {
        let n = self.n;
        match e / n {
            0 => self.rungs[e] = s,
            1 => self.top[e - n] = s,
            _ => self.bottom[e - 2 * n] = s,
        }
    }

    pub fn edge_count(&self) -> usize {
        3 * self.n
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    pub fn rung(&self, i: usize) -> usize {
        i
    }

    pub fn top_rail(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn bottom_rail(&self, i: usize) -> usize {
        2 * self.n + i
    }

    pub fn v(&self, i: usize) -> usize {
        i
    }

    pub fn u(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn negatives(&self) -> usize {
        self.rungs
            .iter()
            .chain(&self.top)
            .chain(&self.bottom)
            .filter(|s| s.is_neg())
            .count()
    }

    /// `(left, right)` endpoints of edge `e`; rungs run top to bottom.
    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let n = self.n;
        let next = |i: usize| (i + 1) % n;
        match e / n {
            0 => (self.v(e), self.u(e)),
            1 => {
                let i = e - n;
                match (self.kind, i == n - 1) {
                    (LadderKind::Moebius, true) => (self.v(i), self.u(0)),
                    _ => (self.v(i), self.v(next(i))),
                }
            }
            _ => {
                let i = e - 2 * n;
                match (self.kind, i == n - 1) {
                    (LadderKind::Moebius, true) => (self.u(i), self.v(0)),
                    _ => (self.u(i), self.u(next(i))),
                }
            }
        }
    }

    pub fn build(&self) -> SignedGraph {
        let edges = (0..self.edge_count())
            .map(|e| {
                let (a, b) = self.endpoints(e);
                (a, b, self.sign(e))
            })
            .collect();
        SignedGraph::new(self.vertex_count(), edges).expect("ladders are simple")
    }

    /// Edges of square `j`: rungs `j`, `j + 1` and rails `j`. Square `n - 1`
    /// closes around the end (through the twist for a Moebius ladder).
    pub fn square_edges(&self, j: usize) -> [usize; 4] {
        let j = j % self.n;
        [
            self.rung(j),
            self.rung((j + 1) % self.n),
            self.top_rail(j),
            self.bottom_rail(j),
        ]
    }

    /// Whether square `j` has an even number of negative edges.
    pub fn square_balanced(&self, j: usize) -> bool {
        self.square_edges(j)
            .iter()
            .filter(|&&e| self.sign(e).is_neg())
            .count()
            % 2
            == 0
    }

    pub fn square_positive(&self, j: usize) -> bool {
        self.square_edges(j).iter().all(|&e| !self.sign(e).is_neg())
    }

    pub fn switch(&self, x: &SwitchingSet) -> Result<LadderSpec> {
        self.with_graph_signs(&crate::signed::switch(&self.build(), x)?)
    }

    /// Compact `rungs|top|bottom` string of `+`/`-`.
    pub fn sign_string(&self) -> String {
        let part = |v: &[Sign]| v.iter().map(|s| s.to_string()).collect::<String>();
        format!(
            "{}|{}|{}",
            part(&self.rungs),
            part(&self.top),
            part(&self.bottom)
        )
    }

    pub fn parse_sign_string(kind: LadderKind, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidLadder(format!("bad sign string {s:?}")));
        }
        let parse = |p: &str| {
            p.chars()
                .map(|c| match c {
                    '+' => Ok(Sign::Pos),
                    '-' => Ok(Sign::Neg),
                    _ => Err(Error::InvalidLadder(format!("bad sign {c:?}"))),
                })
                .collect::<Result<Vec<_>>>()
        };
        let rungs = parse(parts[0])?;
        let n = rungs.len();
        Self::new(kind, n, rungs, parse(parts[1])?, parse(parts[2])?)
    }

    pub fn label(&self) -> String {
        format!("{}_{}", self.kind.short_name(), self.n)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// A 1-factorization read off a Hamiltonian circuit: alternate edges of
    /// the circuit, and the perfect matching left over.
    pub fn hamiltonian_factorization(&self) -> OneFactorization {
        let n = self.n;
        let circuit: Vec<usize> = match self.kind {
            LadderKind::Circular => {
                let mut c: Vec<usize> = (0..n - 1).map(|i| self.top_rail(i)).collect();
                c.push(self.rung(n - 1));
                c.extend((0..n - 1).rev().map(|i| self.bottom_rail(i)));
                c.push(self.rung(0));
                c
            }
            LadderKind::Moebius => (0..n)
                .map(|i| self.top_rail(i))
                .chain((0..n).map(|i| self.bottom_rail(i)))
                .collect(),
        };
        let on_circuit: std::collections::HashSet<usize> = circuit.iter().copied().collect();
        let rest = (0..self.edge_count())
            .filter(|e| !on_circuit.contains(e))
            .collect();
        let (a, b): (Vec<_>, Vec<_>) = circuit.iter().enumerate().partition(|(i, _)| i % 2 == 0);
        OneFactorization::new([
            a.into_iter().map(|(_, &e)| e).collect(),
            b.into_iter().map(|(_, &e)| e).collect(),
            rest,
        ])
    }

    /// The closed trail around square `j`, starting at its top-left vertex.
    pub fn square_trail(&self, j: usize) -> Trail {
        let [r0, r1, t, b] = self.square_edges(j);
        let (start, _) = self.endpoints(t);
        Trail::new(start, vec![t, r1, b, r0])
    }
}

impl fmt::Display for LadderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.label(), self.sign_string())
    }
}

/// Automorphisms of the underlying ladder graph with precomputed edge maps.
#[derive(Debug)]
pub struct LadderGroup {
    pub kind: LadderKind,
    pub n: usize,
    autos: Vec<Automorphism>,
}

impl LadderGroup {
    fn compute(kind: LadderKind, n: usize) -> Result<Self> {
        let base = LadderSpec::uniform(kind, n, Sign::Pos)?.build();
        let perms = ladder_automorphisms(kind, n)?;
        let autos = perms
            .into_iter()
            .map(|p| Automorphism::new(&base, p))
            .collect::<Result<Vec<_>>>()?;
        Ok(LadderGroup { kind, n, autos })
    }

    /// Shared, cached group for a ladder shape.
    pub fn get(kind: LadderKind, n: usize) -> Result<Arc<LadderGroup>> {
        static CACHE: OnceLock<Mutex<HashMap<(LadderKind, usize), Arc<LadderGroup>>>> =
            OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().unwrap().get(&(kind, n)) {
            return Ok(g.clone());
        }
        let group = Arc::new(Self::compute(kind, n)?);
        cache.lock().unwrap().insert((kind, n), group.clone());
        Ok(group)
    }

    pub fn automorphisms(&self) -> &[Automorphism] {
        &self.autos
    }

    pub fn len(&self) -> usize {
        self.autos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.autos.is_empty()
    }

    /// Image of a signature under automorphism `idx`.
    pub fn apply(&self, idx: usize, spec: &LadderSpec) -> LadderSpec {
        let map = self.autos[idx].edge_map();
        let mut out = spec.clone();
        for e in 0..spec.edge_count() {
            out.set_sign(map[e], spec.sign(e));
        }
        out
    }
}

/// Vertex permutations forming the automorphism group of the ladder.
///
/// Circular ladders with `n >= 5` and Moebius ladders with `n >= 4` have
/// exactly the dihedral symmetries (rotations, reflections and, for the
/// circular ladder, the rail swap). Smaller ladders (the cube, `K_{3,3}`,
/// `K_4`) have extra symmetries and are searched exhaustively.
pub fn ladder_automorphisms(kind: LadderKind, n: usize) -> Result<Vec<Vec<usize>>> {
    if n < kind.min_rungs() {
        return Err(Error::InvalidLadder(format!(
            "{kind} ladder with {n} rungs"
        )));
    }
    let small = match kind {
        LadderKind::Circular => n <= 4,
        LadderKind::Moebius => n <= 3,
    };
    if small {
        let g = LadderSpec::uniform(kind, n, Sign::Pos)?.build();
        return Ok(graph_automorphisms(&g));
    }
    let mut out = Vec::new();
    match kind {
        LadderKind::Circular => {
            for swap in [false, true] {
                for refl in [false, true] {
                    for r in 0..n {
                        let pos = |i: usize| if refl { (n - i + r) % n } else { (i + r) % n };
                        let mut p = vec![0; 2 * n];
                        for i in 0..n {
                            let (top, bot) = if swap { (n, 0) } else { (0, n) };
                            p[i] = top + pos(i);
                            p[n + i] = bot + pos(i);
                        }
                        out.push(p);
                    }
                }
            }
        }
        LadderKind::Moebius => {
            // The rim is the 2n-cycle w_0 .. w_{2n-1} with w_j = vertex j.
            let m = 2 * n;
            for refl in [false, true] {
                for r in 0..m {
                    out.push(
                        (0..m)
                            .map(|j| if refl { (m - j + r) % m } else { (j + r) % m })
                            .collect(),
                    );
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::is_balanced;

    #[test]
    fn builders_have_expected_shape() {
        let cl4 = LadderSpec::uniform(LadderKind::Circular, 4, Sign::Pos)
            .unwrap()
            .build();
        assert_eq!(cl4.vertex_count(), 8);
        assert_eq!(cl4.edge_count(), 12);
        assert!(cl4.is_cubic());
        assert!(is_balanced(&cl4));
        let ml5 = LadderSpec::uniform(LadderKind::Moebius, 5, Sign::Pos)
            .unwrap()
            .build();
        assert!(ml5.is_bipartite());
        let cl5 = LadderSpec::uniform(LadderKind::Circular, 5, Sign::Pos)
            .unwrap()
            .build();
        assert!(!cl5.is_bipartite());
        let ml2 = LadderSpec::uniform(LadderKind::Moebius, 2, Sign::Pos)
            .unwrap()
            .build();
        assert!(ml2.is_cubic());
    }

    #[test]
    fn minimum_sizes() {
        assert!(LadderSpec::uniform(LadderKind::Circular, 2, Sign::Pos).is_err());
        assert!(LadderSpec::uniform(LadderKind::Moebius, 1, Sign::Pos).is_err());
        assert!(LadderSpec::new(
            LadderKind::Circular,
            3,
            vec![Sign::Pos; 3],
            vec![Sign::Pos; 2],
            vec![Sign::Pos; 3]
        )
        .is_err());
    }

    #[test]
    fn moebius_parity_of_bipartiteness() {
        for n in 2..9 {
            let g = LadderSpec::uniform(LadderKind::Moebius, n, Sign::Pos)
                .unwrap()
                .build();
            assert_eq!(g.is_bipartite(), n % 2 == 1, "ML_{n}");
            let g = LadderSpec::uniform(LadderKind::Circular, n.max(3), Sign::Pos)
                .unwrap()
                .build();
            assert_eq!(g.is_bipartite(), n.max(3) % 2 == 0);
        }
    }

    #[test]
    fn dihedral_group_is_the_full_group() {
        for n in 5..=8 {
            let g = LadderSpec::uniform(LadderKind::Circular, n, Sign::Pos)
                .unwrap()
                .build();
            let mut full = graph_automorphisms(&g);
            let mut ours = ladder_automorphisms(LadderKind::Circular, n).unwrap();
            full.sort();
            ours.sort();
            assert_eq!(full, ours, "CL_{n}");
        }
        for n in 4..=8 {
            let g = LadderSpec::uniform(LadderKind::Moebius, n, Sign::Pos)
                .unwrap()
                .build();
            let mut full = graph_automorphisms(&g);
            let mut ours = ladder_automorphisms(LadderKind::Moebius, n).unwrap();
            full.sort();
            ours.sort();
            assert_eq!(full, ours, "ML_{n}");
        }
    }

    #[test]
    fn hamiltonian_factorization_is_valid() {
        for kind in [LadderKind::Circular, LadderKind::Moebius] {
            for n in 3..10 {
                let s = LadderSpec::uniform(kind, n, Sign::Pos).unwrap();
                s.hamiltonian_factorization().validate(&s.build()).unwrap();
            }
        }
    }

    #[test]
    fn sign_string_round_trip() {
        let mut s = LadderSpec::uniform(LadderKind::Moebius, 4, Sign::Pos).unwrap();
        s.set_sign(5, Sign::Neg);
        let t = LadderSpec::parse_sign_string(LadderKind::Moebius, &s.sign_string()).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn json_format() {
        let s: LadderSpec = serde_json::from_str(
            r#"{"kind":"circular","n":3,"rungs":[1,-1,1],"top":[1,1,1],"bottom":[1,1,-1]}"#,
        )
        .unwrap();
        assert_eq!(s.negatives(), 2);
        assert_eq!(serde_json::from_str::<LadderSpec>(&s.to_json()).unwrap(), s);
        assert!(serde_json::from_str::<LadderSpec>(
            r#"{"kind":"circular","n":2,"rungs":[1,1],"top":[1,1],"bottom":[1,1]}"#
        )
        .is_err());
    }
}
