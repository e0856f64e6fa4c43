//! Ladders in which every square is unbalanced, so no switching leaves a
//! positive square to contract. Their flows are built by repeating a short
//! periodic unit along the ladder and closing it up with a fixed tail.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::dp::{flow_values, SliceValues, Transfer};
use crate::ladder::spec::{LadderKind, LadderSpec};
use crate::signed::{switch_flow, switching_between, Sign};
use crate::solver::{verify_flow, Flow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionalKind {
    /// Even circular ladder, negative rungs at every other position.
    #[serde(rename = "CL_even_alternating_rungs")]
    CircularEvenAlternating,
    /// Even circular ladder with one negative edge more than half the rungs.
    #[serde(rename = "CL_even_kplus1")]
    CircularEvenKPlus1,
    #[serde(rename = "CL_odd_kplus1")]
    CircularOddKPlus1,
    #[serde(rename = "ML_even_alternating_rungs")]
    MoebiusEvenAlternating,
    #[serde(rename = "ML_odd_kplus1")]
    MoebiusOddKPlus1,
}

impl ExceptionalKind {
    pub fn name(self) -> &'static str {
        match self {
            ExceptionalKind::CircularEvenAlternating => "CL_even_alternating_rungs",
            ExceptionalKind::CircularEvenKPlus1 => "CL_even_kplus1",
            ExceptionalKind::CircularOddKPlus1 => "CL_odd_kplus1",
            ExceptionalKind::MoebiusEvenAlternating => "ML_even_alternating_rungs",
            ExceptionalKind::MoebiusOddKPlus1 => "ML_odd_kplus1",
        }
    }

    /// The flow bound the tiling aims for on `n` rungs.
    pub fn target_k(self, n: usize) -> i32 {
        let half_even = (n / 2).is_multiple_of(2);
        match self {
            ExceptionalKind::CircularEvenAlternating => {
                if half_even {
                    4
                } else {
                    5
                }
            }
            ExceptionalKind::CircularEvenKPlus1 => {
                if half_even {
                    5
                } else {
                    4
                }
            }
            ExceptionalKind::CircularOddKPlus1 => 5,
            ExceptionalKind::MoebiusEvenAlternating => 4,
            ExceptionalKind::MoebiusOddKPlus1 => 5,
        }
    }
}

impl fmt::Display for ExceptionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The exceptional kind of `spec`, if every one of its squares has an odd
/// number of negative edges. The test is switching invariant.
pub fn detect_exceptional(spec: &LadderSpec) -> Option<ExceptionalKind> {
    if !(0..spec.n).all(|j| !spec.square_balanced(j)) {
        return None;
    }
    let even = spec.n.is_multiple_of(2);
    Some(match (spec.kind, even) {
        (LadderKind::Circular, true) => {
            let top_neg = spec.top.iter().filter(|s| s.is_neg()).count();
            if top_neg % 2 == 0 {
                ExceptionalKind::CircularEvenAlternating
            } else {
                ExceptionalKind::CircularEvenKPlus1
            }
        }
        (LadderKind::Circular, false) => ExceptionalKind::CircularOddKPlus1,
        (LadderKind::Moebius, true) => ExceptionalKind::MoebiusEvenAlternating,
        (LadderKind::Moebius, false) => ExceptionalKind::MoebiusOddKPlus1,
    })
}

/// Rungs alternate `-, +, ...` from rung 0 (odd ladders end on `-`),
/// inner rails are positive and the closure rails carry `tc`, `bc`.
fn normal_form(kind: LadderKind, n: usize, tc: Sign, bc: Sign) -> LadderSpec {
    let mut s = LadderSpec::uniform(kind, n, Sign::Pos).expect("valid size");
    for i in (0..n).step_by(2) {
        s.rungs[i] = Sign::Neg;
    }
    s.top[n - 1] = tc;
    s.bottom[n - 1] = bc;
    s
}

/// Closure signs keeping every square unbalanced.
fn closure_options(n: usize) -> [(Sign, Sign); 2] {
    if n.is_multiple_of(2) {
        [(Sign::Pos, Sign::Pos), (Sign::Neg, Sign::Neg)]
    } else {
        [(Sign::Pos, Sign::Neg), (Sign::Neg, Sign::Pos)]
    }
}

/// A periodic unit flow and a closing tail, both as per-slice outflows.
#[derive(Debug)]
struct Plan {
    cycle: Vec<SliceValues>,
    period: usize,
    tail: Vec<SliceValues>,
    tail_units: usize,
}

type PlanKey = (LadderKind, Sign, Sign, bool, i32, usize, usize);

const MAX_TAIL_UNITS: usize = 24;
const MAX_PERIOD: usize = 4;

fn plan_cache() -> &'static Mutex<HashMap<PlanKey, Option<Arc<Plan>>>> {
    static CACHE: OnceLock<Mutex<HashMap<PlanKey, Option<Arc<Plan>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Steps of one block of slices from every state: for each start state, the
/// reachable end states with the first path found to each.
fn block_steps(tr: &Transfer, block: &[usize]) -> Vec<Vec<(usize, Vec<SliceValues>)>> {
    (0..tr.states())
        .map(|start| {
            let mut frontier: Vec<(usize, Vec<SliceValues>)> = vec![(start, Vec::new())];
            for &i in block {
                let mut seen = HashMap::new();
                let mut next = Vec::new();
                for (s, path) in &frontier {
                    for (vals, ns) in tr.moves(i, *s) {
                        if seen.insert(ns, ()).is_none() {
                            let mut p = path.clone();
                            p.push(vals);
                            next.push((ns, p));
                        }
                    }
                }
                frontier = next;
            }
            frontier
        })
        .collect()
}

fn find_plan(kind: LadderKind, tc: Sign, bc: Sign, odd: bool, k: i32, m: usize) -> Option<Plan> {
    let twisted = kind == LadderKind::Moebius;
    let mut slices = vec![
        (Sign::Neg, Sign::Pos, Sign::Pos, false),
        (Sign::Pos, Sign::Pos, Sign::Pos, false),
    ];
    let closing: Vec<usize> = if odd {
        slices.push((Sign::Neg, tc, bc, twisted));
        vec![2]
    } else {
        slices.push((Sign::Pos, tc, bc, twisted));
        vec![0, 2]
    };
    let tr = Transfer::from_slices(k, slices);
    let unit = block_steps(&tr, &[0, 1]);
    let close = block_steps(&tr, &closing);
    let horizon = m.min(MAX_TAIL_UNITS);

    for a in 0..tr.states() {
        // layers[j][s] = (previous state, unit path) for walks of j units.
        let mut layers: Vec<HashMap<usize, (usize, Vec<SliceValues>)>> = vec![HashMap::new()];
        layers[0].insert(a, (a, Vec::new()));
        for j in 1..=horizon.max(MAX_PERIOD) {
            let mut next = HashMap::new();
            let mut states: Vec<usize> = layers[j - 1].keys().copied().collect();
            states.sort_unstable();
            for s in states {
                for (ns, path) in &unit[s] {
                    next.entry(*ns).or_insert_with(|| (s, path.clone()));
                }
            }
            layers.push(next);
        }
        let walk = |to: usize, len: usize| {
            let mut out = Vec::new();
            let mut cur = to;
            for j in (1..=len).rev() {
                let (prev, path) = &layers[j][&cur];
                out.splice(0..0, path.iter().copied());
                cur = *prev;
            }
            out
        };
        let period = (1..=MAX_PERIOD).find(|&p| layers[p].contains_key(&a));
        for w in 0..=horizon {
            let allowed = w == m || period.is_some_and(|p| w <= m && (m - w).is_multiple_of(p));
            if !allowed {
                continue;
            }
            let mut ends: Vec<usize> = layers[w].keys().copied().collect();
            ends.sort_unstable();
            for b in ends {
                if let Some((_, zpath)) = close[b].iter().find(|(ns, _)| *ns == a) {
                    let mut tail = walk(b, w);
                    tail.extend_from_slice(zpath);
                    let (cycle, p) = match period {
                        Some(p) => (walk(a, p), p),
                        None => (Vec::new(), 1),
                    };
                    return Some(Plan {
                        cycle,
                        period: p,
                        tail,
                        tail_units: w,
                    });
                }
            }
        }
    }
    None
}

fn cached_plan(
    kind: LadderKind,
    tc: Sign,
    bc: Sign,
    odd: bool,
    k: i32,
    m: usize,
) -> Option<Arc<Plan>> {
    let key = (kind, tc, bc, odd, k, m.min(MAX_TAIL_UNITS), m % 12);
    if let Some(p) = plan_cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let plan = find_plan(kind, tc, bc, odd, k, m).map(Arc::new);
    plan_cache().lock().unwrap().insert(key, plan.clone());
    plan
}

/// An exceptional flow with the number of unit repetitions used.
#[derive(Clone, Debug)]
pub struct TiledFlow {
    pub flow: Flow,
    pub kind: ExceptionalKind,
    /// Copies of the periodic unit laid down before the closing tail.
    pub periods: usize,
}

/// Builds a flow on an exceptional ladder with `k = kind.target_k(n)`.
pub fn exceptional_flow(spec: &LadderSpec, kind: ExceptionalKind) -> Result<Flow> {
    Ok(tiled_flow(spec, kind)?.flow)
}

pub fn tiled_flow(spec: &LadderSpec, kind: ExceptionalKind) -> Result<TiledFlow> {
    if detect_exceptional(spec) != Some(kind) {
        return Err(Error::InvalidLadder(format!(
            "{spec} is not of kind {kind}"
        )));
    }
    let n = spec.n;
    let k = kind.target_k(n);
    let odd = n % 2 == 1;
    let m = if odd { (n - 1) / 2 } else { n / 2 - 1 };
    let g = spec.build();
    for (tc, bc) in closure_options(n) {
        let nf = normal_form(spec.kind, n, tc, bc);
        let ng = nf.build();
        let Some(x) = switching_between(&ng, &g) else {
            continue;
        };
        let plan = cached_plan(spec.kind, tc, bc, odd, k, m).ok_or_else(|| {
            Error::Unsupported(format!("no periodic {k}-flow pattern closes up on {nf}"))
        })?;
        let reps = if plan.cycle.is_empty() {
            0
        } else {
            (m - plan.tail_units) / plan.period
        };
        let mut slices = Vec::with_capacity(n);
        for _ in 0..reps {
            slices.extend_from_slice(&plan.cycle);
        }
        slices.extend_from_slice(&plan.tail);
        let values = switch_flow(&ng, &x, &flow_values(&nf, &slices))?;
        let flow = Flow::new(k, values);
        if !verify_flow(&g, &flow)? {
            return Err(Error::Unsupported(format!(
                "tiled flow fails to verify on {spec}"
            )));
        }
        return Ok(TiledFlow {
            flow,
            kind,
            periods: reps,
        });
    }
    Err(Error::Unsupported(format!(
        "{spec} matches no normal form of kind {kind}"
    )))
}
