//! Transfer-matrix decision procedure for nowhere-zero flows on ladders.
//!
//! The sweep visits rung slices left to right. Its state is the pair of
//! values arriving at `v_i` and `u_i` along the two rails entering the
//! slice, measured as inflow contributions. At a slice the rung carries `r`
//! out of `v_i`; Kirchhoff then fixes what leaves along both outgoing rails.

use crate::error::{Error, Result};
use crate::ladder::spec::{LadderKind, LadderSpec};
use crate::signed::Sign;
use crate::solver::Flow;

pub const MAX_DP_K: i32 = 8;

type Bits = [u64; 4];

fn set(b: &mut Bits, i: usize) {
    b[i >> 6] |= 1 << (i & 63);
}

fn get(b: &Bits, i: usize) -> bool {
    b[i >> 6] >> (i & 63) & 1 == 1
}

fn ones(b: &Bits) -> impl Iterator<Item = usize> + '_ {
    b.iter().enumerate().flat_map(|(w, &word)| {
        let mut x = word;
        std::iter::from_fn(move || {
            if x == 0 {
                return None;
            }
            let t = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(w * 64 + t)
        })
    })
}

/// Outflows at slice `i`: rung, top rail, bottom rail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct SliceValues {
    pub r: i32,
    pub qt: i32,
    pub qb: i32,
}

pub(crate) struct Transfer {
    k: i32,
    width: usize,
    slices: Vec<(Sign, Sign, Sign, bool)>,
}

impl Transfer {
    fn new(spec: &LadderSpec, k: i32) -> Result<Self> {
        if !(2..=MAX_DP_K).contains(&k) {
            return Err(Error::InvalidBound(k));
        }
        let n = spec.n;
        let slices = (0..n)
            .map(|i| {
                let twisted = spec.kind == LadderKind::Moebius && i == n - 1;
                (spec.rungs[i], spec.top[i], spec.bottom[i], twisted)
            })
            .collect();
        Ok(Self::from_slices(k, slices))
    }

    /// Slices given as (rung, top rail, bottom rail, twisted closure).
    pub(crate) fn from_slices(k: i32, slices: Vec<(Sign, Sign, Sign, bool)>) -> Self {
        Transfer {
            k,
            width: 2 * (k as usize - 1),
            slices,
        }
    }

    pub(crate) fn states(&self) -> usize {
        self.width * self.width
    }

    fn index(&self, x: i32) -> usize {
        if x > 0 {
            x as usize - 1
        } else {
            (self.k - 1) as usize + (-x) as usize - 1
        }
    }

    fn value(&self, i: usize) -> i32 {
        let h = (self.k - 1) as usize;
        if i < h {
            i as i32 + 1
        } else {
            -((i - h) as i32 + 1)
        }
    }

    fn state(&self, at: i32, ab: i32) -> usize {
        self.index(at) * self.width + self.index(ab)
    }

    fn unpack(&self, s: usize) -> (i32, i32) {
        (self.value(s / self.width), self.value(s % self.width))
    }

    fn legal(&self, x: i32) -> bool {
        x != 0 && x.abs() < self.k
    }

    /// Legal moves out of `state` at slice `i`, with the next state.
    pub(crate) fn moves(
        &self,
        i: usize,
        state: usize,
    ) -> impl Iterator<Item = (SliceValues, usize)> + '_ {
        let (at, ab) = self.unpack(state);
        let (rung, t, b, twisted) = self.slices[i];
        (1..self.k).flat_map(|m| [m, -m]).filter_map(move |r| {
            let qt = at - r;
            let qb = ab + rung.value() * r;
            if !self.legal(qt) || !self.legal(qb) {
                return None;
            }
            let (nt, nb) = if twisted {
                (b.value() * qb, t.value() * qt)
            } else {
                (t.value() * qt, b.value() * qb)
            };
            Some((SliceValues { r, qt, qb }, self.state(nt, nb)))
        })
    }

    fn successor_table(&self) -> Vec<Vec<Bits>> {
        // Slice types indexed by the four sign/twist bits.
        let mut table = vec![Vec::new(); 16];
        for (i, &(rung, t, b, twisted)) in self.slices.iter().enumerate() {
            let ty = slice_type(rung, t, b, twisted);
            if !table[ty].is_empty() {
                continue;
            }
            table[ty] = (0..self.states())
                .map(|s| {
                    let mut bits = [0u64; 4];
                    for (_, next) in self.moves(i, s) {
                        set(&mut bits, next);
                    }
                    bits
                })
                .collect();
        }
        table
    }
}

fn slice_type(rung: Sign, t: Sign, b: Sign, twisted: bool) -> usize {
    rung.is_neg() as usize
        | (t.is_neg() as usize) << 1
        | (b.is_neg() as usize) << 2
        | (twisted as usize) << 3
}

type Filter<'a> = &'a dyn Fn(usize, SliceValues) -> bool;

/// Forward layers from a fixed start state. With a filter, moves it
/// rejects are skipped.
fn layers(tr: &Transfer, table: &[Vec<Bits>], start: usize, filter: Option<Filter>) -> Vec<Bits> {
    let n = tr.slices.len();
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = [0u64; 4];
    set(&mut cur, start);
    out.push(cur);
    for i in 0..n {
        let mut next = [0u64; 4];
        match filter {
            None => {
                let (rung, t, b, tw) = tr.slices[i];
                let succ = &table[slice_type(rung, t, b, tw)];
                for s in ones(&cur) {
                    for w in 0..4 {
                        next[w] |= succ[s][w];
                    }
                }
            }
            Some(f) => {
                for s in ones(&cur) {
                    for (vals, ns) in tr.moves(i, s) {
                        if f(i, vals) {
                            set(&mut next, ns);
                        }
                    }
                }
            }
        }
        cur = next;
        out.push(cur);
    }
    out
}

fn solve(spec: &LadderSpec, k: i32, filter: Option<Filter>, extract: bool) -> Result<Option<Flow>> {
    let tr = Transfer::new(spec, k)?;
    let table = if filter.is_none() {
        tr.successor_table()
    } else {
        Vec::new()
    };
    let n = spec.n;
    for start in 0..tr.states() {
        let ls = layers(&tr, &table, start, filter);
        if !get(&ls[n], start) {
            continue;
        }
        if !extract {
            return Ok(Some(Flow::new(k, Vec::new())));
        }
        let mut chosen = vec![SliceValues { r: 0, qt: 0, qb: 0 }; n];
        let mut target = start;
        for i in (0..n).rev() {
            let (vals, s) = ones(&ls[i])
                .find_map(|s| {
                    tr.moves(i, s)
                        .find(|&(v, ns)| ns == target && filter.is_none_or(|f| f(i, v)))
                        .map(|(v, _)| (v, s))
                })
                .expect("reachable states have a predecessor");
            chosen[i] = vals;
            target = s;
        }
        return Ok(Some(Flow::new(k, flow_values(spec, &chosen))));
    }
    Ok(None)
}

/// Converts per-slice outflows into edge values in the reference
/// orientation.
pub(crate) fn flow_values(spec: &LadderSpec, slices: &[SliceValues]) -> Vec<i32> {
    let g = spec.build();
    let mut values = vec![0; spec.edge_count()];
    for (i, s) in slices.iter().enumerate() {
        let (v, u) = (spec.v(i), spec.u(i));
        values[spec.rung(i)] = -g.tau(spec.rung(i), v) * s.r;
        values[spec.top_rail(i)] = -g.tau(spec.top_rail(i), v) * s.qt;
        values[spec.bottom_rail(i)] = -g.tau(spec.bottom_rail(i), u) * s.qb;
    }
    values
}

/// Per-slice outflows of a flow, inverse of [`flow_values`].
pub(crate) fn slice_values(spec: &LadderSpec, values: &[i32]) -> Vec<SliceValues> {
    let g = spec.build();
    (0..spec.n)
        .map(|i| {
            let (v, u) = (spec.v(i), spec.u(i));
            SliceValues {
                r: -g.tau(spec.rung(i), v) * values[spec.rung(i)],
                qt: -g.tau(spec.top_rail(i), v) * values[spec.top_rail(i)],
                qb: -g.tau(spec.bottom_rail(i), u) * values[spec.bottom_rail(i)],
            }
        })
        .collect()
}

/// Whether the ladder has a nowhere-zero `k`-flow, for `2 <= k <= 8`.
pub fn dp_has_nzflow(spec: &LadderSpec, k: i32) -> Result<bool> {
    Ok(solve(spec, k, None, false)?.is_some())
}

/// A nowhere-zero `k`-flow on `spec.build()`, if one exists.
pub fn dp_find_flow(spec: &LadderSpec, k: i32) -> Result<Option<Flow>> {
    solve(spec, k, None, true)
}

/// Like [`dp_find_flow`], restricted to flows whose per-slice outflows all
/// pass `keep(slice, values)`.
pub(crate) fn dp_find_flow_filtered(
    spec: &LadderSpec,
    k: i32,
    keep: &dyn Fn(usize, SliceValues) -> bool,
) -> Result<Option<Flow>> {
    solve(spec, k, Some(keep), true)
}

/// Smallest `k <= cap` for which the sweep finds a flow.
pub fn dp_flow_number(spec: &LadderSpec, cap: i32) -> Result<Option<i32>> {
    if !(2..=MAX_DP_K).contains(&cap) {
        return Err(Error::InvalidBound(cap));
    }
    for k in 2..=cap {
        if dp_has_nzflow(spec, k)? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}
