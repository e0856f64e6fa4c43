//! Switching minimization and canonical forms for ladders, by a cut sweep
//! whose state is the switch/no-switch choice at the two ends of a rung.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::ladder::spec::{LadderGroup, LadderKind, LadderSpec};
use crate::signed::{CanonicalForm, Sign, SwitchingSet};

const INF: u32 = u32::MAX / 4;

/// Rung state bit 0: switch `v_i`; bit 1: switch `u_i`.
fn sv(st: usize) -> bool {
    st & 1 == 1
}

fn su(st: usize) -> bool {
    st & 2 == 2
}

fn edge_cost(sign: Sign, flipped: bool, forced: Option<Sign>) -> u32 {
    let after = sign.flipped_if(flipped);
    match forced {
        Some(f) if f != after => INF,
        _ => after.is_neg() as u32,
    }
}

/// Minimum number of negative edges over all switchings whose result
/// agrees with `forced`, with a witness switching.
pub(crate) fn min_switching(
    spec: &LadderSpec,
    forced: &[Option<Sign>],
) -> Option<(usize, SwitchingSet)> {
    let n = spec.n;
    let rung_cost =
        |i: usize, st: usize| edge_cost(spec.rungs[i], sv(st) != su(st), forced[spec.rung(i)]);
    let rail_cost = |i: usize, a: usize, b: usize| {
        edge_cost(spec.top[i], sv(a) != sv(b), forced[spec.top_rail(i)])
            + edge_cost(spec.bottom[i], su(a) != su(b), forced[spec.bottom_rail(i)])
    };
    let closure_cost = |last: usize, first: usize| match spec.kind {
        LadderKind::Circular => rail_cost(n - 1, last, first),
        LadderKind::Moebius => {
            edge_cost(
                spec.top[n - 1],
                sv(last) != su(first),
                forced[spec.top_rail(n - 1)],
            ) + edge_cost(
                spec.bottom[n - 1],
                su(last) != sv(first),
                forced[spec.bottom_rail(n - 1)],
            )
        }
    };

    let mut best: Option<(u32, usize, Vec<[u8; 4]>, usize)> = None;
    // Switching every vertex changes nothing, so v_0 stays unswitched.
    for first in [0usize, 2] {
        let mut dp = [INF; 4];
        dp[first] = rung_cost(0, first);
        let mut parents = vec![[0u8; 4]; n];
        for i in 1..n {
            let mut next = [INF; 4];
            for st in 0..4 {
                let rc = rung_cost(i, st);
                if rc >= INF {
                    continue;
                }
                for prev in 0..4 {
                    if dp[prev] >= INF {
                        continue;
                    }
                    let c = dp[prev] + rail_cost(i - 1, prev, st) + rc;
                    if c < next[st] {
                        next[st] = c;
                        parents[i][st] = prev as u8;
                    }
                }
            }
            dp = next.map(|c| c.min(INF));
        }
        for last in 0..4 {
            if dp[last] >= INF {
                continue;
            }
            let c = dp[last] + closure_cost(last, first);
            if c < INF && best.as_ref().is_none_or(|b| c < b.0) {
                best = Some((c, last, parents.clone(), first));
            }
        }
    }
    let (cost, last, parents, _) = best?;
    let mut states = vec![0usize; n];
    states[n - 1] = last;
    for i in (1..n).rev() {
        states[i - 1] = parents[i][states[i]] as usize;
    }
    let x = SwitchingSet::new(states.iter().enumerate().flat_map(|(i, &st)| {
        let mut v = Vec::new();
        if sv(st) {
            v.push(spec.v(i));
        }
        if su(st) {
            v.push(spec.u(i));
        }
        v
    }));
    Some((cost as usize, x))
}

/// Minimum negative-edge count of a ladder signature with a witness, for
/// ladders of any size.
pub fn ladder_min_negatives(spec: &LadderSpec) -> CanonicalForm {
    let (count, x) = min_switching(spec, &vec![None; spec.edge_count()]).expect("unconstrained");
    let representative = crate::signed::switch(&spec.build(), &x).expect("valid switching");
    CanonicalForm {
        representative,
        min_negatives: count,
        witness_switching: x,
        witness_automorphism: (0..spec.vertex_count()).collect(),
    }
}

/// Lexicographically smallest minimum-negative switching of `spec`.
fn lex_min_switching(spec: &LadderSpec) -> (LadderSpec, SwitchingSet) {
    let m = spec.edge_count();
    let mut forced = vec![None; m];
    let (target, _) = min_switching(spec, &forced).expect("unconstrained");
    for e in 0..m {
        forced[e] = Some(Sign::Pos);
        if min_switching(spec, &forced).map(|(c, _)| c) != Some(target) {
            forced[e] = Some(Sign::Neg);
        }
    }
    let (_, x) = min_switching(spec, &forced).expect("greedy keeps feasibility");
    (spec.switch(&x).expect("valid switching"), x)
}

/// Canonical representative of a ladder signature under switching and the
/// ladder's automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderCanonical {
    pub spec: LadderSpec,
    pub min_negatives: usize,
    /// Index into the shape's [`LadderGroup`].
    pub automorphism: usize,
    /// Applied after the automorphism.
    pub switching: SwitchingSet,
}

impl LadderCanonical {
    pub fn to_canonical_form(&self, group: &LadderGroup) -> CanonicalForm {
        CanonicalForm {
            representative: self.spec.build(),
            min_negatives: self.min_negatives,
            witness_switching: self.switching.clone(),
            witness_automorphism: group.automorphisms()[self.automorphism].perm().to_vec(),
        }
    }
}

pub fn ladder_canonical(spec: &LadderSpec) -> Result<LadderCanonical> {
    let group = LadderGroup::get(spec.kind, spec.n)?;
    Ok(ladder_canonical_in(spec, &group))
}

pub(crate) fn ladder_canonical_in(spec: &LadderSpec, group: &LadderGroup) -> LadderCanonical {
    let mut best: Option<(Vec<Sign>, LadderSpec, usize, SwitchingSet)> = None;
    for idx in 0..group.len() {
        let image = group.apply(idx, spec);
        let (rep, x) = lex_min_switching(&image);
        let key = rep.signs();
        if best.as_ref().is_none_or(|b| key < b.0) {
            best = Some((key, rep, idx, x));
        }
    }
    let (_, rep, automorphism, switching) = best.expect("group contains the identity");
    LadderCanonical {
        min_negatives: rep.negatives(),
        spec: rep,
        automorphism,
        switching,
    }
}

/// One representative per switching class: spanning-tree edges (top and
/// bottom paths plus rung 0) positive, the `n + 1` remaining edges free.
pub fn switching_class_reps(kind: LadderKind, n: usize) -> Result<Vec<LadderSpec>> {
    let base = LadderSpec::uniform(kind, n, Sign::Pos)?;
    let free: Vec<usize> = (1..n)
        .map(|i| base.rung(i))
        .chain([base.top_rail(n - 1), base.bottom_rail(n - 1)])
        .collect();
    Ok((0u64..(1u64 << free.len()))
        .map(|mask| {
            let mut s = base.clone();
            for (bit, &e) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    s.set_sign(e, Sign::Neg);
                }
            }
            s
        })
        .collect())
}

/// A switching-isomorphism class of a ladder shape.
#[derive(Clone, Debug)]
pub struct CanonicalClass {
    pub spec: LadderSpec,
    pub min_negatives: usize,
    /// Number of switching classes in the orbit.
    pub switching_classes: usize,
}

impl CanonicalClass {
    /// Number of raw signatures in the orbit. Each switching class of a
    /// connected graph on `2n` vertices holds `2^(2n-1)` signatures.
    pub fn orbit_size(&self) -> u128 {
        (self.switching_classes as u128) << (2 * self.spec.n - 1)
    }
}

/// All switching-isomorphism classes of a ladder shape, sorted by
/// canonical sign vector.
pub fn canonical_classes(kind: LadderKind, n: usize) -> Result<Vec<CanonicalClass>> {
    let group = LadderGroup::get(kind, n)?;
    let reps = switching_class_reps(kind, n)?;
    let canon: Vec<LadderCanonical> = reps
        .par_iter()
        .map(|s| ladder_canonical_in(s, &group))
        .collect();
    let mut counts: HashMap<Vec<Sign>, (LadderCanonical, usize)> = HashMap::new();
    for c in canon {
        counts.entry(c.spec.signs()).or_insert((c, 0)).1 += 1;
    }
    let mut out: Vec<CanonicalClass> = counts
        .into_values()
        .map(|(c, count)| CanonicalClass {
            min_negatives: c.min_negatives,
            spec: c.spec,
            switching_classes: count,
        })
        .collect();
    out.sort_by_key(|a| a.spec.signs());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::{canonical_form, min_negative_edges, switch};

    fn all_signatures(kind: LadderKind, n: usize) -> impl Iterator<Item = LadderSpec> {
        (0u64..(1 << (3 * n))).map(move |mask| {
            let signs: Vec<Sign> = (0..3 * n)
                .map(|e| Sign::from_neg(mask >> e & 1 == 1))
                .collect();
            LadderSpec::from_signs(kind, n, &signs).unwrap()
        })
    }

    #[test]
    fn cut_sweep_matches_exhaustive_minimum() {
        for (kind, n) in [
            (LadderKind::Circular, 3),
            (LadderKind::Circular, 4),
            (LadderKind::Moebius, 2),
            (LadderKind::Moebius, 3),
            (LadderKind::Moebius, 4),
        ] {
            for spec in all_signatures(kind, n).step_by(7) {
                let g = spec.build();
                let brute = min_negative_edges(&g).unwrap();
                let cf = ladder_min_negatives(&spec);
                assert_eq!(cf.min_negatives, brute.min_negatives, "{spec}");
                assert_eq!(
                    switch(&g, &cf.witness_switching).unwrap(),
                    cf.representative
                );
                assert_eq!(cf.representative.negatives(), cf.min_negatives);
            }
        }
    }

    #[test]
    fn ladder_canonical_matches_generic_canonical_form() {
        for (kind, n) in [
            (LadderKind::Circular, 4),
            (LadderKind::Moebius, 4),
            (LadderKind::Circular, 5),
        ] {
            let group = LadderGroup::get(kind, n).unwrap();
            let perms: Vec<Vec<usize>> = group
                .automorphisms()
                .iter()
                .map(|a| a.perm().to_vec())
                .collect();
            for spec in all_signatures(kind, n).step_by(97) {
                let generic = canonical_form(&spec.build(), &perms).unwrap();
                let ours = ladder_canonical(&spec).unwrap();
                assert_eq!(generic.representative.signs(), ours.spec.signs(), "{spec}");
                assert_eq!(generic.min_negatives, ours.min_negatives);
                // Witnesses reproduce the representative.
                let img = group.automorphisms()[ours.automorphism].apply(&spec.build());
                assert_eq!(
                    switch(&img, &ours.switching).unwrap().signs(),
                    ours.spec.signs()
                );
            }
        }
    }

    #[test]
    fn orbit_sizes_partition_all_signatures() {
        for (kind, n) in [
            (LadderKind::Circular, 3),
            (LadderKind::Circular, 4),
            (LadderKind::Moebius, 3),
        ] {
            let classes = canonical_classes(kind, n).unwrap();
            let total: u128 = classes.iter().map(|c| c.orbit_size()).sum();
            assert_eq!(total, 1u128 << (3 * n));
            // Raw sweep: every signature lands on one of the classes, with
            // the predicted multiplicities.
            let mut raw: HashMap<Vec<Sign>, u128> = HashMap::new();
            for spec in all_signatures(kind, n) {
                *raw.entry(ladder_canonical(&spec).unwrap().spec.signs())
                    .or_default() += 1;
            }
            assert_eq!(raw.len(), classes.len());
            for c in &classes {
                assert_eq!(raw[&c.spec.signs()], c.orbit_size());
            }
        }
    }

    #[test]
    fn single_negative_rung_positions_are_equivalent() {
        let mut a = LadderSpec::uniform(LadderKind::Circular, 5, Sign::Pos).unwrap();
        let mut b = a.clone();
        a.rungs[0] = Sign::Neg;
        b.rungs[3] = Sign::Neg;
        assert_eq!(
            ladder_canonical(&a).unwrap().spec,
            ladder_canonical(&b).unwrap().spec
        );
    }

    #[test]
    fn large_ladders_use_the_sweep() {
        let mut s = LadderSpec::uniform(LadderKind::Circular, 500, Sign::Pos).unwrap();
        for i in 0..500 {
            s.rungs[i] = Sign::Neg;
        }
        assert_eq!(ladder_min_negatives(&s).min_negatives, 0);
    }
}
