//! Constructive 5-flows on signed ladders, following the induction on the
//! number of rungs: small ladders come from frozen tables, balanced ones
//! from a 3-edge-colouring, exceptional ones from tiling, and everything
//! else by contracting a positive square and lifting the smaller flow.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::canon::{ladder_canonical_in, ladder_min_negatives};
use crate::ladder::dp::{dp_find_flow, dp_find_flow_filtered, slice_values};
use crate::ladder::exceptional::{detect_exceptional, tiled_flow, ExceptionalKind};
use crate::ladder::spec::{LadderGroup, LadderKind, LadderSpec};
use crate::ladder::square::{contract_square, extend_flow_with_frame, ExtensionFrame, SquareRef};
use crate::ladder::tables::{base_case, cl4_exception};
use crate::signed::{switch_flow, switching_between, SwitchingSet};
use crate::solver::{
    all_one_factorizations, flow_from_balanced_2factors, flow_number, for_each_nzflow, verify_flow,
    Flow, FlowNumber, MAX_SEARCH_EDGES,
};

/// Ladders up to this size are put in full canonical form; larger ones are
/// only switched to a minimum number of negative edges.
const FULL_CANONICAL_MAX_N: usize = 12;
/// Largest ladder on which the two-factor construction is searched for.
const TWO_FACTOR_MAX_N: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    BaseCase {
        class_id: String,
    },
    Balanced3EdgeColoring,
    SquareContraction {
        /// Ladder group element applied to the representative first.
        rotation: usize,
        /// Switching applied next, making the square positive.
        switching: SwitchingSet,
        square: SquareRef,
        frame: ExtensionFrame,
        child: Box<ProofTrace>,
    },
    ExceptionalPattern {
        kind: ExceptionalKind,
        periods: usize,
    },
    TwoFactorComposition,
    DirectSearch {
        reason: String,
    },
}

impl Step {
    pub fn name(&self) -> &'static str {
        match self {
            Step::BaseCase { .. } => "base_case",
            Step::Balanced3EdgeColoring => "balanced_3_edge_coloring",
            Step::SquareContraction { .. } => "square_contraction",
            Step::ExceptionalPattern { .. } => "exceptional_pattern",
            Step::TwoFactorComposition => "two_factor_composition",
            Step::DirectSearch { .. } => "direct_search",
        }
    }
}

/// One level of a construction: the ladder handled, the flow produced on
/// it, and how.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub spec: LadderSpec,
    /// The switching-isomorphic ladder the step was carried out on.
    pub representative: LadderSpec,
    pub flow: Flow,
    #[serde(flatten)]
    pub step: Step,
}

impl ProofTrace {
    /// Replays the trace: every level's flow must verify on its ladder,
    /// and every contraction must match its child.
    pub fn verify(&self) -> Result<bool> {
        if !verify_flow(&self.spec.build(), &self.flow)? {
            return Ok(false);
        }
        if let Step::SquareContraction {
            rotation,
            switching,
            square,
            child,
            ..
        } = &self.step
        {
            let group = LadderGroup::get(self.representative.kind, self.representative.n)?;
            if *rotation >= group.len() {
                return Ok(false);
            }
            let parent = group
                .apply(*rotation, &self.representative)
                .switch(switching)?;
            let contracted = contract_square(&parent, *square)?;
            if contracted != child.spec || child.flow.k > 5 {
                return Ok(false);
            }
            return child.verify();
        }
        Ok(true)
    }

    /// Step names from the root down the contraction chain.
    pub fn step_names(&self) -> Vec<&'static str> {
        let mut out = vec![self.step.name()];
        let mut cur = self;
        while let Step::SquareContraction { child, .. } = &cur.step {
            out.push(child.step.name());
            cur = child;
        }
        out
    }

    /// Number of levels in the contraction chain.
    pub fn depth(&self) -> usize {
        self.step_names().len()
    }

    /// The step that finished the chain.
    pub fn leaf(&self) -> &ProofTrace {
        let mut cur = self;
        while let Step::SquareContraction { child, .. } = &cur.step {
            cur = child;
        }
        cur
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProverOutcome {
    Flow { flow: Flow, trace: ProofTrace },
    NotAdmissible,
}

impl ProverOutcome {
    pub fn k(&self) -> Option<i32> {
        match self {
            ProverOutcome::Flow { flow, .. } => Some(flow.k),
            ProverOutcome::NotAdmissible => None,
        }
    }
}

/// How a ladder was normalized: automorphism (by group index) then
/// switching.
struct Normalized {
    rep: LadderSpec,
    min_negatives: usize,
    auto: Option<usize>,
    switching: SwitchingSet,
}

fn normalize(spec: &LadderSpec) -> Result<Normalized> {
    if spec.n <= FULL_CANONICAL_MAX_N {
        let group = LadderGroup::get(spec.kind, spec.n)?;
        let c = ladder_canonical_in(spec, &group);
        Ok(Normalized {
            min_negatives: c.min_negatives,
            rep: c.spec,
            auto: Some(c.automorphism),
            switching: c.switching,
        })
    } else {
        let cf = ladder_min_negatives(spec);
        Ok(Normalized {
            rep: spec.switch(&cf.witness_switching)?,
            min_negatives: cf.min_negatives,
            auto: None,
            switching: cf.witness_switching,
        })
    }
}

/// Carries a flow on the normalized ladder back to the original.
fn pull_back(spec: &LadderSpec, norm: &Normalized, values: &[i32]) -> Result<Vec<i32>> {
    let rep_graph = norm.rep.build();
    // Switching is an involution: switching the representative by the same
    // set returns the automorphic image of the input.
    let image_values = switch_flow(&rep_graph, &norm.switching, values)?;
    match norm.auto {
        None => Ok(image_values),
        Some(idx) => {
            let group = LadderGroup::get(spec.kind, spec.n)?;
            let auto = &group.automorphisms()[idx];
            let image = auto.apply(&spec.build());
            Ok(auto.inverse().apply_flow(&image, &image_values))
        }
    }
}

/// Builds a nowhere-zero flow with `k <= 5` (`k = 6` for the exceptional
/// `CL_4` class) together with a trace of how it was obtained.
pub fn constructive_5flow(spec: &LadderSpec) -> Result<ProverOutcome> {
    let norm = normalize(spec)?;
    if norm.min_negatives == 1 {
        return Ok(ProverOutcome::NotAdmissible);
    }
    let (rep_flow, step) = prove_normalized(&norm.rep, norm.min_negatives)?;
    let values = pull_back(spec, &norm, &rep_flow.values)?;
    let flow = Flow::new(rep_flow.k, values);
    if !verify_flow(&spec.build(), &flow)? {
        return Err(Error::InvalidFlow(format!(
            "constructed flow fails to verify on {spec}"
        )));
    }
    let trace = ProofTrace {
        spec: spec.clone(),
        representative: norm.rep,
        flow: flow.clone(),
        step,
    };
    Ok(ProverOutcome::Flow { flow, trace })
}

fn prove_normalized(rep: &LadderSpec, min_negatives: usize) -> Result<(Flow, Step)> {
    let (kind, n) = (rep.kind, rep.n);
    let g = rep.build();

    if min_negatives == 0 {
        let fac = rep.hamiltonian_factorization();
        let flow = flow_from_balanced_2factors(&g, &fac)?
            .expect("every 2-factor of a balanced graph is balanced");
        return Ok((flow, Step::Balanced3EdgeColoring));
    }

    if kind == LadderKind::Circular && n == 4 && min_negatives == 3 {
        let cert = cl4_exception();
        let flow = transport_between(&cert.spec, &cert.certificate, rep)?;
        return Ok((
            flow,
            Step::BaseCase {
                class_id: "CL4-exception".into(),
            },
        ));
    }

    if let Some(bc) = base_case(rep) {
        return Ok((
            bc.flow.clone(),
            Step::BaseCase {
                class_id: bc.class_id(),
            },
        ));
    }

    let small = match kind {
        LadderKind::Circular => n <= 6,
        LadderKind::Moebius => n <= 5,
    };
    if small {
        return match flow_number(&g, 5)? {
            FlowNumber::Exact { flow, .. } => Ok((
                flow,
                Step::DirectSearch {
                    reason: format!("{} is below the induction's range", rep.label()),
                },
            )),
            _ => Err(Error::Unsupported(format!("no 5-flow found on {rep}"))),
        };
    }

    if let Some(ek) = detect_exceptional(rep) {
        if ek.target_k(n) == 4 && n <= TWO_FACTOR_MAX_N {
            if let Some(flow) = two_factor_flow(rep)? {
                return Ok((flow, Step::TwoFactorComposition));
            }
        }
        let tf = tiled_flow(rep, ek)?;
        return Ok((
            tf.flow,
            Step::ExceptionalPattern {
                kind: ek,
                periods: tf.periods,
            },
        ));
    }

    if let Some(result) = contract_and_lift(rep)? {
        return Ok(result);
    }

    let flow = dp_find_flow(rep, 5)?
        .ok_or_else(|| Error::Unsupported(format!("no 5-flow exists on {rep}")))?;
    Ok((
        flow,
        Step::DirectSearch {
            reason: "no square contraction keeps the ladder flow-admissible".into(),
        },
    ))
}

/// Moves a flow between two switching-equivalent signatures of the same
/// ladder, or through an automorphism when they are only isomorphic.
fn transport_between(from: &LadderSpec, flow: &Flow, to: &LadderSpec) -> Result<Flow> {
    let fg = from.build();
    let tg = to.build();
    if let Some(x) = switching_between(&fg, &tg) {
        return Ok(Flow::new(flow.k, switch_flow(&fg, &x, &flow.values)?));
    }
    let group = LadderGroup::get(from.kind, from.n)?;
    for auto in group.automorphisms() {
        let image = auto.apply(&fg);
        if let Some(x) = switching_between(&image, &tg) {
            let moved = auto.apply_flow(&fg, &flow.values);
            return Ok(Flow::new(flow.k, switch_flow(&image, &x, &moved)?));
        }
    }
    Err(Error::InvalidLadder(format!(
        "{from} and {to} are not switching isomorphic"
    )))
}

fn two_factor_flow(spec: &LadderSpec) -> Result<Option<Flow>> {
    let g = spec.build();
    for fac in all_one_factorizations(&g)? {
        if let Some(flow) = flow_from_balanced_2factors(&g, &fac)? {
            return Ok(Some(flow));
        }
    }
    Ok(None)
}

/// A contractible square of `spec` after rotating and switching, whose
/// contraction stays flow-admissible: the group element applied, the
/// rotated ladder, the switching making the square positive, and the square.
fn choose_square(
    spec: &LadderSpec,
) -> Result<Option<(usize, LadderSpec, SwitchingSet, SquareRef)>> {
    let n = spec.n;
    if n < 4 || n - 2 < spec.kind.min_rungs() {
        return Ok(None);
    }
    let group = LadderGroup::get(spec.kind, spec.n)?;
    // Try the group elements in order; the first ones are rotations.
    for r in 0..group.len() {
        let rotated = if r == 0 {
            spec.clone()
        } else {
            group.apply(r, spec)
        };
        for i in 0..=n - 4 {
            let sq = SquareRef::new(i);
            if !rotated.square_balanced(i + 1) {
                continue;
            }
            let verts = sq.vertices(&rotated);
            for mask in 0u32..16 {
                let x = SwitchingSet::new((0..4).filter(|b| mask >> b & 1 == 1).map(|b| verts[b]));
                let switched = rotated.switch(&x)?;
                if !sq.is_contractible(&switched) {
                    continue;
                }
                let child = contract_square(&switched, sq)?;
                if ladder_min_negatives(&child).min_negatives != 1 {
                    return Ok(Some((r, rotated, x, sq)));
                }
                // Other switchings of the same square give the same child
                // up to switching.
                break;
            }
        }
    }
    Ok(None)
}

fn contract_and_lift(rep: &LadderSpec) -> Result<Option<(Flow, Step)>> {
    let Some((rotation, rotated, x, sq)) = choose_square(rep)? else {
        return Ok(None);
    };
    let parent = rotated.switch(&x)?;
    let child = contract_square(&parent, sq)?;
    let (child_trace, (parent_flow, frame)) = match constructive_5flow(&child)? {
        ProverOutcome::Flow { flow, trace } => {
            let as5 = Flow::new(5, flow.values.clone());
            match extend_flow_with_frame(&parent, sq, &as5)? {
                Some(lifted) => (trace, lifted),
                None => retry_child(&parent, &child, sq)?,
            }
        }
        ProverOutcome::NotAdmissible => {
            return Err(Error::Unsupported(format!(
                "contracting {parent} left an inadmissible ladder"
            )))
        }
    };
    // Undo the square switching, then the rotation.
    let mut values = switch_flow(&parent.build(), &x, &parent_flow.values)?;
    if rotation != 0 {
        let group = LadderGroup::get(rep.kind, rep.n)?;
        let auto = &group.automorphisms()[rotation];
        values = auto.inverse().apply_flow(&rotated.build(), &values);
    }
    let step = Step::SquareContraction {
        rotation,
        switching: x,
        square: sq,
        frame,
        child: Box::new(child_trace),
    };
    Ok(Some((Flow::new(5, values), step)))
}

/// Another child flow avoiding the one obstruction to lifting: both
/// replacement rails delivering the same value 4 into the square.
fn retry_child(
    parent: &LadderSpec,
    child: &LadderSpec,
    sq: SquareRef,
) -> Result<(ProofTrace, (Flow, ExtensionFrame))> {
    let i = sq.index;
    let (t, b) = (parent.top[i].value(), parent.bottom[i].value());
    let blocked = |qt: i32, qb: i32| t * qt == b * qb && qt.abs() == 4;
    let cg = child.build();
    let (flow, reason) = if cg.edge_count() <= MAX_SEARCH_EDGES {
        let mut found = None;
        for_each_nzflow(&cg, 5, |v| {
            let sl = slice_values(child, v);
            if blocked(sl[i].qt, sl[i].qb) {
                ControlFlow::Continue(())
            } else {
                found = Some(v.to_vec());
                ControlFlow::Break(())
            }
        })?;
        (
            found.map(|v| Flow::new(5, v)),
            "enumerated child flow avoiding 4, 4 on the cut",
        )
    } else {
        let keep =
            |slice: usize, v: crate::ladder::dp::SliceValues| slice != i || !blocked(v.qt, v.qb);
        (
            dp_find_flow_filtered(child, 5, &keep)?,
            "transfer sweep avoiding 4, 4 on the cut",
        )
    };
    let flow = flow.ok_or_else(|| {
        Error::Unsupported(format!(
            "every 5-flow of {child} blocks the lift to {parent}"
        ))
    })?;
    let lifted =
        extend_flow_with_frame(parent, sq, &flow)?.expect("unblocked child flows always lift");
    let trace = ProofTrace {
        spec: child.clone(),
        representative: child.clone(),
        flow,
        step: Step::DirectSearch {
            reason: reason.into(),
        },
    };
    Ok((trace, lifted))
}
