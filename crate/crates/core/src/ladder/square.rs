//! Contracting a positive square out of a ladder and lifting flows back.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ladder::dp::{flow_values, slice_values, SliceValues};
use crate::ladder::spec::LadderSpec;
use crate::solver::{verify_flow, Flow};

/// The square `v_{i+1} v_{i+2} u_{i+2} u_{i+1}`, flanked by slices `i` and
/// `i + 3`. Only squares away from the closure are used, so
/// `i + 3 <= n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareRef {
    pub index: usize,
}

impl SquareRef {
    pub fn new(index: usize) -> Self {
        SquareRef { index }
    }

    /// Rungs `i+1`, `i+2` and the two rails between them.
    pub fn edges(&self, spec: &LadderSpec) -> [usize; 4] {
        spec.square_edges(self.index + 1)
    }

    /// The vertices of the square.
    pub fn vertices(&self, spec: &LadderSpec) -> [usize; 4] {
        let i = self.index;
        [spec.v(i + 1), spec.v(i + 2), spec.u(i + 1), spec.u(i + 2)]
    }

    fn check(&self, spec: &LadderSpec) -> Result<()> {
        if self.index + 3 >= spec.n {
            return Err(Error::InvalidSquare(format!(
                "square {} touches the closure of {}",
                self.index,
                spec.label()
            )));
        }
        if spec.n - 2 < spec.kind.min_rungs() {
            return Err(Error::InvalidSquare(format!(
                "contracting {} would leave {} rungs",
                spec.label(),
                spec.n - 2
            )));
        }
        Ok(())
    }

    /// Whether the square can be contracted in `spec`.
    pub fn is_contractible(&self, spec: &LadderSpec) -> bool {
        self.check(spec).is_ok() && self.edges(spec).iter().all(|&e| !spec.sign(e).is_neg())
    }
}

/// The smallest contractible positive square.
pub fn find_positive_square(spec: &LadderSpec) -> Option<SquareRef> {
    (0..spec.n.saturating_sub(3))
        .map(SquareRef::new)
        .find(|s| s.is_contractible(spec))
}

/// Removes the square's four vertices and joins `v_i v_{i+3}` and
/// `u_i u_{i+3}`, each signed by the product of the two rails it replaces.
pub fn contract_square(spec: &LadderSpec, s: SquareRef) -> Result<LadderSpec> {
    s.check(spec)?;
    if !s.is_contractible(spec) {
        return Err(Error::InvalidSquare(format!(
            "square {} of {spec} is not positive",
            s.index
        )));
    }
    let i = s.index;
    let keep = |v: &[_]| {
        let mut out: Vec<_> = v[..=i].to_vec();
        out.extend_from_slice(&v[i + 3..]);
        out
    };
    let mut top = keep(&spec.top);
    let mut bottom = keep(&spec.bottom);
    top[i] = spec.top[i] * spec.top[i + 2];
    bottom[i] = spec.bottom[i] * spec.bottom[i + 2];
    LadderSpec::new(spec.kind, spec.n - 2, keep(&spec.rungs), top, bottom)
}

/// Values around the contracted square while lifting a flow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFrame {
    /// Child flow on `v_i v_{i+3}`.
    pub c: i32,
    /// Child flow on `u_i u_{i+3}`.
    pub c_prime: i32,
    /// Lifting value sent down rung `i + 1` (and back up rung `i + 2`).
    pub x: i32,
    /// Flow on rung `i`.
    pub a: i32,
    /// Flow on the rails leaving `v_{i+3}` and `u_{i+3}`.
    pub b: i32,
    pub b_prime: i32,
}

/// Lifts a 5-flow on `contract_square(spec, s)` to `spec`. Returns `None`
/// when no lifting value works for this child flow.
pub fn extend_flow(spec: &LadderSpec, s: SquareRef, child_flow: &Flow) -> Result<Option<Flow>> {
    Ok(extend_flow_with_frame(spec, s, child_flow)?.map(|(f, _)| f))
}

pub fn extend_flow_with_frame(
    spec: &LadderSpec,
    s: SquareRef,
    child_flow: &Flow,
) -> Result<Option<(Flow, ExtensionFrame)>> {
    let child = contract_square(spec, s)?;
    if child_flow.k != 5 {
        return Err(Error::InvalidFlow(format!(
            "square extension lifts 5-flows, got k = {}",
            child_flow.k
        )));
    }
    if !verify_flow(&child.build(), child_flow)? {
        return Err(Error::InvalidFlow(format!(
            "child flow does not verify on {child}"
        )));
    }
    let i = s.index;
    let cs = slice_values(&child, &child_flow.values);
    // Inflows reaching v_{i+1} and u_{i+1}.
    let arrive_t = spec.top[i].value() * cs[i].qt;
    let arrive_b = spec.bottom[i].value() * cs[i].qb;
    let legal = |v: i32| v != 0 && v.abs() < 5;
    let Some(x) = [1, -1, 2, -2, 3, -3, 4, -4]
        .into_iter()
        .find(|&x| legal(arrive_t - x) && legal(arrive_b + x))
    else {
        return Ok(None);
    };
    let mut slices: Vec<SliceValues> = cs[..=i].to_vec();
    slices.push(SliceValues {
        r: x,
        qt: arrive_t - x,
        qb: arrive_b + x,
    });
    slices.push(SliceValues {
        r: -x,
        qt: arrive_t,
        qb: arrive_b,
    });
    slices.extend_from_slice(&cs[i + 1..]);
    let values = flow_values(spec, &slices);
    let flow = Flow::new(5, values);
    debug_assert!(verify_flow(&spec.build(), &flow).unwrap_or(false));
    let frame = ExtensionFrame {
        c: child_flow.values[child.top_rail(i)],
        c_prime: child_flow.values[child.bottom_rail(i)],
        x,
        a: flow.values[spec.rung(i)],
        b: flow.values[spec.top_rail(i + 3)],
        b_prime: flow.values[spec.bottom_rail(i + 3)],
    };
    Ok(Some((flow, frame)))
}
