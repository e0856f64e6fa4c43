use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ladder::{canonical_classes, LadderKind};

/// Largest minimum negative-edge count over the signatures of a shape.
pub fn expected_max_negatives(kind: LadderKind, n: usize) -> usize {
    match kind {
        LadderKind::Circular => n / 2 + 1,
        LadderKind::Moebius => n.div_ceil(2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub kind: LadderKind,
    pub n: usize,
    pub max_negatives: usize,
    pub expected: usize,
    pub holds: bool,
    /// Canonical signs of a class reaching the maximum.
    pub witness: String,
    pub classes_at_max: usize,
}

/// Compares the largest canonical negative-edge count with the formula.
pub fn verify_bounds(kind: LadderKind, n: usize) -> Result<BoundsReport> {
    let classes = canonical_classes(kind, n)?;
    let max = classes.iter().map(|c| c.min_negatives).max().unwrap_or(0);
    let at_max: Vec<_> = classes.iter().filter(|c| c.min_negatives == max).collect();
    let expected = expected_max_negatives(kind, n);
    Ok(BoundsReport {
        kind,
        n,
        max_negatives: max,
        expected,
        holds: max == expected,
        witness: at_max[0].spec.sign_string(),
        classes_at_max: at_max.len(),
    })
}

/// Negative-edge maxima for four consecutive rungs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubladderReport {
    /// Four rungs inside a longer ladder: the four rails leaving the window
    /// end at vertices outside it, which are not switched.
    pub window_max: usize,
    /// Switching classes of the window reaching `window_max`.
    pub window_classes_at_max: usize,
    /// The same, identified under left-right reflection and rail swap.
    pub window_cases_at_max: usize,
    /// The 4-rung ladder on its own (no outside edges).
    pub open_max: usize,
    /// Number of open-ladder signatures by minimum negative count.
    pub open_distribution: Vec<usize>,
}

/// Edges of a 4-rung strip: rungs, top rails, bottom rails, then the
/// optional boundary rails. Vertices `0..4` top, `4..8` bottom, `8..12`
/// outside (left top, left bottom, right top, right bottom).
fn strip_edges(boundary: bool) -> Vec<(usize, usize)> {
    let mut e: Vec<(usize, usize)> = (0..4).map(|i| (i, 4 + i)).collect();
    e.extend((0..3).map(|i| (i, i + 1)));
    e.extend((0..3).map(|i| (4 + i, 5 + i)));
    if boundary {
        e.extend([(8, 0), (9, 4), (3, 10), (7, 11)]);
    }
    e
}

fn cut_masks(edges: &[(usize, usize)]) -> Vec<u32> {
    (0u32..256)
        .map(|x| {
            edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| {
                    let ia = a < 8 && x >> a & 1 == 1;
                    let ib = b < 8 && x >> b & 1 == 1;
                    ia != ib
                })
                .fold(0, |m, (i, _)| m | 1 << i)
        })
        .collect()
}

fn min_negatives(mask: u32, cuts: &[u32]) -> usize {
    cuts.iter()
        .map(|c| (mask ^ c).count_ones() as usize)
        .min()
        .unwrap()
}

fn class_rep(mask: u32, cuts: &[u32]) -> u32 {
    cuts.iter().map(|c| mask ^ c).min().unwrap()
}

/// Image of a vertex under reflection and/or rail swap.
fn sym_vertex(v: usize, reflect: bool, swap: bool) -> usize {
    if v < 8 {
        let (row, col) = (v / 4, v % 4);
        let col = if reflect { 3 - col } else { col };
        let row = if swap { 1 - row } else { row };
        row * 4 + col
    } else {
        let (side, row) = ((v - 8) / 2, (v - 8) % 2);
        let side = if reflect { 1 - side } else { side };
        let row = if swap { 1 - row } else { row };
        8 + side * 2 + row
    }
}

fn sym_mask(mask: u32, edges: &[(usize, usize)], reflect: bool, swap: bool) -> u32 {
    let mut out = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if mask >> i & 1 == 1 {
            let (a2, b2) = (sym_vertex(a, reflect, swap), sym_vertex(b, reflect, swap));
            let j = edges
                .iter()
                .position(|&(x, y)| (x, y) == (a2, b2) || (x, y) == (b2, a2))
                .expect("symmetry maps edges to edges");
            out |= 1 << j;
        }
    }
    out
}

pub fn subladder_bounds() -> SubladderReport {
    let window = strip_edges(true);
    let wcuts = cut_masks(&window);
    let window_max = (0u32..1 << window.len())
        .map(|m| min_negatives(m, &wcuts))
        .max()
        .unwrap();
    let at_max: BTreeSet<u32> = (0u32..1 << window.len())
        .filter(|&m| min_negatives(m, &wcuts) == window_max)
        .map(|m| class_rep(m, &wcuts))
        .collect();
    let cases: BTreeSet<u32> = at_max
        .iter()
        .map(|&m| {
            [(false, false), (true, false), (false, true), (true, true)]
                .iter()
                .map(|&(r, s)| class_rep(sym_mask(m, &window, r, s), &wcuts))
                .min()
                .unwrap()
        })
        .collect();

    let open = strip_edges(false);
    let ocuts = cut_masks(&open);
    let mut open_distribution = Vec::new();
    for m in 0u32..1 << open.len() {
        let k = min_negatives(m, &ocuts);
        if open_distribution.len() <= k {
            open_distribution.resize(k + 1, 0);
        }
        open_distribution[k] += 1;
    }
    SubladderReport {
        window_max,
        window_classes_at_max: at_max.len(),
        window_cases_at_max: cases.len(),
        open_max: open_distribution.len() - 1,
        open_distribution,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        assert_eq!(
            verify_bounds(LadderKind::Circular, 6)
                .unwrap()
                .max_negatives,
            4
        );
        assert_eq!(
            verify_bounds(LadderKind::Moebius, 5).unwrap().max_negatives,
            3
        );
        assert_eq!(expected_max_negatives(LadderKind::Circular, 7), 4);
        for n in 3..=7 {
            assert!(
                verify_bounds(LadderKind::Circular, n).unwrap().holds,
                "CL_{n}"
            );
            assert!(
                verify_bounds(LadderKind::Moebius, n).unwrap().holds,
                "ML_{n}"
            );
        }
    }

    #[test]
    fn subladder_maxima() {
        let r = subladder_bounds();
        assert_eq!(r.window_max, 3);
        assert_eq!(r.open_max, 2);
        assert_eq!(r.open_distribution, vec![128, 640, 256]);
        assert!(r.window_cases_at_max <= r.window_classes_at_max);
    }
}
