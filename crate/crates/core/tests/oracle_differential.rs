mod common;

use common::{is_nz_flow, slow_flow_number, slow_has_flow};
use ladderflow::ladder::{cl4_exception, LadderKind, LadderSpec};
use ladderflow::solver::{find_nzflow, flow_number, FlowNumber};
use ladderflow::Sign;
use rayon::prelude::*;

#[test]
fn every_cl4_signature_matches_the_slow_checker() {
    let base = LadderSpec::uniform(LadderKind::Circular, 4, Sign::Pos).unwrap();
    let mismatches: Vec<(u32, i32)> = (0u32..1 << 12)
        .into_par_iter()
        .flat_map_iter(|mask| {
            let signs: Vec<Sign> = (0..12)
                .map(|e| Sign::from_neg(mask >> e & 1 == 1))
                .collect();
            let g = LadderSpec::from_signs(base.kind, 4, &signs)
                .unwrap()
                .build();
            (2..=6)
                .filter(move |&k| {
                    let fast = find_nzflow(&g, k).unwrap();
                    if let Some(f) = &fast {
                        assert!(is_nz_flow(&g, &f.values, k), "mask {mask:#x} k {k}");
                    }
                    fast.is_some() != slow_has_flow(&g, k)
                })
                .map(move |k| (mask, k))
                .collect::<Vec<_>>()
        })
        .collect();
    assert!(mismatches.is_empty(), "{mismatches:?}");
}

#[test]
fn cl4_exception_flow_number_is_six() {
    let g = cl4_exception().spec.build();
    assert_eq!(slow_flow_number(&g, 8), Some(6));
    assert_eq!(flow_number(&g, 8).unwrap().value(), Some(6));
    assert!(find_nzflow(&g, 5).unwrap().is_none());
}

#[test]
fn small_flow_numbers() {
    let balanced5 = LadderSpec::uniform(LadderKind::Circular, 5, Sign::Pos)
        .unwrap()
        .build();
    assert_eq!(slow_flow_number(&balanced5, 8), Some(4));
    assert_eq!(flow_number(&balanced5, 8).unwrap().value(), Some(4));

    let mut one_neg = LadderSpec::uniform(LadderKind::Circular, 5, Sign::Pos).unwrap();
    one_neg.set_sign(7, Sign::Neg);
    let g = one_neg.build();
    assert!(!slow_has_flow(&g, 6));
    assert!(find_nzflow(&g, 6).unwrap().is_none());
    assert_eq!(flow_number(&g, 8).unwrap(), FlowNumber::NotAdmissible);
}

#[test]
fn monotone_in_k_on_ml4() {
    for mask in (0u32..1 << 12).step_by(7) {
        let signs: Vec<Sign> = (0..12)
            .map(|e| Sign::from_neg(mask >> e & 1 == 1))
            .collect();
        let g = LadderSpec::from_signs(LadderKind::Moebius, 4, &signs)
            .unwrap()
            .build();
        let found: Vec<bool> = (2..=7)
            .map(|k| find_nzflow(&g, k).unwrap().is_some())
            .collect();
        assert!(
            found.windows(2).all(|w| !w[0] || w[1]),
            "mask {mask:#x}: {found:?}"
        );
    }
}
