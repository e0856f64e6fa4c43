//! Acceptance gate: one line per criterion, non-zero exit if any fails.

mod common;

use std::ops::ControlFlow;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::is_nz_flow;
use ladderflow::enumerate::{
    class_count_checks, enumerate_classes, subladder_bounds, verify_bounds, ClassRecord, Engines,
};
use ladderflow::ladder::{
    canonical_classes, constructive_5flow, contract_square, dp_has_nzflow, extend_flow,
    ladder_min_negatives, LadderKind, LadderSpec, ProverOutcome, SquareRef,
};
use ladderflow::signed::switch;
use ladderflow::solver::{
    all_one_factorizations, balanced_two_factors, find_nzflow, flow_from_balanced_2factors,
    flow_number, for_each_nzflow, Flow,
};
use ladderflow::{Sign, SwitchingSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: ladderflow::Error) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let recs = enumerate_classes(LadderKind::Circular, 4, Some(3), Engines::NONE).map_err(err)?;
    ensure(recs.len() == 1, || {
        format!("{} three-negative classes", recs.len())
    })?;
    let spec = recs[0].spec();
    let g = spec.build();
    ensure(find_nzflow(&g, 5).map_err(err)?.is_none(), || {
        "oracle found a 5-flow".into()
    })?;
    let six = find_nzflow(&g, 6)
        .map_err(err)?
        .ok_or("oracle found no 6-flow")?;
    ensure(is_nz_flow(&g, &six.values, 6), || {
        "oracle 6-flow does not verify".into()
    })?;
    ensure(
        !dp_has_nzflow(&spec, 5).map_err(err)? && dp_has_nzflow(&spec, 6).map_err(err)?,
        || "transfer sweep disagrees".into(),
    )?;
    match constructive_5flow(&spec).map_err(err)? {
        ProverOutcome::Flow { flow, .. } if flow.k == 6 && is_nz_flow(&g, &flow.values, 6) => {}
        other => return Err(format!("prover returned {:?}", other.k())),
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {}", secs(t)))?;
    Ok(format!(
        "{} has flow number 6 on all engines ({})",
        spec.sign_string(),
        secs(t)
    ))
}

fn check_admissible_at_most_five(recs: &[ClassRecord], exact: bool) -> Result<usize, String> {
    let mut count = 0;
    for r in recs.iter().filter(|r| r.admissible) {
        let label = format!("{} {}", r.spec().label(), r.signs);
        let k = r
            .prover_k
            .ok_or_else(|| format!("{label}: prover found nothing"))?;
        ensure(k <= 5, || format!("{label}: prover k = {k}"))?;
        ensure(r.flow_number_dp.is_some_and(|d| d <= 5), || {
            format!("{label}: no 5-flow by DP")
        })?;
        if exact {
            ensure(r.flow_number_oracle.is_some_and(|o| o <= 5), || {
                format!("{label}: no 5-flow by the oracle")
            })?;
        }
        count += 1;
    }
    Ok(count)
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let start = Instant::now();
    let mut classes = 0;
    let small = [
        (LadderKind::Circular, 5),
        (LadderKind::Circular, 6),
        (LadderKind::Moebius, 4),
        (LadderKind::Moebius, 5),
        (LadderKind::Moebius, 6),
    ];
    for (kind, n) in small {
        let recs = enumerate_classes(kind, n, None, Engines::ALL).map_err(err)?;
        classes += check_admissible_at_most_five(&recs, true)?;
    }
    let small_time = start.elapsed();
    ensure(small_time < Duration::from_secs(600), || {
        format!("full sweep n <= 6 took {}", secs(small_time))
    })?;

    let engines = Engines {
        oracle: false,
        dp: true,
        prover: true,
    };
    let mut large = Vec::new();
    for kind in [LadderKind::Circular, LadderKind::Moebius] {
        for n in 7..=8 {
            let recs = enumerate_classes(kind, n, None, engines).map_err(err)?;
            classes += check_admissible_at_most_five(&recs, false)?;
            large.extend(recs.into_iter().filter(|r| r.admissible));
        }
    }
    let sample: Vec<_> = large.choose_multiple(&mut rng, 100).collect();
    for r in &sample {
        let g = r.spec().build();
        let f = find_nzflow(&g, 5).map_err(err)?;
        ensure(f.is_some_and(|f| is_nz_flow(&g, &f.values, 5)), || {
            format!("oracle found no 5-flow on {} {}", r.spec().label(), r.signs)
        })?;
    }
    Ok(format!(
        "{classes} admissible classes with verified k <= 5; n <= 6 swept by all engines in {}, {} oracle spot-checks at n = 7, 8",
        secs(small_time),
        sample.len()
    ))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for (kind, n) in [
        (LadderKind::Circular, 6),
        (LadderKind::Circular, 8),
        (LadderKind::Moebius, 5),
        (LadderKind::Moebius, 7),
    ] {
        for c in canonical_classes(kind, n).map_err(err)? {
            let g = c.spec.build();
            if c.min_negatives != 2 || !g.is_bipartite() {
                continue;
            }
            let k = flow_number(&g, 8).map_err(err)?.value();
            ensure(k.is_some_and(|k| k <= 4), || {
                format!("{} has flow number {k:?}", c.spec)
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} bipartite two-negative classes have flow number <= 4"
    ))
}

fn criterion_4() -> Outcome {
    let (mut classes, mut factorizations) = (0, 0);
    for (kind, n) in common::shapes(8) {
        for c in canonical_classes(kind, n).map_err(err)? {
            let g = c.spec.build();
            if !g.is_bipartite() {
                continue;
            }
            let mut any = false;
            for fac in all_one_factorizations(&g).map_err(err)? {
                if balanced_two_factors(&g, &fac).map_err(err)?.len() < 2 {
                    continue;
                }
                let f = flow_from_balanced_2factors(&g, &fac)
                    .map_err(err)?
                    .ok_or_else(|| format!("{}: construction returned none", c.spec))?;
                ensure(
                    f.k == 4
                        && f.values.iter().all(|v| (1..=3).contains(&v.abs()))
                        && is_nz_flow(&g, &f.values, 4),
                    || format!("{}: bad 4-flow {:?}", c.spec, f.values),
                )?;
                factorizations += 1;
                any = true;
            }
            classes += any as usize;
        }
    }
    Ok(format!(
        "{factorizations} factorizations over {classes} bipartite classes gave verified 4-flows"
    ))
}

fn criterion_5() -> Outcome {
    let mut shapes = 0;
    for kind in [LadderKind::Circular, LadderKind::Moebius] {
        for n in 3..=8 {
            let r = verify_bounds(kind, n).map_err(err)?;
            ensure(r.holds, || {
                format!(
                    "{}_{n}: max {} but expected {} (witness {})",
                    kind.short_name(),
                    r.max_negatives,
                    r.expected,
                    r.witness
                )
            })?;
            shapes += 1;
        }
    }
    let sub = subladder_bounds();
    ensure(sub.window_max == 3, || {
        format!("4-rung window max {}", sub.window_max)
    })?;
    Ok(format!(
        "bounds hold on {shapes} shapes; 4-rung window max 3 ({} classes, {} up to symmetry); detached 4-rung ladder max {}",
        sub.window_classes_at_max, sub.window_cases_at_max, sub.open_max
    ))
}

fn criterion_6() -> Outcome {
    let mut hard = Vec::new();
    let mut soft = Vec::new();
    for (kind, n) in [
        (LadderKind::Circular, 4),
        (LadderKind::Moebius, 5),
        (LadderKind::Circular, 5),
        (LadderKind::Circular, 6),
        (LadderKind::Moebius, 4),
    ] {
        let recs = enumerate_classes(kind, n, None, Engines::NONE).map_err(err)?;
        for c in class_count_checks(kind, n, &recs) {
            let line = format!("{} = {} (expected {})", c.description, c.actual, c.expected);
            if c.hard {
                ensure(c.holds(), || line.clone())?;
                hard.push(line);
            } else if !c.holds() {
                soft.push(line);
            }
        }
    }
    let findings = if soft.is_empty() {
        "none".to_string()
    } else {
        soft.join("; ")
    };
    Ok(format!("{}; soft findings: {findings}", hard.join("; ")))
}

fn random_child_flow(rng: &mut ChaCha8Rng, child: &LadderSpec) -> Result<Option<Flow>, String> {
    let mut flows = Vec::new();
    for_each_nzflow(&child.build(), 5, |v| {
        flows.push(v.to_vec());
        if flows.len() >= 4000 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .map_err(err)?;
    Ok(flows.choose(rng).map(|v| Flow::new(5, v.clone())))
}

fn random_spec(rng: &mut ChaCha8Rng, n_range: std::ops::RangeInclusive<usize>) -> LadderSpec {
    let kind = if rng.gen_bool(0.5) {
        LadderKind::Circular
    } else {
        LadderKind::Moebius
    };
    let n = rng.gen_range(n_range);
    common::random_spec(rng, kind, n)
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut decisions = 0;
    for (kind, n) in common::shapes(7) {
        for c in canonical_classes(kind, n).map_err(err)? {
            let g = c.spec.build();
            for k in 2..=6 {
                let dp = dp_has_nzflow(&c.spec, k).map_err(err)?;
                let oracle = find_nzflow(&g, k).map_err(err)?.is_some();
                ensure(dp == oracle, || {
                    format!("{} k = {k}: dp {dp}, oracle {oracle}", c.spec)
                })?;
                decisions += 1;
            }
        }
    }

    let (mut lifted, mut blocked) = (0, 0);
    while lifted + blocked < 1000 {
        let mut spec = random_spec(&mut rng, 5..=8);
        let sq = SquareRef::new(rng.gen_range(0..spec.n - 3));
        for e in sq.edges(&spec) {
            spec.set_sign(e, Sign::Pos);
        }
        let child = contract_square(&spec, sq).map_err(err)?;
        let Some(cf) = random_child_flow(&mut rng, &child)? else {
            continue;
        };
        match extend_flow(&spec, sq, &cf).map_err(err)? {
            Some(f) => {
                ensure(is_nz_flow(&spec.build(), &f.values, 5), || {
                    format!("{spec} square {}: lifted flow fails", sq.index)
                })?;
                lifted += 1;
            }
            None => blocked += 1,
        }
    }

    for _ in 0..1000 {
        let spec = random_spec(&mut rng, 3..=6);
        let g = spec.build();
        let x = SwitchingSet::new((0..g.vertex_count()).filter(|_| rng.gen_bool(0.5)));
        let h = switch(&g, &x).map_err(err)?;
        let (a, b) = (
            flow_number(&g, 8).map_err(err)?,
            flow_number(&h, 8).map_err(err)?,
        );
        ensure(a.value() == b.value(), || {
            format!("{spec} switched at {x:?}: {a:?} vs {b:?}")
        })?;
    }
    Ok(format!(
        "{decisions} class decisions agree; 1000 triples ({lifted} lifted and verified, {blocked} blocked); 1000 switchings keep the flow number"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut times = Vec::new();
    for kind in [LadderKind::Circular, LadderKind::Moebius] {
        let spec = loop {
            let s = common::random_spec(&mut rng, kind, 1000);
            let canon = ladder_min_negatives(&s);
            if canon.min_negatives != 1 {
                break s.with_graph_signs(&canon.representative).map_err(err)?;
            }
        };
        let start = Instant::now();
        let found = dp_has_nzflow(&spec, 5).map_err(err)?;
        let t = start.elapsed();
        ensure(found, || format!("{} has no 5-flow", spec.label()))?;
        ensure(t < Duration::from_secs(1), || {
            format!("{} took {}", spec.label(), secs(t))
        })?;
        times.push(format!(
            "{} ({} negatives) {}",
            spec.label(),
            spec.negatives(),
            secs(t)
        ));
    }
    Ok(format!(
        "{}; evidence beyond the constructive range, not a proof",
        times.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("CL_4 exception", criterion_1),
        ("5-flows for all admissible ladders", criterion_2),
        ("bipartite two-negative ladders", criterion_3),
        ("balanced 2-factor construction", criterion_4),
        ("negative-edge bounds", criterion_5),
        ("stated class counts", criterion_6),
        ("engine equivalence", criterion_7),
        ("transfer sweep scalability", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
