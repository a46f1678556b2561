//! Acceptance checks: one line per criterion, exit status non-zero if any
//! criterion fails or exceeds its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tcyclic::bitset::mask_to_vec;
use tcyclic::constructions::{flower_type_report, inflate};
use tcyclic::cyclic::is_t_cyclic_ordering;
use tcyclic::families::{generate_kind, validate_family, wheel, wheel_graph};
use tcyclic::harness::{
    inject_fault, lambda_forms_disagreement, lemma4_claims, run_on, search_catalog, small_catalog, Instance, Suite,
};
use tcyclic::{construct, FamilyKind, MatroidRepr, Parity, VerificationReport};

type Outcome = Result<String, String>;
/// Name, check, and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn family_instances(kinds: &[FamilyKind], ranks: std::ops::RangeInclusive<usize>) -> Vec<Instance> {
    kinds
        .iter()
        .flat_map(|&k| {
            ranks
                .clone()
                .filter(move |&r| r >= k.min_rank())
                .map(move |r| Instance::from_bundle(generate_kind(k, r).expect("family generates")))
        })
        .collect()
}

fn summary(report: &VerificationReport) -> Outcome {
    if report.all_passed() {
        Ok(format!("{} claims", report.instances_run))
    } else {
        let f = &report.failures[0];
        Err(format!(
            "{} of {} claims fail; first {} {} {:?} {}",
            report.failures.len(),
            report.instances_run,
            f.instance,
            f.claim,
            f.witness,
            f.detail
        ))
    }
}

fn family_validity() -> Outcome {
    let mut report = VerificationReport::new("families");
    for r in 3..=6 {
        for kind in FamilyKind::CYCLIC {
            let b = generate_kind(kind, r).map_err(|e| e.to_string())?;
            report.absorb(validate_family(&b));
            if matches!(kind, FamilyKind::Wheel | FamilyKind::Whirl) {
                let check = is_t_cyclic_ordering(&b.matroid, &b.ordering, 3).map_err(|e| e.to_string())?;
                if check.parity == Some(Parity::Odd) {
                    report.pass(b.label(), "3-cyclic-odd");
                } else {
                    report.fail(b.label(), "3-cyclic-odd", vec![b.ordering.as_slice().to_vec()], "");
                }
            }
        }
    }
    summary(&report)
}

fn lemmas4() -> Outcome {
    let mut report = VerificationReport::new("lemmas4");
    for inst in family_instances(&FamilyKind::CYCLIC, 2..=7) {
        let sigma = inst.ordering.as_ref().unwrap();
        let check = is_t_cyclic_ordering(&inst.matroid, sigma, inst.t).map_err(|e| e.to_string())?;
        if !check.is_t_cyclic() {
            return Err(format!("{}: supplied ordering is not {}-cyclic", inst.id, inst.t));
        }
        lemma4_claims(&inst.id, &inst.matroid, inst.t, &mut report);
    }
    summary(&report)
}

fn theorem1() -> Outcome {
    let mut instances = family_instances(&[FamilyKind::Wheel, FamilyKind::Whirl], 4..=7);
    instances.extend(family_instances(&[FamilyKind::Spike, FamilyKind::Swirl], 7..=7));
    let report = run_on(Suite::Theorem1, &instances);
    let cases = report.checks.iter().filter(|c| c.claim == "theorem1-case").count();
    if cases != instances.len() {
        return Err(format!("{cases} of {} instances certified", instances.len()));
    }
    summary(&report)
}

fn theorem12() -> Outcome {
    let instances = family_instances(&[FamilyKind::Wheel, FamilyKind::Whirl], 4..=6);
    let report = run_on(Suite::OddFlower, &instances);
    for claim in ["theorem1.2-daisy", "theorem1.2-consecutive-sqcap", "theorem1.2-nonconsecutive-sqcap"] {
        let rows = report.checks.iter().filter(|c| c.claim == claim).count();
        if rows != instances.len() {
            return Err(format!("{claim}: {rows} of {} instances evaluated", instances.len()));
        }
    }
    summary(&report)
}

fn theorem13() -> Outcome {
    let instances = family_instances(&[FamilyKind::Spike, FamilyKind::Swirl], 4..=6);
    let report = run_on(Suite::EvenFlower, &instances);
    for claim in ["theorem1.3-flower", "theorem1.3-consecutive-sqcap", "flower-type", "pair-petal-sqcap13"] {
        let rows = report.checks.iter().filter(|c| c.claim == claim).count();
        if rows != instances.len() {
            return Err(format!("{claim}: {rows} of {} instances evaluated", instances.len()));
        }
    }
    summary(&report)
}

fn construction() -> Outcome {
    let mut report = VerificationReport::new("construction");
    let mut cases = vec![(FamilyKind::Wheel, 4), (FamilyKind::Whirl, 4)];
    for r in 5..=7 {
        cases.push((FamilyKind::Spike, r));
        cases.push((FamilyKind::Swirl, r));
    }
    for (kind, r) in cases {
        let b = generate_kind(kind, r).map_err(|e| e.to_string())?;
        let trace = inflate(&b.matroid, &b.ordering, b.t).map_err(|e| format!("{}: {e}", b.label()))?;
        let want = (b.t + 2, b.parity);
        if (trace.t_out, trace.parity) != want {
            return Err(format!("{}: got {:?}", b.label(), (trace.t_out, trace.parity)));
        }
        report.absorb(trace.report.clone());
        if trace.parity == Parity::Even {
            let flowers = flower_type_report(&trace);
            if flowers.instances_run == 0 {
                return Err(format!("{}: no even concatenations checked", b.label()));
            }
            report.absorb(flowers);
        }
    }
    summary(&report)
}

fn proposition() -> Outcome {
    let mut instances = family_instances(&FamilyKind::CYCLIC, 2..=7);
    instances.extend(search_catalog().map_err(|e| e.to_string())?);
    let report = run_on(Suite::Proposition, &instances);
    if !report.checks.iter().any(|c| c.claim == "prop4.1-search") {
        return Err("no search cases ran".into());
    }
    summary(&report)
}

fn oracles() -> Outcome {
    let (v, edges) = wheel_graph(3);
    let via_graph = construct(6, &MatroidRepr::Graph { vertices: v, edges }, "graph").map_err(|e| e.to_string())?;
    let bundle = wheel(3).map_err(|e| e.to_string())?;
    let circuits = bundle.matroid.circuit_masks().iter().map(|&c| mask_to_vec(c)).collect();
    let via_circuits = construct(6, &MatroidRepr::Circuits { circuits }, "circuits").map_err(|e| e.to_string())?;
    let bases = bundle.matroid.bases().iter().map(|&b| mask_to_vec(b)).collect();
    let via_bases = construct(6, &MatroidRepr::Bases { bases }, "bases").map_err(|e| e.to_string())?;
    for x in 0..64u32 {
        let ranks = [via_graph.rank_mask(x), via_circuits.rank_mask(x), via_bases.rank_mask(x)];
        if ranks.iter().any(|&r| r != ranks[0]) {
            return Err(format!("rank differs on {:?}: {ranks:?}", mask_to_vec(x)));
        }
    }
    let catalog = small_catalog().map_err(|e| e.to_string())?;
    for inst in &catalog {
        if let Some(x) = lambda_forms_disagreement(&inst.matroid) {
            return Err(format!("{}: λ forms differ on {:?}", inst.id, mask_to_vec(x)));
        }
    }
    Ok(format!("64 subsets x 3 routes; λ on {} matroids", catalog.len()))
}

fn fault_injection() -> Outcome {
    let inst = Instance::from_bundle(generate_kind(FamilyKind::Spike, 4).map_err(|e| e.to_string())?);
    let bad = inject_fault(&inst).map_err(|e| e.to_string())?;
    let report = run_on(Suite::Basics, &[bad]);
    match report.failures.iter().find(|f| !f.witness.is_empty()) {
        Some(f) => Ok(format!("caught by {} with witness {:?}", f.claim, f.witness)),
        None => Err(format!("{} failures, none with a witness", report.failures.len())),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("family validity", family_validity, 10),
        ("size and rank of t-cyclic matroids", lemmas4, 1),
        ("window structure", theorem1, 60),
        ("odd concatenations are daisies", theorem12, 30),
        ("even concatenations: flowers, anemone/daisy split", theorem13, 30),
        ("inflation", construction, 60),
        ("t-cyclic iff cyclic property", proposition, 120),
        ("oracle equivalence", oracles, 10),
        ("fault injection", fault_injection, 5),
    ];
    let mut all_ok = true;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let ok = outcome.is_ok() && in_time;
        all_ok &= ok;
        let detail = match &outcome {
            Ok(d) => d.clone(),
            Err(e) => e.clone(),
        };
        println!(
            "criterion {}: {} — {} ({:.2} s, limit {} s{}) {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            name,
            elapsed.as_secs_f64(),
            limit,
            if in_time { "" } else { ", over budget" },
            detail
        );
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
