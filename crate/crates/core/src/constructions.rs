//! Free extension, truncation, free coextension, Higgs lift, and inflation.
//!
//! Inflation takes a `t`-cyclic matroid to a `(t+2)`-cyclic matroid on the
//! same ground set: truncate, then Higgs-lift. It re-verifies its own
//! conclusions and records them in the trace rather than assuming them.

use serde::Serialize;

use crate::bitset::{bits, k_subsets, mask_to_vec, popcount};
use crate::connectivity::{classify, concatenations, ConcatenationFilter, FlowerVerdict};
use crate::cyclic::{is_t_cyclic_ordering, CyclicOrdering, Parity};
use crate::error::{Error, Result, MAX_ELEMENTS};
use crate::matroid::Matroid;
use crate::report::VerificationReport;

/// Adds a free element labelled `n`.
pub fn free_extension(m: &Matroid) -> Result<Matroid> {
    let n = m.n();
    if n + 1 > MAX_ELEMENTS {
        return Err(Error::SizeCap {
            n: n + 1,
            cap: MAX_ELEMENTS,
        });
    }
    let r = m.rank();
    if r == 0 {
        return Err(Error::Precondition("free extension of a rank-0 matroid".into()));
    }
    let f = 1u32 << n;
    let mut bases = m.bases().to_vec();
    bases.extend(
        k_subsets(n, r - 1)
            .filter(|&j| m.is_independent_mask(j))
            .map(|j| j | f),
    );
    Matroid::from_basis_masks(n + 1, bases, format!("freeext({})", m.label()))
}

/// Bases are the independent `(r-1)`-sets. Also computed as the contraction
/// of the free point from the free extension; the routes must agree.
pub fn truncation(m: &Matroid) -> Result<Matroid> {
    let r = m.rank();
    if r == 0 {
        return Err(Error::Precondition("truncation of a rank-0 matroid".into()));
    }
    let n = m.n();
    let label = format!("trunc({})", m.label());
    let bases: Vec<u32> = k_subsets(n, r - 1).filter(|&b| m.is_independent_mask(b)).collect();
    let direct = Matroid::from_basis_masks(n, bases, label.clone())?;
    let extended = free_extension(m)?;
    let routed = extended.minor_masks(0, 1 << n).matroid;
    if routed.bases() != direct.bases() {
        let witness = direct
            .bases()
            .iter()
            .find(|b| !routed.bases().contains(b))
            .or_else(|| routed.bases().iter().find(|b| !direct.bases().contains(b)))
            .copied()
            .unwrap_or(0);
        return Err(Error::RouteMismatch(format!(
            "truncation of {}: routes differ at {:?}",
            m.label(),
            mask_to_vec(witness)
        )));
    }
    Ok(direct)
}

/// `dual(free_extension(dual(M)))`; the new element is labelled `n`.
pub fn free_coextension(m: &Matroid) -> Result<Matroid> {
    if m.corank() == 0 {
        return Err(Error::Precondition("free coextension of a corank-0 matroid".into()));
    }
    Ok(free_extension(&m.dual())?
        .dual()
        .with_label(format!("freecoext({})", m.label())))
}

/// `dual(truncation(dual(M)))`; raises the rank by one.
pub fn higgs_lift(m: &Matroid) -> Result<Matroid> {
    if m.corank() == 0 {
        return Err(Error::Precondition("Higgs lift of a corank-0 matroid".into()));
    }
    Ok(truncation(&m.dual())?
        .dual()
        .with_label(format!("lift({})", m.label())))
}

/// A `(t+2)`-window checked after merging two `t`-windows at offset 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MergedWindow {
    /// 0-based start position.
    pub position: usize,
    pub window: Vec<usize>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InflationTrace {
    #[serde(skip)]
    pub input: Matroid,
    #[serde(skip)]
    pub after_truncation: Matroid,
    #[serde(skip)]
    pub output: Matroid,
    pub input_label: String,
    pub output_label: String,
    pub t_in: usize,
    pub t_out: usize,
    pub parity: Parity,
    /// Anchor of the paper-odd windows in the input.
    pub anchor: usize,
    pub ordering: Vec<usize>,
    /// Where two `t`-cocircuits of the input sit at offset 2: their union
    /// window must be a cocircuit of the truncation.
    pub merged_cocircuit_witnesses: Vec<MergedWindow>,
    /// Where two `t`-circuits of the input sit at offset 2: their union
    /// window must be a circuit of the output.
    pub merged_circuit_witnesses: Vec<MergedWindow>,
    pub report: VerificationReport,
}

impl InflationTrace {
    pub fn verified(&self) -> bool {
        self.report.all_passed()
    }
}

/// Minimum ground-set size for inflating a `t`-cyclic matroid.
pub fn inflation_min_size(t: usize) -> usize {
    2 * t + 2
}

/// Truncation followed by Higgs lift, with the ordering re-verified as a
/// `(t+2)`-cyclic ordering of the result.
pub fn inflate(m: &Matroid, sigma: &CyclicOrdering, t: usize) -> Result<InflationTrace> {
    let check = is_t_cyclic_ordering(m, sigma, t)?;
    let (parity, anchor) = match (check.parity, check.anchor) {
        (Some(p), Some(a)) => (p, a),
        _ => {
            return Err(Error::Precondition(format!(
                "ordering is not {t}-cyclic: {}",
                check.reason.unwrap_or_default()
            )))
        }
    };
    let n = m.n();
    if n < inflation_min_size(t) {
        return Err(Error::Precondition(format!(
            "n = {n} < {} required to inflate a {t}-cyclic matroid",
            inflation_min_size(t)
        )));
    }
    let start = std::time::Instant::now();
    let truncated = truncation(m)?;
    let output = higgs_lift(&truncated)?.with_label(format!("inflate({})", m.label()));
    let inst = output.label().to_string();
    let mut report = VerificationReport::new("inflate");

    let merged = |is_t: &dyn Fn(u32) -> bool, is_big: &dyn Fn(u32) -> bool| {
        (0..n)
            .filter(|&p| is_t(sigma.window_mask(p, t)) && is_t(sigma.window_mask(p + 2, t)))
            .map(|p| {
                let w = sigma.window_mask(p, t + 2);
                MergedWindow {
                    position: p,
                    window: mask_to_vec(w),
                    holds: is_big(w),
                }
            })
            .collect::<Vec<_>>()
    };
    let t_cocircuit = |w: u32| popcount(w) == t && m.is_cocircuit_mask(w);
    let t_circuit = |w: u32| popcount(w) == t && m.is_circuit_mask(w);
    let merged_cocircuits = merged(&t_cocircuit, &|w| truncated.is_cocircuit_mask(w));
    let merged_circuits = merged(&t_circuit, &|w| output.is_circuit_mask(w));
    for (claim, list) in [
        ("merged-cocircuit-in-truncation", &merged_cocircuits),
        ("merged-circuit-in-lift", &merged_circuits),
    ] {
        match list.iter().find(|w| !w.holds) {
            None => report.pass(&inst, claim),
            Some(w) => report.fail(&inst, claim, vec![w.window.clone()], format!("position {}", w.position + 1)),
        }
    }

    if output.rank() == m.rank() && truncated.rank() + 1 == m.rank() {
        report.pass(&inst, "rank-restored");
    } else {
        report.fail(
            &inst,
            "rank-restored",
            vec![],
            format!("ranks {} -> {} -> {}", m.rank(), truncated.rank(), output.rank()),
        );
    }

    let out_check = is_t_cyclic_ordering(&output, sigma, t + 2)?;
    let claim = format!("ordering-{}-cyclic-{}", t + 2, parity.as_str());
    let parity_ok = out_check.parity == Some(parity) || (out_check.both_clauses && out_check.parity.is_some());
    if parity_ok {
        report.pass(&inst, &claim);
    } else {
        report.fail(
            &inst,
            &claim,
            vec![sigma.as_slice().to_vec()],
            out_check
                .reason
                .unwrap_or_else(|| format!("parity {:?}", out_check.parity)),
        );
    }

    if parity == Parity::Even {
        rank_increase_claims(m, &output, sigma, t, anchor, &inst, &mut report);
    }

    report.wall_time_us = start.elapsed().as_micros() as u64;
    Ok(InflationTrace {
        input_label: m.label().to_string(),
        output_label: output.label().to_string(),
        input: m.clone(),
        after_truncation: truncated,
        output,
        t_in: t,
        t_out: t + 2,
        parity,
        anchor,
        ordering: sigma.as_slice().to_vec(),
        merged_cocircuit_witnesses: merged_cocircuits,
        merged_circuit_witnesses: merged_circuits,
        report,
    })
}

/// Even concatenations with every petal of size at least `min_size`,
/// starting at paper-odd positions for `anchor`, with at most 8 petals.
pub fn even_concatenation_filter(min_size: usize, anchor: usize) -> ConcatenationFilter {
    ConcatenationFilter {
        min_size,
        max_petals: 8,
        even_sizes: true,
        start_parity: Some(anchor % 2),
    }
}

/// `r_N(P) = r_M(P) + 1` for every petal and (with four or more petals)
/// every union of two petals, over even concatenations with petals of size
/// at least `t`.
fn rank_increase_claims(
    m: &Matroid,
    output: &Matroid,
    sigma: &CyclicOrdering,
    t: usize,
    anchor: usize,
    inst: &str,
    report: &mut VerificationReport,
) {
    let mut failure = None;
    'outer: for c in concatenations(m.n(), even_concatenation_filter(t, anchor)) {
        let petals = c.petal_masks(sigma);
        if petals.len() < 2 {
            continue;
        }
        let mut sets: Vec<u32> = petals.clone();
        if petals.len() >= 4 {
            for i in 0..petals.len() {
                for j in i + 1..petals.len() {
                    sets.push(petals[i] | petals[j]);
                }
            }
        }
        for x in sets {
            if output.rank_mask(x) != m.rank_mask(x) + 1 {
                failure = Some((x, m.rank_mask(x), output.rank_mask(x)));
                break 'outer;
            }
        }
    }
    match failure {
        None => report.pass(inst, "petal-rank-increase"),
        Some((x, before, after)) => report.fail(
            inst,
            "petal-rank-increase",
            vec![mask_to_vec(x)],
            format!("rank {before} -> {after}"),
        ),
    }
}

/// Inflates `iterations` times, stopping with an error when a size
/// precondition fails.
pub fn inflate_iterated(
    m: &Matroid,
    sigma: &CyclicOrdering,
    t: usize,
    iterations: usize,
) -> Result<Vec<InflationTrace>> {
    let mut traces: Vec<InflationTrace> = Vec::with_capacity(iterations);
    let mut current = m.clone();
    let mut t = t;
    for _ in 0..iterations {
        let trace = inflate(&current, sigma, t)?;
        current = trace.output.clone();
        t = trace.t_out;
        traces.push(trace);
    }
    Ok(traces)
}

/// For an even-parity trace: every even concatenation with petals of size
/// at least `t` and `m >= 2` classifies the same way as a `(t-1)`-flower of
/// the input and a `(t+1)`-flower of the output, and is a flower in both.
/// Anemone/daisy content needs `m >= 4`, hence `n >= 4t`.
pub fn flower_type_report(trace: &InflationTrace) -> VerificationReport {
    let mut report = VerificationReport::new("flower-type");
    let inst = trace.output_label.as_str();
    let sigma = CyclicOrdering::new(trace.ordering.clone()).expect("trace ordering is a permutation");
    let t = trace.t_in;
    for c in concatenations(trace.input.n(), even_concatenation_filter(t, trace.anchor)) {
        if c.m() < 2 {
            continue;
        }
        let flower = c.flower(&sigma);
        let claim = format!("flower-type-preserved@{:?}", c.sizes(trace.input.n()));
        let before = classify(&trace.input, &flower, t - 1);
        let after = classify(&trace.output, &flower, t + 1);
        match (before, after) {
            (Ok(b), Ok(a))
                if b.verdict == a.verdict
                    && b.verdict != FlowerVerdict::NotAFlower =>
            {
                report.pass(inst, &claim)
            }
            (b, a) => {
                let describe = |x: &Result<crate::connectivity::FlowerClass>| match x {
                    Ok(class) => format!("{:?}", class.verdict),
                    Err(e) => e.to_string(),
                };
                report.fail(
                    inst,
                    &claim,
                    flower.petal_masks().iter().map(|&p| mask_to_vec(p)).collect(),
                    format!("before {}, after {}", describe(&b), describe(&a)),
                );
            }
        }
    }
    report
}

/// Rank oracle for truncation followed by Higgs lift:
/// `min(|X|, min(r(X), r-1) + 1)`.
pub fn inflated_rank(m: &Matroid, x: u32) -> usize {
    let r = m.rank();
    popcount(x).min(m.rank_mask(x).min(r.saturating_sub(1)) + 1)
}

/// Elements of `m` not contained in any circuit of size at most `k`.
pub fn elements_outside_small_circuits(m: &Matroid, k: usize) -> Vec<usize> {
    let covered = m
        .circuit_masks()
        .iter()
        .filter(|&&c| popcount(c) <= k)
        .fold(0u32, |acc, &c| acc | c);
    bits(m.ground_mask() & !covered).collect()
}
