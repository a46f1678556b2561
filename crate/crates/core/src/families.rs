//! Named families: uniform matroids, wheels, whirls, spikes and swirls.
//!
//! Each non-uniform generator returns a [`FamilyBundle`]: the matroid, its
//! canonical cyclic ordering, and the declared `t` and parity. Elements are
//! laid out so that the canonical ordering is the identity:
//!
//! - wheel/whirl(r): element `2i` is spoke `i`, element `2i+1` the rim edge
//!   from rim vertex `i` to `i+1`;
//! - spike/swirl(r): elements `2i, 2i+1` form the leg `L_i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::{k_subsets, mask_to_vec, popcount};
use crate::construct::{from_graph, from_linear, LinearRep, MatroidRepr, DEFAULT_PRIME};
use crate::cyclic::{is_t_cyclic_ordering, odd_starts, CyclicOrdering, Parity};
use crate::error::{Error, Result, MAX_AXIOM_CHECK, MAX_ELEMENTS};
use crate::matroid::Matroid;
use crate::report::VerificationReport;

/// Largest rank accepted by the wheel, whirl, spike and swirl generators.
pub const MAX_FAMILY_RANK: usize = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Uniform,
    Wheel,
    Whirl,
    Spike,
    Swirl,
}

impl FamilyKind {
    pub const CYCLIC: [FamilyKind; 4] = [
        FamilyKind::Wheel,
        FamilyKind::Whirl,
        FamilyKind::Spike,
        FamilyKind::Swirl,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Uniform => "uniform",
            FamilyKind::Wheel => "wheel",
            FamilyKind::Whirl => "whirl",
            FamilyKind::Spike => "spike",
            FamilyKind::Swirl => "swirl",
        }
    }

    /// Smallest rank the family is defined for.
    pub fn min_rank(&self) -> usize {
        match self {
            FamilyKind::Uniform => 0,
            FamilyKind::Wheel | FamilyKind::Whirl => 2,
            FamilyKind::Spike | FamilyKind::Swirl => 3,
        }
    }

    /// The `t` for which the family's ordering is `t`-cyclic.
    pub fn t(&self) -> Option<usize> {
        match self {
            FamilyKind::Uniform => None,
            FamilyKind::Wheel | FamilyKind::Whirl => Some(3),
            FamilyKind::Spike | FamilyKind::Swirl => Some(4),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(FamilyKind::Uniform),
            "wheel" => Ok(FamilyKind::Wheel),
            "whirl" => Ok(FamilyKind::Whirl),
            "spike" => Ok(FamilyKind::Spike),
            "swirl" => Ok(FamilyKind::Swirl),
            other => Err(Error::Parameter(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub r: usize,
    /// Ground-set size; uniform only.
    pub n: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct FamilyBundle {
    pub kind: FamilyKind,
    pub r: usize,
    pub matroid: Matroid,
    pub ordering: CyclicOrdering,
    pub t: usize,
    pub parity: Parity,
    /// Legs `L_i` as pairs of 0-based positions (spike and swirl only).
    pub legs: Vec<(usize, usize)>,
    /// Representation the matroid was built from.
    pub source: MatroidRepr,
}

impl FamilyBundle {
    pub fn label(&self) -> &str {
        self.matroid.label()
    }

    fn leg_mask(&self, i: usize) -> u32 {
        let (a, b) = self.legs[i];
        (1 << self.ordering.at(a)) | (1 << self.ordering.at(b))
    }
}

pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if n > MAX_ELEMENTS {
        return Err(Error::SizeCap {
            n,
            cap: MAX_ELEMENTS,
        });
    }
    if r > n {
        return Err(Error::Parameter(format!("uniform rank {r} exceeds n = {n}")));
    }
    Matroid::from_basis_masks(n, k_subsets(n, r).collect(), format!("U({r},{n})"))
}

/// Direct sum; the elements of `b` are shifted up by `a.n()`.
pub fn direct_sum(a: &Matroid, b: &Matroid) -> Result<Matroid> {
    let n = a.n() + b.n();
    if n > MAX_ELEMENTS {
        return Err(Error::SizeCap {
            n,
            cap: MAX_ELEMENTS,
        });
    }
    let bases: Vec<u32> = a
        .bases()
        .iter()
        .flat_map(|&x| b.bases().iter().map(move |&y| x | (y << a.n())))
        .collect();
    Matroid::from_basis_masks(n, bases, format!("{}+{}", a.label(), b.label()))
}

fn check_rank(kind: FamilyKind, r: usize) -> Result<()> {
    if r < kind.min_rank() || r > MAX_FAMILY_RANK {
        return Err(Error::Parameter(format!(
            "{kind} rank {r} outside {}..={MAX_FAMILY_RANK}",
            kind.min_rank()
        )));
    }
    Ok(())
}

/// Wheel graph on hub 0 and rim vertices `1..=r`, edges in ordering order.
pub fn wheel_graph(r: usize) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::with_capacity(2 * r);
    for i in 0..r {
        edges.push((0, i + 1));
        edges.push((i + 1, (i + 1) % r + 1));
    }
    (r + 1, edges)
}

/// Mask of the rim edges of `wheel(r)`.
pub fn rim_mask(r: usize) -> u32 {
    (0..r).fold(0, |acc, i| acc | (1 << (2 * i + 1)))
}

pub fn wheel(r: usize) -> Result<FamilyBundle> {
    check_rank(FamilyKind::Wheel, r)?;
    let (vertices, edges) = wheel_graph(r);
    let matroid = from_graph(vertices, &edges, &format!("wheel({r})"))?;
    finish(FamilyBundle {
        kind: FamilyKind::Wheel,
        r,
        matroid,
        ordering: CyclicOrdering::identity(2 * r),
        t: 3,
        parity: Parity::Odd,
        legs: Vec::new(),
        source: MatroidRepr::Graph { vertices, edges },
    })
}

/// Circuit-hyperplane relaxation: `x` becomes a basis.
pub fn relax(m: &Matroid, x: u32) -> Result<Matroid> {
    let is_ch = m.is_circuit_mask(x)
        && m.rank() >= 1
        && m.rank_mask(x) + 1 == m.rank()
        && m.closure_mask(x) == x;
    if !is_ch {
        return Err(Error::NotCircuitHyperplane(mask_to_vec(x)));
    }
    let mut bases = m.bases().to_vec();
    bases.push(x);
    Matroid::from_basis_masks(m.n(), bases, format!("relax({})", m.label()))
}

pub fn whirl(r: usize) -> Result<FamilyBundle> {
    check_rank(FamilyKind::Whirl, r)?;
    let w = wheel(r)?;
    let matroid = relax(&w.matroid, rim_mask(r))?.with_label(format!("whirl({r})"));
    let source = MatroidRepr::Bases {
        bases: matroid.bases().iter().map(|&b| mask_to_vec(b)).collect(),
    };
    finish(FamilyBundle {
        kind: FamilyKind::Whirl,
        matroid,
        source,
        ..w
    })
}

fn linear_bundle(kind: FamilyKind, r: usize, columns: Vec<Vec<u64>>) -> Result<FamilyBundle> {
    let rep = LinearRep::new(DEFAULT_PRIME, r, columns)?;
    let matroid = from_linear(&rep, &format!("{kind}({r})"))?;
    finish(FamilyBundle {
        kind,
        r,
        matroid,
        ordering: CyclicOrdering::identity(2 * r),
        t: 4,
        parity: Parity::Even,
        legs: (0..r).map(|i| (2 * i, 2 * i + 1)).collect(),
        source: MatroidRepr::Linear {
            p: rep.p(),
            matrix: rep.to_rows(),
        },
    })
}

/// Rank-`r` spike realized over GF(1009) with legs `{e_i, e_i + u}`, `u` the
/// all-ones vector.
pub fn spike(r: usize) -> Result<FamilyBundle> {
    check_rank(FamilyKind::Spike, r)?;
    let mut columns = Vec::with_capacity(2 * r);
    for i in 0..r {
        let mut x = vec![0; r];
        x[i] = 1;
        let mut y = vec![1; r];
        y[i] = 2;
        columns.push(x);
        columns.push(y);
    }
    linear_bundle(FamilyKind::Spike, r, columns)
}

/// Leg coefficients of the swirl: `L_i` spans `e_i` and `e_{i+1}` as
/// `e_i + a e_{i+1}` and `e_i + b e_{i+1}`, for 1-based leg index `i`.
pub fn swirl_coefficients(i: u64) -> (u64, u64) {
    ((2 + 2 * i) % DEFAULT_PRIME, (3 + 2 * i) % DEFAULT_PRIME)
}

/// Rank-`r` swirl realized over GF(1009); the basis the legs are placed
/// against is never part of the ground set.
pub fn swirl(r: usize) -> Result<FamilyBundle> {
    check_rank(FamilyKind::Swirl, r)?;
    let mut columns = Vec::with_capacity(2 * r);
    for i in 0..r {
        let (a, b) = swirl_coefficients(i as u64 + 1);
        for coef in [a, b] {
            let mut v = vec![0; r];
            v[i] = 1;
            v[(i + 1) % r] = coef;
            columns.push(v);
        }
    }
    linear_bundle(FamilyKind::Swirl, r, columns)
}

pub fn generate(spec: &FamilySpec) -> Result<FamilyBundle> {
    match spec.kind {
        FamilyKind::Uniform => Err(Error::Parameter(
            "uniform matroids carry no cyclic ordering; use families::uniform".into(),
        )),
        FamilyKind::Wheel => wheel(spec.r),
        FamilyKind::Whirl => whirl(spec.r),
        FamilyKind::Spike => spike(spec.r),
        FamilyKind::Swirl => swirl(spec.r),
    }
}

pub fn generate_kind(kind: FamilyKind, r: usize) -> Result<FamilyBundle> {
    generate(&FamilySpec { kind, r, n: None })
}

fn finish(bundle: FamilyBundle) -> Result<FamilyBundle> {
    let report = defining_conditions(&bundle);
    if let Some(f) = report.failures.first() {
        return Err(Error::FamilyValidation(format!(
            "{}: {} failed ({})",
            f.instance, f.claim, f.detail
        )));
    }
    Ok(bundle)
}

/// Leg pairs whose union must be a 4-circuit and 4-cocircuit.
fn required_leg_pairs(bundle: &FamilyBundle) -> Vec<(usize, usize)> {
    let r = bundle.legs.len();
    match bundle.kind {
        FamilyKind::Spike => (0..r)
            .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
            .collect(),
        FamilyKind::Swirl => (0..r).map(|i| (i, (i + 1) % r)).collect(),
        _ => Vec::new(),
    }
}

/// The family's defining conditions and its ordering check, without the
/// (more expensive) axiom check.
fn defining_conditions(bundle: &FamilyBundle) -> VerificationReport {
    let m = &bundle.matroid;
    let inst = bundle.label().to_string();
    let mut report = VerificationReport::new("family");
    let n = m.n();

    if n == 2 * bundle.r && m.rank() == bundle.r {
        report.pass(&inst, "size-2r-rank-r");
    } else {
        report.fail(&inst, "size-2r-rank-r", vec![], format!("n = {n}, rank = {}", m.rank()));
    }

    match bundle.kind {
        FamilyKind::Spike | FamilyKind::Swirl => {
            let pairs = required_leg_pairs(bundle);
            let claim_c = format!("{}-leg-pairs-4-circuits", bundle.kind);
            let claim_cc = format!("{}-leg-pairs-4-cocircuits", bundle.kind);
            let union = |&(i, j): &(usize, usize)| bundle.leg_mask(i) | bundle.leg_mask(j);
            match pairs.iter().map(union).find(|&u| popcount(u) != 4 || !m.is_circuit_mask(u)) {
                None => report.pass(&inst, &claim_c),
                Some(u) => report.fail(&inst, &claim_c, vec![mask_to_vec(u)], "not a 4-circuit"),
            }
            match pairs.iter().map(union).find(|&u| !m.is_cocircuit_mask(u)) {
                None => report.pass(&inst, &claim_cc),
                Some(u) => report.fail(&inst, &claim_cc, vec![mask_to_vec(u)], "not a 4-cocircuit"),
            }
        }
        FamilyKind::Wheel | FamilyKind::Whirl => {
            let sigma = &bundle.ordering;
            match odd_starts(n, 0).find(|&p| !m.is_circuit_mask(sigma.window_mask(p, 3))) {
                None => report.pass(&inst, "odd-windows-triangles"),
                Some(p) => report.fail(
                    &inst,
                    "odd-windows-triangles",
                    vec![mask_to_vec(sigma.window_mask(p, 3))],
                    "not a triangle",
                ),
            }
            match odd_starts(n, 0).find(|&p| !m.is_cocircuit_mask(sigma.window_mask(p + 1, 3))) {
                None => report.pass(&inst, "shifted-windows-triads"),
                Some(p) => report.fail(
                    &inst,
                    "shifted-windows-triads",
                    vec![mask_to_vec(sigma.window_mask(p + 1, 3))],
                    "not a triad",
                ),
            }
        }
        FamilyKind::Uniform => {}
    }

    let claim = format!("ordering-{}-cyclic-{}", bundle.t, bundle.parity.as_str());
    match is_t_cyclic_ordering(m, &bundle.ordering, bundle.t) {
        // Degenerate orderings satisfy both clauses and are reported as even.
        Ok(check) if check.parity == Some(bundle.parity) || check.both_clauses => {
            report.pass(&inst, &claim)
        }
        Ok(check) => report.fail(
            &inst,
            &claim,
            vec![bundle.ordering.as_slice().to_vec()],
            check.reason.unwrap_or_else(|| format!("parity {:?}", check.parity)),
        ),
        Err(e) => report.fail(&inst, &claim, vec![], e.to_string()),
    }
    report
}

/// Re-checks a bundle's defining conditions, its ordering, and (for
/// `n <= 12`) basis exchange. Failures are report content, never errors.
pub fn validate_family(bundle: &FamilyBundle) -> VerificationReport {
    let start = std::time::Instant::now();
    let mut report = defining_conditions(bundle);
    let inst = bundle.label().to_string();
    if bundle.matroid.n() <= MAX_AXIOM_CHECK {
        match bundle.matroid.exchange_violation() {
            Ok(None) => report.pass(&inst, "basis-exchange"),
            Ok(Some(v)) => report.fail(
                &inst,
                "basis-exchange",
                vec![v.from, v.other, vec![v.x]],
                format!("removing {} cannot be repaired", v.x),
            ),
            Err(e) => report.fail(&inst, "basis-exchange", vec![], e.to_string()),
        }
    }
    report.wall_time_us = start.elapsed().as_micros() as u64;
    report
}
