//! Cyclic orderings and the window structure of circuits and cocircuits.
//!
//! Orderings are stored 0-based. A "paper-odd" window is one whose start sits
//! at an even offset from the ordering's anchor; the anchor is position 0 or
//! 1 of the canonical form, and parity-sensitive checks try both because
//! canonicalization may rotate by an odd amount.

use std::collections::HashSet;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::{bits, mask_to_vec, ElementSet};
use crate::error::{Error, Result, MAX_SEARCH};
use crate::matroid::Matroid;
use crate::report::VerificationReport;

/// A cyclic permutation of `{0, ..., n-1}` in canonical form: rotated so the
/// smallest element comes first, and oriented so that `seq[1] < seq[n-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicOrdering {
    seq: Vec<usize>,
}

impl CyclicOrdering {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for &e in &seq {
            if e >= n {
                return Err(Error::ElementOutOfRange { element: e, n });
            }
            if std::mem::replace(&mut seen[e], true) {
                return Err(Error::Format(format!("element {e} repeated in ordering")));
            }
        }
        Ok(Self {
            seq: canonicalize(&seq),
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            seq: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    /// Element at 0-based position `pos`, wrapping.
    #[inline]
    pub fn at(&self, pos: usize) -> usize {
        self.seq[pos % self.seq.len()]
    }

    /// Mask of the `len` consecutive elements starting at 0-based `start`.
    pub fn window_mask(&self, start: usize, len: usize) -> u32 {
        (0..len).fold(0, |acc, k| acc | (1 << self.at(start + k)))
    }

    /// `{e_i, ..., e_{i+len-1}}` for a 1-based position `i`, with wraparound.
    pub fn window(&self, i: usize, len: usize) -> Result<ElementSet> {
        let n = self.len();
        if len == 0 || len > n {
            return Err(Error::Parameter(format!("window length {len} outside 1..={n}")));
        }
        if i == 0 {
            return Err(Error::Parameter("positions are 1-based".into()));
        }
        ElementSet::from_mask(n, self.window_mask(i - 1, len))
    }

    /// Raw sequence reversed (canonicalizes back to the same ordering).
    pub fn reversed_seq(&self) -> Vec<usize> {
        self.seq.iter().rev().copied().collect()
    }

    /// Raw sequence rotated left by `k`.
    pub fn rotated_seq(&self, k: usize) -> Vec<usize> {
        let n = self.len();
        (0..n).map(|p| self.at(p + k)).collect()
    }

    fn check_universe(&self, m: &Matroid) -> Result<()> {
        if self.len() != m.n() {
            Err(Error::UniverseMismatch {
                expected: m.n(),
                found: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

fn canonicalize(seq: &[usize]) -> Vec<usize> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n).min_by_key(|&p| seq[p]).unwrap();
    let rotated: Vec<usize> = (0..n).map(|p| seq[(start + p) % n]).collect();
    if n >= 3 && rotated[1] > rotated[n - 1] {
        std::iter::once(rotated[0])
            .chain(rotated[1..].iter().rev().copied())
            .collect()
    } else {
        rotated
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Parity::Odd => "odd",
            Parity::Even => "even",
        }
    }
}

/// Ordering sidecar file: `{"ordering": [...], "t": 3, "parity": "odd"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingFile {
    pub ordering: Vec<usize>,
    pub t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity: Option<Parity>,
}

impl OrderingFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Format(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ordering file serializes")
    }

    pub fn cyclic_ordering(&self) -> Result<CyclicOrdering> {
        CyclicOrdering::new(self.ordering.clone())
    }
}

/// Membership sets for the `t`-element circuits and cocircuits of a matroid.
pub(crate) struct WindowSets {
    pub circuits: HashSet<u32>,
    pub cocircuits: HashSet<u32>,
}

impl WindowSets {
    pub fn new(m: &Matroid, t: usize) -> Self {
        Self {
            circuits: m.circuits_of_size(t).into_iter().collect(),
            cocircuits: m.cocircuits_of_size(t).into_iter().collect(),
        }
    }

    /// All `(t-1)`-subsets of `t`-element members, for containment queries.
    fn shadows(family: &HashSet<u32>) -> HashSet<u32> {
        family
            .iter()
            .flat_map(|&c| bits(c).map(move |e| c & !(1 << e)))
            .collect()
    }
}

/// First 0-based position whose `(t-1)`-window lies in no `t`-circuit or in
/// no `t`-cocircuit.
pub fn cyclic_property_failure(m: &Matroid, sigma: &CyclicOrdering, t: usize) -> Result<Option<usize>> {
    sigma.check_universe(m)?;
    let n = m.n();
    if t < 2 || t + 1 > n {
        return Err(Error::Parameter(format!("t = {t} outside 2..={}", n.saturating_sub(1))));
    }
    let sets = WindowSets::new(m, t);
    let circ = WindowSets::shadows(&sets.circuits);
    let cocirc = WindowSets::shadows(&sets.cocircuits);
    Ok((0..n).find(|&p| {
        let w = sigma.window_mask(p, t - 1);
        !(circ.contains(&w) && cocirc.contains(&w))
    }))
}

/// Whether every `t-1` consecutive elements of `sigma` lie in a `t`-element
/// circuit and a `t`-element cocircuit.
pub fn has_cyclic_property(m: &Matroid, sigma: &CyclicOrdering, t: usize) -> Result<bool> {
    Ok(cyclic_property_failure(m, sigma, t)?.is_none())
}

/// The two window clauses of a `t`-cyclic ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    /// Window a circuit, the window shifted by one a cocircuit.
    Shifted,
    /// Window both a circuit and a cocircuit.
    Same,
}

impl Clause {
    pub fn parity(self) -> Parity {
        match self {
            Clause::Shifted => Parity::Odd,
            Clause::Same => Parity::Even,
        }
    }
}

/// Start positions (0-based) of the paper-odd windows for a given anchor.
pub fn odd_starts(n: usize, anchor: usize) -> impl Iterator<Item = usize> {
    (0..n.div_ceil(2)).map(move |k| (anchor + 2 * k) % n.max(1))
}

/// First paper-odd start at which `clause` fails for `anchor`.
pub(crate) fn clause_failure(
    sets: &WindowSets,
    sigma: &CyclicOrdering,
    t: usize,
    anchor: usize,
    clause: Clause,
) -> Option<usize> {
    let n = sigma.len();
    odd_starts(n, anchor).find(|&p| {
        let w = sigma.window_mask(p, t);
        if !sets.circuits.contains(&w) {
            return true;
        }
        match clause {
            Clause::Shifted => !sets.cocircuits.contains(&sigma.window_mask(p + 1, t)),
            Clause::Same => !sets.cocircuits.contains(&w),
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TCyclicCheck {
    /// `None` when neither clause holds for any anchor.
    pub parity: Option<Parity>,
    /// Anchor (0 or 1) at which the reported clause holds.
    pub anchor: Option<usize>,
    /// Both clauses hold (only in degenerate small cases); parity is reported as even.
    pub both_clauses: bool,
    /// Why the ordering was rejected, when it was.
    pub reason: Option<String>,
}

impl TCyclicCheck {
    pub fn is_t_cyclic(&self) -> bool {
        self.parity.is_some()
    }

    fn rejected(reason: String) -> Self {
        Self {
            parity: None,
            anchor: None,
            both_clauses: false,
            reason: Some(reason),
        }
    }
}

/// Classifies `sigma` as an odd, even, or no `t`-cyclic ordering of `m`.
pub fn is_t_cyclic_ordering(m: &Matroid, sigma: &CyclicOrdering, t: usize) -> Result<TCyclicCheck> {
    sigma.check_universe(m)?;
    if t == 0 {
        return Err(Error::Parameter("t must be positive".into()));
    }
    let n = m.n();
    if n < t + 1 {
        return Ok(TCyclicCheck::rejected(format!("n = {n} < t + 1 = {}", t + 1)));
    }
    let sets = WindowSets::new(m, t);
    let find = |clause| (0..2).find(|&a| clause_failure(&sets, sigma, t, a, clause).is_none());
    let odd = find(Clause::Shifted);
    let even = find(Clause::Same);
    Ok(match (odd, even) {
        (_, Some(a)) => TCyclicCheck {
            parity: Some(Parity::Even),
            anchor: Some(a),
            both_clauses: odd.is_some(),
            reason: None,
        },
        (Some(a), None) => TCyclicCheck {
            parity: Some(Parity::Odd),
            anchor: Some(a),
            both_clauses: false,
            reason: None,
        },
        (None, None) => {
            let p = clause_failure(&sets, sigma, t, 0, Clause::Shifted).unwrap_or(0);
            TCyclicCheck::rejected(format!(
                "window at position {} fails both clauses for both anchors",
                p + 1
            ))
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Cyclic (t-1, t)-ordering.
    Property,
    /// t-cyclic ordering of either parity.
    TCyclic,
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "property" => Ok(Self::Property),
            "t_cyclic" | "t-cyclic" => Ok(Self::TCyclic),
            other => Err(Error::Parameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// Window constraint checked as soon as the positions it covers are filled.
#[derive(Clone, Copy)]
enum Constraint {
    /// `(t-1)`-window contained in a `t`-circuit and a `t`-cocircuit.
    Extends,
    /// `t`-window is a circuit.
    Circuit,
    /// `t`-window is a cocircuit.
    Cocircuit,
}

struct Search<'a> {
    n: usize,
    /// Constraints keyed by 0-based start position.
    starts: Vec<Vec<(usize, Constraint)>>,
    circ: &'a HashSet<u32>,
    cocirc: &'a HashSet<u32>,
    seq: Vec<usize>,
}

impl Search<'_> {
    fn window(&self, start: usize, len: usize) -> u32 {
        (0..len).fold(0, |acc, k| acc | (1 << self.seq[(start + k) % self.n]))
    }

    fn holds(&self, start: usize, len: usize, c: Constraint) -> bool {
        let w = self.window(start, len);
        match c {
            Constraint::Extends | Constraint::Circuit => self.circ.contains(&w),
            Constraint::Cocircuit => self.cocirc.contains(&w),
        }
    }

    /// Constraints whose window ends exactly at `pos` (non-wrapping ones).
    fn check_at(&self, pos: usize) -> bool {
        (0..=pos).all(|start| {
            self.starts[start]
                .iter()
                .filter(|(len, _)| start + len - 1 == pos)
                .all(|&(len, c)| self.holds(start, len, c))
        })
    }

    fn check_wrapping(&self) -> bool {
        (0..self.n).all(|start| {
            self.starts[start]
                .iter()
                .filter(|(len, _)| start + len > self.n)
                .all(|&(len, c)| self.holds(start, len, c))
        })
    }

    fn run(&mut self, pos: usize, used: u32) -> bool {
        if pos == self.n {
            return self.seq[1] < self.seq[self.n - 1] && self.check_wrapping();
        }
        for e in 1..self.n {
            if used >> e & 1 == 1 {
                continue;
            }
            self.seq[pos] = e;
            if self.check_at(pos) && self.run(pos + 1, used | (1 << e)) {
                return true;
            }
        }
        false
    }
}

/// Backtracking search for a canonical ordering of `m` in the given mode.
///
/// Element 0 is fixed first and the direction is fixed by the canonical rule.
/// In `TCyclic` mode the necessary conditions `n` even, `n >= 2t-2` and
/// `r = n/2` are checked before searching; in `Property` mode `n` even is
/// required only where the window-structure theorem applies (`t = 2`, or
/// `n >= 6t-10`).
pub fn find_cyclic_ordering(m: &Matroid, t: usize, mode: SearchMode) -> Result<Option<CyclicOrdering>> {
    let n = m.n();
    if n > MAX_SEARCH {
        return Err(Error::SizeCap { n, cap: MAX_SEARCH });
    }
    match mode {
        SearchMode::Property => {
            if t < 2 || t + 1 > n {
                return Err(Error::Parameter(format!("t = {t} outside 2..={}", n.saturating_sub(1))));
            }
            let theorem_applies = t == 2 || n + 10 >= 6 * t;
            if theorem_applies && n % 2 == 1 {
                return Ok(None);
            }
        }
        SearchMode::TCyclic => {
            if t == 0 {
                return Err(Error::Parameter("t must be positive".into()));
            }
            if n < t + 1 || n % 2 == 1 || n + 2 < 2 * t || 2 * m.rank() != n {
                return Ok(None);
            }
        }
    }
    if n < 3 {
        // Too short to orient; check the single canonical ordering directly.
        let sigma = CyclicOrdering::identity(n);
        let ok = match mode {
            SearchMode::Property => has_cyclic_property(m, &sigma, t)?,
            SearchMode::TCyclic => is_t_cyclic_ordering(m, &sigma, t)?.is_t_cyclic(),
        };
        return Ok(ok.then_some(sigma));
    }

    let sets = WindowSets::new(m, t);
    let plans: Vec<Vec<Vec<(usize, Constraint)>>> = match mode {
        SearchMode::Property => {
            let mut starts = vec![Vec::new(); n];
            for s in starts.iter_mut() {
                s.push((t - 1, Constraint::Extends));
            }
            vec![starts]
        }
        SearchMode::TCyclic => {
            let mut plans = Vec::new();
            for clause in [Clause::Same, Clause::Shifted] {
                for anchor in 0..2 {
                    let mut starts = vec![Vec::new(); n];
                    for p in odd_starts(n, anchor) {
                        starts[p].push((t, Constraint::Circuit));
                        match clause {
                            Clause::Same => starts[p].push((t, Constraint::Cocircuit)),
                            Clause::Shifted => starts[(p + 1) % n].push((t, Constraint::Cocircuit)),
                        }
                    }
                    plans.push(starts);
                }
            }
            plans
        }
    };
    let (circ, cocirc) = match mode {
        SearchMode::Property => {
            // Extends-constraints need both shadows; intersect them into one set.
            let c = WindowSets::shadows(&sets.circuits);
            let cc = WindowSets::shadows(&sets.cocircuits);
            let both: HashSet<u32> = c.intersection(&cc).copied().collect();
            (both, HashSet::new())
        }
        SearchMode::TCyclic => (sets.circuits.clone(), sets.cocircuits.clone()),
    };
    for starts in plans {
        let mut search = Search {
            n,
            starts,
            circ: &circ,
            cocirc: &cocirc,
            seq: vec![0; n],
        };
        if search.check_at(0) && search.run(1, 1) {
            return Ok(Some(CyclicOrdering::new(search.seq)?));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureCase {
    /// Odd `t`: every `t`-window is a circuit or a cocircuit but not both.
    I,
    /// Even `t`: circuit windows and cocircuit windows coincide.
    II,
}

/// The unique `t`-circuit and `t`-cocircuit containing one `(t-1)`-window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowEntry {
    /// 1-based start position of the window.
    pub position: usize,
    pub window: Vec<usize>,
    pub circuit: Option<Vec<usize>>,
    pub circuit_extra: Option<usize>,
    pub cocircuit: Option<Vec<usize>>,
    pub cocircuit_extra: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowCertificate {
    pub t: usize,
    pub case: StructureCase,
    pub entries: Vec<WindowEntry>,
    /// Residue mod 2 (of 0-based start) of the `t`-windows that are circuits,
    /// when they form exactly one parity class.
    pub circuit_parity_class: Option<usize>,
}

/// Verifies the window structure of a cyclic `(t-1, t)`-ordering when
/// `t >= 3` and `n >= 6t - 10`, recording the unique circuit and cocircuit
/// through every `(t-1)`-window.
pub fn theorem1_report(
    m: &Matroid,
    sigma: &CyclicOrdering,
    t: usize,
) -> Result<(WindowCertificate, VerificationReport)> {
    sigma.check_universe(m)?;
    let n = m.n();
    if t < 3 {
        return Err(Error::Precondition(format!("t = {t} < 3")));
    }
    if n + 10 < 6 * t {
        return Err(Error::Precondition(format!("n = {n} < 6t - 10 = {}", 6 * t - 10)));
    }
    if let Some(p) = cyclic_property_failure(m, sigma, t)? {
        return Err(Error::Precondition(format!(
            "not a cyclic ({}, {t})-ordering: window at position {} fails",
            t - 1,
            p + 1
        )));
    }
    let inst = m.label().to_string();
    let mut report = VerificationReport::new("theorem1");
    let sets = WindowSets::new(m, t);

    if n.is_multiple_of(2) {
        report.pass(&inst, "n-even");
    } else {
        report.fail(&inst, "n-even", vec![], format!("n = {n}"));
    }

    let mut entries = Vec::with_capacity(n);
    let mut circuit_fail = None;
    let mut cocircuit_fail = None;
    let mut tight_fail = None;
    for p in 0..n {
        let x = sigma.window_mask(p, t - 1);
        let through = |family: &HashSet<u32>| {
            let mut found: Vec<u32> = bits(!x & m.ground_mask())
                .map(|e| x | (1 << e))
                .filter(|c| family.contains(c))
                .collect();
            found.sort_unstable();
            found
        };
        let cs = through(&sets.circuits);
        let ccs = through(&sets.cocircuits);
        if cs.len() != 1 && circuit_fail.is_none() {
            circuit_fail = Some((p, x, cs.clone()));
        }
        if ccs.len() != 1 && cocircuit_fail.is_none() {
            cocircuit_fail = Some((p, x, ccs.clone()));
        }
        let unique = |v: &[u32]| (v.len() == 1).then(|| v[0]);
        let c = unique(&cs);
        let cc = unique(&ccs);
        // The extra element sits just before or just after the window.
        let neighbours = (1u32 << sigma.at(p + n - 1)) | (1u32 << sigma.at(p + t - 1));
        for set in [c, cc].into_iter().flatten() {
            if set & !x & !neighbours != 0 && tight_fail.is_none() {
                tight_fail = Some((p, set));
            }
        }
        entries.push(WindowEntry {
            position: p + 1,
            window: mask_to_vec(x),
            circuit: c.map(mask_to_vec),
            circuit_extra: c.map(|s| (s & !x).trailing_zeros() as usize),
            cocircuit: cc.map(mask_to_vec),
            cocircuit_extra: cc.map(|s| (s & !x).trailing_zeros() as usize),
        });
    }
    for (claim, fail) in [("unique-circuit", circuit_fail), ("unique-cocircuit", cocircuit_fail)] {
        match fail {
            None => report.pass(&inst, claim),
            Some((p, x, found)) => {
                let mut witness = vec![mask_to_vec(x)];
                witness.extend(found.iter().map(|&c| mask_to_vec(c)));
                report.fail(
                    &inst,
                    claim,
                    witness,
                    format!("{} candidates through the window at position {}", found.len(), p + 1),
                );
            }
        }
    }
    match tight_fail {
        None => report.pass(&inst, "extra-element-adjacent"),
        Some((p, set)) => report.fail(
            &inst,
            "extra-element-adjacent",
            vec![mask_to_vec(set)],
            format!("window at position {}", p + 1),
        ),
    }

    let is_circ: Vec<bool> = (0..n)
        .map(|p| sets.circuits.contains(&sigma.window_mask(p, t)))
        .collect();
    let is_cocirc: Vec<bool> = (0..n)
        .map(|p| sets.cocircuits.contains(&sigma.window_mask(p, t)))
        .collect();
    let win = |p: usize| vec![mask_to_vec(sigma.window_mask(p, t))];
    let win2 = |p: usize| {
        vec![
            mask_to_vec(sigma.window_mask(p, t)),
            mask_to_vec(sigma.window_mask(p + 1, t)),
        ]
    };
    let case = if t % 2 == 1 { StructureCase::I } else { StructureCase::II };
    type WindowClaim<'a> = (&'static str, Box<dyn Fn(usize) -> bool + 'a>);
    let (tag, claims): (&str, [WindowClaim; 2]) = match case {
        StructureCase::I => (
            "I",
            [
                ("circuit-xor-cocircuit", Box::new(|p| is_circ[p] != is_cocirc[p])),
                (
                    "circuit-iff-next-cocircuit",
                    Box::new(|p| is_circ[p] == is_cocirc[(p + 1) % n]),
                ),
            ],
        ),
        StructureCase::II => (
            "II",
            [
                (
                    "exactly-one-of-consecutive-circuit",
                    Box::new(|p| is_circ[p] != is_circ[(p + 1) % n]),
                ),
                ("circuit-iff-cocircuit", Box::new(|p| is_circ[p] == is_cocirc[p])),
            ],
        ),
    };
    for (k, (name, holds)) in claims.iter().enumerate() {
        let claim = format!("{tag}({}) {name}", ["i", "ii"][k]);
        match (0..n).find(|&p| !holds(p)) {
            None => report.pass(&inst, &claim),
            Some(p) => report.fail(&inst, &claim, win2(p), format!("position {}", p + 1)),
        }
    }
    // (iii): circuit windows are closed under shifting by two.
    let claim = format!("{tag}(iii) circuit-windows-closed-under-shift-2");
    match (0..n).find(|&p| is_circ[p] && !is_circ[(p + 2) % n]) {
        None => report.pass(&inst, &claim),
        Some(p) => report.fail(&inst, &claim, win((p + 2) % n), format!("position {}", p + 1)),
    }
    let class_of = |c: usize| (0..n).all(|p| is_circ[p] == (p % 2 == c));
    let circuit_parity_class = if n.is_multiple_of(2) { (0..2).find(|&c| class_of(c)) } else { None };

    Ok((
        WindowCertificate {
            t,
            case,
            entries,
            circuit_parity_class,
        },
        report,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitset::k_subsets;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_basis_masks(n, k_subsets(n, r).collect(), format!("U{r},{n}")).unwrap()
    }

    #[test]
    fn canonical_form() {
        let s = CyclicOrdering::new(vec![3, 4, 5, 0, 1, 2]).unwrap();
        assert_eq!(s.as_slice(), &[0, 1, 2, 3, 4, 5]);
        let r = CyclicOrdering::new(vec![2, 1, 0, 5, 4, 3]).unwrap();
        assert_eq!(r, s);
        let again = CyclicOrdering::new(s.as_slice().to_vec()).unwrap();
        assert_eq!(again, s);
        assert!(CyclicOrdering::new(vec![0, 0, 1]).is_err());
        assert!(CyclicOrdering::new(vec![0, 3]).is_err());
    }

    #[test]
    fn windows_wrap() {
        let s = CyclicOrdering::identity(6);
        assert_eq!(s.window(5, 3).unwrap().to_vec(), vec![0, 4, 5]);
        assert_eq!(s.window(2, 6).unwrap(), ElementSet::full(6));
        assert!(s.window(1, 0).is_err());
        assert!(s.window(1, 7).is_err());
        assert!(s.window(0, 2).is_err());
    }

    #[test]
    fn uniform_2_4_has_property_for_t3() {
        let m = uniform(2, 4);
        let s = CyclicOrdering::identity(4);
        assert!(has_cyclic_property(&m, &s, 3).unwrap());
        assert!(has_cyclic_property(&m, &CyclicOrdering::new(vec![0, 2, 1, 3]).unwrap(), 3).unwrap());
        assert!(matches!(has_cyclic_property(&m, &s, 4), Err(Error::Parameter(_))));
        assert!(matches!(has_cyclic_property(&m, &s, 1), Err(Error::Parameter(_))));
    }

    #[test]
    fn short_ground_set_is_rejected_not_errored() {
        let m = uniform(1, 2);
        let check = is_t_cyclic_ordering(&m, &CyclicOrdering::identity(2), 2).unwrap();
        assert_eq!(check.parity, None);
        assert!(check.reason.unwrap().contains("t + 1"));
    }

    #[test]
    fn odd_uniform_rejected_by_precheck() {
        let m = uniform(1, 3);
        assert_eq!(find_cyclic_ordering(&m, 2, SearchMode::Property).unwrap(), None);
    }

    #[test]
    fn uniform_3_6_is_even_4_cyclic() {
        let m = uniform(3, 6);
        let s = find_cyclic_ordering(&m, 4, SearchMode::TCyclic).unwrap().unwrap();
        let check = is_t_cyclic_ordering(&m, &s, 4).unwrap();
        assert_eq!(check.parity, Some(Parity::Even));
    }

    #[test]
    fn search_size_cap() {
        let m = uniform(1, 17);
        assert!(matches!(
            find_cyclic_ordering(&m, 2, SearchMode::Property),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn ordering_file_round_trip() {
        let f = OrderingFile {
            ordering: vec![0, 1, 2, 3],
            t: 3,
            parity: Some(Parity::Odd),
        };
        let text = f.to_json();
        assert!(text.contains("\"odd\""));
        assert_eq!(OrderingFile::from_json(&text).unwrap(), f);
    }
}
