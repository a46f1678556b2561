//! Connectivity function, local connectivity and flowers.

use serde::{Deserialize, Serialize};

use crate::bitset::{bits, full_mask, mask_to_vec, popcount, ElementSet};
use crate::cyclic::CyclicOrdering;
use crate::error::{Error, Result, MAX_PETALS};
use crate::matroid::Matroid;

/// `r(X) + r(E - X) - r(M)`.
#[inline]
pub fn lambda_mask(m: &Matroid, x: u32) -> usize {
    m.rank_mask(x) + m.rank_mask(m.ground_mask() & !x) - m.rank()
}

/// `r(X) + r*(X) - |X|`; equal to [`lambda_mask`] on every matroid.
#[inline]
pub fn lambda_dual_form_mask(m: &Matroid, x: u32) -> usize {
    m.rank_mask(x) + m.corank_mask(x) - popcount(x)
}

pub fn lambda(m: &Matroid, x: &ElementSet) -> Result<usize> {
    m.check_universe(x)?;
    Ok(lambda_mask(m, x.mask()))
}

/// `r(X) + r(Y) - r(X ∪ Y)` for disjoint masks.
#[inline]
pub fn local_conn_mask(m: &Matroid, x: u32, y: u32) -> usize {
    debug_assert_eq!(x & y, 0);
    m.rank_mask(x) + m.rank_mask(y) - m.rank_mask(x | y)
}

/// Local connectivity of disjoint sets; overlapping arguments are rejected.
pub fn local_conn(m: &Matroid, x: &ElementSet, y: &ElementSet) -> Result<usize> {
    m.check_universe(x)?;
    m.check_universe(y)?;
    let overlap = x.mask() & y.mask();
    if overlap != 0 {
        return Err(Error::Overlap(mask_to_vec(overlap)));
    }
    Ok(local_conn_mask(m, x.mask(), y.mask()))
}

/// `λ(X) = k - 1`.
pub fn is_exact_k_separating(m: &Matroid, x: &ElementSet, k: usize) -> Result<bool> {
    Ok(k >= 1 && lambda(m, x)? + 1 == k)
}

/// An ordered partition of the ground set into petals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flower {
    petals: Vec<u32>,
    n: usize,
}

impl Flower {
    pub fn new(n: usize, petals: &[ElementSet]) -> Result<Self> {
        if petals.is_empty() {
            return Err(Error::InvalidPartition("no petals".into()));
        }
        let masks = petals
            .iter()
            .map(|p| {
                if p.universe() != n {
                    Err(Error::UniverseMismatch {
                        expected: n,
                        found: p.universe(),
                    })
                } else {
                    Ok(p.mask())
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        Self::from_masks(n, masks)
    }

    pub fn from_masks(n: usize, petals: Vec<u32>) -> Result<Self> {
        if petals.is_empty() {
            return Err(Error::InvalidPartition("no petals".into()));
        }
        let mut seen = 0u32;
        for (i, &p) in petals.iter().enumerate() {
            if p == 0 {
                return Err(Error::InvalidPartition(format!("petal {i} is empty")));
            }
            if p & seen != 0 {
                return Err(Error::InvalidPartition(format!(
                    "petal {i} repeats {:?}",
                    mask_to_vec(p & seen)
                )));
            }
            seen |= p;
        }
        if seen != full_mask(n) {
            return Err(Error::InvalidPartition(format!(
                "petals miss {:?}",
                mask_to_vec(full_mask(n) & !seen)
            )));
        }
        Ok(Self { petals, n })
    }

    pub fn m(&self) -> usize {
        self.petals.len()
    }

    pub fn petal_masks(&self) -> &[u32] {
        &self.petals
    }

    /// Union of the petals whose indices are the set bits of `index_mask`.
    pub fn union_of(&self, index_mask: u32) -> u32 {
        bits(index_mask).fold(0, |acc, i| acc | self.petals[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowerVerdict {
    Anemone,
    Daisy,
    /// At most three petals, where anemones and daisies coincide.
    DegenerateMLe3,
    NotAFlower,
}

/// A petal index set (0-based) and the connectivity of its union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PetalEvidence {
    pub petals: Vec<usize>,
    pub lambda: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowerClass {
    pub verdict: FlowerVerdict,
    /// Witnesses: failing petal sets for `not_a_flower`, non-consecutive
    /// sets that are not exactly k-separating for `daisy`; empty otherwise.
    pub evidence: Vec<PetalEvidence>,
    pub subsets_checked: usize,
}

const MAX_EVIDENCE: usize = 4;

/// Whether a proper nonempty index set is a cyclic interval of `0..m`.
pub fn is_cyclically_consecutive(index_mask: u32, m: usize) -> bool {
    let full = full_mask(m);
    if index_mask == 0 || index_mask == full {
        return false;
    }
    let rotated = ((index_mask << 1) | (index_mask >> (m - 1))) & full;
    // Exactly one member whose predecessor is missing.
    popcount(index_mask & !rotated) == 1
}

fn flower_failure(m: &Matroid, flower: &Flower, k: usize) -> Option<PetalEvidence> {
    let count = flower.m();
    if count == 1 {
        return None;
    }
    let exact = |idx: u32| {
        let l = lambda_mask(m, flower.union_of(idx));
        (l + 1 != k).then(|| PetalEvidence {
            petals: mask_to_vec(idx),
            lambda: l,
        })
    };
    (0..count)
        .find_map(|i| exact(1 << i))
        .or_else(|| {
            if count >= 3 {
                (0..count).find_map(|i| exact((1 << i) | (1 << ((i + 1) % count))))
            } else {
                None
            }
        })
}

/// Each petal exactly k-separating and, with three or more petals, each
/// consecutive pair of petals too. A single petal is always a flower.
pub fn check_flower(m: &Matroid, petals: &[ElementSet], k: usize) -> Result<bool> {
    let flower = Flower::new(m.n(), petals)?;
    Ok(flower_failure(m, &flower, k).is_none())
}

pub fn check_flower_masks(m: &Matroid, flower: &Flower, k: usize) -> bool {
    flower_failure(m, flower, k).is_none()
}

/// Classifies by evaluating every proper petal union.
pub fn classify_flower(m: &Matroid, petals: &[ElementSet], k: usize) -> Result<FlowerClass> {
    let flower = Flower::new(m.n(), petals)?;
    classify(m, &flower, k)
}

pub fn classify(m: &Matroid, flower: &Flower, k: usize) -> Result<FlowerClass> {
    let count = flower.m();
    if count > MAX_PETALS {
        return Err(Error::TooManyPetals {
            m: count,
            cap: MAX_PETALS,
        });
    }
    if let Some(ev) = flower_failure(m, flower, k) {
        return Ok(FlowerClass {
            verdict: FlowerVerdict::NotAFlower,
            evidence: vec![ev],
            subsets_checked: 0,
        });
    }
    if count <= 3 {
        return Ok(FlowerClass {
            verdict: FlowerVerdict::DegenerateMLe3,
            evidence: Vec::new(),
            subsets_checked: 0,
        });
    }
    let full = full_mask(count);
    let mut all_exact = true;
    let mut daisy_pattern = true;
    let mut non_consecutive_exact = None;
    let mut evidence = Vec::new();
    for idx in 1..full {
        let l = lambda_mask(m, flower.union_of(idx));
        let exact = l + 1 == k;
        let consecutive = is_cyclically_consecutive(idx, count);
        all_exact &= exact;
        if exact != consecutive {
            daisy_pattern = false;
        }
        if !consecutive {
            if exact {
                non_consecutive_exact.get_or_insert(idx);
            } else if evidence.len() < MAX_EVIDENCE {
                evidence.push(PetalEvidence {
                    petals: mask_to_vec(idx),
                    lambda: l,
                });
            }
        }
    }
    let subsets_checked = (full - 1) as usize;
    if all_exact {
        Ok(FlowerClass {
            verdict: FlowerVerdict::Anemone,
            evidence: Vec::new(),
            subsets_checked,
        })
    } else if daisy_pattern {
        Ok(FlowerClass {
            verdict: FlowerVerdict::Daisy,
            evidence,
            subsets_checked,
        })
    } else {
        let witness = non_consecutive_exact
            .or_else(|| evidence.first().map(|e| e.petals.iter().fold(0, |a, &i| a | (1 << i))))
            .map(mask_to_vec)
            .unwrap_or_default();
        Err(Error::MixedFlower { witness })
    }
}

/// Classification using the local-connectivity shortcut: with `m >= 4` and a
/// common consecutive value `c`, any pair of petals with `⊓ != c` decides
/// daisy. Falls back to the full scan otherwise.
pub fn classify_with_shortcut(m: &Matroid, flower: &Flower, k: usize) -> Result<FlowerClass> {
    let count = flower.m();
    if (4..=MAX_PETALS).contains(&count) && flower_failure(m, flower, k).is_none() {
        let p = flower.petal_masks();
        let c = local_conn_mask(m, p[0], p[1]);
        let common = (0..count).all(|i| local_conn_mask(m, p[i], p[(i + 1) % count]) == c);
        if common {
            for i in 0..count {
                for j in i + 2..count {
                    if i == 0 && j == count - 1 {
                        continue;
                    }
                    let v = local_conn_mask(m, p[i], p[j]);
                    if v != c {
                        return Ok(FlowerClass {
                            verdict: FlowerVerdict::Daisy,
                            evidence: vec![PetalEvidence {
                                petals: vec![i, j],
                                lambda: lambda_mask(m, p[i] | p[j]),
                            }],
                            subsets_checked: 0,
                        });
                    }
                }
            }
        }
    }
    classify(m, flower, k)
}

/// A concatenation of a cyclic ordering: the 0-based positions at which the
/// petals start, in increasing order. Petal `i` runs from `starts[i]` up to
/// the next start, cyclically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Concatenation {
    pub starts: Vec<usize>,
}

impl Concatenation {
    /// From a first start position and the petal sizes in order.
    pub fn from_sizes(n: usize, first: usize, sizes: &[usize]) -> Result<Self> {
        if sizes.iter().sum::<usize>() != n || sizes.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "petal sizes {sizes:?} do not split {n} elements into nonempty runs"
            )));
        }
        let mut starts = Vec::with_capacity(sizes.len());
        let mut pos = first % n.max(1);
        for &s in sizes {
            starts.push(pos);
            pos = (pos + s) % n;
        }
        Ok(Self { starts })
    }

    pub fn m(&self) -> usize {
        self.starts.len()
    }

    pub fn sizes(&self, n: usize) -> Vec<usize> {
        let m = self.m();
        (0..m)
            .map(|i| {
                let next = self.starts[(i + 1) % m];
                let d = (next + n - self.starts[i]) % n;
                if d == 0 {
                    n
                } else {
                    d
                }
            })
            .collect()
    }

    pub fn petal_masks(&self, sigma: &CyclicOrdering) -> Vec<u32> {
        let n = sigma.len();
        self.starts
            .iter()
            .zip(self.sizes(n))
            .map(|(&s, len)| sigma.window_mask(s, len))
            .collect()
    }

    pub fn flower(&self, sigma: &CyclicOrdering) -> Flower {
        Flower::from_masks(sigma.len(), self.petal_masks(sigma)).expect("runs partition the ground set")
    }
}

/// Constraints on the concatenations to enumerate.
#[derive(Debug, Clone, Copy)]
pub struct ConcatenationFilter {
    pub min_size: usize,
    pub max_petals: usize,
    /// Petal sizes must be even.
    pub even_sizes: bool,
    /// Petals must start at positions of this parity (0 or 1).
    pub start_parity: Option<usize>,
}

/// Every concatenation of an `n`-element ordering passing `filter`, each
/// listed once (by its set of petal starts). The single-petal concatenation
/// is included when `n >= min_size`.
pub fn concatenations(n: usize, filter: ConcatenationFilter) -> Vec<Concatenation> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let min = filter.min_size.max(1);
    if n >= min && (!filter.even_sizes || n.is_multiple_of(2)) {
        let first = filter.start_parity.unwrap_or(0);
        out.push(Concatenation {
            starts: vec![first % n],
        });
    }
    for cuts in 1u32..(1u32 << n) {
        let m = popcount(cuts);
        if m < 2 || m > filter.max_petals {
            continue;
        }
        let starts: Vec<usize> = bits(cuts).collect();
        if let Some(par) = filter.start_parity {
            if starts.iter().any(|&s| s % 2 != par) {
                continue;
            }
        }
        let c = Concatenation { starts };
        let ok = c
            .sizes(n)
            .iter()
            .all(|&s| s >= min && (!filter.even_sizes || s % 2 == 0));
        if ok {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{spike, swirl, uniform, wheel};

    #[test]
    fn lambda_basics() {
        let w = wheel(4).unwrap().matroid;
        assert_eq!(lambda_mask(&w, 0), 0);
        assert_eq!(lambda_mask(&w, 0b11), 2);
        let s = spike(4).unwrap().matroid;
        assert_eq!(lambda_mask(&s, 0b1111), 2);
        let x = ElementSet::from_elements(5, &[0]).unwrap();
        assert!(lambda(&w, &x).is_err());
    }

    #[test]
    fn local_connectivity() {
        let s = spike(4).unwrap().matroid;
        let (p1, p3) = (s.set(0b11), s.set(0b110000));
        assert_eq!(local_conn(&s, &p1, &p3).unwrap(), 1);
        let w = swirl(4).unwrap().matroid;
        assert_eq!(local_conn(&w, &p1, &p3).unwrap(), 0);
        let overlap = s.set(0b111);
        assert!(matches!(local_conn(&s, &p1, &overlap), Err(Error::Overlap(_))));
        let x = s.set(0b1011);
        assert_eq!(local_conn(&s, &x, &x.complement()).unwrap(), lambda(&s, &x).unwrap());
    }

    #[test]
    fn exact_separation() {
        let w = wheel(4).unwrap().matroid;
        assert!(is_exact_k_separating(&w, &w.set(0b1111), 3).unwrap());
        let s = spike(5).unwrap().matroid;
        assert!(is_exact_k_separating(&s, &s.set(0b1111), 3).unwrap());
        assert!(!is_exact_k_separating(&s, &s.set(0b1111), 0).unwrap());
    }

    #[test]
    fn consecutive_index_sets() {
        assert!(is_cyclically_consecutive(0b0011, 4));
        assert!(is_cyclically_consecutive(0b1001, 4));
        assert!(!is_cyclically_consecutive(0b0101, 4));
        assert!(!is_cyclically_consecutive(0b1111, 4));
        assert!(!is_cyclically_consecutive(0, 4));
        assert!(is_cyclically_consecutive(0b1, 1 + 3));
    }

    #[test]
    fn partition_validation() {
        let w = wheel(3).unwrap().matroid;
        let bad = [w.set(0b000111), w.set(0b011000)];
        assert!(matches!(check_flower(&w, &bad, 3), Err(Error::InvalidPartition(_))));
        let overlap = [w.set(0b000111), w.set(0b111100)];
        assert!(matches!(check_flower(&w, &overlap, 3), Err(Error::InvalidPartition(_))));
        assert!(check_flower(&w, &[w.ground()], 3).unwrap());
    }

    #[test]
    fn flowers_of_families() {
        let w = wheel(5).unwrap();
        let c = Concatenation::from_sizes(10, 0, &[2, 2, 2, 2, 2]).unwrap();
        let f = c.flower(&w.ordering);
        assert!(check_flower_masks(&w.matroid, &f, 3));
        assert_eq!(classify(&w.matroid, &f, 3).unwrap().verdict, FlowerVerdict::Daisy);

        let s = spike(5).unwrap();
        let f = c.flower(&s.ordering);
        assert_eq!(classify(&s.matroid, &f, 3).unwrap().verdict, FlowerVerdict::Anemone);
        let sw = swirl(5).unwrap();
        let f = c.flower(&sw.ordering);
        let class = classify(&sw.matroid, &f, 3).unwrap();
        assert_eq!(class.verdict, FlowerVerdict::Daisy);
        assert!(!class.evidence.is_empty());
    }

    #[test]
    fn unbalanced_partition_of_u48_is_not_a_flower() {
        let u = uniform(4, 8).unwrap();
        let f = Flower::from_masks(8, vec![0b1, 0b1111_1110]).unwrap();
        // λ({0}) = 1, so not exactly 3-separating.
        let class = classify(&u, &f, 3).unwrap();
        assert_eq!(class.verdict, FlowerVerdict::NotAFlower);
        assert_eq!(class.evidence[0].lambda, 1);
    }

    #[test]
    fn concatenation_enumeration() {
        // Compositions of 6 into parts >= 2, counted by cut sets: 1 (single)
        // + 6*... checked against a direct count below.
        let all = concatenations(
            6,
            ConcatenationFilter {
                min_size: 2,
                max_petals: 8,
                even_sizes: false,
                start_parity: None,
            },
        );
        let mut brute = 1; // single petal
        for cuts in 1u32..64 {
            let starts: Vec<usize> = bits(cuts).collect();
            if starts.len() < 2 {
                continue;
            }
            let ok = (0..starts.len()).all(|i| {
                let next = starts[(i + 1) % starts.len()];
                (next + 6 - starts[i]) % 6 >= 2
            });
            if ok {
                brute += 1;
            }
        }
        assert_eq!(all.len(), brute);
        let c = Concatenation::from_sizes(6, 5, &[3, 3]).unwrap();
        assert_eq!(c.sizes(6), vec![3, 3]);
        assert!(Concatenation::from_sizes(6, 0, &[3, 2]).is_err());
    }

    #[test]
    fn petal_cap() {
        let u = uniform(0, 17).unwrap();
        let f = Flower::from_masks(17, (0..17).map(|i| 1 << i).collect()).unwrap();
        assert!(matches!(classify(&u, &f, 1), Err(Error::TooManyPetals { .. })));
    }
}
