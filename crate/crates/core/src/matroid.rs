//! The matroid kernel.
//!
//! A [`Matroid`] is stored as its explicit basis family together with a rank
//! table indexed by subset mask. Both are computed once at construction, so
//! every query after that is a table lookup. Ground sets are capped at
//! [`MAX_ELEMENTS`] elements, which keeps the table at most 1 MiB.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::bitset::{bits, full_mask, k_subsets, mask_to_vec, popcount, ElementSet};
use crate::error::{Error, Result, MAX_AXIOM_CHECK, MAX_BASES, MAX_ELEMENTS};

#[derive(Clone)]
pub struct Matroid {
    inner: Arc<Inner>,
    label: String,
}

struct Inner {
    n: usize,
    rank: usize,
    bases: Vec<u32>,
    rank_table: Vec<u8>,
    circuits: OnceLock<Vec<u32>>,
    cocircuits: OnceLock<Vec<u32>>,
}

/// A failed basis exchange: removing `x` from `from` cannot be repaired by any
/// element of `other`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeViolation {
    pub from: Vec<usize>,
    pub other: Vec<usize>,
    pub x: usize,
}

/// Result of [`Matroid::minor`]. `kept[i]` is the original label of the
/// minor's element `i`.
#[derive(Debug, Clone)]
pub struct Minor {
    pub matroid: Matroid,
    pub kept: Vec<usize>,
    /// Set when every element was deleted or contracted.
    pub empty: bool,
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ELEMENTS {
        Err(Error::SizeCap {
            n,
            cap: MAX_ELEMENTS,
        })
    } else {
        Ok(())
    }
}

impl Matroid {
    /// Builds a matroid from an explicit basis family given as masks.
    ///
    /// The family is checked for being nonempty and equicardinal only; basis
    /// exchange is left to [`Matroid::validate_axioms`], so corrupted
    /// families can still be represented and inspected.
    pub fn from_basis_masks(n: usize, mut bases: Vec<u32>, label: impl Into<String>) -> Result<Self> {
        check_size(n)?;
        if bases.is_empty() {
            return Err(Error::EmptyBasisFamily);
        }
        bases.sort_unstable();
        bases.dedup();
        if bases.len() > MAX_BASES {
            return Err(Error::TooManyBases {
                count: bases.len(),
                cap: MAX_BASES,
            });
        }
        let ground = full_mask(n);
        if let Some(&b) = bases.iter().find(|&&b| b & !ground != 0) {
            return Err(Error::ElementOutOfRange {
                element: (b & !ground).trailing_zeros() as usize,
                n,
            });
        }
        let r = popcount(bases[0]);
        if let Some(&b) = bases.iter().find(|&&b| popcount(b) != r) {
            return Err(Error::UnequalBasisSizes {
                first: r,
                other: popcount(b),
            });
        }

        let size = 1usize << n;
        let mut indep = vec![false; size];
        for &b in &bases {
            indep[b as usize] = true;
        }
        // Down-close: a set is independent when some one-element superset is.
        for mask in (0..size).rev() {
            if indep[mask] {
                continue;
            }
            let missing = !(mask as u32) & ground;
            indep[mask] = bits(missing).any(|e| indep[mask | (1 << e)]);
        }
        let rank_table = rank_table_from_independence(n, &indep);
        Ok(Self::assemble(n, r, bases, rank_table, label.into()))
    }

    /// Builds a matroid from a complete independence table.
    pub(crate) fn from_independence(n: usize, indep: &[bool], label: impl Into<String>) -> Result<Self> {
        check_size(n)?;
        let rank_table = rank_table_from_independence(n, indep);
        Self::from_rank_table(n, rank_table, label)
    }

    /// Builds a matroid from a complete rank table; bases are the sets whose
    /// size and rank both equal the rank of the ground set.
    pub(crate) fn from_rank_table(n: usize, rank_table: Vec<u8>, label: impl Into<String>) -> Result<Self> {
        check_size(n)?;
        debug_assert_eq!(rank_table.len(), 1 << n);
        let r = rank_table[full_mask(n) as usize] as usize;
        let bases: Vec<u32> = k_subsets(n, r)
            .filter(|&b| rank_table[b as usize] as usize == r)
            .collect();
        if bases.len() > MAX_BASES {
            return Err(Error::TooManyBases {
                count: bases.len(),
                cap: MAX_BASES,
            });
        }
        Ok(Self::assemble(n, r, bases, rank_table, label.into()))
    }

    fn assemble(n: usize, rank: usize, bases: Vec<u32>, rank_table: Vec<u8>, label: String) -> Self {
        Self {
            inner: Arc::new(Inner {
                n,
                rank,
                bases,
                rank_table,
                circuits: OnceLock::new(),
                cocircuits: OnceLock::new(),
            }),
            label,
        }
    }

    /// Builds a matroid from bases given as element lists.
    pub fn from_bases(n: usize, bases: &[Vec<usize>], label: impl Into<String>) -> Result<Self> {
        check_size(n)?;
        let masks = bases
            .iter()
            .map(|b| crate::bitset::mask_from_elements(b, n))
            .collect::<Result<Vec<_>>>()?;
        Self::from_basis_masks(n, masks, label)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// Rank of the whole matroid.
    #[inline]
    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    /// Rank of the dual matroid.
    #[inline]
    pub fn corank(&self) -> usize {
        self.inner.n - self.inner.rank
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Bases as sorted masks.
    pub fn bases(&self) -> &[u32] {
        &self.inner.bases
    }

    pub fn basis_sets(&self) -> Vec<ElementSet> {
        self.bases().iter().map(|&b| self.set(b)).collect()
    }

    #[inline]
    pub fn ground_mask(&self) -> u32 {
        full_mask(self.n())
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.n())
    }

    /// Wraps a mask over this matroid's ground set.
    pub fn set(&self, mask: u32) -> ElementSet {
        ElementSet::from_mask(self.n(), mask).expect("mask outside ground set")
    }

    pub fn set_of(&self, elements: &[usize]) -> Result<ElementSet> {
        ElementSet::from_elements(self.n(), elements)
    }

    pub fn check_universe(&self, x: &ElementSet) -> Result<()> {
        if x.universe() != self.n() {
            Err(Error::UniverseMismatch {
                expected: self.n(),
                found: x.universe(),
            })
        } else {
            Ok(())
        }
    }

    // Mask-level queries. Masks must lie inside the ground set.

    #[inline]
    pub fn rank_mask(&self, mask: u32) -> usize {
        self.inner.rank_table[mask as usize] as usize
    }

    #[inline]
    pub fn corank_mask(&self, mask: u32) -> usize {
        popcount(mask) + self.rank_mask(self.ground_mask() & !mask) - self.rank()
    }

    #[inline]
    pub fn is_independent_mask(&self, mask: u32) -> bool {
        self.rank_mask(mask) == popcount(mask)
    }

    #[inline]
    pub fn is_coindependent_mask(&self, mask: u32) -> bool {
        self.corank_mask(mask) == popcount(mask)
    }

    pub fn is_basis_mask(&self, mask: u32) -> bool {
        self.inner.bases.binary_search(&mask).is_ok()
    }

    pub fn closure_mask(&self, mask: u32) -> u32 {
        let r = self.rank_mask(mask);
        let outside = self.ground_mask() & !mask;
        bits(outside)
            .filter(|&e| self.rank_mask(mask | (1 << e)) == r)
            .fold(mask, |acc, e| acc | (1 << e))
    }

    pub fn coclosure_mask(&self, mask: u32) -> u32 {
        let r = self.corank_mask(mask);
        let outside = self.ground_mask() & !mask;
        bits(outside)
            .filter(|&e| self.corank_mask(mask | (1 << e)) == r)
            .fold(mask, |acc, e| acc | (1 << e))
    }

    /// Minimal dependent: dependent, and dropping any element leaves it independent.
    pub fn is_circuit_mask(&self, mask: u32) -> bool {
        let size = popcount(mask);
        size > 0
            && self.rank_mask(mask) + 1 == size
            && bits(mask).all(|e| self.rank_mask(mask & !(1 << e)) + 1 == size)
    }

    pub fn is_cocircuit_mask(&self, mask: u32) -> bool {
        let size = popcount(mask);
        size > 0
            && self.corank_mask(mask) + 1 == size
            && bits(mask).all(|e| self.corank_mask(mask & !(1 << e)) + 1 == size)
    }

    /// All circuits, as sorted masks.
    pub fn circuit_masks(&self) -> &[u32] {
        self.inner.circuits.get_or_init(|| {
            (1..=self.ground_mask())
                .filter(|&m| self.is_circuit_mask(m))
                .collect()
        })
    }

    /// All cocircuits, as sorted masks.
    pub fn cocircuit_masks(&self) -> &[u32] {
        self.inner.cocircuits.get_or_init(|| {
            (1..=self.ground_mask())
                .filter(|&m| self.is_cocircuit_mask(m))
                .collect()
        })
    }

    pub fn circuits_of_size(&self, k: usize) -> Vec<u32> {
        self.circuit_masks()
            .iter()
            .copied()
            .filter(|&c| popcount(c) == k)
            .collect()
    }

    pub fn cocircuits_of_size(&self, k: usize) -> Vec<u32> {
        self.cocircuit_masks()
            .iter()
            .copied()
            .filter(|&c| popcount(c) == k)
            .collect()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_mask(1 << e) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.corank_mask(1 << e) == 0
    }

    // Checked queries over ElementSet.

    pub fn rank_of(&self, x: &ElementSet) -> Result<usize> {
        self.check_universe(x)?;
        Ok(self.rank_mask(x.mask()))
    }

    pub fn corank_of(&self, x: &ElementSet) -> Result<usize> {
        self.check_universe(x)?;
        Ok(self.corank_mask(x.mask()))
    }

    pub fn closure(&self, x: &ElementSet) -> Result<ElementSet> {
        self.check_universe(x)?;
        Ok(self.set(self.closure_mask(x.mask())))
    }

    pub fn coclosure(&self, x: &ElementSet) -> Result<ElementSet> {
        self.check_universe(x)?;
        Ok(self.set(self.coclosure_mask(x.mask())))
    }

    pub fn is_circuit(&self, x: &ElementSet) -> Result<bool> {
        self.check_universe(x)?;
        Ok(self.is_circuit_mask(x.mask()))
    }

    pub fn is_cocircuit(&self, x: &ElementSet) -> Result<bool> {
        self.check_universe(x)?;
        Ok(self.is_cocircuit_mask(x.mask()))
    }

    pub fn circuits(&self) -> Vec<ElementSet> {
        self.circuit_masks().iter().map(|&c| self.set(c)).collect()
    }

    pub fn cocircuits(&self) -> Vec<ElementSet> {
        self.cocircuit_masks().iter().map(|&c| self.set(c)).collect()
    }

    pub fn dual(&self) -> Matroid {
        let n = self.n();
        let ground = self.ground_mask();
        let table: Vec<u8> = (0..=ground)
            .map(|m| self.corank_mask(m) as u8)
            .collect();
        let mut bases: Vec<u32> = self.bases().iter().map(|&b| ground & !b).collect();
        bases.sort_unstable();
        let label = match self.label.strip_prefix("dual(").and_then(|l| l.strip_suffix(')')) {
            Some(inner) => inner.to_string(),
            None => format!("dual({})", self.label),
        };
        Self::assemble(n, n - self.rank(), bases, table, label)
    }

    /// Deletes `delete` and contracts `contract`, relabelling the survivors
    /// to `0..n'` in increasing order of their original labels.
    pub fn minor(&self, delete: &ElementSet, contract: &ElementSet) -> Result<Minor> {
        self.check_universe(delete)?;
        self.check_universe(contract)?;
        let overlap = delete.mask() & contract.mask();
        if overlap != 0 {
            return Err(Error::Overlap(mask_to_vec(overlap)));
        }
        Ok(self.minor_masks(delete.mask(), contract.mask()))
    }

    pub(crate) fn minor_masks(&self, delete: u32, contract: u32) -> Minor {
        let kept: Vec<usize> = bits(self.ground_mask() & !delete & !contract).collect();
        let m = kept.len();
        let base = self.rank_mask(contract);
        let size = 1usize << m;
        let mut old_of = vec![contract; size];
        let mut table = vec![0u8; size];
        for y in 1..size {
            let low = y.trailing_zeros() as usize;
            old_of[y] = old_of[y & (y - 1)] | (1 << kept[low]);
            table[y] = (self.rank_mask(old_of[y]) - base) as u8;
        }
        let label = format!("minor({})", self.label);
        let matroid = Self::from_rank_table(m, table, label).expect("minor of a capped matroid");
        Minor {
            matroid,
            kept,
            empty: m == 0,
        }
    }

    pub fn delete(&self, delete: &ElementSet) -> Result<Minor> {
        self.minor(delete, &ElementSet::empty(self.n()))
    }

    pub fn contract(&self, contract: &ElementSet) -> Result<Minor> {
        self.minor(&ElementSet::empty(self.n()), contract)
    }

    /// First failure of the basis-exchange axiom, if any.
    pub fn exchange_violation(&self) -> Result<Option<ExchangeViolation>> {
        if self.n() > MAX_AXIOM_CHECK {
            return Err(Error::SizeCap {
                n: self.n(),
                cap: MAX_AXIOM_CHECK,
            });
        }
        let mut member = vec![false; 1 << self.n()];
        for &b in self.bases() {
            member[b as usize] = true;
        }
        for &b1 in self.bases() {
            for &b2 in self.bases() {
                for x in bits(b1 & !b2) {
                    let without = b1 & !(1 << x);
                    let repaired = bits(b2 & !b1).any(|y| member[(without | (1 << y)) as usize]);
                    if !repaired {
                        return Ok(Some(ExchangeViolation {
                            from: mask_to_vec(b1),
                            other: mask_to_vec(b2),
                            x,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    /// True iff the basis family satisfies basis exchange.
    pub fn validate_axioms(&self) -> Result<bool> {
        Ok(self.exchange_violation()?.is_none())
    }

    /// Copy with one basis removed; used for fault injection.
    pub fn without_basis(&self, basis: u32) -> Result<Matroid> {
        let bases: Vec<u32> = self.bases().iter().copied().filter(|&b| b != basis).collect();
        Self::from_basis_masks(self.n(), bases, format!("{}-minus-basis", self.label))
    }
}

/// Extensional equality: same ground set size and the same bases.
impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.bases() == other.bases()
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("label", &self.label)
            .field("n", &self.n())
            .field("rank", &self.rank())
            .field("bases", &self.bases().len())
            .finish()
    }
}

/// Rank table from an independence table: independent sets have rank equal to
/// their size, anything else has the largest rank among its one-smaller subsets.
fn rank_table_from_independence(n: usize, indep: &[bool]) -> Vec<u8> {
    let size = 1usize << n;
    let mut table = vec![0u8; size];
    for mask in 1..size {
        table[mask] = if indep[mask] {
            popcount(mask as u32) as u8
        } else {
            bits(mask as u32)
                .map(|e| table[mask & !(1 << e)])
                .max()
                .unwrap_or(0)
        };
    }
    table
}
