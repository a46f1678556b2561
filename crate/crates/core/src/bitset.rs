//! Subsets of a small ground set packed into a single machine word.
//!
//! Every matroid here lives on `{0, ..., n-1}` with `n <= 20`, so a subset is
//! a `u32` mask. [`ElementSet`] pairs the mask with its universe size so that
//! sets from different ground sets are never mixed silently; the raw-mask
//! helpers below are what the hot loops use.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, MAX_ELEMENTS};

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn popcount(mask: u32) -> usize {
    mask.count_ones() as usize
}

/// Iterates the positions of the set bits of `mask`, lowest first.
pub fn bits(mask: u32) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(b)
        }
    })
}

pub fn mask_from_elements(elements: &[usize], n: usize) -> Result<u32> {
    let mut mask = 0u32;
    for &e in elements {
        if e >= n {
            return Err(Error::ElementOutOfRange { element: e, n });
        }
        mask |= 1 << e;
    }
    Ok(mask)
}

pub fn mask_to_vec(mask: u32) -> Vec<usize> {
    bits(mask).collect()
}

/// All `k`-subsets of `{0, ..., n-1}` in increasing numeric order (Gosper's hack).
pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    let next = if k > n {
        None
    } else if k == 0 {
        Some(0)
    } else {
        Some(full_mask(k))
    };
    KSubsets {
        limit: 1u64 << n,
        next,
    }
}

pub struct KSubsets {
    limit: u64,
    next: Option<u32>,
}

impl Iterator for KSubsets {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let cur = self.next?;
        if cur == 0 {
            self.next = None;
            return Some(0);
        }
        let c = cur as u64;
        let lowest = c & c.wrapping_neg();
        let ripple = c + lowest;
        let succ = (((ripple ^ c) >> 2) / lowest) | ripple;
        self.next = if succ < self.limit {
            Some(succ as u32)
        } else {
            None
        };
        Some(cur)
    }
}

/// All submasks of `mask`, including `mask` itself and the empty mask.
pub fn submasks(mask: u32) -> impl Iterator<Item = u32> {
    let mut cur = Some(mask);
    std::iter::from_fn(move || {
        let s = cur?;
        cur = if s == 0 { None } else { Some((s - 1) & mask) };
        Some(s)
    })
}

/// A subset of the ground set `{0, ..., universe-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    universe: u8,
    mask: u32,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        assert!(universe <= MAX_ELEMENTS, "universe size {universe} exceeds cap");
        Self {
            universe: universe as u8,
            mask: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        assert!(universe <= MAX_ELEMENTS, "universe size {universe} exceeds cap");
        Self {
            universe: universe as u8,
            mask: full_mask(universe),
        }
    }

    pub fn from_mask(universe: usize, mask: u32) -> Result<Self> {
        if universe > MAX_ELEMENTS {
            return Err(Error::SizeCap {
                n: universe,
                cap: MAX_ELEMENTS,
            });
        }
        if mask & !full_mask(universe) != 0 {
            let stray = (mask & !full_mask(universe)).trailing_zeros() as usize;
            return Err(Error::ElementOutOfRange {
                element: stray,
                n: universe,
            });
        }
        Ok(Self {
            universe: universe as u8,
            mask,
        })
    }

    pub fn from_elements(universe: usize, elements: &[usize]) -> Result<Self> {
        if universe > MAX_ELEMENTS {
            return Err(Error::SizeCap {
                n: universe,
                cap: MAX_ELEMENTS,
            });
        }
        Ok(Self {
            universe: universe as u8,
            mask: mask_from_elements(elements, universe)?,
        })
    }

    pub fn singleton(universe: usize, e: usize) -> Result<Self> {
        Self::from_elements(universe, &[e])
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        self.mask
    }

    #[inline]
    pub fn len(&self) -> usize {
        popcount(self.mask)
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < self.universe() && self.mask >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < self.universe(), "element {e} outside universe");
        self.mask |= 1 << e;
    }

    pub fn remove(&mut self, e: usize) {
        if e < self.universe() {
            self.mask &= !(1 << e);
        }
    }

    pub fn with(mut self, e: usize) -> Self {
        self.insert(e);
        self
    }

    pub fn without(mut self, e: usize) -> Self {
        self.remove(e);
        self
    }

    pub fn union(&self, other: &Self) -> Self {
        self.same_universe(other);
        Self {
            universe: self.universe,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.same_universe(other);
        Self {
            universe: self.universe,
            mask: self.mask & other.mask,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.same_universe(other);
        Self {
            universe: self.universe,
            mask: self.mask & !other.mask,
        }
    }

    pub fn complement(&self) -> Self {
        Self {
            universe: self.universe,
            mask: !self.mask & full_mask(self.universe()),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.mask & !other.mask == 0
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.same_universe(other);
        self.mask & other.mask == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> {
        bits(self.mask)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        mask_to_vec(self.mask)
    }

    fn same_universe(&self, other: &Self) {
        assert_eq!(
            self.universe, other.universe,
            "set algebra across different universes"
        );
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(&rhs)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(&rhs)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(&rhs)
    }
}

impl Not for ElementSet {
    type Output = ElementSet;
    fn not(self) -> Self {
        self.complement()
    }
}

/// Serialized as a sorted array of elements; the universe is carried by the
/// enclosing document.
impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

/// Deserialized sets get the smallest universe that contains them; callers
/// re-home them with [`ElementSet::from_elements`] when the ground set is known.
impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<usize>::deserialize(d)?;
        let universe = elements.iter().max().map_or(0, |m| m + 1);
        ElementSet::from_elements(universe, &elements).map_err(serde::de::Error::custom)
    }
}
