//! Building matroids from bases, circuits, matrices over GF(p) and graphs,
//! plus the JSON matroid file format.
//!
//! ```json
//! {"name": "wheel(3)", "n": 6,
//!  "repr": {"kind": "graph", "vertices": 4, "edges": [[0,1],[1,2]]}}
//! ```
//!
//! Sets are sorted integer arrays. The linear kind carries `"p"` and a
//! row-major `"matrix"` whose rows all have `n` entries.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bitset::{full_mask, k_subsets, mask_from_elements, mask_to_vec, popcount};
use crate::error::{Error, Result, MAX_ELEMENTS};
use crate::matroid::Matroid;

/// Modulus used for every linear realization built by this crate.
pub const DEFAULT_PRIME: u64 = 1009;

/// Column vectors over GF(p); column `j` represents element `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRep {
    p: u64,
    rows: usize,
    columns: Vec<Vec<u64>>,
}

impl LinearRep {
    pub fn new(p: u64, rows: usize, columns: Vec<Vec<u64>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::Format(format!(
                "column of length {} in a {rows}-row matrix",
                bad.len()
            )));
        }
        let columns = columns
            .into_iter()
            .map(|c| c.into_iter().map(|v| v % p).collect())
            .collect();
        Ok(Self { p, rows, columns })
    }

    /// From a row-major matrix with `n` columns.
    pub fn from_rows(p: u64, n: usize, matrix: &[Vec<u64>]) -> Result<Self> {
        if let Some(bad) = matrix.iter().find(|row| row.len() != n) {
            return Err(Error::ColumnCount {
                expected: n,
                found: bad.len(),
            });
        }
        let columns = (0..n)
            .map(|j| matrix.iter().map(|row| row[j]).collect())
            .collect();
        Self::new(p, matrix.len(), columns)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| self.columns.iter().map(|c| c[i]).collect())
            .collect()
    }

    /// Rank over GF(p) of the columns selected by `mask`.
    pub fn rank_of_mask(&self, mask: u32) -> usize {
        let vectors: Vec<Vec<u64>> = crate::bitset::bits(mask)
            .map(|j| self.columns[j].clone())
            .collect();
        rank_mod_p(vectors, self.p)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Rank of a list of equal-length vectors over GF(p), by elimination.
pub fn rank_mod_p(mut vectors: Vec<Vec<u64>>, p: u64) -> usize {
    let len = vectors.first().map_or(0, Vec::len);
    let mut rank = 0;
    for coord in 0..len {
        let Some(pivot) = (rank..vectors.len()).find(|&i| vectors[i][coord] != 0) else {
            continue;
        };
        vectors.swap(rank, pivot);
        let inv = pow_mod(vectors[rank][coord], p - 2, p);
        for v in vectors[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = vectors[rank].clone();
        for (i, row) in vectors.iter_mut().enumerate() {
            if i == rank || row[coord] == 0 {
                continue;
            }
            let factor = row[coord];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + p - factor * y % p) % p;
            }
        }
        rank += 1;
        if rank == vectors.len() {
            break;
        }
    }
    rank
}

/// The kind-specific part of a matroid file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MatroidRepr {
    Bases {
        bases: Vec<Vec<usize>>,
    },
    Circuits {
        circuits: Vec<Vec<usize>>,
    },
    Linear {
        p: u64,
        matrix: Vec<Vec<u64>>,
    },
    Graph {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// On-disk matroid document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidFile {
    pub name: String,
    pub n: usize,
    pub repr: MatroidRepr,
}

impl MatroidFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("matroid file serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Format(format!("{}: {e}", path.as_ref().display())))?;
        Self::from_json(&text)
    }

    /// Basis-list document for any matroid.
    pub fn from_matroid(m: &Matroid) -> Self {
        Self {
            name: m.label().to_string(),
            n: m.n(),
            repr: MatroidRepr::Bases {
                bases: m.bases().iter().map(|&b| mask_to_vec(b)).collect(),
            },
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        construct(self.n, &self.repr, &self.name)
    }
}

/// Builds a matroid on `n` elements from any supported representation.
pub fn construct(n: usize, repr: &MatroidRepr, label: &str) -> Result<Matroid> {
    if n > MAX_ELEMENTS {
        return Err(Error::SizeCap {
            n,
            cap: MAX_ELEMENTS,
        });
    }
    match repr {
        MatroidRepr::Bases { bases } => Matroid::from_bases(n, bases, label),
        MatroidRepr::Circuits { circuits } => from_circuits(n, circuits, label),
        MatroidRepr::Linear { p, matrix } => {
            let rep = LinearRep::from_rows(*p, n, matrix)?;
            from_linear(&rep, label)
        }
        MatroidRepr::Graph { vertices, edges } => {
            if edges.len() != n {
                return Err(Error::Format(format!(
                    "graph has {} edges but n = {n}",
                    edges.len()
                )));
            }
            from_graph(*vertices, edges, label)
        }
    }
}

/// Independent sets are those containing no listed circuit.
pub fn from_circuits(n: usize, circuits: &[Vec<usize>], label: &str) -> Result<Matroid> {
    if n > MAX_ELEMENTS {
        return Err(Error::SizeCap {
            n,
            cap: MAX_ELEMENTS,
        });
    }
    let masks = circuits
        .iter()
        .map(|c| mask_from_elements(c, n))
        .collect::<Result<Vec<u32>>>()?;
    if masks.contains(&0) {
        return Err(Error::EmptyCircuit);
    }
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            if i != j && a & !b == 0 && (a != b || i < j) {
                return Err(Error::CircuitsNotIncomparable {
                    smaller: mask_to_vec(a),
                    larger: mask_to_vec(b),
                });
            }
        }
    }
    let size = 1usize << n;
    let mut dependent = vec![false; size];
    for &c in &masks {
        dependent[c as usize] = true;
    }
    for mask in 1..size {
        if !dependent[mask] {
            let m = mask as u32;
            dependent[mask] = crate::bitset::bits(m).any(|e| dependent[(m & !(1 << e)) as usize]);
        }
    }
    let indep: Vec<bool> = dependent.iter().map(|d| !d).collect();
    Matroid::from_independence(n, &indep, label)
}

/// Independence is linear independence of columns over GF(p).
pub fn from_linear(rep: &LinearRep, label: &str) -> Result<Matroid> {
    let n = rep.n();
    if n > MAX_ELEMENTS {
        return Err(Error::SizeCap {
            n,
            cap: MAX_ELEMENTS,
        });
    }
    let r = rep.rank_of_mask(full_mask(n));
    let bases: Vec<u32> = k_subsets(n, r)
        .filter(|&b| rep.rank_of_mask(b) == r)
        .collect();
    Matroid::from_basis_masks(n, bases, label)
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

/// Whether the edges selected by `mask` form a forest. Loops never do.
pub fn is_forest(vertices: usize, edges: &[(usize, usize)], mask: u32) -> bool {
    let mut parent: Vec<usize> = (0..vertices).collect();
    for e in crate::bitset::bits(mask) {
        let (u, v) = edges[e];
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru] = rv;
    }
    true
}

/// Cycle matroid: edge `i` is element `i`; loops and parallel edges allowed.
pub fn from_graph(vertices: usize, edges: &[(usize, usize)], label: &str) -> Result<Matroid> {
    let n = edges.len();
    if n > MAX_ELEMENTS {
        return Err(Error::SizeCap {
            n,
            cap: MAX_ELEMENTS,
        });
    }
    if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
        return Err(Error::ElementOutOfRange {
            element: u.max(v),
            n: vertices,
        });
    }
    let mut parent: Vec<usize> = (0..vertices).collect();
    let mut r = 0;
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            r += 1;
        }
    }
    let bases: Vec<u32> = k_subsets(n, r)
        .filter(|&b| popcount(b) == r && is_forest(vertices, edges, b))
        .collect();
    Matroid::from_basis_masks(n, bases, label)
}
