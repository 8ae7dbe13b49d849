//! Simplicial complexes on at most 16 vertices, Stanley–Reisner correspondence,
//! and Betti numbers of squarefree quotients via Hochster's formula.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::Field;
use crate::linalg::integer_rank;
use crate::monomial_ideal::MonomialIdeal;
use crate::{Error, Result};

/// Largest vertex count for which faces are enumerated.
pub const MAX_VERTICES: usize = 16;

/// A simplicial complex stored by its facets (vertex bitmasks).
///
/// The void complex has no facets; `{∅}` has the single facet `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<u32>,
}

fn maximal(mut sets: Vec<u32>) -> Vec<u32> {
    sets.sort_by_key(|s| core::cmp::Reverse(s.count_ones()));
    sets.dedup();
    let mut out: Vec<u32> = Vec::new();
    for s in sets {
        if !out.iter().any(|&f| s & !f == 0) {
            out.push(s);
        }
    }
    out.sort();
    out
}

impl SimplicialComplex {
    pub fn from_faces(n: usize, faces: Vec<u32>) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        SimplicialComplex {
            n,
            facets: maximal(faces),
        }
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex::from_faces(n, Vec::new())
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex::from_faces(n, alloc::vec![(1u32 << n) - 1])
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[u32] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_face(&self, s: u32) -> bool {
        self.facets.iter().any(|&f| s & !f == 0)
    }

    /// All faces, sorted by size then value.
    pub fn faces(&self) -> Vec<u32> {
        let mut set = alloc::collections::BTreeSet::new();
        for &f in &self.facets {
            // enumerate the submasks of f
            let mut s = f;
            loop {
                set.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        let mut out: Vec<u32> = set.into_iter().collect();
        out.sort_by_key(|s| (s.count_ones(), *s));
        out
    }

    /// Induced subcomplex on the vertex set `sigma`.
    pub fn restrict(&self, sigma: u32) -> SimplicialComplex {
        SimplicialComplex {
            n: self.n,
            facets: maximal(self.facets.iter().map(|f| f & sigma).collect()),
        }
    }

    /// Minimal non-faces, as a squarefree monomial ideal.
    pub fn stanley_reisner_ideal(&self) -> MonomialIdeal {
        let non_faces: Vec<u32> = (0u32..1 << self.n).filter(|&s| !self.is_face(s)).collect();
        MonomialIdeal::from_masks(self.n, &non_faces)
    }

    /// Dimensions of reduced homology `H̃_d` for `d = -1, 0, …`; entry `k` is `H̃_{k-1}`.
    pub fn reduced_homology(&self, field: Field) -> Vec<usize> {
        if self.is_void() {
            return Vec::new();
        }
        let faces = self.faces();
        let top = faces.last().map_or(0, |f| f.count_ones() as usize);
        let by_size: Vec<Vec<u32>> = (0..=top)
            .map(|k| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect())
            .collect();
        // rank of ∂_k : C_{k-1} → C_{k-2} (faces of size k → size k-1)
        let mut ranks = alloc::vec![0usize; top + 2];
        for k in 1..=top {
            let rows = boundary_matrix(&by_size[k], &by_size[k - 1]);
            ranks[k] = integer_rank(&rows, by_size[k - 1].len(), field);
        }
        (0..=top).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect()
    }
}

/// Rows indexed by `src`, columns by `dst`, entry the incidence sign.
fn boundary_matrix(src: &[u32], dst: &[u32]) -> Vec<Vec<i64>> {
    src.iter()
        .map(|&s| {
            let mut row = alloc::vec![0i64; dst.len()];
            let mut pos = 0;
            for v in 0..32 {
                if s & (1 << v) == 0 {
                    continue;
                }
                let t = s & !(1 << v);
                if let Ok(i) = dst.binary_search(&t) {
                    row[i] = if pos % 2 == 0 { 1 } else { -1 };
                }
                pos += 1;
            }
            row
        })
        .collect()
}

/// The complex whose faces are the squarefree monomials outside `ideal`.
pub fn stanley_reisner(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !ideal.is_squarefree() {
        return Err(Error::InvalidInput(
            "Stanley-Reisner complex needs a squarefree ideal".into(),
        ));
    }
    let n = ideal.nvars();
    if n > MAX_VERTICES {
        return Err(Error::UnsupportedInput(alloc::format!(
            "{n} variables exceeds the limit of {MAX_VERTICES}"
        )));
    }
    let masks = ideal.masks();
    let faces = (0u32..1 << n)
        .filter(|&s| !masks.iter().any(|&g| g & !s == 0))
        .collect();
    Ok(SimplicialComplex::from_faces(n, faces))
}

/// Multigraded Betti numbers `β_{i,σ}` of `R/I`, indexed by homological degree
/// of the quotient (`β_{0,∅} = 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, sigma: u32) -> usize {
        self.entries.get(&(i, sigma)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.entries.iter().map(|(&(i, s), &b)| (i, s, b))
    }

    /// Total `β_i(R/I)`.
    pub fn quotient(&self, i: usize) -> usize {
        self.entries.iter().filter(|((j, _), _)| *j == i).map(|(_, b)| b).sum()
    }

    /// Total `β_i(I) = β_{i+1}(R/I)`.
    pub fn ideal(&self, i: usize) -> usize {
        self.quotient(i + 1)
    }

    /// Graded `β_{i,j}(R/I)` summed over `|σ| = j`.
    pub fn graded(&self, i: usize, j: usize) -> usize {
        self.entries
            .iter()
            .filter(|((k, s), _)| *k == i && s.count_ones() as usize == j)
            .map(|(_, b)| b)
            .sum()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `Σ (-1)^i β_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|((i, _), &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }
}

/// `β_{i,σ}(R/I) = dim H̃_{|σ|-i-1}(Δ_σ)`.
pub fn hochster_betti(ideal: &MonomialIdeal, field: Field) -> Result<BettiTable> {
    if ideal.is_unit() {
        return Err(Error::InvalidInput("R/I is zero for the unit ideal".into()));
    }
    let delta = stanley_reisner(ideal)?;
    let n = ideal.nvars();
    let mut entries = BTreeMap::new();
    for sigma in 0u32..1 << n {
        let h = delta.restrict(sigma).reduced_homology(field);
        let size = sigma.count_ones() as usize;
        for (k, &dim) in h.iter().enumerate() {
            // k indexes H̃_{k-1}: |σ| - i - 1 = k - 1
            if dim > 0 && k <= size {
                entries.insert((size - k, sigma), dim);
            }
        }
    }
    Ok(BettiTable { n, entries })
}

/// `pd_R(R/I)` for a squarefree proper `I`.
pub fn projective_dimension(ideal: &MonomialIdeal, field: Field) -> Result<usize> {
    Ok(hochster_betti(ideal, field)?.projective_dimension())
}

/// `depth R/I = n − pd_R(R/I)`.
pub fn depth_quotient(ideal: &MonomialIdeal, field: Field) -> Result<usize> {
    Ok(ideal.nvars() - projective_dimension(ideal, field)?)
}
