//! Submodules of free modules: syzygies, membership, free resolutions and the
//! Koszul-homology grade.

use alloc::vec::Vec;

use crate::groebner::{self, ModuleOrder, Vector};
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Result};

/// An element of `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleVector {
    components: Vec<Polynomial>,
}

impl FreeModuleVector {
    pub fn new(components: Vec<Polynomial>) -> Self {
        assert!(!components.is_empty(), "rank must be positive");
        FreeModuleVector { components }
    }

    pub fn zero(rank: usize, nvars: usize) -> Self {
        FreeModuleVector::new(alloc::vec![Polynomial::zero(nvars); rank])
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        FreeModuleVector::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn scale(&self, f: &Polynomial) -> Self {
        FreeModuleVector::new(self.components.iter().map(|a| a.mul(f)).collect())
    }

    /// Graded degree: the largest `deg(entry) + shift` over nonzero entries.
    fn weighted_degree(&self, shifts: &[u32]) -> u32 {
        self.components
            .iter()
            .zip(shifts)
            .filter_map(|(p, s)| p.total_degree().map(|d| d + s))
            .max()
            .unwrap_or(0)
    }
}

/// `Σ coeffs[j] · vectors[j]`.
pub fn combine(coeffs: &[Polynomial], vectors: &[FreeModuleVector]) -> FreeModuleVector {
    let rank = vectors[0].rank();
    let nvars = coeffs[0].nvars();
    let mut acc = FreeModuleVector::zero(rank, nvars);
    for (c, v) in coeffs.iter().zip(vectors) {
        if !c.is_zero() {
            acc = acc.add(&v.scale(c));
        }
    }
    acc
}

/// Generators of the kernel of `R^k → R^m`, `eⱼ ↦ vectors[j]`.
pub fn syzygies(ring: &Ring, vectors: &[FreeModuleVector]) -> Vec<FreeModuleVector> {
    let k = vectors.len();
    if k == 0 {
        return Vec::new();
    }
    let m = vectors[0].rank();
    let nvars = ring.nvars();
    let ord = ModuleOrder::new(ring.order());
    let gens: Vec<Vector> = vectors
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let mut comps = v.components.clone();
            comps.resize(m + k, Polynomial::zero(nvars));
            comps[m + j] = ring.one();
            Vector::from_components(&comps, ord)
        })
        .collect();
    groebner::groebner(&gens, ord, false)
        .iter()
        .filter(|v| v.lead_component().is_some_and(|c| c as usize >= m))
        .map(|v| FreeModuleVector::new(v.to_components(m + k, nvars).split_off(m)))
        .collect()
}

/// A submodule of `R^rank` with a Gröbner basis, for repeated membership tests.
pub struct Submodule {
    rank: usize,
    nvars: usize,
    ord: ModuleOrder,
    basis: Vec<Vector>,
}

impl Submodule {
    pub fn new(ring: &Ring, rank: usize, gens: &[FreeModuleVector]) -> Self {
        let ord = ModuleOrder::new(ring.order());
        let vecs: Vec<Vector> = gens
            .iter()
            .map(|g| Vector::from_components(&g.components, ord))
            .filter(|v| !v.is_zero())
            .collect();
        Submodule {
            rank,
            nvars: ring.nvars(),
            ord,
            basis: groebner::groebner(&vecs, ord, false),
        }
    }

    pub fn contains(&self, v: &FreeModuleVector) -> bool {
        debug_assert_eq!(v.rank(), self.rank);
        let f = Vector::from_components(&v.components, self.ord);
        groebner::normal_form(&f, &self.basis, self.ord).is_zero()
    }

    pub fn normal_form(&self, v: &FreeModuleVector) -> FreeModuleVector {
        let f = Vector::from_components(&v.components, self.ord);
        FreeModuleVector::new(groebner::normal_form(&f, &self.basis, self.ord).to_components(self.rank, self.nvars))
    }
}

/// `v ∈ ⟨gens⟩ ⊆ R^rank`.
pub fn submodule_membership(ring: &Ring, v: &FreeModuleVector, gens: &[FreeModuleVector]) -> bool {
    Submodule::new(ring, v.rank(), gens).contains(v)
}

/// A matrix of polynomials stored by columns; column `j` is the image of `eⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    columns: Vec<FreeModuleVector>,
}

impl PolyMatrix {
    pub fn new(rows: usize, columns: Vec<FreeModuleVector>) -> Self {
        assert!(columns.iter().all(|c| c.rank() == rows));
        PolyMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[FreeModuleVector] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j].components[i]
    }

    /// `self · other` (`other.rows() == self.cols()`).
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        let cols = other
            .columns
            .iter()
            .map(|c| combine(&c.components, &self.columns))
            .collect();
        PolyMatrix::new(self.rows, cols)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn has_nonzero_constant(&self) -> bool {
        self.columns.iter().any(|c| c.components.iter().any(|p| p.is_unit()))
    }
}

/// A free resolution `0 ← R/I ← R ← F₁ ← F₂ ← …`; `matrices[k]` is the map `F_{k+1} → F_k`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub matrices: Vec<PolyMatrix>,
    pub minimal: bool,
    pub truncated: bool,
}

impl Resolution {
    /// Number of nonzero maps; equals the projective dimension of `R/I` when
    /// minimal and not truncated.
    pub fn length(&self) -> usize {
        self.matrices.len()
    }

    /// Ranks of `F₀, F₁, …`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = alloc::vec![1];
        r.extend(self.matrices.iter().map(|m| m.cols()));
        r
    }

    pub fn composes_to_zero(&self) -> bool {
        self.matrices.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Greedy minimal generating set: candidates in increasing degree, kept when not
/// already in the span of those kept. Minimal for graded input.
fn minimalize(ring: &Ring, rank: usize, mut cands: Vec<FreeModuleVector>, shifts: &[u32]) -> Vec<FreeModuleVector> {
    cands.retain(|c| !c.is_zero());
    cands.sort_by_key(|c| c.weighted_degree(shifts));
    let mut kept: Vec<FreeModuleVector> = Vec::new();
    for c in cands {
        if kept.is_empty() || !Submodule::new(ring, rank, &kept).contains(&c) {
            kept.push(c);
        }
    }
    kept
}

/// Free resolution of `R/I` by iterated syzygies, minimized in each step.
pub fn free_resolution(ideal: &Ideal, max_length: usize) -> Result<Resolution> {
    if ideal.is_unit() {
        return Err(Error::InvalidInput("R/I is zero for the unit ideal".into()));
    }
    let ring = ideal.ring();
    let homogeneous = ideal.is_homogeneous();
    let mut matrices = Vec::new();
    let mut shifts: Vec<u32> = alloc::vec![0];
    let mut current: Vec<FreeModuleVector> = ideal
        .generators()
        .iter()
        .map(|g| FreeModuleVector::new(alloc::vec![g.clone()]))
        .collect();
    current = minimalize(ring, 1, current, &shifts);
    let mut truncated = false;
    while !current.is_empty() {
        if matrices.len() == max_length {
            truncated = true;
            break;
        }
        let rows = shifts.len();
        let next_shifts: Vec<u32> = current.iter().map(|c| c.weighted_degree(&shifts)).collect();
        let syz = syzygies(ring, &current);
        matrices.push(PolyMatrix::new(rows, current));
        shifts = next_shifts;
        current = minimalize(ring, shifts.len(), syz, &shifts);
    }
    let minimal = homogeneous && matrices.iter().all(|m| !m.has_nonzero_constant());
    Ok(Resolution {
        matrices,
        minimal,
        truncated,
    })
}

fn subsets_of_size(r: usize, k: usize) -> Vec<u32> {
    (0u32..1 << r).filter(|s| s.count_ones() as usize == k).collect()
}

/// Columns of the Koszul differential `K_k → K_{k-1}` on `gens`.
fn koszul_columns(ring: &Ring, gens: &[Polynomial], k: usize) -> Vec<FreeModuleVector> {
    let r = gens.len();
    let target = subsets_of_size(r, k - 1);
    subsets_of_size(r, k)
        .into_iter()
        .map(|s| {
            let mut comps = alloc::vec![ring.zero(); target.len()];
            let mut sign_pos = 0;
            for j in 0..r {
                if s & (1 << j) == 0 {
                    continue;
                }
                let t = s & !(1 << j);
                let idx = target.binary_search(&t).unwrap();
                comps[idx] = if sign_pos % 2 == 0 {
                    gens[j].clone()
                } else {
                    gens[j].neg()
                };
                sign_pos += 1;
            }
            FreeModuleVector::new(comps)
        })
        .collect()
}

/// `c · e_t` for every generator of `c` and every basis vector of `R^rank`.
fn ideal_times_free(ring: &Ring, c: &[Polynomial], rank: usize) -> Vec<FreeModuleVector> {
    let mut out = Vec::new();
    for t in 0..rank {
        for g in c {
            let mut comps = alloc::vec![ring.zero(); rank];
            comps[t] = g.clone();
            out.push(FreeModuleVector::new(comps));
        }
    }
    out
}

/// `H_k(gens; R/c) ≠ 0` for `k ≥ 1`.
fn koszul_homology_nonzero(ring: &Ring, gens: &[Polynomial], c: &[Polynomial], k: usize) -> bool {
    let r = gens.len();
    let src_rank = subsets_of_size(r, k).len();
    let cols = koszul_columns(ring, gens, k);
    // cycles mod c: u with d(u) ∈ c·F_{k-1}
    let mut rel = cols.clone();
    rel.extend(ideal_times_free(ring, c, cols[0].rank()));
    let cycles: Vec<FreeModuleVector> = syzygies(ring, &rel)
        .into_iter()
        .map(|s| FreeModuleVector::new(s.components[..src_rank].to_vec()))
        .filter(|s| !s.is_zero())
        .collect();
    if cycles.is_empty() {
        return false;
    }
    let mut bounds = if k < r {
        koszul_columns(ring, gens, k + 1)
    } else {
        Vec::new()
    };
    bounds.extend(ideal_times_free(ring, c, src_rank));
    let b = Submodule::new(ring, src_rank, &bounds);
    cycles.iter().any(|z| !b.contains(z))
}

/// `grade(⟨gens⟩, R/c) = r − max{k : H_k(gens; R/c) ≠ 0}`.
///
/// Fails with [`Error::Degenerate`] when `c + ⟨gens⟩ = ⟨1⟩`.
pub fn koszul_grade(ring: &Ring, gens: &[Polynomial], c: &Ideal) -> Result<usize> {
    let gens: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if c.with(&gens).is_unit() {
        return Err(Error::Degenerate);
    }
    if gens.is_empty() {
        return Ok(0);
    }
    let r = gens.len();
    let cg = c.groebner().to_vec();
    for k in (1..=r).rev() {
        if koszul_homology_nonzero(ring, &gens, &cg, k) {
            return Ok(r - k);
        }
    }
    Ok(r)
}
