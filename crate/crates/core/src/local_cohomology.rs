//! Local cohomology `H^i_a(R/b)` for monomial `a`, `b` through the ℤⁿ-graded
//! Čech complex.
//!
//! For squarefree data every graded piece of a localization `(R/b)[x_T^{-1}]` is
//! at most one-dimensional and depends only on the sign pattern of the degree:
//! the piece of degree `u` is nonzero iff `neg(u) ⊆ T` and
//! `neg(u) ∪ pos(u) ∪ T` is a face of the Stanley–Reisner complex of `b`.
//! So each of the `3ⁿ` patterns carries a finite cochain complex of 0/±1
//! matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Coeff, Field};
use crate::linalg::{integer_rank, Matrix};
use crate::monomial::Monomial;
use crate::monomial_ideal::MonomialIdeal;
use crate::simplicial::{stanley_reisner, SimplicialComplex};
use crate::{Error, Result};

/// Largest number of variables accepted by the pattern enumeration.
pub const MAX_VARS: usize = 12;
/// Largest generator list accepted (cells are subsets of the list).
pub const MAX_GENERATORS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Per-variable signs of a ℤⁿ-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern {
    n: u8,
    neg: u32,
    pos: u32,
}

impl SignPattern {
    pub fn new(n: usize, neg: u32, pos: u32) -> Self {
        assert!(neg & pos == 0 && n <= 32);
        SignPattern { n: n as u8, neg, pos }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut p = SignPattern::new(signs.len(), 0, 0);
        for (i, s) in signs.iter().enumerate() {
            p.set(i, *s);
        }
        p
    }

    /// Pattern of an integer degree.
    pub fn of_degree(u: &[i64]) -> Self {
        SignPattern::from_signs(
            &u.iter()
                .map(|&x| match x.cmp(&0) {
                    core::cmp::Ordering::Less => Sign::Negative,
                    core::cmp::Ordering::Equal => Sign::Zero,
                    core::cmp::Ordering::Greater => Sign::Positive,
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.n as usize
    }

    pub fn negative(&self) -> u32 {
        self.neg
    }

    pub fn positive(&self) -> u32 {
        self.pos
    }

    pub fn sign(&self, i: usize) -> Sign {
        if self.neg & (1 << i) != 0 {
            Sign::Negative
        } else if self.pos & (1 << i) != 0 {
            Sign::Positive
        } else {
            Sign::Zero
        }
    }

    fn set(&mut self, i: usize, s: Sign) {
        self.neg &= !(1 << i);
        self.pos &= !(1 << i);
        match s {
            Sign::Negative => self.neg |= 1 << i,
            Sign::Positive => self.pos |= 1 << i,
            Sign::Zero => {}
        }
    }

    /// All `3ⁿ` patterns.
    pub fn all(n: usize) -> impl Iterator<Item = SignPattern> {
        (0u32..1 << n).flat_map(move |neg| {
            let rest = ((1u32 << n) - 1) & !neg;
            let mut subs = Vec::new();
            let mut s = rest;
            loop {
                subs.push(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & rest;
            }
            subs.into_iter().rev().map(move |pos| SignPattern::new(n, neg, pos))
        })
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.nvars() {
            let c = match self.sign(i) {
                Sign::Negative => '-',
                Sign::Zero => '0',
                Sign::Positive => '+',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Cohomological dimension, with `−∞` for the vanishing case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cd {
    NegInfinity,
    Finite(usize),
}

impl Cd {
    pub fn finite(&self) -> Option<usize> {
        match self {
            Cd::Finite(c) => Some(*c),
            Cd::NegInfinity => None,
        }
    }
}

impl fmt::Display for Cd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cd::NegInfinity => write!(f, "-inf"),
            Cd::Finite(c) => write!(f, "{c}"),
        }
    }
}

/// Squarefree Čech data: generator supports and the complex of `b`.
struct CechData {
    gens: Vec<u32>,
    delta: SimplicialComplex,
    /// `T_S` for every cell `S`.
    unions: Vec<u32>,
}

impl CechData {
    fn new(gens: &[u32], delta: SimplicialComplex) -> Result<Self> {
        if gens.len() > MAX_GENERATORS {
            return Err(Error::UnsupportedInput(alloc::format!(
                "{} generators exceeds the limit of {MAX_GENERATORS}",
                gens.len()
            )));
        }
        let unions = (0u32..1 << gens.len())
            .map(|s| {
                gens.iter()
                    .enumerate()
                    .filter(|(j, _)| s & (1 << j) != 0)
                    .fold(0, |acc, (_, g)| acc | g)
            })
            .collect();
        Ok(CechData {
            gens: gens.to_vec(),
            delta,
            unions,
        })
    }

    fn live(&self, cell: u32, p: SignPattern) -> bool {
        let t = self.unions[cell as usize];
        p.neg & !t == 0 && self.delta.is_face(p.neg | p.pos | t)
    }

    /// Cheap test that no cell is live.
    fn pattern_dead(&self, p: SignPattern) -> bool {
        let all = self.unions.last().copied().unwrap_or(0);
        p.neg & !all != 0 || !self.delta.is_face(p.neg | p.pos)
    }

    fn complex(&self, p: SignPattern) -> SignPatternComplex {
        let r = self.gens.len();
        let mut cells: Vec<Vec<u32>> = alloc::vec![Vec::new(); r + 1];
        if !self.pattern_dead(p) {
            for s in 0u32..1 << r {
                if self.live(s, p) {
                    cells[s.count_ones() as usize].push(s);
                }
            }
        }
        SignPatternComplex::from_cells(p, cells)
    }

    /// The top cohomology piece (one-dimensional or zero) at a pattern.
    fn top_nonzero(&self, p: SignPattern) -> bool {
        let r = self.gens.len();
        let top = (1u32 << r) - 1;
        self.live(top, p) && (0..r).all(|j| !self.live(top & !(1 << j), p))
    }
}

/// The finite cochain complex of one sign pattern; cells are subsets of the
/// generator list and `d` is the signed inclusion `S ↦ Σ ±(S ∪ {j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPatternComplex {
    pattern: SignPattern,
    cells: Vec<Vec<u32>>,
}

fn cell_sign(s: u32, j: usize) -> i64 {
    if (s & ((1 << j) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl SignPatternComplex {
    fn from_cells(pattern: SignPattern, mut cells: Vec<Vec<u32>>) -> Self {
        for c in &mut cells {
            c.sort();
        }
        SignPatternComplex { pattern, cells }
    }

    pub fn pattern(&self) -> SignPattern {
        self.pattern
    }

    pub fn cells(&self, t: usize) -> &[u32] {
        self.cells.get(t).map_or(&[], |c| c.as_slice())
    }

    pub fn cochain_dims(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    /// `d^t` as integer rows indexed by `cells(t)`, columns by `cells(t+1)`.
    pub fn differential(&self, t: usize) -> Vec<Vec<i64>> {
        let src = self.cells(t);
        let dst = self.cells(t + 1);
        src.iter()
            .map(|&s| {
                let mut row = alloc::vec![0i64; dst.len()];
                for (k, &d) in dst.iter().enumerate() {
                    let extra = d & !s;
                    if d & s == s && extra.count_ones() == 1 {
                        row[k] = cell_sign(s, extra.trailing_zeros() as usize);
                    }
                }
                row
            })
            .collect()
    }

    /// `d^t` as a linear map `C^t → C^{t+1}` (rows indexed by `cells(t+1)`).
    fn map_matrix(&self, t: usize, field: Field) -> Matrix {
        let rows = self.differential(t);
        let mut m = Matrix::zeros(field, self.cells(t + 1).len(), self.cells(t).len());
        for (j, row) in rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, field.from_i64(v));
                }
            }
        }
        m
    }

    fn rank(&self, t: usize, field: Field) -> usize {
        integer_rank(&self.differential(t), self.cells(t + 1).len(), field)
    }

    /// `dim H^t` for every `t`.
    pub fn cohomology(&self, field: Field) -> Vec<usize> {
        let len = self.cells.len();
        let ranks: Vec<usize> = (0..len).map(|t| self.rank(t, field)).collect();
        (0..len)
            .map(|t| self.cells[t].len() - ranks[t] - if t > 0 { ranks[t - 1] } else { 0 })
            .collect()
    }

    /// `d^{t+1} ∘ d^t = 0` for all `t`.
    pub fn d_squared_zero(&self) -> bool {
        (0..self.cells.len()).all(|t| {
            let a = self.differential(t);
            let b = self.differential(t + 1);
            a.iter().all(|row| {
                (0..self.cells(t + 2).len()).all(|k| row.iter().zip(&b).map(|(x, brow)| x * brow[k]).sum::<i64>() == 0)
            })
        })
    }
}

/// Dimensions of `H^i_a(R/b)` on every sign pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyProfile {
    nvars: usize,
    generators: Vec<Monomial>,
    dims: BTreeMap<(usize, SignPattern), usize>,
    cd: Cd,
    radicalized: bool,
}

impl CohomologyProfile {
    pub fn cd(&self) -> Cd {
        self.cd
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The squarefree generators the Čech complex was built on.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Whether non-squarefree input was replaced by its radical.
    pub fn radicalized(&self) -> bool {
        self.radicalized
    }

    pub fn dim(&self, i: usize, p: SignPattern) -> usize {
        self.dims.get(&(i, p)).copied().unwrap_or(0)
    }

    pub fn is_nonzero(&self, i: usize) -> bool {
        self.dims.keys().any(|(j, _)| *j == i)
    }

    /// Nonzero pieces `(i, pattern, dim)`.
    pub fn pieces(&self) -> impl Iterator<Item = (usize, SignPattern, usize)> + '_ {
        self.dims.iter().map(|(&(i, p), &d)| (i, p, d))
    }
}

fn check_vars(n: usize) -> Result<()> {
    if n > MAX_VARS {
        return Err(Error::UnsupportedInput(alloc::format!(
            "{n} variables exceeds the limit of {MAX_VARS}"
        )));
    }
    Ok(())
}

/// Profile of `H^*` computed on an explicit list of generators of `a`
/// (duplicates and non-minimal entries allowed). Non-squarefree data is
/// replaced by its radical.
pub fn cech_profile_on(gens: &[Monomial], b: &MonomialIdeal, field: Field) -> Result<CohomologyProfile> {
    let n = b.nvars();
    check_vars(n)?;
    let radicalized = !b.is_squarefree() || gens.iter().any(|g| !g.is_squarefree());
    let sq: Vec<Monomial> = gens.iter().map(|g| Monomial::from_mask(n, g.support())).collect();
    let mut profile = CohomologyProfile {
        nvars: n,
        generators: sq.clone(),
        dims: BTreeMap::new(),
        cd: Cd::NegInfinity,
        radicalized,
    };
    if b.is_unit() || sq.iter().any(|g| g.is_one()) {
        return Ok(profile);
    }
    let delta = stanley_reisner(&b.squarefree_radical())?;
    let data = CechData::new(&sq.iter().map(|g| g.support()).collect::<Vec<_>>(), delta)?;
    let mut memo: BTreeMap<Vec<Vec<u32>>, Vec<usize>> = BTreeMap::new();
    for p in SignPattern::all(n) {
        let cx = data.complex(p);
        if cx.cells.iter().all(|c| c.is_empty()) {
            continue;
        }
        let h = memo
            .entry(cx.cells.clone())
            .or_insert_with(|| cx.cohomology(field))
            .clone();
        for (i, &d) in h.iter().enumerate() {
            if d > 0 {
                profile.dims.insert((i, p), d);
            }
        }
    }
    profile.cd = profile
        .dims
        .keys()
        .map(|(i, _)| *i)
        .max()
        .map_or(Cd::NegInfinity, Cd::Finite);
    Ok(profile)
}

/// The complex computing the graded piece of `H^*_a(R/b)` at sign pattern `p`,
/// on the squarefree parts of `gens`.
pub fn pattern_complex(gens: &[Monomial], b: &MonomialIdeal, p: SignPattern) -> Result<SignPatternComplex> {
    let n = b.nvars();
    check_vars(n)?;
    if p.nvars() != n {
        return Err(Error::InvalidInput("pattern length differs from the ring".into()));
    }
    let delta = stanley_reisner(&b.squarefree_radical())?;
    let data = CechData::new(&gens.iter().map(|g| g.support()).collect::<Vec<_>>(), delta)?;
    Ok(data.complex(p))
}

/// Profile of `H^*_a(R/b)` on the minimal generators of `rad a`.
pub fn cech_profile(a: &MonomialIdeal, b: &MonomialIdeal, field: Field) -> Result<CohomologyProfile> {
    let rad = a.squarefree_radical();
    let mut p = cech_profile_on(rad.generators(), b, field)?;
    p.radicalized |= !a.is_squarefree();
    Ok(p)
}

/// `cd(a, R/b)`.
pub fn cd_monomial(a: &MonomialIdeal, b: &MonomialIdeal, field: Field) -> Result<Cd> {
    Ok(cech_profile(a, b, field)?.cd())
}

/// `cd(a, R) = pd_R(R/a)` for a squarefree proper `a`.
pub fn cd_matches_projective_dimension(a: &MonomialIdeal, field: Field) -> Result<bool> {
    if a.is_unit() {
        return Err(Error::InvalidInput("the ideal must be proper".into()));
    }
    let cd = cd_monomial(a, &MonomialIdeal::zero(a.nvars()), field)?;
    let pd = crate::simplicial::projective_dimension(&a.squarefree_radical(), field)?;
    Ok(cd == Cd::Finite(pd))
}

/// Source signs `sign(w − v)` compatible with a target sign `sign(w)` for a
/// shift `v ≥ 0`.
fn source_signs(target: Sign, v: u32) -> &'static [Sign] {
    match (target, v) {
        (t, 0) => match t {
            Sign::Negative => &[Sign::Negative],
            Sign::Zero => &[Sign::Zero],
            Sign::Positive => &[Sign::Positive],
        },
        (Sign::Negative, _) | (Sign::Zero, _) => &[Sign::Negative],
        (Sign::Positive, 1) => &[Sign::Zero, Sign::Positive],
        (Sign::Positive, _) => &[Sign::Negative, Sign::Zero, Sign::Positive],
    }
}

fn source_patterns(q: SignPattern, v: &Monomial) -> Vec<SignPattern> {
    let n = q.nvars();
    let mut out = alloc::vec![SignPattern::new(n, 0, 0)];
    for j in 0..n {
        let opts = source_signs(q.sign(j), v.exponent(j));
        out = out
            .into_iter()
            .flat_map(|p| {
                opts.iter().map(move |&s| {
                    let mut p = p;
                    p.set(j, s);
                    p
                })
            })
            .collect();
    }
    out
}

/// Whether multiplication by `x` on `H^i_a(R/b)` is surjective.
///
/// Degreewise: for each target pattern `Q` with `H^i_Q ≠ 0` and each source
/// pattern `P` reachable by subtracting `deg x`, the chain map (identity on
/// cells live in both) must carry the cycles of `P` onto `H^i_Q`.
pub fn mult_surjective(a: &MonomialIdeal, b: &MonomialIdeal, x: &Monomial, i: usize, field: Field) -> Result<bool> {
    if !a.contains(x) {
        return Err(Error::InvalidInput("the multiplier is not in a".into()));
    }
    if !b.is_squarefree() {
        return Err(Error::UnsupportedInput(
            "multiplication maps need a squarefree module ideal".into(),
        ));
    }
    let n = b.nvars();
    check_vars(n)?;
    if b.is_unit() || a.is_unit() {
        return Ok(true);
    }
    let rad = a.squarefree_radical();
    let delta = stanley_reisner(b)?;
    let data = CechData::new(&rad.masks(), delta)?;
    for q in SignPattern::all(n) {
        let cq = data.complex(q);
        if cq.cells(i).is_empty() {
            continue;
        }
        let dq = cq.map_matrix(i, field);
        let z_q = cq.cells(i).len() - if cq.cells(i + 1).is_empty() { 0 } else { dq.rank() };
        let boundaries: Vec<Vec<Coeff>> = if i > 0 && !cq.cells(i - 1).is_empty() {
            let m = cq.map_matrix(i - 1, field);
            (0..m.cols()).map(|j| m.column(j)).collect()
        } else {
            Vec::new()
        };
        let b_rank = if boundaries.is_empty() {
            0
        } else {
            Matrix::from_columns(field, cq.cells(i).len(), &boundaries).rank()
        };
        if z_q == b_rank {
            continue;
        }
        for p in source_patterns(q, x) {
            let cp = data.complex(p);
            let cycles: Vec<Vec<Coeff>> = if cp.cells(i).is_empty() {
                Vec::new()
            } else if cp.cells(i + 1).is_empty() {
                (0..cp.cells(i).len())
                    .map(|k| {
                        let mut v = alloc::vec![field.zero(); cp.cells(i).len()];
                        v[k] = field.one();
                        v
                    })
                    .collect()
            } else {
                cp.map_matrix(i, field).nullspace()
            };
            let mut cols = boundaries.clone();
            for z in &cycles {
                let mut image = alloc::vec![field.zero(); cq.cells(i).len()];
                for (k, cell) in cp.cells(i).iter().enumerate() {
                    if let Ok(pos) = cq.cells(i).binary_search(cell) {
                        image[pos] = z[k].clone();
                    }
                }
                cols.push(image);
            }
            let rank = if cols.is_empty() {
                0
            } else {
                Matrix::from_columns(field, cq.cells(i).len(), &cols).rank()
            };
            if rank < z_q {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of [`top_sequence_exactness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    pub exact_middle: bool,
    pub exact_right: bool,
    /// `(pattern of w, which position failed)`.
    pub failures: Vec<(SignPattern, &'static str)>,
    /// Whether non-squarefree generators or `b` were replaced by radicals.
    pub radicalized: bool,
}

impl ExactnessReport {
    pub fn is_exact(&self) -> bool {
        self.exact_middle && self.exact_right
    }
}

/// Per-coordinate sign triples `(sign(w−v), sign(w), sign(w+v))` for `v ∈ {0, 1}`.
fn sign_triples(v: bool) -> &'static [(Sign, Sign, Sign)] {
    use Sign::*;
    if v {
        &[
            (Negative, Negative, Negative),
            (Negative, Negative, Zero),
            (Negative, Zero, Positive),
            (Zero, Positive, Positive),
            (Positive, Positive, Positive),
        ]
    } else {
        &[
            (Negative, Negative, Negative),
            (Zero, Zero, Zero),
            (Positive, Positive, Positive),
        ]
    }
}

/// Checks degreewise exactness of
/// `H^{k-1}_a(N/xᵢN) → H^k_a(N) →(xᵢ) H^k_a(N) → 0`, where
/// `N = R/(b + ⟨x₁,…,x_{i-1}⟩)`, `a = ⟨gens⟩` and `k = d − i + 1`.
///
/// Both top cohomology modules are computed on the tails of the generator list,
/// so each graded piece is zero or one-dimensional. The left map lowers degree
/// by `deg xᵢ` and is an isomorphism between nonzero pieces.
pub fn top_sequence_exactness(gens: &[Monomial], b: &MonomialIdeal, i: usize) -> Result<ExactnessReport> {
    let d = gens.len();
    if i == 0 || i > d {
        return Err(Error::InvalidInput(alloc::format!("index {i} outside 1..={d}")));
    }
    let n = b.nvars();
    check_vars(n)?;
    let radicalized = !b.is_squarefree() || gens.iter().any(|g| !g.is_squarefree());
    let xs: Vec<u32> = gens.iter().map(|g| g.support()).collect();
    let b_rad = b.squarefree_radical();
    let with_prefix = |k: usize| {
        let mut masks = b_rad.masks();
        masks.extend_from_slice(&xs[..k]);
        MonomialIdeal::from_masks(n, &masks)
    };
    let n_ideal = with_prefix(i - 1);
    let quotient_ideal = with_prefix(i);
    let mut report = ExactnessReport {
        exact_middle: true,
        exact_right: true,
        failures: Vec::new(),
        radicalized,
    };
    if n_ideal.is_unit() {
        return Ok(report);
    }
    let big = CechData::new(&xs[i - 1..], stanley_reisner(&n_ideal)?)?;
    let small = if quotient_ideal.is_unit() {
        None
    } else {
        Some(CechData::new(&xs[i..], stanley_reisner(&quotient_ideal)?)?)
    };
    let v = xs[i - 1];
    let mut triples: Vec<(SignPattern, SignPattern, SignPattern)> = alloc::vec![(
        SignPattern::new(n, 0, 0),
        SignPattern::new(n, 0, 0),
        SignPattern::new(n, 0, 0)
    )];
    for j in 0..n {
        let opts = sign_triples(v & (1 << j) != 0);
        triples = triples
            .into_iter()
            .flat_map(|(a, b, c)| {
                opts.iter().map(move |&(sa, sb, sc)| {
                    let (mut a, mut b, mut c) = (a, b, c);
                    a.set(j, sa);
                    b.set(j, sb);
                    c.set(j, sc);
                    (a, b, c)
                })
            })
            .collect();
    }
    for (minus, w, plus) in triples {
        if !big.top_nonzero(w) {
            continue;
        }
        let kernel = !big.top_nonzero(plus);
        let image = small.as_ref().is_some_and(|s| s.top_nonzero(plus));
        if kernel != image {
            report.exact_middle = false;
            report.failures.push((w, "middle"));
        }
        if !big.top_nonzero(minus) {
            report.exact_right = false;
            report.failures.push((w, "right"));
        }
    }
    Ok(report)
}
