//! Relative systems of parameters, arithmetic rank bounds and relative
//! Cohen-Macaulay tests for cyclic modules `M = R/c`.
//!
//! Every verdict here is either certified by an exact computation (radical
//! equality, Koszul homology, Čech cohomology of monomial data) or returned as
//! absent. Candidate searches are bounded and deterministic for a fixed seed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ideal::{is_regular_sequence, radical_contains, radical_equal, radical_membership};
use crate::local_cohomology::{cd_monomial, cech_profile, mult_surjective, Cd};
use crate::module::{koszul_grade, syzygies, FreeModuleVector};
use crate::monomial::Monomial;
use crate::monomial_ideal::MonomialIdeal;
use crate::{Error, Ideal, Polynomial, RegularSequence, Result, Ring};

/// Largest variable count for the squarefree brute force in [`monomial_radical`].
const RADICAL_SCAN_VARS: usize = 10;

/// The cyclic module `M = R/c` together with the ideal `a`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    a: Ideal,
    c: Ideal,
    homogeneous: bool,
}

impl ModulePresentation {
    pub fn new(a: Ideal, c: Ideal) -> Result<Self> {
        if a.ring() != c.ring() {
            return Err(Error::ContextMismatch);
        }
        let homogeneous = a.is_homogeneous() && c.is_homogeneous();
        Ok(ModulePresentation { a, c, homogeneous })
    }

    /// `a` acting on the free module `R`.
    pub fn on_ring(a: Ideal) -> Self {
        let c = Ideal::zero(a.ring());
        ModulePresentation::new(a, c).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        self.a.ring()
    }

    pub fn a(&self) -> &Ideal {
        &self.a
    }

    pub fn c(&self) -> &Ideal {
        &self.c
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// `M = aM`, i.e. `a + c = ⟨1⟩`.
    pub fn is_degenerate(&self) -> bool {
        self.a.sum(&self.c).is_unit()
    }

    /// Stand-in for "a lies in the Jacobson radical": homogeneous data with `a`
    /// inside the irrelevant ideal.
    pub fn graded_surrogate(&self) -> bool {
        self.homogeneous && self.a.generators().iter().all(|g| g.is_zero() || !g.is_constant())
    }

    /// `M / ⟨seq⟩M`.
    pub fn modulo(&self, seq: &[Polynomial]) -> ModulePresentation {
        ModulePresentation::new(self.a.clone(), self.c.with(seq)).expect("same ring")
    }

    /// Generators of `a` that are nonzero in `M`.
    fn effective_generators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in self.a.generators() {
            if !self.c.contains(g) && !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }
}

/// Search limits shared by the arithmetic-rank and Rs.o.p searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest degree of a monomial multiplier in a combination.
    pub degree_bound: u32,
    pub seed: u64,
    /// Cap on candidate sets tested by radical equality.
    pub max_candidates: usize,
    /// Random candidates tried after the deterministic enumeration.
    pub samples: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            degree_bound: 2,
            seed: 0,
            max_candidates: 20_000,
            samples: 16,
        }
    }
}

/// The squarefree monomial ideal `Rad(I)`, when `Rad(I)` is monomial.
///
/// Uses the Gröbner basis when it is already monomial. Otherwise every
/// squarefree monomial inside `Rad(in(I))` is tested for radical membership,
/// and the result is accepted only if `I ⊆ J`.
pub fn monomial_radical(ideal: &Ideal) -> Result<Option<MonomialIdeal>> {
    let n = ideal.ring().nvars();
    if let Some(m) = MonomialIdeal::from_ideal(ideal) {
        return Ok(Some(m.squarefree_radical()));
    }
    if n > RADICAL_SCAN_VARS {
        return Err(Error::UnsupportedInput(format!(
            "radical detection scans at most {RADICAL_SCAN_VARS} variables"
        )));
    }
    let order = ideal.ring().order();
    let leads: Vec<Monomial> = ideal
        .groebner()
        .iter()
        .filter_map(|g| g.leading_term(order).map(|t| t.0.clone()))
        .collect();
    // m ∈ Rad(I) forces m ∈ Rad(in(I)).
    let lead_rad = MonomialIdeal::new(n, leads).squarefree_radical();
    let mut masks: Vec<u32> = (0u32..1 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found: Vec<u32> = Vec::new();
    for m in masks {
        if found.iter().any(|&f| f & !m == 0) || !lead_rad.contains_mask(m) {
            continue;
        }
        let p = ideal.ring().monomial(Monomial::from_mask(n, m));
        if radical_membership(&p, ideal) {
            found.push(m);
        }
    }
    let j = MonomialIdeal::from_masks(n, &found);
    let j_ideal = j.to_ideal(ideal.ring());
    Ok(ideal.generators().iter().all(|g| j_ideal.contains(g)).then_some(j))
}

fn monomial_radicals(mp: &ModulePresentation) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let ra = monomial_radical(&mp.a.sum(&mp.c))?;
    let rc = monomial_radical(&mp.c)?;
    match (ra, rc) {
        (Some(ra), Some(rc)) => Ok((ra, rc)),
        _ => Err(Error::UnsupportedInput(
            "cd is only decided when Rad(a + c) and Rad(c) are monomial".into(),
        )),
    }
}

/// `cd(a, R/c)`; `−∞` when `M = aM`.
pub fn cd(mp: &ModulePresentation) -> Result<Cd> {
    if mp.is_degenerate() {
        return Ok(Cd::NegInfinity);
    }
    let (ra, rc) = monomial_radicals(mp)?;
    cd_monomial(&ra, &rc, mp.ring().field())
}

fn finite_cd(mp: &ModulePresentation) -> Result<usize> {
    cd(mp)?.finite().ok_or(Error::Degenerate)
}

/// `grade(a, R/c)` from Koszul homology.
pub fn grade(mp: &ModulePresentation) -> Result<usize> {
    koszul_grade(mp.ring(), mp.a.generators(), &mp.c)
}

/// `(c : a) = {h : h·g ∈ c for every generator g of a}`.
pub fn colon_ideal(c: &Ideal, a: &Ideal) -> Ideal {
    let ring = c.ring();
    let n = ring.nvars();
    let gens: Vec<Polynomial> = a.generators().iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ideal::unit(ring);
    }
    let r = gens.len();
    // h ↦ (h g₁, …, h g_r) in (R/c)^r: syzygies of the column and c·eᵢ.
    let mut vectors = alloc::vec![FreeModuleVector::new(gens)];
    for cg in c.groebner() {
        for i in 0..r {
            let mut comps = alloc::vec![Polynomial::zero(n); r];
            comps[i] = cg.clone();
            vectors.push(FreeModuleVector::new(comps));
        }
    }
    let quotient: Vec<Polynomial> = syzygies(ring, &vectors)
        .iter()
        .map(|s| s.components()[0].clone())
        .filter(|p| !p.is_zero())
        .collect();
    c.with(&quotient)
}

/// Whether `a` consists of zerodivisors on `R/c`, i.e. `grade(a, R/c) = 0`.
///
/// Monomial data is decided by prime avoidance over the associated primes of
/// `c`; otherwise by `(c : a) ≠ c`.
pub fn all_zerodivisors(a: &Ideal, c: &Ideal) -> bool {
    let mono_a = MonomialIdeal::from_ideal(a);
    let mono_c = MonomialIdeal::from_ideal(c);
    if let (Some(ma), Some(mc)) = (mono_a, mono_c) {
        if mc.is_zero() {
            return ma.is_zero();
        }
        return mc
            .associated_primes()
            .iter()
            .any(|&p| ma.generators().iter().all(|g| g.support() & p != 0));
    }
    !c.contains_ideal(&colon_ideal(c, a))
}

/// Outcome of the iterative regular-element search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeSearch {
    /// A regular sequence in `a` on `M`.
    pub sequence: Vec<Polynomial>,
    /// The search stopped because no element of `a` is regular on the last
    /// quotient, so `grade = sequence.len()`.
    pub certified: bool,
}

fn integer_combination(ring: &Ring, gens: &[Polynomial], coeffs: &[i64]) -> Polynomial {
    gens.iter()
        .zip(coeffs)
        .filter(|(_, &k)| k != 0)
        .fold(ring.zero(), |acc, (g, &k)| acc.add(&g.mul(&ring.int(k))))
}

/// Deterministic candidates: generators, signed pairwise sums, the full sum,
/// then seeded random integer combinations.
fn regular_candidates(ring: &Ring, gens: &[Polynomial], config: &SearchConfig) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = gens.to_vec();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            out.push(gens[i].add(&gens[j]));
            out.push(gens[i].sub(&gens[j]));
        }
    }
    if gens.len() > 2 {
        out.push(gens.iter().fold(ring.zero(), |acc, g| acc.add(g)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        let coeffs: Vec<i64> = gens.iter().map(|_| rng.random_range(-5..=5)).collect();
        out.push(integer_combination(ring, gens, &coeffs));
    }
    out.retain(|p| !p.is_zero());
    out
}

/// Builds a maximal regular sequence in `a` one element at a time.
///
/// Each step either certifies that `a` consists of zerodivisors on the current
/// quotient (stop, certified) or tries the candidates of [`SearchConfig`].
pub fn grade_search(mp: &ModulePresentation, config: &SearchConfig) -> Result<GradeSearch> {
    if mp.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let ring = mp.ring();
    let gens = mp.effective_generators();
    let candidates = regular_candidates(ring, &gens, config);
    let mut current = mp.c.clone();
    let mut sequence = Vec::new();
    loop {
        if all_zerodivisors(&mp.a, &current) {
            return Ok(GradeSearch {
                sequence,
                certified: true,
            });
        }
        let next = candidates
            .iter()
            .find(|f| !current.contains(f) && crate::ideal::is_regular_element(f, &current).unwrap_or(false));
        match next {
            Some(f) => {
                current = current.with(core::slice::from_ref(f));
                sequence.push(f.clone());
            }
            None => {
                return Ok(GradeSearch {
                    sequence,
                    certified: false,
                })
            }
        }
    }
}

/// Result of [`is_rsop`]: condition i) is radical equality; conditions ii)
/// and iii) are the multiplication and prefix-cd criteria, filled in when the
/// data is monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RsopReport {
    pub sequence: Vec<Polynomial>,
    pub cd: usize,
    pub condition_i: bool,
    /// Surjectivity of `xᵢ` on `H^{c-i+1}_a(M/⟨x₁,…,x_{i-1}⟩M)` for each `i`.
    pub condition_ii: Option<Vec<bool>>,
    /// `cd(a, M/⟨x₁,…,xᵢ⟩M)` for each `i`.
    pub condition_iii: Option<Vec<Cd>>,
    pub verdict: bool,
    pub certificates: Vec<String>,
}

impl RsopReport {
    pub fn condition_ii_holds(&self) -> Option<bool> {
        self.condition_ii.as_ref().map(|v| v.iter().all(|&b| b))
    }

    pub fn condition_iii_holds(&self) -> Option<bool> {
        self.condition_iii
            .as_ref()
            .map(|v| v.iter().enumerate().all(|(i, d)| *d == Cd::Finite(self.cd - i - 1)))
    }
}

fn check_rsop_shape(seq: &[Polynomial], mp: &ModulePresentation, c: usize) -> Result<()> {
    if seq.len() != c {
        return Err(Error::WrongLength {
            expected: c,
            found: seq.len(),
        });
    }
    for (i, x) in seq.iter().enumerate() {
        if !mp.a.contains(x) {
            return Err(Error::NotInIdeal { index: i + 1 });
        }
    }
    Ok(())
}

/// Whether `seq` is an `a`-relative system of parameters of `M`.
///
/// Fails with [`Error::Inconsistent`] if the monomial criteria disagree with
/// radical equality where they provably must agree.
pub fn is_rsop(seq: &[Polynomial], mp: &ModulePresentation) -> Result<RsopReport> {
    let c = finite_cd(mp)?;
    check_rsop_shape(seq, mp, c)?;
    let ring = mp.ring();
    let field = ring.field();
    let generated = mp.c.with(seq);
    let target = mp.a.sum(&mp.c);
    let condition_i = radical_equal(&generated, &target);
    let mut certificates = Vec::new();
    if condition_i {
        certificates.push(String::from("Rad(<seq> + c) = Rad(a + c)"));
    } else if let Some(g) = target.generators().iter().find(|g| !radical_membership(g, &generated)) {
        certificates.push(format!("{} is not in Rad(<seq> + c)", ring.format(g)));
    }

    let monos: Option<Vec<Monomial>> = seq.iter().map(|x| x.as_monomial().cloned()).collect();
    let (mut condition_ii, mut condition_iii) = (None, None);
    if let (Some(xs), Ok((ra, rc))) = (monos, monomial_radicals(mp)) {
        let n = ring.nvars();
        let prefix = |k: usize| {
            let mut g = rc.generators().to_vec();
            g.extend(xs[..k].iter().cloned());
            MonomialIdeal::new(n, g)
        };
        let mut cds = Vec::with_capacity(c);
        for i in 1..=c {
            cds.push(cd_monomial(&ra, &prefix(i), field)?);
        }
        condition_iii = Some(cds);
        if let Some(mc) = MonomialIdeal::from_ideal(&mp.c).filter(|m| m.is_squarefree()) {
            if xs.iter().all(|x| x.is_squarefree()) {
                let mut surj = Vec::with_capacity(c);
                for i in 1..=c {
                    let mut g = mc.generators().to_vec();
                    g.extend(xs[..i - 1].iter().cloned());
                    let b = MonomialIdeal::new(n, g);
                    surj.push(mult_surjective(&ra, &b, &xs[i - 1], c - i + 1, field)?);
                }
                condition_ii = Some(surj);
            }
        }
    }
    let report = RsopReport {
        sequence: seq.to_vec(),
        cd: c,
        condition_i,
        condition_ii,
        condition_iii,
        verdict: condition_i,
        certificates,
    };
    for (name, holds) in [
        ("ii", report.condition_ii_holds()),
        ("iii", report.condition_iii_holds()),
    ] {
        if let Some(h) = holds {
            // i ⇒ ii, iii always; the converse under the graded surrogate.
            if (condition_i && !h) || (h && !condition_i && mp.graded_surrogate()) {
                return Err(Error::Inconsistent(format!(
                    "condition {name} = {h} but radical equality = {condition_i}"
                )));
            }
        }
    }
    Ok(report)
}

/// How a candidate set was found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Discovery {
    Subset,
    Combination,
    Sampling,
}

/// A set `S ⊆ a` with `Rad(⟨S⟩ + c) = Rad(a + c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AraCertificate {
    pub set: Vec<Polynomial>,
    pub found_by: Discovery,
}

/// Bounds `lower ≤ ara(a, M) ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AraBounds {
    pub lower: usize,
    /// `lower` is `cd(a, M)`; otherwise it is `grade(a, M)`.
    pub lower_is_cd: bool,
    pub upper: Option<usize>,
    pub certificate: Option<AraCertificate>,
    pub candidates_checked: usize,
    pub exhausted: bool,
}

impl AraBounds {
    /// `ara(a, M)` when the bounds meet.
    pub fn exact(&self) -> Option<usize> {
        (self.upper == Some(self.lower)).then_some(self.lower)
    }
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = alloc::vec![Monomial::one(n)];
    let mut frontier = out.clone();
    for _ in 0..d {
        let mut next: Vec<Monomial> = Vec::new();
        for m in &frontier {
            for v in 0..n {
                let p = m.mul(&Monomial::variable(n, v));
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        next.sort();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Set partitions of `0..r` into exactly `k` blocks, blocks listed by least
/// element, ordered so that small leading blocks come first.
fn partitions(r: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, r: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == r {
            if blocks.len() == k {
                out.push(blocks.clone());
            }
            return;
        }
        if blocks.len() + (r - i) < k {
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, r, k, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < k {
            blocks.push(alloc::vec![i]);
            rec(i + 1, r, k, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, k, &mut Vec::new(), &mut out);
    out.sort_by_key(|p| p.iter().map(|b| b.len()).collect::<Vec<_>>());
    out
}

fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, k, &mut Vec::new(), &mut out);
    out
}

enum Outcome {
    Found(AraCertificate),
    NotFound,
    Exhausted,
}

struct CandidateSearch<'a> {
    mp: &'a ModulePresentation,
    gens: Vec<Polynomial>,
    config: &'a SearchConfig,
    checked: usize,
}

impl CandidateSearch<'_> {
    fn test(&mut self, set: &[Polynomial]) -> Option<bool> {
        if self.checked >= self.config.max_candidates {
            return None;
        }
        self.checked += 1;
        if set.iter().any(|p| p.is_zero()) {
            return Some(false);
        }
        Some(radical_contains(&self.mp.c.with(set), &self.mp.a))
    }

    fn size(&mut self, k: usize) -> Outcome {
        let r = self.gens.len();
        if k > r {
            return Outcome::NotFound;
        }
        for s in subsets(r, k) {
            let set: Vec<Polynomial> = s.iter().map(|&i| self.gens[i].clone()).collect();
            match self.test(&set) {
                None => return Outcome::Exhausted,
                Some(true) => {
                    return Outcome::Found(AraCertificate {
                        set,
                        found_by: Discovery::Subset,
                    })
                }
                Some(false) => {}
            }
        }
        if k == 0 || k == r {
            return Outcome::NotFound;
        }
        let ring = self.mp.ring().clone();
        let n = ring.nvars();
        let multipliers = monomials_up_to(n, self.config.degree_bound);
        let parts = partitions(r, k);
        for budget in 0..=self.config.degree_bound {
            let options: Vec<(i64, &Monomial)> = multipliers
                .iter()
                .filter(|m| m.degree() <= budget)
                .flat_map(|m| [(1, m), (-1, m)])
                .collect();
            for part in &parts {
                // Mixed-radix counter over the non-leading members of each block.
                let slots: usize = part.iter().map(|b| b.len() - 1).sum();
                let mut digits = alloc::vec![0usize; slots];
                loop {
                    let top = digits.iter().map(|&d| options[d].1.degree()).max().unwrap_or(0);
                    if top == budget {
                        let mut set = Vec::with_capacity(k);
                        let mut slot = 0;
                        for block in part {
                            let mut p = self.gens[block[0]].clone();
                            for &g in &block[1..] {
                                let (sign, m) = options[digits[slot]];
                                slot += 1;
                                p = p.add(&self.gens[g].mul_monomial(m).mul(&ring.int(sign)));
                            }
                            set.push(p);
                        }
                        match self.test(&set) {
                            None => return Outcome::Exhausted,
                            Some(true) => {
                                return Outcome::Found(AraCertificate {
                                    set,
                                    found_by: Discovery::Combination,
                                })
                            }
                            Some(false) => {}
                        }
                    }
                    let mut pos = 0;
                    while pos < slots {
                        digits[pos] += 1;
                        if digits[pos] < options.len() {
                            break;
                        }
                        digits[pos] = 0;
                        pos += 1;
                    }
                    if pos == slots {
                        break;
                    }
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ k as u64);
        for _ in 0..self.config.samples {
            let set: Vec<Polynomial> = (0..k)
                .map(|_| {
                    let coeffs: Vec<i64> = (0..r).map(|_| rng.random_range(-3..=3)).collect();
                    integer_combination(&ring, &self.gens, &coeffs)
                })
                .collect();
            match self.test(&set) {
                None => return Outcome::Exhausted,
                Some(true) => {
                    return Outcome::Found(AraCertificate {
                        set,
                        found_by: Discovery::Sampling,
                    })
                }
                Some(false) => {}
            }
        }
        Outcome::NotFound
    }
}

/// Lower bound `cd(a, M)` (or `grade(a, M)` when cd is undecided) and the
/// smallest generating-up-to-radical set found by the bounded search.
pub fn ara_bounds(mp: &ModulePresentation, config: &SearchConfig) -> Result<AraBounds> {
    if mp.is_degenerate() {
        return Err(Error::Degenerate);
    }
    let (lower, lower_is_cd) = match cd(mp) {
        Ok(Cd::Finite(c)) => (c, true),
        Ok(Cd::NegInfinity) => return Err(Error::Degenerate),
        Err(Error::UnsupportedInput(_)) => (grade(mp)?, false),
        Err(e) => return Err(e),
    };
    let mut search = CandidateSearch {
        mp,
        gens: mp.effective_generators(),
        config,
        checked: 0,
    };
    let mut bounds = AraBounds {
        lower,
        lower_is_cd,
        upper: None,
        certificate: None,
        candidates_checked: 0,
        exhausted: false,
    };
    for k in lower..=search.gens.len() {
        match search.size(k) {
            Outcome::Found(cert) => {
                bounds.upper = Some(k);
                bounds.certificate = Some(cert);
                break;
            }
            Outcome::NotFound => {}
            Outcome::Exhausted => {
                bounds.exhausted = true;
                break;
            }
        }
    }
    bounds.candidates_checked = search.checked;
    Ok(bounds)
}

/// An `a`-Rs.o.p of `M` from the bounded search at size `cd(a, M)`; `None`
/// means the search was inconclusive.
pub fn find_rsop(mp: &ModulePresentation, config: &SearchConfig) -> Result<Option<Vec<Polynomial>>> {
    let c = finite_cd(mp)?;
    let mut search = CandidateSearch {
        mp,
        gens: mp.effective_generators(),
        config,
        checked: 0,
    };
    Ok(match search.size(c) {
        Outcome::Found(cert) => Some(cert.set),
        _ => None,
    })
}

/// Relative Cohen-Macaulay summary of `M` with respect to `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcmReport {
    pub grade: usize,
    pub cd: Cd,
    pub ara: AraBounds,
    pub is_rcm: bool,
    pub rsop: Option<Vec<Polynomial>>,
    /// Regularity of `rsop` on `M`, recorded when `M` is relative Cohen-Macaulay.
    pub rsop_regular: Option<RegularSequence>,
}

/// `grade(a, M) = cd(a, M)`, with the arithmetic-rank search and a regularity
/// check of the Rs.o.p found.
pub fn is_rcm(mp: &ModulePresentation, config: &SearchConfig) -> Result<RcmReport> {
    let cdv = cd(mp)?;
    let g = grade(mp)?;
    let ara = ara_bounds(mp, config)?;
    let is_rcm = cdv == Cd::Finite(g);
    let rsop = match ara.exact() {
        Some(_) if ara.lower_is_cd => ara.certificate.as_ref().map(|c| c.set.clone()),
        _ => None,
    };
    let rsop_regular = match (&rsop, is_rcm) {
        (Some(s), true) => Some(is_regular_sequence(s, &mp.c)?),
        _ => None,
    };
    Ok(RcmReport {
        grade: g,
        cd: cdv,
        ara,
        is_rcm,
        rsop,
        rsop_regular,
    })
}

/// One sequence examined by [`regular_rsop_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTrial {
    pub sequence: Vec<Polynomial>,
    pub is_rsop: bool,
    pub regular: RegularSequence,
    pub homogeneous: bool,
}

impl SequenceTrial {
    /// An Rs.o.p that is not a regular sequence.
    pub fn is_counterexample(&self) -> bool {
        self.is_rsop && !self.regular.is_regular()
    }
}

/// Cross-check between relative Cohen-Macaulayness and regular Rs.o.p's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularRsopReport {
    pub grade: usize,
    pub cd: usize,
    pub is_rcm: bool,
    /// An Rs.o.p that is also a regular sequence, if one was found.
    pub regular_rsop: Option<Vec<Polynomial>>,
    pub trials: Vec<SequenceTrial>,
    /// Non-regular Rs.o.p's that are homogeneous with data inside the graded
    /// surrogate. Any such sequence contradicts the theory.
    pub unexpected: Vec<usize>,
    /// Non-regular Rs.o.p's outside the graded surrogate.
    pub expected: Vec<usize>,
}

impl RegularRsopReport {
    /// Every tested Rs.o.p was regular.
    pub fn every_rsop_regular(&self) -> bool {
        self.unexpected.is_empty() && self.expected.is_empty()
    }

    /// A regular Rs.o.p forces `M` to be relative Cohen-Macaulay, and no
    /// graded counterexample was seen.
    pub fn consistent(&self) -> bool {
        (self.regular_rsop.is_none() || self.is_rcm) && self.unexpected.is_empty()
    }
}

/// Requires `ara(a, M) = cd(a, M)` certified. Looks for an Rs.o.p that is a
/// regular sequence, and tests every sequence in `extra` plus seeded random
/// combinations for being a non-regular Rs.o.p.
pub fn regular_rsop_check(
    mp: &ModulePresentation,
    config: &SearchConfig,
    extra: &[Vec<Polynomial>],
) -> Result<RegularRsopReport> {
    let ara = ara_bounds(mp, config)?;
    let c = match ara.exact() {
        Some(c) if ara.lower_is_cd => c,
        _ => return Err(Error::Hypothesis("ara(a, M) = cd(a, M) is not certified".into())),
    };
    let g = grade(mp)?;
    let ring = mp.ring().clone();
    let gens = mp.effective_generators();
    let mut candidates: Vec<Vec<Polynomial>> = Vec::new();
    if let Some(cert) = &ara.certificate {
        candidates.push(cert.set.clone());
    }
    if gens.len() == c {
        candidates.push(gens.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.samples {
        candidates.push(
            (0..c)
                .map(|_| {
                    let coeffs: Vec<i64> = gens.iter().map(|_| rng.random_range(-5..=5)).collect();
                    integer_combination(&ring, &gens, &coeffs)
                })
                .collect(),
        );
    }
    let surrogate = mp.graded_surrogate();
    let mut report = RegularRsopReport {
        grade: g,
        cd: c,
        is_rcm: g == c,
        regular_rsop: None,
        trials: Vec::new(),
        unexpected: Vec::new(),
        expected: Vec::new(),
    };
    for seq in extra.iter().chain(candidates.iter()) {
        if seq.len() != c || seq.iter().any(|x| x.is_zero() || !mp.a.contains(x)) {
            continue;
        }
        let rsop = radical_equal(&mp.c.with(seq), &mp.a.sum(&mp.c));
        let regular = is_regular_sequence(seq, &mp.c)?;
        let homogeneous = seq.iter().all(|x| x.is_homogeneous());
        let trial = SequenceTrial {
            sequence: seq.clone(),
            is_rsop: rsop,
            regular,
            homogeneous,
        };
        let idx = report.trials.len();
        if trial.is_counterexample() {
            if surrogate && homogeneous {
                report.unexpected.push(idx);
            } else {
                report.expected.push(idx);
            }
        }
        if rsop && trial.regular.is_regular() && report.regular_rsop.is_none() {
            report.regular_rsop = Some(seq.clone());
        }
        report.trials.push(trial);
    }
    Ok(report)
}

/// One quotient `M/⟨x₁,…,xᵢ⟩M` in [`quotient_chain_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub index: usize,
    pub grade: usize,
    pub cd: Cd,
    pub is_rcm: bool,
    /// `x_{i+1},…,x_c` is an Rs.o.p of the quotient.
    pub tail_is_rsop: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientChainReport {
    pub steps: Vec<ChainStep>,
    /// Indices `i` where the quotient is not relative Cohen-Macaulay, its cd
    /// is not `c − i`, or the tail is not an Rs.o.p.
    pub failures: Vec<usize>,
}

impl QuotientChainReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Walks the quotients `M/⟨x₁,…,xᵢ⟩M` for an Rs.o.p `seq` of a relative
/// Cohen-Macaulay `M`, recomputing grade and cd at every step.
pub fn quotient_chain_check(mp: &ModulePresentation, seq: &[Polynomial]) -> Result<QuotientChainReport> {
    let head = is_rsop(seq, mp)?;
    if !head.verdict {
        return Err(Error::Hypothesis("the sequence is not an Rs.o.p".into()));
    }
    let c = head.cd;
    if grade(mp)? != c {
        return Err(Error::Hypothesis("M is not relative Cohen-Macaulay".into()));
    }
    let mut report = QuotientChainReport {
        steps: Vec::new(),
        failures: Vec::new(),
    };
    for i in 0..=c {
        let q = mp.modulo(&seq[..i]);
        let g = grade(&q)?;
        let cdv = cd(&q)?;
        let tail = &seq[i..];
        let tail_is_rsop = cdv == Cd::Finite(c - i) && is_rsop(tail, &q)?.verdict;
        let step = ChainStep {
            index: i,
            grade: g,
            cd: cdv,
            is_rcm: cdv == Cd::Finite(g),
            tail_is_rsop,
        };
        if !(step.is_rcm && step.tail_is_rsop) {
            report.failures.push(i);
        }
        report.steps.push(step);
    }
    Ok(report)
}

/// Result of [`principal_radical_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalRadicalReport {
    /// `ara(a, M) = 1` was certified and `x ∈ a`.
    pub hypothesis: bool,
    pub ara: Option<AraBounds>,
    /// `H¹_a(M/xM) = 0`, when the data is monomial-checkable.
    pub h1_vanishes: Option<bool>,
    /// `Rad(a + c) = Rad(⟨x⟩ + c)`.
    pub radicals_equal: bool,
}

impl PrincipalRadicalReport {
    /// Vanishing of `H¹_a(M/xM)` forces equal radicals.
    pub fn consistent(&self) -> bool {
        !(self.hypothesis && self.h1_vanishes == Some(true) && !self.radicals_equal)
    }
}

/// For `ara(a, M) = 1` and `x ∈ a`: if `H¹_a(M/xM) = 0` then `x` generates
/// `a + c` up to radical. Unequal radicals therefore witness `H¹_a(M/xM) ≠ 0`.
pub fn principal_radical_check(
    mp: &ModulePresentation,
    x: &Polynomial,
    config: &SearchConfig,
) -> Result<PrincipalRadicalReport> {
    let ara = ara_bounds(mp, config).ok();
    let certified = ara.as_ref().is_some_and(|b| b.lower_is_cd && b.exact() == Some(1));
    let hypothesis = certified && mp.a.contains(x);
    let quotient = mp.modulo(core::slice::from_ref(x));
    let h1_vanishes = match monomial_radicals(&quotient) {
        Ok((ra, rc)) => Some(!cech_profile(&ra, &rc, mp.ring().field())?.is_nonzero(1)),
        Err(Error::UnsupportedInput(_)) => None,
        Err(e) => return Err(e),
    };
    let radicals_equal = radical_equal(&mp.a.sum(&mp.c), &quotient.c);
    Ok(PrincipalRadicalReport {
        hypothesis,
        ara,
        h1_vanishes,
        radicals_equal,
    })
}

/// Determinant by cofactor expansion along the first row.
pub fn determinant(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    match n {
        0 => ring.one(),
        1 => m[0][0].clone(),
        _ => {
            let mut det = ring.zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&determinant(ring, &minor));
                det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
            }
            det
        }
    }
}

/// Whether multiplication by `det A` from `M/⟨x⟩M` to `M/⟨y⟩M`, `y = A·x`, is
/// injective: `((c + ⟨y⟩) : det A) ⊆ c + ⟨x⟩`.
pub fn determinant_map_injective(xs: &[Polynomial], a: &[Vec<Polynomial>], c: &Ideal) -> Result<bool> {
    let ring = c.ring();
    let n = xs.len();
    if a.len() != n {
        return Err(Error::WrongLength {
            expected: n,
            found: a.len(),
        });
    }
    if let Some(row) = a.iter().find(|row| row.len() != n) {
        return Err(Error::WrongLength {
            expected: n,
            found: row.len(),
        });
    }
    let det = determinant(ring, a);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let ys: Vec<Polynomial> = a
        .iter()
        .map(|row| {
            row.iter()
                .zip(xs)
                .fold(ring.zero(), |acc, (aij, x)| acc.add(&aij.mul(x)))
        })
        .collect();
    let source = c.with(xs);
    let kernel = c.with(&ys).quotient(&det);
    Ok(source.contains_ideal(&kernel))
}
