//! Modules of generalized fractions `U^{-n}M` for `M = R/c`, with
//! `U = {(x₁^{α₁},…,x_n^{α_n})}` for a fixed sequence `x₁,…,x_n`.
//!
//! `r/(x^α) = 0` iff `x₁^{δ-α₁}⋯x_n^{δ-α_n} r ∈ ⟨x₁^δ,…,x_{n-1}^δ⟩ + c` for
//! some `δ ≥ max α`. The search over `δ` is bounded in general; when the
//! sequence, `c` and hence every term are monomial the minimal `δ` is computed
//! exactly per term.

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::groebner;
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};
use crate::{Error, Result};

/// Extra search depth beyond `max α` used when no bound is given.
pub const DEFAULT_DELTA_SLACK: u32 = 16;

/// The fixed sequence `x₁,…,x_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorSet {
    sequence: Vec<Polynomial>,
}

impl DenominatorSet {
    pub fn new(sequence: Vec<Polynomial>) -> Result<Self> {
        if sequence.is_empty() {
            return Err(Error::InvalidInput("denominator sequence is empty".into()));
        }
        if sequence.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidInput("denominator entries must be nonzero".into()));
        }
        Ok(DenominatorSet { sequence })
    }

    pub fn sequence(&self) -> &[Polynomial] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }
}

/// The data shared by all fractions of one module `U^{-n}(R/c)`.
#[derive(Debug)]
pub struct FractionContext {
    ring: Ring,
    denominators: DenominatorSet,
    c: Ideal,
}

impl FractionContext {
    pub fn new(ring: &Ring, denominators: DenominatorSet, c: Ideal) -> Arc<Self> {
        Arc::new(FractionContext {
            ring: ring.clone(),
            denominators,
            c,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn sequence(&self) -> &[Polynomial] {
        self.denominators.sequence()
    }

    pub fn c(&self) -> &Ideal {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.denominators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.denominators.is_empty()
    }

    fn same_as(&self, other: &FractionContext) -> bool {
        core::ptr::eq(self, other) || (self.denominators == other.denominators && self.c.equals(&other.c))
    }

    /// `∏ xᵢ^{eᵢ}`.
    fn power_product(&self, e: &[u32]) -> Polynomial {
        self.sequence().iter().zip(e).fold(
            self.ring.one(),
            |acc, (x, &k)| if k == 0 { acc } else { acc.mul(&x.pow(k)) },
        )
    }

    /// Sequence entries that are single terms, as monomials.
    fn monomial_sequence(&self) -> Option<Vec<Monomial>> {
        self.sequence().iter().map(|x| x.as_monomial().cloned()).collect()
    }
}

/// An element `r/(x₁^{α₁},…,x_n^{α_n})`; the numerator is kept reduced modulo `c`.
#[derive(Clone, Debug)]
pub struct GenFraction {
    numerator: Polynomial,
    alphas: Vec<u32>,
    ctx: Arc<FractionContext>,
}

impl GenFraction {
    pub fn new(ctx: &Arc<FractionContext>, numerator: Polynomial, alphas: Vec<u32>) -> Result<Self> {
        if alphas.len() != ctx.len() {
            return Err(Error::WrongLength {
                expected: ctx.len(),
                found: alphas.len(),
            });
        }
        if alphas.contains(&0) {
            return Err(Error::InvalidInput("exponents must be positive".into()));
        }
        Ok(GenFraction {
            numerator: ctx.c.normal_form(&numerator),
            alphas,
            ctx: ctx.clone(),
        })
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    pub fn context(&self) -> &Arc<FractionContext> {
        &self.ctx
    }

    pub fn max_alpha(&self) -> u32 {
        self.alphas.iter().copied().max().unwrap_or(1)
    }

    /// Same class with exponents raised to `beta ≥ alphas`.
    pub fn raise(&self, beta: &[u32]) -> GenFraction {
        let e: Vec<u32> = beta.iter().zip(&self.alphas).map(|(b, a)| b - a).collect();
        GenFraction {
            numerator: self.ctx.c.normal_form(&self.numerator.mul(&self.ctx.power_product(&e))),
            alphas: beta.to_vec(),
            ctx: self.ctx.clone(),
        }
    }

    pub fn neg(&self) -> GenFraction {
        GenFraction {
            numerator: self.numerator.neg(),
            alphas: self.alphas.clone(),
            ctx: self.ctx.clone(),
        }
    }
}

/// Three-valued outcome of the zero test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroStatus {
    /// Zero, with the least witnessing `δ` found.
    ZeroCertified {
        delta: u32,
    },
    /// No witness `δ ≤ delta_max`; not a claim of nonvanishing.
    NotZeroUpTo {
        delta_max: u32,
    },
    NonzeroCertified,
}

impl ZeroStatus {
    pub fn is_zero(&self) -> bool {
        matches!(self, ZeroStatus::ZeroCertified { .. })
    }

    pub fn is_nonzero(&self) -> bool {
        matches!(self, ZeroStatus::NonzeroCertified)
    }
}

fn check_context(f: &GenFraction, g: &GenFraction) -> Result<()> {
    if f.ctx.same_as(&g.ctx) {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// `f + g` over the componentwise maximum of the exponents.
pub fn gf_add(f: &GenFraction, g: &GenFraction) -> Result<GenFraction> {
    check_context(f, g)?;
    let beta: Vec<u32> = f.alphas.iter().zip(&g.alphas).map(|(a, b)| *a.max(b)).collect();
    let (fr, gr) = (f.raise(&beta), g.raise(&beta));
    Ok(GenFraction {
        numerator: f.ctx.c.normal_form(&fr.numerator.add(&gr.numerator)),
        alphas: beta,
        ctx: f.ctx.clone(),
    })
}

pub fn gf_sub(f: &GenFraction, g: &GenFraction) -> Result<GenFraction> {
    gf_add(f, &g.neg())
}

/// `r · f`.
pub fn gf_scalar(r: &Polynomial, f: &GenFraction) -> GenFraction {
    GenFraction {
        numerator: f.ctx.c.normal_form(&r.mul(&f.numerator)),
        alphas: f.alphas.clone(),
        ctx: f.ctx.clone(),
    }
}

/// The default search bound `max α + 16`.
pub fn default_delta_max(f: &GenFraction) -> u32 {
    f.max_alpha() + DEFAULT_DELTA_SLACK
}

/// `⟨x₁^{δ₁},…,x_{n-1}^{δ_{n-1}}⟩ + c`.
fn witness_ideal(ctx: &FractionContext, deltas: &[u32]) -> Ideal {
    let n = ctx.len();
    let powers: Vec<Polynomial> = ctx.sequence()[..n - 1]
        .iter()
        .zip(deltas)
        .map(|(x, &d)| x.pow(d))
        .collect();
    ctx.c.with(&powers)
}

/// Whether the zero criterion holds at exactly `delta`.
pub fn gf_zero_at(f: &GenFraction, delta: u32) -> bool {
    if delta < f.max_alpha() {
        return false;
    }
    let ctx = &f.ctx;
    let e: Vec<u32> = f.alphas.iter().map(|a| delta - a).collect();
    let p = f.numerator.mul(&ctx.power_product(&e));
    witness_ideal(ctx, &alloc::vec![delta; ctx.len()]).contains(&p)
}

/// Least `δ` for one numerator term `x^ρ` when the whole context is monomial,
/// or `None` if no `δ` works.
fn term_delta(rho: &Monomial, seq: &[Monomial], alphas: &[u32], c: &[Monomial], floor: u32) -> Option<u32> {
    let n = seq.len();
    let nv = rho.nvars();
    // Σ_j α_j v_{j,t} − ρ_t
    let base: Vec<i64> = (0..nv)
        .map(|t| {
            seq.iter()
                .zip(alphas)
                .map(|(v, &a)| a as i64 * v.exponent(t) as i64)
                .sum::<i64>()
                - rho.exponent(t) as i64
        })
        .collect();
    let total: Vec<i64> = (0..nv)
        .map(|t| seq.iter().map(|v| v.exponent(t) as i64).sum())
        .collect();
    // least δ ≥ floor with δ·s_t ≥ need_t for all t
    let solve = |need: &dyn Fn(usize) -> i64, slope: &dyn Fn(usize) -> i64| -> Option<u32> {
        let mut d = floor as i64;
        for t in 0..nv {
            let (a, s) = (need(t), slope(t));
            if s == 0 {
                if a > 0 {
                    return None;
                }
            } else if a > 0 {
                d = d.max((a + s - 1) / s);
            }
        }
        Some(d as u32)
    };
    let mut best: Option<u32> = None;
    for k in 0..n - 1 {
        let vk = &seq[k];
        let r = solve(&|t| base[t], &|t| total[t] - vk.exponent(t) as i64);
        best = match (best, r) {
            (Some(b), Some(r)) => Some(b.min(r)),
            (b, r) => b.or(r),
        };
    }
    for g in c {
        let r = solve(&|t| base[t] + g.exponent(t) as i64, &|t| total[t]);
        best = match (best, r) {
            (Some(b), Some(r)) => Some(b.min(r)),
            (b, r) => b.or(r),
        };
    }
    best
}

/// Exact zero test for fully monomial contexts.
fn monomial_zero_test(f: &GenFraction) -> Option<ZeroStatus> {
    let ctx = &f.ctx;
    let seq = ctx.monomial_sequence()?;
    let c = ctx.c.monomial_generators()?;
    let floor = f.max_alpha();
    let mut delta = floor;
    for (rho, _) in f.numerator.terms() {
        match term_delta(rho, &seq, &f.alphas, &c, floor) {
            Some(d) => delta = delta.max(d),
            None => return Some(ZeroStatus::NonzeroCertified),
        }
    }
    Some(ZeroStatus::ZeroCertified { delta })
}

/// Zero test: exact for monomial contexts, otherwise a search over
/// `δ = max α, …, delta_max`.
pub fn gf_is_zero(f: &GenFraction, delta_max: u32) -> ZeroStatus {
    if let Some(s) = monomial_zero_test(f) {
        return s;
    }
    gf_is_zero_search(f, delta_max)
}

/// The bounded search alone, bypassing the monomial shortcut.
pub fn gf_is_zero_search(f: &GenFraction, delta_max: u32) -> ZeroStatus {
    if f.numerator.is_zero() {
        return ZeroStatus::ZeroCertified { delta: f.max_alpha() };
    }
    for delta in f.max_alpha()..=delta_max {
        if gf_zero_at(f, delta) {
            return ZeroStatus::ZeroCertified { delta };
        }
    }
    ZeroStatus::NotZeroUpTo { delta_max }
}

/// `f ∼ g`, decided as `f − g = 0`.
pub fn gf_equal(f: &GenFraction, g: &GenFraction, delta_max: u32) -> Result<ZeroStatus> {
    Ok(gf_is_zero(&gf_sub(f, g)?, delta_max))
}

/// Searches the defining relation directly: exponents `δ = max(α, β) + t`
/// with `x^{δ-α} r − x^{δ-β} s ∈ ⟨x₁^{δ₁},…,x_{n-1}^{δ_{n-1}}⟩ + c`.
/// Returns the witness `δ`, or `None` if none exists with `max δ ≤ delta_max`.
pub fn gf_equal_witness(f: &GenFraction, g: &GenFraction, delta_max: u32) -> Result<Option<Vec<u32>>> {
    check_context(f, g)?;
    let ctx = &f.ctx;
    let base: Vec<u32> = f.alphas.iter().zip(&g.alphas).map(|(a, b)| *a.max(b)).collect();
    let top = base.iter().copied().max().unwrap_or(1);
    for t in 0..=delta_max.saturating_sub(top) {
        let delta: Vec<u32> = base.iter().map(|b| b + t).collect();
        let ea: Vec<u32> = delta.iter().zip(&f.alphas).map(|(d, a)| d - a).collect();
        let eb: Vec<u32> = delta.iter().zip(&g.alphas).map(|(d, b)| d - b).collect();
        let diff = f
            .numerator
            .mul(&ctx.power_product(&ea))
            .sub(&g.numerator.mul(&ctx.power_product(&eb)));
        if witness_ideal(ctx, &delta).contains(&diff) {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}

/// `r/(x₁^{α₁},…,x_d^{α_d},1)`, the element of `H^d_a(R/c)` it represents
/// under the identification of top local cohomology with `U^{-d-1}M`.
pub fn top_cohomology_fraction(
    ring: &Ring,
    r: &Polynomial,
    alphas: &[u32],
    a_gens: &[Polynomial],
    c: &Ideal,
) -> Result<GenFraction> {
    if alphas.len() != a_gens.len() {
        return Err(Error::WrongLength {
            expected: a_gens.len(),
            found: alphas.len(),
        });
    }
    let mut seq = a_gens.to_vec();
    seq.push(ring.one());
    let ctx = FractionContext::new(ring, DenominatorSet::new(seq)?, c.clone());
    let mut al = alphas.to_vec();
    al.push(1);
    GenFraction::new(&ctx, r.clone(), al)
}

/// The context `V^{-d}(M/x₁M)` paired with `U^{-d-1}M`: drop `x₁` from the
/// sequence and add it to `c`.
pub fn quotient_context(target: &Arc<FractionContext>) -> Result<Arc<FractionContext>> {
    if target.len() < 2 {
        return Err(Error::InvalidInput("need at least two denominator entries".into()));
    }
    let x1 = &target.sequence()[0];
    Ok(FractionContext::new(
        &target.ring,
        DenominatorSet::new(target.sequence()[1..].to_vec())?,
        target.c.with(core::slice::from_ref(x1)),
    ))
}

/// `φ(r̄/(x₂^{α₂},…)) = r/(x₁, x₂^{α₂},…)`.
pub fn phi_map(f: &GenFraction, target: &Arc<FractionContext>) -> Result<GenFraction> {
    let src = &f.ctx;
    if target.len() != src.len() + 1 || target.sequence()[1..] != *src.sequence() {
        return Err(Error::ContextMismatch);
    }
    let x1 = &target.sequence()[0];
    if !src.c.equals(&target.c.with(core::slice::from_ref(x1))) {
        return Err(Error::ContextMismatch);
    }
    let mut alphas = alloc::vec![1];
    alphas.extend_from_slice(&f.alphas);
    GenFraction::new(target, f.numerator.clone(), alphas)
}

/// `ψ(f) = x₁ · f`.
pub fn psi_mult(f: &GenFraction) -> GenFraction {
    gf_scalar(&f.ctx.sequence()[0], f)
}

/// For `z = r/(x₁^{α₁},…,x_d^{α_d},1)` with `ψ(z) = 0` witnessed at `δ`, writes
/// `x₁^{δ+1-α₁} x₂^{δ-α₂}⋯ r = Σ xᵢ^δ rᵢ (mod c)` and returns the preimage
/// `r̄₁/(x₂^δ,…,x_d^δ,1)` together with its image under `φ`.
pub fn psi_kernel_preimage(z: &GenFraction, delta: u32) -> Result<(GenFraction, GenFraction)> {
    let ctx = &z.ctx;
    let n = ctx.len();
    if n < 2 || delta < z.max_alpha() {
        return Err(Error::InvalidInput("need d ≥ 1 and δ ≥ max α".into()));
    }
    let mut e: Vec<u32> = z.alphas.iter().map(|a| delta - a).collect();
    e[0] += 1;
    let lhs = z.numerator.mul(&ctx.power_product(&e));
    let mut gens: Vec<Polynomial> = ctx.sequence()[..n - 1].iter().map(|x| x.pow(delta)).collect();
    gens.extend(ctx.c.generators().iter().cloned());
    let cof = groebner::lift(&lhs, &gens, ctx.ring.order())
        .ok_or_else(|| Error::Hypothesis("ψ(z) is not zero at this δ".into()))?;
    let v = quotient_context(ctx)?;
    let mut alphas = alloc::vec![delta; n - 2];
    alphas.push(1);
    let pre = GenFraction::new(&v, cof[0].clone(), alphas)?;
    let img = phi_map(&pre, ctx)?;
    Ok((pre, img))
}
