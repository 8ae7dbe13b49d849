//! Buchberger's algorithm over free modules `R^m`.
//!
//! Ideals are the rank-one case. Module terms are compared position over term,
//! with a *smaller* component index being *larger*; this makes the order an
//! elimination order for leading components, which is what the syzygy and
//! lifting routines rely on.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::field::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

type Term = (u32, Monomial, Coeff);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct ModuleOrder {
    pub mono: MonomialOrder,
}

impl ModuleOrder {
    pub fn new(mono: MonomialOrder) -> Self {
        ModuleOrder { mono }
    }

    fn cmp(&self, a: (u32, &Monomial), b: (u32, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.mono.cmp(a.1, b.1))
    }
}

/// A vector in `R^m`, terms sorted ascending so the leading term is last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    pub fn from_components(components: &[Polynomial], ord: ModuleOrder) -> Self {
        let mut terms: Vec<Term> = components
            .iter()
            .enumerate()
            .flat_map(|(k, p)| p.terms().iter().map(move |(m, c)| (k as u32, m.clone(), c.clone())))
            .collect();
        terms.sort_by(|a, b| ord.cmp((a.0, &a.1), (b.0, &b.1)));
        Vector { terms }
    }

    pub fn from_poly(p: &Polynomial, ord: ModuleOrder) -> Self {
        Self::from_components(core::slice::from_ref(p), ord)
    }

    pub fn to_components(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, Coeff)>> = alloc::vec![Vec::new(); rank];
        for (k, m, c) in &self.terms {
            parts[*k as usize].push((m.clone(), c.clone()));
        }
        parts.into_iter().map(|t| Polynomial::from_terms(nvars, t)).collect()
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        debug_assert!(self.terms.iter().all(|t| t.0 == 0));
        Polynomial::from_terms(
            nvars,
            self.terms.iter().map(|(_, m, c)| (m.clone(), c.clone())).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.last()
    }

    pub fn lead_component(&self) -> Option<u32> {
        self.lead().map(|t| t.0)
    }

    fn monic(mut self) -> Vector {
        if let Some(lc) = self.lead().map(|t| t.2.clone()) {
            if !lc.is_one() {
                let inv = lc.inv();
                for t in &mut self.terms {
                    t.2 = &t.2 * &inv;
                }
            }
        }
        self
    }

    /// `self - c * m * g`, merging two ascending term lists.
    fn sub_scaled(&self, g: &[Term], m: &Monomial, c: &Coeff, ord: ModuleOrder) -> Vector {
        let mut out = Vec::with_capacity(self.terms.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let shifted: Vec<Term> = g.iter().map(|(k, t, d)| (*k, t.mul(m), -&(d * c))).collect();
        while i < self.terms.len() && j < shifted.len() {
            let a = &self.terms[i];
            let b = &shifted[j];
            match ord.cmp((a.0, &a.1), (b.0, &b.1)) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a.2 + &b.2;
                    if !s.is_zero() {
                        out.push((a.0, a.1.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&shifted[j..]);
        Vector { terms: out }
    }
}

fn find_divisor<'a>(basis: &'a [Vector], comp: u32, m: &Monomial) -> Option<&'a Vector> {
    basis.iter().find(|g| match g.lead() {
        Some((k, lm, _)) => *k == comp && lm.divides(m),
        None => false,
    })
}

/// Full normal form of `f` with respect to `basis` (which need not be a Gröbner basis).
pub(crate) fn normal_form(f: &Vector, basis: &[Vector], ord: ModuleOrder) -> Vector {
    let mut p = f.clone();
    let mut rem: Vec<Term> = Vec::new();
    while let Some((k, m, c)) = p.terms.pop() {
        match find_divisor(basis, k, &m) {
            Some(g) => {
                let (_, lm, lc) = g.lead().expect("nonzero divisor");
                let q = m.div(lm).expect("lead divides");
                let coeff = c.div(lc);
                let tail = &g.terms[..g.terms.len() - 1];
                p = p.sub_scaled(tail, &q, &coeff, ord);
            }
            None => rem.push((k, m, c)),
        }
    }
    rem.reverse();
    Vector { terms: rem }
}

struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the submodule generated by `gens`, sorted by
/// descending leading term. `rank_one` enables the coprime-leading-term criterion,
/// which is only valid for ideals.
pub(crate) fn groebner(gens: &[Vector], ord: ModuleOrder, rank_one: bool) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();

    let push = |basis: &mut Vec<Vector>, pairs: &mut Vec<Pair>, pending: &mut BTreeSet<(usize, usize)>, h: Vector| {
        let k = basis.len();
        let (hc, hm) = {
            let (c, m, _) = h.lead().expect("nonzero");
            (*c, m.clone())
        };
        for (i, g) in basis.iter().enumerate() {
            let (gc, gm, _) = g.lead().expect("nonzero");
            if *gc == hc {
                pairs.push(Pair {
                    i,
                    j: k,
                    comp: hc,
                    lcm: gm.lcm(&hm),
                });
                pending.insert((i, k));
            }
        }
        basis.push(h);
    };

    for g in gens {
        let r = normal_form(g, &basis, ord);
        if !r.is_zero() {
            push(&mut basis, &mut pairs, &mut pending, r.monic());
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                ord.cmp((pairs[a].comp, &pairs[a].lcm), (pairs[b].comp, &pairs[b].lcm))
                    .then_with(|| (pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .expect("nonempty");
        let Pair { i, j, comp, lcm } = pairs.swap_remove(best);
        pending.remove(&(i, j));

        let (li, lj) = (&basis[i].lead().unwrap().1, &basis[j].lead().unwrap().1);
        if rank_one && li.is_coprime(lj) {
            continue;
        }
        let chain = basis.iter().enumerate().any(|(l, g)| {
            if l == i || l == j {
                return false;
            }
            let (gc, gm, _) = g.lead().unwrap();
            *gc == comp
                && gm.divides(&lcm)
                && !pending.contains(&(i.min(l), i.max(l)))
                && !pending.contains(&(j.min(l), j.max(l)))
        });
        if chain {
            continue;
        }

        let mi = lcm.div(li).unwrap();
        let mj = lcm.div(lj).unwrap();
        let gi = &basis[i];
        let gj = &basis[j];
        let one = gi.lead().unwrap().2.field().one();
        let scaled_i = Vector::zero().sub_scaled(&gi.terms, &mi, &-&one, ord);
        let s = scaled_i.sub_scaled(&gj.terms, &mj, &one, ord);
        let r = normal_form(&s, &basis, ord);
        if !r.is_zero() {
            let r = r.monic();
            let unit = rank_one && r.lead().unwrap().1.is_one();
            push(&mut basis, &mut pairs, &mut pending, r);
            if unit {
                break;
            }
        }
    }

    reduce_basis(basis, ord)
}

fn reduce_basis(basis: Vec<Vector>, ord: ModuleOrder) -> Vec<Vector> {
    // Minimalize: drop elements whose leading term is divisible by another's.
    let mut keep: Vec<Vector> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let (gc, gm, _) = g.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(jdx, h)| {
            if jdx == idx {
                return false;
            }
            let (hc, hm, _) = h.lead().unwrap();
            hc == gc && hm.divides(gm) && (hm != gm || jdx < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced: Vec<Vector> = (0..keep.len())
        .map(|i| {
            let others: Vec<Vector> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, v)| v.clone())
                .collect();
            normal_form(&keep[i], &others, ord).monic()
        })
        .collect();
    reduced.sort_by(|a, b| {
        let (ac, am, _) = a.lead().unwrap();
        let (bc, bm, _) = b.lead().unwrap();
        ord.cmp((*bc, bm), (*ac, am))
    });
    reduced
}

/// Reduced Gröbner basis of a polynomial ideal.
pub fn groebner_basis(gens: &[Polynomial], order: MonomialOrder) -> Vec<Polynomial> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Vec::new(),
    };
    let ord = ModuleOrder::new(order);
    let vecs: Vec<Vector> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Vector::from_poly(g, ord))
        .collect();
    groebner(&vecs, ord, true).iter().map(|v| v.to_poly(nvars)).collect()
}

/// Normal form of `f` modulo a (reduced) Gröbner basis.
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: MonomialOrder) -> Polynomial {
    let ord = ModuleOrder::new(order);
    let b: Vec<Vector> = basis.iter().map(|g| Vector::from_poly(g, ord)).collect();
    normal_form(&Vector::from_poly(f, ord), &b, ord).to_poly(f.nvars())
}

/// S-polynomial of two polynomials with respect to `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_monomial(&l.div(fm).unwrap()).scale(&fc.inv());
    let b = g.mul_monomial(&l.div(gm).unwrap()).scale(&gc.inv());
    a.sub(&b)
}

/// Cofactors `h` with `f = Σ hᵢ gensᵢ`, or `None` when `f ∉ ⟨gens⟩`.
pub fn lift(f: &Polynomial, gens: &[Polynomial], order: MonomialOrder) -> Option<Vec<Polynomial>> {
    let nvars = f.nvars();
    let s = gens.len();
    let ord = ModuleOrder::new(order);
    let vecs: Vec<Vector> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut comps = alloc::vec![Polynomial::zero(nvars); s + 1];
            comps[0] = g.clone();
            comps[i + 1] = Polynomial::monomial(Monomial::one(nvars), f_one(f, gens));
            Vector::from_components(&comps, ord)
        })
        .filter(|v| !v.is_zero())
        .collect();
    let basis = groebner(&vecs, ord, false);
    let mut comps = alloc::vec![Polynomial::zero(nvars); s + 1];
    comps[0] = f.clone();
    let r = normal_form(&Vector::from_components(&comps, ord), &basis, ord);
    let parts = r.to_components(s + 1, nvars);
    if !parts[0].is_zero() {
        return None;
    }
    Some(parts[1..].iter().map(|p| p.neg()).collect())
}

fn f_one(f: &Polynomial, gens: &[Polynomial]) -> Coeff {
    f.terms()
        .first()
        .or_else(|| gens.iter().find_map(|g| g.terms().first()))
        .map(|(_, c)| c.field().one())
        .expect("lift needs a nonzero polynomial to infer the field")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn linear_reduction_lex() {
        // {x + y, y} -> {x, y}
        let r = Ring::rational(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let gb = groebner_basis(&[x.add(&y), y.clone()], MonomialOrder::Lex);
        assert_eq!(gb, alloc::vec![x, y]);
    }

    #[test]
    fn already_groebner_lex() {
        // {x^2 + y, y^2}: the only S-pair has coprime leading terms.
        let r = Ring::rational(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let f = x.pow(2).add(&y);
        let g = y.pow(2);
        let gb = groebner_basis(&[f.clone(), g.clone()], MonomialOrder::Lex);
        assert_eq!(gb, alloc::vec![f.clone(), g.clone()]);
        // hand division: S(f, g) = y^2 f - x^2 g = y^3 = y * g
        let s = s_polynomial(&f, &g, MonomialOrder::Lex);
        assert_eq!(s, y.pow(3));
        assert!(reduce(&s, &gb, MonomialOrder::Lex).is_zero());
    }

    #[test]
    fn example_three_three_generators() {
        let r = Ring::rational(&["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let one_minus_x = r.one().sub(&x);
        let gens = [y.mul(&one_minus_x), z.mul(&one_minus_x), x.clone()];
        let gb = groebner_basis(&gens, MonomialOrder::GrevLex);
        assert_eq!(gb, alloc::vec![x, y, z]);
    }

    #[test]
    fn unit_and_zero_ideal() {
        let r = Ring::rational(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let gb = groebner_basis(&[x.clone(), x.sub(&r.one()), y], MonomialOrder::GrevLex);
        assert_eq!(gb, alloc::vec![r.one()]);
        assert!(groebner_basis(&[], MonomialOrder::GrevLex).is_empty());
        assert!(groebner_basis(&[r.zero()], MonomialOrder::GrevLex).is_empty());
    }

    #[test]
    fn lift_recovers_cofactors() {
        let r = Ring::rational(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let gens = [y.mul(&r.one().sub(&x)), x.clone()];
        let h = lift(&y, &gens, MonomialOrder::GrevLex).expect("y in ideal");
        let back = h[0].mul(&gens[0]).add(&h[1].mul(&gens[1]));
        assert_eq!(back, y);
        assert!(lift(&r.one(), &[x], MonomialOrder::GrevLex).is_none());
    }
}
