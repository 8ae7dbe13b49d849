//! Monomial ideals: minimal generators, radicals, irreducible decompositions,
//! associated primes and Alexander duality.

use alloc::vec::Vec;

use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Ring};

/// A monomial ideal in `n` variables, stored by its minimal generators (sorted).
/// The zero ideal has no generators; the unit ideal is generated by `1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal::new(nvars, Vec::new())
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal::new(nvars, alloc::vec![Monomial::one(nvars)])
    }

    /// Squarefree ideal generated by the given variable masks.
    pub fn from_masks(nvars: usize, masks: &[u32]) -> Self {
        MonomialIdeal::new(nvars, masks.iter().map(|&m| Monomial::from_mask(nvars, m)).collect())
    }

    /// The ideal generated by the variables in `mask`.
    pub fn prime(nvars: usize, mask: u32) -> Self {
        MonomialIdeal::new(
            nvars,
            (0..nvars)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| Monomial::variable(nvars, i))
                .collect(),
        )
    }

    /// Monomial generators of a polynomial ideal whose reduced Gröbner basis is monomial.
    pub fn from_ideal(ideal: &Ideal) -> Option<Self> {
        ideal
            .monomial_generators()
            .map(|g| MonomialIdeal::new(ideal.ring().nvars(), g))
    }

    pub fn to_ideal(&self, ring: &Ring) -> Ideal {
        let one = ring.field().one();
        Ideal::new(
            ring,
            self.gens
                .iter()
                .map(|m| Polynomial::monomial(m.clone(), one.clone()))
                .collect(),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Squarefree membership for a variable mask.
    pub fn contains_mask(&self, mask: u32) -> bool {
        self.contains(&Monomial::from_mask(self.nvars, mask))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        MonomialIdeal::new(self.nvars, g)
    }

    pub fn with(&self, m: &Monomial) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.push(m.clone());
        MonomialIdeal::new(self.nvars, g)
    }

    /// `(I : m)`.
    pub fn quotient(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.gens
                .iter()
                .map(|g| {
                    Monomial::new(
                        g.exponents()
                            .iter()
                            .zip(m.exponents())
                            .map(|(a, b)| a.saturating_sub(*b))
                            .collect(),
                    )
                })
                .collect(),
        )
    }

    /// Supports of the minimal generators; only meaningful for squarefree ideals.
    pub fn masks(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.support()).collect()
    }

    pub fn squarefree_radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.nvars,
            self.gens
                .iter()
                .map(|g| Monomial::from_mask(self.nvars, g.support()))
                .collect(),
        )
    }

    /// Irredundant decomposition into ideals generated by pure powers of variables.
    pub fn irreducible_decomposition(&self) -> Vec<MonomialIdeal> {
        let mut done: Vec<MonomialIdeal> = Vec::new();
        let mut stack = alloc::vec![self.clone()];
        while let Some(i) = stack.pop() {
            if i.is_unit() {
                continue;
            }
            match i.gens.iter().find(|g| g.support().count_ones() > 1) {
                None => done.push(i),
                Some(g) => {
                    // g = x_v^e · h with h ≠ 1 coprime to x_v: I = (I + x_v^e) ∩ (I + h)
                    let v = g.support().trailing_zeros() as usize;
                    let mut p = alloc::vec![0; self.nvars];
                    p[v] = g.exponent(v);
                    let pure = Monomial::new(p);
                    let rest = g.div(&pure).unwrap();
                    stack.push(i.with(&pure));
                    stack.push(i.with(&rest));
                }
            }
        }
        done.sort_by(|a, b| a.gens.cmp(&b.gens));
        done.dedup();
        let keep: Vec<bool> = (0..done.len())
            .map(|i| !(0..done.len()).any(|j| j != i && done[i].contains_ideal(&done[j]) && done[i] != done[j]))
            .collect();
        done.into_iter().zip(keep).filter_map(|(d, k)| k.then_some(d)).collect()
    }

    /// Associated primes, as variable masks (the supports of the irreducible components).
    pub fn associated_primes(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self
            .irreducible_decomposition()
            .iter()
            .map(|c| c.gens.iter().fold(0, |m, g| m | g.support()))
            .collect();
        p.sort();
        p.dedup();
        p
    }

    /// Minimal primes, as variable masks.
    pub fn minimal_primes(&self) -> Vec<u32> {
        let all = self.associated_primes();
        all.iter()
            .copied()
            .filter(|&p| !all.iter().any(|&q| q != p && q & !p == 0))
            .collect()
    }

    /// Alexander dual of a squarefree ideal: generated by the products of the
    /// variables in each minimal prime (equivalently, complements of facets).
    pub fn alexander_dual(&self) -> MonomialIdeal {
        assert!(self.is_squarefree(), "Alexander duality needs a squarefree ideal");
        if self.is_unit() {
            return MonomialIdeal::zero(self.nvars);
        }
        let primes = self.minimal_primes();
        MonomialIdeal::from_masks(self.nvars, &primes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    fn intersect_contains(parts: &[MonomialIdeal], g: &Monomial) -> bool {
        parts.iter().all(|p| p.contains(g))
    }

    /// Two-sided check that `I = ∩ parts`: every generator of `I` lies in every
    /// part, and the lcm of any choice of part generators lies in `I`.
    fn assert_intersection(i: &MonomialIdeal, parts: &[MonomialIdeal]) {
        for g in i.generators() {
            assert!(intersect_contains(parts, g));
        }
        fn rec(parts: &[MonomialIdeal], acc: Monomial, i: &MonomialIdeal) {
            match parts.split_first() {
                None => assert!(i.contains(&acc)),
                Some((p, rest)) => {
                    for g in p.generators() {
                        rec(rest, acc.lcm(g), i);
                    }
                }
            }
        }
        rec(parts, Monomial::one(i.nvars()), i);
    }

    #[test]
    fn radical_examples() {
        let i = MonomialIdeal::new(3, vec![m(&[2, 1, 0]), m(&[0, 0, 3])]);
        assert_eq!(
            i.squarefree_radical(),
            MonomialIdeal::new(3, vec![m(&[1, 1, 0]), m(&[0, 0, 1])])
        );
        let xz = MonomialIdeal::new(2, vec![m(&[1, 1])]);
        assert_eq!(xz.squarefree_radical(), xz);
        let j = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 2])]);
        assert_eq!(j.squarefree_radical(), MonomialIdeal::new(2, vec![m(&[1, 0])]));
    }

    #[test]
    fn decomposition_examples() {
        let xy = MonomialIdeal::new(2, vec![m(&[1, 1])]);
        let d = xy.irreducible_decomposition();
        assert_eq!(d.len(), 2);
        assert_intersection(&xy, &d);

        let tri = MonomialIdeal::from_masks(3, &[0b011, 0b101, 0b110]);
        let d = tri.irreducible_decomposition();
        assert_eq!(d.len(), 3);
        assert_intersection(&tri, &d);
        assert_eq!(tri.associated_primes(), vec![0b011, 0b101, 0b110]);

        let x2y = MonomialIdeal::new(2, vec![m(&[2, 1])]);
        let d = x2y.irreducible_decomposition();
        assert!(d.contains(&MonomialIdeal::new(2, vec![m(&[2, 0])])));
        assert!(d.contains(&MonomialIdeal::new(2, vec![m(&[0, 1])])));
        assert_intersection(&x2y, &d);
        assert_eq!(x2y.associated_primes(), vec![0b01, 0b10]);
        assert_eq!(MonomialIdeal::from_masks(1, &[1]).associated_primes(), vec![1]);
    }

    #[test]
    fn embedded_component_is_kept() {
        // ⟨x², xy⟩ = ⟨x⟩ ∩ ⟨x², y⟩
        let i = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1])]);
        assert_eq!(i.associated_primes(), vec![0b01, 0b11]);
        assert_eq!(i.minimal_primes(), vec![0b01]);
        assert_intersection(&i, &i.irreducible_decomposition());
    }

    #[test]
    fn alexander_duality() {
        let tri = MonomialIdeal::from_masks(3, &[0b011, 0b101, 0b110]);
        assert_eq!(tri.alexander_dual(), tri);
        assert_eq!(tri.alexander_dual().alexander_dual(), tri);
        let x = MonomialIdeal::from_masks(2, &[0b01]);
        assert_eq!(x.alexander_dual(), x);
        let xyz = MonomialIdeal::from_masks(3, &[0b111]);
        assert_eq!(xyz.alexander_dual(), MonomialIdeal::from_masks(3, &[1, 2, 4]));
        assert_eq!(MonomialIdeal::zero(2).alexander_dual(), MonomialIdeal::unit(2));
    }

    #[test]
    fn quotient_and_membership() {
        let i = MonomialIdeal::new(3, vec![m(&[1, 0, 1])]);
        assert_eq!(i.quotient(&m(&[0, 0, 1])), MonomialIdeal::new(3, vec![m(&[1, 0, 0])]));
        assert!(i.contains(&m(&[2, 0, 1])));
        assert!(!i.contains(&m(&[0, 1, 0])));
    }
}
