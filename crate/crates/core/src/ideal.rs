//! Ideals of `K[x₁,…,xₙ]` and the ideal-theoretic predicates built on Gröbner bases.

use alloc::boxed::Box;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::groebner::{self, ModuleOrder, Vector};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

/// An ideal given by generators, with a lazily computed reduced Gröbner basis
/// for the ring's default order. The cache is write-once and safe to share
/// between threads.
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    gb_cache: OnceBox<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb_cache = OnceBox::new();
        if let Some(gb) = self.gb_cache.get() {
            let _ = gb_cache.set(Box::new(gb.clone()));
        }
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            gb_cache,
        }
    }
}

impl core::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list()
            .entries(self.generators.iter().map(|g| self.ring.format(g)))
            .finish()
    }
}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Ideal {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring: ring.clone(),
            generators,
            gb_cache: OnceBox::new(),
        }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, alloc::vec![ring.one()])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Replacing the generators drops the cached basis.
    pub fn set_generators(&mut self, generators: Vec<Polynomial>) {
        *self = Ideal::new(&self.ring, generators);
    }

    /// Reduced Gröbner basis for the ring's default order (cached).
    pub fn groebner(&self) -> &[Polynomial] {
        self.gb_cache
            .get_or_init(|| Box::new(groebner::groebner_basis(&self.generators, self.ring.order())))
    }

    /// Reduced Gröbner basis for an arbitrary order; only the default order is cached.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Vec<Polynomial> {
        if order == self.ring.order() {
            self.groebner().to_vec()
        } else {
            groebner::groebner_basis(&self.generators, order)
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        groebner::reduce(f, self.groebner(), self.ring.order())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_unit())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.groebner() == other.groebner()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn with(&self, extra: &[Polynomial]) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    /// Monomial generators when the reduced basis consists of monomials.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        self.groebner().iter().map(|g| g.as_monomial().cloned()).collect()
    }

    /// `(self : f) = {g : g f ∈ self}`, computed from the syzygies of `(f, g₁, …, gₛ)`.
    pub fn quotient(&self, f: &Polynomial) -> Ideal {
        assert!(!f.is_zero(), "quotient by the zero polynomial");
        if f.is_unit() || self.is_zero() {
            return self.clone();
        }
        let nvars = self.ring.nvars();
        let ord = ModuleOrder::new(self.ring.order());
        let gens = self.groebner();
        let s = gens.len();
        // Generators (f | e₀), (gᵢ | eᵢ) in R^{1+(1+s)}; eliminating component 0 leaves syzygies.
        let one = self.ring.one();
        let mut vecs = Vec::with_capacity(s + 1);
        for (i, g) in core::iter::once(f).chain(gens.iter()).enumerate() {
            let mut comps = alloc::vec![Polynomial::zero(nvars); s + 2];
            comps[0] = g.clone();
            comps[i + 1] = one.clone();
            vecs.push(Vector::from_components(&comps, ord));
        }
        let basis = groebner::groebner(&vecs, ord, false);
        let quotient_gens: Vec<Polynomial> = basis
            .iter()
            .filter(|v| v.lead_component() != Some(0))
            .map(|v| v.to_components(s + 2, nvars)[1].clone())
            .filter(|p| !p.is_zero())
            .collect();
        Ideal::new(&self.ring, quotient_gens)
    }
}

/// `f ∈ I`.
pub fn ideal_membership(f: &Polynomial, ideal: &Ideal) -> bool {
    ideal.contains(f)
}

/// `f ∈ Rad(I)`, by testing `1 ∈ I + ⟨1 − t f⟩` in `R[t]`.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal) -> bool {
    if f.is_zero() || ideal.contains(f) {
        return true;
    }
    if ideal.is_zero() {
        return false;
    }
    let n = ideal.ring().nvars();
    let t = Polynomial::monomial(Monomial::variable(n + 1, n), f.terms()[0].1.field().one());
    let one = Polynomial::monomial(Monomial::one(n + 1), f.terms()[0].1.field().one());
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.extend_vars(1)).collect();
    gens.push(one.sub(&t.mul(&f.extend_vars(1))));
    let gb = groebner::groebner_basis(&gens, MonomialOrder::GrevLex);
    gb.iter().any(|g| g.is_unit())
}

/// `Rad(I) = Rad(J)`.
pub fn radical_equal(i: &Ideal, j: &Ideal) -> bool {
    radical_contains(i, j) && radical_contains(j, i)
}

/// `Rad(big) ⊇ small`, i.e. every generator of `small` lies in `Rad(big)`.
pub fn radical_contains(big: &Ideal, small: &Ideal) -> bool {
    small.generators().iter().all(|g| radical_membership(g, big))
}

/// `(I : f)`.
pub fn ideal_quotient(ideal: &Ideal, f: &Polynomial) -> Ideal {
    ideal.quotient(f)
}

/// `f` is a nonzerodivisor on `R/c`, i.e. `(c : f) = c`.
pub fn is_regular_element(f: &Polynomial, c: &Ideal) -> crate::Result<bool> {
    if f.is_zero() {
        return Err(crate::Error::InvalidInput("the zero element is never regular".into()));
    }
    if c.is_unit() {
        return Err(crate::Error::InvalidInput("R/c is the zero module".into()));
    }
    Ok(c.contains_ideal(&c.quotient(f)))
}

/// Outcome of [`is_regular_sequence`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegularSequence {
    Regular,
    /// The element at this 1-based position is a zerodivisor (or zero)
    /// modulo `c` plus its predecessors.
    FailsAt(usize),
    /// Every element is a nonzerodivisor but the final quotient is zero.
    ImproperQuotient,
}

impl RegularSequence {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegularSequence::Regular)
    }
}

/// Tests whether `seq` is an `R/c`-regular sequence.
pub fn is_regular_sequence(seq: &[Polynomial], c: &Ideal) -> crate::Result<RegularSequence> {
    if c.is_unit() {
        return Err(crate::Error::InvalidInput("R/c is the zero module".into()));
    }
    let mut current = c.clone();
    for (k, f) in seq.iter().enumerate() {
        if current.is_unit() {
            return Ok(RegularSequence::ImproperQuotient);
        }
        if f.is_zero() || !current.contains_ideal(&current.quotient(f)) {
            return Ok(RegularSequence::FailsAt(k + 1));
        }
        current = current.with(core::slice::from_ref(f));
    }
    if current.is_unit() {
        return Ok(RegularSequence::ImproperQuotient);
    }
    Ok(RegularSequence::Regular)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn xyz() -> (Ring, Polynomial, Polynomial, Polynomial) {
        let r = Ring::rational(&["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        (r, x, y, z)
    }

    #[test]
    fn membership_examples() {
        let (r, x, y, z) = xyz();
        assert!(ideal_membership(&x.pow(2).mul(&z), &Ideal::new(&r, vec![x.mul(&z)])));
        assert!(!ideal_membership(&y, &Ideal::new(&r, vec![x.clone()])));
        let i = Ideal::new(&r, vec![y.mul(&r.one().sub(&x)), x.clone()]);
        assert!(ideal_membership(&y, &i));
    }

    #[test]
    fn radical_membership_examples() {
        let (r, x, _y, z) = xyz();
        assert!(radical_membership(&x, &Ideal::new(&r, vec![x.pow(2)])));
        assert!(!radical_membership(&x, &Ideal::new(&r, vec![z.mul(&x)])));
        assert!(radical_membership(&x.mul(&z), &Ideal::new(&r, vec![x.mul(&z.pow(2))])));
    }

    #[test]
    fn radical_equality_examples() {
        let (r, x, y, z) = xyz();
        assert!(radical_equal(
            &Ideal::new(&r, vec![x.pow(2)]),
            &Ideal::new(&r, vec![x.clone()])
        ));
        assert!(!radical_equal(
            &Ideal::new(&r, vec![z.mul(&x)]),
            &Ideal::new(&r, vec![x.clone()])
        ));
        let omx = r.one().sub(&x);
        let seq = Ideal::new(&r, vec![y.mul(&omx), z.mul(&omx), x.clone()]);
        assert!(radical_equal(&seq, &Ideal::new(&r, vec![x, y, z])));
    }

    #[test]
    fn quotient_examples() {
        let (r, x, y, z) = xyz();
        let q = ideal_quotient(&Ideal::new(&r, vec![x.mul(&z)]), &z);
        assert!(q.equals(&Ideal::new(&r, vec![x.clone()])));
        let i = Ideal::new(&r, vec![x.pow(2), y.clone()]);
        assert!(ideal_quotient(&i, &r.one()).equals(&i));
        let omx = r.one().sub(&x);
        let q = ideal_quotient(&Ideal::new(&r, vec![y.mul(&omx)]), &z.mul(&omx));
        assert!(q.contains(&y));
    }

    #[test]
    fn regular_element_examples() {
        let (r, x, y, z) = xyz();
        assert!(is_regular_element(&x, &Ideal::zero(&r)).unwrap());
        let omx = r.one().sub(&x);
        assert!(!is_regular_element(&z.mul(&omx), &Ideal::new(&r, vec![y.mul(&omx)])).unwrap());
        assert!(is_regular_element(&z.mul(&x.add(&y)), &Ideal::new(&r, vec![x.mul(&y)])).unwrap());
        assert!(is_regular_element(&r.zero(), &Ideal::zero(&r)).is_err());
    }

    #[test]
    fn regular_sequence_examples() {
        let (r, x, y, z) = xyz();
        let zero = Ideal::zero(&r);
        assert_eq!(
            is_regular_sequence(&[x.clone(), y.clone()], &zero).unwrap(),
            RegularSequence::Regular
        );
        let omx = r.one().sub(&x);
        assert_eq!(
            is_regular_sequence(&[y.mul(&omx), z.mul(&omx), x.clone()], &zero).unwrap(),
            RegularSequence::FailsAt(2)
        );
        assert_eq!(
            is_regular_sequence(&[x.mul(&y), z.mul(&x.add(&y))], &zero).unwrap(),
            RegularSequence::Regular
        );
        assert_eq!(is_regular_sequence(&[], &zero).unwrap(), RegularSequence::Regular);
        assert_eq!(
            is_regular_sequence(&[r.one().sub(&x), x.clone()], &zero).unwrap(),
            RegularSequence::ImproperQuotient
        );
    }
}
