//! Rings and sparse multivariate polynomials.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::field::{Coeff, Field};
use crate::monomial::{Monomial, MonomialOrder};

/// Variables, coefficient field and default monomial order of `K[x₁,…,xₙ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub variable_names: Vec<String>,
    pub field: Field,
    pub order: MonomialOrder,
}

/// Shared handle to a [`RingSpec`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring(Arc<RingSpec>);

impl Ring {
    /// Returns `None` when the variable list is empty or has duplicates.
    pub fn new<S: AsRef<str>>(names: &[S], field: Field, order: MonomialOrder) -> Option<Ring> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() {
            return None;
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return None;
            }
        }
        Some(Ring(Arc::new(RingSpec {
            variable_names: names,
            field,
            order,
        })))
    }

    /// `QQ[names]` with grevlex.
    pub fn rational(names: &[&str]) -> Ring {
        Ring::new(names, Field::Rationals, MonomialOrder::GrevLex).expect("valid variable names")
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.variable_names.len()
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.0.order
    }

    pub fn names(&self) -> &[String] {
        &self.0.variable_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.variable_names.iter().position(|n| n == name)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::monomial(Monomial::variable(self.nvars(), i), self.field().one())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.nvars())
    }

    pub fn one(&self) -> Polynomial {
        self.constant(self.field().one())
    }

    pub fn int(&self, v: i64) -> Polynomial {
        self.constant(self.field().from_i64(v))
    }

    pub fn constant(&self, c: Coeff) -> Polynomial {
        Polynomial::monomial(Monomial::one(self.nvars()), c)
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        Polynomial::monomial(m, self.field().one())
    }

    /// Same ring with a different default order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring {
        Ring(Arc::new(RingSpec {
            order,
            ..self.0.as_ref().clone()
        }))
    }

    /// Canonical text of `p`: terms descending in the ring order, exact coefficients.
    pub fn display<'a>(&'a self, p: &'a Polynomial) -> PolyDisplay<'a> {
        PolyDisplay { ring: self, poly: p }
    }

    pub fn format(&self, p: &Polynomial) -> String {
        self.display(p).to_string()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut out = String::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('*');
            }
            out.push_str(&self.0.variable_names[i]);
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

/// A polynomial: terms sorted strictly descending by the lexicographic
/// comparison of exponent vectors, with no zero coefficients. Two equal
/// polynomials have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn monomial(m: Monomial, c: Coeff) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            return Polynomial::zero(nvars);
        }
        Polynomial {
            nvars,
            terms: alloc::vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, Coeff)>) -> Self {
        let mut map: alloc::collections::BTreeMap<Monomial, Coeff> = Default::default();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match map.get_mut(&m) {
                Some(acc) => *acc = &*acc + &c,
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || self.is_unit()
    }

    /// A single term (a scalar multiple of a monomial).
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.terms.as_slice() {
            [(m, _)] => Some(m),
            _ => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<&(Monomial, Coeff)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Coeff> {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, ca) = &self.terms[i];
            let (b, cb) = &other.terms[j];
            match a.cmp(b) {
                Ordering::Greater => {
                    out.push((a.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.clone(), if negate { -cb } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((a.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })),
        );
        Polynomial {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // Lex order is multiplicative, so the term order is preserved.
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_monomial(m).scale(c));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = match self.terms.first() {
            Some((_, c)) => Polynomial::monomial(Monomial::one(self.nvars), c.field().one()),
            None if k == 0 => panic!("0^0 has no field context"),
            None => return self.clone(),
        };
        for _ in 0..k {
            result = result.mul(self);
        }
        result
    }

    /// Divide by the leading coefficient with respect to `order`.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Embed into a ring with `extra` additional trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self.terms.iter().map(|(m, c)| (m.extend(extra), c.clone())).collect(),
        }
    }

    /// Drop the trailing variables (which must not occur).
    pub fn truncate_vars(&self, nvars: usize) -> Polynomial {
        debug_assert!(self
            .terms
            .iter()
            .all(|(m, _)| m.exponents()[nvars..].iter().all(|&e| e == 0)));
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.exponents()[..nvars].to_vec()), c.clone()))
                .collect(),
        }
    }

    pub fn support_mask(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }
}

pub struct PolyDisplay<'a> {
    ring: &'a Ring,
    poly: &'a Polynomial,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let order = self.ring.order();
        let mut terms: Vec<&(Monomial, Coeff)> = self.poly.terms().iter().collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let r = Ring::rational(&["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let f = y.mul(&r.one().sub(&x)); // y(1 - x)
        assert_eq!(r.format(&f), "-x*y + y");
        let g = x.add(&y).pow(2);
        assert_eq!(r.format(&g), "x^2 + 2*x*y + y^2");
        assert!(g.is_homogeneous());
        assert!(!f.is_homogeneous());
        assert!(f.sub(&f).is_zero());
        assert_eq!(z.mul(&x).as_monomial(), Some(&Monomial::new(alloc::vec![1, 0, 1])));
    }

    #[test]
    fn canonical_form_is_order_independent() {
        let r = Ring::rational(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let a = x.add(&y).add(&r.int(3));
        let b = r.int(3).add(&y).add(&x);
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_duplicate_names() {
        assert!(Ring::new(&["x", "x"], Field::Rationals, MonomialOrder::GrevLex).is_none());
        assert!(Ring::new::<&str>(&[], Field::Rationals, MonomialOrder::GrevLex).is_none());
    }
}
