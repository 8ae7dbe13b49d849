//! Exact commutative algebra over `ℚ` and `𝔽_p`: Gröbner bases, monomial local
//! cohomology via sign-pattern Čech complexes, generalized fractions, and tests
//! for relative Cohen-Macaulayness.
//!
//! The crate is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod field;
pub mod genfrac;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod local_cohomology;
pub mod module;
pub mod monomial;
pub mod monomial_ideal;
pub mod poly;
pub mod relcm;
pub mod simplicial;

pub use error::{Error, Result};
pub use field::{Coeff, Field};
pub use ideal::{
    ideal_membership, ideal_quotient, is_regular_element, is_regular_sequence, radical_contains, radical_equal,
    radical_membership, Ideal, RegularSequence,
};
pub use local_cohomology::Cd;
pub use monomial::{Monomial, MonomialOrder};
pub use monomial_ideal::MonomialIdeal;
pub use poly::{Polynomial, Ring};
pub use relcm::{ModulePresentation, SearchConfig};
