//! Exact graded commutative algebra over ZZ, F_p and QQ.

pub mod error;
pub mod catalog;
pub mod format;
pub mod graded;
pub mod hilton;
pub mod groebner;
pub mod matrix;
pub mod ring;
pub mod ringmap;
pub mod steenrod;

pub use error::{Error, Result};
pub use groebner::{
    eliminate, groebner_basis, groebner_basis_with, ideal_contains, ideal_equal, normal_form,
    GroebnerBasis, GroebnerOptions, Ideal,
};
pub use ring::{
    Coeff, CoefficientDomain, DegreeInfo, GradedRing, Monomial, MonomialOrder, Polynomial,
    Variable,
};
pub use ringmap::{QuotientPresentation, RingMap};
pub use steenrod::SteenrodAction;
