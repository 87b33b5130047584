//! Exact sparse polynomial arithmetic over the rationals, lexicographic
//! Groebner bases and elimination ideals.

mod arith;
mod univariate;
mod buchberger;
mod division;
mod parse;
mod ring;

pub use arith::{rational_to_f64, Coef, Polynomial};
pub use buchberger::{
    buchberger, buchberger_with, eliminate_linear, GbBudget, GroebnerBasis, Ideal,
};
pub use division::{divide, normal_form};
pub use parse::{parse_polynomial, parse_rational};
pub use ring::{Monomial, MonomialOrder, Ring};
pub use univariate::UniPoly;
