//! Feasibility tests, parameter identification, catalogue matching and
//! inductive enumeration for functional causal structures over two binary
//! observed variables with discrete latent causes.
//!
//! The pipeline: a causal model (boolean functions of latent bits) induces a
//! parametrization of the joint distribution p_ab by latent probabilities q;
//! a lex Groebner basis of the ideal <p_ab - g_ab(q)> exposes the q-free
//! equality constraints (implicitization), identification formulas for the
//! q's, and the quadratic elements whose discriminants bound the feasible
//! region. A catalogue of observational equivalence classes ships as data and
//! is cross-checked by enumeration.

pub mod catalogue;
pub mod error;
pub mod feasibility;
pub mod geometry;
pub mod implicitization;
pub mod model;
pub mod poly;

pub use error::{Error, Result};
