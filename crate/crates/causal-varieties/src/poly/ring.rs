//! Variable rings, monomials and monomial orders.
//!
//! A ring is an ordered list of variable names; the position of a name in the
//! list is its lex rank (leftmost = largest). Monomials are exponent vectors
//! aligned with the ring.

use smallvec::SmallVec;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of variable names shared by all polynomials of a computation.
#[derive(Clone, Debug)]
pub struct Ring {
    inner: Arc<Vec<String>>,
}

impl Ring {
    pub fn new<I, S>(vars: I) -> Result<Ring>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.is_empty() {
            return Err(Error::Invalid("ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Invalid(format!("duplicate variable {v}")));
            }
        }
        Ok(Ring { inner: Arc::new(vars) })
    }

    pub fn vars(&self) -> &[String] {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.inner.iter().position(|v| v == name)
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.inner[idx]
    }
}

/// Rings compare by variable lists, so independently built rings interoperate.
impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}
impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k[{}]", self.inner.join(", "))
    }
}

pub(crate) type Exps = SmallVec<[u16; 10]>;

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub(crate) exps: Exps,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: smallvec::smallvec![0; nvars] }
    }

    pub fn from_exps(exps: &[u16]) -> Monomial {
        Monomial { exps: SmallVec::from_slice(exps) }
    }

    pub fn var(nvars: usize, idx: usize, pow: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[idx] = pow;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn degree_of(&self, var: usize) -> u16 {
        self.exps[var]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// other / self, when self divides other.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Some(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial { exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when none of the first `l` variables occur.
    pub fn free_of_first(&self, l: usize) -> bool {
        self.exps[..l].iter().all(|&e| e == 0)
    }
}

/// Monomial orders. Lexicographic is the workhorse; graded lex is available
/// as an extension and for exercising the order axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Lex,
    GrLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(&a.exps, &b.exps),
            MonomialOrder::GrLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| lex_cmp(&a.exps, &b.exps)),
        }
    }
}

fn lex_cmp(a: &[u16], b: &[u16]) -> Ordering {
    // leftmost non-zero entry of a - b decides
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

pub(crate) fn check_same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(format!("{a} vs {b}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_basics() {
        let x2 = Monomial::from_exps(&[2, 0]);
        let xy = Monomial::from_exps(&[1, 1]);
        let y3 = Monomial::from_exps(&[0, 3]);
        assert_eq!(MonomialOrder::Lex.cmp(&x2, &xy), Ordering::Greater);
        assert_eq!(MonomialOrder::Lex.cmp(&xy, &y3), Ordering::Greater);
        // graded order ranks by total degree first
        assert_eq!(MonomialOrder::GrLex.cmp(&y3, &x2), Ordering::Greater);
    }

    #[test]
    fn monomial_division() {
        let xy = Monomial::from_exps(&[1, 1]);
        let x = Monomial::from_exps(&[1, 0]);
        assert!(x.divides(&xy));
        assert_eq!(x.div(&xy).unwrap(), Monomial::from_exps(&[0, 1]));
        assert!(xy.div(&x).is_none());
        assert_eq!(x.lcm(&xy), xy);
    }

    #[test]
    fn duplicate_vars_rejected() {
        assert!(Ring::new(["x", "x"]).is_err());
    }
}
