//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept sorted descending in the lex order of the ring, with no
//! zero coefficients, so structural equality is semantic equality.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use super::ring::{check_same_ring, Monomial, MonomialOrder, Ring};
use crate::error::{Error, Result};

pub type Coef = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    /// Sorted descending by lex; coefficients nonzero.
    terms: Vec<(Monomial, Coef)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: Coef) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.len()), c)] }
    }

    pub fn constant_i64(ring: &Ring, c: i64) -> Polynomial {
        Polynomial::constant(ring, Coef::from_integer(c.into()))
    }

    pub fn var(ring: &Ring, idx: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.len(), idx, 1), Coef::one())],
        }
    }

    pub fn from_terms(ring: &Ring, terms: Vec<(Monomial, Coef)>) -> Polynomial {
        let mut p = Polynomial { ring: ring.clone(), terms };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        self.terms
            .sort_by(|a, b| MonomialOrder::Lex.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coef)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coef)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.degree_of(var)).max().unwrap_or(0)
    }

    /// Variables actually occurring.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.ring.len();
        let mut seen = vec![false; n];
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }

    /// Leading term under `order`. Terms are stored lex-sorted, so lex is O(1).
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &Coef)> {
        match order {
            MonomialOrder::Lex => self.terms.first().map(|(m, c)| (m, c)),
            _ => self
                .terms
                .iter()
                .max_by(|a, b| order.cmp(&a.0, &b.0))
                .map(|(m, c)| (m, c)),
        }
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn make_monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &Coef) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), -k)).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, other.ring, "ring mismatch in add");
        // merge of two descending term lists
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match MonomialOrder::Lex.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// self - (m, c) * other, the reduction step of multivariate division.
    pub fn sub_mul_term(&self, m: &Monomial, c: &Coef, other: &Polynomial) -> Polynomial {
        let shifted = Polynomial {
            ring: other.ring.clone(),
            terms: other
                .terms
                .iter()
                .map(|(om, oc)| (om.mul(m), -(oc * c)))
                .collect(),
        };
        self.add(&shifted)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, other.ring, "ring mismatch in mul");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coef) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(om, oc)| (om.mul(m), oc * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(&self.ring, Coef::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn coeff(&self, m: &Monomial) -> Coef {
        self.terms
            .iter()
            .find(|(tm, _)| tm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coef::zero)
    }

    /// Collects the coefficient (a polynomial in the remaining variables) of
    /// `var^k`.
    pub fn coeff_of_power(&self, var: usize, k: u16) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree_of(var) == k)
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps[var] = 0;
                (Monomial::from_exps(&exps), c.clone())
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Replaces `var` by `rep` everywhere.
    pub fn substitute(&self, var: usize, rep: &Polynomial) -> Polynomial {
        assert_eq!(self.ring, rep.ring, "ring mismatch in substitute");
        let maxdeg = self.degree_in(var);
        // powers of rep computed once
        let mut pows = Vec::with_capacity(maxdeg as usize + 1);
        pows.push(Polynomial::constant(&self.ring, Coef::one()));
        for k in 1..=maxdeg {
            pows.push(pows[k as usize - 1].mul(rep));
        }
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let k = m.degree_of(var);
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            let rest = Polynomial {
                ring: self.ring.clone(),
                terms: vec![(Monomial::from_exps(&exps), c.clone())],
            };
            acc = acc.add(&rest.mul(&pows[k as usize]));
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree_of(var) > 0)
            .map(|(m, c)| {
                let k = m.degree_of(var);
                let mut exps = m.exps().to_vec();
                exps[var] = k - 1;
                (Monomial::from_exps(&exps), c * Coef::from_integer(k.into()))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[Coef]) -> Coef {
        assert_eq!(point.len(), self.ring.len(), "point dimension mismatch");
        let mut acc = Coef::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (i, &e) in m.exps().iter().enumerate() {
                t *= point[i].powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Rewrites the polynomial into a target ring containing (at least) all
    /// variables actually used here, matched by name.
    pub fn embed(&self, target: &Ring) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    match map[i] {
                        Some(j) => exps[j] = e,
                        None => {
                            return Err(Error::RingMismatch(format!(
                                "variable {} not present in target ring",
                                self.ring.var_name(i)
                            )))
                        }
                    }
                }
            }
            terms.push((Monomial::from_exps(&exps), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    pub(crate) fn check_ring(&self, other: &Polynomial) -> Result<()> {
        check_same_ring(&self.ring, &other.ring)
    }
}

pub fn rational_to_f64(c: &Coef) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        // fall back to a division of truncated parts for huge values
        let n = c.numer().to_f64().unwrap_or(if c.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let mut first = true;
            for (idx, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "{}", self.ring.var_name(idx))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring2() -> Ring {
        Ring::new(["x", "y"]).unwrap()
    }

    fn parse(r: &Ring, s: &str) -> Polynomial {
        super::super::parse::parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn add_cancels() {
        let r = ring2();
        let p = parse(&r, "x^2 + x*y - 1");
        let q = parse(&r, "-x^2 + 2");
        assert_eq!(p.add(&q), parse(&r, "x*y + 1"));
    }

    #[test]
    fn mul_expands() {
        let r = ring2();
        let p = parse(&r, "x + y");
        assert_eq!(p.mul(&p), parse(&r, "x^2 + 2*x*y + y^2"));
    }

    #[test]
    fn substitute_var() {
        let r = ring2();
        let p = parse(&r, "x^2 + y");
        let rep = parse(&r, "1 - y");
        assert_eq!(p.substitute(0, &rep), parse(&r, "y^2 - y + 1"));
    }

    #[test]
    fn eval_exact() {
        let r = ring2();
        let p = parse(&r, "x^2*y - 1/2");
        let half = Coef::new(1.into(), 2.into());
        let v = p.eval(&[half.clone(), half]);
        assert_eq!(v, Coef::new((-3).into(), 8.into()));
    }

    #[test]
    fn display_round_trip() {
        let r = ring2();
        let p = parse(&r, "3*x^2 - 1/2*x*y + y - 4");
        let q = parse(&r, &p.to_string());
        assert_eq!(p, q);
    }
}
