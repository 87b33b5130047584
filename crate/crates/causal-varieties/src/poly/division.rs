//! Multivariate division with remainder.

use super::arith::Polynomial;
use super::ring::MonomialOrder;
use crate::error::{Error, Result};

/// Division of `f` by an ordered list of divisors: f = sum(q_i * b_i) + r,
/// with no monomial of r divisible by any leading term of the basis.
pub fn divide(
    f: &Polynomial,
    basis: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    for b in basis {
        f.check_ring(b)?;
        if b.is_zero() {
            return Err(Error::Invalid("zero divisor in basis".into()));
        }
    }
    let ring = f.ring();
    let mut quotients = vec![Polynomial::zero(ring); basis.len()];
    let mut remainder = Polynomial::zero(ring);
    let mut work = f.clone();

    let leads: Vec<_> = basis
        .iter()
        .map(|b| {
            let (m, c) = b.leading_term(order).expect("nonzero divisor");
            (m.clone(), c.clone())
        })
        .collect();

    while let Some((lm, lc)) = work.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for (i, (bm, bc)) in leads.iter().enumerate() {
            if let Some(q) = bm.div(&lm) {
                let coef = &lc / bc;
                quotients[i] = quotients[i].add(&Polynomial::from_terms(
                    ring,
                    vec![(q.clone(), coef.clone())],
                ));
                work = work.sub_mul_term(&q, &coef, &basis[i]);
                reduced = true;
                break;
            }
        }
        if !reduced {
            // move leading term to the remainder
            let t = Polynomial::from_terms(ring, vec![(lm.clone(), lc.clone())]);
            remainder = remainder.add(&t);
            work = work.sub(&t);
        }
    }
    Ok((quotients, remainder))
}

/// Remainder of `f` on division by `basis`.
pub fn normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    order: MonomialOrder,
) -> Result<Polynomial> {
    divide(f, basis, order).map(|(_, r)| r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;
    use crate::poly::ring::Ring;

    fn parse(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn membership_and_no_division() {
        let r = Ring::new(["x", "y"]).unwrap();
        let x = parse(&r, "x");
        // x^2 mod {x} -> 0
        let nf = normal_form(&parse(&r, "x^2"), &[x.clone()], MonomialOrder::Lex).unwrap();
        assert!(nf.is_zero());
        // y mod {x} -> y
        let nf = normal_form(&parse(&r, "y"), &[x], MonomialOrder::Lex).unwrap();
        assert_eq!(nf, parse(&r, "y"));
    }

    #[test]
    fn remainder_not_divisible() {
        let r = Ring::new(["x", "y"]).unwrap();
        let basis = vec![parse(&r, "x*y - 1"), parse(&r, "y^2 - 1")];
        let f = parse(&r, "x^2*y + x*y^2 + y^2");
        let (qs, rem) = divide(&f, &basis, MonomialOrder::Lex).unwrap();
        // reconstruction is exact
        let mut acc = rem.clone();
        for (q, b) in qs.iter().zip(&basis) {
            acc = acc.add(&q.mul(b));
        }
        assert_eq!(acc, f);
        // classic C-L-O'S example: remainder is x + y + 1
        assert_eq!(rem, parse(&r, "x + y + 1"));
    }

    #[test]
    fn empty_basis_rejected() {
        let r = Ring::new(["x"]).unwrap();
        assert!(normal_form(&parse(&r, "x"), &[], MonomialOrder::Lex).is_err());
    }
}
