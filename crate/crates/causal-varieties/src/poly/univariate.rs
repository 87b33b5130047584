//! Dense univariate polynomials over the rationals: Sturm sequences and
//! real-root isolation, used for exact one-variable existential decisions.

use num_traits::{One, Signed, Zero};

use super::arith::{Coef, Polynomial};

/// coeffs[k] is the coefficient of x^k; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Coef>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Coef>) -> UniPoly {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Coef] {
        &self.coeffs
    }

    /// Collapses a multivariate polynomial that uses only variable `var`.
    pub fn from_multivariate(p: &Polynomial, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Coef::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            for (i, &e) in m.exps().iter().enumerate() {
                if i != var && e > 0 {
                    return None;
                }
            }
            coeffs[m.degree_of(var) as usize] += c;
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn eval(&self, x: &Coef) -> Coef {
        let mut acc = Coef::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Coef::from_integer(k.into()))
                .collect(),
        )
    }

    fn rem(&self, div: &UniPoly) -> UniPoly {
        let mut r = self.coeffs.clone();
        let d = div.degree();
        let lead = &div.coeffs[d];
        while r.len() > d && !r.is_empty() {
            let k = r.len() - 1;
            let factor = r[k].clone() / lead;
            if !factor.is_zero() {
                for j in 0..=d {
                    let idx = k - d + j;
                    let delta = &factor * &div.coeffs[j];
                    r[idx] -= delta;
                }
            }
            r.pop();
            while r.last().map_or(false, |c| c.is_zero()) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let next = chain[n - 2].rem(&chain[n - 1]);
            if next.is_zero() {
                break;
            }
            chain.push(neg(&next));
        }
        chain
    }

    fn sign_variations_at(chain: &[UniPoly], x: &Coef) -> usize {
        let mut variations = 0;
        let mut last: Option<bool> = None;
        for p in chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let sign = v.is_positive();
            if let Some(prev) = last {
                if prev != sign {
                    variations += 1;
                }
            }
            last = Some(sign);
        }
        variations
    }

    /// Number of distinct real roots in the half-open interval (a, b].
    pub fn count_roots(&self, a: &Coef, b: &Coef) -> usize {
        if self.is_zero() {
            panic!("root counting on the zero polynomial");
        }
        let chain = self.sturm_chain();
        let va = Self::sign_variations_at(&chain, a);
        let vb = Self::sign_variations_at(&chain, b);
        va.saturating_sub(vb)
    }

    /// A bound beyond which no real root lies (Cauchy bound).
    pub fn root_bound(&self) -> Coef {
        let lead = self.coeffs.last().expect("nonzero");
        let mut max = Coef::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let ratio = (c / lead).abs();
            if ratio > max {
                max = ratio;
            }
        }
        max + Coef::one()
    }

    /// Disjoint open intervals with rational endpoints, each containing
    /// exactly one distinct real root in (lo, hi).
    pub fn isolate_roots(&self, lo: &Coef, hi: &Coef) -> Vec<(Coef, Coef)> {
        let total = self.count_roots(lo, hi);
        let mut out = Vec::new();
        if total == 0 {
            return out;
        }
        let mut stack = vec![(lo.clone(), hi.clone(), total)];
        while let Some((a, b, count)) = stack.pop() {
            if count == 0 {
                continue;
            }
            if count == 1 {
                out.push((a, b));
                continue;
            }
            let mid = (a.clone() + &b) / Coef::from_integer(2.into());
            // perturb off a root so the split intervals stay clean
            let mid = if self.eval(&mid).is_zero() {
                // isolate the midpoint root in a tiny interval of its own
                let eps = (b.clone() - &a) / Coef::from_integer(1000.into());
                out.push((mid.clone() - &eps, mid.clone() + &eps));
                let left = self.count_roots(&a, &(mid.clone() - &eps));
                let right = self.count_roots(&(mid.clone() + &eps), &b);
                stack.push((a, mid.clone() - &eps, left));
                stack.push((mid + &eps, b, right));
                continue;
            } else {
                mid
            };
            let left = self.count_roots(&a, &mid);
            stack.push((a, mid.clone(), left));
            stack.push((mid, b, count - left));
        }
        out.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("rationals are ordered"));
        out
    }
}

fn neg(p: &UniPoly) -> UniPoly {
    UniPoly::new(p.coeffs.iter().map(|c| -c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Ring};

    fn uni(s: &str) -> UniPoly {
        let r = Ring::new(["x"]).unwrap();
        UniPoly::from_multivariate(&parse_polynomial(&r, s).unwrap(), 0).unwrap()
    }

    fn rat(n: i64, d: i64) -> Coef {
        Coef::new(n.into(), d.into())
    }

    #[test]
    fn counts_and_isolates() {
        // roots at 1/2, 1, 2
        let p = uni("(2*x - 1)*(x - 1)*(x - 2)");
        assert_eq!(p.count_roots(&rat(0, 1), &rat(3, 1)), 3);
        assert_eq!(p.count_roots(&rat(0, 1), &rat(3, 4)), 1);
        let iso = p.isolate_roots(&rat(0, 1), &rat(3, 1));
        assert_eq!(iso.len(), 3);
        for (a, b) in iso {
            assert_eq!(p.count_roots(&a, &b), 1);
        }
    }

    #[test]
    fn irrational_roots() {
        let p = uni("x^2 - 2");
        assert_eq!(p.count_roots(&rat(0, 1), &rat(2, 1)), 1);
        assert_eq!(p.count_roots(&rat(-2, 1), &rat(2, 1)), 2);
        let iso = p.isolate_roots(&rat(0, 1), &rat(2, 1));
        assert_eq!(iso.len(), 1);
        let (a, b) = &iso[0];
        assert!(p.eval(a).is_positive() != p.eval(b).is_positive());
    }

    #[test]
    fn repeated_roots_counted_once() {
        let p = uni("(x - 1)^2*(x - 3)");
        assert_eq!(p.count_roots(&rat(0, 1), &rat(4, 1)), 2);
    }

    #[test]
    fn cauchy_bound_contains_roots() {
        let p = uni("x^3 - 10*x + 1");
        let bound = p.root_bound();
        let total = p.count_roots(&(-bound.clone()), &bound);
        assert_eq!(total, 3);
    }
}
