//! Buchberger's algorithm producing unique reduced Groebner bases, plus the
//! elimination-theorem accessor.

use std::cmp::Ordering;

use super::arith::Polynomial;
use super::division::normal_form;
use super::ring::{Monomial, MonomialOrder, Ring};
use crate::error::{Error, Result};

/// Ideal given by a finite generating set over a common ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens: Vec<Polynomial> = Vec::new();
        for g in generators {
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            return Err(Error::EmptyBasis);
        }
        for g in &gens[1..] {
            gens[0].check_ring(g)?;
        }
        Ok(Ideal { generators: gens })
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn ring(&self) -> &Ring {
        self.generators[0].ring()
    }
}

/// Reduced Groebner basis: monic elements, no monomial of any element
/// divisible by the leading term of another. Unique per (ideal, order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ring(&self) -> &Ring {
        self.elements[0].ring()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.elements, self.order)
    }

    /// Ideal membership via confluent reduction.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Basis of the l-th elimination ideal: elements free of the first `l`
    /// ring variables. Requires a lex basis to be meaningful.
    pub fn eliminate(&self, l: usize) -> Result<Vec<Polynomial>> {
        let nvars = self.ring().len();
        if l > nvars {
            return Err(Error::BadElimination { l, nvars });
        }
        Ok(self
            .elements
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.free_of_first(l)))
            .cloned()
            .collect())
    }
}

/// Resource limits for the completion loop.
#[derive(Clone, Debug)]
pub struct GbBudget {
    /// Maximum number of S-polynomial reductions before giving up.
    pub max_reductions: usize,
    /// Gebauer-Moeller pair elimination; disable to cross-check correctness.
    pub use_pair_criteria: bool,
}

impl Default for GbBudget {
    fn default() -> Self {
        GbBudget { max_reductions: 500_000, use_pair_criteria: true }
    }
}

pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, &GbBudget::default())
}

pub fn buchberger_with(
    ideal: &Ideal,
    order: MonomialOrder,
    budget: &GbBudget,
) -> Result<GroebnerBasis> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();

    for g in ideal.generators() {
        let g = g.make_monic(order);
        if budget.use_pair_criteria {
            add_with_update(&mut basis, &mut pairs, g, order);
        } else {
            let t = basis.len();
            for i in 0..t {
                let lcm = lead(&basis[i], order).lcm(lead(&g, order));
                pairs.push((i, t, lcm));
            }
            basis.push(g);
        }
    }

    let mut reductions = 0usize;
    while !pairs.is_empty() {
        // normal selection: smallest lcm first
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| match order.cmp(&a.2, &b.2) {
                Ordering::Equal => (a.0, a.1).cmp(&(b.0, b.1)),
                o => o,
            })
            .map(|(k, _)| k)
            .expect("nonempty");
        let (i, j, _) = pairs.swap_remove(best);

        let s = s_polynomial(&basis[i], &basis[j], order);
        reductions += 1;
        if reductions > budget.max_reductions {
            return Err(Error::BudgetExceeded(reductions));
        }
        let r = normal_form(&s, &basis, order)?;
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic(order);
        if budget.use_pair_criteria {
            add_with_update(&mut basis, &mut pairs, r, order);
        } else {
            let t = basis.len();
            for k in 0..t {
                let lcm = lead(&basis[k], order).lcm(lead(&r, order));
                pairs.push((k, t, lcm));
            }
            basis.push(r);
        }
    }

    let elements = reduce_basis(basis, order)?;
    let gb = GroebnerBasis { elements, order };
    // post-condition: every input generator reduces to zero
    for g in ideal.generators() {
        if !gb.contains(g)? {
            return Err(Error::Invalid(
                "internal error: generator does not reduce to zero".into(),
            ));
        }
    }
    Ok(gb)
}

fn lead<'a>(p: &'a Polynomial, order: MonomialOrder) -> &'a Monomial {
    p.leading_monomial(order).expect("nonzero basis element")
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(order).expect("nonzero");
    let (gm, gc) = g.leading_term(order).expect("nonzero");
    let lcm = fm.lcm(gm);
    let mf = fm.div(&lcm).expect("lcm divisible");
    let mg = gm.div(&lcm).expect("lcm divisible");
    f.mul_term(&mf, &fc.recip()).sub(&g.mul_term(&mg, &gc.recip()))
}

/// Gebauer-Moeller update: install pairs of the new element against the
/// current basis, discarding pairs by the lcm and coprimality criteria, and
/// prune old pairs strictly divisible by the new leading term.
fn add_with_update(
    basis: &mut Vec<Polynomial>,
    pairs: &mut Vec<(usize, usize, Monomial)>,
    h: Polynomial,
    order: MonomialOrder,
) {
    let t = basis.len();
    let lt_h = lead(&h, order).clone();

    let mut fresh: Vec<(usize, Monomial)> = (0..t)
        .map(|i| (i, lead(&basis[i], order).lcm(&lt_h)))
        .collect();

    // criterion M: drop (i,h) when another (j,h) lcm strictly divides its lcm
    let mut keep = vec![true; fresh.len()];
    for a in 0..fresh.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..fresh.len() {
            if a == b || !keep[b] {
                continue;
            }
            if fresh[b].1.divides(&fresh[a].1) && fresh[b].1 != fresh[a].1 {
                keep[a] = false;
                break;
            }
        }
    }
    // criterion F: among equal lcms keep one representative
    for a in 0..fresh.len() {
        if !keep[a] {
            continue;
        }
        for b in (a + 1)..fresh.len() {
            if keep[b] && fresh[a].1 == fresh[b].1 {
                keep[b] = false;
            }
        }
    }
    // criterion B (product criterion): coprime leading terms reduce to zero
    for (a, (i, lcm)) in fresh.iter().enumerate() {
        if keep[a] && lead(&basis[*i], order).coprime(&lt_h) {
            debug_assert_eq!(*lcm, lead(&basis[*i], order).mul(&lt_h));
            keep[a] = false;
        }
    }

    // prune old pairs whose lcm is strictly reducible through the new element
    pairs.retain(|(i, j, lcm)| {
        !(lt_h.divides(lcm)
            && lead(&basis[*i], order).lcm(&lt_h) != *lcm
            && lead(&basis[*j], order).lcm(&lt_h) != *lcm)
    });

    let mut iter = keep.into_iter();
    fresh.retain(|_| iter.next().unwrap());
    for (i, lcm) in fresh {
        pairs.push((i, t, lcm));
    }
    basis.push(h);
}

/// Minimize then inter-reduce, producing the canonical reduced basis sorted
/// with the largest leading term first (the order the worked examples print).
fn reduce_basis(mut basis: Vec<Polynomial>, order: MonomialOrder) -> Result<Vec<Polynomial>> {
    basis.retain(|p| !p.is_zero());
    // minimal: drop elements whose LT is divisible by another element's LT
    let mut minimal: Vec<Polynomial> = Vec::new();
    'outer: for i in 0..basis.len() {
        let lt_i = lead(&basis[i], order);
        for (j, other) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lt_j = lead(other, order);
            if lt_j.divides(lt_i) && (lt_j != lt_i || j < i) {
                continue 'outer;
            }
        }
        minimal.push(basis[i].clone());
    }
    // inter-reduce every element against the others until stable
    let mut reduced: Vec<Polynomial> = minimal;
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<Polynomial> = reduced
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            if others.is_empty() {
                continue;
            }
            let nf = normal_form(&reduced[i], &others, order)?.make_monic(order);
            if nf != reduced[i] {
                reduced[i] = nf;
                changed = true;
            }
        }
        reduced.retain(|p| !p.is_zero());
        if !changed {
            break;
        }
    }
    reduced.sort_by(|a, b| order.cmp(lead(b, order), lead(a, order)));
    Ok(reduced)
}

/// Resultant-style elimination of `var` between `f` and `g` where `g` is
/// linear in `var`: returns f with `var` replaced by the root of g, cleared
/// of denominators. Used for the worked extension-theorem derivations.
pub fn eliminate_linear(f: &Polynomial, g: &Polynomial, var: usize) -> Result<Polynomial> {
    f.check_ring(g)?;
    if g.degree_in(var) != 1 {
        return Err(Error::Invalid(format!(
            "divisor must be linear in {}",
            g.ring().var_name(var)
        )));
    }
    let a = g.coeff_of_power(var, 1);
    let b = g.coeff_of_power(var, 0);
    // f = sum_k c_k(rest) var^k  ->  sum_k c_k (-b)^k a^(deg-k)
    let deg = f.degree_in(var);
    let ring = f.ring();
    let neg_b = b.neg();
    let mut acc = Polynomial::zero(ring);
    for k in 0..=deg {
        let c = f.coeff_of_power(var, k);
        if c.is_zero() {
            continue;
        }
        let term = c.mul(&neg_b.pow(k as u32)).mul(&a.pow((deg - k) as u32));
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_polynomial;

    fn parse(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn principal_ideal() {
        let r = Ring::new(["x", "y"]).unwrap();
        let ideal = Ideal::new(vec![parse(&r, "x")]).unwrap();
        let gb = buchberger(&ideal, MonomialOrder::Lex).unwrap();
        assert_eq!(gb.elements(), &[parse(&r, "x")]);
    }

    #[test]
    fn textbook_twisted_cubic() {
        // <t - x, t^2 - y, t^3 - z> under lex t > x > y > z eliminates t
        let r = Ring::new(["t", "x", "y", "z"]).unwrap();
        let ideal = Ideal::new(vec![
            parse(&r, "t - x"),
            parse(&r, "t^2 - y"),
            parse(&r, "t^3 - z"),
        ])
        .unwrap();
        let gb = buchberger(&ideal, MonomialOrder::Lex).unwrap();
        let elim = gb.eliminate(1).unwrap();
        for p in [parse(&r, "x^2 - y"), parse(&r, "x*y - z"), parse(&r, "y^2 - x*z")] {
            assert!(gb.contains(&p).unwrap());
            assert!(elim.iter().any(|e| *e == p.make_monic(MonomialOrder::Lex)));
        }
    }

    #[test]
    fn pair_criteria_do_not_change_result() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let gens = vec![
            parse(&r, "x^2 + y*z - 2"),
            parse(&r, "x*z - y - 1"),
            parse(&r, "y^2 - z"),
        ];
        let ideal = Ideal::new(gens).unwrap();
        let with = buchberger_with(
            &ideal,
            MonomialOrder::Lex,
            &GbBudget { use_pair_criteria: true, ..Default::default() },
        )
        .unwrap();
        let without = buchberger_with(
            &ideal,
            MonomialOrder::Lex,
            &GbBudget { use_pair_criteria: false, ..Default::default() },
        )
        .unwrap();
        assert_eq!(with.elements(), without.elements());
    }

    #[test]
    fn budget_is_reported() {
        let r = Ring::new(["x", "y", "z"]).unwrap();
        let ideal = Ideal::new(vec![
            parse(&r, "x^2*y - z^3"),
            parse(&r, "y^2*z - x"),
            parse(&r, "z^2*x - y"),
        ])
        .unwrap();
        let err = buchberger_with(
            &ideal,
            MonomialOrder::Lex,
            &GbBudget { max_reductions: 1, use_pair_criteria: true },
        );
        assert!(matches!(err, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn eliminate_action_bounds() {
        let r = Ring::new(["x"]).unwrap();
        let gb = buchberger(&Ideal::new(vec![parse(&r, "x")]).unwrap(), MonomialOrder::Lex)
            .unwrap();
        assert_eq!(gb.eliminate(0).unwrap().len(), 1);
        assert!(gb.eliminate(2).is_err());
    }

    #[test]
    fn linear_elimination_matches_substitution() {
        let r = Ring::new(["q", "a", "b"]).unwrap();
        let f = parse(&r, "q^2 + a*q + b");
        let g = parse(&r, "2*q - a"); // q = a/2
        let out = eliminate_linear(&f, &g, 0).unwrap();
        // 4*(f at q=a/2) = a^2 + 2a^2*... : (a/2)^2 + a*(a/2) + b scaled by 4
        assert_eq!(out, parse(&r, "3*a^2 + 4*b"));
    }
}
