//! Development scratch: derive feasibility inequalities from models through
//! the Groebner pipeline (quadratic discriminants), then screen them.

use causal_varieties::feasibility::{p_ring, FeasibilityTest, SignCondition};
use causal_varieties::geometry::{
    fit_distribution, joint_distribution, parametrize, sample_latents, FitOptions, JointDist,
};
use causal_varieties::implicitization::{extension_real_roots, simplex_grid};
use causal_varieties::model::{parse_model, CausalModel};
use causal_varieties::poly::*;

fn paper_ring(n: usize) -> Ring {
    let mut vars: Vec<String> = (1..=n).map(|i| format!("q{i}")).collect();
    for p in ["p00", "p01", "p10", "p11"] {
        vars.push(p.into());
    }
    Ring::new(vars).unwrap()
}

fn pipeline_gb(m: &CausalModel) -> (Ring, GroebnerBasis) {
    let n = m.n();
    let r = paper_ring(n);
    let params = parametrize(m);
    let gens: Vec<Polynomial> = [("p00", 0usize), ("p01", 1), ("p10", 2), ("p11", 3)]
        .iter()
        .map(|&(name, outcome)| {
            parse_polynomial(&r, name)
                .unwrap()
                .sub(&params[outcome].embed(&r).unwrap())
        })
        .collect();
    let gb = buchberger(&Ideal::new(gens).unwrap(), MonomialOrder::Lex).unwrap();
    (r, gb)
}

fn necessity_fail_rate(m: &CausalModel, t: &FeasibilityTest, samples: u64) -> f64 {
    let mut fails = 0usize;
    for i in 0..samples {
        let q = sample_latents(m.n(), 515, i);
        let p = joint_distribution(m, &q).unwrap();
        if !t.evaluate(&p) {
            fails += 1;
        }
    }
    fails as f64 / samples as f64
}

fn sufficiency(
    m: &CausalModel,
    t: &FeasibilityTest,
    denom: usize,
    opts: &FitOptions,
) -> (usize, usize, Vec<JointDist>) {
    let pass: Vec<JointDist> = simplex_grid(denom).into_iter().filter(|p| t.evaluate(p)).collect();
    let mut unfit = Vec::new();
    let mut fitted = 0usize;
    for p in &pass {
        if fit_distribution(m, p, opts).is_some() {
            fitted += 1;
        } else {
            unfit.push(p.clone());
        }
    }
    (fitted, pass.len(), unfit)
}

/// Derive discriminant conditions for every quadratic-in-one-q element of
/// the reduced basis, plus resultant-derived quadratics through the q3
/// linear element when present.
fn derive_discriminants(m: &CausalModel) -> Vec<SignCondition> {
    let n = m.n();
    let (r, gb) = pipeline_gb(m);
    println!("reduced GB for {m}:");
    for g in gb.elements() {
        println!("  {g}");
    }
    let norm = parse_polynomial(&r, "p00 + p01 + p10 + p11 - 1").unwrap();
    let mut out = Vec::new();
    for g in gb.elements() {
        if let Ok(cond) = extension_real_roots(g, n, Some(&norm)) {
            println!("  quadratic {g}\n    -> {cond}");
            out.push(cond);
        }
    }
    // resultant route: substitute each q-linear element into deg-2 elements
    let elems = gb.elements().to_vec();
    for lin in &elems {
        for var in 0..n {
            if lin.degree_in(var) != 1 {
                continue;
            }
            // linear in `var` with coefficients free of other q's?
            let others: Vec<usize> = (0..n).filter(|&v| v != var).collect();
            let c1 = lin.coeff_of_power(var, 1);
            let c0 = lin.coeff_of_power(var, 0);
            if others.iter().any(|&v| c1.degree_in(v) > 0 || c0.degree_in(v) > 0) {
                continue;
            }
            for g in &elems {
                if g == lin || g.degree_in(var) == 0 {
                    continue;
                }
                let sub = eliminate_linear(g, lin, var).unwrap();
                if let Ok(cond) = extension_real_roots(&sub, n, Some(&norm)) {
                    println!(
                        "  resultant of {g}\n    through {lin}\n    -> {cond}"
                    );
                    out.push(cond);
                }
            }
        }
    }
    out
}

#[test]
fn derive_32f() {
    let m = parse_model("n=3; A = u*v; B = u ^ v*w").unwrap();
    let conds = derive_discriminants(&m);
    // try the derived conjunction, with and without the printed fan side
    let mut base: Vec<SignCondition> = conds.clone();
    base.dedup_by_key(|c| c.canonicalize().to_string());
    let t = FeasibilityTest::new(base.clone());
    println!("necessity (derived only): {}", necessity_fail_rate(&m, &t, 1500));
    let opts = FitOptions { starts: 16, ..Default::default() };
    let (fit, total, unfit) = sufficiency(&m, &t, 12, &opts);
    println!("sufficiency (derived only): {fit}/{total}");
    for p in unfit.iter().take(8) {
        println!("  unfit: {p}");
    }
    let mut with_fan = base.clone();
    with_fan.push(SignCondition::parse("p00*p11 > p01*p10").unwrap());
    let t2 = FeasibilityTest::new(with_fan);
    println!("necessity (derived + fan): {}", necessity_fail_rate(&m, &t2, 1500));
    let (fit, total, unfit) = sufficiency(&m, &t2, 12, &opts);
    println!("sufficiency (derived + fan): {fit}/{total}");
    for p in unfit.iter().take(8) {
        println!("  unfit: {p}");
    }
}

#[test]
fn derive_32e_second() {
    let m = parse_model("n=3; A = u ^ v; B = u*v ^ w").unwrap();
    let conds = derive_discriminants(&m);
    let printed_first = SignCondition::parse(
        "(p11*(2*p01 + p11) - p10*(2*p00 + p10))^2 - 4*(p10 - p11)*(p00*p10 - p01*p11) >= 0",
    )
    .unwrap();
    for c in &conds {
        let diff = c.poly.sub(&printed_first.poly);
        println!(
            "condition matches printed first? {} ({} terms diff)",
            diff.is_zero(),
            diff.num_terms()
        );
    }
    let t = FeasibilityTest::new(conds.clone());
    println!("necessity (derived): {}", necessity_fail_rate(&m, &t, 1500));
    let opts = FitOptions { starts: 16, ..Default::default() };
    let (fit, total, unfit) = sufficiency(&m, &t, 12, &opts);
    println!("sufficiency (derived): {fit}/{total}");
    for p in unfit.iter().take(8) {
        println!("  unfit: {p}");
    }
}

#[test]
fn check_42a_42b() {
    // the printed lens tests against the printed models
    for (label, text, test) in [
        (
            "(4,2,a)",
            "n=4; A = u*v ^ v*d; B = u*v*w",
            "p00*p11 > p01*p10; p11*p10 > p00*p01",
        ),
        (
            "(4,2,b)",
            "n=4; A = u*v ^ v*d; B = u*v ^ v*w",
            "p00*p11 > p01*p10; p11*p10 > p00*p01; p11*p01 > p00*p10",
        ),
    ] {
        let m = parse_model(text).unwrap();
        let conds: Vec<SignCondition> =
            test.split(';').map(|s| SignCondition::parse(s).unwrap()).collect();
        let t = FeasibilityTest::new(conds);
        println!("{label} printed-model vs printed-test necessity fail rate: {}",
            necessity_fail_rate(&m, &t, 1000));
        // which conditions fail?
        for i in 0..12u64 {
            let q = sample_latents(m.n(), 31, i);
            let p = joint_distribution(&m, &q).unwrap();
            if let Some(why) = t.first_failure(&p) {
                println!("  sample {i}: {why} at {p}");
            }
        }
    }
}
