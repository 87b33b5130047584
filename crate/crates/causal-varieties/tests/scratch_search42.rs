//! Development scratch: find the 4-latent models whose sets match the
//! printed lens tests of rows (4,2,a) and (4,2,b).

use causal_varieties::feasibility::{FeasibilityTest, SignCondition};
use causal_varieties::geometry::{
    fit_distribution, joint_distribution, sample_latents, support_pattern, FitOptions,
    JointDist,
};
use causal_varieties::implicitization::simplex_grid;
use causal_varieties::model::{BoolFunc, CausalModel};

fn used_mask(f: &BoolFunc) -> u32 {
    let n = f.n();
    let mut mask = 0u32;
    for v in 0..n {
        for i in 0..(1u32 << n) {
            if f.eval(i) != f.eval(i ^ (1 << v)) {
                mask |= 1 << v;
                break;
            }
        }
    }
    mask
}

/// Lift a 3-variable table on inputs (bits of `vars`) to 4 latents.
fn lift(table3: u32, vars: [usize; 3]) -> BoolFunc {
    let mut t = 0u32;
    for i in 0..16u32 {
        let mut j = 0u32;
        for (k, v) in vars.iter().enumerate() {
            if (i >> v) & 1 == 1 {
                j |= 1 << k;
            }
        }
        if (table3 >> j) & 1 == 1 {
            t |= 1 << i;
        }
    }
    BoolFunc::from_table(4, t).unwrap()
}

fn search(test: &FeasibilityTest, label: &str) {
    let mut seen = std::collections::HashSet::new();
    let mut hits: Vec<CausalModel> = Vec::new();
    for a3 in 0u32..256 {
        for b3 in 0u32..256 {
            // A on (u, v, d): latent indices 0, 1, 3; B on (u, v, w): 0, 1, 2
            let f_a = lift(a3, [0, 1, 3]);
            let f_b = lift(b3, [0, 1, 2]);
            let ua = used_mask(&f_a);
            let ub = used_mask(&f_b);
            // n = 4 all used, exactly the two common causes shared
            if ua & (1 << 3) == 0 || ub & (1 << 2) == 0 {
                continue;
            }
            if (ua & ub) != 0b0011 {
                continue;
            }
            let m = CausalModel::new(f_a, f_b).unwrap();
            if support_pattern(&m).0 != 0b1111 {
                continue;
            }
            let canon = m.canonical_form();
            if !seen.insert(canon.key()) {
                continue;
            }
            let mut ok = true;
            for i in 0..64u64 {
                let q = sample_latents(4, 912, i);
                let p = joint_distribution(&canon, &q).unwrap();
                if !test.evaluate(&p) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            for i in 64..512u64 {
                let q = sample_latents(4, 912, i);
                let p = joint_distribution(&canon, &q).unwrap();
                if !test.evaluate(&p) {
                    ok = false;
                    break;
                }
            }
            if ok {
                hits.push(canon);
            }
        }
    }
    println!("{label}: {} candidates pass necessity", hits.len());
    let opts = FitOptions { starts: 24, ..Default::default() };
    for m in hits {
        let pass: Vec<JointDist> =
            simplex_grid(12).into_iter().filter(|p| test.evaluate(p)).collect();
        let fitted =
            pass.iter().filter(|p| fit_distribution(&m, p, &opts).is_some()).count();
        println!("  {m} fits {fitted}/{}", pass.len());
    }
}

#[test]
fn search_42a() {
    let t = FeasibilityTest::new(vec![
        SignCondition::parse("p00*p11 > p01*p10").unwrap(),
        SignCondition::parse("p11*p10 > p00*p01").unwrap(),
    ]);
    search(&t, "(4,2,a)");
}

#[test]
fn search_42b() {
    let t = FeasibilityTest::new(vec![
        SignCondition::parse("p00*p11 > p01*p10").unwrap(),
        SignCondition::parse("p11*p10 > p00*p01").unwrap(),
        SignCondition::parse("p11*p01 > p00*p10").unwrap(),
    ]);
    search(&t, "(4,2,b)");
}
